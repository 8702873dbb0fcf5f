#include "bzwave/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace bzwave {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid_argument";
        case ErrorKind::complex_roots: return "complex_roots";
        case ErrorKind::no_bracket: return "no_bracket";
        case ErrorKind::out_of_regime: return "out_of_regime";
        case ErrorKind::domain: return "domain";
        case ErrorKind::condition_violated: return "condition_violated";
        case ErrorKind::resonance: return "resonance";
        case ErrorKind::omega_too_large: return "omega_too_large";
        case ErrorKind::search_failure: return "search_failure";
        case ErrorKind::ordering: return "ordering";
        case ErrorKind::window_too_short: return "window_too_short";
        case ErrorKind::instability: return "instability";
        case ErrorKind::boundary_hit: return "boundary_hit";
        case ErrorKind::poor_fit: return "poor_fit";
    }
    return "unknown";
}

std::string_view to_string(Regime regime) {
    return regime == Regime::monostable ? "monostable" : "bistable";
}

Regime classify_regime(double r) { return r <= 1.0 ? Regime::monostable : Regime::bistable; }

BzParams::BzParams(double r, double b, double h) : r_(r), b_(b), h_(h) {
    char buf[160];
    if (!(std::isfinite(r) && r > 0.0)) {
        std::snprintf(buf, sizeof buf, "r must be > 0 (got %g)", r);
        throw Error(ErrorKind::invalid_argument, buf);
    }
    if (!(std::isfinite(b) && b > 0.0)) {
        std::snprintf(buf, sizeof buf, "b must be > 0 (got %g)", b);
        throw Error(ErrorKind::invalid_argument, buf);
    }
    if (!(std::isfinite(h) && h >= 0.0)) {
        std::snprintf(buf, sizeof buf, "h must be >= 0 (got %g)", h);
        throw Error(ErrorKind::invalid_argument, buf);
    }
}

CharRoots char_roots(double c, double r) {
    const double disc = c * c - 4.0 * (1.0 - r);
    if (disc < 0.0) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "characteristic roots are complex: c^2 - 4(1 - r) = %g < 0 (c must be >= %.6g)",
                      disc, 2.0 * std::sqrt(1.0 - r));
        throw Error(ErrorKind::complex_roots, buf);
    }
    const double s = std::sqrt(disc);
    // Product form for the small root avoids cancellation when 1 - r is tiny.
    const double mu = 0.5 * (c + s);
    const double lambda = mu != 0.0 ? (1.0 - r) / mu : 0.5 * (c - s);
    return {lambda, mu, disc};
}

PlusInfinityRoots plus_infinity_roots(double c, double b) {
    auto roots = [c](double k) {
        const double s = std::sqrt(c * c + 4.0 * k);
        const double pos = 0.5 * (c + s);
        return std::pair{-k / pos, pos};
    };
    const auto [z1, z2] = roots(b);
    const auto [y1, y2] = roots(1.0);
    return {z1, z2, y1, y2};
}

Grid::Grid(double t_min, double t_max, std::size_t n) : t_min_(t_min), t_max_(t_max), n_(n) {
    if (!(t_min < t_max) || !std::isfinite(t_min) || !std::isfinite(t_max)) {
        throw Error(ErrorKind::invalid_argument, "grid requires finite t_min < t_max");
    }
    if (n < 3) throw Error(ErrorKind::invalid_argument, "grid requires at least 3 nodes");
    dt_ = (t_max - t_min) / static_cast<double>(n - 1);
}

Grid Grid::standard() { return Grid(-60.0, 60.0, 4801); }

Grid default_grid(const BzParams& params) {
    return params.critical() ? Grid(-60.0, 240.0, 12001) : Grid::standard();
}

double interpolate(const Grid& grid, std::span<const double> values, double t) {
    if (t <= grid.t_min()) return values.front();
    if (t >= grid.t_max()) return values.back();
    const double x = (t - grid.t_min()) / grid.spacing();
    auto i = static_cast<std::size_t>(x);
    if (i >= grid.n() - 1) i = grid.n() - 2;
    const double w = x - static_cast<double>(i);
    if (w == 0.0) return values[i];
    return values[i] + w * (values[i + 1] - values[i]);
}

Profile::Profile(Grid grid, std::vector<double> phi, std::vector<double> psi,
                 std::vector<double> kinks)
    : grid_(grid), phi_(std::move(phi)), psi_(std::move(psi)), kinks_(std::move(kinks)) {
    if (phi_.size() != grid_.n() || psi_.size() != grid_.n()) {
        throw Error(ErrorKind::invalid_argument, "profile arrays must match the grid size");
    }
    std::sort(kinks_.begin(), kinks_.end());
}

Profile Profile::constant(const Grid& grid, double phi, double psi) {
    return Profile(grid, std::vector<double>(grid.n(), phi), std::vector<double>(grid.n(), psi));
}

Profile Profile::sample(const Grid& grid, const std::function<double(double)>& phi,
                        const std::function<double(double)>& psi, std::vector<double> kinks) {
    std::vector<double> a(grid.n()), b(grid.n());
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double t = grid.node(i);
        a[i] = phi(t);
        b[i] = psi(t);
    }
    return Profile(grid, std::move(a), std::move(b), std::move(kinks));
}

bool Profile::is_front_candidate() const {
    auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    return std::all_of(phi_.begin(), phi_.end(), in_unit) &&
           std::all_of(psi_.begin(), psi_.end(), in_unit);
}

Profile Profile::shifted(double shift) const {
    std::vector<double> a(grid_.n()), b(grid_.n());
    for (std::size_t i = 0; i < grid_.n(); ++i) {
        const double t = grid_.node(i) + shift;
        a[i] = interpolate(grid_, phi_, t);
        b[i] = interpolate(grid_, psi_, t);
    }
    std::vector<double> k;
    k.reserve(kinks_.size());
    for (double d : kinks_) k.push_back(d - shift);
    return Profile(grid_, std::move(a), std::move(b), std::move(k));
}

Profile Profile::translated(double shift) const {
    std::vector<double> k;
    k.reserve(kinks_.size());
    for (double d : kinks_) k.push_back(d - shift);
    return Profile(Grid(grid_.t_min() - shift, grid_.t_max() - shift, grid_.n()), phi_, psi_,
                   std::move(k));
}

Profile Profile::resampled(const Grid& grid) const {
    std::vector<double> a(grid.n()), b(grid.n());
    for (std::size_t i = 0; i < grid.n(); ++i) {
        a[i] = interpolate(grid_, phi_, grid.node(i));
        b[i] = interpolate(grid_, psi_, grid.node(i));
    }
    return Profile(grid, std::move(a), std::move(b), kinks_);
}

PhiPsi interpolate(const Profile& profile, double t) {
    return {interpolate(profile.grid(), profile.phi(), t),
            interpolate(profile.grid(), profile.psi(), t)};
}

std::vector<double> psi_from_theta(const Grid& grid, std::span<const double> theta, double c,
                                   double h) {
    std::vector<double> out(grid.n());
    for (std::size_t i = 0; i < grid.n(); ++i) {
        out[i] = 1.0 - interpolate(grid, theta, grid.node(i) - c * h);
    }
    return out;
}

}  // namespace bzwave
