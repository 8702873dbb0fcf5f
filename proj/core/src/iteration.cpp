#include "bzwave/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bzwave/parallel.hpp"
#include "bzwave/supersolutions.hpp"

namespace bzwave {

KernelRoots kernel_roots(double c, double B) {
    if (!(B < 0.0)) throw Error(ErrorKind::invalid_argument, "kernel shift B must be negative");
    const double s = std::sqrt(c * c - 4.0 * B);
    const double z2 = 0.5 * (c + s);
    return {B, B / z2, z2};
}

double IterConfig::shift_for(const BzParams& p) const {
    return B ? *B : -(1.0 + p.r() + p.b());
}

void IterConfig::validate(const BzParams& p) const {
    const double lim = -(1.0 + p.r() + p.b());
    if (B && !(*B <= lim)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "B = %.6g must be <= -(1 + r + b) = %.6g", *B, lim);
        throw Error(ErrorKind::invalid_argument, buf);
    }
    if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "tol must be > 0");
    if (max_iter < 1) throw Error(ErrorKind::invalid_argument, "max_iter must be >= 1");
}

Nonlinearities nonlinearities(const Profile& pr, const BzParams& p, double c, double B) {
    const auto& g = pr.grid();
    const auto f = pr.phi();
    const auto s = pr.psi();
    Nonlinearities out{std::vector<double>(g.n()), std::vector<double>(g.n())};
    const double r = p.r();
    const double b = p.b();
    const double lag = c * p.h();
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double fd = lag == 0.0 ? f[i] : interpolate(g, f, g.node(i) - lag);
        out.F1[i] = f[i] * (1.0 - r - B - f[i] + r * s[i]);
        out.F2[i] = b * fd * (1.0 - s[i]) - B * s[i];
    }
    return out;
}

namespace {

// expm1(x)/x, continuous at 0.
double expm1_ratio(double x) {
    if (std::abs(x) < 1e-5) return 1.0 + x / 2.0 + x * x / 6.0;
    return std::expm1(x) / x;
}

// Exact integral over u in [0, D] of e^{a u} times the geometric interpolant
// g(u) = near^{1 - u/D} far^{u/D}. Increasing in both samples (F >= 0); exact
// for constants and exponentials.
double geometric_piece(double a, double D, double near, double far) {
    if (!(near > 0.0) || !(far > 0.0)) return 0.0;
    const double rho = std::log(far / near) / D;
    return near * D * expm1_ratio((a + rho) * D);
}

}  // namespace

double TailClosure::rate(double F0, double B) const {
    if (scale == 0.0 || !(F0 > 0.0)) return 0.0;
    return scale * std::pow(F0, power) * std::max(0.0, 1.0 + F0 / B);
}

std::vector<double> kernel_convolve(const Grid& g, const std::vector<double>& F,
                                    const KernelRoots& k, const TailClosure& left) {
    const std::size_t n = g.n();
    const double D = g.spacing();
    const double el = std::exp(k.z1 * D);
    const double er = std::exp(-k.z2 * D);
    std::vector<double> L(n), R(n), out(n);
    L[0] = F[0] / (left.rate(F[0], k.B) - k.z1);
    for (std::size_t i = 1; i < n; ++i) {
        L[i] = el * L[i - 1] + geometric_piece(k.z1, D, F[i], F[i - 1]);
    }
    R[n - 1] = F[n - 1] / k.z2;
    for (std::size_t i = n - 1; i-- > 0;) {
        R[i] = er * R[i + 1] + geometric_piece(-k.z2, D, F[i], F[i + 1]);
    }
    const double scale = 1.0 / (k.z2 - k.z1);
    for (std::size_t i = 0; i < n; ++i) out[i] = scale * (L[i] + R[i]);
    return out;
}

namespace {

// One closure through (F_l, rate_l) and (F_u, rate_u), F_l <= F_u. L_0 stays
// increasing in F_0 while kappa (power - 1) < |z1|, which bounds the power.
TailClosure fit_one(double Fl, double kl, double Fu, double ku, const KernelRoots& k) {
    auto fade = [&](double F) { return std::max(0.0, 1.0 + F / k.B); };
    if (!(Fu > 0.0) || !(ku > 0.0) || fade(Fu) <= 0.0) return {};
    const double su = ku / fade(Fu);
    double power = 0.0;
    if (Fl > 0.0 && kl > 0.0 && Fu > Fl * (1.0 + 1e-12) && fade(Fl) > 0.0) {
        const double sl = kl / fade(Fl);
        power = std::log(su / sl) / std::log(Fu / Fl);
    }
    const double cap = 1.0 + 0.5 * (-k.z1) / std::max(ku, kl);
    power = std::clamp(power, 0.0, cap);
    if (power == 0.0) return {std::max(su, kl > 0.0 && fade(Fl) > 0.0 ? kl / fade(Fl) : 0.0), 0.0};
    return {su / std::pow(Fu, power), power};
}

}  // namespace

std::array<TailClosure, 2> fit_closure(const Profile& lower, const Profile& upper, const BzParams& p,
                                       double c, double B) {
    if (p.r() < 1.0) {
        // Both pairs, and the limit, decay like e^{lambda t}; any other rate
        // feeds or drains the neutral translation mode from the boundary.
        const double lambda = char_roots(c, p.r()).lambda;
        return {TailClosure{lambda, 0.0}, TailClosure{lambda, 0.0}};
    }
    const auto Fl = nonlinearities(lower, p, c, B);
    const auto Fu = nonlinearities(upper, p, c, B);
    const auto k = kernel_roots(c, B);
    const double D = lower.grid().spacing();
    auto rate = [D](const std::vector<double>& f) {
        if (!(f[0] > 0.0 && f[1] > f[0])) return 0.0;
        return std::log(f[1] / f[0]) / D;
    };
    return {fit_one(Fl.F1[0], rate(Fl.F1), Fu.F1[0], rate(Fu.F1), k),
            fit_one(Fl.F2[0], rate(Fl.F2), Fu.F2[0], rate(Fu.F2), k)};
}

Profile apply_N(const Profile& pr, const BzParams& p, double c, const IterConfig& cfg) {
    const double B = cfg.shift_for(p);
    const auto k = kernel_roots(c, B);
    auto F = nonlinearities(pr, p, c, B);
    std::vector<double> phi, psi;
    parallel_invoke([&] { phi = kernel_convolve(pr.grid(), F.F1, k, cfg.closure[0]); },
                    [&] { psi = kernel_convolve(pr.grid(), F.F2, k, cfg.closure[1]); });
    return Profile(pr.grid(), std::move(phi), std::move(psi));
}

double normalization_point(const Profile& pr) {
    const auto& g = pr.grid();
    const auto f = pr.phi();
    const auto s = pr.psi();
    const double target = 1.5;
    if (f[0] + s[0] >= target) return g.t_min();
    for (std::size_t i = 1; i < g.n(); ++i) {
        const double a = f[i - 1] + s[i - 1];
        const double b = f[i] + s[i];
        if (b >= target) {
            const double w = b > a ? (target - a) / (b - a) : 0.0;
            return g.node(i - 1) + w * g.spacing();
        }
    }
    return g.t_max();
}

namespace {

double sup_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Largest amount by which lo exceeds hi anywhere.
double excess(std::span<const double> lo, std::span<const double> hi) {
    double m = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) m = std::max(m, lo[i] - hi[i]);
    return m;
}

double order_violation(const Profile& l0, const Profile& l1, const Profile& u1, const Profile& u0) {
    return std::max({excess(l0.phi(), l1.phi()), excess(l0.psi(), l1.psi()),
                     excess(l1.phi(), u1.phi()), excess(l1.psi(), u1.psi()),
                     excess(u1.phi(), u0.phi()), excess(u1.psi(), u0.psi())});
}

}  // namespace

Front solve_front(const Profile& upper, const Profile& lower, const BzParams& p, double c,
                  const IterConfig& cfg, SolveDiagnostics* diag) {
    cfg.validate(p);
    if (!(upper.grid() == lower.grid())) {
        throw Error(ErrorKind::invalid_argument, "upper and lower must share a grid");
    }
    if (excess(lower.phi(), upper.phi()) > 0.0 || excess(lower.psi(), upper.psi()) > 0.0) {
        throw Error(ErrorKind::ordering, "lower pair is not below the upper pair");
    }
    IterConfig run = cfg;
    if (cfg.auto_closure) run.closure = fit_closure(lower, upper, p, c, cfg.shift_for(p));
    Profile lo(lower.grid(), {lower.phi().begin(), lower.phi().end()},
               {lower.psi().begin(), lower.psi().end()});
    Profile up(upper.grid(), {upper.phi().begin(), upper.phi().end()},
               {upper.psi().begin(), upper.psi().end()});
    const double slack = 10.0 * cfg.tol;
    double worst = 0.0;
    Front out{lo, c};
    for (int it = 1; it <= cfg.max_iter; ++it) {
        Profile lo1 = lo, up1 = up;
        parallel_invoke([&] { lo1 = apply_N(lo, p, c, run); }, [&] { up1 = apply_N(up, p, c, run); });
        const double viol = order_violation(lo, lo1, up1, up);
        worst = std::max(worst, viol);
        if (viol > slack) {
            char buf[200];
            std::snprintf(buf, sizeof buf,
                          "twin sequences lost their order by %.3g at iteration %d (grid too coarse?)",
                          viol, it);
            throw Error(ErrorKind::ordering, buf);
        }
        const double gap = std::max(sup_diff(lo1.phi(), lo.phi()), sup_diff(lo1.psi(), lo.psi()));
        if (diag) {
            diag->lower_gap.push_back(gap);
            diag->twin_gap.push_back(
                std::max(sup_diff(up1.phi(), lo1.phi()), sup_diff(up1.psi(), lo1.psi())));
        }
        lo = std::move(lo1);
        up = std::move(up1);
        out.iterations = it;
        out.final_gap = gap;
        if (gap < cfg.tol) {
            out.converged = true;
            break;
        }
    }
    if (diag) diag->max_order_violation = worst;

    const auto f = lo.phi();
    const auto s = lo.psi();
    const double spread = std::max(f.back() - f.front(), s.back() - s.front());
    out.degenerate = spread < 0.5;
    if (cfg.normalize && !out.degenerate) {
        out.normalization_shift = normalization_point(lo);
        out.profile = lo.translated(out.normalization_shift);
    } else {
        out.profile = lo;
    }
    out.residual_inf = bvp_residual(out, p);
    return out;
}

Residuals bvp_residuals(const Profile& pr, const BzParams& p, double c) {
    const std::size_t n = pr.grid().n();
    Residuals out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0};
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const auto L = discrete_operator(pr, p, c, i);
        out.res_phi[i] = L.phi;
        out.res_psi[i] = L.psi;
        out.sup = std::max({out.sup, std::abs(L.phi), std::abs(L.psi)});
    }
    return out;
}

double bvp_residual(const Front& f, const BzParams& p) { return bvp_residuals(f.profile, p, f.c).sup; }

}  // namespace bzwave
