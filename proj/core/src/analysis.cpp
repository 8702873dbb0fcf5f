#include "bzwave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bzwave/error.hpp"
#include "bzwave/supersolutions.hpp"
#include "strfmt.hpp"

namespace bzwave {

using detail::strfmt;

namespace {

constexpr double kE = 2.718281828459045;
constexpr double kTailFloor = 1e-12;
constexpr double kTailCeiling = 1e-4;  // above this the profile is not yet asymptotic
constexpr int kMinNodes = 20;

}  // namespace

PhiTheta eval_expansion_critical(double c, double b, double h, double t) {
    if (!(t < -kE)) throw Error(ErrorKind::domain, strfmt("expansion needs t < -e, got %.6g", t));
    const CriticalCorrection cc = critical_coefficients(c, b, h);
    const double L = std::log(-t);
    return {(2.0 * c * c / b) / (t * t) + cc.A_c * L / (t * t * t),
            1.0 + 2.0 * c / t - cc.C_c * L / (t * t)};
}

bool at_critical_speed(double c, double r) {
    if (!(r < 1.0)) return false;
    const double cs = 2.0 * std::sqrt(1.0 - r);
    return std::abs(c - cs) <= 1e-12 * std::max(1.0, cs);
}

PhiTheta eval_expansion_monostable(double c, double r, double b, double h, double t) {
    (void)h;  // the delay cancels in theta(t) = 1 - psi(t + ch)
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::out_of_regime, "monostable expansion needs r in (0, 1)");
    if (at_critical_speed(c, r)) {
        throw Error(ErrorKind::domain,
                    "c = 2 sqrt(1 - r) is the double-root speed; use eval_expansion_critical_speed");
    }
    const double lambda = char_roots(c, r).lambda;
    const double e = std::exp(lambda * t);
    return {e, 1.0 - b * e / (1.0 - r)};
}

PhiTheta eval_expansion_critical_speed(double r, double b, double h, double t) {
    (void)h;
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::out_of_regime, "expansion needs r in (0, 1)");
    if (!(t < 0.0)) throw Error(ErrorKind::domain, "double-root expansion needs t < 0");
    const double c = 2.0 * std::sqrt(1.0 - r);
    const double e = -t * std::exp(0.5 * c * t);
    return {e, 1.0 - b * e / (1.0 - r)};
}

namespace {

double quantity_at(const Profile& p, TailQuantity q, std::size_t i) {
    switch (q) {
        case TailQuantity::phi: return p.phi()[i];
        case TailQuantity::psi: return p.psi()[i];
        case TailQuantity::one_minus_phi: return 1.0 - p.phi()[i];
        case TailQuantity::one_minus_psi: return 1.0 - p.psi()[i];
    }
    return 0.0;
}

struct Window {
    std::vector<std::size_t> nodes;
    bool fallback = false;
};

// Default window on `side`, or the half-grid fallback when it is too thin.
template <typename Usable>
Window select_window(const Grid& g, Side side, Usable usable, std::optional<TailQuantity> q,
                     const Profile& p) {
    const double W = g.width();
    const double a = side == Side::minus_inf ? g.t_min() + 0.05 * W : g.t_max() - 0.3 * W;
    const double b = side == Side::minus_inf ? g.t_min() + 0.3 * W : g.t_max() - 0.05 * W;
    Window w;
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double t = g.node(i);
        if (t >= a && t <= b && usable(i)) w.nodes.push_back(i);
    }
    if (static_cast<int>(w.nodes.size()) >= kMinNodes) return w;
    w.nodes.clear();
    w.fallback = true;
    const double mid = 0.5 * (g.t_min() + g.t_max());
    const double lo = side == Side::minus_inf ? g.t_min() + 0.05 * W : mid;
    const double hi = side == Side::minus_inf ? mid : g.t_max() - 0.05 * W;
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double t = g.node(i);
        if (t < lo || t > hi || !usable(i)) continue;
        if (q && quantity_at(p, *q, i) > kTailCeiling) continue;
        w.nodes.push_back(i);
    }
    if (static_cast<int>(w.nodes.size()) < kMinNodes) {
        throw Error(ErrorKind::window_too_short,
                    strfmt("tail window has %d usable nodes (need %d)", static_cast<int>(w.nodes.size()),
                           kMinNodes));
    }
    return w;
}

// Ordinary least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

double rel_err(double est, double target) {
    const double d = std::abs(est - target);
    return target != 0.0 ? d / std::abs(target) : d;
}

}  // namespace

TailFit fit_tail_exponent(const Front& f, Side side, double expected,
                          std::optional<TailQuantity> quantity) {
    const Profile& p = f.profile;
    const Grid& g = p.grid();
    const TailQuantity q = quantity.value_or(side == Side::minus_inf ? TailQuantity::phi
                                                                     : TailQuantity::one_minus_psi);
    auto usable = [&](std::size_t i) {
        const double v = quantity_at(p, q, i);
        return std::isfinite(v) && v >= kTailFloor && v <= kTailCeiling;
    };
    const Window w = select_window(g, side, usable, q, p);
    std::vector<double> x, y;
    for (std::size_t i : w.nodes) {
        x.push_back(g.node(i));
        y.push_back(std::log(quantity_at(p, q, i)));
    }
    TailFit out;
    out.side = side;
    out.t_a = x.front();
    out.t_b = x.back();
    out.nodes = static_cast<int>(x.size());
    out.estimate = ls_slope(x, y);
    out.target = expected;
    out.rel_err = rel_err(out.estimate, expected);
    out.fallback_window = w.fallback;
    return out;
}

TailFit fit_algebraic_tail(const Front& f, double b) {
    const Profile& p = f.profile;
    const Grid& g = p.grid();
    auto usable = [&](std::size_t i) { return std::isfinite(p.phi()[i]) && p.phi()[i] >= kTailFloor; };
    const Window w = select_window(g, Side::minus_inf, usable, TailQuantity::phi, p);
    std::vector<double> x, y;
    for (std::size_t i : w.nodes) {
        x.push_back(g.node(i));
        y.push_back(1.0 / std::sqrt(p.phi()[i]));
    }
    const double s = ls_slope(x, y);
    TailFit out;
    out.side = Side::minus_inf;
    out.t_a = x.front();
    out.t_b = x.back();
    out.nodes = static_cast<int>(x.size());
    out.estimate = 1.0 / (s * s);
    out.target = 2.0 * f.c * f.c / b;
    out.rel_err = rel_err(out.estimate, out.target);
    out.fallback_window = w.fallback;
    return out;
}

BistableRates bistable_tail_rates(double c, double r) {
    if (!(r > 1.0)) throw Error(ErrorKind::out_of_regime, "bistable rates need r > 1");
    const double mu = 0.5 * (c + std::sqrt(c * c + 4.0 * (r - 1.0)));
    return {mu, std::min(c, mu)};
}

bool RelationReport::all_pass() const {
    for (const Relation* r : {&lower_A, &upper_A, &degenerate, &part_B, &part_C, &monotone}) {
        if (r->applies && !r->pass) return false;
    }
    return true;
}

namespace {

// Tracks the smallest relative slack of a strict inequality lhs < rhs.
struct SlackMeter {
    Relation rel;
    bool seen = false;

    void add(double lhs, double rhs) {
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        if (!(scale > 0.0)) return;
        const double s = (rhs - lhs) / scale;
        rel.margin = seen ? std::min(rel.margin, s) : s;
        seen = true;
        if (!(s > 0.0)) rel.pass = false;
    }

    Relation done() {
        rel.applies = true;
        if (!seen) rel.pass = false;
        return rel;
    }
};

}  // namespace

RelationReport check_relations(const Front& f, const BzParams& params, const RelationOptions& opt) {
    const Profile& p = f.profile;
    const Grid& g = p.grid();
    const auto phi = p.phi();
    const auto psi = p.psi();
    const double r = params.r();
    const double b = params.b();
    const double lag = f.c * params.h();
    const std::size_t n = g.n();
    auto in_range = [&](double v) { return v >= opt.floor && v <= 1.0 - opt.floor; };

    RelationReport rep;
    rep.M = std::max(1.0, 2.0 * b);
    const bool degenerate = r < 1.0 && params.h() == 0.0 && std::abs(b + r - 1.0) <= 1e-12;
    if (r < 1.0) {
        const double k = b / (1.0 - r);
        rep.K = std::max(1.0, k);
        rep.L = std::min(1.0, k);
    }
    if (degenerate) {
        double sup = 0.0;
        for (std::size_t i = 0; i < n; ++i) sup = std::max(sup, std::abs(phi[i] - psi[i]));
        rep.degenerate_sup = sup;
        rep.degenerate.applies = true;
        rep.degenerate.pass = sup <= opt.degenerate_tol;
        rep.degenerate.margin = (opt.degenerate_tol - sup) / opt.degenerate_tol;
    } else if (r < 1.0) {
        SlackMeter lo, up;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (!in_range(phi[i]) || !in_range(psi[i])) continue;
            up.add(psi[i], rep.K * phi[i]);
            const double t = g.node(i) - lag;
            if (t < g.t_min()) continue;
            const double pd = lag == 0.0 ? phi[i] : interpolate(g, phi, t);
            if (in_range(pd)) lo.add(rep.L * pd, psi[i]);
        }
        rep.lower_A = lo.done();
        rep.upper_A = up.done();
    }
    if (r >= 1.0) {
        SlackMeter m;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (in_range(phi[i]) && in_range(psi[i])) m.add(phi[i], psi[i]);
        }
        rep.part_B = m.done();
    }
    if (r <= 1.0) {
        SlackMeter m;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (in_range(phi[i]) && in_range(psi[i])) m.add(psi[i] * psi[i], rep.M * phi[i]);
        }
        rep.part_C = m.done();
    }
    {
        SlackMeter m;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (in_range(phi[i]) && in_range(phi[i + 1])) m.add(phi[i], phi[i + 1]);
            if (in_range(psi[i]) && in_range(psi[i + 1])) m.add(psi[i], psi[i + 1]);
        }
        rep.monotone = m.done();
    }
    bool first = true;
    for (const Relation* x :
         {&rep.lower_A, &rep.upper_A, &rep.degenerate, &rep.part_B, &rep.part_C, &rep.monotone}) {
        if (!x->applies) continue;
        rep.margin = first ? x->margin : std::min(rep.margin, x->margin);
        first = false;
    }
    return rep;
}

}  // namespace bzwave
