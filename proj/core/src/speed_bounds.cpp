#include "bzwave/speed_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bzwave {

double solve_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                  int max_iter) {
    if (!(lo < hi)) throw Error(ErrorKind::invalid_argument, "solve_root requires lo < hi");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "no sign change on [%.6g, %.6g]: f = %.6g, %.6g", lo, hi,
                      flo, fhi);
        throw Error(ErrorKind::no_bracket, buf);
    }
    for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
        // Secant (regula falsi) step, rejected if it hugs an endpoint; every
        // other iteration is plain bisection so the bracket halves at least
        // every two steps.
        double x = 0.5 * (lo + hi);
        if (it % 2 == 0) {
            const double s = hi - fhi * (hi - lo) / (fhi - flo);
            const double margin = 0.05 * (hi - lo);
            if (s > lo + margin && s < hi - margin) x = s;
        }
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    return std::abs(flo) < std::abs(fhi) ? lo : hi;
}

namespace {
double omega_eq(double w) { return w - 4.0 - 2.0 * std::log(w); }
}  // namespace

double omega_star() {
    static const double value = solve_root(omega_eq, 5.0, 20.0, 1e-14);
    return value;
}

double omega_star_lesser() {
    static const double value = solve_root(omega_eq, 0.01, 1.0, 1e-15);
    return value;
}

double c_l(double r, double b) {
    const double kpp = r <= 1.0 ? 2.0 * std::sqrt(1.0 - r) : 0.0;
    const double other = (std::sqrt(r * r + 2.0 * b / 3.0) - r) / std::sqrt(2.0 * b + 4.0 * r);
    return std::max(kpp, other);
}

std::optional<double> c_k(double r, double b) {
    if (r > 1.0) {
        throw Error(ErrorKind::out_of_regime, "c_k is defined for r in (0, 1] only");
    }
    // The branches overlap; where the first applies, b > 1 - r on the others,
    // so it is the smallest threshold.
    if (r * b + r <= 1.0) return 2.0 * std::sqrt(1.0 - r);
    if (b > 1.0) return 2.0;
    if ((b + r > 1.0 && b < 1.0) || (b == 1.0 && r < 1.0)) return 2.0 * std::sqrt(b);
    return std::nullopt;
}

double c_hash(const BzParams& p) {
    const double kpp = p.r() <= 1.0 ? std::sqrt(1.0 - p.r()) : 0.0;
    auto rhs = [&](double c) {
        const double bp = b_prime_bounds(p.b(), c, p.h());
        return 2.0 * std::max(kpp, std::sqrt(bp / (1.0 + bp)));
    };
    if (p.h() == 0.0) return rhs(0.0);
    // rhs is non-increasing in c, so c - rhs(c) has a single sign change.
    const double hi = rhs(0.0);
    return solve_root([&](double c) { return c - rhs(c); }, 1e-9, hi + 1e-9, 1e-13);
}

double f_circ(double c2, double r, double b, double h) {
    const double w = omega_star();
    return c2 * (w / (8.0 * r) + h / 2.0) + std::log(c2 / (4.0 * b * r)) -
           (w / 2.0) * (1.0 - r) / r;
}

double c_circ(const BzParams& p) {
    auto f = [&](double c) { return f_circ(c * c, p.r(), p.b(), p.h()); };
    double lo = 1e-6;
    double hi = std::max(4.0 * c_hash(p), 1.0);
    // f -> -inf as c -> 0; grow the upper end until f turns positive.
    for (int k = 0; k < 60 && f(hi) <= 0.0; ++k) hi *= 2.0;
    for (int k = 0; k < 60 && f(lo) >= 0.0; ++k) lo *= 0.5;
    return solve_root(f, lo, hi, 1e-13);
}

BistableInterval c_K_bistable(double r, double b) {
    if (r <= 1.0) throw Error(ErrorKind::out_of_regime, "c_K requires the bistable regime r > 1");
    const double m = std::min(1.0, b);
    const double rad = (r + b) * (m * (r + b) - 0.5 * b);
    if (!(rad > 0.0)) throw Error(ErrorKind::domain, "c_K radicand is not positive");
    return {b / (2.0 * std::sqrt(rad)), 2.0 * std::sqrt(m)};
}

BoundsReport bounds_report(const BzParams& p) {
    BoundsReport rep{p, 0.0, std::nullopt, {}, 0.0, std::nullopt, {}, std::nullopt, {}, p.regime(), {}};
    rep.regime = p.regime();
    rep.c_l = c_l(p.r(), p.b());
    rep.c_hash = c_hash(p);
    try {
        rep.c_circ = c_circ(p);
    } catch (const Error& e) {
        rep.c_circ_reason = e.what();
    }
    if (p.h() > 0.0) {
        rep.c_k_reason = "c_k is stated for h = 0 only";
        rep.c_K_reason = "c_K is stated for h = 0 only";
    } else if (p.monostable()) {
        rep.c_k = c_k(p.r(), p.b());
        if (!rep.c_k) rep.c_k_reason = "no branch of the known-existence rule covers b = 1, r = 1";
        rep.c_K_reason = "c_K applies to r > 1 only";
    } else {
        rep.c_k_reason = "c_k applies to r <= 1 only";
        try {
            rep.c_K = c_K_bistable(p.r(), p.b());
        } catch (const Error& e) {
            rep.c_K_reason = e.what();
        }
    }

    char buf[320];
    if (p.monostable()) {
        const double kpp = 2.0 * std::sqrt(1.0 - p.r());
        const double lin = p.r() * p.b() * std::exp(-2.0 * p.h() * (1.0 - p.r())) + p.r();
        if (lin <= 1.0) {
            std::snprintf(buf, sizeof buf,
                          "fronts exist for c >= c_hash = %.6g; minimal speed is linearly "
                          "determined (2 sqrt(1 - r) = %.6g)",
                          rep.c_hash, kpp);
        } else if (rep.c_circ) {
            const double lo = std::max(kpp, *rep.c_circ);
            std::snprintf(buf, sizeof buf,
                          "fronts exist for c >= c_hash = %.6g and for c in (%.6g, %.6g)", rep.c_hash,
                          std::min(lo, rep.c_hash), rep.c_hash);
        } else {
            std::snprintf(buf, sizeof buf, "fronts exist for c >= c_hash = %.6g", rep.c_hash);
        }
    } else {
        const double up = rep.c_circ ? std::min(rep.c_hash, *rep.c_circ) : rep.c_hash;
        std::snprintf(buf, sizeof buf, "bistable: %.6g <= c_star <= %.6g", rep.c_l, up);
    }
    rep.existence_note = buf;
    return rep;
}

}  // namespace bzwave
