#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "bzwave/domain.hpp"

namespace bzwave {

/// Bisection with secant acceleration on a sign-changing bracket. Returns a
/// point of a bracket no wider than `tol`. Throws Error(no_bracket) when
/// f(lo) and f(hi) have the same strict sign.
double solve_root(const std::function<double(double)>& f, double lo, double hi,
                  double tol = 1e-12, int max_iter = 400);

/// Greater root of omega = 4 + 2 ln(omega).
double omega_star();

/// Lesser root of omega = 4 + 2 ln(omega).
double omega_star_lesser();

/// Linear-determinacy lower bound for any front speed.
double c_l(double r, double b);

/// Known-existence threshold for r in (0, 1]; nullopt where no branch of the
/// piecewise rule applies (b = 1, r = 1). Throws Error(out_of_regime) for r > 1.
std::optional<double> c_k(double r, double b);

/// b' = b exp(-c^2 h / 2), the delay-damped rate used by the speed bounds.
inline double b_prime_bounds(double b, double c, double h) { return b * std::exp(-c * c * h / 2.0); }

/// Unique positive root of c = 2 max{Re sqrt(1 - r), sqrt(b'/(1 + b'))}.
double c_hash(const BzParams& params);

/// f(c^2, r, b, h) whose zero defines c_circ; increasing in c^2 and in h.
double f_circ(double c2, double r, double b, double h);

/// Unique positive root of f_circ(c^2) = 0.
double c_circ(const BzParams& params);

struct BistableInterval {
    double lower;  // c_K
    double upper;  // 2 sqrt(min(1, b))
};

/// Throws Error(out_of_regime) for r <= 1 and Error(domain) when the radicand
/// is not positive.
BistableInterval c_K_bistable(double r, double b);

struct BoundsReport {
    BzParams params;
    double c_l = 0.0;
    std::optional<double> c_k;
    std::string c_k_reason;
    double c_hash = 0.0;
    std::optional<double> c_circ;
    std::string c_circ_reason;
    std::optional<BistableInterval> c_K;
    std::string c_K_reason;
    Regime regime = Regime::monostable;
    std::string existence_note;
};

BoundsReport bounds_report(const BzParams& params);

}  // namespace bzwave
