#pragma once

#include <optional>

#include "bzwave/domain.hpp"

namespace bzwave {

struct PhiTheta {
    double phi;
    double theta;
};

/// Two-term algebraic expansion of an r = 1 front at -inf:
///   phi   = (2c^2/b)/t^2 + A_c ln(-t)/t^3,
///   theta = 1 + 2c/t - C_c ln(-t)/t^2,
/// with A_c, C_c as in critical_coefficients. Throws Error(domain) for t >= -e.
PhiTheta eval_expansion_critical(double c, double b, double h, double t);

/// Leading exponential terms for r in (0, 1) and c > 2 sqrt(1 - r):
/// phi = e^{lambda t}, theta = 1 - b e^{lambda t}/(1 - r). Throws Error(domain)
/// at the critical speed c = 2 sqrt(1 - r) (see eval_expansion_critical_speed)
/// and Error(complex_roots) below it.
PhiTheta eval_expansion_monostable(double c, double r, double b, double h, double t);

/// The double-root form at c = 2 sqrt(1 - r): phi = (-t) e^{ct/2},
/// theta = 1 - b (-t) e^{ct/2}/(1 - r). Requires t < 0.
PhiTheta eval_expansion_critical_speed(double r, double b, double h, double t);

/// True when c is the double-root speed 2 sqrt(1 - r) to rounding.
bool at_critical_speed(double c, double r);

enum class Side { minus_inf, plus_inf };

/// Which sampled quantity a tail fit regresses; the defaults are phi at -inf
/// and 1 - psi at +inf.
enum class TailQuantity { phi, psi, one_minus_phi, one_minus_psi };

struct TailFit {
    Side side = Side::minus_inf;
    double t_a = 0.0;  // window actually used
    double t_b = 0.0;
    int nodes = 0;
    double estimate = 0.0;
    double target = 0.0;
    double rel_err = 0.0;
    bool fallback_window = false;  // true when the default window had too few usable nodes
};

/// Least-squares slope of ln q over the usable nodes (q in [1e-12, 1e-4]) of
/// the side's window. The default window is [t_min + 0.05 W, t_min + 0.3 W]
/// (mirrored at +inf). When it holds fewer than 20 usable nodes the window
/// becomes that half of the grid minus the outer 5%. Throws
/// Error(window_too_short) when that still has fewer than 20.
TailFit fit_tail_exponent(const Front& front, Side side, double expected,
                          std::optional<TailQuantity> quantity = std::nullopt);

/// K in phi ~ K/t^2 at -inf, from the slope s of phi^{-1/2} against t
/// (K = 1/s^2, invariant under translation). Target 2c^2/b.
TailFit fit_algebraic_tail(const Front& front, double b);

/// Exponents expected at -inf for a bistable (r > 1) front: phi ~ e^{mu t} with
/// mu the positive root of z^2 - c z + 1 - r, and psi ~ e^{min(c, mu) t}.
struct BistableRates {
    double phi_rate;
    double psi_rate;
};

BistableRates bistable_tail_rates(double c, double r);

struct Relation {
    bool applies = false;
    bool pass = true;
    double margin = 0.0;  // smallest relative slack over resolved nodes
};

struct RelationReport {
    double K = 0.0;
    double L = 0.0;
    double M = 0.0;
    Relation lower_A;      // L phi(t - ch) < psi(t), r < 1
    Relation upper_A;      // psi(t) < K phi(t), r < 1
    Relation degenerate;   // b + r = 1, h = 0: sup|phi - psi| <= degenerate_tol
    double degenerate_sup = 0.0;
    Relation part_B;       // psi > phi, r >= 1
    Relation part_C;       // psi^2 < M phi, r <= 1
    Relation monotone;     // phi and psi increasing
    double margin = 0.0;   // min margin over the relations that apply
    bool all_pass() const;
};

struct RelationOptions {
    double degenerate_tol = 1e-3;
    // A node is resolved when phi and psi both lie in [floor, 1 - floor]; only
    // resolved nodes enter the strict comparisons.
    double floor = 1e-12;
};

/// Report-only; never throws for a well-formed front.
RelationReport check_relations(const Front& front, const BzParams& params,
                               const RelationOptions& opt = {});

}  // namespace bzwave
