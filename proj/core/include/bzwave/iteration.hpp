#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bzwave/domain.hpp"

namespace bzwave {

/// Roots z1 < 0 < z2 of z^2 - c z + B = 0 (B < 0).
struct KernelRoots {
    double B;
    double z1;
    double z2;
};

KernelRoots kernel_roots(double c, double B);

/// Left continuation of one nonlinearity beyond t_min: F(t_min - u) = F_0 e^{-kappa u}
/// with kappa(F_0) = scale F_0^power max(0, 1 + F_0/B). scale = 0 is the constant
/// extension. kappa grows with F_0 like the log-slope of an algebraic tail and
/// vanishes at F_0 = -B, so (0, 0) and (1, 1) stay exact fixed points.
struct TailClosure {
    double scale = 0.0;
    double power = 0.0;

    double rate(double F0, double B) const;
};

struct IterConfig {
    std::optional<double> B;  // default -(1 + r + b)
    double tol = 1e-7;
    int max_iter = 10000;
    bool normalize = true;  // translate so that phi(0) + psi(0) = 3/2
    // Left tail closures for F1, F2. solve_front replaces them by
    // fit_closure(lower, upper) when auto_closure is set.
    std::array<TailClosure, 2> closure{};
    bool auto_closure = true;

    double shift_for(const BzParams& params) const;
    void validate(const BzParams& params) const;
};

struct Nonlinearities {
    std::vector<double> F1;
    std::vector<double> F2;
};

/// F1 = phi (1 - r - B - phi + r psi), F2 = b phi(t - c h)(1 - psi) - B psi.
Nonlinearities nonlinearities(const Profile& p, const BzParams& params, double c, double B);

/// One application of (N1, N2). The exponential kernels are integrated exactly
/// against the piecewise-geometric interpolant of F (exact on exponential
/// tails, where sub/super margins are relatively tiny). Beyond t_max F is
/// constant; beyond t_min it follows cfg.closure.
Profile apply_N(const Profile& p, const BzParams& params, double c, const IterConfig& cfg);

/// Convolution of samples F with the kernel of N; exposes the quadrature.
std::vector<double> kernel_convolve(const Grid& grid, const std::vector<double>& F,
                                    const KernelRoots& k, const TailClosure& left = {});

/// Left closures for a run. For r < 1 both use the constant rate lambda, the
/// decay of every front built from these pairs. For r = 1 (algebraic tails,
/// log-slope growing with F_0) each closure passes through the log-slopes of F
/// at t_min of both the lower and the upper pair, so each is continued by its
/// own tail; when the two points do not determine an increasing power a single
/// rate (the larger) is used. Fixed for a whole run, keeping N monotone.
std::array<TailClosure, 2> fit_closure(const Profile& lower, const Profile& upper,
                                       const BzParams& params, double c, double B);

struct SolveDiagnostics {
    std::vector<double> lower_gap;  // sup |lower_{n+1} - lower_n|
    std::vector<double> twin_gap;   // sup |upper_n - lower_n|
    double max_order_violation = 0.0;
};

/// Twin monotone iteration from `lower` and `upper`; the returned Front is the
/// lower-sequence limit. Throws Error(ordering) when the sequences cross by more
/// than 10 tol. A run that hits max_iter returns converged = false.
Front solve_front(const Profile& upper, const Profile& lower, const BzParams& params, double c,
                  const IterConfig& cfg = {}, SolveDiagnostics* diag = nullptr);

/// Translation t0 with phi(t0) + psi(t0) = 3/2 (linear interpolation of the sum).
double normalization_point(const Profile& p);

struct Residuals {
    std::vector<double> res_phi;  // zero at the two end nodes
    std::vector<double> res_psi;
    double sup = 0.0;
};

/// Central-difference residuals of the profile equations at interior nodes.
Residuals bvp_residuals(const Profile& p, const BzParams& params, double c);

double bvp_residual(const Front& f, const BzParams& params);

}  // namespace bzwave
