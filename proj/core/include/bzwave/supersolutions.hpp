#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bzwave/domain.hpp"

namespace bzwave {

/// phi_+ = e^{nu t}, psi_+ = D e^{nu t}.
struct ExponentialSuper {
    double c = 0.0;
    double nu = 0.0;
    double D = 0.0;
    double t1 = 0.0;  // psi_+(t1) = 1
    double t2 = 0.0;  // phi_+(t2) = 1
    double b_prime = 0.0;

    double phi(double t) const;
    double psi(double t) const;
};

/// phi_+ = e^{nu t}; psi_+ = D e^{nu t} up to t_star, then the line p + q t.
/// The line is tangent to D e^{nu t} at t_star and lies strictly below gamma.
struct TangentSuper {
    double c = 0.0;
    double r = 0.0;
    double nu = 0.0;
    double D = 0.0;
    double p = 0.0;
    double q = 0.0;
    double t_star = 0.0;
    double t_sharp = 0.0;  // tangency point of the unperturbed line with gamma
    double omega = 0.0;    // c / q
    double b_prime = 0.0;
    double q_unperturbed = 0.0;
    double perturbation = 0.0;  // relative decrease applied to q

    double phi(double t) const;
    double psi(double t) const;
    /// gamma(t) = (c nu - nu^2 + r - 1 + e^{nu t}) / r.
    double gamma(double t) const;
};

using BaseSuper = std::variant<ExponentialSuper, TangentSuper>;

double base_phi(const BaseSuper& s, double t);
double base_psi(const BaseSuper& s, double t);
double base_nu(const BaseSuper& s);

/// Default nu = c/2 - 1e-3 c, with the offset doubled until |nu - j lambda| >= 1e-6.
double auto_nu(const BzParams& params, double c);

/// Throws Error(invalid_argument) below 2 sqrt(1 - r), Error(condition_violated)
/// when (c nu - nu^2)(1 + 1/b') <= 1 or c nu - nu^2 = b', Error(resonance) when
/// no admissible nu is found.
ExponentialSuper build_exponential(const BzParams& params, double c,
                                   std::optional<double> nu = std::nullopt);

/// Throws Error(condition_violated) unless 0 < (c nu - nu^2)(1 + 1/b') <= 1,
/// Error(omega_too_large) when omega >= omega_star.
TangentSuper build_tangent(const BzParams& params, double c,
                           std::optional<double> nu = std::nullopt);

/// phi_A = sum_j a_j e^{j lambda t}, psi_A = sum_j b_j e^{j lambda t}
/// (each a_j, b_j already carries the amplitude factor A); r in (0, 1).
struct SeriesCorrection {
    double A = 0.0;
    int k = 0;
    double lambda = 0.0;
    double c = 0.0;
    double b = 0.0;
    double h = 0.0;
    std::vector<double> a;       // A a_1 .. A a_k
    std::vector<double> b_coef;  // A b_1 .. A b_k

    double phi(double t, int deriv = 0) const;
    double psi(double t, int deriv = 0) const;
};

SeriesCorrection series_correction(const BzParams& params, double c, double nu, double A);

/// Algebraic pair phi_T, psi_Q of the critical case r = 1, defined for t < -e.
struct CriticalCorrection {
    double c = 0.0;
    double b = 0.0;
    double h = 0.0;
    double T = 0.0;
    double Q = 0.0;
    double A_c = 0.0;
    double C_c = 0.0;
    double F_c = 0.0;
    double sigma = 0.0;  // verified on t <= -sigma
    double shift = 0.0;  // 1/A when used as an upper correction

    double phi_T(double t, int deriv = 0) const;
    double psi_Q(double t, int deriv = 0) const;
    double r11() const;
    double r21() const;
    /// phi_T'' - c phi_T' + phi_T (psi_Q - phi_T).
    double R1(double t) const;
    /// psi_Q'' - c psi_Q' + b phi_T(t - c h)(1 - psi_Q).
    double R2(double t) const;

    /// Correction used in the upper pair: phi_T(t - shift), frozen at
    /// argument -sigma where t - shift exceeds it.
    double phi(double t) const;
    double psi(double t) const;
};

/// Coefficients A_c, C_c, F_c for given (c, b, h); T, Q, sigma left at zero.
CriticalCorrection critical_coefficients(double c, double b, double h);

/// Chooses (T, Q) with r11 > 0 and r21 < 0 on the lattice T in {1e2, 1e3, 1e4}
/// (or the given values), then the smallest sigma > e for which phi_T, psi_Q > 0
/// and R1, R2 < 0 on sampled t <= -sigma. Throws Error(search_failure).
CriticalCorrection critical_correction(const BzParams& params, double c,
                                       std::optional<double> T = std::nullopt,
                                       std::optional<double> Q = std::nullopt);

struct UpperSolution {
    Profile profile;
    BaseSuper base;
    std::variant<std::monostate, SeriesCorrection, CriticalCorrection> correction;
    double A = 0.0;
    double iota1 = 0.0;  // Psi_+ reaches 1
    double iota2 = 0.0;  // Phi_+ reaches 1
    int halvings = 0;
};

struct UpperOptions {
    double A0 = 0.1;
    int max_halvings = 40;
};

/// Capped profile min{1, base + correction}, with A halved until the discrete
/// super-solution inequalities hold. r in (0, 1]. Throws Error(search_failure).
UpperSolution assemble_upper(const BzParams& params, double c, const BaseSuper& base,
                             const Grid& grid, const UpperOptions& options = {});

/// Exponential base when c >= c_hash admits one, tangent otherwise.
UpperSolution build_upper_auto(const BzParams& params, double c, const Grid& grid);

enum class LowerKind { kpp_subsolution, critical_plateau };

struct LowerPair {
    Profile profile;
    LowerKind kind = LowerKind::kpp_subsolution;
    // KPP sub-solution eps (e^{lambda t} - M e^{(lambda + delta) t}), held at its peak.
    double epsilon = 0.0;
    double delta = 0.0;
    double M = 1.0;
    double t_peak = 0.0;
    // Plateau pair phi_{T_n}(t + sigma_n), psi_{Q_n}(t + sigma_n) for t <= 0.
    double T_n = 0.0;
    double Q_n = 0.0;
    double kappa_n = 0.0;
    double sigma_n = 0.0;
};

/// Lower pair strictly below `upper`. Throws Error(ordering) when no admissible
/// amplitude or lattice point achieves strict ordering.
LowerPair build_lower(const BzParams& params, double c, const Grid& grid, const Profile& upper);

/// Plateau pair with T_n given; sigma_n and Q_n follow from phi_T' = psi_Q' = 0.
/// Throws Error(search_failure) when kappa_n leaves [0.34, 0.98] or the
/// residuals R1, R2 are not positive on t <= sigma_n.
LowerPair critical_plateau(const BzParams& params, double c, const Grid& grid, double T_n);

struct SuperCheck {
    double max_lambda1 = 0.0;  // over active nodes
    double max_lambda2 = 0.0;
    std::size_t active1 = 0;
    std::size_t active2 = 0;
    std::vector<std::size_t> skipped;  // nodes next to stored kinks
    bool strict = false;               // both maxima < 0 with at least one active node each

    double margin() const { return -std::max(max_lambda1, max_lambda2); }
};

/// Central-difference evaluation of Lambda_1, Lambda_2 at interior nodes with
/// t <= t_limit. A component saturated at 1 on a node and both neighbors is
/// inactive there (its inequality holds by construction).
SuperCheck check_supersolution(const Profile& upper, const BzParams& params, double c,
                               std::optional<double> t_limit = std::nullopt);

/// Central-difference sub-solution residuals of the lower pair (minimum over
/// interior nodes, excluding stored kinks).
struct SubCheck {
    double min_residual1 = 0.0;
    double min_residual2 = 0.0;
};
SubCheck check_subsolution(const Profile& lower, const BzParams& params, double c);

/// Lambda_1, Lambda_2 at node i of a sampled pair (central differences, delayed
/// argument via interpolation).
PhiPsi discrete_operator(const Profile& p, const BzParams& params, double c, std::size_t i);

}  // namespace bzwave
