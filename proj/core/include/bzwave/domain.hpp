#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "bzwave/error.hpp"

namespace bzwave {

enum class Regime { monostable, bistable };

std::string_view to_string(Regime regime);

/// Monostable iff r <= 1.
Regime classify_regime(double r);

/// Kinetic ratio r, rate b and delay h of the BZ system.
class BzParams {
public:
    /// Throws Error(invalid_argument) unless r > 0, b > 0, h >= 0.
    BzParams(double r, double b, double h = 0.0);

    double r() const noexcept { return r_; }
    double b() const noexcept { return b_; }
    double h() const noexcept { return h_; }

    Regime regime() const noexcept { return classify_regime(r_); }
    bool monostable() const noexcept { return r_ <= 1.0; }
    bool critical() const noexcept { return r_ == 1.0; }

private:
    double r_;
    double b_;
    double h_;
};

/// chi(z, c) = z^2 - c z + (1 - r).
inline double chi(double z, double c, double r) { return z * z - c * z + (1.0 - r); }

struct CharRoots {
    double lambda;
    double mu;
    double discriminant;  // c^2 - 4(1 - r)
};

/// Real roots of z^2 - c z + (1 - r) = 0. Throws Error(complex_roots) when
/// c^2 < 4(1 - r).
CharRoots char_roots(double c, double r);

/// Roots of (z^2 - c z - 1)(z^2 - c z - b) = 0, the linearization at (1, 1).
struct PlusInfinityRoots {
    double zeta1;        // negative root of z^2 - c z - b
    double zeta2;        // positive root of z^2 - c z - b
    double zeta1_tilde;  // negative root of z^2 - c z - 1
    double zeta2_tilde;  // positive root of z^2 - c z - 1
};

PlusInfinityRoots plus_infinity_roots(double c, double b);

/// Uniform sampling of [t_min, t_max] with n >= 3 nodes.
class Grid {
public:
    Grid(double t_min, double t_max, std::size_t n);

    /// [-60, 60] with 4801 nodes (spacing 0.025).
    static Grid standard();

    double t_min() const noexcept { return t_min_; }
    double t_max() const noexcept { return t_max_; }
    std::size_t n() const noexcept { return n_; }
    double spacing() const noexcept { return dt_; }
    double width() const noexcept { return t_max_ - t_min_; }
    double node(std::size_t i) const noexcept { return t_min_ + dt_ * static_cast<double>(i); }

    /// Same interval with the spacing halved (2n - 1 nodes).
    Grid refined() const { return Grid(t_min_, t_max_, 2 * n_ - 1); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double t_min_;
    double t_max_;
    std::size_t n_;
    double dt_;
};

/// Grid for solving at these parameters. The standard grid for r != 1; for
/// r = 1 the constructed pairs hold the limit front near t = +158, so the grid
/// is (-60, 240, 12001) at the same spacing.
Grid default_grid(const BzParams& params);

/// Linear interpolation of samples on `grid`, constant extension outside.
double interpolate(const Grid& grid, std::span<const double> values, double t);

struct PhiPsi {
    double phi;
    double psi;
};

/// Sampled pair (phi, psi) on a uniform grid. psi is the shifted inhibitor
/// variable, psi(t) = 1 - theta(t - c h).
class Profile {
public:
    Profile(Grid grid, std::vector<double> phi, std::vector<double> psi,
            std::vector<double> kinks = {});

    static Profile constant(const Grid& grid, double phi, double psi);
    static Profile sample(const Grid& grid, const std::function<double(double)>& phi,
                          const std::function<double(double)>& psi,
                          std::vector<double> kinks = {});

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> phi() const noexcept { return phi_; }
    std::span<const double> psi() const noexcept { return psi_; }
    std::vector<double>& phi_mut() noexcept { return phi_; }
    std::vector<double>& psi_mut() noexcept { return psi_; }

    /// Points where the first derivative is allowed to jump.
    std::span<const double> kinks() const noexcept { return kinks_; }

    /// Both components within [0, 1] at every sample.
    bool is_front_candidate() const;

    /// Profile translated so that the new one satisfies p(t) = old(t + shift),
    /// resampled on the same grid (constant extension past the ends).
    Profile shifted(double shift) const;

    /// Same samples on the grid moved by -shift: p(t) = old(t + shift), exact.
    Profile translated(double shift) const;

    /// Same functions resampled on another grid.
    Profile resampled(const Grid& grid) const;

private:
    Grid grid_;
    std::vector<double> phi_;
    std::vector<double> psi_;
    std::vector<double> kinks_;
};

PhiPsi interpolate(const Profile& profile, double t);

/// psi(t) = 1 - theta(t - c h), sampled on theta's own grid.
std::vector<double> psi_from_theta(const Grid& grid, std::span<const double> theta, double c,
                                   double h);

/// Converged (or best-effort) wavefront.
struct Front {
    Profile profile;
    double c = 0.0;
    double residual_inf = 0.0;
    double normalization_shift = 0.0;
    bool converged = false;
    int iterations = 0;
    double final_gap = 0.0;
    bool degenerate = false;  // true when the limit is a constant state, not a front
};

}  // namespace bzwave
