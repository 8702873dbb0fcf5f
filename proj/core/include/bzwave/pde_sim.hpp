#pragma once

#include <cstddef>
#include <vector>

#include "bzwave/domain.hpp"

namespace bzwave {

enum class InitialCondition { step_front, compact_bump };

struct SimConfig {
    double length = 500.0;
    double dx = 0.2;
    double dt = 0.01;
    double t_end = 200.0;
    double h = 0.0;  // delay used to size the history (normally params.h())
    InitialCondition ic = InitialCondition::step_front;
    double track_level = 0.5;
    double transient_cut = 0.5;
    double sample_every = 1.0;

    std::size_t nodes() const;
    /// round(h / dt).
    std::size_t delay_steps() const;
    /// |delay_steps * dt - h|, at most dt/2.
    double delay_rounding_error() const;
    /// Throws Error(invalid_argument) on dt > 0.4 dx^2 or non-positive sizes.
    void validate() const;
};

struct FieldState {
    std::vector<double> u;
    std::vector<double> v;
    // Ring buffer of the last delay_steps v-fields; slot `head` is the oldest.
    std::vector<std::vector<double>> v_history;
    std::size_t head = 0;
    double time = 0.0;
    double max_overshoot = 0.0;  // largest excursion of u or v outside [0, 1]

    /// v(t - h): the oldest history slice, or v itself without delay.
    const std::vector<double>& v_delayed() const;
};

/// Step front: u = 1 on x < length/4, else 0, v = 1 - u. Bump: u = 1 on a
/// width-4 bump centred at length/4, v = 1 outside it and 0 inside.
FieldState init_state(const SimConfig& cfg);

/// One explicit Euler step of
///   u_t = u_xx + u (1 - u - r v(t - h)),  v_t = v_xx - b u v
/// with zero-flux ends. Throws Error(instability) if a field leaves [0, 1] by
/// more than 1e-3.
void step(FieldState& state, const BzParams& params, const SimConfig& cfg);

/// Rightmost x where u crosses `level` downward (linear interpolation);
/// returns 0 when u < level everywhere and length when u >= level everywhere.
double front_position(const FieldState& state, const SimConfig& cfg, double level);

/// Integral of u (trapezoid rule).
double u_mass(const FieldState& state, const SimConfig& cfg);

struct SpeedEstimate {
    std::vector<double> times;
    std::vector<double> positions;
    std::vector<double> masses;
    double speed = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double transient_cut = 0.0;
    bool monotone_after_transient = true;
    double delay_rounding_error = 0.0;
    double max_overshoot = 0.0;
    FieldState final_state;
};

/// Simulates to t_end, sampling the front every `sample_every` time units, and
/// fits the speed on the samples after the transient. Throws
/// Error(boundary_hit) when the front ends within 5% of the far end or the far
/// node has u > 1e-3, Error(poor_fit) when r^2 < 0.99.
SpeedEstimate run_and_track(const BzParams& params, const SimConfig& cfg);

/// Travelling-wave profile read off a simulated state: the wave is
/// u(t, x) = phi(c t - x), v(t, x) = theta(c t - x), psi(s) = 1 - theta(s - c h).
/// The result is normalized like solve_front output (phi + psi = 3/2 at 0).
Front extract_front(const FieldState& state, const BzParams& params, const SimConfig& cfg,
                    double c);

}  // namespace bzwave
