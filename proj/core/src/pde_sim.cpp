#include "bzwave/pde_sim.hpp"

#include <algorithm>
#include <cmath>

#include "bzwave/error.hpp"
#include "bzwave/iteration.hpp"
#include "bzwave/parallel.hpp"
#include "strfmt.hpp"

namespace bzwave {

using detail::strfmt;

std::size_t SimConfig::nodes() const {
    return static_cast<std::size_t>(std::llround(length / dx)) + 1;
}

std::size_t SimConfig::delay_steps() const {
    return static_cast<std::size_t>(std::llround(h / dt));
}

double SimConfig::delay_rounding_error() const {
    return std::abs(static_cast<double>(delay_steps()) * dt - h);
}

void SimConfig::validate() const {
    if (!(length > 0.0 && dx > 0.0 && dt > 0.0 && t_end > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "length, dx, dt and t_end must be positive");
    }
    if (!(h >= 0.0)) throw Error(ErrorKind::invalid_argument, "delay h must be >= 0");
    if (dt > 0.4 * dx * dx) {
        throw Error(ErrorKind::invalid_argument,
                    strfmt("dt = %.6g exceeds the stability limit 0.4 dx^2 = %.6g", dt, 0.4 * dx * dx));
    }
    if (nodes() < 3) throw Error(ErrorKind::invalid_argument, "fewer than 3 spatial nodes");
    if (!(track_level > 0.0 && track_level < 1.0)) {
        throw Error(ErrorKind::invalid_argument, "track_level must lie in (0, 1)");
    }
    if (!(transient_cut >= 0.0 && transient_cut < 1.0)) {
        throw Error(ErrorKind::invalid_argument, "transient_cut must lie in [0, 1)");
    }
    if (!(sample_every > 0.0)) throw Error(ErrorKind::invalid_argument, "sample_every must be > 0");
}

const std::vector<double>& FieldState::v_delayed() const {
    return v_history.empty() ? v : v_history[head];
}

FieldState init_state(const SimConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.nodes();
    FieldState s;
    s.u.assign(n, 0.0);
    s.v.assign(n, 1.0);
    const double x0 = cfg.length / 4.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = cfg.dx * static_cast<double>(i);
        const bool on = cfg.ic == InitialCondition::step_front ? x < x0 : std::abs(x - x0) <= 2.0;
        if (on) {
            s.u[i] = 1.0;
            s.v[i] = 0.0;
        }
    }
    s.v_history.assign(cfg.delay_steps(), s.v);
    return s;
}

void step(FieldState& s, const BzParams& p, const SimConfig& cfg) {
    const std::size_t n = s.u.size();
    const double k = cfg.dt / (cfg.dx * cfg.dx);
    const double dt = cfg.dt;
    const double r = p.r();
    const double b = p.b();
    const std::vector<double>& vd = s.v_delayed();
    std::vector<double> u1(n), v1(n);
    parallel_for(
        n,
        [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                // Zero flux: mirror the neighbour across each end.
                const std::size_t il = i == 0 ? 1 : i - 1;
                const std::size_t ir = i + 1 == n ? n - 2 : i + 1;
                const double u = s.u[i];
                const double v = s.v[i];
                u1[i] = u + k * (s.u[il] - 2.0 * u + s.u[ir]) + dt * u * (1.0 - u - r * vd[i]);
                v1[i] = v + k * (s.v[il] - 2.0 * v + s.v[ir]) - dt * b * u * v;
            }
        },
        1 << 14);
    double over = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        over = std::max({over, -u1[i], u1[i] - 1.0, -v1[i], v1[i] - 1.0});
    }
    s.max_overshoot = std::max(s.max_overshoot, over);
    if (!(over <= 1e-3)) {
        throw Error(ErrorKind::instability,
                    strfmt("field left [0, 1] by %.3g at t = %.6g", over, s.time + dt));
    }
    if (!s.v_history.empty()) {
        // The oldest slice is consumed; the current v becomes the newest.
        s.v_history[s.head] = std::move(s.v);
        s.head = (s.head + 1) % s.v_history.size();
    }
    s.u = std::move(u1);
    s.v = std::move(v1);
    s.time += dt;
}

double front_position(const FieldState& s, const SimConfig& cfg, double level) {
    const std::size_t n = s.u.size();
    for (std::size_t i = n; i-- > 0;) {
        if (s.u[i] >= level) {
            if (i + 1 == n) return cfg.dx * static_cast<double>(n - 1);
            const double a = s.u[i];
            const double b = s.u[i + 1];
            return cfg.dx * (static_cast<double>(i) + (a - level) / (a - b));
        }
    }
    return 0.0;
}

double u_mass(const FieldState& s, const SimConfig& cfg) {
    double m = 0.0;
    for (std::size_t i = 0; i < s.u.size(); ++i) m += s.u[i];
    m -= 0.5 * (s.u.front() + s.u.back());
    return m * cfg.dx;
}

SpeedEstimate run_and_track(const BzParams& p, const SimConfig& cfg_in) {
    SimConfig cfg = cfg_in;
    cfg.validate();
    FieldState s = init_state(cfg);
    SpeedEstimate est;
    est.transient_cut = cfg.transient_cut;
    est.delay_rounding_error = cfg.delay_rounding_error();
    const long steps = std::lround(cfg.t_end / cfg.dt);
    const long every = std::max(1L, std::lround(cfg.sample_every / cfg.dt));
    for (long k = 1; k <= steps; ++k) {
        step(s, p, cfg);
        if (k % every == 0) {
            est.times.push_back(s.time);
            est.positions.push_back(front_position(s, cfg, cfg.track_level));
            est.masses.push_back(u_mass(s, cfg));
        }
    }
    est.max_overshoot = s.max_overshoot;
    const double x_end = est.positions.empty() ? 0.0 : est.positions.back();
    if (x_end > 0.95 * cfg.length || s.u.back() > 1e-3) {
        throw Error(ErrorKind::boundary_hit,
                    strfmt("front reached the far boundary (x = %.6g of %.6g)", x_end, cfg.length));
    }
    const std::size_t first =
        static_cast<std::size_t>(std::floor(cfg.transient_cut * static_cast<double>(est.times.size())));
    const std::size_t m = est.times.size() - first;
    if (m < 3) throw Error(ErrorKind::poor_fit, "fewer than 3 samples after the transient");
    double mt = 0.0, mx = 0.0;
    for (std::size_t i = first; i < est.times.size(); ++i) {
        mt += est.times[i];
        mx += est.positions[i];
    }
    mt /= static_cast<double>(m);
    mx /= static_cast<double>(m);
    double stt = 0.0, stx = 0.0, sxx = 0.0;
    for (std::size_t i = first; i < est.times.size(); ++i) {
        const double dt = est.times[i] - mt;
        const double dxv = est.positions[i] - mx;
        stt += dt * dt;
        stx += dt * dxv;
        sxx += dxv * dxv;
    }
    est.speed = stx / stt;
    est.intercept = mx - est.speed * mt;
    est.r_squared = sxx > 0.0 ? (stx * stx) / (stt * sxx) : 0.0;
    for (std::size_t i = first + 1; i < est.times.size(); ++i) {
        if (est.positions[i] < est.positions[i - 1]) est.monotone_after_transient = false;
    }
    est.final_state = std::move(s);
    if (est.r_squared < 0.99) {
        throw Error(ErrorKind::poor_fit, strfmt("front position fit r^2 = %.6g < 0.99", est.r_squared));
    }
    return est;
}

Front extract_front(const FieldState& s, const BzParams& p, const SimConfig& cfg, double c) {
    const std::size_t n = s.u.size();
    const double xf = front_position(s, cfg, cfg.track_level);
    // Node j of the profile grid is x = x_{n-1-j}, s_j = xf - x.
    const Grid g(xf - cfg.dx * static_cast<double>(n - 1), xf, n);
    const Grid xs(0.0, cfg.dx * static_cast<double>(n - 1), n);
    const double lag = c * p.h();
    std::vector<double> phi(n), psi(n);
    for (std::size_t j = 0; j < n; ++j) {
        phi[j] = s.u[n - 1 - j];
        const double x = xf - g.node(j) + lag;  // theta(s - ch) sits at x + ch
        psi[j] = 1.0 - (lag == 0.0 ? s.v[n - 1 - j] : interpolate(xs, s.v, x));
    }
    Front f{Profile(g, std::move(phi), std::move(psi)), c};
    f.converged = true;
    f.normalization_shift = normalization_point(f.profile);
    f.profile = f.profile.translated(f.normalization_shift);
    f.residual_inf = bvp_residual(f, p);
    return f;
}

}  // namespace bzwave
