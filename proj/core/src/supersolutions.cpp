#include "bzwave/supersolutions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bzwave/speed_bounds.hpp"

namespace bzwave {

namespace {

constexpr double kE = 2.718281828459045;

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

void require_speed(const BzParams& p, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorKind::invalid_argument, "c must be > 0");
    if (p.r() < 1.0) {
        const double kpp = 2.0 * std::sqrt(1.0 - p.r());
        if (!(c > kpp)) {
            throw Error(ErrorKind::invalid_argument,
                        fmt("c = %.6g is not above the linear bound 2 sqrt(1 - r) = %.6g", c, kpp));
        }
    }
}

// d^k/dt^k of ln^k(-t) / t^m for t < 0, k in {0, 1, 2} powers of the log.
double log_power_term(int k, int m, double t, int deriv) {
    const double L = std::log(-t);
    auto Lp = [L](int e) { return e < 0 ? 0.0 : (e == 0 ? 1.0 : (e == 1 ? L : L * L)); };
    const double kk = k;
    const double mm = m;
    switch (deriv) {
        case 0: return Lp(k) * std::pow(t, -m);
        case 1: return std::pow(t, -m - 1) * (kk * Lp(k - 1) - mm * Lp(k));
        case 2:
            return std::pow(t, -m - 2) * (kk * (kk - 1.0) * Lp(k - 2) -
                                          (2.0 * mm + 1.0) * kk * Lp(k - 1) +
                                          mm * (mm + 1.0) * Lp(k));
        default: throw Error(ErrorKind::invalid_argument, "derivative order must be 0, 1 or 2");
    }
}

// Crossing of level 1 by an increasing function, located between grid-size
// steps by bisection; +inf when it stays below 1 up to t_hi.
double level_one_crossing(const std::function<double(double)>& f, double t_lo, double t_hi,
                          double step) {
    double a = t_lo;
    if (f(a) >= 1.0) return a;
    for (double b = a + step; b <= t_hi + step; a = b, b += step) {
        if (f(b) >= 1.0) {
            return solve_root([&](double t) { return f(t) - 1.0; }, a, b, 1e-12);
        }
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

double ExponentialSuper::phi(double t) const { return std::exp(nu * t); }
double ExponentialSuper::psi(double t) const { return D * std::exp(nu * t); }

double TangentSuper::phi(double t) const { return std::exp(nu * t); }
double TangentSuper::psi(double t) const {
    return t <= t_star ? D * std::exp(nu * t) : p + q * t;
}
double TangentSuper::gamma(double t) const {
    return (c * nu - nu * nu + r - 1.0 + std::exp(nu * t)) / r;
}

double base_phi(const BaseSuper& s, double t) {
    return std::visit([t](const auto& x) { return x.phi(t); }, s);
}
double base_psi(const BaseSuper& s, double t) {
    return std::visit([t](const auto& x) { return x.psi(t); }, s);
}
double base_nu(const BaseSuper& s) {
    return std::visit([](const auto& x) { return x.nu; }, s);
}

double auto_nu(const BzParams& p, double c) {
    double lambda = 0.0;
    if (p.r() < 1.0) lambda = char_roots(c, p.r()).lambda;
    double delta = 1e-3 * c;
    for (int attempt = 0; attempt < 30; ++attempt, delta *= 2.0) {
        const double nu = c / 2.0 - delta;
        if (!(nu > lambda)) break;
        bool resonant = false;
        if (lambda > 0.0) {
            const double j = std::round(nu / lambda);
            resonant = j >= 1.0 && std::abs(nu - j * lambda) < 1e-6;
        }
        if (!resonant) return nu;
    }
    throw Error(ErrorKind::resonance, fmt("no non-resonant nu near c/2 = %.6g", c / 2.0));
}

ExponentialSuper build_exponential(const BzParams& p, double c, std::optional<double> nu_in) {
    require_speed(p, c);
    const double nu = nu_in ? *nu_in : auto_nu(p, c);
    if (p.r() < 1.0) {
        const auto cr = char_roots(c, p.r());
        if (!(nu > cr.lambda && nu < cr.mu)) {
            throw Error(ErrorKind::invalid_argument,
                        fmt("nu = %.6g must lie in (lambda, mu) = (%.6g, %.6g)", nu, cr.lambda, cr.mu));
        }
    } else if (!(nu > 0.0 && nu < c)) {
        throw Error(ErrorKind::invalid_argument, fmt("nu = %.6g must lie in (0, c)", nu));
    }
    ExponentialSuper s;
    s.c = c;
    s.nu = nu;
    s.b_prime = p.b() * std::exp(-nu * c * p.h());
    const double g = c * nu - nu * nu;
    const double lhs = g * (1.0 + 1.0 / s.b_prime);
    if (!(lhs > 1.0)) {
        throw Error(ErrorKind::condition_violated,
                    fmt("(c nu - nu^2)(1 + 1/b') = %.6g <= 1: c = %.6g is below c_hash for this nu",
                        lhs, c));
    }
    if (g == s.b_prime) throw Error(ErrorKind::condition_violated, "c nu - nu^2 equals b'");
    s.D = s.b_prime / g;
    s.t1 = std::log(g / s.b_prime) / nu;
    s.t2 = 0.0;
    return s;
}

TangentSuper build_tangent(const BzParams& p, double c, std::optional<double> nu_in) {
    require_speed(p, c);
    const double nu = nu_in ? *nu_in : auto_nu(p, c);
    TangentSuper s;
    s.c = c;
    s.r = p.r();
    s.nu = nu;
    s.b_prime = p.b() * std::exp(-nu * c * p.h());
    const double g = c * nu - nu * nu;
    const double lhs = g * (1.0 + 1.0 / s.b_prime);
    if (!(lhs > 0.0 && lhs <= 1.0)) {
        throw Error(ErrorKind::condition_violated,
                    fmt("(c nu - nu^2)(1 + 1/b') = %.6g is outside (0, 1]", lhs));
    }
    if (g == s.b_prime) throw Error(ErrorKind::condition_violated, "c nu - nu^2 equals b'");
    s.D = s.b_prime / g;
    const double slack = g + p.r() - 1.0;
    if (!(slack > 0.0) || !(p.r() * s.D > 1.0)) {
        throw Error(ErrorKind::condition_violated,
                    fmt("tangent construction needs c nu - nu^2 + r - 1 > 0 and r D > 1 (got %.6g, %.6g)",
                        slack, p.r() * s.D));
    }
    const double q0 = slack * nu / (p.r() * std::log(p.r() * s.D));
    s.q_unperturbed = q0;
    s.t_sharp = std::log(q0 * p.r() / nu) / nu;
    s.omega = c / q0;

    // Perturb the slope down until the line clears gamma at its closest point.
    double eps = 1e-9;
    for (; eps <= 1e-3; eps *= 10.0) {
        s.q = q0 * (1.0 - eps);
        s.t_star = std::log(s.q / (s.D * nu)) / nu;
        s.p = (s.q / nu) * std::log(s.D * nu * kE / s.q);
        const double tm = std::log(s.q * p.r() / nu) / nu;
        if (s.gamma(tm) - (s.p + s.q * tm) > 0.0) break;
    }
    s.perturbation = eps;

    if (!(s.omega > 2.0)) {
        throw Error(ErrorKind::condition_violated, fmt("omega = %.6g is not above 2", s.omega));
    }
    const double lhs35 = (1.0 - s.p) * nu;
    const double rhs35 = s.q * std::log(kE * c * nu / s.b_prime);
    if (s.omega >= omega_star() || !(lhs35 < rhs35)) {
        throw Error(ErrorKind::omega_too_large,
                    fmt("omega = %.6g >= omega_star = %.6g: c = %.6g is not above c_circ", s.omega,
                        omega_star(), c));
    }
    return s;
}

double SeriesCorrection::phi(double t, int deriv) const {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) {
        const double z = j * lambda;
        s += a[j - 1] * std::pow(z, deriv) * std::exp(z * t);
    }
    return s;
}

double SeriesCorrection::psi(double t, int deriv) const {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) {
        const double z = j * lambda;
        s += b_coef[j - 1] * std::pow(z, deriv) * std::exp(z * t);
    }
    return s;
}

SeriesCorrection series_correction(const BzParams& p, double c, double nu, double A) {
    if (!(p.r() > 0.0 && p.r() < 1.0)) {
        throw Error(ErrorKind::out_of_regime, "series correction requires r in (0, 1)");
    }
    const double r = p.r();
    const double lambda = char_roots(c, r).lambda;
    SeriesCorrection s;
    s.A = A;
    s.lambda = lambda;
    s.c = c;
    s.b = p.b();
    s.h = p.h();
    s.k = std::max(1, static_cast<int>(std::floor(nu / lambda + 1e-12)));
    std::vector<double> a(s.k + 1, 0.0), bc(s.k + 1, 0.0);
    a[1] = 1.0;
    bc[1] = p.b() * std::exp(-lambda * c * p.h()) / (1.0 - r);
    for (int j = 2; j <= s.k; ++j) {
        const double x = chi(j * lambda, c, r);
        const double y = 1.0 - r - x;
        if (std::abs(x) < 1e-14 || std::abs(y) < 1e-14) {
            throw Error(ErrorKind::resonance, fmt("resonant series term j = %.0f", j));
        }
        double sum = 0.0;
        for (int pp = 1; pp < j; ++pp) sum += a[pp] * (a[j - pp] - r * bc[j - pp]);
        a[j] = A * sum / x;
        bc[j] = p.b() * a[j] * std::exp(-j * lambda * c * p.h()) / y;
    }
    for (int j = 1; j <= s.k; ++j) {
        s.a.push_back(A * a[j]);
        s.b_coef.push_back(A * bc[j]);
    }
    return s;
}

double CriticalCorrection::phi_T(double t, int d) const {
    return (2.0 * c * c / b) * log_power_term(0, 2, t, d) + A_c * log_power_term(1, 3, t, d) +
           T * log_power_term(2, 4, t, d);
}

double CriticalCorrection::psi_Q(double t, int d) const {
    return -2.0 * c * log_power_term(0, 1, t, d) + C_c * log_power_term(1, 2, t, d) +
           F_c * log_power_term(0, 2, t, d) + Q * log_power_term(2, 3, t, d);
}

double CriticalCorrection::r11() const { return 2.0 * c * T + 2.0 * c * c * Q / b + A_c * C_c; }
double CriticalCorrection::r21() const { return b * T + 3.0 * c * Q; }

double CriticalCorrection::R1(double t) const {
    const double f = phi_T(t);
    return phi_T(t, 2) - c * phi_T(t, 1) + f * (psi_Q(t) - f);
}

double CriticalCorrection::R2(double t) const {
    const double g = psi_Q(t);
    return psi_Q(t, 2) - c * psi_Q(t, 1) + b * phi_T(t - c * h) * (1.0 - g);
}

double CriticalCorrection::phi(double t) const { return phi_T(std::min(t - shift, -sigma)); }
double CriticalCorrection::psi(double t) const { return psi_Q(std::min(t - shift, -sigma)); }

CriticalCorrection critical_coefficients(double c, double b, double h) {
    CriticalCorrection cc;
    cc.c = c;
    cc.b = b;
    cc.h = h;
    const double x = c * c * (1.0 + h + 1.0 / b) - 4.0;
    cc.A_c = -(8.0 * c / (3.0 * b)) * x;
    cc.C_c = (4.0 / 3.0) * x;
    cc.F_c = (2.0 / 3.0) * (c * c * (1.0 / b - 2.0 - 2.0 * h) - 1.0);
    return cc;
}

namespace {

// Log-spaced samples from -t_near down to -t_far.
std::vector<double> far_samples(double t_near, double t_far, double ratio = 1.01) {
    std::vector<double> out;
    for (double s = t_near; s <= t_far; s *= ratio) out.push_back(-s);
    return out;
}

// Smallest sigma > e (on the sample lattice) such that the predicate holds for
// every sample with |t| >= sigma; nullopt when the far end already fails.
std::optional<double> ray_threshold(const std::vector<double>& ts,
                                    const std::function<bool(double)>& ok) {
    std::optional<double> sigma;
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        if (!ok(*it)) break;
        sigma = -*it;
    }
    return sigma;
}

}  // namespace

CriticalCorrection critical_correction(const BzParams& p, double c, std::optional<double> T_in,
                                       std::optional<double> Q_in) {
    if (p.r() != 1.0) throw Error(ErrorKind::out_of_regime, "critical correction requires r = 1");
    if (!(c > 0.0)) throw Error(ErrorKind::invalid_argument, "c must be > 0");
    CriticalCorrection base = critical_coefficients(c, p.b(), p.h());
    std::vector<double> lattice = T_in ? std::vector<double>{*T_in} : std::vector<double>{1e2, 1e3, 1e4};
    const auto ts = far_samples(kE * 1.0001, 1e6);
    for (double T : lattice) {
        CriticalCorrection cc = base;
        cc.T = T;
        if (Q_in) {
            cc.Q = *Q_in;
        } else {
            const double lo = -p.b() * T / c - cc.A_c * cc.C_c * p.b() / (2.0 * c * c);
            const double hi = -p.b() * T / (3.0 * c);
            if (!(lo < hi)) continue;
            cc.Q = 0.5 * (lo + hi);
        }
        if (!(cc.r11() > 0.0 && cc.r21() < 0.0)) continue;
        const auto sigma = ray_threshold(ts, [&](double t) {
            return cc.phi_T(t) > 0.0 && cc.psi_Q(t) > 0.0 && cc.phi_T(t, 1) > 0.0 &&
                   cc.psi_Q(t, 1) > 0.0 && cc.R1(t) < 0.0 && cc.R2(t) < 0.0;
        });
        if (sigma && *sigma < 1e4) {
            cc.sigma = *sigma;
            return cc;
        }
    }
    throw Error(ErrorKind::search_failure,
                fmt("no (T, Q) on the lattice T in [%.3g, %.3g] verifies the critical correction",
                    lattice.front(), lattice.back()));
}

PhiPsi discrete_operator(const Profile& pr, const BzParams& p, double c, std::size_t i) {
    const auto& g = pr.grid();
    const double d = g.spacing();
    const auto f = pr.phi();
    const auto s = pr.psi();
    const double f2 = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (d * d);
    const double f1 = (f[i + 1] - f[i - 1]) / (2.0 * d);
    const double s2 = (s[i + 1] - 2.0 * s[i] + s[i - 1]) / (d * d);
    const double s1 = (s[i + 1] - s[i - 1]) / (2.0 * d);
    const double fd = p.h() == 0.0 ? f[i] : interpolate(g, f, g.node(i) - c * p.h());
    return {f2 - c * f1 + f[i] * (1.0 - p.r() - f[i] + p.r() * s[i]),
            s2 - c * s1 + p.b() * fd * (1.0 - s[i])};
}

namespace {

bool near_kink(const Profile& pr, double t) {
    const double tol = 1.5 * pr.grid().spacing();
    for (double k : pr.kinks()) {
        if (std::abs(t - k) <= tol) return true;
    }
    return false;
}

}  // namespace

SuperCheck check_supersolution(const Profile& pr, const BzParams& p, double c,
                               std::optional<double> t_limit) {
    SuperCheck out;
    out.max_lambda1 = -std::numeric_limits<double>::infinity();
    out.max_lambda2 = -std::numeric_limits<double>::infinity();
    const auto& g = pr.grid();
    const auto f = pr.phi();
    const auto s = pr.psi();
    for (std::size_t i = 1; i + 1 < g.n(); ++i) {
        const double t = g.node(i);
        if (t_limit && t > *t_limit) break;
        if (near_kink(pr, t)) {
            out.skipped.push_back(i);
            continue;
        }
        const bool sat1 = f[i - 1] >= 1.0 && f[i] >= 1.0 && f[i + 1] >= 1.0;
        const bool sat2 = s[i - 1] >= 1.0 && s[i] >= 1.0 && s[i + 1] >= 1.0;
        const auto L = discrete_operator(pr, p, c, i);
        if (!sat1) {
            out.max_lambda1 = std::max(out.max_lambda1, L.phi);
            ++out.active1;
        }
        if (!sat2) {
            out.max_lambda2 = std::max(out.max_lambda2, L.psi);
            ++out.active2;
        }
    }
    if (out.active1 == 0) out.max_lambda1 = 0.0;
    if (out.active2 == 0) out.max_lambda2 = 0.0;
    out.strict = out.active1 > 0 && out.active2 > 0 && out.max_lambda1 < 0.0 &&
                 out.max_lambda2 < 0.0;
    return out;
}

SubCheck check_subsolution(const Profile& pr, const BzParams& p, double c) {
    SubCheck out{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    const auto& g = pr.grid();
    for (std::size_t i = 1; i + 1 < g.n(); ++i) {
        if (near_kink(pr, g.node(i))) continue;
        const auto L = discrete_operator(pr, p, c, i);
        out.min_residual1 = std::min(out.min_residual1, L.phi);
        out.min_residual2 = std::min(out.min_residual2, L.psi);
    }
    return out;
}

namespace {

Profile sample_upper(const Grid& g, const std::function<double(double)>& phi,
                     const std::function<double(double)>& psi, double& iota1, double& iota2,
                     std::vector<double> extra_kinks) {
    iota2 = level_one_crossing(phi, g.t_min(), g.t_max(), g.spacing());
    iota1 = level_one_crossing(psi, g.t_min(), g.t_max(), g.spacing());
    std::vector<double> kinks = std::move(extra_kinks);
    if (std::isfinite(iota1)) kinks.push_back(iota1);
    if (std::isfinite(iota2)) kinks.push_back(iota2);
    return Profile::sample(
        g, [&](double t) { return std::min(1.0, phi(t)); },
        [&](double t) { return std::min(1.0, psi(t)); }, std::move(kinks));
}

bool non_decreasing_positive(const Profile& pr) {
    const auto f = pr.phi();
    const auto s = pr.psi();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(f[i] > 0.0 && s[i] > 0.0)) return false;
        if (i > 0 && (f[i] < f[i - 1] || s[i] < s[i - 1])) return false;
    }
    return true;
}

}  // namespace

UpperSolution assemble_upper(const BzParams& p, double c, const BaseSuper& base, const Grid& g,
                             const UpperOptions& opt) {
    if (p.r() > 1.0) throw Error(ErrorKind::out_of_regime, "upper solutions require r <= 1");
    const double nu = base_nu(base);
    std::optional<CriticalCorrection> crit;
    if (p.critical()) crit = critical_correction(p, c);

    for (int k = 0; k <= opt.max_halvings; ++k) {
        const double A = opt.A0 * std::ldexp(1.0, -k);
        UpperSolution up{Profile::constant(g, 1.0, 1.0), base, std::monostate{}, A};
        up.halvings = k;
        std::vector<double> extra;
        if (crit) {
            CriticalCorrection cc = *crit;
            cc.shift = 1.0 / A;
            const double freeze = cc.shift - cc.sigma;
            if (freeze < g.t_max()) extra.push_back(freeze);
            up.profile = sample_upper(
                g, [&](double t) { return base_phi(base, t) + cc.phi(t); },
                [&](double t) { return base_psi(base, t) + cc.psi(t); }, up.iota1, up.iota2, extra);
            up.correction = cc;
        } else {
            const SeriesCorrection sc = series_correction(p, c, nu, A);
            up.profile = sample_upper(
                g, [&](double t) { return base_phi(base, t) + sc.phi(t); },
                [&](double t) { return base_psi(base, t) + sc.psi(t); }, up.iota1, up.iota2, extra);
            up.correction = sc;
        }
        if (!non_decreasing_positive(up.profile)) continue;
        if (check_supersolution(up.profile, p, c).strict) return up;
    }
    throw Error(ErrorKind::search_failure,
                fmt("no amplitude A in [%.3g, %.3g] passes the discrete super-solution check",
                    opt.A0 * std::ldexp(1.0, -opt.max_halvings), opt.A0));
}

UpperSolution build_upper_auto(const BzParams& p, double c, const Grid& g) {
    if (p.r() > 1.0) throw Error(ErrorKind::out_of_regime, "upper solutions require r <= 1");
    try {
        return assemble_upper(p, c, build_exponential(p, c), g);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::condition_violated) throw;
    }
    return assemble_upper(p, c, build_tangent(p, c), g);
}

namespace {

bool strictly_below(const Profile& lo, const Profile& up) {
    for (std::size_t i = 0; i < lo.grid().n(); ++i) {
        if (!(lo.phi()[i] < up.phi()[i] && lo.psi()[i] < up.psi()[i])) return false;
    }
    return true;
}

LowerPair kpp_lower(const BzParams& p, double c, const Grid& g, const Profile& upper) {
    const auto cr = char_roots(c, p.r());
    LowerPair lp{Profile::constant(g, 0.0, 0.0)};
    lp.kind = LowerKind::kpp_subsolution;
    lp.delta = 0.5 * std::min(cr.mu - cr.lambda, cr.lambda);
    lp.M = 1.0;
    const double z = cr.lambda + lp.delta;
    lp.t_peak = std::log(cr.lambda / (lp.M * z)) / lp.delta;
    const double eps0 = lp.M * std::abs(chi(z, c, p.r()));
    for (int k = 0; k < 60; ++k) {
        const double eps = eps0 * std::ldexp(1.0, -k);
        auto f = [&](double t) {
            const double s = std::min(t, lp.t_peak);
            return eps * (std::exp(cr.lambda * s) - lp.M * std::exp(z * s));
        };
        Profile pr = Profile::sample(g, f, [](double) { return 0.0; });
        if (strictly_below(pr, upper)) {
            lp.epsilon = eps;
            lp.profile = std::move(pr);
            return lp;
        }
    }
    throw Error(ErrorKind::ordering, "no KPP sub-solution amplitude lies strictly below the upper pair");
}

}  // namespace

LowerPair critical_plateau(const BzParams& p, double c, const Grid& g, double T_n) {
    if (!(T_n < 0.0)) throw Error(ErrorKind::invalid_argument, "plateau pair requires T_n < 0");
    CriticalCorrection cc = critical_coefficients(c, p.b(), p.h());
    cc.T = T_n;
    // First root of phi_T' coming from -inf, where phi_T' > 0.
    double sigma = std::numeric_limits<double>::quiet_NaN();
    double prev = -1e8;
    for (double s = 1e8 / 1.01; s > kE; s /= 1.01) {
        const double t = -s;
        if (cc.phi_T(t, 1) <= 0.0) {
            sigma = solve_root([&](double x) { return cc.phi_T(x, 1); }, prev, t, 1e-12);
            break;
        }
        prev = t;
    }
    if (!std::isfinite(sigma) || !(sigma < -kE)) {
        throw Error(ErrorKind::search_failure, fmt("phi_T' has no root below -e for T = %.6g", T_n));
    }
    const double base1 = -2.0 * c * log_power_term(0, 1, sigma, 1) +
                         cc.C_c * log_power_term(1, 2, sigma, 1) +
                         cc.F_c * log_power_term(0, 2, sigma, 1);
    cc.Q = -base1 / log_power_term(2, 3, sigma, 1);
    const double kappa = -cc.Q * c / (p.b() * T_n);
    if (!(kappa >= 0.34 && kappa <= 0.98)) {
        throw Error(ErrorKind::search_failure,
                    fmt("kappa = %.6g outside [0.34, 0.98] for T = %.6g", kappa, T_n));
    }
    // Residual signs and monotonicity on the ray t <= sigma.
    const double reach = std::max(1e6, 10.0 * (-sigma + g.width()));
    for (double s = -sigma * (1.0 + 1e-9); s <= reach; s *= 1.01) {
        const double t = -s;
        if (!(cc.R1(t) > 0.0 && cc.R2(t) > 0.0 && cc.phi_T(t) > 0.0 && cc.psi_Q(t) > 0.0 &&
              cc.phi_T(t, 1) > 0.0 && cc.psi_Q(t, 1) > 0.0)) {
            throw Error(ErrorKind::search_failure,
                        fmt("plateau residuals fail at t = %.6g for T = %.6g", t, T_n));
        }
    }
    LowerPair lp{Profile::sample(
        g, [&](double t) { return cc.phi_T(std::min(t, 0.0) + sigma); },
        [&](double t) { return cc.psi_Q(std::min(t, 0.0) + sigma); })};
    lp.kind = LowerKind::critical_plateau;
    lp.T_n = T_n;
    lp.Q_n = cc.Q;
    lp.kappa_n = kappa;
    lp.sigma_n = sigma;
    return lp;
}

LowerPair build_lower(const BzParams& p, double c, const Grid& g, const Profile& upper) {
    if (p.r() > 1.0) throw Error(ErrorKind::out_of_regime, "lower pairs require r <= 1");
    if (!p.critical()) return kpp_lower(p, c, g, upper);
    // Smallest |T_n| first: it gives the largest plateau.
    std::string last = "empty lattice";
    for (double T = -1e2; T >= -1e4 * 1.0001; T *= std::sqrt(2.0)) {
        try {
            LowerPair lp = critical_plateau(p, c, g, T);
            if (strictly_below(lp.profile, upper)) return lp;
            last = fmt("plateau at T = %.6g is not strictly below the upper pair", T);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::search_failure) throw;
            last = e.what();
        }
    }
    throw Error(ErrorKind::ordering, "no plateau lower pair on T in [-1e4, -1e2]: " + last);
}

}  // namespace bzwave
