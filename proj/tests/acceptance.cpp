// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bzwave/analysis.hpp"
#include "bzwave/iteration.hpp"
#include "bzwave/pde_sim.hpp"
#include "bzwave/speed_bounds.hpp"
#include "bzwave/supersolutions.hpp"
#include "support/random_profiles.hpp"

using namespace bzwave;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

bool within(double x, double target, double rel) { return std::abs(x - target) <= rel * std::abs(target); }

struct Solved {
    Front front;
    UpperSolution upper;
};

Solved solve(const BzParams& p, double c, const Grid& g, std::optional<std::string> kind = {}) {
    UpperSolution up = [&] {
        if (kind == std::string("tangent")) return assemble_upper(p, c, build_tangent(p, c), g);
        return build_upper_auto(p, c, g);
    }();
    const auto lo = build_lower(p, c, g, up.profile);
    Front f = solve_front(up.profile, lo.profile, p, c);
    return {std::move(f), std::move(up)};
}

// Fronts and simulations shared by several criteria, computed once on demand.
struct Cache {
    std::optional<Solved> c2, c2_fine, c17, crit, fisher;
    std::optional<SpeedEstimate> sim_mono, sim_fisher, sim_bi, sim_bi_delay;
    std::optional<Front> bi_front;

    const Front& front_c2() {
        if (!c2) c2 = solve(BzParams(0.5, 5), 2, Grid::standard());
        return c2->front;
    }
    const Front& front_c2_fine() {
        if (!c2_fine) c2_fine = solve(BzParams(0.5, 5), 2, Grid::standard().refined());
        return c2_fine->front;
    }
    const Solved& tangent() {
        if (!c17) c17 = solve(BzParams(0.5, 5), 1.7, Grid::standard(), "tangent");
        return *c17;
    }
    const Front& critical() {
        if (!crit) crit = solve(BzParams(1, 5), 2, default_grid(BzParams(1, 5)));
        return crit->front;
    }
    const Front& degenerate() {
        if (!fisher) fisher = solve(BzParams(0.5, 0.5), 1.5, Grid::standard());
        return fisher->front;
    }
    static SimConfig bistable_cfg(double h) {
        SimConfig cfg;
        cfg.h = h;
        cfg.t_end = 600;
        return cfg;
    }
    const SpeedEstimate& bistable(double h) {
        auto& slot = h == 0.0 ? sim_bi : sim_bi_delay;
        if (!slot) slot = run_and_track(BzParams(5, 0.5, h), bistable_cfg(h));
        return *slot;
    }
    const Front& bistable_front() {
        if (!bi_front) {
            const auto& e = bistable(0.0);
            bi_front = extract_front(e.final_state, BzParams(5, 0.5, 0), bistable_cfg(0.0), e.speed);
        }
        return *bi_front;
    }
};

Outcome criterion1(Cache&) {
    const double w = omega_star();
    const double res = w - 4 - 2 * std::log(w);
    return {std::abs(w - 8.21093) <= 1e-4 && std::abs(res) <= 1e-8,
            fmt("omega* = %.8f, residual %.2e", w, res)};
}

Outcome criterion2(Cache&) {
    struct Cell {
        const char* name;
        double computed, printed;
    };
    const BzParams a(0.5, 5), b(0.5, 10), c(1, 5), d(5, 0.5);
    const auto K = c_K_bistable(5, 0.5);
    const std::vector<Cell> cells{
        {"(0.5;5) c_l", c_l(0.5, 5), 1.414},  {"(0.5;5) c_k", *c_k(0.5, 5), 2},
        {"(0.5;5) c_hash", c_hash(a), 1.82},  {"(0.5;5) c_circ", c_circ(a), 1.62},
        {"(0.5;10) c_l", c_l(0.5, 10), 1.414}, {"(0.5;10) c_k", *c_k(0.5, 10), 2},
        {"(0.5;10) c_hash", c_hash(b), 1.90}, {"(0.5;10) c_circ", c_circ(b), 1.71},
        {"(1;5) c_l", c_l(1, 5), 0.289},      {"(1;5) c_k", *c_k(1, 5), 2},
        {"(1;5) c_hash", c_hash(c), 1.82},    {"(1;5) c_circ", c_circ(c), 1.47},
        {"(5;0.5) c_l", c_l(5, 0.5), 0.007},  {"(5;0.5) c_K", K.lower, 0.067},
        {"(5;0.5) upper", K.upper, 1.41},     {"(5;0.5) c_hash", c_hash(d), 1.15},
        {"(5;0.5) c_circ", c_circ(d), 0.59},
    };
    double worst = 0.0;
    std::string bad;
    for (const auto& k : cells) {
        const double diff = std::abs(k.computed - k.printed);
        worst = std::max(worst, diff);
        if (diff > 0.01) bad += std::string(" ") + k.name;
    }
    return {bad.empty(), fmt("%.0f cells, worst |diff| %.4f", cells.size(), worst) + (bad.empty() ? "" : ";" + bad)};
}

Outcome criterion3(Cache& c) {
    const Front& f = c.front_c2();
    const Front& g = c.front_c2_fine();
    const double ratio = f.residual_inf / g.residual_inf;
    return {f.converged && f.iterations <= 500 && f.residual_inf <= 1e-3 && ratio >= 3,
            fmt("converged %.0f, iterations %.0f, residual %.2e, refinement ratio %.2f", f.converged,
                f.iterations, f.residual_inf, ratio)};
}

Outcome criterion4(Cache& c) {
    const auto& s = c.tangent();
    const auto& base = std::get<TangentSuper>(s.upper.base);
    return {s.front.converged && !s.front.degenerate,
            fmt("omega %.3f, converged %.0f in %.0f iterations, residual %.2e", base.omega, s.front.converged,
                s.front.iterations, s.front.residual_inf)};
}

Outcome criterion5(Cache& c) {
    const Front& f = c.front_c2();
    const auto lam = fit_tail_exponent(f, Side::minus_inf, char_roots(2, 0.5).lambda);
    const auto zeta = fit_tail_exponent(f, Side::plus_inf, plus_infinity_roots(2, 5).zeta1);
    return {lam.rel_err <= 0.05 && zeta.rel_err <= 0.05 && std::abs(lam.target - 0.2929) < 1e-4 &&
                std::abs(zeta.target + 1.4495) < 1e-4,
            fmt("lambda fit %.5f (rel %.1e), zeta1 fit %.4f (rel %.1e)", lam.estimate, lam.rel_err, zeta.estimate,
                zeta.rel_err)};
}

Outcome criterion6(Cache& c) {
    const Front& f = c.critical();
    const auto fit = fit_algebraic_tail(f, 5);
    return {f.converged && within(fit.estimate, 1.6, 0.10),
            fmt("converged %.0f in %.0f iterations, phi t^2 -> %.4f (target 1.6)", f.converged, f.iterations,
                fit.estimate)};
}

Outcome criterion7(Cache& c) {
    const Front& f = c.degenerate();
    double sup = 0.0;
    for (std::size_t i = 0; i < f.profile.grid().n(); ++i) {
        sup = std::max(sup, std::abs(f.profile.phi()[i] - f.profile.psi()[i]));
    }
    return {f.converged && sup <= 1e-3, fmt("converged %.0f, sup|phi - psi| = %.2e", f.converged, sup)};
}

Outcome criterion8(Cache& c) {
    struct Case {
        const char* name;
        std::function<const Front&()> front;
        BzParams p;
    };
    const std::vector<Case> cases{
        {"(0.5,5,0) c=2", [&]() -> const Front& { return c.front_c2(); }, BzParams(0.5, 5)},
        {"(0.5,5,0) c=1.7", [&]() -> const Front& { return c.tangent().front; }, BzParams(0.5, 5)},
        {"(1,5,0) c=2", [&]() -> const Front& { return c.critical(); }, BzParams(1, 5)},
        {"(0.5,0.5,0) c=1.5", [&]() -> const Front& { return c.degenerate(); }, BzParams(0.5, 0.5)},
        {"(5,0.5,0) simulated", [&]() -> const Front& { return c.bistable_front(); }, BzParams(5, 0.5)},
    };
    bool pass = true;
    std::string detail;
    for (const auto& k : cases) {
        const auto rep = check_relations(k.front(), k.p);
        const bool ok = rep.all_pass() && rep.margin > 0.0;
        pass = pass && ok;
        char buf[120];
        std::snprintf(buf, sizeof buf, "%s%s margin %.1e", detail.empty() ? "" : "; ", k.name, rep.margin);
        detail += buf;
        if (!ok) detail += " FAIL";
    }
    return {pass, detail};
}

Outcome criterion9(Cache&) {
    proptest::SplitMix rng(9);
    const Grid g(-15, 15, 601);
    double worst_order = -INFINITY, worst_drop = 0.0, worst_fixed = 0.0;
    for (int k = 0; k < 100; ++k) {
        const BzParams p(rng.uniform(0.1, 6), rng.uniform(0.1, 10), rng.unit() < 0.5 ? 0.0 : rng.uniform(0, 1));
        const double c = rng.uniform(0.2, 3);
        const IterConfig cfg;
        const auto pr = proptest::random_ordered_pair(rng, g);
        const auto lo = apply_N(pr.lower, p, c, cfg);
        const auto hi = apply_N(pr.upper, p, c, cfg);
        for (std::size_t i = 0; i < g.n(); ++i) {
            worst_order = std::max({worst_order, lo.phi()[i] - hi.phi()[i], lo.psi()[i] - hi.psi()[i]});
            if (i > 0) {
                for (const Profile* q : {&lo, &hi}) {
                    worst_drop = std::max({worst_drop, q->phi()[i - 1] - q->phi()[i], q->psi()[i - 1] - q->psi()[i]});
                }
            }
        }
        for (double v : {0.0, 1.0}) {
            const auto out = apply_N(Profile::constant(g, v, v), p, c, cfg);
            for (std::size_t i = 0; i < g.n(); ++i) {
                worst_fixed = std::max({worst_fixed, std::abs(out.phi()[i] - v), std::abs(out.psi()[i] - v)});
            }
        }
    }
    return {worst_order <= 1e-13 && worst_drop <= 1e-13 && worst_fixed <= 1e-10,
            fmt("100 pairs: max order excess %.1e, max drop %.1e, fixed-point error %.1e", worst_order, worst_drop,
                worst_fixed)};
}

Outcome criterion10(Cache& c) {
    if (!c.sim_mono) c.sim_mono = run_and_track(BzParams(0.5, 5, 0), SimConfig{});
    if (!c.sim_fisher) c.sim_fisher = run_and_track(BzParams(0.5, 0.5, 0), SimConfig{});
    const double a = c.sim_mono->speed, b = c.sim_fisher->speed, s = c.bistable(0.0).speed;
    const double cc = c_circ(BzParams(5, 0.5));
    return {within(a, 1.46, 0.10) && within(b, 1.414, 0.05) && within(s, 0.12, 0.30) && s <= cc,
            fmt("(0.5,5) %.4f, (0.5,0.5) %.4f, (5,0.5) %.4f <= c_circ %.4f", a, b, s, cc)};
}

Outcome criterion11(Cache& c) {
    const double s0 = c.bistable(0.0).speed, s5 = c.bistable(0.5).speed;
    bool mono = true;
    for (const auto& [r, b] : {std::pair{0.5, 5.0}, std::pair{0.5, 10.0}, std::pair{1.0, 5.0}, std::pair{5.0, 0.5}}) {
        double ph = INFINITY, pc = INFINITY;
        for (double h : {0.0, 0.25, 0.5, 1.0}) {
            const BzParams p(r, b, h);
            const double ch = c_hash(p), cc = c_circ(p);
            mono = mono && ch <= ph && cc <= pc;
            ph = ch;
            pc = cc;
        }
    }
    return {s5 <= s0 && mono, fmt("bistable speed h=0.5 %.4f <= h=0 %.4f; bounds non-increasing in h: ", s5, s0) +
                                  (mono ? "yes" : "no")};
}

}  // namespace

int main() {
    Cache cache;
    const std::vector<std::function<Outcome(Cache&)>> criteria{
        criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6,
        criterion7, criterion8, criterion9, criterion10, criterion11,
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i](cache);
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("criterion %zu: %s - %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
