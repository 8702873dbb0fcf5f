#include <gtest/gtest.h>

#include <cmath>

#include "bzwave/analysis.hpp"
#include "bzwave/iteration.hpp"
#include "bzwave/supersolutions.hpp"

using namespace bzwave;

namespace {

Front solved(const BzParams& p, double c) {
    const Grid g = default_grid(p);
    const auto up = build_upper_auto(p, c, g);
    const auto lo = build_lower(p, c, g, up.profile);
    return solve_front(up.profile, lo.profile, p, c);
}

const Front& front_05_5() {
    static const Front f = solved(BzParams(0.5, 5), 2);
    return f;
}

}  // namespace

TEST(Expansion, CriticalTwoTermValue) {
    const auto v = eval_expansion_critical(2, 5, 0, -20);
    EXPECT_NEAR(v.phi, 0.004320, 1e-6);
    // Oracle: 1.6/400 + A_c ln 20 / (-8000) with A_c = -(8*2/15)(4*1.2 - 4).
    const double A = -(16.0 / 15.0) * (4 * 1.2 - 4);
    EXPECT_NEAR(v.phi, 1.6 / 400 + A * std::log(20.0) / -8000.0, 1e-15);
    const auto k = critical_coefficients(2, 5, 0);
    EXPECT_NEAR(v.theta + k.C_c * std::log(20.0) / 400.0, 0.8, 1e-12);
}

TEST(Expansion, CriticalLogCoefficientsMatchCorrection) {
    for (double h : {0.0, 0.5}) {
        const auto k = critical_coefficients(1.9, 3, h);
        const double t = -50, L = std::log(50.0);
        const auto v = eval_expansion_critical(1.9, 3, h, t);
        EXPECT_NEAR((v.phi - 2 * 1.9 * 1.9 / 3 / (t * t)) * t * t * t / L, k.A_c, 1e-10);
        EXPECT_NEAR((v.theta - 1 - 2 * 1.9 / t) * t * t / L, -k.C_c, 1e-10);
    }
}

TEST(Expansion, CriticalDomain) {
    try {
        eval_expansion_critical(2, 5, 0, -2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::domain);
    }
}

TEST(Expansion, MonostableLeadingOrder) {
    const double lambda = 1 - std::sqrt(0.5);
    const auto v = eval_expansion_monostable(2, 0.5, 5, 0, -10);
    EXPECT_NEAR(v.phi, std::exp(-10 * lambda), 1e-14);
    EXPECT_NEAR(v.theta, 1 - 10 * std::exp(-10 * lambda), 1e-13);
    // b/(1 - r) is the first series coefficient at h = 0.
    const auto s = series_correction(BzParams(0.5, 5), 2, 1.0, 1.0);
    EXPECT_NEAR((1 - v.theta) / v.phi, s.b_coef[0], 1e-10);
}

TEST(Expansion, CriticalSpeedBranch) {
    const double c = 2 * std::sqrt(0.5);
    EXPECT_TRUE(at_critical_speed(c, 0.5));
    EXPECT_THROW(eval_expansion_monostable(c, 0.5, 5, 0, -10), Error);
    const auto v = eval_expansion_critical_speed(0.5, 5, 0, -10);
    EXPECT_NEAR(v.phi, 10 * std::exp(-5 * c), 1e-14);
}

TEST(TailFit, SyntheticExponential) {
    const Grid g = Grid::standard();
    Front f{Profile::sample(g, [](double t) { return std::exp(0.3 * t); },
                            [](double t) { return std::exp(0.3 * t); }),
            2};
    const auto fit = fit_tail_exponent(f, Side::minus_inf, 0.3);
    EXPECT_NEAR(fit.estimate, 0.3, 1e-6);
    EXPECT_GE(fit.nodes, 20);
    EXPECT_GE(fit.t_a, g.t_min() + 0.05 * g.width() - 1e-9);
}

TEST(TailFit, TooFewUsableNodes) {
    Front f{Profile::constant(Grid::standard(), 0.5, 0.5), 2};
    try {
        fit_tail_exponent(f, Side::minus_inf, 0.3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::window_too_short);
    }
}

TEST(TailFit, SyntheticAlgebraic) {
    const Grid g(-400, -10, 3901);
    Front f{Profile::sample(g, [](double t) { return 1.6 / (t * t); }, [](double t) { return 1.6 / (t * t); }), 2};
    const auto fit = fit_algebraic_tail(f, 5);
    EXPECT_NEAR(fit.estimate, 1.6, 1e-9);
    EXPECT_DOUBLE_EQ(fit.target, 1.6);
}

TEST(TailFit, AlgebraicIsTranslationInvariant) {
    const Grid g(-400, -10, 3901);
    Front f{Profile::sample(g, [](double t) { return 1.6 / ((t - 7) * (t - 7)); },
                            [](double t) { return 1.6 / ((t - 7) * (t - 7)); }),
            2};
    EXPECT_NEAR(fit_algebraic_tail(f, 5).estimate, 1.6, 1e-9);
}

TEST(TailFit, MonostableFrontMatchesLinearization) {
    const Front& f = front_05_5();
    const auto cr = char_roots(2, 0.5);
    const auto m = fit_tail_exponent(f, Side::minus_inf, cr.lambda);
    EXPECT_LT(m.rel_err, 0.05);
    EXPECT_LT(std::abs(m.estimate - cr.lambda), std::abs(m.estimate - cr.mu));
    const auto z = plus_infinity_roots(2, 5);
    const auto pl = fit_tail_exponent(f, Side::plus_inf, z.zeta1);
    EXPECT_LT(pl.rel_err, 0.05);
}

TEST(BistableRates, MuAndDelayedRate) {
    const auto r = bistable_tail_rates(0.12, 5);
    EXPECT_NEAR(r.phi_rate * r.phi_rate - 0.12 * r.phi_rate - 4, 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(r.psi_rate, 0.12);
    EXPECT_THROW(bistable_tail_rates(1, 0.5), Error);
}

TEST(Relations, MonostableFrontPasses) {
    const auto rep = check_relations(front_05_5(), BzParams(0.5, 5));
    EXPECT_DOUBLE_EQ(rep.K, 10.0);
    EXPECT_DOUBLE_EQ(rep.L, 1.0);
    EXPECT_DOUBLE_EQ(rep.M, 10.0);
    EXPECT_TRUE(rep.lower_A.applies);
    EXPECT_TRUE(rep.upper_A.applies);
    EXPECT_FALSE(rep.part_B.applies);
    EXPECT_TRUE(rep.all_pass());
    EXPECT_GT(rep.margin, 0.0);
}

TEST(Relations, SwappedComponentsViolateLowerBound) {
    const Front& f = front_05_5();
    Front s{Profile(f.profile.grid(), {f.profile.psi().begin(), f.profile.psi().end()},
                    {f.profile.phi().begin(), f.profile.phi().end()}),
            2};
    const auto rep = check_relations(s, BzParams(0.5, 5));
    EXPECT_FALSE(rep.lower_A.pass);
    EXPECT_FALSE(rep.all_pass());
}

TEST(Relations, DegenerateCaseComparesComponents) {
    const Grid g(-30, 30, 1201);
    auto logistic = [](double t) { return 1 / (1 + std::exp(-t)); };
    Front same{Profile::sample(g, logistic, logistic), 1.5};
    const auto rep = check_relations(same, BzParams(0.5, 0.5));
    EXPECT_TRUE(rep.degenerate.applies);
    EXPECT_TRUE(rep.degenerate.pass);
    EXPECT_EQ(rep.degenerate_sup, 0.0);
    Front off{Profile::sample(g, logistic, [&](double t) { return logistic(t + 0.5); }), 1.5};
    EXPECT_FALSE(check_relations(off, BzParams(0.5, 0.5)).degenerate.pass);
}

TEST(Relations, BistableOrderingAndNonMonotoneProfile) {
    const Grid g(-30, 30, 1201);
    auto logistic = [](double t) { return 1 / (1 + std::exp(-t)); };
    Front f{Profile::sample(g, logistic, [&](double t) { return logistic(t + 1); }), 0.12};
    const auto rep = check_relations(f, BzParams(5, 0.5));
    EXPECT_TRUE(rep.part_B.applies);
    EXPECT_TRUE(rep.part_B.pass);
    EXPECT_FALSE(rep.part_C.applies);
    Front bump{Profile::sample(g, [](double t) { return 0.5 + 0.4 * std::tanh(t) * std::exp(-t * t / 50); },
                               [](double t) { return 0.6 + 0.3 * std::tanh(t); }),
               0.12};
    EXPECT_FALSE(check_relations(bump, BzParams(5, 0.5)).monotone.pass);
}
