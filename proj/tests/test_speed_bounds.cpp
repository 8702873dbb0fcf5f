#include <gtest/gtest.h>

#include <cmath>

#include "bzwave/speed_bounds.hpp"
#include "support/random_profiles.hpp"

using namespace bzwave;

TEST(SolveRoot, BracketedExamples) {
    EXPECT_NEAR(solve_root([](double x) { return x * x - 2; }, 1, 2), std::sqrt(2.0), 1e-11);
    EXPECT_NEAR(solve_root([](double x) { return x; }, -1, 1), 0.0, 1e-11);
    EXPECT_NEAR(solve_root([](double w) { return w - 4 - 2 * std::log(w); }, 5, 20), 8.21093, 1e-4);
}

TEST(SolveRoot, SameSignIsAnError) {
    try {
        solve_root([](double x) { return x * x + 1; }, -1, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::no_bracket);
    }
}

TEST(OmegaStar, BothRootsOfDefiningEquation) {
    const double w = omega_star();
    EXPECT_NEAR(w, 8.21093, 1e-4);
    EXPECT_NEAR(w - 4 - 2 * std::log(w), 0.0, 1e-8);
    const double v = omega_star_lesser();
    EXPECT_NEAR(v, 0.14555, 1e-5);
    EXPECT_NEAR(v - 4 - 2 * std::log(v), 0.0, 1e-8);
}

TEST(CL, TableValues) {
    EXPECT_NEAR(c_l(0.5, 5), 1.414, 1e-3);
    EXPECT_NEAR(c_l(1, 5), 0.289, 1e-3);
    EXPECT_NEAR(c_l(5, 0.5), 0.007, 1e-3);
}

TEST(CK, Branches) {
    EXPECT_NEAR(*c_k(0.5, 0.9), 2 * std::sqrt(0.5), 1e-12);
    EXPECT_DOUBLE_EQ(*c_k(0.5, 5), 2.0);
    // (0.5, 0.8) meets both of the first two conditions; the smaller bound wins.
    EXPECT_NEAR(*c_k(0.5, 0.8), 2 * std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(*c_k(0.9, 0.8), 2 * std::sqrt(0.8), 1e-12);
    EXPECT_FALSE(c_k(1, 1).has_value());
    EXPECT_THROW(c_k(2, 1), Error);
}

TEST(CHash, ClosedFormBranches) {
    EXPECT_NEAR(c_hash(BzParams(0.5, 5)), 2 * std::sqrt(5.0 / 6.0), 1e-9);
    EXPECT_NEAR(c_hash(BzParams(5, 0.5)), 2 * std::sqrt(0.5 / 1.5), 1e-9);
    EXPECT_NEAR(c_hash(BzParams(0.5, 0.9)), 2 * std::sqrt(0.5), 1e-9);
}

TEST(CHash, DelayedRootSatisfiesDefinition) {
    proptest::SplitMix rng(21);
    for (int k = 0; k < 50; ++k) {
        const double r = rng.uniform(0.1, 6), b = rng.uniform(0.2, 10), h = rng.uniform(0, 2);
        const double c = c_hash(BzParams(r, b, h));
        const double bp = b_prime_bounds(b, c, h);
        const double re = r < 1 ? std::sqrt(1 - r) : 0.0;
        const double rhs = 2 * std::max(re, std::sqrt(bp / (1 + bp)));
        EXPECT_NEAR(c, rhs, 1e-8) << r << ' ' << b << ' ' << h;
    }
}

TEST(CCirc, TableValuesAndRootProperty) {
    EXPECT_NEAR(c_circ(BzParams(0.5, 5)), 1.625, 0.006);
    EXPECT_NEAR(c_circ(BzParams(1, 5)), 1.47, 0.005);
    EXPECT_NEAR(c_circ(BzParams(5, 0.5)), 0.59, 0.005);
    for (const BzParams p : {BzParams(0.5, 5), BzParams(1, 5), BzParams(5, 0.5, 0.3)}) {
        const double c = c_circ(p);
        EXPECT_NEAR(f_circ(c * c, p.r(), p.b(), p.h()), 0.0, 1e-8);
    }
}

TEST(CCirc, OracleFromPrintedFormula) {
    // Independent evaluation of c^2 (w/8r + h/2) + ln(c^2/4br) - (w/2)(1-r)/r.
    const double w = 8.210930, r = 0.5, b = 5, h = 0;
    auto f = [&](double c2) { return c2 * (w / (8 * r) + h / 2) + std::log(c2 / (4 * b * r)) - (w / 2) * (1 - r) / r; };
    double lo = 1e-6, hi = 16;
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (lo + hi);
        (f(m) > 0 ? hi : lo) = m;
    }
    EXPECT_NEAR(c_circ(BzParams(r, b, h)), std::sqrt(lo), 1e-5);
}

TEST(CKBistable, ValuesAndErrors) {
    const auto a = c_K_bistable(5, 0.5);
    EXPECT_NEAR(a.lower, 0.0674, 1e-4);
    EXPECT_NEAR(a.upper, 2 * std::sqrt(0.5), 1e-12);
    // Oracle: b / (2 sqrt((r + b)(min(1, b)(r + b) - b/2))) at (2, 1).
    EXPECT_NEAR(c_K_bistable(2, 1).lower, 1.0 / (2.0 * std::sqrt(3.0 * 2.5)), 1e-12);
    EXPECT_THROW(c_K_bistable(1, 1), Error);
}

TEST(BoundsReport, RowsAndNotes) {
    const auto m = bounds_report(BzParams(0.5, 5));
    EXPECT_EQ(m.regime, Regime::monostable);
    EXPECT_DOUBLE_EQ(*m.c_k, 2.0);
    EXPECT_FALSE(m.c_K.has_value());
    EXPECT_NE(m.existence_note.find("c >= c_hash"), std::string::npos);

    const auto s = bounds_report(BzParams(5, 0.5));
    EXPECT_EQ(s.regime, Regime::bistable);
    ASSERT_TRUE(s.c_K.has_value());
    EXPECT_NEAR(s.c_K->lower, 0.067, 1e-3);
    EXPECT_NE(s.existence_note.find("0.00724984"), std::string::npos);
    EXPECT_NE(s.existence_note.find("0.590557"), std::string::npos);

    const auto l = bounds_report(BzParams(0.5, 0.4));
    EXPECT_NEAR(l.c_hash, 2 * std::sqrt(0.5), 1e-9);
}

TEST(SpeedBoundsProperty, DelayNeverRaisesBounds) {
    proptest::SplitMix rng(33);
    for (int k = 0; k < 40; ++k) {
        const double r = rng.uniform(0.1, 6), b = rng.uniform(0.3, 10);
        double prev_hash = INFINITY, prev_circ = INFINITY;
        for (double h : {0.0, 0.25, 0.5, 1.0, 2.0}) {
            const BzParams p(r, b, h);
            const double ch = c_hash(p), cc = c_circ(p);
            EXPECT_LE(ch, prev_hash + 1e-9);
            EXPECT_LE(cc, prev_circ + 1e-9);
            prev_hash = ch;
            prev_circ = cc;
        }
    }
}

TEST(SpeedBoundsProperty, BistableLowerBoundBelowUpperBounds) {
    proptest::SplitMix rng(34);
    for (int k = 0; k < 100; ++k) {
        const BzParams p(rng.uniform(1.01, 20), rng.uniform(0.05, 10));
        const double cl = c_l(p.r(), p.b());
        EXPECT_LE(cl, std::min(c_hash(p), c_circ(p))) << p.r() << ' ' << p.b();
        const auto rep = bounds_report(p);
        EXPECT_GE(rep.c_l, 0.0);
        EXPECT_TRUE(std::isfinite(rep.c_hash));
    }
}
