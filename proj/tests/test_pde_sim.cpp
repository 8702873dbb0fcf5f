#include <gtest/gtest.h>

#include <cmath>

#include "bzwave/analysis.hpp"
#include "bzwave/pde_sim.hpp"
#include "bzwave/speed_bounds.hpp"

using namespace bzwave;

namespace {

void set_uniform(FieldState& s, double u, double v) {
    std::fill(s.u.begin(), s.u.end(), u);
    std::fill(s.v.begin(), s.v.end(), v);
    for (auto& slice : s.v_history) std::fill(slice.begin(), slice.end(), v);
}

}  // namespace

TEST(SimConfig, StabilityAndDelayRounding) {
    SimConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.dt = 1.0;
    EXPECT_THROW(cfg.validate(), Error);
    cfg.dt = 0.01;
    cfg.h = 0.5;
    EXPECT_EQ(cfg.delay_steps(), 50u);
    cfg.h = 0.123456;
    EXPECT_LE(cfg.delay_rounding_error(), cfg.dt / 2);
    EXPECT_NEAR(cfg.delay_steps() * cfg.dt, cfg.h, cfg.dt / 2);
}

TEST(InitState, StepFrontAndHistory) {
    SimConfig cfg;
    cfg.h = 0.2;
    const auto s = init_state(cfg);
    EXPECT_EQ(s.u.front(), 1.0);
    EXPECT_EQ(s.v.front(), 0.0);
    EXPECT_EQ(s.u.back(), 0.0);
    EXPECT_EQ(s.v.back(), 1.0);
    ASSERT_EQ(s.v_history.size(), cfg.delay_steps());
    for (const auto& slice : s.v_history) EXPECT_EQ(slice, s.v);
}

TEST(InitState, BumpIsCompact) {
    SimConfig cfg;
    cfg.ic = InitialCondition::compact_bump;
    const auto s = init_state(cfg);
    EXPECT_EQ(s.u.front(), 0.0);
    EXPECT_EQ(s.v.front(), 1.0);
    double mass = 0.0;
    for (double u : s.u) mass += u * cfg.dx;
    EXPECT_NEAR(mass, 4.0, 2 * cfg.dx);
}

TEST(Step, EquilibriaAreFixed) {
    SimConfig cfg;
    cfg.length = 20;
    cfg.h = 0.3;
    const BzParams p(0.7, 2, 0.3);
    for (auto [u, v] : {std::pair{0.0, 1.0}, std::pair{0.0, 0.37}, std::pair{1.0, 0.0}}) {
        auto s = init_state(cfg);
        set_uniform(s, u, v);
        for (int k = 0; k < 50; ++k) step(s, p, cfg);
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            EXPECT_EQ(s.u[i], u);
            EXPECT_EQ(s.v[i], v);
        }
    }
}

TEST(Step, HandEvaluatedUniformStep) {
    SimConfig cfg;
    cfg.length = 20;
    auto s = init_state(cfg);
    set_uniform(s, 0.5, 0.5);
    step(s, BzParams(1, 1, 0), cfg);
    // u + 0.01 * 0.5 * (1 - 0.5 - 0.5) = 0.5; v - 0.01 * 1 * 0.25 = 0.4975.
    EXPECT_DOUBLE_EQ(s.u[7], 0.5);
    EXPECT_NEAR(s.v[7], 0.4975, 1e-15);
    EXPECT_NEAR(s.time, 0.01, 1e-15);
}

TEST(Step, DelayedSliceIsUsed) {
    SimConfig cfg;
    cfg.length = 20;
    cfg.h = 0.02;
    const BzParams p(1, 1, 0.02);
    auto s = init_state(cfg);
    set_uniform(s, 0.5, 0.5);
    // Current v differs from the history, so u must react to the old slice.
    std::fill(s.v.begin(), s.v.end(), 0.0);
    step(s, p, cfg);
    EXPECT_NEAR(s.u[5], 0.5 + 0.01 * 0.5 * (1 - 0.5 - 0.5), 1e-15);
}

TEST(Tracking, FrontPositionInterpolates) {
    SimConfig cfg;
    cfg.length = 10;
    cfg.dx = 1;
    cfg.dt = 0.1;
    FieldState s;
    s.u = {1, 1, 1, 0.8, 0.2, 0, 0, 0, 0, 0, 0};
    s.v = std::vector<double>(11, 0.5);
    EXPECT_NEAR(front_position(s, cfg, 0.5), 3.5, 1e-12);
    EXPECT_NEAR(u_mass(s, cfg), 0.5 + 1 + 1 + 0.8 + 0.2, 1e-12);
}

TEST(RunAndTrack, FisherReductionSpeed) {
    const BzParams p(0.5, 0.5, 0);
    const auto e = run_and_track(p, SimConfig{});
    EXPECT_NEAR(e.speed, std::sqrt(2.0), 0.05 * std::sqrt(2.0));
    EXPECT_GE(e.speed, 2 * std::sqrt(0.5) - 0.05);
    EXPECT_GE(e.r_squared, 0.99);
    EXPECT_TRUE(e.monotone_after_transient);
    EXPECT_LE(e.max_overshoot, 1e-6);
}

TEST(RunAndTrack, BoundaryHitIsReported) {
    SimConfig cfg;
    cfg.length = 150;
    cfg.t_end = 100;
    try {
        run_and_track(BzParams(0.5, 5, 0), cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::boundary_hit);
    }
}

TEST(RunAndTrack, RefinementChangesSpeedLittle) {
    const BzParams p(0.5, 0.5, 0);
    SimConfig a;
    a.length = 200;
    a.t_end = 80;
    SimConfig b = a;
    b.dx = a.dx / 2;
    b.dt = a.dt / 4;
    const double sa = run_and_track(p, a).speed;
    const double sb = run_and_track(p, b).speed;
    EXPECT_LT(std::abs(sa - sb) / sb, 0.01);
}

TEST(ExtractFront, NormalizedMonostableProfile) {
    const BzParams p(0.5, 0.5, 0);
    const SimConfig cfg;
    const auto e = run_and_track(p, cfg);
    const Front f = extract_front(e.final_state, p, cfg, e.speed);
    const auto v = interpolate(f.profile, 0.0);
    EXPECT_NEAR(v.phi + v.psi, 1.5, 1e-2);
    EXPECT_TRUE(check_relations(f, p).monotone.pass);
}
