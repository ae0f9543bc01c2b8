#include <doctest.h>

#include <numbers>
#include <random>

#include "platoon_lab/analysis.hpp"
#include "platoon_lab/error.hpp"
#include "platoon_lab/sim.hpp"
#include "unit/support.hpp"

using namespace platoon_lab;
using testing::uniform;

namespace {

double max_abs_diff_on_coarse_grid(const TimeSeries& coarse, const TimeSeries& fine, int ratio) {
    double d = 0.0;
    for (Eigen::Index k = 0; k < coarse.deviations.rows(); ++k)
        d = std::max(d, (coarse.deviations.row(k) - fine.deviations.row(ratio * k)).cwiseAbs().maxCoeff());
    return d;
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("leader signals") {
    CHECK(LeaderSignal::step(2.0)(0.0) == 2.0);
    CHECK(LeaderSignal::step(2.0)(-1.0) == 0.0);
    CHECK(LeaderSignal::sine(3.0, 2.0)(0.25 * std::numbers::pi) == doctest::Approx(3.0));
}

TEST_CASE("state dimension") {
    const auto cfg = uniform(7, 1.0, 0.5);
    const StateSpace sys = build_state_space(cfg);
    CHECK(sys.states() == 6 * 4);
    CHECK(sys.c.rows() == 6);
    CHECK(sys.b.cols() == 1);
}

TEST_CASE("improper open loop is rejected") {
    const auto cfg = uniform(3, 1.0, 0.5, {Polynomial{0.0, 0.0, 1.0}, Polynomial{1.0}}, testing::unity());
    CHECK_THROWS_WITH_AS(build_state_space(cfg), "open loop must be proper", Error);
}

TEST_CASE("realization matches the product form") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> lw(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto cfg = testing::random_config(rng, 2, 8, 1.0, 3.0, 0.0, 0.9);
        const StateSpace sys = build_state_space(cfg);
        for (int k = 0; k < 20; ++k) {
            const double w = std::pow(10.0, lw(rng));
            const Complex expect = cfg.gain(2) * product_response(cfg, w);
            CHECK(testing::rel_diff(evaluate_entry(sys, w, sys.c.rows() - 1, 0), expect) <= 1e-6);
        }
    }
}

TEST_CASE("two-vehicle step settles to the amplitude") {
    const auto ts = simulate({uniform(2, 1.0, 0.0), LeaderSignal::step(1.0), 200.0, 0.01});
    CHECK(std::abs(ts.deviations(ts.deviations.rows() - 1, 0) - 1.0) < 1e-3);
    CHECK(ts.times.size() == 20001);
    CHECK(ts.times.back() == doctest::Approx(200.0));
    CHECK(ts.warnings.empty());
}

TEST_CASE("every follower settles to the step") {
    const auto ts = simulate({uniform(6, 1.0, 0.5), LeaderSignal::step(1.0), 300.0, 0.01});
    const Eigen::RowVectorXd last = ts.deviations.row(ts.deviations.rows() - 1);
    CHECK((last.array() - 1.0).abs().maxCoeff() < 1e-3);
    CHECK(ts.deviations.row(0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("absolute positions add the reference spacing") {
    auto cfg = PlatoonConfig::create(4, {1, 1, 1}, {0.5, 0.5, 0}, testing::double_integrator(), testing::lead_lag(), 2.5);
    const auto ts = simulate({cfg, LeaderSignal::step(1.0), 1.0, 0.01});
    const Eigen::MatrixXd abs = ts.absolute_positions();
    CHECK(abs(0, 0) == -2.5);
    CHECK(abs(0, 1) == -5.0);
    CHECK(abs(0, 2) == -7.5);
    CHECK(((abs - ts.deviations).row(50).array() == Eigen::Array3d(-2.5, -5.0, -7.5).transpose()).all());
}

TEST_CASE("time step validation") {
    const auto cfg = uniform(20, 1.0, 0.5);
    const double dt_max = max_time_step(cfg);
    CHECK(dt_max == doctest::Approx(2 * std::numbers::pi / fastest_mode(cfg) / 20));
    CHECK_THROWS_WITH_AS(simulate({cfg, LeaderSignal::step(1.0), 10.0, 2 * dt_max}), doctest::Contains("required dt <="), Error);
    CHECK_THROWS_AS(simulate({cfg, LeaderSignal::step(1.0), 10.0, 0.0}), Error);
    CHECK_THROWS_AS(simulate({cfg, LeaderSignal::step(1.0), 0.001, 0.01}), Error);
}

TEST_CASE("unstable blocks cap the horizon") {
    const auto cfg = uniform(4, 1.0, 0.5, testing::double_integrator(), {Polynomial{-1.0, 1.0}, Polynomial{1.0}});
    const auto ts = simulate({cfg, LeaderSignal::step(1.0), 1e4, 0.01});
    REQUIRE_FALSE(ts.warnings.empty());
    CHECK(ts.times.back() < 1e4);
    CHECK(ts.deviations.allFinite());
}

TEST_CASE("property: linearity in the leader amplitude") {
    const auto cfg = uniform(8, 1.0, 0.5);
    for (double a : {0.5, 1.0, 3.0}) {
        const auto one = simulate({cfg, LeaderSignal::step(a), 20.0, 0.01});
        const auto two = simulate({cfg, LeaderSignal::step(2 * a), 20.0, 0.01});
        CHECK((two.deviations - 2.0 * one.deviations).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("property: fourth-order convergence") {
    const auto cfg = uniform(2, 1.0, 0.0);
    const LeaderSignal u = LeaderSignal::sine(1.0, 0.7);
    const auto a = simulate({cfg, u, 10.0, 0.02});
    const auto b = simulate({cfg, u, 10.0, 0.01});
    const auto c = simulate({cfg, u, 10.0, 0.005});
    const double e1 = max_abs_diff_on_coarse_grid(a, b, 2);
    const double e2 = max_abs_diff_on_coarse_grid(b, c, 2);
    const double order = std::log2(e1 / e2);
    CHECK(order == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("property: sine steady state matches the frequency response") {
    const auto cfg = uniform(5, 1.0, 0.5);
    for (double w : {0.1, 0.4, 1.0, 2.5, 6.0}) {
        const double period = 2 * std::numbers::pi / w;
        const double t_end = 400.0 + 3 * period;
        const auto ts = simulate({cfg, LeaderSignal::sine(1.0, w), t_end, 0.005});
        const Eigen::Index rows = ts.deviations.rows();
        const auto tail_start = static_cast<Eigen::Index>(std::llround((t_end - 2 * period) / 0.005));
        const double amp = ts.deviations.col(3).segment(tail_start, rows - tail_start).cwiseAbs().maxCoeff();
        const double expect = std::abs(cfg.gain(2) * product_response(cfg, w));
        CHECK(amp == doctest::Approx(expect).epsilon(0.01));
    }
}

TEST_CASE("property: halving dt barely moves the trajectory") {
    const auto cfg = uniform(5, 1.0, 0.5);
    const auto a = simulate({cfg, LeaderSignal::step(1.0), 50.0, 0.004});
    const auto b = simulate({cfg, LeaderSignal::step(1.0), 50.0, 0.002});
    CHECK(max_abs_diff_on_coarse_grid(a, b, 2) < 1e-6);
}

TEST_CASE("deterministic output") {
    const auto cfg = uniform(10, 1.0, 0.5);
    const auto a = simulate({cfg, LeaderSignal::step(1.0), 10.0, 0.01});
    const auto b = simulate({cfg, LeaderSignal::step(1.0), 10.0, 0.01});
    CHECK(a.deviations == b.deviations);
}

}
