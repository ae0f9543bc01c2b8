#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "platoon_lab/platoon.hpp"
#include "platoon_lab/state_space.hpp"

namespace platoon_lab {

/// Exogenous leader position signal.
struct LeaderSignal {
    enum class Kind { step, sine };

    Kind kind = Kind::step;
    double amplitude = 1.0;
    double omega = 0.0;

    static LeaderSignal step(double amplitude) { return {Kind::step, amplitude, 0.0}; }
    static LeaderSignal sine(double amplitude, double omega) { return {Kind::sine, amplitude, omega}; }

    double operator()(double t) const;
};

struct SimScenario {
    PlatoonConfig cfg;
    LeaderSignal leader;
    double t_end = 0.0;
    double dt = 0.0;
};

/// Follower trajectories in deviation coordinates: deviations(k, i) is the
/// offset of vehicle i+2 from its reference slot at times[k]. Zero
/// deviation means the vehicle sits exactly (i+1)*ref_distance behind the leader's
/// initial position.
struct TimeSeries {
    std::vector<double> times;
    Eigen::MatrixXd deviations;
    double ref_distance = 1.0;
    std::vector<std::string> warnings;

    /// deviation - (vehicle - 1) * ref_distance.
    Eigen::MatrixXd absolute_positions() const;
};

/// Reduced interconnection of vehicles 2..N driven by the leader's position
/// through vehicle 2 with gain mu_2. Outputs are the follower positions.
StateSpace build_state_space(const PlatoonConfig& cfg);

/// Largest modulus over all closed-loop block poles.
double fastest_mode(const PlatoonConfig& cfg);

/// Step bound dt <= (1/20) * 2 pi / fastest_mode.
double max_time_step(const PlatoonConfig& cfg);

/// Fixed-step classic RK4 from the zero state. Throws Error if dt exceeds
/// max_time_step(); caps t_end (with a warning) if any block is unstable.
TimeSeries simulate(const SimScenario& scenario);

}  // namespace platoon_lab
