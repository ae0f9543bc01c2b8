#pragma once

#include <Eigen/Dense>

#include "platoon_lab/numerics.hpp"

namespace platoon_lab {

/// Single-input single-output realization x' = a x + b u, y = c x + d u.
struct Realization {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::RowVectorXd c;
    double d = 0.0;
};

/// Controllable canonical form of a proper transfer function. Throws
/// Error("open loop must be proper") otherwise.
Realization controllable_canonical(const RationalTF& tf);

/// Multi-agent LTI system x' = a x + b w, y = c x + d w, one output per agent.
struct StateSpace {
    Eigen::MatrixXd a;
    Eigen::MatrixXd b;
    Eigen::MatrixXd c;
    Eigen::MatrixXd d;

    Eigen::Index states() const noexcept { return a.rows(); }
};

/// Identical agents `agent` coupled through u = -K y + G w. For a strictly
/// proper agent this is a = I (x) A - K (x) (B C); a feedthrough term is
/// resolved through (I + d K)^-1.
StateSpace interconnect(const Realization& agent, const Eigen::MatrixXd& coupling,
                        const Eigen::MatrixXd& input_gain);

/// c (jw I - a)^-1 b + d for the given output row and input column.
/// Throws Error("response undefined at omega") on a singular resolvent.
Complex evaluate_entry(const StateSpace& sys, double omega, Eigen::Index output, Eigen::Index input);

}  // namespace platoon_lab
