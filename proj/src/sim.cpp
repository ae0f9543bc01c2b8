#include "platoon_lab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Sparse>

#include "platoon_lab/analysis.hpp"
#include "platoon_lab/error.hpp"

namespace platoon_lab {
namespace {

struct PoleSummary {
    double fastest = 0.0;
    double max_real = -std::numeric_limits<double>::infinity();
};

PoleSummary summarize_poles(const PlatoonConfig& cfg) {
    const RationalTF M = open_loop(cfg);
    PoleSummary out;
    for (double lambda : spectrum(reduce(build_laplacian(cfg))).eigenvalues) {
        const Block b = make_block(lambda, M);
        if (b.tf.den.degree() < 1) continue;
        for (Complex p : block_poles(b)) {
            out.fastest = std::max(out.fastest, std::abs(p));
            out.max_real = std::max(out.max_real, p.real());
        }
    }
    return out;
}

}  // namespace

double LeaderSignal::operator()(double t) const {
    switch (kind) {
        case Kind::step: return t >= 0.0 ? amplitude : 0.0;
        case Kind::sine: return amplitude * std::sin(omega * t);
    }
    return 0.0;
}

Eigen::MatrixXd TimeSeries::absolute_positions() const {
    Eigen::MatrixXd out = deviations;
    for (Eigen::Index i = 0; i < out.cols(); ++i) out.col(i).array() -= static_cast<double>(i + 1) * ref_distance;
    return out;
}

StateSpace build_state_space(const PlatoonConfig& cfg) {
    const RationalTF M = open_loop(cfg);
    const Realization agent = controllable_canonical(M);
    const ReducedLaplacian reduced = reduce(build_laplacian(cfg));
    Eigen::MatrixXd input = Eigen::MatrixXd::Zero(cfg.n() - 1, 1);
    input(0, 0) = cfg.gain(2);
    return interconnect(agent, reduced.matrix, input);
}

double fastest_mode(const PlatoonConfig& cfg) {
    return summarize_poles(cfg).fastest;
}

double max_time_step(const PlatoonConfig& cfg) {
    const double fastest = fastest_mode(cfg);
    if (fastest == 0.0) return std::numeric_limits<double>::infinity();
    return (2.0 * std::numbers::pi / fastest) / 20.0;
}

TimeSeries simulate(const SimScenario& scenario) {
    const PlatoonConfig& cfg = scenario.cfg;
    if (!(scenario.dt > 0.0)) throw Error("dt must be positive");
    if (!(scenario.t_end >= scenario.dt)) throw Error("t_end must be at least dt");

    const PoleSummary poles = summarize_poles(cfg);
    const double dt_max = poles.fastest == 0.0 ? std::numeric_limits<double>::infinity()
                                               : (2.0 * std::numbers::pi / poles.fastest) / 20.0;
    if (scenario.dt > dt_max) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "dt = " << scenario.dt << " is too large for explicit integration; required dt <= " << dt_max;
        throw Error(msg.str());
    }

    TimeSeries out;
    out.ref_distance = cfg.ref_distance();
    double t_end = scenario.t_end;
    if (poles.max_real >= 0.0) {
        const double growth = std::max(poles.max_real, 1e-3);
        const double cap = std::log(1e6) / growth;
        if (cap < t_end) {
            t_end = std::max(cap, scenario.dt);
            std::ostringstream msg;
            msg << "closed-loop blocks are unstable; t_end capped at " << t_end << " s";
            out.warnings.push_back(msg.str());
        } else {
            out.warnings.push_back("closed-loop blocks are unstable");
        }
    }

    const StateSpace sys = build_state_space(cfg);
    const Eigen::SparseMatrix<double> A = sys.a.sparseView();
    const Eigen::VectorXd B = sys.b.col(0);
    const Eigen::SparseMatrix<double> C = sys.c.sparseView();
    const Eigen::VectorXd D = sys.d.col(0);

    const auto steps = static_cast<std::size_t>(std::llround(t_end / scenario.dt));
    const double h = scenario.dt;
    const LeaderSignal& u = scenario.leader;

    out.times.resize(steps + 1);
    out.deviations.resize(static_cast<Eigen::Index>(steps + 1), sys.c.rows());

    Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.states());
    Eigen::VectorXd k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size());
    auto record = [&](std::size_t k, double t) {
        out.times[k] = t;
        out.deviations.row(static_cast<Eigen::Index>(k)) = (C * x + D * u(t)).transpose();
    };

    record(0, 0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * h;
        const double u0 = u(t);
        const double u_mid = u(t + 0.5 * h);
        const double u1 = u(t + h);
        k1 = A * x + B * u0;
        k2 = A * (x + (0.5 * h) * k1) + B * u_mid;
        k3 = A * (x + (0.5 * h) * k2) + B * u_mid;
        k4 = A * (x + h * k3) + B * u1;
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        record(k + 1, static_cast<double>(k + 1) * h);
    }
    return out;
}

}  // namespace platoon_lab
