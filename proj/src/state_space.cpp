#include "platoon_lab/state_space.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "platoon_lab/error.hpp"

namespace platoon_lab {

Realization controllable_canonical(const RationalTF& tf) {
    if (!tf.is_proper()) throw Error("open loop must be proper");
    const int n = tf.den.degree();
    if (n < 1) throw Error("open loop must have at least one pole");

    const double lead = tf.den.leading();
    Realization r;
    r.a = Eigen::MatrixXd::Zero(n, n);
    r.b = Eigen::VectorXd::Zero(n);
    r.c = Eigen::RowVectorXd::Zero(n);
    for (int i = 0; i + 1 < n; ++i) r.a(i, i + 1) = 1.0;
    for (int k = 0; k < n; ++k) r.a(n - 1, k) = -tf.den[static_cast<std::size_t>(k)] / lead;
    r.b(n - 1) = 1.0;

    r.d = tf.num[static_cast<std::size_t>(n)] / lead;
    for (int k = 0; k < n; ++k)
        r.c(k) = tf.num[static_cast<std::size_t>(k)] / lead - r.d * tf.den[static_cast<std::size_t>(k)] / lead;
    return r;
}

StateSpace interconnect(const Realization& agent, const Eigen::MatrixXd& coupling,
                        const Eigen::MatrixXd& input_gain) {
    const Eigen::Index agents = coupling.rows();
    const Eigen::Index n = agent.a.rows();

    Eigen::MatrixXd block_a = Eigen::MatrixXd::Zero(agents * n, agents * n);
    Eigen::MatrixXd block_b = Eigen::MatrixXd::Zero(agents * n, agents);
    Eigen::MatrixXd block_c = Eigen::MatrixXd::Zero(agents, agents * n);
    for (Eigen::Index k = 0; k < agents; ++k) {
        block_a.block(k * n, k * n, n, n) = agent.a;
        block_b.block(k * n, k, n, 1) = agent.b;
        block_c.block(k, k * n, 1, n) = agent.c;
    }

    // u = F x + H w with F = -(I + dK)^-1 K C_blk, H = (I + dK)^-1 G.
    Eigen::MatrixXd feedback;
    Eigen::MatrixXd feedforward;
    if (agent.d == 0.0) {
        feedback = -coupling * block_c;
        feedforward = input_gain;
    } else {
        const Eigen::MatrixXd loop = Eigen::MatrixXd::Identity(agents, agents) + agent.d * coupling;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(loop);
        if (!lu.isInvertible()) throw Error("algebraic loop through the feedthrough term is singular");
        feedback = -lu.solve(coupling * block_c);
        feedforward = lu.solve(input_gain);
    }

    StateSpace sys;
    sys.a = block_a + block_b * feedback;
    sys.b = block_b * feedforward;
    sys.c = block_c + agent.d * feedback;
    sys.d = agent.d * feedforward;
    return sys;
}

Complex evaluate_entry(const StateSpace& sys, double omega, Eigen::Index output, Eigen::Index input) {
    const Eigen::Index n = sys.states();
    Eigen::MatrixXcd resolvent = -sys.a.cast<Complex>();
    resolvent.diagonal().array() += Complex{0.0, omega};

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(resolvent);
    const double rcond = lu.rcond();
    const Eigen::VectorXcd x = lu.solve(sys.b.col(input).cast<Complex>());
    if (!(rcond > 1e-14) || !x.allFinite()) {
        std::ostringstream msg;
        msg << "response undefined at omega = " << omega;
        throw Error(msg.str());
    }
    Complex y = sys.d(output, input);
    for (Eigen::Index k = 0; k < n; ++k) y += sys.c(output, k) * x(k);
    return y;
}

}  // namespace platoon_lab
