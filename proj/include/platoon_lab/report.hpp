#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "platoon_lab/analysis.hpp"
#include "platoon_lab/platoon.hpp"
#include "platoon_lab/sim.hpp"

namespace platoon_lab {

/// %.17g: round-trips every double.
std::string format_double(double v);

/// Header `omega_rad_s,re,im,mag_db`.
void write_freq_csv(std::ostream& out, const FreqSeries& series);

/// Header `t,pos_2,...,pos_N`; `positions` has one column per follower.
void write_time_csv(std::ostream& out, std::span<const double> times, const Eigen::MatrixXd& positions);

/// Header `n,gamma,gamma_root_n,zeta_min_lower`; the last column is empty
/// where zeta_min is undefined.
void write_gamma_csv(std::ostream& out, std::span<const GammaPoint> points);

std::string spectrum_json(const SpectrumReport& report, const std::optional<DominanceCertificate>& certificate);
std::string harmonic_json(const HarmonicVerdict& verdict);

}  // namespace platoon_lab
