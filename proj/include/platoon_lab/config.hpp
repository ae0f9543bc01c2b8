#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "platoon_lab/analysis.hpp"
#include "platoon_lab/platoon.hpp"

namespace platoon_lab {

/**
 * A parsed platoon config file (JSON).
 *
 *   {
 *     "n": 20,
 *     "gains": 1.0,                      // number or array of n-1 numbers
 *     "asymmetries": [0.5, ..., 0.0],    // number or array of n-1 numbers
 *     "vehicle":    {"num": [1], "den": [0, 0, 1]},   // ascending powers of s
 *     "controller": {"num": [3, 43, 110], "den": [1, 2.9, 1]},
 *     "ref_distance": 1.0,               // optional
 *     "omega_band": [1e-3, 1e3]          // optional
 *   }
 *
 * Coefficient arrays are in ascending order of power: [3, 43, 110] is
 * 110 s^2 + 43 s + 3.
 */
struct ConfigDocument {
    PlatoonConfig config;
    FrequencyBand band;
    /// Set when the file gave a single number to broadcast.
    std::optional<double> scalar_gain;
    std::optional<double> scalar_asymmetry;
    std::vector<std::string> notices;
};

/// Throws ConfigError; field() uses dotted key names such as "controller.den".
ConfigDocument parse_config(std::string_view json_text);
ConfigDocument load_config(const std::filesystem::path& path);

/// Inverse of parse_config; scalar gains/asymmetries stay scalar.
std::string serialize_config(const ConfigDocument& doc);

/// Family template for N-sweeps; requires scalar gains and asymmetries.
FamilyTemplate to_family(const ConfigDocument& doc);

}  // namespace platoon_lab
