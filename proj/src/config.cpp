#include "platoon_lab/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "platoon_lab/error.hpp"

namespace platoon_lab {
namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) throw ConfigError(path, path + " required");
    return obj.at(key);
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, path + " must be a number");
    return v.get<double>();
}

std::vector<double> number_array(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) throw ConfigError(path, path + " must be a nonempty array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(number(e, path));
    return out;
}

RationalTF transfer_function(const json& root, const std::string& key) {
    const json& obj = require(root, key, key);
    if (!obj.is_object()) throw ConfigError(key, key + " must be an object with num and den");
    Polynomial num(number_array(require(obj, "num", key + ".num"), key + ".num"));
    Polynomial den(number_array(require(obj, "den", key + ".den"), key + ".den"));
    if (den.is_zero()) throw ConfigError(key + ".den", key + ".den must not be identically zero");
    return RationalTF(std::move(num), std::move(den));
}

// Scalar values broadcast to every follower.
std::vector<double> per_vehicle(const json& v, const std::string& key, int n, std::optional<double>& scalar) {
    const auto count = static_cast<std::size_t>(std::max(n - 1, 0));
    if (v.is_number()) {
        scalar = v.get<double>();
        return std::vector<double>(count, *scalar);
    }
    std::vector<double> out = number_array(v, key);
    if (out.size() != count)
        throw ConfigError(key, key + " must have n-1 = " + std::to_string(count) + " entries, got " +
                                   std::to_string(out.size()));
    return out;
}

json tf_json(const RationalTF& tf) {
    return json{{"num", tf.num.coeffs()}, {"den", tf.den.coeffs()}};
}

}  // namespace

ConfigDocument parse_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("<document>", "config must be a JSON object");

    const json& n_json = require(root, "n", "n");
    if (!n_json.is_number_integer()) throw ConfigError("n", "n must be an integer");
    const int n = n_json.get<int>();
    if (n < 2) throw ConfigError("n", "n must be at least 2 (leader plus one follower)");

    std::optional<double> scalar_gains;
    std::optional<double> scalar_asym;
    std::vector<double> gains = per_vehicle(require(root, "gains", "gains"), "gains", n, scalar_gains);
    std::vector<double> asym = per_vehicle(require(root, "asymmetries", "asymmetries"), "asymmetries", n, scalar_asym);
    RationalTF vehicle = transfer_function(root, "vehicle");
    RationalTF controller = transfer_function(root, "controller");
    const double ref_distance = root.contains("ref_distance") ? number(root["ref_distance"], "ref_distance") : 1.0;

    FrequencyBand band;
    if (root.contains("omega_band")) {
        const std::vector<double> edges = number_array(root["omega_band"], "omega_band");
        if (edges.size() != 2 || !(edges[0] > 0.0) || !(edges[1] > edges[0]))
            throw ConfigError("omega_band", "omega_band must be [lo, hi] with 0 < lo < hi");
        band.lo = edges[0];
        band.hi = edges[1];
    }

    std::vector<std::string> notices;
    if (!scalar_asym && asym.back() != 0.0) {
        std::ostringstream msg;
        msg << "asymmetry of the trailing vehicle " << n << " set to 0 (was " << asym.back()
            << "): it has no follower";
        notices.push_back(msg.str());
    }

    ConfigDocument doc{PlatoonConfig::create(n, std::move(gains), std::move(asym), std::move(vehicle),
                                             std::move(controller), ref_distance),
                       band, scalar_gains, scalar_asym, std::move(notices)};
    return doc;
}

ConfigDocument load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<document>", "cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const ConfigDocument& doc) {
    const PlatoonConfig& cfg = doc.config;
    json root;
    root["n"] = cfg.n();
    if (doc.scalar_gain)
        root["gains"] = *doc.scalar_gain;
    else
        root["gains"] = std::vector<double>(cfg.gains().begin(), cfg.gains().end());
    if (doc.scalar_asymmetry)
        root["asymmetries"] = *doc.scalar_asymmetry;
    else
        root["asymmetries"] = std::vector<double>(cfg.asymmetries().begin(), cfg.asymmetries().end());
    root["vehicle"] = tf_json(cfg.vehicle());
    root["controller"] = tf_json(cfg.controller());
    root["ref_distance"] = cfg.ref_distance();
    root["omega_band"] = {doc.band.lo, doc.band.hi};
    return root.dump(2);
}

FamilyTemplate to_family(const ConfigDocument& doc) {
    if (!doc.scalar_gain) throw ConfigError("gains", "sweep requires scalar template");
    if (!doc.scalar_asymmetry) throw ConfigError("asymmetries", "sweep requires scalar template");
    const PlatoonConfig& cfg = doc.config;
    FamilyTemplate family;
    family.gain_pattern = {*doc.scalar_gain};
    family.asymmetry_pattern = {*doc.scalar_asymmetry};
    family.vehicle = cfg.vehicle();
    family.controller = cfg.controller();
    family.ref_distance = cfg.ref_distance();
    return family;
}

}  // namespace platoon_lab
