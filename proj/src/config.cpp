// SPDX-License-Identifier: Apache-2.0
#include "irshare/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <json.hpp>

namespace irshare {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, std::string_view where,
                         std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (std::string_view a : allowed)
            if (key == a) {
                known = true;
                break;
            }
        if (!known)
            throw std::invalid_argument("unknown configuration key \"" + std::string(where) +
                                        key + "\"");
    }
}

Vec3 parse_vec3(const json& arr, const std::string& name) {
    if (!arr.is_array() || arr.size() != 3)
        throw std::invalid_argument("configuration key \"" + name +
                                    "\" must be an array of 3 numbers");
    return {arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
}

template <typename T>
void assign_if(const json& obj, const char* key, T& target) {
    if (auto it = obj.find(key); it != obj.end()) target = it->get<T>();
}

void parse_ue_area(const json& obj, UeArea& area) {
    reject_unknown_keys(obj, "scenario.ue_area.",
                        {"corner_x_m", "corner_y_m", "side_m", "height_low_m", "height_high_m"});
    assign_if(obj, "corner_x_m", area.corner_x_m);
    assign_if(obj, "corner_y_m", area.corner_y_m);
    assign_if(obj, "side_m", area.side_m);
    assign_if(obj, "height_low_m", area.height_low_m);
    assign_if(obj, "height_high_m", area.height_high_m);
}

void parse_scenario(const json& obj, Scenario& sc) {
    reject_unknown_keys(
        obj, "scenario.",
        {"n_mnos", "l_side", "n_slots", "carrier_hz", "tx_power_dbm", "tx_gain_dbi",
         "rx_gain_dbi", "noise_dbm", "rician_k_db", "irs_center_m", "bs_pos_m", "ue_area", "seed",
         "codebook_seed", "switching_activity_fraction", "no_sharing_literal_subsurface"});
    assign_if(obj, "n_mnos", sc.n_mnos);
    assign_if(obj, "l_side", sc.l_side);
    assign_if(obj, "n_slots", sc.n_slots);
    assign_if(obj, "carrier_hz", sc.carrier_hz);
    assign_if(obj, "tx_power_dbm", sc.tx_power_dbm);
    assign_if(obj, "tx_gain_dbi", sc.tx_gain_dbi);
    assign_if(obj, "rx_gain_dbi", sc.rx_gain_dbi);
    assign_if(obj, "noise_dbm", sc.noise_dbm);
    assign_if(obj, "rician_k_db", sc.rician_k_db);
    if (auto it = obj.find("irs_center_m"); it != obj.end())
        sc.irs_center_m = parse_vec3(*it, "scenario.irs_center_m");
    if (auto it = obj.find("bs_pos_m"); it != obj.end())
        sc.bs_pos_m = parse_vec3(*it, "scenario.bs_pos_m");
    if (auto it = obj.find("ue_area"); it != obj.end()) parse_ue_area(*it, sc.ue_area);
    assign_if(obj, "seed", sc.seed);
    assign_if(obj, "codebook_seed", sc.codebook_seed);
    assign_if(obj, "switching_activity_fraction", sc.switching_activity_fraction);
    assign_if(obj, "no_sharing_literal_subsurface", sc.no_sharing_literal_subsurface);
}

void parse_optimizer(const json& obj, OptimizerOptions& opts) {
    reject_unknown_keys(obj, "optimizer.",
                        {"restarts", "max_iters", "initial_step", "armijo_shrink", "armijo_slope",
                         "convergence_tol", "convergence_window", "smoothing_mode",
                         "softmin_temperature"});
    assign_if(obj, "restarts", opts.restarts);
    assign_if(obj, "max_iters", opts.max_iters);
    assign_if(obj, "initial_step", opts.initial_step);
    assign_if(obj, "armijo_shrink", opts.armijo_shrink);
    assign_if(obj, "armijo_slope", opts.armijo_slope);
    assign_if(obj, "convergence_tol", opts.convergence_tol);
    assign_if(obj, "convergence_window", opts.convergence_window);
    if (auto it = obj.find("smoothing_mode"); it != obj.end()) {
        const std::string mode = it->get<std::string>();
        if (mode == "active-min")
            opts.smoothing_mode = SmoothingMode::active_min;
        else if (mode == "softmin")
            opts.smoothing_mode = SmoothingMode::softmin;
        else
            throw std::invalid_argument("optimizer.smoothing_mode must be \"active-min\" or "
                                        "\"softmin\", got \"" +
                                        mode + "\"");
    }
    assign_if(obj, "softmin_temperature", opts.softmin_temperature);
}

}  // namespace

Config parse_config(const std::string& json_text) {
    const json root = json::parse(json_text);
    if (!root.is_object()) throw std::invalid_argument("configuration root must be an object");
    reject_unknown_keys(root, "", {"schema_version", "scenario", "optimizer"});

    const auto version = root.find("schema_version");
    if (version == root.end())
        throw std::invalid_argument("configuration is missing \"schema_version\"");
    if (version->get<int>() != kConfigSchemaVersion)
        throw std::invalid_argument("unsupported schema_version " + version->dump() +
                                    " (expected " + std::to_string(kConfigSchemaVersion) + ")");

    Config cfg;
    if (auto it = root.find("scenario"); it != root.end()) parse_scenario(*it, cfg.scenario);
    if (auto it = root.find("optimizer"); it != root.end()) parse_optimizer(*it, cfg.optimizer);
    cfg.scenario.validate();
    cfg.optimizer.validate();
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read configuration file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::string config_to_json(const Config& cfg) {
    const Scenario& sc = cfg.scenario;
    const OptimizerOptions& op = cfg.optimizer;
    ordered_json root;
    root["schema_version"] = kConfigSchemaVersion;
    root["scenario"] = {
        {"n_mnos", sc.n_mnos},
        {"l_side", sc.l_side},
        {"n_slots", sc.n_slots},
        {"carrier_hz", sc.carrier_hz},
        {"tx_power_dbm", sc.tx_power_dbm},
        {"tx_gain_dbi", sc.tx_gain_dbi},
        {"rx_gain_dbi", sc.rx_gain_dbi},
        {"noise_dbm", sc.noise_dbm},
        {"rician_k_db", sc.rician_k_db},
        {"irs_center_m", {sc.irs_center_m.x, sc.irs_center_m.y, sc.irs_center_m.z}},
        {"bs_pos_m", {sc.bs_pos_m.x, sc.bs_pos_m.y, sc.bs_pos_m.z}},
        {"ue_area",
         {{"corner_x_m", sc.ue_area.corner_x_m},
          {"corner_y_m", sc.ue_area.corner_y_m},
          {"side_m", sc.ue_area.side_m},
          {"height_low_m", sc.ue_area.height_low_m},
          {"height_high_m", sc.ue_area.height_high_m}}},
        {"seed", sc.seed},
        {"codebook_seed", sc.codebook_seed},
        {"switching_activity_fraction", sc.switching_activity_fraction},
        {"no_sharing_literal_subsurface", sc.no_sharing_literal_subsurface},
    };
    root["optimizer"] = {
        {"restarts", op.restarts},
        {"max_iters", op.max_iters},
        {"initial_step", op.initial_step},
        {"armijo_shrink", op.armijo_shrink},
        {"armijo_slope", op.armijo_slope},
        {"convergence_tol", op.convergence_tol},
        {"convergence_window", op.convergence_window},
        {"smoothing_mode",
         op.smoothing_mode == SmoothingMode::softmin ? "softmin" : "active-min"},
        {"softmin_temperature", op.softmin_temperature},
    };
    return root.dump(2) + "\n";
}

}  // namespace irshare
