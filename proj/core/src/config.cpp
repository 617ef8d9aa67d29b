#include "morlgp/config.hpp"

#include <cmath>

#include <json.hpp>

#include "morlgp/errors.hpp"
#include "morlgp/io.hpp"

namespace morlgp {

void RunConfig::validate() const {
    if (n_train_mo < 1 || n_train_so < 1 || n_train_so_curve < 1 || n_eval < 1 ||
        so_batches < 1 || max_turns < 1 || dictionary_cap < 1)
        throw ValidationError("config: counts must be positive");
    if (seeds.empty()) throw ValidationError("config: seeds must be non-empty");
    if (ser < 0.0 || ser > 1.0) throw ValidationError("config: ser must be in [0,1]");
    if (grid_w_s.empty()) throw ValidationError("config: grid must be non-empty");
    for (double w : grid_w_s)
        if (w < 0.0 || w > 1.0)
            throw ValidationError("config: grid weights must be in [0,1]");
    if (manual_w_s && (*manual_w_s < 0.0 || *manual_w_s > 1.0))
        throw ValidationError("config: manual weight override must be in [0,1]");
    reward_spec().validate();
    if (noise_stddev < 0.0 || sparsify_threshold < 0.0)
        throw ValidationError("config: GP hyperparameters must be non-negative");
    if (prior_scale <= 0.0)
        throw ValidationError("config: prior_scale must be positive");
    if (plateau_tolerance < 0.0)
        throw ValidationError("config: plateau_tolerance must be non-negative");
}

RewardSpec RunConfig::reward_spec() const {
    return {success_reward, length_penalty, discount};
}

GpConfig RunConfig::gp_config() const {
    GpConfig g;
    g.noise_stddev = noise_stddev;
    g.sparsify_threshold = sparsify_threshold;
    g.dictionary_cap = dictionary_cap;
    g.discount = discount;
    g.kernel.prior_scale = prior_scale;
    return g;
}

EnvOptions RunConfig::env_options() const { return {ser, max_turns}; }

std::vector<WeightVector> RunConfig::grid() const {
    std::vector<WeightVector> g;
    for (double w : grid_w_s) g.push_back(WeightVector::from_success(w));
    return g;
}

std::string RunConfig::to_json_text() const {
    nlohmann::json j;
    j["domain_path"] = domain_path;
    j["seeds"] = seeds;
    j["n_train_mo"] = n_train_mo;
    j["n_train_so"] = n_train_so;
    j["n_train_so_curve"] = n_train_so_curve;
    j["so_batches"] = so_batches;
    j["n_eval"] = n_eval;
    j["grid_w_s"] = grid_w_s;
    j["ser"] = ser;
    j["max_turns"] = max_turns;
    j["success_reward"] = success_reward;
    j["length_penalty"] = length_penalty;
    j["discount"] = discount;
    j["noise_stddev"] = noise_stddev;
    j["prior_scale"] = prior_scale;
    j["sparsify_threshold"] = sparsify_threshold;
    j["dictionary_cap"] = dictionary_cap;
    j["plateau_tolerance"] = plateau_tolerance;
    j["out_dir"] = out_dir;
    if (manual_w_s) j["manual_w_s"] = *manual_w_s;
    j["master_seed"] = master_seed;
    return j.dump(2);
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config: not valid JSON: ") + e.what());
    }
    RunConfig c;
    try {
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
        };
        get("domain_path", c.domain_path);
        get("seeds", c.seeds);
        get("n_train_mo", c.n_train_mo);
        get("n_train_so", c.n_train_so);
        get("n_train_so_curve", c.n_train_so_curve);
        get("so_batches", c.so_batches);
        get("n_eval", c.n_eval);
        get("grid_w_s", c.grid_w_s);
        get("ser", c.ser);
        get("max_turns", c.max_turns);
        get("success_reward", c.success_reward);
        get("length_penalty", c.length_penalty);
        get("discount", c.discount);
        get("noise_stddev", c.noise_stddev);
        get("prior_scale", c.prior_scale);
        get("sparsify_threshold", c.sparsify_threshold);
        get("dictionary_cap", c.dictionary_cap);
        get("plateau_tolerance", c.plateau_tolerance);
        get("out_dir", c.out_dir);
        if (j.contains("manual_w_s")) c.manual_w_s = j.at("manual_w_s").get<double>();
        get("master_seed", c.master_seed);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config: schema violation: ") + e.what());
    }
    c.validate();
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    return from_json_text(read_file(path));
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("domain_path", domain_path);
    std::string s;
    for (std::size_t i = 0; i < seeds.size(); ++i)
        s += (i ? ";" : "") + std::to_string(seeds[i]);
    kv.emplace_back("seeds", s);
    kv.emplace_back("n_train_mo", std::to_string(n_train_mo));
    kv.emplace_back("n_train_so", std::to_string(n_train_so));
    kv.emplace_back("n_eval", std::to_string(n_eval));
    kv.emplace_back("ser", format_double(ser));
    kv.emplace_back("max_turns", std::to_string(max_turns));
    kv.emplace_back("success_reward", format_double(success_reward));
    kv.emplace_back("length_penalty", format_double(length_penalty));
    kv.emplace_back("discount", format_double(discount));
    kv.emplace_back("noise_stddev", format_double(noise_stddev));
    kv.emplace_back("prior_scale", format_double(prior_scale));
    kv.emplace_back("sparsify_threshold", format_double(sparsify_threshold));
    kv.emplace_back("dictionary_cap", std::to_string(dictionary_cap));
    kv.emplace_back("master_seed", std::to_string(master_seed));
    return kv;
}

} // namespace morlgp
