#ifndef MORLGP_CONFIG_HPP
#define MORLGP_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morlgp/balancing.hpp"

namespace morlgp {

/// Everything a pipeline run needs; a JSON config file supplies defaults and
/// command-line flags override individual fields.
struct RunConfig {
    std::string domain_path;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    int n_train_mo = 3000;
    int n_train_so = 1000;       // per grid point (comparison sweeps)
    int n_train_so_curve = 4000; // learning-curve baselines
    int so_batches = 10;
    int n_eval = 300;
    std::vector<double> grid_w_s = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    double ser = 0.15;
    int max_turns = 25;
    double success_reward = 40.0;
    double length_penalty = -2.0;
    double discount = 1.0;
    double noise_stddev = 6.0;
    double prior_scale = 2.0;
    double sparsify_threshold = 0.001;
    int dictionary_cap = 500;
    double plateau_tolerance = 0.02; // TSR fraction, not percent
    std::string out_dir = "out";
    std::optional<double> manual_w_s;
    std::uint64_t master_seed = 42;

    void validate() const;

    RewardSpec reward_spec() const;
    GpConfig gp_config() const;
    EnvOptions env_options() const;
    std::vector<WeightVector> grid() const;

    std::string to_json_text() const;
    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_file(const std::string& path);

    /// key=value pairs for provenance comments in output files.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

} // namespace morlgp

#endif
