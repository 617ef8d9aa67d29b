#ifndef MORLGP_AGENT_HPP
#define MORLGP_AGENT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "morlgp/env.hpp"
#include "morlgp/gp.hpp"

namespace morlgp {

enum class SelectMode { Explore, Greedy };

/// Per-dialogue weight draw: w_s uniform on [0,1], w_l its complement.
WeightVector sample_weights(Rng& rng);

/// Linear scalarization: w_s * success + w_l * length.
double scalarize(const ObjectiveReward& r, const WeightVector& w);

/// Scalarized per-turn reward: every turn pays the weighted length penalty,
/// the final turn of a successful dialogue adds the weighted success bonus.
/// With discount 1 the episode sum equals w_l*T*r_l + 1_success*w_s*r_s.
double turn_reward(bool turn_is_terminal, bool success, const WeightVector& w,
                   const RewardSpec& spec);

/// Explore: posterior (Thompson) sampling over the legal actions.
/// Greedy: argmax of posterior means. Ties go to the lowest action id.
int select_action(const GpSarsa& gp, const Eigen::VectorXd& belief,
                  const WeightVector& w, const std::vector<int>& legal,
                  SelectMode mode, Rng& rng);

struct EpisodeLog {
    int episode = 0;
    double w_s = 0.0;
    bool success = false;
    int turns = 0;
    double scalarized_return = 0.0;
    std::size_t dict_size = 0;
};

struct TrainOptions {
    int n_dialogues = 1;
    /// First episode index; batched training continues the same seed fan-out.
    int episode_offset = 0;
    /// Unset: a fresh weight vector per dialogue (multi-objective training).
    std::optional<WeightVector> fixed_weights;
    /// Single-objective mode: the reward spec is already scalarized and is
    /// applied directly, with `kernel_weights` as the (constant) weight
    /// coordinate of every kernel point.
    bool pre_scalarized = false;
    WeightVector kernel_weights{1.0, 0.0};
    EnvOptions env;
    std::uint64_t master_seed = 0;
    std::uint64_t policy_seed = 0;
};

/// Algorithm: per training dialogue, pick weights, run the dialogue with
/// posterior-sampling exploration recording (b_t, a_t, w), scalarize the
/// per-turn rewards, and absorb the episode into the GP.
std::vector<EpisodeLog> train(const DomainOntology& o, GpSarsa& gp,
                              const RewardSpec& spec, const TrainOptions& opt);

struct EvalResult {
    double tsr = 0.0;
    double avg_turns = 0.0;
    int successes = 0;
    int n = 0;
};

/// n greedy dialogues against a frozen policy.
EvalResult evaluate_policy(const GpSarsa& gp, const DomainOntology& o,
                           const WeightVector& w, const RewardSpec& spec,
                           int n_eval, const EnvOptions& env,
                           std::uint64_t master_seed, std::uint64_t stream_tag);

/// Episode -> GP transitions with scalarized rewards.
std::vector<Transition> episode_transitions(const DialogueEpisode& ep,
                                            const WeightVector& kernel_w,
                                            bool pre_scalarized,
                                            const RewardSpec& spec);

} // namespace morlgp

#endif
