#ifndef MORLGP_ENV_HPP
#define MORLGP_ENV_HPP

#include <Eigen/Dense>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "morlgp/belief.hpp"
#include "morlgp/types.hpp"
#include "morlgp/user_sim.hpp"

namespace morlgp {

struct TurnRecord {
    Eigen::VectorXd belief; // as seen by the policy, before acting
    int action_id = -1;
    SystemTurn sys;
    UserAct true_act;
    UserAct observed_act;
    double confidence = 1.0;
    ObjectiveReward reward;
};

struct DialogueEpisode {
    std::vector<TurnRecord> turns;
    UserGoal goal;
    WeightVector weights;
    bool success = false;
    bool cut_off = false;

    int turn_count() const { return static_cast<int>(turns.size()); }
};

struct EnvOptions {
    double ser = 0.15;
    int max_turns = 25;
};

/// Picks an action id given the flattened belief and the legal id set.
using ActionSelector =
    std::function<int(const Eigen::VectorXd& belief, const std::vector<int>& legal, Rng& rng)>;

/// One simulated dialogue: system action, user reaction, noisy channel,
/// belief update, until bye from either side or the turn cap (cap => failure).
DialogueEpisode run_dialogue(const ActionSelector& select, const DomainOntology& o,
                             const WeightVector& w, const RewardSpec& spec,
                             const EnvOptions& opt, Rng& rng,
                             std::optional<UserGoal> fixed_goal = std::nullopt);

/// True iff some offered entity satisfies every goal constraint and every
/// goal request was answered while it was the standing offer. Cut-off
/// dialogues are never successful.
bool evaluate_success(const DialogueEpisode& ep, const DomainOntology& o);

std::string episode_to_json(const DialogueEpisode& ep, const DomainOntology& o);

} // namespace morlgp

#endif
