#include "morlgp/agent.hpp"

#include <cmath>

#include "morlgp/errors.hpp"

namespace morlgp {

namespace {
// Stream tags keep the seed fan-out of training, evaluation and sweeps
// disjoint under one master seed.
constexpr std::uint64_t kTrainTag = 0x7261696e;
} // namespace

WeightVector sample_weights(Rng& rng) {
    const double w_s = rng.uniform();
    return {w_s, 1.0 - w_s};
}

double scalarize(const ObjectiveReward& r, const WeightVector& w) {
    return w.success * r.success_component + w.length * r.length_component;
}

double turn_reward(bool turn_is_terminal, bool success, const WeightVector& w,
                   const RewardSpec& spec) {
    double r = w.length * spec.length_penalty;
    if (turn_is_terminal && success) r += w.success * spec.success_reward;
    return r;
}

int select_action(const GpSarsa& gp, const Eigen::VectorXd& belief,
                  const WeightVector& w, const std::vector<int>& legal,
                  SelectMode mode, Rng& rng) {
    if (legal.empty()) throw ProtocolError("select_action: empty legal action set");
    int best = -1;
    double best_score = 0.0;
    for (int a : legal) {
        const auto [mean, var] = gp.predict({belief, a, w});
        const double score =
            mode == SelectMode::Explore ? mean + std::sqrt(var) * rng.gaussian() : mean;
        if (best < 0 || score > best_score ||
            (score == best_score && a < best)) {
            best = a;
            best_score = score;
        }
    }
    return best;
}

std::vector<Transition> episode_transitions(const DialogueEpisode& ep,
                                            const WeightVector& kernel_w,
                                            bool pre_scalarized,
                                            const RewardSpec& spec) {
    std::vector<Transition> ts;
    ts.reserve(ep.turns.size());
    for (std::size_t t = 0; t < ep.turns.size(); ++t) {
        const bool terminal = t + 1 == ep.turns.size();
        Transition tr;
        tr.point = {ep.turns[t].belief, ep.turns[t].action_id, kernel_w};
        if (pre_scalarized) {
            tr.reward = spec.length_penalty;
            if (terminal && ep.success) tr.reward += spec.success_reward;
        } else {
            tr.reward = turn_reward(terminal, ep.success, ep.weights, spec);
        }
        tr.is_terminal = terminal;
        ts.push_back(std::move(tr));
    }
    return ts;
}

std::vector<EpisodeLog> train(const DomainOntology& o, GpSarsa& gp,
                              const RewardSpec& spec, const TrainOptions& opt) {
    if (opt.n_dialogues < 1) throw ValidationError("train: n_dialogues must be >= 1");
    spec.validate();

    std::vector<EpisodeLog> logs;
    logs.reserve(static_cast<std::size_t>(opt.n_dialogues));
    for (int idx = 0; idx < opt.n_dialogues; ++idx) {
        const int i = opt.episode_offset + idx;
        Rng rng(derive_seed(opt.master_seed,
                            {kTrainTag, opt.policy_seed, static_cast<std::uint64_t>(i)}));
        const WeightVector w =
            opt.fixed_weights ? *opt.fixed_weights : sample_weights(rng);
        const WeightVector kernel_w = opt.pre_scalarized ? opt.kernel_weights : w;

        ActionSelector select = [&](const Eigen::VectorXd& belief,
                                    const std::vector<int>& legal, Rng& r) {
            return select_action(gp, belief, kernel_w, legal, SelectMode::Explore, r);
        };
        DialogueEpisode ep;
        try {
            ep = run_dialogue(select, o, w, spec, opt.env, rng);
        } catch (const std::exception& e) {
            throw ProtocolError("train: episode " + std::to_string(i) +
                                " failed: " + e.what());
        }
        const auto transitions = episode_transitions(ep, kernel_w, opt.pre_scalarized, spec);
        gp.observe_episode(transitions);

        EpisodeLog log;
        log.episode = i;
        log.w_s = opt.pre_scalarized ? opt.kernel_weights.success : w.success;
        log.success = ep.success;
        log.turns = ep.turn_count();
        const double total_length =
            static_cast<double>(ep.turn_count()) * spec.length_penalty;
        const double total_success = ep.success ? spec.success_reward : 0.0;
        log.scalarized_return =
            opt.pre_scalarized ? total_success + total_length
                               : scalarize({total_success, total_length}, w);
        log.dict_size = gp.dictionary_size();
        logs.push_back(log);
    }
    return logs;
}

EvalResult evaluate_policy(const GpSarsa& gp, const DomainOntology& o,
                           const WeightVector& w, const RewardSpec& spec,
                           int n_eval, const EnvOptions& env,
                           std::uint64_t master_seed, std::uint64_t stream_tag) {
    if (n_eval < 1) throw ValidationError("evaluate_policy: n_eval must be >= 1");
    int successes = 0;
    long total_turns = 0;
    for (int i = 0; i < n_eval; ++i) {
        Rng rng(derive_seed(master_seed, {stream_tag, static_cast<std::uint64_t>(i)}));
        ActionSelector select = [&](const Eigen::VectorXd& belief,
                                    const std::vector<int>& legal, Rng& r) {
            return select_action(gp, belief, w, legal, SelectMode::Greedy, r);
        };
        const DialogueEpisode ep = run_dialogue(select, o, w, spec, env, rng);
        successes += ep.success ? 1 : 0;
        total_turns += ep.turn_count();
    }
    EvalResult res;
    res.n = n_eval;
    res.successes = successes;
    res.tsr = static_cast<double>(successes) / static_cast<double>(n_eval);
    res.avg_turns = static_cast<double>(total_turns) / static_cast<double>(n_eval);
    return res;
}

} // namespace morlgp
