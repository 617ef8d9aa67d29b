#include "morlgp/env.hpp"

#include <map>
#include <set>
#include <string>

#include <json.hpp>

#include "morlgp/errors.hpp"

namespace morlgp {

namespace {

SystemTurn ground_action(int action_id, const BeliefState& belief,
                         const DomainOntology& o, const std::deque<int>& open_requests,
                         Rng& rng) {
    SystemTurn st;
    st.act = action_from_id(action_id, o);
    switch (st.act.kind) {
    case SysActKind::Confirm:
        st.confirm_value = belief.top_value(st.act.slot);
        break;
    case SysActKind::InformOffer: {
        std::map<std::string, std::string> constraints;
        for (int s = 0; s < static_cast<int>(o.slots.size()); ++s) {
            const int top = belief.top_value(s);
            if (top < static_cast<int>(o.slots[static_cast<std::size_t>(s)].values.size()))
                constraints[o.slots[static_cast<std::size_t>(s)].name] =
                    o.slots[static_cast<std::size_t>(s)].values[static_cast<std::size_t>(top)];
        }
        const auto matches = db_lookup(o, constraints);
        // A uniformly random match: under-constrained queries then explore the
        // database instead of repeating the same entity.
        st.offered_entity =
            matches.empty()
                ? -1
                : matches[static_cast<std::size_t>(
                      rng.uniform_int(static_cast<int>(matches.size())))];
        break;
    }
    case SysActKind::InformRequested:
        st.answered_item = open_requests.empty() ? -1 : open_requests.front();
        break;
    default:
        break;
    }
    return st;
}

} // namespace

DialogueEpisode run_dialogue(const ActionSelector& select, const DomainOntology& o,
                             const WeightVector& w, const RewardSpec& spec,
                             const EnvOptions& opt, Rng& rng,
                             std::optional<UserGoal> fixed_goal) {
    if (opt.max_turns < 1) throw ValidationError("run_dialogue: max_turns must be >= 1");
    spec.validate();

    DialogueEpisode ep;
    ep.weights = w;
    ep.goal = fixed_goal ? *fixed_goal : sample_goal(o, rng);
    AgendaState agenda = init_agenda(ep.goal);
    BeliefState belief(o);

    std::vector<int> legal(static_cast<std::size_t>(action_count(o)));
    for (std::size_t i = 0; i < legal.size(); ++i) legal[i] = static_cast<int>(i);

    std::deque<int> open_requests; // observed, not yet answered (system's view)
    bool ended_by_bye = false;

    for (int turn = 0; turn < opt.max_turns; ++turn) {
        TurnRecord rec;
        rec.belief = belief.vector();
        int action_id;
        try {
            action_id = select(rec.belief, legal, rng);
        } catch (const std::exception& e) {
            throw ProtocolError("run_dialogue: action selection failed at turn " +
                                std::to_string(turn + 1) + ": " + e.what());
        }
        rec.action_id = action_id;
        rec.sys = ground_action(action_id, belief, o, open_requests, rng);

        if (rec.sys.act.kind == SysActKind::InformOffer) belief.note_offer();
        if (rec.sys.act.kind == SysActKind::InformRequested && rec.sys.answered_item >= 0) {
            belief.note_request_answered(rec.sys.answered_item);
            open_requests.pop_front();
        }

        const bool system_bye = rec.sys.act.kind == SysActKind::Bye;
        if (system_bye) {
            rec.true_act = {UserActKind::Silent, -1, -1, -1};
            rec.observed_act = rec.true_act;
            rec.confidence = 1.0;
        } else {
            rec.true_act = user_step(ep.goal, agenda, rec.sys, o, rng);
            const ObservedAct obs = corrupt_act(rec.true_act, opt.ser, o, rng);
            rec.observed_act = obs.act;
            rec.confidence = obs.confidence;
            belief.observe(rec.observed_act, rec.confidence);
            if (rec.observed_act.kind == UserActKind::Request &&
                !belief.requests_answered().count(rec.observed_act.item)) {
                bool queued = false;
                for (int q : open_requests) queued = queued || q == rec.observed_act.item;
                if (!queued) open_requests.push_back(rec.observed_act.item);
            }
        }

        const bool user_bye = rec.true_act.kind == UserActKind::Bye;
        ep.turns.push_back(std::move(rec));
        if (system_bye || user_bye) {
            ended_by_bye = true;
            break;
        }
    }

    ep.cut_off = !ended_by_bye;
    ep.success = evaluate_success(ep, o);

    for (std::size_t t = 0; t < ep.turns.size(); ++t) {
        ep.turns[t].reward.length_component = spec.length_penalty;
        ep.turns[t].reward.success_component =
            (t + 1 == ep.turns.size() && ep.success) ? spec.success_reward : 0.0;
    }
    return ep;
}

bool evaluate_success(const DialogueEpisode& ep, const DomainOntology& o) {
    if (ep.cut_off) return false;
    std::set<int> offered;
    std::map<int, std::set<int>> answered;
    int current = -1;
    for (const auto& t : ep.turns) {
        if (t.sys.act.kind == SysActKind::InformOffer && t.sys.offered_entity >= 0) {
            current = t.sys.offered_entity;
            offered.insert(current);
        }
        if (t.sys.act.kind == SysActKind::InformRequested && t.sys.answered_item >= 0 &&
            current >= 0)
            answered[current].insert(t.sys.answered_item);
    }
    for (int e : offered) {
        if (!entity_satisfies(o, ep.goal, e)) continue;
        const auto& got = answered[e];
        bool all = true;
        for (int r : ep.goal.requests) all = all && got.count(r) > 0;
        if (all) return true;
    }
    return false;
}

std::string episode_to_json(const DialogueEpisode& ep, const DomainOntology& o) {
    nlohmann::json j;
    j["domain"] = o.name;
    j["w"] = {ep.weights.success, ep.weights.length};
    j["success"] = ep.success;
    j["cut_off"] = ep.cut_off;
    nlohmann::json goal;
    for (const auto& [s, v] : ep.goal.constraints)
        goal["constraints"][o.slots[static_cast<std::size_t>(s)].name] =
            v < static_cast<int>(o.slots[static_cast<std::size_t>(s)].values.size())
                ? o.slots[static_cast<std::size_t>(s)].values[static_cast<std::size_t>(v)]
                : "dontcare";
    for (int r : ep.goal.requests)
        goal["requests"].push_back(o.requestables[static_cast<std::size_t>(r)]);
    j["goal"] = std::move(goal);
    nlohmann::json turns = nlohmann::json::array();
    for (const auto& t : ep.turns) {
        nlohmann::json jt;
        jt["action"] = describe(t.sys.act, o);
        jt["action_id"] = t.action_id;
        jt["offered_entity"] = t.sys.offered_entity;
        jt["answered_item"] = t.sys.answered_item;
        jt["confirm_value"] = t.sys.confirm_value;
        jt["user_act"] = describe(t.true_act, o);
        jt["observed_act"] = describe(t.observed_act, o);
        jt["confidence"] = t.confidence;
        jt["reward"] = {t.reward.success_component, t.reward.length_component};
        turns.push_back(std::move(jt));
    }
    j["turns"] = std::move(turns);
    return j.dump(2);
}

} // namespace morlgp
