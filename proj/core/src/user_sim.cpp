#include "morlgp/user_sim.hpp"

#include "morlgp/errors.hpp"

namespace morlgp {

namespace {

int goal_value(const UserGoal& goal, int slot, const DomainOntology& o) {
    auto it = goal.constraints.find(slot);
    if (it != goal.constraints.end()) return it->second;
    return static_cast<int>(o.slots[static_cast<std::size_t>(slot)].values.size()); // dontcare
}

int first_constraint_slot(const UserGoal& goal) {
    return goal.constraints.begin()->first;
}

UserAct inform_goal(const UserGoal& goal, int slot, const DomainOntology& o) {
    return {UserActKind::Inform, slot, goal_value(goal, slot, o), -1};
}

UserAct next_request_or_bye(const AgendaState& state) {
    if (state.pending.empty()) return {UserActKind::Bye, -1, -1, -1};
    return {UserActKind::Request, -1, -1, *state.pending.begin()};
}

} // namespace

UserGoal sample_goal(const DomainOntology& o, Rng& rng) {
    if (o.entities.empty()) throw ValidationError("sample_goal: ontology has no entities");
    const int e = rng.uniform_int(static_cast<int>(o.entities.size()));
    const Entity& ent = o.entities[static_cast<std::size_t>(e)];

    UserGoal goal;
    const int n_slots = static_cast<int>(o.slots.size());
    const int n_constraints = 1 + rng.uniform_int(n_slots);
    std::vector<int> slot_order(static_cast<std::size_t>(n_slots));
    for (int i = 0; i < n_slots; ++i) slot_order[static_cast<std::size_t>(i)] = i;
    for (int i = n_slots - 1; i > 0; --i)
        std::swap(slot_order[static_cast<std::size_t>(i)],
                  slot_order[static_cast<std::size_t>(rng.uniform_int(i + 1))]);
    for (int i = 0; i < n_constraints; ++i) {
        const int s = slot_order[static_cast<std::size_t>(i)];
        const std::string& v = ent.constraints.at(o.slots[static_cast<std::size_t>(s)].name);
        goal.constraints[s] = o.value_index(s, v);
    }

    const int n_req = static_cast<int>(o.requestables.size());
    const int n_requests = 1 + rng.uniform_int(n_req);
    std::vector<int> req_order(static_cast<std::size_t>(n_req));
    for (int i = 0; i < n_req; ++i) req_order[static_cast<std::size_t>(i)] = i;
    for (int i = n_req - 1; i > 0; --i)
        std::swap(req_order[static_cast<std::size_t>(i)],
                  req_order[static_cast<std::size_t>(rng.uniform_int(i + 1))]);
    for (int i = 0; i < n_requests; ++i)
        goal.requests.insert(req_order[static_cast<std::size_t>(i)]);
    return goal;
}

bool entity_satisfies(const DomainOntology& o, const UserGoal& goal, int entity) {
    if (entity < 0 || entity >= static_cast<int>(o.entities.size())) return false;
    const Entity& ent = o.entities[static_cast<std::size_t>(entity)];
    for (const auto& [slot, value] : goal.constraints) {
        const std::string& have =
            ent.constraints.at(o.slots[static_cast<std::size_t>(slot)].name);
        if (o.value_index(slot, have) != value) return false;
    }
    return true;
}

AgendaState init_agenda(const UserGoal& goal) {
    AgendaState s;
    s.pending = goal.requests;
    return s;
}

UserAct user_step(const UserGoal& goal, AgendaState& state, const SystemTurn& turn,
                  const DomainOntology& o, Rng& rng) {
    (void)rng; // reactions are deterministic given goal and agenda
    UserAct act;
    switch (turn.act.kind) {
    case SysActKind::Request:
        act = inform_goal(goal, turn.act.slot, o);
        break;
    case SysActKind::Confirm: {
        const int g = goal_value(goal, turn.act.slot, o);
        if (turn.confirm_value == g)
            act = {UserActKind::Affirm, turn.act.slot, g, -1};
        else
            act = {UserActKind::Negate, turn.act.slot, g, -1};
        break;
    }
    case SysActKind::InformOffer: {
        if (entity_satisfies(o, goal, turn.offered_entity)) {
            if (turn.offered_entity != state.accepted_offer) {
                // A new venue: previously answered items were for the old one.
                state.accepted_offer = turn.offered_entity;
                state.pending = goal.requests;
            }
            act = next_request_or_bye(state);
        } else {
            // Re-state a violated (or any, when nothing was offered) constraint.
            int slot = first_constraint_slot(goal);
            if (turn.offered_entity >= 0) {
                const Entity& ent = o.entities[static_cast<std::size_t>(turn.offered_entity)];
                for (const auto& [s, v] : goal.constraints) {
                    const std::string& have =
                        ent.constraints.at(o.slots[static_cast<std::size_t>(s)].name);
                    if (o.value_index(s, have) != v) {
                        slot = s;
                        break;
                    }
                }
            }
            act = inform_goal(goal, slot, o);
        }
        break;
    }
    case SysActKind::InformRequested: {
        if (state.accepted_offer < 0) {
            act = inform_goal(goal, first_constraint_slot(goal), o);
        } else {
            state.pending.erase(turn.answered_item);
            act = next_request_or_bye(state);
        }
        break;
    }
    case SysActKind::Repeat:
        act = state.last_act.kind == UserActKind::Silent
                  ? inform_goal(goal, first_constraint_slot(goal), o)
                  : state.last_act;
        break;
    case SysActKind::Bye:
        act = {UserActKind::Silent, -1, -1, -1};
        break;
    }
    if (act.kind != UserActKind::Silent) state.last_act = act;
    return act;
}

namespace {

/// A uniformly random real value of the slot different from `value`
/// (dontcare only when the slot has a single value).
int replacement_value(const DomainOntology& o, int slot, int value, Rng& rng) {
    const int n = static_cast<int>(o.slots[static_cast<std::size_t>(slot)].values.size());
    if (value >= n) return rng.uniform_int(n); // dontcare corrupted to a real value
    if (n < 2) return n;                       // only alternative is dontcare
    int pick = rng.uniform_int(n - 1);
    if (pick >= value) ++pick;
    return pick;
}

} // namespace

ObservedAct corrupt_act(const UserAct& act, double ser, const DomainOntology& o,
                        Rng& rng) {
    if (ser < 0.0 || ser > 1.0)
        throw ValidationError("corrupt_act: ser outside [0, 1]");
    ObservedAct out;
    out.act = act;
    if (act.kind == UserActKind::Bye || act.kind == UserActKind::Silent) {
        out.confidence = 1.0;
        return out;
    }
    out.corrupted = rng.uniform() < ser;
    if (out.corrupted) {
        switch (act.kind) {
        case UserActKind::Inform:
        case UserActKind::Negate:
            out.act.value = replacement_value(o, act.slot, act.value, rng);
            break;
        case UserActKind::Affirm:
            out.act.kind = UserActKind::Negate;
            out.act.value = replacement_value(o, act.slot, act.value, rng);
            break;
        case UserActKind::Request: {
            const int n = static_cast<int>(o.requestables.size());
            if (n > 1) {
                int pick = rng.uniform_int(n - 1);
                if (pick >= act.item) ++pick;
                out.act.item = pick;
            }
            break;
        }
        default:
            break;
        }
    }
    out.confidence = out.corrupted ? rng.uniform(0.3, 0.9) : rng.uniform(0.7, 1.0);
    return out;
}

} // namespace morlgp
