#ifndef MORLGP_USER_SIM_HPP
#define MORLGP_USER_SIM_HPP

#include <map>
#include <set>

#include "morlgp/acts.hpp"
#include "morlgp/rng.hpp"

namespace morlgp {

/// What the user wants: required slot values and items to ask about.
/// Sampled from a database entity, so always satisfiable.
struct UserGoal {
    std::map<int, int> constraints; // slot index -> value index
    std::set<int> requests;         // requestable indices
};

UserGoal sample_goal(const DomainOntology& o, Rng& rng);

bool entity_satisfies(const DomainOntology& o, const UserGoal& goal, int entity);

/// A system action together with its grounded content for this turn.
struct SystemTurn {
    SystemAction act;
    int confirm_value = -1;  // Confirm: the system's hypothesised value index
    int offered_entity = -1; // InformOffer: database entity, -1 when no match
    int answered_item = -1;  // InformRequested: requestable index, -1 when none
};

/// Stack-like user state: outstanding requests and the accepted offer.
struct AgendaState {
    std::set<int> pending;
    int accepted_offer = -1;
    UserAct last_act;
};

AgendaState init_agenda(const UserGoal& goal);

/// The user's true reaction to a system turn.
UserAct user_step(const UserGoal& goal, AgendaState& state, const SystemTurn& turn,
                  const DomainOntology& o, Rng& rng);

struct ObservedAct {
    UserAct act;
    double confidence = 1.0;
    bool corrupted = false;
};

/// Noisy channel: with probability ser the act's slot value is replaced by a
/// uniformly random different value (affirm flips to negate likewise).
/// Confidence comes from a high band when clean, a lower band when corrupted.
ObservedAct corrupt_act(const UserAct& act, double ser, const DomainOntology& o,
                        Rng& rng);

} // namespace morlgp

#endif
