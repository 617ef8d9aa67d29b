#ifndef MORLGP_ACTS_HPP
#define MORLGP_ACTS_HPP

#include <string>

#include "morlgp/ontology.hpp"

namespace morlgp {

/// User dialogue acts. `value` indexes the slot's value list; the index one
/// past the last real value means "dontcare".
enum class UserActKind { Inform, Affirm, Negate, Request, Bye, Silent };

struct UserAct {
    UserActKind kind = UserActKind::Silent;
    int slot = -1;
    int value = -1;
    int item = -1; // requestable index, for Request acts

    bool operator==(const UserAct&) const = default;
};

/// Summary system actions: one request and one confirm per constraint slot
/// plus four global acts, laid out as a dense id space.
enum class SysActKind { Request, Confirm, InformOffer, InformRequested, Repeat, Bye };

struct SystemAction {
    SysActKind kind = SysActKind::Repeat;
    int slot = -1;

    bool operator==(const SystemAction&) const = default;
};

inline int action_count(const DomainOntology& o) {
    return 2 * static_cast<int>(o.slots.size()) + 4;
}

SystemAction action_from_id(int id, const DomainOntology& o);
int action_id(const SystemAction& a, const DomainOntology& o);

std::string describe(const SystemAction& a, const DomainOntology& o);
std::string describe(const UserAct& a, const DomainOntology& o);

} // namespace morlgp

#endif
