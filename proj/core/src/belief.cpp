#include "morlgp/belief.hpp"

#include "morlgp/errors.hpp"

namespace morlgp {

namespace {

SystemAction checked_action(int id, const DomainOntology& o) {
    const int s = static_cast<int>(o.slots.size());
    if (id < 0 || id >= action_count(o))
        throw ValidationError("action id out of range: " + std::to_string(id));
    if (id < s) return {SysActKind::Request, id};
    if (id < 2 * s) return {SysActKind::Confirm, id - s};
    switch (id - 2 * s) {
    case 0: return {SysActKind::InformOffer, -1};
    case 1: return {SysActKind::InformRequested, -1};
    case 2: return {SysActKind::Repeat, -1};
    default: return {SysActKind::Bye, -1};
    }
}

} // namespace

SystemAction action_from_id(int id, const DomainOntology& o) {
    return checked_action(id, o);
}

int action_id(const SystemAction& a, const DomainOntology& o) {
    const int s = static_cast<int>(o.slots.size());
    switch (a.kind) {
    case SysActKind::Request: return a.slot;
    case SysActKind::Confirm: return s + a.slot;
    case SysActKind::InformOffer: return 2 * s;
    case SysActKind::InformRequested: return 2 * s + 1;
    case SysActKind::Repeat: return 2 * s + 2;
    case SysActKind::Bye: return 2 * s + 3;
    }
    return -1;
}

std::string describe(const SystemAction& a, const DomainOntology& o) {
    switch (a.kind) {
    case SysActKind::Request: return "request(" + o.slots[static_cast<std::size_t>(a.slot)].name + ")";
    case SysActKind::Confirm: return "confirm(" + o.slots[static_cast<std::size_t>(a.slot)].name + ")";
    case SysActKind::InformOffer: return "inform_offer";
    case SysActKind::InformRequested: return "inform_requested";
    case SysActKind::Repeat: return "repeat";
    case SysActKind::Bye: return "bye";
    }
    return "?";
}

std::string describe(const UserAct& a, const DomainOntology& o) {
    auto value_name = [&](int slot, int value) -> std::string {
        const auto& vals = o.slots[static_cast<std::size_t>(slot)].values;
        if (value == static_cast<int>(vals.size())) return "dontcare";
        if (value >= 0 && value < static_cast<int>(vals.size()))
            return vals[static_cast<std::size_t>(value)];
        return "?";
    };
    switch (a.kind) {
    case UserActKind::Inform:
        return "inform(" + o.slots[static_cast<std::size_t>(a.slot)].name + "=" +
               value_name(a.slot, a.value) + ")";
    case UserActKind::Affirm: return "affirm";
    case UserActKind::Negate:
        return "negate(" + o.slots[static_cast<std::size_t>(a.slot)].name + "=" +
               value_name(a.slot, a.value) + ")";
    case UserActKind::Request:
        return "request(" + o.requestables[static_cast<std::size_t>(a.item)] + ")";
    case UserActKind::Bye: return "bye";
    case UserActKind::Silent: return "silent";
    }
    return "?";
}

BeliefState::BeliefState(const DomainOntology& o) : ontology_(&o) {
    dists_.reserve(o.slots.size());
    for (const auto& s : o.slots) {
        // values + dontcare + none; all initial mass on none
        Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.values.size()) + 2);
        d(d.size() - 1) = 1.0;
        dists_.push_back(std::move(d));
    }
}

int BeliefState::dontcare_index(int slot) const {
    return static_cast<int>(ontology_->slots[static_cast<std::size_t>(slot)].values.size());
}

int BeliefState::none_index(int slot) const { return dontcare_index(slot) + 1; }

const Eigen::VectorXd& BeliefState::slot_dist(int slot) const {
    return dists_[static_cast<std::size_t>(slot)];
}

void BeliefState::observe(const UserAct& observed, double confidence) {
    if (confidence < 0.0 || confidence > 1.0)
        throw ValidationError("belief update: confidence outside [0, 1]");
    switch (observed.kind) {
    case UserActKind::Inform:
    case UserActKind::Affirm:
    case UserActKind::Negate: {
        if (observed.slot < 0 || observed.slot >= static_cast<int>(dists_.size()))
            throw ValidationError("belief update: unknown slot index " +
                                  std::to_string(observed.slot));
        auto& d = dists_[static_cast<std::size_t>(observed.slot)];
        // user-utterable values: real values + dontcare
        if (observed.value < 0 || observed.value > dontcare_index(observed.slot))
            throw ValidationError("belief update: unknown value index " +
                                  std::to_string(observed.value));
        d *= (1.0 - confidence);
        d(observed.value) += confidence;
        const double sum = d.sum();
        if (sum > 0.0) d /= sum;
        break;
    }
    case UserActKind::Request: {
        if (observed.item < 0 ||
            observed.item >= static_cast<int>(ontology_->requestables.size()))
            throw ValidationError("belief update: unknown requestable index " +
                                  std::to_string(observed.item));
        note_request_seen(observed.item);
        break;
    }
    case UserActKind::Bye:
    case UserActKind::Silent:
        break;
    }
}

void BeliefState::note_request_seen(int item) { seen_.insert(item); }

void BeliefState::note_request_answered(int item) {
    if (seen_.count(item)) answered_.insert(item);
}

int BeliefState::top_value(int slot) const {
    const auto& d = dists_[static_cast<std::size_t>(slot)];
    int best = 0;
    for (int i = 1; i < d.size(); ++i)
        if (d(i) > d(best)) best = i;
    return best;
}

double BeliefState::top_prob(int slot) const {
    return dists_[static_cast<std::size_t>(slot)](top_value(slot));
}

Eigen::Index BeliefState::dimension(const DomainOntology& o) {
    Eigen::Index dim = 0;
    for (const auto& s : o.slots) dim += static_cast<Eigen::Index>(s.values.size()) + 2;
    return dim + static_cast<Eigen::Index>(o.slots.size()) + 3;
}

Eigen::VectorXd BeliefState::vector() const {
    Eigen::VectorXd v(dimension(*ontology_));
    Eigen::Index at = 0;
    for (const auto& d : dists_) {
        v.segment(at, d.size()) = d;
        at += d.size();
    }
    for (int s = 0; s < static_cast<int>(dists_.size()); ++s) v(at++) = top_prob(s);
    const double n_req = static_cast<double>(ontology_->requestables.size());
    v(at++) = static_cast<double>(seen_.size()) / n_req;
    v(at++) = static_cast<double>(answered_.size()) / n_req;
    v(at++) = offer_made_ ? 1.0 : 0.0;
    return v;
}

BeliefState belief_update(const BeliefState& b, const UserAct& observed,
                          double confidence) {
    BeliefState next = b;
    next.observe(observed, confidence);
    return next;
}

} // namespace morlgp
