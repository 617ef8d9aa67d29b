#ifndef MORLGP_BELIEF_HPP
#define MORLGP_BELIEF_HPP

#include <Eigen/Dense>
#include <set>
#include <vector>

#include "morlgp/acts.hpp"

namespace morlgp {

/// Per-slot value distributions (values + dontcare + none) plus summary
/// features. The flattened vector layout is fixed for the lifetime of a
/// domain: all slot distributions, then per-slot top-value probability,
/// requested/answered counts, offer-made flag.
class BeliefState {
public:
    explicit BeliefState(const DomainOntology& o);

    /// Focus-style update for the mentioned slot:
    /// new(v) = (1-c)*old(v) + c*1[v == observed]; other slots unchanged.
    void observe(const UserAct& observed, double confidence);

    void note_offer() { offer_made_ = true; }
    void note_request_seen(int item);
    void note_request_answered(int item);

    int top_value(int slot) const;    // argmax index, lowest wins ties
    double top_prob(int slot) const;
    int dontcare_index(int slot) const;
    int none_index(int slot) const;
    const Eigen::VectorXd& slot_dist(int slot) const;
    bool offer_made() const { return offer_made_; }
    const std::set<int>& requests_seen() const { return seen_; }
    const std::set<int>& requests_answered() const { return answered_; }

    Eigen::VectorXd vector() const;
    static Eigen::Index dimension(const DomainOntology& o);

private:
    const DomainOntology* ontology_;
    std::vector<Eigen::VectorXd> dists_;
    std::set<int> seen_;
    std::set<int> answered_;
    bool offer_made_ = false;
};

/// Pure-function flavor of the update, returning the new state.
BeliefState belief_update(const BeliefState& b, const UserAct& observed,
                          double confidence);

} // namespace morlgp

#endif
