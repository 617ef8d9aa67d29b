#ifndef MORLGP_TYPES_HPP
#define MORLGP_TYPES_HPP

#include <cmath>

#include "morlgp/errors.hpp"

namespace morlgp {

/// Convex weights over the two objectives (task success, dialogue length).
struct WeightVector {
    double success = 0.5;
    double length = 0.5;

    WeightVector() = default;
    WeightVector(double w_s, double w_l) : success(w_s), length(w_l) {
        if (!(w_s >= 0.0) || !(w_l >= 0.0) || std::abs(w_s + w_l - 1.0) > 1e-12)
            throw ValidationError("weight vector must lie on the 2-simplex");
    }

    static WeightVector from_success(double w_s) { return {w_s, 1.0 - w_s}; }

    bool operator==(const WeightVector&) const = default;
};

/// Per-turn reward in objective space, one component per objective.
struct ObjectiveReward {
    double success_component = 0.0;
    double length_component = 0.0;
};

/// Reward constants of the environment: success bonus r_s, per-turn penalty r_l.
struct RewardSpec {
    double success_reward = 40.0;
    double length_penalty = -2.0;
    double discount = 1.0;

    void validate() const {
        if (!(success_reward > 0.0))
            throw ValidationError("success_reward must be positive");
        if (!(length_penalty < 0.0))
            throw ValidationError("length_penalty must be negative");
        if (!(discount >= 0.0) || !(discount <= 1.0))
            throw ValidationError("discount must be in [0, 1]");
    }
};

} // namespace morlgp

#endif
