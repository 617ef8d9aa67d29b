#ifndef MORLGP_BALANCING_HPP
#define MORLGP_BALANCING_HPP

#include <optional>
#include <string>
#include <vector>

#include "morlgp/agent.hpp"

namespace morlgp {

struct CurvePoint {
    double w_s = 0.0;
    double tsr = 0.0;       // pooled successes / n_dialogues
    double avg_turns = 0.0; // mean over seeds
    int n_dialogues = 0;    // pooled across seeds
    std::vector<double> seed_tsr;
    std::vector<double> seed_turns;
};

struct SweepResult {
    std::string domain;
    std::vector<CurvePoint> grid; // ascending in w_s
    std::vector<std::uint64_t> seeds;
    long training_dialogues_per_seed = 0; // total budget behind this curve
};

std::vector<WeightVector> default_weight_grid(); // (0.1,0.9) ... (0.9,0.1)

/// Greedy evaluation of every (grid point, seed snapshot) cell; per-point
/// results pool the seeds.
SweepResult sweep_evaluate(const std::vector<GpSarsa>& snapshots,
                           const DomainOntology& o,
                           const std::vector<WeightVector>& grid, int n_eval,
                           const RewardSpec& spec, const EnvOptions& env,
                           std::uint64_t master_seed,
                           long training_dialogues_per_seed);

/// Plateau rule: find the smallest w_s whose TSR is within `plateau_tolerance`
/// of the curve maximum (the plateau edge), then take one grid step above it,
/// clamped to the grid maximum. A manual override wins outright.
WeightVector select_weight(const SweepResult& result, double plateau_tolerance,
                           std::optional<double> manual_w_s = std::nullopt);

struct ScalingOutcome {
    RewardSpec spec; // length_penalty normalized to -1
    double unrounded_success_reward = 0.0;
    std::vector<std::string> notes;
};

/// Rescale so the weighted turn penalty is exactly -1:
/// success_reward = round(w_s*r_s / (w_l*|r_l|)), half away from zero.
/// Ambiguous roundings (fraction near .5) are flagged in the notes.
ScalingOutcome scale_weights(const WeightVector& w, const RewardSpec& spec);

struct LearningCurvePoint {
    int dialogues = 0; // cumulative training dialogues per seed
    double tsr = 0.0;
    double avg_turns = 0.0;
};

struct SoBaselineResult {
    std::vector<GpSarsa> snapshots; // one per seed
    std::vector<LearningCurvePoint> curve;
};

/// Single-objective policies on an already-scalarized reward spec, trained in
/// batches with a greedy evaluation after each batch.
SoBaselineResult train_so_baseline(const DomainOntology& o,
                                   const RewardSpec& scalarized_spec,
                                   int n_train, int n_batches, int n_eval,
                                   const std::vector<std::uint64_t>& seeds,
                                   const EnvOptions& env, std::uint64_t master_seed,
                                   const GpConfig& gp_cfg,
                                   WeightVector kernel_weights = {1.0, 0.0});

struct ComparisonRow {
    double w_s = 0.0;
    double mo_tsr = 0.0, so_tsr = 0.0, tsr_delta = 0.0;
    double mo_turns = 0.0, so_turns = 0.0, turns_delta = 0.0;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    double mean_abs_tsr_diff = 0.0;
    long mo_training_dialogues = 0; // per seed
    long so_training_dialogues = 0; // per seed, summed over grid points
    std::string to_text() const;
};

ComparisonReport compare_mo_so(const SweepResult& mo, const SweepResult& so);

// --- result file formats ---

std::string sweep_to_csv(const SweepResult& r,
                         const std::vector<std::pair<std::string, std::string>>& echo);
SweepResult sweep_from_csv(const std::string& text);

std::string learning_curve_to_csv(
    const std::vector<LearningCurvePoint>& curve,
    const std::vector<std::pair<std::string, std::string>>& echo);

/// Standalone SVG line chart of the success-weight and length-weight curves.
std::string sweep_to_svg(const SweepResult& r);

} // namespace morlgp

#endif
