#ifndef MORLGP_GP_HPP
#define MORLGP_GP_HPP

#include <Eigen/Dense>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "morlgp/kernels.hpp"

namespace morlgp {

struct GpConfig {
    double noise_stddev = 5.0;
    double sparsify_threshold = 0.01; // nu
    int dictionary_cap = 1000;
    double discount = 1.0;
    KernelConfig kernel;
};

/// One turn of an episode as seen by the value learner.
struct Transition {
    KernelPoint point;
    double reward = 0.0; // already scalarized
    bool is_terminal = false;
};

/// Sparse online GP approximation of the scalarized Q-function.
///
/// The posterior is carried by a dictionary of representer points with a
/// mean-weight vector alpha and covariance-weight matrix C:
///   mean(p) = k(D,p)' alpha,  var(p) = k(p,p) - k(D,p)' C k(D,p).
/// Episodes are absorbed through the online sparsified temporal-difference
/// recursions (per-step residual projection onto the dictionary span); a
/// point joins the dictionary only when its kernel-space residual exceeds
/// the sparsification threshold and the cap has room.
///
/// Single-writer: serialize updates. Prediction on a copy is safe from any
/// number of threads.
class GpSarsa {
public:
    explicit GpSarsa(GpConfig cfg = {});

    /// Posterior mean and variance at p. Empty dictionary gives the
    /// zero-mean prior (0, k(p,p)). Variance is clamped at 0.
    std::pair<double, double> predict(const KernelPoint& p) const;

    double predict_mean(const KernelPoint& p) const;

    /// Squared kernel-space distance of p from the dictionary span.
    double residual(const KernelPoint& p) const;

    /// Absorb one full episode. The last transition must be terminal.
    void observe_episode(std::span<const Transition> episode);

    std::size_t dictionary_size() const { return dict_.size(); }
    const GpConfig& config() const { return cfg_; }
    const std::vector<KernelPoint>& dictionary() const { return dict_; }

    /// Self-describing snapshot (format-versioned JSON text). Doubles are
    /// emitted with shortest round-trip formatting, so restore is bit-exact.
    std::string snapshot() const;
    static GpSarsa restore(const std::string& payload);

    void save(const std::string& path) const;
    static GpSarsa load(const std::string& path);

private:
    struct Projection {
        Eigen::VectorXd k;   // k(D, p)
        Eigen::VectorXd a;   // Kinv * k
        double self = 0.0;   // k(p, p)
        double resid = 0.0;  // self - k'a
    };

    Projection project(const KernelPoint& p) const;
    void add_point(const KernelPoint& p, const Projection& pr);
    const std::vector<Eigen::Index>& action_indices(int action) const;

    GpConfig cfg_;
    std::vector<KernelPoint> dict_;
    Eigen::VectorXd alpha_;
    Eigen::MatrixXd cov_; // C
    Eigen::MatrixXd kinv_;
    mutable std::vector<std::vector<Eigen::Index>> by_action_;
};

} // namespace morlgp

#endif
