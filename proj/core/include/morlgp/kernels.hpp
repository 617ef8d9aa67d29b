#ifndef MORLGP_KERNELS_HPP
#define MORLGP_KERNELS_HPP

#include <Eigen/Dense>
#include <vector>

#include "morlgp/types.hpp"

namespace morlgp {

/// A point in the value function's domain: belief vector, discrete system
/// action, objective weights.
struct KernelPoint {
    Eigen::VectorXd belief;
    int action = 0;
    WeightVector weights;
};

struct KernelConfig {
    /// Global multiplier on the composite kernel. Plain inner products
    /// otherwise; no per-kernel scale hyperparameters.
    double prior_scale = 1.0;
};

/// 1 if the actions match, 0 otherwise.
double delta_kernel(int a, int a_prime);

/// Inner product of two equal-length vectors.
double linear_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime);

double weight_inner(const WeightVector& w, const WeightVector& w_prime);

/// Composite kernel: delta(a,a') * (k_lin(b,b') + k_lin(w,w')), times the
/// configured prior scale.
double mo_kernel(const KernelPoint& p, const KernelPoint& p_prime,
                 const KernelConfig& cfg = {});

Eigen::MatrixXd gram_matrix(const std::vector<KernelPoint>& points,
                            const KernelConfig& cfg = {});

} // namespace morlgp

#endif
