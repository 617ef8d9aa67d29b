#include "morlgp/kernels.hpp"

#include <string>

namespace morlgp {

double delta_kernel(int a, int a_prime) {
    return a == a_prime ? 1.0 : 0.0;
}

double linear_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime) {
    if (x.size() != x_prime.size())
        throw ValidationError("linear_kernel: dimension mismatch (" +
                              std::to_string(x.size()) + " vs " +
                              std::to_string(x_prime.size()) + ")");
    return x.dot(x_prime);
}

double weight_inner(const WeightVector& w, const WeightVector& w_prime) {
    return w.success * w_prime.success + w.length * w_prime.length;
}

double mo_kernel(const KernelPoint& p, const KernelPoint& p_prime,
                 const KernelConfig& cfg) {
    if (p.action != p_prime.action) return 0.0;
    return cfg.prior_scale *
           (linear_kernel(p.belief, p_prime.belief) + weight_inner(p.weights, p_prime.weights));
}

Eigen::MatrixXd gram_matrix(const std::vector<KernelPoint>& points,
                            const KernelConfig& cfg) {
    if (points.empty())
        throw ValidationError("gram_matrix: empty point list");
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = mo_kernel(points[i], points[j], cfg);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

} // namespace morlgp
