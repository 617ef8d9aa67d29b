#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "morlgp/kernels.hpp"
#include "morlgp/rng.hpp"

using namespace morlgp;

namespace {

KernelPoint random_point(Rng& rng, int dim, int n_actions) {
    KernelPoint p;
    p.belief = Eigen::VectorXd(dim);
    for (int i = 0; i < dim; ++i) p.belief[i] = rng.uniform(-1.0, 1.0);
    p.action = rng.uniform_int(n_actions);
    p.weights = WeightVector::from_success(rng.uniform());
    return p;
}

} // namespace

TEST_CASE("delta kernel is an indicator") {
    CHECK(delta_kernel(3, 3) == 1.0);
    CHECK(delta_kernel(3, 4) == 0.0);
    CHECK(delta_kernel(-1, -1) == 1.0);
}

TEST_CASE("linear kernel matches a hand-rolled dot product") {
    Eigen::VectorXd a(3), b(3);
    a << 1.0, -2.0, 0.5;
    b << 4.0, 0.25, -2.0;
    CHECK(linear_kernel(a, b) == doctest::Approx(4.0 - 0.5 - 1.0));
    CHECK_THROWS_AS(linear_kernel(a, Eigen::VectorXd(2)), ValidationError);
}

TEST_CASE("composite kernel: structure and symmetry") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const KernelPoint p = random_point(rng, 6, 4);
        const KernelPoint q = random_point(rng, 6, 4);
        // Exact symmetry: both sides evaluate the same products.
        CHECK(mo_kernel(p, q) == mo_kernel(q, p));
        if (p.action != q.action) {
            CHECK(mo_kernel(p, q) == 0.0);
        } else {
            const double expect = p.belief.dot(q.belief) +
                                  p.weights.success * q.weights.success +
                                  p.weights.length * q.weights.length;
            CHECK(mo_kernel(p, q) == doctest::Approx(expect));
        }
    }
}

TEST_CASE("prior scale multiplies the kernel") {
    Rng rng(5);
    const KernelPoint p = random_point(rng, 4, 2);
    KernelPoint q = random_point(rng, 4, 2);
    q.action = p.action;
    KernelConfig scaled;
    scaled.prior_scale = 3.5;
    CHECK(mo_kernel(p, q, scaled) == doctest::Approx(3.5 * mo_kernel(p, q)));
}

TEST_CASE("gram matrices are symmetric and positive semidefinite") {
    // Independent oracle: eigen-decomposition of randomly sampled point sets.
    Rng rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + rng.uniform_int(19);
        std::vector<KernelPoint> pts;
        for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, 5, 3));
        const Eigen::MatrixXd K = gram_matrix(pts);
        CHECK((K - K.transpose()).cwiseAbs().maxCoeff() == 0.0);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
        CHECK(es.eigenvalues().minCoeff() >= -1e-8);
    }
}

TEST_CASE("gram matrix of an empty set is rejected") {
    CHECK_THROWS_AS(gram_matrix({}), ValidationError);
}
