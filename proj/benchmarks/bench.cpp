#include <benchmark/benchmark.h>

#include "morlgp/agent.hpp"

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

GpSarsa trained_model(int n_episodes) {
    GpConfig cfg;
    cfg.noise_stddev = 6.0;
    cfg.sparsify_threshold = 1e-6;
    GpSarsa gp(cfg);
    Rng rng(1);
    for (int i = 0; i < n_episodes; ++i) {
        std::vector<Transition> ep;
        const int len = 2 + rng.uniform_int(6);
        for (int t = 0; t < len; ++t)
            ep.push_back({random_point(rng, 30, 10), rng.uniform(-2.0, 2.0),
                          t + 1 == len});
        gp.observe_episode(ep);
    }
    return gp;
}

void bm_gram_matrix(benchmark::State& state) {
    Rng rng(2);
    std::vector<KernelPoint> pts;
    for (int i = 0; i < state.range(0); ++i) pts.push_back(random_point(rng, 30, 10));
    for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(pts));
}
BENCHMARK(bm_gram_matrix)->Arg(32)->Arg(128);

void bm_gp_predict(benchmark::State& state) {
    const GpSarsa gp = trained_model(static_cast<int>(state.range(0)));
    Rng rng(3);
    const KernelPoint q = random_point(rng, 30, 10);
    for (auto _ : state) benchmark::DoNotOptimize(gp.predict(q));
    state.SetLabel("dict=" + std::to_string(gp.dictionary_size()));
}
BENCHMARK(bm_gp_predict)->Arg(50)->Arg(200);

void bm_gp_observe_episode(benchmark::State& state) {
    Rng rng(4);
    for (auto _ : state) {
        state.PauseTiming();
        GpSarsa gp = trained_model(static_cast<int>(state.range(0)));
        std::vector<Transition> ep;
        for (int t = 0; t < 8; ++t)
            ep.push_back({random_point(rng, 30, 10), rng.uniform(-2.0, 2.0), t == 7});
        state.ResumeTiming();
        gp.observe_episode(ep);
    }
}
BENCHMARK(bm_gp_observe_episode)->Arg(50)->Arg(200);

void bm_run_dialogue(benchmark::State& state) {
    Rng gen(5);
    const DomainOntology o = generate_ontology("bench", 3, 5, 1, 50, gen);
    GpConfig cfg;
    cfg.noise_stddev = 6.0;
    GpSarsa gp(cfg);
    TrainOptions opt;
    opt.n_dialogues = 100;
    opt.master_seed = 7;
    train(o, gp, RewardSpec{}, opt);
    const WeightVector w{0.5, 0.5};
    Rng rng(6);
    ActionSelector select = [&](const Eigen::VectorXd& belief,
                                const std::vector<int>& legal, Rng& r) {
        return select_action(gp, belief, w, legal, SelectMode::Explore, r);
    };
    for (auto _ : state)
        benchmark::DoNotOptimize(
            run_dialogue(select, o, w, RewardSpec{}, EnvOptions{}, rng));
}
BENCHMARK(bm_run_dialogue);

} // namespace

BENCHMARK_MAIN();
