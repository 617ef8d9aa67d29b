#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "morlgp/agent.hpp"

using namespace morlgp;

TEST_CASE("weight sampling is seeded and uniform on the simplex") {
    Rng a(123), b(123);
    for (int i = 0; i < 20; ++i) {
        const WeightVector wa = sample_weights(a);
        const WeightVector wb = sample_weights(b);
        CHECK(wa == wb);
        CHECK(wa.success + wa.length == doctest::Approx(1.0).epsilon(1e-15));
    }
    Rng c(9);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += sample_weights(c).success;
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("scalarization is the weighted sum") {
    CHECK(scalarize({40.0, -10.0}, {0.5, 0.5}) == 15.0);
    CHECK(scalarize({40.0, -10.0}, {1.0, 0.0}) == 40.0);
    CHECK(scalarize({40.0, -10.0}, {0.0, 1.0}) == -10.0);
}

TEST_CASE("per-turn reward at the even balance is -1, with +20 on success") {
    const RewardSpec spec; // 40 / -2
    const WeightVector w{0.5, 0.5};
    CHECK(turn_reward(false, false, w, spec) == -1.0);
    CHECK(turn_reward(false, true, w, spec) == -1.0);
    CHECK(turn_reward(true, false, w, spec) == -1.0);
    CHECK(turn_reward(true, true, w, spec) == 19.0); // -1 + 20
}

TEST_CASE("action selection: greedy argmax with lowest-id ties") {
    GpSarsa gp; // empty: all means zero
    Eigen::VectorXd b(2);
    b << 1.0, 0.0;
    Rng rng(4);
    CHECK(select_action(gp, b, {0.5, 0.5}, {2, 0, 1}, SelectMode::Greedy, rng) == 0);
    CHECK_THROWS_AS(select_action(gp, b, {0.5, 0.5}, {}, SelectMode::Greedy, rng),
                    ProtocolError);

    // Teach action 1 a positive value; greedy must pick it.
    const KernelPoint p{b, 1, {0.5, 0.5}};
    gp.observe_episode(std::vector<Transition>{{p, 5.0, true}});
    CHECK(select_action(gp, b, {0.5, 0.5}, {0, 1, 2}, SelectMode::Greedy, rng) == 1);
}

TEST_CASE("explore mode is deterministic under a fixed seed") {
    GpSarsa gp;
    Eigen::VectorXd b(2);
    b << 0.3, 0.7;
    Rng r1(42), r2(42);
    for (int i = 0; i < 20; ++i)
        CHECK(select_action(gp, b, {0.5, 0.5}, {0, 1, 2, 3}, SelectMode::Explore, r1) ==
              select_action(gp, b, {0.5, 0.5}, {0, 1, 2, 3}, SelectMode::Explore, r2));
}

TEST_CASE("episode transitions scalarize turn rewards") {
    DialogueEpisode ep;
    ep.weights = WeightVector::from_success(0.7);
    ep.success = true;
    Eigen::VectorXd b(1);
    b << 1.0;
    for (int t = 0; t < 3; ++t) {
        TurnRecord rec;
        rec.belief = b;
        rec.action_id = t;
        ep.turns.push_back(rec);
    }
    const RewardSpec spec;
    const auto ts = episode_transitions(ep, ep.weights, false, spec);
    REQUIRE(ts.size() == 3);
    CHECK(ts[0].reward == ep.weights.length * -2.0);
    CHECK_FALSE(ts[0].is_terminal);
    CHECK(ts[2].reward == ep.weights.length * -2.0 + ep.weights.success * 40.0);
    CHECK(ts[2].is_terminal);

    // Pre-scalarized: the spec is applied as-is.
    const RewardSpec scaled{30.0, -1.0, 1.0};
    const auto so = episode_transitions(ep, {1.0, 0.0}, true, scaled);
    CHECK(so[0].reward == -1.0);
    CHECK(so[2].reward == 29.0);
    CHECK(so[0].point.weights == WeightVector{1.0, 0.0});
}

TEST_CASE("training with fixed weights reduces exactly to the scalarized learner") {
    // Same seeds, same kernel weights: the multi-objective learner with a
    // fixed weight draw and the learner fed pre-scalarized rewards must
    // produce bit-identical trajectories and models.
    Rng gen(3);
    const DomainOntology o = generate_ontology("reduction", 2, 3, 2, 20, gen);
    const WeightVector w = WeightVector::from_success(0.7);
    const RewardSpec spec;
    const RewardSpec scaled{w.success * spec.success_reward,
                            w.length * spec.length_penalty, spec.discount};

    GpSarsa mo, so;
    TrainOptions opt;
    opt.n_dialogues = 100;
    opt.master_seed = 11;
    opt.policy_seed = 1;
    opt.fixed_weights = w;

    TrainOptions mo_opt = opt;
    const auto mo_log = train(o, mo, spec, mo_opt);

    TrainOptions so_opt = opt;
    so_opt.pre_scalarized = true;
    so_opt.kernel_weights = w;
    const auto so_log = train(o, so, scaled, so_opt);

    REQUIRE(mo_log.size() == so_log.size());
    for (std::size_t i = 0; i < mo_log.size(); ++i) {
        CHECK(mo_log[i].success == so_log[i].success);
        CHECK(mo_log[i].turns == so_log[i].turns);
        CHECK(mo_log[i].scalarized_return == so_log[i].scalarized_return);
        CHECK(mo_log[i].dict_size == so_log[i].dict_size);
    }
    CHECK(mo.dictionary_size() == so.dictionary_size());
    Rng probe(8);
    for (int i = 0; i < 50; ++i) {
        Eigen::VectorXd b(BeliefState::dimension(o));
        for (Eigen::Index j = 0; j < b.size(); ++j) b[j] = probe.uniform();
        const KernelPoint p{b, probe.uniform_int(action_count(o)), w};
        CHECK(mo.predict_mean(p) == so.predict_mean(p)); // bit-identical
    }
}

TEST_CASE("batched training continues the same episode stream") {
    Rng gen(5);
    const DomainOntology o = generate_ontology("batch", 2, 3, 1, 15, gen);
    const RewardSpec spec;

    GpSarsa whole;
    TrainOptions opt;
    opt.n_dialogues = 40;
    opt.master_seed = 21;
    opt.policy_seed = 2;
    const auto full_log = train(o, whole, spec, opt);

    GpSarsa parts;
    TrainOptions first = opt;
    first.n_dialogues = 25;
    train(o, parts, spec, first);
    TrainOptions second = opt;
    second.n_dialogues = 15;
    second.episode_offset = 25;
    const auto tail_log = train(o, parts, spec, second);

    CHECK(tail_log.front().episode == 25);
    CHECK(tail_log.back().episode == 39);
    CHECK(full_log.back().success == tail_log.back().success);
    CHECK(full_log.back().turns == tail_log.back().turns);
    CHECK(whole.dictionary_size() == parts.dictionary_size());
}

TEST_CASE("policy evaluation is deterministic and counts successes") {
    Rng gen(7);
    const DomainOntology o = generate_ontology("eval", 2, 3, 1, 15, gen);
    GpSarsa gp;
    TrainOptions opt;
    opt.n_dialogues = 150;
    opt.master_seed = 33;
    train(o, gp, RewardSpec{}, opt);
    const EvalResult a =
        evaluate_policy(gp, o, {0.8, 0.2}, RewardSpec{}, 100, EnvOptions{}, 33, 1);
    const EvalResult b =
        evaluate_policy(gp, o, {0.8, 0.2}, RewardSpec{}, 100, EnvOptions{}, 33, 1);
    CHECK(a.tsr == b.tsr);
    CHECK(a.avg_turns == b.avg_turns);
    CHECK(a.successes == static_cast<int>(a.tsr * a.n + 0.5));
    CHECK_THROWS_AS(
        evaluate_policy(gp, o, {0.8, 0.2}, RewardSpec{}, 0, EnvOptions{}, 33, 1),
        ValidationError);
}
