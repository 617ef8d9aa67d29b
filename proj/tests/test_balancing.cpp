#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "morlgp/balancing.hpp"

using namespace morlgp;

namespace {

SweepResult make_sweep(const std::vector<double>& tsr) {
    SweepResult r;
    r.domain = "made";
    r.seeds = {1, 2};
    r.training_dialogues_per_seed = 3000;
    double w = 0.1;
    for (double t : tsr) {
        CurvePoint p;
        p.w_s = w;
        p.tsr = t;
        p.avg_turns = 3.0 + t;
        p.n_dialogues = 600;
        p.seed_tsr = {t, t};
        p.seed_turns = {3.0 + t, 3.0 + t};
        r.grid.push_back(p);
        w += 0.1;
    }
    return r;
}

} // namespace

TEST_CASE("weight selection picks one step above the plateau edge") {
    // Hand-traced: max 0.86, tolerance 0.02 -> edge at w_s = 0.5, pick 0.6.
    const SweepResult r =
        make_sweep({0.50, 0.60, 0.70, 0.80, 0.85, 0.86, 0.86, 0.86, 0.86});
    CHECK(select_weight(r, 0.02).success == doctest::Approx(0.6));
}

TEST_CASE("weight selection on a flat curve stays low") {
    const SweepResult r = make_sweep({0.8, 0.8, 0.8, 0.8, 0.8});
    CHECK(select_weight(r, 0.02).success == doctest::Approx(0.2));
}

TEST_CASE("weight selection clamps at the top of the grid") {
    const SweepResult r = make_sweep({0.1, 0.2, 0.3, 0.4, 0.9});
    CHECK(select_weight(r, 0.02).success == doctest::Approx(0.5));
}

TEST_CASE("manual override wins over the plateau rule") {
    const SweepResult r = make_sweep({0.5, 0.6, 0.7});
    CHECK(select_weight(r, 0.02, 0.8).success == doctest::Approx(0.8));
}

TEST_CASE("weight selection needs a curve") {
    const SweepResult r = make_sweep({0.5, 0.6});
    CHECK_THROWS_AS(select_weight(r, 0.02), ProtocolError);
}

TEST_CASE("weight rescaling normalizes the turn penalty to -1") {
    const RewardSpec base; // 40 / -2
    // Oracle: round(w_s * 40 / ((1 - w_s) * 2)) half away from zero.
    CHECK(scale_weights({0.5, 0.5}, base).spec.success_reward == 20.0);
    CHECK(scale_weights({0.6, 0.4}, base).spec.success_reward == 30.0);
    CHECK(scale_weights({0.7, 0.3}, base).spec.success_reward == 47.0);
    CHECK(scale_weights({0.5, 0.5}, base).spec.length_penalty == -1.0);
    CHECK(scale_weights({0.5, 0.5}, base).notes.empty());

    const ScalingOutcome amb = scale_weights({0.4, 0.6}, base);
    CHECK(amb.spec.success_reward == 13.0);
    CHECK(amb.unrounded_success_reward == doctest::Approx(13.3333).epsilon(1e-3));
    CHECK_FALSE(amb.notes.empty()); // rounding ambiguity is flagged

    CHECK_THROWS_AS(scale_weights({1.0, 0.0}, base), ValidationError);
}

TEST_CASE("comparison report: deltas, mean diff, budget ledger") {
    const SweepResult mo = make_sweep({0.1, 0.5, 0.9});
    SweepResult so = make_sweep({0.2, 0.5, 0.8});
    so.training_dialogues_per_seed = 9000;
    const ComparisonReport rep = compare_mo_so(mo, so);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].tsr_delta == doctest::Approx(0.1));
    CHECK(rep.rows[2].tsr_delta == doctest::Approx(-0.1));
    CHECK(rep.mean_abs_tsr_diff == doctest::Approx(0.2 / 3.0));
    CHECK(rep.mo_training_dialogues == 3000);
    CHECK(rep.so_training_dialogues == 9000);
    const std::string text = rep.to_text();
    CHECK(text.find("multi-objective=3000") != std::string::npos);
    CHECK(text.find("single-objective=9000") != std::string::npos);

    const SweepResult short_grid = make_sweep({0.1});
    CHECK_THROWS_AS(compare_mo_so(mo, short_grid), ProtocolError);
}

TEST_CASE("sweep CSV round-trip preserves the curve") {
    const SweepResult r = make_sweep({0.25, 0.5, 0.75});
    const std::string csv = sweep_to_csv(r, {{"ser", "0.15"}});
    CHECK(csv.find("# ser=0.15") != std::string::npos);
    CHECK(csv.find("# domain=made") != std::string::npos);
    const SweepResult back = sweep_from_csv(csv);
    CHECK(back.domain == r.domain);
    CHECK(back.training_dialogues_per_seed == r.training_dialogues_per_seed);
    REQUIRE(back.grid.size() == r.grid.size());
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        CHECK(back.grid[i].w_s == r.grid[i].w_s); // shortest round-trip doubles
        CHECK(back.grid[i].tsr == r.grid[i].tsr);
        CHECK(back.grid[i].avg_turns == r.grid[i].avg_turns);
        CHECK(back.grid[i].n_dialogues == r.grid[i].n_dialogues);
        CHECK(back.grid[i].seed_tsr == r.grid[i].seed_tsr);
    }
}

TEST_CASE("sweep SVG contains both curves") {
    const std::string svg = sweep_to_svg(make_sweep({0.2, 0.4, 0.6}));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("learning curve CSV carries the echo and the points") {
    const std::vector<LearningCurvePoint> curve = {{100, 0.25, 6.0}, {200, 0.5, 5.0}};
    const std::string csv = learning_curve_to_csv(curve, {{"spec_label", "base"}});
    CHECK(csv.find("# spec_label=base") != std::string::npos);
    CHECK(csv.find("dialogues,tsr,avg_turns") != std::string::npos);
    CHECK(csv.find("200,0.5,5") != std::string::npos);
}

TEST_CASE("default grid spans 0.1 to 0.9") {
    const auto g = default_weight_grid();
    REQUIRE(g.size() == 9);
    CHECK(g.front().success == doctest::Approx(0.1));
    CHECK(g.back().success == doctest::Approx(0.9));
}

TEST_CASE("single-objective baseline trains in batches with evaluations") {
    Rng gen(2);
    const DomainOntology o = generate_ontology("so", 2, 3, 1, 15, gen);
    GpConfig gp_cfg;
    gp_cfg.noise_stddev = 6.0;
    const RewardSpec scaled{20.0, -1.0, 1.0};
    const SoBaselineResult res =
        train_so_baseline(o, scaled, 60, 3, 20, {1, 2}, EnvOptions{}, 5, gp_cfg);
    REQUIRE(res.curve.size() == 3);
    CHECK(res.curve[0].dialogues == 20);
    CHECK(res.curve[2].dialogues == 60);
    CHECK(res.snapshots.size() == 2);
    for (const auto& pt : res.curve) {
        CHECK(pt.tsr >= 0.0);
        CHECK(pt.tsr <= 1.0);
    }
}

TEST_CASE("sweep evaluation pools seeds per grid point") {
    Rng gen(4);
    const DomainOntology o = generate_ontology("sweep", 2, 3, 1, 15, gen);
    GpConfig gp_cfg;
    gp_cfg.noise_stddev = 6.0;
    std::vector<GpSarsa> snaps;
    for (std::uint64_t seed : {1ull, 2ull}) {
        GpSarsa gp(gp_cfg);
        TrainOptions opt;
        opt.n_dialogues = 100;
        opt.master_seed = 13;
        opt.policy_seed = seed;
        train(o, gp, RewardSpec{}, opt);
        snaps.push_back(std::move(gp));
    }
    const std::vector<WeightVector> grid = {WeightVector::from_success(0.2),
                                            WeightVector::from_success(0.8)};
    const SweepResult r =
        sweep_evaluate(snaps, o, grid, 25, RewardSpec{}, EnvOptions{}, 13, 100);
    REQUIRE(r.grid.size() == 2);
    CHECK(r.grid[0].w_s < r.grid[1].w_s);
    for (const auto& p : r.grid) {
        CHECK(p.n_dialogues == 50);
        REQUIRE(p.seed_tsr.size() == 2);
        // Pooled TSR is the success-weighted mean of the per-seed rates.
        CHECK(p.tsr ==
              doctest::Approx((p.seed_tsr[0] + p.seed_tsr[1]) / 2.0).epsilon(1e-12));
    }
}
