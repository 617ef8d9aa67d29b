#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "morlgp/env.hpp"

using namespace morlgp;

namespace {

DomainOntology tiny_domain() {
    DomainOntology o;
    o.name = "tiny";
    o.slots = {{"food", {"thai", "greek"}}, {"area", {"north", "south"}}};
    o.requestables = {"phone", "addr"};
    auto ent = [&](std::string f, std::string a, std::string p, std::string ad) {
        Entity e;
        e.constraints = {{"food", std::move(f)}, {"area", std::move(a)}};
        e.requestables = {{"phone", std::move(p)}, {"addr", std::move(ad)}};
        return e;
    };
    o.entities = {ent("thai", "north", "p0", "a0"), ent("thai", "south", "p1", "a1"),
                  ent("greek", "north", "p2", "a2")};
    o.validate();
    return o;
}

int random_selector(const Eigen::VectorXd&, const std::vector<int>& legal, Rng& rng) {
    return legal[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(legal.size())))];
}

/// Brute-force success checker, structured independently of evaluate_success:
/// for every database entity, scan the transcript directly.
bool success_oracle(const DialogueEpisode& ep, const DomainOntology& o) {
    if (ep.cut_off) return false;
    for (int e = 0; e < static_cast<int>(o.entities.size()); ++e) {
        if (!entity_satisfies(o, ep.goal, e)) continue;
        bool was_offered = false;
        std::set<int> answered_while_standing;
        int standing = -1;
        for (const auto& t : ep.turns) {
            if (t.sys.act.kind == SysActKind::InformOffer && t.sys.offered_entity >= 0)
                standing = t.sys.offered_entity;
            if (standing == e) {
                was_offered = true;
                if (t.sys.act.kind == SysActKind::InformRequested &&
                    t.sys.answered_item >= 0)
                    answered_while_standing.insert(t.sys.answered_item);
            }
        }
        if (!was_offered) continue;
        bool all = true;
        for (int r : ep.goal.requests)
            all = all && answered_while_standing.count(r) > 0;
        if (all) return true;
    }
    return false;
}

} // namespace

TEST_CASE("action id space covers request/confirm per slot plus four globals") {
    const DomainOntology o = tiny_domain();
    CHECK(action_count(o) == 8);
    for (int id = 0; id < action_count(o); ++id)
        CHECK(action_id(action_from_id(id, o), o) == id);
    CHECK(action_from_id(0, o).kind == SysActKind::Request);
    CHECK(action_from_id(2, o).kind == SysActKind::Confirm);
    CHECK(action_from_id(4, o).kind == SysActKind::InformOffer);
    CHECK(action_from_id(7, o).kind == SysActKind::Bye);
    CHECK_THROWS_AS(action_from_id(8, o), ValidationError);
}

TEST_CASE("belief starts on none and follows the focus update") {
    const DomainOntology o = tiny_domain();
    BeliefState b(o);
    CHECK(b.top_value(0) == b.none_index(0));
    CHECK(b.slot_dist(0)[static_cast<Eigen::Index>(b.none_index(0))] == 1.0);

    b.observe({UserActKind::Inform, 0, 0, -1}, 0.8); // food=thai at 0.8
    // Hand-computed focus update: new(v) = 0.2*old(v) + 0.8*[v==thai].
    CHECK(b.slot_dist(0)[0] == doctest::Approx(0.8));
    CHECK(b.slot_dist(0)[static_cast<Eigen::Index>(b.none_index(0))] ==
          doctest::Approx(0.2));
    CHECK(b.top_value(0) == 0);
    // Other slot untouched.
    CHECK(b.top_value(1) == b.none_index(1));

    b.observe({UserActKind::Inform, 0, 1, -1}, 0.5); // contradicting evidence
    CHECK(b.slot_dist(0)[0] == doctest::Approx(0.4));
    CHECK(b.slot_dist(0)[1] == doctest::Approx(0.5));
    CHECK(b.top_value(0) == 1);
}

TEST_CASE("belief vector layout and dimension") {
    const DomainOntology o = tiny_domain();
    BeliefState b(o);
    const Eigen::VectorXd v = b.vector();
    CHECK(v.size() == BeliefState::dimension(o));
    // Two slots of (2 values + dontcare + none), two top-probs, two request
    // counters, one offer flag.
    CHECK(BeliefState::dimension(o) == 8 + 2 + 2 + 1);
    b.note_offer();
    CHECK(b.vector()[BeliefState::dimension(o) - 1] == 1.0);
}

TEST_CASE("user reacts to each system act as scripted") {
    const DomainOntology o = tiny_domain();
    Rng rng(5);
    UserGoal goal;
    goal.constraints = {{0, 0}}; // food=thai, area unconstrained
    goal.requests = {1};         // addr
    AgendaState st = init_agenda(goal);

    SUBCASE("request of a constrained slot yields the goal value") {
        const UserAct a = user_step(goal, st, {{SysActKind::Request, 0}}, o, rng);
        CHECK(a == UserAct{UserActKind::Inform, 0, 0, -1});
    }
    SUBCASE("request of an unconstrained slot yields dontcare") {
        const UserAct a = user_step(goal, st, {{SysActKind::Request, 1}}, o, rng);
        CHECK(a.kind == UserActKind::Inform);
        CHECK(a.value == 2); // one past the real values
    }
    SUBCASE("confirm is affirmed when right, negated when wrong") {
        SystemTurn t{{SysActKind::Confirm, 0}};
        t.confirm_value = 0;
        CHECK(user_step(goal, st, t, o, rng).kind == UserActKind::Affirm);
        t.confirm_value = 1;
        CHECK(user_step(goal, st, t, o, rng).kind == UserActKind::Negate);
    }
    SUBCASE("matching offer triggers the pending request, then bye") {
        SystemTurn offer{{SysActKind::InformOffer, -1}};
        offer.offered_entity = 1; // thai/south satisfies food=thai
        const UserAct a = user_step(goal, st, offer, o, rng);
        CHECK(a == UserAct{UserActKind::Request, -1, -1, 1});
        SystemTurn answer{{SysActKind::InformRequested, -1}};
        answer.answered_item = 1;
        CHECK(user_step(goal, st, answer, o, rng).kind == UserActKind::Bye);
    }
    SUBCASE("non-matching offer restates a violated constraint") {
        SystemTurn offer{{SysActKind::InformOffer, -1}};
        offer.offered_entity = 2; // greek violates food=thai
        const UserAct a = user_step(goal, st, offer, o, rng);
        CHECK(a == UserAct{UserActKind::Inform, 0, 0, -1});
    }
    SUBCASE("switching the offer resets answered progress") {
        SystemTurn offer{{SysActKind::InformOffer, -1}};
        offer.offered_entity = 0;
        user_step(goal, st, offer, o, rng); // accept entity 0, request addr
        SystemTurn answer{{SysActKind::InformRequested, -1}};
        answer.answered_item = 1;
        user_step(goal, st, answer, o, rng); // satisfied for entity 0
        offer.offered_entity = 1;            // also matches: a new venue
        const UserAct again = user_step(goal, st, offer, o, rng);
        CHECK(again == UserAct{UserActKind::Request, -1, -1, 1});
    }
    SUBCASE("repeat replays the last user act") {
        user_step(goal, st, {{SysActKind::Request, 0}}, o, rng);
        const UserAct a = user_step(goal, st, {{SysActKind::Repeat, -1}}, o, rng);
        CHECK(a == UserAct{UserActKind::Inform, 0, 0, -1});
    }
    SUBCASE("system bye is met with silence") {
        CHECK(user_step(goal, st, {{SysActKind::Bye, -1}}, o, rng).kind ==
              UserActKind::Silent);
    }
}

TEST_CASE("noisy channel: rate, bands, and immunity") {
    const DomainOntology o = tiny_domain();
    Rng rng(77);
    const UserAct inform{UserActKind::Inform, 0, 0, -1};
    int corrupted = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const ObservedAct obs = corrupt_act(inform, 0.15, o, rng);
        if (obs.corrupted) {
            ++corrupted;
            CHECK(obs.act.value != inform.value);
            CHECK(obs.confidence >= 0.3);
            CHECK(obs.confidence < 0.9);
        } else {
            CHECK(obs.act == inform);
            CHECK(obs.confidence >= 0.7);
            CHECK(obs.confidence <= 1.0);
        }
    }
    CHECK(corrupted / static_cast<double>(n) == doctest::Approx(0.15).epsilon(0.1));

    const ObservedAct bye = corrupt_act({UserActKind::Bye, -1, -1, -1}, 1.0, o, rng);
    CHECK(bye.corrupted == false);
    CHECK(bye.confidence == 1.0);
    CHECK_THROWS_AS(corrupt_act(inform, 1.5, o, rng), ValidationError);
}

TEST_CASE("database lookup agrees with a linear scan") {
    Rng rng(13);
    const DomainOntology o = generate_ontology("scan", 3, 4, 2, 40, rng);
    for (int trial = 0; trial < 200; ++trial) {
        std::map<std::string, std::string> q;
        for (const auto& s : o.slots)
            if (rng.uniform() < 0.6)
                q[s.name] = s.values[static_cast<std::size_t>(
                    rng.uniform_int(static_cast<int>(s.values.size())))];
        const auto got = db_lookup(o, q);
        std::vector<int> expect;
        for (int e = 0; e < static_cast<int>(o.entities.size()); ++e) {
            bool ok = true;
            for (const auto& [slot, value] : q)
                ok = ok && o.entities[static_cast<std::size_t>(e)].constraints.at(slot) ==
                               value;
            if (ok) expect.push_back(e);
        }
        CHECK(got == expect);
    }
    CHECK_THROWS_AS(db_lookup(o, {{"no_such_slot", "x"}}), ValidationError);
}

TEST_CASE("sampled goals are always satisfiable") {
    Rng rng(21);
    const DomainOntology o = generate_ontology("sat", 3, 5, 3, 30, rng);
    for (int i = 0; i < 2000; ++i) {
        const UserGoal g = sample_goal(o, rng);
        CHECK(!g.constraints.empty());
        CHECK(!g.requests.empty());
        bool any = false;
        for (int e = 0; e < static_cast<int>(o.entities.size()); ++e)
            any = any || entity_satisfies(o, g, e);
        CHECK(any);
    }
}

TEST_CASE("success flag matches the brute-force transcript oracle") {
    Rng master(1);
    const DomainOntology o = generate_ontology("env", 2, 3, 2, 20, master);
    RewardSpec spec;
    EnvOptions env;
    int successes = 0;
    for (int i = 0; i < 2000; ++i) {
        Rng rng(derive_seed(55, {static_cast<std::uint64_t>(i)}));
        const DialogueEpisode ep =
            run_dialogue(random_selector, o, {0.5, 0.5}, spec, env, rng);
        CHECK(ep.success == success_oracle(ep, o));
        successes += ep.success;
    }
    CHECK(successes > 0); // the oracle comparison must exercise both branches
}

TEST_CASE("rewards put the penalty on every turn, the bonus on the last") {
    Rng rng(91);
    const DomainOntology o = generate_ontology("rew", 2, 3, 1, 20, rng);
    RewardSpec spec;
    for (int i = 0; i < 50; ++i) {
        Rng ep_rng(derive_seed(7, {static_cast<std::uint64_t>(i)}));
        const DialogueEpisode ep =
            run_dialogue(random_selector, o, {0.5, 0.5}, spec, EnvOptions{}, ep_rng);
        for (int t = 0; t < ep.turn_count(); ++t) {
            CHECK(ep.turns[static_cast<std::size_t>(t)].reward.length_component ==
                  spec.length_penalty);
            const double bonus =
                ep.turns[static_cast<std::size_t>(t)].reward.success_component;
            if (t + 1 == ep.turn_count() && ep.success)
                CHECK(bonus == spec.success_reward);
            else
                CHECK(bonus == 0.0);
        }
    }
}

TEST_CASE("turn cap forces failure") {
    const DomainOntology o = tiny_domain();
    // A policy that never ends the dialogue.
    auto stubborn = [&](const Eigen::VectorXd&, const std::vector<int>&, Rng&) {
        return 0; // request food forever
    };
    Rng rng(2);
    EnvOptions env;
    env.max_turns = 5;
    const DialogueEpisode ep =
        run_dialogue(stubborn, o, {0.5, 0.5}, RewardSpec{}, env, rng);
    CHECK(ep.cut_off);
    CHECK_FALSE(ep.success);
    CHECK(ep.turn_count() == 5);
}

TEST_CASE("ontology JSON round-trip and validation") {
    const DomainOntology o = tiny_domain();
    const DomainOntology back = parse_ontology(ontology_to_json(o));
    CHECK(back.stats() == o.stats());
    CHECK(back.slots[0].values == o.slots[0].values);
    CHECK(back.entities[2].constraints.at("food") == "greek");

    DomainOntology bad = o;
    bad.slots[0].values.push_back("dontcare");
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    DomainOntology missing = o;
    missing.entities[0].constraints.erase("area");
    CHECK_THROWS_AS(missing.validate(), ValidationError);
    CHECK_THROWS_AS(parse_ontology("{"), ValidationError);
}
