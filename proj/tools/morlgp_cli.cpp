// Command-line front end: ontology generation, multi-objective training,
// weight sweeps, balance selection, single-objective baselines, comparison
// reports, and a verbose single-dialogue simulator.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "morlgp/config.hpp"
#include "morlgp/errors.hpp"
#include "morlgp/io.hpp"

namespace fs = std::filesystem;
using namespace morlgp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

fs::path domain_dir(const RunConfig& cfg, const DomainOntology& o) {
    return fs::path(cfg.out_dir) / o.name;
}

std::string snapshot_path(const RunConfig& cfg, const DomainOntology& o,
                          const std::string& stem) {
    return (domain_dir(cfg, o) / "snapshots" / (stem + ".json")).string();
}

/// Snapshot files wrap the model with the resolved config for provenance.
void save_snapshot(const GpSarsa& gp, const RunConfig& cfg, std::uint64_t seed,
                   const std::string& path) {
    nlohmann::json j;
    j["run_config"] = nlohmann::json::parse(cfg.to_json_text());
    j["seed"] = seed;
    j["model"] = nlohmann::json::parse(gp.snapshot());
    atomic_write_file(path, j.dump());
}

GpSarsa load_snapshot(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw SerializationError("snapshot " + path + ": " + e.what());
    }
    if (!j.contains("model")) throw SerializationError("snapshot " + path + ": no model field");
    return GpSarsa::restore(j.at("model").dump());
}

std::vector<GpSarsa> load_mo_snapshots(const RunConfig& cfg, const DomainOntology& o) {
    std::vector<GpSarsa> snaps;
    for (std::uint64_t s : cfg.seeds) {
        const std::string path = snapshot_path(cfg, o, "mo_seed" + std::to_string(s));
        snaps.push_back(load_snapshot(path));
        if (snaps.back().dictionary_size() > 0 &&
            snaps.back().dictionary()[0].belief.size() != BeliefState::dimension(o))
            throw ProtocolError("snapshot " + path + " does not match ontology '" + o.name +
                                "' (belief dimension mismatch)");
    }
    return snaps;
}

std::string train_log_csv(const std::vector<EpisodeLog>& logs, const RunConfig& cfg,
                          std::uint64_t seed) {
    auto echo = cfg.echo();
    echo.emplace_back("policy_seed", std::to_string(seed));
    std::string out = config_echo(echo);
    out += "episode,w_s,success,turns,scalarized_return,dict_size\n";
    for (const auto& l : logs) {
        out += std::to_string(l.episode) + "," + format_double(l.w_s) + "," +
               (l.success ? "1" : "0") + "," + std::to_string(l.turns) + "," +
               format_double(l.scalarized_return) + "," + std::to_string(l.dict_size) + "\n";
    }
    return out;
}

int cmd_gen_ontology(const std::string& name, int n_constraints, int n_values,
                     int n_requests, int n_entities, std::uint64_t seed,
                     const std::string& out_path) {
    Rng rng(derive_seed(seed, {0x6f6e746f}));
    const DomainOntology o =
        generate_ontology(name, n_constraints, n_values, n_requests, n_entities, rng);
    atomic_write_file(out_path, ontology_to_json(o) + "\n");
    const auto st = o.stats();
    std::cout << "wrote " << out_path << " (" << st.n_constraints << " constraints, "
              << st.n_requests << " requests, " << st.n_entities << " entities)\n";
    return kExitOk;
}

int cmd_train_mo(const RunConfig& cfg) {
    const DomainOntology o = load_ontology(cfg.domain_path);
    for (std::uint64_t seed : cfg.seeds) {
        GpSarsa gp(cfg.gp_config());
        TrainOptions opt;
        opt.n_dialogues = cfg.n_train_mo;
        opt.env = cfg.env_options();
        opt.master_seed = cfg.master_seed;
        opt.policy_seed = seed;
        const auto logs = train(o, gp, cfg.reward_spec(), opt);
        save_snapshot(gp, cfg, seed, snapshot_path(cfg, o, "mo_seed" + std::to_string(seed)));
        atomic_write_file(
            (domain_dir(cfg, o) / "snapshots" / ("train_mo_seed" + std::to_string(seed) + ".csv"))
                .string(),
            train_log_csv(logs, cfg, seed));
        std::cout << "seed " << seed << ": trained " << cfg.n_train_mo
                  << " dialogues, dictionary " << gp.dictionary_size() << "\n";
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
    const DomainOntology o = load_ontology(cfg.domain_path);
    const auto snaps = load_mo_snapshots(cfg, o);
    const SweepResult result =
        sweep_evaluate(snaps, o, cfg.grid(), cfg.n_eval, cfg.reward_spec(),
                       cfg.env_options(), cfg.master_seed, cfg.n_train_mo);
    const fs::path dir = domain_dir(cfg, o) / "sweeps";
    atomic_write_file((dir / "mo_sweep.csv").string(), sweep_to_csv(result, cfg.echo()));
    atomic_write_file((dir / "mo_sweep.svg").string(), sweep_to_svg(result));
    std::cout << "wrote " << (dir / "mo_sweep.csv").string() << " (" << result.grid.size()
              << " grid points)\n";
    return kExitOk;
}

int cmd_select(const RunConfig& cfg, const std::string& sweep_file) {
    const DomainOntology o = load_ontology(cfg.domain_path);
    std::string path = sweep_file;
    if (path.empty()) path = (domain_dir(cfg, o) / "sweeps" / "mo_sweep.csv").string();
    const SweepResult sweep = sweep_from_csv(read_file(path));
    const WeightVector w = select_weight(sweep, cfg.plateau_tolerance, cfg.manual_w_s);
    const ScalingOutcome scaled = scale_weights(w, cfg.reward_spec());

    nlohmann::json j;
    j["run_config"] = nlohmann::json::parse(cfg.to_json_text());
    j["selected_w_s"] = w.success;
    j["selected_w_l"] = w.length;
    j["manual_override"] = cfg.manual_w_s.has_value();
    j["scaled_success_reward"] = scaled.spec.success_reward;
    j["scaled_length_penalty"] = scaled.spec.length_penalty;
    j["unrounded_success_reward"] = scaled.unrounded_success_reward;
    j["notes"] = scaled.notes;
    const fs::path out = domain_dir(cfg, o) / "reports" / "selection.json";
    atomic_write_file(out.string(), j.dump(2) + "\n");

    std::cout << "selected w_s=" << format_double(w.success)
              << " scaled success reward=" << format_double(scaled.spec.success_reward)
              << " (turn penalty -1)\n";
    for (const auto& n : scaled.notes) std::cout << n << "\n";
    return kExitOk;
}

RewardSpec pre_scaled_spec(const WeightVector& w, const RewardSpec& base) {
    return {w.success * base.success_reward, w.length * base.length_penalty, base.discount};
}

int cmd_train_so(const RunConfig& cfg, const std::string& mode,
                 const std::string& selection_file) {
    const DomainOntology o = load_ontology(cfg.domain_path);
    const fs::path reports = domain_dir(cfg, o) / "reports";

    if (mode == "grid") {
        // One policy bundle per grid point, trained on pre-scalarized rewards.
        SweepResult so;
        so.domain = o.name;
        so.seeds = cfg.seeds;
        so.training_dialogues_per_seed =
            static_cast<long>(cfg.grid_w_s.size()) * cfg.n_train_so;
        for (std::size_t g = 0; g < cfg.grid_w_s.size(); ++g) {
            const WeightVector w = WeightVector::from_success(cfg.grid_w_s[g]);
            const RewardSpec spec = pre_scaled_spec(w, cfg.reward_spec());
            CurvePoint pt;
            pt.w_s = w.success;
            int successes = 0;
            double turns_sum = 0.0;
            for (std::uint64_t seed : cfg.seeds) {
                GpSarsa gp(cfg.gp_config());
                TrainOptions opt;
                opt.n_dialogues = cfg.n_train_so;
                opt.pre_scalarized = true;
                opt.fixed_weights = WeightVector{1.0, 0.0};
                opt.kernel_weights = WeightVector{1.0, 0.0};
                opt.env = cfg.env_options();
                opt.master_seed = cfg.master_seed;
                opt.policy_seed = derive_seed(seed, {0x736f, g});
                train(o, gp, spec, opt);
                const EvalResult r = evaluate_policy(
                    gp, o, WeightVector{1.0, 0.0}, spec, cfg.n_eval, cfg.env_options(),
                    cfg.master_seed, derive_seed(0x736f6576, {seed, g}));
                pt.seed_tsr.push_back(r.tsr);
                pt.seed_turns.push_back(r.avg_turns);
                successes += r.successes;
                turns_sum += r.avg_turns;
            }
            pt.n_dialogues = cfg.n_eval * static_cast<int>(cfg.seeds.size());
            pt.tsr = static_cast<double>(successes) / static_cast<double>(pt.n_dialogues);
            pt.avg_turns = turns_sum / static_cast<double>(cfg.seeds.size());
            so.grid.push_back(std::move(pt));
            std::cout << "so grid point w_s=" << format_double(pt.w_s)
                      << " tsr=" << format_double(so.grid.back().tsr) << "\n";
        }
        const fs::path dir = domain_dir(cfg, o) / "sweeps";
        atomic_write_file((dir / "so_sweep.csv").string(), sweep_to_csv(so, cfg.echo()));
        atomic_write_file((dir / "so_sweep.svg").string(), sweep_to_svg(so));
        std::cout << "wrote " << (dir / "so_sweep.csv").string() << "\n";
        return kExitOk;
    }

    if (mode != "curve") throw ValidationError("train-so: mode must be 'grid' or 'curve'");

    // Learning-curve baselines: the default balance, plus the optimized one
    // when a selection file is available.
    struct Job {
        std::string label;
        RewardSpec spec;
    };
    std::vector<Job> jobs;
    jobs.push_back({"base", scale_weights(WeightVector{0.5, 0.5}, cfg.reward_spec()).spec});
    std::string sel = selection_file;
    if (sel.empty()) {
        const fs::path p = reports / "selection.json";
        if (fs::exists(p)) sel = p.string();
    }
    if (!sel.empty()) {
        const nlohmann::json j = nlohmann::json::parse(read_file(sel));
        RewardSpec spec;
        spec.success_reward = j.at("scaled_success_reward").get<double>();
        spec.length_penalty = j.at("scaled_length_penalty").get<double>();
        spec.discount = cfg.discount;
        jobs.push_back({"opt", spec});
    }
    for (const auto& job : jobs) {
        const SoBaselineResult res = train_so_baseline(
            o, job.spec, cfg.n_train_so_curve, cfg.so_batches, cfg.n_eval, cfg.seeds,
            cfg.env_options(), derive_seed(cfg.master_seed, {0x6375, std::hash<std::string>{}(job.label)}),
            cfg.gp_config());
        auto echo = cfg.echo();
        echo.emplace_back("spec_label", job.label);
        echo.emplace_back("spec_success_reward", format_double(job.spec.success_reward));
        echo.emplace_back("spec_length_penalty", format_double(job.spec.length_penalty));
        atomic_write_file((reports / ("so_curve_" + job.label + ".csv")).string(),
                          learning_curve_to_csv(res.curve, echo));
        for (std::size_t s = 0; s < cfg.seeds.size(); ++s)
            save_snapshot(res.snapshots[s], cfg, cfg.seeds[s],
                          snapshot_path(cfg, o, "so_" + job.label + "_seed" +
                                                    std::to_string(cfg.seeds[s])));
        std::cout << "wrote " << (reports / ("so_curve_" + job.label + ".csv")).string()
                  << " (final tsr="
                  << format_double(res.curve.empty() ? 0.0 : res.curve.back().tsr) << ")\n";
    }
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::string mo_file, std::string so_file) {
    const DomainOntology o = load_ontology(cfg.domain_path);
    const fs::path sweeps = domain_dir(cfg, o) / "sweeps";
    const fs::path reports = domain_dir(cfg, o) / "reports";
    if (mo_file.empty()) mo_file = (sweeps / "mo_sweep.csv").string();
    if (so_file.empty()) so_file = (sweeps / "so_sweep.csv").string();

    const SweepResult mo = sweep_from_csv(read_file(mo_file));
    const SweepResult so = sweep_from_csv(read_file(so_file));
    const ComparisonReport rep = compare_mo_so(mo, so);

    std::string text = config_echo(cfg.echo());
    text += rep.to_text();

    // Final-results table when both learning-curve baselines exist.
    const fs::path base_curve = reports / "so_curve_base.csv";
    const fs::path opt_curve = reports / "so_curve_opt.csv";
    if (fs::exists(base_curve) && fs::exists(opt_curve)) {
        auto last_point = [](const std::string& path) {
            std::istringstream in(read_file(path));
            std::string line, last;
            while (std::getline(in, line))
                if (!line.empty() && line[0] != '#' && line.find("dialogues") != 0) last = line;
            LearningCurvePoint p;
            std::istringstream ls(last);
            std::string cell;
            std::getline(ls, cell, ',');
            p.dialogues = std::stoi(cell);
            std::getline(ls, cell, ',');
            p.tsr = std::stod(cell);
            std::getline(ls, cell, ',');
            p.avg_turns = std::stod(cell);
            return p;
        };
        const LearningCurvePoint base = last_point(base_curve.string());
        const LearningCurvePoint opt = last_point(opt_curve.string());
        text += "final_results,tsr_base,tsr_opt,turns_base,turns_opt\n";
        text += o.name + "," + format_double(base.tsr) + "," + format_double(opt.tsr) +
                "," + format_double(base.avg_turns) + "," + format_double(opt.avg_turns) +
                "\n";
    }

    atomic_write_file((reports / "mo_vs_so.txt").string(), text);
    std::cout << text;
    std::cout << "wrote " << (reports / "mo_vs_so.txt").string() << "\n";
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const std::string& snapshot_file, double w_s,
                 std::uint64_t episode_seed) {
    const DomainOntology o = load_ontology(cfg.domain_path);
    GpSarsa gp = snapshot_file.empty() ? GpSarsa(cfg.gp_config())
                                       : load_snapshot(snapshot_file);
    const WeightVector w = WeightVector::from_success(w_s);
    Rng rng(derive_seed(cfg.master_seed, {0x73696d, episode_seed}));
    const SelectMode mode = snapshot_file.empty() ? SelectMode::Explore : SelectMode::Greedy;
    ActionSelector select = [&](const Eigen::VectorXd& belief,
                                const std::vector<int>& legal, Rng& r) {
        return select_action(gp, belief, w, legal, mode, r);
    };
    const DialogueEpisode ep =
        run_dialogue(select, o, w, cfg.reward_spec(), cfg.env_options(), rng);
    std::cout << episode_to_json(ep, o) << "\n";
    std::cout << "turns=" << ep.turn_count() << " success=" << (ep.success ? 1 : 0)
              << " cut_off=" << (ep.cut_off ? 1 : 0) << "\n";
    return kExitOk;
}

/// Pre-scan for --config so flags parsed afterwards override file values.
RunConfig base_config(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") return RunConfig::from_file(argv[i + 1]);
    return RunConfig{};
}

} // namespace

int main(int argc, char** argv) {
    try {
        RunConfig cfg = base_config(argc, argv);

        CLI::App app{"Multi-objective GP-SARSA reward balancing toolkit"};
        app.require_subcommand(1);
        std::string config_path;
        app.add_option("--config", config_path, "JSON config file with defaults");

        auto add_common = [&](CLI::App* cmd) {
            cmd->add_option("--domain", cfg.domain_path, "ontology JSON file");
            cmd->add_option("--out-dir", cfg.out_dir, "output directory");
            cmd->add_option("--seeds", cfg.seeds, "policy seeds");
            cmd->add_option("--master-seed", cfg.master_seed, "master RNG seed");
            cmd->add_option("--n-train-mo", cfg.n_train_mo, "MO training dialogues per seed");
            cmd->add_option("--n-train-so", cfg.n_train_so, "SO dialogues per grid point");
            cmd->add_option("--n-train-so-curve", cfg.n_train_so_curve,
                            "SO learning-curve dialogues per seed");
            cmd->add_option("--so-batches", cfg.so_batches, "SO learning-curve batches");
            cmd->add_option("--n-eval", cfg.n_eval, "evaluation dialogues per cell");
            cmd->add_option("--grid", cfg.grid_w_s, "success-weight grid");
            cmd->add_option("--ser", cfg.ser, "semantic error rate");
            cmd->add_option("--max-turns", cfg.max_turns, "dialogue turn cap");
            cmd->add_option("--success-reward", cfg.success_reward, "r_s");
            cmd->add_option("--length-penalty", cfg.length_penalty, "r_l (negative)");
            cmd->add_option("--discount", cfg.discount, "discount factor");
            cmd->add_option("--noise-stddev", cfg.noise_stddev, "GP noise stddev");
            cmd->add_option("--prior-scale", cfg.prior_scale, "kernel prior variance scale");
            cmd->add_option("--sparsify-threshold", cfg.sparsify_threshold,
                            "GP dictionary admission threshold");
            cmd->add_option("--dictionary-cap", cfg.dictionary_cap, "GP dictionary cap");
            cmd->add_option("--plateau-tolerance", cfg.plateau_tolerance,
                            "plateau tolerance (TSR fraction)");
            double manual = -1.0;
            cmd->add_option("--manual-w-s", manual, "manual weight override")
                ->each([&cfg](const std::string& v) { cfg.manual_w_s = std::stod(v); });
        };

        // gen-ontology
        std::string gen_name = "synthetic";
        int gen_constraints = 3, gen_values = 5, gen_requests = 9, gen_entities = 110;
        std::uint64_t gen_seed = 1;
        std::string gen_out = "ontology.json";
        auto* gen = app.add_subcommand("gen-ontology", "generate a synthetic domain");
        gen->add_option("--name", gen_name);
        gen->add_option("--constraints", gen_constraints);
        gen->add_option("--values", gen_values, "values per constraint slot");
        gen->add_option("--requests", gen_requests);
        gen->add_option("--entities", gen_entities);
        gen->add_option("--seed", gen_seed);
        gen->add_option("--out", gen_out);

        auto* train_mo = app.add_subcommand("train-mo", "train multi-objective policies");
        add_common(train_mo);
        auto* sweep = app.add_subcommand("sweep", "evaluate MO policies over the weight grid");
        add_common(sweep);
        std::string sweep_file;
        auto* select = app.add_subcommand("select", "select and rescale a reward balance");
        add_common(select);
        select->add_option("--sweep", sweep_file, "sweep CSV (default: <out>/sweeps/mo_sweep.csv)");
        std::string so_mode = "grid", selection_file;
        auto* train_so = app.add_subcommand("train-so", "train single-objective baselines");
        add_common(train_so);
        train_so->add_option("--mode", so_mode, "'grid' (per weight) or 'curve' (batched)");
        train_so->add_option("--selection", selection_file, "selection.json for 'curve' mode");
        std::string mo_file, so_file;
        auto* compare = app.add_subcommand("compare", "compare MO and SO results");
        add_common(compare);
        compare->add_option("--mo", mo_file, "MO sweep CSV");
        compare->add_option("--so", so_file, "SO sweep CSV");
        std::string sim_snapshot;
        double sim_ws = 0.5;
        std::uint64_t sim_seed = 0;
        auto* simulate = app.add_subcommand("simulate", "run one verbose dialogue");
        add_common(simulate);
        simulate->add_option("--snapshot", sim_snapshot, "model snapshot (optional)");
        simulate->add_option("--w-s", sim_ws, "success weight");
        simulate->add_option("--episode-seed", sim_seed, "episode stream id");

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? kExitOk : kExitUsage;
        }

        if (gen->parsed())
            return cmd_gen_ontology(gen_name, gen_constraints, gen_values, gen_requests,
                                    gen_entities, gen_seed, gen_out);
        cfg.validate();
        if (train_mo->parsed()) return cmd_train_mo(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (select->parsed()) return cmd_select(cfg, sweep_file);
        if (train_so->parsed()) return cmd_train_so(cfg, so_mode, selection_file);
        if (compare->parsed()) return cmd_compare(cfg, mo_file, so_file);
        if (simulate->parsed()) return cmd_simulate(cfg, sim_snapshot, sim_ws, sim_seed);
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
