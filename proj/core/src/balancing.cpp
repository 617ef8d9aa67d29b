#include "morlgp/balancing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "morlgp/errors.hpp"
#include "morlgp/io.hpp"

namespace morlgp {

namespace {
constexpr std::uint64_t kSweepTag = 0x73776570;
constexpr std::uint64_t kCurveTag = 0x63757276;
} // namespace

std::vector<WeightVector> default_weight_grid() {
    std::vector<WeightVector> grid;
    for (int i = 1; i <= 9; ++i)
        grid.push_back(WeightVector::from_success(static_cast<double>(i) / 10.0));
    return grid;
}

SweepResult sweep_evaluate(const std::vector<GpSarsa>& snapshots,
                           const DomainOntology& o,
                           const std::vector<WeightVector>& grid, int n_eval,
                           const RewardSpec& spec, const EnvOptions& env,
                           std::uint64_t master_seed,
                           long training_dialogues_per_seed) {
    if (snapshots.empty()) throw ProtocolError("sweep_evaluate: no snapshots");
    if (grid.empty()) throw ValidationError("sweep_evaluate: empty grid");

    std::vector<WeightVector> sorted = grid;
    std::sort(sorted.begin(), sorted.end(),
              [](const WeightVector& a, const WeightVector& b) { return a.success < b.success; });

    SweepResult result;
    result.domain = o.name;
    result.training_dialogues_per_seed = training_dialogues_per_seed;
    for (std::size_t s = 0; s < snapshots.size(); ++s)
        result.seeds.push_back(static_cast<std::uint64_t>(s));

    for (std::size_t g = 0; g < sorted.size(); ++g) {
        CurvePoint pt;
        pt.w_s = sorted[g].success;
        int successes = 0;
        double turns_sum = 0.0;
        for (std::size_t s = 0; s < snapshots.size(); ++s) {
            const std::uint64_t tag = derive_seed(kSweepTag, {s, g});
            const EvalResult r = evaluate_policy(snapshots[s], o, sorted[g], spec, n_eval,
                                                 env, master_seed, tag);
            pt.seed_tsr.push_back(r.tsr);
            pt.seed_turns.push_back(r.avg_turns);
            successes += r.successes;
            turns_sum += r.avg_turns;
        }
        pt.n_dialogues = n_eval * static_cast<int>(snapshots.size());
        pt.tsr = static_cast<double>(successes) / static_cast<double>(pt.n_dialogues);
        pt.avg_turns = turns_sum / static_cast<double>(snapshots.size());
        result.grid.push_back(std::move(pt));
    }
    return result;
}

WeightVector select_weight(const SweepResult& result, double plateau_tolerance,
                           std::optional<double> manual_w_s) {
    if (manual_w_s) return WeightVector::from_success(*manual_w_s);
    if (result.grid.size() < 3)
        throw ProtocolError("select_weight: need at least 3 grid points");
    double tsr_max = result.grid.front().tsr;
    for (const auto& p : result.grid) tsr_max = std::max(tsr_max, p.tsr);
    std::size_t edge = result.grid.size() - 1;
    for (std::size_t i = 0; i < result.grid.size(); ++i) {
        if (result.grid[i].tsr >= tsr_max - plateau_tolerance) {
            edge = i;
            break;
        }
    }
    const std::size_t pick = std::min(edge + 1, result.grid.size() - 1);
    return WeightVector::from_success(result.grid[pick].w_s);
}

ScalingOutcome scale_weights(const WeightVector& w, const RewardSpec& spec) {
    if (!(w.length > 0.0))
        throw ValidationError("scale_weights: length weight must be positive");
    spec.validate();
    ScalingOutcome out;
    out.unrounded_success_reward =
        w.success * spec.success_reward / (w.length * std::abs(spec.length_penalty));
    const double rounded = std::round(out.unrounded_success_reward); // half away from zero
    out.spec.success_reward = rounded;
    out.spec.length_penalty = -1.0;
    out.spec.discount = spec.discount;
    const double frac = std::abs(out.unrounded_success_reward - rounded);
    if (frac >= 0.25) {
        out.notes.push_back("rounding note: scaled success reward " +
                            format_double(out.unrounded_success_reward) +
                            " is far from an integer; rounded half away from zero to " +
                            format_double(rounded) +
                            ". Integer tables quoting a neighbouring value disagree with "
                            "the scaling rule.");
    }
    return out;
}

SoBaselineResult train_so_baseline(const DomainOntology& o,
                                   const RewardSpec& scalarized_spec,
                                   int n_train, int n_batches, int n_eval,
                                   const std::vector<std::uint64_t>& seeds,
                                   const EnvOptions& env, std::uint64_t master_seed,
                                   const GpConfig& gp_cfg,
                                   WeightVector kernel_weights) {
    if (n_train < 1) throw ValidationError("train_so_baseline: n_train must be >= 1");
    if (n_batches < 1 || n_batches > n_train)
        throw ValidationError("train_so_baseline: bad batch count");
    if (seeds.empty()) throw ValidationError("train_so_baseline: no seeds");

    SoBaselineResult result;
    for (std::size_t s = 0; s < seeds.size(); ++s)
        result.snapshots.emplace_back(gp_cfg);

    int done = 0;
    for (int b = 0; b < n_batches; ++b) {
        const int batch = n_train / n_batches + (b < n_train % n_batches ? 1 : 0);
        if (batch == 0) continue;
        int successes = 0;
        double turns_sum = 0.0;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            TrainOptions opt;
            opt.n_dialogues = batch;
            opt.episode_offset = done;
            opt.pre_scalarized = true;
            opt.fixed_weights = kernel_weights;
            opt.kernel_weights = kernel_weights;
            opt.env = env;
            opt.master_seed = master_seed;
            opt.policy_seed = seeds[s];
            train(o, result.snapshots[s], scalarized_spec, opt);

            const std::uint64_t tag = derive_seed(kCurveTag, {seeds[s], static_cast<std::uint64_t>(b)});
            const EvalResult r = evaluate_policy(result.snapshots[s], o, kernel_weights,
                                                 scalarized_spec, n_eval, env, master_seed, tag);
            successes += r.successes;
            turns_sum += r.avg_turns;
        }
        done += batch;
        LearningCurvePoint pt;
        pt.dialogues = done;
        pt.tsr = static_cast<double>(successes) /
                 static_cast<double>(n_eval * static_cast<int>(seeds.size()));
        pt.avg_turns = turns_sum / static_cast<double>(seeds.size());
        result.curve.push_back(pt);
    }
    return result;
}

ComparisonReport compare_mo_so(const SweepResult& mo, const SweepResult& so) {
    if (mo.grid.size() != so.grid.size())
        throw ProtocolError("compare_mo_so: grid size mismatch");
    for (std::size_t i = 0; i < mo.grid.size(); ++i)
        if (std::abs(mo.grid[i].w_s - so.grid[i].w_s) > 1e-9)
            throw ProtocolError("compare_mo_so: grid point mismatch at index " +
                                std::to_string(i));

    ComparisonReport rep;
    rep.mo_training_dialogues = mo.training_dialogues_per_seed;
    rep.so_training_dialogues = so.training_dialogues_per_seed;
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < mo.grid.size(); ++i) {
        ComparisonRow row;
        row.w_s = mo.grid[i].w_s;
        row.mo_tsr = mo.grid[i].tsr;
        row.so_tsr = so.grid[i].tsr;
        row.tsr_delta = so.grid[i].tsr - mo.grid[i].tsr;
        row.mo_turns = mo.grid[i].avg_turns;
        row.so_turns = so.grid[i].avg_turns;
        row.turns_delta = so.grid[i].avg_turns - mo.grid[i].avg_turns;
        abs_sum += std::abs(row.tsr_delta);
        rep.rows.push_back(row);
    }
    rep.mean_abs_tsr_diff = abs_sum / static_cast<double>(rep.rows.size());
    return rep;
}

std::string ComparisonReport::to_text() const {
    std::ostringstream out;
    out << "w_s,mo_tsr,so_tsr,tsr_delta,mo_turns,so_turns,turns_delta\n";
    for (const auto& r : rows) {
        out << format_double(r.w_s) << ',' << format_double(r.mo_tsr) << ','
            << format_double(r.so_tsr) << ',' << format_double(r.tsr_delta) << ','
            << format_double(r.mo_turns) << ',' << format_double(r.so_turns) << ','
            << format_double(r.turns_delta) << '\n';
    }
    out << "mean_abs_tsr_diff=" << format_double(mean_abs_tsr_diff) << '\n';
    out << "training_dialogues_per_seed: multi-objective=" << mo_training_dialogues
        << " single-objective=" << so_training_dialogues << '\n';
    return out.str();
}

std::string sweep_to_csv(const SweepResult& r,
                         const std::vector<std::pair<std::string, std::string>>& echo) {
    std::ostringstream out;
    out << config_echo(echo);
    out << "# domain=" << r.domain << '\n';
    out << "# training_dialogues_per_seed=" << r.training_dialogues_per_seed << '\n';
    out << "domain,seed,w_s,tsr,avg_turns,n_dialogues\n";
    for (const auto& p : r.grid) {
        const int per_seed = p.n_dialogues / std::max<int>(1, static_cast<int>(p.seed_tsr.size()));
        for (std::size_t s = 0; s < p.seed_tsr.size(); ++s) {
            out << r.domain << ',' << s << ',' << format_double(p.w_s) << ','
                << format_double(p.seed_tsr[s]) << ',' << format_double(p.seed_turns[s])
                << ',' << per_seed << '\n';
        }
    }
    for (const auto& p : r.grid) {
        out << r.domain << ",mean," << format_double(p.w_s) << ',' << format_double(p.tsr)
            << ',' << format_double(p.avg_turns) << ',' << p.n_dialogues << '\n';
    }
    return out.str();
}

SweepResult sweep_from_csv(const std::string& text) {
    SweepResult r;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::size_t max_seed = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                const std::string key = line.substr(2, eq - 2);
                const std::string val = line.substr(eq + 1);
                if (key == "domain") r.domain = val;
                if (key == "training_dialogues_per_seed")
                    r.training_dialogues_per_seed = std::stol(val);
            }
            continue;
        }
        if (!header_seen) {
            if (line != "domain,seed,w_s,tsr,avg_turns,n_dialogues")
                throw SerializationError("sweep csv: unexpected header: " + line);
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 6) throw SerializationError("sweep csv: bad row: " + line);
        try {
            const double w_s = std::stod(cells[2]);
            auto it = std::find_if(r.grid.begin(), r.grid.end(), [&](const CurvePoint& p) {
                return std::abs(p.w_s - w_s) < 1e-12;
            });
            if (it == r.grid.end()) {
                r.grid.push_back(CurvePoint{});
                it = std::prev(r.grid.end());
                it->w_s = w_s;
            }
            if (cells[1] == "mean") {
                it->tsr = std::stod(cells[3]);
                it->avg_turns = std::stod(cells[4]);
                it->n_dialogues = std::stoi(cells[5]);
            } else {
                it->seed_tsr.push_back(std::stod(cells[3]));
                it->seed_turns.push_back(std::stod(cells[4]));
                max_seed = std::max(max_seed, static_cast<std::size_t>(std::stoul(cells[1])));
            }
        } catch (const std::exception& e) {
            throw SerializationError(std::string("sweep csv: parse failure: ") + e.what());
        }
    }
    if (!header_seen) throw SerializationError("sweep csv: missing header");
    if (r.grid.empty()) throw SerializationError("sweep csv: no data rows");
    std::sort(r.grid.begin(), r.grid.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.w_s < b.w_s; });
    for (std::size_t s = 0; s <= max_seed; ++s) r.seeds.push_back(s);
    return r;
}

std::string learning_curve_to_csv(
    const std::vector<LearningCurvePoint>& curve,
    const std::vector<std::pair<std::string, std::string>>& echo) {
    std::ostringstream out;
    out << config_echo(echo);
    out << "dialogues,tsr,avg_turns\n";
    for (const auto& p : curve)
        out << p.dialogues << ',' << format_double(p.tsr) << ','
            << format_double(p.avg_turns) << '\n';
    return out.str();
}

std::string sweep_to_svg(const SweepResult& r) {
    const double width = 640.0, height = 420.0, margin = 50.0;
    const double plot_w = width - 2 * margin, plot_h = height - 2 * margin;
    double turns_max = 1.0;
    for (const auto& p : r.grid) turns_max = std::max(turns_max, p.avg_turns);

    auto x_of = [&](double w_s) { return margin + plot_w * (w_s - 0.0) / 1.0; };
    auto y_tsr = [&](double tsr) { return height - margin - plot_h * tsr; };
    auto y_turns = [&](double t) { return height - margin - plot_h * t / turns_max; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">" << r.domain
        << ": success weight vs TSR (blue) and turns (red)</text>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
        << width - margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    auto polyline = [&](auto y_of, auto value_of, const char* color) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (const auto& p : r.grid)
            svg << x_of(p.w_s) << ',' << y_of(value_of(p)) << ' ';
        svg << "\"/>\n";
    };
    polyline(y_tsr, [](const CurvePoint& p) { return p.tsr; }, "blue");
    polyline(y_turns, [](const CurvePoint& p) { return p.avg_turns; }, "red");
    for (const auto& p : r.grid) {
        svg << "<circle cx=\"" << x_of(p.w_s) << "\" cy=\"" << y_tsr(p.tsr)
            << "\" r=\"3\" fill=\"blue\"/>\n";
        svg << "<text x=\"" << x_of(p.w_s) << "\" y=\"" << height - margin + 16
            << "\" font-size=\"10\" text-anchor=\"middle\">" << format_double(p.w_s)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace morlgp
