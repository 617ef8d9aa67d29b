#include "morlgp/gp.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "morlgp/errors.hpp"

namespace morlgp {

namespace {
constexpr int kSnapshotVersion = 1;
constexpr double kMinScale = 1e-12;
} // namespace

GpSarsa::GpSarsa(GpConfig cfg) : cfg_(cfg) {
    if (!(cfg_.noise_stddev >= 0.0))
        throw ValidationError("noise_stddev must be >= 0");
    if (!(cfg_.sparsify_threshold >= 0.0))
        throw ValidationError("sparsify_threshold must be >= 0");
    if (cfg_.dictionary_cap < 1)
        throw ValidationError("dictionary_cap must be positive");
    alpha_.resize(0);
    cov_.resize(0, 0);
    kinv_.resize(0, 0);
}

const std::vector<Eigen::Index>& GpSarsa::action_indices(int action) const {
    static const std::vector<Eigen::Index> empty;
    if (action < 0 || static_cast<std::size_t>(action) >= by_action_.size())
        return empty;
    return by_action_[static_cast<std::size_t>(action)];
}

std::pair<double, double> GpSarsa::predict(const KernelPoint& p) const {
    if (!dict_.empty() && p.belief.size() != dict_.front().belief.size())
        throw ValidationError("predict: belief dimension mismatch");
    const double self = mo_kernel(p, p, cfg_.kernel);
    const auto& idx = action_indices(p.action);
    if (idx.empty()) return {0.0, self};

    const Eigen::Index m = static_cast<Eigen::Index>(idx.size());
    Eigen::VectorXd k(m);
    for (Eigen::Index i = 0; i < m; ++i)
        k(i) = mo_kernel(dict_[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])], p,
                         cfg_.kernel);

    double mean = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
        mean += k(i) * alpha_(idx[static_cast<std::size_t>(i)]);

    // The delta kernel zeroes k outside this action's block, so the quadratic
    // form only needs the matching submatrix of C.
    double quad = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        double row = 0.0;
        for (Eigen::Index j = 0; j < m; ++j)
            row += cov_(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]) * k(j);
        quad += k(i) * row;
    }
    double var = self - quad;
    if (var < 0.0) var = 0.0;
    return {mean, var};
}

double GpSarsa::predict_mean(const KernelPoint& p) const {
    return predict(p).first;
}

GpSarsa::Projection GpSarsa::project(const KernelPoint& p) const {
    Projection pr;
    pr.self = mo_kernel(p, p, cfg_.kernel);
    const Eigen::Index n = static_cast<Eigen::Index>(dict_.size());
    pr.k.setZero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        pr.k(i) = mo_kernel(dict_[static_cast<std::size_t>(i)], p, cfg_.kernel);
    if (n == 0) {
        pr.a.resize(0);
        pr.resid = pr.self;
        return pr;
    }
    pr.a = kinv_ * pr.k;
    pr.resid = pr.self - pr.k.dot(pr.a);
    return pr;
}

double GpSarsa::residual(const KernelPoint& p) const {
    const double r = project(p).resid;
    return r < 0.0 ? 0.0 : r;
}

void GpSarsa::add_point(const KernelPoint& p, const Projection& pr) {
    const Eigen::Index n = static_cast<Eigen::Index>(dict_.size());
    const double delta = pr.resid;

    Eigen::MatrixXd kinv(n + 1, n + 1);
    if (n > 0) {
        kinv.topLeftCorner(n, n) = kinv_ + (pr.a * pr.a.transpose()) / delta;
        kinv.topRightCorner(n, 1) = -pr.a / delta;
        kinv.bottomLeftCorner(1, n) = -pr.a.transpose() / delta;
    }
    kinv(n, n) = 1.0 / delta;
    kinv_ = 0.5 * (kinv + kinv.transpose());

    dict_.push_back(p);
    alpha_.conservativeResize(n + 1);
    alpha_(n) = 0.0;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n + 1, n + 1);
    cov.topLeftCorner(n, n) = cov_;
    cov_ = std::move(cov);

    if (p.action >= 0) {
        if (by_action_.size() <= static_cast<std::size_t>(p.action))
            by_action_.resize(static_cast<std::size_t>(p.action) + 1);
        by_action_[static_cast<std::size_t>(p.action)].push_back(n);
    }
}

void GpSarsa::observe_episode(std::span<const Transition> episode) {
    if (episode.empty())
        throw ValidationError("observe_episode: empty episode");
    if (!episode.back().is_terminal)
        throw ProtocolError("observe_episode: final transition not marked terminal");
    for (std::size_t t = 0; t < episode.size(); ++t) {
        if (!std::isfinite(episode[t].reward))
            throw ValidationError("observe_episode: non-finite reward");
        if (episode[t].is_terminal && t + 1 != episode.size())
            throw ProtocolError("observe_episode: terminal transition before episode end");
        if (!dict_.empty() &&
            episode[t].point.belief.size() != dict_.front().belief.size())
            throw ValidationError("observe_episode: belief dimension mismatch");
    }

    const double gamma = cfg_.discount;
    const double sigma2 = cfg_.noise_stddev * cfg_.noise_stddev;
    const int cap = cfg_.dictionary_cap;
    const double nu = cfg_.sparsify_threshold;

    auto admissible = [&](const Projection& pr) {
        return pr.resid > nu && pr.resid > kMinScale &&
               static_cast<int>(dict_.size()) < cap;
    };

    // Per-episode trace state; 1/s starts at zero.
    Projection pr = project(episode.front().point);
    if (admissible(pr)) {
        add_point(episode.front().point, pr);
        pr.k.conservativeResize(pr.k.size() + 1);
        pr.k(pr.k.size() - 1) = pr.self;
        pr.a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dict_.size()));
        pr.a(pr.a.size() - 1) = 1.0;
    }
    Eigen::VectorXd prev_k = pr.k;
    Eigen::VectorXd prev_a = pr.a;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dict_.size()));
    double d = 0.0;
    double carry = 0.0; // gamma * sigma2 / s of the previous step

    auto apply = [&](const Eigen::VectorXd& c_new, double s, double d_new) {
        const double s_safe = s > kMinScale ? s : kMinScale;
        alpha_ += c_new * (d_new / s_safe);
        cov_ += (c_new * c_new.transpose()) / s_safe;
        cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
        carry = gamma * sigma2 / s_safe;
        c = c_new;
        d = d_new;
    };

    for (std::size_t t = 1; t < episode.size(); ++t) {
        const double reward = episode[t - 1].reward;
        Projection cur = project(episode[t].point);
        const Eigen::VectorXd dk = prev_k - gamma * cur.k;
        const double d_new = carry * d + reward - dk.dot(alpha_);

        Eigen::VectorXd c_new;
        double s;
        if (admissible(cur)) {
            const double dktt =
                prev_a.dot(prev_k - 2.0 * gamma * cur.k) + gamma * gamma * cur.self;
            const Eigen::VectorXd cov_dk = cov_ * dk;
            s = (1.0 + gamma * gamma) * sigma2 + dktt - dk.dot(cov_dk) +
                2.0 * carry * c.dot(dk) - carry * gamma * sigma2;
            add_point(episode[t].point, cur);
            const Eigen::Index n = static_cast<Eigen::Index>(dict_.size());
            c_new.setZero(n);
            c_new.head(n - 1) = carry * c + prev_a - cov_dk;
            c_new(n - 1) = -gamma;
            cur.k.conservativeResize(n);
            cur.k(n - 1) = cur.self;
            cur.a = Eigen::VectorXd::Zero(n);
            cur.a(n - 1) = 1.0;
        } else {
            const Eigen::VectorXd h = prev_a - gamma * cur.a;
            const double dktt = h.dot(dk);
            const Eigen::VectorXd cov_dk = cov_ * dk;
            s = (1.0 + gamma * gamma) * sigma2 + dktt - dk.dot(cov_dk) +
                2.0 * carry * c.dot(dk) - carry * gamma * sigma2;
            c_new = carry * c + h - cov_dk;
        }
        apply(c_new, s, d_new);
        prev_k = cur.k;
        prev_a = cur.a;
    }

    // Absorbing update for the terminal point: no successor, so the gamma
    // terms of a next state vanish while the trace carry remains.
    {
        const double reward = episode.back().reward;
        const Eigen::VectorXd& dk = prev_k;
        const double d_new = carry * d + reward - dk.dot(alpha_);
        const double dktt = prev_a.dot(prev_k);
        const Eigen::VectorXd cov_dk = cov_ * dk;
        const double s = sigma2 + dktt - dk.dot(cov_dk) + 2.0 * carry * c.dot(dk) -
                         carry * gamma * sigma2;
        const Eigen::VectorXd c_new = carry * c + prev_a - cov_dk;
        apply(c_new, s, d_new);
    }
}

std::string GpSarsa::snapshot() const {
    nlohmann::json j;
    j["format_version"] = kSnapshotVersion;
    j["config"] = {{"noise_stddev", cfg_.noise_stddev},
                   {"sparsify_threshold", cfg_.sparsify_threshold},
                   {"dictionary_cap", cfg_.dictionary_cap},
                   {"discount", cfg_.discount},
                   {"prior_scale", cfg_.kernel.prior_scale}};
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : dict_) {
        nlohmann::json jp;
        jp["belief"] = std::vector<double>(p.belief.data(), p.belief.data() + p.belief.size());
        jp["action"] = p.action;
        jp["w"] = {p.weights.success, p.weights.length};
        points.push_back(std::move(jp));
    }
    j["dictionary"] = std::move(points);
    j["alpha"] = std::vector<double>(alpha_.data(), alpha_.data() + alpha_.size());
    auto matrix_to_json = [](const Eigen::MatrixXd& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
        return rows;
    };
    j["cov_weights"] = matrix_to_json(cov_);
    j["kinv"] = matrix_to_json(kinv_);
    return j.dump();
}

GpSarsa GpSarsa::restore(const std::string& payload) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(payload);
    } catch (const nlohmann::json::exception& e) {
        throw SerializationError(std::string("snapshot parse failure: ") + e.what());
    }
    try {
        if (j.at("format_version").get<int>() != kSnapshotVersion)
            throw SerializationError("unsupported snapshot format version");
        GpConfig cfg;
        const auto& jc = j.at("config");
        cfg.noise_stddev = jc.at("noise_stddev").get<double>();
        cfg.sparsify_threshold = jc.at("sparsify_threshold").get<double>();
        cfg.dictionary_cap = jc.at("dictionary_cap").get<int>();
        cfg.discount = jc.at("discount").get<double>();
        cfg.kernel.prior_scale = jc.at("prior_scale").get<double>();
        GpSarsa gp(cfg);

        const auto& jd = j.at("dictionary");
        const Eigen::Index n = static_cast<Eigen::Index>(jd.size());
        for (const auto& jp : jd) {
            KernelPoint p;
            const auto b = jp.at("belief").get<std::vector<double>>();
            p.belief = Eigen::Map<const Eigen::VectorXd>(b.data(),
                                                         static_cast<Eigen::Index>(b.size()));
            p.action = jp.at("action").get<int>();
            const auto w = jp.at("w").get<std::vector<double>>();
            if (w.size() != 2) throw SerializationError("snapshot: bad weight entry");
            p.weights = WeightVector(w[0], w[1]);
            gp.dict_.push_back(p);
            if (p.action >= 0) {
                if (gp.by_action_.size() <= static_cast<std::size_t>(p.action))
                    gp.by_action_.resize(static_cast<std::size_t>(p.action) + 1);
                gp.by_action_[static_cast<std::size_t>(p.action)].push_back(
                    static_cast<Eigen::Index>(gp.dict_.size()) - 1);
            }
        }
        const auto alpha = j.at("alpha").get<std::vector<double>>();
        if (static_cast<Eigen::Index>(alpha.size()) != n)
            throw SerializationError("snapshot: alpha length mismatch");
        gp.alpha_ = Eigen::Map<const Eigen::VectorXd>(alpha.data(), n);

        auto matrix_from_json = [n](const nlohmann::json& rows, const char* name) {
            if (static_cast<Eigen::Index>(rows.size()) != n)
                throw SerializationError(std::string("snapshot: bad matrix ") + name);
            Eigen::MatrixXd m(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                const auto row = rows[static_cast<std::size_t>(i)].get<std::vector<double>>();
                if (static_cast<Eigen::Index>(row.size()) != n)
                    throw SerializationError(std::string("snapshot: bad matrix ") + name);
                for (Eigen::Index k = 0; k < n; ++k) m(i, k) = row[static_cast<std::size_t>(k)];
            }
            return m;
        };
        gp.cov_ = matrix_from_json(j.at("cov_weights"), "cov_weights");
        gp.kinv_ = matrix_from_json(j.at("kinv"), "kinv");
        return gp;
    } catch (const nlohmann::json::exception& e) {
        throw SerializationError(std::string("snapshot field failure: ") + e.what());
    }
}

void GpSarsa::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SerializationError("cannot open snapshot file for writing: " + path);
    out << snapshot();
    if (!out) throw SerializationError("snapshot write failed: " + path);
}

GpSarsa GpSarsa::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SerializationError("cannot open snapshot file: " + path);
    std::string payload((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    return restore(payload);
}

} // namespace morlgp
