#include "sparsesel/selector.hpp"

#include "sparsesel/errors.hpp"
#include "sparsesel/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace sparsesel {

std::vector<double> uniform_grid(int M) {
    if (M < 1) throw InvalidArgument("grid size M must be >= 1");
    std::vector<double> g(static_cast<std::size_t>(M));
    for (int m = 1; m <= M; ++m) g[static_cast<std::size_t>(m - 1)] = static_cast<double>(m) / (M + 1);
    return g;
}

SelectorConfig SelectorConfig::uniform(int M, double epsilon_slack, AMode mode) {
    SelectorConfig c;
    c.M = M;
    c.grid = uniform_grid(M);
    c.epsilon_slack = epsilon_slack;
    c.mode = mode;
    c.validate();
    return c;
}

void SelectorConfig::validate() const {
    if (!(epsilon_slack > 0.0) || !std::isfinite(epsilon_slack))
        throw InvalidArgument("epsilon_slack must be positive");
    if (M < 1 || static_cast<std::size_t>(M) != grid.size())
        throw InvalidArgument("M must equal the grid length");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] < 1.0)) throw InvalidArgument("grid points must lie in (0, 1)");
        if (i && !(grid[i] > grid[i - 1])) throw InvalidArgument("grid must be strictly increasing");
    }
}

namespace {

inline double chi_term(double x, double eps) {
    const double z = x / eps;
    return z * z - 1.0;
}

void require_eps(double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
}

}  // namespace

double statistic(const ObservationSet& obs, const SubsetIndex& u, const WeightProfile& w, double eps) {
    require_eps(eps);
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto x = obs.at(u, w.indices[i]);
        if (!x) throw ContractViolation("no observation at " + w.indices[i].to_string() + " for subset " + u.to_string());
        s += w.weights[i] * chi_term(*x, eps);
    }
    return s;
}

double threshold(int d, int k, int M, double epsilon_slack) {
    if (M < 1) throw InvalidArgument("M must be >= 1");
    if (!(epsilon_slack >= 0.0)) throw InvalidArgument("epsilon_slack must be >= 0");
    return std::sqrt((2.0 + epsilon_slack) * (log_binomial(d, k) + std::log(static_cast<double>(M))));
}

double known_beta_threshold(int d, int k, double epsilon_slack) { return threshold(d, k, 1, epsilon_slack); }

double theoretical_slack(int d, int k) {
    const double lc = log_binomial(d, k);
    if (!(lc > 1.0)) throw InvalidArgument("1 / log log C(d, k) needs C(d, k) > e");
    return 1.0 / std::log(lc);
}

WeightProfile profile_for_beta(double beta, const EllipsoidSpec& spec, int d, double eps, AMode mode) {
    const double target = selection_target(beta, log_binomial(d, spec.k));
    const double r = solve_r_star(target, spec, eps, mode);
    const ThetaProfile theta = extremal_profile(r, spec, eps, mode);
    return make_weights(theta, a_value(r, spec, eps, mode), eps, r);
}

std::vector<WeightProfile> build_grid_profiles(const SelectorConfig& config, const EllipsoidSpec& spec,
                                               int d, double eps) {
    config.validate();
    std::vector<WeightProfile> out;
    out.reserve(config.grid.size());
    for (double beta : config.grid) out.push_back(profile_for_beta(beta, spec, d, eps, config.mode));
    return out;
}

ProfileBank::ProfileBank(std::vector<WeightProfile> profiles) : profiles_(std::move(profiles)) {
    if (profiles_.empty()) throw InvalidArgument("a profile bank needs at least one profile");
    std::vector<LatticeIndex> all;
    for (const auto& p : profiles_) {
        if (p.weights.size() != p.indices.size()) throw InvalidArgument("weight profile is misaligned");
        if (!std::is_sorted(p.indices.begin(), p.indices.end()))
            throw InvalidArgument("weight profile indices must be sorted");
        all.insert(all.end(), p.indices.begin(), p.indices.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all.size() > std::numeric_limits<std::uint32_t>::max())
        throw ResourceLimit("profile union too large");
    for (const auto& ell : all)
        for (int c : ell.coords()) max_abs_ = std::max(max_abs_, std::abs(c));

    slots_.resize(profiles_.size());
    for (std::size_t m = 0; m < profiles_.size(); ++m) {
        const auto& p = profiles_[m];
        auto& slot = slots_[m];
        slot.pos.reserve(p.size());
        slot.weight = p.weights;
        // Both lists are sorted, so a forward merge finds every position.
        std::size_t j = 0;
        for (const auto& ell : p.indices) {
            while (all[j] < ell) ++j;
            slot.pos.push_back(static_cast<std::uint32_t>(j));
        }
    }
    coords_ = std::make_shared<const std::vector<LatticeIndex>>(std::move(all));
}

std::vector<double> ProfileBank::statistics(const ObservationSet& obs, const SubsetIndex& u) const {
    std::vector<double> out(profiles_.size(), 0.0);
    const auto* block = obs.block(u);
    const bool aligned = block && (block->coords == coords_ || *block->coords == *coords_);
    if (!aligned) {
        for (std::size_t m = 0; m < profiles_.size(); ++m) out[m] = statistic(obs, u, profiles_[m], obs.eps());
        return out;
    }
    require_eps(obs.eps());
    std::vector<double> z(block->values.size());
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = chi_term(block->values[j], obs.eps());
    for (std::size_t m = 0; m < slots_.size(); ++m) {
        const auto& slot = slots_[m];
        double s = 0.0;
        for (std::size_t i = 0; i < slot.pos.size(); ++i) s += slot.weight[i] * z[slot.pos[i]];
        out[m] = s;
    }
    return out;
}

SelectionResult select_adaptive(const ObservationSet& obs, const std::vector<SubsetIndex>& subsets,
                                const ProfileBank& bank, double threshold, int threads) {
    std::vector<std::vector<double>> stats(subsets.size());
    parallel_for(subsets.size(), threads, [&](std::size_t i) { stats[i] = bank.statistics(obs, subsets[i]); });

    SelectionResult res;
    res.threshold = threshold;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        const bool hit = std::any_of(stats[i].begin(), stats[i].end(), [&](double s) { return s > threshold; });
        res.decisions[subsets[i]] = hit ? 1 : 0;
        res.statistics[subsets[i]] = std::move(stats[i]);
    }
    return res;
}

SelectionResult select_adaptive(const ObservationSet& obs, const std::vector<SubsetIndex>& subsets,
                                const std::vector<WeightProfile>& profiles, double threshold,
                                int threads) {
    return select_adaptive(obs, subsets, ProfileBank(profiles), threshold, threads);
}

SelectionResult select_known_beta(const ObservationSet& obs, const std::vector<SubsetIndex>& subsets,
                                  const WeightProfile& profile, int d, int k, double epsilon_slack,
                                  int threads) {
    return select_adaptive(obs, subsets, ProfileBank({profile}), known_beta_threshold(d, k, epsilon_slack),
                           threads);
}

Decisions vector_select(const VectorObservation& x, int d, int k, double kappa) {
    if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
    if (x.subsets.size() != x.values.size()) throw InvalidArgument("vector observation is misaligned");
    const double t = std::sqrt((2.0 + kappa) * log_binomial(d, k));
    Decisions out;
    for (std::size_t i = 0; i < x.subsets.size(); ++i) out[x.subsets[i]] = x.values[i] > t ? 1 : 0;
    return out;
}

HammingSplit hamming_split(const Decisions& decisions, const SparsityPattern& truth) {
    if (static_cast<double>(decisions.size()) != binomial(truth.d, truth.k))
        throw InvalidArgument("decisions do not cover the k-subsets of {1..d}");
    HammingSplit h;
    for (const auto& [u, e] : decisions) {
        if (static_cast<int>(u.size()) != truth.k || !u.fits(truth.d))
            throw InvalidArgument("decision for " + u.to_string() + " is outside the index set");
        if (e != 0 && e != 1) throw InvalidArgument("decisions must be 0 or 1");
        const bool active = truth.contains(u);
        if (e == 1 && !active) ++h.false_positives;
        if (e == 0 && active) ++h.false_negatives;
    }
    for (const auto& u : truth.active)
        if (!decisions.count(u)) throw InvalidArgument("active subset " + u.to_string() + " has no decision");
    return h;
}

long long hamming(const Decisions& decisions, const SparsityPattern& truth) {
    return hamming_split(decisions, truth).total();
}

nlohmann::json to_json(const SelectionResult& result) {
    nlohmann::json j;
    j["threshold"] = result.threshold;
    auto& dec = j["decisions"] = nlohmann::json::object();
    for (const auto& [u, e] : result.decisions) dec[u.to_string()] = e;
    auto& st = j["statistics"] = nlohmann::json::object();
    for (const auto& [u, s] : result.statistics) st[u.to_string()] = s;
    return j;
}

}  // namespace sparsesel
