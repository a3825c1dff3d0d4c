#include "sparsesel/model.hpp"

#include "sparsesel/errors.hpp"
#include "sparsesel/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

namespace sparsesel {

double sparsity_index(int d, int k, long long n_active) {
    const double total = binomial(d, k);
    if (n_active < 1 || static_cast<double>(n_active) > total)
        throw InvalidArgument("n_active must lie in [1, C(d, k)]");
    if (total == 1.0) return 1.0;
    return 1.0 - std::log(static_cast<double>(n_active)) / log_binomial(d, k);
}

long long active_count(int d, int k, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidArgument("beta must lie in [0, 1]");
    const double x = std::exp((1.0 - beta) * log_binomial(d, k));
    // The guard absorbs rounding when C^(1 - beta) is an exact integer.
    return std::max(1LL, static_cast<long long>(std::floor(x * (1.0 + 1e-12))));
}

SparsityPattern sample_pattern(int d, int k, double beta, const RandomSource& rng) {
    if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("beta must lie in (0, 1)");
    auto all = enumerate_subsets(d, k);
    const auto n = static_cast<std::size_t>(active_count(d, k, beta));
    // Partial Fisher-Yates driven by the counter stream.
    std::vector<std::size_t> idx(all.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t span = idx.size() - i;
        const auto j = i + std::min(span - 1, static_cast<std::size_t>(rng.uniform(i) * static_cast<double>(span)));
        std::swap(idx[i], idx[j]);
    }
    SparsityPattern p{d, k, {}};
    for (std::size_t i = 0; i < n; ++i) p.active.insert(all[idx[i]]);
    return p;
}

SparsityPattern fixed_pattern(int d, int k, const std::vector<SubsetIndex>& active) {
    if (k < 1 || k > d) throw InvalidArgument("fixed_pattern requires 1 <= k <= d");
    SparsityPattern p{d, k, {}};
    for (const auto& u : active) {
        if (static_cast<int>(u.size()) != k || !u.fits(d))
            throw InvalidArgument("subset " + u.to_string() + " is not a " + std::to_string(k) +
                                  "-subset of {1.." + std::to_string(d) + "}");
        if (!p.active.insert(u).second) throw InvalidArgument("duplicate subset " + u.to_string());
    }
    return p;
}

std::vector<SubsetIndex> reference_subsets(int d) {
    if (d < 10) throw InvalidArgument("the reference pattern needs d >= 10");
    std::vector<SubsetIndex> out;
    for (int j = 2; j <= 10; ++j) out.emplace_back(std::vector<int>{1, j});
    out.emplace_back(d == 10 ? std::vector<int>{2, 3} : std::vector<int>{1, 11});
    return out;
}

SparsityPattern reference_pattern(int d) { return fixed_pattern(d, 2, reference_subsets(d)); }

const ObservationSet::Block* ObservationSet::block(const SubsetIndex& u) const {
    auto it = blocks_.find(u);
    return it == blocks_.end() ? nullptr : &it->second;
}

std::optional<double> ObservationSet::at(const SubsetIndex& u, const LatticeIndex& ell) const {
    const Block* b = block(u);
    if (!b) return std::nullopt;
    const auto& c = *b->coords;
    auto it = std::lower_bound(c.begin(), c.end(), ell);
    if (it == c.end() || *it != ell) return std::nullopt;
    return b->values[static_cast<std::size_t>(it - c.begin())];
}

std::size_t ObservationSet::size() const noexcept {
    std::size_t n = 0;
    for (const auto& [u, b] : blocks_) n += b.values.size();
    return n;
}

void ObservationSet::insert(SubsetIndex u, Block block) {
    if (!block.coords || block.coords->size() != block.values.size())
        throw InvalidArgument("observation block has mismatched coordinates and values");
    blocks_.insert_or_assign(std::move(u), std::move(block));
}

double noise(const RandomSource& rng, const SubsetIndex& u, const LatticeIndex& ell) {
    return rng.normal(u.stable_key(), ell.stable_key());
}

namespace {

void check_eps(double eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidArgument("eps must be finite and >= 0");
}

std::vector<double> realize_block(const SparseSignal& signal, bool active, double eps,
                                  const RandomSource& rng, const SubsetIndex& u,
                                  const std::vector<LatticeIndex>& coords) {
    std::vector<double> values(coords.size());
    const FourierTable* table = nullptr;
    if (active) {
        auto it = signal.components.find(u);
        if (it != signal.components.end()) table = &it->second;
    }
    const std::uint64_t ukey = u.stable_key();
    for (std::size_t j = 0; j < coords.size(); ++j) {
        const double mean = table ? table->value(coords[j]) : 0.0;
        values[j] = mean + eps * rng.normal(ukey, coords[j].stable_key());
    }
    return values;
}

}  // namespace

ObservationSet observe(const SparseSignal& signal, const SparsityPattern& pattern, double eps,
                       const RandomSource& rng,
                       const std::vector<std::pair<SubsetIndex, LatticeIndex>>& needed) {
    check_eps(eps);
    std::map<SubsetIndex, std::vector<LatticeIndex>> grouped;
    for (const auto& [u, ell] : needed) grouped[u].push_back(ell);
    ObservationSet obs(eps, rng);
    for (auto& [u, list] : grouped) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        auto coords = std::make_shared<const std::vector<LatticeIndex>>(std::move(list));
        auto values = realize_block(signal, pattern.contains(u), eps, rng, u, *coords);
        obs.insert(u, {std::move(coords), std::move(values)});
    }
    return obs;
}

ObservationSet observe_grid(const SparseSignal& signal, const SparsityPattern& pattern, double eps,
                            const RandomSource& rng, const std::vector<SubsetIndex>& subsets,
                            std::shared_ptr<const std::vector<LatticeIndex>> coords, int threads) {
    check_eps(eps);
    if (!coords) throw InvalidArgument("observe_grid needs a coordinate list");
    if (!std::is_sorted(coords->begin(), coords->end()))
        throw InvalidArgument("observe_grid coordinates must be sorted");

    std::vector<std::uint64_t> keys(coords->size());
    for (std::size_t j = 0; j < keys.size(); ++j) keys[j] = (*coords)[j].stable_key();

    std::vector<std::vector<double>> values(subsets.size());
    parallel_for(subsets.size(), threads, [&](std::size_t i) {
        const auto& u = subsets[i];
        const FourierTable* table = nullptr;
        if (pattern.contains(u)) {
            auto it = signal.components.find(u);
            if (it != signal.components.end()) table = &it->second;
        }
        const std::uint64_t ukey = u.stable_key();
        auto& v = values[i];
        v.resize(keys.size());
        for (std::size_t j = 0; j < keys.size(); ++j) {
            const double mean = table ? table->value((*coords)[j]) : 0.0;
            v[j] = mean + eps * rng.normal(ukey, keys[j]);
        }
    });

    ObservationSet obs(eps, rng);
    for (std::size_t i = 0; i < subsets.size(); ++i) obs.insert(subsets[i], {coords, std::move(values[i])});
    return obs;
}

void write_observations(std::ostream& os, const ObservationSet& obs) {
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    os << "# seed " << obs.source().seed() << '\n';
    os << "# stream " << obs.source().stream() << '\n';
    os << "# eps " << obs.eps() << '\n';
    for (const auto& [u, b] : obs.blocks()) {
        os << "# subset " << u.to_string() << '\n';
        for (std::size_t j = 0; j < b.values.size(); ++j) {
            for (int c : (*b.coords)[j].coords()) os << c << ' ';
            os << b.values[j] << '\n';
        }
    }
}

VectorObservation vector_observe(double mu, const SparsityPattern& pattern, const RandomSource& rng) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw InvalidArgument("mu must be finite and >= 0");
    VectorObservation x;
    x.subsets = enumerate_subsets(pattern.d, pattern.k);
    x.values.resize(x.subsets.size());
    for (std::size_t i = 0; i < x.subsets.size(); ++i) {
        const auto& u = x.subsets[i];
        x.values[i] = (pattern.contains(u) ? mu : 0.0) + rng.normal(u.stable_key());
    }
    return x;
}

}  // namespace sparsesel
