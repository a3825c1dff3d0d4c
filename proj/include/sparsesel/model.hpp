#pragma once

// Sparsity patterns and the Gaussian sequence-space observations
// X_l = eta_u theta_l(u) + eps xi_l, plus the scalar vector model
// X_u = mu eta_u + xi_u.

#include "sparsesel/lattice.hpp"
#include "sparsesel/random.hpp"
#include "sparsesel/signals.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace sparsesel {

struct SparsityPattern {
    int d = 0;
    int k = 0;
    std::set<SubsetIndex> active;

    bool contains(const SubsetIndex& u) const { return active.count(u) != 0; }
    std::size_t size() const noexcept { return active.size(); }
};

/// 1 - log(n_active) / log C(d, k).
double sparsity_index(int d, int k, long long n_active);

/// floor(C(d, k)^(1 - beta)).
long long active_count(int d, int k, double beta);

/// Uniformly random pattern with active_count(d, k, beta) members.
SparsityPattern sample_pattern(int d, int k, double beta, const RandomSource& rng);

/// Explicit pattern; every subset must be a distinct k-subset of {1..d}.
SparsityPattern fixed_pattern(int d, int k, const std::vector<SubsetIndex>& active);

/// The ten bivariate subsets of the reference simulation, in the order that
/// pairs them with the catalogue products (g1 g2, g1 g3, ..., g4 g5).
/// Requires d >= 10. The tenth subset is {2, 3} for d = 10 and {1, 11} for d > 10.
std::vector<SubsetIndex> reference_subsets(int d);
SparsityPattern reference_pattern(int d);

/// Realized observations. Each subset owns a block of values aligned with a
/// (possibly shared) sorted list of lattice indices.
class ObservationSet {
public:
    struct Block {
        std::shared_ptr<const std::vector<LatticeIndex>> coords;
        std::vector<double> values;
    };

    ObservationSet(double eps, RandomSource rng) : eps_(eps), rng_(rng) {}

    double eps() const noexcept { return eps_; }
    const RandomSource& source() const noexcept { return rng_; }
    const std::map<SubsetIndex, Block>& blocks() const noexcept { return blocks_; }
    const Block* block(const SubsetIndex& u) const;
    std::optional<double> at(const SubsetIndex& u, const LatticeIndex& ell) const;
    std::size_t size() const noexcept;

    void insert(SubsetIndex u, Block block);

private:
    double eps_;
    RandomSource rng_;
    std::map<SubsetIndex, Block> blocks_;
};

/// Noise variate for coordinate (u, l); a pure function of (rng, u, l).
double noise(const RandomSource& rng, const SubsetIndex& u, const LatticeIndex& ell);

/// Realizes X only at the requested (u, l) coordinates (duplicates collapse).
ObservationSet observe(const SparseSignal& signal, const SparsityPattern& pattern, double eps,
                       const RandomSource& rng,
                       const std::vector<std::pair<SubsetIndex, LatticeIndex>>& needed);

/// Realizes X on coords (sorted lexicographically) for every listed subset.
ObservationSet observe_grid(const SparseSignal& signal, const SparsityPattern& pattern, double eps,
                            const RandomSource& rng, const std::vector<SubsetIndex>& subsets,
                            std::shared_ptr<const std::vector<LatticeIndex>> coords,
                            int threads = 1);

/// Columnar dump: one "# subset" block per subset, header carries seed and eps.
void write_observations(std::ostream& os, const ObservationSet& obs);

struct VectorObservation {
    std::vector<SubsetIndex> subsets;  // lexicographic
    std::vector<double> values;
};

/// X_u = mu eta_u + xi_u over all k-subsets of {1..d}.
VectorObservation vector_observe(double mu, const SparsityPattern& pattern, const RandomSource& rng);

}  // namespace sparsesel
