#pragma once

// Weighted chi-square statistics S_{u,m} and the selectors built on them:
// the adaptive selector (max over a beta grid), the known-beta selector,
// and the thresholding selector of the scalar vector model.

#include "sparsesel/extremal.hpp"
#include "sparsesel/model.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <vector>

namespace sparsesel {

/// beta_m = m / (M + 1), m = 1..M.
std::vector<double> uniform_grid(int M);

struct SelectorConfig {
    double epsilon_slack = 0.1;
    int M = 20;
    std::vector<double> grid = uniform_grid(20);
    AMode mode = AMode::asymptotic;

    static SelectorConfig uniform(int M, double epsilon_slack = 0.1, AMode mode = AMode::asymptotic);

    /// Throws InvalidArgument unless the grid is strictly increasing inside
    /// (0, 1), M matches its length and the slack is positive.
    void validate() const;
};

/// sum omega_l ((X_l / eps)^2 - 1) over the support of w.
/// Throws ContractViolation if some support index of w was not observed for u.
double statistic(const ObservationSet& obs, const SubsetIndex& u, const WeightProfile& w, double eps);

/// sqrt((2 + slack) (log C(d, k) + log M)).
double threshold(int d, int k, int M, double epsilon_slack);

/// sqrt((2 + slack) log C(d, k)).
double known_beta_threshold(int d, int k, double epsilon_slack);

/// 1 / log log C(d, k); requires C(d, k) > e.
double theoretical_slack(int d, int k);

/// Weights at r* solving a(r*) = (1 + sqrt(1 - beta)) sqrt(2 log C(d, k)).
WeightProfile profile_for_beta(double beta, const EllipsoidSpec& spec, int d, double eps, AMode mode);

/// One profile per grid point, in grid order.
std::vector<WeightProfile> build_grid_profiles(const SelectorConfig& config, const EllipsoidSpec& spec,
                                               int d, double eps);

/// Grid profiles re-indexed against the union of their supports, so that
/// all S_{u,m} for one u come from a single pass over the observations.
class ProfileBank {
public:
    explicit ProfileBank(std::vector<WeightProfile> profiles);

    std::size_t profile_count() const noexcept { return profiles_.size(); }
    const std::vector<WeightProfile>& profiles() const noexcept { return profiles_; }
    /// Sorted union of the supports; shareable with observe_grid.
    const std::shared_ptr<const std::vector<LatticeIndex>>& coords() const noexcept { return coords_; }
    /// Largest |l_i| over the union; the signal truncation the bank can see.
    int max_abs_coordinate() const noexcept { return max_abs_; }

    /// S_{u,m} for every m. Uses positional access when the block shares the
    /// bank's coordinates, otherwise looks every index up.
    std::vector<double> statistics(const ObservationSet& obs, const SubsetIndex& u) const;

private:
    struct Slot {
        std::vector<std::uint32_t> pos;
        std::vector<double> weight;
    };
    std::vector<WeightProfile> profiles_;
    std::shared_ptr<const std::vector<LatticeIndex>> coords_;
    std::vector<Slot> slots_;
    int max_abs_ = 0;
};

using Decisions = std::map<SubsetIndex, int>;

struct SelectionResult {
    Decisions decisions;
    std::map<SubsetIndex, std::vector<double>> statistics;  // S_{u,m}, m in grid order
    double threshold = 0.0;
};

/// eta_u = max_m 1{S_{u,m} > t}.
SelectionResult select_adaptive(const ObservationSet& obs, const std::vector<SubsetIndex>& subsets,
                                const ProfileBank& bank, double threshold, int threads = 1);
SelectionResult select_adaptive(const ObservationSet& obs, const std::vector<SubsetIndex>& subsets,
                                const std::vector<WeightProfile>& profiles, double threshold,
                                int threads = 1);

/// eta_u = 1{S_u > sqrt((2 + slack) log C(d, k))} with the profile at the true beta.
SelectionResult select_known_beta(const ObservationSet& obs, const std::vector<SubsetIndex>& subsets,
                                  const WeightProfile& profile, int d, int k, double epsilon_slack,
                                  int threads = 1);

/// eta_u = 1{X_u > sqrt((2 + kappa) log C(d, k))}.
Decisions vector_select(const VectorObservation& x, int d, int k, double kappa);

struct HammingSplit {
    long long false_positives = 0;
    long long false_negatives = 0;
    long long total() const noexcept { return false_positives + false_negatives; }
};

/// Disagreements between decisions and the true pattern. Decisions must
/// cover exactly the k-subsets of {1..d}.
HammingSplit hamming_split(const Decisions& decisions, const SparsityPattern& truth);
long long hamming(const Decisions& decisions, const SparsityPattern& truth);

/// Decisions, per-grid statistics and threshold.
nlohmann::json to_json(const SelectionResult& result);

}  // namespace sparsesel
