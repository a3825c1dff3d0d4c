#pragma once

// Experiment orchestration: risk estimation over independent cycles,
// the Table-1 grid, boundary sweeps, the vector-model phase sweep,
// flat key/value configuration and CSV/JSON report writers.

#include "sparsesel/selector.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sparsesel {

enum class PatternKind { reference, random };
enum class SignalKind { catalogue, extremal };
enum class AlphaTarget { first, all };
enum class SlackRule { fixed, theoretical };

struct ExperimentSpec {
    int d = 10;
    int k = 2;
    double sigma = 1.0;
    double eps = 1e-4;
    double alpha = 1.0;
    int cycles = 12;
    std::uint64_t seed = 20240501;

    double epsilon_slack = 0.1;
    SlackRule slack_rule = SlackRule::fixed;
    int M = 20;
    AMode mode = AMode::asymptotic;

    PatternKind pattern = PatternKind::reference;
    double beta = 0.5;  // used by random patterns and by extremal signals
    int truncation = 36000;
    SignalKind signal = SignalKind::catalogue;
    AlphaTarget alpha_target = AlphaTarget::first;
    double multiplier = 1.0;  // extremal signals have norm multiplier * r*

    std::vector<double> alphas{0.01, 0.5, 1.0, 2.0, 5.0};
    std::vector<int> ds{10, 50};
    std::vector<double> multipliers{0.3, 0.5, 1.0, 1.5, 2.0};
    int replicates = 50;
    std::optional<double> kappa;  // vector selector; default 1 / log log C

    int threads = 1;
    bool record_wall_time = false;

    EllipsoidSpec ellipsoid() const { return EllipsoidSpec(k, sigma); }
    /// epsilon_slack or 1 / log log C(d, k), per slack_rule.
    double slack() const;
    SelectorConfig selector() const;
    /// Beta the extremal signal is calibrated to: beta for random patterns,
    /// the sparsity index of the reference pattern otherwise.
    double calibration_beta() const;
    /// Ranges of individual fields; enough for the vector-model sweep.
    void validate_fields() const;
    /// validate_fields plus pattern and signal compatibility with k.
    void validate() const;
};

/// Parses "key = value" lines; '#' starts a comment. Lists are comma separated.
/// Unknown keys and malformed values throw InvalidArgument naming the line.
/// Pattern and signal compatibility is checked when an experiment is built.
ExperimentSpec parse_config(std::istream& is, ExperimentSpec base = {});
ExperimentSpec load_config(const std::string& path, ExperimentSpec base = {});

/// Spec echo for reports. The thread count is left out so that reports do
/// not depend on it.
nlohmann::json to_json(const ExperimentSpec& spec);

struct RiskReport {
    std::vector<long long> per_cycle;
    std::vector<long long> false_positives;
    std::vector<long long> false_negatives;
    double err = 0.0;
    double threshold = 0.0;
    std::vector<double> r_star;
    double wall_time = 0.0;
};

using Logger = std::function<void(const std::string&)>;

/// Grid profiles, threshold and signal tables prepared once and reused
/// across the cycles and signal scales of one (d, k, sigma, eps) setting.
class RiskExperiment {
public:
    explicit RiskExperiment(ExperimentSpec spec, Logger log = {});

    const ExperimentSpec& spec() const noexcept { return spec_; }
    const ProfileBank& bank() const noexcept { return bank_; }
    double threshold() const noexcept { return threshold_; }
    int signal_truncation() const noexcept { return truncation_; }

    /// J cycles at the given signal scale. Cycle j draws its pattern and
    /// noise from (seed, j) only, so runs at different scales are paired.
    RiskReport run(double alpha, double multiplier = 1.0) const;

    /// The signal realized in cycle j (exposed for tests).
    SparseSignal signal_for(const SparsityPattern& pattern, double alpha, double multiplier) const;
    SparsityPattern pattern_for(std::size_t cycle) const;

private:
    std::vector<std::pair<LatticeIndex, double>> extremal_entries(double multiplier) const;

    ExperimentSpec spec_;
    Logger log_;
    ProfileBank bank_;
    double threshold_ = 0.0;
    int truncation_ = 0;
    std::vector<SubsetIndex> subsets_;
    std::vector<FourierTable> products_;  // catalogue signals, g_a g_b in reference order
    double r_true_ = 0.0;                  // extremal signals
};

RiskReport run_risk_experiment(const ExperimentSpec& spec, const Logger& log = {});

struct Table1Cell {
    int d = 0;
    double beta = 0.0;
    double alpha = 0.0;
    RiskReport report;
};

/// One risk run per (d, alpha), reference pattern, paired seeds across alpha.
std::vector<Table1Cell> reproduce_table1(const ExperimentSpec& base, const std::vector<double>& alphas,
                                         const std::vector<int>& ds, const Logger& log = {});

struct BoundaryRow {
    double multiplier = 0.0;
    double value = 0.0;  // r = c r* (boundary) or mu (phase-vector)
    double risk = 0.0;
    std::vector<long long> per_cycle;
    bool skipped = false;
    std::string note;
};

struct BoundaryReport {
    std::string kind;
    int d = 0;
    int k = 0;
    double sigma = 0.0;
    double eps = 0.0;
    double beta = 0.0;
    std::string mode;
    double reference = 0.0;  // r* or the vector boundary
    std::vector<BoundaryRow> rows;
};

/// Extremal signals of norm c r*, where a(r*) = (1 + sqrt(1 - beta)) sqrt(2 log C).
/// Multipliers with c r* outside the admissible range yield skipped rows.
BoundaryReport boundary_sweep(const ExperimentSpec& base, const std::vector<double>& multipliers,
                              const Logger& log = {});

/// Vector model with mu = c sqrt(2) (1 + sqrt(1 - beta)) sqrt(log C(d, k)).
BoundaryReport phase_sweep_vector(int d, int k, double beta, const std::vector<double>& multipliers,
                                  int replicates, std::uint64_t seed,
                                  std::optional<double> kappa = std::nullopt);

struct SparsityReport {
    double beta = 0.0;
    double total = 0.0;  // C(d, k)
};

SparsityReport sparsity_report(int d, int k, long long n_active);

nlohmann::json to_json(const RiskReport& report, const ExperimentSpec& spec);
nlohmann::json to_json(const BoundaryReport& report);
std::string risk_csv(const RiskReport& report);
std::string table1_csv(const std::vector<Table1Cell>& cells);
std::string boundary_csv(const BoundaryReport& report);

/// Writes via a temporary sibling and rename; "-" writes to standard output.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace sparsesel
