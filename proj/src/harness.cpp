#include "sparsesel/harness.hpp"

#include "sparsesel/errors.hpp"
#include "sparsesel/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace sparsesel {

namespace {

constexpr std::uint64_t kPatternTag = 0x70617474ULL;  // "patt"
constexpr std::uint64_t kNoiseTag = 0x6e6f6973ULL;    // "nois"

std::string fmt(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& v) {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
}

long long to_int(const std::string& v) {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        if (item.empty()) throw std::invalid_argument(v);
        out.push_back(item);
    }
    if (out.empty()) throw std::invalid_argument(v);
    return out;
}

bool to_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument(v);
}

template <class E>
E pick(const std::string& v, std::initializer_list<std::pair<const char*, E>> options) {
    for (const auto& [name, e] : options)
        if (v == name) return e;
    throw std::invalid_argument(v);
}

const char* name_of(PatternKind p) { return p == PatternKind::reference ? "reference" : "random"; }
const char* name_of(SignalKind s) { return s == SignalKind::catalogue ? "catalogue" : "extremal"; }
const char* name_of(AlphaTarget a) { return a == AlphaTarget::first ? "first" : "all"; }
const char* name_of(SlackRule r) { return r == SlackRule::fixed ? "fixed" : "theoretical"; }

double mean_of(const std::vector<long long>& v) {
    if (v.empty()) return 0.0;
    const long long s = std::accumulate(v.begin(), v.end(), 0LL);
    return static_cast<double>(s) / static_cast<double>(v.size());
}

void say(const Logger& log, const std::string& msg) {
    if (log) log(msg);
}

}  // namespace

double ExperimentSpec::slack() const {
    return slack_rule == SlackRule::fixed ? epsilon_slack : theoretical_slack(d, k);
}

SelectorConfig ExperimentSpec::selector() const { return SelectorConfig::uniform(M, slack(), mode); }

double ExperimentSpec::calibration_beta() const {
    if (pattern == PatternKind::random) return beta;
    return sparsity_index(d, k, static_cast<long long>(reference_subsets(d).size()));
}

void ExperimentSpec::validate_fields() const {
    EllipsoidSpec check(k, sigma);
    (void)check;
    if (d < k) throw InvalidArgument("d must be >= k");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("eps must be positive");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be >= 0");
    if (cycles < 1) throw InvalidArgument("cycles must be >= 1");
    if (truncation < 1) throw InvalidArgument("truncation must be >= 1");
    if (threads < 1) throw InvalidArgument("threads must be >= 1");
    if (!(multiplier > 0.0)) throw InvalidArgument("multiplier must be positive");
    if (replicates < 1) throw InvalidArgument("replicates must be >= 1");
    if (kappa && !(*kappa > 0.0)) throw InvalidArgument("kappa must be positive");
    if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("beta must lie in (0, 1)");
    if (!(log_binomial(d, k) > 0.0)) throw InvalidArgument("C(d, k) must exceed 1");
}

void ExperimentSpec::validate() const {
    validate_fields();
    if (pattern == PatternKind::reference && (k != 2 || d < 10))
        throw InvalidArgument("the reference pattern needs k = 2 and d >= 10");
    if (signal == SignalKind::catalogue && k != 2) throw InvalidArgument("catalogue signals are bivariate (k = 2)");
    selector();
}

ExperimentSpec parse_config(std::istream& is, ExperimentSpec base) {
    ExperimentSpec s = std::move(base);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string v = trim(std::string_view(line).substr(eq + 1));
        try {
            if (key == "d") s.d = static_cast<int>(to_int(v));
            else if (key == "k") s.k = static_cast<int>(to_int(v));
            else if (key == "sigma") s.sigma = to_double(v);
            else if (key == "eps") s.eps = to_double(v);
            else if (key == "alpha") s.alpha = to_double(v);
            else if (key == "cycles") s.cycles = static_cast<int>(to_int(v));
            else if (key == "seed") s.seed = static_cast<std::uint64_t>(std::stoull(v));
            else if (key == "epsilon_slack") s.epsilon_slack = to_double(v);
            else if (key == "slack_rule")
                s.slack_rule = pick<SlackRule>(v, {{"fixed", SlackRule::fixed}, {"theoretical", SlackRule::theoretical}});
            else if (key == "M") s.M = static_cast<int>(to_int(v));
            else if (key == "mode") s.mode = parse_amode(v);
            else if (key == "pattern")
                s.pattern = pick<PatternKind>(v, {{"reference", PatternKind::reference}, {"random", PatternKind::random}});
            else if (key == "beta") s.beta = to_double(v);
            else if (key == "truncation") s.truncation = static_cast<int>(to_int(v));
            else if (key == "signal")
                s.signal = pick<SignalKind>(v, {{"catalogue", SignalKind::catalogue}, {"extremal", SignalKind::extremal}});
            else if (key == "alpha_target")
                s.alpha_target = pick<AlphaTarget>(v, {{"first", AlphaTarget::first}, {"all", AlphaTarget::all}});
            else if (key == "multiplier") s.multiplier = to_double(v);
            else if (key == "alphas") {
                s.alphas.clear();
                for (const auto& x : split_list(v)) s.alphas.push_back(to_double(x));
            } else if (key == "ds") {
                s.ds.clear();
                for (const auto& x : split_list(v)) s.ds.push_back(static_cast<int>(to_int(x)));
            } else if (key == "multipliers") {
                s.multipliers.clear();
                for (const auto& x : split_list(v)) s.multipliers.push_back(to_double(x));
            } else if (key == "replicates") s.replicates = static_cast<int>(to_int(v));
            else if (key == "kappa") s.kappa = to_double(v);
            else if (key == "threads") s.threads = static_cast<int>(to_int(v));
            else if (key == "record_wall_time") s.record_wall_time = to_bool(v);
            else throw InvalidArgument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const InvalidArgument&) {
            throw;
        } catch (const std::exception&) {
            throw InvalidArgument("config line " + std::to_string(lineno) + ": bad value '" + v + "' for " + key);
        }
    }
    s.validate_fields();
    return s;
}

ExperimentSpec load_config(const std::string& path, ExperimentSpec base) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config " + path);
    return parse_config(in, std::move(base));
}

nlohmann::json to_json(const ExperimentSpec& s) {
    nlohmann::json j;
    j["d"] = s.d;
    j["k"] = s.k;
    j["sigma"] = s.sigma;
    j["eps"] = s.eps;
    j["alpha"] = s.alpha;
    j["cycles"] = s.cycles;
    j["seed"] = s.seed;
    j["epsilon_slack"] = s.slack();
    j["slack_rule"] = name_of(s.slack_rule);
    j["M"] = s.M;
    j["mode"] = std::string(to_string(s.mode));
    j["pattern"] = name_of(s.pattern);
    if (s.pattern == PatternKind::random) j["beta"] = s.beta;
    j["truncation"] = s.truncation;
    j["signal"] = name_of(s.signal);
    if (s.signal == SignalKind::catalogue) j["alpha_target"] = name_of(s.alpha_target);
    if (s.signal == SignalKind::extremal) j["multiplier"] = s.multiplier;
    return j;
}

RiskExperiment::RiskExperiment(ExperimentSpec spec, Logger log)
    : spec_(std::move(spec)),
      log_(std::move(log)),
      bank_([this] {
          spec_.validate();
          return build_grid_profiles(spec_.selector(), spec_.ellipsoid(), spec_.d, spec_.eps);
      }()) {
    threshold_ = sparsesel::threshold(spec_.d, spec_.k, spec_.M, spec_.slack());
    // Coefficients beyond the union support never enter a statistic.
    truncation_ = std::min(spec_.truncation, std::max(1, bank_.max_abs_coordinate()));
    subsets_ = enumerate_subsets(spec_.d, spec_.k);
    say(log_, "grid ready: " + std::to_string(bank_.coords()->size()) + " coordinates, threshold " +
                  fmt(threshold_) + ", signal truncation " + std::to_string(truncation_));

    if (spec_.signal == SignalKind::catalogue) {
        CoefficientCache cache;
        const auto ref = reference_subsets(std::max(spec_.d, 10));
        int i = 0;
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b, ++i)
                products_.push_back(fourier_table_product(ComponentFunction::catalogue(static_cast<Catalogue>(a)),
                                                          ComponentFunction::catalogue(static_cast<Catalogue>(b)),
                                                          ref[static_cast<std::size_t>(i)], truncation_, &cache));
    } else {
        const double target = selection_target(spec_.calibration_beta(), log_binomial(spec_.d, spec_.k));
        r_true_ = solve_r_star(target, spec_.ellipsoid(), spec_.eps, spec_.mode);
    }
}

std::vector<std::pair<LatticeIndex, double>> RiskExperiment::extremal_entries(double multiplier) const {
    const double r = multiplier * r_true_;
    const ThetaProfile theta = extremal_profile(r, spec_.ellipsoid(), spec_.eps, spec_.mode);
    // The lattice profile's norm differs from r by the asymptotic error; fix it exactly.
    const double scale = r / std::sqrt(theta.sum());
    std::vector<std::pair<LatticeIndex, double>> out;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const auto& ell = theta.indices[i];
        const bool inside = std::all_of(ell.coords().begin(), ell.coords().end(),
                                        [&](int c) { return std::abs(c) <= spec_.truncation; });
        if (inside) out.emplace_back(ell, std::sqrt(theta.theta_sq[i]) * scale);
    }
    return out;
}

SparsityPattern RiskExperiment::pattern_for(std::size_t cycle) const {
    if (spec_.pattern == PatternKind::reference) return reference_pattern(spec_.d);
    return sample_pattern(spec_.d, spec_.k, spec_.beta, RandomSource(spec_.seed, cycle).derive(kPatternTag));
}

SparseSignal RiskExperiment::signal_for(const SparsityPattern& pattern, double alpha, double multiplier) const {
    SparseSignal sig{spec_.d, spec_.k, {}};
    if (spec_.signal == SignalKind::catalogue) {
        std::vector<SubsetIndex> order;
        if (spec_.pattern == PatternKind::reference) order = reference_subsets(spec_.d);
        else order.assign(pattern.active.begin(), pattern.active.end());
        for (std::size_t i = 0; i < order.size(); ++i) {
            const auto& src = products_[i % products_.size()];
            const bool scaled = spec_.alpha_target == AlphaTarget::all || i == 0;
            FourierTable t(order[i], src.truncation(), src.factor_ids(), src.entries());
            sig.components.emplace(order[i], scaled ? scale_component(t, alpha) : std::move(t));
        }
    } else {
        const auto entries = extremal_entries(multiplier);
        for (const auto& u : pattern.active)
            sig.components.emplace(u, scale_component(FourierTable(u, spec_.truncation, {"extremal"}, entries), alpha));
    }
    return sig;
}

RiskReport RiskExperiment::run(double alpha, double multiplier) const {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t J = static_cast<std::size_t>(spec_.cycles);
    std::vector<HammingSplit> results(J);
    // A fixed pattern gives one signal for every cycle.
    std::optional<SparseSignal> shared;
    if (spec_.pattern == PatternKind::reference) shared = signal_for(pattern_for(0), alpha, multiplier);

    parallel_for(J, spec_.threads, [&](std::size_t j) {
        const SparsityPattern pattern = pattern_for(j);
        const SparseSignal local = shared ? SparseSignal{} : signal_for(pattern, alpha, multiplier);
        const SparseSignal& sig = shared ? *shared : local;
        const RandomSource noise = RandomSource(spec_.seed, j).derive(kNoiseTag);
        Decisions dec;
        // One subset at a time keeps memory at a single block per worker.
        for (const auto& u : subsets_) {
            const ObservationSet obs = observe_grid(sig, pattern, spec_.eps, noise, {u}, bank_.coords(), 1);
            const auto res = select_adaptive(obs, {u}, bank_, threshold_, 1);
            dec[u] = res.decisions.at(u);
        }
        results[j] = hamming_split(dec, pattern);
    });

    RiskReport rep;
    rep.threshold = threshold_;
    for (const auto& p : bank_.profiles()) rep.r_star.push_back(p.r_star);
    for (const auto& h : results) {
        rep.per_cycle.push_back(h.total());
        rep.false_positives.push_back(h.false_positives);
        rep.false_negatives.push_back(h.false_negatives);
    }
    rep.err = mean_of(rep.per_cycle);
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    say(log_, "d=" + std::to_string(spec_.d) + " alpha=" + fmt(alpha) + " multiplier=" + fmt(multiplier) +
                  " err=" + fmt(rep.err) + " (" + fmt(std::round(rep.wall_time * 100) / 100) + " s)");
    return rep;
}

RiskReport run_risk_experiment(const ExperimentSpec& spec, const Logger& log) {
    const RiskExperiment exp(spec, log);
    return exp.run(spec.alpha, spec.multiplier);
}

std::vector<Table1Cell> reproduce_table1(const ExperimentSpec& base, const std::vector<double>& alphas,
                                         const std::vector<int>& ds, const Logger& log) {
    for (double a : alphas)
        if (!(a > 0.0)) throw InvalidArgument("Table 1 alphas must be positive");
    std::vector<Table1Cell> cells;
    for (int d : ds) {
        ExperimentSpec s = base;
        s.d = d;
        s.k = 2;
        s.pattern = PatternKind::reference;
        s.signal = SignalKind::catalogue;
        const RiskExperiment exp(s, log);
        const double beta = s.calibration_beta();
        for (double a : alphas) cells.push_back({d, beta, a, exp.run(a)});
    }
    return cells;
}

BoundaryReport boundary_sweep(const ExperimentSpec& base, const std::vector<double>& multipliers,
                              const Logger& log) {
    if (multipliers.empty()) throw InvalidArgument("boundary sweep needs multipliers");
    ExperimentSpec s = base;
    s.signal = SignalKind::extremal;
    const RiskExperiment exp(s, log);

    BoundaryReport rep;
    rep.kind = "boundary";
    rep.d = s.d;
    rep.k = s.k;
    rep.sigma = s.sigma;
    rep.eps = s.eps;
    rep.beta = s.calibration_beta();
    rep.mode = std::string(to_string(s.mode));
    const double target = selection_target(rep.beta, log_binomial(s.d, s.k));
    rep.reference = solve_r_star(target, s.ellipsoid(), s.eps, s.mode);
    const double r_max = admissible_radius_bound(s.ellipsoid());
    for (double c : multipliers) {
        BoundaryRow row;
        row.multiplier = c;
        row.value = c * rep.reference;
        if (!(c > 0.0) || !(row.value < r_max)) {
            row.skipped = true;
            row.note = "c r* = " + fmt(row.value) + " is outside the admissible range (0, " + fmt(r_max) + ")";
            say(log, "warning: " + row.note);
        } else {
            const RiskReport r = exp.run(s.alpha, c);
            row.risk = r.err;
            row.per_cycle = r.per_cycle;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

BoundaryReport phase_sweep_vector(int d, int k, double beta, const std::vector<double>& multipliers,
                                  int replicates, std::uint64_t seed, std::optional<double> kappa) {
    if (replicates < 1) throw InvalidArgument("replicates must be >= 1");
    if (multipliers.empty()) throw InvalidArgument("phase sweep needs multipliers");
    const double lc = log_binomial(d, k);
    const double kap = kappa ? *kappa : theoretical_slack(d, k);
    BoundaryReport rep;
    rep.kind = "phase-vector";
    rep.d = d;
    rep.k = k;
    rep.beta = beta;
    rep.reference = std::sqrt(2.0) * (1.0 + std::sqrt(1.0 - beta)) * std::sqrt(lc);
    const auto n = static_cast<std::size_t>(replicates);
    std::vector<SparsityPattern> patterns;
    for (std::size_t j = 0; j < n; ++j)
        patterns.push_back(sample_pattern(d, k, beta, RandomSource(seed, j).derive(kPatternTag)));
    for (double c : multipliers) {
        if (!(c >= 0.0)) throw InvalidArgument("multipliers must be >= 0");
        BoundaryRow row;
        row.multiplier = c;
        row.value = c * rep.reference;
        for (std::size_t j = 0; j < n; ++j) {
            const auto x = vector_observe(row.value, patterns[j], RandomSource(seed, j).derive(kNoiseTag));
            row.per_cycle.push_back(hamming(vector_select(x, d, k, kap), patterns[j]));
        }
        row.risk = mean_of(row.per_cycle);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

SparsityReport sparsity_report(int d, int k, long long n_active) {
    return {sparsity_index(d, k, n_active), binomial(d, k)};
}

nlohmann::json to_json(const RiskReport& r, const ExperimentSpec& spec) {
    nlohmann::json j;
    j["spec"] = to_json(spec);
    j["threshold"] = r.threshold;
    j["r_star"] = r.r_star;
    j["per_cycle"] = r.per_cycle;
    j["false_positives"] = r.false_positives;
    j["false_negatives"] = r.false_negatives;
    j["err"] = r.err;
    if (spec.record_wall_time) j["wall_time"] = r.wall_time;
    return j;
}

nlohmann::json to_json(const BoundaryReport& r) {
    nlohmann::json j;
    j["kind"] = r.kind;
    j["d"] = r.d;
    j["k"] = r.k;
    j["beta"] = r.beta;
    if (r.kind == "boundary") {
        j["sigma"] = r.sigma;
        j["eps"] = r.eps;
        j["mode"] = r.mode;
    }
    j["reference"] = r.reference;
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json x;
        x["multiplier"] = row.multiplier;
        x["value"] = row.value;
        x["skipped"] = row.skipped;
        if (row.skipped) x["note"] = row.note;
        else {
            x["risk"] = row.risk;
            x["per_cycle"] = row.per_cycle;
        }
        rows.push_back(std::move(x));
    }
    return j;
}

std::string risk_csv(const RiskReport& r) {
    std::string out = "cycle,hamming,false_positives,false_negatives\n";
    for (std::size_t j = 0; j < r.per_cycle.size(); ++j)
        out += std::to_string(j) + ',' + std::to_string(r.per_cycle[j]) + ',' + std::to_string(r.false_positives[j]) +
               ',' + std::to_string(r.false_negatives[j]) + '\n';
    return out;
}

std::string table1_csv(const std::vector<Table1Cell>& cells) {
    std::string out = "d,beta,alpha,err,false_positives,false_negatives\n";
    for (const auto& c : cells) {
        const auto fp = std::accumulate(c.report.false_positives.begin(), c.report.false_positives.end(), 0LL);
        const auto fn = std::accumulate(c.report.false_negatives.begin(), c.report.false_negatives.end(), 0LL);
        out += std::to_string(c.d) + ',' + fmt(c.beta) + ',' + fmt(c.alpha) + ',' + fmt(c.report.err) + ',' +
               std::to_string(fp) + ',' + std::to_string(fn) + '\n';
    }
    return out;
}

std::string boundary_csv(const BoundaryReport& r) {
    std::string out = "multiplier,value,risk,skipped,note\n";
    for (const auto& row : r.rows)
        out += fmt(row.multiplier) + ',' + fmt(row.value) + ',' + (row.skipped ? "" : fmt(row.risk)) + ',' +
               (row.skipped ? "1" : "0") + ",\"" + row.note + "\"\n";
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content << std::flush;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidArgument("cannot write " + tmp);
        out << content;
        out.flush();
        if (!out) throw InvalidArgument("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw InvalidArgument("cannot move " + tmp + " to " + path + ": " + ec.message());
    }
}

}  // namespace sparsesel
