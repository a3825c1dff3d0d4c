// sparsesel: command-line front end for the extremal solver, the Fourier
// tables and the Monte Carlo experiments.
//
//   sparsesel extremal --k 2 --sigma 1 --eps 1e-4 --r 0.003
//   sparsesel rstar --d 10 --k 2 --sigma 1 --eps 1e-4 --beta 0.4
//   sparsesel fourier --g g4 --lmax 20
//   sparsesel fourier-product --ga g1 --gb g2 --s 50
//   sparsesel risk --config configs/risk_d10.conf --out json
//   sparsesel table1 --config configs/table1.conf
//   sparsesel boundary --config configs/boundary_k1.conf
//   sparsesel phase-vector --config configs/phase_vector.conf
//
// Results go to --output (default: standard output); progress goes to stderr.

#include "sparsesel/errors.hpp"
#include "sparsesel/harness.hpp"
#include "sparsesel/parallel.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>

using namespace sparsesel;

namespace {

void log_stderr(const std::string& msg) { std::cerr << "[sparsesel] " << msg << '\n'; }

ExperimentSpec load(const std::string& path, int threads) {
    ExperimentSpec base;
    base.threads = default_thread_count();
    ExperimentSpec s = load_config(path, base);
    if (threads > 0) s.threads = threads;
    return s;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse additive model selection: extremal sequences, chi-square selectors, risk experiments"};
    app.require_subcommand(1);

    int threads = 0;

    // extremal
    auto* ext = app.add_subcommand("extremal", "Solve the extremal problem at radius r");
    int ek = 2;
    double esigma = 1.0, eeps = 1e-4, er = 0.0;
    std::string emode = "exact";
    ext->add_option("--k", ek)->required();
    ext->add_option("--sigma", esigma)->required();
    ext->add_option("--eps", eeps)->required();
    ext->add_option("--r", er)->required();
    ext->add_option("--mode", emode)->check(CLI::IsMember({"exact", "asymptotic"}));

    // rstar
    auto* rst = app.add_subcommand("rstar", "Radius r* with a(r*) = (1 + sqrt(1 - beta)) sqrt(2 log C(d, k))");
    int rd = 10, rk = 2;
    double rsigma = 1.0, reps = 1e-4, rbeta = 0.5;
    std::string rmode = "asymptotic";
    rst->add_option("--d", rd)->required();
    rst->add_option("--k", rk)->required();
    rst->add_option("--sigma", rsigma)->required();
    rst->add_option("--eps", reps)->required();
    rst->add_option("--beta", rbeta)->required();
    rst->add_option("--mode", rmode)->check(CLI::IsMember({"exact", "asymptotic"}));

    // fourier
    auto* fou = app.add_subcommand("fourier", "Coefficients (g, phi_l) for 0 < |l| <= lmax");
    std::string fg = "g1";
    int flmax = 10;
    fou->add_option("--g", fg)->required();
    fou->add_option("--lmax", flmax)->required()->check(CLI::PositiveNumber);

    // fourier-product
    auto* fpr = app.add_subcommand("fourier-product", "Bivariate table theta_(l1,l2) = (ga, phi_l1)(gb, phi_l2)");
    std::string fa = "g1", fb = "g2";
    int fs = 10;
    fpr->add_option("--ga", fa)->required();
    fpr->add_option("--gb", fb)->required();
    fpr->add_option("--s", fs)->required()->check(CLI::PositiveNumber);

    std::string output = "-";
    for (auto* sub : {fou, fpr}) sub->add_option("--output,-o", output, "Output file");

    // experiments
    std::string config, out_format = "json";
    auto* risk = app.add_subcommand("risk", "Estimate the Hamming risk of the adaptive selector");
    auto* tab = app.add_subcommand("table1", "Risk grid over d and signal scale alpha (CSV)");
    auto* bnd = app.add_subcommand("boundary", "Risk of extremal signals of norm c r*");
    auto* phv = app.add_subcommand("phase-vector", "Risk of the vector-model selector around its boundary");
    for (auto* sub : {risk, tab, bnd, phv}) {
        sub->add_option("--config", config, "Flat key = value configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--output,-o", output, "Output file");
        sub->add_option("--threads", threads, "Worker threads (default: config, then SPARSESEL_THREADS, then all cores)")
            ->check(CLI::PositiveNumber);
    }
    for (auto* sub : {risk, bnd, phv}) sub->add_option("--out", out_format)->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ext) {
            const EllipsoidSpec spec(ek, esigma);
            const AMode mode = parse_amode(emode);
            double a, a0, T;
            std::size_t support;
            if (mode == AMode::exact) {
                const auto sol = solve_extremal_exact(er, spec, eeps);
                a = sol.a_value;
                a0 = sol.a0_sq;
                T = sol.cutoff;
                support = sol.profile.size();
            } else {
                a = a_asymptotic_fixed_k(er, spec, eeps);
                a0 = asymptotic_amplitude(er, spec);
                T = asymptotic_cutoff(er, spec);
                support = asymptotic_profile(er, spec).size();
            }
            std::printf("mode %s\na %.17g\na0_sq %.17g\ncutoff %.17g\nsupport %zu\n", emode.c_str(), a, a0, T,
                        support);
        } else if (*rst) {
            const EllipsoidSpec spec(rk, rsigma);
            const double target = selection_target(rbeta, log_binomial(rd, rk));
            const double r = solve_r_star(target, spec, reps, parse_amode(rmode));
            std::printf("target %.17g\nr_star %.17g\n", target, r);
        } else if (*fou) {
            const auto row = fourier_coefficients_1d(ComponentFunction::parse(fg), flmax);
            std::ostringstream os;
            os.precision(std::numeric_limits<double>::max_digits10);
            os << "# function " << row.id << "\nl coefficient\n";
            for (int l = -flmax; l <= flmax; ++l)
                if (l != 0) os << l << ' ' << row.at(l) << '\n';
            write_atomic(output, os.str());
        } else if (*fpr) {
            const auto table = fourier_table_product(ComponentFunction::parse(fa), ComponentFunction::parse(fb),
                                                     SubsetIndex({1, 2}), fs);
            std::ostringstream os;
            write_table(os, table);
            write_atomic(output, os.str());
        } else if (*risk) {
            const ExperimentSpec spec = load(config, threads);
            const RiskReport rep = run_risk_experiment(spec, log_stderr);
            log_stderr("wall time " + std::to_string(rep.wall_time) + " s");
            write_atomic(output, out_format == "csv" ? risk_csv(rep) : dump(to_json(rep, spec)));
        } else if (*tab) {
            const ExperimentSpec spec = load(config, threads);
            write_atomic(output, table1_csv(reproduce_table1(spec, spec.alphas, spec.ds, log_stderr)));
        } else if (*bnd) {
            const ExperimentSpec spec = load(config, threads);
            const auto rep = boundary_sweep(spec, spec.multipliers, log_stderr);
            write_atomic(output, out_format == "csv" ? boundary_csv(rep) : dump(to_json(rep)));
        } else if (*phv) {
            const ExperimentSpec spec = load(config, threads);
            const auto rep = phase_sweep_vector(spec.d, spec.k, spec.beta, spec.multipliers, spec.replicates,
                                                spec.seed, spec.kappa);
            write_atomic(output, out_format == "csv" ? boundary_csv(rep) : dump(to_json(rep)));
        }
    } catch (const Error& e) {
        std::cerr << "sparsesel: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
