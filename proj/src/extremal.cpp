#include "sparsesel/extremal.hpp"

#include "sparsesel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sparsesel {

namespace {

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw InvalidArgument(std::string(what) + " must be positive and finite");
}

// Lattice points with c_l < T, sorted by c ascending, remembering the
// lexicographic position so the support can be reported in lattice order.
struct ShellTable {
    std::vector<LatticeIndex> points;  // lexicographic
    std::vector<double> c;             // sorted ascending
    std::vector<std::size_t> order;    // c[i] belongs to points[order[i]]

    // Sums of (1 - (c/T)^2)_+ and c^2 (1 - (c/T)^2)_+.
    std::pair<long double, long double> sums(double T) const {
        long double num = 0.0L, den = 0.0L;
        for (double ci : c) {
            if (ci >= T) break;
            const long double q = static_cast<long double>(ci) / T;
            const long double w = 1.0L - q * q;
            num += w;
            den += static_cast<long double>(ci) * ci * w;
        }
        return {num, den};
    }

    double ratio(double T) const {
        auto [num, den] = sums(T);
        return den > 0.0L ? static_cast<double>(num / den) : 0.0;
    }
};

ShellTable shells_below(const EllipsoidSpec& spec, double T) {
    ShellTable t;
    // c_l < T  <=>  ||l|| < T^(1/sigma) / (2 pi)
    t.points = enumerate_ball(spec, std::pow(T, 1.0 / spec.sigma) / kTwoPi);
    std::vector<double> cl(t.points.size());
    for (std::size_t i = 0; i < t.points.size(); ++i)
        cl[i] = sobolev_coefficient(t.points[i], spec);
    t.order.resize(cl.size());
    std::iota(t.order.begin(), t.order.end(), std::size_t{0});
    std::stable_sort(t.order.begin(), t.order.end(),
                     [&](std::size_t a, std::size_t b) { return cl[a] < cl[b]; });
    t.c.resize(cl.size());
    for (std::size_t i = 0; i < cl.size(); ++i) t.c[i] = cl[t.order[i]];
    return t;
}

double log_fixed_k_amplitude(double r, const EllipsoidSpec& spec) {
    const double k = spec.k, s = spec.sigma;
    return (2.0 + k / s) * std::log(r) + k * std::log(2.0) + 0.5 * k * std::log(kPi) +
           std::log(k + 2.0 * s) + std::lgamma(1.0 + 0.5 * k) - std::log(2.0 * s) -
           (k / (2.0 * s)) * std::log1p(4.0 * s / k);
}

double log_growing_k_amplitude(double r, const EllipsoidSpec& spec) {
    const double k = spec.k, s = spec.sigma;
    return (2.0 + k / s) * std::log(r) + 0.5 * std::log(kPi) +
           0.5 * k * (std::log(kTwoPi * k) - 1.0) + 1.5 * std::log(k) - std::log(2.0 * s) - 2.0;
}

}  // namespace

std::string_view to_string(AMode mode) noexcept {
    return mode == AMode::exact ? "exact" : "asymptotic";
}

AMode parse_amode(std::string_view text) {
    if (text == "exact") return AMode::exact;
    if (text == "asymptotic") return AMode::asymptotic;
    throw InvalidArgument("mode must be 'exact' or 'asymptotic', got '" + std::string(text) + "'");
}

double ThetaProfile::sum() const noexcept {
    long double s = 0.0L;
    for (double v : theta_sq) s += v;
    return static_cast<double>(s);
}

double ThetaProfile::sum_sq() const noexcept {
    long double s = 0.0L;
    for (double v : theta_sq) s += static_cast<long double>(v) * v;
    return static_cast<double>(s);
}

double ThetaProfile::weighted_sum(const EllipsoidSpec& spec) const {
    long double s = 0.0L;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const double c = sobolev_coefficient(indices[i], spec);
        s += static_cast<long double>(c) * c * theta_sq[i];
    }
    return static_cast<double>(s);
}

ExtremalSolution solve_extremal_exact(double r, const EllipsoidSpec& spec, double eps) {
    require_positive(eps, "eps");
    require_positive(r, "r");
    const double c_min = min_sobolev_coefficient(spec);
    if (r * c_min >= 1.0)
        throw EmptyEllipsoid("r = " + std::to_string(r) + " is not below (2 pi)^-sigma k^-sigma/2 = " +
                             std::to_string(1.0 / c_min));

    const double r2 = r * r;
    // Grow the upper bracket until the ratio constraint falls below r^2;
    // the final table is reused for every bisection step.
    double hi = std::max(1.5 * c_min, 1.5 * std::sqrt(1.0 + 4.0 * spec.sigma / spec.k) / r);
    ShellTable table = shells_below(spec, hi);
    for (int grow = 0; table.ratio(hi) > r2; ++grow) {
        if (grow > 60) throw NumericError("could not bracket the extremal cutoff T");
        hi *= 2.0;
        table = shells_below(spec, hi);
    }

    // ratio(T) decreases from 1/c_min^2 (T -> c_min+) to 0; ratio(lo) > r^2 >= ratio(hi).
    double lo = c_min;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (table.ratio(mid) > r2)
            lo = mid;
        else
            hi = mid;
    }
    const double T = hi;
    const auto [num, den] = table.sums(T);
    if (!(den > 0.0L)) throw NumericError("degenerate extremal cutoff");

    ExtremalSolution sol;
    sol.spec = spec;
    sol.r = r;
    sol.eps = eps;
    sol.cutoff = T;
    sol.a0_sq = static_cast<double>(1.0L / den);

    std::vector<std::pair<std::size_t, double>> support;
    for (std::size_t i = 0; i < table.c.size() && table.c[i] < T; ++i) {
        const double q = table.c[i] / T;
        const double v = sol.a0_sq * (1.0 - q * q);
        if (v > 0.0) support.emplace_back(table.order[i], v);
    }
    std::sort(support.begin(), support.end());
    sol.profile.indices.reserve(support.size());
    sol.profile.theta_sq.reserve(support.size());
    for (auto& [pos, v] : support) {
        sol.profile.indices.push_back(std::move(table.points[pos]));
        sol.profile.theta_sq.push_back(v);
    }
    sol.a_value = a_from_profile(sol.profile, eps);
    return sol;
}

double a_from_profile(const ThetaProfile& profile, double eps) {
    require_positive(eps, "eps");
    return std::sqrt(0.5 * profile.sum_sq()) / (eps * eps);
}

double a_exact(const ExtremalSolution& solution) { return a_from_profile(solution.profile, solution.eps); }

double asymptotic_constant(const EllipsoidSpec& spec) {
    const double k = spec.k, s = spec.sigma;
    const double log_c2 = k * std::log(kPi) + std::log1p(2.0 * s / k) + std::lgamma(1.0 + 0.5 * k) -
                          (1.0 + k / (2.0 * s)) * std::log1p(4.0 * s / k) -
                          k * std::lgamma(1.5);
    return std::exp(0.5 * log_c2);
}

double a_asymptotic_fixed_k(double r, const EllipsoidSpec& spec, double eps) {
    require_positive(r, "r");
    require_positive(eps, "eps");
    const double p = 2.0 + spec.k / (2.0 * spec.sigma);
    return asymptotic_constant(spec) * std::pow(r, p) / (eps * eps);
}

double a_asymptotic_growing_k(double r, const EllipsoidSpec& spec, double eps) {
    require_positive(r, "r");
    require_positive(eps, "eps");
    const double k = spec.k;
    const double p = 2.0 + k / (2.0 * spec.sigma);
    const double log_a = 0.25 * k * (std::log(kTwoPi * k) - 1.0) - 1.0 + 0.25 * std::log(kPi * k) +
                         p * std::log(r) - 2.0 * std::log(eps);
    return std::exp(log_a);
}

double asymptotic_amplitude(double r, const EllipsoidSpec& spec, Regime regime) {
    require_positive(r, "r");
    return std::exp(regime == Regime::fixed_k ? log_fixed_k_amplitude(r, spec) : log_growing_k_amplitude(r, spec));
}

double asymptotic_cutoff(double r, const EllipsoidSpec& spec) {
    require_positive(r, "r");
    return std::sqrt(1.0 + 4.0 * spec.sigma / spec.k) / r;
}

double theta_star_asymptotic(const LatticeIndex& ell, double r, const EllipsoidSpec& spec,
                             Regime regime) {
    require_positive(r, "r");
    const double c = sobolev_coefficient(ell, spec);
    const double cut = 1.0 - c * c * r * r / (1.0 + 4.0 * spec.sigma / spec.k);
    if (cut <= 0.0) return 0.0;
    const double log_amp = regime == Regime::fixed_k ? log_fixed_k_amplitude(r, spec)
                                                     : log_growing_k_amplitude(r, spec);
    return std::exp(log_amp) * cut;
}

ThetaProfile asymptotic_profile(double r, const EllipsoidSpec& spec, Regime regime) {
    ThetaProfile p;
    for (auto& ell : enumerate_ball(spec, support_radius(r, spec))) {
        const double v = theta_star_asymptotic(ell, r, spec, regime);
        if (v > 0.0) {
            p.indices.push_back(std::move(ell));
            p.theta_sq.push_back(v);
        }
    }
    return p;
}

double WeightProfile::sum_sq() const noexcept {
    long double s = 0.0L;
    for (double w : weights) s += static_cast<long double>(w) * w;
    return static_cast<double>(s);
}

WeightProfile make_weights(const ThetaProfile& profile, double a, double eps, double r_star) {
    require_positive(a, "a");
    require_positive(eps, "eps");
    WeightProfile w;
    w.r_star = r_star;
    w.indices = profile.indices;
    w.weights.resize(profile.size());
    const double scale = 1.0 / (2.0 * eps * eps * a);
    for (std::size_t i = 0; i < profile.size(); ++i) w.weights[i] = profile.theta_sq[i] * scale;
    const double ss = w.sum_sq();
    if (!(ss > 0.0)) throw InvalidArgument("cannot build weights from an all-zero profile");
    const double fix = std::sqrt(0.5 / ss);
    for (double& x : w.weights) x *= fix;
    return w;
}

double selection_target(double beta, double log_binom) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidArgument("beta must lie in [0, 1]");
    if (!(log_binom > 0.0)) throw InvalidArgument("log C(d, k) must be positive");
    return (1.0 + std::sqrt(1.0 - beta)) * std::sqrt(2.0 * log_binom);
}

double solve_r_star(double target, const EllipsoidSpec& spec, double eps, AMode mode) {
    require_positive(target, "target");
    require_positive(eps, "eps");
    const double r_max = admissible_radius_bound(spec);
    const double p = 2.0 + spec.k / (2.0 * spec.sigma);
    const double r_asym = std::pow(target * eps * eps / asymptotic_constant(spec), 1.0 / p);

    if (mode == AMode::asymptotic) {
        if (!(r_asym < r_max))
            throw OutOfRange("target " + std::to_string(target) +
                             " needs r beyond the admissible range");
        return r_asym;
    }

    auto a_at = [&](double r) { return solve_extremal_exact(r, spec, eps).a_value; };
    const double r_top = r_max * (1.0 - 1e-12);
    double lo, hi;
    double guess = std::min(r_asym, 0.5 * r_max);
    if (a_at(guess) < target) {
        lo = guess;
        hi = r_top;
        if (a_at(hi) < target)
            throw OutOfRange("target " + std::to_string(target) +
                             " exceeds a(r) over the admissible range");
    } else {
        hi = guess;
        lo = 0.5 * guess;
        while (a_at(lo) >= target) {
            hi = lo;
            lo *= 0.5;
        }
    }
    for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-13; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (a_at(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return std::sqrt(lo * hi);
}

ThetaProfile extremal_profile(double r, const EllipsoidSpec& spec, double eps, AMode mode) {
    if (mode == AMode::exact) return solve_extremal_exact(r, spec, eps).profile;
    return asymptotic_profile(r, spec, Regime::fixed_k);
}

double a_value(double r, const EllipsoidSpec& spec, double eps, AMode mode) {
    if (mode == AMode::exact) return solve_extremal_exact(r, spec, eps).a_value;
    return a_asymptotic_fixed_k(r, spec, eps);
}

}  // namespace sparsesel
