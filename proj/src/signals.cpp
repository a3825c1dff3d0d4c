#include "sparsesel/signals.hpp"

#include "sparsesel/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace sparsesel {

namespace {

constexpr int kGaussOrder = 20;
constexpr std::size_t kMaxPanels = std::size_t{1} << 24;

// Gauss-Legendre nodes and weights mapped to [0, 1].
struct UnitRule {
    std::array<double, kGaussOrder> x{}, w{};
    UnitRule() {
        using Rule = boost::math::quadrature::gauss<double, kGaussOrder>;
        const auto& xa = Rule::abscissa();
        const auto& wa = Rule::weights();
        const std::size_t half = xa.size();
        for (std::size_t i = 0; i < half; ++i) {
            x[i] = 0.5 * (1.0 - xa[i]);
            x[kGaussOrder - 1 - i] = 0.5 * (1.0 + xa[i]);
            w[i] = w[kGaussOrder - 1 - i] = 0.5 * wa[i];
        }
    }
};

const UnitRule& unit_rule() {
    static const UnitRule rule;
    return rule;
}

double snap(double v) { return std::abs(v) < kZeroSnap ? 0.0 : v; }

double basis(int l, double t) {
    return l > 0 ? std::sqrt(2.0) * std::cos(kTwoPi * l * t)
                 : std::sqrt(2.0) * std::sin(kTwoPi * (-l) * t);
}

// Composite rule over [a, b] split into n equal panels.
template <class F>
double composite(F&& f, double a, double b, std::size_t n) {
    const auto& rule = unit_rule();
    const double h = (b - a) / static_cast<double>(n);
    long double total = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
        const double left = a + h * static_cast<double>(j);
        double panel = 0.0;
        for (int i = 0; i < kGaussOrder; ++i) panel += rule.w[i] * f(left + h * rule.x[i]);
        total += panel;
    }
    return static_cast<double>(total) * h;
}

// Panel doubling on each smooth piece until successive estimates agree.
template <class F>
double integrate_adaptive(F&& f, const std::vector<double>& breaks, int frequency) {
    long double total = 0.0L;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double a = breaks[p], b = breaks[p + 1];
        std::size_t n = std::max<std::size_t>(
            2, static_cast<std::size_t>(std::ceil(2.0 * std::abs(frequency) * (b - a))));
        double prev = composite(f, a, b, n);
        while (true) {
            n *= 2;
            if (n > kMaxPanels) throw NumericError("quadrature did not converge");
            const double next = composite(f, a, b, n);
            const bool done = std::abs(next - prev) < kQuadratureTol / static_cast<double>(breaks.size());
            prev = next;
            if (done) break;
        }
        total += prev;
    }
    return static_cast<double>(total);
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};
struct PlanDestroy {
    void operator()(fftw_plan p) const noexcept { fftw_destroy_plan(p); }
};
using PlanPtr = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDestroy>;

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& fftw_planner_mutex() {
    static std::mutex mu;
    return mu;
}

// For N panels, returns int_0^1 g(t) e^{-2 pi i l t} dt for l = 0..lmax by the
// composite Gauss-Legendre rule: the sum over panels is a length-N DFT per node.
std::vector<std::complex<double>> panel_transform(const ComponentFunction& g, int lmax,
                                                  std::size_t n_panels) {
    const auto& rule = unit_rule();
    const int n = static_cast<int>(n_panels);
    const int n_out = n / 2 + 1;
    std::unique_ptr<double, FftwFree> in(
        static_cast<double*>(fftw_malloc(sizeof(double) * n_panels * kGaussOrder)));
    std::unique_ptr<fftw_complex, FftwFree> out(static_cast<fftw_complex*>(
        fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n_out) * kGaussOrder)));
    if (!in || !out) throw ResourceLimit("fftw allocation failed");

    PlanPtr plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan.reset(fftw_plan_many_dft_r2c(1, &n, kGaussOrder, in.get(), nullptr, 1, n, out.get(),
                                          nullptr, 1, n_out, FFTW_ESTIMATE));
    }
    if (!plan) throw NumericError("fftw planning failed");

    const double inv_n = 1.0 / static_cast<double>(n_panels);
    for (int i = 0; i < kGaussOrder; ++i)
        for (int j = 0; j < n; ++j)
            in.get()[static_cast<std::size_t>(i) * n_panels + j] =
                rule.w[i] * g.value_unchecked((j + rule.x[i]) * inv_n) * inv_n;
    fftw_execute(plan.get());

    std::vector<std::complex<double>> c(static_cast<std::size_t>(lmax) + 1);
    for (int l = 0; l <= lmax; ++l) {
        std::complex<double> acc = 0.0;
        for (int i = 0; i < kGaussOrder; ++i) {
            const fftw_complex& h = out.get()[static_cast<std::size_t>(i) * n_out + l];
            acc += std::polar(1.0, -kTwoPi * l * rule.x[i] * inv_n) * std::complex<double>(h[0], h[1]);
        }
        c[l] = acc;
    }
    return c;
}

double catalogue_value(Catalogue id, double t) noexcept {
    switch (id) {
        case Catalogue::g1:
            return t * t * (std::pow(2.0, t - 1.0) - (t - 0.5) * (t - 0.5)) * std::exp(t) - 0.5424;
        case Catalogue::g2:
            return t * t * (std::pow(2.0, t - 1.0) - std::pow(t - 1.0, 5)) - 0.2887;
        case Catalogue::g3:
            return 15.0 * t * t * std::pow(2.0, t - 1.0) * std::cos(15.0 * t) - 0.5011;
        case Catalogue::g4:
            return t - 0.5;
        case Catalogue::g5:
            return 5.0 * std::pow(t - 0.7, 3) + 0.29;
    }
    return 0.0;
}

}  // namespace

double eval_g(Catalogue id, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("catalogue functions live on [0, 1]");
    return catalogue_value(id, t);
}

ComponentFunction ComponentFunction::catalogue(Catalogue id) {
    ComponentFunction f;
    f.cat_ = id;
    f.id_ = "g" + std::to_string(static_cast<int>(id) + 1);
    return f;
}

ComponentFunction ComponentFunction::parse(std::string_view id) {
    static constexpr std::array<std::string_view, 5> names{"g1", "g2", "g3", "g4", "g5"};
    for (std::size_t i = 0; i < names.size(); ++i)
        if (id == names[i]) return catalogue(static_cast<Catalogue>(i));
    throw InvalidArgument("unknown catalogue function '" + std::string(id) + "'");
}

ComponentFunction ComponentFunction::tabulated(std::vector<double> t, std::vector<double> v,
                                               std::string name) {
    if (t.size() < 2 || t.size() != v.size())
        throw InvalidArgument("tabulated function needs >= 2 matching (t, value) pairs");
    if (t.front() != 0.0 || t.back() != 1.0)
        throw InvalidArgument("tabulated grid must span exactly [0, 1]");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw InvalidArgument("tabulated grid must be strictly increasing");
    ComponentFunction f;
    f.id_ = std::move(name);
    f.grid_ = std::move(t);
    f.values_ = std::move(v);
    return f;
}

double ComponentFunction::value_unchecked(double t) const noexcept {
    if (grid_.empty()) return catalogue_value(cat_, t);
    auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    if (it == grid_.begin()) return values_.front();
    if (it == grid_.end()) return values_.back();
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
    const double s = (t - grid_[i - 1]) / (grid_[i] - grid_[i - 1]);
    return values_[i - 1] + s * (values_[i] - values_[i - 1]);
}

double ComponentFunction::operator()(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("component functions live on [0, 1]");
    return value_unchecked(t);
}

std::vector<double> ComponentFunction::breakpoints() const {
    if (grid_.empty()) return {0.0, 1.0};
    return grid_;
}

double fourier_coefficient_1d(const ComponentFunction& g, int l) {
    if (l == 0) throw InvalidArgument("fourier_coefficient_1d requires l != 0");
    auto integrand = [&](double t) { return g.value_unchecked(t) * basis(l, t); };
    return snap(integrate_adaptive(integrand, g.breakpoints(), l));
}

CoefficientRow fourier_coefficients_1d(const ComponentFunction& g, int lmax) {
    if (lmax < 1) throw InvalidArgument("lmax must be >= 1");
    CoefficientRow row;
    row.id = g.id();
    row.lmax = lmax;
    row.values.assign(2 * static_cast<std::size_t>(lmax) + 1, 0.0);

    if (!g.is_catalogue()) {
        for (int l = 1; l <= lmax; ++l) {
            row.values[lmax + l] = fourier_coefficient_1d(g, l);
            row.values[lmax - l] = fourier_coefficient_1d(g, -l);
        }
        return row;
    }

    std::size_t n = 16;
    while (n < 2 * static_cast<std::size_t>(lmax)) n *= 2;
    auto prev = panel_transform(g, lmax, n);
    while (true) {
        n *= 2;
        if (n > kMaxPanels) throw NumericError("batched quadrature did not converge");
        auto next = panel_transform(g, lmax, n);
        double diff = 0.0;
        for (int l = 1; l <= lmax; ++l) diff = std::max(diff, std::sqrt(2.0) * std::abs(next[l] - prev[l]));
        prev = std::move(next);
        if (diff < kQuadratureTol) break;
    }
    for (int l = 1; l <= lmax; ++l) {
        row.values[lmax + l] = snap(std::sqrt(2.0) * prev[l].real());
        row.values[lmax - l] = snap(-std::sqrt(2.0) * prev[l].imag());
    }
    return row;
}

std::shared_ptr<const CoefficientRow> CoefficientCache::row(const ComponentFunction& g, int lmax) {
    {
        std::lock_guard lock(mu_);
        auto it = rows_.find(g.id());
        if (it != rows_.end() && it->second->lmax >= lmax) return it->second;
    }
    auto fresh = std::make_shared<const CoefficientRow>(fourier_coefficients_1d(g, lmax));
    std::lock_guard lock(mu_);
    auto& slot = rows_[g.id()];
    if (!slot || slot->lmax < lmax) slot = fresh;
    return slot;
}

bool check_zero_mean(const ComponentFunction& g, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    auto f = [&](double t) { return g.value_unchecked(t); };
    return std::abs(integrate_adaptive(f, g.breakpoints(), 1)) <= tol;
}

FourierTable::FourierTable(SubsetIndex subset, int truncation, std::vector<std::string> factor_ids,
                           std::vector<std::pair<LatticeIndex, double>> entries)
    : subset_(std::move(subset)),
      truncation_(truncation),
      factor_ids_(std::move(factor_ids)),
      entries_(std::move(entries)) {
    if (truncation_ < 1) throw InvalidArgument("truncation s must be >= 1");
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& ell = entries_[i].first;
        if (ell.size() != subset_.size())
            throw InvalidArgument("table entry " + ell.to_string() + " has the wrong dimension");
        for (int c : ell.coords())
            if (c > truncation_ || c < -truncation_)
                throw InvalidArgument("table entry " + ell.to_string() + " exceeds truncation");
        if (i && entries_[i - 1].first == ell)
            throw InvalidArgument("duplicate table entry " + ell.to_string());
    }
}

double FourierTable::value(const LatticeIndex& ell) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), ell,
                               [](const auto& e, const LatticeIndex& x) { return e.first < x; });
    return (it != entries_.end() && it->first == ell) ? it->second : 0.0;
}

FourierTable fourier_table_product(const ComponentFunction& a, const ComponentFunction& b,
                                   const SubsetIndex& subset, int s, CoefficientCache* cache) {
    if (subset.size() != 2) throw InvalidArgument("product tables are bivariate (k = 2)");
    if (s < 1) throw InvalidArgument("truncation s must be >= 1");
    std::shared_ptr<const CoefficientRow> ra, rb;
    if (cache) {
        ra = cache->row(a, s);
        rb = cache->row(b, s);
    } else {
        ra = std::make_shared<const CoefficientRow>(fourier_coefficients_1d(a, s));
        rb = a.id() == b.id() ? ra : std::make_shared<const CoefficientRow>(fourier_coefficients_1d(b, s));
    }
    std::vector<std::pair<LatticeIndex, double>> entries;
    entries.reserve(4 * static_cast<std::size_t>(s) * s);
    for (int l1 = -s; l1 <= s; ++l1) {
        if (l1 == 0) continue;
        const double x = ra->at(l1);
        for (int l2 = -s; l2 <= s; ++l2) {
            if (l2 == 0) continue;
            entries.emplace_back(LatticeIndex({l1, l2}), snap(x * rb->at(l2)));
        }
    }
    return FourierTable(subset, s, {a.id(), b.id()}, std::move(entries));
}

Norms norms(const FourierTable& table, const EllipsoidSpec& spec) {
    long double l2 = 0.0L, sob = 0.0L;
    for (const auto& [ell, th] : table.entries()) {
        const double c = sobolev_coefficient(ell, spec);
        l2 += static_cast<long double>(th) * th;
        sob += static_cast<long double>(th) * th * c * c;
    }
    return {std::sqrt(static_cast<double>(l2)), std::sqrt(static_cast<double>(sob))};
}

FourierTable scale_component(const FourierTable& table, double alpha) {
    auto entries = table.entries();
    for (auto& e : entries) e.second *= alpha;
    return FourierTable(table.subset(), table.truncation(), table.factor_ids(), std::move(entries));
}

void write_table(std::ostream& os, const FourierTable& table,
                 const std::vector<std::pair<std::string, std::string>>& extra_header) {
    os << "# subset " << table.subset().to_string() << '\n';
    os << "# truncation " << table.truncation() << '\n';
    os << "# factors";
    for (const auto& f : table.factor_ids()) os << ' ' << f;
    os << '\n';
    for (const auto& [key, value] : extra_header) os << "# " << key << ' ' << value << '\n';
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& [ell, th] : table.entries()) {
        for (int c : ell.coords()) os << c << ' ';
        os << th << '\n';
    }
}

FourierTable read_table(std::istream& is) {
    std::vector<int> members;
    int truncation = 0;
    std::vector<std::string> factors;
    std::vector<std::pair<LatticeIndex, double>> entries;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (line[0] == '#') {
            std::string hash, key;
            ls >> hash >> key;
            if (key == "subset") {
                std::string rest;
                ls >> rest;
                for (char& ch : rest)
                    if (ch == '{' || ch == '}' || ch == ',') ch = ' ';
                std::istringstream ms(rest);
                for (int m; ms >> m;) members.push_back(m);
            } else if (key == "truncation") {
                ls >> truncation;
            } else if (key == "factors") {
                for (std::string f; ls >> f;) factors.push_back(f);
            }
            continue;
        }
        if (members.empty()) throw InvalidArgument("table body before '# subset' header");
        std::vector<int> coords(members.size());
        double th = 0.0;
        for (int& c : coords) ls >> c;
        ls >> th;
        if (!ls) throw InvalidArgument("malformed table line: " + line);
        entries.emplace_back(LatticeIndex(std::move(coords)), th);
    }
    return FourierTable(SubsetIndex(std::move(members)), truncation, std::move(factors),
                        std::move(entries));
}

double SparseSignal::value(const SubsetIndex& u, const LatticeIndex& ell) const {
    auto it = components.find(u);
    return it == components.end() ? 0.0 : it->second.value(ell);
}

}  // namespace sparsesel
