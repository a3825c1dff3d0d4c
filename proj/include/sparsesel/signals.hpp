#pragma once

// Test-function catalogue on [0, 1], Fourier analysis against the
// trigonometric basis phi_l (sqrt(2) cos(2 pi l t) for l > 0,
// sqrt(2) sin(2 pi |l| t) for l < 0), and bivariate product tables.

#include "sparsesel/lattice.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sparsesel {

enum class Catalogue { g1, g2, g3, g4, g5 };

/// Catalogue members evaluated exactly as printed, centering constants included.
double eval_g(Catalogue id, double t);

/// A univariate function on [0, 1]: a catalogue member or a piecewise-linear table.
class ComponentFunction {
public:
    static ComponentFunction catalogue(Catalogue id);
    static ComponentFunction parse(std::string_view id);  // "g1".."g5"
    /// Piecewise-linear interpolant through (t_i, v_i); t must start at 0,
    /// end at 1 and be strictly increasing.
    static ComponentFunction tabulated(std::vector<double> t, std::vector<double> v,
                                       std::string name = "tabulated");

    /// Throws InvalidArgument outside [0, 1].
    double operator()(double t) const;

    const std::string& id() const noexcept { return id_; }
    bool is_catalogue() const noexcept { return grid_.empty(); }
    Catalogue catalogue_id() const noexcept { return cat_; }

    /// Points where the function may be non-smooth; always contains 0 and 1.
    std::vector<double> breakpoints() const;

    double value_unchecked(double t) const noexcept;

private:
    ComponentFunction() = default;
    Catalogue cat_ = Catalogue::g1;
    std::string id_;
    std::vector<double> grid_, values_;
};

/// Quadrature tolerance on successive panel-doubling estimates.
inline constexpr double kQuadratureTol = 1e-9;

/// Coefficients with |value| below this are stored as exact zeros.
inline constexpr double kZeroSnap = 1e-14;

/// (g, phi_l) by composite 20-point Gauss-Legendre with panel doubling.
/// Throws InvalidArgument for l == 0 and NumericError on non-convergence.
double fourier_coefficient_1d(const ComponentFunction& g, int l);

/// All (g, phi_l) for 0 < |l| <= lmax, indexed as values[l + lmax].
struct CoefficientRow {
    std::string id;
    int lmax = 0;
    std::vector<double> values;

    double at(int l) const { return (l == 0 || l > lmax || l < -lmax) ? 0.0 : values[l + lmax]; }
};

/// Same quadrature rule as fourier_coefficient_1d, evaluated for every
/// frequency at once (FFT over panels) for catalogue members.
CoefficientRow fourier_coefficients_1d(const ComponentFunction& g, int lmax);

/// Thread-safe memo of coefficient rows keyed by function id.
class CoefficientCache {
public:
    std::shared_ptr<const CoefficientRow> row(const ComponentFunction& g, int lmax);

private:
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const CoefficientRow>> rows_;
};

/// |int_0^1 g| <= tol.
bool check_zero_mean(const ComponentFunction& g, double tol);

/// Fourier coefficients theta_l(u) of one component, sorted by l.
class FourierTable {
public:
    FourierTable() = default;
    FourierTable(SubsetIndex subset, int truncation, std::vector<std::string> factor_ids,
                 std::vector<std::pair<LatticeIndex, double>> entries);

    const SubsetIndex& subset() const noexcept { return subset_; }
    int truncation() const noexcept { return truncation_; }
    const std::vector<std::string>& factor_ids() const noexcept { return factor_ids_; }
    const std::vector<std::pair<LatticeIndex, double>>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// theta_l(u), zero when l is not stored.
    double value(const LatticeIndex& ell) const;

private:
    SubsetIndex subset_;
    int truncation_ = 0;
    std::vector<std::string> factor_ids_;
    std::vector<std::pair<LatticeIndex, double>> entries_;
};

/// theta_(l1,l2)(u) = (a, phi_l1) (b, phi_l2) for all nonzero |l1|, |l2| <= s.
FourierTable fourier_table_product(const ComponentFunction& a, const ComponentFunction& b,
                                   const SubsetIndex& subset, int s,
                                   CoefficientCache* cache = nullptr);

struct Norms {
    double l2 = 0.0;
    double sobolev = 0.0;
};

/// (sqrt sum theta^2, sqrt sum c^2 theta^2) over stored entries.
Norms norms(const FourierTable& table, const EllipsoidSpec& spec);

FourierTable scale_component(const FourierTable& table, double alpha);

/// Columnar text: '#' header lines (subset, truncation, factors, extras),
/// then one "l1 ... lk theta" line per entry.
void write_table(std::ostream& os, const FourierTable& table,
                 const std::vector<std::pair<std::string, std::string>>& extra_header = {});
FourierTable read_table(std::istream& is);

/// Active components keyed by subset; subsets without a table carry zero signal.
struct SparseSignal {
    int d = 0;
    int k = 0;
    std::map<SubsetIndex, FourierTable> components;

    double value(const SubsetIndex& u, const LatticeIndex& ell) const;
};

}  // namespace sparsesel
