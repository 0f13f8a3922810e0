#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "daub/evaluators.hpp"

namespace daub {

using RealFunction = std::function<double(double)>;

// --- quadrature -----------------------------------------------------------

struct QuadratureResult {
    double value = 0;
    double error = 0;
    bool converged = false;
    int levels = 0;  // adaptive_trapezoid: last level reached; cells: max bisection depth
    std::size_t evaluations = 0;
    std::size_t cells = 0;

    // Throws NonConvergence carrying value and error when not converged.
    double value_or_throw(std::string_view what = "quadrature") const;
};

struct TrapezoidOptions {
    double rel_tol = 1e-10;
    // When empty: rel_tol * (b - a) * max sampled |g|.
    std::optional<double> abs_tol;
    int min_levels = 4;
    int max_levels = 24;
};

// Trapezoid rule on [a, b] with 2^m panels for m = 0, 1, ..., reusing all
// previous samples. Stops when |I_m - I_{m-1}| <= max(rel_tol |I_m|, abs_tol).
QuadratureResult adaptive_trapezoid(const RealFunction& g, double a, double b, const TrapezoidOptions& options = {});

struct CellQuadratureOptions {
    double rel_tol = 1e-10;
    std::optional<double> abs_tol;
    // Panels per cell estimate: 2^cell_levels.
    int cell_levels = 5;
    int max_depth = 48;
    std::size_t max_evaluations = std::size_t{1} << 26;
    // Initial cells are split at multiples of this width (aligned to 0).
    double break_spacing = 1.0;
};

// Piecewise trapezoid: the interval is cut at multiples of break_spacing,
// each cell gets a fixed-level trapezoid estimate, and the cell with the
// largest error estimate is bisected until the summed estimate meets the
// tolerance. Handles cusps of interpolated wavelets and isolated
// singularities of the integrand.
QuadratureResult integrate_cells(const RealFunction& g, double a, double b, const CellQuadratureOptions& options = {});

// --- continuous wavelet transform ----------------------------------------

// sqrt|s| * integral over [1-p, p] of f(s u + t) psi(u) du.
QuadratureResult cwt(const RealFunction& f, const WaveletEvaluator<double>& psi, double s, double t,
                     const CellQuadratureOptions& options = {});

// --- test functions -------------------------------------------------------

double bumps(double x) noexcept;

struct NamedFunction {
    std::string name;
    RealFunction f;
    // Interval outside which f vanishes, when known.
    std::optional<std::pair<double, double>> interval;
};

// `bumps`, `sin_recip:a` (sin(a/x), 0 at x = 0), `const:c`, `poly:c0,c1,...`.
NamedFunction parse_named_function(std::string_view spec);

// --- wavelet series -------------------------------------------------------

enum class BasisKind : int { Phi = 0, Psi = 1 };

std::string_view to_string(BasisKind kind) noexcept;

struct CoefficientKey {
    BasisKind kind;
    int j;
    long long k;
    auto operator<=>(const CoefficientKey&) const = default;
};

// f ~ sum_k <f, phi_{j_max,k}> phi_{j_max,k} + sum_{j=j_min}^{j_max} sum_k <f, psi_jk> psi_jk
// with phi_jk(x) = 2^(-j/2) phi(2^-j x - k); more negative j is finer.
struct WaveletCoefficientSet {
    int p = 0;
    int j_min = 0;
    int j_max = 0;
    double tau = 0;
    std::map<CoefficientKey, double> entries;  // ascending (kind, j, k)

    std::size_t size() const noexcept { return entries.size(); }
    std::vector<double> values() const;
};

struct ExpansionOptions {
    CellQuadratureOptions quadrature{.rel_tol = 1e-8, .abs_tol = 1e-8};
    unsigned threads = 0;
    // Evaluators built with these options. Absolute mode: the series only
    // needs absolute accuracy.
    EvaluatorOptions evaluator{.mode = RefinementMode::Absolute};
};

struct ExpansionStats {
    std::size_t unconverged = 0;
    double max_error_estimate = 0;
};

// Coefficients of f, which vanishes outside [lo, hi], at every (kind, j, k)
// whose basis function overlaps (lo, hi).
WaveletCoefficientSet expansion_coefficients(const RealFunction& f, double lo, double hi, int p, int j_min, int j_max,
                                             const ExpansionOptions& options = {}, ExpansionStats* stats = nullptr);

WaveletCoefficientSet expansion_coefficients(const RealFunction& f, double lo, double hi,
                                             const ScalingEvaluator<double>& phi, const WaveletEvaluator<double>& psi,
                                             int j_min, int j_max, const ExpansionOptions& options = {},
                                             ExpansionStats* stats = nullptr);

// Drops entries with |c| <= tau.
WaveletCoefficientSet threshold(const WaveletCoefficientSet& set, double tau);

// (sqrt n - ||x||_1 / ||x||_2) / (sqrt n - 1); needs n >= 2 and x != 0.
double hoyer_sparsity(std::span<const double> values);

// Sum of the entries whose basis support contains x, in ascending
// (kind, j, k) order.
double series_eval(const WaveletCoefficientSet& set, double x, const ScalingEvaluator<double>& phi,
                   const WaveletEvaluator<double>& psi);

// Dense per-level index over a coefficient set for repeated evaluation.
class SparseSeries {
public:
    SparseSeries(const WaveletCoefficientSet& set, ScalingEvaluator<double> phi, WaveletEvaluator<double> psi);
    double operator()(double x) const;

private:
    struct Level {
        BasisKind kind;
        int j;
        long long k0;
        std::vector<double> coeffs;  // k0, k0 + 1, ...; absent entries hold 0
        std::vector<unsigned char> present;
    };
    int p_;
    std::vector<Level> levels_;
    ScalingEvaluator<double> phi_;
    WaveletEvaluator<double> psi_;
};

struct SparsityChoice {
    int p;
    double sparsity;
    WaveletCoefficientSet set;
};

// Expands f for every p in [p_lo, p_hi] and keeps the one whose coefficient
// vector has the largest Hoyer sparsity.
SparsityChoice choose_p_by_sparsity(const RealFunction& f, double lo, double hi, int p_lo, int p_hi, int j_min,
                                    int j_max, const ExpansionOptions& options = {});

}  // namespace daub
