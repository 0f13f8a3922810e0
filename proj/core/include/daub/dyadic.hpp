#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "daub/defaults.hpp"
#include "daub/double_word.hpp"
#include "daub/filters.hpp"

namespace daub {

enum class FunctionKind : std::uint64_t { Scaling = 0, Wavelet = 1 };

std::string_view to_string(FunctionKind kind) noexcept;

struct Support {
    double a;
    double b;
};

constexpr Support scaling_support(int p) noexcept { return {0.0, 2.0 * p - 1.0}; }
constexpr Support wavelet_support(int p) noexcept { return {1.0 - p, static_cast<double>(p)}; }
constexpr Support support_of(FunctionKind kind, int p) noexcept {
    return kind == FunctionKind::Scaling ? scaling_support(p) : wavelet_support(p);
}

// (2p - 1) * 2^j + 1
std::size_t grid_length(int p, int j);

// Values of phi^(n) or psi^(n) at a + m 2^-j, m = 0..(2p-1) 2^j.
template <class Real>
struct DyadicGrid {
    int p = 0;
    FunctionKind kind = FunctionKind::Scaling;
    int n = 0;
    int j = 0;
    std::vector<Real> values;

    Support support() const noexcept { return support_of(kind, p); }
    std::size_t size() const noexcept { return values.size(); }
    double spacing() const noexcept { return std::ldexp(1.0, -j); }
    double abscissa(std::size_t m) const noexcept { return support().a + std::ldexp(static_cast<double>(m), -j); }
};

struct BuildOptions {
    std::size_t byte_budget = kDefaultByteBudget;
    // 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

// Peak bytes held while building one grid of the given kind.
std::size_t grid_build_bytes(int p, int j, FunctionKind kind, std::size_t value_size);

// Throws DerivativeUnavailable when n exceeds max_derivative_order(p).
void check_derivative_order(int p, int n);

// phi^(n) at 0, 1, ..., 2p-1: the eigenvector of L_jk = c_{2j-k} with
// eigenvalue 2^-n, normalized so that
//     n = 0:  sum_k phi(k) = 1
//     n > 0:  sum_k k^n phi^(n)(k) = (-1)^n n!
// Unlike the build functions this does not consult the capability table, so
// tests can probe any n.
template <class Real>
std::vector<Real> integer_grid(const FilterBank& bank, int n);

// One level finer: even points are copied, odd points use the two-scale sum.
template <class Real>
DyadicGrid<Real> refine(const DyadicGrid<Real>& grid, const FilterBank& bank, unsigned threads = 0);

template <class Real>
DyadicGrid<Real> build_scaling_grid(int p, int j_max, int n, const BuildOptions& options = {});

template <class Real>
DyadicGrid<Real> build_wavelet_grid(int p, int j_max, int n, const BuildOptions& options = {});

// psi^(n) on the grid of `phi`, which must be a scaling grid.
template <class Real>
DyadicGrid<Real> wavelet_from_scaling(const DyadicGrid<Real>& phi, const FilterBank& bank, unsigned threads = 0);

// Every 2^(J - j)-th value of a level-J grid.
template <class Real>
DyadicGrid<Real> subsample(const DyadicGrid<Real>& grid, int j);

// Residuals of the DyadicGrid invariants (in double).
struct GridValidation {
    bool length_ok = false;
    double boundary = 0;       // max |value| at the two endpoints
    double normalization = 0;  // scaling grids only; 0 otherwise
    double two_scale = 0;      // max residual at level-(j-1) points, relative to max |value|
    double max_abs = 0;
};

template <class Real>
GridValidation validate_grid(const DyadicGrid<Real>& grid, const FilterBank& bank);

}  // namespace daub
