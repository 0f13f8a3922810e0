#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace daub {

enum class InterpolatorKind { Linear, MatchedHolder, CubicHermite, QuinticHermite, SepticHermite };

// Number of derivative grids (beyond the value grid) an interpolator reads.
constexpr int derivative_grids_required(InterpolatorKind kind) noexcept {
    switch (kind) {
    case InterpolatorKind::Linear: return 0;
    case InterpolatorKind::MatchedHolder: return 1;
    case InterpolatorKind::CubicHermite: return 1;
    case InterpolatorKind::QuinticHermite: return 2;
    case InterpolatorKind::SepticHermite: return 3;
    }
    return 0;
}

std::string_view to_string(InterpolatorKind kind) noexcept;
// Accepts the names produced by to_string ("linear", "matched-holder", "cubic-hermite", ...).
bool parse_interpolator(std::string_view name, InterpolatorKind& out) noexcept;

// Exponent used by matched Hölder interpolation. 0.5 turns the power into a
// square root; the true exponent for p=2 is 2 - ln(1+sqrt 3)/ln 2.
inline constexpr double kMatchedHolderAlpha = 0.5;
inline const double kHolderExponentP2 = 2.0 - std::log1p(std::sqrt(3.0)) / std::log(2.0);

// Equispaced table in "array of structs" layout: record i holds
// (y, y', y'', y''') at abscissa a + i*h, truncated to Arity entries.
template <class Real, std::size_t Arity>
class InterleavedTable {
public:
    using Record = std::array<Real, Arity>;

    InterleavedTable() = default;
    // h = 2^-refinement, so the scale factors below are exact.
    InterleavedTable(double left, int refinement, std::vector<Record> records)
        : left_(left), refinement_(refinement), h_(std::ldexp(1.0, -refinement)),
          inv_h_(std::ldexp(1.0, refinement)), records_(std::move(records)) {}

    double left() const noexcept { return left_; }
    double right() const noexcept { return left_ + static_cast<double>(records_.size() - 1) * h_; }
    int refinement() const noexcept { return refinement_; }
    double spacing() const noexcept { return h_; }
    double inverse_spacing() const noexcept { return inv_h_; }
    std::size_t size() const noexcept { return records_.size(); }
    const Record& operator[](std::size_t i) const noexcept { return records_[i]; }
    std::span<const Record> records() const noexcept { return records_; }
    std::size_t bytes() const noexcept { return records_.size() * sizeof(Record); }

private:
    double left_ = 0;
    int refinement_ = 0;
    double h_ = 1;
    double inv_h_ = 1;
    std::vector<Record> records_;
};

template <class Real>
struct Cell {
    std::size_t index;
    Real t;
};

// O(1) cell lookup. The caller guarantees left <= x <= right; the right
// endpoint maps to the last cell with t = 1. The cell coordinate is computed
// in the abscissa's type X and rounded once to Real, so a float table can be
// located with an exact double abscissa.
template <class Real, std::size_t Arity, class X>
Cell<Real> locate(const InterleavedTable<Real, Arity>& table, const X& x) {
    using std::floor;
    const X s = (x - X(table.left())) * X(table.inverse_spacing());
    const X fi = floor(s);
    const std::size_t last = table.size() - 2;
    std::size_t i = fi < X(0) ? 0 : static_cast<std::size_t>(static_cast<double>(fi));
    if (i > last) {
        i = last;
    }
    return {i, static_cast<Real>(s - X(static_cast<double>(i)))};
}

namespace interp {

template <class Real, std::size_t Arity, class X>
Real linear(const InterleavedTable<Real, Arity>& table, const X& x, std::size_t component = 0) {
    auto [i, t] = locate(table, x);
    const Real& y0 = table[i][component];
    const Real& y1 = table[i + 1][component];
    return y0 + t * (y1 - y0);
}

// Derivative of the piecewise-linear interpolant of component `component`.
template <class Real, std::size_t Arity, class X>
Real linear_slope(const InterleavedTable<Real, Arity>& table, const X& x, std::size_t component = 0) {
    auto [i, t] = locate(table, x);
    return (table[i + 1][component] - table[i][component]) * Real(table.inverse_spacing());
}

// --- cubic Hermite (records: y, v) -----------------------------------------

template <class Real, std::size_t Arity, class X>
Real cubic_hermite(const InterleavedTable<Real, Arity>& table, const X& x) {
    static_assert(Arity >= 2);
    auto [i, t] = locate(table, x);
    const auto& r0 = table[i];
    const auto& r1 = table[i + 1];
    const Real h = Real(table.spacing());
    const Real dy = r1[0] - r0[0];
    // y0 + t*(v0 h) + t^2*(3 dy - (2 v0 + v1) h) + t^3*((v0 + v1) h - 2 dy)
    const Real c1 = r0[1] * h;
    const Real c2 = Real(3) * dy - (Real(2) * r0[1] + r1[1]) * h;
    const Real c3 = (r0[1] + r1[1]) * h - Real(2) * dy;
    return r0[0] + t * (c1 + t * (c2 + t * c3));
}

template <class Real, std::size_t Arity, class X>
Real cubic_hermite_prime(const InterleavedTable<Real, Arity>& table, const X& x) {
    static_assert(Arity >= 2);
    auto [i, t] = locate(table, x);
    const auto& r0 = table[i];
    const auto& r1 = table[i + 1];
    const Real dy = (r1[0] - r0[0]) * Real(table.inverse_spacing());
    // 6t(1-t) dy/h + (3t^2 - 4t + 1) v0 + t(3t - 2) v1
    return Real(6) * t * (Real(1) - t) * dy + (t * (Real(3) * t - Real(4)) + Real(1)) * r0[1] +
           t * (Real(3) * t - Real(2)) * r1[1];
}

// --- quintic Hermite (records: y, v, acc) ----------------------------------

template <class Real, std::size_t Arity, class X>
Real quintic_hermite(const InterleavedTable<Real, Arity>& table, const X& x) {
    static_assert(Arity >= 3);
    auto [i, t] = locate(table, x);
    const auto& r0 = table[i];
    const auto& r1 = table[i + 1];
    const Real h = Real(table.spacing());
    const Real y0 = r0[0], y1 = r1[0];
    const Real v0 = r0[1] * h, v1 = r1[1] * h;
    const Real a0 = r0[2] * h * h / Real(2), a1 = r1[2] * h * h / Real(2);
    const Real dy = y1 - y0;
    // Basis expanded in powers of t and grouped by coefficient.
    const Real c3 = Real(10) * dy - Real(6) * v0 - Real(4) * v1 - Real(3) * a0 + a1;
    const Real c4 = Real(-15) * dy + Real(8) * v0 + Real(7) * v1 + Real(3) * a0 - Real(2) * a1;
    const Real c5 = Real(6) * dy - Real(3) * v0 - Real(3) * v1 - a0 + a1;
    return y0 + t * (v0 + t * (a0 + t * (c3 + t * (c4 + t * c5))));
}

template <class Real, std::size_t Arity, class X>
Real quintic_hermite_prime(const InterleavedTable<Real, Arity>& table, const X& x) {
    static_assert(Arity >= 3);
    auto [i, t] = locate(table, x);
    const auto& r0 = table[i];
    const auto& r1 = table[i + 1];
    const Real h = Real(table.spacing());
    const Real dy = (r1[0] - r0[0]) * Real(table.inverse_spacing());
    const Real t2 = t * t;
    return t2 * (Real(30) + t * (Real(-60) + t * Real(30))) * dy +
           (Real(1) + t2 * (Real(-18) + t * (Real(32) - t * Real(15)))) * r0[1] -
           t2 * (Real(12) + t * (Real(-28) + t * Real(15))) * r1[1] +
           h / Real(2) *
               (t * (Real(2) + t * (Real(-9) + t * (Real(12) - t * Real(5)))) * r0[2] +
                t2 * (Real(3) + t * (Real(-8) + t * Real(5))) * r1[2]);
}

template <class Real, std::size_t Arity, class X>
Real quintic_hermite_double_prime(const InterleavedTable<Real, Arity>& table, const X& x) {
    static_assert(Arity >= 3);
    auto [i, t] = locate(table, x);
    const auto& r0 = table[i];
    const auto& r1 = table[i + 1];
    const Real inv_h = Real(table.inverse_spacing());
    const Real dy = (r1[0] - r0[0]) * inv_h * inv_h;
    return t * (Real(60) + t * (Real(-180) + t * Real(120))) * dy +
           t * (Real(-36) + t * (Real(96) - t * Real(60))) * r0[1] * inv_h -
           t * (Real(24) + t * (Real(-84) + t * Real(60))) * r1[1] * inv_h +
           (Real(1) + t * (Real(-9) + t * (Real(18) - t * Real(10)))) * r0[2] +
           t * (Real(3) + t * (Real(-12) + t * Real(10))) * r1[2];
}

// --- septic Hermite (records: y, v, acc, jerk) -----------------------------

template <class Real, std::size_t Arity, class X>
Real septic_hermite(const InterleavedTable<Real, Arity>& table, const X& x) {
    static_assert(Arity >= 4);
    auto [i, t] = locate(table, x);
    const auto& r0 = table[i];
    const auto& r1 = table[i + 1];
    const Real h = Real(table.spacing());
    const Real y0 = r0[0], y1 = r1[0];
    const Real v0 = r0[1] * h, v1 = r1[1] * h;
    const Real a0 = r0[2] * h * h / Real(2), a1 = r1[2] * h * h / Real(2);
    const Real j0 = r0[3] * h * h * h / Real(6), j1 = r1[3] * h * h * h / Real(6);
    const Real dy = y1 - y0;
    const Real c4 = Real(35) * dy - Real(20) * v0 - Real(15) * v1 - Real(10) * a0 + Real(5) * a1 - Real(4) * j0 - j1;
    const Real c5 =
        Real(-84) * dy + Real(45) * v0 + Real(39) * v1 + Real(20) * a0 - Real(14) * a1 + Real(6) * j0 + Real(3) * j1;
    const Real c6 =
        Real(70) * dy - Real(36) * v0 - Real(34) * v1 - Real(15) * a0 + Real(13) * a1 - Real(4) * j0 - Real(3) * j1;
    const Real c7 = Real(-20) * dy + Real(10) * v0 + Real(10) * v1 + Real(4) * a0 - Real(4) * a1 + j0 + j1;
    return y0 + t * (v0 + t * (a0 + t * (j0 + t * (c4 + t * (c5 + t * (c6 + t * c7))))));
}

template <class Real, std::size_t Arity, class X>
Real septic_hermite_prime(const InterleavedTable<Real, Arity>& table, const X& x) {
    static_assert(Arity >= 4);
    auto [i, t] = locate(table, x);
    const auto& r0 = table[i];
    const auto& r1 = table[i + 1];
    const Real h = Real(table.spacing());
    const Real dy = (r1[0] - r0[0]) * Real(table.inverse_spacing());
    const Real t2 = t * t;
    const Real t3 = t2 * t;
    return Real(140) * t3 * (Real(1) + t * (Real(-3) + t * (Real(3) - t))) * dy +
           (Real(1) + t3 * (Real(-80) + t * (Real(225) + t * (Real(-216) + t * Real(70))))) * r0[1] +
           t3 * (Real(-60) + t * (Real(195) + t * (Real(-204) + t * Real(70)))) * r1[1] +
           t * h *
               ((Real(1) + t2 * (Real(-20) + t * (Real(50) + t * (Real(-45) + t * Real(14))))) * r0[2] +
                t2 * (Real(10) + t * (Real(-35) + t * (Real(39) - t * Real(14)))) * r1[2]) +
           t2 * h * h / Real(6) *
               ((Real(3) + t * (Real(-16) + t * (Real(30) + t * (Real(-24) + t * Real(7))))) * r0[3] +
                t * (Real(-4) + t * (Real(15) + t * (Real(-18) + t * Real(7)))) * r1[3]);
}

template <class Real, std::size_t Arity, class X>
Real septic_hermite_double_prime(const InterleavedTable<Real, Arity>& table, const X& x) {
    static_assert(Arity >= 4);
    auto [i, t] = locate(table, x);
    const auto& r0 = table[i];
    const auto& r1 = table[i + 1];
    const Real h = Real(table.spacing());
    const Real inv_h = Real(table.inverse_spacing());
    const Real dy = (r1[0] - r0[0]) * inv_h * inv_h;
    const Real t2 = t * t;
    return Real(420) * t2 * (Real(1) + t * (Real(-4) + t * (Real(5) - t * Real(2)))) * dy +
           Real(60) * t2 * (Real(-4) + t * (Real(15) + t * (Real(-18) + t * Real(7)))) * r0[1] * inv_h +
           Real(60) * t2 * (Real(-3) + t * (Real(13) + t * (Real(-17) + t * Real(7)))) * r1[1] * inv_h +
           (Real(1) + t2 * (Real(-60) + t * (Real(200) + t * (Real(-225) + t * Real(84))))) * r0[2] +
           t2 * (Real(30) + t * (Real(-140) + t * (Real(195) - t * Real(84)))) * r1[2] +
           t * (Real(1) + t * (Real(-8) + t * (Real(20) + t * (Real(-20) + t * Real(7))))) * r0[3] * h +
           t2 * (Real(-2) + t * (Real(10) + t * (Real(-15) + t * Real(7)))) * r1[3] * h;
}

// --- matched Hölder (records: y, v) ----------------------------------------
//
// On [x_i, x_{i+1}]: f = y_i + c1 t + c2 t^alpha, matching y_{i+1} and the
// derivative v_{i+1} at the right node while letting a root cusp open at x_i.

template <class Real>
Real holder_power(const Real& t, double alpha) {
    using std::pow;
    using std::sqrt;
    if (alpha == 0.5) {
        return sqrt(t);
    }
    return pow(t, alpha);
}

template <class Real, std::size_t Arity, class X>
Real matched_holder(const InterleavedTable<Real, Arity>& table, const X& x, double alpha = kMatchedHolderAlpha) {
    static_assert(Arity >= 2);
    auto [i, t] = locate(table, x);
    const auto& r0 = table[i];
    const auto& r1 = table[i + 1];
    const Real h = Real(table.spacing());
    const Real dy = r1[0] - r0[0];
    const Real vh = r1[1] * h;
    const Real inv = Real(1) / (Real(1) - Real(alpha));
    const Real c1 = (vh - Real(alpha) * dy) * inv;
    const Real c2 = (dy - vh) * inv;
    return r0[0] + c1 * t + c2 * holder_power(t, alpha);
}

// At t = 0 the one-sided derivative of the model is unbounded whenever
// c2 != 0; the stored node derivative is returned instead.
template <class Real, std::size_t Arity, class X>
Real matched_holder_prime(const InterleavedTable<Real, Arity>& table, const X& x,
                          double alpha = kMatchedHolderAlpha) {
    static_assert(Arity >= 2);
    auto [i, t] = locate(table, x);
    const auto& r0 = table[i];
    const auto& r1 = table[i + 1];
    if (t == Real(0)) {
        return r0[1];
    }
    const Real h = Real(table.spacing());
    const Real dy = r1[0] - r0[0];
    const Real vh = r1[1] * h;
    const Real inv = Real(1) / (Real(1) - Real(alpha));
    const Real c1 = (vh - Real(alpha) * dy) * inv;
    const Real c2 = (dy - vh) * inv;
    return (c1 + Real(alpha) * c2 * holder_power(t, alpha) / t) * Real(table.inverse_spacing());
}

}  // namespace interp
}  // namespace daub
