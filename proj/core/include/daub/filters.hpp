#pragma once

#include <span>
#include <vector>

#include "daub/double_word.hpp"

namespace daub {

inline constexpr int kMinOrder = 2;
inline constexpr int kMaxOrder = 19;

// Throws UnsupportedOrder unless kMinOrder <= p <= kMaxOrder.
void check_order(int p);

// The 2p filter coefficients c_0..c_{2p-1} of the Daubechies scaling function
// with p vanishing moments, normalized so that sum c_k = 2, i.e.
//     phi(x) = sum_k c_k phi(2x - k).
struct FilterBank {
    int p = 0;
    std::vector<DoubleWord> coeffs;

    std::size_t size() const noexcept { return coeffs.size(); }

    // Coefficients rounded once to Real.
    template <class Real>
    std::vector<Real> as() const {
        std::vector<Real> out;
        out.reserve(coeffs.size());
        for (const auto& c : coeffs) {
            out.push_back(round_to<Real>(c));
        }
        return out;
    }
};

FilterBank filter_coefficients(int p);

// Largest residual of each FilterBank invariant, computed in double-word.
struct FilterDiagnostics {
    double sum = 0;               // |sum c_k - 2|
    double even_sum = 0;          // |sum c_{2k} - 1|
    double odd_sum = 0;           // |sum c_{2k+1} - 1|
    double orthonormality = 0;    // max_m |sum c_k c_{k+2m} - 2 delta_m0|
    double vanishing_moments = 0; // max_m |sum (-1)^k k^m c_k| / sum |k^m c_k|
    bool length_ok = false;

    double max_residual() const noexcept;
};

FilterDiagnostics verify_filter(const FilterBank& bank);

// Threshold used for the invariant checks: 2^-(106 - 8).
double filter_residual_tolerance() noexcept;

}  // namespace daub
