#include "daub/filters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

#include "daub/errors.hpp"

namespace daub {
namespace {

struct Pair {
    double hi;
    double lo;
};

#include "filter_tables.inc"

std::span<const Pair> table_for(int p) {
    switch (p) {
    case 2: return kFilter2;
    case 3: return kFilter3;
    case 4: return kFilter4;
    case 5: return kFilter5;
    case 6: return kFilter6;
    case 7: return kFilter7;
    case 8: return kFilter8;
    case 9: return kFilter9;
    case 10: return kFilter10;
    case 11: return kFilter11;
    case 12: return kFilter12;
    case 13: return kFilter13;
    case 14: return kFilter14;
    case 15: return kFilter15;
    case 16: return kFilter16;
    case 17: return kFilter17;
    case 18: return kFilter18;
    case 19: return kFilter19;
    default: throw UnsupportedOrder(p);
    }
}

double magnitude(DoubleWord x) { return std::abs(double(x)); }

}  // namespace

void check_order(int p) {
    if (p < kMinOrder || p > kMaxOrder) {
        throw UnsupportedOrder(p);
    }
}

FilterBank filter_coefficients(int p) {
    check_order(p);
    FilterBank bank;
    bank.p = p;
    for (const auto& [hi, lo] : table_for(p)) {
        bank.coeffs.push_back(DoubleWord::from_parts(hi, lo));
    }
    return bank;
}

double FilterDiagnostics::max_residual() const noexcept {
    return std::max({sum, even_sum, odd_sum, orthonormality, vanishing_moments});
}

double filter_residual_tolerance() noexcept { return std::ldexp(1.0, -(precision_traits<DoubleWord>::digits - 8)); }

FilterDiagnostics verify_filter(const FilterBank& bank) {
    FilterDiagnostics d;
    const auto& c = bank.coeffs;
    const int n = static_cast<int>(c.size());
    d.length_ok = n == 2 * bank.p;

    DoubleWord total{0.0}, even{0.0}, odd{0.0};
    for (int k = 0; k < n; ++k) {
        total += c[k];
        (k % 2 == 0 ? even : odd) += c[k];
    }
    d.sum = magnitude(total - 2.0);
    d.even_sum = magnitude(even - 1.0);
    d.odd_sum = magnitude(odd - 1.0);

    for (int m = 0; 2 * m < n; ++m) {
        DoubleWord s{0.0};
        for (int k = 0; k + 2 * m < n; ++k) {
            s += c[k] * c[k + 2 * m];
        }
        d.orthonormality = std::max(d.orthonormality, magnitude(m == 0 ? s - 2.0 : s));
    }

    for (int m = 0; m < bank.p; ++m) {
        DoubleWord s{0.0};
        double scale = 0;
        for (int k = 0; k < n; ++k) {
            DoubleWord km{1.0};
            for (int i = 0; i < m; ++i) {
                km = km * static_cast<double>(k);
            }
            DoubleWord term = km * c[k];
            s += (k % 2 == 0) ? term : -term;
            scale += magnitude(term);
        }
        if (scale > 0) {
            d.vanishing_moments = std::max(d.vanishing_moments, magnitude(s) / scale);
        }
    }
    return d;
}

}  // namespace daub
