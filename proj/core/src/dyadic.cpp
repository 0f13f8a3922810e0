#include "daub/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "daub/detail/parallel.hpp"
#include "daub/errors.hpp"

namespace daub {
namespace {

template <class Real>
double mag(const Real& x) {
    return std::abs(static_cast<double>(x));
}

// Matrix stored row-major, N x N.
template <class Real>
struct Square {
    std::size_t n;
    std::vector<Real> a;
    Real& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
};

template <class Real>
std::vector<Real> null_vector(const FilterBank& bank, int n) {
    const int p = bank.p;
    const std::size_t N = static_cast<std::size_t>(2 * p - 2);
    const auto c = bank.as<Real>();
    const Real lambda = Real(std::ldexp(1.0, -n));

    Square<Real> m{N, std::vector<Real>(N * N, Real(0))};
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t k = 0; k < N; ++k) {
            // Interior integers are 1..2p-2, so L_{jk} = c_{2j-k} with j = r+1, k = col+1.
            long idx = 2 * static_cast<long>(r + 1) - static_cast<long>(k + 1);
            if (idx >= 0 && idx < 2 * p) {
                m(r, k) = c[static_cast<std::size_t>(idx)];
            }
        }
        m(r, r) = m(r, r) - lambda;
    }

    std::vector<std::size_t> col(N);
    std::iota(col.begin(), col.end(), std::size_t{0});
    std::vector<double> pivots(N, 0.0);

    for (std::size_t s = 0; s < N; ++s) {
        std::size_t br = s, bc = s;
        double best = -1;
        for (std::size_t r = s; r < N; ++r) {
            for (std::size_t k = s; k < N; ++k) {
                double v = mag(m(r, k));
                if (v > best) {
                    best = v;
                    br = r;
                    bc = k;
                }
            }
        }
        pivots[s] = best;
        if (br != s) {
            for (std::size_t k = 0; k < N; ++k) {
                std::swap(m(s, k), m(br, k));
            }
        }
        if (bc != s) {
            for (std::size_t r = 0; r < N; ++r) {
                std::swap(m(r, s), m(r, bc));
            }
            std::swap(col[s], col[bc]);
        }
        if (s + 1 == N || best == 0) {
            continue;
        }
        for (std::size_t r = s + 1; r < N; ++r) {
            Real f = m(r, s) / m(s, s);
            if (f == Real(0)) {
                continue;
            }
            m(r, s) = Real(0);
            for (std::size_t k = s + 1; k < N; ++k) {
                m(r, k) = m(r, k) - f * m(s, k);
            }
        }
    }

    const double digits = precision_traits<Real>::digits;
    const double scale = pivots[0];
    const double tol = std::exp2(-digits / 2) * scale;
    if (pivots[N - 1] > tol) {
        throw DerivativeUnavailable(p, n, "2^-" + std::to_string(n) + " is not an eigenvalue of the two-scale matrix");
    }
    if (N >= 2 && pivots[N - 2] <= tol) {
        throw DerivativeUnavailable(p, n, "eigenvalue 2^-" + std::to_string(n) + " has a degenerate eigenspace");
    }

    std::vector<Real> y(N, Real(0));
    y[N - 1] = Real(1);
    for (std::size_t s = N - 1; s-- > 0;) {
        Real acc(0);
        for (std::size_t k = s + 1; k < N; ++k) {
            acc = acc + m(s, k) * y[k];
        }
        y[s] = -acc / m(s, s);
    }
    std::vector<Real> v(N, Real(0));
    for (std::size_t s = 0; s < N; ++s) {
        v[col[s]] = y[s];
    }
    return v;
}

void check_budget(std::size_t bytes, std::size_t budget) {
    if (bytes > budget) {
        throw BudgetExceeded(bytes, budget);
    }
}

}  // namespace

std::string_view to_string(FunctionKind kind) noexcept {
    return kind == FunctionKind::Scaling ? "scaling" : "wavelet";
}

std::size_t grid_length(int p, int j) {
    if (j < 0) {
        throw DomainError("refinement must be nonnegative, got " + std::to_string(j));
    }
    if (j > 56) {
        return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(2 * p - 1) * (std::size_t{1} << j) + 1;
}

std::size_t grid_build_bytes(int p, int j, FunctionKind kind, std::size_t value_size) {
    const std::size_t len = grid_length(p, j);
    const long double bytes = static_cast<long double>(len) * value_size * (kind == FunctionKind::Scaling ? 1.5L : 2.0L);
    if (bytes >= static_cast<long double>(std::numeric_limits<std::size_t>::max())) {
        return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(bytes);
}

void check_derivative_order(int p, int n) {
    check_order(p);
    if (n < 0) {
        throw DomainError("derivative order must be nonnegative, got " + std::to_string(n));
    }
    const int n_max = max_derivative_order(p);
    if (n > n_max) {
        throw DerivativeUnavailable(p, n, "grids exist for orders 0.." + std::to_string(n_max));
    }
}

template <class Real>
std::vector<Real> integer_grid(const FilterBank& bank, int n) {
    check_order(bank.p);
    if (n < 0) {
        throw DomainError("derivative order must be nonnegative, got " + std::to_string(n));
    }
    const int p = bank.p;
    std::vector<Real> interior = null_vector<Real>(bank, n);

    // Normalize.
    Real weighted(0);
    double weight_scale = 0;
    for (std::size_t i = 0; i < interior.size(); ++i) {
        Real w(1);
        for (int e = 0; e < n; ++e) {
            w = w * Real(static_cast<double>(i + 1));
        }
        Real t = w * interior[i];
        weighted = weighted + t;
        weight_scale += mag(t);
    }
    if (!(mag(weighted) > weight_scale * std::exp2(-precision_traits<Real>::digits / 2.0))) {
        throw DerivativeUnavailable(p, n, "eigenvector cannot be normalized");
    }
    Real target(1);
    for (int e = 2; e <= n; ++e) {
        target = target * Real(static_cast<double>(e));
    }
    if (n % 2 == 1) {
        target = -target;
    }
    const Real factor = target / weighted;

    std::vector<Real> out(static_cast<std::size_t>(2 * p), Real(0));
    for (std::size_t i = 0; i < interior.size(); ++i) {
        out[i + 1] = interior[i] * factor;
    }
    return out;
}

template <class Real>
DyadicGrid<Real> refine(const DyadicGrid<Real>& grid, const FilterBank& bank, unsigned threads) {
    if (grid.kind != FunctionKind::Scaling) {
        throw DomainError("refine needs a scaling grid");
    }
    if (grid.p != bank.p) {
        throw DomainError("filter bank order does not match grid");
    }
    const auto c = bank.as<Real>();
    const std::size_t old_len = grid.values.size();
    const std::size_t new_len = 2 * (old_len - 1) + 1;
    const std::size_t stride = std::size_t{1} << grid.j;  // one integer step at the old level
    const Real scale = Real(std::ldexp(1.0, grid.n));
    const long taps = static_cast<long>(c.size());

    DyadicGrid<Real> out;
    out.p = grid.p;
    out.kind = grid.kind;
    out.n = grid.n;
    out.j = grid.j + 1;
    out.values.assign(new_len, Real(0));

    const Real* src = grid.values.data();
    Real* dst = out.values.data();
    // Odd index i = 2q+1 at the new level; phi(2x - k) sits at old index i - k*stride.
    detail::parallel_for(old_len - 1, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t q = begin; q < end; ++q) {
            dst[2 * q] = src[q];
            const std::size_t i = 2 * q + 1;
            const long k_hi = std::min(taps - 1, static_cast<long>(i / stride));
            long k_lo = 0;
            if (i > old_len - 1) {
                k_lo = static_cast<long>((i - (old_len - 1) + stride - 1) / stride);
            }
            Real acc(0);
            for (long k = k_lo; k <= k_hi; ++k) {
                acc = acc + c[static_cast<std::size_t>(k)] * src[i - static_cast<std::size_t>(k) * stride];
            }
            dst[i] = acc * scale;
        }
    });
    dst[new_len - 1] = src[old_len - 1];
    return out;
}

template <class Real>
DyadicGrid<Real> build_scaling_grid(int p, int j_max, int n, const BuildOptions& options) {
    check_derivative_order(p, n);
    if (j_max < 0) {
        throw DomainError("refinement must be nonnegative, got " + std::to_string(j_max));
    }
    check_budget(grid_build_bytes(p, j_max, FunctionKind::Scaling, sizeof(Real)), options.byte_budget);
    const FilterBank bank = filter_coefficients(p);
    DyadicGrid<Real> g;
    g.p = p;
    g.kind = FunctionKind::Scaling;
    g.n = n;
    g.j = 0;
    g.values = integer_grid<Real>(bank, n);
    while (g.j < j_max) {
        g = refine(g, bank, options.threads);
    }
    return g;
}

template <class Real>
DyadicGrid<Real> wavelet_from_scaling(const DyadicGrid<Real>& phi, const FilterBank& bank, unsigned threads) {
    if (phi.kind != FunctionKind::Scaling) {
        throw DomainError("wavelet_from_scaling needs a scaling grid");
    }
    const int p = phi.p;
    const auto c = bank.as<Real>();
    const std::size_t len = phi.values.size();
    const long long unit = 1LL << phi.j;
    const Real scale = Real(std::ldexp(1.0, phi.n));

    DyadicGrid<Real> psi;
    psi.p = p;
    psi.kind = FunctionKind::Wavelet;
    psi.n = phi.n;
    psi.j = phi.j;
    psi.values.assign(len, Real(0));

    const Real* src = phi.values.data();
    Real* dst = psi.values.data();
    detail::parallel_for(len, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t m = begin; m < end; ++m) {
            Real acc(0);
            for (int k = 0; k < 2 * p; ++k) {
                long long idx = (1LL - 2 * p + k) * unit + 2 * static_cast<long long>(m);
                if (idx < 0 || idx >= static_cast<long long>(len)) {
                    continue;
                }
                const Real term = c[static_cast<std::size_t>(k)] * src[idx];
                acc = (k % 2 == 1) ? acc + term : acc - term;
            }
            dst[m] = acc * scale;
        }
    });
    return psi;
}

template <class Real>
DyadicGrid<Real> build_wavelet_grid(int p, int j_max, int n, const BuildOptions& options) {
    check_derivative_order(p, n);
    if (j_max < 0) {
        throw DomainError("refinement must be nonnegative, got " + std::to_string(j_max));
    }
    check_budget(grid_build_bytes(p, j_max, FunctionKind::Wavelet, sizeof(Real)), options.byte_budget);
    const FilterBank bank = filter_coefficients(p);
    DyadicGrid<Real> phi = build_scaling_grid<Real>(p, j_max, n, options);
    return wavelet_from_scaling(phi, bank, options.threads);
}

template <class Real>
DyadicGrid<Real> subsample(const DyadicGrid<Real>& grid, int j) {
    if (j < 0 || j > grid.j) {
        throw DomainError("cannot subsample a level-" + std::to_string(grid.j) + " grid to level " + std::to_string(j));
    }
    const std::size_t stride = std::size_t{1} << (grid.j - j);
    DyadicGrid<Real> out;
    out.p = grid.p;
    out.kind = grid.kind;
    out.n = grid.n;
    out.j = j;
    out.values.reserve(grid_length(grid.p, j));
    for (std::size_t i = 0; i < grid.values.size(); i += stride) {
        out.values.push_back(grid.values[i]);
    }
    return out;
}

template <class Real>
GridValidation validate_grid(const DyadicGrid<Real>& grid, const FilterBank& bank) {
    GridValidation v;
    const std::size_t len = grid.values.size();
    v.length_ok = len == grid_length(grid.p, grid.j);
    if (!v.length_ok || len < 2) {
        return v;
    }
    for (const auto& x : grid.values) {
        v.max_abs = std::max(v.max_abs, mag(x));
    }
    v.boundary = std::max(mag(grid.values.front()), mag(grid.values.back()));
    if (grid.kind != FunctionKind::Scaling) {
        return v;
    }

    const std::size_t unit = std::size_t{1} << grid.j;
    Real sum(0);
    Real target(1);
    for (int e = 2; e <= grid.n; ++e) {
        target = target * Real(static_cast<double>(e));
    }
    if (grid.n % 2 == 1) {
        target = -target;
    }
    for (std::size_t k = 0; k * unit < len; ++k) {
        Real w(1);
        for (int e = 0; e < grid.n; ++e) {
            w = w * Real(static_cast<double>(k));
        }
        sum = sum + w * grid.values[k * unit];
    }
    v.normalization = mag(sum - target) / mag(target);

    if (grid.j == 0) {
        return v;
    }
    const auto c = bank.as<Real>();
    const Real scale = Real(std::ldexp(1.0, grid.n));
    double worst = 0;
    for (std::size_t i = 0; i < len; i += 2) {
        Real acc(0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            long long idx = 2 * static_cast<long long>(i) - static_cast<long long>(k * unit);
            if (idx < 0 || idx >= static_cast<long long>(len)) {
                continue;
            }
            acc = acc + c[k] * grid.values[static_cast<std::size_t>(idx)];
        }
        worst = std::max(worst, mag(acc * scale - grid.values[i]));
    }
    v.two_scale = v.max_abs > 0 ? worst / v.max_abs : worst;
    return v;
}

#define DAUB_INSTANTIATE_DYADIC(Real)                                                                  \
    template std::vector<Real> integer_grid<Real>(const FilterBank&, int);                             \
    template DyadicGrid<Real> refine<Real>(const DyadicGrid<Real>&, const FilterBank&, unsigned);      \
    template DyadicGrid<Real> build_scaling_grid<Real>(int, int, int, const BuildOptions&);            \
    template DyadicGrid<Real> build_wavelet_grid<Real>(int, int, int, const BuildOptions&);            \
    template DyadicGrid<Real> wavelet_from_scaling<Real>(const DyadicGrid<Real>&, const FilterBank&,   \
                                                         unsigned);                                    \
    template DyadicGrid<Real> subsample<Real>(const DyadicGrid<Real>&, int);                           \
    template GridValidation validate_grid<Real>(const DyadicGrid<Real>&, const FilterBank&);

DAUB_INSTANTIATE_DYADIC(double)
DAUB_INSTANTIATE_DYADIC(DoubleWord)

#undef DAUB_INSTANTIATE_DYADIC

}  // namespace daub
