#include "daub/transforms.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <queue>

#include "daub/detail/parallel.hpp"
#include "daub/errors.hpp"

namespace daub {

double QuadratureResult::value_or_throw(std::string_view what) const {
    if (!converged) {
        throw NonConvergence(std::string(what) + " did not converge (estimate " + std::to_string(value) +
                                 ", error estimate " + std::to_string(error) + ")",
                             value, error);
    }
    return value;
}

QuadratureResult adaptive_trapezoid(const RealFunction& g, double a, double b, const TrapezoidOptions& options) {
    if (!(a < b)) {
        throw DomainError("adaptive_trapezoid needs a < b");
    }
    const double h = b - a;
    const double fa = g(a);
    const double fb = g(b);
    double max_g = std::max(std::abs(fa), std::abs(fb));
    QuadratureResult r;
    r.evaluations = 2;
    double prev = 0.5 * h * (fa + fb);
    r.value = prev;
    r.error = std::abs(prev);
    const int min_levels = std::max(1, options.min_levels);
    for (int m = 1; m <= options.max_levels; ++m) {
        const std::size_t fresh = std::size_t{1} << (m - 1);
        const double step = std::ldexp(h, -m);
        double sum = 0;
        for (std::size_t i = 0; i < fresh; ++i) {
            const double y = g(a + static_cast<double>(2 * i + 1) * step);
            max_g = std::max(max_g, std::abs(y));
            sum += y;
        }
        r.evaluations += fresh;
        const double cur = 0.5 * prev + step * sum;
        r.value = cur;
        r.error = std::abs(cur - prev);
        r.levels = m;
        const double abs_tol = options.abs_tol.value_or(options.rel_tol * h * max_g);
        if (m >= min_levels && r.error <= std::max(options.rel_tol * std::abs(cur), abs_tol)) {
            r.converged = true;
            return r;
        }
        prev = cur;
    }
    return r;
}

namespace {

struct CellEstimate {
    double a;
    double b;
    double value;
    double error;
    int depth;
};

struct ByError {
    bool operator()(const CellEstimate& x, const CellEstimate& y) const {
        if (x.error != y.error) {
            return x.error < y.error;
        }
        return x.a > y.a;
    }
};

CellEstimate estimate_cell(const RealFunction& g, double a, double b, int levels, int depth, double& max_g,
                           std::size_t& evals) {
    const std::size_t panels = std::size_t{1} << levels;
    const double h = (b - a) / static_cast<double>(panels);
    double even = 0, odd = 0;
    for (std::size_t i = 0; i <= panels; ++i) {
        const double x = i == panels ? b : a + static_cast<double>(i) * h;
        double y = g(x);
        max_g = std::max(max_g, std::abs(y));
        if (i == 0 || i == panels) {
            y *= 0.5;
        }
        (i % 2 == 0 ? even : odd) += y;
    }
    evals += panels + 1;
    const double fine = h * (even + odd);
    const double coarse = 2 * h * even;
    return {a, b, fine, std::abs(fine - coarse), depth};
}

}  // namespace

QuadratureResult integrate_cells(const RealFunction& g, double a, double b, const CellQuadratureOptions& options) {
    if (!(a < b)) {
        throw DomainError("integrate_cells needs a < b");
    }
    if (!(options.break_spacing > 0)) {
        throw DomainError("break spacing must be positive");
    }
    const int levels = std::clamp(options.cell_levels, 1, 20);
    double max_g = 0;
    QuadratureResult r;

    std::vector<double> cuts{a};
    for (double c = (std::floor(a / options.break_spacing) + 1) * options.break_spacing; c < b;
         c += options.break_spacing) {
        cuts.push_back(c);
    }
    cuts.push_back(b);

    std::priority_queue<CellEstimate, std::vector<CellEstimate>, ByError> open;
    std::vector<CellEstimate> done;
    double total = 0, total_err = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto c = estimate_cell(g, cuts[i], cuts[i + 1], levels, 0, max_g, r.evaluations);
        total += c.value;
        total_err += c.error;
        open.push(c);
    }

    auto tolerance = [&] {
        const double abs_tol = options.abs_tol.value_or(options.rel_tol * (b - a) * max_g);
        return std::max(options.rel_tol * std::abs(total), abs_tol);
    };

    while (!open.empty()) {
        if (total_err <= tolerance()) {
            r.converged = true;
            break;
        }
        if (r.evaluations >= options.max_evaluations) {
            break;
        }
        CellEstimate c = open.top();
        open.pop();
        const double mid = 0.5 * (c.a + c.b);
        if (c.depth >= options.max_depth || !(c.a < mid && mid < c.b)) {
            done.push_back(c);
            continue;
        }
        auto left = estimate_cell(g, c.a, mid, levels, c.depth + 1, max_g, r.evaluations);
        auto right = estimate_cell(g, mid, c.b, levels, c.depth + 1, max_g, r.evaluations);
        total += (left.value + right.value) - c.value;
        total_err += (left.error + right.error) - c.error;
        open.push(left);
        open.push(right);
    }
    while (!open.empty()) {
        done.push_back(open.top());
        open.pop();
    }

    // Resum in position order so the result does not depend on refinement history.
    std::sort(done.begin(), done.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    double value = 0, err = 0;
    int depth = 0;
    for (const auto& c : done) {
        value += c.value;
        err += c.error;
        depth = std::max(depth, c.depth);
    }
    r.value = value;
    r.error = err;
    r.levels = depth;
    r.cells = done.size();
    if (!r.converged) {
        r.converged = err <= tolerance();
    }
    return r;
}

QuadratureResult cwt(const RealFunction& f, const WaveletEvaluator<double>& psi, double s, double t,
                     const CellQuadratureOptions& options) {
    if (s == 0 || !std::isfinite(s)) {
        throw DomainError("wavelet transform scale must be finite and nonzero");
    }
    const Support sup = psi.support();
    auto g = [&](double u) {
        const double w = psi(u);
        return w == 0 ? 0.0 : f(s * u + t) * w;
    };
    QuadratureResult r = integrate_cells(g, sup.a, sup.b, options);
    const double root = std::sqrt(std::abs(s));
    r.value *= root;
    r.error *= root;
    return r;
}

// --- test functions -------------------------------------------------------

double bumps(double x) noexcept {
    static constexpr std::array<double, 11> t{.1, .13, .15, .23, .25, .40, .44, .65, .76, .78, .81};
    static constexpr std::array<double, 11> h{4, 5, 3, 4, 5, 4.2, 2.1, 4.3, 3.1, 5.1, 4.2};
    static constexpr std::array<double, 11> w{.005, .005, .006, .01, .01, .03, .01, .01, .005, .008, .005};
    if (x <= 0 || x >= 1) {
        return 0;
    }
    double y = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double q = 1 + std::abs(x - t[i]) / w[i];
        const double q2 = q * q;
        y += h[i] / (q2 * q2);
    }
    return y;
}

namespace {

double parse_real(std::string_view s, std::string_view spec) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw DomainError("bad number '" + std::string(s) + "' in function '" + std::string(spec) + "'");
    }
    return v;
}

}  // namespace

NamedFunction parse_named_function(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view name = spec.substr(0, colon);
    const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    NamedFunction nf;
    nf.name = std::string(spec);
    if (name == "bumps" && colon == std::string_view::npos) {
        nf.f = [](double x) { return bumps(x); };
        nf.interval = std::pair{0.0, 1.0};
        return nf;
    }
    if (name == "sin_recip" && colon != std::string_view::npos) {
        const double a = parse_real(args, spec);
        nf.f = [a](double x) { return x == 0 ? 0.0 : std::sin(a / x); };
        return nf;
    }
    if (name == "const" && colon != std::string_view::npos) {
        const double c = parse_real(args, spec);
        nf.f = [c](double) { return c; };
        return nf;
    }
    if (name == "poly" && colon != std::string_view::npos) {
        std::vector<double> c;
        std::string_view rest = args;
        while (true) {
            const auto comma = rest.find(',');
            c.push_back(parse_real(rest.substr(0, comma), spec));
            if (comma == std::string_view::npos) {
                break;
            }
            rest = rest.substr(comma + 1);
        }
        nf.f = [c = std::move(c)](double x) {
            double y = 0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) {
                y = y * x + *it;
            }
            return y;
        };
        return nf;
    }
    throw DomainError("unknown function '" + std::string(spec) +
                      "'; expected bumps, sin_recip:a, const:c or poly:c0,c1,...");
}

// --- wavelet series -------------------------------------------------------

std::string_view to_string(BasisKind kind) noexcept { return kind == BasisKind::Phi ? "phi" : "psi"; }

std::vector<double> WaveletCoefficientSet::values() const {
    std::vector<double> v;
    v.reserve(entries.size());
    for (const auto& [key, c] : entries) {
        v.push_back(c);
    }
    return v;
}

namespace {

// Integer translates k for which the basis function at level j, supported on
// [2^j (k + lo_u), 2^j (k + hi_u)], overlaps the open interval (lo, hi).
std::pair<long long, long long> overlapping_translates(double lo, double hi, int j, double lo_u, double hi_u) {
    const double a = std::ldexp(lo, -j);
    const double b = std::ldexp(hi, -j);
    auto k_min = static_cast<long long>(std::floor(a - hi_u)) + 1;
    auto k_max = static_cast<long long>(std::ceil(b - lo_u)) - 1;
    return {k_min, k_max};
}

}  // namespace

WaveletCoefficientSet expansion_coefficients(const RealFunction& f, double lo, double hi, int p, int j_min, int j_max,
                                             const ExpansionOptions& options, ExpansionStats* stats) {
    ScalingEvaluator<double> phi(p, options.evaluator);
    WaveletEvaluator<double> psi(p, options.evaluator);
    return expansion_coefficients(f, lo, hi, phi, psi, j_min, j_max, options, stats);
}

WaveletCoefficientSet expansion_coefficients(const RealFunction& f, double lo, double hi,
                                             const ScalingEvaluator<double>& phi, const WaveletEvaluator<double>& psi,
                                             int j_min, int j_max, const ExpansionOptions& options,
                                             ExpansionStats* stats) {
    if (!(lo < hi)) {
        throw DomainError("expansion interval must satisfy lo < hi");
    }
    if (j_min > j_max) {
        throw DomainError("expansion levels need j_min <= j_max");
    }
    if (phi.p() != psi.p()) {
        throw DomainError("scaling and wavelet evaluators must share p");
    }
    WaveletCoefficientSet set;
    set.p = phi.p();
    set.j_min = j_min;
    set.j_max = j_max;

    std::vector<CoefficientKey> keys;
    {
        const Support s = phi.support();
        auto [k0, k1] = overlapping_translates(lo, hi, j_max, s.a, s.b);
        for (long long k = k0; k <= k1; ++k) {
            keys.push_back({BasisKind::Phi, j_max, k});
        }
    }
    for (int j = j_min; j <= j_max; ++j) {
        const Support s = psi.support();
        auto [k0, k1] = overlapping_translates(lo, hi, j, s.a, s.b);
        for (long long k = k0; k <= k1; ++k) {
            keys.push_back({BasisKind::Psi, j, k});
        }
    }

    std::vector<QuadratureResult> results(keys.size());
    detail::parallel_for(keys.size(), options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto key = keys[i];
            const Support s = key.kind == BasisKind::Phi ? phi.support() : psi.support();
            const double scale = std::ldexp(1.0, key.j);
            const double kd = static_cast<double>(key.k);
            // u-space: x = 2^j (u + k).
            const double ua = std::max(s.a, std::ldexp(lo, -key.j) - kd);
            const double ub = std::min(s.b, std::ldexp(hi, -key.j) - kd);
            if (!(ua < ub)) {
                continue;
            }
            auto g = [&](double u) {
                const double b = key.kind == BasisKind::Phi ? phi(u) : psi(u);
                return b == 0 ? 0.0 : f(scale * (u + kd)) * b;
            };
            QuadratureResult r = integrate_cells(g, ua, ub, options.quadrature);
            r.value *= std::sqrt(scale);
            r.error *= std::sqrt(scale);
            results[i] = r;
        }
    }, 1);

    ExpansionStats st;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (!results[i].converged && results[i].evaluations > 0) {
            ++st.unconverged;
        }
        st.max_error_estimate = std::max(st.max_error_estimate, results[i].error);
        if (results[i].value != 0) {
            set.entries.emplace(keys[i], results[i].value);
        }
    }
    if (stats) {
        *stats = st;
    }
    return set;
}

WaveletCoefficientSet threshold(const WaveletCoefficientSet& set, double tau) {
    if (!(tau >= 0)) {
        throw DomainError("threshold must be nonnegative");
    }
    WaveletCoefficientSet out;
    out.p = set.p;
    out.j_min = set.j_min;
    out.j_max = set.j_max;
    out.tau = tau;
    for (const auto& [key, c] : set.entries) {
        if (std::abs(c) > tau) {
            out.entries.emplace_hint(out.entries.end(), key, c);
        }
    }
    return out;
}

double hoyer_sparsity(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw DomainError("Hoyer sparsity needs at least two values");
    }
    double l1 = 0, l2 = 0;
    for (double v : values) {
        l1 += std::abs(v);
        l2 += v * v;
    }
    if (l2 == 0) {
        throw DomainError("Hoyer sparsity is undefined for the zero vector");
    }
    const double rn = std::sqrt(static_cast<double>(n));
    const double h = (rn - l1 / std::sqrt(l2)) / (rn - 1);
    return std::clamp(h, 0.0, 1.0);
}

namespace {

// Translates whose basis function (support [lo_u, hi_u] in u) contains x at level j.
std::pair<long long, long long> containing_translates(double x, int j, double lo_u, double hi_u) {
    const double y = std::ldexp(x, -j);
    return {static_cast<long long>(std::ceil(y - hi_u)), static_cast<long long>(std::floor(y - lo_u))};
}

}  // namespace

double series_eval(const WaveletCoefficientSet& set, double x, const ScalingEvaluator<double>& phi,
                   const WaveletEvaluator<double>& psi) {
    if (set.entries.empty()) {
        return 0.0;
    }
    double sum = 0;
    auto add_level = [&](BasisKind kind, int j) {
        const Support s = kind == BasisKind::Phi ? phi.support() : psi.support();
        auto [k0, k1] = containing_translates(x, j, s.a, s.b);
        const double y = std::ldexp(x, -j);
        const double norm = 1.0 / std::sqrt(std::ldexp(1.0, j));
        for (long long k = k0; k <= k1; ++k) {
            auto it = set.entries.find({kind, j, k});
            if (it == set.entries.end()) {
                continue;
            }
            const double u = y - static_cast<double>(k);
            sum += it->second * norm * (kind == BasisKind::Phi ? phi(u) : psi(u));
        }
    };
    add_level(BasisKind::Phi, set.j_max);
    for (int j = set.j_min; j <= set.j_max; ++j) {
        add_level(BasisKind::Psi, j);
    }
    return sum;
}

SparseSeries::SparseSeries(const WaveletCoefficientSet& set, ScalingEvaluator<double> phi,
                           WaveletEvaluator<double> psi)
    : p_(set.p), phi_(std::move(phi)), psi_(std::move(psi)) {
    auto add = [&](BasisKind kind, int j) {
        auto lo = set.entries.lower_bound({kind, j, std::numeric_limits<long long>::min()});
        auto hi = set.entries.upper_bound({kind, j, std::numeric_limits<long long>::max()});
        if (lo == hi) {
            return;
        }
        Level level{kind, j, lo->first.k, {}, {}};
        const long long k_last = std::prev(hi)->first.k;
        const auto width = static_cast<std::size_t>(k_last - level.k0 + 1);
        level.coeffs.assign(width, 0.0);
        level.present.assign(width, 0);
        for (auto it = lo; it != hi; ++it) {
            const auto idx = static_cast<std::size_t>(it->first.k - level.k0);
            level.coeffs[idx] = it->second;
            level.present[idx] = 1;
        }
        levels_.push_back(std::move(level));
    };
    if (!set.entries.empty()) {
        add(BasisKind::Phi, set.j_max);
        for (int j = set.j_min; j <= set.j_max; ++j) {
            add(BasisKind::Psi, j);
        }
    }
}

double SparseSeries::operator()(double x) const {
    double sum = 0;
    for (const auto& level : levels_) {
        const Support s = level.kind == BasisKind::Phi ? phi_.support() : psi_.support();
        auto [k0, k1] = containing_translates(x, level.j, s.a, s.b);
        k0 = std::max(k0, level.k0);
        k1 = std::min(k1, level.k0 + static_cast<long long>(level.coeffs.size()) - 1);
        const double y = std::ldexp(x, -level.j);
        const double norm = 1.0 / std::sqrt(std::ldexp(1.0, level.j));
        for (long long k = k0; k <= k1; ++k) {
            const auto idx = static_cast<std::size_t>(k - level.k0);
            if (!level.present[idx]) {
                continue;
            }
            const double u = y - static_cast<double>(k);
            sum += level.coeffs[idx] * norm * (level.kind == BasisKind::Phi ? phi_(u) : psi_(u));
        }
    }
    return sum;
}

SparsityChoice choose_p_by_sparsity(const RealFunction& f, double lo, double hi, int p_lo, int p_hi, int j_min,
                                    int j_max, const ExpansionOptions& options) {
    if (p_lo > p_hi) {
        throw DomainError("empty p range");
    }
    std::optional<SparsityChoice> best;
    for (int p = p_lo; p <= p_hi; ++p) {
        auto set = expansion_coefficients(f, lo, hi, p, j_min, j_max, options);
        const auto v = set.values();
        if (v.size() < 2) {
            continue;
        }
        const double h = hoyer_sparsity(v);
        if (!best || h > best->sparsity) {
            best = SparsityChoice{p, h, std::move(set)};
        }
    }
    if (!best) {
        throw DomainError("no p in range produced at least two coefficients");
    }
    return std::move(*best);
}

}  // namespace daub
