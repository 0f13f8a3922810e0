// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "daub/daub.hpp"

using namespace daub;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// --- integer values ----------------------------------------------------------

Outcome integer_values() {
    const auto v = integer_grid<DoubleWord>(filter_coefficients(2), 0);
    const double s3 = std::sqrt(3.0);
    const std::array<double, 4> expect{0.0, (1 + s3) / 2, (1 - s3) / 2, 0.0};
    double worst = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        const double got = static_cast<double>(v[k]);
        const double err = expect[k] == 0 ? std::abs(got) : std::abs(got - expect[k]) / std::abs(expect[k]);
        worst = std::max(worst, err);
    }
    return {v.size() == 4 && worst <= 1e-15, "max relative error " + fmt("%.2e", worst) + " (tol 1e-15)"};
}

// --- convergence slopes ----------------------------------------------------------

Outcome convergence_slopes() {
    struct Case {
        int p, j_min, j_max;
        double slope, tol;
    };
    const std::array<Case, 5> cases{{{2, 6, 14, -0.55, 0.05},
                                     {3, 4, 12, -1.08, 0.10},
                                     {4, 4, 10, -1.62, 0.10},
                                     {6, 3, 8, -2.20, 0.15},
                                     {10, 2, 6, -3.36, 0.20}}};
    Outcome o{true, ""};
    for (const auto& c : cases) {
        const auto fit = measure_convergence(c.p, c.j_min, c.j_max);
        const bool ok = std::abs(fit.slope - c.slope) <= c.tol;
        o.pass &= ok;
        o.detail += "p=" + std::to_string(c.p) + " " + std::string(to_string(fit.interpolator)) + " slope " +
                    fmt("%.3f", fit.slope) + " (want " + fmt("%.2f", c.slope) + "+-" + fmt("%.2f", c.tol) + ")" +
                    (ok ? "" : " MISS") + "; ";
    }
    return o;
}

// --- float ULP ------------------------------------------------------------------

Outcome float_ulp() {
    const int p = 8;
    const int j = default_refinement(p, RefinementMode::Ulp, Precision::Single);
    EvaluatorOptions o;
    o.refinement = j;
    const BasicEvaluator<float, double> e(FunctionKind::Scaling, p, o);
    o.refinement = j + UlpCriterion{}.reference_offset;
    o.byte_budget = std::size_t{4} << 30;
    const ReferenceEvaluator<float> ref(FunctionKind::Scaling, p, o);
    SamplerSpec spec;
    spec.count = 100000;
    spec.seed = 0;
    spec.cond_threshold = 1e3;
    const auto s = ulp_report(e, ref, spec).summary;
    const bool ok = s.median_ulp_wellcond <= 1.5 && s.p99_ulp_wellcond <= 4.0;
    return {ok, "p=8 j=" + std::to_string(j) + " reference j=" + std::to_string(ref.refinement()) + ", " +
                    std::to_string(s.well_conditioned) + " of " + std::to_string(s.samples) +
                    " samples with cond <= 1e3: median |ulp| " + fmt("%.3f", s.median_ulp_wellcond) +
                    " (tol 1.5), p99 " + fmt("%.3f", s.p99_ulp_wellcond) + " (tol 4)"};
}

// --- partition of unity and two-scale residual ------------------------------------

// Interpolation error is measured with double-word tables evaluated in
// double-word arithmetic at the double-precision default refinement, so
// rounding of the target type does not mask it.
using WideEvaluator = BasicEvaluator<DoubleWord, DoubleWord>;

std::map<int, WideEvaluator>& wide_cache() {
    static std::map<int, WideEvaluator> cache;
    return cache;
}

const WideEvaluator& wide_phi(int p) {
    auto& cache = wide_cache();
    auto it = cache.find(p);
    if (it == cache.end()) {
        EvaluatorOptions o;
        o.refinement = default_refinement(p, RefinementMode::Ulp, Precision::Double);
        o.byte_budget = std::size_t{3} << 30;
        it = cache.emplace(p, WideEvaluator(FunctionKind::Scaling, p, o)).first;
    }
    return it->second;
}

constexpr std::array<int, 4> kResidualOrders{2, 3, 8, 15};

Outcome partition_of_unity() {
    Outcome o{true, ""};
    for (int p : kResidualOrders) {
        const auto& phi = wide_phi(p);
        const int j = phi.refinement();
        const double bound = 4 * smoothness_model(p).predicted_error(j);
        std::mt19937_64 rng(static_cast<std::uint64_t>(p));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            const DoubleWord x(u(rng));
            DoubleWord s(0.0);
            for (int k = 0; k < 2 * p - 1; ++k) s += phi(x + DoubleWord(k));
            worst = std::max(worst, std::abs(static_cast<double>(s - DoubleWord(1.0))));
        }
        const bool ok = worst <= bound;
        o.pass &= ok;
        o.detail += "p=" + std::to_string(p) + " j=" + std::to_string(j) + " " + fmt("%.2e", worst) + " <= " +
                    fmt("%.2e", bound) + (ok ? "" : " MISS") + "; ";
    }
    return o;
}

Outcome two_scale_residual() {
    Outcome o{true, ""};
    for (int p : kResidualOrders) {
        const auto& phi = wide_phi(p);
        const FilterBank bank = filter_coefficients(p);
        const auto& c = bank.coeffs;
        const int j = phi.refinement();
        const double bound = 8 * smoothness_model(p).predicted_error(j);
        std::mt19937_64 rng(static_cast<std::uint64_t>(100 + p));
        std::uniform_real_distribution<double> u(0.0, 2.0 * p - 1);
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            const DoubleWord x(u(rng));
            DoubleWord s(0.0);
            for (int k = 0; k < 2 * p; ++k) s += c[k] * phi(DoubleWord(2.0) * x - DoubleWord(k));
            worst = std::max(worst, std::abs(static_cast<double>(phi(x) - s)));
        }
        const bool ok = worst <= bound;
        o.pass &= ok;
        o.detail += "p=" + std::to_string(p) + " j=" + std::to_string(j) + " " + fmt("%.2e", worst) + " <= " +
                    fmt("%.2e", bound) + (ok ? "" : " MISS") + "; ";
    }
    wide_cache().clear();
    return o;
}

// --- vanishing moments -------------------------------------------------------------

Outcome vanishing_moments() {
    Outcome o{true, ""};
    CellQuadratureOptions q;
    q.rel_tol = 1e-10;
    q.abs_tol = 1e-10;
    for (int p : {3, 8}) {
        const auto psi = make_wavelet<double>(p);
        for (int m = 0; m < std::min(p, 4); ++m) {
            const auto r = integrate_cells([&](double x) { return std::pow(x, m) * psi(x); }, 1.0 - p, p, q);
            const bool ok = r.converged && std::abs(r.value) <= 1e-8;
            o.pass &= ok;
            o.detail += "p=" + std::to_string(p) + " m=" + std::to_string(m) + " " + fmt("%.1e", r.value) +
                        (ok ? "" : " MISS") + "; ";
        }
    }
    o.detail += "tol 1e-8";
    return o;
}

// --- interpolator exactness ----------------------------------------------------------

struct Poly {
    std::vector<double> c;
    double eval(double x, int d = 0) const {
        double acc = 0;
        for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(d);) {
            double f = 1;
            for (int i = 0; i < d; ++i) f *= static_cast<double>(k - i);
            acc = acc * x + f * c[k];
        }
        return acc;
    }
};

Outcome interpolator_exactness() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1, 1);
    const int r = 4;
    const double h = std::ldexp(1.0, -r);
    const std::size_t n = (std::size_t{2} << r) + 1;
    double worst[3] = {0, 0, 0};
    const int degrees[3] = {3, 5, 7};
    for (int which = 0; which < 3; ++which) {
        for (int trial = 0; trial < 10; ++trial) {
            Poly p;
            for (int k = 0; k <= degrees[which]; ++k) p.c.push_back(u(rng));
            std::vector<std::array<double, 4>> rec(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double x = -1 + static_cast<double>(i) * h;
                rec[i] = {p.eval(x, 0), p.eval(x, 1), p.eval(x, 2), p.eval(x, 3)};
            }
            const InterleavedTable<double, 4> t(-1.0, r, std::move(rec));
            for (int i = 0; i < 100; ++i) {
                const double x = u(rng);
                const double got = which == 0   ? interp::cubic_hermite(t, x)
                                   : which == 1 ? interp::quintic_hermite(t, x)
                                                : interp::septic_hermite(t, x);
                const double want = p.eval(x);
                worst[which] = std::max(worst[which], std::abs(got - want) / std::max(std::abs(want), 1e-300));
            }
        }
    }
    // Matched Hölder: value and slope at t = 1 of random cells.
    const double unit = std::numeric_limits<double>::epsilon() / 2;
    double holder_worst = 0;
    std::uniform_int_distribution<int> level(0, 24);
    for (int trial = 0; trial < 100000; ++trial) {
        const int j = level(rng);
        const double hj = std::ldexp(1.0, -j);
        const std::array<double, 2> a{u(rng), u(rng) / hj};
        const std::array<double, 2> b{u(rng), u(rng) / hj};
        const InterleavedTable<double, 2> t(0.0, j, {a, b});
        // units are counted against the terms of the model sum, y0 + c1 t + c2 t^alpha
        const double dy = b[0] - a[0];
        const double vh = b[1] * hj;
        const double alpha = kMatchedHolderAlpha;
        const double c1 = (vh - alpha * dy) / (1 - alpha);
        const double c2 = (dy - vh) / (1 - alpha);
        const double scale = std::max({std::abs(a[0]), std::abs(c1), std::abs(c2)});
        const double slope_scale = std::max(std::abs(c1), std::abs(alpha * c2));
        holder_worst = std::max(holder_worst, std::abs(interp::matched_holder(t, t.right()) - b[0]) / (unit * scale));
        holder_worst = std::max(holder_worst,
                                std::abs(interp::matched_holder_prime(t, t.right()) - b[1]) * hj / (unit * slope_scale));
    }
    const bool ok = worst[0] <= 1e-11 && worst[1] <= 1e-11 && worst[2] <= 1e-11 && holder_worst <= 4;
    return {ok, "cubic " + fmt("%.1e", worst[0]) + ", quintic " + fmt("%.1e", worst[1]) + ", septic " +
                    fmt("%.1e", worst[2]) + " (tol 1e-11 rel); matched Holder endpoint " + fmt("%.2f", holder_worst) +
                    " rounding units (tol 4)"};
}

// --- orthonormality -------------------------------------------------------------------

Outcome orthonormality() {
    const auto phi = make_scaling<double>(8);
    CellQuadratureOptions q;
    q.rel_tol = 1e-10;
    const auto self = integrate_cells([&](double x) { return phi(x) * phi(x); }, 0, 15, q);
    const auto shift = integrate_cells([&](double x) { return phi(x) * phi(x - 1); }, 0, 15, q);
    const double e0 = std::abs(self.value - 1);
    const double e1 = std::abs(shift.value);
    return {self.converged && shift.converged && e0 <= 1e-6 && e1 <= 1e-6,
            "p=8 |<phi,phi>-1| " + fmt("%.1e", e0) + ", |<phi,phi(.-1)>| " + fmt("%.1e", e1) + " (tol 1e-6)"};
}

// --- sparse bumps ----------------------------------------------------------------------

Outcome sparse_bumps() {
    const int p = 3;
    const auto full8 = expansion_coefficients(bumps, 0, 1, p, -8, 0);
    const auto thresholded = threshold(full8, 1e-3);
    const auto full11 = expansion_coefficients(bumps, 0, 1, p, -11, 0);
    const double ratio = static_cast<double>(thresholded.size()) / static_cast<double>(full11.size());

    const ScalingEvaluator<double> phi(p, ExpansionOptions{}.evaluator);
    const WaveletEvaluator<double> psi(p, ExpansionOptions{}.evaluator);
    const SparseSeries s_thr(thresholded, phi, psi);
    const SparseSeries s_full8(full8, phi, psi);
    const SparseSeries s_full11(full11, phi, psi);
    double vs_bumps = 0, vs_oracle = 0, vs_same_levels = 0, oracle_vs_bumps = 0;
    for (int i = 0; i < 1000; ++i) {
        const double x = i / 999.0;
        const double y = s_thr(x);
        const double o = s_full11(x);
        vs_bumps = std::max(vs_bumps, std::abs(y - bumps(x)));
        vs_oracle = std::max(vs_oracle, std::abs(y - o));
        vs_same_levels = std::max(vs_same_levels, std::abs(y - s_full8(x)));
        oracle_vs_bumps = std::max(oracle_vs_bumps, std::abs(o - bumps(x)));
    }
    const bool ok = ratio <= 0.10 && vs_bumps <= 5e-2;
    return {ok, std::to_string(thresholded.size()) + " of " + std::to_string(full11.size()) + " entries (" +
                    fmt("%.1f", 100 * ratio) + "%, tol 10%); max error vs bumps " + fmt("%.3g", vs_bumps) +
                    " (tol 5e-2); vs unthresholded -11..0 " + fmt("%.3g", vs_oracle) +
                    "; vs unthresholded -8..0 " + fmt("%.3g", vs_same_levels) + "; unthresholded -11..0 vs bumps " +
                    fmt("%.3g", oracle_vs_bumps)};
}

// --- cwt -------------------------------------------------------------------------------

struct CliRun {
    int status;
    std::vector<double> w;
    std::string err;
};

CliRun run_cwt(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    std::vector<std::string> full{"cwt", "--summary", "/dev/null"};
    full.insert(full.end(), args.begin(), args.end());
    CliRun r{cli::run(full, out, err), {}, err.str()};
    std::istringstream is(out.str());
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) r.w.push_back(parse_double(line.substr(line.rfind(',') + 1)));
    return r;
}

Outcome cwt_sanity() {
    const std::vector<std::string> fig{"--p", "8", "--function", "sin_recip:1.3", "--s", "2.0", "2.0", "1",
                                       "--t", "1.5", "1.5", "1"};
    const auto a = run_cwt(fig);
    auto halved = fig;
    halved.insert(halved.end(), {"--tol", "5e-9"});
    const auto b = run_cwt(halved);
    const auto c = run_cwt({"--p", "8", "--function", "const:1", "--s", "-3", "3", "4", "--t", "-2", "2", "5"});
    double worst_const = 0;
    for (double w : c.w) worst_const = std::max(worst_const, std::abs(w));
    const bool have = a.w.size() == 1 && b.w.size() == 1 && c.w.size() == 20;
    const double diff = have ? std::abs(a.w[0] - b.w[0]) : INFINITY;
    const bool ok = a.status == 0 && b.status == 0 && c.status == 0 && have && diff <= 1e-6 && worst_const <= 1e-8;
    return {ok, "W(2, 1.5) = " + (have ? fmt("%.12g", a.w[0]) : std::string("n/a")) + " exit " +
                    std::to_string(a.status) + ", change under tolerance halving " + fmt("%.1e", diff) +
                    " (tol 1e-6); const:1 max |W| " + fmt("%.1e", worst_const) + " over " +
                    std::to_string(c.w.size()) + " points (tol 1e-8)" + (a.err.empty() ? "" : "; " + a.err)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"closed-form integer values (p=2)", integer_values},
        {"convergence slopes", convergence_slopes},
        {"single-precision ULP (p=8)", float_ulp},
        {"partition of unity", partition_of_unity},
        {"vanishing moments", vanishing_moments},
        {"interpolator exactness", interpolator_exactness},
        {"two-scale residual", two_scale_residual},
        {"orthonormality (p=8)", orthonormality},
        {"sparse bumps pipeline (p=3)", sparse_bumps},
        {"cwt sanity", cwt_sanity},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += o.pass ? 0 : 1;
        std::printf("[%2d/%zu] %s  %s: %s [%.1fs]\n", index, criteria.size(), o.pass ? "PASS" : "FAIL", name.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
