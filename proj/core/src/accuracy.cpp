#include "daub/accuracy.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "daub/detail/parallel.hpp"
#include "daub/errors.hpp"

namespace daub {
namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) {
        return 0.0;
    }
    // Nearest rank.
    std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

double median_sorted(const std::vector<double>& sorted) {
    const std::size_t n = sorted.size();
    if (n == 0) {
        return 0.0;
    }
    return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

template <class Real>
double mag(const Real& x) {
    return std::abs(static_cast<double>(x));
}

}  // namespace

std::string_view to_string(UlpFlag flag) noexcept {
    switch (flag) {
    case UlpFlag::None: return "";
    case UlpFlag::Subnormal: return "subnormal";
    case UlpFlag::Zero: return "zero";
    }
    return "";
}

template <class Target>
std::vector<Target> sample_abscissas(double lo, double hi, std::size_t count, std::uint64_t seed) {
    if (!(lo <= hi)) {
        throw DomainError("sampling interval is empty");
    }
    std::mt19937_64 rng(seed);
    std::vector<Target> xs;
    xs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = std::ldexp(static_cast<double>(rng() >> 11), -53);
        Target x = static_cast<Target>(lo + u * (hi - lo));
        x = std::clamp(x, static_cast<Target>(lo), static_cast<Target>(hi));
        xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

template std::vector<float> sample_abscissas<float>(double, double, std::size_t, std::uint64_t);
template std::vector<double> sample_abscissas<double>(double, double, std::size_t, std::uint64_t);

UlpSummary summarize(const std::vector<UlpRecord>& records, double cond_threshold) {
    UlpSummary s;
    s.samples = records.size();
    s.cond_threshold = cond_threshold;
    std::vector<double> all, well;
    for (const auto& r : records) {
        if (r.flag != UlpFlag::None) {
            ++s.flagged;
            continue;
        }
        const double a = std::abs(r.ulps);
        all.push_back(a);
        if (r.cond <= cond_threshold) {
            well.push_back(a);
        }
    }
    std::sort(all.begin(), all.end());
    std::sort(well.begin(), well.end());
    s.well_conditioned = well.size();
    s.median_ulp = median_sorted(all);
    s.max_ulp = all.empty() ? 0.0 : all.back();
    s.median_ulp_wellcond = median_sorted(well);
    s.p99_ulp_wellcond = quantile_sorted(well, 0.99);
    s.max_ulp_wellcond = well.empty() ? 0.0 : well.back();
    return s;
}

template <class Target, class Wide>
UlpReport ulp_report(const BasicEvaluator<Target, Wide>& e, const BasicEvaluator<Wide, Wide>& reference,
                     const SamplerSpec& spec) {
    if (spec.count == 0) {
        throw DomainError("sample count must be positive");
    }
    const Support sup = e.support();
    const double lo = spec.lo.value_or(sup.a);
    const double hi = spec.hi.value_or(sup.b);
    const auto xs = sample_abscissas<Target>(lo, hi, spec.count, spec.seed);

    UlpReport report;
    report.records.resize(xs.size());
    detail::parallel_for(xs.size(), spec.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Target x = xs[i];
            const Wide wx = widen<Wide>(x);
            const Wide ref = reference(wx);
            const Wide dref = reference.prime(wx);
            UlpRecord& r = report.records[i];
            r.x = static_cast<double>(x);
            r.flag = ulp_flag<Target>(ref);
            r.ulps = ulp_distance<Target>(e(x), ref);
            r.cond = condition_number(ref, dref, wx);
        }
    }, 1024);
    report.summary = summarize(report.records, spec.cond_threshold);
    return report;
}

template UlpReport ulp_report<float, double>(const BasicEvaluator<float, double>&, const BasicEvaluator<double, double>&,
                                             const SamplerSpec&);
template UlpReport ulp_report<double, DoubleWord>(const BasicEvaluator<double, DoubleWord>&,
                                                  const BasicEvaluator<DoubleWord, DoubleWord>&, const SamplerSpec&);

template <class Target, class Wide>
double sup_error(const BasicEvaluator<Target, Wide>& e, const DyadicGrid<Wide>& reference, unsigned threads) {
    if (reference.p != e.p() || reference.kind != e.kind() || reference.n != 0) {
        throw DomainError("reference grid does not describe the evaluated function");
    }
    if (reference.j < e.refinement()) {
        throw DomainError("reference grid (level " + std::to_string(reference.j) +
                          ") is coarser than the evaluator (level " + std::to_string(e.refinement()) + ")");
    }
    const std::size_t n = reference.values.size();
    const unsigned t = detail::resolve_threads(threads);
    std::vector<double> partial(t, 0.0);
    const std::size_t step = (n + t - 1) / t;
    detail::parallel_for(t, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            double worst = 0;
            const std::size_t lo = c * step;
            const std::size_t hi = std::min(n, lo + step);
            for (std::size_t i = lo; i < hi; ++i) {
                const Target x = static_cast<Target>(reference.abscissa(i));
                const Wide diff = widen<Wide>(e(x)) - reference.values[i];
                worst = std::max(worst, mag(diff));
            }
            partial[c] = worst;
        }
    }, 1);
    return *std::max_element(partial.begin(), partial.end());
}

template double sup_error<float, double>(const BasicEvaluator<float, double>&, const DyadicGrid<double>&, unsigned);
template double sup_error<double, DoubleWord>(const BasicEvaluator<double, DoubleWord>&, const DyadicGrid<DoubleWord>&,
                                              unsigned);
template double sup_error<double, double>(const BasicEvaluator<double, double>&, const DyadicGrid<double>&, unsigned);
template double sup_error<DoubleWord, DoubleWord>(const BasicEvaluator<DoubleWord, DoubleWord>&,
                                                  const DyadicGrid<DoubleWord>&, unsigned);

ConvergenceFit convergence_fit(const std::vector<ConvergenceSample>& samples) {
    if (samples.size() < 4) {
        throw InsufficientData("convergence fit needs at least 4 samples, got " + std::to_string(samples.size()));
    }
    const double n = static_cast<double>(samples.size());
    double mj = 0, me = 0;
    for (const auto& s : samples) {
        mj += s.j;
        me += s.log2_error;
    }
    mj /= n;
    me /= n;
    double sjj = 0, sje = 0;
    for (const auto& s : samples) {
        sjj += (s.j - mj) * (s.j - mj);
        sje += (s.j - mj) * (s.log2_error - me);
    }
    if (sjj == 0) {
        throw InsufficientData("convergence fit needs at least two distinct refinements");
    }
    ConvergenceFit fit;
    fit.samples = samples;
    fit.slope = sje / sjj;
    fit.intercept = me - fit.slope * mj;
    double ss = 0;
    for (const auto& s : samples) {
        const double r = s.log2_error - (fit.intercept + fit.slope * s.j);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

ConvergenceFit measure_convergence(int p, int j_min, int j_max, const ConvergenceOptions& options) {
    check_order(p);
    if (j_min < 0 || j_max - j_min < 3) {
        throw DomainError("convergence needs 0 <= j_min and j_max - j_min >= 3");
    }
    if (options.reference_offset < 0) {
        throw DomainError("reference offset must be nonnegative");
    }
    const InterpolatorKind interp = options.interpolator.value_or(smoothness_model(p).interpolator);
    const int orders = grids_needed(interp);
    if (orders - 1 > max_derivative_order(p)) {
        throw DerivativeUnavailable(p, orders - 1, std::string(to_string(interp)) + " needs more derivative grids");
    }
    const int J = j_max + options.reference_offset;
    const std::size_t need = static_cast<std::size_t>(orders) * grid_length(p, J) * sizeof(DoubleWord) +
                             grid_build_bytes(p, J, options.kind, sizeof(DoubleWord));
    if (need > options.byte_budget) {
        throw BudgetExceeded(need, options.byte_budget);
    }

    BuildOptions build{std::numeric_limits<std::size_t>::max(), options.threads};
    std::vector<DyadicGrid<DoubleWord>> refs;
    refs.reserve(static_cast<std::size_t>(orders));
    for (int n = 0; n < orders; ++n) {
        refs.push_back(options.kind == FunctionKind::Scaling ? build_scaling_grid<DoubleWord>(p, J, n, build)
                                                             : build_wavelet_grid<DoubleWord>(p, J, n, build));
    }

    std::vector<ConvergenceSample> samples;
    for (int j = j_min; j <= j_max; ++j) {
        std::vector<DyadicGrid<DoubleWord>> coarse;
        coarse.reserve(refs.size());
        for (const auto& g : refs) {
            coarse.push_back(subsample(g, j));
        }
        std::vector<const DyadicGrid<DoubleWord>*> ptrs;
        for (const auto& g : coarse) {
            ptrs.push_back(&g);
        }
        auto e = BasicEvaluator<double, DoubleWord>::from_grids(ptrs, interp);
        const double err = sup_error(e, refs.front(), options.threads);
        samples.push_back({j, std::log2(err)});
    }
    ConvergenceFit fit = convergence_fit(samples);
    fit.p = p;
    fit.interpolator = interp;
    return fit;
}

int budget_cap(int p, Precision precision, std::size_t byte_budget) {
    const InterpolatorKind interp = smoothness_model(p).interpolator;
    const std::size_t target = precision == Precision::Single ? sizeof(float) : sizeof(double);
    const std::size_t wide = precision == Precision::Single ? sizeof(double) : sizeof(DoubleWord);
    int j = 0;
    while (j < 40 && evaluator_bytes(p, j + 1, FunctionKind::Wavelet, interp, target, wide) <= byte_budget) {
        ++j;
    }
    return j;
}

std::optional<int> empirical_ulp_refinement(int p, int j_start, int j_cap, const UlpCriterion& criterion,
                                            std::size_t byte_budget, unsigned threads) {
    const InterpolatorKind interp = smoothness_model(p).interpolator;
    for (int j = j_start; j <= j_cap; ++j) {
        if (evaluator_bytes(p, j + criterion.reference_offset, FunctionKind::Scaling, interp, sizeof(double),
                            sizeof(double)) > criterion.reference_budget) {
            return std::nullopt;
        }
        EvaluatorOptions eo;
        eo.refinement = j;
        eo.byte_budget = byte_budget;
        eo.threads = threads;
        BasicEvaluator<float, double> e(FunctionKind::Scaling, p, eo);
        EvaluatorOptions ro = eo;
        ro.refinement = j + criterion.reference_offset;
        ro.byte_budget = std::numeric_limits<std::size_t>::max();
        BasicEvaluator<double, double> ref(FunctionKind::Scaling, p, ro);
        SamplerSpec spec;
        spec.count = criterion.samples;
        spec.seed = criterion.seed;
        spec.cond_threshold = criterion.cond_threshold;
        spec.threads = threads;
        const UlpSummary s = ulp_report(e, ref, spec).summary;
        if (s.well_conditioned > 0 && s.median_ulp_wellcond <= criterion.median && s.p99_ulp_wellcond <= criterion.p99) {
            return j;
        }
    }
    return std::nullopt;
}

std::vector<DefaultRefinementRow> regenerate_default_table(const RegenOptions& options) {
    std::vector<int> orders = options.orders;
    if (orders.empty()) {
        for (int p = kMinOrder; p <= kMaxOrder; ++p) {
            orders.push_back(p);
        }
    }
    std::vector<DefaultRefinementRow> rows;
    for (int p : orders) {
        check_order(p);
        const SmoothnessModel& m = smoothness_model(p);
        for (Precision prec : {Precision::Single, Precision::Double}) {
            const int cap = budget_cap(p, prec, options.byte_budget);
            const int absolute = std::min(model_refinement(p, -24.0, cap).value_or(cap), cap);
            rows.push_back({p, prec, RefinementMode::Absolute, absolute});
        }
        const int cap_f = budget_cap(p, Precision::Single, options.byte_budget);
        const int abs_f = rows[rows.size() - 2].refinement;
        int ulp_f = abs_f;
        if (options.empirical_float) {
            ulp_f = empirical_ulp_refinement(p, abs_f, cap_f, options.criterion, options.byte_budget, options.threads)
                        .value_or(abs_f);
        }
        rows.push_back({p, Precision::Single, RefinementMode::Ulp, ulp_f});
        // Double targets carry 29 more bits than float; spend them along the
        // measured slope and cap by the budget.
        const int cap_d = budget_cap(p, Precision::Double, options.byte_budget);
        const int extra = static_cast<int>(std::ceil(29.0 / -m.slope));
        rows.push_back({p, Precision::Double, RefinementMode::Ulp, std::min(ulp_f + extra, cap_d)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.p != b.p) return a.p < b.p;
        if (a.precision != b.precision) return a.precision < b.precision;
        return a.mode < b.mode;
    });
    return rows;
}

}  // namespace daub
