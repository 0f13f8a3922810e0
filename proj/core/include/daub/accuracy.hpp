#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "daub/double_word.hpp"
#include "daub/dyadic.hpp"
#include "daub/evaluators.hpp"

namespace daub {

// --- ULP distance ---------------------------------------------------------

enum class UlpFlag { None, Subnormal, Zero };

std::string_view to_string(UlpFlag flag) noexcept;

// Spacing of Target representables at the magnitude of r (r already in Target).
template <class Target>
double ulp_size(Target r) {
    using L = std::numeric_limits<Target>;
    const double a = std::abs(static_cast<double>(r));
    if (!(a >= static_cast<double>(L::min()))) {
        return static_cast<double>(L::denorm_min());
    }
    return std::ldexp(1.0, std::ilogb(a) - (L::digits - 1));
}

template <class Target, class Ref>
UlpFlag ulp_flag(const Ref& reference) {
    const Target r = round_to<Target>(reference);
    if (r == Target(0)) {
        return UlpFlag::Zero;
    }
    if (std::abs(static_cast<double>(r)) < static_cast<double>(std::numeric_limits<Target>::min())) {
        return UlpFlag::Subnormal;
    }
    return UlpFlag::None;
}

// (computed - reference) / ulp(round(reference)), with the difference taken
// in the reference's precision.
template <class Target, class Ref>
double ulp_distance(Target computed, const Ref& reference) {
    const Target r = round_to<Target>(reference);
    const Ref diff = widen<Ref>(computed) - reference;
    return static_cast<double>(diff) / ulp_size<Target>(r);
}

// |x f'(x) / f(x)|; infinity at roots where x f' != 0, 0 when f' = 0.
template <class Real>
double condition_number(const Real& value, const Real& derivative, const Real& x) {
    const double num = std::abs(static_cast<double>(x * derivative));
    if (num == 0) {
        return 0.0;
    }
    const double den = std::abs(static_cast<double>(value));
    if (den == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::abs(static_cast<double>(x * derivative / value));
}

struct UlpRecord {
    double x;
    double ulps;
    double cond;
    UlpFlag flag;
};

struct UlpSummary {
    std::size_t samples = 0;
    std::size_t flagged = 0;
    std::size_t well_conditioned = 0;
    double cond_threshold = 1e3;
    double median_ulp = 0;
    double max_ulp = 0;
    double median_ulp_wellcond = 0;
    double p99_ulp_wellcond = 0;
    double max_ulp_wellcond = 0;
};

struct UlpReport {
    std::vector<UlpRecord> records;  // sorted by x
    UlpSummary summary;
};

struct SamplerSpec {
    std::size_t count = 10000;
    // Defaults to the evaluator's support.
    std::optional<double> lo;
    std::optional<double> hi;
    std::uint64_t seed = 0;
    double cond_threshold = 1e3;
    unsigned threads = 0;
};

// Uniform doubles in [lo, hi] from mt19937_64, rounded to Target and sorted.
template <class Target>
std::vector<Target> sample_abscissas(double lo, double hi, std::size_t count, std::uint64_t seed);

template <class Target, class Wide>
UlpReport ulp_report(const BasicEvaluator<Target, Wide>& e, const BasicEvaluator<Wide, Wide>& reference,
                     const SamplerSpec& spec);

UlpSummary summarize(const std::vector<UlpRecord>& records, double cond_threshold);

// --- sup-norm error and convergence ----------------------------------------

// max |e(x) - reference(x)| over the abscissas of `reference`, whose level
// must be at least e.refinement().
template <class Target, class Wide>
double sup_error(const BasicEvaluator<Target, Wide>& e, const DyadicGrid<Wide>& reference, unsigned threads = 0);

struct ConvergenceSample {
    int j;
    double log2_error;
};

struct ConvergenceFit {
    int p = 0;
    InterpolatorKind interpolator = InterpolatorKind::Linear;
    std::vector<ConvergenceSample> samples;
    double intercept = 0;
    double slope = 0;
    double residual = 0;  // root-mean-square of the fit residuals
};

// Ordinary least squares of log2 error against j. Needs at least 4 samples.
ConvergenceFit convergence_fit(const std::vector<ConvergenceSample>& samples);

inline constexpr int kDefaultReferenceOffset = 6;

struct ConvergenceOptions {
    FunctionKind kind = FunctionKind::Scaling;
    std::optional<InterpolatorKind> interpolator;
    int reference_offset = kDefaultReferenceOffset;
    std::size_t byte_budget = std::size_t{4} << 30;
    unsigned threads = 0;
};

// Double-target evaluators at j = j_min..j_max against double-word grids at
// j_max + reference_offset; the reference grids are built once and
// subsampled for every j.
ConvergenceFit measure_convergence(int p, int j_min, int j_max, const ConvergenceOptions& options = {});

// --- default refinement regeneration ---------------------------------------

struct UlpCriterion {
    double median = 1.5;
    double p99 = 4.0;
    double cond_threshold = 1e3;
    int reference_offset = 4;
    std::size_t samples = 20000;
    std::uint64_t seed = 0;
    // The search stops once the reference evaluator would exceed this.
    std::size_t reference_budget = std::size_t{2} << 30;
};

// Smallest j >= j_start whose single-precision ULP summary meets `criterion`,
// or nullopt when none does up to j_cap.
std::optional<int> empirical_ulp_refinement(int p, int j_start, int j_cap, const UlpCriterion& criterion,
                                            std::size_t byte_budget = kDefaultByteBudget, unsigned threads = 0);

// Largest j whose evaluator for (precision) fits the budget.
int budget_cap(int p, Precision precision, std::size_t byte_budget = kDefaultByteBudget);

struct RegenOptions {
    bool empirical_float = true;
    UlpCriterion criterion{};
    std::size_t byte_budget = kDefaultByteBudget;
    unsigned threads = 0;
    std::vector<int> orders;  // empty: all p
};

std::vector<DefaultRefinementRow> regenerate_default_table(const RegenOptions& options = {});

}  // namespace daub
