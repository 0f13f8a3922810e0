#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "daub/defaults.hpp"
#include "daub/double_word.hpp"
#include "daub/dyadic.hpp"
#include "daub/interpolators.hpp"

namespace daub {

struct EvaluatorOptions {
    // Refinement j; when empty the shipped default for `mode` is used.
    std::optional<int> refinement{};
    RefinementMode mode = RefinementMode::Ulp;
    // Replaces the per-p interpolator choice.
    std::optional<InterpolatorKind> interpolator{};
    std::size_t byte_budget = kDefaultByteBudget;
    unsigned threads = 0;
};

template <class Target>
constexpr Precision precision_of() noexcept {
    return std::is_same_v<Target, float> ? Precision::Single : Precision::Double;
}

// Number of phi^(n) grids, n = 0..count-1, that an interpolator consumes.
// Linear also carries the first-derivative grid so that prime is useful.
int grids_needed(InterpolatorKind kind) noexcept;

// Bytes of the finished table plus the peak transient grid while building.
std::size_t evaluator_bytes(int p, int j, FunctionKind kind, InterpolatorKind interp, std::size_t target_size,
                            std::size_t wide_size);

// Immutable evaluator for phi^(n) or psi^(n) of one p. Grids are built in
// Wide precision, rounded once to Target, and stored interleaved. Copies share
// the same tables.
template <class Target, class Wide = wide_type_t<Target>>
class BasicEvaluator {
public:
    using value_type = Target;
    using wide_type = Wide;

    BasicEvaluator() = default;
    BasicEvaluator(FunctionKind kind, int p, const EvaluatorOptions& options = {});

    // Assembles an evaluator from precomputed grids of orders 0..k-1 (all the
    // same p, kind and refinement).
    static BasicEvaluator from_grids(const std::vector<const DyadicGrid<Wide>*>& grids, InterpolatorKind interp);

    Target operator()(Target x) const;
    Target prime(Target x) const;
    Target double_prime(Target x) const;

    int p() const noexcept;
    int refinement() const noexcept;
    FunctionKind kind() const noexcept;
    InterpolatorKind interpolator() const noexcept;
    Support support() const noexcept;
    bool has_prime() const noexcept;
    bool has_double_prime() const noexcept;
    int max_derivative() const noexcept { return has_double_prime() ? 2 : has_prime() ? 1 : 0; }
    std::size_t bytes() const noexcept;
    explicit operator bool() const noexcept { return static_cast<bool>(impl_); }

    // Record i = (y, y', ...) at support().a + i 2^-j, as stored.
    std::size_t node_count() const noexcept;
    Target node_value(std::size_t i, int order = 0) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

template <class Target = double>
class ScalingEvaluator : public BasicEvaluator<Target> {
public:
    using BasicEvaluator<Target>::BasicEvaluator;
    explicit ScalingEvaluator(int p, const EvaluatorOptions& options = {})
        : BasicEvaluator<Target>(FunctionKind::Scaling, p, options) {}
};

template <class Target = double>
class WaveletEvaluator : public BasicEvaluator<Target> {
public:
    using BasicEvaluator<Target>::BasicEvaluator;
    explicit WaveletEvaluator(int p, const EvaluatorOptions& options = {})
        : BasicEvaluator<Target>(FunctionKind::Wavelet, p, options) {}
};

template <class Target = double>
ScalingEvaluator<Target> make_scaling(int p, const EvaluatorOptions& options = {}) {
    return ScalingEvaluator<Target>(p, options);
}

template <class Target = double>
WaveletEvaluator<Target> make_wavelet(int p, const EvaluatorOptions& options = {}) {
    return WaveletEvaluator<Target>(p, options);
}

// Evaluators held for reference computations: the same construction carried
// out entirely in the wide type.
template <class Target>
using ReferenceEvaluator = BasicEvaluator<wide_type_t<Target>, wide_type_t<Target>>;

// Resolved refinement for a target precision.
int resolve_refinement(int p, Precision precision, const EvaluatorOptions& options);

}  // namespace daub
