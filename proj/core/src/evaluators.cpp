#include "daub/evaluators.hpp"

#include <cmath>
#include <string>
#include <type_traits>

#include "daub/errors.hpp"

namespace daub {

std::string_view to_string(InterpolatorKind kind) noexcept {
    switch (kind) {
    case InterpolatorKind::Linear: return "linear";
    case InterpolatorKind::MatchedHolder: return "matched-holder";
    case InterpolatorKind::CubicHermite: return "cubic-hermite";
    case InterpolatorKind::QuinticHermite: return "quintic-hermite";
    case InterpolatorKind::SepticHermite: return "septic-hermite";
    }
    return "unknown";
}

bool parse_interpolator(std::string_view name, InterpolatorKind& out) noexcept {
    for (auto k : {InterpolatorKind::Linear, InterpolatorKind::MatchedHolder, InterpolatorKind::CubicHermite,
                   InterpolatorKind::QuinticHermite, InterpolatorKind::SepticHermite}) {
        if (name == to_string(k)) {
            out = k;
            return true;
        }
    }
    return false;
}

int grids_needed(InterpolatorKind kind) noexcept {
    return kind == InterpolatorKind::Linear ? 2 : derivative_grids_required(kind) + 1;
}

std::size_t evaluator_bytes(int p, int j, FunctionKind kind, InterpolatorKind interp, std::size_t target_size,
                            std::size_t wide_size) {
    const std::size_t len = grid_length(p, j);
    const long double table = static_cast<long double>(len) * target_size * grids_needed(interp);
    const long double total = table + static_cast<long double>(grid_build_bytes(p, j, kind, wide_size));
    if (total >= static_cast<long double>(std::numeric_limits<std::size_t>::max())) {
        return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(total);
}

int resolve_refinement(int p, Precision precision, const EvaluatorOptions& options) {
    if (options.refinement) {
        if (*options.refinement < 0) {
            throw DomainError("refinement must be nonnegative, got " + std::to_string(*options.refinement));
        }
        return *options.refinement;
    }
    return default_refinement(p, options.mode, precision);
}

namespace {

template <class T>
using Coord = std::conditional_t<std::is_same_v<T, float>, double, T>;

template <class T>
using TableVariant = std::variant<InterleavedTable<T, 2>, InterleavedTable<T, 3>, InterleavedTable<T, 4>>;

template <class T, std::size_t A, class W>
InterleavedTable<T, A> assemble(const std::vector<const DyadicGrid<W>*>& grids) {
    const auto& g0 = *grids.front();
    std::vector<typename InterleavedTable<T, A>::Record> records(g0.values.size());
    for (std::size_t n = 0; n < A; ++n) {
        const auto& v = grids[n]->values;
        for (std::size_t i = 0; i < v.size(); ++i) {
            records[i][n] = round_to<T>(v[i]);
        }
    }
    return InterleavedTable<T, A>(g0.support().a, g0.j, std::move(records));
}

template <class T, std::size_t A, class W>
void fill_component(std::vector<typename InterleavedTable<T, A>::Record>& records, const DyadicGrid<W>& grid,
                    std::size_t n) {
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        records[i][n] = round_to<T>(grid.values[i]);
    }
}

}  // namespace

template <class Target, class Wide>
struct BasicEvaluator<Target, Wide>::Impl {
    int p = 0;
    int j = 0;
    FunctionKind kind = FunctionKind::Scaling;
    InterpolatorKind interp = InterpolatorKind::Linear;
    Support sup{0, 0};
    TableVariant<Target> table;
};

namespace {

template <class T, class W, std::size_t A>
InterleavedTable<T, A> build_table(FunctionKind kind, int p, int j, const BuildOptions& build) {
    std::vector<typename InterleavedTable<T, A>::Record> records(grid_length(p, j));
    // One grid at a time keeps the transient footprint to a single wide grid.
    for (std::size_t n = 0; n < A; ++n) {
        const int order = static_cast<int>(n);
        DyadicGrid<W> g = kind == FunctionKind::Scaling ? build_scaling_grid<W>(p, j, order, build)
                                                        : build_wavelet_grid<W>(p, j, order, build);
        fill_component<T, A>(records, g, n);
    }
    return InterleavedTable<T, A>(support_of(kind, p).a, j, std::move(records));
}

void check_interpolator_order(int p, InterpolatorKind interp) {
    const int needed = grids_needed(interp) - 1;
    const int available = max_derivative_order(p);
    if (needed > available) {
        throw DerivativeUnavailable(p, needed,
                                    std::string(to_string(interp)) + " needs derivative grids up to order " +
                                        std::to_string(needed) + ", available orders are 0.." +
                                        std::to_string(available));
    }
}

}  // namespace

template <class Target, class Wide>
BasicEvaluator<Target, Wide>::BasicEvaluator(FunctionKind kind, int p, const EvaluatorOptions& options) {
    check_order(p);
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->kind = kind;
    impl->sup = support_of(kind, p);
    impl->interp = options.interpolator.value_or(smoothness_model(p).interpolator);
    impl->j = resolve_refinement(p, precision_of<Target>(), options);
    check_interpolator_order(p, impl->interp);

    const std::size_t need = evaluator_bytes(p, impl->j, kind, impl->interp, sizeof(Target), sizeof(Wide));
    if (need > options.byte_budget) {
        throw BudgetExceeded(need, options.byte_budget);
    }
    // The per-grid guard only sees the transient part, already covered above.
    BuildOptions build{std::numeric_limits<std::size_t>::max(), options.threads};
    switch (grids_needed(impl->interp)) {
    case 2: impl->table = build_table<Target, Wide, 2>(kind, p, impl->j, build); break;
    case 3: impl->table = build_table<Target, Wide, 3>(kind, p, impl->j, build); break;
    default: impl->table = build_table<Target, Wide, 4>(kind, p, impl->j, build); break;
    }
    impl_ = std::move(impl);
}

template <class Target, class Wide>
BasicEvaluator<Target, Wide> BasicEvaluator<Target, Wide>::from_grids(
    const std::vector<const DyadicGrid<Wide>*>& grids, InterpolatorKind interp) {
    const std::size_t needed = static_cast<std::size_t>(grids_needed(interp));
    if (grids.size() < needed) {
        throw DomainError(std::string(to_string(interp)) + " needs " + std::to_string(needed) + " grids, got " +
                          std::to_string(grids.size()));
    }
    const auto& g0 = *grids.front();
    for (std::size_t n = 0; n < needed; ++n) {
        const auto& g = *grids[n];
        if (g.p != g0.p || g.kind != g0.kind || g.j != g0.j || g.n != static_cast<int>(n)) {
            throw DomainError("grids must share p, kind and refinement and have orders 0.." +
                              std::to_string(needed - 1));
        }
    }
    auto impl = std::make_shared<Impl>();
    impl->p = g0.p;
    impl->kind = g0.kind;
    impl->sup = g0.support();
    impl->interp = interp;
    impl->j = g0.j;
    switch (needed) {
    case 2: impl->table = assemble<Target, 2>(grids); break;
    case 3: impl->table = assemble<Target, 3>(grids); break;
    default: impl->table = assemble<Target, 4>(grids); break;
    }
    BasicEvaluator e;
    e.impl_ = std::move(impl);
    return e;
}

template <class Target, class Wide>
Target BasicEvaluator<Target, Wide>::operator()(Target x) const {
    const Impl& m = *impl_;
    // phi, psi and their tabulated derivatives vanish at both ends of the support.
    if (!(x > Target(m.sup.a) && x < Target(m.sup.b))) {
        return x != x ? x : Target(0);
    }
    const Coord<Target> cx(x);
    return std::visit(
        [&](const auto& tab) -> Target {
            switch (m.interp) {
            case InterpolatorKind::Linear: return interp::linear(tab, cx, 0);
            case InterpolatorKind::MatchedHolder: return interp::matched_holder(tab, cx);
            case InterpolatorKind::CubicHermite: return interp::cubic_hermite(tab, cx);
            case InterpolatorKind::QuinticHermite:
                if constexpr (std::tuple_size_v<typename std::decay_t<decltype(tab)>::Record> >= 3) {
                    return interp::quintic_hermite(tab, cx);
                }
                break;
            case InterpolatorKind::SepticHermite:
                if constexpr (std::tuple_size_v<typename std::decay_t<decltype(tab)>::Record> >= 4) {
                    return interp::septic_hermite(tab, cx);
                }
                break;
            }
            return Target(0);
        },
        m.table);
}

template <class Target, class Wide>
Target BasicEvaluator<Target, Wide>::prime(Target x) const {
    const Impl& m = *impl_;
    if (!(x > Target(m.sup.a) && x < Target(m.sup.b))) {
        return x != x ? x : Target(0);
    }
    const Coord<Target> cx(x);
    return std::visit(
        [&](const auto& tab) -> Target {
            switch (m.interp) {
            case InterpolatorKind::Linear: return interp::linear(tab, cx, 1);
            case InterpolatorKind::MatchedHolder: return interp::matched_holder_prime(tab, cx);
            case InterpolatorKind::CubicHermite: return interp::cubic_hermite_prime(tab, cx);
            case InterpolatorKind::QuinticHermite:
                if constexpr (std::tuple_size_v<typename std::decay_t<decltype(tab)>::Record> >= 3) {
                    return interp::quintic_hermite_prime(tab, cx);
                }
                break;
            case InterpolatorKind::SepticHermite:
                if constexpr (std::tuple_size_v<typename std::decay_t<decltype(tab)>::Record> >= 4) {
                    return interp::septic_hermite_prime(tab, cx);
                }
                break;
            }
            return Target(0);
        },
        m.table);
}

template <class Target, class Wide>
Target BasicEvaluator<Target, Wide>::double_prime(Target x) const {
    const Impl& m = *impl_;
    if (!has_double_prime()) {
        throw UnsupportedDerivative(m.p, 2, max_derivative());
    }
    if (!(x > Target(m.sup.a) && x < Target(m.sup.b))) {
        return x != x ? x : Target(0);
    }
    const Coord<Target> cx(x);
    return std::visit(
        [&](const auto& tab) -> Target {
            if constexpr (std::tuple_size_v<typename std::decay_t<decltype(tab)>::Record> >= 4) {
                if (m.interp == InterpolatorKind::SepticHermite) {
                    return interp::septic_hermite_double_prime(tab, cx);
                }
            }
            if constexpr (std::tuple_size_v<typename std::decay_t<decltype(tab)>::Record> >= 3) {
                return interp::quintic_hermite_double_prime(tab, cx);
            }
            return Target(0);
        },
        m.table);
}

template <class Target, class Wide>
int BasicEvaluator<Target, Wide>::p() const noexcept {
    return impl_->p;
}

template <class Target, class Wide>
int BasicEvaluator<Target, Wide>::refinement() const noexcept {
    return impl_->j;
}

template <class Target, class Wide>
FunctionKind BasicEvaluator<Target, Wide>::kind() const noexcept {
    return impl_->kind;
}

template <class Target, class Wide>
InterpolatorKind BasicEvaluator<Target, Wide>::interpolator() const noexcept {
    return impl_->interp;
}

template <class Target, class Wide>
Support BasicEvaluator<Target, Wide>::support() const noexcept {
    return impl_->sup;
}

template <class Target, class Wide>
bool BasicEvaluator<Target, Wide>::has_prime() const noexcept {
    return static_cast<bool>(impl_);
}

template <class Target, class Wide>
bool BasicEvaluator<Target, Wide>::has_double_prime() const noexcept {
    return impl_ && (impl_->interp == InterpolatorKind::QuinticHermite ||
                     impl_->interp == InterpolatorKind::SepticHermite);
}

template <class Target, class Wide>
std::size_t BasicEvaluator<Target, Wide>::bytes() const noexcept {
    return std::visit([](const auto& tab) { return tab.bytes(); }, impl_->table);
}

template <class Target, class Wide>
std::size_t BasicEvaluator<Target, Wide>::node_count() const noexcept {
    return std::visit([](const auto& tab) { return tab.size(); }, impl_->table);
}

template <class Target, class Wide>
Target BasicEvaluator<Target, Wide>::node_value(std::size_t i, int order) const {
    return std::visit(
        [&](const auto& tab) -> Target {
            const auto& rec = tab[i];
            if (order < 0 || static_cast<std::size_t>(order) >= rec.size()) {
                throw UnsupportedDerivative(impl_->p, order, static_cast<int>(rec.size()) - 1);
            }
            return rec[static_cast<std::size_t>(order)];
        },
        impl_->table);
}

template class BasicEvaluator<float, double>;
template class BasicEvaluator<double, DoubleWord>;
template class BasicEvaluator<double, double>;
template class BasicEvaluator<DoubleWord, DoubleWord>;

}  // namespace daub
