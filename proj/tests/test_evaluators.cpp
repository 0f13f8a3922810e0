#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "daub/defaults.hpp"
#include "daub/dyadic.hpp"
#include "daub/errors.hpp"
#include "daub/evaluators.hpp"

using namespace daub;

namespace {

EvaluatorOptions at(int j) {
    EvaluatorOptions o;
    o.refinement = j;
    return o;
}

}  // namespace

TEST_SUITE("evaluators") {

TEST_CASE("zero outside the support") {
    for (int p : {2, 3, 8}) {
        CAPTURE(p);
        const auto phi = make_scaling<double>(p, at(6));
        const auto psi = make_wavelet<double>(p, at(6));
        CHECK(phi(-1.0) == 0.0);
        CHECK(phi(2.0 * p - 1 + 0.01) == 0.0);
        CHECK(phi(2.0 * p - 1) == 0.0);
        CHECK(psi(-static_cast<double>(p)) == 0.0);
        CHECK(psi(p + 0.5) == 0.0);
        CHECK(phi.prime(-3.0) == 0.0);
        CHECK(psi.support().a == 1.0 - p);
        CHECK(psi.support().b == static_cast<double>(p));
    }
}

TEST_CASE("NaN propagates") {
    const auto phi = make_scaling<double>(4, at(5));
    CHECK(std::isnan(phi(std::numeric_limits<double>::quiet_NaN())));
    CHECK(std::isnan(phi.prime(std::numeric_limits<double>::quiet_NaN())));
    const auto f = make_scaling<float>(4, at(5));
    CHECK(std::isnan(f(std::numeric_limits<float>::quiet_NaN())));
}

TEST_CASE("p=2 at one half") {
    const auto phi = make_scaling<double>(2, at(4));
    CHECK(phi(0.5) == doctest::Approx((2 + std::sqrt(3.0)) / 4).epsilon(1e-15));
    CHECK(phi(1.0) == doctest::Approx((1 + std::sqrt(3.0)) / 2).epsilon(1e-15));
}

TEST_CASE("grid nodes return the stored records") {
    const auto phi = make_scaling<double>(6, at(5));
    const auto grid = build_scaling_grid<DoubleWord>(6, 5, 0);
    REQUIRE(phi.node_count() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(phi.node_value(i) == static_cast<double>(grid.values[i]));
        CHECK(phi(grid.abscissa(i)) == phi.node_value(i));
    }
}

TEST_CASE("float and double targets agree") {
    const auto d = make_scaling<double>(8, at(10));
    const auto f = make_scaling<float>(8, at(10));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 15);
    for (int i = 0; i < 500; ++i) {
        const float x = static_cast<float>(u(rng));
        CHECK(std::abs(f(x) - d(static_cast<double>(x))) <= 1e-6);
    }
}

TEST_CASE("prime matches finite differences") {
    for (int p : {3, 5, 8, 12}) {
        CAPTURE(p);
        const auto phi = make_scaling<double>(p, at(14));
        std::mt19937_64 rng(p);
        std::uniform_real_distribution<double> u(0.1, 2.0 * p - 1.1);
        const double h = 1e-5;
        double worst = 0;
        for (int i = 0; i < 200; ++i) {
            const double x = u(rng);
            const double fd = (phi(x + h) - phi(x - h)) / (2 * h);
            worst = std::max(worst, std::abs(fd - phi.prime(x)));
        }
        // phi' of p=3 is barely Holder continuous
        CHECK(worst <= (p == 3 ? 0.25 : 1e-4));
    }
}

TEST_CASE("double_prime availability follows the interpolator") {
    const auto cubic = make_scaling<double>(4, at(6));
    CHECK(cubic.interpolator() == InterpolatorKind::CubicHermite);
    CHECK(cubic.has_prime());
    CHECK_FALSE(cubic.has_double_prime());
    CHECK(cubic.max_derivative() == 1);
    CHECK_THROWS_AS(cubic.double_prime(1.0), UnsupportedDerivative);

    const auto quintic = make_scaling<double>(8, at(8));
    CHECK(quintic.has_double_prime());
    const double h = 1e-4;
    const double x = 3.3;
    const double fd = (quintic.prime(x + h) - quintic.prime(x - h)) / (2 * h);
    CHECK(quintic.double_prime(x) == doctest::Approx(fd).epsilon(1e-4));

    const auto holder = make_scaling<double>(2, at(8));
    CHECK(holder.interpolator() == InterpolatorKind::MatchedHolder);
    CHECK_THROWS_AS(holder.double_prime(1.0), UnsupportedDerivative);
}

TEST_CASE("interpolator override") {
    EvaluatorOptions o = at(6);
    o.interpolator = InterpolatorKind::CubicHermite;
    const auto phi = make_scaling<double>(10, o);
    CHECK(phi.interpolator() == InterpolatorKind::CubicHermite);
    CHECK_FALSE(phi.has_double_prime());
}

TEST_CASE("default refinements come from the shipped table") {
    const auto f = make_scaling<float>(8);
    CHECK(f.refinement() == default_refinement(8, RefinementMode::Ulp, Precision::Single));
    EvaluatorOptions o;
    o.mode = RefinementMode::Absolute;
    const auto d = make_scaling<double>(8, o);
    CHECK(d.refinement() == default_refinement(8, RefinementMode::Absolute, Precision::Double));
    CHECK(resolve_refinement(8, Precision::Double, at(3)) == 3);
}

TEST_CASE("budget is enforced before building") {
    EvaluatorOptions o = at(24);
    o.byte_budget = std::size_t{1} << 20;
    CHECK_THROWS_AS(make_scaling<double>(8, o), BudgetExceeded);
    CHECK(evaluator_bytes(8, 10, FunctionKind::Scaling, InterpolatorKind::QuinticHermite, 8, 16) <
          evaluator_bytes(8, 11, FunctionKind::Scaling, InterpolatorKind::QuinticHermite, 8, 16));
}

TEST_CASE("grid counts per interpolator") {
    CHECK(grids_needed(InterpolatorKind::Linear) == 2);
    CHECK(grids_needed(InterpolatorKind::MatchedHolder) == 2);
    CHECK(grids_needed(InterpolatorKind::CubicHermite) == 2);
    CHECK(grids_needed(InterpolatorKind::QuinticHermite) == 3);
    CHECK(grids_needed(InterpolatorKind::SepticHermite) == 4);
    CHECK(precision_of<float>() == Precision::Single);
    CHECK(precision_of<double>() == Precision::Double);
}

TEST_CASE("copies share tables") {
    const auto a = make_wavelet<double>(5, at(7));
    const auto b = a;
    CHECK(b.bytes() == a.bytes());
    CHECK(b(0.3) == a(0.3));
    CHECK(static_cast<bool>(b));
    CHECK_FALSE(static_cast<bool>(BasicEvaluator<double>{}));
}

TEST_CASE("from_grids matches direct construction") {
    const int p = 6;
    const int j = 7;
    std::vector<DyadicGrid<DoubleWord>> grids;
    for (int n = 0; n < 3; ++n) grids.push_back(build_wavelet_grid<DoubleWord>(p, j, n));
    const auto e = BasicEvaluator<double>::from_grids({&grids[0], &grids[1], &grids[2]},
                                                      InterpolatorKind::QuinticHermite);
    const auto direct = make_wavelet<double>(p, at(j));
    for (double x : {-4.9, -1.0, 0.123, 2.5, 5.99}) {
        CHECK(e(x) == direct(x));
        CHECK(e.prime(x) == direct.prime(x));
        CHECK(e.double_prime(x) == direct.double_prime(x));
    }
    CHECK(e.kind() == FunctionKind::Wavelet);
    CHECK(e.refinement() == j);
}

TEST_CASE("integer translates of the evaluator sum to one") {
    for (int p : {3, 6, 10}) {
        CAPTURE(p);
        const auto phi = make_scaling<double>(p, at(10));
        const double bound = 4 * smoothness_model(p).predicted_error(10);
        std::mt19937_64 rng(p);
        std::uniform_real_distribution<double> u(0, 1);
        for (int i = 0; i < 200; ++i) {
            const double x = u(rng);
            double s = 0;
            for (int k = 0; k < 2 * p - 1; ++k) s += phi(x + k);
            CHECK(std::abs(s - 1) <= bound + 1e-14);
        }
    }
}

TEST_CASE("unsupported orders") {
    CHECK_THROWS_AS(make_scaling<double>(1), UnsupportedOrder);
    CHECK_THROWS_AS(make_wavelet<float>(20), UnsupportedOrder);
}

}
