#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "daub/errors.hpp"
#include "daub/evaluators.hpp"
#include "daub/transforms.hpp"

using namespace daub;

namespace {

EvaluatorOptions at(int j) {
    EvaluatorOptions o;
    o.refinement = j;
    return o;
}

}  // namespace

TEST_SUITE("transforms") {

TEST_CASE("trapezoid integrates sin and lines") {
    const auto r = adaptive_trapezoid([](double x) { return std::sin(x); }, 0, std::numbers::pi);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
    const auto l = adaptive_trapezoid([](double x) { return 3 * x + 1; }, -1, 2);
    CHECK(l.value == doctest::Approx(7.5).epsilon(1e-15));
    CHECK(l.levels == TrapezoidOptions{}.min_levels);
}

TEST_CASE("trapezoid reports non-convergence") {
    TrapezoidOptions o;
    o.max_levels = 5;
    o.min_levels = 2;
    const auto r = adaptive_trapezoid([](double x) { return std::sqrt(std::abs(x)); }, -1, 1, o);
    CHECK_FALSE(r.converged);
    CHECK_THROWS_AS(r.value_or_throw(), NonConvergence);
}

TEST_CASE("cell quadrature handles cusps and root singularities") {
    const auto a = integrate_cells([](double x) { return std::abs(x - 0.3); }, -1, 1);
    CHECK(a.converged);
    CHECK(a.value == doctest::Approx(1.09).epsilon(1e-10));
    const auto b = integrate_cells([](double x) { return std::sqrt(x); }, 0, 1);
    CHECK(b.converged);
    CHECK(b.value == doctest::Approx(2.0 / 3).epsilon(1e-9));
    const auto c = integrate_cells([](double) { return 0.0; }, 0, 5);
    CHECK(c.converged);
    CHECK(c.value == 0.0);
}

TEST_CASE("cell quadrature gives up at the evaluation cap") {
    CellQuadratureOptions o;
    o.rel_tol = 1e-14;
    o.abs_tol = 0.0;
    o.max_evaluations = 10000;
    const auto r = integrate_cells([](double x) { return x == 0 ? 0.0 : std::sin(1 / x); }, -1, 1, o);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations <= 10000 + 1000);
}

TEST_CASE("scaling functions are orthonormal") {
    const auto phi = make_scaling<double>(4, at(12));
    const auto g0 = integrate_cells([&](double x) { return phi(x) * phi(x); }, 0, 7);
    const auto g1 = integrate_cells([&](double x) { return phi(x) * phi(x - 1); }, 0, 7);
    CHECK(g0.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(g1.value) <= 1e-6);
}

TEST_CASE("cwt of a constant vanishes") {
    const auto psi = make_wavelet<double>(5, at(10));
    const auto one = parse_named_function("const:1");
    for (double s : {-2.0, 0.5, 3.0}) {
        for (double t : {-1.0, 0.0, 2.5}) {
            const auto r = cwt(one.f, psi, s, t);
            CHECK(r.converged);
            CHECK(std::abs(r.value) <= 1e-8);
        }
    }
    CHECK_THROWS_AS(cwt(one.f, psi, 0.0, 1.0), DomainError);
}

TEST_CASE("cwt of low-degree polynomials vanishes") {
    const auto psi = make_wavelet<double>(6, at(10));
    const auto f = parse_named_function("poly:1,-2,0.5,3");
    const auto r = cwt(f.f, psi, 1.5, 0.25);
    CHECK(std::abs(r.value) <= 1e-7);
}

TEST_CASE("named functions") {
    CHECK(parse_named_function("poly:1,2,3").f(2.0) == 17.0);
    CHECK(parse_named_function("const:-2.5").f(10.0) == -2.5);
    const auto s = parse_named_function("sin_recip:1.3");
    CHECK(s.f(0.0) == 0.0);
    CHECK(s.f(2.0) == doctest::Approx(std::sin(0.65)));
    CHECK_FALSE(s.interval.has_value());
    const auto b = parse_named_function("bumps");
    REQUIRE(b.interval.has_value());
    CHECK(b.interval->first == 0.0);
    CHECK(b.f(-0.1) == 0.0);
    CHECK(b.f(1.0) == 0.0);
    CHECK(b.f(0.13) > 5.0);
    CHECK_THROWS_AS(parse_named_function("gauss"), DomainError);
    CHECK_THROWS_AS(parse_named_function("const:abc"), DomainError);
    CHECK_THROWS_AS(parse_named_function("poly:1,,2"), DomainError);
    CHECK_THROWS_AS(parse_named_function("bumps:2"), DomainError);
}

TEST_CASE("bumps matches a direct evaluation") {
    const double t[] = {.1, .13, .15, .23, .25, .40, .44, .65, .76, .78, .81};
    const double h[] = {4, 5, 3, 4, 5, 4.2, 2.1, 4.3, 3.1, 5.1, 4.2};
    const double w[] = {.005, .005, .006, .01, .01, .03, .01, .01, .005, .008, .005};
    for (double x : {0.01, 0.1, 0.333, 0.78, 0.99}) {
        double f = 0;
        for (int i = 0; i < 11; ++i) f += h[i] * std::pow(1 + std::abs((x - t[i]) / w[i]), -4);
        CHECK(bumps(x) == doctest::Approx(f).epsilon(1e-14));
    }
}

TEST_CASE("Hoyer sparsity") {
    const std::vector<double> one_hot{0, 0, 3, 0};
    const std::vector<double> flat{2, -2, 2, 2};
    CHECK(hoyer_sparsity(one_hot) == doctest::Approx(1.0));
    CHECK(hoyer_sparsity(flat) == doctest::Approx(0.0));
    CHECK_THROWS_AS(hoyer_sparsity(std::vector<double>{1.0}), DomainError);
    CHECK_THROWS_AS(hoyer_sparsity(std::vector<double>{0.0, 0.0}), DomainError);
}

TEST_CASE("threshold keeps only larger entries") {
    WaveletCoefficientSet s;
    s.p = 3;
    s.j_min = -1;
    s.j_max = 0;
    s.entries[{BasisKind::Phi, 0, 0}] = 0.5;
    s.entries[{BasisKind::Psi, -1, 2}] = -1e-4;
    s.entries[{BasisKind::Psi, 0, 1}] = 1e-3;
    const auto t = threshold(s, 1e-3);
    CHECK(t.size() == 1);
    CHECK(t.tau == 1e-3);
    CHECK(t.entries.count({BasisKind::Phi, 0, 0}) == 1);
}

TEST_CASE("expanding a scaling function gives a single coefficient") {
    const int p = 4;
    const auto phi = make_scaling<double>(p, at(12));
    const auto psi = make_wavelet<double>(p, at(12));
    const auto set = expansion_coefficients([&](double x) { return phi(x); }, 0, 2 * p - 1, phi, psi, -2, 0);
    for (const auto& [key, c] : set.entries) {
        CAPTURE(key.j);
        CAPTURE(key.k);
        if (key.kind == BasisKind::Phi && key.k == 0) {
            CHECK(c == doctest::Approx(1.0).epsilon(1e-6));
        } else {
            CHECK(std::abs(c) <= 1e-6);
        }
    }
    const auto again = expansion_coefficients([&](double x) { return phi(x); }, 0, 2 * p - 1, phi, psi, -2, 0);
    CHECK(again.entries == set.entries);
}

TEST_CASE("series of a smooth bump reconstructs it") {
    const int p = 5;
    const auto phi = make_scaling<double>(p, at(12));
    const auto psi = make_wavelet<double>(p, at(12));
    auto f = [](double x) { return x <= 0 || x >= 1 ? 0.0 : std::pow(std::sin(std::numbers::pi * x), 6); };
    ExpansionStats stats;
    const auto set = expansion_coefficients(f, 0, 1, phi, psi, -6, 0, {}, &stats);
    CHECK(stats.unconverged == 0);
    const SparseSeries series(set, phi, psi);
    double worst = 0;
    for (int i = 0; i <= 200; ++i) {
        const double x = -0.2 + 1.4 * i / 200.0;
        const double a = series(x);
        CHECK(a == doctest::Approx(series_eval(set, x, phi, psi)).epsilon(1e-13));
        worst = std::max(worst, std::abs(a - f(x)));
    }
    CHECK(worst <= 1e-4);
}

TEST_CASE("sparsity picks the matching order") {
    EvaluatorOptions o = at(10);
    const auto phi5 = make_scaling<double>(5, o);
    ExpansionOptions eo;
    eo.evaluator = o;
    const auto choice = choose_p_by_sparsity([&](double x) { return phi5(x); }, 0, 9, 4, 6, -1, 0, eo);
    CHECK(choice.p == 5);
    CHECK(choice.sparsity > 0.9);
}

TEST_CASE("empty series evaluates to zero") {
    WaveletCoefficientSet s;
    s.p = 3;
    const auto phi = make_scaling<double>(3, at(6));
    const auto psi = make_wavelet<double>(3, at(6));
    CHECK(series_eval(s, 0.5, phi, psi) == 0.0);
    CHECK(SparseSeries(s, phi, psi)(0.5) == 0.0);
}

}
