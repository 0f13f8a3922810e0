#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "daub/accuracy.hpp"
#include "daub/defaults.hpp"
#include "daub/errors.hpp"

using namespace daub;

TEST_SUITE("accuracy") {

TEST_CASE("ulp sizes") {
    CHECK(ulp_size<float>(1.0f) == std::ldexp(1.0, -23));
    CHECK(ulp_size<float>(1.5f) == std::ldexp(1.0, -23));
    CHECK(ulp_size<float>(0.75f) == std::ldexp(1.0, -24));
    CHECK(ulp_size<double>(1.0) == std::ldexp(1.0, -52));
    CHECK(ulp_size<float>(0.0f) == static_cast<double>(std::numeric_limits<float>::denorm_min()));
}

TEST_CASE("ulp distance counts representables") {
    const float one_up = std::nextafter(1.0f, 2.0f);
    CHECK(ulp_distance<float>(one_up, 1.0) == 1.0);
    CHECK(ulp_distance<float>(1.0f, 1.0) == 0.0);
    CHECK(ulp_distance<float>(1.0f, 1.0 + std::ldexp(1.0, -24)) == doctest::Approx(-0.5));
    const double d_up = std::nextafter(2.0, 3.0);
    CHECK(ulp_distance<double>(d_up, DoubleWord(2.0)) == 1.0);
    CHECK(ulp_distance<double>(2.0, DoubleWord(2.0) + std::ldexp(1.0, -60)) == doctest::Approx(-1.0 / 512));
}

TEST_CASE("flags") {
    CHECK(ulp_flag<float>(0.0) == UlpFlag::Zero);
    CHECK(ulp_flag<float>(1e-40) == UlpFlag::Subnormal);
    CHECK(ulp_flag<float>(1e-20) == UlpFlag::None);
    CHECK(ulp_flag<float>(1e-50) == UlpFlag::Zero);
    CHECK(to_string(UlpFlag::Subnormal) == "subnormal");
}

TEST_CASE("condition numbers") {
    CHECK(condition_number(2.0, 3.0, 4.0) == 6.0);
    CHECK(condition_number(0.0, 0.0, 4.0) == 0.0);
    CHECK(std::isinf(condition_number(0.0, 1.0, 4.0)));
    CHECK(condition_number(1.0, 5.0, 0.0) == 0.0);
}

TEST_CASE("summaries ignore flagged and ill-conditioned records") {
    std::vector<UlpRecord> r;
    for (int i = 0; i < 100; ++i) {
        r.push_back({static_cast<double>(i), static_cast<double>(i % 10) * (i % 2 ? -1 : 1), 1.0, UlpFlag::None});
    }
    r.push_back({1000, 1e9, 1e6, UlpFlag::None});
    r.push_back({1001, 1e9, 1.0, UlpFlag::Zero});
    const auto s = summarize(r, 1e3);
    CHECK(s.samples == 102);
    CHECK(s.flagged == 1);
    CHECK(s.well_conditioned == 100);
    CHECK(s.median_ulp_wellcond == doctest::Approx(4.5));
    CHECK(s.max_ulp_wellcond == 9.0);
    CHECK(s.p99_ulp_wellcond == 9.0);
    CHECK(s.max_ulp == 1e9);
}

TEST_CASE("samples are seeded, sorted and in range") {
    const auto a = sample_abscissas<float>(0.0, 15.0, 1000, 42);
    const auto b = sample_abscissas<float>(0.0, 15.0, 1000, 42);
    const auto c = sample_abscissas<float>(0.0, 15.0, 1000, 43);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a.size() == 1000);
    CHECK(std::is_sorted(a.begin(), a.end()));
    CHECK(a.front() >= 0.0f);
    CHECK(a.back() <= 15.0f);
}

TEST_CASE("float report at a fine refinement is near one ulp") {
    EvaluatorOptions o;
    o.refinement = 12;
    const BasicEvaluator<float> e(FunctionKind::Scaling, 8, o);
    o.refinement = 16;
    const ReferenceEvaluator<float> ref(FunctionKind::Scaling, 8, o);
    SamplerSpec spec;
    spec.count = 5000;
    const auto rep = ulp_report(e, ref, spec);
    CHECK(rep.records.size() == 5000);
    CHECK(rep.summary.median_ulp_wellcond <= 1.5);
    CHECK(rep.summary.p99_ulp_wellcond <= 4.0);
    for (const auto& rec : rep.records) {
        REQUIRE(rec.x >= 0.0);
        REQUIRE(rec.x <= 15.0);
    }
}

TEST_CASE("coarse refinement is far from one ulp") {
    EvaluatorOptions o;
    o.refinement = 5;
    const BasicEvaluator<float> e(FunctionKind::Scaling, 8, o);
    o.refinement = 9;
    const ReferenceEvaluator<float> ref(FunctionKind::Scaling, 8, o);
    SamplerSpec spec;
    spec.count = 2000;
    CHECK(ulp_report(e, ref, spec).summary.median_ulp_wellcond > 1.5);
}

TEST_CASE("least-squares fit recovers a line") {
    std::vector<ConvergenceSample> s;
    for (int j = 2; j < 8; ++j) s.push_back({j, -3.0 - 1.5 * j});
    const auto fit = convergence_fit(s);
    CHECK(fit.slope == doctest::Approx(-1.5));
    CHECK(fit.intercept == doctest::Approx(-3.0));
    CHECK(fit.residual == doctest::Approx(0.0).epsilon(1e-12));
    s.resize(3);
    CHECK_THROWS_AS(convergence_fit(s), InsufficientData);
}

TEST_CASE("measured convergence of p=4 follows the cubic model") {
    const auto fit = measure_convergence(4, 3, 7);
    CHECK(fit.interpolator == InterpolatorKind::CubicHermite);
    CHECK(fit.samples.size() == 5);
    CHECK(fit.slope == doctest::Approx(-1.62).epsilon(0.15));
}

TEST_CASE("sup error shrinks with refinement") {
    const auto ref = build_scaling_grid<DoubleWord>(5, 12, 0);
    EvaluatorOptions o;
    o.refinement = 6;
    const auto e6 = make_scaling<double>(5, o);
    o.refinement = 8;
    const auto e8 = make_scaling<double>(5, o);
    CHECK(sup_error(e8, ref) < sup_error(e6, ref));
}

TEST_CASE("budget caps") {
    for (int p : {2, 8, 19}) {
        CAPTURE(p);
        const int cap = budget_cap(p, Precision::Single);
        const auto interp = smoothness_model(p).interpolator;
        CHECK(evaluator_bytes(p, cap, FunctionKind::Wavelet, interp, 4, 8) <= kDefaultByteBudget);
        CHECK(evaluator_bytes(p, cap + 1, FunctionKind::Wavelet, interp, 4, 8) > kDefaultByteBudget);
    }
}

TEST_CASE("model-only regeneration reproduces the shipped absolute column") {
    RegenOptions o;
    o.empirical_float = false;
    o.orders = {5, 8};
    for (const auto& row : regenerate_default_table(o)) {
        if (row.mode == RefinementMode::Absolute) {
            CHECK(row.refinement == default_refinement(row.p, row.mode, row.precision));
        }
    }
    CHECK(model_refinement(8, -24.0, 30) == 7);
    CHECK_FALSE(model_refinement(2, -24.0, 10).has_value());
}

TEST_CASE("default table parses and formats") {
    const auto& rows = shipped_default_table();
    CHECK(rows.size() == 18 * 4);
    CHECK(parse_default_table(format_default_table(rows)).size() == rows.size());
    CHECK_THROWS_AS(parse_default_table("p,mode\n1,2\n"), FormatError);
    CHECK(default_refinement(8, RefinementMode::Ulp, Precision::Single) == 12);
}

TEST_CASE("capability table") {
    CHECK(max_derivative_order(2) == 1);
    CHECK(max_derivative_order(3) == 2);
    CHECK(max_derivative_order(6) == 3);
    CHECK(max_derivative_order(9) == 4);
    CHECK(max_derivative_order(13) == 5);
    CHECK(max_derivative_order(19) == 6);
    CHECK(smoothness_model(6).slope == -2.20);
}

}
