#include "cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "daub/daub.hpp"
#include "daub/detail/parallel.hpp"

namespace daub::cli {
namespace {

using json = nlohmann::ordered_json;

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error("usage", what) {}
};

int status_for(const std::string& code) {
    if (code == "usage" || code == "domain-error" || code == "unsupported-derivative" ||
        code == "unsupported-order") {
        return kUsage;
    }
    if (code == "derivative-unavailable" || code == "budget-exceeded") {
        return kCapability;
    }
    if (code == "non-convergence") {
        return kNonConvergence;
    }
    return kFailure;
}

// Flags shared by most subcommands.
struct Common {
    int p = 0;
    std::optional<int> refinement;
    std::string mode;
    std::string out;
    std::string summary;
    unsigned threads = 0;
    double budget_mib = static_cast<double>(kDefaultByteBudget >> 20);
};

void add_p(CLI::App* sub, Common& c, bool required = true) {
    auto* opt = sub->add_option("--p", c.p, "vanishing moments, 2..19");
    if (required) {
        opt->required();
    }
}

void add_output(CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out, "output file (default: standard output)");
    sub->add_option("--summary", c.summary, "JSON summary file");
    sub->add_option("--threads", c.threads, "worker threads, 0 = all cores");
}

void add_evaluator_flags(CLI::App* sub, Common& c) {
    sub->add_option("--refinement", c.refinement, "grid refinement j");
    sub->add_option("--mode", c.mode, "default refinement table: ulp or absolute");
    sub->add_option("--budget-mib", c.budget_mib, "memory budget for tables, MiB");
}

void check_p(int p) {
    check_order(p);
}

void check_refinement(const std::optional<int>& j) {
    if (j && (*j < 0 || *j > 40)) {
        throw UsageError("--refinement must be in [0, 40]");
    }
}

std::size_t budget_bytes(double mib) {
    if (!(mib > 0) || mib > 1e9) {
        throw UsageError("--budget-mib must be positive");
    }
    return static_cast<std::size_t>(mib * 1048576.0);
}

RefinementMode resolve_mode(const std::string& name, RefinementMode fallback) {
    if (name.empty()) {
        return fallback;
    }
    RefinementMode m{};
    if (!parse_mode(name, m)) {
        throw UsageError("--mode must be ulp or absolute");
    }
    return m;
}

FunctionKind parse_kind(const std::string& name) {
    if (name == "phi" || name == "scaling") {
        return FunctionKind::Scaling;
    }
    if (name == "psi" || name == "wavelet") {
        return FunctionKind::Wavelet;
    }
    throw UsageError("--kind must be phi or psi");
}

std::optional<InterpolatorKind> parse_interp_flag(const std::string& name) {
    if (name.empty()) {
        return std::nullopt;
    }
    InterpolatorKind k{};
    if (!parse_interpolator(name, k)) {
        throw UsageError("unknown interpolator '" + name + "'");
    }
    return k;
}

Precision parse_precision_flag(const std::string& name) {
    Precision pr{};
    if (!parse_precision(name, pr)) {
        throw UsageError("--precision must be float or double");
    }
    return pr;
}

EvaluatorOptions evaluator_options(const Common& c, RefinementMode fallback,
                                   std::optional<InterpolatorKind> interp = std::nullopt) {
    check_refinement(c.refinement);
    EvaluatorOptions o;
    o.refinement = c.refinement;
    o.mode = resolve_mode(c.mode, fallback);
    o.interpolator = interp;
    o.byte_budget = budget_bytes(c.budget_mib);
    o.threads = c.threads;
    return o;
}

std::string format_float(float x) {
    if (x == 0) {
        return std::signbit(x) ? "-0" : "0";
    }
    std::array<char, 48> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

// Where data and the JSON summary go. The summary follows --summary, else
// shares whichever stream the data is not on.
class Sinks {
public:
    Sinks(const Common& c, std::ostream& out, std::ostream& err) : c_(c), out_(out), err_(err) {}

    std::ostream& data() {
        if (c_.out.empty()) {
            return out_;
        }
        if (!file_.is_open()) {
            file_.open(c_.out, std::ios::binary | std::ios::trunc);
            if (!file_) {
                throw Error("io-error", "cannot open '" + c_.out + "' for writing");
            }
        }
        return file_;
    }

    void summary(const json& j) {
        if (!c_.summary.empty()) {
            std::ofstream f(c_.summary, std::ios::trunc);
            if (!f) {
                throw Error("io-error", "cannot open '" + c_.summary + "' for writing");
            }
            f << j.dump(2) << '\n';
            return;
        }
        (c_.out.empty() ? err_ : out_) << j.dump(2) << '\n';
    }

    void finish() {
        if (file_.is_open()) {
            file_.close();
            if (!file_) {
                throw Error("io-error", "failed writing '" + c_.out + "'");
            }
        }
        out_.flush();
    }

private:
    const Common& c_;
    std::ostream& out_;
    std::ostream& err_;
    std::ofstream file_;
};

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

// lo, hi, n as given to range flags.
struct Range {
    std::vector<double> raw;

    std::vector<double> points(const char* flag) const {
        if (raw.size() != 3) {
            throw UsageError(std::string(flag) + " takes lo hi n");
        }
        const double lo = raw[0];
        const double hi = raw[1];
        const double n = raw[2];
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            throw UsageError(std::string(flag) + " bounds must be finite");
        }
        if (!(n >= 1) || n != std::floor(n) || n > 1e7) {
            throw UsageError(std::string(flag) + " count must be a positive integer");
        }
        auto v = linspace(lo, hi, static_cast<std::size_t>(n));
        std::sort(v.begin(), v.end());
        return v;
    }
};

json quadrature_json(const CellQuadratureOptions& q) {
    json j;
    j["rel_tol"] = q.rel_tol;
    if (q.abs_tol) {
        j["abs_tol"] = *q.abs_tol;
    }
    return j;
}

// --- eval ---------------------------------------------------------------------

struct EvalArgs {
    Common c;
    double x = 0;
    int derivative = 0;
    std::string kind = "phi";
    std::string precision = "double";
    std::string interpolator;
};

template <class Target>
Target evaluate(const BasicEvaluator<Target>& e, Target x, int derivative) {
    switch (derivative) {
        case 1:
            return e.prime(x);
        case 2:
            return e.double_prime(x);
        default:
            return e(x);
    }
}

void cmd_eval(EvalArgs& a, std::ostream& out, std::ostream& err) {
    check_p(a.c.p);
    if (a.derivative < 0 || a.derivative > 2) {
        throw UsageError("--derivative must be 0, 1 or 2");
    }
    const FunctionKind kind = parse_kind(a.kind);
    const Precision prec = parse_precision_flag(a.precision);
    const auto interp_flag = parse_interp_flag(a.interpolator);
    const InterpolatorKind interp = interp_flag.value_or(smoothness_model(a.c.p).interpolator);
    const int available = grids_needed(interp) >= 3 ? 2 : 1;
    if (a.derivative > available) {
        throw UnsupportedDerivative(a.c.p, a.derivative, available);
    }
    const EvaluatorOptions o = evaluator_options(a.c, RefinementMode::Ulp, interp_flag);
    Sinks sinks(a.c, out, err);
    std::string text;
    if (prec == Precision::Single) {
        BasicEvaluator<float> e(kind, a.c.p, o);
        text = format_float(evaluate(e, static_cast<float>(a.x), a.derivative));
    } else {
        BasicEvaluator<double> e(kind, a.c.p, o);
        text = format_double(evaluate(e, a.x, a.derivative));
    }
    sinks.data() << text << '\n';
    sinks.finish();
}

// --- grid ---------------------------------------------------------------------

struct GridArgs {
    Common c;
    int derivative = 0;
    std::string kind = "phi";
    std::string format = "csv";
};

void cmd_grid(GridArgs& a, std::ostream& out, std::ostream& err) {
    check_p(a.c.p);
    if (!a.c.refinement) {
        throw UsageError("--refinement is required");
    }
    check_refinement(a.c.refinement);
    if (a.derivative < 0) {
        throw UsageError("--derivative must be non-negative");
    }
    const FunctionKind kind = parse_kind(a.kind);
    if (a.format != "csv" && a.format != "bin") {
        throw UsageError("--format must be csv or bin");
    }
    check_derivative_order(a.c.p, a.derivative);
    BuildOptions bo;
    bo.byte_budget = budget_bytes(a.c.budget_mib);
    bo.threads = a.c.threads;
    const int j = *a.c.refinement;
    const auto grid = kind == FunctionKind::Scaling ? build_scaling_grid<DoubleWord>(a.c.p, j, a.derivative, bo)
                                                    : build_wavelet_grid<DoubleWord>(a.c.p, j, a.derivative, bo);
    Sinks sinks(a.c, out, err);
    if (a.format == "bin") {
        write_grid_binary(sinks.data(), grid);
    } else {
        write_grid_csv(sinks.data(), grid);
    }
    sinks.finish();
}

// --- convergence ----------------------------------------------------------------

struct ConvergenceArgs {
    Common c;
    int j_min = 0;
    int j_max = 0;
    std::string kind = "phi";
    std::string interpolator;
    int reference_offset = kDefaultReferenceOffset;
};

void cmd_convergence(ConvergenceArgs& a, std::ostream& out, std::ostream& err) {
    check_p(a.c.p);
    if (a.j_min < 0 || a.j_max - a.j_min < 3) {
        throw UsageError("need 0 <= j_min and j_max - j_min >= 3");
    }
    if (a.reference_offset < 1 || a.j_max + a.reference_offset > 40) {
        throw UsageError("--reference-offset must be >= 1 with j_max + offset <= 40");
    }
    ConvergenceOptions o;
    o.kind = parse_kind(a.kind);
    o.interpolator = parse_interp_flag(a.interpolator);
    o.reference_offset = a.reference_offset;
    o.byte_budget = budget_bytes(a.c.budget_mib);
    o.threads = a.c.threads;
    const ConvergenceFit fit = measure_convergence(a.c.p, a.j_min, a.j_max, o);

    Sinks sinks(a.c, out, err);
    auto& os = sinks.data();
    os << "j,log2_sup_error\n";
    for (const auto& s : fit.samples) {
        os << s.j << ',' << format_double(s.log2_error) << '\n';
    }
    const SmoothnessModel& m = smoothness_model(a.c.p);
    json j;
    j["p"] = a.c.p;
    j["kind"] = std::string(to_string(o.kind));
    j["interpolator"] = std::string(to_string(fit.interpolator));
    j["j_min"] = a.j_min;
    j["j_max"] = a.j_max;
    j["reference_refinement"] = a.j_max + a.reference_offset;
    j["intercept"] = fit.intercept;
    j["slope"] = fit.slope;
    j["residual_rms"] = fit.residual;
    j["model_intercept"] = m.intercept;
    j["model_slope"] = m.slope;
    sinks.finish();
    sinks.summary(j);
}

// --- ulp ------------------------------------------------------------------------

struct UlpArgs {
    Common c;
    long long samples = 10000;
    double cond_threshold = 1e3;
    std::uint64_t seed = 0;
    std::string precision = "float";
    std::string kind = "phi";
    int reference_offset = 4;
    std::optional<double> lo;
    std::optional<double> hi;
    double reference_budget_mib = 4096;
};

template <class Target>
void run_ulp(UlpArgs& a, const EvaluatorOptions& o, FunctionKind kind, Sinks& sinks) {
    using Wide = wide_type_t<Target>;
    BasicEvaluator<Target> e(kind, a.c.p, o);
    EvaluatorOptions ro = o;
    ro.refinement = e.refinement() + a.reference_offset;
    ro.interpolator = e.interpolator();
    ro.byte_budget = budget_bytes(a.reference_budget_mib);
    BasicEvaluator<Wide, Wide> ref(kind, a.c.p, ro);
    SamplerSpec spec;
    spec.count = static_cast<std::size_t>(a.samples);
    spec.lo = a.lo;
    spec.hi = a.hi;
    spec.seed = a.seed;
    spec.cond_threshold = a.cond_threshold;
    spec.threads = a.c.threads;
    const UlpReport r = ulp_report(e, ref, spec);

    auto& os = sinks.data();
    os << "x,ulps,cond,flag\n";
    for (const auto& rec : r.records) {
        os << format_double(rec.x) << ',' << format_double(rec.ulps) << ',' << format_double(rec.cond) << ','
           << to_string(rec.flag) << '\n';
    }
    const UlpSummary& s = r.summary;
    json j;
    j["p"] = a.c.p;
    j["kind"] = std::string(to_string(kind));
    j["precision"] = std::string(to_string(precision_of<Target>()));
    j["refinement"] = e.refinement();
    j["reference_refinement"] = ref.refinement();
    j["interpolator"] = std::string(to_string(e.interpolator()));
    j["seed"] = a.seed;
    j["samples"] = s.samples;
    j["flagged"] = s.flagged;
    j["well_conditioned"] = s.well_conditioned;
    j["cond_threshold"] = s.cond_threshold;
    j["median_ulp"] = s.median_ulp;
    j["max_ulp"] = s.max_ulp;
    j["median_ulp_wellcond"] = s.median_ulp_wellcond;
    j["p99_ulp_wellcond"] = s.p99_ulp_wellcond;
    j["max_ulp_wellcond"] = s.max_ulp_wellcond;
    sinks.finish();
    sinks.summary(j);
}

void cmd_ulp(UlpArgs& a, std::ostream& out, std::ostream& err) {
    check_p(a.c.p);
    if (a.samples <= 0 || a.samples > 100'000'000) {
        throw UsageError("--samples must be in [1, 1e8]");
    }
    if (!(a.cond_threshold > 0)) {
        throw UsageError("--cond-threshold must be positive");
    }
    if (a.reference_offset < 1 || a.reference_offset > 10) {
        throw UsageError("--reference-offset must be in [1, 10]");
    }
    if (a.lo && a.hi && !(*a.lo < *a.hi)) {
        throw UsageError("--lo must be below --hi");
    }
    const FunctionKind kind = parse_kind(a.kind);
    const Precision prec = parse_precision_flag(a.precision);
    const EvaluatorOptions o = evaluator_options(a.c, RefinementMode::Ulp);
    Sinks sinks(a.c, out, err);
    if (prec == Precision::Single) {
        run_ulp<float>(a, o, kind, sinks);
    } else {
        run_ulp<double>(a, o, kind, sinks);
    }
}

// --- cwt ------------------------------------------------------------------------

struct CwtArgs {
    Common c;
    std::string function;
    Range s;
    Range t;
    // Tighter tolerances chase the unresolvable oscillation of sin(a/x) near 0.
    double tol = 1e-8;
    std::optional<double> abs_tol;
};

void cmd_cwt(CwtArgs& a, std::ostream& out, std::ostream& err) {
    check_p(a.c.p);
    const NamedFunction f = parse_named_function(a.function);
    const auto scales = a.s.points("--s");
    const auto shifts = a.t.points("--t");
    for (double s : scales) {
        if (s == 0) {
            throw DomainError("cwt scale s = 0 is not allowed");
        }
    }
    if (!(a.tol > 0 && a.tol < 1)) {
        throw UsageError("--tol must be in (0, 1)");
    }
    if (a.abs_tol && !(*a.abs_tol >= 0)) {
        throw UsageError("--abs-tol must be non-negative");
    }
    const EvaluatorOptions o = evaluator_options(a.c, RefinementMode::Absolute);
    const WaveletEvaluator<double> psi(a.c.p, o);
    CellQuadratureOptions q;
    q.rel_tol = a.tol;
    // W of a constant is 0, so a relative test alone never settles
    q.abs_tol = a.abs_tol.value_or(a.tol);

    const std::size_t n = scales.size() * shifts.size();
    std::vector<QuadratureResult> results(n);
    detail::parallel_for(
        n, a.c.threads,
        [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                results[i] = cwt(f.f, psi, scales[i / shifts.size()], shifts[i % shifts.size()], q);
            }
        },
        1);

    std::size_t unconverged = 0;
    double max_error = 0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!results[i].converged) {
            if (unconverged == 0 || results[i].error > results[worst].error) {
                worst = i;
            }
            ++unconverged;
        }
        max_error = std::max(max_error, results[i].error);
    }
    if (unconverged > 0) {
        throw NonConvergence("cwt did not converge at " + std::to_string(unconverged) + " of " + std::to_string(n) +
                                 " points, e.g. s=" + format_double(scales[worst / shifts.size()]) +
                                 " t=" + format_double(shifts[worst % shifts.size()]),
                             results[worst].value, results[worst].error);
    }

    Sinks sinks(a.c, out, err);
    auto& os = sinks.data();
    os << "s,t,W\n";
    for (std::size_t i = 0; i < n; ++i) {
        os << format_double(scales[i / shifts.size()]) << ',' << format_double(shifts[i % shifts.size()]) << ','
           << format_double(results[i].value) << '\n';
    }
    json j;
    j["p"] = a.c.p;
    j["function"] = f.name;
    j["refinement"] = psi.refinement();
    j["points"] = n;
    j["quadrature"] = quadrature_json(q);
    j["max_error_estimate"] = max_error;
    sinks.finish();
    sinks.summary(j);
}

// --- expand ---------------------------------------------------------------------

struct ExpandArgs {
    Common c;
    std::string function;
    std::vector<double> interval;
    std::vector<int> choose_p;
    int j_min = -8;
    int j_max = 0;
    double tau = 0;
    double tol = 1e-8;
    double abs_tol = 1e-8;
};

std::pair<double, double> function_interval(const NamedFunction& f, const std::vector<double>& flag) {
    if (!flag.empty()) {
        if (flag.size() != 2 || !std::isfinite(flag[0]) || !std::isfinite(flag[1]) || !(flag[0] < flag[1])) {
            throw UsageError("--interval takes lo hi with lo < hi");
        }
        return {flag[0], flag[1]};
    }
    if (!f.interval) {
        throw UsageError("function '" + f.name + "' needs --interval");
    }
    return *f.interval;
}

void cmd_expand(ExpandArgs& a, std::ostream& out, std::ostream& err) {
    int p_lo = a.c.p;
    int p_hi = a.c.p;
    if (!a.choose_p.empty()) {
        if (a.choose_p.size() != 2 || a.choose_p[0] > a.choose_p[1]) {
            throw UsageError("--choose-p takes lo hi with lo <= hi");
        }
        p_lo = a.choose_p[0];
        p_hi = a.choose_p[1];
        check_p(p_lo);
        check_p(p_hi);
    } else if (a.c.p == 0) {
        throw UsageError("--p or --choose-p is required");
    } else {
        check_p(a.c.p);
    }
    const NamedFunction f = parse_named_function(a.function);
    const auto [lo, hi] = function_interval(f, a.interval);
    if (a.j_min > a.j_max || a.j_min < -24 || a.j_max > 24) {
        throw UsageError("levels must satisfy -24 <= j_min <= j_max <= 24");
    }
    if (!(a.tau >= 0) || !std::isfinite(a.tau)) {
        throw UsageError("--tau must be a non-negative number");
    }
    if (!(a.tol > 0 && a.tol < 1) || !(a.abs_tol >= 0)) {
        throw UsageError("--tol must be in (0, 1) and --abs-tol non-negative");
    }
    ExpansionOptions eo;
    eo.quadrature.rel_tol = a.tol;
    eo.quadrature.abs_tol = a.abs_tol;
    eo.threads = a.c.threads;
    eo.evaluator = evaluator_options(a.c, RefinementMode::Absolute);

    WaveletCoefficientSet full;
    ExpansionStats stats;
    json j;
    if (!a.choose_p.empty()) {
        SparsityChoice choice = choose_p_by_sparsity(f.f, lo, hi, p_lo, p_hi, a.j_min, a.j_max, eo);
        full = std::move(choice.set);
        j["chosen_by_sparsity"] = true;
    } else {
        full = expansion_coefficients(f.f, lo, hi, a.c.p, a.j_min, a.j_max, eo, &stats);
    }
    const WaveletCoefficientSet kept = threshold(full, a.tau);

    Sinks sinks(a.c, out, err);
    write_coefficients(sinks.data(), kept);
    j["p"] = full.p;
    j["function"] = f.name;
    j["interval"] = {lo, hi};
    j["j_min"] = a.j_min;
    j["j_max"] = a.j_max;
    j["tau"] = a.tau;
    j["unthresholded_entries"] = full.size();
    j["entries"] = kept.size();
    const auto values = full.values();
    const bool measurable =
        values.size() >= 2 && std::any_of(values.begin(), values.end(), [](double v) { return v != 0; });
    j["hoyer_sparsity"] = measurable ? json(hoyer_sparsity(values)) : json(nullptr);
    j["quadrature"] = quadrature_json(eo.quadrature);
    if (a.choose_p.empty()) {
        j["unconverged"] = stats.unconverged;
        j["max_error_estimate"] = stats.max_error_estimate;
    }
    sinks.finish();
    sinks.summary(j);
}

// --- reconstruct ----------------------------------------------------------------

struct ReconstructArgs {
    Common c;
    std::string coefficients;
    long long samples = 1000;
    std::vector<double> interval;
    std::string compare;
};

void cmd_reconstruct(ReconstructArgs& a, std::ostream& out, std::ostream& err) {
    if (a.samples <= 0 || a.samples > 100'000'000) {
        throw UsageError("--samples must be in [1, 1e8]");
    }
    std::optional<NamedFunction> ref;
    if (!a.compare.empty()) {
        ref = parse_named_function(a.compare);
    }
    double lo = 0;
    double hi = 1;
    if (!a.interval.empty()) {
        if (a.interval.size() != 2 || !std::isfinite(a.interval[0]) || !std::isfinite(a.interval[1]) ||
            !(a.interval[0] < a.interval[1])) {
            throw UsageError("--interval takes lo hi with lo < hi");
        }
        lo = a.interval[0];
        hi = a.interval[1];
    } else if (ref && ref->interval) {
        std::tie(lo, hi) = *ref->interval;
    }
    std::ifstream in(a.coefficients);
    if (!in) {
        throw Error("io-error", "cannot open '" + a.coefficients + "'");
    }
    const WaveletCoefficientSet set = read_coefficients(in);
    const EvaluatorOptions o = evaluator_options(a.c, RefinementMode::Absolute);

    const auto xs = linspace(lo, hi, static_cast<std::size_t>(a.samples));
    std::vector<double> ys(xs.size(), 0.0);
    int refinement = -1;
    if (set.size() > 0) {
        ScalingEvaluator<double> phi(set.p, o);
        WaveletEvaluator<double> psi(set.p, o);
        refinement = phi.refinement();
        const SparseSeries series(set, phi, psi);
        detail::parallel_for(xs.size(), a.c.threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                ys[i] = series(xs[i]);
            }
        });
    }

    Sinks sinks(a.c, out, err);
    auto& os = sinks.data();
    os << "x,value\n";
    double max_err = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << format_double(xs[i]) << ',' << format_double(ys[i]) << '\n';
        if (ref) {
            max_err = std::max(max_err, std::abs(ys[i] - ref->f(xs[i])));
        }
    }
    json j;
    j["p"] = set.p;
    j["entries"] = set.size();
    j["samples"] = xs.size();
    j["interval"] = {lo, hi};
    j["refinement"] = refinement < 0 ? json(nullptr) : json(refinement);
    if (ref) {
        j["compare"] = ref->name;
        j["max_abs_error"] = max_err;
    }
    sinks.finish();
    sinks.summary(j);
}

// --- defaults -------------------------------------------------------------------

struct DefaultsArgs {
    Common c;
    std::vector<int> orders;
    bool model_only = false;
    long long samples = static_cast<long long>(UlpCriterion{}.samples);
    std::uint64_t seed = 0;
};

void cmd_defaults_show(DefaultsArgs& a, std::ostream& out, std::ostream& err) {
    Sinks sinks(a.c, out, err);
    sinks.data() << format_default_table(shipped_default_table());
    sinks.finish();
}

void cmd_defaults_regen(DefaultsArgs& a, std::ostream& out, std::ostream& err) {
    for (int p : a.orders) {
        check_p(p);
    }
    if (a.samples <= 0 || a.samples > 100'000'000) {
        throw UsageError("--samples must be in [1, 1e8]");
    }
    RegenOptions o;
    o.empirical_float = !a.model_only;
    o.criterion.samples = static_cast<std::size_t>(a.samples);
    o.criterion.seed = a.seed;
    o.byte_budget = budget_bytes(a.c.budget_mib);
    o.threads = a.c.threads;
    o.orders = a.orders;
    const auto rows = regenerate_default_table(o);
    Sinks sinks(a.c, out, err);
    sinks.data() << format_default_table(rows);
    sinks.finish();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app("Daubechies scaling function and wavelet evaluation", "daub");
    app.require_subcommand(1);
    app.fallthrough(false);

    std::function<void()> action;

    EvalArgs eval;
    auto* s_eval = app.add_subcommand("eval", "evaluate phi, psi or a derivative at one point");
    add_p(s_eval, eval.c);
    add_evaluator_flags(s_eval, eval.c);
    add_output(s_eval, eval.c);
    s_eval->add_option("--x", eval.x, "abscissa")->required();
    s_eval->add_option("--derivative", eval.derivative, "0, 1 or 2");
    s_eval->add_option("--kind", eval.kind, "phi or psi");
    s_eval->add_option("--precision", eval.precision, "float or double");
    s_eval->add_option("--interpolator", eval.interpolator, "override the interpolator");
    s_eval->callback([&] { action = [&] { cmd_eval(eval, out, err); }; });

    GridArgs grid;
    auto* s_grid = app.add_subcommand("grid", "export a dyadic grid of phi^(n) or psi^(n)");
    add_p(s_grid, grid.c);
    add_output(s_grid, grid.c);
    s_grid->add_option("--refinement", grid.c.refinement, "grid refinement j")->required();
    s_grid->add_option("--budget-mib", grid.c.budget_mib, "memory budget, MiB");
    s_grid->add_option("--derivative", grid.derivative, "derivative order n");
    s_grid->add_option("--kind", grid.kind, "phi or psi");
    s_grid->add_option("--format", grid.format, "csv or bin");
    s_grid->callback([&] { action = [&] { cmd_grid(grid, out, err); }; });

    ConvergenceArgs conv;
    conv.c.budget_mib = 4096;
    auto* s_conv = app.add_subcommand("convergence", "sup-norm error against j with a least-squares fit");
    add_p(s_conv, conv.c);
    add_output(s_conv, conv.c);
    s_conv->add_option("--j-min", conv.j_min)->required();
    s_conv->add_option("--j-max", conv.j_max)->required();
    s_conv->add_option("--kind", conv.kind, "phi or psi");
    s_conv->add_option("--interpolator", conv.interpolator, "override the interpolator");
    s_conv->add_option("--reference-offset", conv.reference_offset, "reference levels above j_max");
    s_conv->add_option("--budget-mib", conv.c.budget_mib, "memory budget for reference grids, MiB");
    s_conv->callback([&] { action = [&] { cmd_convergence(conv, out, err); }; });

    UlpArgs ulp;
    auto* s_ulp = app.add_subcommand("ulp", "ULP distance against a wide reference at random abscissas");
    add_p(s_ulp, ulp.c);
    add_evaluator_flags(s_ulp, ulp.c);
    add_output(s_ulp, ulp.c);
    s_ulp->add_option("--samples", ulp.samples);
    s_ulp->add_option("--cond-threshold", ulp.cond_threshold);
    s_ulp->add_option("--seed", ulp.seed);
    s_ulp->add_option("--precision", ulp.precision, "float or double");
    s_ulp->add_option("--kind", ulp.kind, "phi or psi");
    s_ulp->add_option("--reference-offset", ulp.reference_offset, "reference levels above the evaluator");
    s_ulp->add_option("--reference-budget-mib", ulp.reference_budget_mib);
    s_ulp->add_option("--lo", ulp.lo, "sampling interval start (default: support)");
    s_ulp->add_option("--hi", ulp.hi, "sampling interval end");
    s_ulp->callback([&] { action = [&] { cmd_ulp(ulp, out, err); }; });

    CwtArgs cw;
    auto* s_cwt = app.add_subcommand("cwt", "continuous wavelet transform on an (s, t) grid");
    add_p(s_cwt, cw.c);
    add_evaluator_flags(s_cwt, cw.c);
    add_output(s_cwt, cw.c);
    s_cwt->add_option("--function", cw.function, "bumps, sin_recip:a, const:c, poly:c0,c1,...")->required();
    s_cwt->add_option("--s", cw.s.raw, "lo hi n")->expected(3)->required();
    s_cwt->add_option("--t", cw.t.raw, "lo hi n")->expected(3)->required();
    s_cwt->add_option("--tol", cw.tol, "relative tolerance");
    s_cwt->add_option("--abs-tol", cw.abs_tol, "absolute tolerance (default: --tol)");
    s_cwt->callback([&] { action = [&] { cmd_cwt(cw, out, err); }; });

    ExpandArgs ex;
    auto* s_expand = app.add_subcommand("expand", "wavelet expansion coefficients, thresholded");
    add_p(s_expand, ex.c, false);
    add_evaluator_flags(s_expand, ex.c);
    add_output(s_expand, ex.c);
    s_expand->add_option("--function", ex.function)->required();
    s_expand->add_option("--interval", ex.interval, "lo hi")->expected(2);
    s_expand->add_option("--choose-p", ex.choose_p, "lo hi: keep the p with the sparsest coefficients")->expected(2);
    s_expand->add_option("--j-min", ex.j_min, "finest level");
    s_expand->add_option("--j-max", ex.j_max, "coarsest level");
    s_expand->add_option("--tau", ex.tau, "drop |c| <= tau");
    s_expand->add_option("--tol", ex.tol, "relative quadrature tolerance");
    s_expand->add_option("--abs-tol", ex.abs_tol, "absolute quadrature tolerance");
    s_expand->callback([&] { action = [&] { cmd_expand(ex, out, err); }; });

    ReconstructArgs rc;
    auto* s_rec = app.add_subcommand("reconstruct", "evaluate a coefficient file on equispaced samples");
    add_evaluator_flags(s_rec, rc.c);
    add_output(s_rec, rc.c);
    s_rec->add_option("--coefficients", rc.coefficients, "coefficient file")->required();
    s_rec->add_option("--samples", rc.samples);
    s_rec->add_option("--interval", rc.interval, "lo hi (default: the compared function's, else 0 1)")->expected(2);
    s_rec->add_option("--compare", rc.compare, "named function to report max error against");
    s_rec->callback([&] { action = [&] { cmd_reconstruct(rc, out, err); }; });

    DefaultsArgs df;
    auto* s_def = app.add_subcommand("defaults", "default refinement tables");
    s_def->require_subcommand(1);
    auto* s_show = s_def->add_subcommand("show", "print the shipped table");
    add_output(s_show, df.c);
    s_show->callback([&] { action = [&] { cmd_defaults_show(df, out, err); }; });
    auto* s_regen = s_def->add_subcommand("regen", "recompute the table");
    add_output(s_regen, df.c);
    s_regen->add_option("--orders", df.orders, "p values (default: all)");
    s_regen->add_flag("--model-only", df.model_only, "skip the empirical float ULP search");
    s_regen->add_option("--samples", df.samples, "ULP samples per trial");
    s_regen->add_option("--seed", df.seed);
    s_regen->add_option("--budget-mib", df.c.budget_mib, "table budget, MiB");
    s_regen->callback([&] { action = [&] { cmd_defaults_regen(df, out, err); }; });

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("daub");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) {
        argv.push_back(s.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << "daub 0.1.0\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error[usage]: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (action) {
            action();
        }
    } catch (const Error& e) {
        err << "error[" << e.code() << "]: " << e.what() << '\n';
        return status_for(e.code());
    } catch (const std::bad_alloc&) {
        err << "error[out-of-memory]: allocation failed\n";
        return kFailure;
    } catch (const std::exception& e) {
        err << "error[internal]: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}

}  // namespace daub::cli
