#include "daub/defaults.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "daub/errors.hpp"
#include "daub/filters.hpp"

namespace daub {
namespace {

using IK = InterpolatorKind;

constexpr std::array<SmoothnessModel, 18> kModels{{
    {2, -2.15, -0.55, IK::MatchedHolder},
    {3, -1.85, -1.08, IK::Linear},
    {4, -1.98, -1.62, IK::CubicHermite},
    {5, -3.93, -1.98, IK::CubicHermite},
    {6, -4.96, -2.20, IK::QuinticHermite},
    {7, -4.76, -2.46, IK::QuinticHermite},
    {8, -4.99, -2.77, IK::QuinticHermite},
    {9, -5.72, -3.08, IK::QuinticHermite},
    {10, -7.21, -3.36, IK::SepticHermite},
    {11, -7.89, -3.61, IK::SepticHermite},
    {12, -8.66, -3.86, IK::SepticHermite},
    {13, -9.29, -4.10, IK::SepticHermite},
    {14, -9.14, -4.32, IK::SepticHermite},
    {15, -9.47, -4.56, IK::SepticHermite},
    {16, -10.1, -4.80, IK::SepticHermite},
    {17, -10.8, -5.02, IK::SepticHermite},
    {18, -10.6, -5.24, IK::SepticHermite},
    {19, -10.9, -5.46, IK::SepticHermite},
}};

constexpr const char kShippedTable[] =
#include "default_refinements.inc"
    ;

int parse_int(std::string_view s, std::size_t line) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw FormatError("default table line " + std::to_string(line) + ": bad integer '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

double SmoothnessModel::predicted_error(int j) const noexcept { return std::exp2(log2_error(j)); }

const SmoothnessModel& smoothness_model(int p) {
    check_order(p);
    return kModels[static_cast<std::size_t>(p - kMinOrder)];
}

int max_derivative_order(int p) {
    return static_cast<int>(std::floor(-smoothness_model(p).slope)) + 1;
}

std::string_view to_string(Precision precision) noexcept {
    return precision == Precision::Single ? "float" : "double";
}

std::string_view to_string(RefinementMode mode) noexcept {
    return mode == RefinementMode::Ulp ? "ulp" : "absolute";
}

bool parse_precision(std::string_view name, Precision& out) noexcept {
    if (name == "float" || name == "single") {
        out = Precision::Single;
        return true;
    }
    if (name == "double") {
        out = Precision::Double;
        return true;
    }
    return false;
}

bool parse_mode(std::string_view name, RefinementMode& out) noexcept {
    if (name == "ulp") {
        out = RefinementMode::Ulp;
        return true;
    }
    if (name == "absolute") {
        out = RefinementMode::Absolute;
        return true;
    }
    return false;
}

std::vector<DefaultRefinementRow> parse_default_table(std::string_view csv) {
    std::vector<DefaultRefinementRow> rows;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!csv.empty()) {
        auto nl = csv.find('\n');
        std::string_view line = csv.substr(0, nl);
        csv = nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != "p,precision,mode,refinement") {
                throw FormatError("default table: unexpected header '" + std::string(line) + "'");
            }
            header_seen = true;
            continue;
        }
        std::array<std::string_view, 4> f;
        std::size_t start = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            auto comma = line.find(',', start);
            if ((i < 3) == (comma == std::string_view::npos)) {
                throw FormatError("default table line " + std::to_string(line_no) + ": expected 4 fields");
            }
            f[i] = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            start = comma + 1;
        }
        DefaultRefinementRow row{};
        row.p = parse_int(f[0], line_no);
        row.refinement = parse_int(f[3], line_no);
        if (!parse_precision(f[1], row.precision) || !parse_mode(f[2], row.mode)) {
            throw FormatError("default table line " + std::to_string(line_no) + ": bad precision or mode");
        }
        check_order(row.p);
        rows.push_back(row);
    }
    return rows;
}

std::string format_default_table(const std::vector<DefaultRefinementRow>& rows) {
    std::ostringstream os;
    os << "p,precision,mode,refinement\n";
    for (const auto& r : rows) {
        os << r.p << ',' << to_string(r.precision) << ',' << to_string(r.mode) << ',' << r.refinement << '\n';
    }
    return os.str();
}

const std::vector<DefaultRefinementRow>& shipped_default_table() {
    static const std::vector<DefaultRefinementRow> table = parse_default_table(kShippedTable);
    return table;
}

int default_refinement(int p, RefinementMode mode, Precision precision) {
    check_order(p);
    for (const auto& r : shipped_default_table()) {
        if (r.p == p && r.mode == mode && r.precision == precision) {
            return r.refinement;
        }
    }
    throw Error("missing-default", "no default refinement for p=" + std::to_string(p) + " (" +
                                       std::string(to_string(precision)) + ", " + std::string(to_string(mode)) + ")");
}

std::optional<int> model_refinement(int p, double target_log2, int j_cap) {
    const auto& m = smoothness_model(p);
    for (int j = 0; j <= j_cap; ++j) {
        if (m.log2_error(j) <= target_log2) {
            return j;
        }
    }
    return std::nullopt;
}

}  // namespace daub
