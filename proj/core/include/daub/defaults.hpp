#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "daub/interpolators.hpp"

namespace daub {

inline constexpr std::size_t kDefaultByteBudget = std::size_t{1} << 30;

// Measured sup-norm convergence of the best interpolator for each p:
//     log2 ||phi - phi_j||_inf ~ intercept + slope * j
struct SmoothnessModel {
    int p;
    double intercept;
    double slope;
    InterpolatorKind interpolator;

    double log2_error(int j) const noexcept { return intercept + slope * j; }
    double predicted_error(int j) const noexcept;
};

const SmoothnessModel& smoothness_model(int p);

// Highest derivative order n for which phi^(n) grids are built: every
// classical derivative plus one more, floor(|slope|) + 1.
int max_derivative_order(int p);

enum class Precision { Single, Double };
enum class RefinementMode { Ulp, Absolute };

std::string_view to_string(Precision precision) noexcept;
std::string_view to_string(RefinementMode mode) noexcept;
bool parse_precision(std::string_view name, Precision& out) noexcept;
bool parse_mode(std::string_view name, RefinementMode& out) noexcept;

// Shipped per-p default refinement, read from the embedded table.
int default_refinement(int p, RefinementMode mode, Precision precision);

struct DefaultRefinementRow {
    int p;
    Precision precision;
    RefinementMode mode;
    int refinement;
};

// Parses the CSV table format `p,precision,mode,refinement`.
std::vector<DefaultRefinementRow> parse_default_table(std::string_view csv);
std::string format_default_table(const std::vector<DefaultRefinementRow>& rows);
const std::vector<DefaultRefinementRow>& shipped_default_table();

// Smallest j whose predicted sup error is <= 2^target_log2, or nullopt if it
// exceeds j_cap.
std::optional<int> model_refinement(int p, double target_log2, int j_cap);

}  // namespace daub
