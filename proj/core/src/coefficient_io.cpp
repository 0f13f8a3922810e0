#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "daub/errors.hpp"
#include "daub/io.hpp"

namespace daub {
namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = line.find(',');
        out.push_back(line.substr(0, comma));
        if (comma == std::string_view::npos) {
            return out;
        }
        line = line.substr(comma + 1);
    }
}

template <class Int>
Int parse_integer(std::string_view s, std::size_t line) {
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw FormatError("coefficient file line " + std::to_string(line) + ": bad integer '" + std::string(s) + "'");
    }
    return v;
}

bool next_line(std::istream& is, std::string& line, std::size_t& line_no) {
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            return true;
        }
    }
    return false;
}

}  // namespace

void write_coefficients(std::ostream& os, const WaveletCoefficientSet& set) {
    os << "p,j_min,j_max,tau\n";
    os << set.p << ',' << set.j_min << ',' << set.j_max << ',' << format_double(set.tau) << '\n';
    os << "kind,j,k,coefficient\n";
    for (const auto& [key, c] : set.entries) {
        os << to_string(key.kind) << ',' << key.j << ',' << key.k << ',' << format_double(c) << '\n';
    }
    if (!os) {
        throw Error("io-error", "failed to write coefficient file");
    }
}

WaveletCoefficientSet read_coefficients(std::istream& is) {
    WaveletCoefficientSet set;
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(is, line, line_no)) {
        return set;
    }
    if (line != "p,j_min,j_max,tau") {
        throw FormatError("coefficient file: expected header 'p,j_min,j_max,tau'");
    }
    if (!next_line(is, line, line_no)) {
        throw FormatError("coefficient file: missing parameter line");
    }
    auto f = split(line);
    if (f.size() != 4) {
        throw FormatError("coefficient file line " + std::to_string(line_no) + ": expected 4 fields");
    }
    set.p = parse_integer<int>(f[0], line_no);
    set.j_min = parse_integer<int>(f[1], line_no);
    set.j_max = parse_integer<int>(f[2], line_no);
    set.tau = parse_double(f[3]);
    check_order(set.p);
    if (set.j_min > set.j_max) {
        throw FormatError("coefficient file: j_min > j_max");
    }
    if (!next_line(is, line, line_no)) {
        return set;
    }
    if (line != "kind,j,k,coefficient") {
        throw FormatError("coefficient file: expected header 'kind,j,k,coefficient'");
    }
    while (next_line(is, line, line_no)) {
        f = split(line);
        if (f.size() != 4) {
            throw FormatError("coefficient file line " + std::to_string(line_no) + ": expected 4 fields");
        }
        CoefficientKey key{};
        if (f[0] == "phi") {
            key.kind = BasisKind::Phi;
        } else if (f[0] == "psi") {
            key.kind = BasisKind::Psi;
        } else {
            throw FormatError("coefficient file line " + std::to_string(line_no) + ": kind must be phi or psi");
        }
        key.j = parse_integer<int>(f[1], line_no);
        key.k = parse_integer<long long>(f[2], line_no);
        const bool level_ok = key.kind == BasisKind::Phi ? key.j == set.j_max
                                                         : (key.j >= set.j_min && key.j <= set.j_max);
        if (!level_ok) {
            throw FormatError("coefficient file line " + std::to_string(line_no) + ": level outside [j_min, j_max]");
        }
        if (!set.entries.emplace(key, parse_double(f[3])).second) {
            throw FormatError("coefficient file line " + std::to_string(line_no) + ": duplicate entry");
        }
    }
    return set;
}

}  // namespace daub
