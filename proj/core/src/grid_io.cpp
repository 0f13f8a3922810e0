#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <system_error>

#include "daub/errors.hpp"
#include "daub/io.hpp"

namespace daub {
namespace {

constexpr std::array<char, 8> kMagic{'D', 'W', 'G', 'R', 'I', 'D', '1', '\0'};

void put_u64(std::ostream& os, std::uint64_t v) {
    std::array<char, 8> b;
    for (int i = 0; i < 8; ++i) {
        b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    }
    os.write(b.data(), 8);
}

std::uint64_t get_u64(std::istream& is) {
    std::array<unsigned char, 8> b;
    if (!is.read(reinterpret_cast<char*>(b.data()), 8)) {
        throw FormatError("grid file is truncated");
    }
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | b[i];
    }
    return v;
}

}  // namespace

std::string format_double(double x) {
    if (x == 0) {
        return std::signbit(x) ? "-0" : "0";
    }
    std::array<char, 64> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

double parse_double(std::string_view s) {
    double v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc{} || ptr != last) {
        throw FormatError("bad number '" + std::string(s) + "'");
    }
    return v;
}

template <class Real>
void write_grid_binary(std::ostream& os, const DyadicGrid<Real>& grid) {
    os.write(kMagic.data(), kMagic.size());
    put_u64(os, static_cast<std::uint64_t>(grid.p));
    put_u64(os, static_cast<std::uint64_t>(grid.kind));
    put_u64(os, static_cast<std::uint64_t>(grid.n));
    put_u64(os, static_cast<std::uint64_t>(grid.j));
    put_u64(os, grid.values.size());
    for (const auto& v : grid.values) {
        put_u64(os, std::bit_cast<std::uint64_t>(static_cast<double>(v)));
    }
    if (!os) {
        throw Error("io-error", "failed to write grid");
    }
}

DyadicGrid<double> read_grid_binary(std::istream& is) {
    std::array<char, 8> magic;
    if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
        throw FormatError("not a DWGRID1 file");
    }
    DyadicGrid<double> g;
    const auto p = get_u64(is);
    const auto kind = get_u64(is);
    const auto n = get_u64(is);
    const auto j = get_u64(is);
    const auto count = get_u64(is);
    if (p < kMinOrder || p > kMaxOrder || kind > 1 || n > 64 || j > 56) {
        throw FormatError("grid header out of range");
    }
    g.p = static_cast<int>(p);
    g.kind = static_cast<FunctionKind>(kind);
    g.n = static_cast<int>(n);
    g.j = static_cast<int>(j);
    if (count != grid_length(g.p, g.j)) {
        throw FormatError("grid value count " + std::to_string(count) + " does not match p and j");
    }
    g.values.resize(count);
    for (auto& v : g.values) {
        v = std::bit_cast<double>(get_u64(is));
    }
    return g;
}

template <class Real>
void write_grid_csv(std::ostream& os, const DyadicGrid<Real>& grid) {
    os << "x,value\n";
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        os << format_double(grid.abscissa(i)) << ',' << format_double(static_cast<double>(grid.values[i])) << '\n';
    }
    if (!os) {
        throw Error("io-error", "failed to write grid");
    }
}

template void write_grid_binary<double>(std::ostream&, const DyadicGrid<double>&);
template void write_grid_binary<DoubleWord>(std::ostream&, const DyadicGrid<DoubleWord>&);
template void write_grid_csv<double>(std::ostream&, const DyadicGrid<double>&);
template void write_grid_csv<DoubleWord>(std::ostream&, const DyadicGrid<DoubleWord>&);

}  // namespace daub
