#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "daub/dyadic.hpp"
#include "daub/transforms.hpp"

namespace daub {

// Shortest decimal that parses back to the same double.
std::string format_double(double x);
double parse_double(std::string_view s);

// --- grid files -----------------------------------------------------------
//
// Binary: "DWGRID1\0", then little-endian u64 p, kind (0 scaling, 1 wavelet),
// n, j, value count, then the values as little-endian binary64.

template <class Real>
void write_grid_binary(std::ostream& os, const DyadicGrid<Real>& grid);

DyadicGrid<double> read_grid_binary(std::istream& is);

// Header `x,value`, one row per abscissa in increasing order.
template <class Real>
void write_grid_csv(std::ostream& os, const DyadicGrid<Real>& grid);

// --- coefficient files ----------------------------------------------------
//
//     p,j_min,j_max,tau
//     3,-8,0,0.001
//     kind,j,k,coefficient
//     phi,0,-4,0.0123
//     ...
//
// An empty file is an empty set.

void write_coefficients(std::ostream& os, const WaveletCoefficientSet& set);
WaveletCoefficientSet read_coefficients(std::istream& is);

}  // namespace daub
