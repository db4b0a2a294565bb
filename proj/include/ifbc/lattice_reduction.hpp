#pragma once

#include "ifbc/complex_linalg.hpp"
#include "ifbc/gaussian_integers.hpp"

namespace ifbc {

/// Lattice generator in column convention: lattice points are g * z, z in Z[j]^K.
struct GeneratorMatrix {
  CMatrix g;
};

struct ReducedBasis {
  CMatrix basis;                 // g * unimodular
  IntegerCoeffMatrix unimodular;  // |det| = 1 over Z[j]
};

/// Complex LLL (size reduction with Gaussian-integer rounding of the
/// Gram-Schmidt coefficients plus the Lovasz swap test).
/// Throws std::invalid_argument for delta outside (0.5, 1] or a rank-deficient g.
ReducedBasis cllj_reduce(const GeneratorMatrix& g, double delta = 0.75);

/// sum_i ||g * a(:, i)||^2, the trace of T0^H T0 when T0 = g A.
double lattice_objective(const GeneratorMatrix& g, const IntegerCoeffMatrix& a);

/// Approximate K shortest independent lattice vectors; their coefficient
/// vectors form the columns of the returned full-rank A. Never worse than
/// A = I in lattice_objective.
IntegerCoeffMatrix shortest_independent_columns(const GeneratorMatrix& g, double delta = 0.75);

}  // namespace ifbc
