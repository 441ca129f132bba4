#pragma once

// Small dense linear algebra over F_2 and over Z (Smith/Hermite normal forms).
// Everything here is desk-scale: matrices have at most a few dozen rows.

#include <cstdint>
#include <optional>
#include <vector>

#include "hfs/errors.hpp"

namespace hfs {

using F2Vec = std::vector<uint8_t>; // entries 0/1
using F2Mat = std::vector<F2Vec>;   // list of rows, all the same length

// Reduced row echelon form in place; returns the pivot column indices.
std::vector<size_t> f2_rref(F2Mat& rows);

int f2_rank(F2Mat rows);

// Solve A*x = b where A is given by rows (m x n), b has length m.
// Returns one solution (free variables set to 0) or nullopt.
std::optional<F2Vec> f2_solve(const F2Mat& a, const F2Vec& b);

// Inverse of a square matrix; throws InternalError if singular.
F2Mat f2_inverse(const F2Mat& a);

// Indices of a maximal independent subset, scanning in order and keeping
// every vector that is not in the span of the vectors already kept.
std::vector<size_t> f2_max_independent(const F2Mat& vectors);

bool f2_in_span(const F2Mat& basis, const F2Vec& v);

using ZVec = std::vector<int64_t>;
using ZMat = std::vector<ZVec>; // list of rows

ZMat z_identity(size_t n);
ZMat z_mul(const ZMat& a, const ZMat& b);

// Smith normal form: u*a*v = d with u, v unimodular, d diagonal with
// non-negative entries d_1 | d_2 | ... .
struct SnfResult {
    ZMat d, u, v;
    std::vector<int64_t> invariants; // nonzero diagonal entries of d, in order
};
SnfResult z_snf(const ZMat& a);

// Canonical basis of the row lattice of a (row-style Hermite normal form,
// zero rows dropped, pivots positive, entries above a pivot reduced into
// [0, pivot)).
ZMat z_hnf_rows(ZMat a);

// Basis of the left kernel lattice { x : x * a = 0 }, in HNF.
ZMat z_kernel_rows(const ZMat& a);

// Basis (rows, in HNF) of { x in Z^k : sum_i x_i * vectors[i] = 0 in G }
// where G = (+)_j Z/orders[j], with orders[j] == 0 meaning a Z factor.
ZMat group_kernel(const ZMat& vectors, const ZVec& orders);

} // namespace hfs
