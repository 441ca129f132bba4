#pragma once

// Independent cross-checks used by the test suite and the `verify` command:
// an exact squareness test in K, independence of square classes, exhaustive
// reconstruction of the divisor class group, S-singularity of an element,
// and the exact fraction of odd-order elements of a finite abelian group.
// These deliberately avoid the code paths they are used to check: squareness
// is decided by solving (u + v*y)^2 = lambda over F_q(x), and the group
// structure is read off element-order statistics rather than lifted through
// quotients.

#include <cstdint>
#include <string>
#include <vector>

#include "hfs/curve.hpp"
#include "hfs/picard.hpp"

namespace hfs {

// Exact test whether lambda is a square in K, cross-checked (one-sided)
// against the residue symbol at 40 pseudorandom places of degree <= 3;
// disagreement raises InternalError.
bool is_square_in_K(const FuncElem& lam);

// True when no nonempty subproduct is a square in K.  At most 16 elements.
bool independent_mod_squares(const std::vector<FuncElem>& elems);

struct ExhaustiveJac {
    uint64_t order = 0;
    std::vector<int64_t> invariants; // ascending divisibility chain, each >= 2
    std::vector<MumfordRep> elements;
};

// Enumerate all reduced Mumford pairs, verify group closure, and derive the
// abelian invariants from the counts of solutions of p^j * x = 0.
ExhaustiveJac jac_exhaustive(const CurvePtr& C, uint64_t cap = (uint64_t)1 << 20);

// Whether the principal divisor of lambda has even coefficients outside S.
bool is_s_singular(const FuncElem& lam, const std::vector<Place>& S);

struct Fraction {
    uint64_t num = 0;
    uint64_t den = 1;
};

// Exact fraction of odd-order elements of (+) Z/d_i, by enumerating the
// product group (capped).
Fraction odd_order_fraction(const std::vector<int64_t>& orders, uint64_t cap = (uint64_t)1 << 20);

struct OracleReport {
    std::string claim;
    bool pass = false;
    std::string witness;
};

// Deterministic self-check suite for one curve.
std::vector<OracleReport> verify_suite(const CurvePtr& C, uint64_t cap = (uint64_t)1 << 20);

} // namespace hfs
