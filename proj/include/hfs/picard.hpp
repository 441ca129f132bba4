#pragma once

// Degree-0 divisor class arithmetic for the hyperelliptic model: Mumford
// representation with Cantor composition/reduction, discovery of the group
// structure of Pic^0 X, an SNF presentation with place-supported divisor
// generators, and table-backed discrete logarithms.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hfs/curve.hpp"
#include "hfs/rng.hpp"

namespace hfs {

// (u, v): u monic, deg v < deg u, u | v^2 - f.  Reduced when deg u <= g.
// Represents the class of (affine divisor cut out by u, y = v) - deg(u)*inf.
struct MumfordRep {
    Poly u, v;

    static MumfordRep identity(const CurvePtr& C);
    bool is_identity() const { return u.degree() == 0; }
    static int cmp(const MumfordRep& a, const MumfordRep& b);
    bool operator==(const MumfordRep& o) const { return cmp(*this, o) == 0; }
    bool operator<(const MumfordRep& o) const { return cmp(*this, o) < 0; }
    std::string to_string() const; // "(u, v)"
};

// Throws InternalError if (u, v) violates the reduced Mumford invariants.
void validate_mumford(const CurvePtr& C, const MumfordRep& m);

MumfordRep jac_add(const CurvePtr& C, const MumfordRep& a, const MumfordRep& b);
MumfordRep jac_neg(const CurvePtr& C, const MumfordRep& a);
MumfordRep jac_mul_int(const CurvePtr& C, const MumfordRep& a, int64_t n);

// Class of a degree-0 divisor (any place degrees; inert places map to the
// identity since the prime P itself has divisor p - 2 deg(P) inf).
MumfordRep class_of_divisor(const CurvePtr& C, const Divisor& D);

// The divisor (affine support of u with its branch data) - deg(u)*inf.
Divisor divisor_of_class(const CurvePtr& C, const MumfordRep& m);

enum class JacStrategy { Exhaustive, Generic };

struct PicardContext {
    CurvePtr C;
    uint64_t order = 1;                 // |Pic^0 X|
    std::vector<int64_t> snf_orders;    // d_1 | d_2 | ... | d_m, each >= 2
    std::vector<MumfordRep> snf_gens;   // gen_i of exact order d_i
    std::vector<Divisor> snf_divisors;  // place-supported divisor of gen_i
    std::string strategy;               // "exhaustive" or "generic"

    // Coordinates (c_1, ..., c_m), 0 <= c_i < d_i, with sum c_i*gen_i = A.
    std::vector<int64_t> dlog(const MumfordRep& a) const;

    // All group elements in table order (canonical Mumford order).
    std::vector<MumfordRep> elements() const;

    unsigned two_rank() const; // number of even d_i

    std::map<MumfordRep, std::vector<int64_t>> table; // full dlog table
};

using PicardPtr = std::shared_ptr<const PicardContext>;

// Discover the group structure.  Exhaustive: enumerate all reduced (u, v).
// Generic: order by point counting over F_q and F_{q^2} (L-polynomial,
// genus <= 2; higher genus falls back to exhaustive), then random place
// classes accumulated until the generated subgroup reaches that order.
// Deterministic: any sampling is seeded from the curve data.
PicardPtr jac_structure(const CurvePtr& C, JacStrategy strategy, uint64_t cap = (uint64_t)1 << 20);

// Number of points of X over F_{q^r} for r = 1, 2 (by counting places of
// degree dividing r); used by the generic strategy and as a cross-check.
uint64_t point_count(const CurvePtr& C, unsigned r);

// |Pic^0 X| from the L-polynomial for genus <= 2 (exact closed form).
uint64_t order_from_point_counts(const CurvePtr& C);

} // namespace hfs
