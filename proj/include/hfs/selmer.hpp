#pragma once

// Compatible bases for the group of singular elements (even valuations
// everywhere) and S-singular elements (even valuations outside S) of a
// hyperelliptic function field, coordinate formulas with respect to those
// bases, and random sampling of singular elements.

#include <cstdint>
#include <utility>
#include <vector>

#include "hfs/curve.hpp"
#include "hfs/linalg2z.hpp"
#include "hfs/picard.hpp"
#include "hfs/rng.hpp"
#include "hfs/rroch.hpp"

namespace hfs {

// Places B = (b_1..b_n) and square classes Bs = (beta_1..beta_n) with
// legendre(beta_i, b_j) = -1 exactly when i = j; n = rk of the group of
// singular elements modulo squares = (2-rank of Pic^0 X) + 1.
struct SingularBasis {
    PicardPtr pic;
    std::vector<Place> places;
    std::vector<FuncElem> elements;
};

struct SSingularBasis {
    SingularBasis base;
    std::vector<Place> S;       // sorted, deduplicated
    std::vector<Place> s_prime; // maximal subset independent in Pic X / 2 Pic X
    std::vector<std::pair<Place, FuncElem>> lambdas; // p in S \ S' -> lambda_p
};

bool compatible_check(const std::vector<Place>& B, const std::vector<FuncElem>& Bs);

// Canonical square-class representative: squarefree denominator, square
// content of the numerator removed, dominant coefficient scaled to 1 or zeta.
FuncElem square_class_reduce(const FuncElem& lam);

// Coordinates of the class of D (or of a single place) in Pic X = Z + Pic^0 X:
// (deg D; dlog of [D - deg(D)*inf]).  Length 1 + #snf_orders.
std::vector<int64_t> pic_coords(const PicardPtr& pic, const Divisor& D);
std::vector<int64_t> pic_coords(const PicardPtr& pic, const Place& p);

// Coordinates in Pic X / 2 Pic X: (deg mod 2; dlog mod 2 at even orders).
// Length 1 + two_rank.
F2Vec pic_coords_mod2(const PicardPtr& pic, const Divisor& D);
F2Vec pic_coords_mod2(const PicardPtr& pic, const Place& p);

// Build the compatible basis from places B forming a basis of Pic X / 2 Pic X.
SingularBasis singular_basis_from_places(const PicardPtr& pic, const std::vector<Place>& B);

// Choose B from the supports of the SNF generator divisors and the infinite
// place, then build the compatible basis.
SingularBasis singular_group(const PicardPtr& pic);

// Coordinates of a singular lambda: (-1)^eps_i = legendre(lambda, b_i).
F2Vec coords_singular(const FuncElem& lam, const SingularBasis& sb);

// Coordinates of the class of p in Pic X / 2 Pic X with respect to the
// classes of the basis places: (-1)^e_j = legendre(beta_j, p).
F2Vec place_coords(const Place& p, const SingularBasis& sb);

// Places (disjoint from S) whose classes generate Pic X, found by scanning
// places in canonical order and certifying generation via a normal-form
// computation on the coordinate lattice.
std::vector<Place> find_generating_places(const PicardPtr& pic, const std::vector<Place>& S);

// An (S' + {p})-singular element with odd valuation at p and legendre = 1
// across the basis places.  Requires [p] = sum of [t], t in T, modulo
// 2 Pic X, and T + {p} disjoint from the generating places Bfull.
FuncElem lambda_for_place(const Place& p, const std::vector<Place>& T, const SingularBasis& sb,
                          const std::vector<Place>& Bfull);

SSingularBasis s_singular_basis(const PicardPtr& pic, const std::vector<Place>& S);

// Coordinates of an S-singular mu: e_j = valuation at the lambda-place p_j
// mod 2, (-1)^eps_i = legendre(mu, b_i).
std::pair<F2Vec, F2Vec> coords_s_singular(const FuncElem& mu, const SSingularBasis& ssb);

// One draw of a random singular element: two random distinct equal-degree
// places p, q; k = order of [p - q]; for even k the canonical generator of
// L(k*p - k*q), for odd k the constant 1 or zeta with probability 1/2.
FuncElem random_singular(const CurvePtr& C, Rng& rng);

struct ConstantFraction {
    uint64_t constants = 0;
    uint64_t samples = 0;
};

// Fraction of constant outputs over N draws; sample i uses the substream
// rng.split(i), so the result is independent of evaluation order.
ConstantFraction constant_fraction_estimate(const CurvePtr& C, uint64_t N, const Rng& rng);

} // namespace hfs
