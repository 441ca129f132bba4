#pragma once

// The hyperelliptic function field K = F_q(x)(y), y^2 = f(x) with f monic,
// squarefree, of odd degree 2g+1 (so there is a single, degree-1 place at
// infinity).  Provides elements of K, places of the curve, valuations, the
// quadratic-residue symbol at a place, and divisors of functions.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hfs/galois.hpp"
#include "hfs/polyring.hpp"

namespace hfs {

struct Curve;
using CurvePtr = std::shared_ptr<const Curve>;

struct Curve {
    FieldPtr F;    // base field F_q, q odd
    Poly f;        // monic, squarefree, odd degree
    unsigned genus; // (deg f - 1) / 2
    FqElem zeta;   // canonical non-square constant of F_q

    // Validates q odd, f monic of odd degree >= 1, gcd(f, f') = 1.
    static CurvePtr make(const FieldPtr& F, const Poly& f);

    std::string describe() const; // e.g. "y^2 = x^3 + 4*x over GF(5)"
};

// An element (a + b*y)/d of K in canonical form: d monic, gcd(a, b, d) = 1.
// The zero element is (0 + 0*y)/1.  Default-constructed objects are null
// placeholders and may only be assigned to.
class FuncElem {
public:
    FuncElem() = default;

    static FuncElem make(const CurvePtr& C, const Poly& a, const Poly& b, const Poly& d);
    static FuncElem zero(const CurvePtr& C);
    static FuncElem one(const CurvePtr& C);
    static FuncElem constant(const CurvePtr& C, const FqElem& c);
    static FuncElem from_poly(const CurvePtr& C, const Poly& a);
    static FuncElem y(const CurvePtr& C);

    bool is_null() const { return C_ == nullptr; }
    const CurvePtr& curve() const { return C_; }
    const Poly& a() const { return a_; }
    const Poly& b() const { return b_; }
    const Poly& d() const { return d_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_constant() const; // in F_q (b = 0, d = 1, deg a <= 0)

    FuncElem conj() const;     // (a - b*y)/d
    Poly norm_num() const;     // a^2 - b^2*f  (norm numerator; denominator d^2)

    FuncElem operator+(const FuncElem& o) const;
    FuncElem operator-(const FuncElem& o) const;
    FuncElem operator*(const FuncElem& o) const;
    FuncElem operator/(const FuncElem& o) const;
    FuncElem operator-() const;
    FuncElem inv() const;
    FuncElem pow(int64_t e) const;
    bool operator==(const FuncElem& o) const;
    bool operator!=(const FuncElem& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    CurvePtr C_;
    Poly a_, b_, d_;
};

enum class PlaceKind : uint8_t { Infinite = 0, Ramified = 1, Split = 2, Inert = 3 };

// A closed point of the curve.  Finite places lie over a monic prime P(x):
// Ramified when P | f, Split (two places, distinguished by the square root
// s of f mod P) when f is a nonzero square mod P, Inert otherwise.
class Place {
public:
    Place() = default;

    static Place infinite(const CurvePtr& C);
    static Place ramified(const CurvePtr& C, const Poly& P);
    static Place inert(const CurvePtr& C, const Poly& P);
    static Place split(const CurvePtr& C, const Poly& P, const Poly& s);

    bool is_null() const { return C_ == nullptr; }
    const CurvePtr& curve() const { return C_; }
    PlaceKind kind() const { return kind_; }
    const Poly& prime() const;  // finite places only
    const Poly& branch() const; // split places only: the root s, deg s < deg P
    unsigned degree() const;
    unsigned ram_index() const { return kind_ == PlaceKind::Ramified ? 2 : 1; }
    bool is_canonical_branch() const; // split: s is the smaller of {s, -s}
    Place conjugate() const;          // split: the other branch; else *this

    static int cmp(const Place& x, const Place& y); // (degree, prime, kind, branch)
    bool operator==(const Place& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const Place& o) const { return cmp(*this, o) != 0; }
    bool operator<(const Place& o) const { return cmp(*this, o) < 0; }

    std::string to_string() const; // inf | ram(P) | inert(P) | split(P,+/-)

private:
    CurvePtr C_;
    PlaceKind kind_ = PlaceKind::Infinite;
    Poly prime_;
    Poly branch_;
};

// Finite formal Z-combination of places.
class Divisor {
public:
    Divisor() = default;

    static Divisor single(const Place& p, int64_t c = 1);

    void add(const Place& p, int64_t c);
    int64_t coeff(const Place& p) const;
    const std::map<Place, int64_t>& terms() const { return terms_; }
    int64_t degree() const;
    bool is_zero() const { return terms_.empty(); }
    bool all_even() const;

    Divisor operator+(const Divisor& o) const;
    Divisor operator-(const Divisor& o) const;
    Divisor operator*(int64_t c) const;
    bool operator==(const Divisor& o) const { return terms_ == o.terms_; }

    std::string to_string() const;

private:
    std::map<Place, int64_t> terms_; // nonzero coefficients only
};

// Places of the curve lying over the monic prime P, sorted (canonical split
// branch first).
std::vector<Place> place_decompose(const CurvePtr& C, const Poly& P);

// All places of degree <= maxdeg, sorted by Place::cmp.
std::vector<Place> enumerate_places(const CurvePtr& C, unsigned maxdeg);

int valuation(const FuncElem& lam, const Place& p);

// Quadratic-residue symbol at a place: 0 if the valuation is odd, otherwise
// +/-1 according as the unit part is a square in the residue field.
int legendre(const FuncElem& lam, const Place& p);

Divisor principal_divisor(const FuncElem& lam);

// Lift s with s^2 = f (mod P) to S with S^2 = f (mod P^N), deg S < N*deg P.
Poly hensel_sqrt(const Poly& f, const Poly& P, const Poly& s, unsigned N);

// Parse an element expression over {x, y, integers, + - * / ^, parentheses}.
FuncElem parse_func_elem(const CurvePtr& C, const std::string& text);

// Place grammar: inf | ram(P) | inert(P) | split(P,+) | split(P,-).
Place parse_place(const CurvePtr& C, const std::string& text);

// Comma-separated places (commas inside parentheses don't split).
std::vector<Place> parse_place_list(const CurvePtr& C, const std::string& text);

// Divisor grammar: signed terms `c*place` or `place`, e.g. "2*ram(x) - 2*inf".
Divisor parse_divisor(const CurvePtr& C, const std::string& text);

} // namespace hfs
