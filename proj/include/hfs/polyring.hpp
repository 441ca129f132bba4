#ifndef HFS_POLYRING_HPP
#define HFS_POLYRING_HPP

#include <string>
#include <utility>
#include <vector>

#include "hfs/galois.hpp"
#include "hfs/rng.hpp"

namespace hfs {

// Dense univariate polynomial over F_q. Coefficients low degree first, no
// trailing zeros; zero polynomial has an empty coefficient list but still
// carries its field.
class Poly {
public:
    Poly() = default; // null
    explicit Poly(FieldPtr F) : F_(std::move(F)) {}

    static Poly zero(const FieldPtr& F) { return Poly(F); }
    static Poly one(const FieldPtr& F) { return constant(FqElem::one(F)); }
    static Poly x(const FieldPtr& F);
    static Poly constant(const FqElem& c);
    static Poly from_coeffs(const FieldPtr& F, std::vector<FqElem> coeffs);
    static Poly from_ints(const FieldPtr& F, const std::vector<int64_t>& coeffs);
    // c * x^k
    static Poly monomial(const FqElem& c, size_t k);

    bool is_null() const { return F_ == nullptr; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    const FieldPtr& field() const { return F_; }

    // -1 for the zero polynomial
    int degree() const { return (int)c_.size() - 1; }
    const FqElem& lc() const; // leading coefficient; poly must be nonzero
    FqElem coeff(size_t i) const;
    const std::vector<FqElem>& coeffs() const { return c_; }
    bool is_monic() const { return !is_zero() && lc().is_one(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const FqElem& s) const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // quotient and remainder, deg r < deg divisor; divisor nonzero
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;
    Poly operator/(const Poly& o) const { return divmod(o).first; }
    Poly operator%(const Poly& o) const { return divmod(o).second; }
    bool divides(const Poly& multiple) const; // this | multiple

    Poly monic() const; // scaled by lc^-1; zero stays zero
    Poly derivative() const;
    FqElem eval(const FqElem& at) const;
    Poly pow(uint64_t e) const;

    // multiplicity of prime in this (this nonzero)
    int ord_at(const Poly& prime) const;

    // lexicographic on (degree, then coefficient tuples high to low);
    // total order within one field, used for canonical choices
    static int cmp(const Poly& a, const Poly& b);

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();

    FieldPtr F_;
    std::vector<FqElem> c_;
};

Poly gcd(const Poly& a, const Poly& b); // monic
// g = gcd, g = u*a + v*b
struct XgcdResult {
    Poly g, u, v;
};
XgcdResult xgcd(const Poly& a, const Poly& b);

Poly mod_pow(const Poly& base, uint64_t e, const Poly& modulus);

// (prime, multiplicity) pairs, primes monic, sorted by Poly::cmp.
// Deterministic: the Las-Vegas equal-degree splitter draws from a seed
// derived from the input polynomial.
std::vector<std::pair<Poly, int>> factorize(const Poly& a);

bool is_irreducible(const Poly& a);

// (squarefree part with multiplicity i) pairs: a = lc * prod part_i^i
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& a);
Poly squarefree_part(const Poly& a);

// monic irreducible of degree exactly d, by rejection over uniform monic
// polynomials
Poly random_irreducible(const FieldPtr& F, unsigned d, Rng& rng);

// all monic irreducibles of degree exactly d, in Poly::cmp order
std::vector<Poly> all_monic_irreducibles(const FieldPtr& F, unsigned d);

// Polynomial text grammar: sum of terms `c`, `c*x^k`, `x^k`, `x`; `*`
// optional, whitespace ignored; coefficients are decimal integers, reduced
// into the field (base-p digit encoding for extension fields).
Poly parse_poly(const FieldPtr& F, const std::string& text);

} // namespace hfs

#endif
