#ifndef HFS_GALOIS_HPP
#define HFS_GALOIS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "hfs/errors.hpp"

namespace hfs {

class FieldDescriptor;
using FieldPtr = std::shared_ptr<const FieldDescriptor>;

// Describes F_{p^m} = F_p[t]/(modulus), p an odd prime, modulus monic
// irreducible of degree m. Immutable; shared between all elements of the
// same field.
class FieldDescriptor {
public:
    // F_p itself (modulus = t).
    static FieldPtr prime_field(uint64_t p);

    // F_{p^m} with the deterministically chosen modulus: the first monic
    // irreducible of degree m in lexicographic order on coefficient tuples
    // (constant term first).
    static FieldPtr extension(uint64_t p, unsigned m);

    // F_p[t]/(modulus) with an explicit modulus, given as coefficients
    // c_0..c_{m-1} of the non-leading part (the polynomial is monic).
    // Validates irreducibility.
    static FieldPtr with_modulus(uint64_t p, std::vector<uint64_t> low_coeffs);

    // Parses q = p^m (q odd) and builds the corresponding field.
    static FieldPtr from_order(uint64_t q);

    uint64_t p() const { return p_; }
    unsigned m() const { return m_; }
    uint64_t order() const { return order_; } // p^m

    // Non-leading coefficients of the modulus, length m.
    const std::vector<uint64_t>& modulus_low() const { return mod_low_; }

    bool same_as(const FieldDescriptor& other) const;

private:
    FieldDescriptor(uint64_t p, unsigned m, std::vector<uint64_t> mod_low);

    uint64_t p_;
    unsigned m_;
    std::vector<uint64_t> mod_low_;
    uint64_t order_;
};

// An element of F_{p^m}, stored as the coefficient tuple of its residue-class
// representative over F_p (constant term first, length m, fully reduced).
class FqElem {
public:
    FqElem() = default; // null element; only assignable/comparable to null

    static FqElem zero(const FieldPtr& F);
    static FqElem one(const FieldPtr& F);
    static FqElem from_int(const FieldPtr& F, int64_t v);       // image of an integer
    static FqElem from_coeffs(const FieldPtr& F, const std::vector<int64_t>& c);
    // Element with index v in the enumeration order: base-p digits of v,
    // constant term first. v in [0, q).
    static FqElem from_index(const FieldPtr& F, uint64_t v);

    bool is_null() const { return F_ == nullptr; }
    bool is_zero() const;
    bool is_one() const;
    const FieldPtr& field() const { return F_; }

    // Coefficient of t^i, in [0, p).
    uint64_t coeff(unsigned i) const { return i < c_.size() ? c_[i] : 0; }
    // Index in the fixed enumeration order (base-p digit encoding).
    uint64_t index() const;

    FqElem operator+(const FqElem& o) const;
    FqElem operator-(const FqElem& o) const;
    FqElem operator*(const FqElem& o) const;
    FqElem operator/(const FqElem& o) const;
    FqElem operator-() const;
    FqElem inv() const;
    FqElem pow(uint64_t e) const;

    FqElem& operator+=(const FqElem& o) { return *this = *this + o; }
    FqElem& operator-=(const FqElem& o) { return *this = *this - o; }
    FqElem& operator*=(const FqElem& o) { return *this = *this * o; }

    bool operator==(const FqElem& o) const;
    bool operator!=(const FqElem& o) const { return !(*this == o); }

    // Lexicographic comparison of coefficient tuples, constant term first.
    // Total order on one field; used for canonical choices.
    static int cmp(const FqElem& a, const FqElem& b);

    std::string to_string() const; // decimal index encoding

private:
    FqElem(FieldPtr F, boost::container::small_vector<uint64_t, 2> c)
        : F_(std::move(F)), c_(std::move(c)) {}

    void check_same_field(const FqElem& o) const;

    FieldPtr F_;
    boost::container::small_vector<uint64_t, 2> c_; // length m, reduced mod p
};

// Euler-criterion square test; a must be nonzero.
bool is_square(const FqElem& a);

// Tonelli–Shanks square root; of the two roots {r, -r}, returns the one with
// the lexicographically smaller coefficient tuple. Throws InputError if a is
// not a square (or zero handling: sqrt(0) = 0).
FqElem sqrt(const FqElem& a);

// The first non-square constant of F* in enumeration order.
FqElem nonsquare_constant(const FieldPtr& F);

// All field elements in the fixed enumeration order (index order).
std::vector<FqElem> all_elements(const FieldPtr& F);

} // namespace hfs

#endif
