#include "hfs/galois.hpp"

#include <algorithm>
#include <sstream>

namespace hfs {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mod_add(u64 a, u64 b, u64 p) { return (a + b) % p; }
u64 mod_sub(u64 a, u64 b, u64 p) { return (a + p - b % p) % p; }
u64 mod_mul(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

u64 mod_pow(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 mod_inv(u64 a, u64 p) {
    // p prime
    if (a % p == 0) throw InputError("division by zero in F_p");
    return mod_pow(a, p - 2, p);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// --- minimal F_p[t] toolkit used only for field construction/arithmetic ---

using PVec = std::vector<u64>; // dense, low degree first, no trailing zeros

void pv_trim(PVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PVec pv_mul(const PVec& a, const PVec& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    PVec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + (u128)a[i] * b[j]) % p;
    }
    pv_trim(r);
    return r;
}

// remainder of a modulo monic modulus given by low coefficients (degree m)
PVec pv_rem_monic(PVec a, const std::vector<u64>& mod_low, u64 p) {
    size_t m = mod_low.size();
    while (a.size() > m) {
        u64 lead = a.back();
        size_t sh = a.size() - 1 - m;
        if (lead != 0) {
            for (size_t i = 0; i < m; ++i)
                a[sh + i] = mod_sub(a[sh + i], mod_mul(lead, mod_low[i], p), p);
        }
        a.pop_back();
        pv_trim(a);
        if (a.size() <= m) break;
    }
    pv_trim(a);
    return a;
}

PVec pv_mulmod(const PVec& a, const PVec& b, const std::vector<u64>& mod_low, u64 p) {
    return pv_rem_monic(pv_mul(a, b, p), mod_low, p);
}

PVec pv_powmod(PVec a, u64 e, const std::vector<u64>& mod_low, u64 p) {
    PVec r = {1};
    a = pv_rem_monic(std::move(a), mod_low, p);
    while (e) {
        if (e & 1) r = pv_mulmod(r, a, mod_low, p);
        a = pv_mulmod(a, a, mod_low, p);
        e >>= 1;
    }
    return r;
}

// divmod by an arbitrary nonzero divisor; returns remainder only
PVec pv_rem(PVec a, const PVec& b, u64 p) {
    u64 binv = mod_inv(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        u64 c = mod_mul(a.back(), binv, p);
        size_t sh = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[sh + i] = mod_sub(a[sh + i], mod_mul(c, b[i], p), p);
        pv_trim(a);
        if (a.empty()) break;
    }
    return a;
}

PVec pv_gcd(PVec a, PVec b, u64 p) {
    pv_trim(a);
    pv_trim(b);
    while (!b.empty()) {
        PVec r = pv_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        u64 inv = mod_inv(a.back(), p);
        for (u64& c : a) c = mod_mul(c, inv, p);
    }
    return a;
}

// Bezout inverse of a modulo monic modulus; a nonzero mod modulus
PVec pv_invmod(PVec a, const std::vector<u64>& mod_low, u64 p) {
    PVec modulus = mod_low;
    modulus.push_back(1);
    // extended Euclid on (modulus, a)
    PVec r0 = modulus, r1 = pv_rem_monic(std::move(a), mod_low, p);
    if (r1.empty()) throw InputError("division by zero in F_q");
    PVec s0 = {}, s1 = {1};
    while (!r1.empty()) {
        // divide r0 by r1
        PVec q;
        PVec rem = r0;
        u64 inv = mod_inv(r1.back(), p);
        while (rem.size() >= r1.size() && !rem.empty()) {
            u64 c = mod_mul(rem.back(), inv, p);
            size_t sh = rem.size() - r1.size();
            if (q.size() < sh + 1) q.resize(sh + 1, 0);
            q[sh] = c;
            for (size_t i = 0; i < r1.size(); ++i)
                rem[sh + i] = mod_sub(rem[sh + i], mod_mul(c, r1[i], p), p);
            pv_trim(rem);
            if (rem.empty()) break;
        }
        pv_trim(q);
        PVec s2 = s0; // s2 = s0 - q*s1
        PVec qs = pv_mul(q, s1, p);
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = mod_sub(s2[i], qs[i], p);
        pv_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd (constant since modulus irreducible); inverse = s0 / r0
    if (r0.size() != 1) throw InternalError("modulus not irreducible in inversion");
    u64 scale = mod_inv(r0[0], p);
    for (u64& c : s0) c = mod_mul(c, scale, p);
    return pv_rem_monic(std::move(s0), mod_low, p);
}

bool pv_is_irreducible_monic(const std::vector<u64>& mod_low, u64 p) {
    size_t m = mod_low.size();
    if (m == 0) return false;
    if (m == 1) return true; // linear
    // t^(p^m) == t mod f, and gcd(t^(p^(m/l)) - t, f) == 1 for prime l | m
    PVec t = {0, 1};
    PVec acc = t;
    std::vector<PVec> frob; // acc after i applications: t^(p^i)
    for (size_t i = 1; i <= m; ++i) {
        acc = pv_powmod(acc, p, mod_low, p);
        frob.push_back(acc);
    }
    PVec top = frob[m - 1]; // t^(p^m)
    if (top != t) return false;
    for (size_t l = 2; l <= m; ++l) {
        if (m % l != 0 || !is_prime_u64(l)) continue;
        PVec d = frob[m / l - 1]; // t^(p^(m/l))
        // d - t
        if (d.size() < 2) d.resize(2, 0);
        d[1] = mod_sub(d[1], 1, p);
        pv_trim(d);
        PVec modulus = mod_low;
        modulus.push_back(1);
        PVec g = pv_gcd(modulus, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace

FieldDescriptor::FieldDescriptor(uint64_t p, unsigned m, std::vector<uint64_t> mod_low)
    : p_(p), m_(m), mod_low_(std::move(mod_low)) {
    u128 ord = 1;
    for (unsigned i = 0; i < m; ++i) {
        ord *= p;
        if (ord > (u128)UINT64_MAX) throw CapError("field order exceeds 64 bits");
    }
    order_ = (u64)ord;
}

FieldPtr FieldDescriptor::prime_field(uint64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
        throw InputError("characteristic must be an odd prime, got " + std::to_string(p));
    return FieldPtr(new FieldDescriptor(p, 1, {0}));
}

FieldPtr FieldDescriptor::extension(uint64_t p, unsigned m) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
        throw InputError("characteristic must be an odd prime, got " + std::to_string(p));
    if (m == 0) throw InputError("extension degree must be >= 1");
    if (m == 1) return prime_field(p);
    // first irreducible monic modulus in lexicographic tuple order
    std::vector<u64> low(m, 0);
    for (;;) {
        if (pv_is_irreducible_monic(low, p))
            return FieldPtr(new FieldDescriptor(p, m, low));
        // lexicographic successor: first component most significant, so the
        // last component is the fastest-moving digit
        int i = (int)m - 1;
        while (i >= 0 && low[i] == p - 1) low[i--] = 0;
        if (i < 0) throw InternalError("no irreducible modulus found");
        ++low[i];
    }
}

FieldPtr FieldDescriptor::with_modulus(uint64_t p, std::vector<uint64_t> low_coeffs) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
        throw InputError("characteristic must be an odd prime, got " + std::to_string(p));
    if (low_coeffs.empty()) throw InputError("modulus must have degree >= 1");
    for (u64& c : low_coeffs) c %= p;
    if (!pv_is_irreducible_monic(low_coeffs, p))
        throw InputError("modulus is not irreducible over F_p");
    return FieldPtr(new FieldDescriptor(p, (unsigned)low_coeffs.size(), std::move(low_coeffs)));
}

FieldPtr FieldDescriptor::from_order(uint64_t q) {
    if (q < 3 || q % 2 == 0) throw InputError("q must be an odd prime power >= 3");
    u64 p = 0;
    for (u64 d = 3; d * d <= q; d += 2) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return prime_field(q); // q prime
    unsigned m = 0;
    u64 rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++m;
    }
    if (rest != 1) throw InputError("q = " + std::to_string(q) + " is not a prime power");
    return extension(p, m);
}

bool FieldDescriptor::same_as(const FieldDescriptor& other) const {
    return p_ == other.p_ && m_ == other.m_ && mod_low_ == other.mod_low_;
}

void FqElem::check_same_field(const FqElem& o) const {
    if (!F_ || !o.F_ || !F_->same_as(*o.F_))
        throw InputError("field descriptor mismatch in F_q arithmetic");
}

FqElem FqElem::zero(const FieldPtr& F) {
    return FqElem(F, boost::container::small_vector<uint64_t, 2>(F->m(), 0));
}

FqElem FqElem::one(const FieldPtr& F) {
    auto r = zero(F);
    r.c_[0] = 1 % F->p();
    return r;
}

FqElem FqElem::from_int(const FieldPtr& F, int64_t v) {
    auto r = zero(F);
    int64_t p = (int64_t)F->p();
    int64_t red = v % p;
    if (red < 0) red += p;
    r.c_[0] = (u64)red;
    return r;
}

FqElem FqElem::from_coeffs(const FieldPtr& F, const std::vector<int64_t>& c) {
    if (c.size() > F->m()) throw InputError("too many coefficients for field element");
    auto r = zero(F);
    int64_t p = (int64_t)F->p();
    for (size_t i = 0; i < c.size(); ++i) {
        int64_t red = c[i] % p;
        if (red < 0) red += p;
        r.c_[i] = (u64)red;
    }
    return r;
}

FqElem FqElem::from_index(const FieldPtr& F, uint64_t v) {
    if (v >= F->order()) throw InputError("element index out of range");
    auto r = zero(F);
    for (unsigned i = 0; i < F->m(); ++i) {
        r.c_[i] = v % F->p();
        v /= F->p();
    }
    return r;
}

bool FqElem::is_zero() const {
    if (!F_) throw InputError("null FqElem");
    return std::all_of(c_.begin(), c_.end(), [](u64 x) { return x == 0; });
}

bool FqElem::is_one() const {
    if (!F_) throw InputError("null FqElem");
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

uint64_t FqElem::index() const {
    u64 v = 0;
    for (size_t i = c_.size(); i-- > 0;) v = v * F_->p() + c_[i];
    return v;
}

FqElem FqElem::operator+(const FqElem& o) const {
    check_same_field(o);
    FqElem r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = mod_add(c_[i], o.c_[i], F_->p());
    return r;
}

FqElem FqElem::operator-(const FqElem& o) const {
    check_same_field(o);
    FqElem r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = mod_sub(c_[i], o.c_[i], F_->p());
    return r;
}

FqElem FqElem::operator-() const {
    if (!F_) throw InputError("null FqElem");
    FqElem r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = mod_sub(0, c_[i], F_->p());
    return r;
}

FqElem FqElem::operator*(const FqElem& o) const {
    check_same_field(o);
    const u64 p = F_->p();
    if (F_->m() == 1) {
        FqElem r = *this;
        r.c_[0] = mod_mul(c_[0], o.c_[0], p);
        return r;
    }
    PVec a(c_.begin(), c_.end()), b(o.c_.begin(), o.c_.end());
    pv_trim(a);
    pv_trim(b);
    PVec prod = pv_mulmod(a, b, F_->modulus_low(), p);
    FqElem r = zero(F_);
    for (size_t i = 0; i < prod.size(); ++i) r.c_[i] = prod[i];
    return r;
}

FqElem FqElem::inv() const {
    if (!F_) throw InputError("null FqElem");
    if (is_zero()) throw InputError("division by zero in F_q");
    const u64 p = F_->p();
    if (F_->m() == 1) {
        FqElem r = *this;
        r.c_[0] = mod_inv(c_[0], p);
        return r;
    }
    PVec a(c_.begin(), c_.end());
    pv_trim(a);
    PVec iv = pv_invmod(std::move(a), F_->modulus_low(), p);
    FqElem r = zero(F_);
    for (size_t i = 0; i < iv.size(); ++i) r.c_[i] = iv[i];
    return r;
}

FqElem FqElem::operator/(const FqElem& o) const { return *this * o.inv(); }

FqElem FqElem::pow(uint64_t e) const {
    if (!F_) throw InputError("null FqElem");
    FqElem r = one(F_);
    FqElem base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

bool FqElem::operator==(const FqElem& o) const {
    if (!F_ && !o.F_) return true;
    if (!F_ || !o.F_) return false;
    if (!F_->same_as(*o.F_)) return false;
    return std::equal(c_.begin(), c_.end(), o.c_.begin());
}

int FqElem::cmp(const FqElem& a, const FqElem& b) {
    a.check_same_field(b);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
    }
    return 0;
}

std::string FqElem::to_string() const {
    return std::to_string(index());
}

bool is_square(const FqElem& a) {
    if (!a.field()) throw InputError("null FqElem");
    if (a.is_zero()) return true; // 0 = 0^2
    const u64 q = a.field()->order();
    return a.pow((q - 1) / 2).is_one();
}

FqElem sqrt(const FqElem& a) {
    const FieldPtr& F = a.field();
    if (!F) throw InputError("null FqElem");
    if (a.is_zero()) return a;
    if (!is_square(a)) throw InputError("sqrt of a non-square");
    const u64 q = F->order();
    FqElem r = FqElem::zero(F);
    if (q % 4 == 3) {
        r = a.pow((q + 1) / 4);
    } else {
        // Tonelli–Shanks
        u64 s = q - 1;
        unsigned e = 0;
        while (s % 2 == 0) {
            s /= 2;
            ++e;
        }
        FqElem n = nonsquare_constant(F);
        FqElem g = n.pow(s); // order 2^e
        FqElem x = a.pow((s + 1) / 2);
        FqElem b = a.pow(s);
        unsigned k = e;
        while (!b.is_one()) {
            // find least j with b^(2^j) = 1
            unsigned j = 0;
            FqElem t = b;
            while (!t.is_one()) {
                t = t * t;
                ++j;
            }
            FqElem gp = g;
            for (unsigned i = 0; i + j + 1 < k; ++i) gp = gp * gp; // g^(2^(k-j-1))
            x = x * gp;
            g = gp * gp;
            b = b * g;
            k = j;
        }
        r = x;
    }
    FqElem neg = -r;
    return FqElem::cmp(r, neg) <= 0 ? r : neg;
}

FqElem nonsquare_constant(const FieldPtr& F) {
    for (const FqElem& a : all_elements(F)) {
        if (a.is_zero()) continue;
        if (!is_square(a)) return a;
    }
    throw InternalError("no non-square in F_q with q odd");
}

std::vector<FqElem> all_elements(const FieldPtr& F) {
    // lexicographic on coefficient tuples, constant term most significant
    std::vector<FqElem> out;
    out.reserve(F->order());
    std::vector<int64_t> tuple(F->m(), 0);
    for (;;) {
        out.push_back(FqElem::from_coeffs(F, tuple));
        int i = (int)F->m() - 1;
        while (i >= 0 && tuple[i] == (int64_t)F->p() - 1) tuple[i--] = 0;
        if (i < 0) break;
        ++tuple[i];
    }
    return out;
}

} // namespace hfs
