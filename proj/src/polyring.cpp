#include "hfs/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace hfs {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
    if (a.is_null() || b.is_null() || !a.field()->same_as(*b.field()))
        throw InputError("field descriptor mismatch in polynomial arithmetic");
}

uint64_t poly_hash(const Poly& a) {
    uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(a.field()->p());
    mix(a.field()->m());
    for (const FqElem& c : a.coeffs()) mix(c.index());
    return h;
}

} // namespace

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::x(const FieldPtr& F) {
    return monomial(FqElem::one(F), 1);
}

Poly Poly::constant(const FqElem& c) {
    Poly r(c.field());
    if (!c.is_zero()) r.c_.push_back(c);
    return r;
}

Poly Poly::monomial(const FqElem& c, size_t k) {
    Poly r(c.field());
    if (c.is_zero()) return r;
    r.c_.assign(k, FqElem::zero(c.field()));
    r.c_.push_back(c);
    return r;
}

Poly Poly::from_coeffs(const FieldPtr& F, std::vector<FqElem> coeffs) {
    Poly r(F);
    r.c_ = std::move(coeffs);
    for (const FqElem& e : r.c_)
        if (e.is_null() || !e.field()->same_as(*F)) throw InputError("coefficient field mismatch");
    r.trim();
    return r;
}

Poly Poly::from_ints(const FieldPtr& F, const std::vector<int64_t>& coeffs) {
    std::vector<FqElem> c;
    c.reserve(coeffs.size());
    for (int64_t v : coeffs) c.push_back(FqElem::from_int(F, v));
    return from_coeffs(F, std::move(c));
}

const FqElem& Poly::lc() const {
    if (c_.empty()) throw InputError("leading coefficient of zero polynomial");
    return c_.back();
}

FqElem Poly::coeff(size_t i) const {
    if (is_null()) throw InputError("null polynomial");
    return i < c_.size() ? c_[i] : FqElem::zero(F_);
}

Poly Poly::operator+(const Poly& o) const {
    require_same_field(*this, o);
    Poly r(F_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), FqElem::zero(F_));
    for (size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] = coeff(i) + o.coeff(i);
    }
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    require_same_field(*this, o);
    Poly r(F_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), FqElem::zero(F_));
    for (size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] = coeff(i) - o.coeff(i);
    }
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (FqElem& e : r.c_) e = -e;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    require_same_field(*this, o);
    Poly r(F_);
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, FqElem::zero(F_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

Poly Poly::operator*(const FqElem& s) const {
    Poly r = *this;
    for (FqElem& e : r.c_) e = e * s;
    r.trim();
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (is_null() && o.is_null()) return true;
    if (is_null() || o.is_null()) return false;
    if (!F_->same_as(*o.F_)) return false;
    return c_ == o.c_;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
    require_same_field(*this, divisor);
    if (divisor.is_zero()) throw InputError("polynomial division by zero");
    Poly q(F_), r = *this;
    if (r.degree() < divisor.degree()) return {q, r};
    q.c_.assign(r.c_.size() - divisor.c_.size() + 1, FqElem::zero(F_));
    FqElem inv_lc = divisor.lc().inv();
    while (!r.is_zero() && r.degree() >= divisor.degree()) {
        size_t sh = r.c_.size() - divisor.c_.size();
        FqElem c = r.lc() * inv_lc;
        q.c_[sh] = c;
        for (size_t i = 0; i < divisor.c_.size(); ++i) r.c_[sh + i] -= c * divisor.c_[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

bool Poly::divides(const Poly& multiple) const {
    return multiple.divmod(*this).second.is_zero();
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * lc().inv();
}

Poly Poly::derivative() const {
    if (is_null()) throw InputError("null polynomial");
    Poly r(F_);
    for (size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * FqElem::from_int(F_, (int64_t)i));
    r.trim();
    return r;
}

FqElem Poly::eval(const FqElem& at) const {
    FqElem r = FqElem::zero(F_);
    for (size_t i = c_.size(); i-- > 0;) r = r * at + c_[i];
    return r;
}

Poly Poly::pow(uint64_t e) const {
    Poly r = one(F_);
    Poly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

int Poly::ord_at(const Poly& prime) const {
    if (is_zero()) throw InputError("ord_at of zero polynomial");
    int n = 0;
    Poly cur = *this;
    for (;;) {
        auto [q, r] = cur.divmod(prime);
        if (!r.is_zero()) return n;
        cur = q;
        ++n;
    }
}

int Poly::cmp(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (size_t i = a.c_.size(); i-- > 0;) {
        int c = FqElem::cmp(a.c_[i], b.c_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_null()) return "<null>";
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool unit = c_[i].is_one();
        if (i == 0 || !unit) os << c_[i].to_string();
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

XgcdResult xgcd(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    const FieldPtr& F = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(F), s1 = Poly::zero(F);
    Poly t0 = Poly::zero(F), t1 = Poly::one(F);
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    FqElem scale = r0.lc().inv();
    return {r0 * scale, s0 * scale, t0 * scale};
}

Poly mod_pow(const Poly& base, uint64_t e, const Poly& modulus) {
    Poly r = Poly::one(base.field());
    Poly b = base % modulus;
    r = r % modulus;
    while (e) {
        if (e & 1) r = (r * b) % modulus;
        b = (b * b) % modulus;
        e >>= 1;
    }
    return r;
}

namespace {

// inverse Frobenius on a coefficient: c -> c^(p^(m-1))
FqElem pth_root_coeff(const FqElem& c) {
    const FieldPtr& F = c.field();
    uint64_t e = 1;
    for (unsigned i = 0; i + 1 < F->m(); ++i) e *= F->p();
    return c.pow(e);
}

// f monic with f' = 0, i.e. f = g(x^p); returns the p-th root g
Poly pth_root(const Poly& f) {
    const FieldPtr& F = f.field();
    uint64_t p = F->p();
    std::vector<FqElem> out;
    for (size_t i = 0; i <= (size_t)f.degree(); i += p) out.push_back(pth_root_coeff(f.coeff(i)));
    return Poly::from_coeffs(F, std::move(out));
}

void sqfree_accumulate(const Poly& f, int mult, std::map<int, Poly>& out);

void sqfree_monic(const Poly& f, int mult, std::map<int, Poly>& out) {
    if (f.degree() < 1) return;
    Poly df = f.derivative();
    if (df.is_zero()) {
        sqfree_accumulate(pth_root(f), mult * (int)f.field()->p(), out);
        return;
    }
    Poly c = gcd(f, df);
    Poly w = f / c;
    int i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly part = w / y;
        if (part.degree() >= 1) {
            auto it = out.find(mult * i);
            if (it == out.end())
                out.emplace(mult * i, part);
            else
                it->second = it->second * part;
        }
        w = std::move(y);
        c = c / w;
        ++i;
    }
    if (!c.is_one()) sqfree_accumulate(pth_root(c), mult * (int)f.field()->p(), out);
}

void sqfree_accumulate(const Poly& f, int mult, std::map<int, Poly>& out) {
    sqfree_monic(f, mult, out);
}

// equal-degree splitting: g = product of distinct monic primes of degree d
void edf(const Poly& g, unsigned d, Rng& rng, std::vector<Poly>& out) {
    if ((unsigned)g.degree() == d) {
        out.push_back(g);
        return;
    }
    const FieldPtr& F = g.field();
    uint64_t q = F->order();
    // exponent (q^d - 1)/2 as a chain to avoid overflow for larger d
    for (;;) {
        // random nonconstant r of degree < deg g
        std::vector<FqElem> rc;
        for (int i = 0; i < g.degree(); ++i) rc.push_back(FqElem::from_index(F, rng.below(q)));
        Poly r = Poly::from_coeffs(F, std::move(rc));
        if (r.degree() < 1) continue;
        Poly h = gcd(r, g);
        if (h.degree() >= 1 && h.degree() < g.degree()) {
            edf(h, d, rng, out);
            edf(g / h, d, rng, out);
            return;
        }
        // r^((q^d-1)/2) mod g, computed as ((r^(q-1) * r)^(q-1) * r ...)
        // via the usual (q^d-1)/2 = (q-1)/2 * (q^(d-1)+...+1) split:
        // t = r^(1+q+...+q^(d-1)) then t^((q-1)/2)
        Poly t = r % g;
        Poly acc = t;
        for (unsigned i = 1; i < d; ++i) {
            acc = mod_pow(acc, q, g); // Frobenius power chain
            t = (t * acc) % g;
        }
        Poly s = mod_pow(t, (q - 1) / 2, g);
        Poly split = gcd(s - Poly::one(F), g);
        if (split.degree() >= 1 && split.degree() < g.degree()) {
            edf(split, d, rng, out);
            edf(g / split, d, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<std::pair<Poly, int>> factorize(const Poly& a) {
    if (a.is_null() || a.is_zero()) throw InputError("factorize of zero polynomial");
    std::vector<std::pair<Poly, int>> result;
    if (a.degree() < 1) return result;
    const FieldPtr& F = a.field();
    Rng rng(poly_hash(a)); // fixed internal seed derived from the input
    std::map<int, Poly> sqfree;
    sqfree_monic(a.monic(), 1, sqfree);
    for (auto& [mult, part] : sqfree) {
        // distinct-degree splitting of the squarefree part
        Poly rest = part;
        Poly xq = Poly::x(F);
        unsigned d = 0;
        while (rest.degree() >= 1) {
            ++d;
            if ((int)(2 * d) > rest.degree()) {
                result.emplace_back(rest, mult); // remainder is irreducible
                break;
            }
            xq = mod_pow(xq, F->order(), rest);
            Poly g = gcd(xq - Poly::x(F), rest);
            if (g.degree() >= 1) {
                std::vector<Poly> primes;
                edf(g, d, rng, primes);
                for (Poly& prime : primes) result.emplace_back(std::move(prime), mult);
                rest = rest / g;
                xq = xq % rest;
            }
        }
    }
    std::sort(result.begin(), result.end(), [](const auto& l, const auto& r) {
        return Poly::cmp(l.first, r.first) < 0;
    });
    return result;
}

bool is_irreducible(const Poly& a) {
    if (a.is_null()) throw InputError("null polynomial");
    int d = a.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    const FieldPtr& F = a.field();
    // x^(q^d) = x mod a, and gcd(x^(q^(d/l)) - x, a) = 1 for primes l | d
    Poly xq = Poly::x(F);
    std::vector<Poly> frob(d + 1);
    for (int i = 1; i <= d; ++i) {
        xq = mod_pow(xq, F->order(), a);
        frob[i] = xq;
    }
    if (!(frob[d] == Poly::x(F) % a)) return false;
    for (int l = 2; l <= d; ++l) {
        if (d % l != 0) continue;
        bool lprime = true;
        for (int t = 2; t * t <= l; ++t)
            if (l % t == 0) lprime = false;
        if (!lprime) continue;
        Poly g = gcd(frob[d / l] - Poly::x(F), a);
        if (g.degree() != 0) return false;
    }
    return true;
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& a) {
    if (a.is_null() || a.is_zero()) throw InputError("squarefree decomposition of zero");
    std::map<int, Poly> sqfree;
    if (a.degree() >= 1) sqfree_monic(a.monic(), 1, sqfree);
    std::vector<std::pair<Poly, int>> out;
    out.reserve(sqfree.size());
    for (const auto& [mult, part] : sqfree) out.emplace_back(part, mult);
    return out;
}

Poly squarefree_part(const Poly& a) {
    Poly r = Poly::one(a.field());
    for (const auto& [part, mult] : squarefree_decomposition(a)) {
        (void)mult;
        r = r * part;
    }
    return r;
}

Poly random_irreducible(const FieldPtr& F, unsigned d, Rng& rng) {
    if (d < 1) throw InputError("degree must be >= 1");
    for (;;) {
        std::vector<FqElem> c;
        for (unsigned i = 0; i < d; ++i) c.push_back(FqElem::from_index(F, rng.below(F->order())));
        c.push_back(FqElem::one(F));
        Poly cand = Poly::from_coeffs(F, std::move(c));
        if (is_irreducible(cand)) return cand;
    }
}

std::vector<Poly> all_monic_irreducibles(const FieldPtr& F, unsigned d) {
    if (d < 1) throw InputError("degree must be >= 1");
    std::vector<FqElem> elems = all_elements(F);
    std::vector<Poly> out;
    std::vector<size_t> tuple(d, 0); // tuple[0] = coeff of x^(d-1), most significant
    for (;;) {
        std::vector<FqElem> c(d + 1, FqElem::zero(F));
        c[d] = FqElem::one(F);
        for (unsigned i = 0; i < d; ++i) c[d - 1 - i] = elems[tuple[i]];
        Poly cand = Poly::from_coeffs(F, std::move(c));
        if (is_irreducible(cand)) out.push_back(cand);
        int i = (int)d - 1;
        while (i >= 0 && tuple[i] + 1 == elems.size()) tuple[i--] = 0;
        if (i < 0) break;
        ++tuple[i];
    }
    return out;
}

namespace {

struct PolyParser {
    const FieldPtr& F;
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    uint64_t parse_uint() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
            throw InputError("expected integer at position " + std::to_string(pos) + " in '" + s + "'");
        uint64_t v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = v * 10 + (uint64_t)(s[pos] - '0');
            if (v > (1ULL << 62)) throw InputError("integer literal too large");
            ++pos;
        }
        return v;
    }

    // term := coef ['*'] [xpart] | xpart; xpart := 'x' ['^' int]
    Poly parse_term() {
        FqElem coef = FqElem::one(F);
        bool have_coef = false;
        if (std::isdigit((unsigned char)peek())) {
            uint64_t v = parse_uint();
            coef = FqElem::from_index(F, v % F->order());
            have_coef = true;
        }
        (void)eat('*');
        if (peek() == 'x') {
            ++pos;
            size_t k = 1;
            if (eat('^')) k = (size_t)parse_uint();
            if (k > 4096) throw InputError("exponent too large");
            return Poly::monomial(coef, k);
        }
        if (!have_coef)
            throw InputError("expected term at position " + std::to_string(pos) + " in '" + s + "'");
        return Poly::constant(coef);
    }

    Poly parse_sum() {
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            (void)eat('+');
        Poly acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos;
                Poly t = parse_term();
                acc = (c == '+') ? acc + t : acc - t;
            } else {
                break;
            }
        }
        return acc;
    }
};

} // namespace

Poly parse_poly(const FieldPtr& F, const std::string& text) {
    PolyParser p{F, text};
    Poly r = p.parse_sum();
    p.skip_ws();
    if (p.pos != text.size())
        throw InputError("trailing characters in polynomial '" + text + "'");
    return r;
}

} // namespace hfs
