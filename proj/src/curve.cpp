#include "hfs/curve.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace hfs {

namespace {

constexpr int kValInf = std::numeric_limits<int>::max() / 4;

bool same_curve(const CurvePtr& a, const CurvePtr& b) {
    if (!a || !b) return false;
    if (a.get() == b.get()) return true;
    return a->F->same_as(*b->F) && a->f == b->f;
}

void require_same_curve(const CurvePtr& a, const CurvePtr& b) {
    if (!same_curve(a, b)) throw InputError("curve mismatch between operands");
}

uint64_t checked_pow_u64(uint64_t base, unsigned e, const char* what) {
    uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (uint64_t(1) << 62) / base) throw CapError(std::string(what) + " too large");
        r *= base;
    }
    return r;
}

// Arithmetic in the residue field F_q[x]/(P), P monic irreducible.
struct ResField {
    FieldPtr F;
    Poly P;
    uint64_t order; // q^(deg P)

    ResField(const FieldPtr& F_, const Poly& P_)
        : F(F_), P(P_), order(checked_pow_u64(F_->order(), (unsigned)P_.degree(), "residue field")) {}

    Poly reduce(const Poly& a) const { return a % P; }
    Poly mul(const Poly& a, const Poly& b) const { return (a * b) % P; }
    Poly pw(const Poly& a, uint64_t e) const { return mod_pow(a, e, P); }

    Poly inverse(const Poly& a) const {
        XgcdResult x = xgcd(a % P, P);
        if (x.g.degree() != 0) throw InternalError("non-invertible residue");
        return x.u % P;
    }

    Poly minus_one() const { return Poly::constant(-FqElem::one(F)); }

    // quadratic character: 0 for a = 0 mod P, else +/-1
    int euler(const Poly& a) const {
        Poly r = reduce(a);
        if (r.is_zero()) return 0;
        Poly z = pw(r, (order - 1) / 2);
        if (z.is_one()) return 1;
        if (z == minus_one()) return -1;
        throw InternalError("quadratic character is not +-1");
    }

    // first residue (degree-ordered, then coefficient-lex) with euler = -1
    Poly nonsquare() const {
        std::vector<FqElem> elems = all_elements(F);
        for (int deg = 0; deg < P.degree(); ++deg) {
            std::vector<size_t> tup(deg + 1, 0); // tup[0] = leading coeff index
            tup[0] = 1;                          // leading coefficient nonzero
            for (;;) {
                std::vector<FqElem> c(deg + 1, FqElem::zero(F));
                for (int i = 0; i <= deg; ++i) c[deg - i] = elems[tup[i]];
                Poly cand = Poly::from_coeffs(F, std::move(c));
                if (euler(cand) == -1) return cand;
                int i = deg;
                while (i >= 0 && tup[i] + 1 == elems.size()) {
                    tup[i] = (i == 0) ? 1 : 0;
                    --i;
                }
                if (i < 0) break;
                ++tup[i];
            }
        }
        throw InternalError("no non-square in residue field");
    }

    // Tonelli-Shanks; canonical result: the smaller of {r, -r} under Poly::cmp
    Poly sqrt(const Poly& a) const {
        Poly r0 = reduce(a);
        if (r0.is_zero()) return r0;
        if (euler(r0) != 1) throw InternalError("sqrt of residue non-square");
        Poly r;
        if (order % 4 == 3) {
            r = pw(r0, (order + 1) / 4);
        } else {
            uint64_t t = order - 1;
            unsigned s = 0;
            while (t % 2 == 0) {
                t /= 2;
                ++s;
            }
            Poly c = pw(nonsquare(), t);
            r = pw(r0, (t + 1) / 2);
            Poly u = mul(pw(r0, t), Poly::one(F));
            while (!u.is_one()) {
                unsigned i = 0;
                Poly w = u;
                while (!w.is_one()) {
                    w = mul(w, w);
                    ++i;
                }
                Poly b = c;
                for (unsigned j = 0; j + i + 1 < s; ++j) b = mul(b, b);
                r = mul(r, b);
                c = mul(b, b);
                u = mul(u, c);
                s = i;
            }
        }
        if (!(mul(r, r) == r0)) throw InternalError("sqrt verification failed");
        Poly rneg = reduce(-r);
        return Poly::cmp(r, rneg) <= 0 ? r : rneg;
    }
};

int ord_or_inf(const Poly& a, const Poly& P) {
    return a.is_zero() ? kValInf : a.ord_at(P);
}

} // namespace

CurvePtr Curve::make(const FieldPtr& F, const Poly& f) {
    if (!F) throw InputError("missing field descriptor");
    if (F->p() == 2) throw InputError("q must be odd");
    if (f.is_null() || !f.field()->same_as(*F)) throw InputError("f not over the given field");
    if (f.degree() < 1 || f.degree() % 2 == 0) throw InputError("f must have odd degree >= 1");
    if (!f.is_monic()) throw InputError("f must be monic");
    Poly df = f.derivative();
    if (df.is_zero() || gcd(f, df).degree() != 0) throw InputError("f must be squarefree");
    auto C = std::make_shared<Curve>();
    C->F = F;
    C->f = f;
    C->genus = (unsigned)(f.degree() - 1) / 2;
    C->zeta = nonsquare_constant(F);
    return C;
}

std::string Curve::describe() const {
    std::ostringstream os;
    os << "y^2 = " << f.to_string() << " over GF(" << F->order() << ")";
    return os.str();
}

FuncElem FuncElem::make(const CurvePtr& C, const Poly& a, const Poly& b, const Poly& d) {
    if (!C) throw InputError("missing curve");
    for (const Poly* part : {&a, &b, &d})
        if (part->is_null() || !part->field()->same_as(*C->F))
            throw InputError("element parts not over the curve's base field");
    if (d.is_zero()) throw InputError("zero denominator");
    FuncElem r;
    r.C_ = C;
    if (a.is_zero() && b.is_zero()) {
        r.a_ = a;
        r.b_ = b;
        r.d_ = Poly::one(C->F);
        return r;
    }
    Poly g = gcd(gcd(a, b), d);
    Poly ra = a / g, rb = b / g, rd = d / g;
    FqElem scale = rd.lc().inv();
    r.a_ = ra * scale;
    r.b_ = rb * scale;
    r.d_ = rd * scale;
    return r;
}

FuncElem FuncElem::zero(const CurvePtr& C) {
    return make(C, Poly::zero(C->F), Poly::zero(C->F), Poly::one(C->F));
}

FuncElem FuncElem::one(const CurvePtr& C) {
    return from_poly(C, Poly::one(C->F));
}

FuncElem FuncElem::constant(const CurvePtr& C, const FqElem& c) {
    return from_poly(C, Poly::constant(c));
}

FuncElem FuncElem::from_poly(const CurvePtr& C, const Poly& a) {
    return make(C, a, Poly::zero(C->F), Poly::one(C->F));
}

FuncElem FuncElem::y(const CurvePtr& C) {
    return make(C, Poly::zero(C->F), Poly::one(C->F), Poly::one(C->F));
}

bool FuncElem::is_constant() const {
    return b_.is_zero() && d_.is_one() && a_.degree() <= 0;
}

FuncElem FuncElem::conj() const {
    return make(C_, a_, -b_, d_);
}

Poly FuncElem::norm_num() const {
    return a_ * a_ - b_ * b_ * C_->f;
}

FuncElem FuncElem::operator+(const FuncElem& o) const {
    require_same_curve(C_, o.C_);
    return make(C_, a_ * o.d_ + o.a_ * d_, b_ * o.d_ + o.b_ * d_, d_ * o.d_);
}

FuncElem FuncElem::operator-(const FuncElem& o) const {
    return *this + (-o);
}

FuncElem FuncElem::operator-() const {
    FuncElem r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

FuncElem FuncElem::operator*(const FuncElem& o) const {
    require_same_curve(C_, o.C_);
    Poly na = a_ * o.a_ + b_ * o.b_ * C_->f;
    Poly nb = a_ * o.b_ + b_ * o.a_;
    return make(C_, na, nb, d_ * o.d_);
}

FuncElem FuncElem::inv() const {
    if (is_zero()) throw InputError("division by zero element");
    // 1/((a+by)/d) = d*(a-by) / (a^2 - b^2 f)
    return make(C_, d_ * a_, -(d_ * b_), norm_num());
}

FuncElem FuncElem::operator/(const FuncElem& o) const {
    require_same_curve(C_, o.C_);
    return *this * o.inv();
}

FuncElem FuncElem::pow(int64_t e) const {
    if (e < 0) return inv().pow(-e);
    FuncElem r = one(C_);
    FuncElem base = *this;
    uint64_t k = (uint64_t)e;
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

bool FuncElem::operator==(const FuncElem& o) const {
    if (is_null() && o.is_null()) return true;
    if (is_null() || o.is_null()) return false;
    return same_curve(C_, o.C_) && a_ == o.a_ && b_ == o.b_ && d_ == o.d_;
}

std::string FuncElem::to_string() const {
    if (is_null()) return "<null>";
    if (is_zero()) return "0";
    std::ostringstream os;
    bool denom = !d_.is_one();
    if (b_.is_zero()) {
        if (!denom) return a_.to_string();
        os << "(" << a_.to_string() << ") / (" << d_.to_string() << ")";
        return os.str();
    }
    std::ostringstream num;
    if (a_.is_zero()) {
        num << "(" << b_.to_string() << ")*y";
    } else {
        num << "(" << a_.to_string() << ") + (" << b_.to_string() << ")*y";
    }
    if (!denom) return num.str();
    os << "(" << num.str() << ") / (" << d_.to_string() << ")";
    return os.str();
}

Place Place::infinite(const CurvePtr& C) {
    if (!C) throw InputError("missing curve");
    Place p;
    p.C_ = C;
    p.kind_ = PlaceKind::Infinite;
    return p;
}

namespace {

void require_finite_prime(const CurvePtr& C, const Poly& P) {
    if (!C) throw InputError("missing curve");
    if (P.is_null() || !P.field()->same_as(*C->F)) throw InputError("prime not over the base field");
    if (!P.is_monic() || !is_irreducible(P)) throw InputError("'" + P.to_string() + "' is not a monic prime");
}

} // namespace

Place Place::ramified(const CurvePtr& C, const Poly& P) {
    require_finite_prime(C, P);
    if (!(C->f % P).is_zero())
        throw InputError("'" + P.to_string() + "' does not divide f: not a ramified place");
    Place p;
    p.C_ = C;
    p.kind_ = PlaceKind::Ramified;
    p.prime_ = P;
    return p;
}

Place Place::inert(const CurvePtr& C, const Poly& P) {
    require_finite_prime(C, P);
    ResField R(C->F, P);
    if (R.euler(C->f) != -1)
        throw InputError("f is a square mod '" + P.to_string() + "': not an inert place");
    Place p;
    p.C_ = C;
    p.kind_ = PlaceKind::Inert;
    p.prime_ = P;
    return p;
}

Place Place::split(const CurvePtr& C, const Poly& P, const Poly& s) {
    require_finite_prime(C, P);
    ResField R(C->F, P);
    if (R.euler(C->f) != 1)
        throw InputError("f is not a nonzero square mod '" + P.to_string() + "': not a split place");
    Poly sr = s % P;
    if (!((sr * sr - C->f) % P).is_zero())
        throw InputError("branch value is not a square root of f mod '" + P.to_string() + "'");
    Place p;
    p.C_ = C;
    p.kind_ = PlaceKind::Split;
    p.prime_ = P;
    p.branch_ = sr;
    return p;
}

const Poly& Place::prime() const {
    if (kind_ == PlaceKind::Infinite) throw InternalError("infinite place has no prime");
    return prime_;
}

const Poly& Place::branch() const {
    if (kind_ != PlaceKind::Split) throw InternalError("branch of a non-split place");
    return branch_;
}

unsigned Place::degree() const {
    switch (kind_) {
    case PlaceKind::Infinite: return 1;
    case PlaceKind::Inert: return 2 * (unsigned)prime_.degree();
    default: return (unsigned)prime_.degree();
    }
}

bool Place::is_canonical_branch() const {
    if (kind_ != PlaceKind::Split) return true;
    Poly neg = -branch_;
    return Poly::cmp(branch_, neg) <= 0;
}

Place Place::conjugate() const {
    if (kind_ != PlaceKind::Split) return *this;
    return split(C_, prime_, -branch_);
}

int Place::cmp(const Place& x, const Place& y) {
    if (x.is_null() || y.is_null()) throw InternalError("comparison of null place");
    if (x.degree() != y.degree()) return x.degree() < y.degree() ? -1 : 1;
    bool xf = x.kind_ != PlaceKind::Infinite;
    bool yf = y.kind_ != PlaceKind::Infinite;
    if (xf != yf) return xf ? 1 : -1; // infinite sorts first
    if (!xf) return 0;
    int c = Poly::cmp(x.prime_, y.prime_);
    if (c != 0) return c;
    if (x.kind_ != y.kind_) return (int)x.kind_ < (int)y.kind_ ? -1 : 1;
    if (x.kind_ != PlaceKind::Split) return 0;
    int xb = x.is_canonical_branch() ? 0 : 1;
    int yb = y.is_canonical_branch() ? 0 : 1;
    if (xb != yb) return xb < yb ? -1 : 1;
    return Poly::cmp(x.branch_, y.branch_);
}

std::string Place::to_string() const {
    switch (kind_) {
    case PlaceKind::Infinite: return "inf";
    case PlaceKind::Ramified: return "ram(" + prime_.to_string() + ")";
    case PlaceKind::Inert: return "inert(" + prime_.to_string() + ")";
    case PlaceKind::Split:
        return "split(" + prime_.to_string() + (is_canonical_branch() ? ",+)" : ",-)");
    }
    throw InternalError("unreachable place kind");
}

Divisor Divisor::single(const Place& p, int64_t c) {
    Divisor d;
    d.add(p, c);
    return d;
}

void Divisor::add(const Place& p, int64_t c) {
    if (p.is_null()) throw InternalError("null place in divisor");
    if (c == 0) return;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        terms_.emplace(p, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int64_t Divisor::coeff(const Place& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? 0 : it->second;
}

int64_t Divisor::degree() const {
    int64_t d = 0;
    for (const auto& [p, c] : terms_) d += c * (int64_t)p.degree();
    return d;
}

bool Divisor::all_even() const {
    for (const auto& [p, c] : terms_)
        if (c % 2 != 0) return false;
    return true;
}

Divisor Divisor::operator+(const Divisor& o) const {
    Divisor r = *this;
    for (const auto& [p, c] : o.terms_) r.add(p, c);
    return r;
}

Divisor Divisor::operator-(const Divisor& o) const {
    Divisor r = *this;
    for (const auto& [p, c] : o.terms_) r.add(p, -c);
    return r;
}

Divisor Divisor::operator*(int64_t c) const {
    Divisor r;
    if (c != 0)
        for (const auto& [p, k] : terms_) r.add(p, k * c);
    return r;
}

std::string Divisor::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : terms_) {
        int64_t a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (a != 1) os << a << "*";
        os << p.to_string();
    }
    return os.str();
}

std::vector<Place> place_decompose(const CurvePtr& C, const Poly& P) {
    require_finite_prime(C, P);
    if ((C->f % P).is_zero()) return {Place::ramified(C, P)};
    ResField R(C->F, P);
    int e = R.euler(C->f);
    if (e == -1) return {Place::inert(C, P)};
    Poly s = R.sqrt(C->f % P); // canonical root
    return {Place::split(C, P, s), Place::split(C, P, -s)};
}

std::vector<Place> enumerate_places(const CurvePtr& C, unsigned maxdeg) {
    std::vector<Place> out;
    if (maxdeg >= 1) out.push_back(Place::infinite(C));
    for (unsigned dp = 1; dp <= maxdeg; ++dp) {
        for (const Poly& P : all_monic_irreducibles(C->F, dp)) {
            for (const Place& p : place_decompose(C, P))
                if (p.degree() <= maxdeg) out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int valuation(const FuncElem& lam, const Place& p) {
    if (lam.is_null() || p.is_null()) throw InputError("null argument to valuation");
    require_same_curve(lam.curve(), p.curve());
    if (lam.is_zero()) throw InputError("valuation of the zero element");
    const CurvePtr& C = lam.curve();
    const Poly &a = lam.a(), &b = lam.b(), &d = lam.d();

    if (p.kind() == PlaceKind::Infinite) {
        int ta = a.is_zero() ? kValInf : -2 * a.degree();
        int tb = b.is_zero() ? kValInf : -2 * b.degree() - (int)(2 * C->genus + 1);
        return std::min(ta, tb) + 2 * d.degree();
    }

    const Poly& P = p.prime();
    int dd = ord_or_inf(d, P);
    switch (p.kind()) {
    case PlaceKind::Ramified: {
        int ta = a.is_zero() ? kValInf : 2 * a.ord_at(P);
        int tb = b.is_zero() ? kValInf : 2 * b.ord_at(P) + 1;
        return std::min(ta, tb) - 2 * dd;
    }
    case PlaceKind::Inert: {
        int m = std::min(ord_or_inf(a, P), ord_or_inf(b, P));
        return m - dd;
    }
    case PlaceKind::Split: {
        if (b.is_zero()) return a.ord_at(P) - dd;
        if (a.is_zero()) return b.ord_at(P) - dd;
        Poly norm = a * a - b * b * C->f;
        int nu = norm.ord_at(P);
        unsigned N = (unsigned)nu + 1;
        Poly S = hensel_sqrt(C->f, P, p.branch(), N);
        Poly PN = P.pow(N);
        Poly A = (a + b * S) % PN;
        if (A.is_zero()) throw InternalError("split valuation exceeded its norm bound");
        int v = A.ord_at(P);
        if (v > nu) throw InternalError("split valuation exceeded its norm bound");
        return v - dd;
    }
    default: throw InternalError("unreachable place kind");
    }
}

namespace {

// two-coordinate arithmetic in F_q[x]/(P)[Y]/(Y^2 - fbar), for inert places
struct QuadRes {
    Poly u, w; // u + w*Y
};

QuadRes quad_mul(const ResField& R, const Poly& fbar, const QuadRes& x, const QuadRes& y) {
    return {R.reduce(x.u * y.u + x.w * y.w * fbar), R.reduce(x.u * y.w + x.w * y.u)};
}

QuadRes quad_pow(const ResField& R, const Poly& fbar, QuadRes base, uint64_t e) {
    QuadRes r{Poly::one(R.F), Poly::zero(R.F)};
    while (e) {
        if (e & 1) r = quad_mul(R, fbar, r, base);
        base = quad_mul(R, fbar, base, base);
        e >>= 1;
    }
    return r;
}

} // namespace

int legendre(const FuncElem& lam, const Place& p) {
    int v = valuation(lam, p);
    if (v % 2 != 0) return 0;
    const CurvePtr& C = lam.curve();
    const Poly &a = lam.a(), &b = lam.b(), &d = lam.d();

    switch (p.kind()) {
    case PlaceKind::Infinite:
        // even valuation means the a-part strictly dominates; d is monic
        return is_square(a.lc()) ? 1 : -1;
    case PlaceKind::Ramified: {
        const Poly& P = p.prime();
        ResField R(C->F, P);
        int alpha = a.ord_at(P); // even valuation forces a != 0
        int delta = ord_or_inf(d, P);
        Poly aprime = a;
        for (int i = 0; i < alpha; ++i) aprime = aprime / P;
        Poly dprime = d;
        for (int i = 0; i < delta; ++i) dprime = dprime / P;
        Poly h = (C->f / P) % P; // unit mod P since f is squarefree
        Poly z = R.mul(R.reduce(aprime), R.inverse(dprime));
        int k = delta - alpha;
        Poly hp = k >= 0 ? R.pw(h, (uint64_t)k) : R.pw(R.inverse(h), (uint64_t)(-k));
        return R.euler(R.mul(z, hp));
    }
    case PlaceKind::Split: {
        const Poly& P = p.prime();
        ResField R(C->F, P);
        int delta = ord_or_inf(d, P);
        int vnum = v + delta;
        Poly norm = a * a - b * b * C->f;
        unsigned N = (unsigned)norm.ord_at(P) + 1;
        Poly S = hensel_sqrt(C->f, P, p.branch(), N);
        Poly A = (a + b * S) % P.pow(N);
        for (int i = 0; i < vnum; ++i) A = A / P;
        Poly dprime = d;
        for (int i = 0; i < delta; ++i) dprime = dprime / P;
        return R.euler(R.mul(R.reduce(A), R.inverse(dprime)));
    }
    case PlaceKind::Inert: {
        const Poly& P = p.prime();
        ResField R(C->F, P);
        uint64_t big = checked_pow_u64(R.order, 2, "inert residue field");
        int m = std::min(ord_or_inf(a, P), ord_or_inf(b, P));
        int delta = ord_or_inf(d, P);
        Poly a1 = a, b1 = b, dprime = d;
        for (int i = 0; i < m; ++i) {
            if (!a1.is_zero()) a1 = a1 / P;
            if (!b1.is_zero()) b1 = b1 / P;
        }
        for (int i = 0; i < delta; ++i) dprime = dprime / P;
        Poly fbar = C->f % P;
        Poly dinv = R.inverse(dprime);
        QuadRes w{R.mul(R.reduce(a1), dinv), R.mul(R.reduce(b1), dinv)};
        QuadRes z = quad_pow(R, fbar, w, (big - 1) / 2);
        if (!z.w.is_zero()) throw InternalError("quadratic character is not +-1");
        if (z.u.is_one()) return 1;
        if (z.u == R.minus_one()) return -1;
        throw InternalError("quadratic character is not +-1");
    }
    default: throw InternalError("unreachable place kind");
    }
}

Divisor principal_divisor(const FuncElem& lam) {
    if (lam.is_null()) throw InputError("null element");
    if (lam.is_zero()) throw InputError("divisor of the zero element");
    const CurvePtr& C = lam.curve();
    std::vector<Poly> primes;
    for (const auto& [prime, mult] : factorize(lam.d())) {
        (void)mult;
        primes.push_back(prime);
    }
    for (const auto& [prime, mult] : factorize(lam.norm_num())) {
        (void)mult;
        primes.push_back(prime);
    }
    std::sort(primes.begin(), primes.end(), [](const Poly& x, const Poly& y) {
        return Poly::cmp(x, y) < 0;
    });
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    Divisor D;
    for (const Poly& P : primes)
        for (const Place& p : place_decompose(C, P)) D.add(p, valuation(lam, p));
    D.add(Place::infinite(C), valuation(lam, Place::infinite(C)));
    if (D.degree() != 0) throw InternalError("principal divisor has nonzero degree");
    return D;
}

Poly hensel_sqrt(const Poly& f, const Poly& P, const Poly& s, unsigned N) {
    if (N == 0) throw InternalError("hensel_sqrt: zero precision");
    Poly S = s % P;
    if (!((S * S - f) % P).is_zero()) throw InternalError("hensel_sqrt: bad starting root");
    FqElem inv2 = FqElem::from_int(f.field(), 2).inv();
    unsigned prec = 1;
    while (prec < N) {
        unsigned next = std::min(2 * prec, N);
        Poly Pk = P.pow(next);
        XgcdResult x = xgcd(S % Pk, Pk);
        if (x.g.degree() != 0) throw InternalError("hensel_sqrt: non-unit root");
        Poly Sinv = (x.u * Poly::constant(x.g.lc().inv())) % Pk; // normalize gcd scalar
        S = ((S + (f % Pk) * Sinv) * Poly::constant(inv2)) % Pk;
        prec = next;
    }
    Poly PN = P.pow(N);
    S = S % PN;
    if (!((S * S - f) % PN).is_zero()) throw InternalError("hensel_sqrt: lift verification failed");
    return S;
}

namespace {

struct ElemParser {
    const CurvePtr& C;
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw InputError(what + " at position " + std::to_string(pos) + " in '" + s + "'");
    }

    uint64_t parse_uint() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected integer");
        uint64_t v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = v * 10 + (uint64_t)(s[pos] - '0');
            if (v > (1ULL << 62)) fail("integer literal too large");
            ++pos;
        }
        return v;
    }

    FuncElem parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos;
            FuncElem e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == 'x') {
            ++pos;
            return FuncElem::from_poly(C, Poly::x(C->F));
        }
        if (c == 'y') {
            ++pos;
            return FuncElem::y(C);
        }
        if (std::isdigit((unsigned char)c)) {
            uint64_t v = parse_uint();
            return FuncElem::constant(C, FqElem::from_index(C->F, v % C->F->order()));
        }
        fail("expected '(', 'x', 'y' or integer");
    }

    FuncElem parse_power() {
        FuncElem base = parse_atom();
        if (eat('^')) {
            uint64_t e = parse_uint();
            if (e > 4096) fail("exponent too large");
            return base.pow((int64_t)e);
        }
        return base;
    }

    FuncElem parse_unary() {
        if (eat('-')) return -parse_unary();
        (void)eat('+');
        return parse_power();
    }

    FuncElem parse_term() {
        FuncElem acc = parse_unary();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos;
                acc = acc * parse_unary();
            } else if (c == '/') {
                ++pos;
                FuncElem rhs = parse_unary();
                if (rhs.is_zero()) fail("division by zero");
                acc = acc / rhs;
            } else if (c == 'x' || c == 'y' || c == '(' || std::isdigit((unsigned char)c)) {
                acc = acc * parse_power(); // implicit product, e.g. "2x^3"
            } else {
                break;
            }
        }
        return acc;
    }

    FuncElem parse_expr() {
        FuncElem acc = parse_term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos;
                acc = acc + parse_term();
            } else if (c == '-') {
                ++pos;
                acc = acc - parse_term();
            } else {
                break;
            }
        }
        return acc;
    }
};

} // namespace

FuncElem parse_func_elem(const CurvePtr& C, const std::string& text) {
    ElemParser p{C, text};
    FuncElem e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters");
    return e;
}

namespace {

std::string strip(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace((unsigned char)s[b])) ++b;
    while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
    return s.substr(b, e - b);
}

} // namespace

Place parse_place(const CurvePtr& C, const std::string& text) {
    std::string t = strip(text);
    if (t == "inf") return Place::infinite(C);
    size_t open = t.find('(');
    if (open == std::string::npos || t.back() != ')')
        throw InputError("malformed place '" + text + "'");
    std::string kw = strip(t.substr(0, open));
    std::string inner = t.substr(open + 1, t.size() - open - 2);
    if (kw == "ram") return Place::ramified(C, parse_poly(C->F, inner).monic());
    if (kw == "inert") return Place::inert(C, parse_poly(C->F, inner).monic());
    if (kw == "split") {
        size_t comma = inner.rfind(',');
        if (comma == std::string::npos) throw InputError("split place needs a branch sign: '" + text + "'");
        Poly P = parse_poly(C->F, inner.substr(0, comma)).monic();
        std::string sign = strip(inner.substr(comma + 1));
        if (sign != "+" && sign != "-") throw InputError("branch sign must be '+' or '-' in '" + text + "'");
        std::vector<Place> ps = place_decompose(C, P);
        if (ps.size() != 2 || ps[0].kind() != PlaceKind::Split)
            throw InputError("'" + P.to_string() + "' is not split over this curve");
        return sign == "+" ? ps[0] : ps[1];
    }
    throw InputError("unknown place kind '" + kw + "' in '" + text + "'");
}

std::vector<Place> parse_place_list(const CurvePtr& C, const std::string& text) {
    std::vector<Place> out;
    std::string cur;
    int depth = 0;
    auto flush = [&]() {
        std::string t = strip(cur);
        if (!t.empty()) out.push_back(parse_place(C, t));
        cur.clear();
    };
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            flush();
        } else {
            cur.push_back(c);
        }
    }
    if (depth != 0) throw InputError("unbalanced parentheses in place list '" + text + "'");
    flush();
    return out;
}

Divisor parse_divisor(const CurvePtr& C, const std::string& text) {
    Divisor D;
    std::string t = strip(text);
    if (t.empty() || t == "0") return D;
    size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < t.size() && std::isspace((unsigned char)t[pos])) ++pos;
    };
    bool first = true;
    while (true) {
        skip_ws();
        if (pos >= t.size()) break;
        int64_t sign = 1;
        if (t[pos] == '+' || t[pos] == '-') {
            sign = t[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw InputError("expected '+' or '-' between divisor terms in '" + text + "'");
        }
        first = false;
        skip_ws();
        int64_t coeff = 1;
        if (pos < t.size() && std::isdigit((unsigned char)t[pos])) {
            coeff = 0;
            while (pos < t.size() && std::isdigit((unsigned char)t[pos])) {
                coeff = coeff * 10 + (t[pos] - '0');
                if (coeff > (int64_t(1) << 40)) throw InputError("divisor coefficient too large");
                ++pos;
            }
            skip_ws();
            if (pos >= t.size() || t[pos] != '*')
                throw InputError("expected '*' after coefficient in divisor '" + text + "'");
            ++pos;
            skip_ws();
        }
        // place token: keyword [ '(' ... ')' ]
        size_t start = pos;
        while (pos < t.size() && std::isalpha((unsigned char)t[pos])) ++pos;
        if (start == pos) throw InputError("expected place in divisor '" + text + "'");
        if (pos < t.size() && t[pos] == '(') {
            int depth = 0;
            do {
                if (t[pos] == '(') ++depth;
                if (t[pos] == ')') --depth;
                ++pos;
            } while (pos < t.size() && depth > 0);
            if (depth > 0) throw InputError("unbalanced parentheses in divisor '" + text + "'");
        }
        D.add(parse_place(C, t.substr(start, pos - start)), sign * coeff);
    }
    return D;
}

} // namespace hfs
