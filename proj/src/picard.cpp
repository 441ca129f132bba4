#include "hfs/picard.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace hfs {

MumfordRep MumfordRep::identity(const CurvePtr& C) {
    return {Poly::one(C->F), Poly::zero(C->F)};
}

int MumfordRep::cmp(const MumfordRep& a, const MumfordRep& b) {
    int c = Poly::cmp(a.u, b.u);
    if (c != 0) return c;
    return Poly::cmp(a.v, b.v);
}

std::string MumfordRep::to_string() const {
    return "(" + u.to_string() + ", " + v.to_string() + ")";
}

void validate_mumford(const CurvePtr& C, const MumfordRep& m) {
    if (m.u.is_null() || m.v.is_null()) throw InternalError("null Mumford pair");
    if (!m.u.is_monic()) throw InternalError("Mumford u not monic");
    if (m.u.degree() > (int)C->genus) throw InternalError("Mumford pair not reduced");
    if (!m.v.is_zero() && m.v.degree() >= m.u.degree())
        throw InternalError("Mumford v degree out of range");
    if (!((m.v * m.v - C->f) % m.u).is_zero())
        throw InternalError("Mumford invariant u | v^2 - f violated");
}

namespace {

Poly exact_div(const Poly& a, const Poly& b, const char* what) {
    auto [q, r] = a.divmod(b);
    if (!r.is_zero()) throw InternalError(std::string("inexact division in ") + what);
    return q;
}

// Reduction of a not-necessarily-reduced pair (u | v^2 - f, deg v < deg u).
MumfordRep make_reduced(const CurvePtr& C, Poly u, Poly v) {
    u = u.monic();
    v = v % u;
    while (u.degree() > (int)C->genus) {
        Poly unew = exact_div(C->f - v * v, u, "Mumford reduction").monic();
        v = (-v) % unew;
        u = unew;
    }
    if (u.degree() == 0) v = Poly::zero(C->F);
    MumfordRep m{u, v};
    validate_mumford(C, m);
    return m;
}

} // namespace

MumfordRep jac_add(const CurvePtr& C, const MumfordRep& a, const MumfordRep& b) {
    validate_mumford(C, a);
    validate_mumford(C, b);
    // Cantor composition: d = gcd(u1, u2, v1+v2) = s1 u1 + s2 u2 + s3 (v1+v2)
    XgcdResult x1 = xgcd(a.u, b.u);
    Poly vsum = a.v + b.v;
    XgcdResult x2 = xgcd(x1.g, vsum);
    const Poly& d = x2.g;
    Poly s1 = x2.u * x1.u;
    Poly s2 = x2.u * x1.v;
    const Poly& s3 = x2.v;
    Poly u = exact_div(a.u * b.u, d * d, "Cantor composition (u)");
    Poly num = s1 * a.u * b.v + s2 * b.u * a.v + s3 * (a.v * b.v + C->f);
    Poly v = exact_div(num, d, "Cantor composition (v)") % u;
    return make_reduced(C, u, v);
}

MumfordRep jac_neg(const CurvePtr& C, const MumfordRep& a) {
    validate_mumford(C, a);
    return {a.u, (-a.v) % a.u};
}

MumfordRep jac_mul_int(const CurvePtr& C, const MumfordRep& a, int64_t n) {
    if (n < 0) return jac_mul_int(C, jac_neg(C, a), -n);
    MumfordRep acc = MumfordRep::identity(C);
    MumfordRep base = a;
    uint64_t k = (uint64_t)n;
    while (k) {
        if (k & 1) acc = jac_add(C, acc, base);
        base = jac_add(C, base, base);
        k >>= 1;
    }
    return acc;
}

MumfordRep class_of_divisor(const CurvePtr& C, const Divisor& D) {
    if (D.degree() != 0) throw InputError("divisor has nonzero degree");
    MumfordRep acc = MumfordRep::identity(C);
    for (const auto& [p, c] : D.terms()) {
        if (p.is_null()) throw InternalError("null place in divisor");
        switch (p.kind()) {
        case PlaceKind::Infinite:
        case PlaceKind::Inert:
            continue; // [p - deg(p)*inf] = 0: trivially for inf, and dv(P) = p - 2 deg(P)*inf for inert P
        case PlaceKind::Ramified: {
            MumfordRep m = make_reduced(C, p.prime(), Poly::zero(C->F));
            acc = jac_add(C, acc, jac_mul_int(C, m, c));
            break;
        }
        case PlaceKind::Split: {
            MumfordRep m = make_reduced(C, p.prime(), p.branch());
            acc = jac_add(C, acc, jac_mul_int(C, m, c));
            break;
        }
        }
    }
    return acc;
}

Divisor divisor_of_class(const CurvePtr& C, const MumfordRep& m) {
    validate_mumford(C, m);
    Divisor D;
    for (const auto& [P, e] : factorize(m.u)) {
        if ((C->f % P).is_zero()) {
            if (e != 1) throw InternalError("ramified prime with multiplicity > 1 in reduced u");
            D.add(Place::ramified(C, P), e);
        } else {
            D.add(Place::split(C, P, m.v % P), e);
        }
    }
    if (m.u.degree() > 0) D.add(Place::infinite(C), -m.u.degree());
    return D;
}

uint64_t point_count(const CurvePtr& C, unsigned r) {
    if (r < 1 || r > 2) throw InputError("point counting implemented for r = 1, 2 only");
    uint64_t n = 0;
    for (const Place& p : enumerate_places(C, r))
        if (r % p.degree() == 0) n += p.degree();
    return n;
}

uint64_t order_from_point_counts(const CurvePtr& C) {
    int64_t q = (int64_t)C->F->order();
    if (C->genus == 0) return 1;
    if (C->genus == 1) return point_count(C, 1);
    if (C->genus == 2) {
        int64_t n1 = (int64_t)point_count(C, 1);
        int64_t n2 = (int64_t)point_count(C, 2);
        int64_t p1 = q + 1 - n1;
        int64_t p2 = q * q + 1 - n2;
        int64_t e1 = p1;
        int64_t e2 = (p1 * p1 - p2) / 2;
        int64_t l1 = 1 - e1 + e2 - q * e1 + q * q;
        if (l1 <= 0) throw InternalError("non-positive class number from L-polynomial");
        return (uint64_t)l1;
    }
    throw InputError("L-polynomial order formula implemented for genus <= 2 only");
}

namespace {

uint64_t curve_hash(const CurvePtr& C) {
    uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(C->F->p());
    mix(C->F->m());
    for (const FqElem& c : C->f.coeffs()) mix(c.index());
    return h;
}

std::vector<uint64_t> prime_divisors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

using AddFn = std::function<MumfordRep(const MumfordRep&, const MumfordRep&)>;

MumfordRep generic_mul(const MumfordRep& e, uint64_t k, const AddFn& add, const MumfordRep& id) {
    MumfordRep acc = id;
    MumfordRep base = e;
    while (k) {
        if (k & 1) acc = add(acc, base);
        base = add(base, base);
        k >>= 1;
    }
    return acc;
}

uint64_t element_order(const MumfordRep& e, uint64_t n, const std::vector<uint64_t>& primes,
                       const AddFn& add, const MumfordRep& id) {
    uint64_t o = n;
    for (uint64_t p : primes) {
        while (o % p == 0 && generic_mul(e, o / p, add, id) == id) o /= p;
    }
    return o;
}

// Invariant-factor generators of an abelian group given as a full element
// list: split off a maximal-order cyclic factor, recurse on the quotient
// (cosets represented by their minimal member), lift quotient generators.
// Returns (order, generator) pairs with ascending divisibility chain.
std::vector<std::pair<uint64_t, MumfordRep>> structure_rec(const std::vector<MumfordRep>& elems,
                                                           const AddFn& add, const MumfordRep& id) {
    uint64_t n = elems.size();
    if (n == 1) return {};
    std::vector<uint64_t> primes = prime_divisors(n);

    MumfordRep gmax = id;
    uint64_t dm = 1;
    for (const MumfordRep& e : elems) {
        if (e == id) continue;
        uint64_t o = element_order(e, n, primes, add, id);
        if (o > dm) {
            dm = o;
            gmax = e;
        }
    }
    if (dm == n) return {{n, gmax}};

    // cyclic subgroup H = <gmax> and the coset-minimum map
    std::vector<MumfordRep> H;
    std::map<MumfordRep, uint64_t> h_index;
    {
        MumfordRep h = id;
        for (uint64_t t = 0; t < dm; ++t) {
            H.push_back(h);
            h_index.emplace(h, t);
            h = add(h, gmax);
        }
        if (!(h == id)) throw InternalError("cyclic subgroup order mismatch");
    }
    std::map<MumfordRep, MumfordRep> coset_min;
    for (const MumfordRep& e : elems) {
        if (coset_min.count(e)) continue;
        std::vector<MumfordRep> coset;
        coset.reserve(dm);
        for (const MumfordRep& h : H) coset.push_back(add(e, h));
        MumfordRep mn = *std::min_element(coset.begin(), coset.end());
        for (const MumfordRep& c : coset) coset_min.emplace(c, mn);
    }
    std::vector<MumfordRep> q_elems;
    for (const auto& [e, mn] : coset_min)
        if (e == mn) q_elems.push_back(e);
    std::sort(q_elems.begin(), q_elems.end());
    if (q_elems.size() * dm != n) throw InternalError("coset partition size mismatch");

    AddFn q_add = [add, &coset_min](const MumfordRep& a, const MumfordRep& b) {
        return coset_min.at(add(a, b));
    };
    MumfordRep qid = coset_min.at(id);
    std::vector<std::pair<uint64_t, MumfordRep>> sub = structure_rec(q_elems, q_add, qid);

    std::vector<std::pair<uint64_t, MumfordRep>> out;
    for (const auto& [o, hbar] : sub) {
        // lift: hbar^o lies in H, say = t*gmax; then hbar - (t/o)*gmax has order o
        MumfordRep hd = generic_mul(hbar, o, add, id);
        auto it = h_index.find(hd);
        if (it == h_index.end()) throw InternalError("quotient generator power escaped the subgroup");
        uint64_t t = it->second;
        if (t % o != 0) throw InternalError("quotient generator cannot be lifted");
        MumfordRep corr = generic_mul(gmax, (dm - t / o) % dm, add, id);
        MumfordRep lifted = add(hbar, corr);
        if (element_order(lifted, n, primes, add, id) != o)
            throw InternalError("lifted generator has wrong order");
        if (dm % o != 0) throw InternalError("invariant factors do not divide");
        out.emplace_back(o, lifted);
    }
    out.emplace_back(dm, gmax);
    return out;
}

std::vector<MumfordRep> enumerate_reduced(const CurvePtr& C, uint64_t cap) {
    uint64_t q = C->F->order();
    double bound = std::pow(std::sqrt((double)q) + 1.0, 2.0 * C->genus);
    if (bound > (double)cap) throw CapError("exhaustive Jacobian enumeration exceeds cap");
    double work = std::pow((double)q, 2.0 * C->genus);
    if (work > 2e7) throw CapError("exhaustive Jacobian enumeration too large");

    std::vector<FqElem> elems = all_elements(C->F);
    std::vector<MumfordRep> out;
    out.push_back(MumfordRep::identity(C));
    for (unsigned du = 1; du <= C->genus; ++du) {
        // odometer over u's lower coefficients and v's coefficients together
        std::vector<size_t> tu(du, 0);
        for (;;) {
            std::vector<FqElem> uc(du + 1, FqElem::zero(C->F));
            uc[du] = FqElem::one(C->F);
            for (unsigned i = 0; i < du; ++i) uc[i] = elems[tu[i]];
            Poly u = Poly::from_coeffs(C->F, std::move(uc));
            std::vector<size_t> tv(du, 0);
            for (;;) {
                std::vector<FqElem> vc(du, FqElem::zero(C->F));
                for (unsigned i = 0; i < du; ++i) vc[i] = elems[tv[i]];
                Poly v = Poly::from_coeffs(C->F, std::move(vc));
                if (((v * v - C->f) % u).is_zero()) out.push_back({u, v});
                unsigned i = 0;
                while (i < du && tv[i] + 1 == elems.size()) tv[i++] = 0;
                if (i == du) break;
                ++tv[i];
            }
            unsigned i = 0;
            while (i < du && tu[i] + 1 == elems.size()) tu[i++] = 0;
            if (i == du) break;
            ++tu[i];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MumfordRep> generate_by_sampling(const CurvePtr& C, uint64_t target) {
    Rng rng(curve_hash(C) ^ 0x9e3779b97f4a7c15ULL);
    std::set<MumfordRep> closure;
    closure.insert(MumfordRep::identity(C));

    auto absorb = [&](const MumfordRep& g) {
        if (closure.count(g)) return;
        // join of the subgroup `closure` with <g>
        std::vector<MumfordRep> cyc;
        MumfordRep h = MumfordRep::identity(C);
        do {
            cyc.push_back(h);
            h = jac_add(C, h, g);
        } while (!(h == cyc.front()));
        std::vector<MumfordRep> base(closure.begin(), closure.end());
        for (const MumfordRep& e : base)
            for (const MumfordRep& c : cyc) closure.insert(jac_add(C, e, c));
    };

    // ramified classes are cheap deterministic generators; then random places
    for (const auto& [P, mult] : factorize(C->f)) {
        (void)mult;
        absorb(make_reduced(C, P, Poly::zero(C->F)));
        if (closure.size() == target) break;
    }
    unsigned attempts = 0;
    while (closure.size() != target) {
        if (closure.size() > target) throw InternalError("generated subgroup exceeds computed order");
        if (++attempts > 500) throw InternalError("could not generate the full class group by sampling");
        unsigned d = 1 + (unsigned)rng.below(C->genus + 2);
        Poly P = random_irreducible(C->F, d, rng);
        std::vector<Place> ps = place_decompose(C, P);
        const Place& p = ps[rng.below(ps.size())];
        Divisor D = Divisor::single(p, 1);
        D.add(Place::infinite(C), -(int64_t)p.degree());
        absorb(class_of_divisor(C, D));
    }
    return {closure.begin(), closure.end()};
}

} // namespace

PicardPtr jac_structure(const CurvePtr& C, JacStrategy strategy, uint64_t cap) {
    if (!C) throw InputError("missing curve");
    auto ctx = std::make_shared<PicardContext>();
    ctx->C = C;

    std::vector<MumfordRep> elems;
    if (strategy == JacStrategy::Exhaustive || C->genus > 2) {
        elems = enumerate_reduced(C, cap);
        ctx->strategy = "exhaustive";
    } else {
        uint64_t n = C->genus == 0 ? 1 : order_from_point_counts(C);
        if (n > cap) throw CapError("Picard group order exceeds cap");
        elems = generate_by_sampling(C, n);
        ctx->strategy = "generic";
    }
    ctx->order = elems.size();
    if (ctx->order > cap) throw CapError("Picard group order exceeds cap");

    AddFn add = [C](const MumfordRep& a, const MumfordRep& b) { return jac_add(C, a, b); };
    MumfordRep id = MumfordRep::identity(C);
    for (const auto& [d, g] : structure_rec(elems, add, id)) {
        ctx->snf_orders.push_back((int64_t)d);
        ctx->snf_gens.push_back(g);
        ctx->snf_divisors.push_back(divisor_of_class(C, g));
    }
    for (size_t i = 0; i + 1 < ctx->snf_orders.size(); ++i)
        if (ctx->snf_orders[i + 1] % ctx->snf_orders[i] != 0)
            throw InternalError("SNF divisibility chain violated");

    // full dlog table; also certifies that the generators present the group
    size_t m = ctx->snf_orders.size();
    std::vector<int64_t> coord(m, 0);
    MumfordRep cur = id;
    for (;;) {
        if (!ctx->table.emplace(cur, coord).second)
            throw InternalError("generator presentation collision");
        // odometer step, updating cur incrementally: a wrapped digit j moves
        // by -(d_j - 1)*gen_j = +gen_j since d_j*gen_j is the identity
        size_t i = 0;
        while (i < m && coord[i] + 1 == ctx->snf_orders[i]) {
            coord[i] = 0;
            cur = jac_add(C, cur, ctx->snf_gens[i]);
            ++i;
        }
        if (i == m) break;
        ++coord[i];
        cur = jac_add(C, cur, ctx->snf_gens[i]);
    }
    if (ctx->table.size() != ctx->order)
        throw InternalError("generators do not present the whole group");
    for (const MumfordRep& e : elems)
        if (!ctx->table.count(e)) throw InternalError("group element missing from presentation");
    return ctx;
}

std::vector<int64_t> PicardContext::dlog(const MumfordRep& a) const {
    validate_mumford(C, a);
    auto it = table.find(a);
    if (it == table.end()) throw InternalError("class not found in dlog table");
    return it->second;
}

std::vector<MumfordRep> PicardContext::elements() const {
    std::vector<MumfordRep> out;
    out.reserve(table.size());
    for (const auto& [e, c] : table) out.push_back(e);
    return out;
}

unsigned PicardContext::two_rank() const {
    unsigned r = 0;
    for (int64_t d : snf_orders)
        if (d % 2 == 0) ++r;
    return r;
}

} // namespace hfs
