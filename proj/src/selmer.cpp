#include "hfs/selmer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "hfs/errors.hpp"

namespace hfs {

namespace {

// Largest t with t^2 dividing a (a nonzero), up to a constant.
Poly square_content_root(const Poly& a) {
    const FieldPtr& F = a.field();
    Poly t = Poly::one(F);
    if (a.degree() < 1) return t;
    for (const auto& [part, mult] : squarefree_decomposition(a.monic()))
        if (mult >= 2) t = t * part.pow((uint64_t)(mult / 2));
    return t;
}

// Product of the primes of odd multiplicity: d divided by it is a square.
Poly odd_multiplicity_part(const Poly& d) {
    const FieldPtr& F = d.field();
    Poly r = Poly::one(F);
    if (d.degree() < 1) return r;
    for (const auto& [part, mult] : squarefree_decomposition(d.monic()))
        if (mult % 2 != 0) r = r * part;
    return r;
}

Poly exact_quot(const Poly& a, const Poly& b) {
    auto [q, r] = a.divmod(b);
    if (!r.is_zero()) throw InternalError("inexact division while reducing a square class");
    return q;
}

} // namespace

FuncElem square_class_reduce(const FuncElem& lam) {
    if (lam.is_null() || lam.is_zero()) throw InputError("cannot reduce the square class of zero");
    const CurvePtr& C = lam.curve();
    const FieldPtr& F = C->F;

    // Multiplying by an exact square clears the even part of the denominator,
    // leaving the (squarefree) product of its odd-multiplicity primes.
    Poly dsf = odd_multiplicity_part(lam.d());

    // Divide the numerator pair by the largest square in its content.
    Poly a = lam.a(), b = lam.b();
    Poly content = b.is_zero() ? a : (a.is_zero() ? b : gcd(a, b));
    Poly t = square_content_root(content);
    if (t.degree() > 0) {
        Poly t2 = t * t;
        if (!a.is_zero()) a = exact_quot(a, t2);
        if (!b.is_zero()) b = exact_quot(b, t2);
    }

    // Scale by a square constant so the coefficient dominant at infinity
    // becomes 1 or the canonical non-square.
    FqElem rho;
    if (b.is_zero()) {
        rho = a.lc();
    } else if (a.is_zero()) {
        rho = b.lc();
    } else {
        int va = -2 * a.degree();
        int vb = -2 * b.degree() - (int)(2 * C->genus + 1);
        rho = va <= vb ? a.lc() : b.lc();
    }
    FqElem target = is_square(rho) ? FqElem::one(F) : C->zeta;
    FqElem c = sqrt(rho / target);
    FqElem s = (c * c).inv();
    return FuncElem::make(C, a * s, b * s, dsf);
}

std::vector<int64_t> pic_coords(const PicardPtr& pic, const Divisor& D) {
    const CurvePtr& C = pic->C;
    int64_t deg = D.degree();
    Divisor d0 = D;
    d0.add(Place::infinite(C), -deg);
    MumfordRep cls = class_of_divisor(C, d0);
    std::vector<int64_t> out;
    out.reserve(1 + pic->snf_orders.size());
    out.push_back(deg);
    for (int64_t c : pic->dlog(cls)) out.push_back(c);
    return out;
}

std::vector<int64_t> pic_coords(const PicardPtr& pic, const Place& p) {
    return pic_coords(pic, Divisor::single(p));
}

F2Vec pic_coords_mod2(const PicardPtr& pic, const Divisor& D) {
    std::vector<int64_t> v = pic_coords(pic, D);
    F2Vec out;
    out.push_back((uint8_t)(((v[0] % 2) + 2) % 2));
    for (size_t i = 0; i < pic->snf_orders.size(); ++i)
        if (pic->snf_orders[i] % 2 == 0) out.push_back((uint8_t)(v[i + 1] % 2));
    return out;
}

F2Vec pic_coords_mod2(const PicardPtr& pic, const Place& p) {
    return pic_coords_mod2(pic, Divisor::single(p));
}

bool compatible_check(const std::vector<Place>& B, const std::vector<FuncElem>& Bs) {
    if (B.empty() || B.size() != Bs.size())
        throw InputError("compatibility check needs equally many places and elements");
    for (size_t i = 0; i < Bs.size(); ++i)
        for (size_t j = 0; j < B.size(); ++j) {
            int want = i == j ? -1 : 1;
            if (legendre(Bs[i], B[j]) != want) return false;
        }
    return true;
}

SingularBasis singular_basis_from_places(const PicardPtr& pic, const std::vector<Place>& B) {
    const CurvePtr& C = pic->C;
    size_t n = (size_t)pic->two_rank() + 1;
    if (B.size() != n)
        throw InputError("expected " + std::to_string(n) +
                         " places for a basis of Pic X / 2 Pic X, got " + std::to_string(B.size()));
    {
        F2Mat rows;
        for (const Place& p : B) rows.push_back(pic_coords_mod2(pic, p));
        if ((size_t)f2_rank(rows) != n)
            throw InputError("the given places are not a basis of Pic X / 2 Pic X");
    }

    // Spanning set: the non-square constant, and for each even invariant
    // factor the reduced generator of L(d_i * D_i) (a singular element since
    // its divisor is -d_i * D_i with d_i even).
    std::vector<FuncElem> alphas;
    alphas.push_back(FuncElem::constant(C, C->zeta));
    for (size_t i = 0; i < pic->snf_orders.size(); ++i) {
        if (pic->snf_orders[i] % 2 != 0) continue;
        Divisor E = pic->snf_divisors[i] * pic->snf_orders[i];
        alphas.push_back(square_class_reduce(rr_generator_of_principal(C, E)));
    }
    if (alphas.size() != n) throw InternalError("spanning-set size does not match the 2-rank");

    F2Mat eps(n, F2Vec(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            int l = legendre(alphas[i], B[j]);
            if (l == 0) throw InternalError("spanning element has odd valuation at a basis place");
            eps[i][j] = l < 0 ? 1 : 0;
        }
    F2Mat inv = f2_inverse(eps); // singular symbol matrix -> InternalError

    std::vector<FuncElem> betas;
    for (size_t i = 0; i < n; ++i) {
        FuncElem prod = FuncElem::one(C);
        for (size_t j = 0; j < n; ++j)
            if (inv[i][j]) prod = prod * alphas[j];
        betas.push_back(square_class_reduce(prod));
    }

    SingularBasis sb{pic, B, betas};
    if (!compatible_check(sb.places, sb.elements))
        throw InternalError("constructed basis failed the compatibility check");
    return sb;
}

SingularBasis singular_group(const PicardPtr& pic) {
    const CurvePtr& C = pic->C;
    size_t n = (size_t)pic->two_rank() + 1;

    // Candidate pool: the infinite place and the supports of the SNF
    // generator divisors; their classes generate Pic X, so they span the
    // quotient modulo squares.
    std::vector<Place> pool;
    pool.push_back(Place::infinite(C));
    for (const Divisor& D : pic->snf_divisors)
        for (const auto& [p, c] : D.terms()) pool.push_back(p);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    std::vector<Place> B;
    F2Mat chosen;
    auto try_add = [&](const Place& p) {
        if (B.size() >= n) return;
        F2Vec v = pic_coords_mod2(pic, p);
        if (f2_in_span(chosen, v)) return;
        chosen.push_back(v);
        B.push_back(p);
    };
    for (const Place& p : pool) try_add(p);

    if (B.size() < n) {
        // Safety net: widen the pool over places of growing degree.
        for (unsigned dmax = 1; dmax <= C->genus + 4 && B.size() < n; ++dmax)
            for (const Place& p : enumerate_places(C, dmax)) try_add(p);
        if (B.size() < n) throw CapError("could not complete a basis of Pic X / 2 Pic X from places");
    }
    return singular_basis_from_places(pic, B);
}

F2Vec coords_singular(const FuncElem& lam, const SingularBasis& sb) {
    if (lam.is_null() || lam.is_zero()) throw InputError("zero has no square-class coordinates");
    F2Vec out;
    for (const Place& b : sb.places) {
        int l = legendre(lam, b);
        if (l == 0)
            throw InputError("element is not singular: odd valuation at " + b.to_string());
        out.push_back(l < 0 ? 1 : 0);
    }
    return out;
}

F2Vec place_coords(const Place& p, const SingularBasis& sb) {
    F2Vec out;
    for (const FuncElem& beta : sb.elements) {
        int l = legendre(beta, p);
        if (l == 0) throw InternalError("basis element has odd valuation at a place");
        out.push_back(l < 0 ? 1 : 0);
    }
    return out;
}

std::vector<Place> find_generating_places(const PicardPtr& pic, const std::vector<Place>& S) {
    const CurvePtr& C = pic->C;
    size_t dim = 1 + pic->snf_orders.size();

    // Work in the coordinate lattice of Pic X = Z (+) sum Z/d_i: the chosen
    // classes generate the group exactly when their coordinate rows together
    // with the order relations span all of Z^dim.
    ZMat rows;
    for (size_t i = 0; i + 1 < dim; ++i) {
        ZVec r(dim, 0);
        r[1 + i] = pic->snf_orders[i];
        rows.push_back(r);
    }
    ZMat hnf = z_hnf_rows(rows);
    auto full = [&]() {
        if (hnf.size() != dim) return false;
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j)
                if (hnf[i][j] != (i == j ? 1 : 0)) return false;
        return true;
    };
    auto in_s = [&](const Place& p) { return std::find(S.begin(), S.end(), p) != S.end(); };

    std::vector<Place> out;
    for (unsigned dmax = C->genus + 2; dmax <= C->genus + 6 && !full(); ++dmax) {
        for (const Place& p : enumerate_places(C, dmax)) {
            if (full()) break;
            if (in_s(p)) continue;
            if (std::find(out.begin(), out.end(), p) != out.end()) continue;
            ZMat trial = rows;
            trial.push_back(pic_coords(pic, p));
            ZMat h2 = z_hnf_rows(trial);
            if (h2 != hnf) {
                rows = std::move(trial);
                hnf = std::move(h2);
                out.push_back(p);
            }
        }
    }
    if (!full()) throw CapError("could not find places generating Pic X away from S");
    return out;
}

FuncElem lambda_for_place(const Place& p, const std::vector<Place>& T, const SingularBasis& sb,
                          const std::vector<Place>& Bfull) {
    const PicardPtr& pic = sb.pic;
    const CurvePtr& C = pic->C;

    for (const Place& b : Bfull) {
        if (b == p) throw InputError("place " + p.to_string() + " collides with the generating places");
        for (const Place& t : T)
            if (b == t) throw InputError("place " + t.to_string() + " collides with the generating places");
    }
    for (const Place& t : T)
        if (t == p) throw InputError("the target place must not lie in T");
    {
        F2Vec want = place_coords(p, sb);
        F2Vec acc(want.size(), 0);
        for (const Place& t : T) {
            F2Vec u = place_coords(t, sb);
            for (size_t i = 0; i < acc.size(); ++i) acc[i] ^= u[i];
        }
        if (acc != want)
            throw InputError("[" + p.to_string() + "] is not the sum of the classes over T modulo 2 Pic X");
    }

    // Relations v0*[p] + sum v_t*[t] + sum w_b*2[b] = 0 in Pic X.
    ZVec orders;
    orders.push_back(0);
    for (int64_t d : pic->snf_orders) orders.push_back(d);
    ZMat vecs;
    vecs.push_back(pic_coords(pic, p));
    for (const Place& t : T) vecs.push_back(pic_coords(pic, t));
    for (const Place& b : Bfull) {
        ZVec v = pic_coords(pic, b);
        for (int64_t& x : v) x *= 2;
        vecs.push_back(v);
    }
    ZMat ker = group_kernel(vecs, orders);

    ZVec v0;
    for (const ZVec& r : ker)
        if (r[0] % 2 != 0) {
            v0 = r;
            break;
        }
    if (v0.empty()) {
        for (size_t i = 0; i < ker.size() && v0.empty(); ++i)
            for (size_t j = i + 1; j < ker.size() && v0.empty(); ++j) {
                ZVec s(ker[i].size());
                for (size_t t = 0; t < s.size(); ++t) s[t] = ker[i][t] + ker[j][t];
                if (s[0] % 2 != 0) v0 = s;
            }
    }
    if (v0.empty()) throw InternalError("no relation with odd coefficient at the target place");

    // Shrink the relation by even multiples of kernel vectors; this keeps
    // every coefficient parity, so the resulting element stays valid.
    auto norm2 = [](const ZVec& v) {
        long double s = 0;
        for (int64_t x : v) s += (long double)x * (long double)x;
        return s;
    };
    for (int pass = 0; pass < 4; ++pass)
        for (const ZVec& u : ker) {
            long double uu = 0, vu = 0;
            for (size_t i = 0; i < u.size(); ++i) {
                uu += (long double)u[i] * (long double)u[i];
                vu += (long double)v0[i] * (long double)u[i];
            }
            if (uu <= 0) continue;
            int64_t t = 2 * (int64_t)llroundl(vu / (2 * uu));
            if (t == 0) continue;
            ZVec cand = v0;
            for (size_t i = 0; i < cand.size(); ++i) cand[i] -= t * u[i];
            if (norm2(cand) < norm2(v0)) v0 = std::move(cand);
        }

    Divisor E;
    size_t idx = 0;
    E.add(p, v0[idx++]);
    for (const Place& t : T) E.add(t, v0[idx++]);
    for (const Place& b : Bfull) E.add(b, 2 * v0[idx++]);
    if (E.degree() != 0) throw InternalError("place relation has nonzero degree");

    FuncElem lam = rr_generator_of_principal(C, E);

    // Multiply in basis elements to clear the symbols at the basis places.
    FuncElem out = lam;
    for (size_t i = 0; i < sb.places.size(); ++i) {
        int l = legendre(lam, sb.places[i]);
        if (l == 0) throw InternalError("relation element has odd valuation at a basis place");
        if (l < 0) out = out * sb.elements[i];
    }
    return square_class_reduce(out);
}

SSingularBasis s_singular_basis(const PicardPtr& pic, const std::vector<Place>& S_in) {
    std::vector<Place> S = S_in;
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());

    std::vector<Place> Bfull = find_generating_places(pic, S);

    F2Mat vecs;
    for (const Place& b : Bfull) vecs.push_back(pic_coords_mod2(pic, b));
    std::vector<size_t> kept = f2_max_independent(vecs);
    size_t n = (size_t)pic->two_rank() + 1;
    if (kept.size() != n) throw InternalError("generating places do not span Pic X / 2 Pic X");
    std::vector<Place> B;
    for (size_t i : kept) B.push_back(Bfull[i]);

    SingularBasis sb = singular_basis_from_places(pic, B);

    // Greedy maximal subset of S independent modulo 2 Pic X, in sorted order.
    std::vector<F2Vec> coords_s;
    for (const Place& p : S) coords_s.push_back(place_coords(p, sb));
    F2Mat sp_vecs;
    std::vector<Place> sp;
    std::vector<uint8_t> in_sp(S.size(), 0);
    for (size_t i = 0; i < S.size(); ++i)
        if (!f2_in_span(sp_vecs, coords_s[i])) {
            sp_vecs.push_back(coords_s[i]);
            sp.push_back(S[i]);
            in_sp[i] = 1;
        }

    SSingularBasis out{std::move(sb), S, sp, {}};
    for (size_t i = 0; i < S.size(); ++i) {
        if (in_sp[i]) continue;
        // Express [p] over the independent subset and build lambda_p.
        size_t rows = coords_s[i].size();
        F2Mat A(rows, F2Vec(sp_vecs.size(), 0));
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < sp_vecs.size(); ++c) A[r][c] = sp_vecs[c][r];
        std::optional<F2Vec> sol = f2_solve(A, coords_s[i]);
        if (!sol) throw InternalError("dependent place does not decompose over the independent subset");
        std::vector<Place> T;
        for (size_t c = 0; c < sol->size(); ++c)
            if ((*sol)[c]) T.push_back(sp[c]);
        out.lambdas.emplace_back(S[i], lambda_for_place(S[i], T, out.base, Bfull));
    }
    return out;
}

std::pair<F2Vec, F2Vec> coords_s_singular(const FuncElem& mu, const SSingularBasis& ssb) {
    if (mu.is_null() || mu.is_zero()) throw InputError("zero has no square-class coordinates");
    F2Vec e;
    for (const auto& [p, lam] : ssb.lambdas)
        e.push_back((uint8_t)(std::abs(valuation(mu, p)) % 2));
    F2Vec eps;
    for (const Place& b : ssb.base.places) {
        int l = legendre(mu, b);
        if (l == 0)
            throw InputError("element is not S-singular: odd valuation at " + b.to_string());
        eps.push_back(l < 0 ? 1 : 0);
    }
    return {eps, e};
}

FuncElem random_singular(const CurvePtr& C, Rng& rng) {
    const FieldPtr& F = C->F;
    unsigned g = C->genus;

    // Degree uniform in {1, ..., g+2}, then a uniform branch of residue degree
    // equal to the prime degree (inert decompositions are resampled: an inert
    // place can only pair with another inert place of the same degree, and any
    // such pair differs by a principal divisor, which skews the draws toward
    // constant outputs).
    auto draw_place = [&]() {
        for (int tries = 0; tries < 4096; ++tries) {
            unsigned d = 1 + (unsigned)rng.below(g + 2);
            Poly P = random_irreducible(F, d, rng);
            std::vector<Place> same;
            for (const Place& t : place_decompose(C, P))
                if (t.degree() == d) same.push_back(t);
            if (!same.empty()) return same[(size_t)rng.below(same.size())];
        }
        throw CapError("could not sample a place of the drawn degree");
    };

    Place p, q;
    for (int tries = 0;; ++tries) {
        if (tries > 4096) throw CapError("could not sample two distinct places of equal degree");
        p = draw_place();
        q = draw_place();
        if (p.degree() == q.degree() && p != q) break;
    }

    Divisor D = Divisor::single(p) - Divisor::single(q);
    MumfordRep c = class_of_divisor(C, D);
    double bound = std::pow(std::sqrt((double)F->order()) + 1.0, 2.0 * g);
    uint64_t cap = (uint64_t)std::ceil(bound) + 2;
    uint64_t k = 1;
    MumfordRep acc = c;
    while (!acc.is_identity()) {
        acc = jac_add(C, acc, c);
        if (++k > cap) throw InternalError("class order exceeded the Weil bound");
    }

    if (k % 2 == 1) return rng.coin() ? FuncElem::constant(C, C->zeta) : FuncElem::one(C);

    Divisor dk;
    dk.add(p, (int64_t)k);
    dk.add(q, -(int64_t)k);
    return rr_generator_of_principal(C, dk);
}

ConstantFraction constant_fraction_estimate(const CurvePtr& C, uint64_t N, const Rng& rng) {
    ConstantFraction out;
    out.samples = N;
    for (uint64_t i = 0; i < N; ++i) {
        Rng sub = rng.split(i);
        if (random_singular(C, sub).is_constant()) ++out.constants;
    }
    return out;
}

} // namespace hfs
