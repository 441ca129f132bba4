#include "hfs/rroch.hpp"

#include <algorithm>
#include <map>

namespace hfs {

namespace {

using FqMat = std::vector<std::vector<FqElem>>;

// reduced row echelon form in place; returns pivot column indices
std::vector<size_t> fq_rref(FqMat& rows) {
    if (rows.empty()) return {};
    size_t n = rows[0].size();
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows.size(); ++c) {
        size_t sel = r;
        while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        FqElem inv = rows[r][c].inv();
        for (size_t j = c; j < n; ++j) rows[r][j] = rows[r][j] * inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            FqElem factor = rows[i][c];
            for (size_t j = c; j < n; ++j) rows[i][j] = rows[i][j] - factor * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// basis of { x : A x = 0 }, one vector per free column
FqMat fq_kernel(FqMat a, size_t ncols, const FieldPtr& F) {
    std::vector<size_t> pivots = fq_rref(a);
    std::vector<uint8_t> is_pivot(ncols, 0);
    for (size_t c : pivots) is_pivot[c] = 1;
    FqMat kernel;
    for (size_t fc = 0; fc < ncols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<FqElem> v(ncols, FqElem::zero(F));
        v[fc] = FqElem::one(F);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][fc];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

int64_t ceil_div_pos(int64_t n, int64_t e) {
    return (n + e - 1) / e; // n >= 0
}

} // namespace

RRBasis rr_space(const CurvePtr& C, const Divisor& D) {
    if (!C) throw InputError("missing curve");
    const FieldPtr& F = C->F;
    RRBasis out;
    out.divisor = D;

    // denominator d = prod P^{m_P}, m_P = max over places p | P of ceil(D(p)/e_p)
    std::map<Poly, int64_t, bool (*)(const Poly&, const Poly&)> denom_mult(
        [](const Poly& x, const Poly& y) { return Poly::cmp(x, y) < 0; });
    int64_t n_inf = 0;
    for (const auto& [p, c] : D.terms()) {
        if (p.kind() == PlaceKind::Infinite) {
            n_inf = c;
            continue;
        }
        int64_t need = c > 0 ? ceil_div_pos(c, p.ram_index()) : 0;
        auto [it, fresh] = denom_mult.emplace(p.prime(), need);
        if (!fresh) it->second = std::max(it->second, need);
    }
    Poly d = Poly::one(F);
    for (const auto& [P, m] : denom_mult) d = d * P.pow((uint64_t)m);

    int64_t amax = (n_inf + 2 * d.degree()) / 2;
    if (n_inf + 2 * d.degree() < 0) amax = -1; // truncation of negatives rounds the wrong way
    int64_t bmax_num = n_inf + 2 * d.degree() - (int64_t)(2 * C->genus + 1);
    int64_t bmax = bmax_num >= 0 ? bmax_num / 2 : -1;
    size_t na = amax >= 0 ? (size_t)(amax + 1) : 0;
    size_t nb = bmax >= 0 ? (size_t)(bmax + 1) : 0;
    size_t ncols = na + nb;
    if (ncols == 0) {
        out.dim = 0;
        return out;
    }
    // column order interleaves by x-degree, a-part before b-part
    auto col_a = [&](size_t i) { return i + std::min(i, nb); };
    auto col_b = [&](size_t i) { return i + std::min(i + 1, na); };

    FqMat rows;
    auto add_vanishing_rows = [&](const Poly& modulus, bool for_a, const Poly& mul) {
        // rows expressing (mul * part) mod modulus = 0, one row per residue coeff
        size_t count = for_a ? na : nb;
        size_t nres = (size_t)modulus.degree();
        size_t base = rows.size();
        for (size_t r = 0; r < nres; ++r) rows.emplace_back(ncols, FqElem::zero(F));
        Poly xi = mul % modulus;
        for (size_t i = 0; i < count; ++i) {
            for (size_t r = 0; r < nres; ++r)
                rows[base + r][for_a ? col_a(i) : col_b(i)] = xi.coeff(r);
            xi = (xi * Poly::x(F)) % modulus;
        }
    };

    for (const auto& [P, mP] : denom_mult) {
        for (const Place& p : place_decompose(C, P)) {
            int64_t k = (int64_t)p.ram_index() * mP - D.coeff(p);
            if (k <= 0) continue;
            switch (p.kind()) {
            case PlaceKind::Ramified: {
                // min(2 ord a, 2 ord b + 1) >= k: ord a >= ceil(k/2), ord b >= ceil((k-1)/2)
                int64_t ka = ceil_div_pos(k, 2);
                int64_t kb = k / 2;
                if (ka > 0 && na > 0) add_vanishing_rows(P.pow((uint64_t)ka), true, Poly::one(F));
                if (kb > 0 && nb > 0) add_vanishing_rows(P.pow((uint64_t)kb), false, Poly::one(F));
                break;
            }
            case PlaceKind::Inert: {
                if (na > 0) add_vanishing_rows(P.pow((uint64_t)k), true, Poly::one(F));
                if (nb > 0) add_vanishing_rows(P.pow((uint64_t)k), false, Poly::one(F));
                break;
            }
            case PlaceKind::Split: {
                Poly Pk = P.pow((uint64_t)k);
                Poly S = hensel_sqrt(C->f, P, p.branch(), (unsigned)k);
                // (a + b*S) mod P^k = 0: one block of rows shared by a and b
                size_t nres = (size_t)Pk.degree();
                size_t base = rows.size();
                for (size_t r = 0; r < nres; ++r) rows.emplace_back(ncols, FqElem::zero(F));
                Poly xi = Poly::one(F) % Pk;
                for (size_t i = 0; i < na; ++i) {
                    for (size_t r = 0; r < nres; ++r) rows[base + r][col_a(i)] = xi.coeff(r);
                    xi = (xi * Poly::x(F)) % Pk;
                }
                Poly si = S % Pk;
                for (size_t i = 0; i < nb; ++i) {
                    for (size_t r = 0; r < nres; ++r) rows[base + r][col_b(i)] = si.coeff(r);
                    si = (si * Poly::x(F)) % Pk;
                }
                break;
            }
            default: throw InternalError("infinite place in finite constraint loop");
            }
        }
    }

    FqMat kernel = fq_kernel(std::move(rows), ncols, F);
    fq_rref(kernel); // canonical basis under the fixed column order
    out.dim = (unsigned)kernel.size();
    for (const auto& v : kernel) {
        std::vector<FqElem> ac(na, FqElem::zero(F)), bc(nb, FqElem::zero(F));
        for (size_t i = 0; i < na; ++i) ac[i] = v[col_a(i)];
        for (size_t i = 0; i < nb; ++i) bc[i] = v[col_b(i)];
        out.basis.push_back(FuncElem::make(C, Poly::from_coeffs(F, std::move(ac)),
                                           Poly::from_coeffs(F, std::move(bc)), d));
    }
    return out;
}

FuncElem rr_generator_of_principal(const CurvePtr& C, const Divisor& D) {
    if (D.degree() != 0) throw InputError("divisor must have degree 0");
    RRBasis L = rr_space(C, D);
    if (L.dim == 0) throw InputError("divisor class is not principal");
    if (L.dim != 1) throw InternalError("degree-0 divisor with dim L > 1");
    return L.basis[0];
}

} // namespace hfs
