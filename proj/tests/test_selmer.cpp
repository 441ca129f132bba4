#include <doctest.h>

#include <algorithm>

#include "hfs/errors.hpp"
#include "hfs/oracle.hpp"
#include "hfs/selmer.hpp"
#include "test_support.hpp"

using namespace hfs;
using namespace hfstest;

namespace {

bool all_valuations_even(const FuncElem& lam) {
    Divisor dv = principal_divisor(lam);
    for (const auto& [p, c] : dv.terms()) {
        (void)p;
        if (c % 2 != 0) return false;
    }
    return true;
}

// odd valuations only inside the allowed set
bool odd_support_within(const FuncElem& lam, const std::vector<Place>& allowed) {
    Divisor dv = principal_divisor(lam);
    for (const auto& [p, c] : dv.terms())
        if (c % 2 != 0 && std::find(allowed.begin(), allowed.end(), p) == allowed.end())
            return false;
    return true;
}

} // namespace

TEST_SUITE("selmer") {

TEST_CASE("pic coordinates split off the degree") {
    PicardPtr pic = pic_e1();
    const CurvePtr& C = pic->C;
    auto ci = pic_coords(pic, Place::infinite(C));
    CHECK(ci == std::vector<int64_t>{1, 0, 0});
    CHECK(pic_coords(pic, DV(C, "2*ram(x) - 2*inf")) == std::vector<int64_t>{0, 0, 0});
    // recombination: D - deg(D) inf ~ sum of c_i gen_i
    Rng rng(606);
    auto ps = enumerate_places(C, 2);
    for (int t = 0; t < 12; ++t) {
        Divisor D;
        for (int i = 0; i < 3; ++i)
            D.add(ps[rng.below(ps.size())], (int64_t)rng.below(7) - 3);
        auto c = pic_coords(pic, D);
        REQUIRE(c.size() == 3);
        CHECK(c[0] == D.degree());
        Divisor D0 = D;
        D0.add(Place::infinite(C), -D.degree());
        MumfordRep acc = MumfordRep::identity(C);
        for (size_t i = 0; i < pic->snf_gens.size(); ++i)
            acc = jac_add(C, acc, jac_mul_int(C, pic->snf_gens[i], c[1 + i]));
        CHECK(class_of_divisor(C, D0) == acc);
        // mod-2 coordinates are the mod-2 reduction (all orders here are even)
        F2Vec m = pic_coords_mod2(pic, D);
        REQUIRE(m.size() == 3);
        for (size_t i = 0; i < 3; ++i) CHECK(m[i] == (uint8_t)(((c[i] % 2) + 2) % 2));
    }
    // principal divisors vanish mod 2
    for (int t = 0; t < 6; ++t) {
        FuncElem lam = random_elem(C, rng);
        F2Vec m = pic_coords_mod2(pic, principal_divisor(lam));
        CHECK(std::all_of(m.begin(), m.end(), [](uint8_t b) { return b == 0; }));
    }
}

TEST_CASE("square class reduction") {
    const CurvePtr& C = e1();
    CHECK(square_class_reduce(E(C, "x^2*(x + 4)")) == E(C, "x + 4"));
    CHECK(square_class_reduce(E(C, "4")) == E(C, "1"));
    CHECK(square_class_reduce(E(C, "3")) == E(C, "2"));
    CHECK(square_class_reduce(E(C, "4*x^2*y")) == E(C, "y"));
    CHECK(square_class_reduce(E(C, "y/x^2")) == E(C, "y"));
    CHECK(square_class_reduce(E(C, "x/(x + 1)")) == E(C, "x/(x + 1)"));
    CHECK_THROWS_AS((void)square_class_reduce(E(C, "0")), InputError);
    Rng rng(777);
    for (int t = 0; t < 10; ++t) {
        FuncElem z = random_elem(C, rng);
        FuncElem r = square_class_reduce(z);
        CHECK(square_class_reduce(r) == r);       // idempotent
        CHECK(is_square_in_K(z / r));             // same square class
        FuncElem s = random_elem(C, rng);
        FuncElem r2 = square_class_reduce(z * s * s);
        CHECK(square_class_reduce(r2) == r2);     // idempotent on the shifted input
        CHECK(is_square_in_K(r2 / r));            // reduction stays in the square class
    }
}

TEST_CASE("singular group of the genus-0 curve") {
    SingularBasis sb = singular_group(pic_g0());
    REQUIRE(sb.places.size() == 1);
    REQUIRE(sb.elements.size() == 1);
    CHECK(sb.places[0] == Place::infinite(g0()));
    CHECK(sb.elements[0] == E(g0(), "2"));
    CHECK(compatible_check(sb.places, sb.elements));
    std::vector<FuncElem> ones = {E(g0(), "1")};
    CHECK_FALSE(compatible_check(sb.places, ones));
    CHECK_THROWS_AS((void)compatible_check(sb.places, std::vector<FuncElem>{}), InputError);
}

TEST_CASE("compatible basis of the singular group on E1") {
    SingularBasis sb = singular_group(pic_e1());
    const CurvePtr& C = e1();
    REQUIRE(sb.places.size() == 3); // 2-rank 2, plus one
    REQUIRE(sb.elements.size() == 3);
    CHECK(compatible_check(sb.places, sb.elements));
    for (const FuncElem& b : sb.elements) {
        CHECK(all_valuations_even(b));
        CHECK(square_class_reduce(b) == b);
    }
    CHECK(independent_mod_squares(sb.elements));

    // the explicit singular elements 2, x, x+4 lie in the span
    for (const char* txt : {"2", "x", "x + 4", "2*x*(x + 4)"}) {
        FuncElem gamma = E(C, txt);
        REQUIRE(all_valuations_even(gamma));
        F2Vec eps = coords_singular(gamma, sb);
        FuncElem prod = FuncElem::one(C);
        for (size_t i = 0; i < eps.size(); ++i)
            if (eps[i]) prod = prod * sb.elements[i];
        CHECK(is_square_in_K(gamma / prod));
    }

    // coordinate identities
    F2Vec zero(3, 0);
    CHECK(coords_singular(E(C, "1"), sb) == zero);
    CHECK(coords_singular(E(C, "4*x^2"), sb) == zero);
    for (size_t i = 0; i < 3; ++i) {
        F2Vec ei(3, 0);
        ei[i] = 1;
        CHECK(coords_singular(sb.elements[i], sb) == ei);
        CHECK(place_coords(sb.places[i], sb) == ei);
    }
    FuncElem prod02 = sb.elements[0] * sb.elements[2] * E(C, "x^2");
    F2Vec e02(3, 0);
    e02[0] = e02[2] = 1;
    CHECK(coords_singular(prod02, sb) == e02);
    CHECK_THROWS_AS((void)coords_singular(E(C, "y"), sb), InputError); // not singular
}

TEST_CASE("custom bases of Pic X / 2 Pic X") {
    PicardPtr pic = pic_e1();
    const CurvePtr& C = e1();
    CHECK_THROWS_AS(
        (void)singular_basis_from_places(pic, std::vector<Place>{Place::infinite(C)}),
        InputError); // wrong count
    // two ramified places in the same class mod 2 Pic X give a dependent family
    std::vector<Place> rams = {PL(C, "ram(x)"), PL(C, "ram(x + 1)"), PL(C, "ram(x + 4)")};
    std::vector<Place> dep;
    for (size_t i = 0; i < rams.size() && dep.empty(); ++i)
        for (size_t j = i + 1; j < rams.size() && dep.empty(); ++j)
            if (pic_coords_mod2(pic, rams[i]) == pic_coords_mod2(pic, rams[j]))
                dep = {Place::infinite(C), rams[i], rams[j]};
    REQUIRE_FALSE(dep.empty());
    CHECK_THROWS_AS((void)singular_basis_from_places(pic, dep), InputError);

    // an independent triple of small places produces another compatible basis
    auto ps = enumerate_places(C, 2);
    F2Mat rows;
    for (const Place& p : ps) rows.push_back(pic_coords_mod2(pic, p));
    auto keep = f2_max_independent(rows);
    REQUIRE(keep.size() == 3);
    std::vector<Place> B;
    for (size_t k : keep) B.push_back(ps[k]);
    SingularBasis alt = singular_basis_from_places(pic, B);
    CHECK(compatible_check(alt.places, alt.elements));
    CHECK(independent_mod_squares(alt.elements));
    for (const FuncElem& b : alt.elements) CHECK(all_valuations_even(b));
}

TEST_CASE("place coordinates factor through Pic X / 2 Pic X") {
    PicardPtr pic = pic_e1();
    SingularBasis sb = singular_group(pic);
    auto ps = enumerate_places(e1(), 2);
    for (const Place& p : ps)
        for (const Place& q : ps) {
            bool same_class = pic_coords_mod2(pic, p) == pic_coords_mod2(pic, q);
            CHECK(same_class == (place_coords(p, sb) == place_coords(q, sb)));
        }

    SingularBasis s0 = singular_group(pic_g0());
    for (const Place& p : enumerate_places(g0(), 2)) {
        F2Vec v = place_coords(p, s0);
        REQUIRE(v.size() == 1);
        CHECK(v[0] == (uint8_t)(p.degree() % 2));
    }
}

TEST_CASE("generating places avoid S and are certified") {
    PicardPtr pic = pic_e1();
    std::vector<Place> S = {PL(e1(), "ram(x)"), Place::infinite(e1())};
    std::vector<Place> Bfull = find_generating_places(pic, S);
    REQUIRE_FALSE(Bfull.empty());
    for (const Place& b : Bfull)
        CHECK(std::find(S.begin(), S.end(), b) == S.end());
    // the classes generate Pic X: the coordinate lattice together with the
    // order relations spans the full integer lattice
    std::vector<std::vector<int64_t>> rows;
    for (const Place& b : Bfull) rows.push_back(pic_coords(pic, b));
    for (size_t i = 0; i < pic->snf_orders.size(); ++i) {
        std::vector<int64_t> r(1 + pic->snf_orders.size(), 0);
        r[1 + i] = pic->snf_orders[i];
        rows.push_back(r);
    }
    auto h = z_hnf_rows(rows);
    REQUIRE(h.size() == 1 + pic->snf_orders.size());
    for (size_t i = 0; i < h.size(); ++i)
        for (size_t j = 0; j < h[i].size(); ++j)
            CHECK(h[i][j] == (i == j ? 1 : 0));
}

TEST_CASE("lambda for a place") {
    PicardPtr pic = pic_e1();
    const CurvePtr& C = e1();
    Place p = PL(C, "ram(x)");
    // keep p and inf out of the generating set so they stay available for T
    std::vector<Place> avoid = {p, Place::infinite(C)};
    std::vector<Place> Bfull = find_generating_places(pic, avoid);
    F2Mat rows;
    for (const Place& b : Bfull) rows.push_back(pic_coords_mod2(pic, b));
    auto keep = f2_max_independent(rows);
    std::vector<Place> B;
    for (size_t k : keep) B.push_back(Bfull[k]);
    SingularBasis sb = singular_basis_from_places(pic, B);

    std::vector<Place> collide = {p};
    CHECK_THROWS_AS((void)lambda_for_place(p, collide, sb, Bfull), InputError);
    std::vector<Place> empty;
    CHECK_THROWS_AS((void)lambda_for_place(p, empty, sb, Bfull), InputError); // wrong class

    // choose t with [p] = [inf] + [t] in Pic X / 2 Pic X
    F2Vec want = pic_coords_mod2(pic, p);
    F2Vec winf = pic_coords_mod2(pic, Place::infinite(C));
    for (size_t i = 0; i < want.size(); ++i) want[i] ^= winf[i];
    Place t;
    for (const Place& cand : enumerate_places(C, 4)) {
        if (cand == p || cand == Place::infinite(C)) continue;
        if (std::find(Bfull.begin(), Bfull.end(), cand) != Bfull.end()) continue;
        if (pic_coords_mod2(pic, cand) == want) {
            t = cand;
            break;
        }
    }
    REQUIRE_FALSE(t.is_null());
    std::vector<Place> T = {Place::infinite(C), t};
    FuncElem lam = lambda_for_place(p, T, sb, Bfull);
    CHECK(valuation(lam, p) % 2 != 0);
    std::vector<Place> allowed = T;
    allowed.push_back(p);
    CHECK(odd_support_within(lam, allowed));
    for (const Place& b : sb.places) CHECK(legendre(lam, b) == 1);
    CHECK(square_class_reduce(lam) == lam);
}

TEST_CASE("s-singular basis for S = {inf}") {
    PicardPtr pic = pic_e1();
    std::vector<Place> S = {Place::infinite(e1())};
    SSingularBasis ssb = s_singular_basis(pic, S);
    CHECK(ssb.S == S);
    CHECK(ssb.s_prime == S); // the class of inf is nonzero mod 2 Pic X
    CHECK(ssb.lambdas.empty());
    CHECK(ssb.base.places.size() == 3);
    CHECK(compatible_check(ssb.base.places, ssb.base.elements));
    for (const Place& b : ssb.base.places) CHECK(b != Place::infinite(e1()));
}

TEST_CASE("s-singular basis at the full 2-torsion support of E1") {
    PicardPtr pic = pic_e1();
    const CurvePtr& C = e1();
    std::vector<Place> S = {PL(C, "ram(x)"), PL(C, "ram(x + 1)"), PL(C, "ram(x + 4)"),
                            Place::infinite(C)};
    SSingularBasis ssb = s_singular_basis(pic, S);
    CHECK(ssb.S.size() == 4);
    CHECK(ssb.s_prime.size() == 2); // the 2-torsion classes span rank 2 with inf
    REQUIRE(ssb.lambdas.size() == 2);
    for (const Place& sp : ssb.s_prime)
        CHECK(std::find(S.begin(), S.end(), sp) != S.end());

    std::vector<FuncElem> full = ssb.base.elements;
    for (const auto& [p, lam] : ssb.lambdas) {
        CHECK(std::find(S.begin(), S.end(), p) != S.end());
        CHECK(std::find(ssb.s_prime.begin(), ssb.s_prime.end(), p) == ssb.s_prime.end());
        CHECK(valuation(lam, p) % 2 != 0);
        std::vector<Place> allowed = ssb.s_prime;
        allowed.push_back(p);
        CHECK(odd_support_within(lam, allowed));
        for (const Place& b : ssb.base.places) CHECK(legendre(lam, b) == 1);
        full.push_back(lam);
    }
    CHECK(full.size() == 3 + 2); // rank of the singular group plus |S \ S'|
    CHECK(independent_mod_squares(full));

    // round-trip: random coordinates -> product -> coordinates
    Rng rng(1618);
    for (int t = 0; t < 15; ++t) {
        F2Vec eps, e;
        FuncElem mu = FuncElem::one(C);
        for (const FuncElem& b : ssb.base.elements) {
            eps.push_back((uint8_t)rng.below(2));
            if (eps.back()) mu = mu * b;
        }
        for (const auto& [p, lam] : ssb.lambdas) {
            (void)p;
            e.push_back((uint8_t)rng.below(2));
            if (e.back()) mu = mu * lam;
        }
        FuncElem sq = random_elem(C, rng);
        mu = mu * sq * sq;
        auto [got_eps, got_e] = coords_s_singular(mu, ssb);
        CHECK(got_eps == eps);
        CHECK(got_e == e);
    }

    // y is S-singular here: its odd valuations all sit inside S
    FuncElem y = E(C, "y");
    auto [yeps, ye] = coords_s_singular(y, ssb);
    FuncElem recon = FuncElem::one(C);
    for (size_t i = 0; i < yeps.size(); ++i)
        if (yeps[i]) recon = recon * ssb.base.elements[i];
    for (size_t i = 0; i < ye.size(); ++i)
        if (ye[i]) recon = recon * ssb.lambdas[i].second;
    CHECK(is_square_in_K(y / recon));
}

TEST_CASE("coords reject elements with odd valuation at a basis place") {
    PicardPtr pic = pic_e1();
    const CurvePtr& C = e1();
    std::vector<Place> S = {PL(C, "split(x + 3, +)")};
    SSingularBasis ssb = s_singular_basis(pic, S);
    // y has odd valuation at infinity, which is a base place outside S
    bool inf_in_base = std::find(ssb.base.places.begin(), ssb.base.places.end(),
                                 Place::infinite(C)) != ssb.base.places.end();
    CHECK(inf_in_base);
    CHECK_THROWS_AS((void)coords_s_singular(E(C, "y"), ssb), InputError);
    SingularBasis sb = singular_group(pic);
    CHECK_THROWS_AS((void)coords_singular(E(C, "y"), sb), InputError);
}

TEST_CASE("random singular draws") {
    Rng a(123), b(123);
    for (int t = 0; t < 50; ++t) {
        FuncElem s = random_singular(g0(), a);
        CHECK(s == random_singular(g0(), b)); // deterministic
        CHECK(s.is_constant());
        CHECK((s == E(g0(), "1") || s == E(g0(), "2")));
    }
    Rng c(321);
    for (int t = 0; t < 30; ++t) {
        FuncElem s = random_singular(e1(), c);
        CHECK(all_valuations_even(s));
        CHECK(is_square_in_K(square_class_reduce(s) / s));
    }
}

TEST_CASE("constant fraction estimates are order independent") {
    ConstantFraction cf = constant_fraction_estimate(e1(), 40, Rng(9));
    CHECK(cf.samples == 40);
    uint64_t manual = 0;
    Rng master(9);
    for (uint64_t i = 0; i < 40; ++i) {
        Rng sub = master.split(i);
        if (random_singular(e1(), sub).is_constant()) ++manual;
    }
    CHECK(cf.constants == manual);
    ConstantFraction c0 = constant_fraction_estimate(g0(), 25, Rng(4));
    CHECK(c0.constants == 25);
}

} // TEST_SUITE
