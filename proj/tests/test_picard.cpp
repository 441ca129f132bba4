#include <doctest.h>

#include <algorithm>

#include "hfs/errors.hpp"
#include "test_support.hpp"

using namespace hfs;
using namespace hfstest;

TEST_SUITE("picard") {

TEST_CASE("principal divisors map to the identity class") {
    const CurvePtr& C = e1();
    CHECK(class_of_divisor(C, principal_divisor(E(C, "y"))).is_identity());
    CHECK(class_of_divisor(C, principal_divisor(E(C, "x"))).is_identity());
    CHECK(class_of_divisor(C, principal_divisor(E(C, "(x + 2*y)/(x + 1)"))).is_identity());
    // inert places contribute nothing: dv(P) = p - 2 deg(P) inf
    CHECK(class_of_divisor(C, DV(C, "inert(x^2 + 2) - 4*inf")).is_identity());
    CHECK_THROWS_AS((void)class_of_divisor(C, DV(C, "ram(x)")), InputError);
}

TEST_CASE("explicit small classes on E1") {
    const CurvePtr& C = e1();
    MumfordRep two{P(C, "x"), P(C, "0")}; // class of ram(x) - inf
    validate_mumford(C, two);
    CHECK(jac_add(C, two, two).is_identity());
    CHECK(class_of_divisor(C, DV(C, "ram(x) - inf")) == two);

    MumfordRep four{P(C, "x + 3"), P(C, "1")}; // class of split(x + 3, +) - inf
    validate_mumford(C, four);
    CHECK(class_of_divisor(C, DV(C, "split(x + 3, +) - inf")) == four);
    MumfordRep dbl = jac_add(C, four, four);
    CHECK(dbl == two); // (2,1) doubles to the 2-torsion point (0,0)
    CHECK(jac_mul_int(C, four, 4).is_identity());
    CHECK_FALSE(jac_mul_int(C, four, 2).is_identity());
    CHECK(jac_add(C, four, jac_neg(C, four)).is_identity());
    MumfordRep negated{P(C, "x + 3"), P(C, "4")};
    CHECK(jac_neg(C, four) == negated);
}

TEST_CASE("mumford validation rejects malformed representatives") {
    const CurvePtr& C = e1();
    MumfordRep bad_branch{P(C, "x + 3"), P(C, "2")}; // u does not divide v^2 - f
    CHECK_THROWS_AS(validate_mumford(C, bad_branch), InternalError);
    MumfordRep unreduced{P(C, "x^2 + 4*x"), P(C, "0")}; // deg u exceeds the genus
    CHECK_THROWS_AS(validate_mumford(C, unreduced), InternalError);
}

TEST_CASE("exhaustive structure of Pic^0 E1") {
    PicardPtr pic = pic_e1();
    CHECK(pic->order == 8);
    CHECK(pic->snf_orders == std::vector<int64_t>{2, 4});
    CHECK(pic->two_rank() == 2);
    CHECK(pic->strategy == "exhaustive");
    auto elems = pic->elements();
    REQUIRE(elems.size() == 8);
    CHECK(std::is_sorted(elems.begin(), elems.end()));
    const CurvePtr& C = pic->C;
    // dlog recombines every element from the generators
    for (const MumfordRep& a : elems) {
        auto c = pic->dlog(a);
        REQUIRE(c.size() == 2);
        MumfordRep acc = MumfordRep::identity(C);
        for (size_t i = 0; i < c.size(); ++i) {
            CHECK(c[i] >= 0);
            CHECK(c[i] < pic->snf_orders[i]);
            acc = jac_add(C, acc, jac_mul_int(C, pic->snf_gens[i], c[i]));
        }
        CHECK(acc == a);
    }
    // generators have exact order d_i and place-supported divisors
    for (size_t i = 0; i < pic->snf_gens.size(); ++i) {
        CHECK(jac_mul_int(C, pic->snf_gens[i], pic->snf_orders[i]).is_identity());
        for (int64_t pr : {2, 3})
            if (pic->snf_orders[i] % pr == 0)
                CHECK_FALSE(jac_mul_int(C, pic->snf_gens[i], pic->snf_orders[i] / pr).is_identity());
        CHECK(class_of_divisor(C, pic->snf_divisors[i]) == pic->snf_gens[i]);
        CHECK(pic->snf_divisors[i].degree() == 0);
    }
}

TEST_CASE("group axioms hold across the whole of Pic^0 E1") {
    PicardPtr pic = pic_e1();
    const CurvePtr& C = pic->C;
    auto elems = pic->elements();
    for (const MumfordRep& a : elems) {
        CHECK(jac_add(C, a, MumfordRep::identity(C)) == a);
        CHECK(jac_add(C, a, jac_neg(C, a)).is_identity());
        for (const MumfordRep& b : elems) {
            MumfordRep ab = jac_add(C, a, b);
            validate_mumford(C, ab);
            CHECK(ab == jac_add(C, b, a));
            CHECK(std::binary_search(elems.begin(), elems.end(), ab));
        }
    }
    Rng rng(4242);
    for (int t = 0; t < 20; ++t) {
        const MumfordRep &a = elems[rng.below(elems.size())],
                         &b = elems[rng.below(elems.size())],
                         &c = elems[rng.below(elems.size())];
        CHECK(jac_add(C, jac_add(C, a, b), c) == jac_add(C, a, jac_add(C, b, c)));
    }
}

TEST_CASE("divisor representatives round-trip through their class") {
    PicardPtr pic = pic_e1();
    const CurvePtr& C = pic->C;
    for (const MumfordRep& a : pic->elements()) {
        Divisor D = divisor_of_class(C, a);
        CHECK(D.degree() == 0);
        CHECK(class_of_divisor(C, D) == a);
    }
    CHECK(divisor_of_class(C, MumfordRep::identity(C)).is_zero());
}

TEST_CASE("point counts and the L-polynomial order") {
    CHECK(point_count(e1(), 1) == 8);
    CHECK(order_from_point_counts(e1()) == 8);
    CHECK(point_count(c2(), 1) == 6);
    CHECK(point_count(g0(), 1) == 4);
    CHECK(order_from_point_counts(g0()) == 1);
    // genus 2 over F_5: Weil bounds (sqrt(5)-1)^4 <= h <= (sqrt(5)+1)^4
    uint64_t h = order_from_point_counts(c2());
    CHECK(h >= 3);
    CHECK(h <= 109);
}

TEST_CASE("generic strategy agrees with exhaustion") {
    PicardPtr gen = jac_structure(e1(), JacStrategy::Generic);
    CHECK(gen->strategy == "generic");
    CHECK(gen->order == 8);
    CHECK(gen->snf_orders == std::vector<int64_t>{2, 4});
    const CurvePtr& C = gen->C;
    for (size_t i = 0; i < gen->snf_gens.size(); ++i) {
        CHECK(jac_mul_int(C, gen->snf_gens[i], gen->snf_orders[i]).is_identity());
        CHECK(class_of_divisor(C, gen->snf_divisors[i]) == gen->snf_gens[i]);
    }

    PicardPtr gc = jac_structure(c2(), JacStrategy::Generic);
    PicardPtr xc = pic_c2();
    CHECK(gc->order == xc->order);
    CHECK(gc->snf_orders == xc->snf_orders);
    CHECK(gc->order == order_from_point_counts(c2()));
    CHECK(xc->elements().size() == xc->order);

    PicardPtr g0p = pic_g0();
    CHECK(g0p->order == 1);
    CHECK(g0p->snf_orders.empty());
    CHECK(g0p->elements().size() == 1);
    CHECK(g0p->dlog(MumfordRep::identity(g0())).empty());
}

TEST_CASE("enumeration respects the cap") {
    CHECK_THROWS_AS((void)jac_structure(c2(), JacStrategy::Exhaustive, 2), CapError);
}

} // TEST_SUITE
