// Acceptance checks for the library: each criterion prints one line,
// [PASS]/[FAIL], with its wall-clock time; the exit code is the number of
// failures.  Criteria combine independently computed references (point
// counts, exhaustive enumeration, exact squareness, valuation parities)
// with the constructive code paths under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hfs/cli.hpp"
#include "hfs/errors.hpp"
#include "hfs/linalg2z.hpp"
#include "hfs/oracle.hpp"
#include "hfs/selmer.hpp"
#include "test_support.hpp"

using namespace hfs;
using namespace hfstest;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg) {
    if (!ok) throw Failure(msg);
}

const PicardPtr& gen_g0() {
    static PicardPtr p = jac_structure(g0(), JacStrategy::Generic);
    return p;
}
const PicardPtr& gen_e1() {
    static PicardPtr p = jac_structure(e1(), JacStrategy::Generic);
    return p;
}
const PicardPtr& gen_c2() {
    static PicardPtr p = jac_structure(c2(), JacStrategy::Generic);
    return p;
}

bool all_valuations_even(const FuncElem& lam) {
    Divisor dv = principal_divisor(lam);
    for (const auto& [p, c] : dv.terms()) {
        (void)p;
        if (c % 2 != 0) return false;
    }
    return true;
}

std::string chain_str(const std::vector<int64_t>& chain) {
    std::string s = "(";
    for (size_t i = 0; i < chain.size(); ++i)
        s += (i ? "," : "") + std::to_string(chain[i]);
    return s + ")";
}

// ---- criterion 1: group structure discovery ------------------------------

void criterion_discovery() {
    std::vector<int64_t> want{2, 4};
    require(gen_e1()->order == 8, "generic strategy: wrong order for the elliptic fixture");
    require(gen_e1()->snf_orders == want, "generic strategy: wrong invariants for the elliptic fixture");
    require(pic_e1()->order == 8, "exhaustion: wrong order for the elliptic fixture");
    require(pic_e1()->snf_orders == want, "exhaustion: wrong invariants for the elliptic fixture");
    require(gen_c2()->order == order_from_point_counts(c2()),
            "generic strategy disagrees with the L-polynomial on the genus-2 fixture");
    require(pic_c2()->order == gen_c2()->order,
            "exhaustion disagrees with the generic strategy on the genus-2 fixture");
    require(gen_c2()->snf_orders == pic_c2()->snf_orders,
            "strategies disagree on the genus-2 invariants");
    require(gen_g0()->order == 1, "genus-0 class group should be trivial");
}

// ---- criterion 2: compatible bases on all fixtures -----------------------

void criterion_bases() {
    for (const PicardPtr& pic : {gen_g0(), gen_e1(), gen_c2()}) {
        std::string tag = " [" + pic->C->describe() + "]";
        SingularBasis sb = singular_group(pic);
        require(sb.elements.size() == (size_t)pic->two_rank() + 1,
                "basis size is not 2-rank + 1" + tag);
        require(compatible_check(sb.places, sb.elements), "compatibility matrix is not diagonal" + tag);
        for (const FuncElem& b : sb.elements)
            require(all_valuations_even(b), "basis element is not singular" + tag);
        require(independent_mod_squares(sb.elements), "basis is dependent modulo squares" + tag);
    }
}

// ---- criterion 3: coordinates against the basis --------------------------

void criterion_coords() {
    uint64_t seed = 1001;
    for (const PicardPtr& pic : {gen_e1(), gen_c2()}) {
        const CurvePtr& C = pic->C;
        std::string tag = " [" + C->describe() + "]";
        SingularBasis sb = singular_group(pic);
        size_t n = sb.elements.size();
        Rng rng(seed++);
        for (int t = 0; t < 100; ++t) {
            F2Vec eps;
            FuncElem mu = FuncElem::one(C);
            for (size_t i = 0; i < n; ++i) {
                eps.push_back((uint8_t)rng.below(2));
                if (eps.back()) mu = mu * sb.elements[i];
            }
            FuncElem z = random_elem(C, rng);
            mu = mu * z * z;
            require(coords_singular(mu, sb) == eps,
                    "coordinates failed to recover the exponents" + tag);
        }
        for (const Place& p : enumerate_places(C, 2)) {
            F2Vec e = place_coords(p, sb);
            F2Vec acc((size_t)pic->two_rank() + 1, 0);
            for (size_t j = 0; j < e.size(); ++j)
                if (e[j]) {
                    F2Vec bj = pic_coords_mod2(pic, sb.places[j]);
                    for (size_t i = 0; i < acc.size(); ++i) acc[i] ^= bj[i];
                }
            require(acc == pic_coords_mod2(pic, p),
                    "place coordinates disagree with dlog parity at " + p.to_string() + tag);
        }
    }
}

// ---- criterion 4: S-singular bases ---------------------------------------

void check_s_basis(const PicardPtr& pic, const std::vector<Place>& S, int trips, uint64_t seed) {
    const CurvePtr& C = pic->C;
    std::string tag = " [" + C->describe() + ", S of size " + std::to_string(S.size()) + "]";
    SSingularBasis ssb = s_singular_basis(pic, S);

    std::vector<FuncElem> full = ssb.base.elements;
    for (const auto& [p, lam] : ssb.lambdas) {
        require(valuation(lam, p) % 2 != 0, "lambda lacks odd valuation at its place" + tag);
        std::vector<Place> allowed = ssb.s_prime;
        allowed.push_back(p);
        require(is_s_singular(lam, allowed), "lambda has odd valuation outside S' and p" + tag);
        for (const Place& b : ssb.base.places)
            require(legendre(lam, b) == 1, "lambda is visible at a basis place" + tag);
        full.push_back(lam);
    }
    size_t want = (size_t)pic->two_rank() + 1 + (ssb.S.size() - ssb.s_prime.size());
    require(full.size() == want, "basis size violates the rank formula" + tag);
    require(independent_mod_squares(full), "S-singular basis is dependent modulo squares" + tag);

    Rng rng(seed);
    for (int t = 0; t < trips; ++t) {
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
        FuncElem z = random_elem(C, rng);
        mu = mu * z * z;
        auto got = coords_s_singular(mu, ssb);
        require(got.first == eps && got.second == e,
                "S-singular coordinates failed to recover the exponents" + tag);
    }
}

void criterion_s_bases() {
    const CurvePtr& C = e1();
    std::vector<Place> pool = {PL(C, "ram(x)"), PL(C, "ram(x + 1)"), PL(C, "ram(x + 4)"),
                               Place::infinite(C)};
    for (unsigned mask = 1; mask < 16; ++mask) {
        std::vector<Place> S;
        for (unsigned i = 0; i < 4; ++i)
            if (mask >> i & 1) S.push_back(pool[i]);
        check_s_basis(gen_e1(), S, 50, 9000 + mask);
    }
    auto ps = enumerate_places(c2(), 2);
    Rng rng(555);
    for (int k = 0; k < 5; ++k) {
        size_t size = 1 + (size_t)rng.below(4);
        std::vector<Place> S;
        while (S.size() < size) {
            const Place& cand = ps[rng.below(ps.size())];
            bool dup = false;
            for (const Place& s : S) dup = dup || s == cand;
            if (!dup) S.push_back(cand);
        }
        check_s_basis(gen_c2(), S, 50, 9100 + (uint64_t)k);
    }
}

// ---- criterion 5: random samples are singular ----------------------------

void criterion_sampling() {
    Rng me(20250823);
    for (uint64_t i = 0; i < 500; ++i) {
        Rng sub = me.split(i);
        require(all_valuations_even(random_singular(e1(), sub)),
                "elliptic sample " + std::to_string(i) + " is not singular");
    }
    Rng mc(20250824);
    for (uint64_t i = 0; i < 500; ++i) {
        Rng sub = mc.split(i);
        require(all_valuations_even(random_singular(c2(), sub)),
                "genus-2 sample " + std::to_string(i) + " is not singular");
    }
    Rng mg(20250825);
    for (uint64_t i = 0; i < 500; ++i) {
        Rng sub = mg.split(i);
        require(random_singular(g0(), sub).is_constant(),
                "genus-0 sample " + std::to_string(i) + " is not constant");
    }
}

// ---- criterion 6: constant fraction of samples ---------------------------

void criterion_constant_fraction() {
    const uint64_t N = 2000;
    ConstantFraction cf = constant_fraction_estimate(e1(), N, Rng(424242));
    require(cf.samples == N, "sample count mismatch");
    double frac = (double)cf.constants / (double)N;
    double bound = 0.25 + 3.0 * std::sqrt(0.25 * 0.75 / (double)N);
    require(frac <= bound, "constant fraction " + std::to_string(frac) + " exceeds " +
                               std::to_string(bound));
}

// ---- criterion 7: odd-order fractions over invariant chains --------------

void criterion_odd_fractions() {
    std::vector<int64_t> chain;
    int checked = 0;
    std::function<void(uint64_t)> rec = [&](uint64_t prod) {
        Fraction f = odd_order_fraction(chain, 2048);
        uint64_t twopart = 1;
        for (int64_t d : chain)
            for (int64_t dd = d; dd % 2 == 0; dd /= 2) twopart *= 2;
        require(f.num == 1 && f.den == twopart,
                "odd-order fraction wrong for invariants " + chain_str(chain));
        ++checked;
        uint64_t base = chain.empty() ? 1 : (uint64_t)chain.back();
        for (uint64_t d = chain.empty() ? 2 : base; prod * d <= 1024; d += base) {
            chain.push_back((int64_t)d);
            rec(prod * d);
            chain.pop_back();
        }
    };
    rec(1);
    require(checked > 1000, "chain enumeration looks truncated");
}

// ---- criterion 8: Riemann-Roch dimensions --------------------------------

void criterion_riemann_roch() {
    Rng rng(31415);
    for (const CurvePtr& C : {g0(), e1(), c2()}) {
        std::string tag = " [" + C->describe() + "]";
        int g = (int)C->genus;
        Divisor W;
        W.add(Place::infinite(C), 2 * g - 2);
        auto ps = enumerate_places(C, 2);
        for (int t = 0; t < 100; ++t) {
            Divisor D;
            int k = 1 + (int)rng.below(4);
            for (int i = 0; i < k; ++i)
                D.add(ps[rng.below(ps.size())], (int64_t)rng.below(7) - 3);
            int l1 = (int)rr_space(C, D).dim;
            int l2 = (int)rr_space(C, W - D).dim;
            require(l1 - l2 == (int)D.degree() + 1 - g,
                    "dimension identity fails against the canonical divisor" + tag);
            if (D.degree() > 2 * g - 2)
                require(l1 == (int)D.degree() + 1 - g,
                        "dimension formula fails beyond the canonical degree" + tag);
        }
    }
}

// ---- criterion 9: CLI determinism ----------------------------------------

std::pair<int, std::string> run_cli_once(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("hfselmer");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli((int)argv.size(), argv.data(), out, err);
    return {code, out.str() + "\x1f" + err.str()};
}

void criterion_cli() {
    std::vector<std::vector<std::string>> cmds = {
        {"basis", "--q", "5", "--f", "x^3 + 4*x"},
        {"picard", "--q", "5", "--f", "x^5 + x + 1"},
        {"s-basis", "--q", "5", "--f", "x^3 + 4*x", "--places", "ram(x), ram(x + 1), inf"},
        {"coords", "--q", "5", "--f", "x^3 + 4*x", "--element", "x"},
        {"random", "--q", "5", "--f", "x^5 + x + 1", "--samples", "25", "--seed", "99"},
        {"random", "--q", "3", "--f", "x", "--samples", "10", "--seed", "1"},
        {"rr", "--q", "5", "--f", "x^5 + x + 1", "--divisor", "5*inf"},
        {"verify", "--q", "5", "--f", "x^3 + 4*x"},
    };
    for (const auto& cmd : cmds) {
        auto first = run_cli_once(cmd);
        auto second = run_cli_once(cmd);
        require(first.first == 0, "command `" + cmd[0] + "` exited with code " +
                                      std::to_string(first.first));
        require(first == second, "command `" + cmd[0] + "` is not byte-identical across runs");
    }
}

struct Criterion {
    const char* label;
    double budget_s;
    void (*fn)();
};

} // namespace

int main() {
    const Criterion criteria[] = {
        {"class group discovery agrees across strategies and point counts", 10.0,
         criterion_discovery},
        {"compatible singular bases on all fixtures", 30.0, criterion_bases},
        {"coordinate round-trips and place coordinates", 60.0, criterion_coords},
        {"S-singular bases over subset families", 300.0, criterion_s_bases},
        {"random samples are singular (constant in genus 0)", 120.0, criterion_sampling},
        {"constant fraction of samples within the sampling bound", 120.0,
         criterion_constant_fraction},
        {"odd-order fractions across invariant chains up to 1024", 10.0,
         criterion_odd_fractions},
        {"Riemann-Roch dimensions against the canonical divisor", 60.0, criterion_riemann_roch},
        {"CLI runs are byte-identical and exit cleanly", 60.0, criterion_cli},
    };

    int failures = 0;
    int idx = 0;
    for (const Criterion& c : criteria) {
        ++idx;
        auto t0 = std::chrono::steady_clock::now();
        std::string reason;
        try {
            c.fn();
        } catch (const std::exception& e) {
            reason = e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (reason.empty() && secs > c.budget_s)
            reason = "exceeded the " + std::to_string((int)c.budget_s) + "s budget";
        if (reason.empty()) {
            std::printf("[PASS] criterion %d: %s (%.2fs)\n", idx, c.label, secs);
        } else {
            std::printf("[FAIL] criterion %d: %s — %s (%.2fs)\n", idx, c.label, reason.c_str(),
                        secs);
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures;
}
