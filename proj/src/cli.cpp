#include "hfs/cli.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hfs/curve.hpp"
#include "hfs/errors.hpp"
#include "hfs/galois.hpp"
#include "hfs/oracle.hpp"
#include "hfs/picard.hpp"
#include "hfs/polyring.hpp"
#include "hfs/rng.hpp"
#include "hfs/rroch.hpp"
#include "hfs/selmer.hpp"

namespace hfs {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Options {
    uint64_t q = 0;
    std::string f;
    std::optional<uint64_t> seed;
    std::string format = "json";
    uint64_t cap = (uint64_t)1 << 20;

    std::string places;
    bool has_places = false;
    std::string element;
    std::string divisor;
    uint64_t samples = 1;
};

bool json_mode(const Options& o) { return o.format == "json"; }

CurvePtr build_curve(const Options& o) {
    FieldPtr F = FieldDescriptor::from_order(o.q);
    Poly f = parse_poly(F, o.f);
    return Curve::make(F, f);
}

ordered_json strings_of_places(const std::vector<Place>& ps) {
    ordered_json a = ordered_json::array();
    for (const Place& p : ps) a.push_back(p.to_string());
    return a;
}

ordered_json strings_of_elements(const std::vector<FuncElem>& es) {
    ordered_json a = ordered_json::array();
    for (const FuncElem& e : es) a.push_back(e.to_string());
    return a;
}

ordered_json bits_json(const F2Vec& v) {
    ordered_json a = ordered_json::array();
    for (uint8_t b : v) a.push_back((int)b);
    return a;
}

ordered_json lambdas_json(const std::vector<std::pair<Place, FuncElem>>& ls) {
    ordered_json a = ordered_json::array();
    for (const auto& [p, lam] : ls) {
        ordered_json o;
        o["place"] = p.to_string();
        o["element"] = lam.to_string();
        a.push_back(o);
    }
    return a;
}

ordered_json preamble(const char* command, const CurvePtr& C) {
    ordered_json j;
    j["command"] = command;
    j["q"] = C->F->order();
    j["f"] = C->f.to_string();
    return j;
}

void emit(const Options& o, std::ostream& out, const ordered_json& j,
          const std::vector<std::string>& text_lines) {
    if (json_mode(o)) {
        out << j.dump(2) << "\n";
    } else {
        for (const std::string& line : text_lines) out << line << "\n";
    }
}

int cmd_basis(const Options& o, std::ostream& out) {
    CurvePtr C = build_curve(o);
    PicardPtr pic = jac_structure(C, JacStrategy::Generic, o.cap);
    SingularBasis sb = singular_group(pic);

    ordered_json j = preamble("basis", C);
    j["places"] = strings_of_places(sb.places);
    j["elements"] = strings_of_elements(sb.elements);
    ordered_json compat = ordered_json::array();
    for (const FuncElem& beta : sb.elements) {
        ordered_json row = ordered_json::array();
        for (const Place& b : sb.places) row.push_back(legendre(beta, b));
        compat.push_back(row);
    }
    j["compatibility"] = compat;

    std::vector<std::string> lines;
    lines.push_back("curve: " + C->describe());
    for (size_t i = 0; i < sb.places.size(); ++i)
        lines.push_back("b_" + std::to_string(i + 1) + " = " + sb.places[i].to_string() +
                        "   beta_" + std::to_string(i + 1) + " = " + sb.elements[i].to_string());
    emit(o, out, j, lines);
    return 0;
}

int cmd_s_basis(const Options& o, std::ostream& out) {
    CurvePtr C = build_curve(o);
    PicardPtr pic = jac_structure(C, JacStrategy::Generic, o.cap);
    std::vector<Place> S = parse_place_list(C, o.places);
    SSingularBasis ssb = s_singular_basis(pic, S);

    ordered_json j = preamble("s-basis", C);
    j["s"] = strings_of_places(ssb.S);
    j["places"] = strings_of_places(ssb.base.places);
    j["elements"] = strings_of_elements(ssb.base.elements);
    j["s_prime"] = strings_of_places(ssb.s_prime);
    j["lambdas"] = lambdas_json(ssb.lambdas);
    j["rank"] = ssb.base.places.size() + ssb.lambdas.size();

    std::vector<std::string> lines;
    lines.push_back("curve: " + C->describe());
    for (size_t i = 0; i < ssb.base.places.size(); ++i)
        lines.push_back("b_" + std::to_string(i + 1) + " = " + ssb.base.places[i].to_string() +
                        "   beta_" + std::to_string(i + 1) + " = " + ssb.base.elements[i].to_string());
    std::string sp = "S' =";
    for (const Place& p : ssb.s_prime) sp += " " + p.to_string();
    lines.push_back(sp);
    for (const auto& [p, lam] : ssb.lambdas)
        lines.push_back("lambda_{" + p.to_string() + "} = " + lam.to_string());
    emit(o, out, j, lines);
    return 0;
}

int cmd_coords(const Options& o, std::ostream& out) {
    CurvePtr C = build_curve(o);
    PicardPtr pic = jac_structure(C, JacStrategy::Generic, o.cap);
    FuncElem elem = parse_func_elem(C, o.element);
    if (elem.is_zero()) throw InputError("the zero element has no coordinates");

    ordered_json j = preamble("coords", C);
    j["element"] = elem.to_string();
    std::vector<std::string> lines;
    lines.push_back("curve: " + C->describe());
    lines.push_back("element: " + elem.to_string());

    if (o.has_places) {
        std::vector<Place> S = parse_place_list(C, o.places);
        SSingularBasis ssb = s_singular_basis(pic, S);
        auto [eps, e] = coords_s_singular(elem, ssb);
        j["s"] = strings_of_places(ssb.S);
        j["places"] = strings_of_places(ssb.base.places);
        j["s_prime"] = strings_of_places(ssb.s_prime);
        j["lambdas"] = lambdas_json(ssb.lambdas);
        j["coords_eps"] = bits_json(eps);
        j["coords_e"] = bits_json(e);
        std::string l1 = "eps =", l2 = "e =";
        for (uint8_t b : eps) l1 += " " + std::to_string((int)b);
        for (uint8_t b : e) l2 += " " + std::to_string((int)b);
        lines.push_back(l1);
        lines.push_back(l2);
    } else {
        SingularBasis sb = singular_group(pic);
        F2Vec eps = coords_singular(elem, sb);
        j["places"] = strings_of_places(sb.places);
        j["coords_eps"] = bits_json(eps);
        std::string l1 = "eps =";
        for (uint8_t b : eps) l1 += " " + std::to_string((int)b);
        lines.push_back(l1);
    }
    emit(o, out, j, lines);
    return 0;
}

int cmd_random(const Options& o, std::ostream& out) {
    if (json_mode(o) && !o.seed)
        throw InputError("--seed is required for `random` in JSON mode");
    CurvePtr C = build_curve(o);
    uint64_t seed = o.seed.value_or(0);
    Rng master(seed);

    std::vector<FuncElem> samples;
    uint64_t constants = 0;
    for (uint64_t i = 0; i < o.samples; ++i) {
        Rng sub = master.split(i);
        FuncElem lam = random_singular(C, sub);
        if (lam.is_constant()) ++constants;
        samples.push_back(std::move(lam));
    }

    ordered_json j = preamble("random", C);
    j["seed"] = seed;
    j["samples"] = o.samples;
    j["elements"] = strings_of_elements(samples);
    ordered_json frac;
    frac["num"] = constants;
    frac["den"] = o.samples;
    j["constant_fraction"] = frac;

    std::vector<std::string> lines;
    lines.push_back("curve: " + C->describe());
    for (const FuncElem& lam : samples) lines.push_back(lam.to_string());
    lines.push_back("constant fraction: " + std::to_string(constants) + "/" +
                    std::to_string(o.samples));
    emit(o, out, j, lines);
    return 0;
}

int cmd_picard(const Options& o, std::ostream& out) {
    CurvePtr C = build_curve(o);
    PicardPtr pic = jac_structure(C, JacStrategy::Generic, o.cap);

    ordered_json j = preamble("picard", C);
    j["order"] = pic->order;
    ordered_json orders = ordered_json::array();
    for (int64_t d : pic->snf_orders) orders.push_back(d);
    j["snf_orders"] = orders;
    ordered_json gens = ordered_json::array();
    for (const MumfordRep& m : pic->snf_gens) {
        ordered_json g;
        g["u"] = m.u.to_string();
        g["v"] = m.v.to_string();
        gens.push_back(g);
    }
    j["generators"] = gens;
    j["strategy"] = pic->strategy;

    std::vector<std::string> lines;
    lines.push_back("curve: " + C->describe());
    lines.push_back("order: " + std::to_string(pic->order));
    std::string chain = "invariants:";
    for (int64_t d : pic->snf_orders) chain += " " + std::to_string(d);
    lines.push_back(chain);
    for (const MumfordRep& m : pic->snf_gens) lines.push_back("generator: " + m.to_string());
    emit(o, out, j, lines);
    return 0;
}

int cmd_rr(const Options& o, std::ostream& out) {
    CurvePtr C = build_curve(o);
    Divisor D = parse_divisor(C, o.divisor);
    RRBasis rr = rr_space(C, D);

    ordered_json j = preamble("rr", C);
    j["divisor"] = D.to_string();
    j["dim"] = rr.dim;
    j["basis"] = strings_of_elements(rr.basis);

    std::vector<std::string> lines;
    lines.push_back("curve: " + C->describe());
    lines.push_back("divisor: " + D.to_string());
    lines.push_back("dim: " + std::to_string(rr.dim));
    for (const FuncElem& e : rr.basis) lines.push_back("  " + e.to_string());
    emit(o, out, j, lines);
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    CurvePtr C = build_curve(o);
    std::vector<OracleReport> reports = verify_suite(C, o.cap);
    bool all = true;
    for (const OracleReport& r : reports) {
        all = all && r.pass;
        if (json_mode(o)) {
            ordered_json j;
            j["claim"] = r.claim;
            j["pass"] = r.pass;
            j["witness"] = r.witness;
            out << j.dump() << "\n";
        } else {
            out << (r.pass ? "[PASS] " : "[FAIL] ") << r.claim << " — " << r.witness << "\n";
        }
    }
    return all ? 0 : 1;
}

void emit_error(const Options& o, std::ostream& out, std::ostream& err, const char* type,
                const std::string& message) {
    if (json_mode(o)) {
        ordered_json j;
        ordered_json e;
        e["type"] = type;
        e["message"] = message;
        j["error"] = e;
        out << j.dump(2) << "\n";
    }
    err << "error: " << message << "\n";
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"2-Selmer bases and singular elements of odd-degree hyperelliptic function fields"};
    app.require_subcommand(1);
    app.add_option("--q", o.q, "field order q (odd prime power)")->required();
    app.add_option("--f", o.f, "monic squarefree polynomial f(x) of odd degree")->required();
    app.add_option("--seed", o.seed, "random seed (required for `random` in JSON mode)");
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--cap", o.cap, "work cap for group enumeration")->capture_default_str();

    CLI::App* basis = app.add_subcommand("basis", "compatible basis of the singular group");
    CLI::App* sbasis = app.add_subcommand("s-basis", "basis of the S-singular group");
    sbasis->add_option("--places", o.places, "comma-separated places S")->required();
    CLI::App* coords = app.add_subcommand("coords", "coordinates of an element");
    coords->add_option("--element", o.element, "element expression")->required();
    CLI::Option* coords_places = coords->add_option("--places", o.places, "comma-separated places S");
    CLI::App* random_cmd = app.add_subcommand("random", "random singular elements");
    random_cmd->add_option("--samples", o.samples, "number of samples")->capture_default_str();
    CLI::App* picard = app.add_subcommand("picard", "divisor class group structure");
    CLI::App* rr = app.add_subcommand("rr", "Riemann-Roch space of a divisor");
    rr->add_option("--divisor", o.divisor, "divisor expression")->required();
    CLI::App* verify = app.add_subcommand("verify", "run the self-check suite");
    for (CLI::App* sub : {basis, sbasis, coords, random_cmd, picard, rr, verify})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_error(o, out, err, "input", e.what());
        return 2;
    }
    o.has_places = coords_places->count() > 0;

    try {
        if (basis->parsed()) return cmd_basis(o, out);
        if (sbasis->parsed()) return cmd_s_basis(o, out);
        if (coords->parsed()) return cmd_coords(o, out);
        if (random_cmd->parsed()) return cmd_random(o, out);
        if (picard->parsed()) return cmd_picard(o, out);
        if (rr->parsed()) return cmd_rr(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        emit_error(o, out, err, "input", "no subcommand given");
        return 2;
    } catch (const InputError& e) {
        emit_error(o, out, err, "input", e.what());
        return 2;
    } catch (const CapError& e) {
        emit_error(o, out, err, "cap", e.what());
        return 3;
    } catch (const Error& e) {
        emit_error(o, out, err, "internal", e.what());
        return 4;
    } catch (const std::exception& e) {
        emit_error(o, out, err, "internal", e.what());
        return 4;
    }
}

} // namespace hfs
