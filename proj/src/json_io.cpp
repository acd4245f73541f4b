#include "padic/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace padic::io {

double round12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

json logvalue_json(const LogValue& v) {
    return json{{"coeff", rational_str(v.coeff())},
                {"p", v.context().prime()},
                {"approx", round12(v.approx())}};
}

json point_json(const ProjectivePoint& P) {
    json coords = json::array();
    for (const auto& x : P.lift()) coords.push_back(rational_str(x.value()));
    return json{{"coords", std::move(coords)}};
}

std::vector<PadicRational> coords_from_json(const json& j, PrimeContext ctx) {
    if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array())
        fail(Errc::parse_error, "expected {\"coords\": [...]}");
    std::vector<PadicRational> out;
    for (const auto& c : j["coords"]) {
        if (!c.is_string()) fail(Errc::parse_error, "coordinates must be rational strings");
        out.push_back(PadicRational::from_string(c.get<std::string>(), ctx));
    }
    return out;
}

json distance_json(const ChordalDistance& d, long p) {
    json out;
    if (d.is_zero())
        out["zero"] = true;
    else
        out["w"] = d.w();
    out["delta_approx"] = round12(d.approx(p));
    return out;
}

json map_json(const HomogeneousMap& f) {
    json forms = json::array();
    for (const auto& form : f.forms()) {
        json terms = json::array();
        for (const auto& t : form.terms())
            terms.push_back(json{{"exps", t.exps}, {"coeff", rational_str(t.coeff.value())}});
        forms.push_back(std::move(terms));
    }
    return json{{"p", f.context().prime()},
                {"N", f.dimension()},
                {"d", f.degree()},
                {"forms", std::move(forms)}};
}

HomogeneousMap map_from_json(const json& j) {
    if (!j.is_object()) fail(Errc::parse_error, "map spec must be a JSON object");
    for (const char* key : {"p", "N", "d", "forms"})
        if (!j.contains(key)) fail(Errc::parse_error, std::string("map spec misses \"") + key + '"');
    if (!j["p"].is_number_integer() || !j["N"].is_number_integer() ||
        !j["d"].is_number_integer() || !j["forms"].is_array())
        fail(Errc::parse_error, "map spec fields have wrong types");

    PrimeContext ctx(j["p"].get<long>());
    const long N = j["N"].get<long>();
    const long d = j["d"].get<long>();
    if (N < 1) fail(Errc::parse_error, "N must be at least 1");
    if (static_cast<long>(j["forms"].size()) != N + 1)
        fail(Errc::parse_error, "expected N+1 coordinate forms");

    std::vector<Polynomial> forms;
    for (const auto& jform : j["forms"]) {
        if (!jform.is_array()) fail(Errc::parse_error, "each form must be an array of terms");
        std::vector<Term> terms;
        for (const auto& jterm : jform) {
            if (!jterm.is_object() || !jterm.contains("exps") || !jterm.contains("coeff"))
                fail(Errc::parse_error, "each term needs \"exps\" and \"coeff\"");
            std::vector<unsigned> exps;
            for (const auto& e : jterm["exps"]) {
                if (!e.is_number_integer() || e.get<long>() < 0)
                    fail(Errc::parse_error, "exponents must be nonnegative integers");
                exps.push_back(e.get<unsigned>());
            }
            terms.push_back(Term{
                std::move(exps),
                PadicRational::from_string(jterm["coeff"].get<std::string>(), ctx)});
        }
        forms.push_back(Polynomial::make(N + 1, std::move(terms), ctx));
    }
    return HomogeneousMap::from_forms(ctx, d, std::move(forms));
}

HomogeneousMap map_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::parse_error, "cannot open map file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(Errc::parse_error, std::string("invalid JSON: ") + e.what());
    }
    return map_from_json(j);
}

json resultant_json(const HomogeneousMap& f) {
    const long v = f.resultant_valuation();
    const std::string abs =
        v == 0 ? "1" : std::to_string(f.context().prime()) + "^-" + std::to_string(v);
    return json{{"v_res", v}, {"abs", abs}};
}

json green_json(const GreenEstimate& g) {
    return json{{"partial_sum", logvalue_json(g.partial_sum)},
                {"tail_bound", logvalue_json(g.tail_bound)},
                {"n", g.n_used},
                {"lower_approx", round12(g.lower().approx())},
                {"upper_approx", round12(g.upper().approx())}};
}

json classification_json(const OrbitClassification& c) {
    if (c.good())
        return json{{"verdict", "orbital_good"}, {"preperiod", c.preperiod}, {"period", c.period}};
    return json{{"verdict", "bad"}, {"at_iterate", c.bad_iterate}};
}

json certificate_json(const FatouCertificate& c) {
    if (c.certified)
        return json{{"verdict", "certified_fatou"},
                    {"radius_valuation", c.nonexpanding_radius_valuation},
                    {"via", classification_json(c.via)}};
    return json{{"verdict", "unknown"},
                {"classification", classification_json(c.via)},
                {"green_evidence", green_json(*c.evidence)},
                {"note", "strictly negative bracket certifies bad reduction along the orbit; "
                         "Julia membership is not decided (heuristic evidence only)"}};
}

json holder_json(const HolderConstants& h, PrimeContext ctx) {
    return json{{"u", h.u.get_str()},
                {"branch", h.from_degree ? "degree" : "resultant"},
                {"two_d", h.two_d},
                {"res_exponent", h.res_exponent},
                {"p", ctx.prime()},
                {"coefficient", round12(h.coefficient)},
                {"exponent", round12(h.holder_exponent)}};
}

json min_bound_json(const MinBoundResult& r) {
    return json{{"min", round12(r.min_value)},
                {"argmin_k", r.argmin_k},
                {"bound", round12(r.bound)},
                {"holds", r.holds}};
}

json orbit_json(const HomogeneousMap& f, const OrbitSegment& seg) {
    json points = json::array();
    for (const auto& pt : seg.points) points.push_back(point_json(pt));
    json gs = json::array();
    for (long w : seg.step_valuations) {
        mpq_class coeff(-w, f.degree());
        coeff.canonicalize();
        gs.push_back(logvalue_json(LogValue(coeff, f.context())));
    }
    return json{{"points", std::move(points)},
                {"step_valuations", seg.step_valuations},
                {"g_values", std::move(gs)}};
}

} // namespace padic::io
