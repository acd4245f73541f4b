// Command-line front end: exact dynamical invariants of morphisms of P^N over
// Q_p, JSON by default, with a seeded property-verification mode.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "padic/corpus.hpp"
#include "padic/json_io.hpp"
#include "padic/verify.hpp"

namespace {

using namespace padic;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitNotAMorphism = 3;
constexpr int kExitInternal = 4;

std::vector<PadicRational> parse_point(const std::string& s, PrimeContext ctx) {
    std::string trimmed = s;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
        trimmed.erase(trimmed.begin());
    if (!trimmed.empty() && trimmed.front() == '{') {
        try {
            return io::coords_from_json(json::parse(trimmed), ctx);
        } catch (const json::exception& e) {
            fail(Errc::parse_error, std::string("invalid point JSON: ") + e.what());
        }
    }
    std::vector<PadicRational> coords;
    std::stringstream ss(trimmed);
    std::string item;
    while (std::getline(ss, item, ',')) {
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
            item.erase(item.begin());
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
            item.pop_back();
        coords.push_back(PadicRational::from_string(item, ctx));
    }
    if (coords.empty()) fail(Errc::parse_error, "empty point");
    return coords;
}

void emit(const json& j, bool text, const std::string& text_rendering) {
    if (text)
        std::cout << text_rendering << "\n";
    else
        std::cout << j.dump(2) << "\n";
}

std::string green_text(const GreenEstimate& g, long p) {
    std::ostringstream os;
    os << "ghat in [" << rational_str(g.lower().coeff()) << ", "
       << rational_str(g.upper().coeff()) << "] * log " << p << "  (approx ["
       << io::round12(g.lower().approx()) << ", " << io::round12(g.upper().approx())
       << "]), n = " << g.n_used;
    return os.str();
}

std::string verify_text(const VerifyReport& report) {
    std::ostringstream os;
    for (const auto& pr : report.properties) {
        os << (pr.failures == 0 ? "pass  " : "FAIL  ") << pr.name
           << "  samples=" << pr.samples_tested << " failures=" << pr.failures;
        if (const long* v = std::get_if<long>(&pr.worst_margin))
            os << " worst_gap=" << *v;
        else if (const mpq_class* q = std::get_if<mpq_class>(&pr.worst_margin))
            os << " worst_gap=" << rational_str(*q) << "*log p";
        else if (const double* d = std::get_if<double>(&pr.worst_margin))
            os << " worst_gap=" << io::round12(*d);
        if (!pr.first_failure.empty()) os << "  [" << pr.first_failure << "]";
        os << "\n";
    }
    os << (report.ok() ? "ok" : "FAILURES") << " (" << report.failures_total()
       << " failing samples)";
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"exact nonarchimedean dynamical invariants on P^N over Q_p"};
    app.require_subcommand(1);

    std::string map_file;
    std::vector<std::string> points;
    bool text = false;
    long tol_n = kDefaultGreenDepth;
    std::string tol_coeff;
    bool homogeneous = false;
    long orbit_n = 10;
    VerifyOptions vopts;
    double lemma_D = 1.0, lemma_a = 2.0, lemma_b = 2.0;
    long lemma_kmax = 64;

    auto add_map = [&](CLI::App* cmd) {
        cmd->add_option("--map", map_file, "map JSON file")->required();
        cmd->add_flag("--text", text, "human-readable output");
    };
    auto add_point = [&](CLI::App* cmd, int count) {
        cmd->add_option("--point", points,
                        "point coordinates: comma-separated rationals or JSON")
            ->expected(count, count)
            ->required();
    };

    CLI::App* c_res = app.add_subcommand("resultant", "resultant valuation of the minimal lift");
    add_map(c_res);

    CLI::App* c_dist = app.add_subcommand("distance", "chordal distance between two points");
    add_map(c_dist);
    add_point(c_dist, 2);

    CLI::App* c_green = app.add_subcommand("green", "certified Green-function bracket");
    add_map(c_green);
    add_point(c_green, 1);
    c_green->add_option("--tol-n", tol_n, "truncation depth n (default 20)");
    c_green->add_option("--tol", tol_coeff,
                        "tolerance as a rational q, meaning q*log p (overrides --tol-n)");
    c_green->add_flag("--homogeneous", homogeneous,
                      "treat the point as a raw lift and return the homogeneous value");

    CLI::App* c_cls = app.add_subcommand("classify", "orbital reduction classification");
    add_map(c_cls);
    add_point(c_cls, 1);

    CLI::App* c_cert = app.add_subcommand("certify", "Fatou-membership certificate");
    add_map(c_cert);
    add_point(c_cert, 1);

    CLI::App* c_orb = app.add_subcommand("orbit", "exact renormalized orbit segment");
    add_map(c_orb);
    add_point(c_orb, 1);
    c_orb->add_option("--n", orbit_n, "number of steps (default 10)");

    CLI::App* c_ver = app.add_subcommand("verify", "run every invariant suite against the map");
    add_map(c_ver);
    c_ver->add_option("--samples", vopts.samples, "samples per suite (default 200)");
    c_ver->add_option("--seed", vopts.seed, "generator seed (default 7)");
    c_ver->add_option("--threads", vopts.threads,
                      "worker threads; capped by PADIC_GREENS_THREADS");
    c_ver->add_option("--green-depth", vopts.green_depth,
                      "bracket truncation depth for the Green suites (default 8)");

    CLI::App* c_hold = app.add_subcommand("holder", "explicit Holder constants");
    add_map(c_hold);

    CLI::App* c_lem = app.add_subcommand("lemma-min",
                                         "brute-force check of the min bound for D a^k + b^-k");
    c_lem->add_option("--D", lemma_D, "D in (0, 1]")->required();
    c_lem->add_option("--a", lemma_a, "a > 1")->required();
    c_lem->add_option("--b", lemma_b, "b > 1")->required();
    c_lem->add_option("--k-max", lemma_kmax, "largest k tried (default 64)");
    c_lem->add_flag("--text", text, "human-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    if (app.got_subcommand(c_lem)) {
        MinBoundResult r = min_bound_lemma(lemma_D, lemma_a, lemma_b, lemma_kmax);
        std::ostringstream os;
        os << "min = " << io::round12(r.min_value) << " at k = " << r.argmin_k
           << ", bound = " << io::round12(r.bound) << ", " << (r.holds ? "holds" : "VIOLATED");
        emit(io::min_bound_json(r), text, os.str());
        return r.holds ? kExitOk : kExitPropertyFailure;
    }

    HomogeneousMap f = io::map_from_file(map_file);
    const PrimeContext ctx = f.context();
    const long p = ctx.prime();

    if (app.got_subcommand(c_res)) {
        std::ostringstream os;
        os << "v_res = " << f.resultant_valuation() << "  (|Res| = "
           << io::resultant_json(f)["abs"].get<std::string>() << ")";
        emit(io::resultant_json(f), text, os.str());
        return kExitOk;
    }

    if (app.got_subcommand(c_dist)) {
        ProjectivePoint P = ProjectivePoint::make(parse_point(points[0], ctx));
        ProjectivePoint Q = ProjectivePoint::make(parse_point(points[1], ctx));
        ChordalDistance dd = chordal_distance(P, Q);
        std::ostringstream os;
        if (dd.is_zero())
            os << "delta = 0 (equal points)";
        else
            os << "delta = " << p << "^-" << dd.w() << " = " << io::round12(dd.approx(p));
        emit(io::distance_json(dd, p), text, os.str());
        return kExitOk;
    }

    if (app.got_subcommand(c_green)) {
        auto coords = parse_point(points[0], ctx);
        const long depth = tol_coeff.empty()
                               ? tol_n
                               : green_depth_for_tolerance(f, LogValue(parse_rational(tol_coeff), ctx));
        GreenEstimate est = homogeneous
                                ? green_homogeneous_depth(f, coords, depth)
                                : green_bracket_depth(f, ProjectivePoint::make(coords), depth);
        emit(io::green_json(est), text, green_text(est, p));
        return kExitOk;
    }

    if (app.got_subcommand(c_cls)) {
        OrbitClassification cls = classify_orbit(f, ProjectivePoint::make(parse_point(points[0], ctx)));
        std::ostringstream os;
        if (cls.good())
            os << "orbital good reduction: preperiod " << cls.preperiod << ", period "
               << cls.period;
        else
            os << "bad reduction at iterate " << cls.bad_iterate;
        emit(io::classification_json(cls), text, os.str());
        return kExitOk;
    }

    if (app.got_subcommand(c_cert)) {
        FatouCertificate cert = certify_fatou(f, ProjectivePoint::make(parse_point(points[0], ctx)));
        std::ostringstream os;
        if (cert.certified)
            os << "certified Fatou: iterates nonexpanding on the open disk of radius " << p
               << "^-" << cert.nonexpanding_radius_valuation;
        else
            os << "unknown: bad reduction at iterate " << cert.via.bad_iterate
               << "; ghat bracket " << green_text(*cert.evidence, p);
        emit(io::certificate_json(cert), text, os.str());
        return kExitOk;
    }

    if (app.got_subcommand(c_orb)) {
        if (orbit_n < 0 || orbit_n > 32)
            fail(Errc::bad_range,
                 "the exact orbit route doubles coordinate size per step; use --n <= 32 "
                 "(the green command has no such limit)");
        ProjectivePoint P = ProjectivePoint::make(parse_point(points[0], ctx));
        OrbitSegment seg = iterate_orbit(f, P, orbit_n);
        std::ostringstream os;
        for (std::size_t k = 0; k < seg.points.size(); ++k) {
            os << k << ": (";
            for (std::size_t i = 0; i < seg.points[k].lift().size(); ++i)
                os << (i ? " : " : "") << rational_str(seg.points[k].lift()[i].value());
            os << ")";
            if (k < seg.step_valuations.size()) os << "  w=" << seg.step_valuations[k];
            if (k + 1 < seg.points.size()) os << "\n";
        }
        emit(io::orbit_json(f, seg), text, os.str());
        return kExitOk;
    }

    if (app.got_subcommand(c_hold)) {
        HolderConstants hc = holder_constants(f);
        std::ostringstream os;
        os << "u = " << hc.u.get_str() << " (" << (hc.from_degree ? "degree" : "resultant")
           << " branch), exponent = " << io::round12(hc.holder_exponent)
           << ", coefficient = " << io::round12(hc.coefficient);
        emit(io::holder_json(hc, ctx), text, os.str());
        return kExitOk;
    }

    if (app.got_subcommand(c_ver)) {
        VerifyReport report = run_verify(f, vopts);
        emit(report.to_json(), text, verify_text(report));
        return report.ok() ? kExitOk : kExitPropertyFailure;
    }

    return kExitParse;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case Errc::not_a_morphism:
                return kExitNotAMorphism;
            case Errc::internal:
                return kExitInternal;
            default:
                return kExitParse;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
