#include "padic/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <thread>

#include "padic/generator.hpp"
#include "padic/json_io.hpp"
#include "padic/resultant.hpp"

namespace padic {

namespace {

struct SampleOutcome {
    bool tested = true;
    bool passed = true;
    Margin margin;
    std::string detail;
};

using SampleFn = std::function<SampleOutcome(Rng&)>;

struct PropertySpec {
    std::string name;
    long samples;
    SampleFn fn;
};

bool margin_less(const Margin& a, const Margin& b) {
    if (std::holds_alternative<std::monostate>(b)) return !std::holds_alternative<std::monostate>(a);
    if (std::holds_alternative<std::monostate>(a)) return false;
    if (a.index() != b.index()) return a.index() < b.index(); // mixed kinds never occur in one suite
    if (const long* x = std::get_if<long>(&a)) return *x < std::get<long>(b);
    if (const mpq_class* q = std::get_if<mpq_class>(&a)) return *q < std::get<mpq_class>(b);
    return std::get<double>(a) < std::get<double>(b);
}

std::vector<SampleOutcome> run_samples(std::uint64_t seed, std::uint64_t stream, long count,
                                       long threads, const SampleFn& fn) {
    std::vector<SampleOutcome> out(static_cast<std::size_t>(count));
    auto one = [&](long i) {
        Rng rng(mix_seed(seed, stream, static_cast<std::uint64_t>(i)));
        try {
            out[static_cast<std::size_t>(i)] = fn(rng);
        } catch (const std::exception& e) {
            out[static_cast<std::size_t>(i)] =
                SampleOutcome{true, false, std::monostate{}, std::string("exception: ") + e.what()};
        }
    };
    if (threads <= 1 || count < 2) {
        for (long i = 0; i < count; ++i) one(i);
        return out;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    const long workers = std::min(threads, count);
    pool.reserve(static_cast<std::size_t>(workers));
    for (long t = 0; t < workers; ++t)
        pool.emplace_back([&]() {
            for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) one(i);
        });
    for (auto& th : pool) th.join();
    return out;
}

std::optional<long> distance_w(const ChordalDistance& d) {
    if (d.is_zero()) return std::nullopt;
    return d.w();
}

SampleOutcome pass_with(Margin m) { return SampleOutcome{true, true, std::move(m), {}}; }
SampleOutcome pass() { return SampleOutcome{}; }
SampleOutcome skip() { return SampleOutcome{false, true, std::monostate{}, {}}; }
SampleOutcome failure(std::string detail) {
    return SampleOutcome{true, false, std::monostate{}, std::move(detail)};
}

// Keeps the smaller (worse) of an accumulating margin and a new slack value.
void fold_margin(Margin& worst, const Margin& m) {
    if (std::holds_alternative<std::monostate>(m)) return;
    if (std::holds_alternative<std::monostate>(worst) || margin_less(m, worst)) worst = m;
}

std::vector<PropertySpec> build_suite(const HomogeneousMap& f, const VerifyOptions& opts) {
    const PrimeContext ctx = f.context();
    const long p = ctx.prime();
    const long N = f.dimension();
    const long d = f.degree();
    const long v_res = f.resultant_valuation();
    const long depth = std::max(1L, opts.green_depth);
    const long S = opts.samples;

    std::vector<PropertySpec> suite;

    suite.push_back({"scalar-ultrametric", S, [ctx](Rng& rng) {
        PadicRational a = random_rational(rng, ctx);
        PadicRational b = random_rational(rng, ctx);
        PadicRational s = a + b;
        Valuation va = valuation(a), vb = valuation(b), vs = valuation(s);
        Valuation low = va < vb ? va : vb;
        if (vs < low) return failure("v(a+b) < min(v(a), v(b))");
        if (!(va == vb) && !(vs == low)) return failure("strict case of the ultrametric failed");
        if (va == vb && vs.is_finite() && low.is_finite())
            return pass_with(Margin{vs.finite_long() - low.finite_long()});
        return pass();
    }});

    suite.push_back({"scalar-valuation-multiplicative", S, [ctx](Rng& rng) {
        PadicRational a = random_rational(rng, ctx);
        PadicRational b = random_rational(rng, ctx);
        if (a.is_zero() || b.is_zero()) return skip();
        if (!(valuation(a * b) == valuation(a) + valuation(b)))
            return failure("v(ab) != v(a) + v(b)");
        return pass();
    }});

    suite.push_back({"normalize-idempotent", S, [ctx, N](Rng& rng) {
        std::vector<PadicRational> xs;
        for (long i = 0; i <= N; ++i) xs.push_back(random_rational(rng, ctx));
        bool all_zero = true;
        for (const auto& x : xs) all_zero &= x.is_zero();
        if (all_zero) return skip();
        NormalizedLift once = normalize_lift(xs);
        if (!(sup_norm_valuation(once.coords) == Valuation::of(0)))
            return failure("normalized lift does not have sup-norm valuation 0");
        NormalizedLift twice = normalize_lift(once.coords);
        if (twice.scaling_exponent != 0) return failure("second normalization rescaled");
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (!(twice.coords[i] == once.coords[i])) return failure("second normalization moved");
        return pass();
    }});

    suite.push_back({"logvalue-exact", S, [ctx](Rng& rng) {
        LogValue a(random_rational(rng, ctx).value(), ctx);
        LogValue b(random_rational(rng, ctx).value(), ctx);
        if (!((a + b) - b == a)) return failure("(a+b)-b != a");
        return pass();
    }});

    suite.push_back({"metric-axioms", S, [ctx, N](Rng& rng) {
        ProjectivePoint P = random_point(rng, ctx, N);
        ProjectivePoint Q = random_point(rng, ctx, N);
        ProjectivePoint R = random_point(rng, ctx, N);
        if (!(chordal_distance(P, Q) == chordal_distance(Q, P))) return failure("not symmetric");
        if (!chordal_distance(P, P).is_zero()) return failure("d(P,P) != 0");
        auto wPQ = distance_w(chordal_distance(P, Q));
        auto wQR = distance_w(chordal_distance(Q, R));
        auto wPR = distance_w(chordal_distance(P, R));
        if (wPQ && *wPQ < 0) return failure("distance exceeds 1");
        // strong triangle: w(P,R) >= min(w(P,Q), w(Q,R))
        if (!wPQ && !wQR) {
            if (wPR) return failure("P=Q=R but d(P,R) != 0");
            return pass();
        }
        long low;
        if (!wPQ) low = *wQR;
        else if (!wQR) low = *wPQ;
        else low = std::min(*wPQ, *wQR);
        if (wPR && *wPR < low) return failure("strong triangle inequality failed");
        if (!wPR) return pass();
        return pass_with(Margin{*wPR - low});
    }});

    suite.push_back({"distance-lift-invariance", S, [ctx, N](Rng& rng) {
        ProjectivePoint P = random_point(rng, ctx, N);
        ProjectivePoint Q = random_point(rng, ctx, N);
        PadicRational c = random_rational(rng, ctx);
        if (c.is_zero()) c = PadicRational(1, ctx);
        std::vector<PadicRational> scaled;
        for (const auto& x : P.lift()) scaled.push_back(x * c);
        ProjectivePoint P2 = ProjectivePoint::make(std::move(scaled));
        if (!(P2 == P)) return failure("rescaled lift changed the point");
        if (!(chordal_distance(P2, Q) == chordal_distance(P, Q)))
            return failure("distance depends on the lift");
        return pass();
    }});

    suite.push_back({"affine-isometry", S, [ctx, N](Rng& rng) {
        auto a = random_polydisk_vector(rng, ctx, N);
        auto b = random_polydisk_vector(rng, ctx, N);
        ChordalDistance dd = chordal_distance(affine_embed(a), affine_embed(b));
        Valuation best = Valuation::infinite();
        for (long i = 0; i < N; ++i) {
            PadicRational diff = a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
            if (diff.is_zero()) continue;
            Valuation v = valuation(diff);
            if (v < best) best = v;
        }
        if (best.is_infinite() != dd.is_zero()) return failure("zero cases disagree");
        if (!best.is_infinite() && dd.w() != best.finite_long())
            return failure("chordal distance differs from the polydisk distance");
        return pass();
    }});

    suite.push_back({"index-preservation", S, [ctx, N, p](Rng& rng) {
        NearPair pair = near_pair(rng, ctx, N, rng.range(1, 4));
        (void)p;
        auto units = [](const ProjectivePoint& pt) {
            std::vector<bool> u;
            for (const auto& x : pt.lift())
                u.push_back(!x.is_zero() && valuation(x) == Valuation::of(0));
            return u;
        };
        if (units(pair.first) != units(pair.second))
            return failure("unit coordinate sets differ for a pair at distance < 1");
        return pass();
    }});

    suite.push_back({"affine-roundtrip", S, [ctx, N](Rng& rng) {
        auto a = random_polydisk_vector(rng, ctx, N);
        auto back = affine_extract(affine_embed(a), 0);
        for (long i = 0; i < N; ++i)
            if (!(back[static_cast<std::size_t>(i)] == a[static_cast<std::size_t>(i)]))
                return failure("affine chart round trip moved a coordinate");
        return pass();
    }});

    suite.push_back({"nearpair-selfcheck", S, [ctx, N](Rng& rng) {
        const long w = rng.range(0, 6);
        NearPair pair = near_pair(rng, ctx, N, w); // the generator itself recomputes
        ChordalDistance dd = chordal_distance(pair.first, pair.second);
        if (dd.is_zero() || dd.w() != w) return failure("emitted pair missed the target distance");
        return pass();
    }});

    suite.push_back({"image-norm-bounds", S, [&f, ctx, N, v_res](Rng& rng) {
        ProjectivePoint P = random_point(rng, ctx, N);
        Valuation w = sup_norm_valuation(f.evaluate_minimal(P.lift()));
        if (w.is_infinite()) return failure("minimal lift sent a lift to zero");
        const long wv = w.finite_long();
        if (wv < 0 || wv > v_res) return failure("||F(x)|| escaped [|Res|, 1]");
        return pass_with(Margin{v_res - wv});
    }});

    suite.push_back({"resultant-scaling", 1, [&f, ctx, N, d, p, v_res](Rng&) {
        std::vector<Polynomial> scaled;
        for (const auto& form : f.minimal_forms())
            scaled.push_back(form.scaled(PadicRational(p, ctx)));
        const long lhs = macaulay_resultant_valuation(scaled, d, p) - v_res;
        long expected = N + 1;
        for (long i = 0; i < N; ++i) expected *= d;
        if (lhs != expected) return failure("v(Res(pF)) - v(Res(F)) != (N+1) d^N");
        return pass();
    }});

    suite.push_back({"macaulay-sylvester", N == 1 ? 1L : 0L, [&f, d, p, v_res](Rng&) {
        const long s = sylvester_resultant_valuation(f.minimal_forms()[0], f.minimal_forms()[1],
                                                     d, p);
        if (s != v_res) return failure("Sylvester and Macaulay valuations disagree");
        return pass();
    }});

    suite.push_back({"gauss-lipschitz", S, [ctx, N](Rng& rng) {
        Polynomial psi = random_integral_polynomial(rng, ctx, std::max(N, 1L), 3);
        if (psi.is_zero()) return skip();
        auto x = random_polydisk_vector(rng, ctx, std::max(N, 1L));
        auto y = random_polydisk_vector(rng, ctx, std::max(N, 1L));
        PadicRational diff = psi.evaluate(x) - psi.evaluate(y);
        Valuation gauss = psi.gauss_norm_valuation();
        Valuation closest = Valuation::infinite();
        for (std::size_t i = 0; i < x.size(); ++i) {
            PadicRational dc = x[i] - y[i];
            if (dc.is_zero()) continue;
            Valuation v = valuation(dc);
            if (v < closest) closest = v;
        }
        Valuation rhs = gauss + closest;
        if (diff.is_zero()) return pass(); // infinite left side
        if (rhs.is_infinite()) return failure("x = y but psi(x) != psi(y)");
        Valuation lhs = valuation(diff);
        if (lhs < rhs) return failure("|psi(x)-psi(y)| exceeded the Gauss-norm bound");
        return pass_with(Margin{lhs.finite_long() - rhs.finite_long()});
    }});

    suite.push_back({"reduction-commutes", S, [&f, ctx, N](Rng& rng) {
        ProjectivePoint P = random_point(rng, ctx, N);
        if (!good_reduction_at(f, P)) return skip();
        ResidueMap rmap = reduce_map(f);
        auto through_residue = rmap.apply(reduce_point(P));
        if (!through_residue) return failure("reduced map undefined despite good reduction");
        ResiduePoint lhs = reduce_point(f.apply(P)).canonical();
        if (!(lhs == through_residue->canonical()))
            return failure("reduction does not commute with evaluation");
        return pass();
    }});

    suite.push_back({"green-functional-equation", S, [&f, ctx, N, d, depth](Rng& rng) {
        ProjectivePoint P = random_point(rng, ctx, N);
        ProjectivePoint fP = f.apply(P);
        mpq_class lhs = green_partial(f, fP, depth).coeff();
        mpq_class rhs =
            d * green_partial(f, P, depth + 1).coeff() - d * green_step(f, P).coeff();
        if (!(lhs == rhs)) return failure("g_n(fP) != d g_{n+1}(P) - d g(P)");
        return pass();
    }});

    suite.push_back({"green-nonpositive", S, [&f, ctx, N, depth](Rng& rng) {
        ProjectivePoint P = random_point(rng, ctx, N);
        GreenEstimate est = green_bracket_depth(f, P, depth);
        if (sgn(est.upper().coeff()) > 0) return failure("bracket upper end is positive");
        return pass_with(Margin{mpq_class(-est.upper().coeff())});
    }});

    suite.push_back({"green-bracket-nesting", S, [&f, ctx, N, depth](Rng& rng) {
        ProjectivePoint P = random_point(rng, ctx, N);
        const long n1 = std::max(1L, depth / 2);
        GreenEstimate a = green_bracket_depth(f, P, n1);
        GreenEstimate b = green_bracket_depth(f, P, depth);
        if (b.upper() > a.upper() || a.lower() > b.lower())
            return failure("deeper bracket is not nested in the shallower one");
        return pass();
    }});

    suite.push_back({"green-dual-route", S, [&f, ctx, N, depth](Rng& rng) {
        ProjectivePoint P = random_point(rng, ctx, N);
        const long n = std::min(8L, depth);
        auto fast = orbit_step_valuations(f, P, n);
        auto exact = iterate_orbit(f, P, n).step_valuations;
        if (fast != exact) return failure("modular and exact orbit valuations disagree");
        return pass();
    }});

    suite.push_back({"classify-green-consistency", S, [&f, ctx, N, opts](Rng& rng) {
        ProjectivePoint P = random_point(rng, ctx, N);
        OrbitClassification cls = classify_orbit(f, P);
        if (cls.good()) {
            auto ws = orbit_step_valuations(f, P, opts.classify_horizon);
            for (long w : ws)
                if (w != 0) return failure("orbital good reduction but g_n != 0");
            return pass();
        }
        GreenEstimate est = green_bracket_depth(f, P, cls.bad_iterate + 1);
        if (!(sgn(est.upper().coeff()) < 0))
            return failure("bad reduction at iterate k but bracket upper end is not negative");
        return pass_with(Margin{mpq_class(-est.upper().coeff())});
    }});

    suite.push_back({"green-homogeneous-scaling", S, [&f, ctx, N, p, depth](Rng& rng) {
        ProjectivePoint P = random_point(rng, ctx, N);
        std::vector<PadicRational> x(P.lift().begin(), P.lift().end());
        const long j = rng.range(-2, 2);
        mpq_class c = random_unit_rational(rng, ctx).value();
        if (j >= 0)
            c *= pow_of(p, static_cast<unsigned long>(j));
        else
            c /= pow_of(p, static_cast<unsigned long>(-j));
        c.canonicalize();
        std::vector<PadicRational> cx;
        for (const auto& xi : x) cx.emplace_back(mpq_class(xi.value() * c), ctx);
        GreenEstimate base = green_homogeneous_depth(f, x, depth);
        GreenEstimate scaled = green_homogeneous_depth(f, cx, depth);
        // G(cx) = G(x) + log|c| at matched truncation
        if (!(scaled.partial_sum.coeff() == base.partial_sum.coeff() - j) ||
            !(scaled.tail_bound == base.tail_bound))
            return failure("G(cx) - G(x) != log|c|");
        return pass();
    }});

    {
        std::vector<Polynomial> rescaled;
        for (const auto& form : f.minimal_forms())
            rescaled.push_back(form.scaled(PadicRational(p, ctx)));
        auto prescaled = std::make_shared<HomogeneousMap>(
            HomogeneousMap::from_forms(ctx, d, std::move(rescaled)));
        suite.push_back({"green-lift-independence", S, [&f, prescaled, ctx, N, depth](Rng& rng) {
            ProjectivePoint P = random_point(rng, ctx, N);
            GreenEstimate a = green_bracket_depth(f, P, depth);
            GreenEstimate b = green_bracket_depth(*prescaled, P, depth);
            if (!(a.partial_sum == b.partial_sum) || !(a.tail_bound == b.tail_bound))
                return failure("bracket changed under a p-power rescaling of the map");
            return pass();
        }});
    }

    suite.push_back({"lipschitz-image", S, [&f, ctx, N, v_res](Rng& rng) {
        auto [P, Q] = [&]() -> std::pair<ProjectivePoint, ProjectivePoint> {
            if (rng.chance(1, 3)) {
                NearPair pr = near_pair(rng, ctx, N, rng.range(0, v_res + 3));
                return {pr.first, pr.second};
            }
            return {random_point(rng, ctx, N), random_point(rng, ctx, N)};
        }();
        auto w = distance_w(chordal_distance(P, Q));
        auto wi = distance_w(chordal_distance(f.apply(P), f.apply(Q)));
        if (!w) {
            if (wi) return failure("equal points with distinct images");
            return pass();
        }
        if (!wi) return pass(); // image distance zero, bound holds with room
        if (*wi < *w - 2 * v_res) return failure("image distance exceeded |Res|^-2 d(P,Q)");
        return pass_with(Margin{*wi - (*w - 2 * v_res)});
    }});

    suite.push_back({"local-constancy", S, [&f, ctx, N, v_res](Rng& rng) {
        NearPair pair = near_pair(rng, ctx, N, v_res + rng.range(1, 4));
        if (!(green_step(f, pair.first) == green_step(f, pair.second)))
            return failure("g differs on a pair strictly inside the |Res| disk");
        return pass();
    }});

    suite.push_back({"orbit-nonexpansion", S, [&f, ctx, N, v_res, opts](Rng& rng) {
        std::optional<ProjectivePoint> base;
        for (int attempt = 0; attempt < 40 && !base; ++attempt) {
            ProjectivePoint cand = random_point(rng, ctx, N);
            if (classify_orbit(f, cand).good()) base = cand;
        }
        if (!base) return skip();
        ProjectivePoint Q = perturb_point(rng, *base, v_res + rng.range(1, 3));
        ProjectivePoint R = perturb_point(rng, *base, v_res + rng.range(1, 3));
        auto w0 = distance_w(chordal_distance(Q, R));
        if (!w0) return skip();
        Margin worst;
        for (long n = 1; n <= opts.nonexpansion_horizon; ++n) {
            Q = f.apply(Q);
            R = f.apply(R);
            auto wn = distance_w(chordal_distance(Q, R));
            if (!wn) break; // orbits merged; nonexpanding trivially from here
            if (*wn < *w0) return failure("iterates expanded a pair inside the |Res| disk");
            fold_margin(worst, Margin{*wn - *w0});
        }
        return pass_with(worst);
    }});

    suite.push_back({"holder", S, [&f, ctx, N, p, v_res, depth](Rng& rng) {
        HolderConstants hc = holder_constants(f);
        auto [P, Q] = [&]() -> std::pair<ProjectivePoint, ProjectivePoint> {
            if (rng.chance(1, 2)) {
                NearPair pr = near_pair(rng, ctx, N, rng.range(0, v_res + 4));
                return {pr.first, pr.second};
            }
            return {random_point(rng, ctx, N), random_point(rng, ctx, N)};
        }();
        GreenEstimate eP = green_bracket_depth(f, P, depth);
        GreenEstimate eQ = green_bracket_depth(f, Q, depth);
        auto w = distance_w(chordal_distance(P, Q));
        mpq_class diff = eP.partial_sum.coeff() - eQ.partial_sum.coeff();
        if (sgn(diff) < 0) diff = -diff;
        if (!w) {
            if (sgn(diff) != 0) return failure("equal points with different partial sums");
            return pass();
        }
        // Fold both bracket widths into the left side before comparing.
        mpq_class folded = diff - eP.tail_bound.coeff() - eQ.tail_bound.coeff();
        const double rhs =
            hc.coefficient * std::exp(-double(*w) * std::log(double(p)) * hc.holder_exponent);
        if (sgn(folded) <= 0) return pass_with(Margin{rhs});
        const double lhs = folded.get_d() * std::log(double(p));
        if (lhs > rhs * (1.0 + 1e-9)) return failure("Holder bound violated");
        return pass_with(Margin{rhs - lhs});
    }});

    return suite;
}

} // namespace

long effective_threads(long requested) {
    long t = std::max(1L, requested);
    if (const char* env = std::getenv("PADIC_GREENS_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) t = std::min(t, cap);
    }
    return t;
}

long VerifyReport::failures_total() const {
    long total = 0;
    for (const auto& p : properties) total += p.failures;
    return total;
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& pr : properties) {
        nlohmann::json margin;
        if (std::holds_alternative<std::monostate>(pr.worst_margin))
            margin = nlohmann::json{{"kind", "none"}};
        else if (const long* v = std::get_if<long>(&pr.worst_margin))
            margin = nlohmann::json{{"kind", "valuation_gap"}, {"value", *v}};
        else if (const mpq_class* q = std::get_if<mpq_class>(&pr.worst_margin))
            margin = nlohmann::json{{"kind", "log_coeff"}, {"value", rational_str(*q)}};
        else
            margin = nlohmann::json{{"kind", "float"},
                                    {"value", io::round12(std::get<double>(pr.worst_margin))}};
        nlohmann::json item{{"name", pr.name},
                            {"samples", pr.samples_tested},
                            {"failures", pr.failures},
                            {"worst_margin", std::move(margin)}};
        if (!pr.first_failure.empty()) item["first_failure"] = pr.first_failure;
        props.push_back(std::move(item));
    }
    return nlohmann::json{{"seed", seed},
                          {"samples", samples},
                          {"map", map},
                          {"properties", std::move(props)},
                          {"failures_total", failures_total()},
                          {"ok", ok()}};
}

VerifyReport run_verify(const HomogeneousMap& f, const VerifyOptions& opts) {
    VerifyReport report;
    report.seed = opts.seed;
    report.samples = opts.samples;
    report.map = io::map_json(f);

    const long threads = effective_threads(opts.threads);
    const auto suite = build_suite(f, opts);
    for (std::size_t s = 0; s < suite.size(); ++s) {
        const auto& prop = suite[s];
        auto outcomes = run_samples(opts.seed, s, prop.samples, threads, prop.fn);
        PropertyResult pr;
        pr.name = prop.name;
        for (const auto& o : outcomes) {
            if (!o.tested) continue;
            ++pr.samples_tested;
            if (!o.passed) {
                ++pr.failures;
                if (pr.first_failure.empty()) pr.first_failure = o.detail;
            }
            fold_margin(pr.worst_margin, o.margin);
        }
        report.properties.push_back(std::move(pr));
    }
    return report;
}

} // namespace padic
