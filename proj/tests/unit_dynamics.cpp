#include <doctest.h>

#include "padic/corpus.hpp"
#include "padic/dynamics.hpp"
#include "padic/generator.hpp"
#include "padic/json_io.hpp"
#include "support/oracles.hpp"

using namespace padic;
using nlohmann::json;

namespace {

HomogeneousMap map_of(const std::string& body) { return io::map_from_json(json::parse(body)); }

HomogeneousMap scaled3() {
    return map_of(R"({"p": 3, "N": 1, "d": 2,
        "forms": [[{"exps": [2,0], "coeff": "1"}], [{"exps": [0,2], "coeff": "3"}]]})");
}

HomogeneousMap mono3() {
    return map_of(R"({"p": 3, "N": 1, "d": 2,
        "forms": [[{"exps": [2,0], "coeff": "1"}], [{"exps": [0,2], "coeff": "1"}]]})");
}

PadicRational q(const char* s, PrimeContext ctx) { return PadicRational::from_string(s, ctx); }

ProjectivePoint pt(std::initializer_list<const char*> coords, PrimeContext ctx) {
    std::vector<PadicRational> v;
    for (const char* c : coords) v.push_back(q(c, ctx));
    return ProjectivePoint::make(std::move(v));
}

mpq_class qq(long num, long den) {
    mpq_class x(num, den);
    x.canonicalize();
    return x;
}

} // namespace

TEST_CASE("one-step defect g") {
    PrimeContext p3(3);
    HomogeneousMap f = scaled3();
    CHECK(green_step(mono3(), pt({"1", "7"}, p3)).is_zero());
    CHECK(green_step(f, pt({"0", "1"}, p3)).coeff() == qq(-1, 2));
    CHECK(green_step(f, pt({"1", "0"}, p3)).is_zero());
}

TEST_CASE("partial sums g_n") {
    PrimeContext p3(3);
    HomogeneousMap f = scaled3();
    CHECK(green_partial(f, pt({"1", "1"}, p3), 0).is_zero());
    // (0:1) is fixed with every step valuation 1, so g_n = -(1 - 2^-n)
    CHECK(green_partial(f, pt({"0", "1"}, p3), 2).coeff() == qq(-3, 4));
    CHECK(green_partial(mono3(), pt({"2", "7"}, p3), 6).is_zero());
}

TEST_CASE("green bracket closed forms at the fixed point (0:1)") {
    PrimeContext p3(3);
    HomogeneousMap f = scaled3();
    ProjectivePoint P = pt({"0", "1"}, p3);
    for (long n : {1L, 2L, 5L, 12L, 20L}) {
        GreenEstimate est = green_bracket_depth(f, P, n);
        // oracle: geometric series sum_{k<n} 2^{-(k+1)} = 1 - 2^-n
        mpq_class expect = 1 - mpq_class(mpz_class(1), mpz_class(1) << n);
        expect.canonicalize();
        CHECK(est.partial_sum.coeff() == mpq_class(-expect));
        // tail C1 / d^n with C1 = v_res/(d-1) = 2
        mpq_class tail(mpz_class(2), mpz_class(1) << n);
        tail.canonicalize();
        CHECK(est.tail_bound.coeff() == tail);
        // the bracket always contains the limit -1
        CHECK(est.lower().coeff() <= -1);
        CHECK(est.upper().coeff() >= -1);
    }
}

TEST_CASE("green bracket is exactly zero along good orbits") {
    PrimeContext p3(3);
    HomogeneousMap f = scaled3();
    for (long n : {0L, 1L, 5L, 20L}) {
        CHECK(green_bracket_depth(f, pt({"1", "0"}, p3), n).partial_sum.is_zero());
        CHECK(green_bracket_depth(f, pt({"1", "1"}, p3), n).partial_sum.is_zero());
    }
    // unit resultant collapses the bracket at depth 0
    GreenEstimate est = green_bracket(mono3(), pt({"1", "5"}, p3), LogValue(qq(1, 1000), PrimeContext(3)));
    CHECK(est.n_used == 0);
    CHECK(est.partial_sum.is_zero());
    CHECK(est.tail_bound.is_zero());
}

TEST_CASE("tolerance selects the least sufficient depth") {
    PrimeContext p3(3);
    HomogeneousMap f = scaled3();
    ProjectivePoint P = pt({"0", "1"}, p3);
    // C1 = 2, so C1/d^n <= 1/16 first at n = 5
    GreenEstimate est = green_bracket(f, P, LogValue(qq(1, 16), p3));
    CHECK(est.n_used == 5);
    // a tolerance above C1 needs no iteration at all
    CHECK(green_bracket(f, P, LogValue(qq(3, 1), p3)).n_used == 0);
    CHECK_THROWS_AS(green_bracket(f, P, LogValue(qq(0, 1), p3)), Error);
}

TEST_CASE("homogeneous green values") {
    PrimeContext p3(3);
    HomogeneousMap f = scaled3();
    {
        std::vector<PadicRational> x{q("1", p3), q("1", p3)};
        GreenEstimate est = green_homogeneous_depth(mono3(), x, 4);
        CHECK(est.partial_sum.is_zero());
    }
    {
        // ghat(0:1) -> -1, log||(0,3)|| = -log 3, so G -> -2
        std::vector<PadicRational> x{q("0", p3), q("3", p3)};
        GreenEstimate est = green_homogeneous_depth(f, x, 20);
        CHECK(est.upper().coeff() >= -2);
        CHECK(est.lower().coeff() <= -2);
        // matched-truncation scaling: G(cx) = G(x) + log|c|
        std::vector<PadicRational> x9{q("0", p3) * q("9", p3), q("3", p3) * q("9", p3)};
        GreenEstimate scaled = green_homogeneous_depth(f, x9, 20);
        CHECK(scaled.partial_sum.coeff() == est.partial_sum.coeff() - 2);
    }
    {
        // ghat = 0 and log||(3,3)|| = -log 3
        std::vector<PadicRational> x{q("3", p3), q("3", p3)};
        GreenEstimate est = green_homogeneous_depth(mono3(), x, 4);
        CHECK(est.partial_sum.coeff() == -1);
    }
    {
        std::vector<PadicRational> zero{q("0", p3), q("0", p3)};
        CHECK_THROWS_AS(green_homogeneous_depth(f, zero, 4), Error);
    }
}

TEST_CASE("replacing the lift shifts G by log|c|/(d-1)") {
    PrimeContext p3(3);
    HomogeneousMap f = scaled3();
    HomogeneousMap f_scaled = map_of(R"({"p": 3, "N": 1, "d": 2,
        "forms": [[{"exps": [2,0], "coeff": "3"}], [{"exps": [0,2], "coeff": "9"}]]})");
    HomogeneousMap f_unit = map_of(R"({"p": 3, "N": 1, "d": 2,
        "forms": [[{"exps": [2,0], "coeff": "5/7"}], [{"exps": [0,2], "coeff": "15/7"}]]})");
    Rng rng(71);
    for (int i = 0; i < 25; ++i) {
        ProjectivePoint P = random_point(rng, p3, 1);
        std::vector<PadicRational> x(P.lift().begin(), P.lift().end());
        GreenEstimate base = green_homogeneous_depth(f, x, 8);
        // c = 3: shift by -1/(d-1) = -1
        GreenEstimate shifted = green_homogeneous_depth(f_scaled, x, 8);
        CHECK(shifted.partial_sum.coeff() == base.partial_sum.coeff() - 1);
        // c = 5/7 is a unit: no shift at all
        GreenEstimate same = green_homogeneous_depth(f_unit, x, 8);
        CHECK(same.partial_sum.coeff() == base.partial_sum.coeff());
    }
}

TEST_CASE("good reduction at a point") {
    PrimeContext p3(3);
    HomogeneousMap f = scaled3();
    CHECK(good_reduction_at(f, pt({"1", "0"}, p3)));
    CHECK(!good_reduction_at(f, pt({"0", "1"}, p3)));
    CHECK(good_reduction_at(mono3(), pt({"4", "9"}, p3)));
}

TEST_CASE("orbit classification") {
    PrimeContext p3(3);
    HomogeneousMap f = scaled3();
    {
        OrbitClassification c = classify_orbit(f, pt({"0", "1"}, p3));
        CHECK(!c.good());
        CHECK(c.bad_iterate == 0);
    }
    {
        OrbitClassification c = classify_orbit(f, pt({"1", "1"}, p3));
        REQUIRE(c.good());
        CHECK(c.preperiod == 1);
        CHECK(c.period == 1);
    }
    {
        PrimeContext p5(5);
        HomogeneousMap mono5 = map_of(R"({"p": 5, "N": 1, "d": 2,
            "forms": [[{"exps": [2,0], "coeff": "1"}], [{"exps": [0,2], "coeff": "1"}]]})");
        Rng rng(3);
        for (int i = 0; i < 50; ++i)
            CHECK(classify_orbit(mono5, random_point(rng, p5, 1)).good());
    }
    {
        // (X^2+XY : Y^2+3X^2) over p=2: residue orbit (1,0) -> (1,1) -> undefined
        HomogeneousMap mixed2 = map_of(R"({"p": 2, "N": 1, "d": 2,
            "forms": [[{"exps": [2,0], "coeff": "1"}, {"exps": [1,1], "coeff": "1"}],
                      [{"exps": [0,2], "coeff": "1"}, {"exps": [2,0], "coeff": "3"}]]})");
        OrbitClassification c = classify_orbit(mixed2, pt({"1", "0"}, PrimeContext(2)));
        CHECK(!c.good());
        CHECK(c.bad_iterate == 1);
        // the bracket just past the bad iterate is strictly negative
        GreenEstimate est = green_bracket_depth(mixed2, pt({"1", "0"}, PrimeContext(2)), 2);
        CHECK(sgn(est.upper().coeff()) < 0);
        OrbitClassification good = classify_orbit(mixed2, pt({"0", "1"}, PrimeContext(2)));
        REQUIRE(good.good());
        CHECK(good.preperiod == 0);
        CHECK(good.period == 1);
    }
}

TEST_CASE("cycle detection finds preperiods and periods") {
    // squaring map residues: 2 -> 4 -> 1 -> 1 over F_5, a tail of length 2
    HomogeneousMap mono5 = map_of(R"({"p": 5, "N": 1, "d": 2,
        "forms": [[{"exps": [2,0], "coeff": "1"}], [{"exps": [0,2], "coeff": "1"}]]})");
    OrbitClassification tail = classify_orbit(mono5, pt({"1", "2"}, PrimeContext(5)));
    REQUIRE(tail.good());
    CHECK(tail.preperiod == 2);
    CHECK(tail.period == 1);

    // over F_7: 2 -> 4 -> 2, a pure 2-cycle
    HomogeneousMap mono7 = map_of(R"({"p": 7, "N": 1, "d": 2,
        "forms": [[{"exps": [2,0], "coeff": "1"}], [{"exps": [0,2], "coeff": "1"}]]})");
    OrbitClassification cycle = classify_orbit(mono7, pt({"1", "2"}, PrimeContext(7)));
    REQUIRE(cycle.good());
    CHECK(cycle.preperiod == 0);
    CHECK(cycle.period == 2);

    // full multiplicative orbit over F_97: 3 is a primitive root, and squaring
    // on the 96-element unit group cycles with tail 0 after entering
    HomogeneousMap mono97 = map_of(R"({"p": 97, "N": 1, "d": 2,
        "forms": [[{"exps": [2,0], "coeff": "1"}], [{"exps": [0,2], "coeff": "1"}]]})");
    OrbitClassification big = classify_orbit(mono97, pt({"1", "3"}, PrimeContext(97)));
    REQUIRE(big.good());
    CHECK(big.preperiod + big.period <= 98);
    CHECK(big.period >= 1);
}

TEST_CASE("cubic map with non-unit resultant") {
    PrimeContext p3(3);
    // Res(X^3, 3Y^3) = 3^3, so v_res = 3 and C1 = v_res/(d-1) = 3/2
    HomogeneousMap f = map_of(R"({"p": 3, "N": 1, "d": 3,
        "forms": [[{"exps": [3,0], "coeff": "1"}], [{"exps": [0,3], "coeff": "3"}]]})");
    CHECK(f.resultant_valuation() == 3);
    ProjectivePoint P = pt({"0", "1"}, p3);
    CHECK(green_step(f, P).coeff() == qq(-1, 3));
    // fixed point with every step valuation 1: g_n = -(1 - 3^-n)/2
    for (long n : {1L, 2L, 6L}) {
        mpz_class t3 = pow_of(3, static_cast<unsigned long>(n));
        mpq_class expect = -(1 - mpq_class(1, t3)) / 2;
        expect.canonicalize();
        CHECK(green_partial(f, P, n).coeff() == expect);
        mpq_class tail(3, 2 * t3);
        tail.canonicalize();
        CHECK(green_bracket_depth(f, P, n).tail_bound.coeff() == tail);
    }
    // bracket converges to -1/2
    GreenEstimate est = green_bracket_depth(f, P, 12);
    CHECK(est.lower().coeff() <= qq(-1, 2));
    CHECK(est.upper().coeff() >= qq(-1, 2));
    CHECK(holder_constants(f).u == 729); // 3^6 = 729 > 2d = 6
}

TEST_CASE("fatou certificates") {
    PrimeContext p3(3);
    HomogeneousMap f = scaled3();
    {
        FatouCertificate c = certify_fatou(f, pt({"1", "1"}, p3));
        REQUIRE(c.certified);
        CHECK(c.nonexpanding_radius_valuation == 2);
        CHECK(c.via.good());
    }
    {
        FatouCertificate c = certify_fatou(f, pt({"0", "1"}, p3));
        REQUIRE(!c.certified);
        REQUIRE(c.evidence.has_value());
        CHECK(sgn(c.evidence->upper().coeff()) < 0);
        CHECK(c.evidence->lower().coeff() <= -1);
        CHECK(c.evidence->upper().coeff() >= -1);
    }
    {
        FatouCertificate c = certify_fatou(mono3(), pt({"5", "7"}, p3));
        REQUIRE(c.certified);
        CHECK(c.nonexpanding_radius_valuation == 0);
    }
}

TEST_CASE("explicit constants") {
    PrimeContext p3(3);
    HomogeneousMap f = scaled3();
    CHECK(lipschitz_constant(mono3()).is_zero());
    CHECK(lipschitz_constant(f).coeff() == 4);
    HomogeneousMap f33 = map_of(R"({"p": 3, "N": 1, "d": 2,
        "forms": [[{"exps": [2,0], "coeff": "3"}], [{"exps": [0,2], "coeff": "3"}]]})");
    CHECK(lipschitz_constant(f33).is_zero());

    CHECK(local_constancy_radius(f) == 2);
    CHECK(local_constancy_radius(mono3()) == 0);
    // a pair strictly inside the |Res| disk has equal g
    ProjectivePoint P = pt({"1", "27"}, p3);
    ProjectivePoint Q = pt({"1", "0"}, p3);
    CHECK(chordal_distance(P, Q) == ChordalDistance::power(3));
    CHECK(green_step(f, P) == green_step(f, Q));
    CHECK(green_step(f, P).is_zero());
}

TEST_CASE("holder constants") {
    {
        HolderConstants h = holder_constants(mono3()); // d=2, v_res=0
        CHECK(h.u == 4);
        CHECK(h.from_degree);
        CHECK(h.holder_exponent == doctest::Approx(0.5));
        CHECK(h.coefficient == doctest::Approx(4.0 * std::log(4.0)));
    }
    {
        HolderConstants h = holder_constants(scaled3()); // 3^4 = 81 > 4
        CHECK(h.u == 81);
        CHECK(!h.from_degree);
        CHECK(h.holder_exponent == doctest::Approx(std::log(2.0) / std::log(81.0)));
    }
    {
        HomogeneousMap cubic = map_of(R"({"p": 5, "N": 1, "d": 3,
            "forms": [[{"exps": [3,0], "coeff": "1"}], [{"exps": [0,3], "coeff": "1"}]]})");
        HolderConstants h = holder_constants(cubic); // d=3, v_res=0
        CHECK(h.u == 6);
        CHECK(h.holder_exponent == doctest::Approx(std::log(3.0) / std::log(6.0)));
    }
}

TEST_CASE("min bound lemma") {
    {
        MinBoundResult r = min_bound_lemma(1.0, 2.0, 2.0, 64);
        CHECK(r.min_value == doctest::Approx(2.5));
        CHECK(r.argmin_k == 1);
        CHECK(r.bound == doctest::Approx(4.0));
        CHECK(r.holds);
        CHECK(oracles::brute_min(1.0, 2.0, 2.0, 64) == doctest::Approx(2.5));
    }
    {
        MinBoundResult r = min_bound_lemma(0.25, 2.0, 2.0, 64);
        CHECK(r.min_value == doctest::Approx(1.0));
        CHECK(r.bound == doctest::Approx(2.0));
        CHECK(r.holds);
    }
    {
        const double e = std::exp(1.0);
        MinBoundResult r = min_bound_lemma(1.0, e, e, 64);
        CHECK(r.min_value == doctest::Approx(e + 1.0 / e));
        CHECK(r.argmin_k == 1);
        CHECK(r.bound == doctest::Approx(2.0 * e));
        CHECK(r.holds);
    }
    CHECK_THROWS_AS(min_bound_lemma(0.0, 2.0, 2.0, 64), Error);
    CHECK_THROWS_AS(min_bound_lemma(0.5, 1.0, 2.0, 64), Error);
    CHECK_THROWS_AS(min_bound_lemma(0.5, 2.0, 2.0, 0), Error);
}

TEST_CASE("modular and exact orbit routes agree") {
    Rng rng(2024);
    for (const auto& entry : bundled_corpus()) {
        const long N = entry.map.dimension();
        for (int i = 0; i < 12; ++i) {
            ProjectivePoint P = random_point(rng, entry.map.context(), N);
            OrbitSegment seg = iterate_orbit(entry.map, P, 8);
            CHECK(orbit_step_valuations(entry.map, P, 8) == seg.step_valuations);
        }
    }
}

TEST_CASE("functional equation at matched truncation") {
    Rng rng(555);
    for (const auto& entry : bundled_corpus()) {
        const long d = entry.map.degree();
        for (int i = 0; i < 10; ++i) {
            ProjectivePoint P = random_point(rng, entry.map.context(), entry.map.dimension());
            ProjectivePoint fP = entry.map.apply(P);
            for (long n : {0L, 1L, 6L}) {
                mpq_class lhs = green_partial(entry.map, fP, n).coeff();
                mpq_class rhs = d * green_partial(entry.map, P, n + 1).coeff() -
                                d * green_step(entry.map, P).coeff();
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("brackets nest and stay nonpositive") {
    Rng rng(777);
    HomogeneousMap f = scaled3();
    for (int i = 0; i < 60; ++i) {
        ProjectivePoint P = random_point(rng, f.context(), 1);
        GreenEstimate a = green_bracket_depth(f, P, 3);
        GreenEstimate b = green_bracket_depth(f, P, 9);
        CHECK(sgn(a.upper().coeff()) <= 0);
        CHECK(b.upper() <= a.upper());
        CHECK(a.lower() <= b.lower());
    }
}

TEST_CASE("bracket is invariant under pre-scaling the map by powers of p") {
    PrimeContext p3(3);
    HomogeneousMap f = scaled3();
    HomogeneousMap f_scaled = map_of(R"({"p": 3, "N": 1, "d": 2,
        "forms": [[{"exps": [2,0], "coeff": "3"}], [{"exps": [0,2], "coeff": "9"}]]})");
    Rng rng(31337);
    for (int i = 0; i < 30; ++i) {
        ProjectivePoint P = random_point(rng, p3, 1);
        GreenEstimate a = green_bracket_depth(f, P, 7);
        GreenEstimate b = green_bracket_depth(f_scaled, P, 7);
        CHECK(a.partial_sum == b.partial_sum);
        CHECK(a.tail_bound == b.tail_bound);
    }
}

TEST_CASE("surface map on P^2") {
    PrimeContext p3(3);
    HomogeneousMap f = map_of(R"({"p": 3, "N": 2, "d": 2,
        "forms": [[{"exps": [2,0,0], "coeff": "1"}],
                  [{"exps": [0,2,0], "coeff": "1"}],
                  [{"exps": [0,0,2], "coeff": "3"}]]})");
    CHECK(f.resultant_valuation() == 4);
    OrbitClassification good = classify_orbit(f, pt({"1", "1", "1"}, p3));
    REQUIRE(good.good());
    CHECK(good.preperiod == 1);
    CHECK(good.period == 1);
    OrbitClassification bad = classify_orbit(f, pt({"0", "0", "1"}, p3));
    CHECK(!bad.good());
    CHECK(bad.bad_iterate == 0);
    // the bad fixed point (0:0:1) has every step valuation 1, so ghat = -log 3
    GreenEstimate est = green_bracket_depth(f, pt({"0", "0", "1"}, p3), 20);
    CHECK(orbit_step_valuations(f, pt({"0", "0", "1"}, p3), 3) == std::vector<long>{1, 1, 1});
    CHECK(est.upper().coeff() >= -1);
    CHECK(est.lower().coeff() <= -1);
}
