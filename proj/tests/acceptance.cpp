// Acceptance suite: one test case per criterion, each printing a pass/fail
// line. Run directly (./acceptance_tests) or through ctest.

#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "padic/corpus.hpp"
#include "padic/generator.hpp"
#include "padic/json_io.hpp"
#include "padic/resultant.hpp"
#include "padic/verify.hpp"
#include "support/oracles.hpp"

using namespace padic;

namespace {

struct Criterion {
    int index;
    std::string name;
    bool ok = true;
    std::string first_issue;

    Criterion(int i, std::string n) : index(i), name(std::move(n)) {}

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_issue = what;
        }
    }

    ~Criterion() {
        std::cout << "[" << (ok ? "PASS" : "FAIL") << "] criterion " << index << ": " << name;
        if (!ok) std::cout << "  (" << first_issue << ")";
        std::cout << std::endl;
    }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

mpq_class qq(long num, long den) {
    mpq_class x(num, den);
    x.canonicalize();
    return x;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string run_cli(const std::string& args, int& exit_code, const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto out = dir / ("padic_greens_acc_" + tag + ".out");
    const std::string cmd =
        std::string(PADIC_GREENS_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    std::filesystem::remove(out);
    return ss.str();
}

} // namespace

TEST_CASE("criterion 1: resultant oracle equivalence on random maps") {
    Criterion crit(1, "Macaulay equals Sylvester on >= 50 random maps, with the scaling law");
    const auto t0 = std::chrono::steady_clock::now();

    const long primes[] = {2, 3, 5, 97};
    long kept = 0;
    Rng rng(mix_seed(2024, 1, 0));
    while (kept < 50) {
        const long p = primes[rng.below(4)];
        PrimeContext ctx(p);
        const long d = rng.chance(1, 2) ? 2 : 3;
        auto forms = random_binary_forms(rng, ctx, d, 20);
        if (forms[0].is_zero() || forms[1].is_zero()) continue;

        bool sylvester_zero = false, macaulay_zero = false;
        long sv = 0, mv = 0;
        try {
            sv = sylvester_resultant_valuation(forms[0], forms[1], d, p);
        } catch (const Error&) {
            sylvester_zero = true;
        }
        try {
            mv = macaulay_resultant_valuation(forms, d, p);
        } catch (const Error&) {
            macaulay_zero = true;
        }
        crit.expect(sylvester_zero == macaulay_zero, "routes disagree about Res = 0");
        if (sylvester_zero || macaulay_zero) continue;
        crit.expect(sv == mv, "Macaulay and Sylvester valuations differ");

        std::vector<Polynomial> scaled;
        for (const auto& f : forms) scaled.push_back(f.scaled(PadicRational(p, ctx)));
        const long lhs = macaulay_resultant_valuation(scaled, d, p) - mv;
        crit.expect(lhs == 2 * d, "v(Res(pF)) - v(Res(F)) != (N+1) d^N");
        ++kept;
    }
    crit.expect(kept >= 50, "fewer than 50 usable maps");
    const double elapsed = seconds_since(t0);
    crit.expect(elapsed < 10.0, "runtime exceeded 10 s");
    CHECK(crit.ok);
}

TEST_CASE("criterion 2: green closed forms for (X^2 : 3Y^2) over p = 3") {
    Criterion crit(2, "exact partial sums and bracket at the three marked points");
    PrimeContext p3(3);
    HomogeneousMap f = io::map_from_file(std::string(PADIC_GREENS_MAPS_DIR) + "/scaled_p3.json");

    auto point = [&](const char* a, const char* b) {
        return ProjectivePoint::make(
            {PadicRational::from_string(a, p3), PadicRational::from_string(b, p3)});
    };

    {
        GreenEstimate est = green_bracket_depth(f, point("0", "1"), 20);
        const mpz_class two20 = mpz_class(1) << 20;
        mpq_class expect_partial = -(1 - mpq_class(1, two20));
        expect_partial.canonicalize();
        crit.expect(est.partial_sum.coeff() == expect_partial,
                    "partial sum is not -(1 - 2^-20)");
        mpq_class width = est.upper().coeff() - est.lower().coeff();
        mpq_class c1 = qq(2, 1); // v_res/(d-1) in units of log 3
        mpq_class cap = 2 * c1 / mpq_class(two20);
        cap.canonicalize();
        crit.expect(width <= cap, "bracket width exceeds 2 C1 / 2^20");
        crit.expect(est.lower().coeff() <= -1 && -1 <= est.upper().coeff(),
                    "bracket misses -1");
    }
    for (long n = 0; n <= 20; ++n) {
        crit.expect(green_bracket_depth(f, point("1", "0"), n).partial_sum.is_zero(),
                    "nonzero partial sum at (1:0)");
        crit.expect(green_bracket_depth(f, point("1", "1"), n).partial_sum.is_zero(),
                    "nonzero partial sum at (1:1)");
    }
    CHECK(crit.ok);
}

TEST_CASE("criterion 3: functional equation suite") {
    Criterion crit(3, "g_n(fP) = d g_{n+1}(P) - d g(P) exactly, corpus x 100 points");
    const long depth = 8;
    for (const auto& entry : bundled_corpus()) {
        const long d = entry.map.degree();
        for (long i = 0; i < 100; ++i) {
            Rng rng(mix_seed(301, fnv1a(entry.name),
                             static_cast<std::uint64_t>(i)));
            ProjectivePoint P = random_point(rng, entry.map.context(), entry.map.dimension());
            ProjectivePoint fP = entry.map.apply(P);
            mpq_class lhs = green_partial(entry.map, fP, depth).coeff();
            mpq_class rhs = d * green_partial(entry.map, P, depth + 1).coeff() -
                            d * green_step(entry.map, P).coeff();
            crit.expect(lhs == rhs, "identity failed on " + entry.name);
        }
    }
    CHECK(crit.ok);
}

TEST_CASE("criterion 4: inequality suites over the corpus") {
    Criterion crit(4, "all invariant suites, 500 samples per map, 0 failures, < 60 s");
    const auto t0 = std::chrono::steady_clock::now();
    VerifyOptions opts;
    opts.seed = 7;
    opts.samples = 500;
    opts.threads = 4;
    opts.green_depth = 8;
    opts.nonexpansion_horizon = 10;
    opts.classify_horizon = 20;
    for (const auto& entry : bundled_corpus()) {
        VerifyReport report = run_verify(entry.map, opts);
        if (!report.ok())
            for (const auto& pr : report.properties)
                if (pr.failures > 0)
                    crit.expect(false, entry.name + "/" + pr.name + ": " + pr.first_failure);
        // the Gauss suite must have exercised at least 100 polynomials
        for (const auto& pr : report.properties)
            if (pr.name == "gauss-lipschitz")
                crit.expect(pr.samples_tested >= 100, "fewer than 100 Gauss samples");
    }
    const double elapsed = seconds_since(t0);
    crit.expect(elapsed < 60.0, "runtime exceeded 60 s");
    CHECK(crit.ok);
}

TEST_CASE("criterion 5: classification and Green vanishing agree") {
    Criterion crit(5, "OrbitalGood iff g_n = 0 for n <= 20; bad iterates force negativity");
    const long horizon = 20;
    for (const auto& entry : bundled_corpus()) {
        for (long i = 0; i < 200; ++i) {
            Rng rng(mix_seed(501, fnv1a(entry.name),
                             static_cast<std::uint64_t>(i)));
            ProjectivePoint P = random_point(rng, entry.map.context(), entry.map.dimension());
            OrbitClassification cls = classify_orbit(entry.map, P);
            auto ws = orbit_step_valuations(entry.map, P, horizon);
            const bool all_zero =
                std::all_of(ws.begin(), ws.end(), [](long w) { return w == 0; });
            crit.expect(cls.good() == all_zero,
                        "verdict and partial sums disagree on " + entry.name);
            if (!cls.good()) {
                crit.expect(cls.bad_iterate < horizon,
                            "bad iterate beyond the test horizon on " + entry.name);
                GreenEstimate est = green_bracket_depth(entry.map, P, cls.bad_iterate + 1);
                crit.expect(sgn(est.upper().coeff()) < 0,
                            "bracket not negative past the bad iterate on " + entry.name);
            }
        }
    }
    CHECK(crit.ok);
}

TEST_CASE("criterion 6: min bound lemma on random triples") {
    Criterion crit(6, "brute-force minimum <= closed-form bound on 1000 triples");
    Rng rng(mix_seed(601, 0, 0));
    for (int i = 0; i < 1000; ++i) {
        const double D = std::max(1e-6, double(rng.below(1000000)) / 1e6);
        const double a = 1.05 + double(rng.below(49000)) / 1000.0;
        const double b = 1.05 + double(rng.below(49000)) / 1000.0;
        MinBoundResult r = min_bound_lemma(D, a, b, 1024);
        crit.expect(r.holds, "lemma bound violated");
        crit.expect(r.min_value <= r.bound * (1.0 + 1e-9), "minimum exceeds the bound");
        const double oracle = oracles::brute_min(D, a, b, 1024);
        crit.expect(std::abs(oracle - r.min_value) <= 1e-9 * std::max(1.0, oracle),
                    "brute-force oracle disagrees");
    }
    CHECK(crit.ok);
}

TEST_CASE("criterion 7: verify reports are byte-identical across runs and thread counts") {
    Criterion crit(7, "fixed seed gives identical reports for threads 1 and 4");
    const std::string map_path = std::string(PADIC_GREENS_MAPS_DIR) + "/scaled_p3.json";
    const std::string base = "verify --map " + map_path + " --samples 60 --seed 7";
    int code1 = -1, code2 = -1, code4 = -1;
    const std::string run1 = run_cli(base + " --threads 1", code1, "t1a");
    const std::string run2 = run_cli(base + " --threads 1", code2, "t1b");
    const std::string run4 = run_cli(base + " --threads 4", code4, "t4");
    crit.expect(code1 == 0 && code2 == 0 && code4 == 0, "verify exited nonzero");
    crit.expect(!run1.empty(), "empty report");
    crit.expect(run1 == run2, "two identical runs differ");
    crit.expect(run1 == run4, "thread count changed the report");
    CHECK(crit.ok);
}
