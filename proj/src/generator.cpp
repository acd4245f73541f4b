#include "padic/generator.hpp"

namespace padic {

namespace {

constexpr long kNumBound = 10000;

mpq_class power_of_p(long p, long e) {
    if (e >= 0) return mpq_class(pow_of(p, static_cast<unsigned long>(e)));
    mpq_class q(1, pow_of(p, static_cast<unsigned long>(-e)));
    q.canonicalize();
    return q;
}

} // namespace

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
    Rng r(base ^ (stream * 0x9e3779b97f4a7c15ull) ^ (index * 0xd1b54a32d192ed03ull));
    std::uint64_t s = r.next();
    return s ^ r.next();
}

PadicRational random_rational(Rng& rng, PrimeContext ctx) {
    const long num = rng.range(-kNumBound, kNumBound);
    const long den = rng.range(1, kNumBound);
    mpq_class q(num, den);
    q.canonicalize();
    return PadicRational(q, ctx);
}

PadicRational random_integral_rational(Rng& rng, PrimeContext ctx) {
    const long p = ctx.prime();
    const long num = rng.range(-kNumBound, kNumBound);
    long den = rng.range(1, kNumBound);
    while (den % p == 0) den = rng.range(1, kNumBound);
    mpq_class q(num, den);
    q.canonicalize();
    return PadicRational(q, ctx);
}

PadicRational random_unit_rational(Rng& rng, PrimeContext ctx) {
    const long p = ctx.prime();
    long num = rng.range(1, kNumBound);
    while (num % p == 0) num = rng.range(1, kNumBound);
    if (rng.chance(1, 2)) num = -num;
    long den = rng.range(1, kNumBound);
    while (den % p == 0) den = rng.range(1, kNumBound);
    mpq_class q(num, den);
    q.canonicalize();
    return PadicRational(q, ctx);
}

std::vector<PadicRational> random_polydisk_vector(Rng& rng, PrimeContext ctx, long n) {
    std::vector<PadicRational> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) out.push_back(random_integral_rational(rng, ctx));
    return out;
}

std::vector<ProjectivePoint> boundary_points(PrimeContext ctx, long N) {
    std::vector<ProjectivePoint> out;
    for (long i = 0; i <= N; ++i) {
        std::vector<PadicRational> coords(static_cast<std::size_t>(N + 1),
                                          PadicRational(0, ctx));
        coords[static_cast<std::size_t>(i)] = PadicRational(1, ctx);
        out.push_back(ProjectivePoint::make(std::move(coords)));
    }
    return out;
}

ProjectivePoint random_point(Rng& rng, PrimeContext ctx, long N) {
    const std::uint64_t roll = rng.below(8);
    if (roll == 0) {
        auto pts = boundary_points(ctx, N);
        return pts[rng.below(pts.size())];
    }
    if (roll <= 2) {
        // Raw lift with a valuation pattern, covering residue classes the
        // affine chart misses; a unit coordinate keeps it normalizable.
        std::vector<PadicRational> coords;
        coords.reserve(static_cast<std::size_t>(N + 1));
        const std::size_t unit_at = static_cast<std::size_t>(rng.below(
            static_cast<std::uint64_t>(N + 1)));
        for (long i = 0; i <= N; ++i) {
            if (static_cast<std::size_t>(i) == unit_at) {
                coords.push_back(random_unit_rational(rng, ctx));
                continue;
            }
            if (rng.chance(1, 6)) {
                coords.emplace_back(0, ctx);
                continue;
            }
            const long e = rng.range(0, 2);
            PadicRational u = random_unit_rational(rng, ctx);
            coords.push_back(PadicRational(mpq_class(u.value() * power_of_p(ctx.prime(), e)),
                                           ctx));
        }
        return ProjectivePoint::make(std::move(coords));
    }
    auto a = random_polydisk_vector(rng, ctx, N);
    return affine_embed(a);
}

NearPair near_pair(Rng& rng, PrimeContext ctx, long N, long w) {
    if (w < 0) fail(Errc::bad_strategy, "near-pair distance exponent must be nonnegative");
    auto a = random_polydisk_vector(rng, ctx, N);
    auto b = a;
    const std::size_t j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(N)));
    PadicRational u = random_unit_rational(rng, ctx);
    b[j] = b[j] + PadicRational(mpq_class(u.value() * power_of_p(ctx.prime(), w)), ctx);
    NearPair out{affine_embed(a), affine_embed(b), w};
    ChordalDistance got = chordal_distance(out.first, out.second);
    if (got.is_zero() || got.w() != w)
        fail(Errc::internal, "near-pair generator produced the wrong distance");
    return out;
}

ProjectivePoint perturb_point(Rng& rng, const ProjectivePoint& P, long w) {
    std::vector<PadicRational> coords(P.lift().begin(), P.lift().end());
    const std::size_t j = static_cast<std::size_t>(rng.below(coords.size()));
    PadicRational u = random_unit_rational(rng, P.context());
    coords[j] = coords[j] +
                PadicRational(mpq_class(u.value() * power_of_p(P.context().prime(), w)),
                              P.context());
    return ProjectivePoint::make(std::move(coords));
}

Polynomial random_integral_polynomial(Rng& rng, PrimeContext ctx, long nvars, long max_degree) {
    const long nterms = rng.range(1, 6);
    std::vector<Term> terms;
    for (long t = 0; t < nterms; ++t) {
        std::vector<unsigned> exps;
        long budget = rng.range(0, max_degree);
        for (long i = 0; i < nvars; ++i) {
            const long e = rng.range(0, budget);
            exps.push_back(static_cast<unsigned>(e));
            budget -= e;
        }
        long c = rng.range(-100, 100);
        if (rng.chance(1, 4)) c *= ctx.prime();
        terms.push_back(Term{std::move(exps), PadicRational(c, ctx)});
    }
    return Polynomial::make(nvars, std::move(terms), ctx);
}

std::vector<Polynomial> random_binary_forms(Rng& rng, PrimeContext ctx, long d, long bound) {
    std::vector<Polynomial> out;
    for (int which = 0; which < 2; ++which) {
        std::vector<Term> terms;
        for (long e = 0; e <= d; ++e) {
            const long c = rng.range(-bound, bound);
            if (c == 0) continue;
            terms.push_back(Term{{static_cast<unsigned>(e), static_cast<unsigned>(d - e)},
                                 PadicRational(c, ctx)});
        }
        out.push_back(Polynomial::make(2, std::move(terms), ctx));
    }
    return out;
}

} // namespace padic
