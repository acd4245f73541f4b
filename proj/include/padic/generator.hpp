#pragma once

// Seeded deterministic generators for the property harness and tests: integral
// rational scalars with numerators/denominators up to 10^4, projective points
// across all residue classes, boundary points, and pairs at exact chordal
// distance p^-w.

#include <cstdint>
#include <vector>

#include "padic/polynomial.hpp"
#include "padic/projective.hpp"

namespace padic {

// splitmix64; fully specified so streams are reproducible everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(unsigned num, unsigned den) { return below(den) < num; }

private:
    std::uint64_t state_;
};

// Stable derivation of per-(stream, index) seeds from a base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

// Arbitrary rational: numerator in [-10^4, 10^4], denominator in [1, 10^4].
PadicRational random_rational(Rng& rng, PrimeContext ctx);
// Integral at p: denominator coprime to p.
PadicRational random_integral_rational(Rng& rng, PrimeContext ctx);
// Valuation exactly zero.
PadicRational random_unit_rational(Rng& rng, PrimeContext ctx);

std::vector<PadicRational> random_polydisk_vector(Rng& rng, PrimeContext ctx, long n);

// Mixed strategy: affine-chart points, raw lifts covering all residue classes,
// and the boundary points (1:0:...), ..., (0:...:1).
ProjectivePoint random_point(Rng& rng, PrimeContext ctx, long N);

std::vector<ProjectivePoint> boundary_points(PrimeContext ctx, long N);

struct NearPair {
    ProjectivePoint first;
    ProjectivePoint second;
    long w;
};

// A pair at chordal distance exactly p^-w, built through the affine isometry
// by perturbing one coordinate by a unit times p^w. Self-checked.
NearPair near_pair(Rng& rng, PrimeContext ctx, long N, long w);

// Perturbs one lift coordinate of P by a unit times p^w; the result lies in
// the closed disk of radius p^-w around P (exact distance when another
// coordinate of the lift is a unit).
ProjectivePoint perturb_point(Rng& rng, const ProjectivePoint& P, long w);

// Affine polynomial with integral coefficients, for Gauss-norm tests.
Polynomial random_integral_polynomial(Rng& rng, PrimeContext ctx, long nvars, long max_degree);

// Dense pair of binary degree-d forms with integer coefficients in
// [-bound, bound]; no morphism check.
std::vector<Polynomial> random_binary_forms(Rng& rng, PrimeContext ctx, long d, long bound);

} // namespace padic
