#pragma once

// Green-function machinery for morphisms of P^N over Q_p: one-step defects,
// exact partial sums with certified tail brackets, reduction classification of
// orbits, Fatou certificates, and the explicit continuity constants.

#include <optional>
#include <vector>

#include "padic/morphism.hpp"

namespace padic {

inline constexpr long kDefaultGreenDepth = 20;

// g(P) = (1/d) log||F(x)|| for the minimal lift F and a normalized lift x.
// Always lies in [-(v_res/d) log p, 0].
LogValue green_step(const HomogeneousMap& f, const ProjectivePoint& P);

// Partial sum sum_{k<n} d^{-k} g(f^k P); exact rational multiple of log p with
// denominator dividing d^n.
LogValue green_partial(const HomogeneousMap& f, const ProjectivePoint& P, long n);

// A certified bracket around the limit value: every omitted series term is
// nonpositive, so [partial_sum - tail_bound, partial_sum] contains the limit.
struct GreenEstimate {
    LogValue partial_sum; // upper end
    LogValue tail_bound;  // C1 / d^n with C1 = (v_res/(d-1)) log p
    long n_used;

    LogValue lower() const { return partial_sum - tail_bound; }
    const LogValue& upper() const { return partial_sum; }
};

GreenEstimate green_bracket_depth(const HomogeneousMap& f, const ProjectivePoint& P, long n);

// Least depth n with C1/d^n <= tol; 0 when the map has unit resultant.
long green_depth_for_tolerance(const HomogeneousMap& f, const LogValue& tol);

// Chooses the least depth with tail bound <= tol; exact 0 at depth 0 when the
// map has unit resultant.
GreenEstimate green_bracket(const HomogeneousMap& f, const ProjectivePoint& P,
                            const LogValue& tol);

// Bracket for the homogeneous Green value at a nonzero (not necessarily
// normalized) vector x, using the map exactly as given: the point bracket is
// shifted by log||x|| and by the lift scaling of f.
GreenEstimate green_homogeneous_depth(const HomogeneousMap& f,
                                      std::span<const PadicRational> x, long n);
GreenEstimate green_homogeneous(const HomogeneousMap& f, std::span<const PadicRational> x,
                                const LogValue& tol);

// ||F(x)|| = 1 for the minimal lift at a normalized lift; equivalent to g = 0.
bool good_reduction_at(const HomogeneousMap& f, const ProjectivePoint& P);

struct OrbitClassification {
    enum class Kind { orbital_good, bad_at_iterate };

    Kind kind;
    long preperiod = 0;   // orbital_good: index where the residue cycle starts
    long period = 0;      // orbital_good: residue cycle length
    long bad_iterate = 0; // bad_at_iterate: least n with the reduced map undefined at f^n(P)

    bool good() const noexcept { return kind == Kind::orbital_good; }
};

// Iterates the reduced point under the reduced map over F_p until the orbit
// closes (orbital good reduction) or the reduced map is undefined (bad).
OrbitClassification classify_orbit(const HomogeneousMap& f, const ProjectivePoint& P);

struct FatouCertificate {
    bool certified;
    long nonexpanding_radius_valuation; // certified: iterates nonexpanding on this disk
    OrbitClassification via;
    std::optional<GreenEstimate> evidence; // uncertified: bracket at the bad orbit
};

FatouCertificate certify_fatou(const HomogeneousMap& f, const ProjectivePoint& P);

// log of the chordal Lipschitz constant |Res|^{-2}, i.e. 2 v_res log p.
LogValue lipschitz_constant(const HomogeneousMap& f);

// g is constant on pairs strictly closer than p^{-result}.
long local_constancy_radius(const HomogeneousMap& f);

struct HolderConstants {
    mpz_class u;            // max{2d, p^{2 v_res}}
    bool from_degree;       // true when u = 2d
    long two_d;
    long res_exponent;      // 2 v_res
    double coefficient;     // 2 u log(u) / d
    double holder_exponent; // log d / log u, in (0, 1]
};

HolderConstants holder_constants(const HomogeneousMap& f);

// Brute-forced min_k { D a^k + b^{-k} } over 1 <= k <= k_max against the
// closed-form bound 2a D^{log b / log ab}.
struct MinBoundResult {
    double min_value;
    long argmin_k;
    double bound;
    bool holds;
};

MinBoundResult min_bound_lemma(double D, double a, double b, long k_max);

// The step-valuation sequence w_k of the renormalized minimal-lift orbit:
// f^k(P) has ||F(x_k)|| = p^{-w_k}. Production route; works in Z/p^M with
// M = (n+1) v_res + 1, which determines every w_k exactly because
// 0 <= w_k <= v_res at each step.
std::vector<long> orbit_step_valuations(const HomogeneousMap& f, const ProjectivePoint& P, long n);

// Exact-rational route: the renormalized iterates themselves plus the same
// step valuations. Coordinate bit-size grows like d^n, so depth is limited in
// practice (n <= ~30 at d = 2 for small inputs).
struct OrbitSegment {
    std::vector<ProjectivePoint> points; // n+1 entries, points[0] = P
    std::vector<long> step_valuations;   // n entries
};

OrbitSegment iterate_orbit(const HomogeneousMap& f, const ProjectivePoint& P, long n);

} // namespace padic
