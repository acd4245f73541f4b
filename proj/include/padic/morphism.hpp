#pragma once

// Homogeneous polynomial self-maps of A^{N+1}: validation, minimal lifts,
// cached resultant valuation, exact evaluation, and residue-field reduction.

#include <optional>
#include <span>
#include <vector>

#include "padic/polynomial.hpp"
#include "padic/projective.hpp"

namespace padic {

class HomogeneousMap {
public:
    // Validates degrees, computes the minimal lift, and eagerly computes the
    // resultant valuation (rejecting non-morphisms).
    static HomogeneousMap from_forms(PrimeContext ctx, long degree, std::vector<Polynomial> forms);

    long dimension() const noexcept { return static_cast<long>(forms_.size()) - 1; }
    long degree() const noexcept { return degree_; }
    PrimeContext context() const noexcept { return ctx_; }

    std::span<const Polynomial> forms() const noexcept { return forms_; }
    std::span<const Polynomial> minimal_forms() const noexcept { return minimal_forms_; }
    // Original forms = p^exponent * minimal forms.
    long minimal_lift_exponent() const noexcept { return minimal_exponent_; }
    // v_p(Res) of the minimal lift; always >= 0 and finite.
    long resultant_valuation() const noexcept { return resultant_valuation_; }

    std::vector<PadicRational> evaluate(std::span<const PadicRational> x) const;
    std::vector<PadicRational> evaluate_minimal(std::span<const PadicRational> x) const;

    // Integer route for orbit iteration: the minimal lift scaled by the lcm of
    // its coefficient denominators (a p-unit, so valuations and the induced
    // projective map are unchanged), evaluated with plain integer arithmetic.
    std::vector<mpz_class> evaluate_minimal_integer(const std::vector<mpz_class>& x) const;

    // The induced self-map of P^N, computed through the minimal lift.
    ProjectivePoint apply(const ProjectivePoint& P) const;

private:
    HomogeneousMap(PrimeContext ctx, long degree) : ctx_(ctx), degree_(degree) {}

    struct IntegerTerm {
        std::vector<unsigned> exps;
        mpz_class coeff;
    };

    PrimeContext ctx_;
    long degree_;
    std::vector<Polynomial> forms_;
    std::vector<Polynomial> minimal_forms_;
    std::vector<std::vector<IntegerTerm>> integer_minimal_forms_;
    long minimal_exponent_ = 0;
    long resultant_valuation_ = 0;
};

// Clears lift denominators (a p-unit factor for normalized lifts, so the
// normalization invariant survives).
std::vector<mpz_class> integer_lift(std::span<const PadicRational> x);

// Divides out the minimal p-power and wraps the result as a normalized point.
ProjectivePoint point_from_integer_lift(std::vector<mpz_class> coords, PrimeContext ctx,
                                        long* step_valuation = nullptr);

// A point of P^N(F_p); coordinates reduce a normalized lift, so the vector is
// nonzero. canonical() rescales the first nonzero coordinate to 1.
struct ResiduePoint {
    long p;
    std::vector<long> coords;

    ResiduePoint canonical() const;
    friend bool operator==(const ResiduePoint&, const ResiduePoint&) = default;
};

struct ResidueForm {
    std::vector<std::pair<std::vector<unsigned>, long>> terms; // nonzero coefficients mod p
};

struct ResidueMap {
    long p;
    long degree;
    std::vector<ResidueForm> forms;

    // Evaluates coordinatewise over F_p; empty when the image vector vanishes,
    // i.e. the reduced map is undefined at the point.
    std::optional<ResiduePoint> apply(const ResiduePoint& pt) const;
};

ResiduePoint reduce_point(const ProjectivePoint& P);
ResidueMap reduce_map(const HomogeneousMap& f); // reduces the minimal lift

// F_p helpers.
long mod_p(const mpq_class& q, long p); // requires q integral at p
long inverse_mod_p(long a, long p);

} // namespace padic
