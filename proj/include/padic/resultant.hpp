#pragma once

// Exact resultants of square systems of homogeneous forms. The Macaulay
// construction handles any dimension; the Sylvester determinant is kept as an
// independent route for binary forms.

#include <span>
#include <vector>

#include <gmpxx.h>

#include "padic/polynomial.hpp"

namespace padic {

// Exact determinant by fraction-free (Bareiss) elimination. Empty matrix has
// determinant 1.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m);

// v_p of the Macaulay resultant of N+1 degree-d forms in N+1 variables, taken
// as given (no minimal-lift normalization). Throws not_a_morphism when the
// resultant vanishes.
long macaulay_resultant_valuation(std::span<const Polynomial> forms, long d, long p);

// v_p of the Sylvester resultant of two binary degree-d forms, as given.
long sylvester_resultant_valuation(const Polynomial& f0, const Polynomial& f1, long d, long p);

} // namespace padic
