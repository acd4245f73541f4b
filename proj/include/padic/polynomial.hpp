#pragma once

// Sparse multivariate polynomials with exact rational coefficients. Used both
// for the homogeneous coordinate forms of a map and for affine polynomials on
// the closed unit polydisk.

#include <span>
#include <vector>

#include "padic/rational.hpp"

namespace padic {

struct Term {
    std::vector<unsigned> exps;
    PadicRational coeff;
};

class Polynomial {
public:
    // Merges duplicate exponent vectors, drops zero coefficients, sorts terms.
    static Polynomial make(long nvars, std::vector<Term> terms, PrimeContext ctx);

    long nvars() const noexcept { return nvars_; }
    PrimeContext context() const noexcept { return ctx_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::span<const Term> terms() const noexcept { return terms_; }

    long total_degree() const; // -1 for the zero polynomial
    bool homogeneous_of_degree(long d) const;

    PadicRational evaluate(std::span<const PadicRational> x) const;
    Polynomial scaled(const PadicRational& c) const;

    // min over coefficient valuations, so the Gauss norm on the closed unit
    // polydisk is p^(-result); infinite for the zero polynomial.
    Valuation gauss_norm_valuation() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);

private:
    Polynomial(long nvars, std::vector<Term> terms, PrimeContext ctx)
        : nvars_(nvars), terms_(std::move(terms)), ctx_(ctx) {}

    long nvars_;
    std::vector<Term> terms_;
    PrimeContext ctx_;
};

} // namespace padic
