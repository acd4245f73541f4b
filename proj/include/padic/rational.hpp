#pragma once

// Exact rational scalars with a fixed prime context, their p-adic valuations,
// and exact logarithmic quantities stored as rational multiples of log p.

#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padic/error.hpp"

namespace padic {

// The prime p fixing the absolute value |x| = p^{-v_p(x)}.
// Primality is checked at construction; the supported range is 2 <= p <= 10^6.
class PrimeContext {
public:
    explicit PrimeContext(long p);

    long prime() const noexcept { return p_; }

    friend bool operator==(const PrimeContext&, const PrimeContext&) = default;

private:
    long p_;
};

// Valuation of a scalar: an exact rational, or infinite (the zero element).
// Valuations of field elements are always integers; non-integer values appear
// only in derived quantities.
class Valuation {
public:
    static Valuation infinite() { return Valuation(true, 0); }
    static Valuation of(long v) { return Valuation(false, mpq_class(v)); }
    static Valuation of(mpq_class v) { return Valuation(false, std::move(v)); }

    bool is_infinite() const noexcept { return infinite_; }
    bool is_finite() const noexcept { return !infinite_; }

    const mpq_class& finite() const;
    long finite_long() const; // requires a finite integer value

    std::string str() const;

    // Infinite compares greater than every finite valuation.
    friend bool operator==(const Valuation& a, const Valuation& b);
    friend bool operator<(const Valuation& a, const Valuation& b);
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }

    friend Valuation operator+(const Valuation& a, const Valuation& b);

private:
    Valuation(bool inf, mpq_class v) : infinite_(inf), value_(std::move(v)) {}

    bool infinite_;
    mpq_class value_;
};

// An exact rational with a prime context. Always stored reduced with a
// positive denominator.
class PadicRational {
public:
    PadicRational(mpq_class value, PrimeContext ctx);
    PadicRational(long value, PrimeContext ctx);

    static PadicRational from_string(const std::string& s, PrimeContext ctx);

    const mpq_class& value() const noexcept { return value_; }
    PrimeContext context() const noexcept { return ctx_; }
    bool is_zero() const noexcept { return sgn(value_) == 0; }

    PadicRational operator-() const;
    friend PadicRational operator+(const PadicRational& a, const PadicRational& b);
    friend PadicRational operator-(const PadicRational& a, const PadicRational& b);
    friend PadicRational operator*(const PadicRational& a, const PadicRational& b);
    friend PadicRational operator/(const PadicRational& a, const PadicRational& b);
    friend bool operator==(const PadicRational& a, const PadicRational& b);

private:
    mpq_class value_;
    PrimeContext ctx_;
};

// A real number coeff * log(p), with exact rational coeff.
class LogValue {
public:
    LogValue(mpq_class coeff, PrimeContext ctx);
    static LogValue zero(PrimeContext ctx) { return LogValue(mpq_class(0), ctx); }

    const mpq_class& coeff() const noexcept { return coeff_; }
    PrimeContext context() const noexcept { return ctx_; }
    double approx() const;

    bool is_zero() const noexcept { return sgn(coeff_) == 0; }

    LogValue operator-() const { return LogValue(-coeff_, ctx_); }
    LogValue scaled(const mpq_class& c) const { return LogValue(coeff_ * c, ctx_); }
    friend LogValue operator+(const LogValue& a, const LogValue& b);
    friend LogValue operator-(const LogValue& a, const LogValue& b);
    friend bool operator==(const LogValue& a, const LogValue& b);
    friend bool operator<(const LogValue& a, const LogValue& b);
    friend bool operator>(const LogValue& a, const LogValue& b) { return b < a; }
    friend bool operator<=(const LogValue& a, const LogValue& b) { return !(b < a); }
    friend bool operator>=(const LogValue& a, const LogValue& b) { return !(a < b); }

private:
    mpq_class coeff_;
    PrimeContext ctx_;
};

// v_p(x); infinite for x = 0.
Valuation valuation(const PadicRational& x);

// log|x| = -v_p(x) * log p. Rejects x = 0.
LogValue abs_log(const PadicRational& x);

// min_i v_p(x_i), so that sup norm = p^(-result); infinite iff all entries vanish.
Valuation sup_norm_valuation(std::span<const PadicRational> xs);

struct NormalizedLift {
    std::vector<PadicRational> coords; // sup-norm valuation 0
    long scaling_exponent;             // input = p^scaling_exponent * coords
};

// Scales a nonzero vector by a power of p so its sup-norm valuation is 0.
NormalizedLift normalize_lift(std::span<const PadicRational> xs);

// Low-level helpers shared across modules.
long valuation_of_mpz(const mpz_class& n, long p); // n != 0
mpz_class pow_of(long base, unsigned long e);
mpq_class parse_rational(const std::string& s); // "a/b" or "a"
std::string rational_str(const mpq_class& q);
void ensure_same_context(PrimeContext a, PrimeContext b);

} // namespace padic
