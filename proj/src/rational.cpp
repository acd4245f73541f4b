#include "padic/rational.hpp"

#include <cctype>
#include <cmath>

namespace padic {

const char* errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::bad_prime: return "bad_prime";
        case Errc::zero_argument: return "zero_argument";
        case Errc::zero_vector: return "zero_vector";
        case Errc::dimension_mismatch: return "dimension_mismatch";
        case Errc::not_integral: return "not_integral";
        case Errc::pivot_not_unit: return "pivot_not_unit";
        case Errc::degree_mismatch: return "degree_mismatch";
        case Errc::not_a_morphism: return "not_a_morphism";
        case Errc::parse_error: return "parse_error";
        case Errc::bad_strategy: return "bad_strategy";
        case Errc::bad_range: return "bad_range";
        case Errc::internal: return "internal";
    }
    return "unknown";
}

namespace {

constexpr long kMaxPrime = 1000000;

bool is_prime(long p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (long q = 3; q * q <= p; q += 2)
        if (p % q == 0) return false;
    return true;
}

} // namespace

PrimeContext::PrimeContext(long p) : p_(p) {
    if (p < 2 || p > kMaxPrime)
        fail(Errc::bad_prime, "p must lie in [2, 10^6], got " + std::to_string(p));
    if (!is_prime(p)) fail(Errc::bad_prime, std::to_string(p) + " is not prime");
}

void ensure_same_context(PrimeContext a, PrimeContext b) {
    if (!(a == b))
        throw std::logic_error("prime context mismatch: p=" + std::to_string(a.prime()) +
                               " vs p=" + std::to_string(b.prime()));
}

const mpq_class& Valuation::finite() const {
    if (infinite_) throw std::logic_error("infinite valuation has no finite value");
    return value_;
}

long Valuation::finite_long() const {
    const mpq_class& q = finite();
    if (q.get_den() != 1 || !q.get_num().fits_slong_p())
        throw std::logic_error("valuation is not a machine integer: " + q.get_str());
    return q.get_num().get_si();
}

std::string Valuation::str() const { return infinite_ ? "inf" : value_.get_str(); }

bool operator==(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
    return a.value_ == b.value_;
}

bool operator<(const Valuation& a, const Valuation& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return Valuation::infinite();
    return Valuation::of(mpq_class(a.value_ + b.value_));
}

PadicRational::PadicRational(mpq_class value, PrimeContext ctx)
    : value_(std::move(value)), ctx_(ctx) {
    value_.canonicalize();
}

PadicRational::PadicRational(long value, PrimeContext ctx) : value_(value), ctx_(ctx) {}

PadicRational PadicRational::from_string(const std::string& s, PrimeContext ctx) {
    return PadicRational(parse_rational(s), ctx);
}

PadicRational PadicRational::operator-() const { return PadicRational(mpq_class(-value_), ctx_); }

PadicRational operator+(const PadicRational& a, const PadicRational& b) {
    ensure_same_context(a.ctx_, b.ctx_);
    return PadicRational(mpq_class(a.value_ + b.value_), a.ctx_);
}

PadicRational operator-(const PadicRational& a, const PadicRational& b) {
    ensure_same_context(a.ctx_, b.ctx_);
    return PadicRational(mpq_class(a.value_ - b.value_), a.ctx_);
}

PadicRational operator*(const PadicRational& a, const PadicRational& b) {
    ensure_same_context(a.ctx_, b.ctx_);
    return PadicRational(mpq_class(a.value_ * b.value_), a.ctx_);
}

PadicRational operator/(const PadicRational& a, const PadicRational& b) {
    ensure_same_context(a.ctx_, b.ctx_);
    if (b.is_zero()) fail(Errc::zero_argument, "division by zero");
    return PadicRational(mpq_class(a.value_ / b.value_), a.ctx_);
}

bool operator==(const PadicRational& a, const PadicRational& b) {
    return a.ctx_ == b.ctx_ && a.value_ == b.value_;
}

LogValue::LogValue(mpq_class coeff, PrimeContext ctx) : coeff_(std::move(coeff)), ctx_(ctx) {
    coeff_.canonicalize();
}

double LogValue::approx() const { return coeff_.get_d() * std::log(double(ctx_.prime())); }

LogValue operator+(const LogValue& a, const LogValue& b) {
    ensure_same_context(a.ctx_, b.ctx_);
    return LogValue(mpq_class(a.coeff_ + b.coeff_), a.ctx_);
}

LogValue operator-(const LogValue& a, const LogValue& b) {
    ensure_same_context(a.ctx_, b.ctx_);
    return LogValue(mpq_class(a.coeff_ - b.coeff_), a.ctx_);
}

bool operator==(const LogValue& a, const LogValue& b) {
    return a.ctx_ == b.ctx_ && a.coeff_ == b.coeff_;
}

bool operator<(const LogValue& a, const LogValue& b) {
    ensure_same_context(a.ctx_, b.ctx_);
    return a.coeff_ < b.coeff_;
}

long valuation_of_mpz(const mpz_class& n, long p) {
    if (sgn(n) == 0) throw std::logic_error("valuation_of_mpz on zero");
    mpz_class rest;
    mpz_class prime(p);
    return long(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

mpz_class pow_of(long base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

Valuation valuation(const PadicRational& x) {
    if (x.is_zero()) return Valuation::infinite();
    const long p = x.context().prime();
    // Reduced fraction: at most one of numerator, denominator carries p.
    return Valuation::of(valuation_of_mpz(x.value().get_num(), p) -
                         valuation_of_mpz(x.value().get_den(), p));
}

LogValue abs_log(const PadicRational& x) {
    if (x.is_zero()) fail(Errc::zero_argument, "log|0| is undefined");
    return LogValue(mpq_class(-valuation(x).finite()), x.context());
}

Valuation sup_norm_valuation(std::span<const PadicRational> xs) {
    if (xs.empty()) fail(Errc::zero_vector, "sup norm of an empty vector");
    Valuation best = Valuation::infinite();
    for (const auto& x : xs) {
        Valuation v = valuation(x);
        if (v < best) best = v;
    }
    return best;
}

NormalizedLift normalize_lift(std::span<const PadicRational> xs) {
    Valuation m = sup_norm_valuation(xs);
    if (m.is_infinite()) fail(Errc::zero_vector, "cannot normalize the zero vector");
    const long e = m.finite_long();
    const PrimeContext ctx = xs.front().context();
    mpq_class scale;
    if (e >= 0) {
        scale = mpq_class(1, pow_of(ctx.prime(), static_cast<unsigned long>(e)));
        scale.canonicalize();
    } else {
        scale = mpq_class(pow_of(ctx.prime(), static_cast<unsigned long>(-e)));
    }
    NormalizedLift out;
    out.coords.reserve(xs.size());
    for (const auto& x : xs) out.coords.emplace_back(mpq_class(x.value() * scale), ctx);
    out.scaling_exponent = e;
    return out;
}

mpq_class parse_rational(const std::string& s) {
    // Strict form: -?digits(/digits)? with no whitespace.
    auto bad = [&]() -> mpq_class { fail(Errc::parse_error, "malformed rational '" + s + "'"); };
    if (s.empty()) return bad();
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return bad();
    bool seen_slash = false;
    std::size_t digits_before = 0, digits_after = 0;
    for (; i < s.size(); ++i) {
        if (s[i] == '/') {
            if (seen_slash) return bad();
            seen_slash = true;
        } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            (seen_slash ? digits_after : digits_before)++;
        } else {
            return bad();
        }
    }
    if (digits_before == 0 || (seen_slash && digits_after == 0)) return bad();
    mpq_class q;
    if (q.set_str(s, 10) != 0) return bad();
    if (sgn(q.get_den()) == 0) return bad();
    q.canonicalize();
    return q;
}

std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

} // namespace padic
