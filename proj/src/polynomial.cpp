#include "padic/polynomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace padic {

Polynomial Polynomial::make(long nvars, std::vector<Term> terms, PrimeContext ctx) {
    if (nvars < 1) fail(Errc::parse_error, "a polynomial needs at least one variable");
    std::map<std::vector<unsigned>, mpq_class> merged;
    for (auto& t : terms) {
        if (static_cast<long>(t.exps.size()) != nvars)
            fail(Errc::parse_error, "exponent vector length does not match variable count");
        ensure_same_context(t.coeff.context(), ctx);
        merged[t.exps] += t.coeff.value();
    }
    std::vector<Term> out;
    out.reserve(merged.size());
    for (auto& [exps, coeff] : merged) {
        coeff.canonicalize();
        if (sgn(coeff) == 0) continue;
        out.push_back(Term{exps, PadicRational(coeff, ctx)});
    }
    return Polynomial(nvars, std::move(out), ctx);
}

long Polynomial::total_degree() const {
    long deg = -1;
    for (const auto& t : terms_) {
        long d = std::accumulate(t.exps.begin(), t.exps.end(), 0L);
        deg = std::max(deg, d);
    }
    return deg;
}

bool Polynomial::homogeneous_of_degree(long d) const {
    for (const auto& t : terms_)
        if (std::accumulate(t.exps.begin(), t.exps.end(), 0L) != d) return false;
    return true;
}

PadicRational Polynomial::evaluate(std::span<const PadicRational> x) const {
    if (static_cast<long>(x.size()) != nvars_)
        fail(Errc::dimension_mismatch, "evaluation point has wrong arity");
    mpq_class acc(0);
    for (const auto& t : terms_) {
        mpq_class prod = t.coeff.value();
        for (long i = 0; i < nvars_; ++i)
            for (unsigned e = 0; e < t.exps[static_cast<std::size_t>(i)]; ++e)
                prod *= x[static_cast<std::size_t>(i)].value();
        acc += prod;
    }
    return PadicRational(acc, ctx_);
}

Polynomial Polynomial::scaled(const PadicRational& c) const {
    ensure_same_context(c.context(), ctx_);
    std::vector<Term> out;
    out.reserve(terms_.size());
    if (!c.is_zero())
        for (const auto& t : terms_) out.push_back(Term{t.exps, t.coeff * c});
    return Polynomial(nvars_, std::move(out), ctx_);
}

Valuation Polynomial::gauss_norm_valuation() const {
    Valuation best = Valuation::infinite();
    for (const auto& t : terms_) {
        Valuation v = valuation(t.coeff);
        if (v < best) best = v;
    }
    return best;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_ || !(a.ctx_ == b.ctx_) || a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].exps != b.terms_[i].exps || !(a.terms_[i].coeff == b.terms_[i].coeff))
            return false;
    return true;
}

} // namespace padic
