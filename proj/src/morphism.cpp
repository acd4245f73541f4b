#include "padic/morphism.hpp"

#include "padic/resultant.hpp"

namespace padic {

HomogeneousMap HomogeneousMap::from_forms(PrimeContext ctx, long degree,
                                          std::vector<Polynomial> forms) {
    if (degree < 2) fail(Errc::parse_error, "the map degree must be at least 2");
    if (forms.size() < 2) fail(Errc::parse_error, "need at least two coordinate forms (N >= 1)");
    const long nv = static_cast<long>(forms.size());
    for (const auto& f : forms) {
        ensure_same_context(f.context(), ctx);
        if (f.nvars() != nv)
            fail(Errc::parse_error, "coordinate forms must use exactly N+1 variables");
        if (!f.homogeneous_of_degree(degree))
            fail(Errc::degree_mismatch, "a monomial has total degree different from d");
    }

    HomogeneousMap out(ctx, degree);
    out.forms_ = std::move(forms);

    Valuation least = Valuation::infinite();
    for (const auto& f : out.forms_) {
        Valuation v = f.gauss_norm_valuation();
        if (v < least) least = v;
    }
    if (least.is_infinite()) fail(Errc::not_a_morphism, "the zero map is not a morphism");
    out.minimal_exponent_ = least.finite_long();

    const long e = out.minimal_exponent_;
    mpq_class scale;
    if (e >= 0) {
        scale = mpq_class(1, pow_of(ctx.prime(), static_cast<unsigned long>(e)));
        scale.canonicalize();
    } else {
        scale = mpq_class(pow_of(ctx.prime(), static_cast<unsigned long>(-e)));
    }
    const PadicRational factor(scale, ctx);
    out.minimal_forms_.reserve(out.forms_.size());
    for (const auto& f : out.forms_) out.minimal_forms_.push_back(f.scaled(factor));

    mpz_class lcm(1);
    for (const auto& form : out.minimal_forms_)
        for (const auto& t : form.terms())
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coeff.value().get_den().get_mpz_t());
    for (const auto& form : out.minimal_forms_) {
        std::vector<IntegerTerm> its;
        for (const auto& t : form.terms())
            its.push_back(IntegerTerm{
                t.exps, mpz_class(t.coeff.value().get_num() * (lcm / t.coeff.value().get_den()))});
        out.integer_minimal_forms_.push_back(std::move(its));
    }

    out.resultant_valuation_ =
        macaulay_resultant_valuation(out.minimal_forms_, degree, ctx.prime());
    if (out.resultant_valuation_ < 0)
        fail(Errc::internal, "integral forms produced a resultant of negative valuation");
    return out;
}

std::vector<PadicRational> HomogeneousMap::evaluate(std::span<const PadicRational> x) const {
    std::vector<PadicRational> out;
    out.reserve(forms_.size());
    for (const auto& f : forms_) out.push_back(f.evaluate(x));
    return out;
}

std::vector<PadicRational> HomogeneousMap::evaluate_minimal(
    std::span<const PadicRational> x) const {
    std::vector<PadicRational> out;
    out.reserve(minimal_forms_.size());
    for (const auto& f : minimal_forms_) out.push_back(f.evaluate(x));
    return out;
}

std::vector<mpz_class> HomogeneousMap::evaluate_minimal_integer(
    const std::vector<mpz_class>& x) const {
    std::vector<mpz_class> out;
    out.reserve(integer_minimal_forms_.size());
    for (const auto& form : integer_minimal_forms_) {
        mpz_class acc(0);
        for (const auto& t : form) {
            mpz_class prod = t.coeff;
            for (std::size_t i = 0; i < t.exps.size(); ++i)
                for (unsigned e = 0; e < t.exps[i]; ++e) prod *= x[i];
            acc += prod;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

ProjectivePoint HomogeneousMap::apply(const ProjectivePoint& P) const {
    if (P.dimension() != dimension())
        fail(Errc::dimension_mismatch, "point dimension does not match the map");
    ensure_same_context(P.context(), ctx_);
    return point_from_integer_lift(evaluate_minimal_integer(integer_lift(P.lift())), ctx_);
}

std::vector<mpz_class> integer_lift(std::span<const PadicRational> x) {
    mpz_class lcm(1);
    for (const auto& c : x)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.value().get_den().get_mpz_t());
    std::vector<mpz_class> out;
    out.reserve(x.size());
    for (const auto& c : x) out.emplace_back(c.value().get_num() * (lcm / c.value().get_den()));
    return out;
}

ProjectivePoint point_from_integer_lift(std::vector<mpz_class> coords, PrimeContext ctx,
                                        long* step_valuation) {
    const mpz_class prime(ctx.prime());
    long w = -1;
    for (const auto& c : coords) {
        if (sgn(c) == 0) continue;
        mpz_class rest;
        const long v =
            static_cast<long>(mpz_remove(rest.get_mpz_t(), c.get_mpz_t(), prime.get_mpz_t()));
        if (w < 0 || v < w) w = v;
        if (w == 0) break;
    }
    if (w < 0) fail(Errc::zero_vector, "cannot normalize the zero vector");
    if (w > 0) {
        const mpz_class pw = pow_of(ctx.prime(), static_cast<unsigned long>(w));
        for (auto& c : coords) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pw.get_mpz_t());
    }
    if (step_valuation) *step_valuation = w;
    std::vector<PadicRational> out;
    out.reserve(coords.size());
    for (auto& c : coords) out.emplace_back(mpq_class(std::move(c)), ctx);
    return internal_point_from_normalized(std::move(out));
}

ResiduePoint ResiduePoint::canonical() const {
    ResiduePoint out{p, coords};
    for (long c : out.coords)
        if (c != 0) {
            const long inv = inverse_mod_p(c, p);
            for (auto& x : out.coords) x = (x * inv) % p;
            break;
        }
    return out;
}

std::optional<ResiduePoint> ResidueMap::apply(const ResiduePoint& pt) const {
    std::vector<long> out;
    out.reserve(forms.size());
    bool any = false;
    for (const auto& f : forms) {
        long acc = 0;
        for (const auto& [exps, c] : f.terms) {
            long prod = c;
            for (std::size_t i = 0; i < exps.size(); ++i)
                for (unsigned e = 0; e < exps[i]; ++e) prod = (prod * pt.coords[i]) % p;
            acc = (acc + prod) % p;
        }
        if (acc != 0) any = true;
        out.push_back(acc);
    }
    if (!any) return std::nullopt;
    return ResiduePoint{p, std::move(out)};
}

ResiduePoint reduce_point(const ProjectivePoint& P) {
    const long p = P.context().prime();
    std::vector<long> coords;
    coords.reserve(P.lift().size());
    for (const auto& x : P.lift()) coords.push_back(mod_p(x.value(), p));
    return ResiduePoint{p, std::move(coords)};
}

ResidueMap reduce_map(const HomogeneousMap& f) {
    const long p = f.context().prime();
    ResidueMap out{p, f.degree(), {}};
    for (const auto& form : f.minimal_forms()) {
        ResidueForm rf;
        for (const auto& t : form.terms()) {
            const long c = mod_p(t.coeff.value(), p);
            if (c != 0) rf.terms.emplace_back(t.exps, c);
        }
        out.forms.push_back(std::move(rf));
    }
    return out;
}

long mod_p(const mpq_class& q, long p) {
    const unsigned long up = static_cast<unsigned long>(p);
    const long den = static_cast<long>(mpz_fdiv_ui(q.get_den().get_mpz_t(), up));
    if (den == 0) throw std::logic_error("reduction of a non-integral rational");
    const long num = static_cast<long>(mpz_fdiv_ui(q.get_num().get_mpz_t(), up));
    return (num * inverse_mod_p(den, p)) % p;
}

long inverse_mod_p(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw std::logic_error("inverse of zero mod p");
    long t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        const long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += p;
    return t;
}

} // namespace padic
