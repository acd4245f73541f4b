#include "padic/dynamics.hpp"

#include <cmath>
#include <map>

namespace padic {

namespace {

constexpr long kOrbitStepCap = 5000000;

mpq_class partial_sum_coeff(std::span<const long> ws, long d) {
    // -sum_k w_k / d^{k+1}
    mpq_class acc(0);
    mpz_class dk(1);
    for (long w : ws) {
        dk *= d;
        if (w != 0) {
            mpq_class term(w, dk);
            term.canonicalize();
            acc += term;
        }
    }
    return mpq_class(-acc);
}

mpq_class tail_coeff(long v_res, long d, long n) {
    // v_res / ((d-1) d^n)
    mpz_class den = d - 1;
    for (long i = 0; i < n; ++i) den *= d;
    mpq_class q(v_res, den);
    q.canonicalize();
    return q;
}

} // namespace

std::vector<long> orbit_step_valuations(const HomogeneousMap& f, const ProjectivePoint& P,
                                        long n) {
    if (n < 0) fail(Errc::bad_range, "orbit depth must be nonnegative");
    if (P.dimension() != f.dimension())
        fail(Errc::dimension_mismatch, "point dimension does not match the map");
    ensure_same_context(P.context(), f.context());
    if (n == 0) return {};

    const long v_res = f.resultant_valuation();
    if (v_res == 0) return std::vector<long>(static_cast<std::size_t>(n), 0);

    const long p = f.context().prime();
    long prec = n * v_res + v_res + 1;
    mpz_class modulus = pow_of(p, static_cast<unsigned long>(prec));

    // Residues of the minimal-lift coefficients at full precision; the
    // denominators are coprime to p, hence invertible.
    struct ResTerm {
        std::vector<unsigned> exps;
        mpz_class coeff;
    };
    std::vector<std::vector<ResTerm>> forms;
    forms.reserve(f.minimal_forms().size());
    for (const auto& form : f.minimal_forms()) {
        std::vector<ResTerm> rts;
        for (const auto& t : form.terms()) {
            mpz_class den_inv;
            if (mpz_invert(den_inv.get_mpz_t(), t.coeff.value().get_den().get_mpz_t(),
                           modulus.get_mpz_t()) == 0)
                fail(Errc::internal, "minimal-lift coefficient denominator not invertible");
            mpz_class c = (t.coeff.value().get_num() % modulus) * den_inv % modulus;
            if (sgn(c) < 0) c += modulus;
            rts.push_back(ResTerm{t.exps, std::move(c)});
        }
        forms.push_back(std::move(rts));
    }

    std::vector<mpz_class> coords;
    coords.reserve(P.lift().size());
    for (const auto& x : P.lift()) {
        mpz_class den_inv;
        if (mpz_invert(den_inv.get_mpz_t(), x.value().get_den().get_mpz_t(),
                       modulus.get_mpz_t()) == 0)
            fail(Errc::internal, "normalized-lift denominator not invertible");
        mpz_class c = (x.value().get_num() % modulus) * den_inv % modulus;
        if (sgn(c) < 0) c += modulus;
        coords.push_back(std::move(c));
    }

    const mpz_class prime(p);
    std::vector<long> ws;
    ws.reserve(static_cast<std::size_t>(n));
    for (long step = 0; step < n; ++step) {
        std::vector<mpz_class> image;
        image.reserve(forms.size());
        for (const auto& form : forms) {
            mpz_class acc(0);
            for (const auto& t : form) {
                mpz_class prod = t.coeff;
                for (std::size_t i = 0; i < t.exps.size(); ++i)
                    for (unsigned e = 0; e < t.exps[i]; ++e) prod = prod * coords[i] % modulus;
                acc = (acc + prod) % modulus;
            }
            image.push_back(std::move(acc));
        }

        long w = -1;
        for (const auto& y : image) {
            if (sgn(y) == 0) continue; // valuation >= prec > v_res, cannot be the minimum
            mpz_class rest;
            const long v = static_cast<long>(
                mpz_remove(rest.get_mpz_t(), y.get_mpz_t(), prime.get_mpz_t()));
            if (w < 0 || v < w) w = v;
        }
        if (w < 0 || w > v_res)
            fail(Errc::internal, "orbit step valuation escaped [0, v_res]");

        ws.push_back(w);
        if (w > 0) {
            const mpz_class pw = pow_of(p, static_cast<unsigned long>(w));
            prec -= w;
            mpz_divexact(modulus.get_mpz_t(), modulus.get_mpz_t(), pw.get_mpz_t());
            for (auto& y : image) {
                mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), pw.get_mpz_t());
                y %= modulus;
            }
        }
        coords = std::move(image);
    }
    return ws;
}

OrbitSegment iterate_orbit(const HomogeneousMap& f, const ProjectivePoint& P, long n) {
    if (n < 0) fail(Errc::bad_range, "orbit depth must be nonnegative");
    OrbitSegment out;
    out.points.push_back(P);
    for (long k = 0; k < n; ++k) {
        auto image = f.evaluate_minimal_integer(integer_lift(out.points.back().lift()));
        long w = 0;
        out.points.push_back(point_from_integer_lift(std::move(image), f.context(), &w));
        out.step_valuations.push_back(w);
    }
    return out;
}

LogValue green_step(const HomogeneousMap& f, const ProjectivePoint& P) {
    if (P.dimension() != f.dimension())
        fail(Errc::dimension_mismatch, "point dimension does not match the map");
    ensure_same_context(P.context(), f.context());
    Valuation w = sup_norm_valuation(f.evaluate_minimal(P.lift()));
    if (w.is_infinite()) fail(Errc::internal, "a morphism sent a point lift to zero");
    mpq_class coeff(-w.finite_long(), f.degree());
    coeff.canonicalize();
    return LogValue(coeff, f.context());
}

LogValue green_partial(const HomogeneousMap& f, const ProjectivePoint& P, long n) {
    auto ws = orbit_step_valuations(f, P, n);
    return LogValue(partial_sum_coeff(ws, f.degree()), f.context());
}

GreenEstimate green_bracket_depth(const HomogeneousMap& f, const ProjectivePoint& P, long n) {
    LogValue partial = green_partial(f, P, n);
    LogValue tail(tail_coeff(f.resultant_valuation(), f.degree(), n), f.context());
    return GreenEstimate{partial, tail, n};
}

long green_depth_for_tolerance(const HomogeneousMap& f, const LogValue& tol) {
    ensure_same_context(tol.context(), f.context());
    if (!(sgn(tol.coeff()) > 0)) fail(Errc::bad_range, "tolerance must be positive");
    if (f.resultant_valuation() == 0) return 0;
    long n = 0;
    mpq_class c = tail_coeff(f.resultant_valuation(), f.degree(), 0);
    while (c > tol.coeff()) {
        c /= f.degree();
        ++n;
    }
    return n;
}

GreenEstimate green_bracket(const HomogeneousMap& f, const ProjectivePoint& P,
                            const LogValue& tol) {
    return green_bracket_depth(f, P, green_depth_for_tolerance(f, tol));
}

GreenEstimate green_homogeneous_depth(const HomogeneousMap& f,
                                      std::span<const PadicRational> x, long n) {
    if (x.empty()) fail(Errc::zero_vector, "the homogeneous Green value needs a nonzero vector");
    Valuation norm = sup_norm_valuation(x);
    if (norm.is_infinite())
        fail(Errc::zero_vector, "the homogeneous Green value needs a nonzero vector");
    ProjectivePoint P = ProjectivePoint::make(std::vector<PadicRational>(x.begin(), x.end()));
    GreenEstimate base = green_bracket_depth(f, P, n);
    // G_f(x) = ghat_min(P) + log||x|| + (1/(d-1)) log|p^m| for f = p^m * f_min.
    mpq_class shift = -norm.finite();
    mpq_class lift_shift(-f.minimal_lift_exponent(), f.degree() - 1);
    lift_shift.canonicalize();
    shift += lift_shift;
    return GreenEstimate{base.partial_sum + LogValue(shift, f.context()), base.tail_bound,
                         base.n_used};
}

GreenEstimate green_homogeneous(const HomogeneousMap& f, std::span<const PadicRational> x,
                                const LogValue& tol) {
    return green_homogeneous_depth(f, x, green_depth_for_tolerance(f, tol));
}

bool good_reduction_at(const HomogeneousMap& f, const ProjectivePoint& P) {
    return green_step(f, P).is_zero();
}

OrbitClassification classify_orbit(const HomogeneousMap& f, const ProjectivePoint& P) {
    if (P.dimension() != f.dimension())
        fail(Errc::dimension_mismatch, "point dimension does not match the map");
    ensure_same_context(P.context(), f.context());
    const ResidueMap rmap = reduce_map(f);
    ResiduePoint pt = reduce_point(P).canonical();

    std::map<std::vector<long>, long> seen;
    for (long n = 0;; ++n) {
        auto it = seen.find(pt.coords);
        if (it != seen.end())
            return OrbitClassification{OrbitClassification::Kind::orbital_good, it->second,
                                       n - it->second, 0};
        seen.emplace(pt.coords, n);
        auto next = rmap.apply(pt);
        if (!next)
            return OrbitClassification{OrbitClassification::Kind::bad_at_iterate, 0, 0, n};
        pt = next->canonical();
        if (n > kOrbitStepCap) fail(Errc::internal, "residue orbit exceeded the step cap");
    }
}

FatouCertificate certify_fatou(const HomogeneousMap& f, const ProjectivePoint& P) {
    OrbitClassification cls = classify_orbit(f, P);
    if (cls.good())
        return FatouCertificate{true, f.resultant_valuation(), cls, std::nullopt};
    const long depth = std::max(kDefaultGreenDepth, cls.bad_iterate + 1);
    return FatouCertificate{false, 0, cls, green_bracket_depth(f, P, depth)};
}

LogValue lipschitz_constant(const HomogeneousMap& f) {
    return LogValue(mpq_class(2 * f.resultant_valuation()), f.context());
}

long local_constancy_radius(const HomogeneousMap& f) { return f.resultant_valuation(); }

HolderConstants holder_constants(const HomogeneousMap& f) {
    HolderConstants out;
    out.two_d = 2 * f.degree();
    out.res_exponent = 2 * f.resultant_valuation();
    const mpz_class res_power = pow_of(f.context().prime(),
                                       static_cast<unsigned long>(out.res_exponent));
    if (mpz_class(out.two_d) >= res_power) {
        out.u = out.two_d;
        out.from_degree = true;
    } else {
        out.u = res_power;
        out.from_degree = false;
    }
    const double u = out.u.get_d();
    out.coefficient = 2.0 * u * std::log(u) / double(f.degree());
    out.holder_exponent = std::log(double(f.degree())) / std::log(u);
    return out;
}

MinBoundResult min_bound_lemma(double D, double a, double b, long k_max) {
    if (!(D > 0.0) || !(D <= 1.0) || !(a > 1.0) || !(b > 1.0) || k_max < 1)
        fail(Errc::bad_range, "need 0 < D <= 1, a > 1, b > 1, k_max >= 1");
    MinBoundResult out{0.0, 0, 0.0, false};
    for (long k = 1; k <= k_max; ++k) {
        const double v = D * std::pow(a, double(k)) + std::pow(b, double(-k));
        if (out.argmin_k == 0 || v < out.min_value) {
            out.min_value = v;
            out.argmin_k = k;
        }
    }
    out.bound = 2.0 * a * std::pow(D, std::log(b) / std::log(a * b));
    out.holds = out.min_value <= out.bound * (1.0 + 1e-9);
    return out;
}

} // namespace padic
