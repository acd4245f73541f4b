#include "padic/projective.hpp"

#include <cmath>

namespace padic {

ProjectivePoint internal_point_from_normalized(std::vector<PadicRational> coords) {
    return ProjectivePoint(std::move(coords));
}

ProjectivePoint ProjectivePoint::make(std::vector<PadicRational> coords) {
    if (coords.empty()) fail(Errc::zero_vector, "a projective point needs coordinates");
    return ProjectivePoint(normalize_lift(coords).coords);
}

bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    if (a.dimension() != b.dimension() || !(a.context() == b.context())) return false;
    return chordal_distance(a, b).is_zero();
}

ChordalDistance ChordalDistance::power(long w) {
    if (w < 0) throw std::logic_error("chordal distance exceeds 1");
    return ChordalDistance(false, w);
}

long ChordalDistance::w() const {
    if (zero_) throw std::logic_error("zero distance has no finite exponent");
    return w_;
}

double ChordalDistance::approx(long p) const {
    return zero_ ? 0.0 : std::pow(double(p), double(-w_));
}

bool operator==(const ChordalDistance& a, const ChordalDistance& b) {
    if (a.zero_ || b.zero_) return a.zero_ && b.zero_;
    return a.w_ == b.w_;
}

bool operator<(const ChordalDistance& a, const ChordalDistance& b) {
    if (a.zero_) return !b.zero_;
    if (b.zero_) return false;
    return a.w_ > b.w_;
}

ChordalDistance chordal_distance(const ProjectivePoint& P, const ProjectivePoint& Q) {
    if (P.dimension() != Q.dimension())
        fail(Errc::dimension_mismatch, "points live in different projective spaces");
    ensure_same_context(P.context(), Q.context());

    auto x = P.lift();
    auto y = Q.lift();
    Valuation best = Valuation::infinite();
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            PadicRational cross = x[i] * y[j] - x[j] * y[i];
            if (cross.is_zero()) continue;
            Valuation v = valuation(cross);
            if (v < best) best = v;
        }
    if (best.is_infinite()) return ChordalDistance::exactly_zero();
    return ChordalDistance::power(best.finite_long());
}

ProjectivePoint affine_embed(std::span<const PadicRational> a) {
    if (a.empty()) fail(Errc::zero_vector, "affine embedding needs at least one coordinate");
    const PrimeContext ctx = a.front().context();
    std::vector<PadicRational> coords;
    coords.reserve(a.size() + 1);
    coords.emplace_back(1, ctx);
    for (const auto& ai : a) {
        if (!ai.is_zero() && valuation(ai) < Valuation::of(0))
            fail(Errc::not_integral, "coordinate " + rational_str(ai.value()) +
                                         " lies outside the closed unit polydisk");
        coords.push_back(ai);
    }
    // First coordinate is a unit, so the lift is already normalized.
    return internal_point_from_normalized(std::move(coords));
}

std::vector<PadicRational> affine_extract(const ProjectivePoint& P, long pivot) {
    auto x = P.lift();
    if (pivot < 0 || pivot > P.dimension())
        fail(Errc::pivot_not_unit, "pivot index out of range");
    const auto& xk = x[static_cast<std::size_t>(pivot)];
    if (xk.is_zero() || !(valuation(xk) == Valuation::of(0)))
        fail(Errc::pivot_not_unit, "coordinate " + std::to_string(pivot) + " is not a unit");
    std::vector<PadicRational> out;
    out.reserve(x.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (i != static_cast<std::size_t>(pivot)) out.push_back(x[i] / xk);
    return out;
}

bool Disk::contains(const ProjectivePoint& Q) const {
    ChordalDistance d = chordal_distance(center, Q);
    if (d.is_zero()) return true;
    return closed ? d.w() >= radius_valuation : d.w() > radius_valuation;
}

} // namespace padic
