#pragma once

// Points of P^N(Q_p) held as normalized lifts, the nonarchimedean chordal
// metric, disks, and the affine chart embedding.

#include <span>
#include <vector>

#include "padic/rational.hpp"

namespace padic {

class ProjectivePoint {
public:
    // Normalizes the given lift so its sup-norm valuation is 0.
    static ProjectivePoint make(std::vector<PadicRational> coords);

    long dimension() const noexcept { return static_cast<long>(lift_.size()) - 1; }
    std::span<const PadicRational> lift() const noexcept { return lift_; }
    PrimeContext context() const noexcept { return lift_.front().context(); }

    // Equality of the underlying points, i.e. vanishing chordal distance.
    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b);

private:
    explicit ProjectivePoint(std::vector<PadicRational> normalized)
        : lift_(std::move(normalized)) {}

    std::vector<PadicRational> lift_;

    friend ProjectivePoint internal_point_from_normalized(std::vector<PadicRational>);
};

// A chordal distance value: either exactly zero, or p^(-w) with w >= 0.
class ChordalDistance {
public:
    static ChordalDistance exactly_zero() { return ChordalDistance(true, 0); }
    static ChordalDistance power(long w);

    bool is_zero() const noexcept { return zero_; }
    long w() const;
    double approx(long p) const;

    friend bool operator==(const ChordalDistance& a, const ChordalDistance& b);
    // Ordering as real numbers: zero is smallest, larger w means smaller distance.
    friend bool operator<(const ChordalDistance& a, const ChordalDistance& b);
    friend bool operator>(const ChordalDistance& a, const ChordalDistance& b) { return b < a; }
    friend bool operator<=(const ChordalDistance& a, const ChordalDistance& b) { return !(b < a); }
    friend bool operator>=(const ChordalDistance& a, const ChordalDistance& b) { return !(a < b); }

private:
    ChordalDistance(bool zero, long w) : zero_(zero), w_(w) {}

    bool zero_;
    long w_;
};

// Wraps coordinates already satisfying the normalization invariant.
ProjectivePoint internal_point_from_normalized(std::vector<PadicRational> coords);

// max_{i<j} |x_i y_j - x_j y_i| on normalized lifts.
ChordalDistance chordal_distance(const ProjectivePoint& P, const ProjectivePoint& Q);

// (a_1, ..., a_N) -> (1 : a_1 : ... : a_N); requires every coordinate integral.
ProjectivePoint affine_embed(std::span<const PadicRational> a);

// Dehomogenization (x_i / x_k)_{i != k}; requires coordinate k of the
// normalized lift to be a unit.
std::vector<PadicRational> affine_extract(const ProjectivePoint& P, long pivot);

// A disk in P^N with radius p^(-radius_valuation).
struct Disk {
    ProjectivePoint center;
    long radius_valuation; // >= 0, radius <= 1
    bool closed;

    bool contains(const ProjectivePoint& Q) const;
};

} // namespace padic
