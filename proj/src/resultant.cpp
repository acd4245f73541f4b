#include "padic/resultant.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace padic {

namespace {

using Exps = std::vector<unsigned>;
using ZTerms = std::map<Exps, mpz_class>; // integer sparse polynomial

// All exponent vectors of total degree deg in nvars variables, lexicographically
// descending. The order fixes the row/column indexing of the Macaulay matrix.
void enumerate_monomials(long nvars, long deg, long pos, Exps& cur, std::vector<Exps>& out) {
    if (pos == nvars - 1) {
        cur[static_cast<std::size_t>(pos)] = static_cast<unsigned>(deg);
        out.push_back(cur);
        return;
    }
    for (long e = deg; e >= 0; --e) {
        cur[static_cast<std::size_t>(pos)] = static_cast<unsigned>(e);
        enumerate_monomials(nvars, deg - e, pos + 1, cur, out);
    }
}

std::vector<Exps> monomials_of_degree(long nvars, long deg) {
    std::vector<Exps> out;
    Exps cur(static_cast<std::size_t>(nvars), 0);
    enumerate_monomials(nvars, deg, 0, cur, out);
    return out;
}

// Clears denominators of a form; returns integer terms and v_p of the cleared-out
// factor so callers can undo the scaling in valuation space.
std::pair<ZTerms, long> clear_denominators(const Polynomial& f, long p) {
    mpz_class lcm(1);
    for (const auto& t : f.terms())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coeff.value().get_den().get_mpz_t());
    ZTerms out;
    for (const auto& t : f.terms()) {
        mpz_class c = t.coeff.value().get_num() * (lcm / t.coeff.value().get_den());
        out.emplace(t.exps, std::move(c));
    }
    return {std::move(out), valuation_of_mpz(lcm, p)};
}

ZTerms zmul(const ZTerms& a, const ZTerms& b) {
    ZTerms out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exps e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out[e] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = (sgn(it->second) == 0) ? out.erase(it) : std::next(it);
    return out;
}

// Substitutes X_i -> sum_j T[i][j] X_j into an integer form.
ZTerms substitute_linear(const ZTerms& f, const std::vector<std::vector<long>>& T) {
    const std::size_t nv = T.size();
    std::vector<ZTerms> rows(nv);
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < nv; ++j)
            if (T[i][j] != 0) {
                Exps e(nv, 0);
                e[j] = 1;
                rows[i][e] = T[i][j];
            }
    ZTerms out;
    for (const auto& [exps, coeff] : f) {
        ZTerms prod;
        prod[Exps(nv, 0)] = coeff;
        for (std::size_t i = 0; i < nv; ++i)
            for (unsigned e = 0; e < exps[i]; ++e) prod = zmul(prod, rows[i]);
        for (const auto& [e, c] : prod) out[e] += c;
    }
    for (auto it = out.begin(); it != out.end();)
        it = (sgn(it->second) == 0) ? out.erase(it) : std::next(it);
    return out;
}

// Unimodular changes of variables tried in order until the Macaulay minor is
// nonsingular: identity, then coordinate permutations, then seeded shears.
std::vector<std::vector<std::vector<long>>> transform_ladder(long nv) {
    std::vector<std::vector<std::vector<long>>> out;
    std::vector<std::vector<long>> id(static_cast<std::size_t>(nv),
                                      std::vector<long>(static_cast<std::size_t>(nv), 0));
    for (long i = 0; i < nv; ++i) id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    out.push_back(id);

    std::vector<std::size_t> perm(static_cast<std::size_t>(nv));
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
        auto m = id;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            std::fill(m[i].begin(), m[i].end(), 0L);
            m[i][perm[i]] = 1;
        }
        out.push_back(std::move(m));
    }

    // Deterministic shear products; each factor has determinant 1.
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&state]() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    for (int attempt = 0; attempt < 32; ++attempt) {
        auto m = id;
        const int shears = 1 + static_cast<int>(next() % 3);
        for (int s = 0; s < shears; ++s) {
            const std::size_t a = static_cast<std::size_t>(next() % static_cast<std::uint64_t>(nv));
            std::size_t b = static_cast<std::size_t>(next() % static_cast<std::uint64_t>(nv));
            if (a == b) b = (b + 1) % static_cast<std::size_t>(nv);
            const long k = 1 + static_cast<long>(next() % 3);
            for (std::size_t j = 0; j < m.size(); ++j) m[a][j] += k * m[b][j];
        }
        out.push_back(std::move(m));
    }
    return out;
}

struct MacaulayDets {
    mpz_class full;  // det of the full Macaulay matrix
    mpz_class minor; // det of the submatrix on non-reduced monomials
};

MacaulayDets macaulay_determinants(const std::vector<ZTerms>& forms, long d) {
    const long nv = static_cast<long>(forms.size());
    const long D = nv * (d - 1) + 1;
    const std::vector<Exps> mons = monomials_of_degree(nv, D);

    std::map<Exps, std::size_t> col_of;
    for (std::size_t c = 0; c < mons.size(); ++c) col_of.emplace(mons[c], c);

    const std::size_t n = mons.size();
    std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n, mpz_class(0)));
    std::vector<bool> reduced(n, false);

    for (std::size_t r = 0; r < n; ++r) {
        const Exps& alpha = mons[r];
        long assigned = -1;
        int hits = 0;
        for (long i = 0; i < nv; ++i)
            if (alpha[static_cast<std::size_t>(i)] >= static_cast<unsigned>(d)) {
                ++hits;
                if (assigned < 0) assigned = i;
            }
        reduced[r] = (hits == 1);
        Exps base = alpha;
        base[static_cast<std::size_t>(assigned)] -= static_cast<unsigned>(d);
        for (const auto& [e, c] : forms[static_cast<std::size_t>(assigned)]) {
            Exps col = base;
            for (std::size_t i = 0; i < col.size(); ++i) col[i] += e[i];
            M[r][col_of.at(col)] += c;
        }
    }

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (!reduced[i]) keep.push_back(i);
    std::vector<std::vector<mpz_class>> Mp(keep.size(), std::vector<mpz_class>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j) Mp[i][j] = M[keep[i]][keep[j]];

    MacaulayDets out;
    out.minor = bareiss_determinant(std::move(Mp));
    out.full = (sgn(out.minor) == 0) ? mpz_class(0) : bareiss_determinant(std::move(M));
    return out;
}

} // namespace

mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> a) {
    const long n = static_cast<long>(a.size());
    if (n == 0) return 1;
    mpz_class prev(1);
    int sign = 1;
    for (long k = 0; k + 1 < n; ++k) {
        long piv = -1;
        for (long i = k; i < n; ++i)
            if (sgn(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return 0;
        if (piv != k) {
            std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(k)]);
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                auto& aij = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                mpz_class t = aij * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                              a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                                  a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                aij = std::move(t);
            }
        prev = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    mpz_class det = a[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
    return sign > 0 ? det : mpz_class(-det);
}

long macaulay_resultant_valuation(std::span<const Polynomial> forms, long d, long p) {
    const long nv = static_cast<long>(forms.size());
    if (nv < 2) fail(Errc::parse_error, "need at least two forms");
    if (d < 1) fail(Errc::parse_error, "degree must be positive");

    std::vector<ZTerms> cleared;
    long correction = 0; // d^N per unit of cleared valuation, summed over forms
    mpz_class dpow(1);
    for (long i = 0; i + 1 < nv; ++i) dpow *= d;
    long dpow_l = static_cast<long>(dpow.get_si());
    for (const auto& f : forms) {
        if (f.is_zero()) fail(Errc::not_a_morphism, "a coordinate form vanishes identically");
        auto [zt, cleared_val] = clear_denominators(f, p);
        correction += cleared_val * dpow_l;
        cleared.push_back(std::move(zt));
    }

    for (const auto& T : transform_ladder(nv)) {
        std::vector<ZTerms> transformed;
        bool identity = true;
        for (std::size_t i = 0; i < T.size(); ++i)
            for (std::size_t j = 0; j < T.size(); ++j)
                if (T[i][j] != (i == j ? 1 : 0)) identity = false;
        if (identity) {
            transformed = cleared;
        } else {
            transformed.reserve(cleared.size());
            for (const auto& f : cleared) transformed.push_back(substitute_linear(f, T));
        }
        MacaulayDets dets = macaulay_determinants(transformed, d);
        if (sgn(dets.minor) == 0) continue; // unlucky specialization; try the next transform
        if (sgn(dets.full) == 0)
            fail(Errc::not_a_morphism, "the coordinate forms share a nontrivial zero");
        // det(full) = ±Res * det(minor) identically, and |det T| = 1 leaves v_p(Res) unchanged.
        return valuation_of_mpz(dets.full, p) - valuation_of_mpz(dets.minor, p) - correction;
    }
    fail(Errc::internal, "no change of variables made the Macaulay minor nonsingular");
}

long sylvester_resultant_valuation(const Polynomial& f0, const Polynomial& f1, long d, long p) {
    if (f0.nvars() != 2 || f1.nvars() != 2)
        fail(Errc::parse_error, "the Sylvester route needs binary forms");
    if (f0.is_zero() || f1.is_zero())
        fail(Errc::not_a_morphism, "a coordinate form vanishes identically");

    long correction = 0;
    std::vector<std::vector<mpz_class>> coeffs; // coeffs[k][e] multiplies X^e Y^(d-e)
    for (const Polynomial* f : {&f0, &f1}) {
        auto [zt, cleared_val] = clear_denominators(*f, p);
        correction += cleared_val * d;
        std::vector<mpz_class> c(static_cast<std::size_t>(d) + 1, mpz_class(0));
        for (const auto& [e, v] : zt) c[e[0]] = v;
        coeffs.push_back(std::move(c));
    }

    const std::size_t n = static_cast<std::size_t>(2 * d);
    std::vector<std::vector<mpz_class>> S(n, std::vector<mpz_class>(n, mpz_class(0)));
    for (long r = 0; r < d; ++r)
        for (long j = 0; j <= d; ++j) {
            S[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + j)] =
                coeffs[0][static_cast<std::size_t>(d - j)];
            S[static_cast<std::size_t>(d + r)][static_cast<std::size_t>(r + j)] =
                coeffs[1][static_cast<std::size_t>(d - j)];
        }
    mpz_class det = bareiss_determinant(std::move(S));
    if (sgn(det) == 0) fail(Errc::not_a_morphism, "the coordinate forms share a nontrivial zero");
    return valuation_of_mpz(det, p) - correction;
}

} // namespace padic
