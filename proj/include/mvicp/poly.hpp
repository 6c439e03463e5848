#pragma once

// Dense univariate polynomials over GF(2^kappa): evaluation, linear
// combination, masked-prefix sampling, and prefix-constrained interpolation.

#include <cstddef>
#include <utility>
#include <vector>

#include "field.hpp"

namespace mvicp {

// Raised when a constrained interpolation system has no solution.
struct SingularSystemError : std::runtime_error {
    explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

// coeffs[i] multiplies x^i. Always non-empty, all coefficients in one field.
struct Poly {
    std::vector<FieldElement> coeffs;

    Poly() = default;
    explicit Poly(std::vector<FieldElement> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) throw ConfigError("polynomial needs at least one coefficient");
        for (const auto& e : coeffs)
            detail::check_same_field(e.kappa, e.taps, coeffs[0].kappa, coeffs[0].taps);
    }

    std::size_t len() const { return coeffs.size(); }
    FieldParams field() const { return FieldParams{coeffs[0].kappa, coeffs[0].taps}; }

    friend bool operator==(const Poly&, const Poly&) = default;
};

inline Poly zero_poly(const FieldParams& f, std::size_t len) {
    if (len == 0) throw ConfigError("polynomial needs at least one coefficient");
    return Poly(std::vector<FieldElement>(len, f.zero()));
}

// Horner evaluation from the top coefficient.
inline FieldElement eval(const Poly& p, const FieldElement& x) {
    FieldElement r = p.coeffs[p.len() - 1];
    for (std::size_t i = p.len() - 1; i-- > 0;) r = r * x + p.coeffs[i];
    return r;
}

inline Poly poly_add(const Poly& p, const Poly& q) {
    if (p.len() != q.len()) throw ConfigError("length mismatch in polynomial sum");
    std::vector<FieldElement> c;
    c.reserve(p.len());
    for (std::size_t i = 0; i < p.len(); ++i) c.push_back(p.coeffs[i] + q.coeffs[i]);
    return Poly(std::move(c));
}

inline Poly scalar_mul(const FieldElement& d, const Poly& p) {
    std::vector<FieldElement> c;
    c.reserve(p.len());
    for (const auto& e : p.coeffs) c.push_back(d * e);
    return Poly(std::move(c));
}

// d*P + Q, the challenge-masking shape used throughout the protocol.
inline Poly linear_combine(const FieldElement& d, const Poly& p, const Poly& q) {
    return poly_add(scalar_mul(d, p), q);
}

inline Poly random_poly(const FieldParams& f, std::size_t len, Rng& rng) {
    if (len == 0) throw ConfigError("polynomial needs at least one coefficient");
    std::vector<FieldElement> c;
    c.reserve(len);
    for (std::size_t i = 0; i < len; ++i) c.push_back(f.sample(rng));
    return Poly(std::move(c));
}

// Low coefficients fixed to the given prefix, t+1 masking coefficients drawn
// uniformly on top.
inline Poly random_with_prefix(const std::vector<FieldElement>& prefix, unsigned t, Rng& rng) {
    if (prefix.empty()) throw ConfigError("prefix must hold at least one secret");
    FieldParams f{prefix[0].kappa, prefix[0].taps};
    std::vector<FieldElement> c = prefix;
    for (unsigned i = 0; i < t + 1; ++i) c.push_back(f.sample(rng));
    return Poly(std::move(c));
}

inline std::vector<FieldElement> extract_secrets(const Poly& p, std::size_t ell) {
    if (ell == 0) throw ConfigError("secret count must be at least one");
    if (ell > p.len()) throw ConfigError("secret count exceeds polynomial length");
    return std::vector<FieldElement>(p.coeffs.begin(), p.coeffs.begin() + ell);
}

// Least polynomial of length target_len whose low coefficients equal prefix
// and which passes through every (x, y) point. Free coefficients that the
// points do not constrain are set to zero. Throws ConfigError on duplicate
// x values and SingularSystemError when the residual system is unsolvable.
inline Poly interpolate(const FieldParams& f,
                        const std::vector<std::pair<FieldElement, FieldElement>>& points,
                        std::size_t target_len, const std::vector<FieldElement>& prefix) {
    if (target_len == 0 || prefix.size() > target_len)
        throw ConfigError("interpolation target shorter than its fixed prefix");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first)
                throw ConfigError("duplicate x value in interpolation points");

    const std::size_t m = points.size();
    const std::size_t p = prefix.size();
    const std::size_t u = target_len - p;  // unknown coefficients

    // Row i: sum_j x_i^(p+j) * c_j = y_i - prefix(x_i).
    std::vector<std::vector<FieldElement>> a(m);
    std::vector<FieldElement> b(m, f.zero());
    for (std::size_t i = 0; i < m; ++i) {
        const FieldElement& x = points[i].first;
        FieldElement pw = f.one();
        FieldElement fixed = f.zero();
        for (std::size_t k = 0; k < p; ++k) {
            fixed = fixed + prefix[k] * pw;
            pw = pw * x;
        }
        a[i].reserve(u);
        for (std::size_t j = 0; j < u; ++j) {
            a[i].push_back(pw);
            pw = pw * x;
        }
        b[i] = points[i].second + fixed;  // subtraction is addition here
    }

    // Gauss-Jordan elimination; exact arithmetic, any nonzero pivot works.
    std::vector<FieldElement> sol(u, f.zero());
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < u && rank < m; ++col) {
        std::size_t piv = rank;
        while (piv < m && a[piv][col].is_zero()) ++piv;
        if (piv == m) continue;
        std::swap(a[piv], a[rank]);
        std::swap(b[piv], b[rank]);
        FieldElement s = inv(a[rank][col]);
        for (std::size_t j = col; j < u; ++j) a[rank][j] = s * a[rank][j];
        b[rank] = s * b[rank];
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank || a[i][col].is_zero()) continue;
            FieldElement factor = a[i][col];
            for (std::size_t j = col; j < u; ++j) a[i][j] = a[i][j] + factor * a[rank][j];
            b[i] = b[i] + factor * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < m; ++i)
        if (!b[i].is_zero()) throw SingularSystemError("inconsistent interpolation system");
    for (std::size_t i = 0; i < rank; ++i) sol[pivot_col[i]] = b[i];

    std::vector<FieldElement> c = prefix;
    c.insert(c.end(), sol.begin(), sol.end());
    return Poly(std::move(c));
}

}  // namespace mvicp
