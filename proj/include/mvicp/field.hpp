#pragma once

// Binary extension field GF(2^kappa) for kappa in 1..64, with the dyadic
// error-bound arithmetic used to size the field against a target epsilon.

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace mvicp {

// Raised for invalid parameters, mismatched fields, malformed configs.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Deterministic randomness. std::mt19937_64 output is fully pinned by the
// standard, so identical seeds give identical runs on every platform.
// Distribution adapters are hand-rolled for the same reason.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Small-range helper (modulo; bias is irrelevant for harness choices and
    // the result is deterministic, which is what matters here).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw ConfigError("Rng::below: zero bound");
        return gen_() % bound;
    }

  private:
    std::mt19937_64 gen_;
};

// ---------------------------------------------------------------------------
// Exact dyadic rational m * 2^e. Error probabilities here are always dyadic
// (n / 2^kappa), so bound checks can be integer-exact instead of floating.
struct ErrorBound {
    std::uint64_t mantissa = 1;
    int exp2 = 0;

    void normalize() {
        if (mantissa == 0) throw ConfigError("error bound must be positive");
        while ((mantissa & 1) == 0) {
            mantissa >>= 1;
            ++exp2;
        }
    }

    static ErrorBound power_of_two(int e) { return ErrorBound{1, e}; }

    // Doubles are dyadic by construction, so this conversion is exact.
    static ErrorBound from_double(double x) {
        if (!(x > 0.0) || !(x < 1.0) || !std::isfinite(x))
            throw ConfigError("error bound must lie in (0,1)");
        int e = 0;
        double f = std::frexp(x, &e);  // x = f * 2^e, f in [0.5, 1)
        ErrorBound b{static_cast<std::uint64_t>(std::ldexp(f, 53)), e - 53};
        b.normalize();
        return b;
    }

    double value() const { return std::ldexp(static_cast<double>(mantissa), exp2); }

    // Exact test: n * 2^-kappa <= mantissa * 2^exp2.
    bool admits(std::uint64_t n, unsigned kappa) const {
        int s = exp2 + static_cast<int>(kappa);
        if (s >= 0) {
            if (s >= 64) return true;  // mantissa * 2^s >= 2^64 > n
            return (static_cast<unsigned __int128>(mantissa) << s) >= n;
        }
        unsigned t = static_cast<unsigned>(-s);
        if (t >= 64) return false;  // n * 2^t >= 2^64 > mantissa
        return (static_cast<unsigned __int128>(n) << t) <= mantissa;
    }

    std::string str() const {
        if (mantissa == 1) return "2^" + std::to_string(exp2);
        return std::to_string(mantissa) + "*2^" + std::to_string(exp2);
    }

    friend bool operator==(const ErrorBound&, const ErrorBound&) = default;
};

// ---------------------------------------------------------------------------
// GF(2)[x] helpers on bitmask-encoded polynomials (bit i = coefficient of x^i).

inline int gf2_poly_degree(std::uint64_t p) {
    return p == 0 ? -1 : static_cast<int>(std::bit_width(p)) - 1;
}

inline std::uint64_t gf2_poly_mod(std::uint64_t a, std::uint64_t b) {
    int db = gf2_poly_degree(b);
    while (gf2_poly_degree(a) >= db) a ^= b << (gf2_poly_degree(a) - db);
    return a;
}

// Trial division by every polynomial of degree <= kappa/2. Only used for
// kappa <= 20 where the divisor count stays tiny.
inline bool gf2_poly_irreducible(unsigned kappa, std::uint64_t taps) {
    std::uint64_t p = taps | (std::uint64_t{1} << kappa);
    std::uint64_t limit = std::uint64_t{1} << (kappa / 2 + 1);
    for (std::uint64_t b = 2; b < limit; ++b)
        if (gf2_poly_mod(p, b) == 0) return false;
    return true;
}

// Reduction polynomials x^kappa + taps[kappa-1] for kappa = 1..64: for each
// degree, the irreducible polynomial with the smallest integer encoding.
inline constexpr std::uint64_t kReductionTaps[64] = {
    0x1,  0x3,  0x3,  0x3,  0x5,  0x3,  0x3,  0x1b, 0x3,  0x9,  0x5,  0x9,  0x1b,
    0x21, 0x3,  0x2b, 0x9,  0x9,  0x27, 0x9,  0x5,  0x3,  0x21, 0x1b, 0x9,  0x1b,
    0x27, 0x3,  0x5,  0x3,  0x9,  0x8d, 0x4b, 0x1b, 0x5,  0x35, 0x3f, 0x63, 0x11,
    0x39, 0x9,  0x27, 0x59, 0x21, 0x1b, 0x3,  0x21, 0x2d, 0x71, 0x1d, 0x4b, 0x9,
    0x47, 0x7d, 0x47, 0x95, 0x11, 0x63, 0x7b, 0x3,  0x27, 0x69, 0x3,  0x1b};

// ---------------------------------------------------------------------------
// Field element arithmetic. Elements carry their field so cross-field mixing
// is caught immediately instead of corrupting a session silently.

namespace detail {

inline void check_same_field(std::uint32_t ka, std::uint64_t ta, std::uint32_t kb,
                             std::uint64_t tb) {
    if (ka != kb || ta != tb) throw ConfigError("field mismatch between operands");
}

inline std::uint64_t gf_mul(std::uint64_t a, std::uint64_t b, unsigned kappa,
                            std::uint64_t taps) {
    // Carry-less product into 127 bits, then bitwise modular reduction.
    unsigned __int128 acc = 0;
    unsigned __int128 x = a;
    while (b != 0) {
        if (b & 1) acc ^= x;
        x <<= 1;
        b >>= 1;
    }
    const unsigned __int128 red =
        (static_cast<unsigned __int128>(1) << kappa) | static_cast<unsigned __int128>(taps);
    for (int i = 2 * static_cast<int>(kappa) - 2; i >= static_cast<int>(kappa); --i)
        if ((acc >> i) & 1) acc ^= red << (i - static_cast<unsigned>(kappa));
    std::uint64_t mask = kappa == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << kappa) - 1;
    return static_cast<std::uint64_t>(acc) & mask;
}

}  // namespace detail

struct FieldElement {
    std::uint64_t value = 0;
    std::uint32_t kappa = 0;
    std::uint64_t taps = 0;

    bool is_zero() const { return value == 0; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        detail::check_same_field(a.kappa, a.taps, b.kappa, b.taps);
        return FieldElement{a.value ^ b.value, a.kappa, a.taps};
    }

    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        detail::check_same_field(a.kappa, a.taps, b.kappa, b.taps);
        return FieldElement{detail::gf_mul(a.value, b.value, a.kappa, a.taps), a.kappa, a.taps};
    }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

inline FieldElement gf_pow(FieldElement a, std::uint64_t e) {
    FieldElement r{1, a.kappa, a.taps};
    while (e != 0) {
        if (e & 1) r = r * a;
        a = a * a;
        e >>= 1;
    }
    return r;
}

// Multiplicative inverse via a^(2^kappa - 2); the zero element has none.
inline FieldElement inv(const FieldElement& a) {
    if (a.is_zero()) throw ConfigError("inverse of zero");
    std::uint64_t e = a.kappa == 64 ? ~std::uint64_t{0} - 1 : (std::uint64_t{1} << a.kappa) - 2;
    return gf_pow(a, e);
}

// ---------------------------------------------------------------------------
// Field descriptor plus sampling.

struct FieldParams {
    std::uint32_t kappa = 0;
    std::uint64_t taps = 0;

    static FieldParams from_kappa(unsigned kappa) {
        if (kappa < 1 || kappa > 64) throw ConfigError("kappa must lie in 1..64");
        return with_taps(kappa, kReductionTaps[kappa - 1]);
    }

    // Custom reduction polynomials are verified by trial division up to
    // kappa = 20; beyond that only the built-in table is trusted.
    static FieldParams with_taps(unsigned kappa, std::uint64_t taps) {
        if (kappa < 1 || kappa > 64) throw ConfigError("kappa must lie in 1..64");
        std::uint64_t mask = kappa == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << kappa) - 1;
        if ((taps & ~mask) != 0) throw ConfigError("reduction taps exceed degree kappa");
        if (kappa <= 20) {
            if (!gf2_poly_irreducible(kappa, taps))
                throw ConfigError("reduction polynomial is reducible");
        } else if (taps != kReductionTaps[kappa - 1]) {
            throw ConfigError("untrusted reduction polynomial for kappa > 20");
        }
        return FieldParams{kappa, taps};
    }

    // Smallest kappa whose guessing bound n * 2^-kappa meets the target.
    static FieldParams smallest_for(std::uint64_t n, const ErrorBound& eps) {
        for (unsigned kappa = 1; kappa <= 64; ++kappa)
            if (eps.admits(n, kappa)) return from_kappa(kappa);
        throw ConfigError("no kappa <= 64 satisfies the requested error bound");
    }

    std::uint64_t mask() const {
        return kappa == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << kappa) - 1;
    }

    std::uint64_t order_minus_one() const { return mask(); }  // |F| - 1 = 2^kappa - 1

    FieldElement element(std::uint64_t v) const {
        if ((v & ~mask()) != 0) throw ConfigError("element value exceeds field size");
        return FieldElement{v, kappa, taps};
    }

    FieldElement zero() const { return FieldElement{0, kappa, taps}; }
    FieldElement one() const { return FieldElement{1, kappa, taps}; }

    // Masked draws are exactly uniform over the field.
    FieldElement sample(Rng& rng) const { return FieldElement{rng.next_u64() & mask(), kappa, taps}; }

    FieldElement sample_nonzero(Rng& rng) const {
        std::uint64_t v;
        do {
            v = rng.next_u64() & mask();
        } while (v == 0);
        return FieldElement{v, kappa, taps};
    }

    // Exact n * 2^-kappa, normalized.
    ErrorBound error_bound(std::uint64_t n) const {
        ErrorBound b{n, -static_cast<int>(kappa)};
        b.normalize();
        return b;
    }

    friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

}  // namespace mvicp
