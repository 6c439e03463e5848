#pragma once

// Byte encodings for transcript records plus the semantic bit sizes the cost
// ledger tracks. Framing bytes (tags, length prefixes) are deliberately not
// part of the semantic size: the ledger counts field elements at kappa bits
// and votes at one bit, matching the analytic formulas.

#include <cstdint>
#include <string>
#include <vector>

#include "icp.hpp"

namespace mvicp {

using Bytes = std::vector<std::uint8_t>;

enum : std::uint8_t {
    kTagGenToInt = 0x01,
    kTagGenToVerifier = 0x02,
    kTagVerChallenge = 0x03,
    kTagDealerReveal = 0x04,
    kTagRevealPoly = 0x05,
    kTagRevealPublic = 0x06,
    kTagVote = 0x07,
    kTagPublishedTriple = 0x08,
};

// ---- primitive writers ----------------------------------------------------

inline void put_u8(Bytes& out, std::uint8_t v) { out.push_back(v); }

inline void put_u16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline std::size_t element_bytes(const FieldParams& f) { return (f.kappa + 7) / 8; }

inline void put_element(Bytes& out, const FieldElement& e) {
    std::size_t nb = (e.kappa + 7) / 8;
    for (std::size_t i = 0; i < nb; ++i) out.push_back(static_cast<std::uint8_t>(e.value >> (8 * i)));
}

inline void put_poly(Bytes& out, const Poly& p) {
    put_u16(out, static_cast<std::uint16_t>(p.len()));
    for (const auto& e : p.coeffs) put_element(out, e);
}

inline void put_block(Bytes& out, const SecretBlock& b) {
    put_u16(out, static_cast<std::uint16_t>(b.values.size()));
    for (const auto& e : b.values) put_element(out, e);
}

// Field descriptor: kappa byte plus the full reduction polynomial
// (degree-kappa bit included) in nine little-endian bytes.
inline Bytes encode_field_params(const FieldParams& f) {
    Bytes out;
    put_u8(out, static_cast<std::uint8_t>(f.kappa));
    unsigned __int128 full =
        (static_cast<unsigned __int128>(1) << f.kappa) | static_cast<unsigned __int128>(f.taps);
    for (int i = 0; i < 9; ++i) out.push_back(static_cast<std::uint8_t>(full >> (8 * i)));
    return out;
}

// ---- primitive readers ----------------------------------------------------

struct ByteReader {
    const Bytes& data;
    std::size_t pos = 0;

    std::uint8_t u8() {
        if (pos + 1 > data.size()) throw ConfigError("truncated record");
        return data[pos++];
    }

    std::uint16_t u16() {
        std::uint16_t lo = u8();
        return static_cast<std::uint16_t>(lo | (std::uint16_t{u8()} << 8));
    }

    FieldElement element(const FieldParams& f) {
        std::size_t nb = element_bytes(f);
        if (pos + nb > data.size()) throw ConfigError("truncated record");
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < nb; ++i) v |= std::uint64_t{data[pos + i]} << (8 * i);
        pos += nb;
        return f.element(v & f.mask());
    }

    Poly poly(const FieldParams& f) {
        std::size_t len = u16();
        std::vector<FieldElement> c;
        c.reserve(len);
        for (std::size_t i = 0; i < len; ++i) c.push_back(element(f));
        return Poly(std::move(c));
    }

    SecretBlock block(const FieldParams& f) {
        std::size_t len = u16();
        SecretBlock b;
        b.values.reserve(len);
        for (std::size_t i = 0; i < len; ++i) b.values.push_back(element(f));
        return b;
    }

    void expect_tag(std::uint8_t tag) {
        if (u8() != tag) throw ConfigError("unexpected record tag");
    }

    void done() const {
        if (pos != data.size()) throw ConfigError("trailing bytes in record");
    }
};

inline FieldParams decode_field_params(const Bytes& data) {
    ByteReader r{data};
    unsigned kappa = r.u8();
    unsigned __int128 full = 0;
    for (int i = 0; i < 9; ++i) full |= static_cast<unsigned __int128>(r.u8()) << (8 * i);
    r.done();
    if (kappa < 1 || kappa > 64) throw ConfigError("decoded kappa out of range");
    if (((full >> kappa) & 1) == 0 || (full >> (kappa + 1)) != 0)
        throw ConfigError("decoded reduction polynomial has the wrong degree");
    std::uint64_t mask = kappa == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << kappa) - 1;
    return FieldParams::with_taps(kappa, static_cast<std::uint64_t>(full) & mask);
}

// ---- messages --------------------------------------------------------------

inline Bytes encode(const GenToInt& m) {
    Bytes out;
    put_u8(out, kTagGenToInt);
    put_poly(out, m.F);
    put_poly(out, m.R);
    return out;
}

inline Bytes encode(const GenToVerifier& m) {
    Bytes out;
    put_u8(out, kTagGenToVerifier);
    put_element(out, m.alpha);
    put_element(out, m.v);
    put_element(out, m.r);
    return out;
}

inline Bytes encode(const VerChallenge& m) {
    Bytes out;
    put_u8(out, kTagVerChallenge);
    put_element(out, m.d);
    put_poly(out, m.B);
    return out;
}

inline Bytes encode(const DealerReveal& m) {
    Bytes out;
    put_u8(out, kTagDealerReveal);
    put_block(out, m.S);
    return out;
}

inline Bytes encode(const RevealPayload& m) {
    Bytes out;
    if (const auto* ps = std::get_if<PolySig>(&m.sig)) {
        put_u8(out, kTagRevealPoly);
        put_poly(out, ps->F);
    } else {
        put_u8(out, kTagRevealPublic);
        put_block(out, std::get<PublicSig>(m.sig).S);
    }
    return out;
}

inline Bytes encode(Vote v) {
    Bytes out;
    put_u8(out, kTagVote);
    put_u8(out, v == Vote::Accept ? 1 : 0);
    return out;
}

inline Bytes encode(const PublishedTriple& m) {
    Bytes out;
    put_u8(out, kTagPublishedTriple);
    put_element(out, m.alpha);
    put_element(out, m.v);
    put_element(out, m.r);
    return out;
}

inline GenToInt decode_gen_to_int(const FieldParams& f, const Bytes& data) {
    ByteReader r{data};
    r.expect_tag(kTagGenToInt);
    GenToInt m{r.poly(f), r.poly(f)};
    r.done();
    return m;
}

inline GenToVerifier decode_gen_to_verifier(const FieldParams& f, const Bytes& data) {
    ByteReader r{data};
    r.expect_tag(kTagGenToVerifier);
    GenToVerifier m{r.element(f), r.element(f), r.element(f)};
    r.done();
    return m;
}

inline VerChallenge decode_ver_challenge(const FieldParams& f, const Bytes& data) {
    ByteReader r{data};
    r.expect_tag(kTagVerChallenge);
    VerChallenge m{r.element(f), r.poly(f)};
    r.done();
    return m;
}

inline DealerReveal decode_dealer_reveal(const FieldParams& f, const Bytes& data) {
    ByteReader r{data};
    r.expect_tag(kTagDealerReveal);
    DealerReveal m{r.block(f)};
    r.done();
    return m;
}

inline RevealPayload decode_reveal_payload(const FieldParams& f, const Bytes& data) {
    ByteReader r{data};
    std::uint8_t tag = r.u8();
    RevealPayload m{PolySig{}};
    if (tag == kTagRevealPoly)
        m.sig = PolySig{r.poly(f)};
    else if (tag == kTagRevealPublic)
        m.sig = PublicSig{r.block(f)};
    else
        throw ConfigError("unexpected record tag");
    r.done();
    return m;
}

inline Vote decode_vote(const Bytes& data) {
    ByteReader r{data};
    r.expect_tag(kTagVote);
    Vote v = r.u8() != 0 ? Vote::Accept : Vote::Reject;
    r.done();
    return v;
}

inline PublishedTriple decode_published_triple(const FieldParams& f, const Bytes& data) {
    ByteReader r{data};
    r.expect_tag(kTagPublishedTriple);
    PublishedTriple m{r.element(f), r.element(f), r.element(f)};
    r.done();
    return m;
}

// ---- semantic bit sizes ----------------------------------------------------

inline std::uint64_t semantic_bits(const GenToInt& m) {
    return (m.F.len() + m.R.len()) * m.F.coeffs[0].kappa;
}
inline std::uint64_t semantic_bits(const GenToVerifier& m) { return 3ull * m.alpha.kappa; }
inline std::uint64_t semantic_bits(const VerChallenge& m) { return (1 + m.B.len()) * m.d.kappa; }
inline std::uint64_t semantic_bits(const DealerReveal& m) {
    return m.S.values.size() * std::uint64_t{m.S.values[0].kappa};
}
inline std::uint64_t semantic_bits(const RevealPayload& m) {
    if (const auto* ps = std::get_if<PolySig>(&m.sig))
        return ps->F.len() * std::uint64_t{ps->F.coeffs[0].kappa};
    const auto& s = std::get<PublicSig>(m.sig).S;
    return s.values.size() * std::uint64_t{s.values[0].kappa};
}
inline std::uint64_t semantic_bits(Vote) { return 1; }
inline std::uint64_t semantic_bits(const PublishedTriple& m) { return 3ull * m.alpha.kappa; }

inline std::string to_hex(const Bytes& data) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xF]);
    }
    return s;
}

}  // namespace mvicp
