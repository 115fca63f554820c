#ifndef FINEGRAIN_ENCODING_HPP
#define FINEGRAIN_ENCODING_HPP

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bitvec.hpp"
#include "cnf.hpp"
#include "error.hpp"

namespace fgr {

// ---------------------------------------------------------------------------
// Balanced strings
//
// encode_balanced maps every x with |x| <= cap to a string of length 4*cap and
// weight exactly 2*cap:
//
//     1^|x| 0 x 1^a 0^b,   a = 2*cap - |x| - w(x),   b = rest.
//
// The unary prefix fixes |x|, so the map is injective and the inverse is a
// single left-to-right scan.

inline BitVec encode_balanced(const BitVec& x, std::size_t cap) {
    if (cap == 0) throw PreconditionError("balanced encoding needs a positive capacity");
    if (x.size() > cap)
        throw PreconditionError("payload length " + std::to_string(x.size()) + " exceeds capacity " +
                                std::to_string(cap));
    const std::size_t len = x.size();
    const std::size_t ones = 2 * cap - len - x.count();
    BitVec out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(true);
    out.push_back(false);
    for (std::size_t i = 0; i < len; ++i) out.push_back(x.get(i));
    for (std::size_t i = 0; i < ones; ++i) out.push_back(true);
    while (out.size() < 4 * cap) out.push_back(false);
    return out;
}

/// Inverse of encode_balanced; nullopt for strings outside its image.
inline std::optional<BitVec> decode_balanced(const BitVec& s) {
    const std::size_t total = s.size();
    if (total == 0 || total % 4 != 0) return std::nullopt;
    const std::size_t cap = total / 4;
    if (s.count() != 2 * cap) return std::nullopt;

    std::size_t len = 0;
    while (len < total && s.get(len)) ++len;
    if (len > cap || len == total) return std::nullopt;
    // s[len] == 0 terminates the unary prefix.
    BitVec x = s.slice(len + 1, len);
    std::size_t pos = 2 * len + 1;
    const std::size_t ones = 2 * cap - len - x.count();
    for (std::size_t i = 0; i < ones; ++i, ++pos)
        if (pos >= total || !s.get(pos)) return std::nullopt;
    for (; pos < total; ++pos)
        if (s.get(pos)) return std::nullopt;
    return x;
}

// ---------------------------------------------------------------------------
// Formula encoding
//
// A formula in the class (n variables, clause width <= k, m <= beta*n clauses)
// is serialized as a stream of fixed-width symbols: sign bit followed by the
// variable index in `index_bits` bits. A symbol with index 0 closes a clause.
// The serialization is then wrapped by encode_balanced with a capacity large
// enough for the longest formula in the class, so every member of the class
// encodes to the same length l.

struct FormulaClass {
    int n = 0;
    int k = 3;
    double beta = 1.0;

    std::size_t max_clauses() const {
        // Guard against 0.999999 * n style rounding of products like 2.0 * 3.
        return static_cast<std::size_t>(std::floor(beta * n + 1e-9));
    }
    std::size_t index_bits() const { return static_cast<std::size_t>(std::bit_width(static_cast<unsigned>(n))); }
    std::size_t symbol_bits() const { return 1 + index_bits(); }
    std::size_t max_payload_bits() const {
        return max_clauses() * static_cast<std::size_t>(k + 1) * symbol_bits();
    }
    std::size_t capacity() const { return std::max<std::size_t>(1, max_payload_bits()); }
    /// Length l of every encoded formula in the class.
    std::size_t encoded_length() const { return 4 * capacity(); }

    /// Reason `f` is outside the class, if any.
    std::optional<std::string> membership_error(const Formula& f) const {
        if (f.num_vars() != n)
            return "formula has " + std::to_string(f.num_vars()) + " variables, class expects " + std::to_string(n);
        if (f.width() > k) return "clause width " + std::to_string(f.width()) + " exceeds " + std::to_string(k);
        if (f.num_clauses() > max_clauses())
            return std::to_string(f.num_clauses()) + " clauses exceed beta*n = " + std::to_string(max_clauses());
        return std::nullopt;
    }
};

inline BitVec serialize_formula(const Formula& f, const FormulaClass& cls) {
    const std::size_t w = cls.index_bits();
    BitVec out;
    auto put = [&](bool negative, unsigned index) {
        out.push_back(negative);
        for (std::size_t b = 0; b < w; ++b) out.push_back((index >> (w - 1 - b)) & 1U);
    };
    for (const auto& c : f.clauses()) {
        for (int lit : c) put(lit < 0, static_cast<unsigned>(std::abs(lit)));
        put(false, 0);
    }
    return out;
}

inline std::optional<Formula> deserialize_formula(const BitVec& bits, const FormulaClass& cls) {
    const std::size_t sym = cls.symbol_bits();
    const std::size_t w = cls.index_bits();
    if (bits.size() % sym != 0) return std::nullopt;
    std::vector<Clause> clauses;
    Clause current;
    for (std::size_t pos = 0; pos < bits.size(); pos += sym) {
        const bool negative = bits.get(pos);
        unsigned index = 0;
        for (std::size_t b = 0; b < w; ++b) index = (index << 1) | static_cast<unsigned>(bits.get(pos + 1 + b));
        if (index == 0) {
            // Terminators carry a zero sign bit; anything else is not in the image.
            if (negative || current.empty()) return std::nullopt;
            if (Formula::clause_error(current, cls.n)) return std::nullopt;
            clauses.push_back(std::move(current));
            current.clear();
            continue;
        }
        if (static_cast<int>(index) > cls.n) return std::nullopt;
        const int lit = negative ? -static_cast<int>(index) : static_cast<int>(index);
        current.push_back(lit);
    }
    if (!current.empty()) return std::nullopt;
    Formula f(cls.n, std::move(clauses));
    if (cls.membership_error(f)) return std::nullopt;
    return f;
}

/// Injective map from the formula class into balanced strings of length
/// cls.encoded_length().
inline BitVec encode_formula(const Formula& f, const FormulaClass& cls) {
    if (auto err = cls.membership_error(f)) throw PreconditionError(*err);
    return encode_balanced(serialize_formula(f, cls), cls.capacity());
}

inline std::optional<Formula> decode_formula(const BitVec& s, const FormulaClass& cls) {
    if (s.size() != cls.encoded_length()) return std::nullopt;
    auto payload = decode_balanced(s);
    if (!payload) return std::nullopt;
    return deserialize_formula(*payload, cls);
}

} // namespace fgr

#endif
