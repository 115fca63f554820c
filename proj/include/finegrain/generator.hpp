#ifndef FINEGRAIN_GENERATOR_HPP
#define FINEGRAIN_GENERATOR_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>

#include "bitvec.hpp"
#include "clique.hpp"
#include "encoding.hpp"
#include "error.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "text.hpp"

namespace fgr {

/// Which object a seed asks for.
enum class Selector {
    RigM,   // M[i,l] = A_0[j1,i,l]
    RigL,   // L[i,l] = A_1[i,l,j0]
    TrM,    // M[j2,j3] = A_1[j2,j3,j0]
    TrL,    // L[j3,j1] = A_2[j3,j0,j1]
    TrT,    // T[j1,j2] = A_3[j0,j1,j2]
    Tensor, // A_0
    Matmul, // matmul_tensor(sqrt k)
};

inline const char* selector_name(Selector s) {
    switch (s) {
    case Selector::RigM: return "rig-M";
    case Selector::RigL: return "rig-L";
    case Selector::TrM: return "tr-M";
    case Selector::TrL: return "tr-L";
    case Selector::TrT: return "tr-T";
    case Selector::Tensor: return "tensor";
    case Selector::Matmul: return "matmul";
    }
    return "?";
}

inline std::optional<Selector> parse_selector(const std::string& s) {
    for (auto sel : {Selector::RigM, Selector::RigL, Selector::TrM, Selector::TrL, Selector::TrT, Selector::Tensor,
                     Selector::Matmul})
        if (s == selector_name(sel)) return sel;
    return std::nullopt;
}

struct GeneratorSeed {
    BitVec code; // encode_formula output
    std::size_t t = 0;
    TVec tvec{};
    std::size_t j0 = 0;
    std::size_t j1 = 0;
    Selector selector = Selector::RigM;

    friend bool operator==(const GeneratorSeed&, const GeneratorSeed&) = default;
};

/// Empty (monostate) when the seed is not valid.
using GeneratorOutput = std::variant<std::monostate, FieldMatrix, Tensor3>;

inline bool is_empty_output(const GeneratorOutput& out) { return std::holds_alternative<std::monostate>(out); }

/// Maps seeds to matrices or tensors for 3-CNFs on n variables with at most
/// beta*n clauses.
class Generator {
public:
    Generator(int n, double beta, Field field = Field()) : cls_{n, 3, beta}, field_(field) {}

    const FormulaClass& formula_class() const noexcept { return cls_; }
    const Field& field() const noexcept { return field_; }

    GeneratorOutput operator()(const GeneratorSeed& seed) const {
        const auto f = decode_formula(seed.code, cls_);
        if (!f) return std::monostate{};
        if (seed.tvec[0] + seed.tvec[1] + seed.tvec[2] + seed.tvec[3] != seed.t) return std::monostate{};
        const auto inst = build_clique_instance(*f, seed.tvec, field_, true);
        const std::size_t k = inst.k;
        if (seed.j0 >= k || seed.j1 >= k) return std::monostate{};
        switch (seed.selector) {
        case Selector::RigM: return rig_slice_M(inst, seed.j1);
        case Selector::RigL: return rig_slice_L(inst, seed.j0);
        case Selector::TrM: return tr_slice_M(inst, seed.j0);
        case Selector::TrL: return tr_slice_L(inst, seed.j0);
        case Selector::TrT: return tr_slice_T(inst, seed.j0);
        case Selector::Tensor: return inst.A[0];
        case Selector::Matmul: {
            std::size_t s = 0;
            while ((s + 1) * (s + 1) <= k) ++s;
            if (s * s != k) return std::monostate{};
            return matmul_tensor(s, field_);
        }
        }
        return std::monostate{};
    }

private:
    FormulaClass cls_;
    Field field_;
};

// ---------------------------------------------------------------------------
// Wire format: `seed <hex> <t> <t0> <t1> <t2> <t3> <j0> <j1> <selector>`.
// The code is written in hex, 4 bits per digit, most significant bit first;
// indices are 0-based.

inline std::string bits_to_hex(const BitVec& b) {
    if (b.size() % 4 != 0) throw PreconditionError("bit length is not a multiple of 4");
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < b.size(); i += 4)
        out += digits[(b.get(i) << 3) | (b.get(i + 1) << 2) | (b.get(i + 2) << 1) | b.get(i + 3)];
    return out;
}

inline std::optional<BitVec> hex_to_bits(const std::string& s) {
    BitVec out;
    for (char c : s) {
        int v = 0;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else return std::nullopt;
        for (int b = 3; b >= 0; --b) out.push_back((v >> b) & 1);
    }
    return out;
}

inline void write_seed(std::ostream& out, const GeneratorSeed& s) {
    out << "seed " << bits_to_hex(s.code) << ' ' << s.t;
    for (auto t : s.tvec) out << ' ' << t;
    out << ' ' << s.j0 << ' ' << s.j1 << ' ' << selector_name(s.selector) << '\n';
}

inline GeneratorSeed read_seed(std::istream& in) {
    detail::TokenReader r(in);
    r.expect("seed");
    GeneratorSeed s;
    std::size_t line = r.line();
    auto bits = hex_to_bits(r.word());
    if (!bits) throw ParseError(line, "formula code is not hexadecimal");
    s.code = std::move(*bits);
    s.t = r.count();
    for (auto& t : s.tvec) t = r.count();
    s.j0 = r.count();
    s.j1 = r.count();
    line = r.line();
    auto sel = parse_selector(r.word());
    if (!sel) throw ParseError(line, "unknown selector");
    s.selector = *sel;
    r.expect_end();
    return s;
}

} // namespace fgr

#endif
