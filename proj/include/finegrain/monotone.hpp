#ifndef FINEGRAIN_MONOTONE_HPP
#define FINEGRAIN_MONOTONE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bitvec.hpp"
#include "cnf.hpp"
#include "encoding.hpp"
#include "error.hpp"
#include "ov.hpp"

namespace fgr {

// ---------------------------------------------------------------------------
// Monotone circuits

/// Wire source: input x_j (1-based), a constant, or an earlier gate (0-based).
struct WireRef {
    enum class Kind { Input, Const, Gate };
    Kind kind = Kind::Const;
    std::size_t index = 0;

    static WireRef input(std::size_t j) { return {Kind::Input, j}; }
    static WireRef constant(bool v) { return {Kind::Const, v ? 1U : 0U}; }
    static WireRef gate(std::size_t g) { return {Kind::Gate, g}; }
    friend bool operator==(const WireRef&, const WireRef&) = default;
};

enum class MonotoneOp { And, Or };

struct MonotoneGate {
    MonotoneOp op = MonotoneOp::And;
    WireRef lhs;
    WireRef rhs;
    friend bool operator==(const MonotoneGate&, const MonotoneGate&) = default;
};

/// Fan-in-2 AND/OR circuit in topological order; the last gate is the output.
class MonotoneCircuit {
public:
    MonotoneCircuit() = default;
    MonotoneCircuit(std::size_t num_inputs, std::vector<MonotoneGate> gates)
        : num_inputs_(num_inputs), gates_(std::move(gates)) {
        if (gates_.empty()) throw StructuralError("circuit has no gates");
        for (std::size_t g = 0; g < gates_.size(); ++g)
            for (const WireRef& r : {gates_[g].lhs, gates_[g].rhs}) {
                if (r.kind == WireRef::Kind::Gate && r.index >= g)
                    throw StructuralError("gate g" + std::to_string(g + 1) + " refers to a later gate");
                if (r.kind == WireRef::Kind::Input && (r.index == 0 || r.index > num_inputs_))
                    throw StructuralError("gate g" + std::to_string(g + 1) + " refers to input x" +
                                          std::to_string(r.index) + " outside 1.." + std::to_string(num_inputs_));
            }
    }

    std::size_t num_inputs() const noexcept { return num_inputs_; }
    std::size_t size() const noexcept { return gates_.size(); }
    const std::vector<MonotoneGate>& gates() const noexcept { return gates_; }

    /// Same circuit read as a function of `n >= num_inputs()` inputs.
    MonotoneCircuit widened(std::size_t n) const {
        if (n < num_inputs_)
            throw ShapeError("circuit reads " + std::to_string(num_inputs_) + " inputs, only " + std::to_string(n) +
                             " available");
        return MonotoneCircuit(n, gates_);
    }

    bool eval(const BitVec& x) const {
        if (x.size() != num_inputs_)
            throw ShapeError("circuit expects " + std::to_string(num_inputs_) + " inputs, got " +
                             std::to_string(x.size()));
        std::vector<std::uint8_t> val(gates_.size());
        auto read = [&](const WireRef& r) -> bool {
            switch (r.kind) {
            case WireRef::Kind::Input: return x.get(r.index - 1);
            case WireRef::Kind::Const: return r.index != 0;
            case WireRef::Kind::Gate: return val[r.index] != 0;
            }
            return false;
        };
        for (std::size_t g = 0; g < gates_.size(); ++g) {
            const bool a = read(gates_[g].lhs);
            const bool b = read(gates_[g].rhs);
            val[g] = gates_[g].op == MonotoneOp::And ? (a && b) : (a || b);
        }
        return val.back() != 0;
    }

    friend bool operator==(const MonotoneCircuit&, const MonotoneCircuit&) = default;

private:
    std::size_t num_inputs_ = 0;
    std::vector<MonotoneGate> gates_;
};

namespace detail {

inline WireRef parse_wire(const std::string& tok, std::size_t lineno, bool allow_const) {
    auto number = [&](std::size_t from) -> std::size_t {
        if (from >= tok.size()) throw ParseError(lineno, "bad reference '" + tok + "'");
        std::size_t v = 0;
        for (std::size_t i = from; i < tok.size(); ++i) {
            if (tok[i] < '0' || tok[i] > '9') throw ParseError(lineno, "bad reference '" + tok + "'");
            v = v * 10 + static_cast<std::size_t>(tok[i] - '0');
        }
        return v;
    };
    if (allow_const && (tok == "0" || tok == "1")) return WireRef::constant(tok == "1");
    if (tok[0] == 'x') {
        const std::size_t j = number(1);
        if (j == 0) throw ParseError(lineno, "inputs are numbered from x1");
        return WireRef::input(j);
    }
    if (tok[0] == 'g') {
        const std::size_t g = number(1);
        if (g == 0) throw ParseError(lineno, "gates are numbered from g1");
        return WireRef::gate(g - 1);
    }
    throw ParseError(lineno, "bad reference '" + tok + "'");
}

inline std::string wire_name(const WireRef& r) {
    switch (r.kind) {
    case WireRef::Kind::Input: return "x" + std::to_string(r.index);
    case WireRef::Kind::Const: return r.index ? "1" : "0";
    case WireRef::Kind::Gate: return "g" + std::to_string(r.index + 1);
    }
    return "?";
}

// Reads the `g<i> =` prefix and checks gates are numbered 1, 2, ... in order.
inline void expect_gate_label(std::istringstream& ls, const std::string& first, std::size_t expected,
                              std::size_t lineno) {
    if (first != "g" + std::to_string(expected))
        throw ParseError(lineno, "expected gate label g" + std::to_string(expected) + ", got '" + first + "'");
    std::string eq;
    if (!(ls >> eq) || eq != "=") throw ParseError(lineno, "expected '=' after gate label");
}

} // namespace detail

/// Text format: one gate per line, `g<i> = AND|OR <ref> <ref>`, refs are
/// `x<j>`, `0`, `1` or `g<j>` with j < i. An optional leading `inputs <n>` line
/// fixes the arity; otherwise it is the largest input index referenced.
/// Any gate type other than AND/OR raises StructuralError.
inline MonotoneCircuit read_monotone_circuit(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> declared_inputs;
    std::vector<MonotoneGate> gates;
    std::size_t max_input = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (tok == "inputs") {
            long n = -1;
            if (!gates.empty() || declared_inputs || !(ls >> n) || n < 0)
                throw ParseError(lineno, "malformed 'inputs' line");
            declared_inputs = static_cast<std::size_t>(n);
            continue;
        }
        detail::expect_gate_label(ls, tok, gates.size() + 1, lineno);
        std::string op, a, b, extra;
        if (!(ls >> op)) throw ParseError(lineno, "missing gate type");
        MonotoneGate g;
        if (op == "AND")
            g.op = MonotoneOp::And;
        else if (op == "OR")
            g.op = MonotoneOp::Or;
        else
            throw StructuralError("line " + std::to_string(lineno) + ": gate type '" + op +
                                  "' is not allowed in a monotone circuit");
        if (!(ls >> a >> b)) throw ParseError(lineno, "monotone gates take exactly two inputs");
        if (ls >> extra) throw ParseError(lineno, "monotone gates take exactly two inputs");
        g.lhs = detail::parse_wire(a, lineno, true);
        g.rhs = detail::parse_wire(b, lineno, true);
        for (const auto& r : {g.lhs, g.rhs}) {
            if (r.kind == WireRef::Kind::Gate && r.index >= gates.size())
                throw ParseError(lineno, "reference to gate that is not defined yet");
            if (r.kind == WireRef::Kind::Input) max_input = std::max(max_input, r.index);
        }
        gates.push_back(g);
    }
    if (gates.empty()) throw ParseError(lineno, "circuit has no gates");
    if (declared_inputs && max_input > *declared_inputs)
        throw ParseError(lineno, "input index exceeds declared arity");
    return MonotoneCircuit(declared_inputs.value_or(max_input), std::move(gates));
}

inline MonotoneCircuit parse_monotone_circuit(const std::string& text) {
    std::istringstream in(text);
    return read_monotone_circuit(in);
}

inline void write_monotone_circuit(std::ostream& out, const MonotoneCircuit& c) {
    out << "inputs " << c.num_inputs() << '\n';
    for (std::size_t g = 0; g < c.size(); ++g) {
        const auto& gate = c.gates()[g];
        out << 'g' << g + 1 << " = " << (gate.op == MonotoneOp::And ? "AND" : "OR") << ' '
            << detail::wire_name(gate.lhs) << ' ' << detail::wire_name(gate.rhs) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Separation

/// Vectors a monotone function must map to 1 (`ones_side`) and to 0 (`zeros_side`).
struct SeparationInstance {
    VectorFamily ones_side;
    VectorFamily zeros_side;
};

/// A monotone separator exists iff no zeros-side vector dominates a ones-side vector.
inline bool separable_monotone(const SeparationInstance& inst) {
    if (inst.ones_side.dim != inst.zeros_side.dim) throw ShapeError("separation families differ in dimension");
    for (const auto& z : inst.zeros_side.vectors)
        for (const auto& a : inst.ones_side.vectors)
            if (z.dominates(a)) return false;
    return true;
}

inline VectorFamily complement_family(const VectorFamily& fam) {
    VectorFamily out{fam.dim, {}};
    out.vectors.reserve(fam.size());
    for (const auto& v : fam.vectors) out.vectors.push_back(v.complement());
    return out;
}

/// (A_F, complement of B_F) from the two-part OV reduction; pads F to an even
/// variable count, which leaves both families unchanged as sets.
inline SeparationInstance build_separation_instance(const Formula& f) {
    const auto ov = sat_to_ov(pad_variables(f, 2));
    return {ov.parts[0], complement_family(ov.parts[1])};
}

/// f_F(x) = 1 iff no complemented B-side vector dominates x.
inline bool eval_f_F(const Formula& f, const BitVec& x) {
    if (x.size() != f.num_clauses())
        throw ShapeError("f_F expects " + std::to_string(f.num_clauses()) + " inputs, got " +
                         std::to_string(x.size()));
    const auto ov = sat_to_ov(pad_variables(f, 2));
    for (const auto& b : ov.parts[1].vectors)
        if (b.complement().dominates(x)) return false;
    return true;
}

/// Satisfiability oracle used by the universal function.
using SatOracle = std::function<bool(const Formula&)>;

inline bool brute_sat_oracle(const Formula& f) { return brute_sat(f).has_value(); }

/// The universal monotone function over (c, x): c is a candidate formula code
/// of length cls.encoded_length(), x has length cls.max_clauses(). When c
/// decodes to an unsatisfiable F with m(F) clauses, f_F reads the first m(F)
/// coordinates of x.
inline bool eval_universal(const BitVec& c, const BitVec& x, const FormulaClass& cls,
                           const SatOracle& is_sat = brute_sat_oracle) {
    const std::size_t l = cls.encoded_length();
    if (c.size() != l) throw ShapeError("code length " + std::to_string(c.size()) + " differs from l = " + std::to_string(l));
    if (x.size() != cls.max_clauses())
        throw ShapeError("clause input length " + std::to_string(x.size()) + " differs from m = " +
                         std::to_string(cls.max_clauses()));
    const std::size_t w = c.count();
    if (2 * w > l) return true;
    if (2 * w < l) return false;
    const auto f = decode_formula(c, cls);
    if (!f) return true;
    if (is_sat(*f)) return false;
    return eval_f_F(*f, x.slice(0, f->num_clauses()));
}

/// Monotone closure of a family: 1 iff z dominates some member.
inline bool closure_separator_eval(const VectorFamily& a_side, const BitVec& z) {
    if (z.size() != a_side.dim) throw ShapeError("input length differs from family dimension");
    for (const auto& a : a_side.vectors)
        if (z.dominates(a)) return true;
    return false;
}

/// The closure separator as an explicit circuit: OR over members of the AND of
/// each member's support. Empty support gives constant 1, empty family constant 0.
inline MonotoneCircuit closure_circuit(const VectorFamily& a_side) {
    std::vector<MonotoneGate> gates;
    auto add = [&](MonotoneOp op, WireRef a, WireRef b) {
        gates.push_back({op, a, b});
        return WireRef::gate(gates.size() - 1);
    };
    std::optional<WireRef> any;
    for (const auto& a : a_side.vectors) {
        std::optional<WireRef> term;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a.get(j)) term = term ? add(MonotoneOp::And, *term, WireRef::input(j + 1)) : WireRef::input(j + 1);
        WireRef t = term.value_or(WireRef::constant(true));
        any = any ? add(MonotoneOp::Or, *any, t) : t;
    }
    WireRef out = any.value_or(WireRef::constant(false));
    // Ensure the output is a gate even for single-wire closures.
    if (gates.empty() || !(out == WireRef::gate(gates.size() - 1))) add(MonotoneOp::Or, out, out);
    return MonotoneCircuit(a_side.dim, std::move(gates));
}

/// Balanced-code length used for the primed instance of a formula with n
/// (padded, even) variables: the code of an n/2-bit half assignment.
inline std::size_t primed_code_length(int padded_vars) {
    return 4 * static_cast<std::size_t>(std::max(1, padded_vars / 2));
}

/// (A'_F, complement of B'_F): A-side rows get their half assignment's balanced
/// code as prefix, B-side rows get 0^l, and the whole (l+m)-bit B' vector is
/// complemented.
inline SeparationInstance build_primed_instance(const Formula& f) {
    const Formula padded = pad_variables(f, 2);
    const int n = padded.num_vars();
    const auto ov = sat_to_ov(padded);
    const std::size_t cap = static_cast<std::size_t>(std::max(1, n / 2));
    const std::size_t l = primed_code_length(n);
    const std::size_t m = f.num_clauses();

    SeparationInstance inst;
    inst.ones_side.dim = l + m;
    inst.zeros_side.dim = l + m;
    for (std::size_t i = 0; i < ov.parts[0].size(); ++i) {
        const auto half = part_assignment(n, 2, 0, i);
        inst.ones_side.vectors.push_back(encode_balanced(half.bits(), cap).concat(ov.parts[0].vectors[i]));
    }
    for (const auto& b : ov.parts[1].vectors) inst.zeros_side.vectors.push_back(BitVec(l).concat(b).complement());
    return inst;
}

/// Circuit evaluates to 1 on every ones-side and 0 on every zeros-side vector.
inline bool circuit_separates(const MonotoneCircuit& c, const SeparationInstance& inst) {
    const MonotoneCircuit wide = c.widened(inst.ones_side.dim);
    for (const auto& a : inst.ones_side.vectors)
        if (!wide.eval(a)) return false;
    for (const auto& b : inst.zeros_side.vectors)
        if (wide.eval(b)) return false;
    return true;
}

enum class CertificateArity {
    Clauses, ///< circuit reads the m clause bits: checked against (A_F, complement B_F)
    Primed   ///< circuit reads l + m bits: checked against the primed instance
};

/// Accepts iff the circuit separates the formula's instance; acceptance
/// certifies that F is unsatisfiable. Circuits are monotone by construction
/// (AND/OR gates only).
inline bool verify_unsat_certificate(const Formula& f, const MonotoneCircuit& c,
                                     CertificateArity arity = CertificateArity::Clauses) {
    if (arity == CertificateArity::Clauses) return circuit_separates(c, build_separation_instance(f));
    return circuit_separates(c, build_primed_instance(f));
}

} // namespace fgr

#endif
