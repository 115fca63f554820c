#ifndef FINEGRAIN_THRESHOLD_HPP
#define FINEGRAIN_THRESHOLD_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bitvec.hpp"
#include "error.hpp"
#include "limits.hpp"
#include "monotone.hpp"
#include "ov.hpp"

namespace fgr {

/// THR_a^b gate: 1 iff at least `threshold` of its `inputs` are 1. Inputs are
/// plain variables or earlier gates; repeated wires are allowed.
struct ThrGate {
    std::size_t threshold = 2;
    std::vector<WireRef> inputs;
    std::size_t arity() const noexcept { return inputs.size(); }
    friend bool operator==(const ThrGate&, const ThrGate&) = default;
};

/// Circuit of THR_{l+1}^{lt+1} gates for a fixed t (l may differ per gate).
/// The struct itself does not enforce the gate shape: use structural_error()
/// so that malformed witnesses can be represented and rejected.
struct ThrCircuit {
    std::size_t t = 2;
    std::size_t num_vars = 0;
    std::vector<ThrGate> gates;

    friend bool operator==(const ThrCircuit&, const ThrCircuit&) = default;
};

/// Reason the circuit is not a valid THR_{l+1}^{lt+1} circuit, if any.
inline std::optional<std::string> structural_error(const ThrCircuit& c) {
    if (c.t < 1) return "t must be positive";
    if (c.gates.empty()) return "circuit has no gates";
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
        const auto& gate = c.gates[g];
        const std::string where = "gate g" + std::to_string(g + 1) + ": ";
        if (gate.threshold < 2) return where + "threshold must be at least 2";
        if (gate.arity() != (gate.threshold - 1) * c.t + 1)
            return where + "THR_" + std::to_string(gate.threshold) + "^" + std::to_string(gate.arity()) +
                   " does not have the form THR_{l+1}^{l*" + std::to_string(c.t) + "+1}";
        for (const auto& r : gate.inputs) {
            if (r.kind == WireRef::Kind::Const) return where + "constants are not allowed";
            if (r.kind == WireRef::Kind::Gate && r.index >= g) return where + "refers to a later gate";
            if (r.kind == WireRef::Kind::Input && (r.index == 0 || r.index > c.num_vars))
                return where + "input x" + std::to_string(r.index) + " out of range";
        }
    }
    return std::nullopt;
}

inline bool eval_thr_circuit(const ThrCircuit& c, const BitVec& x) {
    if (x.size() != c.num_vars)
        throw ShapeError("THR circuit expects " + std::to_string(c.num_vars) + " inputs, got " +
                         std::to_string(x.size()));
    if (c.gates.empty()) throw StructuralError("circuit has no gates");
    std::vector<std::uint8_t> val(c.gates.size());
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
        std::size_t ones = 0;
        for (const auto& r : c.gates[g].inputs) {
            switch (r.kind) {
            case WireRef::Kind::Input:
                if (r.index == 0 || r.index > c.num_vars) throw StructuralError("input reference out of range");
                ones += x.get(r.index - 1);
                break;
            case WireRef::Kind::Gate:
                if (r.index >= g) throw StructuralError("reference to a later gate");
                ones += val[r.index];
                break;
            case WireRef::Kind::Const: ones += r.index != 0; break;
            }
        }
        val[g] = ones >= c.gates[g].threshold;
    }
    return val.back() != 0;
}

/// THR_{l+1}^{lt+1} over `l*t+1` copies of x_j: computes x_j itself.
inline ThrCircuit variable_witness(std::size_t num_vars, std::size_t t, std::size_t var, std::size_t l = 1) {
    ThrCircuit c{t, num_vars, {}};
    c.gates.push_back({l + 1, std::vector<WireRef>(l * t + 1, WireRef::input(var))});
    return c;
}

// ---------------------------------------------------------------------------
// Truth tables and Q_t

/// Boolean function on n <= 20 variables. Entry `index` is f(x) where x_i is
/// bit (n - i) of the index, i.e. x_1 is the most significant bit.
struct TruthTable {
    std::size_t n = 0;
    std::vector<std::uint8_t> bits;

    TruthTable() = default;
    explicit TruthTable(std::size_t arity, bool value = false) : n(arity) {
        if (arity > 20) throw SizeError("truth tables are limited to 20 variables");
        bits.assign(std::size_t{1} << arity, value ? 1 : 0);
    }

    std::size_t rows() const noexcept { return bits.size(); }
    bool at(std::size_t index) const { return bits.at(index) != 0; }

    /// Input vector for row `index`.
    BitVec input(std::size_t index) const { return BitVec::from_uint(index, n); }

    template <class F>
    static TruthTable tabulate(std::size_t arity, F&& fn) {
        TruthTable tt(arity);
        for (std::size_t i = 0; i < tt.rows(); ++i) tt.bits[i] = fn(tt.input(i)) ? 1 : 0;
        return tt;
    }
};

/// f is in Q_t iff no t zeros of f (repetition allowed) have an all-ones OR.
/// Computed as a reachability closure over OR-masks: step s holds every mask
/// that is the OR of s zeros.
inline bool qt_membership(const TruthTable& f, std::size_t t, const Limits& limits = kDefaultLimits) {
    if (t < 1) throw PreconditionError("t must be positive");
    if (f.rows() != (std::size_t{1} << f.n)) throw ShapeError("truth table length is not 2^n");
    std::vector<std::uint32_t> zeros;
    for (std::size_t i = 0; i < f.rows(); ++i)
        if (!f.at(i)) zeros.push_back(static_cast<std::uint32_t>(i));
    if (zeros.empty()) return true;
    const std::uint64_t work = static_cast<std::uint64_t>(t) * f.rows() * zeros.size();
    if (work > limits.max_qt_work) throw SizeError("Q_t membership check exceeds the exhaustive bound");

    const std::uint32_t full = static_cast<std::uint32_t>(f.rows() - 1);
    std::vector<std::uint8_t> reach(f.rows(), 0), next;
    for (auto z : zeros) reach[z] = 1;
    for (std::size_t step = 1;; ++step) {
        if (reach[full]) return false;
        if (step == t) return true;
        next = reach;
        for (std::size_t mask = 0; mask < reach.size(); ++mask)
            if (reach[mask])
                for (auto z : zeros) next[mask | z] = 1;
        if (next == reach) return true;
        reach.swap(next);
    }
}

enum class WitnessVerdict { Accept, StructuralReject, SemanticReject };

/// Accepts iff C is a valid THR_{l+1}^{lt+1} circuit for this t and C <= f
/// pointwise; acceptance certifies f in Q_t.
inline WitnessVerdict verify_qt_witness(const TruthTable& f, const ThrCircuit& c, std::size_t t) {
    if (c.t != t) throw PreconditionError("witness is built for t = " + std::to_string(c.t));
    if (c.num_vars > f.n) throw ShapeError("witness reads more variables than the truth table has");
    ThrCircuit wide = c;
    wide.num_vars = f.n;
    if (structural_error(wide)) return WitnessVerdict::StructuralReject;
    for (std::size_t i = 0; i < f.rows(); ++i)
        if (!f.at(i) && eval_thr_circuit(wide, f.input(i))) return WitnessVerdict::SemanticReject;
    return WitnessVerdict::Accept;
}

/// Accepts iff C(complement x) = 0 for every vector x of every part; acceptance
/// certifies that the instance has no orthogonal tuple.
inline bool verify_tov_certificate(const OvInstance& inst, const ThrCircuit& c) {
    if (c.t != inst.t_parts())
        throw PreconditionError("circuit t = " + std::to_string(c.t) + " but instance has " +
                                std::to_string(inst.t_parts()) + " parts");
    if (c.num_vars > inst.dim())
        throw ShapeError("circuit reads " + std::to_string(c.num_vars) + " variables, instance dimension is " +
                         std::to_string(inst.dim()));
    ThrCircuit wide = c;
    wide.num_vars = inst.dim();
    if (auto err = structural_error(wide)) throw StructuralError(*err);
    for (const auto& part : inst.parts)
        for (const auto& x : part.vectors)
            if (eval_thr_circuit(wide, x.complement())) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Text format: `t <t>` header, optional `vars <n>`, then
// `g<i> = THR <a> <b> <ref...>` with exactly b references.

inline ThrCircuit read_thr_circuit(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> t, declared_vars;
    ThrCircuit c;
    std::size_t max_var = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (tok == "t") {
            long v = 0;
            if (t || !(ls >> v) || v < 1) throw ParseError(lineno, "malformed 't' header");
            t = static_cast<std::size_t>(v);
            continue;
        }
        if (!t) throw ParseError(lineno, "missing 't <t>' header");
        if (tok == "vars") {
            long v = -1;
            if (declared_vars || !c.gates.empty() || !(ls >> v) || v < 0) throw ParseError(lineno, "malformed 'vars' line");
            declared_vars = static_cast<std::size_t>(v);
            continue;
        }
        detail::expect_gate_label(ls, tok, c.gates.size() + 1, lineno);
        std::string op;
        long a = 0, b = 0;
        if (!(ls >> op)) throw ParseError(lineno, "missing gate type");
        if (op != "THR") throw StructuralError("line " + std::to_string(lineno) + ": gate type '" + op + "' is not THR");
        if (!(ls >> a >> b) || a < 0 || b < 0) throw ParseError(lineno, "THR gate needs threshold and arity");
        ThrGate gate;
        gate.threshold = static_cast<std::size_t>(a);
        std::string ref;
        while (ls >> ref) {
            auto r = detail::parse_wire(ref, lineno, false);
            if (r.kind == WireRef::Kind::Gate && r.index >= c.gates.size())
                throw ParseError(lineno, "reference to gate that is not defined yet");
            if (r.kind == WireRef::Kind::Input) max_var = std::max(max_var, r.index);
            gate.inputs.push_back(r);
        }
        if (gate.inputs.size() != static_cast<std::size_t>(b))
            throw ParseError(lineno, "gate declares " + std::to_string(b) + " inputs but lists " +
                                         std::to_string(gate.inputs.size()));
        c.gates.push_back(std::move(gate));
    }
    if (!t) throw ParseError(lineno, "missing 't <t>' header");
    if (c.gates.empty()) throw ParseError(lineno, "circuit has no gates");
    if (declared_vars && max_var > *declared_vars) throw ParseError(lineno, "input index exceeds declared arity");
    c.t = *t;
    c.num_vars = declared_vars.value_or(max_var);
    return c;
}

inline ThrCircuit parse_thr_circuit(const std::string& text) {
    std::istringstream in(text);
    return read_thr_circuit(in);
}

inline void write_thr_circuit(std::ostream& out, const ThrCircuit& c) {
    out << "t " << c.t << '\n' << "vars " << c.num_vars << '\n';
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
        const auto& gate = c.gates[g];
        out << 'g' << g + 1 << " = THR " << gate.threshold << ' ' << gate.arity();
        for (const auto& r : gate.inputs) out << ' ' << detail::wire_name(r);
        out << '\n';
    }
}

} // namespace fgr

#endif
