#ifndef FINEGRAIN_OV_HPP
#define FINEGRAIN_OV_HPP

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bitvec.hpp"
#include "cnf.hpp"
#include "error.hpp"
#include "limits.hpp"

namespace fgr {

/// Equal-length Boolean vectors: one part of an (t-)OV instance.
struct VectorFamily {
    std::size_t dim = 0;
    std::vector<BitVec> vectors;

    std::size_t size() const noexcept { return vectors.size(); }
    friend bool operator==(const VectorFamily&, const VectorFamily&) = default;
};

struct OvInstance {
    std::vector<VectorFamily> parts;

    std::size_t t_parts() const noexcept { return parts.size(); }
    std::size_t dim() const noexcept { return parts.empty() ? 0 : parts.front().dim; }
    friend bool operator==(const OvInstance&, const OvInstance&) = default;
};

/// Variables covered by part `part` of a `t`-way split of x_1..x_n.
struct VariableGroup {
    int first = 1;
    int width = 0;
};

inline VariableGroup variable_group(int num_vars, int t, int part) {
    const int w = num_vars / t;
    return {part * w + 1, w};
}

/// Half/part assignment that produced row `index` of a reduced family.
inline Assignment part_assignment(int num_vars, int t, int part, std::uint64_t index) {
    const auto g = variable_group(num_vars, t, part);
    return Assignment::block(g.first, g.width, index);
}

/// SAT -> t-OV. Bit j of a part-i vector is 1 iff the part-i partial
/// assignment leaves clause j unsatisfied. Rows follow lexicographic order of
/// the part's assignments (see part_assignment).
inline OvInstance sat_to_tov(const Formula& f, int t) {
    if (t < 2) throw PreconditionError("t-OV needs at least two parts");
    const int n = f.num_vars();
    if (n % t != 0)
        throw PreconditionError("variable count " + std::to_string(n) + " is not divisible by " + std::to_string(t));
    const int w = n / t;
    if (w > 30) throw SizeError("part size 2^" + std::to_string(w) + " is too large");
    const std::size_t m = f.num_clauses();

    OvInstance inst;
    inst.parts.resize(static_cast<std::size_t>(t));
    for (int part = 0; part < t; ++part) {
        const auto g = variable_group(n, t, part);
        // Literals of each clause that fall inside this group, as (bit offset, polarity).
        std::vector<std::vector<std::pair<int, bool>>> local(m);
        for (std::size_t j = 0; j < m; ++j)
            for (int lit : f.clause(j)) {
                const int v = std::abs(lit);
                if (v >= g.first && v < g.first + g.width) local[j].emplace_back(g.width - 1 - (v - g.first), lit > 0);
            }
        auto& fam = inst.parts[static_cast<std::size_t>(part)];
        fam.dim = m;
        const std::uint64_t rows = std::uint64_t{1} << w;
        fam.vectors.reserve(rows);
        for (std::uint64_t idx = 0; idx < rows; ++idx) {
            BitVec vec(m);
            for (std::size_t j = 0; j < m; ++j) {
                bool sat = false;
                for (auto [bit, positive] : local[j])
                    if ((((idx >> bit) & 1U) != 0) == positive) {
                        sat = true;
                        break;
                    }
                if (!sat) vec.set(j);
            }
            fam.vectors.push_back(std::move(vec));
        }
    }
    return inst;
}

/// SAT -> OV: the two-part case of sat_to_tov.
inline OvInstance sat_to_ov(const Formula& f) {
    if (f.num_vars() % 2 != 0) throw PreconditionError("SAT -> OV needs an even variable count; pad first");
    return sat_to_tov(f, 2);
}

struct OvResult {
    bool found = false;
    /// Index into each part of the first orthogonal tuple in lexicographic order.
    std::vector<std::size_t> witness;
};

/// Exhaustive t-OV: is there one vector per part whose coordinatewise product is zero?
inline OvResult brute_ov(const OvInstance& inst, const Limits& limits = kDefaultLimits) {
    const std::size_t t = inst.t_parts();
    if (t == 0) return {};
    std::uint64_t product = 1;
    for (const auto& p : inst.parts) {
        if (p.dim != inst.dim()) throw ShapeError("OV parts differ in dimension");
        if (p.size() == 0) return {};
        if (product > limits.max_ov_tuples / p.size())
            throw SizeError("OV search space exceeds the exhaustive bound");
        product *= p.size();
    }

    OvResult r;
    r.witness.assign(t, 0);
    std::vector<BitVec> prefix(t + 1, BitVec(inst.dim(), true));
    // Depth-first over tuples; prefix[d] is the product of the first d choices.
    std::size_t depth = 0;
    while (true) {
        if (depth == t) {
            if (prefix[t].none()) {
                r.found = true;
                return r;
            }
            --depth;
            ++r.witness[depth];
        }
        if (r.witness[depth] >= inst.parts[depth].size()) {
            if (depth == 0) break;
            r.witness[depth] = 0;
            --depth;
            ++r.witness[depth];
            continue;
        }
        prefix[depth + 1] = prefix[depth] & inst.parts[depth].vectors[r.witness[depth]];
        ++depth;
    }
    r.witness.clear();
    return r;
}

// ---------------------------------------------------------------------------
// Text format: `ov <t> <dim> <size_1> ... <size_t>`, then one 0/1 line per vector.

inline void write_ov(std::ostream& out, const OvInstance& inst) {
    out << "ov " << inst.t_parts() << ' ' << inst.dim();
    for (const auto& p : inst.parts) out << ' ' << p.size();
    out << '\n';
    for (const auto& p : inst.parts)
        for (const auto& v : p.vectors) out << v.to_string() << '\n';
}

inline OvInstance read_ov(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> std::optional<std::string> {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line[0] == '#') continue;
            return line;
        }
        return std::nullopt;
    };

    std::optional<std::string> header;
    do {
        header = next_line();
    } while (header && header->find_first_not_of(" \t\r") == std::string::npos);
    if (!header) throw ParseError(lineno, "missing 'ov' header");
    std::istringstream hs(*header);
    std::string tag;
    long t = 0, dim = 0;
    if (!(hs >> tag >> t >> dim) || tag != "ov" || t < 1 || dim < 0) throw ParseError(lineno, "malformed 'ov' header");
    OvInstance inst;
    inst.parts.resize(static_cast<std::size_t>(t));
    for (auto& p : inst.parts) {
        long size = 0;
        if (!(hs >> size) || size < 0) throw ParseError(lineno, "malformed 'ov' header: missing part size");
        p.dim = static_cast<std::size_t>(dim);
        p.vectors.resize(static_cast<std::size_t>(size));
    }
    std::string extra;
    if (hs >> extra) throw ParseError(lineno, "malformed 'ov' header: trailing tokens");

    for (auto& p : inst.parts)
        for (auto& v : p.vectors) {
            auto l = next_line();
            if (!l) throw ParseError(lineno, "unexpected end of vector list");
            std::string s;
            for (char c : *l)
                if (c != ' ' && c != '\t' && c != '\r') s.push_back(c);
            auto bv = BitVec::from_string(s);
            if (!bv) throw ParseError(lineno, "vector must be a 0/1 string");
            if (bv->size() != static_cast<std::size_t>(dim)) throw ParseError(lineno, "vector length differs from dim");
            v = std::move(*bv);
        }
    return inst;
}

} // namespace fgr

#endif
