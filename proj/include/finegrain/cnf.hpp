#ifndef FINEGRAIN_CNF_HPP
#define FINEGRAIN_CNF_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bitvec.hpp"
#include "error.hpp"
#include "limits.hpp"

namespace fgr {

/// A clause is a disjunction of nonzero signed literals: `v` is x_v, `-v` is its negation.
using Clause = std::vector<int>;

/// CNF formula over variables 1..n. Clause order is significant: reductions
/// index clauses by position.
class Formula {
public:
    Formula() = default;

    Formula(int num_vars, std::vector<Clause> clauses) : n_(num_vars), clauses_(std::move(clauses)) {
        if (n_ < 0) throw PreconditionError("negative variable count");
        for (std::size_t j = 0; j < clauses_.size(); ++j) {
            if (auto err = clause_error(clauses_[j], n_))
                throw PreconditionError("clause " + std::to_string(j + 1) + ": " + *err);
            width_ = std::max(width_, static_cast<int>(clauses_[j].size()));
        }
    }

    /// Reason a clause would break the Formula invariants, if any.
    static std::optional<std::string> clause_error(const Clause& c, int num_vars) {
        if (c.empty()) return "empty clause";
        for (int lit : c) {
            if (lit == 0 || std::abs(lit) > num_vars) return "literal out of range";
            if (std::find(c.begin(), c.end(), -lit) != c.end()) return "clause contains a literal and its negation";
        }
        return std::nullopt;
    }

    int num_vars() const noexcept { return n_; }
    std::size_t num_clauses() const noexcept { return clauses_.size(); }
    /// Maximum clause width (0 for the empty formula).
    int width() const noexcept { return width_; }
    const std::vector<Clause>& clauses() const noexcept { return clauses_; }
    const Clause& clause(std::size_t j) const { return clauses_.at(j); }

    friend bool operator==(const Formula&, const Formula&) = default;

private:
    int n_ = 0;
    std::vector<Clause> clauses_;
    int width_ = 0;
};

/// Values for an ordered list of distinct variables (a full or partial assignment).
class Assignment {
public:
    Assignment() = default;
    Assignment(std::vector<int> scope, BitVec bits) : scope_(std::move(scope)), bits_(std::move(bits)) {
        if (scope_.size() != bits_.size()) throw ShapeError("assignment scope and bits differ in length");
        auto sorted = scope_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw PreconditionError("assignment scope has duplicate variables");
    }

    /// Assignment to x_1..x_n.
    static Assignment full(BitVec bits) {
        std::vector<int> scope(bits.size());
        for (std::size_t i = 0; i < scope.size(); ++i) scope[i] = static_cast<int>(i) + 1;
        return Assignment(std::move(scope), std::move(bits));
    }

    /// Assignment to `width` consecutive variables starting at `first`, taken
    /// from `index` with the first variable as the most significant bit.
    /// Enumerating index = 0, 1, ... visits assignments in lexicographic order.
    static Assignment block(int first, int width, std::uint64_t index) {
        std::vector<int> scope(static_cast<std::size_t>(width));
        for (int i = 0; i < width; ++i) scope[static_cast<std::size_t>(i)] = first + i;
        return Assignment(std::move(scope), BitVec::from_uint(index, static_cast<std::size_t>(width)));
    }

    const std::vector<int>& scope() const noexcept { return scope_; }
    const BitVec& bits() const noexcept { return bits_; }
    std::size_t size() const noexcept { return scope_.size(); }

    /// Value of variable `var`, or nullopt if unassigned.
    std::optional<bool> value(int var) const {
        for (std::size_t i = 0; i < scope_.size(); ++i)
            if (scope_[i] == var) return bits_.get(i);
        return std::nullopt;
    }

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<int> scope_;
    BitVec bits_;
};

enum class Convention { Satisfied, Unsatisfied };

/// Per-clause bit vector; under `Satisfied`, bit j is set iff clause j is satisfied.
struct SatisfactionVector {
    BitVec bits;
    Convention convention = Convention::Satisfied;

    SatisfactionVector flipped() const {
        return {bits.complement(),
                convention == Convention::Satisfied ? Convention::Unsatisfied : Convention::Satisfied};
    }
};

// ---------------------------------------------------------------------------
// DIMACS

inline Formula parse_dimacs(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    long declared_n = 0, declared_m = 0;
    std::vector<Clause> clauses;
    Clause current;
    std::size_t current_start = 0;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok[0] == 'c') continue;
        if (tok == "%") break;
        if (tok == "p") {
            std::string fmt;
            if (have_header) throw ParseError(lineno, "duplicate header");
            if (!(ls >> fmt >> declared_n >> declared_m) || fmt != "cnf" || declared_n < 0 || declared_m < 0)
                throw ParseError(lineno, "malformed header");
            if (ls >> tok) throw ParseError(lineno, "malformed header");
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(lineno, "malformed header: clause before 'p cnf' line");
        ls.clear();
        ls.seekg(0);
        long lit = 0;
        while (ls >> tok) {
            char* end = nullptr;
            lit = std::strtol(tok.c_str(), &end, 10);
            if (*end != '\0') throw ParseError(lineno, "invalid literal '" + tok + "'");
            if (lit == 0) {
                if (current.empty()) throw ParseError(lineno, "empty clause");
                if (auto err = Formula::clause_error(current, static_cast<int>(declared_n)))
                    throw ParseError(current_start, *err);
                clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (std::labs(lit) > declared_n) throw ParseError(lineno, "literal out of range");
            if (current.empty()) current_start = lineno;
            current.push_back(static_cast<int>(lit));
        }
    }
    if (!have_header) throw ParseError(lineno, "malformed header: missing 'p cnf' line");
    if (!current.empty()) throw ParseError(lineno, "clause not terminated by 0");
    if (static_cast<long>(clauses.size()) != declared_m)
        throw ParseError(lineno, "header declares " + std::to_string(declared_m) + " clauses, found " +
                                     std::to_string(clauses.size()));
    return Formula(static_cast<int>(declared_n), std::move(clauses));
}

inline Formula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

inline void write_dimacs(std::ostream& out, const Formula& f) {
    out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
    for (const auto& c : f.clauses()) {
        for (int lit : c) out << lit << ' ';
        out << "0\n";
    }
}

// ---------------------------------------------------------------------------
// Evaluation

/// Clause satisfaction under a possibly partial assignment. A clause counts as
/// satisfied only when some assigned literal makes it true.
inline SatisfactionVector eval_clauses(const Formula& f, const Assignment& a) {
    std::vector<signed char> value(static_cast<std::size_t>(f.num_vars()) + 1, -1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int v = a.scope()[i];
        if (v < 1 || v > f.num_vars())
            throw PreconditionError("assignment variable " + std::to_string(v) + " out of range");
        value[static_cast<std::size_t>(v)] = a.bits().get(i) ? 1 : 0;
    }
    SatisfactionVector out{BitVec(f.num_clauses()), Convention::Satisfied};
    for (std::size_t j = 0; j < f.num_clauses(); ++j) {
        for (int lit : f.clause(j)) {
            const signed char x = value[static_cast<std::size_t>(std::abs(lit))];
            if (x >= 0 && (x == 1) == (lit > 0)) {
                out.bits.set(j);
                break;
            }
        }
    }
    return out;
}

namespace detail {

// Clause as bit masks over an integer whose bit (n - v) holds x_v, so counting
// upward from 0 enumerates full assignments lexicographically.
struct ClauseMask {
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
};

inline std::vector<ClauseMask> clause_masks(const Formula& f) {
    const int n = f.num_vars();
    std::vector<ClauseMask> masks;
    masks.reserve(f.num_clauses());
    for (const auto& c : f.clauses()) {
        ClauseMask m;
        for (int lit : c) {
            const std::uint64_t bit = std::uint64_t{1} << (n - std::abs(lit));
            (lit > 0 ? m.pos : m.neg) |= bit;
        }
        masks.push_back(m);
    }
    return masks;
}

inline void check_exhaustive(const Formula& f, const Limits& limits) {
    if (f.num_vars() > limits.max_vars || f.num_vars() > 62)
        throw SizeError("formula has " + std::to_string(f.num_vars()) + " variables; exhaustive bound is " +
                        std::to_string(limits.max_vars));
}

} // namespace detail

/// Lexicographically first satisfying full assignment, by exhaustive search.
inline std::optional<Assignment> brute_sat(const Formula& f, const Limits& limits = kDefaultLimits) {
    detail::check_exhaustive(f, limits);
    const auto masks = detail::clause_masks(f);
    const int n = f.num_vars();
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t v = 0; v < total; ++v) {
        const std::uint64_t nv = ~v;
        bool ok = true;
        for (const auto& m : masks) {
            if (!((v & m.pos) | (nv & m.neg))) {
                ok = false;
                break;
            }
        }
        if (ok) return Assignment::block(1, n, v);
    }
    return std::nullopt;
}

/// Whether some full assignment satisfies exactly `t` clauses of a 3-CNF.
inline bool brute_max3sat_exact(const Formula& f, std::size_t t, const Limits& limits = kDefaultLimits) {
    if (f.width() > 3) throw PreconditionError("formula is not a 3-CNF");
    detail::check_exhaustive(f, limits);
    if (t > f.num_clauses()) return false;
    const auto masks = detail::clause_masks(f);
    const std::uint64_t total = std::uint64_t{1} << f.num_vars();
    for (std::uint64_t v = 0; v < total; ++v) {
        const std::uint64_t nv = ~v;
        std::size_t sat = 0;
        for (const auto& m : masks) sat += ((v & m.pos) | (nv & m.neg)) != 0;
        if (sat == t) return true;
    }
    return false;
}

/// Adds unused variables so that the variable count is a multiple of `multiple`.
inline Formula pad_variables(const Formula& f, int multiple) {
    if (multiple < 1) throw PreconditionError("padding multiple must be positive");
    const int n = f.num_vars();
    const int padded = (n + multiple - 1) / multiple * multiple;
    if (padded == n) return f;
    return Formula(padded, f.clauses());
}

// ---------------------------------------------------------------------------
// Sparsification interface

/// Strategy producing formulas whose disjunction is equisatisfiable with the
/// input, each over at most as many variables.
using Sparsifier = std::function<std::vector<Formula>(const Formula&, double eps)>;

inline std::vector<Formula> pass_through_sparsifier(const Formula& f, double) { return {f}; }

struct SparsifyResult {
    std::vector<Formula> formulas;
    /// Every output has m <= beta * n.
    bool sparse = false;
};

inline SparsifyResult sparsify(const Formula& f, double eps, double beta,
                               const Sparsifier& strategy = pass_through_sparsifier) {
    if (!(eps > 0)) throw PreconditionError("sparsification parameter must be positive");
    if (!strategy) throw PreconditionError("no sparsifier strategy provided");
    SparsifyResult r{strategy(f, eps), true};
    for (const auto& g : r.formulas) {
        if (g.num_vars() > f.num_vars()) throw PreconditionError("sparsifier output has more variables than input");
        if (static_cast<double>(g.num_clauses()) > beta * f.num_vars()) r.sparse = false;
    }
    return r;
}

} // namespace fgr

#endif
