#ifndef FINEGRAIN_REGIME_HPP
#define FINEGRAIN_REGIME_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace fgr {

// Exponent bookkeeping for the rigidity / tensor-rank trade-off. All
// quantities are exponents of k; omega is only ever a number here.

struct RegimeParams {
    double alpha = 0.5;
    double beta = 1.0;
    double delta = 0.0;
    double omega = 2.372;
    std::optional<double> Delta;
};

enum class Regime { Tradeoff, Canonical, WeakenedRigidity, SuperlinearRank };

/// Slack below which an inequality still counts as satisfied.
inline constexpr double kRegimeTolerance = 1e-12;

/// lhs <= rhs, with margin = rhs - lhs.
struct Inequality {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double margin() const noexcept { return rhs - lhs; }
    bool holds() const noexcept { return margin() >= -kRegimeTolerance; }
};

struct RegimeReport {
    std::vector<Inequality> checks;
    std::optional<double> time_exponent;      // WeakenedRigidity: co-nondeterministic time as 2^(e n)
    std::optional<double> rs_exponent;        // WeakenedRigidity: r * s = k^e
    std::optional<double> rigidity_exponent;  // SuperlinearRank: 2 - omega/2 - delta

    bool passes() const {
        return std::all_of(checks.begin(), checks.end(), [](const Inequality& c) { return c.holds(); });
    }
};

namespace detail {

inline void add_tradeoff(RegimeReport& r, double alpha, double beta, double omega) {
    r.checks.push_back({"beta <= (5 - omega)/2", beta, (5 - omega) / 2});
    r.checks.push_back({"alpha <= (5 - beta - omega)/2", alpha, (5 - beta - omega) / 2});
}

} // namespace detail

inline RegimeReport check_regime(const RegimeParams& p, Regime which) {
    RegimeReport r;
    switch (which) {
    case Regime::Tradeoff:
        if (p.alpha < 0.5 || p.alpha > 1) throw PreconditionError("alpha must lie in [0.5, 1]");
        if (p.beta < 1 || p.beta > 1.5) throw PreconditionError("beta must lie in [1, 1.5]");
        detail::add_tradeoff(r, p.alpha, p.beta, p.omega);
        break;
    case Regime::Canonical:
        if (p.omega < 2) throw PreconditionError("omega must be at least 2");
        r.checks.push_back({"omega < 2.38", p.omega, 2.38 - 2 * kRegimeTolerance});
        detail::add_tradeoff(r, 2.0 / 3.0, 1.25, p.omega);
        break;
    case Regime::WeakenedRigidity: {
        // r = k^alpha, s = k^(2 - delta); time k^2 s + r^2 k^3 with k = 2^(n/4).
        const double s_exp = 2 - p.delta;
        const double e = std::max(2 + s_exp, 3 + 2 * p.alpha);
        r.time_exponent = e / 4;
        r.rs_exponent = p.alpha + s_exp;
        r.checks.push_back({"time exponent < 4", e, 4 - 2 * kRegimeTolerance});
        r.checks.push_back({"r*s exponent > 2", 2 + 2 * kRegimeTolerance, *r.rs_exponent});
        break;
    }
    case Regime::SuperlinearRank:
        if (p.omega < 2) throw PreconditionError("omega must be at least 2");
        r.rigidity_exponent = 2 - p.omega / 2 - p.delta;
        // alpha = 2 - omega/2 with beta = 1 must be admissible.
        r.checks.push_back({"alpha = 2 - omega/2 >= 0.5", 0.5, 2 - p.omega / 2});
        detail::add_tradeoff(r, 2 - p.omega / 2, 1.0, p.omega);
        break;
    }
    return r;
}

inline const char* regime_name(Regime r) {
    switch (r) {
    case Regime::Tradeoff: return "tradeoff";
    case Regime::Canonical: return "canonical";
    case Regime::WeakenedRigidity: return "weakened-rigidity";
    case Regime::SuperlinearRank: return "superlinear-rank";
    }
    return "?";
}

} // namespace fgr

#endif
