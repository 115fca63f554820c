#ifndef FINEGRAIN_LIMITS_HPP
#define FINEGRAIN_LIMITS_HPP

#include <cstdint>

namespace fgr {

// Bounds for the exhaustive oracles. Inputs above a bound are refused with
// SizeError rather than left to run for hours.
struct Limits {
    int max_vars = 24;                              // brute_sat, brute_max3sat_exact
    std::uint64_t max_ov_tuples = std::uint64_t{1} << 28; // product of OV part sizes
    std::uint64_t max_qt_work = std::uint64_t{1} << 32;   // t * 2^n * |zeros| for Q_t membership
    int max_truth_table_vars = 20;
    int max_rigidity_cells = 16;
    std::uint64_t max_rigidity_fillings = std::uint64_t{1} << 22;
    int max_clique_k = 16;
    int max_count_tensor_k = 64;
};

inline constexpr Limits kDefaultLimits{};

} // namespace fgr

#endif
