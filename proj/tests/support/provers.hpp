#ifndef FINEGRAIN_TESTS_PROVERS_HPP
#define FINEGRAIN_TESTS_PROVERS_HPP

#include <random>
#include <string>

#include "finegrain/certificate.hpp"

namespace provers {

/// Slice prover that picks a certificate style at random per slice: all
/// sparse, one factor per row, or a random low-rank part with its sparse
/// remainder.
inline fgr::SliceProver mixed(std::mt19937_64& rng) {
    return [&rng](const fgr::FieldMatrix& m, const std::string&) {
        switch (rng() % 3) {
        case 0: return fgr::prove_trivial(m, fgr::Flavor::Sparse);
        case 1: return fgr::prove_trivial(m, fgr::Flavor::Rank);
        default: return fgr::prove_split(m, rng() % (std::min(m.rows(), m.cols()) + 1), rng);
        }
    };
}

inline fgr::TensorRankCertificate mixed_tensor(const fgr::Tensor3& t, std::mt19937_64& rng) {
    if (rng() % 2) return fgr::prove_fibers(t);
    return fgr::prove_tensor_split(t, 1 + rng() % 3, rng);
}

} // namespace provers

#endif
