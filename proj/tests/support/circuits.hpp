#ifndef FINEGRAIN_TESTS_CIRCUITS_HPP
#define FINEGRAIN_TESTS_CIRCUITS_HPP

#include <random>
#include <vector>

#include "finegrain/monotone.hpp"
#include "finegrain/threshold.hpp"

namespace circuits {

/// Random AND/OR circuit over `inputs` inputs with `size` gates; wires are
/// inputs, constants or earlier gates.
inline fgr::MonotoneCircuit random_monotone(std::size_t inputs, std::size_t size, std::mt19937_64& rng) {
    std::vector<fgr::MonotoneGate> gates;
    auto wire = [&](std::size_t g) {
        const auto roll = rng() % 10;
        if (roll == 0 || inputs == 0) return fgr::WireRef::constant(rng() & 1U);
        if (g > 0 && roll < 5) return fgr::WireRef::gate(rng() % g);
        return fgr::WireRef::input(1 + rng() % inputs);
    };
    for (std::size_t g = 0; g < size; ++g)
        gates.push_back({rng() & 1U ? fgr::MonotoneOp::And : fgr::MonotoneOp::Or, wire(g), wire(g)});
    return fgr::MonotoneCircuit(inputs, std::move(gates));
}

/// Random structurally valid THR_{l+1}^{lt+1} circuit.
inline fgr::ThrCircuit random_thr(std::size_t num_vars, std::size_t t, std::size_t size, std::mt19937_64& rng,
                                  std::size_t max_l = 2) {
    fgr::ThrCircuit c{t, num_vars, {}};
    for (std::size_t g = 0; g < size; ++g) {
        const std::size_t l = 1 + rng() % max_l;
        fgr::ThrGate gate{l + 1, {}};
        for (std::size_t i = 0; i < l * t + 1; ++i) {
            if (g > 0 && rng() % 3 == 0)
                gate.inputs.push_back(fgr::WireRef::gate(rng() % g));
            else
                gate.inputs.push_back(fgr::WireRef::input(1 + rng() % num_vars));
        }
        c.gates.push_back(std::move(gate));
    }
    return c;
}

/// Every single-gate circuit THR_{l+1}^{lt+1} with l = 1 over variables
/// x_1..x_n, as multisets of inputs.
inline std::vector<fgr::ThrCircuit> single_gate_thr(std::size_t num_vars, std::size_t t) {
    std::vector<fgr::ThrCircuit> out;
    const std::size_t b = t + 1;
    std::vector<std::size_t> pick(b, 1);
    while (true) {
        fgr::ThrGate gate{2, {}};
        for (auto v : pick) gate.inputs.push_back(fgr::WireRef::input(v));
        out.push_back({t, num_vars, {gate}});
        std::size_t i = b;
        while (i > 0 && pick[i - 1] == num_vars) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < b; ++j) pick[j] = pick[i - 1];
    }
    return out;
}

} // namespace circuits

#endif
