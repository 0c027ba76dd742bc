#pragma once

#include <functional>

#include "puretomo/povm.hpp"

namespace puretomo {

// Closed-form inversion of the eight-operator d=3 outcome vector.
// Amplitudes come from the first three outcomes; the two phases from the
// cross terms, with the solver branching on which trig component is
// better conditioned.  Outcomes below -1e-10 throw NegativeProbability;
// a final predicted-vs-given residual above 1e-8 throws
// InconsistentOutcomes.
PureState reconstruct_d3(const OutcomeVector& p);

// Measurement access during adaptive reconstruction: each call answers
// one Born query tr(E|ψ⟩⟨ψ|) against the hidden state.
using BornOracle = std::function<double(const Rank1Operator&)>;

// Oracle answering exactly.
BornOracle exact_oracle(PureState hidden);

// Oracle answering with frequencies from `samples` two-outcome trials per
// query (deterministic for a given seed).
BornOracle sampled_oracle(PureState hidden, std::uint64_t samples, std::uint64_t seed);

struct AdaptiveOptions {
    double support_threshold = tol::support_eps;
    double consistency = tol::consistency;
};

struct AdaptiveTranscript {
    std::size_t dim = 0;
    SupportSet support;
    std::vector<double> stage1_outcomes;        // d computational-basis values
    std::vector<double> stage2_outcomes;        // 2(k-1), alternating F_s, G_s
    std::vector<Rank1Operator> operators_used;  // query order, d + 2k - 2 total
    PureState reconstructed{{cplx(1.0, 0.0)}};
};

// Two-stage adaptive scheme: d computational projectors find the support
// {n_0 < … < n_{k-1}} and the moduli; then for s = 1..k-1 the pair
//   F_s = (|n_0⟩ + |n_s⟩)(⟨n_0| + ⟨n_s|),  G_s = (|n_0⟩ + i|n_s⟩)(…)
// pins each relative phase, for d + 2k - 2 queries total.
AdaptiveTranscript adaptive_reconstruct(const BornOracle& oracle, std::size_t dim,
                                        const AdaptiveOptions& options = {});

// d + 2k - 2.
std::size_t adaptive_operator_count(std::size_t dim, std::size_t k);

}  // namespace puretomo
