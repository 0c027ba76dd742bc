#pragma once

#include <string>

#include "puretomo/povm.hpp"

namespace puretomo {

enum class Verdict { PASS, FAIL, INCONCLUSIVE };

const char* to_string(Verdict v);

// max_k |p_k(a) − p_k(b)| over the set's outcome vectors.
double pair_separation(const PureState& a, const PureState& b, const OperatorSet& set);

struct VerifyOptions {
    double delta_pass = 1e-8;    // separations at or above this never count against PASS
    double delta_fail = 1e-12;   // a re-verified separation below this is a hard FAIL
    double distinct_fidelity = 1.0 - 1e-10;  // pairs at least this close are "same state"
    std::size_t refine_starts = 32;          // worst sampled pairs taken into refinement
    std::size_t refine_iters = 200;
    // During refinement the pair must stay macroscopically distinct;
    // otherwise descent trivially merges the states, where every set —
    // complete or not — shows vanishing separations.
    double refine_fidelity_cap = 1.0 - 1e-4;
    bool mixed_pairs = false;    // also probe random mixed-state pairs (see README)
};

struct DistinguishabilityReport {
    std::string set_id;
    std::size_t pairs_tested = 0;
    double min_separation = 0.0;
    std::optional<std::pair<PureState, PureState>> counterexample;
    double counterexample_fidelity = 0.0;
    Verdict verdict = Verdict::INCONCLUSIVE;
    // PASS is sampled evidence for distinguishability, never a proof; the
    // serialized report carries this sentence verbatim.
    static const char* evidence_note();
};

// Sampled search for an indistinguishable pair of distinct pure states:
// a deterministic battery (computational-basis pairs, Haar pairs,
// conjugate pairs) followed by coordinate-descent refinement of the worst
// pairs.  PASS = nothing below delta_pass; FAIL = a re-verified distinct
// pair below delta_fail; anything between is INCONCLUSIVE.
DistinguishabilityReport sampled_distinguishability(const OperatorSet& set, std::size_t n_pairs,
                                                    std::uint64_t seed,
                                                    const VerifyOptions& options = {},
                                                    std::string set_id = {});

}  // namespace puretomo
