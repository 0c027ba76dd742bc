#pragma once

#include <cstdint>
#include <vector>

#include "puretomo/qmath.hpp"

namespace puretomo {

// Unit vector in C^d with the global phase fixed: the first amplitude with
// modulus above 1e-12 is made real and positive.  Construction normalizes
// and rotates, so every live PureState is canonical.
class PureState {
  public:
    explicit PureState(std::vector<cplx> amplitudes);

    std::size_t dim() const { return amp_.size(); }
    const std::vector<cplx>& amplitudes() const { return amp_; }
    const cplx& amplitude(std::size_t i) const;

    CMatrix projector() const;  // |ψ⟩⟨ψ|

    bool operator==(const PureState& o) const { return amp_ == o.amp_; }

  private:
    std::vector<cplx> amp_;
};

PureState canonicalize(std::vector<cplx> v);

// |⟨a|b⟩|², clamped into [0,1].
double fidelity(const PureState& a, const PureState& b);

// Haar-distributed state: 2d independent standard normals, normalized.
// Deterministic for a given (dim, seed) on every platform — the gaussians
// come from a fixed Box–Muller transform over mt19937_64, not from
// std::normal_distribution.
PureState haar_random(std::size_t dim, std::uint64_t seed);

// Indices of the amplitudes a state actually lives on.
struct SupportSet {
    std::vector<std::size_t> indices;  // strictly increasing

    std::size_t k() const { return indices.size(); }
    bool operator==(const SupportSet& o) const { return indices == o.indices; }
};

// Indices with |amplitude|² > threshold.  Requires 0 < threshold < 1;
// throws EmptySupport if nothing clears it.
SupportSet support(const PureState& s, double threshold = tol::support_eps);

}  // namespace puretomo
