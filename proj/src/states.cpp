#include "puretomo/states.hpp"

#include <cmath>

#include "rng_util.hpp"

namespace puretomo {

PureState::PureState(std::vector<cplx> amplitudes) : amp_(std::move(amplitudes)) {
    if (amp_.empty()) throw BadParams("state needs at least one amplitude");
    double nrm2 = 0.0;
    for (const auto& a : amp_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw BadParams("state has non-finite amplitudes");
        nrm2 += std::norm(a);
    }
    if (nrm2 <= 0.0) throw ZeroVector("cannot normalize the zero vector");
    const double nrm = std::sqrt(nrm2);
    for (auto& a : amp_) a /= nrm;

    std::size_t anchor = 0;
    while (anchor < amp_.size() && std::abs(amp_[anchor]) <= tol::support_eps) ++anchor;
    if (anchor == amp_.size()) anchor = 0;  // can't happen for a unit vector, but be safe
    // Rotate so the anchor is real; then pin it exactly (the rotation
    // leaves an ulp-sized imaginary residue otherwise).
    const cplx a = amp_[anchor];
    const cplx phase = std::conj(a) / std::abs(a);
    for (auto& x : amp_) x *= phase;
    amp_[anchor] = cplx(std::abs(a), 0.0);
}

const cplx& PureState::amplitude(std::size_t i) const {
    if (i >= amp_.size()) throw IndexOutOfRange("amplitude index out of range");
    return amp_[i];
}

CMatrix PureState::projector() const { return CMatrix::outer(amp_); }

PureState canonicalize(std::vector<cplx> v) { return PureState(std::move(v)); }

double fidelity(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("fidelity between different dimensions");
    cplx ip{};
    for (std::size_t i = 0; i < a.dim(); ++i) ip += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    const double f = std::norm(ip);
    return f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f);
}

PureState haar_random(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw BadParams("haar_random needs dim >= 1");
    GaussianRng rng(seed);
    std::vector<cplx> v(dim);
    for (auto& a : v) {
        const double re = rng.next();
        const double im = rng.next();
        a = cplx(re, im);
    }
    return PureState(std::move(v));
}

SupportSet support(const PureState& s, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) throw BadParams("support threshold must be in (0,1)");
    SupportSet out;
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (std::norm(s.amplitudes()[i]) > threshold) out.indices.push_back(i);
    if (out.indices.empty()) throw EmptySupport("no amplitude clears the support threshold");
    return out;
}

}  // namespace puretomo
