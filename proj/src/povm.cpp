#include "puretomo/povm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rng_util.hpp"

namespace puretomo {

double Rank1Operator::trace() const {
    double s = 0.0;
    for (const auto& g : generator) s += std::norm(g);
    return s;
}

double Rank1Operator::born(const PureState& s) const {
    if (s.dim() != dim()) throw DimensionMismatch("born query with mismatched dimensions");
    cplx ip{};
    for (std::size_t i = 0; i < generator.size(); ++i)
        ip += std::conj(generator[i]) * s.amplitudes()[i];
    return std::norm(ip);
}

Rank1Operator make_rank1(std::vector<cplx> generator) {
    if (generator.empty()) throw BadParams("rank-1 generator needs at least one entry");
    double n2 = 0.0;
    for (const auto& g : generator) {
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
            throw BadParams("rank-1 generator has non-finite entries");
        n2 += std::norm(g);
    }
    if (n2 == 0.0) throw ZeroVector("rank-1 generator must be nonzero");
    return Rank1Operator{std::move(generator)};
}

Operator::Operator(Rank1Operator r1) : r1_(std::move(r1)), mat_(r1_->matrix()) {
    if (r1_->trace() == 0.0) throw ZeroVector("rank-1 generator must be nonzero");
}

Operator::Operator(CMatrix hermitian_psd) : mat_(std::move(hermitian_psd)) {
    if (mat_.dim() == 0) throw BadParams("empty operator");
    if (!mat_.all_finite()) throw BadParams("operator has non-finite entries");
    if (!mat_.is_hermitian()) throw NotHermitian("operator is not Hermitian");
}

double Operator::born(const PureState& s) const {
    if (r1_) return r1_->born(s);
    if (s.dim() != mat_.dim()) throw DimensionMismatch("born query with mismatched dimensions");
    // ⟨ψ|E|ψ⟩ directly; cheaper than forming the projector.
    const auto ex = mat_.apply(s.amplitudes());
    cplx acc{};
    for (std::size_t i = 0; i < ex.size(); ++i) acc += std::conj(s.amplitudes()[i]) * ex[i];
    return acc.real();
}

bool Operator::is_zero() const {
    for (const auto& x : mat_.data())
        if (x != cplx{}) return false;
    return true;
}

namespace {

void check_psd(const Operator& op) {
    if (op.rank1()) return;  // g g† is PSD by construction
    const auto eig = hermitian_eig(op.matrix());
    const double slack = tol::psd_slack * std::max(op.matrix().frobenius_norm(), 1e-300);
    if (eig.eigenvalues.front() < -slack)
        throw NotPositiveSemidefinite("operator has a negative eigenvalue");
}

void check_subset(std::size_t n, const std::vector<std::size_t>& subset) {
    std::set<std::size_t> seen;
    for (std::size_t k : subset) {
        if (k >= n) throw IndexOutOfRange("resolution subset index out of range");
        if (!seen.insert(k).second) throw IndexOutOfRange("resolution subset repeats an index");
    }
    if (subset.empty()) throw BadParams("resolution subset cannot be empty");
}

}  // namespace

OperatorSet OperatorSet::create(std::size_t dim, std::vector<Operator> elements,
                                std::optional<std::vector<std::size_t>> resolution_subset) {
    if (dim == 0) throw BadParams("operator set needs dim >= 1");
    if (elements.empty()) throw BadParams("operator set needs at least one element");
    for (const auto& e : elements) {
        if (e.dim() != dim) throw MixedDimensions("operator set mixes dimensions");
        if (e.is_zero()) throw ZeroOperator("operator set rejects zero elements");
        check_psd(e);
    }
    if (resolution_subset) {
        check_subset(elements.size(), *resolution_subset);
        CMatrix s(dim);
        for (std::size_t k : *resolution_subset) s += elements[k].matrix();
        if ((s - CMatrix::identity(dim)).frobenius_norm() > tol::completeness)
            throw NotAPovm("designated subset does not resolve the identity");
    }
    return OperatorSet(dim, std::move(elements), std::move(resolution_subset));
}

const Operator& OperatorSet::element(std::size_t k) const {
    if (k >= elements_.size()) throw IndexOutOfRange("element index out of range");
    return elements_[k];
}

CMatrix OperatorSet::sum() const {
    CMatrix s(dim_);
    for (const auto& e : elements_) s += e.matrix();
    return s;
}

Povm Povm::create(OperatorSet set) {
    if ((set.sum() - CMatrix::identity(set.dim())).frobenius_norm() > tol::completeness)
        throw NotAPovm("elements do not sum to identity");
    return Povm(std::move(set));
}

bool check_resolution_subset(const OperatorSet& set, const std::vector<std::size_t>& subset) {
    check_subset(set.size(), subset);
    CMatrix s(set.dim());
    for (std::size_t k : subset) s += set.element(k).matrix();
    return (s - CMatrix::identity(set.dim())).frobenius_norm() <= tol::completeness;
}

Povm rank1_convert(const OperatorSet& set) {
    const std::size_t n = set.dim();
    for (const auto& e : set.elements()) {
        if (e.rank1()) continue;
        // Dense elements must still be rank 1 within tolerance.
        const auto eig = hermitian_eig(e.matrix());
        const double scale = std::max(e.matrix().frobenius_norm(), 1e-300);
        std::size_t above = 0;
        for (double lam : eig.eigenvalues)
            if (std::abs(lam) > tol::rank1_second * scale) ++above;
        if (above != 1) throw NotRank1("conversion requires rank-1 elements");
    }

    CMatrix g = set.sum();
    // G ≥ I when a resolution subset is present, so inv_sqrt succeeds;
    // without one the Gram may still be singular — report that distinctly.
    CMatrix r(0);
    try {
        r = inv_sqrt(g);
    } catch (const SingularOperator&) {
        throw SingularGram("operator-set sum is singular; cannot convert");
    }

    std::vector<Operator> converted;
    converted.reserve(set.size());
    for (const auto& e : set.elements()) {
        std::vector<cplx> gen;
        if (e.rank1()) {
            gen = r.apply(e.rank1()->generator);  // G^{-1/2} g, since F = (Rg)(Rg)†
        } else {
            const auto eig = hermitian_eig(e.matrix());
            const std::size_t top = e.dim() - 1;  // ascending order
            std::vector<cplx> v(e.dim());
            const double w = std::sqrt(std::max(eig.eigenvalues[top], 0.0));
            for (std::size_t i = 0; i < e.dim(); ++i) v[i] = w * eig.eigenvectors(i, top);
            gen = r.apply(v);
        }
        converted.push_back(Operator(make_rank1(std::move(gen))));
    }
    return Povm::create(OperatorSet::create(n, std::move(converted)));
}

OutcomeVector outcome_vector(const PureState& s, const OperatorSet& set) {
    if (s.dim() != set.dim()) throw DimensionMismatch("state and set dimensions differ");
    OutcomeVector out;
    out.values.reserve(set.size());
    for (const auto& e : set.elements()) out.values.push_back(e.born(s));
    return out;
}

OutcomeVector outcome_vector(const PureState& s, const Povm& p) { return outcome_vector(s, p.set()); }

OutcomeVector sampled_frequencies(const PureState& s, const Povm& p, std::uint64_t samples,
                                  std::uint64_t seed) {
    if (samples == 0) throw BadParams("sampling needs at least one draw");
    auto probs = outcome_vector(s, p).values;
    double mass = 0.0;
    for (auto& q : probs) {
        if (q < 0.0) q = 0.0;  // clip eigen-noise
        mass += q;
    }
    // Conditional-binomial decomposition of the multinomial draw.
    GaussianRng rng(mix_seed(seed, 0x706f766dull));
    std::uint64_t left = samples;
    OutcomeVector out;
    out.values.assign(probs.size(), 0.0);
    for (std::size_t k = 0; k + 1 < probs.size() && left > 0; ++k) {
        const double q = mass > 0.0 ? std::min(probs[k] / mass, 1.0) : 0.0;
        std::binomial_distribution<std::uint64_t> take(left, q);
        const std::uint64_t n = take(rng.engine());
        out.values[k] = static_cast<double>(n) / static_cast<double>(samples);
        left -= n;
        mass -= probs[k];
    }
    out.values.back() = static_cast<double>(left) / static_cast<double>(samples);
    return out;
}

OperatorSet scale_elements(const OperatorSet& set, const std::vector<double>& weights) {
    std::vector<bool> inside(set.size(), false);
    if (set.resolution_subset())
        for (std::size_t k : *set.resolution_subset()) inside[k] = true;

    std::size_t outside = 0;
    for (bool b : inside)
        if (!b) ++outside;
    if (weights.size() != outside)
        throw BadParams("need one weight per element outside the resolution subset");
    for (double w : weights) {
        if (!std::isfinite(w)) throw BadParams("weights must be finite");
        if (w < 0.0) throw NegativeWeight("weights must be non-negative");
    }

    std::vector<Operator> scaled;
    scaled.reserve(set.size());
    std::size_t wi = 0;
    for (std::size_t k = 0; k < set.size(); ++k) {
        const Operator& e = set.element(k);
        if (inside[k]) {
            scaled.push_back(e);
            continue;
        }
        const double w = weights[wi++];
        if (e.rank1() && w > 0.0) {
            auto gen = e.rank1()->generator;
            const double sq = std::sqrt(w);
            for (auto& x : gen) x *= sq;
            scaled.push_back(Operator(Rank1Operator{std::move(gen)}));
        } else {
            scaled.push_back(Operator(w * e.matrix()));
        }
    }
    // Zero weights legitimately produce zero elements, so this skips the
    // factory's zero check; downstream consumers reject them where it
    // matters (rank1_convert).
    return OperatorSet(set.dim(), std::move(scaled), set.resolution_subset());
}

}  // namespace puretomo
