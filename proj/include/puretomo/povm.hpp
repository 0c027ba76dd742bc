#pragma once

#include <optional>
#include <vector>

#include "puretomo/states.hpp"

namespace puretomo {

// Rank-1 operator kept in factored form: E = g g† for a generator g.
// The generator must be nonzero; weights fold into its scale.
struct Rank1Operator {
    std::vector<cplx> generator;

    std::size_t dim() const { return generator.size(); }
    CMatrix matrix() const { return CMatrix::outer(generator); }
    double trace() const;                        // ‖g‖²
    double born(const PureState& s) const;       // |⟨g|ψ⟩|²
};

Rank1Operator make_rank1(std::vector<cplx> generator);

// One measurement element: Hermitian PSD, stored either as a generator
// (rank-1 fast path) or as a dense matrix.
class Operator {
  public:
    explicit Operator(Rank1Operator r1);
    explicit Operator(CMatrix hermitian_psd);

    std::size_t dim() const { return mat_.dim(); }
    const CMatrix& matrix() const { return mat_; }
    const std::optional<Rank1Operator>& rank1() const { return r1_; }
    double born(const PureState& s) const;
    bool is_zero() const;

  private:
    std::optional<Rank1Operator> r1_;
    CMatrix mat_;
};

// Ordered collection of same-dimension PSD operators, optionally with a
// designated resolution subset B (indices whose elements sum to identity).
class OperatorSet {
  public:
    static OperatorSet create(std::size_t dim, std::vector<Operator> elements,
                              std::optional<std::vector<std::size_t>> resolution_subset = {});

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return elements_.size(); }
    const Operator& element(std::size_t k) const;
    const std::vector<Operator>& elements() const { return elements_; }
    const std::optional<std::vector<std::size_t>>& resolution_subset() const { return subset_; }

    CMatrix sum() const;  // ΣE_k

  private:
    OperatorSet(std::size_t dim, std::vector<Operator> elements,
                std::optional<std::vector<std::size_t>> subset)
        : dim_(dim), elements_(std::move(elements)), subset_(std::move(subset)) {}

    friend OperatorSet scale_elements(const OperatorSet&, const std::vector<double>&);

    std::size_t dim_;
    std::vector<Operator> elements_;
    std::optional<std::vector<std::size_t>> subset_;
};

// An operator set whose elements sum to identity within 1e-9.
class Povm {
  public:
    static Povm create(OperatorSet set);

    const OperatorSet& set() const { return set_; }
    std::size_t dim() const { return set_.dim(); }
    std::size_t size() const { return set_.size(); }

  private:
    explicit Povm(OperatorSet set) : set_(std::move(set)) {}
    OperatorSet set_;
};

// Born-rule outcomes of one state under one operator set, in element order.
struct OutcomeVector {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t k) const { return values[k]; }
};

// True iff the indices are in range, distinct, and their elements sum to
// identity within 1e-9.
bool check_resolution_subset(const OperatorSet& set, const std::vector<std::size_t>& subset);

// The rank-1 conversion behind Theorem-style completeness transfers:
// with G = ΣE_k (positive definite because the set holds a resolution
// subset), each element maps to F_k = G^{-1/2} E_k G^{-1/2}, and the F_k
// form a rank-1 POVM.  Every input element must itself be rank-1.
Povm rank1_convert(const OperatorSet& set);

OutcomeVector outcome_vector(const PureState& s, const OperatorSet& set);
OutcomeVector outcome_vector(const PureState& s, const Povm& p);

// Frequencies of `samples` multinomial draws from the POVM's Born
// distribution; deterministic for a given seed, entries sum to 1.
OutcomeVector sampled_frequencies(const PureState& s, const Povm& p, std::uint64_t samples,
                                  std::uint64_t seed);

// Scale the elements outside the resolution subset by the given
// non-negative weights (index order).  With no subset, all elements are
// "outside".  A zero weight yields a zero element, which is allowed here
// but rejected by rank1_convert.
OperatorSet scale_elements(const OperatorSet& set, const std::vector<double>& weights);

}  // namespace puretomo
