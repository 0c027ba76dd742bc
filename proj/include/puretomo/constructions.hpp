#pragma once

#include <array>

#include "puretomo/povm.hpp"

namespace puretomo {

// Orthonormal basis of C^d.  Validated on construction (Gram deviation
// below 1e-12).
struct Basis {
    std::size_t dim;
    std::vector<PureState> states;
};

Basis make_basis(std::size_t dim, std::vector<PureState> states);

// Qubit operator in Bloch form, E = a·I + b·n·σ with ‖n‖ = 1.
// Rank-1 exactly when a = b; to_operator() keeps the factored form then.
struct BlochVector {
    std::array<double, 3> n;
    double a = 0.0;
    double b = 0.0;
};

BlochVector make_bloch(std::array<double, 3> n, double a, double b);
Operator to_operator(const BlochVector& v);

// Symmetric informationally complete qubit POVM: four elements
// (1/4)(I + n_c·σ) along a regular tetrahedron.
Povm sic_d2();

// The three mutually unbiased qubit bases: computational, X, Y.
std::vector<Basis> mubs_d2();

// Full set of d+1 mutually unbiased bases for prime d ≤ 13: the
// computational basis plus d quadratic-phase bases.
std::vector<Basis> mubs_prime(std::size_t d);

// Eight rank-1 operators on C^3 whose outcomes admit a closed-form
// pure-state inversion.  The first three elements are the computational
// projectors and form the resolution subset.
OperatorSet eight_ops_d3();

// Four-element rank-1 qubit POVM built from the X and Y bases only.  Its
// outcomes depend on a state (a, b) through the product a·b̄ alone, so
// states that trade the moduli of a and b — |0⟩ and |1⟩ in the extreme —
// share every outcome.  Kept as the standard negative control for
// distinguishability checks.
Povm counterexample_d2();

// Enumeration of the measurement collections obtained from m bases by
// keeping one basis whole and dropping one projector from each of the
// others: m·d^{m-1} collections of m(d-1)+1 projectors each.  Indexing is
// lexicographic — whole-basis index major, then the dropped-element index
// of each remaining basis in basis order.
class Theorem2Collections {
  public:
    explicit Theorem2Collections(std::vector<Basis> bases);

    std::size_t dim() const { return dim_; }
    std::size_t bases_count() const { return bases_.size(); }
    unsigned long long count() const { return count_; }

    // Elements are ordered with the whole basis first (resolution subset
    // {0..d-1}), then the kept projectors of the other bases in basis
    // order, state order.
    OperatorSet collection(unsigned long long index) const;

    class iterator {
      public:
        using value_type = OperatorSet;
        using difference_type = std::ptrdiff_t;

        iterator(const Theorem2Collections* owner, unsigned long long i) : owner_(owner), i_(i) {}
        OperatorSet operator*() const { return owner_->collection(i_); }
        iterator& operator++() { ++i_; return *this; }
        iterator operator++(int) { auto t = *this; ++i_; return t; }
        bool operator==(const iterator& o) const { return i_ == o.i_; }
        bool operator!=(const iterator& o) const { return i_ != o.i_; }

      private:
        const Theorem2Collections* owner_;
        unsigned long long i_;
    };

    iterator begin() const { return iterator(this, 0); }
    iterator end() const { return iterator(this, count_); }

  private:
    std::vector<Basis> bases_;
    std::size_t dim_;
    unsigned long long count_;
};

Theorem2Collections theorem2_collections(std::vector<Basis> bases);

}  // namespace puretomo
