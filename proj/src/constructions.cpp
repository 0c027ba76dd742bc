#include "puretomo/constructions.hpp"

#include <cmath>

namespace puretomo {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::vector<cplx> unit_vec(std::size_t dim, std::size_t j) {
    std::vector<cplx> v(dim);
    v[j] = 1.0;
    return v;
}

bool is_prime(std::size_t d) {
    if (d < 2) return false;
    for (std::size_t p = 2; p * p <= d; ++p)
        if (d % p == 0) return false;
    return true;
}

}  // namespace

Basis make_basis(std::size_t dim, std::vector<PureState> states) {
    if (dim == 0) throw BadParams("basis needs dim >= 1");
    if (states.size() != dim) throw BadParams("basis needs exactly dim states");
    for (const auto& s : states)
        if (s.dim() != dim) throw MixedDimensions("basis mixes dimensions");
    double dev = 0.0;
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) {
            cplx ip{};
            for (std::size_t i = 0; i < dim; ++i)
                ip += std::conj(states[j].amplitudes()[i]) * states[k].amplitudes()[i];
            dev += std::norm(ip - (j == k ? cplx(1.0) : cplx{}));
        }
    if (std::sqrt(dev) > tol::orthonormal) throw BadParams("basis states are not orthonormal");
    return Basis{dim, std::move(states)};
}

BlochVector make_bloch(std::array<double, 3> n, double a, double b) {
    const double n2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
    if (!std::isfinite(n2) || !std::isfinite(a) || !std::isfinite(b))
        throw BadParams("Bloch data must be finite");
    if (std::abs(std::sqrt(n2) - 1.0) > tol::unit_bloch)
        throw BadParams("Bloch direction must be a unit vector");
    return BlochVector{n, a, b};
}

Operator to_operator(const BlochVector& v) {
    // Eigenvalues are a ± b.
    if (v.a < std::abs(v.b) - tol::psd_slack)
        throw NotPositiveSemidefinite("Bloch operator has a negative eigenvalue");
    if (std::abs(v.a - v.b) <= tol::unit_bloch && v.a > 0.0) {
        // E = 2a·|n⟩⟨n|, kept factored.  The spinor along n is
        // proportional to (1 + n_z, n_x + i n_y), fine for n_z ≠ -1.
        const double nz = v.n[2];
        std::vector<cplx> g(2);
        if (nz < -1.0 + 1e-14) {
            g = {cplx{}, cplx(1.0)};
        } else {
            const double den = std::sqrt(2.0 * (1.0 + nz));
            g[0] = cplx((1.0 + nz) / den, 0.0);
            g[1] = cplx(v.n[0] / den, v.n[1] / den);
        }
        const double w = std::sqrt(2.0 * v.a);
        for (auto& x : g) x *= w;
        return Operator(make_rank1(std::move(g)));
    }
    CMatrix m(2);
    m(0, 0) = cplx(v.a + v.b * v.n[2], 0.0);
    m(1, 1) = cplx(v.a - v.b * v.n[2], 0.0);
    m(0, 1) = cplx(v.b * v.n[0], -v.b * v.n[1]);
    m(1, 0) = cplx(v.b * v.n[0], v.b * v.n[1]);
    return Operator(std::move(m));
}

Povm sic_d2() {
    const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
    const std::array<std::array<double, 3>, 4> dirs = {{
        {0.0, 0.0, 1.0},
        {2.0 * s2 / 3.0, 0.0, -1.0 / 3.0},
        {-s2 / 3.0, s6 / 3.0, -1.0 / 3.0},
        {-s2 / 3.0, -s6 / 3.0, -1.0 / 3.0},
    }};
    std::vector<Operator> elems;
    for (const auto& n : dirs) elems.push_back(to_operator(make_bloch(n, 0.25, 0.25)));
    return Povm::create(OperatorSet::create(2, std::move(elems)));
}

std::vector<Basis> mubs_d2() {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<Basis> out;
    out.push_back(make_basis(2, {PureState(unit_vec(2, 0)), PureState(unit_vec(2, 1))}));
    out.push_back(make_basis(2, {PureState({r, r}), PureState({r, -r})}));
    out.push_back(make_basis(2, {PureState({r, cplx(0.0, r)}), PureState({r, cplx(0.0, -r)})}));
    return out;
}

std::vector<Basis> mubs_prime(std::size_t d) {
    if (!is_prime(d)) throw NotPrime("full MUB construction needs a prime dimension");
    if (d > 13) throw DimensionTooLarge("full MUB construction provided for d <= 13");
    if (d == 2) return mubs_d2();

    std::vector<Basis> out;
    std::vector<PureState> comp;
    for (std::size_t j = 0; j < d; ++j) comp.push_back(PureState(unit_vec(d, j)));
    out.push_back(make_basis(d, std::move(comp)));

    // |ψ_j^b⟩_k = ω^{bk² + jk}/√d; exponents reduced mod d before
    // touching floating point so the roots of unity stay exact.
    const double r = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t b = 0; b < d; ++b) {
        std::vector<PureState> states;
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<cplx> v(d);
            for (std::size_t k = 0; k < d; ++k) {
                const std::size_t e = (b * k * k + j * k) % d;
                v[k] = std::polar(r, 2.0 * kPi * static_cast<double>(e) / static_cast<double>(d));
            }
            states.push_back(PureState(std::move(v)));
        }
        out.push_back(make_basis(d, std::move(states)));
    }
    return out;
}

OperatorSet eight_ops_d3() {
    std::vector<Operator> elems;
    const cplx i{0.0, 1.0};
    const std::vector<std::vector<cplx>> gens = {
        {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0},
        {1.0, 1.0, 0.0}, {1.0, i, 0.0},   {1.0, 0.0, 1.0},
        {1.0, 1.0, 1.0}, {1.0, 1.0, i},
    };
    for (const auto& g : gens) elems.push_back(Operator(make_rank1(g)));
    return OperatorSet::create(3, std::move(elems), std::vector<std::size_t>{0, 1, 2});
}

Povm counterexample_d2() {
    // Half the X and Y projectors: a resolution of identity that never
    // sees |amplitude| imbalances in the computational basis, so |0⟩ and
    // |1⟩ (among many pairs) are indistinguishable.
    const cplx i{0.0, 1.0};
    std::vector<Operator> elems;
    elems.push_back(Operator(make_rank1({0.5, 0.5})));
    elems.push_back(Operator(make_rank1({0.5, -0.5})));
    elems.push_back(Operator(make_rank1({0.5, 0.5 * i})));
    elems.push_back(Operator(make_rank1({0.5, -0.5 * i})));
    return Povm::create(OperatorSet::create(2, std::move(elems)));
}

Theorem2Collections::Theorem2Collections(std::vector<Basis> bases) : bases_(std::move(bases)) {
    if (bases_.empty()) throw BadParams("need at least one basis");
    dim_ = bases_[0].dim;
    for (const auto& b : bases_)
        if (b.dim != dim_) throw MixedDimensions("bases mix dimensions");
    count_ = bases_.size();
    for (std::size_t t = 1; t < bases_.size(); ++t) {
        if (count_ > (1ull << 62) / dim_) throw RangeError("collection count overflows");
        count_ *= dim_;
    }
}

OperatorSet Theorem2Collections::collection(unsigned long long index) const {
    if (index >= count_) throw IndexOutOfRange("collection index out of range");
    const std::size_t m = bases_.size();
    const std::size_t d = dim_;

    unsigned long long pow = 1;
    for (std::size_t t = 1; t < m; ++t) pow *= d;
    const std::size_t anchor = static_cast<std::size_t>(index / pow);
    unsigned long long rest = index % pow;

    // Base-d digits of `rest`, most significant digit first, give the
    // dropped state index of each non-anchor basis in basis order.
    std::vector<std::size_t> dropped(m > 0 ? m - 1 : 0);
    for (std::size_t t = m - 1; t-- > 0;) {
        dropped[t] = static_cast<std::size_t>(rest % d);
        rest /= d;
    }

    std::vector<Operator> elems;
    elems.reserve(m * (d - 1) + 1);
    for (const auto& s : bases_[anchor].states)
        elems.push_back(Operator(make_rank1(s.amplitudes())));
    std::vector<std::size_t> subset(d);
    for (std::size_t k = 0; k < d; ++k) subset[k] = k;

    std::size_t t = 0;
    for (std::size_t b = 0; b < m; ++b) {
        if (b == anchor) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (j == dropped[t]) continue;
            elems.push_back(Operator(make_rank1(bases_[b].states[j].amplitudes())));
        }
        ++t;
    }
    return OperatorSet::create(d, std::move(elems), std::move(subset));
}

Theorem2Collections theorem2_collections(std::vector<Basis> bases) {
    return Theorem2Collections(std::move(bases));
}

}  // namespace puretomo
