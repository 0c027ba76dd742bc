#include "puretomo/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace puretomo {

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::outer(const std::vector<cplx>& v) {
    CMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (o.dim_ != dim_) throw DimensionMismatch("matrix addition with mismatched dimensions");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (o.dim_ != dim_) throw DimensionMismatch("matrix subtraction with mismatched dimensions");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(double s) {
    for (auto& x : a_) x *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch("matrix product with mismatched dimensions");
    const std::size_t n = a.dim_;
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& x) const {
    if (x.size() != dim_) throw DimensionMismatch("matrix-vector product with mismatched dimensions");
    std::vector<cplx> y(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        cplx acc{};
        for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

cplx CMatrix::trace() const {
    cplx t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
}

bool CMatrix::is_hermitian(double rel_tol) const {
    double dev = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) dev += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    return std::sqrt(dev) <= rel_tol * std::max(frobenius_norm(), 1e-300);
}

bool CMatrix::all_finite() const {
    for (const auto& x : a_)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

namespace {

double offdiag_mass(const CMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q).  Writing a(p,q) = r·e^{iφ},
// the unitary
//     U[p][p] = c, U[p][q] = -s·e^{iφ}, U[q][p] = s·e^{-iφ}, U[q][q] = c
// reduces U†AU at (p,q) to e^{iφ}(r(c²-s²) + (a_qq - a_pp)cs), so c, s come
// from the classical real 2x2 formula with tan 2θ = 2r / (a_pp - a_qq).
void rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const cplx phase = apq / r;  // e^{iφ}

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    // B12 = 0 gives t² - 2τt - 1 = 0 for t = tanθ; take the small root.
    const double tau = (aqq - app) / (2.0 * r);
    const double t = tau >= 0.0 ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const cplx s = t * c * phase;  // σ = s·e^{iφ}

    const std::size_t n = a.dim();
    // A ← U†AU: columns first (A·U), then rows (U†·A).
    for (std::size_t i = 0; i < n; ++i) {
        const cplx aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip + std::conj(s) * aiq;
        a(i, q) = -s * aip + c * aiq;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const cplx apj = a(p, j), aqj = a(q, j);
        a(p, j) = c * apj + s * aqj;
        a(q, j) = -std::conj(s) * apj + c * aqj;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx vip = v(i, p), viq = v(i, q);
        v(i, p) = c * vip + std::conj(s) * viq;
        v(i, q) = -s * vip + c * viq;
    }
}

}  // namespace

EigenDecomposition hermitian_eig(const CMatrix& a) {
    const std::size_t n = a.dim();
    if (n == 0) throw BadParams("empty matrix");
    if (!a.all_finite()) throw NotHermitian("matrix has non-finite entries");
    if (!a.is_hermitian()) throw NotHermitian("matrix is not Hermitian");

    // Work on the exactly Hermitian average; the deviation is below the
    // gate, so this perturbs eigenvalues by less than it.
    CMatrix w(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

    CMatrix v = CMatrix::identity(n);
    const double target = tol::jacobi_off * std::max(w.frobenius_norm(), 1e-300);
    constexpr int max_sweeps = 100;

    bool converged = offdiag_mass(w) <= target;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(w, v, p, q);
        converged = offdiag_mass(w) <= target;
    }
    if (!converged) throw NonConvergence("Jacobi eigensolver did not converge in 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return w(i, i).real() < w(j, j).real(); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = CMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = w(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

CMatrix inv_sqrt(const CMatrix& a) {
    const auto eig = hermitian_eig(a);
    const std::size_t n = a.dim();
    const double floor = tol::pd_min_eig * std::max(a.frobenius_norm(), 1e-300);
    for (double lam : eig.eigenvalues)
        if (lam <= floor) throw SingularOperator("matrix is not positive definite");

    // R = V diag(λ^{-1/2}) V†
    CMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k)) /
                       std::sqrt(eig.eigenvalues[k]);
            r(i, j) = acc;
        }
    return r;
}

double born_value(const CMatrix& rho, const CMatrix& e) {
    if (rho.dim() != e.dim()) throw DimensionMismatch("born_value with mismatched dimensions");
    if (!rho.all_finite() || !e.all_finite()) throw BadParams("born_value with non-finite entries");
    if (!rho.is_hermitian()) throw NotHermitian("state operator is not Hermitian");
    if (!e.is_hermitian()) throw NotHermitian("measurement operator is not Hermitian");

    cplx t{};
    const std::size_t n = rho.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) t += rho(i, k) * e(k, i);
    if (std::abs(t.imag()) > tol::real_trace)
        throw NonRealTrace("tr(rho E) has imaginary residue above 1e-12");
    return t.real();
}

}  // namespace puretomo
