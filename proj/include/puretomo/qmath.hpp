#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "puretomo/errors.hpp"

namespace puretomo {

using cplx = std::complex<double>;

// Central numerical tolerances.  Everything dimensionless is relative to a
// Frobenius norm unless noted.
namespace tol {
inline constexpr double hermitian = 1e-10;       // ‖A − A†‖_F gate, relative
inline constexpr double jacobi_off = 1e-14;      // off-diagonal mass target, relative
inline constexpr double eig_residual = 1e-9;     // ‖VΛV† − A‖_F, relative
inline constexpr double pd_min_eig = 1e-10;      // positive-definite floor, relative
inline constexpr double psd_slack = 1e-10;       // PSD slack for validation, relative
inline constexpr double inv_sqrt_residual = 1e-8;
inline constexpr double real_trace = 1e-12;      // absolute imaginary residue allowed
inline constexpr double completeness = 1e-9;     // ‖ΣE − I‖_F for POVM checks, absolute
inline constexpr double rank1_second = 1e-10;    // second eigenvalue bound, relative
inline constexpr double support_eps = 1e-12;     // default support threshold
inline constexpr double consistency = 1e-8;      // reconstruction self-check, absolute
inline constexpr double orthonormal = 1e-12;     // basis Gram deviation, absolute
inline constexpr double unbiased = 1e-10;        // MUB overlap deviation, absolute
inline constexpr double unit_bloch = 1e-12;      // Bloch vector norm deviation
}  // namespace tol

// Dense complex square matrix, row-major.  Small dimensions only (the
// library tops out around d = 16), so no clever storage.
class CMatrix {
  public:
    CMatrix() = default;
    explicit CMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    static CMatrix identity(std::size_t dim);
    static CMatrix zero(std::size_t dim) { return CMatrix(dim); }
    // v v† for a column vector v.
    static CMatrix outer(const std::vector<cplx>& v);

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(double s);
    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(double s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

    std::vector<cplx> apply(const std::vector<cplx>& x) const;  // A x

    CMatrix adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    bool is_hermitian(double rel_tol = tol::hermitian) const;
    bool all_finite() const;

    const std::vector<cplx>& data() const { return a_; }

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> a_;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    CMatrix eigenvectors;             // columns, ordered to match
};

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
// rotations.  Rejects matrices with ‖A − A†‖_F > 1e-10·‖A‖_F, then works on
// the symmetrized (A + A†)/2.  Converged when the off-diagonal Frobenius
// mass drops to 1e-14·‖A‖_F; throws NonConvergence after 100 sweeps.
EigenDecomposition hermitian_eig(const CMatrix& a);

// A^{-1/2} for Hermitian positive definite A.  Eigenvalues at or below
// 1e-10·‖A‖_F count as singular.
CMatrix inv_sqrt(const CMatrix& a);

// Re tr(ρE) with a NonRealTrace check: the imaginary residue must stay
// below 1e-12.
double born_value(const CMatrix& rho, const CMatrix& e);

}  // namespace puretomo
