#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "puretomo/qmath.hpp"

#ifdef PURETOMO_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace puretomo;

namespace {

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = cplx(u(rng), u(rng));
    CMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (b(i, j) + std::conj(b(j, i)));
    return a;
}

double reconstruction_residual(const CMatrix& a, const EigenDecomposition& eig) {
    const std::size_t n = a.dim();
    CMatrix rec(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.eigenvalues[k] * eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
            rec(i, j) = acc;
        }
    return (rec - a).frobenius_norm();
}

#ifdef PURETOMO_HAVE_EIGEN
Eigen::MatrixXcd to_eigen(const CMatrix& a) {
    Eigen::MatrixXcd m(a.dim(), a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
    return m;
}
#endif

}  // namespace

TEST_CASE("matrix basics") {
    const CMatrix id = CMatrix::identity(3);
    CHECK(id.trace() == cplx(3.0));
    CHECK(id.frobenius_norm() == doctest::Approx(std::sqrt(3.0)));
    CHECK(id.is_hermitian());

    const CMatrix p = CMatrix::outer({cplx(1.0), cplx(0.0, 1.0)});
    CHECK(p(0, 0) == cplx(1.0));
    CHECK(p(0, 1) == cplx(0.0, -1.0));
    CHECK(p(1, 0) == cplx(0.0, 1.0));
    CHECK(p(1, 1) == cplx(1.0));
    CHECK(p.frobenius_norm() == doctest::Approx(2.0));
    CHECK(p.is_hermitian());
    CHECK((p.adjoint() - p).frobenius_norm() == 0.0);

    const auto y = p.apply({cplx(1.0), cplx(0.0)});
    CHECK(y[0] == cplx(1.0));
    CHECK(y[1] == cplx(0.0, 1.0));

    CHECK((2.0 * id)(1, 1) == cplx(2.0));
    CHECK(((id + id) - id).frobenius_norm() == doctest::Approx(std::sqrt(3.0)));
    CHECK((CMatrix::identity(2) * p)(0, 1) == p(0, 1));

    CHECK_THROWS_AS(id + CMatrix::identity(2), DimensionMismatch);
    CHECK_THROWS_AS(id * CMatrix::identity(2), DimensionMismatch);
    CHECK_THROWS_AS(id.apply({cplx(1.0)}), DimensionMismatch);
}

TEST_CASE("hermitian_eig on known matrices") {
    SUBCASE("diagonal") {
        CMatrix a(3);
        a(0, 0) = 3.0;
        a(1, 1) = 1.0;
        a(2, 2) = 2.0;
        const auto eig = hermitian_eig(a);
        CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(eig.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(eig.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-13));
        CHECK(reconstruction_residual(a, eig) < 1e-12);
    }
    SUBCASE("real symmetric 2x2") {
        CMatrix a(2);
        a(0, 1) = 1.0;
        a(1, 0) = 1.0;
        const auto eig = hermitian_eig(a);
        CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("complex 2x2") {
        // [[2, i], [-i, 2]] has eigenvalues 2 -+ 1.
        CMatrix a(2);
        a(0, 0) = 2.0;
        a(1, 1) = 2.0;
        a(0, 1) = cplx(0.0, 1.0);
        a(1, 0) = cplx(0.0, -1.0);
        const auto eig = hermitian_eig(a);
        CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(eig.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-13));
        CHECK(reconstruction_residual(a, eig) < 1e-12);
    }
    SUBCASE("rejects bad input") {
        CMatrix nh(2);
        nh(0, 1) = 1.0;  // strictly upper triangular, not Hermitian
        CHECK_THROWS_AS(hermitian_eig(nh), NotHermitian);

        CMatrix nan(2);
        nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(hermitian_eig(nan), NotHermitian);

        CHECK_THROWS_AS(hermitian_eig(CMatrix(0)), BadParams);
    }
}

TEST_CASE("hermitian_eig against random matrices") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
        const CMatrix a = random_hermitian(n, rng);
        const auto eig = hermitian_eig(a);

        for (std::size_t k = 0; k + 1 < n; ++k) CHECK(eig.eigenvalues[k] <= eig.eigenvalues[k + 1]);
        CHECK(reconstruction_residual(a, eig) <= tol::eig_residual * std::max(a.frobenius_norm(), 1.0));

        // Columns orthonormal.
        const CMatrix vtv = eig.eigenvectors.adjoint() * eig.eigenvectors;
        CHECK((vtv - CMatrix::identity(n)).frobenius_norm() < 1e-10);

#ifdef PURETOMO_HAVE_EIGEN
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a));
        REQUIRE(es.info() == Eigen::Success);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(eig.eigenvalues[k] - es.eigenvalues()[static_cast<Eigen::Index>(k)]) <
                  1e-10 * std::max(a.frobenius_norm(), 1.0));
#endif
    }
}

TEST_CASE("inv_sqrt") {
    SUBCASE("diagonal") {
        CMatrix a(2);
        a(0, 0) = 4.0;
        a(1, 1) = 9.0;
        const CMatrix r = inv_sqrt(a);
        CHECK(r(0, 0).real() == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(r(1, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
        CHECK(std::abs(r(0, 1)) < 1e-14);
    }
    SUBCASE("identity fixed point") {
        const CMatrix r = inv_sqrt(CMatrix::identity(4));
        CHECK((r - CMatrix::identity(4)).frobenius_norm() < 1e-12);
    }
    SUBCASE("contract R A R = I on random positive definite matrices") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
            const CMatrix h = random_hermitian(n, rng);
            CMatrix a = h * h;  // PSD
            a += 0.05 * CMatrix::identity(n);
            const CMatrix r = inv_sqrt(a);
            CHECK(r.is_hermitian(1e-9));
            CHECK((r * a * r - CMatrix::identity(n)).frobenius_norm() <= tol::inv_sqrt_residual);

#ifdef PURETOMO_HAVE_EIGEN
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a));
            REQUIRE(es.info() == Eigen::Success);
            const Eigen::MatrixXcd oracle = es.operatorInverseSqrt();
            CHECK((to_eigen(r) - oracle).norm() < 1e-8 * std::max(1.0, oracle.norm()));
#endif
        }
    }
    SUBCASE("rejects singular input") {
        // A rank-1 projector on C^2 has a zero eigenvalue.
        CHECK_THROWS_AS(inv_sqrt(CMatrix::outer({cplx(1.0), cplx(0.0)})), SingularOperator);
    }
}

TEST_CASE("born_value") {
    const CMatrix p0 = CMatrix::outer({cplx(1.0), cplx(0.0)});
    const CMatrix p1 = CMatrix::outer({cplx(0.0), cplx(1.0)});
    CHECK(born_value(p0, p0) == doctest::Approx(1.0));
    CHECK(born_value(p0, p1) == doctest::Approx(0.0));
    CHECK_THROWS_AS(born_value(p0, CMatrix::identity(3)), DimensionMismatch);

    CMatrix nh(2);
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS(born_value(nh, p0), NotHermitian);
    CHECK_THROWS_AS(born_value(p0, nh), NotHermitian);
}

TEST_CASE("born_value flags an imaginary trace residue") {
    // E = I + eps*[[0,1],[-1,0]] slips under the Hermiticity gate
    // (deviation ~4e-11 relative) but tr(rho E) = 1 + i*eps for
    // rho = |y+><y+|, and eps = 2e-11 is above the 1e-12 residue bound.
    const double eps = 2e-11;
    CMatrix e = CMatrix::identity(2);
    e(0, 1) = eps;
    e(1, 0) = -eps;
    CMatrix rho(2);
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    rho(0, 1) = cplx(0.0, -0.5);
    rho(1, 0) = cplx(0.0, 0.5);
    CHECK(e.is_hermitian());
    CHECK_THROWS_AS(born_value(rho, e), NonRealTrace);
}
