#include "reference_data.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace t3;

namespace {

Matrix random_matrix(Index m, Index n, std::uint64_t seed, bool complex_entries = true) {
    support::Rng rng(seed);
    Matrix a(m, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < m; ++i)
            a(i, j) = complex_entries ? Complex(rng.uniform(), rng.uniform())
                                      : Complex(rng.uniform(), 0.0);
    return a;
}

double penrose_residual(const Matrix& a, const Matrix& g) {
    const double scale = 1.0 + a.norm() * (1.0 + g.norm());
    double worst = (a * g * a - a).norm();
    worst = std::max(worst, (g * a * g - g).norm());
    worst = std::max(worst, ((a * g) - (a * g).adjoint()).norm());
    worst = std::max(worst, ((g * a) - (g * a).adjoint()).norm());
    return worst / scale;
}

} // namespace

TEST_CASE("svd_rank") {
    CHECK(svd_rank(Matrix::Identity(3, 3)) == 3);
    CHECK(svd_rank(Matrix::Zero(4, 2)) == 0);

    // Fourier slice ranks of the 2x3x3 reference tensor sum to its t-rank 5.
    const FourierStack f = to_fourier(refdata::t233());
    std::vector<long> ranks;
    for (Index k = 0; k < 3; ++k) ranks.push_back(svd_rank(f.slice(k)));
    CHECK(ranks == std::vector<long>{1, 2, 2});
}

TEST_CASE("pinv satisfies the Penrose identities") {
    const Matrix inv3 = random_matrix(3, 3, 2) + 3.0 * Matrix::Identity(3, 3);
    CHECK((pinv(inv3) - inv3.inverse()).norm() <= 1e-12 * inv3.inverse().norm());

    const Matrix z = Matrix::Zero(3, 5);
    CHECK(pinv(z).rows() == 5);
    CHECK(pinv(z).cols() == 3);
    CHECK(pinv(z).norm() == 0.0);

    const Matrix deficient = random_matrix(4, 2, 5) * random_matrix(2, 3, 6);
    CHECK(penrose_residual(deficient, pinv(deficient)) <= 1e-11);

    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Index m = 10 + static_cast<Index>(seed * 7) % 41;
        const Index n = 10 + static_cast<Index>(seed * 11) % 41;
        const Matrix a = random_matrix(m, n, seed);
        CHECK(penrose_residual(a, pinv(a)) <= 1e-11);
    }
}

TEST_CASE("one_inverse") {
    const Matrix a = random_matrix(4, 3, 7) * random_matrix(3, 5, 8);
    const Matrix g = one_inverse(a);
    CHECK((a * g * a - a).norm() <= 1e-11 * (1.0 + a.norm()));

    // an idempotent matrix is its own {1}-inverse; the library one passes too
    Matrix p = random_matrix(4, 2, 9);
    p = p * (p.adjoint() * p).inverse() * p.adjoint(); // orthogonal projector
    CHECK((p * p * p - p).norm() <= 1e-12 * (1.0 + p.norm()));
    CHECK((p * one_inverse(p) * p - p).norm() <= 1e-11 * (1.0 + p.norm()));
}

TEST_CASE("lu_inverse and lu_solve") {
    CHECK((lu_inverse(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).norm() == 0.0);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 4.0;
    Matrix dinv = lu_inverse(d);
    CHECK(std::abs(dinv(0, 0) - Complex(0.5, 0)) < 1e-15);
    CHECK(std::abs(dinv(1, 1) - Complex(0.25, 0)) < 1e-15);

    const Matrix a = random_matrix(5, 5, 10) + 3.0 * Matrix::Identity(5, 5);
    CHECK((lu_inverse(a) - pinv(a)).norm() <= 1e-10 * pinv(a).norm());

    const Matrix b = random_matrix(5, 2, 11);
    CHECK((a * lu_solve(a, b) - b).norm() <= 1e-11 * (1.0 + b.norm()));

    CHECK_THROWS_AS(lu_inverse(Matrix::Zero(3, 3)), Singular);
    CHECK_THROWS_AS(lu_inverse(random_matrix(2, 3, 1)), DimensionMismatch);
}

TEST_CASE("qrcp") {
    SUBCASE("identity") {
        const PivotedQr qr = qrcp(Matrix::Identity(4, 4));
        CHECK(qr.s == 4);
        CHECK((qr.q - Matrix::Identity(4, 4)).norm() < 1e-14);
        CHECK((qr.r - Matrix::Identity(4, 4)).norm() < 1e-14);
    }

    SUBCASE("duplicated columns reveal rank deficiency") {
        Matrix a = random_matrix(5, 4, 12);
        a.col(3) = a.col(1);
        a.col(2) = a.col(0);
        const PivotedQr qr = qrcp(a);
        CHECK(qr.s == 2);
    }

    SUBCASE("reconstruction and monotone pivots") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const Matrix a = random_matrix(6, 5, seed * 13);
            const PivotedQr qr = qrcp(a);
            CHECK((a * qr.permutation() - qr.q * qr.r).norm() <= 1e-12 * (1.0 + a.norm()));
            for (Index i = 0; i + 1 < std::min<Index>(6, 5); ++i)
                CHECK(std::abs(qr.r(i + 1, i + 1)) <=
                      std::abs(qr.r(i, i)) * (1.0 + 1e-12) + 1e-14);
        }
    }

    SUBCASE("fourier slice of the 3x4x2 reference transpose") {
        const FourierStack f = to_fourier(t_transpose(refdata::mp_s342()));
        for (Index k = 0; k < 2; ++k) {
            const Matrix a = f.slice(k);
            const PivotedQr qr = qrcp(a);
            CHECK((a * qr.permutation() - qr.q * qr.r).norm() <= 1e-12 * (1.0 + a.norm()));
            CHECK(qr.s == 2);
        }
    }

    SUBCASE("zero matrix has rank zero") { CHECK(qrcp(Matrix::Zero(3, 4)).s == 0); }
}

TEST_CASE("rand_qrcp") {
    SUBCASE("identity with full target rank") {
        const PivotedQr qr = rand_qrcp(Matrix::Identity(5, 5), 5, 8, 42);
        Eigen::VectorXi seen = Eigen::VectorXi::Zero(5);
        for (Index j = 0; j < 5; ++j) seen(qr.perm(j)) += 1;
        CHECK(seen.minCoeff() == 1); // a genuine permutation
        const Matrix a = Matrix::Identity(5, 5);
        CHECK((a * qr.permutation() - qr.q * qr.r).norm() < 1e-12);
    }

    SUBCASE("rank-3 instance: sketched basis captures the range") {
        const Matrix a = random_matrix(20, 3, 3) * random_matrix(3, 20, 4);
        const PivotedQr qr = rand_qrcp(a, 3, 10, 7);
        const Matrix qt = qr.q.leftCols(3);
        CHECK((a - qt * (qt.adjoint() * a)).norm() <= 1e-8 * a.norm());
        // column space agrees with the deterministic factorization
        const PivotedQr det = qrcp(a);
        CHECK(det.s == 3);
        CHECK(support::principal_angle(qt, det.q.leftCols(3)) <= 1e-8);
    }

    SUBCASE("determinism and validation") {
        const Matrix a = random_matrix(8, 6, 5);
        const PivotedQr q1 = rand_qrcp(a, 4, 10, 123);
        const PivotedQr q2 = rand_qrcp(a, 4, 10, 123);
        CHECK((q1.q - q2.q).norm() == 0.0);
        CHECK((q1.r - q2.r).norm() == 0.0);
        CHECK_THROWS_AS(rand_qrcp(a, 0, 10, 1), InvalidRank);
        CHECK_THROWS_AS(rand_qrcp(a, 7, 10, 1), InvalidRank);
    }

    SUBCASE("full target rank reproduces the deterministic rank decision") {
        // exact rank 4 with (infinite) singular-value gap
        const Matrix a = random_matrix(9, 4, 6) * random_matrix(4, 8, 7);
        const PivotedQr det = qrcp(a);
        const PivotedQr rnd = rand_qrcp(a, std::min<Index>(9, 8), 20, 31);
        const double head = std::abs(rnd.r(0, 0));
        const double tol = 8 * std::numeric_limits<double>::epsilon() * head;
        Index revealed = 0;
        for (Index i = 0; i < 8; ++i) {
            if (std::abs(rnd.r(i, i)) <= tol) break;
            ++revealed;
        }
        CHECK(det.s == 4);
        CHECK(revealed == det.s);
    }
}
