#include "reference_data.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace t3;
using support::max_abs_diff;

TEST_CASE("to_fourier: single slice is passed through") {
    const Tensor3 t = support::random_complex(3, 2, 1, 4);
    const FourierStack f = to_fourier(t);
    CHECK((f.slice(0) - t.slice(0)).norm() == 0.0);
}

TEST_CASE("to_fourier: impulse in slice 1 has a flat spectrum") {
    Tensor3 t(2, 3, 5);
    const Matrix a = support::random_real(2, 3, 1, 9).slice(0);
    t.set_slice(0, a);
    const FourierStack f = to_fourier(t);
    for (Index k = 0; k < 5; ++k) CHECK((f.slice(k) - a).norm() < 1e-14);
}

TEST_CASE("round trip and realness handling") {
    const Tensor3 t = refdata::t233();
    const Tensor3 back = from_fourier(to_fourier(t));
    CHECK(back.is_real());
    CHECK(max_abs_diff(back, t) <= 1e-12 * (1 + fro_norm(t)));

    const Tensor3 c = support::random_complex(4, 3, 6, 10);
    CHECK(max_abs_diff(from_fourier(to_fourier(c)), c) <= 1e-12 * (1 + fro_norm(c)));

    SUBCASE("identity spectrum inverts to the identity tensor") {
        FourierStack f(3, 3, 4, ScalarKind::Real);
        for (Index k = 0; k < 4; ++k) f.slice(k) = Matrix::Identity(3, 3);
        CHECK(max_abs_diff(from_fourier(f), identity_tensor(3, 4)) < 1e-14);
    }

    SUBCASE("asymmetric perturbation of a Real-origin stack is rejected") {
        FourierStack f = to_fourier(support::random_real(3, 3, 4, 12));
        f.slice(1)(0, 0) += Complex(0.0, 1e-3);
        CHECK_THROWS_AS(from_fourier(f), RealnessViolated);
    }
}

TEST_CASE("conjugate symmetry of real-origin stacks") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const FourierStack f = to_fourier(support::random_real(4, 3, 6, seed));
        CHECK(f.conjugate_symmetry_error() <= 1e-12);
    }
    const FourierStack fc = to_fourier(support::random_complex(4, 3, 6, 5));
    CHECK(fc.origin_kind() == ScalarKind::Complex);
}

TEST_CASE("block diagonalization identity") {
    auto check_tensor = [](const Tensor3& t, double tol) {
        const FourierStack f = to_fourier(t);
        const Matrix fn = support::dft_unitary(t.slices());
        const Matrix ip = Matrix::Identity(t.rows(), t.rows());
        const Matrix iq = Matrix::Identity(t.cols(), t.cols());
        const Matrix lhs = support::kron(fn, ip) * bcirc(t).entries *
                           support::kron(fn, iq).adjoint();
        const double err = (lhs - support::blockdiag(f)).norm();
        CHECK(err <= tol * (1.0 + fro_norm(t)));
    };
    check_tensor(refdata::s223(), 1e-12);
    for (std::uint64_t seed = 1; seed <= 8; ++seed)
        check_tensor(support::random_complex(1 + seed % 6, 1 + (seed * 7) % 6,
                                             1 + (seed * 3) % 8, seed),
                     1e-11);
}

TEST_CASE("convolution theorem: products become slicewise products") {
    const Tensor3 a = support::random_real(3, 4, 5, 31);
    const Tensor3 b = support::random_real(4, 2, 5, 32);
    const FourierStack fa = to_fourier(a), fb = to_fourier(b), fc = to_fourier(tprod(a, b));
    for (Index k = 0; k < 5; ++k) {
        const Matrix expected = fa.slice(k) * fb.slice(k);
        CHECK((fc.slice(k) - expected).norm() <= 1e-11 * (1.0 + expected.norm()));
    }
}
