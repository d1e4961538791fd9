#include "reference_data.hpp"
#include "support.hpp"

#include "t3/metrics.hpp"

#include <doctest.h>

using namespace t3;

TEST_CASE("parallel map: results identical across thread counts") {
    const Tensor3 a = support::random_real(6, 5, 8, 301);
    const Tensor3 b = support::random_real(5, 4, 8, 302);
    const Tensor3 serial = tprod(a, b);
    const OuterResult mp_serial = moore_penrose(a);

    config::threads() = 3;
    const Tensor3 threaded = tprod(a, b);
    const OuterResult mp_threaded = moore_penrose(a);
    config::threads() = 1;

    CHECK(support::max_abs_diff(serial, threaded) == 0.0);
    CHECK(support::max_abs_diff(mp_serial.inverse, mp_threaded.inverse) == 0.0);
}

TEST_CASE("parallel map: exceptions propagate to the caller") {
    config::threads() = 4;
    CHECK_THROWS_AS(t_inverse(Tensor3(3, 3, 8)), Singular);
    config::threads() = 1;
}

TEST_CASE("rank tolerance override changes the rank decision") {
    Matrix a = Matrix::Zero(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 1e-6;
    a(2, 2) = 1e-16;
    CHECK(svd_rank(a) == 2); // default: 3 * eps * sigma_max keeps 1e-6, drops 1e-16
    RankTolerance loose{1e-3};
    CHECK(svd_rank(a, loose) == 1);
    RankTolerance tight{1e-17};
    CHECK(svd_rank(a, tight) == 3);

    // the same override flows through tensor-level ranks; an impulse tensor
    // repeats its slice in every Fourier slice
    Tensor3 t(3, 3, 2);
    t.set_slice(0, a);
    CHECK(t_rank(t, loose) == 2);
    CHECK(t_rank(t, tight) == 6);
}

TEST_CASE("from_fourier cleanup tolerance is overridable") {
    FourierStack f = to_fourier(support::random_real(3, 3, 4, 303));
    f.slice(1)(0, 0) += Complex(0.0, 1e-6);
    CHECK_THROWS_AS(from_fourier(f), RealnessViolated);
    const Tensor3 cleaned = from_fourier(f, 1e-3); // loose cleanup accepts and zeroes
    CHECK(cleaned.is_real());
}

TEST_CASE("deterministic gaussian sampler") {
    GaussianSampler a(42), b(42), c(43);
    const RealMatrix ma = a.matrix(4, 3);
    const RealMatrix mb = b.matrix(4, 3);
    CHECK((ma - mb).norm() == 0.0);
    CHECK((ma - c.matrix(4, 3)).norm() != 0.0);
    // sane first two moments over a modest draw
    GaussianSampler d(7);
    double sum = 0.0, sq = 0.0;
    const int count = 20000;
    for (int i = 0; i < count; ++i) {
        const double x = d();
        sum += x;
        sq += x * x;
    }
    CHECK(std::abs(sum / count) < 0.03);
    CHECK(std::abs(sq / count - 1.0) < 0.05);
}

TEST_CASE("randomized t-QR per-slice sketch ranks") {
    const Tensor3 t = support::uniform_rank_tensor(6, 2, 3, 304);
    RandQrOptions scalar;
    scalar.k = 2;
    scalar.seed = 11;
    RandQrOptions per_slice = scalar;
    per_slice.per_slice_k = {2, 2, 2};
    const TqrPartition a = t_qrcp(t, scalar);
    const TqrPartition b = t_qrcp(t, per_slice);
    CHECK(support::max_abs_diff(a.qtil, b.qtil) == 0.0);
    per_slice.per_slice_k = {2, 2};
    CHECK_THROWS_AS(t_qrcp(t, per_slice), InvalidRank);
}
