#include "reference_data.hpp"
#include "support.hpp"

#include "t3/metrics.hpp"

#include <doctest.h>

using namespace t3;

TEST_CASE("residuals of a computed pseudoinverse are tiny") {
    const Tensor3 s = support::random_real(5, 7, 4, 99);
    const Tensor3 x = moore_penrose(s).inverse;
    const ErrorReport rep = residuals(s, x);
    const double scale = 1.0 + fro_norm(s);
    CHECK(rep.e1 <= 1e-10 * scale);
    CHECK(rep.e2 <= 1e-10 * scale);
    CHECK(rep.e3 <= 1e-10 * scale);
    CHECK(rep.e4 <= 1e-10 * scale);
}

TEST_CASE("zero candidate inverse") {
    const Tensor3 s = refdata::s223();
    const Tensor3 x(2, 2, 3);
    const ErrorReport rep = residuals(s, x);
    CHECK(rep.e1 == doctest::Approx(fro_norm(s)).epsilon(1e-14));
    CHECK(rep.e2 == 0.0);
}

TEST_CASE("identity pair has all-zero residuals") {
    const Tensor3 id = identity_tensor(3, 2);
    const ErrorReport rep = residuals(id, id, 1);
    CHECK(rep.e1 <= 1e-14);
    CHECK(rep.e2 <= 1e-14);
    CHECK(rep.e3 <= 1e-14);
    CHECK(rep.e4 <= 1e-14);
    CHECK(rep.e5 <= 1e-14);
    CHECK(*rep.e1k <= 1e-14);
}

TEST_CASE("tensor path x sqrt(n) equals the flattened path") {
    const Tensor3 s = support::random_real(4, 4, 5, 7);
    const Tensor3 x = support::random_real(4, 4, 5, 8);
    const ErrorReport rt = residuals(s, x, 2, ResidualPath::Tensor);
    const ErrorReport rm = residuals(s, x, 2, ResidualPath::FlattenedMatrix);
    const double sqrt_n = std::sqrt(5.0);
    CHECK(rt.e1 * sqrt_n == doctest::Approx(rm.e1).epsilon(1e-11));
    CHECK(rt.e2 * sqrt_n == doctest::Approx(rm.e2).epsilon(1e-11));
    CHECK(rt.e3 * sqrt_n == doctest::Approx(rm.e3).epsilon(1e-11));
    CHECK(rt.e4 * sqrt_n == doctest::Approx(rm.e4).epsilon(1e-11));
    CHECK(rt.e5 * sqrt_n == doctest::Approx(rm.e5).epsilon(1e-11));
    CHECK(*rt.e1k * sqrt_n == doctest::Approx(*rm.e1k).epsilon(1e-11));

    // complex path goes through the Eigen branch
    const Tensor3 sc = support::random_complex(3, 3, 2, 9);
    const Tensor3 xc = support::random_complex(3, 3, 2, 10);
    const ErrorReport rtc = residuals(sc, xc, std::nullopt, ResidualPath::Tensor);
    const ErrorReport rmc = residuals(sc, xc, std::nullopt, ResidualPath::FlattenedMatrix);
    CHECK(rtc.e1 * std::sqrt(2.0) == doctest::Approx(rmc.e1).epsilon(1e-11));
}

TEST_CASE("group-inverse instance residuals") {
    const Tensor3 s = refdata::group_s442();
    const Tensor3 x = group_inverse(s).inverse;
    const ErrorReport rep = residuals(s, x, 1);
    CHECK(rep.e1 <= 1e-8);
    CHECK(rep.e2 <= 1e-8);
    CHECK(rep.e5 <= 1e-8);
    CHECK(*rep.e1k <= 1e-8);
}

TEST_CASE("digest and validation") {
    const Tensor3 s = support::random_real(3, 3, 2, 1);
    const Tensor3 x = support::random_real(3, 3, 2, 2);
    const ErrorReport r1 = residuals(s, x);
    const ErrorReport r2 = residuals(s, x);
    CHECK(r1.inputs_digest == r2.inputs_digest);
    Tensor3 x2 = x;
    x2(0, 0, 0) += 1.0;
    CHECK(residuals(s, x2).inputs_digest != r1.inputs_digest);

    CHECK_THROWS_AS(residuals(s, support::random_real(2, 3, 2, 3)), DimensionMismatch);
    const Tensor3 rect = support::random_real(3, 4, 2, 4);
    CHECK_THROWS_AS(residuals(rect, t_transpose(rect), 1), DimensionMismatch);
    CHECK_THROWS_AS(residuals(s, x, 5), DimensionMismatch); // k beyond slice dim
}
