#include "rsp/qmath.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace rsp;
using rsp::testing::random_density;
using rsp::testing::random_unitary;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<cplx> basis4(int k) {
    std::vector<cplx> v(4, cplx{0.0, 0.0});
    v[k] = 1.0;
    return v;
}
}  // namespace

TEST_CASE("kron basics") {
    CHECK(kron(identity2(), identity2()).max_abs_diff(identity4()) == 0.0);

    const ComplexMatrix zz = kron(sigma_z(), sigma_z());
    const ComplexMatrix expected(4, {1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1});
    CHECK(zz.max_abs_diff(expected) == 0.0);

    // sigma_x on the slow index flips |00> to |10>
    const auto out = kron(sigma_x(), identity2()).apply(basis4(0));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(out[k] - basis4(2)[k]) == 0.0);

    CHECK_THROWS_AS(kron(identity4(), identity2()), std::invalid_argument);
}

TEST_CASE("kron mixed-product property") {
    std::mt19937 rng(rsp::testing::default_seed());
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = random_unitary(2, rng);
        const ComplexMatrix b = random_unitary(2, rng);
        const ComplexMatrix c = random_unitary(2, rng);
        const ComplexMatrix d = random_unitary(2, rng);
        const double err = (kron(a, b) * kron(c, d)).max_abs_diff(kron(a * c, b * d));
        CHECK(err < 1e-12);
    }
}

TEST_CASE("apply_to_spin embedding") {
    const auto out_b = apply_to_spin(sigma_x(), Spin::B).apply(basis4(0));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(out_b[k] - basis4(1)[k]) == 0.0);

    const double r = 1.0 / std::sqrt(2.0);
    const ComplexMatrix h(2, {r, r, r, -r});
    const auto out_a = apply_to_spin(h, Spin::A).apply(basis4(0));
    CHECK(std::abs(out_a[0] - cplx{r, 0}) < 1e-15);
    CHECK(std::abs(out_a[2] - cplx{r, 0}) < 1e-15);
    CHECK(std::abs(out_a[1]) == 0.0);

    // embedding on B is block diagonal with identical blocks
    const ComplexMatrix isy = sigma_y().scaled(cplx{0.0, 1.0});
    const ComplexMatrix m = apply_to_spin(isy, Spin::B);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(m(i, j) == isy(i, j));
            CHECK(m(2 + i, 2 + j) == isy(i, j));
            CHECK(m(i, 2 + j) == cplx{0.0, 0.0});
        }
}

TEST_CASE("partial trace on product and entangled states") {
    const double r = 1.0 / std::sqrt(2.0);
    const DensityMatrix singlet = DensityMatrix::pure({0, r, -r, 0});
    const DensityMatrix marginal = partial_trace(singlet, Spin::B);
    CHECK(marginal.matrix().max_abs_diff(identity2().scaled(0.5)) < 1e-15);

    const DensityMatrix product = DensityMatrix::pure({1, 0, 0, 0});
    const DensityMatrix kept = partial_trace(product, Spin::B);
    CHECK(std::abs(kept.matrix()(0, 0) - cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("partial trace preserves trace and positivity") {
    std::mt19937 rng(rsp::testing::default_seed());
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = random_density(4, rng);
        for (Spin keep : {Spin::A, Spin::B}) {
            const DensityMatrix red = partial_trace(rho, keep);
            CHECK(std::abs(red.matrix().trace() - cplx{1.0, 0.0}) < 1e-12);
            for (double ev : hermitian_eigenvalues(red.matrix())) CHECK(ev > -1e-10);
        }
    }
}

TEST_CASE("fidelity") {
    const DensityMatrix zero = DensityMatrix::pure({1, 0});
    CHECK(fidelity(zero, {1, 0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(zero, {0, 1}) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fidelity(DensityMatrix::maximally_mixed(2), {1, 0}) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(fidelity(zero, {2, 0}), std::invalid_argument);
}

TEST_CASE("equal_up_to_global_phase") {
    const double r = 1.0 / std::sqrt(2.0);
    const ComplexMatrix h(2, {r, r, r, -r});
    const ComplexMatrix ih = h.scaled(cplx{0.0, 1.0});

    const PhaseMatch m = equal_up_to_global_phase(ih, h);
    CHECK(m.equal);
    CHECK(std::abs(m.phase - cplx{0.0, 1.0}) < 1e-14);

    CHECK_FALSE(equal_up_to_global_phase(sigma_x(), sigma_y()).equal);
    CHECK_THROWS_AS(equal_up_to_global_phase(sigma_x(), ComplexMatrix::zero(2)),
                    std::invalid_argument);
}

TEST_CASE("equal_up_to_global_phase is reflexive, symmetric, phase invariant") {
    std::mt19937 rng(rsp::testing::default_seed());
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 25; ++trial) {
        const ComplexMatrix u = random_unitary(4, rng);
        CHECK(equal_up_to_global_phase(u, u).equal);
        const cplx phase = std::exp(cplx{0.0, angle(rng)});
        const ComplexMatrix v = u.scaled(phase);
        CHECK(equal_up_to_global_phase(u, v).equal);
        CHECK(equal_up_to_global_phase(v, u).equal);
    }
}

TEST_CASE("bloch vector of named states") {
    const BlochVector z = bloch_vector(DensityMatrix::pure({1, 0}));
    CHECK(z.x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(z.z == doctest::Approx(1.0).epsilon(1e-14));

    const double r = 1.0 / std::sqrt(2.0);
    const BlochVector x = bloch_vector(DensityMatrix::pure({r, r}));
    CHECK(x.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x.y == doctest::Approx(0.0).epsilon(1e-14));

    const double th = kPi / 3.0;
    const BlochVector v =
        bloch_vector(DensityMatrix::pure({std::cos(th / 2.0), std::sin(th / 2.0)}));
    CHECK(v.x == doctest::Approx(std::sin(th)).epsilon(1e-12));
    CHECK(v.z == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bloch vector matches the (theta, phi) parametrization") {
    std::mt19937 rng(rsp::testing::default_seed());
    std::uniform_real_distribution<double> th_dist(0.0, kPi);
    std::uniform_real_distribution<double> ph_dist(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 100; ++trial) {
        const double th = th_dist(rng);
        const double ph = ph_dist(rng);
        const std::vector<cplx> psi = {std::cos(th / 2.0),
                                       std::sin(th / 2.0) * std::exp(cplx{0.0, ph})};
        const BlochVector v = bloch_vector(DensityMatrix::pure(psi));
        CHECK(std::abs(v.x - std::sin(th) * std::cos(ph)) < 1e-12);
        CHECK(std::abs(v.y - std::sin(th) * std::sin(ph)) < 1e-12);
        CHECK(std::abs(v.z - std::cos(th)) < 1e-12);
    }
}

TEST_CASE("density matrix invariants are enforced") {
    ComplexMatrix not_hermitian(2, {1, 1, 0, 0});
    CHECK_THROWS_AS(DensityMatrix{not_hermitian}, std::invalid_argument);

    ComplexMatrix wrong_trace(2, {1, 0, 0, 1});
    CHECK_THROWS_AS(DensityMatrix{wrong_trace}, std::invalid_argument);

    ComplexMatrix negative(2, {1.5, 0, 0, -0.5});
    CHECK_THROWS_AS(DensityMatrix{negative}, std::invalid_argument);

    CHECK_THROWS_AS(DensityMatrix::pure({1, 1}), std::invalid_argument);
}

TEST_CASE("trace distance") {
    const DensityMatrix zero = DensityMatrix::pure({1, 0});
    const DensityMatrix one = DensityMatrix::pure({0, 1});
    CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trace_distance(zero, zero) == doctest::Approx(0.0).epsilon(1e-12));
}
