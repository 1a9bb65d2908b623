#include "dfwm/oracle.hpp"
#include "dfwm/errors.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <random>

using namespace dfwm;

namespace {

double max_rel(const ResponseMatrix& x, const ResponseMatrix& y) {
    const double scale = std::max({std::abs(y.chi_pp), std::abs(y.chi_ps), std::abs(y.chi_sp), std::abs(y.chi_ss)});
    return std::max({std::abs(x.chi_pp - y.chi_pp), std::abs(x.chi_ps - y.chi_ps), std::abs(x.chi_sp - y.chi_sp),
                     std::abs(x.chi_ss - y.chi_ss)}) /
           scale;
}

DriveConfig random_drive(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> rabi(0.0, 30.0), det(-15.0, 15.0);
    return DriveConfig{rabi(rng), rabi(rng), det(rng), det(rng), det(rng)};
}

}  // namespace

TEST_CASE("oracle steady state is a density matrix") {
    const RateTable r;
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        const DriveConfig d = random_drive(rng);
        const DensityMatrix rho = liouvillian_oracle(d, d.omega_c, r, Complex{0.7, 0.2}, Complex{0.3, -0.4});
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
        CHECK((rho - rho.adjoint()).norm() < 1e-12);
        for (int k = 0; k < 4; ++k) {
            CHECK(rho(k, k).real() > -1e-12);
            CHECK(rho(k, k).real() < 1.0 + 1e-12);
        }
        // Positive semidefinite.
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (rho + rho.adjoint()));
        CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
}

TEST_CASE("without fields everything sits in the ground state") {
    const RateTable r;
    const DensityMatrix rho = liouvillian_oracle(DriveConfig{}, 0.0, r, 0.0, 0.0);
    CHECK(std::abs(rho(0, 0) - 1.0) < 1e-14);
    DensityMatrix ground = DensityMatrix::Zero();
    ground(0, 0) = 1.0;
    CHECK((rho - ground).norm() < 1e-14);
}

TEST_CASE("zeroth-order closed form agrees with the full steady state") {
    const RateTable r;
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
        const DriveConfig d = random_drive(rng);
        const ZerothOrderState z = two_level_steady_state(d.omega_c, d.delta_c, r);
        const DensityMatrix rho = liouvillian_oracle(d, d.omega_c, r, 0.0, 0.0);
        CHECK(std::abs(rho(2, 2).real() - z.rho33) < 1e-12);
        CHECK(std::abs(rho(2, 0) - z.rho31) < 1e-12);
        CHECK(std::abs(rho(1, 1)) < 1e-12);
        CHECK(std::abs(rho(3, 3)) < 1e-12);
    }
}

TEST_CASE("linear response equals the weak-field limit of the full steady state") {
    const RateTable r;
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        const DriveConfig d = random_drive(rng);
        const ResponseMatrix chi = linear_response(0.0, d, d.omega_c, two_level_steady_state(d.omega_c, d.delta_c, r), r);
        CAPTURE(d.omega_c, d.omega_d, d.delta_c, d.delta_d, d.delta_p);
        CHECK(max_rel(chi, oracle_response(d, d.omega_c, r)) < 1e-9);
        // The raw ratio carries the O(Omega_p^2) saturation term.
        CHECK(max_rel(chi, oracle_response_raw(d, d.omega_c, r, 1e-3)) < 1e-4);
    }
}

TEST_CASE("extra dephasing is honoured by both the oracle and the response") {
    const RateTable r = RateTable::from_totals(0.958, 1.0, 0.583, 0.958, 1.0, 0.2, 0.383, 0.3);
    const DriveConfig d{11.0, 9.0, -1.0, 5.0, -4.0};
    const ResponseMatrix chi = linear_response(0.0, d, d.omega_c, two_level_steady_state(d.omega_c, d.delta_c, r), r);
    CHECK(max_rel(chi, oracle_response(d, d.omega_c, r)) < 1e-9);
}

TEST_CASE("oracle refuses an open level scheme") {
    RateTable r;
    r.Gamma21 = 0.5;
    CHECK_FALSE(r.closed());
    CHECK_THROWS_AS(liouvillian_oracle(DriveConfig{}, 1.0, r, 0.0, 0.0), NumericalError);
}
