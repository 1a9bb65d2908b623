#include "dfwm/oracle.hpp"

#include "dfwm/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace dfwm {

namespace {

constexpr Complex I{0.0, 1.0};

constexpr int vec_index(int j, int k) { return 4 * j + k; }

}  // namespace

DensityMatrix liouvillian_oracle(const DriveConfig& drive, Complex omega_c, const RateTable& rates,
                                 Complex omega_p, Complex omega_s) {
    if (!rates.closed())
        throw NumericalError("oracle requires a closed level scheme (partial rates summing to totals)");

    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    h(1, 1) = -drive.delta_p;
    h(2, 2) = -drive.delta_c;
    h(3, 3) = -drive.delta();
    const Complex od = drive.omega_d;
    h(1, 0) = -0.5 * omega_p;
    h(2, 0) = -0.5 * omega_c;
    h(3, 1) = -0.5 * od;
    h(3, 2) = -0.5 * omega_s;
    h(0, 1) = std::conj(h(1, 0));
    h(0, 2) = std::conj(h(2, 0));
    h(1, 3) = std::conj(h(3, 1));
    h(2, 3) = std::conj(h(3, 2));

    Eigen::Matrix4d dephase = Eigen::Matrix4d::Zero();
    dephase(1, 0) = rates.gamma21;
    dephase(2, 0) = rates.gamma31;
    dephase(3, 0) = rates.gamma41;
    dephase(1, 2) = rates.gamma23;
    dephase(1, 3) = rates.gamma42();
    dephase(3, 2) = rates.gamma43;
    dephase = dephase + dephase.transpose().eval();

    // d rho_jk / dt = -i sum_m (H_jm rho_mk - rho_jm H_mk) + relaxation.
    Eigen::Matrix<Complex, 16, 16> gen = Eigen::Matrix<Complex, 16, 16>::Zero();
    for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) {
            const int row = vec_index(j, k);
            for (int m = 0; m < 4; ++m) {
                gen(row, vec_index(m, k)) += -I * h(j, m);
                gen(row, vec_index(j, m)) += I * h(m, k);
            }
            if (j != k) gen(row, row) -= dephase(j, k);
        }
    }
    const double out[4] = {0.0, rates.Gamma2_total, rates.Gamma3_total, rates.Gamma4_total};
    for (int j = 1; j < 4; ++j) gen(vec_index(j, j), vec_index(j, j)) -= out[j];
    gen(vec_index(0, 0), vec_index(1, 1)) += rates.Gamma21;
    gen(vec_index(0, 0), vec_index(2, 2)) += rates.Gamma31;
    gen(vec_index(1, 1), vec_index(3, 3)) += rates.Gamma42;
    gen(vec_index(2, 2), vec_index(3, 3)) += rates.Gamma43;

    Eigen::FullPivLU<Eigen::Matrix<Complex, 16, 16>> kernel(gen);
    kernel.setThreshold(1e-12);
    if (kernel.dimensionOfKernel() != 1)
        throw NumericalError("master equation has " + std::to_string(kernel.dimensionOfKernel()) +
                             " independent steady states");

    // The population equations sum to zero; swap the first for Tr rho = 1.
    Eigen::Matrix<Complex, 16, 16> sys = gen;
    Eigen::Matrix<Complex, 16, 1> rhs = Eigen::Matrix<Complex, 16, 1>::Zero();
    sys.row(0).setZero();
    for (int j = 0; j < 4; ++j) sys(0, vec_index(j, j)) = 1.0;
    rhs(0) = 1.0;
    const Eigen::Matrix<Complex, 16, 1> x = sys.fullPivLu().solve(rhs);

    DensityMatrix rho;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) rho(j, k) = x(vec_index(j, k));
    return rho;
}

ResponseMatrix oracle_response_raw(const DriveConfig& drive, Complex omega_c, const RateTable& rates,
                                   double amplitude) {
    const DensityMatrix probe = liouvillian_oracle(drive, omega_c, rates, amplitude, 0.0);
    const DensityMatrix signal = liouvillian_oracle(drive, omega_c, rates, 0.0, amplitude);
    // rho_21 is element (1, 0), rho_43 element (3, 2).
    return ResponseMatrix{probe(1, 0) / amplitude, signal(1, 0) / amplitude,
                          probe(3, 2) / amplitude, signal(3, 2) / amplitude};
}

ResponseMatrix oracle_response(const DriveConfig& drive, Complex omega_c, const RateTable& rates,
                               double amplitude) {
    const ResponseMatrix full = oracle_response_raw(drive, omega_c, rates, amplitude);
    const ResponseMatrix half = oracle_response_raw(drive, omega_c, rates, 0.5 * amplitude);
    auto extrapolate = [](Complex f, Complex h) { return (4.0 * h - f) / 3.0; };
    return ResponseMatrix{extrapolate(full.chi_pp, half.chi_pp), extrapolate(full.chi_ps, half.chi_ps),
                          extrapolate(full.chi_sp, half.chi_sp), extrapolate(full.chi_ss, half.chi_ss)};
}

}  // namespace dfwm
