#pragma once

// Steady-state atomic response of the diamond scheme.
//
// Index convention: the collective operator sigma_jk = |j><k| has expectation
// value rho_kj. Everything below is written in density-matrix elements rho_kj;
// the probe and signal propagation sources sigma_12 and sigma_34 are rho_21 and
// rho_43, the coupling-field source sigma_13 is rho_31.
//
// Rotating-frame Hamiltonian (hbar = 1):
//   H = -Delta_p |2><2| - Delta_c |3><3| - delta |4><4|
//       - 1/2 (Omega_p |2><1| + Omega_c |3><1| + Omega_d |4><2| + Omega_s |4><3| + h.c.)

#include "dfwm/config.hpp"

namespace dfwm {

/// Steady state of the coupling-driven |1> <-> |3> transition.
struct ZerothOrderState {
    double rho33 = 0.0;
    Complex rho31{};

    double rho11() const { return 1.0 - rho33; }
    Complex rho13() const { return std::conj(rho31); }
};

/// Linear coefficients of the weak-field coherences:
///   rho_21 = chi_pp * Omega_p + chi_ps * Omega_s
///   rho_43 = chi_sp * Omega_p + chi_ss * Omega_s
struct ResponseMatrix {
    Complex chi_pp{};
    Complex chi_ps{};
    Complex chi_sp{};
    Complex chi_ss{};
};

/// Closed-form steady state of the driven two-level Bloch equations with
/// population decay Gamma3_total and coherence decay gamma31:
///   rho33 = s / (Gamma3 + 2 s),  s = |Omega_c|^2 gamma31 / (2 (gamma31^2 + Delta_c^2))
///   rho31 = (i/2) Omega_c (1 - 2 rho33) / (gamma31 - i Delta_c)
ZerothOrderState two_level_steady_state(Complex omega_c, double delta_c, const RateTable& rates);

/// Solves the first-order system for (rho_21, rho_23, rho_41, rho_43) at
/// sideband frequency `omega` and returns the four susceptibilities.
/// Throws NumericalError when the 4x4 system is singular.
ResponseMatrix linear_response(double omega, const DriveConfig& drive, Complex omega_c_local,
                               const ZerothOrderState& zeroth, const RateTable& rates);

}  // namespace dfwm
