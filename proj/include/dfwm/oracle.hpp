#pragma once

// Brute-force reference for the perturbative response: the full four-level
// master equation as a 16x16 generator, solved for its steady state.

#include "dfwm/atom.hpp"
#include "dfwm/config.hpp"

#include <Eigen/Core>

namespace dfwm {

/// Full 4x4 density matrix, index 0..3 for |1>..|4>; element (j, k) is
/// rho_{j+1, k+1}.
using DensityMatrix = Eigen::Matrix4cd;

/// Steady state of the master equation with finite probe and signal Rabi
/// frequencies. Decay channels |2>->|1>, |3>->|1>, |4>->|2>, |4>->|3>;
/// coherences damp at the table's gamma_jk (|2><4| at gamma42()).
///
/// Throws NumericalError if the rate table is not closed (partial rates must
/// sum to the totals) or the generator has no unique steady state.
DensityMatrix liouvillian_oracle(const DriveConfig& drive, Complex omega_c, const RateTable& rates,
                                 Complex omega_p, Complex omega_s);

/// Susceptibilities read off the oracle at omega = 0 with probe-only and
/// signal-only sources of the given amplitude: chi_pp = rho_21 / Omega_p, etc.
ResponseMatrix oracle_response_raw(const DriveConfig& drive, Complex omega_c, const RateTable& rates,
                                   double amplitude);

/// As above, with the O(amplitude^2) saturation term removed by combining
/// amplitudes e and e/2: chi = (4 chi(e/2) - chi(e)) / 3.
ResponseMatrix oracle_response(const DriveConfig& drive, Complex omega_c, const RateTable& rates,
                               double amplitude = 1e-3);

}  // namespace dfwm
