#pragma once

// Coupled propagation of the coupling field, the probe and the signal through
// the ensemble, zeta = z/L in [0, 1].
//
//   d Omega_c / d zeta = i f gamma31 alpha_c rho_31
//   d Omega_p / d zeta = i f gamma21 alpha_p rho_21
//   d Omega_s / d zeta = i f gamma43 alpha_s rho_43
//
// with f = MediumConfig::propagation_factor(). Probe and signal are carried as
// flux-normalized amplitudes u_l = Omega_l / sqrt(gamma_l alpha_l), so |u|^2 is
// proportional to photon flux and |C|^2 is a photon-number conversion
// efficiency. The retardation term is dropped (retarded frame) and phase
// matching is exact.

#include "dfwm/atom.hpp"
#include "dfwm/config.hpp"

#include <vector>

namespace dfwm {

/// Coupling Rabi frequency along the medium, sampled on the half-step grid:
/// sample 2i is node i (zeta = i h), sample 2i+1 the midpoint after it.
struct CouplingProfile {
    int n_z = 2;
    std::vector<Complex> samples;

    double step() const { return 1.0 / (n_z - 1); }
    Complex at_node(int i) const { return samples[2 * static_cast<std::size_t>(i)]; }
    Complex at_midpoint(int i) const { return samples[2 * static_cast<std::size_t>(i) + 1]; }
    std::vector<double> grid() const;
    std::vector<Complex> nodes() const;
};

/// Maps (probe, signal) at zeta_from to (probe, signal) at zeta_to:
///   [u_p]   [a b] [u_p]
///   [u_s] = [c d] [u_s]
struct TransferMatrix {
    double omega = 0.0;
    Complex a{1.0, 0.0};
    Complex b{};
    Complex c{};
    Complex d{1.0, 0.0};

    /// this * rhs (apply rhs first).
    TransferMatrix operator*(const TransferMatrix& rhs) const;
};

struct Observables {
    double T_p = 1.0;
    double eta_s = 0.0;
    double T_s = 1.0;
    double eta_p = 0.0;
};

/// RK4 integration of the adiabatically eliminated coupling-field equation.
CouplingProfile coupling_profile(const MediumConfig& medium, const RateTable& rates, double omega_c,
                                 double delta_c);
CouplingProfile coupling_profile(const ConfigBundle& bundle);

/// Drive with the fields a spectrum mode switches off set to zero.
DriveConfig apply_mode(DriveConfig drive, SpectrumMode mode);

/// Precomputed medium for one (rates, medium, drive) triple: the coupling
/// profile and the zeroth-order state at every sample. Evaluating a transfer
/// matrix then costs one 4x4 solve per profile sample.
class Medium {
public:
    Medium(const RateTable& rates, const MediumConfig& medium, const DriveConfig& drive);
    explicit Medium(const ConfigBundle& bundle);
    /// Reuses an existing profile (computed for the same omega_c, delta_c).
    Medium(const RateTable& rates, const MediumConfig& medium, const DriveConfig& drive,
           CouplingProfile profile);

    /// Transfer matrix over [zeta_from, zeta_to]. Both ends must lie on grid
    /// nodes (within 1e-9 of i / (n_z - 1)).
    TransferMatrix transfer(double omega, double zeta_from = 0.0, double zeta_to = 1.0) const;

    Observables observables() const;

    const CouplingProfile& profile() const { return profile_; }
    const DriveConfig& drive() const { return drive_; }

    /// Same medium with a different probe detuning (the profile does not
    /// depend on it).
    Medium with_probe_detuning(double delta_p) const;

private:
    RateTable rates_;
    MediumConfig medium_;
    DriveConfig drive_;
    CouplingProfile profile_;
    std::vector<ZerothOrderState> zeroth_;
};

TransferMatrix transfer_matrix(double omega, const ConfigBundle& bundle,
                               const CouplingProfile& profile);

/// T_p = |A(0)|^2, eta_s = |C(0)|^2, T_s = |D(0)|^2, eta_p = |B(0)|^2.
Observables observables_at(const ConfigBundle& bundle);

}  // namespace dfwm
