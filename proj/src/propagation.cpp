#include "dfwm/propagation.hpp"

#include "dfwm/errors.hpp"

#include <Eigen/Core>

#include <cmath>

namespace dfwm {

namespace {

constexpr Complex I{0.0, 1.0};

using Mat2 = Eigen::Matrix2cd;

int snap_to_node(double zeta, int n_z, const char* which) {
    const double scaled = zeta * (n_z - 1);
    const double node = std::round(scaled);
    if (!(zeta >= 0.0 && zeta <= 1.0) || std::abs(scaled - node) > 1e-9 * (n_z - 1))
        throw ValidationError(which, "zeta must be a grid node in [0, 1], got " + std::to_string(zeta));
    return static_cast<int>(node);
}

}  // namespace

std::vector<double> CouplingProfile::grid() const {
    std::vector<double> z(static_cast<std::size_t>(n_z));
    for (int i = 0; i < n_z; ++i) z[static_cast<std::size_t>(i)] = i * step();
    return z;
}

std::vector<Complex> CouplingProfile::nodes() const {
    std::vector<Complex> out(static_cast<std::size_t>(n_z));
    for (int i = 0; i < n_z; ++i) out[static_cast<std::size_t>(i)] = at_node(i);
    return out;
}

TransferMatrix TransferMatrix::operator*(const TransferMatrix& r) const {
    TransferMatrix t;
    t.omega = omega;
    t.a = a * r.a + b * r.c;
    t.b = a * r.b + b * r.d;
    t.c = c * r.a + d * r.c;
    t.d = c * r.b + d * r.d;
    return t;
}

CouplingProfile coupling_profile(const MediumConfig& medium, const RateTable& rates, double omega_c,
                                 double delta_c) {
    CouplingProfile p;
    p.n_z = medium.n_z;
    const int steps = 2 * (medium.n_z - 1);
    p.samples.resize(static_cast<std::size_t>(steps) + 1);

    const Complex k = I * medium.propagation_factor() * rates.gamma31 * medium.alpha_c;
    auto rhs = [&](Complex oc) { return k * two_level_steady_state(oc, delta_c, rates).rho31; };

    const double h = 0.5 * p.step();
    Complex oc = omega_c;
    p.samples[0] = oc;
    for (int s = 0; s < steps; ++s) {
        const Complex k1 = rhs(oc);
        const Complex k2 = rhs(oc + 0.5 * h * k1);
        const Complex k3 = rhs(oc + 0.5 * h * k2);
        const Complex k4 = rhs(oc + h * k3);
        oc += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        p.samples[static_cast<std::size_t>(s) + 1] = oc;
    }
    return p;
}

CouplingProfile coupling_profile(const ConfigBundle& bundle) {
    const DriveConfig& d = bundle.require_drive();
    return coupling_profile(bundle.medium, bundle.rates, d.omega_c, d.delta_c);
}

DriveConfig apply_mode(DriveConfig drive, SpectrumMode mode) {
    switch (mode) {
        case SpectrumMode::fwm: break;
        case SpectrumMode::v_type: drive.omega_d = 0.0; break;
        case SpectrumMode::cascade: drive.omega_c = 0.0; break;
        case SpectrumMode::two_level:
            drive.omega_c = 0.0;
            drive.omega_d = 0.0;
            break;
    }
    return drive;
}

Medium::Medium(const RateTable& rates, const MediumConfig& medium, const DriveConfig& drive)
    : Medium(rates, medium, drive, coupling_profile(medium, rates, drive.omega_c, drive.delta_c)) {}

Medium::Medium(const ConfigBundle& bundle)
    : Medium(bundle.rates, bundle.medium, bundle.require_drive()) {}

Medium::Medium(const RateTable& rates, const MediumConfig& medium, const DriveConfig& drive,
               CouplingProfile profile)
    : rates_(rates), medium_(medium), drive_(drive), profile_(std::move(profile)) {
    zeroth_.reserve(profile_.samples.size());
    for (const Complex oc : profile_.samples)
        zeroth_.push_back(two_level_steady_state(oc, drive_.delta_c, rates_));
}

Medium Medium::with_probe_detuning(double delta_p) const {
    Medium m = *this;
    m.drive_.delta_p = delta_p;
    return m;
}

TransferMatrix Medium::transfer(double omega, double zeta_from, double zeta_to) const {
    const int n = profile_.n_z;
    const int i0 = snap_to_node(zeta_from, n, "zeta_from");
    const int i1 = snap_to_node(zeta_to, n, "zeta_to");
    if (i1 < i0) throw ValidationError("zeta_from, zeta_to", "zeta_to must not precede zeta_from");

    TransferMatrix out;
    out.omega = omega;

    if (medium_.alpha_p == 0.0) return out;
    const double f = medium_.propagation_factor();
    const double kp = rates_.gamma21 * medium_.alpha_p;
    const double ks = rates_.gamma43 * medium_.alpha_s;
    const Complex mpp = I * f * kp;
    const Complex mss = I * f * ks;
    const Complex mx = I * f * std::sqrt(kp * ks);

    auto generator = [&](std::size_t sample) {
        const ResponseMatrix chi =
            linear_response(omega, drive_, profile_.samples[sample], zeroth_[sample], rates_);
        Mat2 m;
        m << mpp * chi.chi_pp, mx * chi.chi_ps, mx * chi.chi_sp, mss * chi.chi_ss;
        return m;
    };

    const double h = profile_.step();
    Mat2 t = Mat2::Identity();
    Mat2 m0 = generator(2 * static_cast<std::size_t>(i0));
    for (int i = i0; i < i1; ++i) {
        const Mat2 mm = generator(2 * static_cast<std::size_t>(i) + 1);
        const Mat2 m1 = generator(2 * static_cast<std::size_t>(i) + 2);
        const Mat2 k1 = m0 * t;
        const Mat2 k2 = mm * (t + 0.5 * h * k1);
        const Mat2 k3 = mm * (t + 0.5 * h * k2);
        const Mat2 k4 = m1 * (t + h * k3);
        t += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        m0 = m1;
    }
    out.a = t(0, 0);
    out.b = t(0, 1);
    out.c = t(1, 0);
    out.d = t(1, 1);
    return out;
}

Observables Medium::observables() const {
    const TransferMatrix t = transfer(0.0);
    return Observables{std::norm(t.a), std::norm(t.c), std::norm(t.d), std::norm(t.b)};
}

TransferMatrix transfer_matrix(double omega, const ConfigBundle& bundle,
                               const CouplingProfile& profile) {
    return Medium(bundle.rates, bundle.medium, bundle.require_drive(), profile).transfer(omega);
}

Observables observables_at(const ConfigBundle& bundle) { return Medium(bundle).observables(); }

}  // namespace dfwm
