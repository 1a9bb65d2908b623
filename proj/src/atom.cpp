#include "dfwm/atom.hpp"

#include "dfwm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace dfwm {

namespace {
constexpr Complex I{0.0, 1.0};

// Pivots are bounded away from zero, so the unscaled formula is safe.
inline Complex reciprocal(Complex z) { return std::conj(z) / std::norm(z); }
}  // namespace

ZerothOrderState two_level_steady_state(Complex omega_c, double delta_c, const RateTable& rates) {
    const double g = rates.gamma31;
    const double drive = std::norm(omega_c);
    ZerothOrderState z;
    if (drive == 0.0) return z;
    const double s = drive * g / (2.0 * (g * g + delta_c * delta_c));
    z.rho33 = s / (rates.Gamma3_total + 2.0 * s);
    z.rho31 = 0.5 * I * omega_c * (1.0 - 2.0 * z.rho33) / Complex(g, -delta_c);
    return z;
}

ResponseMatrix linear_response(double omega, const DriveConfig& drive, Complex omega_c_local,
                               const ZerothOrderState& zeroth, const RateTable& rates) {
    const Complex oc = omega_c_local;
    const Complex od = drive.omega_d;
    const double dp = drive.delta_p + omega;
    const double dc = drive.delta_c;
    const double d2 = drive.delta() + omega;

    // Unknowns x = (rho21, rho23, rho41, rho43); 0 = M x + b, solved as
    // M x = -b for the unit-Omega_p and unit-Omega_s sources at once.
    Complex m[4][4] = {
        {Complex(-rates.gamma21, dp), -0.5 * I * oc, 0.5 * I * std::conj(od), 0.0},
        {-0.5 * I * std::conj(oc), Complex(-rates.gamma23, dp - dc), 0.0, 0.5 * I * std::conj(od)},
        {0.5 * I * od, 0.0, Complex(-rates.gamma41, d2), -0.5 * I * oc},
        {0.0, 0.5 * I * od, -0.5 * I * std::conj(oc), Complex(-rates.gamma43, d2 - dc)},
    };
    Complex x[4][2] = {
        {-0.5 * I * zeroth.rho11(), 0.0},
        {-0.5 * I * zeroth.rho13(), 0.0},
        {0.0, -0.5 * I * zeroth.rho31},
        {0.0, -0.5 * I * zeroth.rho33},
    };

    // Pivoting compares squared magnitudes.
    double scale = 0.0;
    for (const auto& row : m)
        for (const Complex v : row) scale = std::max(scale, std::norm(v));

    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        double best = std::norm(m[col][col]);
        for (int r = col + 1; r < 4; ++r) {
            const double v = std::norm(m[r][col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (!(best > 1e-28 * scale)) {
            std::ostringstream msg;
            msg << "singular first-order system (pivot " << std::sqrt(best) << ", scale " << std::sqrt(scale)
                << ") at omega=" << omega << " delta_p=" << drive.delta_p
                << "; check for zero decoherence rates at coinciding resonances";
            throw NumericalError(msg.str());
        }
        if (piv != col) {
            std::swap(m[piv], m[col]);
            std::swap(x[piv], x[col]);
        }
        const Complex inv = reciprocal(m[col][col]);
        for (int r = col + 1; r < 4; ++r) {
            const Complex f = m[r][col] * inv;
            if (f == 0.0) continue;
            for (int c = col + 1; c < 4; ++c) m[r][c] -= f * m[col][c];
            x[r][0] -= f * x[col][0];
            x[r][1] -= f * x[col][1];
        }
    }
    for (int r = 3; r >= 0; --r) {
        for (int c = r + 1; c < 4; ++c) {
            x[r][0] -= m[r][c] * x[c][0];
            x[r][1] -= m[r][c] * x[c][1];
        }
        const Complex inv = reciprocal(m[r][r]);
        x[r][0] *= inv;
        x[r][1] *= inv;
    }
    return ResponseMatrix{x[0][0], x[0][1], x[3][0], x[3][1]};
}

}  // namespace dfwm
