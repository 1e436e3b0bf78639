#pragma once

#include "abflux/common.hpp"

#include <functional>
#include <string>
#include <vector>

// Semi-infinite strings. Conventions used throughout:
//  * Schwinger potential with coefficient mu1 and strings along +-n:
//      A = mu1 (n x r)(n.r) / (r (r^2 - (n.r)^2)),  equal to mu1 cos(theta) grad(phi) for n = z.
//  * Dirac potential with coefficient mu and one string along +n:
//      A = mu (n x r) / (r (r - n.r)),  equal to mu (1 + cos(theta)) grad(phi) for n = z.
//  * Harmonics: Schwinger U_m = e^{-i m phi} d^L_{m,mu1}(theta), integer m with |m| <= L;
//    Dirac U_m = e^{-i m phi} d^L_{m-mu,mu}(theta), m = m' + mu with |m'| <= L.
//  * Series are evaluated in the string frame reached by R = Ry(-theta_n) Rz(-phi_n).
namespace abflux::monopole3d {

enum class PotentialKind { schwinger, dirac };

struct StringPotential {
    PotentialKind kind = PotentialKind::schwinger;
    double mu = 0.0;    // mu1 for Schwinger, mu for Dirac
    Vec3 string_dir{0.0, 0.0, 1.0};

    // String along Rz(a) Ry(b) Rz(c) z with (a, b, c) = (pi/2 - phi_k, theta_k, alpha + pi/2).
    static StringPotential from_euler(PotentialKind kind, double mu, double theta_k, double phi_k,
                                      double alpha);
};

// Active z-y-z rotation Rz(a) Ry(b) Rz(c).
Mat3 euler_zyz(double a, double b, double c);
// Rotation taking the unit vector n onto +z: Ry(-theta_n) Rz(-phi_n).
Mat3 rotation_to_z(const Vec3& n);

// mu1 integer for Schwinger, 2 mu integer for Dirac.
bool is_quantized(const StringPotential& p);

// Throws DomainError on a string line.
Vec3 potential_eval(const StringPotential& p, const Vec3& r);

struct AngularMode {
    double L;
    double m;
    double mprime;
    int l;
    double jacobi_alpha;
    double jacobi_beta;
    double lambda;
};

double angular_eigenvalue(int l, double alpha, double beta);

// All harmonics of the nonsingular basis at total index L (empty if L is below |mu|).
std::vector<AngularMode> angular_modes(PotentialKind kind, double mu, double L);

// sin^alpha(theta/2) cos^beta(theta/2) P_l^{(alpha,beta)}(cos theta); valid for any flux.
double angular_function(int l, double alpha, double beta, double theta);

// Lowest angular eigenfunction parameters for possibly non-quantized flux.
std::vector<AngularMode> lowest_modes(PotentialKind kind, double mu);

struct SpectrumEntry {
    double L;
    double lambda;
    int degeneracy;
};

// Quantized Schwinger spectrum L = |mu1| .. Lmax.
std::vector<SpectrumEntry> spectrum(double mu1, double Lmax);

cplx harmonic(PotentialKind kind, double L, double m, double mu, double theta, double phi);

enum class ShiftSource { free_analytic, user_supplied };

struct PhaseShiftSet {
    double mu = 0.0;
    double Lmin = 0.0;
    std::vector<double> deltas; // deltas[i] belongs to L = Lmin + i
    ShiftSource source = ShiftSource::free_analytic;

    double delta(double L) const;
    double Lmax() const { return Lmin + static_cast<double>(deltas.size()) - 1.0; }
};

// delta_L = (pi/2)(L + 1/2 - sqrt((L + 1/2)^2 - mu^2)), L = |mu| .. Lmax.
PhaseShiftSet phase_shifts_free(double mu, double k, double Lmax);

PhaseShiftSet phase_shifts_user(double mu, double Lmin, std::vector<double> deltas);

// Phase shift from integrating u'' = (nu(nu+1)/x^2 - 1) u outward and reading the phase.
double phase_shift_numerical(double mu, double L);

// Radial factor: exact free solution, or sin(kr - pi L/2 + delta)/(kr) for user shifts.
double radial_factor(const PhaseShiftSet& shifts, double L, double kr);

struct Incidence {
    double k = 1.0;
    double theta_k = 0.0;
    double phi_k = 0.0;
};

// Partial-wave series for the configured string. Throws NumericalError when the
// tail bound for L > Lmax exceeds tol (free shifts only).
cplx wavefunction_monopole(const StringPotential& p, const PhaseShiftSet& shifts,
                           const Incidence& inc, double r, double theta, double phi, double Lmax,
                           double tol = 1e-10);

// Schwinger string along z, general incidence, with the Omega_1 prefactor.
cplx wavefunction_closed(const PhaseShiftSet& shifts, const Incidence& inc, double r,
                         double theta, double phi, double Lmax);

// Amplitude from the partial-wave series in the string frame.
cplx amplitude_monopole(const StringPotential& p, const PhaseShiftSet& shifts,
                        const Incidence& inc, double theta, double phi, double Lmax);

// Amplitude from the single-sum form at incidence along the string, times the
// orientation phase of the string seen from the incidence frame.
cplx amplitude_closed(const StringPotential& p, const PhaseShiftSet& shifts,
                      const Incidence& inc, double theta, double phi, double Lmax);

enum class OmegaKind { omega1, omega, omega_prime };

// Omega_1 uses (theta_k, phi_k); Omega and Omega' use the string angles (theta_k, alpha).
double omega_phase(OmegaKind kind, double theta_k, double alpha, double theta, double phi,
                   double phi_k = 0.0);

// Accumulated Omega along the circle center + radius (cos t e1 + sin t e2), with
// e1, e2 orthonormal and normal to axis, tracked continuously over `steps` steps.
double omega_winding(OmegaKind kind, double theta_k, double alpha, const Vec3& center,
                     const Vec3& axis, double radius, int steps = 2000);

enum class GaugePair { schwinger_rotation, dirac_rotation, schwinger_dirac };

std::string to_string(GaugePair pair);

// |A_left - A_right + grad chi| plus the holonomy defect max |1 - exp(i loop integral)|
// around every string involved. Rotation pairs compare the string (theta_n, alpha) with
// the z string; schwinger_dirac compares the two z-string potentials at equal mu.
double gauge_phase_residual(GaugePair pair, double mu, double theta_n, double alpha,
                            const Vec3& point);

} // namespace abflux::monopole3d
