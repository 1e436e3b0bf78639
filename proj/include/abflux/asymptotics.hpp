#pragma once

#include "abflux/common.hpp"
#include "abflux/monopole3d.hpp"

#include <functional>
#include <vector>

namespace abflux::asymptotics {

struct SpherePoint {
    double theta;
    double phi;
};

using CircleFn = std::function<cplx(double)>;
using SphereFn = std::function<cplx(double, double)>;

// Asymptotic forms need k rho >= 50.
inline constexpr double min_krho = 50.0;

// sqrt(2 pi / k rho) [e^{i k rho - i pi/4} f(phi_k) + e^{-i k rho + i pi/4} f(phi_k + pi)]
cplx stationary_phase_2d(const CircleFn& f, double k, double rho, double phi_k = 0.0);

// (2 pi / i k r) [e^{i k r} f(k) - e^{-i k r} f(-k)]
cplx stationary_phase_3d(const SphereFn& f, double k, double r, SpherePoint kdir);

// int_0^{2 pi} e^{i k rho cos(phi - phi_k)} f(phi) d phi, panels of width <= pi/(8 k rho),
// doubled until two passes agree.
cplx quadrature_2d(const CircleFn& f, double k, double rho, double phi_k = 0.0);

// int dOmega e^{i k r khat.rhat} f(rhat) with the pole rotated onto khat.
cplx quadrature_3d(const SphereFn& f, double k, double r, SpherePoint kdir, int nphi = 64);

// Orthonormal set with its quadrature rule. Circle elements ignore theta.
struct Basis {
    bool sphere = true;
    std::vector<SphereFn> elements;
    std::vector<SpherePoint> nodes;
    std::vector<double> weights;
};

Basis circle_basis(int nmax, int nquad = 0);
Basis sphere_basis(int lmax, int ntheta = 0, int nphi = 0);
Basis monopole_basis(monopole3d::PotentialKind kind, double mu, double Lmax, int ntheta = 0,
                     int nphi = 0);

// max |Gram - I| under the basis quadrature.
double projector_defect(const Basis& b);

// Per-element terms of the asymptotic plane-wave expansion at observation direction
// rdir; throws NumericalError if the projector defect exceeds 1e-6.
std::vector<cplx> plane_wave_terms(const Basis& b, double k, double r, SpherePoint kdir,
                                   SpherePoint rdir);
cplx plane_wave_basis_expansion(const Basis& b, double k, double r, SpherePoint kdir,
                                SpherePoint rdir);

} // namespace abflux::asymptotics
