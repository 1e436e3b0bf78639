#pragma once

#include "abflux/common.hpp"

#include <vector>

namespace abflux::thin2d {

// mu = n + dmu with n = floor(mu), 0 <= dmu < 1.
struct FluxParameter {
    double mu;
    long n;
    double dmu;
};

FluxParameter flux_decompose(double mu);

struct DeficiencyIndices {
    int nplus;
    int nminus;
    std::vector<long> witnesses; // channels m with |m + mu| < 1
};

DeficiencyIndices deficiency_indices(double mu);

struct PlaneKinematics2D {
    double k = 1.0;
    double delta = 0.0; // incidence angle
    double kz = 0.0;
};

// Partial-wave sum with its dropped-tail bound. terms[i] is channel m = i - mmax.
struct AmplitudeSeries {
    int mmax = 0;
    std::vector<cplx> terms;
    double tail_bound = 0.0;

    cplx sum() const;
};

// Radial coefficient of channel m: (-1)^m e^{-i|m+mu|pi/2} J_{|m+mu|}(krho).
cplx channel_coefficient(long m, double mu, double krho);

// Bound on sum over |m| > mmax of |J_{|m+mu|}(krho)|; infinity if not yet geometric.
double channel_tail_bound(double mu, double krho, int mmax);

// Smallest mmax whose tail bound is below tol.
int choose_mmax(double mu, double krho, double tol);

AmplitudeSeries wavefunction_series(const FluxParameter& flux, const PlaneKinematics2D& kin,
                                    double rho, double phi, int mmax);

// Scattering solution; throws NumericalError when the tail bound exceeds tol.
cplx wavefunction_thin(const FluxParameter& flux, const PlaneKinematics2D& kin, double rho,
                       double phi, int mmax, double tol = 1e-10);

// Same, with mmax chosen from tol.
cplx wavefunction_thin(const FluxParameter& flux, const PlaneKinematics2D& kin, double rho,
                       double phi);

// Scattering amplitude; dphi = phi - delta. Rejects the forward direction.
cplx amplitude_thin(const FluxParameter& flux, double dphi);

double cross_section_thin(const FluxParameter& flux, double dphi);

// |A - i U^{-1} grad U| for the pure-gauge potential n grad(phi) and U = e^{-i n phi}.
double gauge_identity_residual(int n, double x, double y);

} // namespace abflux::thin2d
