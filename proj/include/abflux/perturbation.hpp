#pragma once

#include "abflux/common.hpp"

#include <functional>
#include <vector>

namespace abflux::perturbation {

struct PerturbationChannel {
    long m;
    long n;
    double krho;
};

// First-order result pi^2 dmu^2 / tan^2(phi/2).
double perturbative_amplitude_sq(double dmu, double phi);
// Small-flux limit of the exact cross-section, pi^2 dmu^2 / sin^2(phi/2).
double exact_small_amplitude_sq(double dmu, double phi);

// Three-branch first-order partial wave; zero in the channel m + n = 0.
cplx perturbative_partial_wave(const PerturbationChannel& ch);

// d/d(dmu) of the exact channel coefficient at flux n - dmu, dmu -> 0+, divided by
// e^{-i n pi/2} i^m. One-sided second-order stencil with a Richardson check.
cplx exact_expansion_partial_wave(const PerturbationChannel& ch, double h = 1e-5);

// sum_m e^{-i n pi/2} i^m e^{i m phi} F_m over |m + n| <= mmax.
cplx channel_sum(long n, double krho, double phi, int mmax, bool exact);

// d/d(dmu) of the thin-solenoid wave function at flux n - dmu, dmu -> 0+.
cplx wavefunction_dmu_derivative(long n, double krho, double phi, double h = 1e-5);

// I(eps) = int_0^inf eps rho^{eps-1} g(rho) d rho for each eps.
std::vector<double> delta_source_limit(const std::function<double(double)>& g,
                                       const std::vector<double>& eps_list);

} // namespace abflux::perturbation
