#pragma once

#include "abflux/common.hpp"

namespace abflux::specfun {

// Bessel function of the first kind, real order nu >= -1, x >= 0.
double bessel_j(double nu, double x);
// dJ_nu/dx.
double bessel_j_prime(double nu, double x);

// Neumann function N_nu(x), x > 0.
double bessel_n(double nu, double x);
double bessel_n_prime(double nu, double x);

// Hankel function of the first kind, real argument.
cplx hankel_1(double nu, double x);

// dJ_nu(x)/dnu at nu0 by central differences with step h.
double bessel_j_order_derivative(double nu0, double x, double h = 1e-5);

// Upper bound on |J_nu(x)| for nu >= 0: (x/2)^nu / Gamma(nu+1).
double bessel_j_bound(double nu, double x);

// Jacobi polynomial P_l^{(alpha,beta)}(t), standard normalization
// P_l(1) = Gamma(l+alpha+1) / (l! Gamma(alpha+1)).
double jacobi_p(int l, double alpha, double beta, double t);

// Wigner small-d function d^j_{mp,m}(beta) for integer or half-integer
// indices (2j, j-m, j-mp integral, |m|,|mp| <= j).
double wigner_d(double j, double mp, double m, double beta);

// Generalized spherical function T_L^{m,mu}(phi, theta, psi)
// = exp(-i m phi - i mu psi) d^L_{m,mu}(theta).
// Sphere norm (psi = 0) is sqrt(4 pi / (2L+1)).
cplx spherical_t(double L, double m, double mu, double phi, double theta, double psi = 0.0);

// e^{-i mprime phi} d^L_{mprime,mu}(theta).
cplx monopole_harmonic(double L, double mprime, double mu, double theta, double phi);

// True when (L, m, mu) label a valid harmonic.
bool valid_harmonic_index(double L, double m, double mu);

// Confluent hypergeometric function 1F1(alpha; beta; x).
double kummer_phi(double alpha, double beta, double x);

double gamma(double x);
double lgamma(double x);

} // namespace abflux::specfun
