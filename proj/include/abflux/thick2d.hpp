#pragma once

#include "abflux/common.hpp"
#include "abflux/thin2d.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace abflux::thick2d {

enum class ProfileKind { linear, quadratic, custom };

// Regularizing function f_a(rho) = g(rho / a) with g(0) = 0, g(1) = 1 and
// f_a = 1 beyond a. Enclosed flux at radius rho is 2 pi mu f_a(rho).
class FluxProfile {
public:
    using Shape = std::function<double(double)>;

    static FluxProfile linear(double a);
    static FluxProfile quadratic(double a);
    // User shape g on [0, 1] with derivative dg; constants are verified by sampling.
    static FluxProfile custom(double a, Shape g, Shape dg, std::string name = "custom");
    // Monotone cubic through (x_i, g_i), x from 0 to 1.
    static FluxProfile tabulated(double a, std::vector<double> x, std::vector<double> g);

    ProfileKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double a() const { return a_; }
    FluxProfile with_radius(double a) const;

    double eval(double rho) const;
    double deriv(double rho) const;
    double shape(double x) const;
    double shape_deriv(double x) const;
    // Taylor coefficients g_1..g_4 of g at 0.
    const std::array<double, 4>& taylor() const { return taylor_; }
    // sup |g(x)/x| and sup |g'(x)| on (0, 1].
    double bound_c() const { return c_; }
    double bound_c1() const { return c1_; }
    double enclosed_flux(double mu, double rho) const { return 2.0 * pi * mu * eval(rho); }

private:
    FluxProfile() = default;
    void measure_constants();

    ProfileKind kind_ = ProfileKind::linear;
    std::string name_;
    double a_ = 1.0;
    Shape g_, dg_;
    std::array<double, 4> taylor_{};
    double c_ = 0.0, c1_ = 0.0;
};

// Regular radial solution F = rho^{|m|} Ft on (0, a], Ft(0) = 1.
class RadialSolution {
public:
    int m = 0;
    double k = 0.0;
    double a = 0.0;
    double mu = 0.0;

    double reduced(double rho) const;
    double reduced_deriv(double rho) const;
    // (F, dF/drho)
    std::array<double, 2> values(double rho) const;
    // a Ft'(a) / Ft(a)
    double log_derivative_at_a() const;

private:
    friend RadialSolution solve_radial(int, double, const FluxProfile&, double, double);
    std::array<double, 2> state_at(double x) const; // (Ft, x dFt/dx)

    std::shared_ptr<const FluxProfile> profile_;
    double tol_ = 1e-12;
    double x0_ = 1e-6;
    std::array<double, 5> series_{};
    std::vector<double> s_nodes_;
    std::vector<std::array<double, 2>> y_nodes_;
};

RadialSolution solve_radial(int m, double k, const FluxProfile& profile, double mu,
                            double tol = 1e-12);

struct MatchCoefficients {
    double A;
    double B;
    double b;
};

// Exterior coefficients from F, F' at rho = a.
MatchCoefficients match_exterior(const RadialSolution& sol, double mu);

// b_m from the boundary log-derivative; valid for all |m|.
double b_from_log_derivative(int m, double ka, double mu, double U);

double b_coefficient(int m, double k, double a, const FluxProfile& profile, double mu);

// Ratio of b_m to its small-radius envelope; needs m + mu != 0.
double q_factor(int m, double k, double a, const FluxProfile& profile, double mu);

double boundary_log_derivative(int m, double k, double a, const FluxProfile& profile, double mu);

// Channel coefficients b_m for all channels that matter at tolerance tol.
struct ThickChannels {
    double mu = 0.0;
    double k = 0.0;
    double a = 0.0;
    std::vector<int> m;
    std::vector<double> b;
    double tail_bound = 0.0;
};

ThickChannels thick_channels(double mu, double k, const FluxProfile& profile, double tol = 1e-14,
                             int mmax = 200);

cplx amplitude_thick(const ThickChannels& ch, double dphi);
cplx amplitude_thick(double mu, double k, const FluxProfile& profile, double dphi, int mmax);

cplx wavefunction_thick(const ThickChannels& ch, const FluxProfile& profile, double rho, double phi,
                        double tol = 1e-10);
cplx wavefunction_thick(double mu, double k, const FluxProfile& profile, double rho, double phi,
                        int mmax);

struct IterationResult {
    double value;
    int iterations;
    double bound_c2;
    std::vector<double> term_norms; // sup |Y_n| on [0, x]
};

// Ft at radius x in [0, a] from the Picard iteration of the integral equation.
// Throws NumericalError if an iterate breaks the factorial bound.
IterationResult integral_iteration(int m, double k, double a, const FluxProfile& profile,
                                   double mu, double x, int nmax = 200);

// Least-squares slope of ln(err) against ln(a).
struct ConvergenceReport {
    std::vector<double> radii;
    std::vector<double> errors;
    double exponent;
};

ConvergenceReport amplitude_convergence(double mu, double k, const FluxProfile& shape, double a0,
                                        int nradii, int nangles);

// Uniform grids that never contain the forward direction:
// half: dphi_j = pi (j+1) / n on (0, pi]; full: 2 pi (j+1) / (n+1) on (0, 2 pi).
std::vector<double> angle_grid(int n, bool full = false);

} // namespace abflux::thick2d
