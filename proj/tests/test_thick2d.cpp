#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abflux/numerics.hpp"
#include "abflux/specfun.hpp"
#include "abflux/thick2d.hpp"

#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <cmath>

using namespace abflux;
using namespace abflux::thick2d;

namespace {

// Coulomb-type reduction of the linear profile.
double linear_closed(int m, double k, double a, double mu, double rho)
{
    double kap = std::sqrt(mu * mu - a * a * k * k) / a;
    int am = std::abs(m);
    return std::exp(-kap * rho) *
           boost::math::hypergeometric_1F1(am + 0.5 + m * mu / (a * kap), 2.0 * am + 1, 2 * kap * rho);
}

// Oscillator-type reduction of the quadratic profile.
double quadratic_closed(int m, double k, double a, double mu, double rho)
{
    double w = std::abs(mu) / (a * a);
    int am = std::abs(m);
    double e = k * k - 2 * m * mu / (a * a);
    return std::exp(-0.5 * w * rho * rho) *
           boost::math::hypergeometric_1F1(0.5 * (am + 1) - e / (4 * w), am + 1.0, w * rho * rho);
}

} // namespace

TEST_CASE("profiles")
{
    auto p = FluxProfile::linear(0.2);
    CHECK(p.eval(0.0) == 0.0);
    CHECK(p.eval(0.2) == 1.0);
    CHECK(p.eval(5.0) == 1.0);
    CHECK(p.eval(0.1) == doctest::Approx(0.5));
    CHECK(p.bound_c() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(p.enclosed_flux(0.3, 1.0) == doctest::Approx(2 * pi * 0.3));
    auto q = FluxProfile::quadratic(1.0);
    CHECK(q.eval(0.5) == doctest::Approx(0.25));
    CHECK(q.bound_c1() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(FluxProfile::custom(1.0, [](double x) { return x + 0.1; }, [](double) { return 1.0; }),
                    DomainError);
    auto t = FluxProfile::tabulated(1.0, {0.0, 0.25, 0.5, 1.0}, {0.0, 0.3, 0.6, 1.0});
    CHECK(t.shape(0.5) == doctest::Approx(0.6));
    CHECK(t.shape(1.0) == doctest::Approx(1.0));
    CHECK(t.shape(0.375) > 0.3);
    CHECK(t.shape(0.375) < 0.6);
}

TEST_CASE("zero flux gives Bessel functions")
{
    auto p = FluxProfile::linear(1.0);
    for (int m : {0, 1, 3, -4}) {
        auto sol = solve_radial(m, 2.0, p, 0.0);
        int am = std::abs(m);
        double norm = std::pow(1.0, am) / (std::pow(2.0, am) * std::tgamma(am + 1.0));
        for (double r : {0.1, 0.5, 1.0}) {
            double ref = specfun::bessel_j(am, 2.0 * r) / (std::pow(r, am) * norm * std::pow(2.0, am));
            CHECK(std::abs(sol.reduced(r) - ref) < 1e-9);
        }
        CHECK(std::abs(match_exterior(sol, 0.0).B) < 1e-10);
    }
}

TEST_CASE("closed forms for the analytic profiles")
{
    // The linear closed form is written for |mu| > ka.
    double al = 0.1, aq = 0.5, k = 1.0;
    for (double mu : {0.3, -0.7, 1.3})
        for (int m = -20; m <= 20; ++m) {
            auto sl = solve_radial(m, k, FluxProfile::linear(al), mu);
            auto sq = solve_radial(m, k, FluxProfile::quadratic(aq), mu);
            for (double f : {0.01, 0.3, 0.7, 1.0}) {
                double rl = linear_closed(m, k, al, mu, f * al), rq = quadratic_closed(m, k, aq, mu, f * aq);
                REQUIRE(std::isfinite(rl));
                REQUIRE(std::isfinite(rq));
                CHECK(std::abs(sl.reduced(f * al) - rl) <= 1e-8 * std::max(1.0, std::abs(rl)));
                CHECK(std::abs(sq.reduced(f * aq) - rq) <= 1e-8 * std::max(1.0, std::abs(rq)));
            }
        }
}

TEST_CASE("integral iteration agrees with the ODE and obeys the factorial bound")
{
    auto p = FluxProfile::linear(0.1);
    auto it0 = integral_iteration(1, 1.0, 0.1, p, 0.4, 0.0);
    CHECK(it0.value == 1.0);
    for (int m : {-3, 0, 1, 5}) {
        auto sol = solve_radial(m, 1.0, p, 0.4);
        for (double x : {0.03, 0.1}) {
            auto it = integral_iteration(m, 1.0, 0.1, p, 0.4, x);
            CHECK(std::abs(it.value - sol.reduced(x)) < 1e-8);
        }
    }
    auto q = FluxProfile::quadratic(0.5);
    auto it = integral_iteration(2, 1.0, 0.5, q, 1.7, 0.5);
    double c2 = it.bound_c2;
    double fact = 1.0;
    for (std::size_t n = 1; n < it.term_norms.size(); ++n) {
        fact *= c2 * 0.5 / static_cast<double>(n);
        CHECK(it.term_norms[n] <= fact * (1 + 1e-6) + 1e-13);
    }
}

TEST_CASE("two routes to b agree")
{
    for (auto [m, mu] : std::vector<std::pair<int, double>>{{0, 0.3}, {1, 0.3}, {-2, 0.7}, {3, -1.4}}) {
        auto p = FluxProfile::linear(0.01);
        auto sol = solve_radial(m, 1.0, p, mu);
        double b1 = match_exterior(sol, mu).b;
        double b2 = b_coefficient(m, 1.0, 0.01, p, mu);
        CHECK(std::abs(b1 - b2) <= 1e-10 * std::abs(b2));
        if (m == 0 && mu == 0.3) {
            // Leading small-z estimate with U ~ (mu^2 - z^2) / 2.
            double z = 0.01, nu = 0.3, U = 0.5 * (mu * mu - z * z);
            double est = (U - nu) * specfun::bessel_j(nu, z) /
                         (z * specfun::bessel_n_prime(nu, z) - U * specfun::bessel_n(nu, z));
            CHECK(b2 < 0.0);
            CHECK(std::abs(b2 - est) < 0.05 * std::abs(est));
        }
    }
}

TEST_CASE("b scaling with the radius")
{
    for (auto [m, mu] : std::vector<std::pair<int, double>>{{0, 0.3}, {0, 0.7}, {1, 0.3}, {-2, 0.7}}) {
        std::vector<double> as, bs;
        for (int j = 0; j < 6; ++j) {
            double a = 1e-2 * std::pow(2.0, -j);
            as.push_back(a);
            bs.push_back(std::abs(b_coefficient(m, 1.0, a, FluxProfile::linear(a), mu)));
        }
        double expect = 2 * std::abs(m + mu);
        CHECK(std::abs(numerics::fit_loglog(as, bs).slope - expect) <= 0.02 * expect);
        for (std::size_t i = 0; i < as.size(); ++i) {
            double q = q_factor(m, 1.0, as[i], FluxProfile::linear(as[i]), mu);
            CHECK(std::abs(q) < 10.0);
        }
    }
}

TEST_CASE("logarithmic channel")
{
    std::vector<double> lna, inv;
    double prev = INFINITY;
    for (int j = 0; j < 6; ++j) {
        double a = 1e-2 * std::pow(2.0, -j);
        double b = b_coefficient(-1, 1.0, a, FluxProfile::linear(a), 1.0);
        CHECK(b > 0.0);
        CHECK(b < prev);
        prev = b;
        lna.push_back(std::log(a));
        inv.push_back(1.0 / b);
    }
    CHECK(numerics::fit_line(lna, inv).slope == doctest::Approx(-2.0 / pi).epsilon(0.02));
}

TEST_CASE("large-|m| boundary log-derivative")
{
    auto p = FluxProfile::linear(0.1);
    CHECK(std::abs(boundary_log_derivative(200, 1.0, 0.1, p, 0.7) - 0.7) < 0.02);
    CHECK(std::abs(boundary_log_derivative(-200, 1.0, 0.1, p, 0.7) + 0.7) < 0.02);
    double worst = 0.0;
    for (int m = -50; m <= 50; m += 5)
        for (double a : {0.05, 0.025, 0.0125})
            worst = std::max(worst, std::abs(boundary_log_derivative(m, 1.0, a, p, 0.7)));
    CHECK(worst < 2.0);
}

TEST_CASE("Riccati equation for the log-derivative")
{
    double a = 0.2, k = 1.5, mu = 0.6;
    auto p = FluxProfile::quadratic(a);
    for (int m : {-2, 0, 3}) {
        auto sol = solve_radial(m, k, p, mu);
        auto U = [&](double r) { return r * sol.reduced_deriv(r) / sol.reduced(r); };
        for (double f : {0.2, 0.5, 0.9}) {
            double r = f * a, h = 1e-4 * a;
            double dU = (U(r + h) - U(r - h)) / (2 * h);
            double g = p.eval(r);
            double w = 2 * m * mu * g + mu * mu * g * g - k * k * r * r;
            double res = r * dU + U(r) * U(r) + 2 * std::abs(m) * U(r) - w;
            CHECK(std::abs(res) < 1e-7);
        }
    }
}

TEST_CASE("wave function is continuous across the solenoid edge")
{
    double a = 0.3, mu = 0.45, k = 1.0;
    auto p = FluxProfile::linear(a);
    auto ch = thick_channels(mu, k, p);
    for (double phi : {0.4, 2.0, -1.3}) {
        double h = 1e-7;
        cplx in = wavefunction_thick(ch, p, a - h, phi);
        cplx out = wavefunction_thick(ch, p, a + h, phi);
        CHECK(std::abs(in - out) < 1e-9 * 1e3);
        double d = 1e-4;
        cplx din = (wavefunction_thick(ch, p, a - d, phi) - wavefunction_thick(ch, p, a - 2 * d, phi)) / d;
        cplx dout = (wavefunction_thick(ch, p, a + 2 * d, phi) - wavefunction_thick(ch, p, a + d, phi)) / d;
        CHECK(std::abs(din - dout) < 1e-2);
    }
}

TEST_CASE("zero flux gives the plane wave everywhere")
{
    auto p = FluxProfile::linear(0.5);
    auto ch = thick_channels(0.0, 1.0, p);
    for (double rho : {0.1, 0.5, 2.0})
        for (double phi : {0.0, 1.1, -2.2})
            CHECK(std::abs(wavefunction_thick(ch, p, rho, phi) - std::exp(I * rho * std::cos(phi))) < 1e-9);
}

TEST_CASE("amplitude with vanishing b collapses to the thin result")
{
    ThickChannels ch;
    ch.mu = 0.4;
    ch.k = 1.0;
    ch.a = 0.1;
    ch.m = {-1, 0, 1};
    ch.b = {0.0, 0.0, 0.0};
    for (double d : {0.5, 2.0})
        CHECK(amplitude_thick(ch, d) == thin2d::amplitude_thin(thin2d::flux_decompose(0.4), d));
}

TEST_CASE("amplitude bound and convergence")
{
    for (double a : {1e-3, 5e-4}) {
        auto p = FluxProfile::linear(a);
        auto ch = thick_channels(0.5, 1.0, p);
        double sum_low = 0.0;
        for (std::size_t i = 0; i < ch.m.size(); ++i)
            if (std::abs(ch.m[i] + 0.5) <= 1.0) sum_low += std::abs(ch.b[i]);
        for (double d : angle_grid(64)) {
            double diff = std::abs(amplitude_thick(ch, d) - thin2d::amplitude_thin(thin2d::flux_decompose(0.5), d));
            CHECK(diff <= 2 * sum_low + 10 * a * a);
        }
    }
    for (double mu : {0.25, 0.3, 0.5}) {
        auto rep = amplitude_convergence(mu, 1.0, FluxProfile::linear(1e-3), 1e-3, 6, 64);
        double expect = std::min(2 * mu, 2 - 2 * mu);
        CHECK(std::abs(rep.exponent - expect) <= 0.1 * expect);
    }
    auto zero = amplitude_convergence(1.0, 1.0, FluxProfile::linear(1e-2), 1e-2, 6, 16);
    CHECK(zero.errors.back() < zero.errors.front());
}

TEST_CASE("integer flux: scattering and origin value vanish")
{
    double prev_amp = INFINITY, prev_origin = INFINITY;
    for (double a : {1e-2, 5e-3, 2.5e-3}) {
        auto p = FluxProfile::linear(a);
        auto ch = thick_channels(1.0, 1.0, p);
        double amp = std::abs(amplitude_thick(ch, 1.0));
        double origin = std::abs(wavefunction_thick(ch, p, 0.0, 0.0));
        CHECK(amp < prev_amp);
        CHECK(origin < prev_origin);
        prev_amp = amp;
        prev_origin = origin;
    }
}

TEST_CASE("integrated probability difference shrinks")
{
    const auto& gl = numerics::gauss_legendre(24);
    const double R = 2.0;
    const int nphi = 24;
    auto flux = thin2d::flux_decompose(0.3);
    thin2d::PlaneKinematics2D kin{1.0, 0.0, 0.0};
    std::vector<double> vals;
    for (double a : {0.08, 0.04, 0.02, 0.01}) {
        auto p = FluxProfile::linear(a);
        auto ch = thick_channels(0.3, 1.0, p);
        double s = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            double r = 0.5 * R * (gl.nodes[i] + 1.0);
            if (r < a) continue;
            for (int j = 0; j < nphi; ++j) {
                double phi = 2 * pi * (j + 0.5) / nphi;
                double d = std::norm(wavefunction_thick(ch, p, r, phi)) -
                           std::norm(thin2d::wavefunction_thin(flux, kin, r, phi));
                s += 0.5 * R * gl.weights[i] * r * (2 * pi / nphi) * d;
            }
        }
        vals.push_back(std::abs(s));
    }
    for (std::size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] < vals[i - 1]);
}

TEST_CASE("angle grids exclude the forward direction")
{
    auto h = angle_grid(8);
    CHECK(h.size() == 8);
    CHECK(h.back() == doctest::Approx(pi));
    CHECK(h.front() > 0.0);
    auto f = angle_grid(8, true);
    CHECK(f.front() > 0.0);
    CHECK(f.back() < 2 * pi);
}
