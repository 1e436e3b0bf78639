#include "abflux/perturbation.hpp"
#include "abflux/numerics.hpp"
#include "abflux/specfun.hpp"
#include "abflux/thin2d.hpp"

#include <cmath>
#include <limits>

namespace abflux::perturbation {

namespace {

double checked_sin_half(double phi, const char* who)
{
    double s = std::sin(0.5 * phi);
    if (!std::isfinite(phi) || std::abs(s) < 1e-14)
        throw DomainError(std::string(who) + ": forward direction is excluded");
    return s;
}

cplx normalization(long m, long n)
{
    // e^{-i n pi/2} i^m
    return std::polar(1.0, 0.5 * pi * static_cast<double>(m - n));
}

template <class G>
cplx one_sided(const G& g, double h)
{
    return (-3.0 * g(0.0) + 4.0 * g(h) - g(2.0 * h)) / (2.0 * h);
}

} // namespace

double perturbative_amplitude_sq(double dmu, double phi)
{
    double s = checked_sin_half(phi, "perturbative_amplitude_sq");
    double t = s / std::cos(0.5 * phi);
    return pi * pi * dmu * dmu / (t * t);
}

double exact_small_amplitude_sq(double dmu, double phi)
{
    double s = checked_sin_half(phi, "exact_small_amplitude_sq");
    return pi * pi * dmu * dmu / (s * s);
}

cplx perturbative_partial_wave(const PerturbationChannel& ch)
{
    if (!(ch.krho > 0.0)) throw DomainError("perturbative_partial_wave: krho must be positive");
    long a = ch.m + ch.n;
    if (a == 0) return 0.0;
    double nu = static_cast<double>(std::labs(a));
    double J = specfun::bessel_j(nu, ch.krho);
    double dJ = specfun::bessel_j_order_derivative(nu, ch.krho);
    if (a > 0) return I * (0.5 * pi) * J - dJ;
    double sign = (a % 2 == 0) ? 1.0 : -1.0;
    return sign * (dJ - I * (0.5 * pi) * J);
}

cplx exact_expansion_partial_wave(const PerturbationChannel& ch, double h)
{
    if (!(ch.krho > 0.0)) throw DomainError("exact_expansion_partial_wave: krho must be positive");
    if (!(h > 0.0)) throw DomainError("exact_expansion_partial_wave: step must be positive");
    auto g = [&](double d) {
        return thin2d::channel_coefficient(ch.m, static_cast<double>(ch.n) - d, ch.krho);
    };
    cplx d1 = one_sided(g, h);
    cplx d2 = one_sided(g, 0.5 * h);
    if (std::abs(d1 - d2) > 1e-6 * std::max(1.0, std::abs(d2)))
        throw NumericalError("exact_expansion_partial_wave: Richardson check failed");
    return (4.0 * d2 - d1) / 3.0 / normalization(ch.m, ch.n);
}

cplx channel_sum(long n, double krho, double phi, int mmax, bool exact)
{
    if (mmax < 0) throw DomainError("channel_sum: mmax must be >= 0");
    cplx s = 0.0;
    for (long j = mmax; j >= -mmax; --j) {
        long m = j - n;
        PerturbationChannel ch{m, n, krho};
        cplx F = exact ? exact_expansion_partial_wave(ch) : perturbative_partial_wave(ch);
        s += normalization(m, n) * std::polar(1.0, static_cast<double>(m) * phi) * F;
    }
    return s;
}

cplx wavefunction_dmu_derivative(long n, double krho, double phi, double h)
{
    thin2d::PlaneKinematics2D kin{1.0, 0.0, 0.0};
    auto psi = [&](double d) {
        auto flux = thin2d::flux_decompose(static_cast<double>(n) - d);
        return thin2d::wavefunction_thin(flux, kin, krho, phi);
    };
    cplx d1 = one_sided(psi, h), d2 = one_sided(psi, 0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

std::vector<double> delta_source_limit(const std::function<double(double)>& g,
                                       const std::vector<double>& eps_list)
{
    std::vector<double> out;
    for (double eps : eps_list) {
        if (!(eps > 0.0) || eps >= 1.0) throw DomainError("delta_source_limit: eps must be in (0, 1)");
        auto inner = [&](double v) { return v <= 0.0 ? g(0.0) : g(std::pow(v, 1.0 / eps)); };
        auto outer = [&](double rho) { return eps * std::pow(rho, eps - 1.0) * g(rho); };
        double a = numerics::integrate_adaptive(inner, 0.0, 1.0, 1e-10);
        double b = numerics::integrate_adaptive(outer, 1.0, std::numeric_limits<double>::infinity(),
                                                1e-10);
        out.push_back(a + b);
    }
    return out;
}

} // namespace abflux::perturbation
