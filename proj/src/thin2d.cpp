#include "abflux/thin2d.hpp"
#include "abflux/specfun.hpp"

#include <cmath>
#include <limits>

namespace abflux::thin2d {

FluxParameter flux_decompose(double mu)
{
    if (!std::isfinite(mu)) throw DomainError("flux_decompose: non-finite flux");
    double fl = std::floor(mu);
    double dmu = mu - fl;
    if (dmu >= 1.0) {
        fl += 1.0;
        dmu = 0.0;
    }
    return {mu, static_cast<long>(fl), dmu};
}

DeficiencyIndices deficiency_indices(double mu)
{
    if (!std::isfinite(mu)) throw DomainError("deficiency_indices: non-finite flux");
    DeficiencyIndices out{0, 0, {}};
    long c = static_cast<long>(std::floor(-mu));
    for (long m = c - 3; m <= c + 3; ++m)
        if (std::abs(m + mu) < 1.0) out.witnesses.push_back(m);
    out.nplus = out.nminus = static_cast<int>(out.witnesses.size());
    return out;
}

cplx AmplitudeSeries::sum() const
{
    // Accumulate from the outermost channels inward.
    cplx s = 0.0;
    for (int j = mmax; j >= 0; --j) {
        s += terms[mmax + j];
        if (j > 0) s += terms[mmax - j];
    }
    return s;
}

cplx channel_coefficient(long m, double mu, double krho)
{
    double nu = std::abs(m + mu);
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * std::polar(1.0, -0.5 * pi * nu) * specfun::bessel_j(nu, krho);
}

double channel_tail_bound(double mu, double krho, int mmax)
{
    double total = 0.0;
    for (double nu0 : {std::abs(mmax + 1 + mu), std::abs(-mmax - 1 + mu)}) {
        double q = 0.5 * krho / (nu0 + 1.0);
        if (q >= 1.0) return std::numeric_limits<double>::infinity();
        total += specfun::bessel_j_bound(nu0, krho) / (1.0 - q);
    }
    return total;
}

int choose_mmax(double mu, double krho, double tol)
{
    if (!(tol > 0.0)) throw DomainError("choose_mmax: tolerance must be positive");
    int m = std::max(4, static_cast<int>(std::abs(mu)));
    while (channel_tail_bound(mu, krho, m) > tol) {
        ++m;
        if (m > 10000000) throw NumericalError("choose_mmax: truncation failure");
    }
    return m;
}

AmplitudeSeries wavefunction_series(const FluxParameter& flux, const PlaneKinematics2D& kin,
                                    double rho, double phi, int mmax)
{
    if (mmax < 1) throw DomainError("wavefunction_thin: mmax must be >= 1");
    if (!(rho >= 0.0)) throw DomainError("wavefunction_thin: rho must be >= 0");
    if (!(kin.k > 0.0)) throw DomainError("wavefunction_thin: k must be positive");
    double x = kin.k * rho;
    double ang = phi - kin.delta;
    AmplitudeSeries s;
    s.mmax = mmax;
    s.terms.resize(2 * mmax + 1);
    for (long m = -mmax; m <= mmax; ++m)
        s.terms[m + mmax] = channel_coefficient(m, flux.mu, x) * std::polar(1.0, m * ang);
    s.tail_bound = channel_tail_bound(flux.mu, x, mmax);
    return s;
}

cplx wavefunction_thin(const FluxParameter& flux, const PlaneKinematics2D& kin, double rho,
                       double phi, int mmax, double tol)
{
    AmplitudeSeries s = wavefunction_series(flux, kin, rho, phi, mmax);
    if (!(s.tail_bound <= tol))
        throw NumericalError("wavefunction_thin: truncation failure, tail bound " +
                             std::to_string(s.tail_bound) + " above tolerance");
    return s.sum();
}

cplx wavefunction_thin(const FluxParameter& flux, const PlaneKinematics2D& kin, double rho,
                       double phi)
{
    return wavefunction_thin(flux, kin, rho, phi, choose_mmax(flux.mu, kin.k * rho, 1e-12), 1e-12);
}

namespace {

double forward_checked_half_sine(double dphi)
{
    if (!std::isfinite(dphi)) throw DomainError("amplitude: non-finite angle");
    double s = std::sin(0.5 * dphi);
    if (std::abs(s) < 1e-14) throw DomainError("amplitude: forward direction is excluded");
    return s;
}

} // namespace

cplx amplitude_thin(const FluxParameter& flux, double dphi)
{
    double s = forward_checked_half_sine(dphi);
    double sign = (flux.n % 2 == 0) ? 1.0 : -1.0;
    double mag = std::sin(flux.dmu * pi) / s;
    return sign * mag * std::polar(1.0, -(flux.n + 0.5) * dphi);
}

double cross_section_thin(const FluxParameter& flux, double dphi)
{
    double s = forward_checked_half_sine(dphi);
    double num = std::sin(flux.dmu * pi);
    return num * num / (s * s);
}

double gauge_identity_residual(int n, double x, double y)
{
    double rho2 = x * x + y * y;
    if (!(rho2 > 0.0)) throw DomainError("gauge_identity_residual: origin is excluded");
    double rho = std::sqrt(rho2);
    auto U = [n](double px, double py) {
        cplx z = cplx(px, -py) / std::hypot(px, py);
        return std::pow(z, n);
    };
    double h = 1e-3 * rho;
    cplx u0 = U(x, y);
    auto d5 = [&](double ex, double ey) {
        cplx num = -U(x + 2 * h * ex, y + 2 * h * ey) + 8.0 * U(x + h * ex, y + h * ey) -
                   8.0 * U(x - h * ex, y - h * ey) + U(x - 2 * h * ex, y - 2 * h * ey);
        return I * num / (12.0 * h) / u0;
    };
    cplx gx = d5(1, 0), gy = d5(0, 1);
    double ax = -n * y / rho2, ay = n * x / rho2;
    return std::sqrt(std::norm(ax - gx) + std::norm(ay - gy));
}

} // namespace abflux::thin2d
