#include "abflux/specfun.hpp"

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include <algorithm>
#include <cmath>

namespace abflux::specfun {

namespace {

using namespace boost::math::policies;
using quiet_policy = policy<overflow_error<ignore_error>, underflow_error<ignore_error>,
                            denorm_error<ignore_error>>;

void check_finite(double nu, double x, const char* who)
{
    if (!std::isfinite(nu) || !std::isfinite(x))
        throw DomainError(std::string(who) + ": non-finite input");
}

bool is_integer(double v) { return v == std::round(v); }

// Twice a half-integer, or throw.
int twice(double v, const char* who)
{
    double t = 2.0 * v;
    double r = std::round(t);
    if (std::abs(t - r) > 1e-9)
        throw DomainError(std::string(who) + ": index is not integer or half-integer");
    return static_cast<int>(r);
}

double log_binomial(int n, int k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

} // namespace

double bessel_j(double nu, double x)
{
    check_finite(nu, x, "bessel_j");
    if (nu < -1.0) throw DomainError("bessel_j: order below -1");
    if (x < 0.0) throw DomainError("bessel_j: negative argument");
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0 || is_integer(nu)) return 0.0;
        throw DomainError("bessel_j: J_nu(0) is infinite for this order");
    }
    return boost::math::cyl_bessel_j(nu, x, quiet_policy());
}

double bessel_j_prime(double nu, double x)
{
    check_finite(nu, x, "bessel_j_prime");
    if (nu < -1.0) throw DomainError("bessel_j_prime: order below -1");
    if (x <= 0.0) throw DomainError("bessel_j_prime: argument must be positive");
    return boost::math::cyl_bessel_j_prime(nu, x, quiet_policy());
}

double bessel_n(double nu, double x)
{
    check_finite(nu, x, "bessel_n");
    if (nu < -1.0) throw DomainError("bessel_n: order below -1");
    if (x <= 0.0) throw DomainError("bessel_n: argument must be positive");
    return boost::math::cyl_neumann(nu, x, quiet_policy());
}

double bessel_n_prime(double nu, double x)
{
    check_finite(nu, x, "bessel_n_prime");
    if (nu < -1.0) throw DomainError("bessel_n_prime: order below -1");
    if (x <= 0.0) throw DomainError("bessel_n_prime: argument must be positive");
    return boost::math::cyl_neumann_prime(nu, x, quiet_policy());
}

cplx hankel_1(double nu, double x) { return {bessel_j(nu, x), bessel_n(nu, x)}; }

double bessel_j_order_derivative(double nu0, double x, double h)
{
    if (!(x > 0.0)) throw DomainError("bessel_j_order_derivative: argument must be positive");
    if (!(h > 0.0)) throw DomainError("bessel_j_order_derivative: step must be positive");
    return (bessel_j(nu0 + h, x) - bessel_j(nu0 - h, x)) / (2.0 * h);
}

double bessel_j_bound(double nu, double x)
{
    if (nu < 0.0 || x < 0.0) throw DomainError("bessel_j_bound: needs nu >= 0, x >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
}

double jacobi_p(int l, double alpha, double beta, double t)
{
    if (l < 0) throw DomainError("jacobi_p: negative degree");
    if (!std::isfinite(t) || std::abs(t) > 1.0 + 1e-14) throw DomainError("jacobi_p: |t| > 1");
    if (alpha <= -1.0 || beta <= -1.0) throw DomainError("jacobi_p: parameters must exceed -1");
    if (l == 0) return 1.0;
    double ab = alpha + beta;
    double p0 = 1.0;
    double p1 = (alpha + 1.0) + 0.5 * (ab + 2.0) * (t - 1.0);
    for (int n = 2; n <= l; ++n) {
        double c = 2.0 * n + ab;
        double a1 = 2.0 * n * (n + ab) * (c - 2.0);
        double a2 = (c - 1.0) * (c * (c - 2.0) * t + alpha * alpha - beta * beta);
        double a3 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * c;
        double p2 = (a2 * p1 - a3 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

bool valid_harmonic_index(double L, double m, double mu)
{
    auto nonneg_int = [](double v) { return v > -1e-9 && std::abs(v - std::round(v)) < 1e-9; };
    if (!std::isfinite(L) || !std::isfinite(m) || !std::isfinite(mu)) return false;
    double tl = 2.0 * L;
    if (std::abs(tl - std::round(tl)) > 1e-9) return false;
    return nonneg_int(L - std::abs(m)) && nonneg_int(L - std::abs(mu));
}

double wigner_d(double j, double mp, double m, double beta)
{
    if (!valid_harmonic_index(j, mp, m))
        throw DomainError("wigner_d: invalid index combination");
    int tj = twice(j, "wigner_d");
    int tm = twice(m, "wigner_d");
    int tmp = twice(mp, "wigner_d");
    int jpm = (tj + tm) / 2, jmm = (tj - tm) / 2, jpmp = (tj + tmp) / 2, jmmp = (tj - tmp) / 2;
    int k = std::min({jpm, jmm, jpmp, jmmp});
    int a = 0, lambda = 0;
    if (k == jpm) {
        a = (tmp - tm) / 2;
        lambda = a;
    } else if (k == jmm) {
        a = (tm - tmp) / 2;
    } else if (k == jpmp) {
        a = (tm - tmp) / 2;
    } else {
        a = (tmp - tm) / 2;
        lambda = a;
    }
    int b = tj - 2 * k - a;
    double lognorm = 0.5 * (log_binomial(tj - k, k + a) - log_binomial(k + b, b));
    double s = std::sin(0.5 * beta), c = std::cos(0.5 * beta);
    double val = std::exp(lognorm) * std::pow(s, a) * std::pow(c, b) *
                 jacobi_p(k, a, b, std::clamp(std::cos(beta), -1.0, 1.0));
    return (lambda % 2 == 0) ? val : -val;
}

cplx spherical_t(double L, double m, double mu, double phi, double theta, double psi)
{
    return std::exp(-I * (m * phi + mu * psi)) * wigner_d(L, m, mu, theta);
}

cplx monopole_harmonic(double L, double mprime, double mu, double theta, double phi)
{
    return spherical_t(L, mprime, mu, phi, theta, 0.0);
}

double kummer_phi(double alpha, double beta, double x)
{
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(x))
        throw DomainError("kummer_phi: non-finite input");
    if (beta <= 0.0 && is_integer(beta)) throw DomainError("kummer_phi: beta is a pole");
    if (x < 0.0) return std::exp(x) * kummer_phi(beta - alpha, beta, -x);
    double sum = 1.0, term = 1.0;
    int nsafe = static_cast<int>(std::abs(alpha) + std::abs(beta) + x) + 2;
    for (int n = 0; n < 100000; ++n) {
        term *= (alpha + n) / (beta + n) * x / (n + 1.0);
        sum += term;
        if (term == 0.0) return sum;
        if (n + 1 < nsafe) continue;
        double r = std::abs((alpha + n + 1) / (beta + n + 1) * x / (n + 2.0));
        if (r < 1.0 && std::abs(term) * r / (1.0 - r) <= 1e-17 * std::abs(sum)) return sum;
    }
    throw NumericalError("kummer_phi: series did not converge");
}

double gamma(double x) { return std::tgamma(x); }
double lgamma(double x) { return std::lgamma(x); }

} // namespace abflux::specfun
