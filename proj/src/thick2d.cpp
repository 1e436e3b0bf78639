#include "abflux/thick2d.hpp"
#include "abflux/numerics.hpp"
#include "abflux/specfun.hpp"

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace abflux::thick2d {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

namespace {

// Fritsch-Carlson monotone cubic through tabulated points.
struct MonotoneCubic {
    std::vector<double> x, y, d;

    MonotoneCubic(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys))
    {
        std::size_t n = x.size();
        std::vector<double> s(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) s[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        d.assign(n, 0.0);
        d[0] = s[0];
        d[n - 1] = s[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i)
            d[i] = (s[i - 1] * s[i] <= 0.0) ? 0.0 : 0.5 * (s[i - 1] + s[i]);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (s[i] == 0.0) {
                d[i] = d[i + 1] = 0.0;
                continue;
            }
            double al = d[i] / s[i], be = d[i + 1] / s[i];
            double r = al * al + be * be;
            if (r > 9.0) {
                double t = 3.0 / std::sqrt(r);
                d[i] = t * al * s[i];
                d[i + 1] = t * be * s[i];
            }
        }
    }

    std::size_t segment(double t) const
    {
        auto it = std::upper_bound(x.begin(), x.end(), t);
        std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
        return std::min(i, x.size() - 2);
    }

    double value(double t) const
    {
        std::size_t i = segment(t);
        double h = x[i + 1] - x[i], u = (t - x[i]) / h;
        double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
        double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
        return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
    }

    double deriv(double t) const
    {
        std::size_t i = segment(t);
        double h = x[i + 1] - x[i], u = (t - x[i]) / h;
        double d00 = 6 * u * u - 6 * u, d10 = 3 * u * u - 4 * u + 1;
        double d01 = -6 * u * u + 6 * u, d11 = 3 * u * u - 2 * u;
        return (d00 * y[i] + d01 * y[i + 1]) / h + d10 * d[i] + d11 * d[i + 1];
    }
};

double envelope(double nu, int absm, double z)
{
    double l = std::log(pi) + 2.0 * nu * std::log(0.5 * z) - std::log(absm + nu) -
               std::lgamma(nu) - std::lgamma(nu + 1.0);
    return std::exp(l);
}

} // namespace

FluxProfile FluxProfile::linear(double a)
{
    FluxProfile p;
    p.kind_ = ProfileKind::linear;
    p.name_ = "linear";
    p.g_ = [](double x) { return x; };
    p.dg_ = [](double) { return 1.0; };
    p.taylor_ = {1.0, 0.0, 0.0, 0.0};
    p.c_ = 1.0;
    p.c1_ = 1.0;
    return p.with_radius(a);
}

FluxProfile FluxProfile::quadratic(double a)
{
    FluxProfile p;
    p.kind_ = ProfileKind::quadratic;
    p.name_ = "quadratic";
    p.g_ = [](double x) { return x * x; };
    p.dg_ = [](double x) { return 2.0 * x; };
    p.taylor_ = {0.0, 1.0, 0.0, 0.0};
    p.c_ = 1.0;
    p.c1_ = 2.0;
    return p.with_radius(a);
}

FluxProfile FluxProfile::custom(double a, Shape g, Shape dg, std::string name)
{
    if (!g || !dg) throw DomainError("FluxProfile: shape and derivative are required");
    FluxProfile p;
    p.kind_ = ProfileKind::custom;
    p.name_ = std::move(name);
    p.g_ = std::move(g);
    p.dg_ = std::move(dg);
    double h = 1e-5;
    double d0 = p.dg_(0.0);
    p.taylor_ = {d0, 0.5 * (p.dg_(h) - d0) / h, 0.0, 0.0};
    p.measure_constants();
    return p.with_radius(a);
}

FluxProfile FluxProfile::tabulated(double a, std::vector<double> x, std::vector<double> g)
{
    if (x.size() != g.size() || x.size() < 2)
        throw DomainError("FluxProfile: tabulated profile needs >= 2 matching points");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i + 1] > x[i])) throw DomainError("FluxProfile: abscissae must increase strictly");
    if (x.front() != 0.0 || x.back() != 1.0)
        throw DomainError("FluxProfile: tabulated abscissae must run from 0 to 1");
    auto spline = std::make_shared<MonotoneCubic>(std::move(x), std::move(g));
    FluxProfile p;
    p.kind_ = ProfileKind::custom;
    p.name_ = "tabulated";
    p.g_ = [spline](double t) { return spline->value(t); };
    p.dg_ = [spline](double t) { return spline->deriv(t); };
    double h = spline->x[1], delta = (spline->y[1] - spline->y[0]) / h;
    double m0 = spline->d[0], m1 = spline->d[1];
    p.taylor_ = {m0, (3 * delta - 2 * m0 - m1) / h, (m0 + m1 - 2 * delta) / (h * h), 0.0};
    p.measure_constants();
    return p.with_radius(a);
}

void FluxProfile::measure_constants()
{
    if (std::abs(g_(0.0)) > 1e-12) throw DomainError("FluxProfile: g(0) must vanish");
    if (std::abs(g_(1.0) - 1.0) > 1e-9) throw DomainError("FluxProfile: g(1) must equal 1");
    double c = std::abs(taylor_[0]), c1 = 0.0;
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
        double x = static_cast<double>(i) / n;
        double gv = g_(x), dv = dg_(x);
        if (!std::isfinite(gv) || !std::isfinite(dv))
            throw DomainError("FluxProfile: shape is not finite on [0, 1]");
        if (i > 0) c = std::max(c, std::abs(gv / x));
        c1 = std::max(c1, std::abs(dv));
    }
    c_ = c;
    c1_ = c1;
}

FluxProfile FluxProfile::with_radius(double a) const
{
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("FluxProfile: radius must be positive");
    FluxProfile p = *this;
    p.a_ = a;
    return p;
}

double FluxProfile::shape(double x) const
{
    if (x <= 0.0) return 0.0;
    return x >= 1.0 ? 1.0 : g_(x);
}

double FluxProfile::shape_deriv(double x) const
{
    if (x < 0.0 || x >= 1.0) return 0.0;
    return dg_(x);
}

double FluxProfile::eval(double rho) const
{
    if (!(rho >= 0.0)) throw DomainError("FluxProfile: rho must be >= 0");
    return shape(rho / a_);
}

double FluxProfile::deriv(double rho) const
{
    if (!(rho >= 0.0)) throw DomainError("FluxProfile: rho must be >= 0");
    return shape_deriv(rho / a_) / a_;
}

namespace {

// Reduced equation in s = ln(rho/a): Ft'' + 2|m| Ft' = w Ft.
struct RadialSystem {
    const FluxProfile* p;
    int m;
    double mu, ka;

    double w(double x) const
    {
        double g = p->shape(x);
        return 2.0 * m * mu * g + mu * mu * g * g - ka * ka * x * x;
    }

    void operator()(const State& y, State& dy, double s) const
    {
        double x = std::exp(s);
        dy[0] = y[1];
        dy[1] = -2.0 * std::abs(m) * y[1] + w(x) * y[0];
    }
};

auto make_stepper(double tol)
{
    return odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
}

} // namespace

RadialSolution solve_radial(int m, double k, const FluxProfile& profile, double mu, double tol)
{
    if (!(tol > 0.0)) throw DomainError("solve_radial: tol must be positive");
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("solve_radial: k must be positive");
    if (!std::isfinite(mu)) throw DomainError("solve_radial: non-finite flux");
    RadialSolution sol;
    sol.m = m;
    sol.k = k;
    sol.a = profile.a();
    sol.mu = mu;
    sol.tol_ = tol;
    sol.profile_ = std::make_shared<const FluxProfile>(profile);

    double ka = k * sol.a;
    const auto& g = profile.taylor();
    std::array<double, 5> w{};
    w[1] = 2 * m * mu * g[0];
    w[2] = 2 * m * mu * g[1] + mu * mu * g[0] * g[0] - ka * ka;
    w[3] = 2 * m * mu * g[2] + 2 * mu * mu * g[0] * g[1];
    w[4] = 2 * m * mu * g[3] + mu * mu * (g[1] * g[1] + 2 * g[0] * g[2]);
    auto& c = sol.series_;
    c[0] = 1.0;
    for (int j = 1; j <= 4; ++j) {
        double acc = 0.0;
        for (int i = 1; i <= j; ++i) acc += w[i] * c[j - i];
        c[j] = acc / (j * (j + 2.0 * std::abs(m)));
    }

    double x0 = sol.x0_;
    State y{0.0, 0.0};
    for (int j = 4; j >= 0; --j) y[0] = y[0] * x0 + c[j];
    for (int j = 4; j >= 1; --j) y[1] = y[1] * x0 + j * c[j];
    y[1] *= x0;

    RadialSystem sys{sol.profile_.get(), m, mu, ka};
    double s0 = std::log(x0);
    double dt = 1e-3;
    try {
        odeint::integrate_adaptive(make_stepper(tol), sys, y, s0, 0.0, dt,
                                   [&](const State& st, double s) {
                                       sol.s_nodes_.push_back(s);
                                       sol.y_nodes_.push_back(st);
                                   });
    } catch (const std::exception& e) {
        throw NumericalError(std::string("solve_radial: integrator failure: ") + e.what());
    }
    if (sol.s_nodes_.empty() || std::abs(sol.s_nodes_.back()) > 1e-12)
        throw NumericalError("solve_radial: integration did not reach the boundary");
    for (const auto& st : sol.y_nodes_)
        if (!std::isfinite(st[0]) || !std::isfinite(st[1]))
            throw NumericalError("solve_radial: non-finite solution");
    return sol;
}

std::array<double, 2> RadialSolution::state_at(double x) const
{
    if (x < 0.0 || x > 1.0 + 1e-12) throw DomainError("RadialSolution: rho outside [0, a]");
    x = std::min(x, 1.0);
    if (x <= x0_) {
        double f = 0.0, gx = 0.0;
        for (int j = 4; j >= 0; --j) f = f * x + series_[j];
        for (int j = 4; j >= 1; --j) gx = gx * x + j * series_[j];
        return {f, gx * x};
    }
    double s = std::log(x);
    auto it = std::upper_bound(s_nodes_.begin(), s_nodes_.end(), s);
    std::size_t i = (it == s_nodes_.begin()) ? 0 : static_cast<std::size_t>(it - s_nodes_.begin()) - 1;
    State y = y_nodes_[i];
    double s_start = s_nodes_[i];
    if (s - s_start <= 0.0) return y;
    RadialSystem sys{profile_.get(), m, mu, k * a};
    odeint::integrate_adaptive(make_stepper(tol_), sys, y, s_start, s, (s - s_start) * 0.5);
    return y;
}

double RadialSolution::reduced(double rho) const { return state_at(rho / a)[0]; }

double RadialSolution::reduced_deriv(double rho) const
{
    double x = rho / a;
    if (x <= x0_) {
        double gx = 0.0;
        for (int j = 4; j >= 1; --j) gx = gx * x + j * series_[j];
        return (x == 0.0 ? series_[1] : gx) / a;
    }
    return state_at(x)[1] / (x * a);
}

std::array<double, 2> RadialSolution::values(double rho) const
{
    int am = std::abs(m);
    double ft = reduced(rho), dft = reduced_deriv(rho);
    double p = std::pow(rho, am);
    double dp = am == 0 ? 0.0 : am * std::pow(rho, am - 1);
    return {p * ft, dp * ft + p * dft};
}

double RadialSolution::log_derivative_at_a() const
{
    const State& y = y_nodes_.back();
    if (y[0] == 0.0) throw NumericalError("boundary_log_derivative: Ft(a) vanishes");
    return y[1] / y[0];
}

MatchCoefficients match_exterior(const RadialSolution& sol, double mu)
{
    double nu = std::abs(sol.m + mu);
    double z = sol.k * sol.a;
    auto fv = sol.values(sol.a);
    double F = fv[0], dF = fv[1];
    double J = specfun::bessel_j(nu, z), dJ = specfun::bessel_j_prime(nu, z);
    double N = specfun::bessel_n(nu, z), dN = specfun::bessel_n_prime(nu, z);
    double A = 0.5 * pi * sol.a * (F * sol.k * dN - dF * N);
    double B = 0.5 * pi * sol.a * (dF * J - F * sol.k * dJ);
    if (!(A != 0.0) || !std::isfinite(A)) throw NumericalError("match_exterior: degenerate matching");
    return {A, B, B / A};
}

double b_from_log_derivative(int m, double ka, double mu, double U)
{
    if (!(ka > 0.0)) throw DomainError("b_from_log_derivative: ka must be positive");
    double nu = std::abs(m + mu);
    double u = std::abs(m) + U;
    double J = specfun::bessel_j(nu, ka);
    if (J == 0.0) return 0.0;
    double dJ = specfun::bessel_j_prime(nu, ka);
    double N = specfun::bessel_n(nu, ka), dN = specfun::bessel_n_prime(nu, ka);
    double den = ka * dN - u * N;
    if (std::isinf(den)) return 0.0;
    if (den == 0.0 || !std::isfinite(den)) throw NumericalError("b_coefficient: degenerate matching");
    return (u * J - ka * dJ) / den;
}

double boundary_log_derivative(int m, double k, double a, const FluxProfile& profile, double mu)
{
    return solve_radial(m, k, profile.with_radius(a), mu).log_derivative_at_a();
}

double b_coefficient(int m, double k, double a, const FluxProfile& profile, double mu)
{
    return b_from_log_derivative(m, k * a, mu, boundary_log_derivative(m, k, a, profile, mu));
}

double q_factor(int m, double k, double a, const FluxProfile& profile, double mu)
{
    double nu = std::abs(m + mu);
    if (nu == 0.0) throw DomainError("q_factor: the m + mu = 0 channel has no power envelope");
    return b_coefficient(m, k, a, profile, mu) / envelope(nu, std::abs(m), k * a);
}

ThickChannels thick_channels(double mu, double k, const FluxProfile& profile, double tol, int mmax)
{
    if (!(tol > 0.0)) throw DomainError("thick_channels: tol must be positive");
    if (!(k > 0.0)) throw DomainError("thick_channels: k must be positive");
    double z = k * profile.a();
    long center = std::lround(-mu);
    double qb = 2.0 * (std::abs(mu) * (1.0 + profile.bound_c()) + 1.0 + z * z);
    auto tail = [&](int J) {
        double nu = J + 0.5;
        double r = 0.25 * z * z / (nu * (nu + 1.0));
        if (r >= 0.5) return std::numeric_limits<double>::infinity();
        int am = std::max(0, static_cast<int>(std::floor(nu - std::abs(mu))));
        return 2.0 * qb * envelope(nu, am, z) / (1.0 - r);
    };
    int J = 1;
    while (tail(J) > tol) {
        if (++J > mmax) throw NumericalError("thick_channels: truncation failure");
    }
    ThickChannels ch;
    ch.mu = mu;
    ch.k = k;
    ch.a = profile.a();
    ch.tail_bound = tail(J);
    for (long m = center - J; m <= center + J; ++m) ch.m.push_back(static_cast<int>(m));
    ch.b.assign(ch.m.size(), 0.0);
    numerics::parallel_for(ch.m.size(), [&](std::size_t i) {
        ch.b[i] = b_coefficient(ch.m[i], k, ch.a, profile, mu);
    });
    return ch;
}

namespace {

cplx correction(const ThickChannels& ch, double dphi)
{
    cplx s = 0.0;
    for (std::size_t i = ch.m.size(); i-- > 0;) {
        double b = ch.b[i];
        if (b == 0.0) continue;
        int m = ch.m[i];
        double nu = std::abs(m + ch.mu);
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        s += sign * b / (1.0 + I * b) * std::polar(1.0, m * dphi - nu * pi);
    }
    return -2.0 * I * s;
}

} // namespace

cplx amplitude_thick(const ThickChannels& ch, double dphi)
{
    return thin2d::amplitude_thin(thin2d::flux_decompose(ch.mu), dphi) + correction(ch, dphi);
}

cplx amplitude_thick(double mu, double k, const FluxProfile& profile, double dphi, int mmax)
{
    return amplitude_thick(thick_channels(mu, k, profile, 1e-14, mmax), dphi);
}

cplx wavefunction_thick(const ThickChannels& ch, const FluxProfile& profile, double rho, double phi,
                        double tol)
{
    if (!(rho >= 0.0)) throw DomainError("wavefunction_thick: rho must be >= 0");
    if (std::abs(profile.a() - ch.a) > 1e-14 * ch.a)
        throw DomainError("wavefunction_thick: profile radius differs from the channel set");
    double mu = ch.mu, k = ch.k, a = ch.a, z = k * a;
    long center = std::lround(-mu);
    int J = 1;
    for (;; ++J) {
        double nu = J + 0.5;
        double q = 0.25 * z * z / (nu + 1.0);
        if (q < 0.5 && 4.0 * specfun::bessel_j_bound(nu, z) / (1.0 - q) < tol) break;
        if (J > 100000) throw NumericalError("wavefunction_thick: truncation failure");
    }
    std::vector<int> ms;
    for (long m = center - J; m <= center + J; ++m) ms.push_back(static_cast<int>(m));
    std::vector<cplx> terms(ms.size());
    bool inside = rho < a;
    numerics::parallel_for(ms.size(), [&](std::size_t i) {
        int m = ms[i];
        double nu = std::abs(m + mu);
        cplx c = ((m % 2 == 0) ? 1.0 : -1.0) * std::polar(1.0, m * phi - 0.5 * nu * pi);
        if (inside) {
            RadialSolution sol = solve_radial(m, k, profile, mu);
            double U = sol.log_derivative_at_a();
            double b = b_from_log_derivative(m, z, mu, U);
            double u = std::abs(m) + U;
            double den = 0.5 * pi * (z * specfun::bessel_n_prime(nu, z) - u * specfun::bessel_n(nu, z));
            double ratio = std::pow(rho / a, std::abs(m)) * sol.reduced(rho) / sol.reduced(a);
            terms[i] = std::isinf(den) ? cplx(0.0) : c * ratio / den / (1.0 + I * b);
            return;
        }
        double b = 0.0;
        auto it = std::find(ch.m.begin(), ch.m.end(), m);
        if (it != ch.m.end())
            b = ch.b[static_cast<std::size_t>(it - ch.m.begin())];
        else
            b = b_coefficient(m, k, a, profile, mu);
        if (b == 0.0) return;
        double x = k * rho;
        cplx extra = b * (specfun::bessel_n(nu, x) - I * specfun::bessel_j(nu, x)) / (1.0 + I * b);
        if (!std::isfinite(extra.real()) || !std::isfinite(extra.imag()))
            throw NumericalError("wavefunction_thick: exterior channel overflow");
        terms[i] = c * extra;
    });
    cplx s = 0.0;
    for (std::size_t i = terms.size(); i-- > 0;) s += terms[i];
    if (inside) return s;
    thin2d::PlaneKinematics2D kin{k, 0.0, 0.0};
    auto flux = thin2d::flux_decompose(mu);
    int mm = thin2d::choose_mmax(mu, k * rho, tol);
    return thin2d::wavefunction_thin(flux, kin, rho, phi, mm, tol) + s;
}

cplx wavefunction_thick(double mu, double k, const FluxProfile& profile, double rho, double phi,
                        int mmax)
{
    return wavefunction_thick(thick_channels(mu, k, profile, 1e-14, mmax), profile, rho, phi, 1e-10);
}

IterationResult integral_iteration(int m, double k, double a, const FluxProfile& profile, double mu,
                                   double x, int nmax)
{
    if (!(a > 0.0) || !(k > 0.0)) throw DomainError("integral_iteration: a and k must be positive");
    if (!(x >= 0.0) || x > a * (1.0 + 1e-12)) throw DomainError("integral_iteration: x outside [0, a]");
    if (nmax < 1) throw DomainError("integral_iteration: nmax must be >= 1");
    FluxProfile p = profile.with_radius(a);
    double X = std::min(x / a, 1.0);
    double ka = k * a, C = p.bound_c();
    int am = std::abs(m);
    double c2 = am == 0 ? 0.25 * (mu * mu * C * C + ka * ka)
                        : std::abs(mu) * C + (mu * mu * C * C + ka * ka) / (2.0 * am);
    IterationResult res{1.0, 0, c2, {1.0}};
    if (X == 0.0) return res;

    auto kernel = [&](double xi, double y) {
        double g = p.shape(y);
        double w = 2.0 * m * mu * g + mu * mu * g * g - ka * ka * y * y;
        if (am == 0) return std::log(xi / y) * w / y;
        return (1.0 - std::pow(y / xi, 2 * am)) * w / (2.0 * am * y);
    };

    const int N = 48;
    const auto& rule = numerics::gauss_legendre(64);
    Eigen::VectorXd nodes(N), bw(N);
    for (int j = 0; j < N; ++j) {
        nodes(j) = 0.5 * X * (1.0 - std::cos(pi * j / (N - 1)));
        bw(j) = ((j % 2 == 0) ? 1.0 : -1.0) * ((j == 0 || j == N - 1) ? 0.5 : 1.0);
    }
    auto interp_row = [&](double t) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(N);
        for (int j = 0; j < N; ++j)
            if (t == nodes(j)) {
                row(j) = 1.0;
                return row;
            }
        double tot = 0.0;
        for (int j = 0; j < N; ++j) {
            row(j) = bw(j) / (t - nodes(j));
            tot += row(j);
        }
        return Eigen::RowVectorXd(row / tot);
    };
    // y = xi t^4 keeps the logarithmic and power endpoints smooth.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
    for (int i = 1; i < N; ++i) {
        double xi = nodes(i);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            double t = 0.5 * (rule.nodes[q] + 1.0);
            double y = xi * t * t * t * t;
            double jac = 0.5 * rule.weights[q] * 4.0 * xi * t * t * t;
            M.row(i) += jac * kernel(xi, y) * interp_row(y);
        }
    }

    Eigen::VectorXd Y = Eigen::VectorXd::Ones(N), total = Y;
    double fact = 1.0;
    for (int n = 1; n <= nmax; ++n) {
        Y = M * Y;
        fact *= n;
        double sup = Y.cwiseAbs().maxCoeff();
        res.term_norms.push_back(sup);
        for (int i = 0; i < N; ++i) {
            double bound = std::pow(c2 * nodes(i), n) / fact;
            if (std::abs(Y(i)) > bound * (1.0 + 1e-6) + 1e-13)
                throw NumericalError("integral_iteration: iterate exceeds the factorial bound");
        }
        total += Y;
        res.iterations = n;
        if (sup <= 1e-17 * total.cwiseAbs().maxCoeff()) break;
    }
    res.value = total(N - 1);
    return res;
}

std::vector<double> angle_grid(int n, bool full)
{
    if (n < 1) throw DomainError("angle_grid: need at least one angle");
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = full ? 2.0 * pi * (j + 1) / (n + 1) : pi * (j + 1) / n;
    return out;
}

ConvergenceReport amplitude_convergence(double mu, double k, const FluxProfile& shape, double a0,
                                        int nradii, int nangles)
{
    if (nradii < 2) throw DomainError("amplitude_convergence: need >= 2 radii");
    if (!(a0 > 0.0)) throw DomainError("amplitude_convergence: a0 must be positive");
    auto grid = angle_grid(nangles, true);
    ConvergenceReport rep;
    for (int j = 0; j < nradii; ++j) {
        double a = a0 * std::ldexp(1.0, -j);
        ThickChannels ch = thick_channels(mu, k, shape.with_radius(a), 1e-14);
        double err = 0.0;
        for (double d : grid) err = std::max(err, std::abs(correction(ch, d)));
        rep.radii.push_back(a);
        rep.errors.push_back(err);
    }
    rep.exponent = numerics::fit_loglog(rep.radii, rep.errors).slope;
    return rep;
}

} // namespace abflux::thick2d
