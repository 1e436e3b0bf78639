#include "abflux/asymptotics.hpp"
#include "abflux/numerics.hpp"

#include <boost/math/special_functions/spherical_harmonic.hpp>

#include <algorithm>
#include <cmath>

namespace abflux::asymptotics {

namespace {

void check_regime(double k, double rho, const char* who)
{
    if (!(k > 0.0) || !(rho > 0.0)) throw DomainError(std::string(who) + ": k and rho must be positive");
    if (k * rho < min_krho)
        throw DomainError(std::string(who) + ": k rho below the asymptotic threshold 50");
}

Vec3 rotate_from_pole(SpherePoint kdir, double theta, double phi)
{
    // Inverse of Ry(-theta_k) Rz(-phi_k) applied to the local direction.
    Vec3 v = unit_vector(theta, phi);
    double ct = std::cos(kdir.theta), st = std::sin(kdir.theta);
    Vec3 w(ct * v.x() + st * v.z(), v.y(), -st * v.x() + ct * v.z());
    double cp = std::cos(kdir.phi), sp = std::sin(kdir.phi);
    return {cp * w.x() - sp * w.y(), sp * w.x() + cp * w.y(), w.z()};
}

} // namespace

cplx stationary_phase_2d(const CircleFn& f, double k, double rho, double phi_k)
{
    check_regime(k, rho, "stationary_phase_2d");
    double x = k * rho;
    return std::sqrt(2.0 * pi / x) *
           (std::polar(1.0, x - 0.25 * pi) * f(phi_k) + std::polar(1.0, -x + 0.25 * pi) * f(phi_k + pi));
}

cplx stationary_phase_3d(const SphereFn& f, double k, double r, SpherePoint kdir)
{
    check_regime(k, r, "stationary_phase_3d");
    double x = k * r;
    cplx fwd = f(kdir.theta, kdir.phi);
    cplx bwd = f(pi - kdir.theta, kdir.phi + pi);
    return 2.0 * pi / (I * x) * (std::polar(1.0, x) * fwd - std::polar(1.0, -x) * bwd);
}

cplx quadrature_2d(const CircleFn& f, double k, double rho, double phi_k)
{
    if (!(k > 0.0) || !(rho >= 0.0)) throw DomainError("quadrature_2d: need k > 0, rho >= 0");
    double x = k * rho;
    auto g = [&](double phi) { return std::polar(1.0, x * std::cos(phi - phi_k)) * f(phi); };
    int panels = std::max(16, static_cast<int>(std::ceil(16.0 * x)));
    cplx prev = numerics::integrate_panels(g, 0.0, 2.0 * pi, panels);
    for (int it = 0; it < 6; ++it) {
        panels *= 2;
        cplx cur = numerics::integrate_panels(g, 0.0, 2.0 * pi, panels);
        if (std::abs(cur - prev) <= 1e-12 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw NumericalError("quadrature_2d: panel doubling did not converge");
}

cplx quadrature_3d(const SphereFn& f, double k, double r, SpherePoint kdir, int nphi)
{
    if (!(k > 0.0) || !(r >= 0.0)) throw DomainError("quadrature_3d: need k > 0, r >= 0");
    if (nphi < 4) throw DomainError("quadrature_3d: nphi must be >= 4");
    double x = k * r;
    auto pass = [&](int panels, int np) {
        auto ring = [&](double t) {
            double th = std::acos(std::clamp(t, -1.0, 1.0));
            cplx s = 0.0;
            for (int j = 0; j < np; ++j) {
                double ph = 2.0 * pi * j / np;
                Angles a = angles_of(rotate_from_pole(kdir, th, ph));
                s += f(a.theta, a.phi);
            }
            return std::polar(1.0, x * t) * s * (2.0 * pi / np);
        };
        return numerics::integrate_panels(ring, -1.0, 1.0, panels);
    };
    int panels = std::max(8, static_cast<int>(std::ceil(4.0 * x / pi)));
    cplx prev = pass(panels, nphi);
    for (int it = 0; it < 5; ++it) {
        panels *= 2;
        nphi *= 2;
        cplx cur = pass(panels, nphi);
        if (std::abs(cur - prev) <= 1e-11 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw NumericalError("quadrature_3d: refinement did not converge");
}

namespace {

void sphere_rule(Basis& b, int ntheta, int nphi)
{
    const auto& rule = numerics::gauss_legendre(ntheta);
    for (int i = 0; i < ntheta; ++i) {
        double th = std::acos(rule.nodes[i]);
        for (int j = 0; j < nphi; ++j) {
            b.nodes.push_back({th, 2.0 * pi * j / nphi});
            b.weights.push_back(rule.weights[i] * 2.0 * pi / nphi);
        }
    }
}

} // namespace

Basis circle_basis(int nmax, int nquad)
{
    if (nmax < 0) throw DomainError("circle_basis: nmax must be >= 0");
    if (nquad <= 0) nquad = 2 * nmax + 8;
    Basis b;
    b.sphere = false;
    for (int n = -nmax; n <= nmax; ++n)
        b.elements.push_back([n](double, double phi) { return std::polar(1.0 / std::sqrt(2.0 * pi), n * phi); });
    for (int j = 0; j < nquad; ++j) {
        b.nodes.push_back({0.5 * pi, 2.0 * pi * j / nquad});
        b.weights.push_back(2.0 * pi / nquad);
    }
    return b;
}

Basis sphere_basis(int lmax, int ntheta, int nphi)
{
    if (lmax < 0) throw DomainError("sphere_basis: lmax must be >= 0");
    if (ntheta <= 0) ntheta = lmax + 4;
    if (nphi <= 0) nphi = 2 * lmax + 8;
    Basis b;
    for (int l = 0; l <= lmax; ++l)
        for (int m = -l; m <= l; ++m)
            b.elements.push_back([l, m](double th, double ph) {
                return cplx(boost::math::spherical_harmonic(l, m, th, ph));
            });
    sphere_rule(b, ntheta, nphi);
    return b;
}

Basis monopole_basis(monopole3d::PotentialKind kind, double mu, double Lmax, int ntheta, int nphi)
{
    double lmin = std::abs(mu);
    if (Lmax < lmin) throw DomainError("monopole_basis: Lmax below |mu|");
    int lm = static_cast<int>(std::ceil(Lmax + std::abs(mu)));
    if (ntheta <= 0) ntheta = lm + 6;
    if (nphi <= 0) nphi = 2 * lm + 8;
    Basis b;
    for (double L = lmin; L <= Lmax + 1e-9; L += 1.0)
        for (const auto& md : monopole3d::angular_modes(kind, mu, L)) {
            double norm = std::sqrt((2.0 * L + 1.0) / (4.0 * pi));
            double m = md.m;
            b.elements.push_back([=](double th, double ph) {
                return norm * monopole3d::harmonic(kind, L, m, mu, th, ph);
            });
        }
    sphere_rule(b, ntheta, nphi);
    return b;
}

double projector_defect(const Basis& b)
{
    std::size_t n = b.elements.size(), q = b.nodes.size();
    std::vector<std::vector<cplx>> vals(n, std::vector<cplx>(q));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < q; ++j) vals[i][j] = b.elements[i](b.nodes[j].theta, b.nodes[j].phi);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i; k < n; ++k) {
            cplx g = 0.0;
            for (std::size_t j = 0; j < q; ++j) g += b.weights[j] * std::conj(vals[i][j]) * vals[k][j];
            worst = std::max(worst, std::abs(g - (i == k ? 1.0 : 0.0)));
        }
    return worst;
}

std::vector<cplx> plane_wave_terms(const Basis& b, double k, double r, SpherePoint kdir,
                                   SpherePoint rdir)
{
    if (projector_defect(b) > 1e-6) throw NumericalError("plane_wave_terms: basis is not orthonormal");
    double x = k * r;
    check_regime(k, r, "plane_wave_terms");
    std::vector<cplx> out;
    if (!b.sphere) {
        double pre = std::sqrt(2.0 * pi / x);
        cplx ef = std::polar(1.0, x - 0.25 * pi), eb = std::polar(1.0, -x + 0.25 * pi);
        for (const auto& e : b.elements)
            out.push_back(pre * e(0.5 * pi, rdir.phi) *
                          (ef * std::conj(e(0.5 * pi, kdir.phi)) + eb * std::conj(e(0.5 * pi, kdir.phi + pi))));
        return out;
    }
    cplx pre = 2.0 * pi / (I * x);
    cplx ef = std::polar(1.0, x), eb = std::polar(1.0, -x);
    double at = pi - kdir.theta, ap = kdir.phi + pi;
    for (const auto& e : b.elements)
        out.push_back(pre * e(rdir.theta, rdir.phi) *
                      (ef * std::conj(e(kdir.theta, kdir.phi)) - eb * std::conj(e(at, ap))));
    return out;
}

cplx plane_wave_basis_expansion(const Basis& b, double k, double r, SpherePoint kdir,
                                SpherePoint rdir)
{
    auto terms = plane_wave_terms(b, k, r, kdir, rdir);
    cplx s = 0.0;
    for (std::size_t i = terms.size(); i-- > 0;) s += terms[i];
    return s;
}

} // namespace abflux::asymptotics
