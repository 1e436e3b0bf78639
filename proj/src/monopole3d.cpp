#include "abflux/monopole3d.hpp"
#include "abflux/specfun.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace abflux::monopole3d {

namespace {

bool near_integer(double v, double eps = 1e-12) { return std::abs(v - std::round(v)) <= eps; }

Mat3 rot_z(double g)
{
    Mat3 R;
    R << std::cos(g), -std::sin(g), 0, std::sin(g), std::cos(g), 0, 0, 0, 1;
    return R;
}

Mat3 rot_y(double b)
{
    Mat3 R;
    R << std::cos(b), 0, std::sin(b), 0, 1, 0, -std::sin(b), 0, std::cos(b);
    return R;
}

void require_quantized(const StringPotential& p, const char* who)
{
    if (!is_quantized(p)) {
        std::string what = p.kind == PotentialKind::schwinger ? "mu1" : "2 mu";
        throw DomainError(std::string(who) + ": " + what +
                          " is not an integer; the non-quantized case Delta mu1 != 0 is excluded");
    }
}

// Azimuthal labels m of the harmonics at total index L.
std::vector<double> labels(PotentialKind kind, double mu, double L)
{
    std::vector<double> out;
    int n = static_cast<int>(std::lround(2.0 * L)) + 1;
    for (int i = 0; i < n; ++i) {
        double mp = -L + i;
        out.push_back(kind == PotentialKind::schwinger ? mp : mp + mu);
    }
    return out;
}

cplx harmonic_unchecked(PotentialKind kind, double L, double m, double mu, double theta, double phi)
{
    double d = kind == PotentialKind::schwinger ? specfun::wigner_d(L, m, mu, theta)
                                                : specfun::wigner_d(L, m - mu, mu, theta);
    return std::polar(d, -m * phi);
}

double half_omega_prime(double theta_k, double alpha, double theta, double phi)
{
    double num = std::sin(0.5 * theta_k) * std::cos(0.5 * theta) * std::sin(phi - alpha);
    double den = std::sin(0.5 * theta_k) * std::cos(0.5 * theta) * std::cos(phi - alpha) -
                 std::cos(0.5 * theta_k) * std::sin(0.5 * theta);
    return std::atan2(-num, -den);
}

double stable_delta(double mu, double L)
{
    double h = L + 0.5;
    double disc = h * h - mu * mu;
    if (disc < 0.0) throw DomainError("phase shift: imaginary index, fall to center");
    return 0.5 * pi * mu * mu / (h + std::sqrt(disc));
}

double free_order(double mu, double L)
{
    double h = L + 0.5;
    double disc = h * h - mu * mu;
    if (disc < 0.0) throw DomainError("radial factor: imaginary index, fall to center");
    return std::sqrt(disc); // nu + 1/2
}

// Directions within rounding of the z axis get azimuth 0.
Angles pole_snapped(const Vec3& v)
{
    if (std::hypot(v.x(), v.y()) < 1e-12 * v.norm()) return {v.z() > 0 ? 0.0 : pi, 0.0};
    return angles_of(v);
}

} // namespace

Mat3 euler_zyz(double a, double b, double c) { return rot_z(a) * rot_y(b) * rot_z(c); }

Mat3 rotation_to_z(const Vec3& n)
{
    Angles an = pole_snapped(n);
    return rot_y(-an.theta) * rot_z(-an.phi);
}

StringPotential StringPotential::from_euler(PotentialKind kind, double mu, double theta_k,
                                            double phi_k, double alpha)
{
    Vec3 n = euler_zyz(0.5 * pi - phi_k, theta_k, alpha + 0.5 * pi) * Vec3(0, 0, 1);
    return {kind, mu, n.normalized()};
}

bool is_quantized(const StringPotential& p)
{
    return p.kind == PotentialKind::schwinger ? near_integer(p.mu) : near_integer(2.0 * p.mu);
}

Vec3 potential_eval(const StringPotential& p, const Vec3& r)
{
    double rn = r.norm();
    if (!(rn > 0.0)) throw DomainError("potential_eval: origin is singular");
    Vec3 n = p.string_dir.normalized();
    double nr = n.dot(r);
    Vec3 cr = n.cross(r);
    if (p.kind == PotentialKind::schwinger) {
        double perp2 = cr.squaredNorm();
        if (perp2 <= 1e-24 * rn * rn) throw DomainError("potential_eval: point on a string line");
        return p.mu * cr * nr / (rn * perp2);
    }
    double den = rn * (rn - nr);
    if (den <= 1e-12 * rn * rn) throw DomainError("potential_eval: point on the string line");
    return p.mu * cr / den;
}

double angular_eigenvalue(int l, double alpha, double beta)
{
    if (l < 0) throw DomainError("angular_eigenvalue: l must be >= 0");
    double L = l + 0.5 * (alpha + beta);
    return L * (L + 1.0);
}

std::vector<AngularMode> angular_modes(PotentialKind kind, double mu, double L)
{
    StringPotential p{kind, mu, Vec3(0, 0, 1)};
    require_quantized(p, "angular_modes");
    std::vector<AngularMode> out;
    for (double m = std::floor(-L - 3.0 - std::abs(mu)); m <= L + 3.0 + std::abs(mu); m += 1.0) {
        double a = kind == PotentialKind::schwinger ? std::abs(mu - m) : std::abs(2.0 * mu - m);
        double b = kind == PotentialKind::schwinger ? std::abs(m + mu) : std::abs(m);
        double l = L - 0.5 * (a + b);
        if (l < -1e-9 || !near_integer(l, 1e-9)) continue;
        int li = static_cast<int>(std::lround(l));
        double mp = kind == PotentialKind::schwinger ? m : m - mu;
        out.push_back({L, m, mp, li, a, b, angular_eigenvalue(li, a, b)});
    }
    return out;
}

double angular_function(int l, double alpha, double beta, double theta)
{
    return std::pow(std::sin(0.5 * theta), alpha) * std::pow(std::cos(0.5 * theta), beta) *
           specfun::jacobi_p(l, alpha, beta, std::cos(theta));
}

std::vector<AngularMode> lowest_modes(PotentialKind kind, double mu)
{
    double flux = kind == PotentialKind::schwinger ? mu : 2.0 * mu;
    double n = std::floor(flux);
    std::vector<AngularMode> out;
    for (double m : {n, n + 1.0}) {
        double a = std::abs(flux - m);
        double b = kind == PotentialKind::schwinger ? std::abs(m + mu) : std::abs(m);
        double L = 0.5 * (a + b);
        double mp = kind == PotentialKind::schwinger ? m : m - mu;
        out.push_back({L, m, mp, 0, a, b, angular_eigenvalue(0, a, b)});
    }
    return out;
}

std::vector<SpectrumEntry> spectrum(double mu1, double Lmax)
{
    if (!std::isfinite(mu1) || !std::isfinite(Lmax)) throw DomainError("spectrum: non-finite input");
    if (!near_integer(mu1))
        throw DomainError("spectrum: mu1 is not an integer; the non-quantized case Delta mu1 != 0 "
                          "is excluded");
    std::vector<SpectrumEntry> out;
    for (double L = std::abs(std::round(mu1)); L <= Lmax + 1e-12; L += 1.0) {
        auto modes = angular_modes(PotentialKind::schwinger, std::round(mu1), L);
        double lam = L * (L + 1.0);
        for (const auto& md : modes)
            if (md.lambda != lam) throw NumericalError("spectrum: eigenvalue mismatch");
        out.push_back({L, lam, static_cast<int>(modes.size())});
    }
    return out;
}

cplx harmonic(PotentialKind kind, double L, double m, double mu, double theta, double phi)
{
    double mp = kind == PotentialKind::schwinger ? m : m - mu;
    if (!specfun::valid_harmonic_index(L, mp, mu)) throw DomainError("harmonic: invalid index");
    return harmonic_unchecked(kind, L, m, mu, theta, phi);
}

double PhaseShiftSet::delta(double L) const
{
    double idx = L - Lmin;
    if (!near_integer(idx, 1e-9) || idx < -0.5 || idx > deltas.size() - 0.5)
        throw DomainError("PhaseShiftSet: no phase shift for this L");
    return deltas[static_cast<std::size_t>(std::lround(idx))];
}

PhaseShiftSet phase_shifts_free(double mu, double k, double Lmax)
{
    if (!(k > 0.0)) throw DomainError("phase_shifts_free: k must be positive");
    PhaseShiftSet s;
    s.mu = mu;
    s.Lmin = std::abs(mu);
    s.source = ShiftSource::free_analytic;
    for (double L = s.Lmin; L <= Lmax + 1e-12; L += 1.0) s.deltas.push_back(stable_delta(mu, L));
    if (s.deltas.empty()) throw DomainError("phase_shifts_free: Lmax below |mu|");
    return s;
}

PhaseShiftSet phase_shifts_user(double mu, double Lmin, std::vector<double> deltas)
{
    if (deltas.empty()) throw DomainError("phase_shifts_user: empty set");
    if (Lmin < std::abs(mu) - 1e-12 || !near_integer(Lmin - std::abs(mu), 1e-9))
        throw DomainError("phase_shifts_user: Lmin must be |mu| plus an integer");
    for (double d : deltas)
        if (!std::isfinite(d)) throw DomainError("phase_shifts_user: non-finite phase shift");
    return {mu, Lmin, std::move(deltas), ShiftSource::user_supplied};
}

double phase_shift_numerical(double mu, double L)
{
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 2>;
    double q = L * (L + 1.0) - mu * mu;
    if (q < -0.25) throw DomainError("phase_shift_numerical: fall to center");
    double nu = -0.5 + std::sqrt(0.25 + q);
    double x0 = 1e-2;
    State y{std::pow(x0, nu + 1) * (1 - x0 * x0 / (2 * (2 * nu + 3))),
            (nu + 1) * std::pow(x0, nu) - (nu + 3) * std::pow(x0, nu + 2) / (2 * (2 * nu + 3))};
    auto sys = [q](const State& u, State& du, double x) {
        du[0] = u[1];
        du[1] = (q / (x * x) - 1.0) * u[0];
    };
    auto stepper = odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_fehlberg78<State>());
    auto phase_at = [&](const State& u, double x) {
        double o = L + 0.5;
        double c = std::sqrt(0.5 * pi * x);
        double dc = 0.25 * std::sqrt(2.0 * pi / x);
        double j = c * specfun::bessel_j(o, x), dj = dc * specfun::bessel_j(o, x) + c * specfun::bessel_j_prime(o, x);
        double n = c * specfun::bessel_n(o, x), dn = dc * specfun::bessel_n(o, x) + c * specfun::bessel_n_prime(o, x);
        double d = std::atan2(u[0] * dj - u[1] * j, u[0] * dn - u[1] * n);
        if (d > 0.5 * pi) d -= pi;
        if (d <= -0.5 * pi) d += pi;
        return d;
    };
    const double x1 = 1000.0, x2 = 2000.0;
    odeint::integrate_adaptive(stepper, sys, y, x0, x1, 1e-3);
    double d1 = phase_at(y, x1);
    odeint::integrate_adaptive(stepper, sys, y, x1, x2, 1e-2);
    double d2 = phase_at(y, x2);
    return 2.0 * d2 - d1;
}

double radial_factor(const PhaseShiftSet& shifts, double L, double kr)
{
    if (!(kr >= 0.0)) throw DomainError("radial_factor: kr must be >= 0");
    if (shifts.source == ShiftSource::user_supplied) {
        if (kr == 0.0) throw DomainError("radial_factor: asymptotic form needs kr > 0");
        return std::sin(kr - 0.5 * pi * L + shifts.delta(L)) / kr;
    }
    double o = free_order(shifts.mu, L);
    if (kr == 0.0) return std::abs(o - 0.5) < 1e-15 ? 1.0 : 0.0;
    return std::sqrt(0.5 * pi / kr) * specfun::bessel_j(o, kr);
}

namespace {

struct Frame {
    double theta, phi;        // observation point in the string frame
    double theta_mk, phi_mk;  // direction -k in the string frame
};

Frame string_frame(const StringPotential& p, const Incidence& inc, double theta, double phi)
{
    Mat3 R = rotation_to_z(p.string_dir);
    Vec3 rs = R * unit_vector(theta, phi);
    Vec3 mk = -(R * unit_vector(inc.theta_k, inc.phi_k));
    Angles a = pole_snapped(rs), b = pole_snapped(mk);
    return {a.theta, a.phi, b.theta, b.phi};
}

// Sum over m of conj(U_m(-k)) U_m(r).
cplx addition_sum(PotentialKind kind, double mu, double L, const Frame& f)
{
    cplx s = 0.0;
    for (double m : labels(kind, mu, L))
        s += std::conj(harmonic_unchecked(kind, L, m, mu, f.theta_mk, f.phi_mk)) *
             harmonic_unchecked(kind, L, m, mu, f.theta, f.phi);
    return s;
}

void check_shifts(const StringPotential& p, const PhaseShiftSet& s, double Lmax, const char* who)
{
    if (std::abs(s.mu - p.mu) > 1e-12)
        throw DomainError(std::string(who) + ": phase shifts belong to a different flux");
    if (Lmax > s.Lmax() + 1e-9)
        throw DomainError(std::string(who) + ": Lmax exceeds the phase-shift table");
}

double free_tail_bound(double mu, double kr, double Lmax)
{
    double total = 0.0;
    double prev = -1.0;
    for (double L = Lmax + 1.0;; L += 1.0) {
        double o = free_order(mu, L);
        double t = (2 * L + 1) * std::sqrt(0.5 * pi / std::max(kr, 1e-300)) *
                   specfun::bessel_j_bound(o, kr);
        if (kr == 0.0) t = 0.0;
        if (prev > 0.0) {
            double ratio = t / prev;
            if (ratio < 0.5) return total + t / (1.0 - ratio);
        }
        total += t;
        prev = t;
        if (t == 0.0) return total;
        if (L > Lmax + 100000) return std::numeric_limits<double>::infinity();
    }
}

} // namespace

cplx wavefunction_monopole(const StringPotential& p, const PhaseShiftSet& shifts,
                           const Incidence& inc, double r, double theta, double phi, double Lmax,
                           double tol)
{
    require_quantized(p, "wavefunction_monopole");
    check_shifts(p, shifts, Lmax, "wavefunction_monopole");
    if (!(r >= 0.0) || !(inc.k > 0.0)) throw DomainError("wavefunction_monopole: need r >= 0, k > 0");
    double kr = inc.k * r;
    if (shifts.source == ShiftSource::free_analytic) {
        double tail = free_tail_bound(p.mu, kr, Lmax);
        if (!(tail <= tol))
            throw NumericalError("wavefunction_monopole: truncation failure, raise Lmax");
    }
    Frame f = string_frame(p, inc, theta, phi);
    cplx s = 0.0;
    for (double L = shifts.Lmin; L <= Lmax + 1e-9; L += 1.0) {
        double R = radial_factor(shifts, L, kr);
        if (R == 0.0) continue;
        s += std::polar((2 * L + 1) * R, shifts.delta(L) - 0.5 * pi * L) *
             addition_sum(p.kind, p.mu, L, f);
    }
    return s;
}

cplx wavefunction_closed(const PhaseShiftSet& shifts, const Incidence& inc, double r,
                         double theta, double phi, double Lmax)
{
    StringPotential p{PotentialKind::schwinger, shifts.mu, Vec3(0, 0, 1)};
    require_quantized(p, "wavefunction_closed");
    double c = unit_vector(theta, phi).dot(unit_vector(inc.theta_k, inc.phi_k));
    double tkr = std::acos(std::clamp(c, -1.0, 1.0));
    double mu = shifts.mu, kr = inc.k * r;
    cplx s = 0.0;
    for (double L = shifts.Lmin; L <= Lmax + 1e-9; L += 1.0)
        s += std::polar((2 * L + 1) * specfun::wigner_d(L, -mu, mu, tkr) * radial_factor(shifts, L, kr),
                        0.5 * pi * L + shifts.delta(L));
    double om = omega_phase(OmegaKind::omega1, inc.theta_k, 0.0, theta, phi, inc.phi_k);
    return std::polar(1.0, mu * om) * s;
}

namespace {

void check_scattering_angle(const Incidence& inc, double theta, double phi)
{
    double c = unit_vector(theta, phi).dot(unit_vector(inc.theta_k, inc.phi_k));
    if (std::abs(std::abs(c) - 1.0) < 1e-14)
        throw DomainError("amplitude: forward and backward directions are excluded");
}

} // namespace

cplx amplitude_monopole(const StringPotential& p, const PhaseShiftSet& shifts,
                        const Incidence& inc, double theta, double phi, double Lmax)
{
    check_shifts(p, shifts, Lmax, "amplitude_monopole");
    require_quantized(p, "amplitude_monopole");
    check_scattering_angle(inc, theta, phi);
    Frame f = string_frame(p, inc, theta, phi);
    cplx s = 0.0;
    for (double L = shifts.Lmin; L <= Lmax + 1e-9; L += 1.0) {
        cplx sl = std::polar(1.0, 2.0 * shifts.delta(L)) - 1.0;
        s += (2 * L + 1) * sl * std::polar(1.0, -pi * L) * addition_sum(p.kind, p.mu, L, f);
    }
    return s / (2.0 * I * inc.k);
}

cplx amplitude_closed(const StringPotential& p, const PhaseShiftSet& shifts,
                      const Incidence& inc, double theta, double phi, double Lmax)
{
    check_shifts(p, shifts, Lmax, "amplitude_closed");
    require_quantized(p, "amplitude_closed");
    check_scattering_angle(inc, theta, phi);
    Mat3 K = rotation_to_z(unit_vector(inc.theta_k, inc.phi_k));
    Angles ro = angles_of(K * unit_vector(theta, phi));
    Angles no = angles_of(K * p.string_dir.normalized());
    double mu = p.mu;
    cplx s = 0.0;
    for (double L = shifts.Lmin; L <= Lmax + 1e-9; L += 1.0)
        s += (2 * L + 1) * specfun::wigner_d(L, -mu, mu, ro.theta) *
             (std::polar(1.0, 2.0 * shifts.delta(L)) - 1.0);
    Vec3 nk = K * p.string_dir.normalized();
    // Strings along +-k: the series puts the pole at azimuth 0 and the Omega terms drop.
    bool on_axis = std::hypot(nk.x(), nk.y()) < 1e-12;
    bool anti = on_axis && nk.z() < 0.0;
    // Antiparallel strings inherit the azimuth offset between the string and incidence frames.
    double d = anti ? pole_snapped(p.string_dir).phi - pole_snapped(unit_vector(inc.theta_k, inc.phi_k)).phi : 0.0;
    double phase;
    if (p.kind == PotentialKind::schwinger) {
        phase = mu * ro.phi + (anti ? mu * d : mu * pi);
        if (!on_axis)
            phase += mu * (omega_phase(OmegaKind::omega, no.theta, no.phi, ro.theta, ro.phi) - no.phi);
    } else if (anti) {
        phase = mu * pi + 2.0 * mu * (ro.phi + d);
    } else {
        phase = -mu * pi;
        if (!on_axis)
            phase += mu * omega_phase(OmegaKind::omega_prime, no.theta, no.phi, ro.theta, ro.phi);
    }
    return std::polar(1.0, phase) * s / (2.0 * I * inc.k);
}

double omega_phase(OmegaKind kind, double theta_k, double alpha, double theta, double phi,
                   double phi_k)
{
    switch (kind) {
    case OmegaKind::omega1: {
        double d = wrap_angle(phi - phi_k);
        double y = std::sin(0.5 * (theta + theta_k)) * std::sin(0.5 * d);
        double x = std::sin(0.5 * (theta - theta_k)) * std::cos(0.5 * d);
        if (x == 0.0 && y == 0.0) throw DomainError("omega_phase: point on the string");
        return 2.0 * std::atan2(y, x);
    }
    case OmegaKind::omega: {
        if (std::sin(theta_k) == 0.0) return 0.0;
        double y = std::sin(theta_k) * std::sin(phi - alpha);
        double x = std::sin(theta_k) * std::cos(theta) * std::cos(phi - alpha) -
                   std::sin(theta) * std::cos(theta_k);
        if (x == 0.0 && y == 0.0) throw DomainError("omega_phase: point on the string");
        return std::atan2(-y, -x);
    }
    case OmegaKind::omega_prime:
        return 2.0 * half_omega_prime(theta_k, alpha, theta, phi);
    }
    throw DomainError("omega_phase: unknown kind");
}

double omega_winding(OmegaKind kind, double theta_k, double alpha, const Vec3& center,
                     const Vec3& axis, double radius, int steps)
{
    if (steps < 8) throw DomainError("omega_winding: need at least 8 steps");
    Vec3 ax = axis.normalized();
    Vec3 e1 = ax.unitOrthogonal();
    Vec3 e2 = ax.cross(e1);
    auto value = [&](int j) {
        double t = 2.0 * pi * j / steps;
        Angles a = angles_of(center + radius * (std::cos(t) * e1 + std::sin(t) * e2));
        if (kind == OmegaKind::omega_prime) return half_omega_prime(theta_k, alpha, a.theta, a.phi);
        return omega_phase(kind, theta_k, alpha, a.theta, a.phi);
    };
    double total = 0.0, prev = value(0);
    for (int j = 1; j <= steps; ++j) {
        double v = value(j);
        total += wrap_angle(v - prev);
        prev = v;
    }
    return kind == OmegaKind::omega_prime ? 2.0 * total : total;
}

std::string to_string(GaugePair pair)
{
    switch (pair) {
    case GaugePair::schwinger_rotation: return "schwinger_rotation";
    case GaugePair::dirac_rotation: return "dirac_rotation";
    case GaugePair::schwinger_dirac: return "schwinger_dirac";
    }
    return "unknown";
}

double gauge_phase_residual(GaugePair pair, double mu, double theta_n, double alpha,
                            const Vec3& point)
{
    Vec3 z(0, 0, 1), n = unit_vector(theta_n, alpha);
    StringPotential left, right;
    std::vector<Vec3> strings;
    // chi_angle returns the phase angle whose gradient, times `scale`, is grad chi.
    std::function<double(const Vec3&)> chi_angle;
    double scale = mu;
    switch (pair) {
    case GaugePair::schwinger_rotation:
        left = {PotentialKind::schwinger, mu, n};
        right = {PotentialKind::schwinger, mu, z};
        strings = {n, -n, z, -z};
        chi_angle = [=](const Vec3& q) {
            Angles a = angles_of(q);
            return omega_phase(OmegaKind::omega, theta_n, alpha, a.theta, a.phi);
        };
        break;
    case GaugePair::dirac_rotation:
        left = {PotentialKind::dirac, mu, n};
        right = {PotentialKind::dirac, mu, z};
        strings = {n, z};
        scale = 2.0 * mu;
        chi_angle = [=](const Vec3& q) {
            Angles a = angles_of(q);
            return half_omega_prime(theta_n, alpha, a.theta, a.phi);
        };
        break;
    case GaugePair::schwinger_dirac:
        left = {PotentialKind::schwinger, mu, z};
        right = {PotentialKind::dirac, mu, z};
        strings = {z, -z};
        chi_angle = [](const Vec3& q) { return std::atan2(q.y(), q.x()); };
        break;
    }
    double pn = point.norm();
    if (!(pn > 0.0)) throw DomainError("gauge_phase_residual: origin is singular");
    double dmin = pn;
    for (const Vec3& s : strings) {
        if (s.dot(point) <= 0.0) continue;
        double dist = s.cross(point).norm();
        if (dist < 1e-6 * pn) throw DomainError("gauge_phase_residual: point on a string");
        dmin = std::min(dmin, dist);
    }

    auto diff = [&](const Vec3& q) { return Vec3(potential_eval(left, q) - potential_eval(right, q)); };
    double h = 1e-3 * dmin;
    double c0 = chi_angle(point);
    Vec3 grad;
    for (int i = 0; i < 3; ++i) {
        Vec3 e = Vec3::Zero();
        e(i) = h;
        auto d = [&](double t) { return wrap_angle(chi_angle(point + t * e) - c0); };
        grad(i) = scale * (-d(2) + 8 * d(1) - 8 * d(-1) + d(-2)) / (12.0 * h);
    }
    double local = (diff(point) + grad).norm();

    double sep = 2.0;
    for (std::size_t i = 0; i < strings.size(); ++i)
        for (std::size_t j = i + 1; j < strings.size(); ++j)
            sep = std::min(sep, (strings[i] - strings[j]).norm());
    double holonomy = 0.0;
    const int N = 400;
    for (const Vec3& s : strings) {
        Vec3 c = pn * s;
        double rad = 0.25 * pn * std::min(1.0, sep);
        Vec3 e1 = s.unitOrthogonal(), e2 = s.cross(e1);
        double loop = 0.0;
        for (int j = 0; j < N; ++j) {
            double t = 2.0 * pi * j / N;
            Vec3 q = c + rad * (std::cos(t) * e1 + std::sin(t) * e2);
            Vec3 dl = rad * (-std::sin(t) * e1 + std::cos(t) * e2) * (2.0 * pi / N);
            loop += diff(q).dot(dl);
        }
        holonomy = std::max(holonomy, std::abs(1.0 - std::polar(1.0, loop)));
    }
    return local + holonomy;
}

} // namespace abflux::monopole3d
