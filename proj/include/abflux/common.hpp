#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace abflux {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Invalid argument or an input outside the mathematical domain.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A computation that could not reach its accuracy target.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Polar angle and azimuth of a nonzero vector, azimuth in (-pi, pi].
struct Angles {
    double theta;
    double phi;
};

inline Angles angles_of(const Vec3& v)
{
    double r = v.norm();
    double c = v.z() / r;
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return {std::acos(c), std::atan2(v.y(), v.x())};
}

inline Vec3 unit_vector(double theta, double phi)
{
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double x)
{
    x = std::remainder(x, 2.0 * pi);
    if (x <= -pi) x += 2.0 * pi;
    return x;
}

} // namespace abflux
