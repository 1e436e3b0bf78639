#pragma once

#include "abflux/common.hpp"

#include <functional>
#include <vector>

namespace abflux::numerics {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
cplx integrate_panels(const std::function<cplx(double)>& f, double a, double b, int panels,
                      int order = 16);

// Adaptive Gauss-Kronrod, returns the estimate; throws when tol is not met.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12, double* error = nullptr);

// Least-squares line y = intercept + slope * x.
struct LineFit {
    double slope;
    double intercept;
    double r2;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Slope of ln y against ln x.
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// Number of worker threads from ABFLUX_THREADS, default 1.
int thread_count();

// Run body(i) for i in [0, n) on thread_count() workers. Results land in
// caller-owned slots so the output does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace abflux::numerics
