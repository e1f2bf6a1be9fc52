#pragma once

#include <vector>

namespace barea::quad {

// Gauss-Legendre rule on [-1, 1]; nodes/weights are cached per order.
struct GLRule {
    std::vector<double> x, w;
};

const GLRule& gauss_legendre(int n);

// Integrate f over [a, b] with an n-point rule.
template <typename F>
double gl_integrate(F&& f, double a, double b, int n) {
    const GLRule& r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(mid + half * r.x[i]);
    return acc * half;
}

}  // namespace barea::quad
