#include "newtonlk/ambient.hpp"

#include <cmath>
#include <string>

namespace newtonlk {

AmbientSpace::AmbientSpace(int c, int n) : c_(c), n_(n) {
    if (c != 1 && c != -1) throw DomainError("AmbientSpace: c must be +1 or -1, got " + std::to_string(c));
    if (n < 1) throw DomainError("AmbientSpace: hypersurface dimension must be >= 1");
}

Mat AmbientSpace::metric() const {
    Mat g = Mat::Identity(dim(), dim());
    if (lorentzian()) g(0, 0) = -1.0;
    return g;
}

double AmbientSpace::inner(const Vec& a, const Vec& b) const {
    double r = a.dot(b);
    if (lorentzian()) r -= 2.0 * a(0) * b(0);
    return r;
}

Vec AmbientSpace::lower(const Vec& v) const {
    Vec out = v;
    if (lorentzian()) out(0) = -out(0);
    return out;
}

bool AmbientSpace::contains(const Vec& x, double tol) const {
    if (x.size() != dim()) return false;
    if (std::abs(inner(x, x) - c_) > tol) return false;
    return !lorentzian() || x(0) > 0.0;
}

}  // namespace newtonlk
