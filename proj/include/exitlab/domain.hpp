#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace exitlab {

/// Open interval (left, right) with two-point boundary {left, right}.
struct Domain1D {
    double left = 0.0;
    double right = 1.0;

    Domain1D() = default;
    Domain1D(double l, double r) : left(l), right(r) {
        if (!(right - left > 0.0))
            throw std::invalid_argument("Domain1D: right must exceed left");
    }

    double length() const { return right - left; }
    double midpoint() const { return 0.5 * (left + right); }
    bool contains(double x) const { return x > left && x < right; }
    bool contains_closure(double x) const { return x >= left && x <= right; }
    double dist_to_boundary(double x) const {
        return std::min(x - left, right - x);
    }
    bool operator==(const Domain1D& o) const { return left == o.left && right == o.right; }
};

/// Exhausting sequence D_1 c D_2 c ... c D with relative insets
/// delta_k = 1/(2(k+2)), scaled by the domain length.
inline Domain1D exhaustion_subdomain(const Domain1D& d, int k) {
    if (k < 1) throw std::invalid_argument("exhaustion_subdomain: k must be >= 1");
    const double delta = d.length() / (2.0 * (k + 2.0));
    return Domain1D(d.left + delta, d.right - delta);
}

inline std::vector<Domain1D> exhaustion_schedule(const Domain1D& d, int depth) {
    if (depth < 1) throw std::invalid_argument("exhaustion_schedule: depth must be >= 1");
    std::vector<Domain1D> out;
    out.reserve(depth);
    for (int k = 1; k <= depth; ++k) out.push_back(exhaustion_subdomain(d, k));
    return out;
}

}  // namespace exitlab
