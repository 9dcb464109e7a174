#include "exitlab/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace exitlab {

GridFunction::GridFunction(Domain1D domain, std::size_t grid_size, double fill)
    : domain_(domain), values_(grid_size + 1, fill) {
    if (grid_size < 2)
        throw std::invalid_argument("GridFunction: grid_size must be >= 2");
}

double GridFunction::operator()(double x) const {
    const double h = spacing();
    double t = (x - domain_.left) / h;
    const double n = static_cast<double>(grid_size());
    t = std::clamp(t, 0.0, n);
    const auto i = static_cast<std::size_t>(t);
    if (i >= grid_size()) return values_.back();
    const double frac = t - static_cast<double>(i);
    return values_[i] + frac * (values_[i + 1] - values_[i]);
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double GridFunction::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

void GridFunction::write_csv(std::ostream& os, const std::string& provenance) const {
    if (!provenance.empty()) os << "# " << provenance << "\n";
    os << "node,value\n";
    os.precision(17);
    for (std::size_t i = 0; i < values_.size(); ++i)
        os << node_x(i) << "," << values_[i] << "\n";
}

std::string GridFunction::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"left\":" << domain_.left << ",\"right\":" << domain_.right
       << ",\"boundary\":\"" << (kind_ == BoundaryKind::BlowUp ? "blow-up" : "dirichlet")
       << "\",\"values\":[";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) os << ",";
        os << values_[i];
    }
    os << "]}";
    return os.str();
}

GridFunction pointwise_product(const GridFunction& a, const GridFunction& b) {
    if (!a.same_grid(b))
        throw std::invalid_argument("pointwise_product: grid mismatch");
    GridFunction out = a;
    for (std::size_t i = 0; i < out.node_count(); ++i) out[i] = a[i] * b[i];
    return out;
}

}  // namespace exitlab
