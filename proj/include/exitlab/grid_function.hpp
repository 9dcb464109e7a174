#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "exitlab/domain.hpp"

namespace exitlab {

enum class BoundaryKind {
    Dirichlet,  ///< finite values stored at both boundary nodes
    BlowUp,     ///< boundary nodes carry the capped asymptotic closure value
};

/// Real-valued function sampled on a uniform grid of M+1 nodes spanning a
/// Domain1D. Values are finite at every node; for BlowUp functions the two
/// boundary entries hold the asymptotic closure cap rather than a solution
/// value.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(Domain1D domain, std::size_t grid_size, double fill = 0.0);

    const Domain1D& domain() const { return domain_; }
    std::size_t grid_size() const { return values_.empty() ? 0 : values_.size() - 1; }
    std::size_t node_count() const { return values_.size(); }
    double spacing() const { return domain_.length() / static_cast<double>(grid_size()); }
    double node_x(std::size_t i) const { return domain_.left + spacing() * static_cast<double>(i); }

    BoundaryKind boundary_kind() const { return kind_; }
    void set_boundary_kind(BoundaryKind k) { kind_ = k; }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    /// Piecewise-linear evaluation; x is clamped to the closed domain.
    double operator()(double x) const;

    double max_abs() const;
    double min_value() const;
    double max_value() const;

    bool same_grid(const GridFunction& other) const {
        return domain_ == other.domain_ && values_.size() == other.values_.size();
    }

    void write_csv(std::ostream& os, const std::string& provenance = {}) const;
    std::string to_json() const;

private:
    Domain1D domain_{};
    std::vector<double> values_;
    BoundaryKind kind_ = BoundaryKind::Dirichlet;
};

/// Node-wise product (same grid required).
GridFunction pointwise_product(const GridFunction& a, const GridFunction& b);

}  // namespace exitlab
