#pragma once

#include <string>
#include <vector>

#include "exitlab/domain.hpp"

namespace exitlab {

/// Finite atomic measure: a list of (point, weight) atoms, repetitions
/// allowed. The empty list is the zero measure. Initial conditions use
/// interior atoms; exit measures carry atoms on the two boundary points.
struct AtomicMeasure {
    struct Atom {
        double point = 0.0;
        double weight = 0.0;
    };

    std::vector<Atom> atoms;

    static AtomicMeasure point_mass(double x, double w) {
        AtomicMeasure m;
        m.atoms.push_back({x, w});
        return m;
    }

    double total_mass() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.weight;
        return s;
    }

    bool is_zero() const { return atoms.empty() || total_mass() == 0.0; }

    /// Mass sitting on the left/right endpoint of the given domain.
    double mass_at_left(const Domain1D& d) const {
        double s = 0.0;
        for (const auto& a : atoms)
            if (a.point == d.left) s += a.weight;
        return s;
    }
    double mass_at_right(const Domain1D& d) const {
        double s = 0.0;
        for (const auto& a : atoms)
            if (a.point == d.right) s += a.weight;
        return s;
    }

    void add(double x, double w) {
        if (w != 0.0) atoms.push_back({x, w});
    }

    std::string to_json() const;
};

/// Exit measures on a two-point boundary. Alias kept for the role the type
/// plays; structurally identical to AtomicMeasure.
using BoundaryAtomicMeasure = AtomicMeasure;

/// Convenience for exit measures on the two-point boundary.
inline BoundaryAtomicMeasure boundary_measure(const Domain1D& d, double left_mass,
                                              double right_mass) {
    BoundaryAtomicMeasure m;
    m.add(d.left, left_mass);
    m.add(d.right, right_mass);
    return m;
}

}  // namespace exitlab
