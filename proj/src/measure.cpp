#include "exitlab/measure.hpp"

#include <sstream>

namespace exitlab {

std::string AtomicMeasure::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "[";
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) os << ",";
        os << "[" << atoms[i].point << "," << atoms[i].weight << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace exitlab
