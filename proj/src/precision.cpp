#include "p3lab/precision.hpp"

#include <iomanip>
#include <sstream>

namespace p3lab {

std::string to_string(const Real& x, int digits) {
    if (digits <= 0) digits = static_cast<int>(x.precision());
    std::ostringstream os;
    os << std::setprecision(digits) << std::scientific << x;
    return os.str();
}

}  // namespace p3lab
