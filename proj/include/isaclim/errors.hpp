#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace isaclim {

inline void check(bool condition, const std::string& message) {
    if (!condition) throw std::domain_error(message);
}

inline void check_finite(double v, const std::string& name) {
    if (!std::isfinite(v)) throw std::domain_error(name + " must be finite");
}

inline void check_positive(double v, const std::string& name) {
    check_finite(v, name);
    if (!(v > 0.0)) throw std::domain_error(name + " must be positive");
}

inline void check_nonnegative(double v, const std::string& name) {
    check_finite(v, name);
    if (v < 0.0) throw std::domain_error(name + " must be non-negative");
}

inline void check_in_range(double v, double lo, double hi, const std::string& name) {
    check_finite(v, name);
    if (v < lo || v > hi)
        throw std::domain_error(name + " must lie in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
}

} // namespace isaclim
