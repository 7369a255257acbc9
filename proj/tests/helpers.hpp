#pragma once

#include <cmath>
#include <limits>

#include "besov/lattice.hpp"

namespace testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline besov::GridFunction gaussian(const besov::Axes& axes) {
    return besov::make_grid(axes, [](std::span<const double> x) -> besov::Complex {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        return std::exp(-0.5 * r2);
    });
}

inline double rel_l2(const besov::GridFunction& a, const besov::GridFunction& b) {
    const double ref = besov::lp_norm(b, 2.0);
    return besov::lp_norm(besov::sub(a, b), 2.0) / (ref > 0.0 ? ref : 1.0);
}

}  // namespace testing
