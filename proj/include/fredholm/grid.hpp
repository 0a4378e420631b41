#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fredholm {

/// Uniform partition 0 = t_0 < t_1 < ... < t_{n-1} = t_max with spacing
/// h = t_max/(n-1). Nodes are computed as i*t_max/(n-1); both endpoints are
/// exact.
struct Grid {
    double t_max;
    int n;
    double h;

    Grid(double t_max_, int n_) : t_max(t_max_), n(n_) {
        if (!(t_max > 0.0)) throw std::domain_error("Grid: t_max must be positive");
        if (n < 3) throw std::domain_error("Grid: need at least 3 nodes, got " + std::to_string(n));
        h = t_max / (n - 1);
    }

    double node(int i) const {
        if (i == 0) return 0.0;
        if (i == n - 1) return t_max;
        return static_cast<double>(i) * t_max / (n - 1);
    }

    std::vector<double> nodes() const {
        std::vector<double> t(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = node(i);
        return t;
    }
};

} // namespace fredholm
