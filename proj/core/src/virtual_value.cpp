#include "infosell/virtual_value.hpp"

#include "infosell/error.hpp"

#include <algorithm>
#include <string>

namespace infosell {

namespace {

void check_weight(double c) {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw Error(ErrorCode::BadMixWeight, "mixing weight must lie in [0, 1], got " + std::to_string(c));
    }
}

// Cross product of (b - a) and (c - a); negative means c lies below the
// line through a and b, i.e. b is not on the lower hull.
double turn(double ax, double ay, double bx, double by, double cx, double cy) {
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

} // namespace

std::vector<double> lower_virtual(const TypeGrid& grid) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = grid.t(i) - grid.gap_after(i) * (1.0 - grid.cdf(i)) / grid.f(i);
    }
    return out;
}

std::vector<double> upper_virtual(const TypeGrid& grid) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = grid.t(i) + grid.gap_before(i) * grid.cdf_before(i) / grid.f(i);
    }
    return out;
}

std::vector<double> mixed_virtual(const TypeGrid& grid, double c) {
    check_weight(c);
    const auto lo = lower_virtual(grid);
    const auto hi = upper_virtual(grid);
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = c * lo[i] + (1.0 - c) * hi[i];
    return out;
}

std::vector<double> pivot_virtual(const TypeGrid& grid, double c) {
    check_weight(c);
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double below = std::max(0.0, c - grid.cdf(i));
        const double above = std::max(0.0, grid.cdf_before(i) - c);
        out[i] = grid.t(i) - grid.gap_after(i) * below / grid.f(i) +
                 grid.gap_before(i) * above / grid.f(i);
    }
    return out;
}

VirtualCurve iron(std::span<const double> raw, const TypeGrid& grid, CurveKind kind, double c) {
    const std::size_t n = grid.size();
    if (raw.size() != n) {
        throw Error(ErrorCode::BadParams, "curve length " + std::to_string(raw.size()) +
                                              " does not match grid size " + std::to_string(n));
    }

    VirtualCurve curve;
    curve.kind = kind;
    curve.c = c;
    curve.raw.assign(raw.begin(), raw.end());
    curve.z.resize(n + 1);
    curve.H.resize(n + 1);
    curve.z[0] = 0.0;
    curve.H[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        curve.z[i + 1] = grid.cdf(i);
        curve.H[i + 1] = curve.H[i] + grid.f(i) * raw[i];
    }

    // Andrew's monotone chain, lower half only; collinear points stay.
    std::vector<std::size_t> hull;
    hull.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2];
            const std::size_t b = hull.back();
            if (turn(curve.z[a], curve.H[a], curve.z[b], curve.H[b], curve.z[k], curve.H[k]) < 0.0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(k);
    }

    curve.L.resize(n + 1);
    curve.ironed.resize(n);
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const std::size_t a = hull[s];
        const std::size_t b = hull[s + 1];
        const double slope = (curve.H[b] - curve.H[a]) / (curve.z[b] - curve.z[a]);
        curve.L[a] = curve.H[a];
        for (std::size_t k = a + 1; k <= b; ++k) {
            curve.L[k] = (k == b) ? curve.H[b] : curve.H[a] + slope * (curve.z[k] - curve.z[a]);
            curve.ironed[k - 1] = slope;
        }
    }
    // Rounding in the slope divisions can reorder nearly equal slopes.
    for (std::size_t i = 1; i < n; ++i) curve.ironed[i] = std::max(curve.ironed[i], curve.ironed[i - 1]);
    return curve;
}

VirtualCurve ironed_lower(const TypeGrid& grid) {
    return iron(lower_virtual(grid), grid, CurveKind::Lower, 1.0);
}

VirtualCurve ironed_upper(const TypeGrid& grid) {
    return iron(upper_virtual(grid), grid, CurveKind::Upper, 0.0);
}

VirtualCurve ironed_mixed(const TypeGrid& grid, double c) {
    return iron(mixed_virtual(grid, c), grid, CurveKind::Mixed, c);
}

VirtualCurve ironed_pivot(const TypeGrid& grid, double c) {
    return iron(pivot_virtual(grid, c), grid, CurveKind::Pivot, c);
}

std::size_t crossing_type(const TypeGrid& grid, double c) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.cdf(i) >= c) return i;
    }
    return grid.size() - 1;
}

} // namespace infosell
