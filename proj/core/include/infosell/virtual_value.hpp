#pragma once

#include "infosell/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace infosell {

enum class CurveKind { Lower, Upper, Mixed, Pivot, Custom };

/// A virtual value curve on a type grid together with its ironed version and
/// the quantile-space workspace used to compute it.
struct VirtualCurve {
    CurveKind kind = CurveKind::Custom;
    double c = 0.0;                 // mixing weight, meaningful for Mixed and Pivot
    std::vector<double> raw;        // phi(t_i)
    std::vector<double> ironed;     // phi^+(t_i), non-decreasing
    std::vector<double> z;          // breakpoints: 0, F(t_1), ..., F(t_N) = 1
    std::vector<double> H;          // integral of raw in quantile space at each breakpoint
    std::vector<double> L;          // lower convex hull of H at each breakpoint
};

/// t_k - (t_{k+1} - t_k) (1 - F(t_k)) / f(t_k); the last entry is t_N.
std::vector<double> lower_virtual(const TypeGrid& grid);

/// t_k + (t_k - t_{k-1}) F(t_{k-1}) / f(t_k); the first entry is t_1.
std::vector<double> upper_virtual(const TypeGrid& grid);

/// Convex combination c * lower + (1 - c) * upper. Throws BadMixWeight
/// unless 0 <= c <= 1.
std::vector<double> mixed_virtual(const TypeGrid& grid, double c);

/// Virtual value of the budget-constrained relaxation with pivot quantile c:
///
///     t_k - (t_{k+1} - t_k) (c - F(t_k))^+ / f(t_k)
///         + (t_k - t_{k-1}) (F(t_{k-1}) - c)^+ / f(t_k)
///
/// Types entirely below quantile c carry the lower-boundary correction,
/// types entirely above carry the upper-boundary one, and the type whose
/// mass straddles c keeps its own value. Coincides with lower_virtual at
/// c = 1 and upper_virtual at c = 0, is continuous and non-increasing in c,
/// and on evenly spaced grids agrees with mixed_virtual up to O(gap).
/// This is the curve whose ironed version drives the intermediate case.
std::vector<double> pivot_virtual(const TypeGrid& grid, double c);

/// Irons `raw` against the grid's quantiles: H is piecewise linear with
/// slope raw[i] on (F(t_{i-1}), F(t_i)], L is its lower convex hull, and
/// ironed[i] is the slope of L over that interval.
VirtualCurve iron(std::span<const double> raw, const TypeGrid& grid,
                  CurveKind kind = CurveKind::Custom, double c = 0.0);

VirtualCurve ironed_lower(const TypeGrid& grid);
VirtualCurve ironed_upper(const TypeGrid& grid);
VirtualCurve ironed_mixed(const TypeGrid& grid, double c);
VirtualCurve ironed_pivot(const TypeGrid& grid, double c);

/// Smallest index i with F(t_i) >= c.
std::size_t crossing_type(const TypeGrid& grid, double c);

} // namespace infosell
