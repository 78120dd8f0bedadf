#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <vector>

namespace lospan {

/// A point in the plane, in units of the maximum transmission range.
/// Coordinates are always finite; the constructor rejects NaN and infinity.
class Point {
public:
    Point() = default;
    Point(double x, double y);

    double x() const { return x_; }
    double y() const { return y_; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    double x_ = 0.0;
    double y_ = 0.0;
};

double dist(const Point& a, const Point& b);
double dist2(const Point& a, const Point& b);

/// k equal half-open cones [i*2pi/k, (i+1)*2pi/k) around an apex.
struct ConeSystem {
    ConeSystem(int k, Point apex);

    int k;
    Point apex;

    double theta() const { return 2.0 * std::numbers::pi / k; }
};

/// Angle of the ray a->b, normalised to [0, 2pi).
double direction(const Point& a, const Point& b);

/// Index of the cone of `sys` containing `target`. Throws on target == apex.
int cone_index(const ConeSystem& sys, const Point& target);

struct CellIndex {
    std::int64_t i = 0;
    std::int64_t j = 0;

    friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

/// Parity class (i mod 2) * 2 + (j mod 2), in [0, 4).
int parity_class(const CellIndex& c);

/// Overlapping square grid: cell (i,j) is [i*stride, i*stride + beta) x
/// [j*stride, j*stride + beta) with stride = beta - 2*delta.
class GridSpec {
public:
    GridSpec(double beta, double delta);

    double beta() const { return beta_; }
    double delta() const { return delta_; }
    double stride() const { return stride_; }

    /// Every cell containing p. Between one and four cells.
    std::vector<CellIndex> cells_of(const Point& p) const;

    bool contains(const CellIndex& c, const Point& p) const;

    /// Number of cells whose square meets a disk of the given radius,
    /// maximised over disk placements (upper bound used for degree checks).
    int max_cells_meeting_disk(double radius) const;

private:
    double beta_;
    double delta_;
    double stride_;
};

std::vector<CellIndex> grid_cells_of(const Point& p, const GridSpec& g);

// Exact predicates. All signs are computed without rounding error.

/// Sign of the cross product (b - a) x (c - a): +1 left turn, -1 right, 0 collinear.
int orientation(const Point& a, const Point& b, const Point& c);

/// +1 if p is strictly inside the circle through a,b,c, 0 on it, -1 outside.
/// Independent of the orientation of (a,b,c). Throws if a,b,c are collinear.
int incircle(const Point& a, const Point& b, const Point& c, const Point& p);

/// True iff p lies strictly inside the circumcircle of triangle abc.
bool in_circumcircle(const Point& a, const Point& b, const Point& c, const Point& p);

/// Sign of (a - p) . (b - p): negative iff p is strictly inside the circle
/// with diameter ab, zero iff on it.
int diametral_sign(const Point& a, const Point& b, const Point& p);

/// True iff p lies on the closed segment ab (requires collinearity check inside).
bool on_segment(const Point& a, const Point& b, const Point& p);

/// True iff the closed segments ab and cd share a point that is not a common
/// endpoint. Throws if either segment is degenerate.
bool segments_properly_intersect(const Point& a, const Point& b, const Point& c,
                                 const Point& d);

/// Circumradius of a non-degenerate triangle (floating point).
double circumradius(const Point& a, const Point& b, const Point& c);

}  // namespace lospan
