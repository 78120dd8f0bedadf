#include "lospan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace lospan {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;  // 2^-53
constexpr double kCcwBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIccBound = (10.0 + 96.0 * kEps) * kEps;

// Doubles are m * 2^e with integer m. Scaling every input by the same power of
// two turns them into integers, and homogeneous determinants keep their sign.
class ExactScale {
public:
    explicit ExactScale(std::initializer_list<double> values) {
        for (double v : values) {
            if (v == 0.0) continue;
            int e = 0;
            std::frexp(v, &e);
            min_exp_ = std::min(min_exp_, e - 53);
        }
        if (min_exp_ == std::numeric_limits<int>::max()) min_exp_ = 0;
    }

    cpp_int operator()(double v) const {
        if (v == 0.0) return 0;
        int e = 0;
        const double f = std::frexp(v, &e);
        const auto mant = static_cast<std::int64_t>(std::ldexp(f, 53));
        cpp_int out = mant;
        out <<= static_cast<unsigned>((e - 53) - min_exp_);
        return out;
    }

private:
    int min_exp_ = std::numeric_limits<int>::max();
};

int sign_of(const cpp_int& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

int orientation_exact(const Point& a, const Point& b, const Point& c) {
    const ExactScale s{a.x(), a.y(), b.x(), b.y(), c.x(), c.y()};
    const cpp_int ax = s(a.x()), ay = s(a.y());
    const cpp_int bx = s(b.x()), by = s(b.y());
    const cpp_int cx = s(c.x()), cy = s(c.y());
    return sign_of((bx - ax) * (cy - ay) - (by - ay) * (cx - ax));
}

// Sign of the lifted determinant; positive iff p is inside when abc is counterclockwise.
int incircle_raw_exact(const Point& a, const Point& b, const Point& c, const Point& p) {
    const ExactScale s{a.x(), a.y(), b.x(), b.y(), c.x(), c.y(), p.x(), p.y()};
    const cpp_int px = s(p.x()), py = s(p.y());
    const cpp_int adx = s(a.x()) - px, ady = s(a.y()) - py;
    const cpp_int bdx = s(b.x()) - px, bdy = s(b.y()) - py;
    const cpp_int cdx = s(c.x()) - px, cdy = s(c.y()) - py;
    const cpp_int alift = adx * adx + ady * ady;
    const cpp_int blift = bdx * bdx + bdy * bdy;
    const cpp_int clift = cdx * cdx + cdy * cdy;
    const cpp_int det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                        clift * (adx * bdy - bdx * ady);
    return sign_of(det);
}

int incircle_raw(const Point& a, const Point& b, const Point& c, const Point& p) {
    const double adx = a.x() - p.x(), ady = a.y() - p.y();
    const double bdx = b.x() - p.x(), bdy = b.y() - p.y();
    const double cdx = c.x() - p.x(), cdy = c.y() - p.y();

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;

    const double det =
        alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                             (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                             (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    if (std::abs(det) > kIccBound * permanent) return sign_of(det);
    return incircle_raw_exact(a, b, c, p);
}

}  // namespace

Point::Point(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::invalid_argument("Point: coordinates must be finite");
    }
}

double dist(const Point& a, const Point& b) { return std::hypot(a.x() - b.x(), a.y() - b.y()); }

double dist2(const Point& a, const Point& b) {
    const double dx = a.x() - b.x();
    const double dy = a.y() - b.y();
    return dx * dx + dy * dy;
}

ConeSystem::ConeSystem(int k_, Point apex_) : k(k_), apex(apex_) {
    if (k < 6) throw std::invalid_argument("ConeSystem: k must be at least 6");
}

double direction(const Point& a, const Point& b) {
    double ang = std::atan2(b.y() - a.y(), b.x() - a.x());
    if (ang < 0.0) ang += 2.0 * std::numbers::pi;
    if (ang >= 2.0 * std::numbers::pi) ang = 0.0;
    return ang;
}

int cone_index(const ConeSystem& sys, const Point& target) {
    if (target == sys.apex) throw std::invalid_argument("cone_index: target coincides with apex");
    const double ang = direction(sys.apex, target);
    auto idx = static_cast<int>(std::floor(ang / sys.theta()));
    return std::clamp(idx, 0, sys.k - 1);
}

int parity_class(const CellIndex& c) {
    const auto pi = ((c.i % 2) + 2) % 2;
    const auto pj = ((c.j % 2) + 2) % 2;
    return static_cast<int>(pi * 2 + pj);
}

GridSpec::GridSpec(double beta, double delta)
    : beta_(beta), delta_(delta), stride_(beta - 2.0 * delta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("GridSpec: beta must be positive");
    }
    if (!(delta > 0.0) || !(delta < beta / 4.0)) {
        throw std::invalid_argument("GridSpec: delta must lie in (0, beta/4)");
    }
}

bool GridSpec::contains(const CellIndex& c, const Point& p) const {
    const double x0 = static_cast<double>(c.i) * stride_;
    const double y0 = static_cast<double>(c.j) * stride_;
    return x0 <= p.x() && p.x() < x0 + beta_ && y0 <= p.y() && p.y() < y0 + beta_;
}

std::vector<CellIndex> GridSpec::cells_of(const Point& p) const {
    auto axis = [&](double v) {
        std::vector<std::int64_t> out;
        const auto lo = static_cast<std::int64_t>(std::floor((v - beta_) / stride_)) - 1;
        const auto hi = static_cast<std::int64_t>(std::floor(v / stride_)) + 1;
        for (auto i = lo; i <= hi; ++i) {
            const double x0 = static_cast<double>(i) * stride_;
            if (x0 <= v && v < x0 + beta_) out.push_back(i);
        }
        return out;
    };
    std::vector<CellIndex> cells;
    for (auto i : axis(p.x())) {
        for (auto j : axis(p.y())) cells.push_back({i, j});
    }
    return cells;
}

int GridSpec::max_cells_meeting_disk(double radius) const {
    // Along one axis an interval of length 2r meets at most this many cells.
    const auto per_axis = static_cast<int>(std::ceil((2.0 * radius + beta_) / stride_)) + 1;
    return per_axis * per_axis;
}

std::vector<CellIndex> grid_cells_of(const Point& p, const GridSpec& g) { return g.cells_of(p); }

int orientation(const Point& a, const Point& b, const Point& c) {
    const double t1 = (b.x() - a.x()) * (c.y() - a.y());
    const double t2 = (b.y() - a.y()) * (c.x() - a.x());
    const double det = t1 - t2;
    if (std::abs(det) > kCcwBound * (std::abs(t1) + std::abs(t2))) return sign_of(det);
    return orientation_exact(a, b, c);
}

int incircle(const Point& a, const Point& b, const Point& c, const Point& p) {
    const int o = orientation(a, b, c);
    if (o == 0) throw std::invalid_argument("incircle: triangle is degenerate");
    return o * incircle_raw(a, b, c, p);
}

bool in_circumcircle(const Point& a, const Point& b, const Point& c, const Point& p) {
    return incircle(a, b, c, p) > 0;
}

int diametral_sign(const Point& a, const Point& b, const Point& p) {
    const double t1 = (a.x() - p.x()) * (b.x() - p.x());
    const double t2 = (a.y() - p.y()) * (b.y() - p.y());
    const double sum = t1 + t2;
    if (std::abs(sum) > kCcwBound * (std::abs(t1) + std::abs(t2))) return sign_of(sum);
    const ExactScale s{a.x(), a.y(), b.x(), b.y(), p.x(), p.y()};
    const cpp_int px = s(p.x()), py = s(p.y());
    return sign_of((s(a.x()) - px) * (s(b.x()) - px) + (s(a.y()) - py) * (s(b.y()) - py));
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
    if (orientation(a, b, p) != 0) return false;
    // Collinear: coordinate comparisons are exact.
    return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
           std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool segments_properly_intersect(const Point& a, const Point& b, const Point& c,
                                 const Point& d) {
    if (a == b || c == d) {
        throw std::invalid_argument("segments_properly_intersect: degenerate segment");
    }
    const bool shared = a == c || a == d || b == c || b == d;
    if (shared) {
        if ((a == c && b == d) || (a == d && b == c)) return true;
        // One common endpoint: any further contact means collinear overlap.
        const Point& s = (a == c || a == d) ? a : b;
        const Point& p = (s == a) ? b : a;
        const Point& q = (s == c) ? d : c;
        if (orientation(s, p, q) != 0) return false;
        // Collinear through s: overlap iff p and q lie on the same side of s.
        return diametral_sign(p, q, s) > 0;
    }
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
           (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

double circumradius(const Point& a, const Point& b, const Point& c) {
    const double la = dist(b, c), lb = dist(a, c), lc = dist(a, b);
    const double area2 = std::abs((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
    if (area2 == 0.0) throw std::invalid_argument("circumradius: degenerate triangle");
    return la * lb * lc / (2.0 * area2);
}

}  // namespace lospan
