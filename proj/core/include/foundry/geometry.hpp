#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace foundry {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Axis-aligned box, top-left origin (SVG convention).
struct Rect {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double x2() const { return x + w; }
    double y2() const { return y + h; }
    double area() const { return w * h; }
    Vec2 center() const { return {x + w / 2.0, y + h / 2.0}; }
    bool empty() const { return w <= 0.0 || h <= 0.0; }

    bool intersects(const Rect& o) const {
        return x < o.x2() && o.x < x2() && y < o.y2() && o.y < y2();
    }

    Rect union_with(const Rect& o) const {
        if (empty()) return o;
        if (o.empty()) return *this;
        double nx = std::min(x, o.x);
        double ny = std::min(y, o.y);
        return {nx, ny, std::max(x2(), o.x2()) - nx, std::max(y2(), o.y2()) - ny};
    }

    double intersection_area(const Rect& o) const {
        double iw = std::min(x2(), o.x2()) - std::max(x, o.x);
        double ih = std::min(y2(), o.y2()) - std::max(y, o.y);
        if (iw <= 0.0 || ih <= 0.0) return 0.0;
        return iw * ih;
    }
};

/// Gap between two boxes measured per axis; 0 when they touch or overlap.
/// The larger axis separation is a conservative stand-in for the true
/// contour distance (never exceeds the Euclidean gap).
inline double bbox_gap(const Rect& a, const Rect& b) {
    double dx = std::max({0.0, b.x - a.x2(), a.x - b.x2()});
    double dy = std::max({0.0, b.y - a.y2(), a.y - b.y2()});
    return std::max(dx, dy);
}

/// Accumulates points into a tight bounding box.
struct BoundsAccum {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void add(double x, double y) {
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x);
        max_y = std::max(max_y, y);
    }

    void add(const Rect& r) {
        add(r.x, r.y);
        add(r.x2(), r.y2());
    }

    bool valid() const { return min_x <= max_x && min_y <= max_y; }

    Rect rect() const {
        if (!valid()) return {};
        return {min_x, min_y, max_x - min_x, max_y - min_y};
    }
};

/// 2D affine transform: | a c e |
///                      | b d f |
struct Mat2x3 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0, e = 0.0, f = 0.0;

    static Mat2x3 identity() { return {}; }
    static Mat2x3 translate(double tx, double ty) { return {1, 0, 0, 1, tx, ty}; }
    static Mat2x3 scale(double sx, double sy) { return {sx, 0, 0, sy, 0, 0}; }

    static Mat2x3 rotate_deg(double deg) {
        double r = deg * M_PI / 180.0;
        return {std::cos(r), std::sin(r), -std::sin(r), std::cos(r), 0, 0};
    }

    /// this ∘ o (apply o first, then this).
    Mat2x3 then(const Mat2x3& o) const {
        return {
            a * o.a + c * o.b,
            b * o.a + d * o.b,
            a * o.c + c * o.d,
            b * o.c + d * o.d,
            a * o.e + c * o.f + e,
            b * o.e + d * o.f + f,
        };
    }

    Vec2 apply(double x, double y) const {
        return {a * x + c * y + e, b * x + d * y + f};
    }

    bool is_identity() const {
        return a == 1.0 && b == 0.0 && c == 0.0 && d == 1.0 && e == 0.0 && f == 0.0;
    }

    /// Bbox of a transformed axis-aligned box (corners mapped, re-boxed).
    Rect apply_rect(const Rect& r) const {
        BoundsAccum acc;
        for (auto [px, py] : {Vec2{r.x, r.y}, Vec2{r.x2(), r.y}, Vec2{r.x, r.y2()}, Vec2{r.x2(), r.y2()}}) {
            Vec2 p = apply(px, py);
            acc.add(p.x, p.y);
        }
        return acc.rect();
    }
};

} // namespace foundry
