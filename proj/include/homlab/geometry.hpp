#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace homlab {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi / 3.0;
        default: {
            double v = (n % 2 == 0) ? std::numbers::pi : 2.0;
            for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2)
                v *= 2.0 * std::numbers::pi / k;
            return v;
        }
    }
}

/// Surface measure of the unit sphere boundary in R^n (mes_{n-1} dB_1).
inline double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

/// Exact area of the intersection of the disk B_r(c) with the axis-aligned
/// rectangle [x0,x1]x[y0,y1]. Window-face ties carry measure zero, so the
/// half-open window convention does not affect areas.
double circle_box_overlap(const Vec2& c, double r, double x0, double y0,
                          double x1, double y1);

/// Axis-aligned box in R^n (n = 2 or 3), used for windows and domains.
struct BoxN {
    Vec3 lo = Vec3::Zero();
    Vec3 hi = Vec3::Zero();
    int n = 2;

    double volume() const {
        double v = 1.0;
        for (int i = 0; i < n; ++i) v *= hi[i] - lo[i];
        return v;
    }
    bool contains(const Vec3& p) const {
        for (int i = 0; i < n; ++i)
            if (p[i] < lo[i] || p[i] >= hi[i]) return false;
        return true;
    }
    Vec3 extent() const { return hi - lo; }
};

} // namespace homlab
