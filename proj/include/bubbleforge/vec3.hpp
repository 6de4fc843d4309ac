#pragma once

#include <cmath>

namespace bubbleforge {

struct Vec3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double a, double b, double c) : x1(a), x2(b), x3(c) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
    constexpr Vec3 operator*(double s) const { return {s * x1, s * x2, s * x3}; }
    constexpr Vec3 operator-() const { return {-x1, -x2, -x3}; }

    constexpr double dot(const Vec3& o) const { return x1 * o.x1 + x2 * o.x2 + x3 * o.x3; }
    constexpr double norm_sq() const { return x1 * x1 + x2 * x2 + x3 * x3; }
    double norm() const { return std::sqrt(norm_sq()); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dist(const Vec3& a, const Vec3& b) { return (a - b).norm(); }
inline constexpr double dist_sq(const Vec3& a, const Vec3& b) { return (a - b).norm_sq(); }

} // namespace bubbleforge
