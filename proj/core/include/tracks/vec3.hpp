#pragma once

#include <array>
#include <cmath>

namespace tracks {

/// Cartesian 3-vector in bohr (positions) or dimensionless (directions).
struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

/// Angle between two nonzero vectors, robust near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b)
{
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

/// Right-handed orthonormal frame (e1, e2, axis) with the given unit axis as third vector.
struct Frame
{
    Vec3 e1;
    Vec3 e2;
    Vec3 e3;

    static Frame about(const Vec3& axis)
    {
        const Vec3 w = normalized(axis);
        // pick the Cartesian axis least aligned with w
        const Vec3 helper = std::abs(w.x) <= std::abs(w.y) && std::abs(w.x) <= std::abs(w.z) ? Vec3{1, 0, 0}
                            : std::abs(w.y) <= std::abs(w.z)                                ? Vec3{0, 1, 0}
                                                                                             : Vec3{0, 0, 1};
        const Vec3 e1 = normalized(cross(helper, w));
        return {e1, cross(w, e1), w};
    }

    /// Direction at polar angle theta and azimuth phi measured in this frame.
    Vec3 direction(double theta, double phi) const
    {
        const double st = std::sin(theta);
        return e1 * (st * std::cos(phi)) + e2 * (st * std::sin(phi)) + e3 * std::cos(theta);
    }

    Vec3 to_world(const Vec3& local) const { return e1 * local.x + e2 * local.y + e3 * local.z; }
};

/// Rotation by `angle` radians about the unit vector `axis` (Rodrigues).
inline Vec3 rotate(const Vec3& v, const Vec3& axis, double angle)
{
    const Vec3 k = normalized(axis);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return v * c + cross(k, v) * s + k * (dot(k, v) * (1.0 - c));
}

} // namespace tracks
