#pragma once

#include <cmath>

namespace swarmdef {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTau = 2.0 * kPi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm_sq()); }
};

inline Vec2 unit_from_angle(double a) { return {std::cos(a), std::sin(a)}; }

// Wraps to [0, tau).
inline double wrap_angle(double a) {
    a = std::fmod(a, kTau);
    if (a < 0.0) a += kTau;
    if (a >= kTau) a = 0.0; // fmod can round a tiny negative up to tau
    return a;
}

// Shortest signed rotation taking `from` onto `to`, in (-pi, pi].
inline double angle_diff(double to, double from) {
    double d = wrap_angle(to - from);
    if (d > kPi) d -= kTau;
    return d;
}

inline double bearing(Vec2 from, Vec2 to) { return std::atan2(to.y - from.y, to.x - from.x); }

inline double clamp(double v, double lo, double hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

} // namespace swarmdef
