#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbat/rng.hpp"

namespace qbat {

/// One hypercomplex number w + x*i + y*j + z*k with the basis elements
/// obeying i*i = j*j = k*k = i*j*k = -1 under the product below.
///
/// Components are stored in (w, x, y, z) order with w the scalar part.
/// Arithmetic that could leave the finite double range is checked and
/// reports overflow as std::range_error, so stored values stay finite.
struct Quaternion {
    double w{0.0}, x{0.0}, y{0.0}, z{0.0};

    static constexpr Quaternion zero() { return {0.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

inline bool is_finite(const Quaternion& q) {
    return std::isfinite(q.w) && std::isfinite(q.x) && std::isfinite(q.y) && std::isfinite(q.z);
}

namespace detail {
inline Quaternion checked(const Quaternion& q) {
    if (!is_finite(q)) {
        throw std::range_error("quaternion arithmetic left the finite range");
    }
    return q;
}
} // namespace detail

inline Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return detail::checked({a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z});
}

inline Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return detail::checked({a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z});
}

inline Quaternion operator-(const Quaternion& q) {
    return {-q.w, -q.x, -q.y, -q.z};
}

/// Componentwise scaling; norm(s * q) == |s| * norm(q).
inline Quaternion operator*(double s, const Quaternion& q) {
    return detail::checked({s * q.w, s * q.x, s * q.y, s * q.z});
}

inline Quaternion operator*(const Quaternion& q, double s) { return s * q; }

/// Hamilton product. Non-commutative (i*j == k but j*i == -k), associative.
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return detail::checked({
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    });
}

/// Conjugate (w, -x, -y, -z); q * conj(q) == (norm(q)^2, 0, 0, 0).
inline constexpr Quaternion conj(const Quaternion& q) {
    return {q.w, -q.x, -q.y, -q.z};
}

/// Euclidean norm sqrt(w^2 + x^2 + y^2 + z^2), computed against the largest
/// component so intermediate squares cannot overflow. Exact for quaternions
/// with a single nonzero component. The true norm of a quaternion with
/// components near DBL_MAX is not representable; it comes back as infinity
/// and the decode layer clamps it.
inline double norm(const Quaternion& q) {
    const double m = std::max(std::max(std::abs(q.w), std::abs(q.x)),
                              std::max(std::abs(q.y), std::abs(q.z)));
    if (m == 0.0) {
        return 0.0;
    }
    const double w = q.w / m;
    const double x = q.x / m;
    const double y = q.y / m;
    const double z = q.z / m;
    return m * std::sqrt(w * w + x * x + y * y + z * z);
}

/// Quaternion with all four components drawn independently from
/// uniform[-scale, scale]. Consumes exactly four draws, in (w, x, y, z)
/// order. norm() of the result lies in [0, 2*scale].
inline Quaternion random_quaternion(RandomStream& rng, double scale) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("random_quaternion: scale must be positive");
    }
    const double w = rng.uniform(-scale, scale);
    const double x = rng.uniform(-scale, scale);
    const double y = rng.uniform(-scale, scale);
    const double z = rng.uniform(-scale, scale);
    return {w, x, y, z};
}

} // namespace qbat
