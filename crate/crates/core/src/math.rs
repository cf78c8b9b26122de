//! Planar vector and pose primitives shared by the simulator and environment.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

/// 2-D vector in meters (or meters/second, newtons, depending on context).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, rhs: Vec2) -> f64 {
        self.x * rhs.x + self.y * rhs.y
    }

    /// Scalar 2-D cross product: `self.x * rhs.y - self.y * rhs.x`.
    pub fn cross(self, rhs: Vec2) -> f64 {
        self.x * rhs.y - self.y * rhs.x
    }

    /// Counterclockwise perpendicular (rotation by +90 degrees).
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    /// Unit vector, or `None` when shorter than `eps`.
    pub fn try_normalize(self, eps: f64) -> Option<Vec2> {
        let n = self.norm();
        if n > eps {
            Some(Vec2::new(self.x / n, self.y / n))
        } else {
            None
        }
    }

    pub fn scale(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        self.scale(s)
    }
}

/// Wrap an angle to the half-open interval `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Smallest signed difference `a - b` wrapped to `(-pi, pi]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    wrap_angle(a - b)
}

/// Planar rigid pose: translation plus heading, `theta` kept in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose2 {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl Pose2 {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Pose2 {
            x,
            y,
            theta: wrap_angle(theta),
        }
    }

    pub fn identity() -> Self {
        Pose2 {
            x: 0.0,
            y: 0.0,
            theta: 0.0,
        }
    }

    pub fn translation(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    /// Transform a point from this pose's body frame into the world frame.
    pub fn transform(&self, p: Vec2) -> Vec2 {
        let (s, c) = self.theta.sin_cos();
        Vec2::new(c * p.x - s * p.y + self.x, s * p.x + c * p.y + self.y)
    }

    /// Rotate a body-frame direction into the world frame (no translation).
    pub fn rotate(&self, v: Vec2) -> Vec2 {
        let (s, c) = self.theta.sin_cos();
        Vec2::new(c * v.x - s * v.y, s * v.x + c * v.y)
    }

    /// Transform a world-frame point into this pose's body frame.
    pub fn inverse_transform(&self, p: Vec2) -> Vec2 {
        let d = p - self.translation();
        let (s, c) = self.theta.sin_cos();
        Vec2::new(c * d.x + s * d.y, -s * d.x + c * d.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.theta.is_finite()
    }
}

/// Closest point on segment `[a, b]` to point `p`, returned with its parameter `t` in `[0, 1]`.
pub fn closest_point_on_segment(a: Vec2, b: Vec2, p: Vec2) -> (Vec2, f64) {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 <= 0.0 {
        return (a, 0.0);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    (a + ab * t, t)
}

/// Closest pair of points between segments `[a1, b1]` and `[a2, b2]`.
///
/// Returns `(p_on_1, p_on_2, distance)`. Handles degenerate (zero-length)
/// segments and the parallel case.
pub fn closest_points_segment_segment(a1: Vec2, b1: Vec2, a2: Vec2, b2: Vec2) -> (Vec2, Vec2, f64) {
    let d1 = b1 - a1;
    let d2 = b2 - a2;
    let r = a1 - a2;
    let l1 = d1.norm_squared();
    let l2 = d2.norm_squared();

    let (mut s, mut t);
    if l1 <= 0.0 && l2 <= 0.0 {
        s = 0.0;
        t = 0.0;
    } else if l1 <= 0.0 {
        s = 0.0;
        t = (d2.dot(r) / l2).clamp(0.0, 1.0);
    } else if l2 <= 0.0 {
        t = 0.0;
        s = (-d1.dot(r) / l1).clamp(0.0, 1.0);
    } else {
        let b = d1.dot(d2);
        let f = d2.dot(r);
        let c = d1.dot(r);
        let denom = l1 * l2 - b * b;
        s = if denom > 1e-16 {
            ((b * f - c * l2) / denom).clamp(0.0, 1.0)
        } else {
            0.0
        };
        t = ((b * s + f) / l2).clamp(0.0, 1.0);
        s = ((b * t - c) / l1).clamp(0.0, 1.0);
    }
    let p1 = a1 + d1 * s;
    let p2 = a2 + d2 * t;
    (p1, p2, (p1 - p2).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn wrap_angle_boundaries() {
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
        assert_relative_eq!(wrap_angle(3.0 * PI), PI, epsilon = 1e-12);
        assert_relative_eq!(wrap_angle(-2.5 * PI), -0.5 * PI, epsilon = 1e-12);
        assert_eq!(wrap_angle(0.3), 0.3);
    }

    #[test]
    fn pose_round_trip() {
        let pose = Pose2::new(1.2, -0.4, 0.8);
        let p = Vec2::new(0.3, -0.7);
        let q = pose.inverse_transform(pose.transform(p));
        assert_relative_eq!(q.x, p.x, epsilon = 1e-12);
        assert_relative_eq!(q.y, p.y, epsilon = 1e-12);
    }

    #[test]
    fn segment_segment_parallel() {
        let (p1, p2, d) = closest_points_segment_segment(
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.2, 0.5),
            Vec2::new(0.8, 0.5),
        );
        assert_relative_eq!(d, 0.5, epsilon = 1e-12);
        assert_relative_eq!(p1.y, 0.0, epsilon = 1e-12);
        assert_relative_eq!(p2.y, 0.5, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn wrap_angle_in_range(theta in -50.0f64..50.0) {
            let w = wrap_angle(theta);
            prop_assert!(w > -PI && w <= PI);
            // same angle modulo 2 pi
            let d = (w - theta) / (2.0 * PI);
            prop_assert!((d - d.round()).abs() < 1e-9);
        }

        #[test]
        fn segment_distance_is_lower_bound(
            ax in -2.0f64..2.0, ay in -2.0f64..2.0,
            bx in -2.0f64..2.0, by in -2.0f64..2.0,
            cx in -2.0f64..2.0, cy in -2.0f64..2.0,
            dx in -2.0f64..2.0, dy in -2.0f64..2.0,
            s in 0.0f64..1.0, t in 0.0f64..1.0,
        ) {
            let a1 = Vec2::new(ax, ay);
            let b1 = Vec2::new(bx, by);
            let a2 = Vec2::new(cx, cy);
            let b2 = Vec2::new(dx, dy);
            let (_, _, dmin) = closest_points_segment_segment(a1, b1, a2, b2);
            let p = a1 + (b1 - a1) * s;
            let q = a2 + (b2 - a2) * t;
            prop_assert!(dmin <= (p - q).norm() + 1e-9);
        }
    }
}
