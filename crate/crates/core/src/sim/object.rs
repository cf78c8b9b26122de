//! Free rigid object sliding on the table plane.

use crate::math::{Pose2, Vec2};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Linear table-friction model: viscous damping plus a stiction snap.
///
/// Below `stiction_speed` the velocity is zeroed outright, so the object
/// genuinely rests instead of creeping under residual contact forces.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFriction {
    /// Viscous damping coefficient, N·s/m (applied to rotation scaled by the
    /// squared radius of gyration).
    pub damping: f64,
    /// Linear speed threshold below which the object sticks, m/s.
    pub stiction_speed: f64,
}

/// Convex polygonal object with planar rigid-body state.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectBody {
    /// Convex polygon vertices, counterclockwise, body frame, meters.
    pub shape: Vec<Vec2>,
    pub pose: Pose2,
    /// Linear velocity (m/s).
    pub velocity: Vec2,
    /// Angular velocity (rad/s).
    pub omega: f64,
    pub mass: f64,
    pub inertia: f64,
    pub table_friction: TableFriction,
}

impl ObjectBody {
    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) {
            return Err(Error::config("object mass must be > 0"));
        }
        if !(self.inertia > 0.0) {
            return Err(Error::config("object inertia must be > 0"));
        }
        if self.table_friction.damping < 0.0 {
            return Err(Error::config("table friction damping must be >= 0"));
        }
        if !(self.table_friction.stiction_speed >= 0.0) {
            return Err(Error::config("stiction speed must be >= 0"));
        }
        validate_convex_polygon(&self.shape)?;
        Ok(())
    }

    /// Polygon vertices in the world frame.
    pub fn world_vertices(&self) -> Vec<Vec2> {
        self.shape.iter().map(|&v| self.pose.transform(v)).collect()
    }

    /// Velocity of the material point currently at world position `p`.
    pub fn velocity_at(&self, p: Vec2) -> Vec2 {
        let r = p - self.pose.translation();
        self.velocity + r.perp() * self.omega
    }

    /// Squared radius of gyration, used to scale rotational table friction.
    pub fn gyration_radius_squared(&self) -> f64 {
        self.inertia / self.mass
    }

    pub fn is_finite(&self) -> bool {
        self.pose.is_finite() && self.velocity.is_finite() && self.omega.is_finite()
    }
}

/// Check that `shape` is a strictly convex, counterclockwise polygon with
/// positive area.
pub fn validate_convex_polygon(shape: &[Vec2]) -> Result<()> {
    if shape.len() < 3 {
        return Err(Error::config("polygon needs at least 3 vertices"));
    }
    let n = shape.len();
    let mut area2 = 0.0;
    for i in 0..n {
        let a = shape[i];
        let b = shape[(i + 1) % n];
        let c = shape[(i + 2) % n];
        let cross = (b - a).cross(c - b);
        if cross <= 1e-12 {
            return Err(Error::config(
                "polygon must be strictly convex and counterclockwise",
            ));
        }
        area2 += a.cross(b);
    }
    if area2 <= 1e-12 {
        return Err(Error::config("polygon must have positive area"));
    }
    Ok(())
}

/// True if world-frame point `p` lies inside (or on the boundary of) the
/// convex polygon given by world-frame vertices.
pub fn point_in_convex_polygon(p: Vec2, verts: &[Vec2]) -> bool {
    let n = verts.len();
    for i in 0..n {
        let a = verts[i];
        let b = verts[(i + 1) % n];
        if (b - a).cross(p - a) < 0.0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Vec2> {
        vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
        ]
    }

    #[test]
    fn convexity_validation() {
        assert!(validate_convex_polygon(&square()).is_ok());
        // clockwise rejected
        let mut cw = square();
        cw.reverse();
        assert!(validate_convex_polygon(&cw).is_err());
        // concave rejected
        let concave = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(2.0, 2.0),
            Vec2::new(1.0, 0.5),
        ];
        assert!(validate_convex_polygon(&concave).is_err());
    }

    #[test]
    fn point_containment() {
        let verts = square();
        assert!(point_in_convex_polygon(Vec2::new(0.0, 0.0), &verts));
        assert!(point_in_convex_polygon(Vec2::new(1.0, 1.0), &verts));
        assert!(!point_in_convex_polygon(Vec2::new(1.2, 0.0), &verts));
    }
}
