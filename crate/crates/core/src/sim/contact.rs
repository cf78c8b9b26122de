//! Capsule-vs-convex-polygon contact detection and penalty contact forces.

use crate::math::{closest_points_segment_segment, Vec2};
use crate::sim::hand::CollisionSegment;
use crate::sim::object::{point_in_convex_polygon, ObjectBody};
use crate::sim::SimConfig;

/// A single hand-object contact.
///
/// `normal` points from the object surface toward the hand capsule axis;
/// `depth` is how far the capsule surface has sunk past the polygon.
#[derive(Debug, Clone, Copy)]
pub struct ContactPoint {
    /// World position on (or, when deeply penetrating, projected onto) the
    /// object surface.
    pub position: Vec2,
    pub normal: Vec2,
    pub depth: f64,
    pub link_id: usize,
    pub normal_force: f64,
    pub tangent_force: f64,
}

/// Signed distance from a segment to a convex polygon (world-frame vertices),
/// together with the closest point on the polygon boundary and the outward
/// contact normal (polygon toward segment).
///
/// Positive distance: segment axis outside the polygon. Negative: the axis
/// overlaps the polygon; the magnitude is the minimal translation along the
/// returned normal that separates them.
fn segment_polygon_signed_distance(a: Vec2, b: Vec2, verts: &[Vec2]) -> (f64, Vec2, Vec2) {
    let n = verts.len();
    let mut best = (f64::INFINITY, Vec2::ZERO, Vec2::ZERO); // (dist, on_seg, on_poly)
    for i in 0..n {
        let (p_seg, p_poly, d) =
            closest_points_segment_segment(a, b, verts[i], verts[(i + 1) % n]);
        if d < best.0 {
            best = (d, p_seg, p_poly);
        }
    }
    let overlapping =
        best.0 <= 1e-12 || point_in_convex_polygon(a, verts) || point_in_convex_polygon(b, verts);

    if !overlapping {
        let (dist, p_seg, p_poly) = best;
        // Closest-feature normal; for a vertex region this is the direction
        // from the vertex to the nearest point on the segment axis.
        let normal = (p_seg - p_poly)
            .try_normalize(1e-12)
            .unwrap_or(Vec2::new(1.0, 0.0));
        return (dist, p_poly, normal);
    }

    // Overlap: separating-axis search over polygon edge normals plus the
    // segment perpendicular gives the minimal translation vector.
    let seg_mid = (a + b) * 0.5;
    let mut centroid = Vec2::ZERO;
    for v in verts {
        centroid = centroid + *v;
    }
    centroid = centroid * (1.0 / n as f64);

    let mut axes: Vec<Vec2> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let e = verts[(i + 1) % n] - verts[i];
        if let Some(nrm) = e.perp().try_normalize(1e-12) {
            axes.push(-nrm); // ccw polygon: -perp(edge) is the outward normal
        }
    }
    if let Some(perp) = (b - a).perp().try_normalize(1e-12) {
        axes.push(perp);
    }

    let mut min_overlap = f64::INFINITY;
    let mut mtv = Vec2::new(1.0, 0.0);
    for axis in axes {
        // orient from polygon toward segment
        let axis = if (seg_mid - centroid).dot(axis) < 0.0 {
            -axis
        } else {
            axis
        };
        let (mut pmin, mut pmax) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in verts {
            let t = v.dot(axis);
            pmin = pmin.min(t);
            pmax = pmax.max(t);
        }
        let (sa, sb) = (a.dot(axis), b.dot(axis));
        let (smin, smax) = (sa.min(sb), sa.max(sb));
        let overlap = pmax.min(smax) - pmin.max(smin);
        if overlap < min_overlap {
            min_overlap = overlap;
            mtv = axis;
        }
    }
    let min_overlap = min_overlap.max(0.0);

    // Deepest segment point along -mtv, pushed back onto the polygon surface.
    let (da, db) = (a.dot(mtv), b.dot(mtv));
    let deepest = if (da - db).abs() <= 1e-12 {
        seg_mid
    } else if da < db {
        a
    } else {
        b
    };
    let surface_point = deepest + mtv * min_overlap;
    (-min_overlap, surface_point, mtv)
}

/// Find every contact between hand capsules and the object polygon.
///
/// One contact per capsule whose surface reaches past the polygon surface
/// (capsule-axis signed distance < radius). Forces are left at zero; see
/// [`contact_forces`].
pub fn detect_contacts(segments: &[CollisionSegment], object: &ObjectBody) -> Vec<ContactPoint> {
    let verts = object.world_vertices();
    let mut out = Vec::new();
    for seg in segments {
        let (dist, on_poly, normal) = segment_polygon_signed_distance(seg.a, seg.b, &verts);
        if dist < seg.radius {
            out.push(ContactPoint {
                position: on_poly,
                normal,
                depth: seg.radius - dist,
                link_id: seg.link_id,
                normal_force: 0.0,
                tangent_force: 0.0,
            });
        }
    }
    out
}

/// Relative motion at a contact, from the hand's side.
#[derive(Debug, Clone, Copy)]
pub struct ContactVelocity {
    /// Closing speed along the contact normal (positive when the capsule
    /// approaches the object).
    pub approach_speed: f64,
    /// Tangential slip speed of the capsule relative to the object, along
    /// `normal.perp()`.
    pub slip_speed: f64,
}

/// Penalty contact law: spring-damper normal force with a Coulomb-clamped
/// viscous tangential force.
pub fn contact_forces(
    contacts: &[ContactPoint],
    velocities: &[ContactVelocity],
    cfg: &SimConfig,
) -> Vec<(f64, f64)> {
    contacts
        .iter()
        .zip(velocities)
        .map(|(c, v)| {
            let normal = (cfg.kn * c.depth + cfg.kd_contact * v.approach_speed).max(0.0);
            let bound = cfg.mu * normal;
            let tangent = -(cfg.kt_contact * v.slip_speed).clamp(-bound, bound);
            (normal, tangent)
        })
        .collect()
}
