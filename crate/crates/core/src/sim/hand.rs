//! Articulated planar hand: kinematics, collision geometry, Jacobians.
//!
//! DoF ordering everywhere is `[base_x, base_y, base_theta, finger joints in
//! declaration order]`. Finger links and palm edges form the hand's collision
//! capsules; each carries a `link_id` used to map contact reactions back into
//! joint coordinates.

use crate::math::{angle_diff, wrap_angle, Pose2, Vec2};
use crate::sim::object::validate_convex_polygon;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// One revolute link of a finger chain.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSpec {
    /// Link length, meters.
    pub length: f64,
    /// Capsule collision radius, meters.
    pub radius: f64,
    /// Joint angle limits `[lo, hi]`, radians.
    pub limits: [f64; 2],
}

/// A finger: a chain of revolute links hung off a palm attachment point.
///
/// Joint angle zero points the link along the base frame's +x axis; each
/// joint angle is relative to the previous link. The chain base rotates
/// rigidly with the hand base.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FingerSpec {
    /// Attachment point on the palm, body frame.
    pub attach: Vec2,
    pub links: Vec<LinkSpec>,
}

/// Limits for one actuated base DoF.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDof {
    pub limits: [f64; 2],
}

/// Static description of the hand.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HandSpec {
    /// Actuated base DoF descriptors in `(x, y, theta)` order.
    pub base: [BaseDof; 3],
    pub fingers: Vec<FingerSpec>,
    /// Palm outline, body frame, counterclockwise convex polygon.
    pub palm_polygon: Vec<Vec2>,
    /// Collision radius of the palm outline capsules.
    pub palm_radius: f64,
    /// Palm reference point (body frame); its world position is the palm
    /// point used by the grasp reward.
    pub palm_reference: Vec2,
}

/// Where a collision capsule lives on the hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkKind {
    /// `finger` and `link` index into [`HandSpec::fingers`].
    FingerLink { finger: usize, link: usize },
    /// Edge index into [`HandSpec::palm_polygon`].
    PalmEdge { edge: usize },
}

/// A world-frame collision capsule of the hand.
#[derive(Debug, Clone, Copy)]
pub struct CollisionSegment {
    pub a: Vec2,
    pub b: Vec2,
    pub radius: f64,
    pub link_id: usize,
}

impl HandSpec {
    pub fn validate(&self) -> Result<()> {
        if self.fingers.is_empty() {
            return Err(Error::config("hand needs at least one finger"));
        }
        for dof in &self.base {
            if !(dof.limits[0] < dof.limits[1]) {
                return Err(Error::config("base DoF limits must satisfy lo < hi"));
            }
        }
        for f in &self.fingers {
            if f.links.is_empty() {
                return Err(Error::config("finger needs at least one link"));
            }
            for l in &f.links {
                if !(l.length > 0.0) {
                    return Err(Error::config("link length must be > 0"));
                }
                if !(l.radius > 0.0) {
                    return Err(Error::config("link radius must be > 0"));
                }
                if !(l.limits[0] < l.limits[1]) {
                    return Err(Error::config("joint limits must satisfy lo < hi"));
                }
            }
        }
        if !(self.palm_radius > 0.0) {
            return Err(Error::config("palm radius must be > 0"));
        }
        validate_convex_polygon(&self.palm_polygon)?;
        Ok(())
    }

    /// Number of finger joints (= length of the joint-angle vector `q`).
    pub fn num_joints(&self) -> usize {
        self.fingers.iter().map(|f| f.links.len()).sum()
    }

    /// Number of actuated DoF: 3 base DoF plus all finger joints.
    pub fn num_dof(&self) -> usize {
        3 + self.num_joints()
    }

    pub fn num_finger_links(&self) -> usize {
        self.num_joints()
    }

    /// Total collision capsules: finger links then palm edges.
    pub fn num_collision_segments(&self) -> usize {
        self.num_finger_links() + self.palm_polygon.len()
    }

    pub fn link_kind(&self, link_id: usize) -> LinkKind {
        let mut idx = link_id;
        for (fi, f) in self.fingers.iter().enumerate() {
            if idx < f.links.len() {
                return LinkKind::FingerLink {
                    finger: fi,
                    link: idx,
                };
            }
            idx -= f.links.len();
        }
        LinkKind::PalmEdge { edge: idx }
    }

    /// Joint limits flattened in DoF order (finger joints only).
    pub fn joint_limits(&self) -> Vec<[f64; 2]> {
        self.fingers
            .iter()
            .flat_map(|f| f.links.iter().map(|l| l.limits))
            .collect()
    }

    /// Limits for every actuated DoF, base first.
    pub fn dof_limits(&self) -> Vec<[f64; 2]> {
        let mut out: Vec<[f64; 2]> = self.base.iter().map(|d| d.limits).collect();
        out.extend(self.joint_limits());
        out
    }

    /// Which joint DoF index (into the full DoF vector) drives `finger`'s
    /// `link`-th joint.
    pub fn dof_index(&self, finger: usize, link: usize) -> usize {
        let before: usize = self.fingers[..finger].iter().map(|f| f.links.len()).sum();
        3 + before + link
    }
}

/// Dynamic hand state under PD position control.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HandState {
    pub base_pose: Pose2,
    /// Base velocities `(vx, vy, omega)`.
    pub base_vel: [f64; 3],
    /// Finger joint angles, radians.
    pub q: Vec<f64>,
    /// Finger joint velocities, rad/s.
    pub qdot: Vec<f64>,
    /// Commanded positions per actuated DoF, base first.
    pub targets: Vec<f64>,
}

impl HandState {
    /// Initial state at a given base pose and joint configuration, at rest,
    /// with targets holding the current position.
    pub fn at_rest(spec: &HandSpec, base_pose: Pose2, q: Vec<f64>) -> Result<Self> {
        if q.len() != spec.num_joints() {
            return Err(Error::config(format!(
                "joint vector length {} does not match hand spec ({} joints)",
                q.len(),
                spec.num_joints()
            )));
        }
        let mut targets = vec![base_pose.x, base_pose.y, base_pose.theta];
        targets.extend_from_slice(&q);
        Ok(HandState {
            base_pose,
            base_vel: [0.0; 3],
            qdot: vec![0.0; q.len()],
            q,
            targets,
        })
    }

    /// Full DoF position vector, base first.
    pub fn dof_positions(&self) -> Vec<f64> {
        let mut out = vec![self.base_pose.x, self.base_pose.y, self.base_pose.theta];
        out.extend_from_slice(&self.q);
        out
    }

    /// Full DoF velocity vector, base first.
    pub fn dof_velocities(&self) -> Vec<f64> {
        let mut out = self.base_vel.to_vec();
        out.extend_from_slice(&self.qdot);
        out
    }

    pub fn is_finite(&self) -> bool {
        self.base_pose.is_finite()
            && self.base_vel.iter().all(|v| v.is_finite())
            && self.q.iter().all(|v| v.is_finite())
            && self.qdot.iter().all(|v| v.is_finite())
            && self.targets.iter().all(|v| v.is_finite())
    }
}

/// Forward-kinematics output: one world-frame segment per finger link, the
/// pivot position of every joint, and the palm reference point.
#[derive(Debug, Clone)]
pub struct FkResult {
    /// Finger link segments `(a, b)` in link-id order.
    pub segments: Vec<(Vec2, Vec2)>,
    /// Joint pivot world positions, `joint_origins[finger][link]`.
    pub joint_origins: Vec<Vec<Vec2>>,
    pub palm_point: Vec2,
}

/// Compute world-frame link segments and the palm point for a configuration.
pub fn forward_kinematics(spec: &HandSpec, base: Pose2, q: &[f64]) -> Result<FkResult> {
    if q.len() != spec.num_joints() {
        return Err(Error::config(format!(
            "joint vector length {} does not match hand spec ({} joints)",
            q.len(),
            spec.num_joints()
        )));
    }
    let mut segments = Vec::with_capacity(spec.num_finger_links());
    let mut joint_origins = Vec::with_capacity(spec.fingers.len());
    let mut qi = 0;
    for finger in &spec.fingers {
        let mut origins = Vec::with_capacity(finger.links.len());
        let mut p = base.transform(finger.attach);
        let mut angle = base.theta;
        for link in &finger.links {
            origins.push(p);
            angle += q[qi];
            qi += 1;
            let end = p + Vec2::new(angle.cos(), angle.sin()) * link.length;
            segments.push((p, end));
            p = end;
        }
        joint_origins.push(origins);
    }
    Ok(FkResult {
        segments,
        joint_origins,
        palm_point: base.transform(spec.palm_reference),
    })
}

/// All collision capsules (finger links then palm edges) in world frame.
pub fn collision_segments(spec: &HandSpec, fk: &FkResult, base: Pose2) -> Vec<CollisionSegment> {
    let mut out = Vec::with_capacity(spec.num_collision_segments());
    let mut link_id = 0;
    let mut qi = 0;
    for finger in &spec.fingers {
        for link in &finger.links {
            let (a, b) = fk.segments[qi];
            out.push(CollisionSegment {
                a,
                b,
                radius: link.radius,
                link_id,
            });
            link_id += 1;
            qi += 1;
        }
    }
    let n = spec.palm_polygon.len();
    for e in 0..n {
        let a = base.transform(spec.palm_polygon[e]);
        let b = base.transform(spec.palm_polygon[(e + 1) % n]);
        out.push(CollisionSegment {
            a,
            b,
            radius: spec.palm_radius,
            link_id,
        });
        link_id += 1;
    }
    out
}

/// Jacobian row of a world point attached to collision capsule `link_id`:
/// per-DoF partial derivatives of the point's world position.
///
/// Every capsule moves rigidly with the base; finger-link points additionally
/// depend on the joints at or before their link in the chain.
pub fn point_jacobian(
    spec: &HandSpec,
    fk: &FkResult,
    base: Pose2,
    link_id: usize,
    point: Vec2,
) -> Vec<Vec2> {
    let n = spec.num_dof();
    let mut jac = vec![Vec2::ZERO; n];
    jac[0] = Vec2::new(1.0, 0.0);
    jac[1] = Vec2::new(0.0, 1.0);
    jac[2] = (point - base.translation()).perp();
    if let LinkKind::FingerLink { finger, link } = spec.link_kind(link_id) {
        for j in 0..=link {
            let pivot = fk.joint_origins[finger][j];
            jac[spec.dof_index(finger, j)] = (point - pivot).perp();
        }
    }
    jac
}

/// Velocity of a world point attached to capsule `link_id`.
pub fn point_velocity(
    spec: &HandSpec,
    fk: &FkResult,
    state: &HandState,
    link_id: usize,
    point: Vec2,
) -> Vec2 {
    let jac = point_jacobian(spec, fk, state.base_pose, link_id, point);
    let vel = state.dof_velocities();
    let mut v = Vec2::ZERO;
    for (j, qd) in jac.iter().zip(vel.iter()) {
        v = v + *j * *qd;
    }
    v
}

/// Clamp a full DoF target vector into the hand's limits.
pub fn clamp_targets(spec: &HandSpec, targets: &mut [f64]) {
    for (t, lim) in targets.iter_mut().zip(spec.dof_limits()) {
        *t = t.clamp(lim[0], lim[1]);
    }
}

/// Position error `target - pos` per DoF; the base heading uses the wrapped
/// angular difference.
pub fn dof_errors(spec: &HandSpec, positions: &[f64], targets: &[f64]) -> Vec<f64> {
    let mut err = Vec::with_capacity(spec.num_dof());
    for i in 0..spec.num_dof() {
        if i == 2 {
            err.push(angle_diff(targets[i], positions[i]));
        } else {
            err.push(targets[i] - positions[i]);
        }
    }
    err
}

/// Wrap the base heading after integration.
pub fn wrap_base_heading(state: &mut HandState) {
    state.base_pose.theta = wrap_angle(state.base_pose.theta);
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn single_link_spec() -> HandSpec {
        HandSpec {
            base: [
                BaseDof { limits: [-1.0, 1.0] },
                BaseDof { limits: [-1.0, 1.0] },
                BaseDof { limits: [-3.0, 3.0] },
            ],
            fingers: vec![FingerSpec {
                attach: Vec2::ZERO,
                links: vec![LinkSpec {
                    length: 1.0,
                    radius: 0.01,
                    limits: [-3.0, 3.0],
                }],
            }],
            palm_polygon: vec![
                Vec2::new(-0.1, -0.1),
                Vec2::new(0.0, -0.1),
                Vec2::new(0.0, 0.1),
                Vec2::new(-0.1, 0.1),
            ],
            palm_radius: 0.01,
            palm_reference: Vec2::ZERO,
        }
    }

    #[test]
    fn zero_angle_chain() {
        let spec = single_link_spec();
        let fk = forward_kinematics(&spec, Pose2::identity(), &[0.0]).unwrap();
        let (a, b) = fk.segments[0];
        assert_eq!(a, Vec2::new(0.0, 0.0));
        assert_eq!(b, Vec2::new(1.0, 0.0));
    }

    #[test]
    fn quarter_turn() {
        let spec = single_link_spec();
        let fk = forward_kinematics(&spec, Pose2::identity(), &[FRAC_PI_2]).unwrap();
        let (a, b) = fk.segments[0];
        assert_relative_eq!(a.x, 0.0, epsilon = 1e-12);
        assert_relative_eq!(b.x, 0.0, epsilon = 1e-12);
        assert_relative_eq!(b.y, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn joint_length_mismatch_is_config_error() {
        let spec = single_link_spec();
        assert!(forward_kinematics(&spec, Pose2::identity(), &[0.0, 0.0]).is_err());
    }

    /// Independent oracle: compose 2-D homogeneous transforms link by link.
    fn fk_oracle(spec: &HandSpec, base: Pose2, q: &[f64]) -> Vec<(Vec2, Vec2)> {
        fn mat_mul(a: [[f64; 3]; 3], b: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
            let mut m = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        m[i][j] += a[i][k] * b[k][j];
                    }
                }
            }
            m
        }
        fn rot_trans(theta: f64, tx: f64, ty: f64) -> [[f64; 3]; 3] {
            let (s, c) = theta.sin_cos();
            [[c, -s, tx], [s, c, ty], [0.0, 0.0, 1.0]]
        }
        fn apply(m: [[f64; 3]; 3], p: Vec2) -> Vec2 {
            Vec2::new(
                m[0][0] * p.x + m[0][1] * p.y + m[0][2],
                m[1][0] * p.x + m[1][1] * p.y + m[1][2],
            )
        }
        let base_m = rot_trans(base.theta, base.x, base.y);
        let mut segs = Vec::new();
        let mut qi = 0;
        for finger in &spec.fingers {
            let mut m = mat_mul(base_m, rot_trans(0.0, finger.attach.x, finger.attach.y));
            for link in &finger.links {
                m = mat_mul(m, rot_trans(q[qi], 0.0, 0.0));
                qi += 1;
                let a = apply(m, Vec2::ZERO);
                let b = apply(m, Vec2::new(link.length, 0.0));
                segs.push((a, b));
                m = mat_mul(m, rot_trans(0.0, link.length, 0.0));
            }
        }
        segs
    }

    proptest! {
        #[test]
        fn fk_matches_transform_composition_oracle(
            bx in -0.5f64..0.5, by in -0.5f64..0.5, bth in -3.0f64..3.0,
            q in proptest::collection::vec(-1.5f64..1.5, 4),
            a1x in -0.1f64..0.1, a1y in -0.1f64..0.1,
            l in proptest::collection::vec(0.02f64..0.3, 4),
        ) {
            let spec = HandSpec {
                base: [
                    BaseDof { limits: [-1.0, 1.0] },
                    BaseDof { limits: [-1.0, 1.0] },
                    BaseDof { limits: [-3.2, 3.2] },
                ],
                fingers: vec![
                    FingerSpec {
                        attach: Vec2::new(a1x, a1y),
                        links: vec![
                            LinkSpec { length: l[0], radius: 0.01, limits: [-2.0, 2.0] },
                            LinkSpec { length: l[1], radius: 0.01, limits: [-2.0, 2.0] },
                        ],
                    },
                    FingerSpec {
                        attach: Vec2::new(-a1x, -a1y),
                        links: vec![
                            LinkSpec { length: l[2], radius: 0.01, limits: [-2.0, 2.0] },
                            LinkSpec { length: l[3], radius: 0.01, limits: [-2.0, 2.0] },
                        ],
                    },
                ],
                palm_polygon: vec![
                    Vec2::new(-0.1, -0.1),
                    Vec2::new(0.0, -0.1),
                    Vec2::new(0.0, 0.1),
                    Vec2::new(-0.1, 0.1),
                ],
                palm_radius: 0.01,
                palm_reference: Vec2::ZERO,
            };
            let base = Pose2::new(bx, by, bth);
            let fk = forward_kinematics(&spec, base, &q).unwrap();
            let oracle = fk_oracle(&spec, base, &q);
            for ((a, b), (oa, ob)) in fk.segments.iter().zip(oracle.iter()) {
                prop_assert!((*a - *oa).norm() <= 1e-9);
                prop_assert!((*b - *ob).norm() <= 1e-9);
            }
        }
    }
}
