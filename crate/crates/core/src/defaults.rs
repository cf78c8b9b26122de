//! Built-in desk-scale scene and grasp: a two-finger planar hand approaching
//! a 7 cm square puck from the left.
//!
//! Geometry is chosen so the goal grasp wraps the puck with the fingertips
//! just grazing its top and bottom faces: settling at the goal exerts almost
//! no force, while any placement error produces a clear torque signature.

use crate::env::{EpisodeConfig, GraspPose, GraspSpec};
use crate::math::{Pose2, Vec2};
use crate::scene::Scene;
use crate::sim::{BaseDof, FingerSpec, HandSpec, LinkSpec, ObjectBody, SimConfig, TableFriction};

/// 7 cm square puck, 0.4 kg, centered at the origin.
pub fn desk_object() -> ObjectBody {
    let half = 0.035;
    let mass = 0.4;
    // uniform square plate: I = m (w^2 + h^2) / 12
    let inertia = mass * (4.0 * half * half + 4.0 * half * half) / 12.0;
    ObjectBody {
        shape: vec![
            Vec2::new(-half, -half),
            Vec2::new(half, -half),
            Vec2::new(half, half),
            Vec2::new(-half, half),
        ],
        pose: Pose2::identity(),
        velocity: Vec2::ZERO,
        omega: 0.0,
        mass,
        inertia,
        table_friction: TableFriction {
            damping: 8.0,
            stiction_speed: 1e-3,
        },
    }
}

/// Two fingers of two links each (7 actuated DoF with the base).
pub fn desk_hand() -> HandSpec {
    let link1 = LinkSpec {
        length: 0.05,
        radius: 0.008,
        limits: [-0.9, 0.9],
    };
    let link2 = LinkSpec {
        length: 0.05,
        radius: 0.008,
        limits: [-1.1, 1.1],
    };
    HandSpec {
        base: [
            BaseDof {
                limits: [-0.40, 0.20],
            },
            BaseDof {
                limits: [-0.30, 0.30],
            },
            BaseDof {
                limits: [-1.0, 1.0],
            },
        ],
        fingers: vec![
            FingerSpec {
                attach: Vec2::new(0.0, 0.05),
                links: vec![link1, link2],
            },
            FingerSpec {
                attach: Vec2::new(0.0, -0.05),
                links: vec![link1, link2],
            },
        ],
        palm_polygon: vec![
            Vec2::new(-0.025, -0.055),
            Vec2::new(0.0, -0.055),
            Vec2::new(0.0, 0.055),
            Vec2::new(-0.025, 0.055),
        ],
        palm_radius: 0.006,
        palm_reference: Vec2::ZERO,
    }
}

pub fn desk_scene() -> Scene {
    Scene {
        object: desk_object(),
        hand: desk_hand(),
        sim: SimConfig::default(),
    }
}

/// Pre-grasp 9 cm left of the puck face with fingers open; goal grasp wraps
/// the puck with the palm reference 5.5 cm left of its center.
pub fn desk_grasp() -> GraspSpec {
    GraspSpec {
        pre_grasp: GraspPose {
            base: Pose2::new(-0.125, 0.0, 0.0),
            joints: vec![0.6, -0.2, -0.6, 0.2],
        },
        goal_grasp: GraspPose {
            base: Pose2::new(-0.055, 0.0, 0.0),
            joints: vec![0.1, -0.363, -0.1, 0.363],
        },
        goal_palm: Vec2::new(-0.055, 0.0),
    }
}

pub fn desk_episode() -> EpisodeConfig {
    EpisodeConfig::default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_scene_is_valid() {
        desk_scene().validate().unwrap();
    }

    #[test]
    fn desk_grasp_joints_match_hand() {
        let scene = desk_scene();
        let grasp = desk_grasp();
        assert_eq!(grasp.pre_grasp.joints.len(), scene.hand.num_joints());
        assert_eq!(grasp.goal_grasp.joints.len(), scene.hand.num_joints());
    }
}
