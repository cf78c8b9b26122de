//! Deterministic planar rigid-body simulator.
//!
//! One control tick runs a fixed number of semi-implicit Euler substeps. Each
//! substep: PD efforts on every hand DoF, capsule/polygon contact detection,
//! penalty contact forces applied to the object and reacted onto the hand via
//! Jacobian-transpose, then integration with table friction. In-plane gravity
//! is zero. The step is a pure function of `(world, targets, config)`:
//! identical inputs give bitwise-identical outputs.

pub mod contact;
pub mod hand;
pub mod object;

pub use contact::{contact_forces, detect_contacts, ContactPoint, ContactVelocity};
pub use hand::{
    collision_segments, forward_kinematics, BaseDof, CollisionSegment, FingerSpec, FkResult,
    HandSpec, HandState, LinkKind, LinkSpec,
};
pub use object::{ObjectBody, TableFriction};

use crate::math::{wrap_angle, Vec2};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Per-DoF-group scalar: base translation (x, y), base rotation (theta), and
/// finger joints form the three actuator groups.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DofGroups {
    pub base_translation: f64,
    pub base_rotation: f64,
    pub finger: f64,
}

impl DofGroups {
    pub fn new(base_translation: f64, base_rotation: f64, finger: f64) -> Self {
        DofGroups {
            base_translation,
            base_rotation,
            finger,
        }
    }

    /// Value for DoF index `i` in the full `[x, y, theta, joints...]` vector.
    pub fn for_dof(&self, i: usize) -> f64 {
        match i {
            0 | 1 => self.base_translation,
            2 => self.base_rotation,
            _ => self.finger,
        }
    }

    pub fn all_positive(&self) -> bool {
        self.base_translation > 0.0 && self.base_rotation > 0.0 && self.finger > 0.0
    }

    pub fn max(&self) -> f64 {
        self.base_translation.max(self.base_rotation).max(self.finger)
    }
}

/// Simulator gains and integration parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    /// Substep duration, seconds.
    pub dt: f64,
    /// Substeps per control tick.
    pub substeps_per_control: u32,
    /// Contact normal stiffness, N/m.
    pub kn: f64,
    /// Contact normal damping, N·s/m.
    pub kd_contact: f64,
    /// Tangential slip gain feeding the Coulomb clamp, N·s/m.
    pub kt_contact: f64,
    /// Coulomb friction coefficient.
    pub mu: f64,
    /// PD proportional gains per DoF group.
    pub kp: DofGroups,
    /// PD derivative gains per DoF group.
    pub kd: DofGroups,
    /// Actuator saturation per DoF group (N for translation, N·m otherwise).
    pub tau_max: DofGroups,
    /// Effective inertia per DoF group (kg or kg·m²): each DoF is a damped
    /// double integrator driven by PD effort plus contact reaction.
    pub dof_inertia: DofGroups,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            dt: 1e-3,
            substeps_per_control: 20,
            kn: 5000.0,
            kd_contact: 50.0,
            kt_contact: 100.0,
            mu: 0.6,
            kp: DofGroups::new(200.0, 50.0, 100.0),
            kd: DofGroups::new(20.0, 5.0, 5.0),
            tau_max: DofGroups::new(50.0, 20.0, 5.0),
            dof_inertia: DofGroups::new(1.0, 0.05, 0.005),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) {
            return Err(Error::config("dt must be > 0"));
        }
        if self.substeps_per_control < 1 {
            return Err(Error::config("substeps_per_control must be >= 1"));
        }
        for (name, v) in [
            ("kn", self.kn),
            ("kd_contact", self.kd_contact),
            ("kt_contact", self.kt_contact),
            ("mu", self.mu),
        ] {
            if !(v > 0.0) {
                return Err(Error::config(format!("{name} must be > 0")));
            }
        }
        for (name, g) in [
            ("kp", &self.kp),
            ("kd", &self.kd),
            ("tau_max", &self.tau_max),
            ("dof_inertia", &self.dof_inertia),
        ] {
            if !g.all_positive() {
                return Err(Error::config(format!("{name} entries must be > 0")));
            }
        }
        // Semi-implicit Euler stability of the per-DoF damping term.
        for i in [0usize, 2, 3] {
            if self.dt * self.kd.for_dof(i) / self.dof_inertia.for_dof(i) >= 2.0 {
                return Err(Error::config(
                    "dt * kd / dof_inertia must stay below 2 for stable integration",
                ));
            }
        }
        Ok(())
    }
}

/// Full simulator state for one world.
#[derive(Debug, Clone)]
pub struct WorldState {
    pub object: ObjectBody,
    pub hand: HandState,
    /// Simulated time, seconds.
    pub time: f64,
    /// Contacts from the last substep of the most recent control tick.
    pub contacts: Vec<ContactPoint>,
    /// Sensed actuator effort per DoF: the clamped PD effort from the last
    /// substep. This is the torque-feedback signal `F`.
    pub sensed_torques: Vec<f64>,
}

impl WorldState {
    pub fn new(object: ObjectBody, hand: HandState, n_dof: usize) -> Self {
        WorldState {
            object,
            hand,
            time: 0.0,
            contacts: Vec::new(),
            sensed_torques: vec![0.0; n_dof],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.object.is_finite()
            && self.hand.is_finite()
            && self.time.is_finite()
            && self.sensed_torques.iter().all(|t| t.is_finite())
    }
}

/// Clamped PD effort per actuated DoF.
///
/// `effort_i = clamp(kp * (target_i - pos_i) - kd * vel_i, ±tau_max)`. This
/// vector is what the torque sensors report after the step.
pub fn pd_torques(spec: &HandSpec, hand: &HandState, targets: &[f64], cfg: &SimConfig) -> Vec<f64> {
    let positions = hand.dof_positions();
    let velocities = hand.dof_velocities();
    let errors = hand::dof_errors(spec, &positions, targets);
    (0..spec.num_dof())
        .map(|i| {
            let raw = cfg.kp.for_dof(i) * errors[i] - cfg.kd.for_dof(i) * velocities[i];
            let lim = cfg.tau_max.for_dof(i);
            raw.clamp(-lim, lim)
        })
        .collect()
}

/// Advance the world by one control tick.
///
/// Errors with [`Error::SimDiverged`] if any state component becomes
/// non-finite; the caller should abort the episode as a failure.
pub fn step(
    world: &mut WorldState,
    targets: &[f64],
    spec: &HandSpec,
    cfg: &SimConfig,
) -> Result<()> {
    if targets.len() != spec.num_dof() {
        return Err(Error::config(format!(
            "target vector length {} does not match {} DoF",
            targets.len(),
            spec.num_dof()
        )));
    }
    let mut targets = targets.to_vec();
    hand::clamp_targets(spec, &mut targets);
    world.hand.targets = targets.clone();

    let n_dof = spec.num_dof();
    let dof_limits = spec.dof_limits();

    for _ in 0..cfg.substeps_per_control {
        let efforts = pd_torques(spec, &world.hand, &targets, cfg);

        let fk = forward_kinematics(spec, world.hand.base_pose, &world.hand.q)?;
        let segments = collision_segments(spec, &fk, world.hand.base_pose);
        let mut contacts = detect_contacts(&segments, &world.object);

        // Contact kinematics and penalty forces.
        let velocities: Vec<ContactVelocity> = contacts
            .iter()
            .map(|c| {
                let v_hand =
                    hand::point_velocity(spec, &fk, &world.hand, c.link_id, c.position);
                let v_obj = world.object.velocity_at(c.position);
                let v_rel = v_hand - v_obj;
                ContactVelocity {
                    approach_speed: -v_rel.dot(c.normal),
                    slip_speed: v_rel.dot(c.normal.perp()),
                }
            })
            .collect();
        let forces = contact_forces(&contacts, &velocities, cfg);

        let mut object_force = Vec2::ZERO;
        let mut object_torque = 0.0;
        let mut reaction = vec![0.0; n_dof];
        for (c, &(fn_, ft)) in contacts.iter_mut().zip(forces.iter()) {
            c.normal_force = fn_;
            c.tangent_force = ft;
            let f_hand = c.normal * fn_ + c.normal.perp() * ft;
            // Equal and opposite on the object, applied at the contact point.
            object_force = object_force - f_hand;
            let r = c.position - world.object.pose.translation();
            object_torque += r.cross(-f_hand);
            let jac = hand::point_jacobian(spec, &fk, world.hand.base_pose, c.link_id, c.position);
            for (tau, j) in reaction.iter_mut().zip(jac.iter()) {
                *tau += j.dot(f_hand);
            }
        }

        // Hand DoF integration (semi-implicit Euler with hard joint stops).
        let mut pos = world.hand.dof_positions();
        let mut vel = world.hand.dof_velocities();
        for i in 0..n_dof {
            let acc = (efforts[i] + reaction[i]) / cfg.dof_inertia.for_dof(i);
            vel[i] += cfg.dt * acc;
            pos[i] += cfg.dt * vel[i];
            let [lo, hi] = dof_limits[i];
            if pos[i] < lo {
                pos[i] = lo;
                vel[i] = 0.0;
            } else if pos[i] > hi {
                pos[i] = hi;
                vel[i] = 0.0;
            }
        }
        world.hand.base_pose.x = pos[0];
        world.hand.base_pose.y = pos[1];
        world.hand.base_pose.theta = pos[2];
        world.hand.base_vel = [vel[0], vel[1], vel[2]];
        world.hand.q.copy_from_slice(&pos[3..]);
        world.hand.qdot.copy_from_slice(&vel[3..]);
        hand::wrap_base_heading(&mut world.hand);

        // Object integration with table friction and stiction snap.
        let obj = &mut world.object;
        let fric = obj.table_friction;
        let lin_acc = (object_force - obj.velocity * fric.damping) * (1.0 / obj.mass);
        let ang_acc =
            (object_torque - fric.damping * obj.gyration_radius_squared() * obj.omega)
                / obj.inertia;
        obj.velocity = obj.velocity + lin_acc * cfg.dt;
        obj.omega += cfg.dt * ang_acc;
        if obj.velocity.norm() < fric.stiction_speed {
            obj.velocity = Vec2::ZERO;
        }
        // Angular stiction compares rim speed at the gyration radius.
        let r_gyr = obj.gyration_radius_squared().sqrt();
        if (obj.omega * r_gyr).abs() < fric.stiction_speed {
            obj.omega = 0.0;
        }
        obj.pose.x += cfg.dt * obj.velocity.x;
        obj.pose.y += cfg.dt * obj.velocity.y;
        obj.pose.theta = wrap_angle(obj.pose.theta + cfg.dt * obj.omega);

        world.time += cfg.dt;
        world.contacts = contacts;
        world.sensed_torques = efforts;
    }

    if !world.is_finite() {
        return Err(Error::SimDiverged(format!(
            "non-finite state at t = {:.4}",
            world.time
        )));
    }
    Ok(())
}
