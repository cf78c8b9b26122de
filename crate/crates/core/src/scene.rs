//! Scene description: object, hand, and simulator parameters.
//!
//! Scenes are stored as JSON with SI units throughout; unknown keys are
//! rejected at load time.

use crate::sim::{HandSpec, ObjectBody, SimConfig};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// A complete simulation scene. `object.pose` is the nominal (unperturbed)
/// placement that grasp specifications are anchored to.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub object: ObjectBody,
    pub hand: HandSpec,
    pub sim: SimConfig,
}

impl Scene {
    pub fn validate(&self) -> Result<()> {
        self.object.validate()?;
        self.hand.validate()?;
        self.sim.validate()?;
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let scene: Scene = serde_json::from_str(text)
            .map_err(|e| Error::config(format!("invalid scene file: {e}")))?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::config(format!("cannot read scene file {}: {e}", path.display()))
        })?;
        Self::from_json(&text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defaults;

    #[test]
    fn default_scene_round_trips() {
        let scene = defaults::desk_scene();
        scene.validate().unwrap();
        let json = scene.to_json_pretty();
        let back = Scene::from_json(&json).unwrap();
        assert_eq!(back.object.mass, scene.object.mass);
        assert_eq!(back.hand.num_dof(), scene.hand.num_dof());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let scene = defaults::desk_scene();
        let mut v: serde_json::Value = serde_json::from_str(&scene.to_json_pretty()).unwrap();
        v.as_object_mut()
            .unwrap()
            .insert("gravity".into(), serde_json::json!(9.81));
        let err = Scene::from_json(&v.to_string());
        assert!(err.is_err());
        assert!(format!("{}", err.unwrap_err()).contains("gravity"));
    }
}
