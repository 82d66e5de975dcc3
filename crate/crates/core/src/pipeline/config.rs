use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Every tunable of the dataset and evaluation pipelines, as one flat table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    // Cameras and rendering.
    pub n_views: usize,
    pub image_size: u32,
    pub fov_deg: f64,
    pub camera_radius: f64,
    pub elevations_deg: Vec<f64>,
    // Edge extraction.
    pub sigma: f64,
    pub t_low: f64,
    pub t_high: f64,
    // Wireframe.
    pub epsilon: f64,
    pub t_samples: usize,
    pub jitter_sigma: f64,
    pub drop_rate: f64,
    pub clutter: usize,
    // Geometry.
    pub sagitta: f64,
    pub band_fraction: f64,
    // Metrics.
    pub eta: u32,
    pub lambda: f64,
    pub cd_samples: usize,
    pub normalization: String,
    // Generator.
    pub gen_max_bodies: usize,
    pub gen_max_curves: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            seed: 0,
            n_views: crate::imaging::DEFAULT_VIEWS,
            image_size: crate::imaging::DEFAULT_IMAGE_SIZE,
            fov_deg: 40.0,
            camera_radius: 2.0,
            elevations_deg: vec![20.0, 40.0, 60.0],
            sigma: crate::imaging::DEFAULT_SIGMA,
            t_low: crate::imaging::DEFAULT_T_LOW,
            t_high: crate::imaging::DEFAULT_T_HIGH,
            epsilon: crate::wireframe::DEFAULT_EPSILON,
            t_samples: crate::wireframe::DEFAULT_T_SAMPLES,
            jitter_sigma: 1.0,
            drop_rate: 0.05,
            clutter: 20,
            sagitta: crate::geomkern::DEFAULT_SAGITTA,
            band_fraction: crate::geomkern::DEFAULT_BAND_FRACTION,
            eta: crate::metrics::DEFAULT_ETA,
            lambda: crate::metrics::DEFAULT_LAMBDA,
            cd_samples: crate::metrics::DEFAULT_CD_SAMPLES,
            normalization: "unit_diagonal".into(),
            gen_max_bodies: 4,
            gen_max_curves: 4,
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat config serializes")
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Argument(m));
        if self.normalization != "unit_diagonal" {
            return bad(format!("unknown normalization {:?}", self.normalization));
        }
        if !(self.t_low > 0.0 && self.t_low <= self.t_high) {
            return bad(format!("thresholds {} / {} out of order", self.t_low, self.t_high));
        }
        if self.elevations_deg.is_empty() || self.n_views % self.elevations_deg.len() != 0 {
            return bad(format!(
                "{} views cannot be split over {} elevations",
                self.n_views,
                self.elevations_deg.len()
            ));
        }
        if self.cd_samples == 0 || self.image_size == 0 {
            return bad("sample count and image size must be positive".into());
        }
        if !(1..=crate::seqmodel::N_MAX / 8).contains(&self.gen_max_bodies) || !(1..=4).contains(&self.gen_max_curves) {
            return bad("generator limits out of range".into());
        }
        Ok(())
    }

    pub fn elevations(&self) -> Vec<f64> {
        self.elevations_deg.iter().map(|d| d.to_radians()).collect()
    }

    pub fn fov(&self) -> f64 {
        self.fov_deg.to_radians()
    }
}
