use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::em::{Direction, PlanePath};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceSampling {
    /// Horizontal distance uniform in `[min, max]`.
    Uniform,
    /// Position uniform over the annular sector.
    UniformArea,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DropConfig {
    pub users: usize,
    /// Horizontal distance range, m.
    pub min_distance: f64,
    pub max_distance: f64,
    /// Azimuth range, rad.
    pub azimuth_min: f64,
    pub azimuth_max: f64,
    /// Array height above the users, m.
    pub bs_height: f64,
    pub sampling: DistanceSampling,
}

impl Default for DropConfig {
    fn default() -> Self {
        DropConfig {
            users: 10,
            min_distance: 15.0,
            max_distance: 150.0,
            azimuth_min: -std::f64::consts::FRAC_PI_2,
            azimuth_max: std::f64::consts::FRAC_PI_2,
            bs_height: 10.0,
            sampling: DistanceSampling::Uniform,
        }
    }
}

impl DropConfig {
    pub fn validate(&self) -> Result<()> {
        const OP: &str = "scenario::drops";
        if self.users == 0 {
            return Err(Error::precondition(OP, "at least one user required"));
        }
        if !(self.min_distance > 0.0 && self.max_distance >= self.min_distance) {
            return Err(Error::precondition(OP, "distance range must satisfy 0 < min <= max"));
        }
        if !(self.azimuth_max >= self.azimuth_min) || !(self.bs_height >= 0.0) {
            return Err(Error::precondition(OP, "invalid azimuth range or height"));
        }
        Ok(())
    }
}

/// Generator for drop `index`: one ChaCha stream per drop under a common seed.
pub fn drop_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One line-of-sight path per user.
pub fn sample_drop(rng: &mut impl Rng, cfg: &DropConfig) -> Vec<PlanePath<f64>> {
    (0..cfg.users)
        .map(|_| {
            let u: f64 = rng.random();
            let horizontal = match cfg.sampling {
                DistanceSampling::Uniform => cfg.min_distance + u * (cfg.max_distance - cfg.min_distance),
                DistanceSampling::UniformArea => {
                    let (a, b) = (cfg.min_distance * cfg.min_distance, cfg.max_distance * cfg.max_distance);
                    (a + u * (b - a)).sqrt()
                }
            };
            let v: f64 = rng.random();
            let azimuth = cfg.azimuth_min + v * (cfg.azimuth_max - cfg.azimuth_min);
            let elevation = -(cfg.bs_height / horizontal).atan();
            let distance = horizontal.hypot(cfg.bs_height);
            PlanePath::line_of_sight(Direction::new(elevation, azimuth), distance)
        })
        .collect()
}
