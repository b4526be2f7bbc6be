use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::JacobiOperator;
use crate::error::{invalid, Result};

/// Random finite-support perturbations of the free matrix. Entry `k`
/// (counted from 1) of each diagonal has modulus at most `scale · decay^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleParams {
    pub support: usize,
    pub scale: f64,
    pub decay: f64,
    pub seed: u64,
}

impl Default for EnsembleParams {
    fn default() -> Self {
        Self {
            support: 8,
            scale: 0.3,
            decay: 0.7,
            seed: 7,
        }
    }
}

impl EnsembleParams {
    pub fn validate(&self) -> Result<()> {
        if self.support < 1 {
            return Err(invalid("support", "must be at least 1"));
        }
        if !(self.scale >= 0.0 && self.scale.is_finite()) {
            return Err(invalid("scale", "must be finite and nonnegative"));
        }
        if !(self.decay > 0.0 && self.decay <= 1.0) {
            return Err(invalid("decay", "must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// Draw number `index`; a pure function of `(params, index)`.
pub fn ensemble_sample(params: &EnsembleParams, index: u64) -> Result<JacobiOperator> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(index);
    let k = params.support;
    let (mut a, mut b, mut c) = (
        Vec::with_capacity(k),
        Vec::with_capacity(k),
        Vec::with_capacity(k),
    );
    let mut bound = params.scale;
    for _ in 0..k {
        bound *= params.decay;
        let mut draw = || {
            let r: f64 = rng.random();
            let phi: f64 = rng.random::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(bound * r, phi)
        };
        a.push(1.0 + draw());
        b.push(draw());
        c.push(1.0 + draw());
    }
    JacobiOperator::new(a, b, c)
}

/// Eigenvalue `b + 1/b` of the free matrix with `b_1 = b`, present only when
/// `|b| > 1`.
pub fn rank_one_reference(b: Complex64) -> Option<Complex64> {
    (b.norm() > 1.0).then(|| b + 1.0 / b)
}
