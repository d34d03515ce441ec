//! Polar covering-parameter reduction along the chain
//! Mp(2) -> Sp(2,R) ~ SU(1,1) -> SO(1,2).
//!
//! Each covering level halves the canonical range of the rotation
//! parameter: the two-to-one and four-to-one homomorphisms act purely by
//! reducing `alpha3` modulo the level period, leaving `alpha_perp`
//! untouched.

use serde::Serialize;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoveringLevel {
    /// Period 16 pi, canonical interval (-8 pi, 8 pi].
    Mp2,
    /// Period 8 pi, canonical interval (-4 pi, 4 pi].
    Sp2ROrSu11,
    /// Period 4 pi, canonical interval (-2 pi, 2 pi].
    So12,
}

impl CoveringLevel {
    pub fn period(&self) -> f64 {
        match self {
            CoveringLevel::Mp2 => 16.0 * std::f64::consts::PI,
            CoveringLevel::Sp2ROrSu11 => 8.0 * std::f64::consts::PI,
            CoveringLevel::So12 => 4.0 * std::f64::consts::PI,
        }
    }

    /// Half-open canonical interval `(-period/2, period/2]`.
    pub fn interval(&self) -> (f64, f64) {
        let half = self.period() / 2.0;
        (-half, half)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoveringParameter {
    pub alpha_perp: [f64; 2],
    pub alpha3: f64,
    pub level: CoveringLevel,
}

/// Reduce `alpha3` into the level's canonical interval by an exact
/// integer number of periods. Idempotent.
pub fn normalize_covering(p: &CoveringParameter) -> Result<CoveringParameter> {
    let period = p.level.period();
    let half = period / 2.0;
    // Integer number of periods that brings alpha3 near zero.
    let mut shifts = (p.alpha3 / period).round();
    let mut alpha3 = p.alpha3 - shifts * period;
    // Settle the half-open boundary (-half, half].
    while alpha3 > half {
        shifts += 1.0;
        alpha3 = p.alpha3 - shifts * period;
    }
    while alpha3 <= -half {
        shifts -= 1.0;
        alpha3 = p.alpha3 - shifts * period;
    }
    Ok(CoveringParameter {
        alpha_perp: p.alpha_perp,
        alpha3,
        level: p.level,
    })
}
