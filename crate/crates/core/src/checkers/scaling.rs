use serde::{Deserialize, Serialize};

use crate::channel::{ErasureSpec, Mac};
use crate::error::Result;
use crate::info::Bits;
use crate::regions::{cl_frontier, default_u_card, RegionFrontier};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightGap {
    pub weight: (f64, f64),
    /// Weighted inner-bound value on the base channel.
    pub value_y: Bits,
    /// Weighted inner-bound value on the erased channel.
    pub value_w: Bits,
    /// `|value_w - (1 - p) value_y|`.
    pub gap: Bits,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub erasure_prob: f64,
    pub max_abs_gap: Bits,
    pub per_weight: Vec<WeightGap>,
    /// Largest witness re-evaluation error on either frontier.
    pub certificate_violation: f64,
    pub base: RegionFrontier,
    pub erased: RegionFrontier,
}

/// Compares inner frontiers of `mac` and of `mac` followed by an erasure
/// with probability `p`, using the same seeds for both searches.
///
/// Both sides are optimizer outputs, so the gap is reported, not asserted.
pub fn erasure_scaling_check(
    mac: &Mac,
    p: f64,
    weights: &[(f64, f64)],
    restarts: usize,
    seed: u64,
) -> Result<ScalingReport> {
    let erased_mac = mac.erasure_extend(&ErasureSpec::fresh_for(mac, p)?)?;
    let u_card = default_u_card(mac);
    let base = cl_frontier(mac, weights, restarts, u_card, seed)?;
    let erased = cl_frontier(&erased_mac, weights, restarts, u_card, seed)?;
    let per_weight: Vec<WeightGap> = base
        .points
        .iter()
        .zip(&erased.points)
        .map(|(b, e)| WeightGap {
            weight: b.weight,
            value_y: b.value,
            value_w: e.value,
            gap: (e.value - (1.0 - p) * b.value).abs(),
        })
        .collect();
    let max_abs_gap = per_weight.iter().map(|g| g.gap).fold(0.0, f64::max);
    let certificate_violation = base
        .max_certificate_violation(mac)?
        .max(erased.max_certificate_violation(&erased_mac)?);
    Ok(ScalingReport {
        erasure_prob: p,
        max_abs_gap,
        per_weight,
        certificate_violation,
        base,
        erased,
    })
}
