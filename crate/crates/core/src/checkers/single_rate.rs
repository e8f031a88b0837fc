use serde::{Deserialize, Serialize};

use crate::channel::{Mac, Pmf, User};
use crate::info::Bits;
use crate::optimize::max_support_input;

/// Best single-user rate with the other user's input held fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleRate {
    pub user: User,
    pub value: Bits,
    /// Maximal-support capacity-achieving input at `xk_star`.
    pub p_star: Pmf,
    pub xk_star: String,
    /// Every `x_k` whose induced capacity is within `tol` of `value`.
    pub maximizer_set: Vec<String>,
    /// Per-`x_k` results, sorted by capacity (descending) then label.
    pub candidates: Vec<Candidate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub xk: String,
    pub value: Bits,
    pub p_star: Pmf,
}

pub fn single_rate_capacity(mac: &Mac, user: User, tol: f64) -> SingleRate {
    let other = user.other();
    let mut candidates: Vec<Candidate> = mac
        .alphabet(other)
        .iter()
        .enumerate()
        .map(|(k, label)| {
            let r = max_support_input(&mac.induced_channel_at(user, k), tol);
            Candidate {
                xk: label.clone(),
                value: r.value,
                p_star: r.argmax_input,
            }
        })
        .collect();
    candidates.sort_by(|a, b| b.value.total_cmp(&a.value).then_with(|| a.xk.cmp(&b.xk)));
    let best = candidates[0].clone();
    let maximizer_set = candidates
        .iter()
        .filter(|c| c.value >= best.value - tol)
        .map(|c| c.xk.clone())
        .collect();
    SingleRate {
        user,
        value: best.value,
        p_star: best.p_star,
        xk_star: best.xk,
        maximizer_set,
        candidates,
    }
}
