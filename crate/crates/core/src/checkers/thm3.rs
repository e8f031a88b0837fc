//! Relay-based improvement of single-user rates under independent feedback.
//!
//! With the other user acting as a compress-forward relay that sees an
//! independent copy `Y'` of the output, the rate of user `j` can beat the
//! no-feedback capacity. [`check_thm3`] evaluates the first-order condition
//! at `a = 0`; [`cf_rate_curve`] traces the achieved rate as the relay
//! mixes in a second input symbol with weight `a`.

use serde::{Deserialize, Serialize};

use crate::channel::{index_of, JointDist, Mac, Pmf, User};
use crate::checkers::single_rate::single_rate_capacity;
use crate::error::{Error, Result};
use crate::info::{kl_of, Bits};
use crate::report::{csv_f64, ext_f64};

/// Required margin for a strict inequality.
pub const STRICT_MARGIN: f64 = 1e-9;
/// Relay-side conditional entropies at or below this count as zero.
pub const DEGENERATE_ENTROPY: f64 = 1e-12;

/// Axes of the joint built by [`relay_joint`]: `(x1, x2, y, y')`.
const Y: usize = 2;
const Y_COPY: usize = 3;

fn axes(user: User) -> (usize, usize) {
    match user {
        User::One => (0, 1),
        User::Two => (1, 0),
    }
}

/// `p*(x_j) p(x_k) p(y|x1,x2) p(y'|x1,x2)` as a joint over `(x1, x2, y, y')`.
fn relay_joint(mac: &Mac, user: User, p_xj: &[f64], p_xk: &[f64]) -> Result<JointDist> {
    let input = match user {
        User::One => mac.product_input(p_xj, p_xk)?,
        User::Two => mac.product_input(p_xk, p_xj)?,
    };
    mac.independent_copy_joint(&input, 2)
}

fn point(n: usize, k: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[k] = 1.0;
    v
}

/// All terms of the sufficient condition for one `(x_k*, x̄_k)` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairEvaluation {
    pub xk_star: String,
    pub xbar_k: String,
    /// `I(X_j;Y|X_k=x̄_k)`.
    pub i_bar: Bits,
    /// `D(p(y|x̄_k) ‖ p(y|x_k*))`.
    #[serde(with = "ext_f64")]
    pub divergence: Bits,
    /// `H(Y|X_j,X_k=x_k*)`.
    pub h_noise: Bits,
    /// `H(Y'|Y,X_k=x_k*)`.
    pub h_copy: Bits,
    #[serde(with = "ext_f64")]
    pub factor: f64,
    #[serde(with = "ext_f64")]
    pub lhs: Bits,
    pub rhs: Bits,
    pub degenerate: bool,
    pub holds: bool,
}

impl PairEvaluation {
    /// `lhs - rhs`, the slope of the relay rate at `a = 0`.
    pub fn margin(&self) -> f64 {
        if self.degenerate {
            f64::NAN
        } else {
            self.lhs - self.rhs
        }
    }
}

pub fn evaluate_pair(
    mac: &Mac,
    user: User,
    p_star: &Pmf,
    xk_star: &str,
    xbar_k: &str,
) -> Result<PairEvaluation> {
    let other = user.other();
    let ks = index_of(mac.alphabet(other), xk_star)?;
    let kb = index_of(mac.alphabet(other), xbar_k)?;
    if p_star.alphabet() != mac.alphabet(user) {
        return Err(Error::input(
            "p_star alphabet does not match the user's alphabet",
        ));
    }
    let nk = mac.alphabet(other).len();
    let (j, k) = axes(user);
    let at_star = relay_joint(mac, user, p_star.probs(), &point(nk, ks))?;
    let at_bar = relay_joint(mac, user, p_star.probs(), &point(nk, kb))?;

    let rhs = at_star.cmi(&[j], &[Y], &[k]);
    let h_noise = at_star.conditional_entropy(&[Y], &[j, k]);
    let h_copy = at_star.conditional_entropy(&[Y_COPY], &[Y, k]);
    let i_bar = at_bar.cmi(&[j], &[Y], &[k]);
    let divergence = kl_of(
        at_bar.marginal(&[Y]).table(),
        at_star.marginal(&[Y]).table(),
    );

    let degenerate = h_copy <= DEGENERATE_ENTROPY;
    let factor = if degenerate {
        f64::NAN
    } else {
        1.0 - h_noise / h_copy
    };
    let lhs = if degenerate {
        f64::NAN
    } else if divergence.is_infinite() {
        if factor > 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    } else {
        i_bar + divergence * factor
    };
    let holds = !degenerate && lhs - rhs > STRICT_MARGIN;
    Ok(PairEvaluation {
        xk_star: xk_star.to_string(),
        xbar_k: xbar_k.to_string(),
        i_bar,
        divergence,
        h_noise,
        h_copy,
        factor,
        lhs,
        rhs,
        degenerate,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm3Witness {
    pub p_star: Pmf,
    pub xk_star: String,
    pub xbar_k: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm3Report {
    pub user: User,
    pub holds: bool,
    pub witness: Option<Thm3Witness>,
    /// Sides of the inequality for the witness, or for the pair with the
    /// largest margin when none succeeds.
    #[serde(with = "ext_f64")]
    pub lhs: Bits,
    #[serde(with = "ext_f64")]
    pub rhs: Bits,
    /// Some pair was skipped because `H(Y'|Y,X_k=x_k*)` vanished.
    pub degenerate_denominator: bool,
    pub single_rate: Bits,
    pub evaluations: Vec<PairEvaluation>,
    pub note: Option<String>,
}

/// Searches every maximizing `x_k*` (with its maximal-support input) and
/// every other `x̄_k` for a strict success of the sufficient condition.
pub fn check_thm3(mac: &Mac, user: User, tol: f64) -> Thm3Report {
    let sr = single_rate_capacity(mac, user, tol);
    let mut xbars: Vec<String> = mac.alphabet(user.other()).to_vec();
    xbars.sort();

    let mut evaluations = Vec::new();
    let mut witness = None;
    for cand in sr
        .candidates
        .iter()
        .filter(|c| sr.maximizer_set.contains(&c.xk))
    {
        for xbar in xbars.iter().filter(|x| **x != cand.xk) {
            let e = evaluate_pair(mac, user, &cand.p_star, &cand.xk, xbar)
                .expect("labels come from the channel");
            if e.holds && witness.is_none() {
                witness = Some((
                    Thm3Witness {
                        p_star: cand.p_star.clone(),
                        xk_star: cand.xk.clone(),
                        xbar_k: xbar.clone(),
                    },
                    e.lhs,
                    e.rhs,
                ));
            }
            evaluations.push(e);
        }
    }
    let degenerate_denominator = evaluations.iter().any(|e| e.degenerate);
    let (witness, lhs, rhs) = match witness {
        Some((w, l, r)) => (Some(w), l, r),
        None => {
            let best = evaluations
                .iter()
                .filter(|e| !e.degenerate)
                .max_by(|a, b| a.margin().total_cmp(&b.margin()));
            match best {
                Some(e) => (None, e.lhs, e.rhs),
                None => (None, f64::NAN, sr.value),
            }
        }
    };
    let holds = witness.is_some();
    Thm3Report {
        user,
        holds,
        witness,
        lhs,
        rhs,
        degenerate_denominator,
        single_rate: sr.value,
        evaluations,
        note: (!holds).then(|| "representative maximizers only".to_string()),
    }
}

/// Achieved compress-forward rate as a function of the relay mixing weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CFCurve {
    pub user: User,
    pub xk_star: String,
    pub xbar_k: String,
    pub a_grid: Vec<f64>,
    pub rates: Vec<Bits>,
    pub b_values: Vec<f64>,
    /// The relay had nothing to compress (`H(Y'|X_k,Y) = 0`) at this `a`.
    pub flagged: Vec<bool>,
    /// Closed-form slope at `a = 0`; `nan` when the relay-side entropy
    /// vanishes, `inf` when the divergence term is unbounded.
    #[serde(with = "ext_f64")]
    pub derivative_at_zero: f64,
}

impl CFCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a,rate,b,flagged\n");
        for i in 0..self.a_grid.len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_f64(self.a_grid[i]),
                csv_f64(self.rates[i]),
                csv_f64(self.b_values[i]),
                self.flagged[i]
            ));
        }
        out
    }
}

/// One point of the curve: `(rate, b, flagged)`.
pub fn cf_point(
    mac: &Mac,
    user: User,
    ks: usize,
    kb: usize,
    p_star: &[f64],
    a: f64,
) -> Result<(Bits, f64, bool)> {
    let nk = mac.alphabet(user.other()).len();
    let mut p_xk = vec![0.0; nk];
    p_xk[ks] += 1.0 - a;
    p_xk[kb] += a;
    let joint = relay_joint(mac, user, p_star, &p_xk)?;
    let (j, k) = axes(user);

    let direct = joint.cmi(&[j], &[Y], &[k]);
    let relay_info = joint.mi(&[k], &[Y]);
    let noise = joint.conditional_entropy(&[Y], &[j, k]);
    let relay_entropy = joint.conditional_entropy(&[Y_COPY], &[k, Y]);
    let relay_gain = joint.cmi(&[j], &[Y_COPY], &[k, Y]);

    // rounding residue on erased channels should read as an exact zero
    let snap = |r: f64| {
        if r.abs() <= DEGENERATE_ENTROPY {
            0.0
        } else {
            r
        }
    };
    if relay_entropy <= DEGENERATE_ENTROPY {
        return Ok((snap(direct), 0.0, true));
    }
    let b = (relay_info / relay_entropy).min(1.0);
    let rate = direct + (relay_info - b * noise).min(b * relay_gain);
    Ok((snap(rate), b, false))
}

pub fn cf_rate_curve(
    mac: &Mac,
    user: User,
    xk_star: &str,
    xbar_k: &str,
    p_star: &Pmf,
    a_grid: &[f64],
) -> Result<CFCurve> {
    if a_grid.is_empty() || a_grid[0] != 0.0 {
        return Err(Error::input("a grid must start at 0"));
    }
    if a_grid.windows(2).any(|w| w[1] < w[0]) || a_grid.iter().any(|a| !(0.0..=1.0).contains(a)) {
        return Err(Error::input("a grid must be sorted and inside [0,1]"));
    }
    let pair = evaluate_pair(mac, user, p_star, xk_star, xbar_k)?;
    let other = mac.alphabet(user.other());
    let ks = index_of(other, xk_star)?;
    let kb = index_of(other, xbar_k)?;

    let mut rates = Vec::with_capacity(a_grid.len());
    let mut b_values = Vec::with_capacity(a_grid.len());
    let mut flagged = Vec::with_capacity(a_grid.len());
    for &a in a_grid {
        let (r, b, f) = cf_point(mac, user, ks, kb, p_star.probs(), a)?;
        rates.push(r);
        b_values.push(b);
        flagged.push(f);
    }
    Ok(CFCurve {
        user,
        xk_star: xk_star.to_string(),
        xbar_k: xbar_k.to_string(),
        a_grid: a_grid.to_vec(),
        rates,
        b_values,
        flagged,
        derivative_at_zero: pair.margin(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::info::entropy_of;
    use crate::optimize::DEFAULT_TOL;

    #[test]
    fn erasure_adder_satisfies_condition() {
        let mac = families::erasure_adder(0.5).unwrap();
        let r = check_thm3(&mac, User::One, DEFAULT_TOL);
        assert!(r.holds);
        let w = r.witness.unwrap();
        assert_eq!((w.xk_star.as_str(), w.xbar_k.as_str()), ("0", "1"));
        assert!(r.lhs.is_infinite() && r.lhs > 0.0);
        // H(Y'|Y, X2=0) for Ber(1/2) inputs is 2.75 - 1.5
        let e = &r.evaluations[0];
        assert!((e.h_copy - 1.25).abs() < 1e-12);
        assert!((e.h_noise - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bsc_mac_fails_condition() {
        let mac = families::bsc_mac(0.11).unwrap();
        let r = check_thm3(&mac, User::One, DEFAULT_TOL);
        assert!(!r.holds);
        assert!(r.evaluations.iter().all(|e| e.divergence.abs() < 1e-12));
    }

    #[test]
    fn noiseless_adder_is_degenerate_everywhere() {
        let mac = families::erasure_adder(0.0).unwrap();
        let r = check_thm3(&mac, User::One, DEFAULT_TOL);
        assert!(!r.holds);
        assert!(r.degenerate_denominator);
        assert!(r.evaluations.iter().all(|e| e.degenerate));
        // brute force: with X2 fixed the output determines X1, so Y' = Y
        let input = mac.product_input(&[0.5, 0.5], &[1.0, 0.0]).unwrap();
        let j = mac.independent_copy_joint(&input, 2).unwrap();
        let h =
            entropy_of(j.marginal(&[1, 2, 3]).table()) - entropy_of(j.marginal(&[1, 2]).table());
        assert!(h.abs() < 1e-15);
    }

    #[test]
    fn curve_starts_at_single_rate_and_rises() {
        let mac = families::erasure_adder(0.5).unwrap();
        let r = check_thm3(&mac, User::One, DEFAULT_TOL);
        let w = r.witness.unwrap();
        let c = cf_rate_curve(
            &mac,
            User::One,
            &w.xk_star,
            &w.xbar_k,
            &w.p_star,
            &[0.0, 0.02, 0.05],
        )
        .unwrap();
        assert!((c.rates[0] - 0.5).abs() < 1e-8);
        assert!(c.rates[1] > 0.5 && c.rates[2] > 0.5);
        assert_eq!(c.b_values[0], 0.0);
        assert!(c.to_csv().starts_with("a,rate,b,flagged\n0,"));
    }

    #[test]
    fn fully_erased_curve_is_zero_and_flagged() {
        let mac = families::erasure_adder(1.0).unwrap();
        let p = Pmf::uniform(mac.x1().to_vec());
        let c = cf_rate_curve(&mac, User::One, "0", "1", &p, &[0.0, 0.5, 1.0]).unwrap();
        assert!(c.rates.iter().all(|r| r.abs() < 1e-15));
        assert!(c.flagged.iter().all(|&f| f));
        assert!(c.derivative_at_zero.is_nan());
    }

    #[test]
    fn grid_must_start_at_zero() {
        let mac = families::erasure_adder(0.5).unwrap();
        let p = Pmf::uniform(mac.x1().to_vec());
        assert!(cf_rate_curve(&mac, User::One, "0", "1", &p, &[0.1]).is_err());
        assert!(cf_rate_curve(&mac, User::One, "0", "1", &p, &[0.0, 0.5, 0.2]).is_err());
    }
}
