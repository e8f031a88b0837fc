use serde::{Deserialize, Serialize};

use crate::channel::{Mac, User};
use crate::checkers::additive::{require_additive, z_channel, GroupSpec};
use crate::checkers::classes::{equivalence_classes, EquivClassPartition};
use crate::checkers::single_rate::single_rate_capacity;
use crate::checkers::thm3::check_thm3;
use crate::error::Result;
use crate::info::Bits;
use crate::optimize::{maximize_joint_mi, DEFAULT_MAX_ITER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    /// Independent feedback cannot raise the single-user rate.
    Equal,
    /// Independent feedback strictly raises the single-user rate.
    StrictlyGreater,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm4Evidence {
    pub joint_mi: Bits,
    pub single_rate: Bits,
    pub partition: EquivClassPartition,
    /// Group elements of the support used for the class test.
    pub support: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm4Report {
    pub user: User,
    pub condition1: bool,
    pub condition2: bool,
    pub conclusion: Conclusion,
    pub evidence: Thm4Evidence,
    /// Outcome of the relay condition, evaluated when the conclusion is
    /// `strictly_greater`; it must agree.
    pub thm3_cross_check: Option<bool>,
    pub note: String,
}

/// Classifies an additive channel: the single-user rate of `user` gains
/// from independent feedback iff neither the sum-rate condition nor the
/// class-variable condition holds.
pub fn check_thm4(mac: &Mac, g: &GroupSpec, user: User, tol: f64) -> Result<Thm4Report> {
    require_additive(mac, g)?;
    // both capacities are certified to tol/10 so their difference is
    // resolved at tol
    let inner_tol = tol / 10.0;
    let joint_mi = maximize_joint_mi(mac, inner_tol, 10 * DEFAULT_MAX_ITER).value;
    let single_rate = single_rate_capacity(mac, user, inner_tol).value;
    let condition1 = (joint_mi - single_rate).abs() <= tol;

    let ch = z_channel(mac, g);
    let support: Vec<String> = g
        .embed(user)
        .iter()
        .map(|&e| g.elements[e].clone())
        .collect();
    let partition = equivalence_classes(&ch, &support)?;
    let condition2 = partition.markov_ok;

    let conclusion = if condition1 || condition2 {
        Conclusion::Equal
    } else {
        Conclusion::StrictlyGreater
    };
    let thm3_cross_check =
        (conclusion == Conclusion::StrictlyGreater).then(|| check_thm3(mac, user, tol).holds);
    Ok(Thm4Report {
        user,
        condition1,
        condition2,
        conclusion,
        evidence: Thm4Evidence {
            joint_mi,
            single_rate,
            partition,
            support,
        },
        thm3_cross_check,
        note: "condition 2 checked on the full embedded input alphabet; sub-supports refine its classes".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::optimize::DEFAULT_TOL;

    #[test]
    fn erasure_adder_gains_for_interior_p() {
        let (mac, g) = families::erasure_adder_additive(0.3, 3).unwrap();
        let r = check_thm4(&mac, &g, User::One, DEFAULT_TOL).unwrap();
        assert!(!r.condition1 && !r.condition2);
        assert_eq!(r.conclusion, Conclusion::StrictlyGreater);
        assert_eq!(r.thm3_cross_check, Some(true));
    }

    #[test]
    fn bsc_mac_is_equal_by_sum_rate() {
        let (mac, g) = families::bsc_mac_additive(0.11).unwrap();
        let r = check_thm4(&mac, &g, User::Two, DEFAULT_TOL).unwrap();
        assert!(r.condition1);
        assert!(!r.condition2);
        assert_eq!(r.conclusion, Conclusion::Equal);
        assert_eq!(r.thm3_cross_check, None);
    }

    #[test]
    fn full_erasure_satisfies_both() {
        let (mac, g) = families::erasure_adder_additive(1.0, 3).unwrap();
        let r = check_thm4(&mac, &g, User::One, DEFAULT_TOL).unwrap();
        assert!(r.condition1 && r.condition2);
        assert_eq!(r.conclusion, Conclusion::Equal);
    }

    #[test]
    fn class_count_gives_capacity_when_condition2_holds() {
        let (mac, g) = families::erasure_adder_additive(0.0, 3).unwrap();
        let r = check_thm4(&mac, &g, User::One, DEFAULT_TOL).unwrap();
        assert!(r.condition2);
        assert!((r.evidence.single_rate - (r.evidence.partition.m as f64).log2()).abs() < 1e-8);
    }

    #[test]
    fn rejects_non_additive() {
        let (_, g) = families::erasure_adder_additive(0.3, 3).unwrap();
        let mac = families::erasure_adder(0.3).unwrap();
        let mut t = mac.table();
        t[1][1] = vec![0.0, 0.2, 0.5, 0.3];
        let skew = Mac::from_table(
            "skew",
            mac.x1().to_vec(),
            mac.x2().to_vec(),
            mac.y().to_vec(),
            &t,
        )
        .unwrap();
        assert!(check_thm4(&skew, &g, User::One, DEFAULT_TOL).is_err());
    }
}
