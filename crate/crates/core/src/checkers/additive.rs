//! Finite-group structure of additive channels: table validation, the
//! induced channel `p(y|z)` with `Z = X1 + X2`, and the row-permutation and
//! input-independence lemmas.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::channel::{ConditionalPmf, Mac, Pmf, User};
use crate::error::{Error, Result};
use crate::info::{channel_mi, Bits};

/// Tolerance for comparing channel probabilities across group translates.
pub const ADDITIVE_TOL: f64 = 1e-10;

/// A finite group with embeddings of both input alphabets and an action on
/// the output alphabet. All tables hold indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub elements: Vec<String>,
    /// `cayley[a][b]` is the index of `a + b`.
    pub cayley: Vec<Vec<usize>>,
    pub identity: usize,
    /// Group element for each `x1` symbol.
    pub embed_x1: Vec<usize>,
    pub embed_x2: Vec<usize>,
    /// `y_action[y][g]` is the index of `y + g` in the output alphabet.
    pub y_action: Vec<Vec<usize>>,
}

impl GroupSpec {
    /// Cyclic group `Z_n` with elements labelled `0..n`.
    pub fn cyclic(
        n: usize,
        embed_x1: Vec<usize>,
        embed_x2: Vec<usize>,
        y_action: Vec<Vec<usize>>,
    ) -> Self {
        GroupSpec {
            elements: (0..n).map(|i| i.to_string()).collect(),
            cayley: (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
            identity: 0,
            embed_x1,
            embed_x2,
            y_action,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inverse(&self, g: usize) -> Option<usize> {
        (0..self.order())
            .find(|&h| self.cayley[g][h] == self.identity && self.cayley[h][g] == self.identity)
    }

    pub fn embed(&self, user: User) -> &[usize] {
        match user {
            User::One => &self.embed_x1,
            User::Two => &self.embed_x2,
        }
    }

    /// Checks that every table has the shape implied by `mac` and that every
    /// index is in range. Returns the path of the first bad table.
    pub fn check_dims(&self, mac: &Mac) -> std::result::Result<(), (String, String)> {
        let n = self.order();
        let err = |p: &str, m: String| Err((p.to_string(), m));
        if n == 0 {
            return err("elements", "group has no elements".into());
        }
        if self.identity >= n {
            return err("identity", format!("index {} out of range", self.identity));
        }
        if self.cayley.len() != n || self.cayley.iter().any(|r| r.len() != n) {
            return err("cayley", format!("expected a {n}x{n} table"));
        }
        if self.cayley.iter().flatten().any(|&c| c >= n) {
            return err("cayley", "entry out of range".into());
        }
        for (name, emb, alpha) in [
            ("embed_x1", &self.embed_x1, mac.x1()),
            ("embed_x2", &self.embed_x2, mac.x2()),
        ] {
            if emb.len() != alpha.len() {
                return err(
                    name,
                    format!("expected {} entries, found {}", alpha.len(), emb.len()),
                );
            }
            if emb.iter().any(|&g| g >= n) {
                return err(name, "entry out of range".into());
            }
        }
        let ny = mac.y().len();
        if self.y_action.len() != ny || self.y_action.iter().any(|r| r.len() != n) {
            return err("y_action", format!("expected a {ny}x{n} table"));
        }
        if self.y_action.iter().flatten().any(|&y| y >= ny) {
            return err("y_action", "entry out of range".into());
        }
        Ok(())
    }
}

/// One failed condition of the additivity definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AdditivityViolation {
    Associativity {
        a: String,
        b: String,
        c: String,
    },
    Identity {
        g: String,
    },
    NoInverse {
        g: String,
    },
    EmbeddingNotInjective {
        user: User,
        symbols: (String, String),
    },
    ZeroNotShared {
        user: User,
    },
    ActionNotPermutation {
        g: String,
    },
    ActionIdentity {
        y: String,
    },
    ActionCompatibility {
        y: String,
        g1: String,
        g2: String,
    },
    /// `p(y|x1,x2)` differs between two input pairs with the same sum.
    NotFactoring {
        z: String,
        first: (String, String),
        second: (String, String),
    },
    /// `p(y|z) != p(y + (z' - z)|z')`.
    Translation {
        y: String,
        z: String,
        z_prime: String,
        lhs: f64,
        rhs: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdditivityReport {
    pub additive: bool,
    pub violations: Vec<AdditivityViolation>,
}

/// Exhaustively checks that `mac` is additive with respect to `g`.
pub fn verify_additive(mac: &Mac, g: &GroupSpec) -> Result<AdditivityReport> {
    g.check_dims(mac)
        .map_err(|(path, msg)| Error::input(format!("group.{path}: {msg}")))?;
    let n = g.order();
    let el = |i: usize| g.elements[i].clone();
    let ys = mac.y();
    let mut v = Vec::new();

    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if g.op(g.op(a, b), c) != g.op(a, g.op(b, c)) {
                    v.push(AdditivityViolation::Associativity {
                        a: el(a),
                        b: el(b),
                        c: el(c),
                    });
                }
            }
        }
    }
    for a in 0..n {
        if g.op(a, g.identity) != a || g.op(g.identity, a) != a {
            v.push(AdditivityViolation::Identity { g: el(a) });
        }
        if g.inverse(a).is_none() {
            v.push(AdditivityViolation::NoInverse { g: el(a) });
        }
    }
    let group_ok = v.is_empty();

    for user in [User::One, User::Two] {
        let emb = g.embed(user);
        let alpha = mac.alphabet(user);
        for i in 0..emb.len() {
            for j in i + 1..emb.len() {
                if emb[i] == emb[j] {
                    v.push(AdditivityViolation::EmbeddingNotInjective {
                        user,
                        symbols: (alpha[i].clone(), alpha[j].clone()),
                    });
                }
            }
        }
        if !emb.contains(&g.identity) {
            v.push(AdditivityViolation::ZeroNotShared { user });
        }
    }

    for h in 0..n {
        let image: BTreeSet<usize> = (0..ys.len()).map(|y| g.y_action[y][h]).collect();
        if image.len() != ys.len() {
            v.push(AdditivityViolation::ActionNotPermutation { g: el(h) });
        }
    }
    for y in 0..ys.len() {
        if g.y_action[y][g.identity] != y {
            v.push(AdditivityViolation::ActionIdentity { y: ys[y].clone() });
        }
        for g1 in 0..n {
            for g2 in 0..n {
                if g.y_action[g.y_action[y][g1]][g2] != g.y_action[y][g.op(g1, g2)] {
                    v.push(AdditivityViolation::ActionCompatibility {
                        y: ys[y].clone(),
                        g1: el(g1),
                        g2: el(g2),
                    });
                }
            }
        }
    }

    // Markov factor through Z = X1 + X2
    let mut first_pair: Vec<Option<(usize, usize)>> = vec![None; n];
    for a in 0..mac.x1().len() {
        for b in 0..mac.x2().len() {
            let z = g.op(g.embed_x1[a], g.embed_x2[b]);
            match first_pair[z] {
                None => first_pair[z] = Some((a, b)),
                Some((a0, b0)) => {
                    let same = mac
                        .row(a0, b0)
                        .iter()
                        .zip(mac.row(a, b))
                        .all(|(p, q)| (p - q).abs() <= ADDITIVE_TOL);
                    if !same {
                        v.push(AdditivityViolation::NotFactoring {
                            z: el(z),
                            first: (mac.x1()[a0].clone(), mac.x2()[b0].clone()),
                            second: (mac.x1()[a].clone(), mac.x2()[b].clone()),
                        });
                    }
                }
            }
        }
    }

    if group_ok {
        let zs: Vec<(usize, (usize, usize))> = first_pair
            .iter()
            .enumerate()
            .filter_map(|(z, p)| p.map(|pair| (z, pair)))
            .collect();
        for &(z, (a, b)) in &zs {
            let inv_z = g.inverse(z).expect("group checked");
            for &(zp, (ap, bp)) in &zs {
                let shift = g.op(inv_z, zp);
                for y in 0..ys.len() {
                    let lhs = mac.row(a, b)[y];
                    let rhs = mac.row(ap, bp)[g.y_action[y][shift]];
                    if (lhs - rhs).abs() > ADDITIVE_TOL {
                        v.push(AdditivityViolation::Translation {
                            y: ys[y].clone(),
                            z: el(z),
                            z_prime: el(zp),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
    }

    Ok(AdditivityReport {
        additive: v.is_empty(),
        violations: v,
    })
}

/// The channel `p(y|z)` for `z` ranging over the reachable sums `X1 + X2`,
/// listed in group-index order and labelled by group element.
pub fn z_channel(mac: &Mac, g: &GroupSpec) -> ConditionalPmf {
    let n = g.order();
    let mut rows: Vec<Option<Vec<f64>>> = vec![None; n];
    for a in 0..mac.x1().len() {
        for b in 0..mac.x2().len() {
            let z = g.op(g.embed_x1[a], g.embed_x2[b]);
            rows[z].get_or_insert_with(|| mac.row(a, b).to_vec());
        }
    }
    let (labels, rows): (Vec<String>, Vec<Vec<f64>>) = rows
        .into_iter()
        .enumerate()
        .filter_map(|(z, r)| r.map(|r| (g.elements[z].clone(), r)))
        .unzip();
    ConditionalPmf::from_parts_unchecked(labels, mac.y().to_vec(), rows)
}

pub(crate) fn require_additive(mac: &Mac, g: &GroupSpec) -> Result<()> {
    let report = verify_additive(mac, g)?;
    if let Some(first) = report.violations.first() {
        return Err(Error::NotAdditive(format!(
            "{} violation(s), first: {}",
            report.violations.len(),
            serde_json::to_string(first).unwrap_or_default()
        )));
    }
    Ok(())
}

/// True iff every row is a rearrangement of every other row.
pub fn check_lemma1(ch: &ConditionalPmf) -> bool {
    let sorted: Vec<Vec<f64>> = ch
        .rows()
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.sort_by(f64::total_cmp);
            r
        })
        .collect();
    sorted
        .windows(2)
        .all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| (a - b).abs() <= 1e-12))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma2Report {
    /// `(x_k, I(X_j;Y|X_k=x_k))` for every symbol of the other user.
    pub values: Vec<(String, Bits)>,
    pub max_spread: Bits,
}

/// Evaluates `I(X_j;Y|X_k=x_k)` at every `x_k` for the given input of user
/// `j`; on additive channels the spread is zero.
pub fn check_lemma2(mac: &Mac, g: &GroupSpec, user: User, p_xj: &Pmf) -> Result<Lemma2Report> {
    require_additive(mac, g)?;
    if p_xj.alphabet() != mac.alphabet(user) {
        return Err(Error::input(
            "input pmf alphabet does not match the user's alphabet",
        ));
    }
    let other = user.other();
    let values: Vec<(String, Bits)> = mac
        .alphabet(other)
        .iter()
        .enumerate()
        .map(|(k, label)| {
            let ch = mac.induced_channel_at(user, k);
            (label.clone(), channel_mi(p_xj.probs(), ch.rows()))
        })
        .collect();
    let hi = values.iter().map(|v| v.1).fold(f64::MIN, f64::max);
    let lo = values.iter().map(|v| v.1).fold(f64::MAX, f64::min);
    Ok(Lemma2Report {
        values,
        max_spread: hi - lo,
    })
}
