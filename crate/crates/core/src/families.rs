//! Reference channel families and random generators.

use rand::Rng;

use crate::channel::{default_labels, Mac};
use crate::checkers::GroupSpec;
use crate::error::{Error, Result};

fn bits() -> Vec<String> {
    default_labels(2)
}

/// Binary inputs, `Y = X1 + X2` over the integers with probability `1 - p`
/// and `Y = e` with probability `p`. Output alphabet `{0, 1, 2, e}`.
pub fn erasure_adder(p: f64) -> Result<Mac> {
    Ok(erasure_adder_additive(p, 3)?
        .0
        .with_name(format!("erasure-adder(p={p})")))
}

/// Binary adder without erasures, output alphabet `{0, 1, 2}`.
pub fn noiseless_adder() -> Mac {
    let mut pmf = Vec::with_capacity(12);
    for a in 0..2 {
        for b in 0..2 {
            let mut row = [0.0; 3];
            row[a + b] = 1.0;
            pmf.extend(row);
        }
    }
    Mac::new("noiseless-adder", bits(), bits(), default_labels(3), pmf).expect("valid")
}

/// Erasure adder together with a cyclic group of the given order
/// (at least 3) certifying additivity. Outputs `3..order` are padding
/// symbols with zero mass so the group action permutes `Y`; the erasure
/// symbol is fixed by every group element.
pub fn erasure_adder_additive(p: f64, order: usize) -> Result<(Mac, GroupSpec)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!(
            "erasure probability {p} outside [0,1]"
        )));
    }
    if order < 3 {
        return Err(Error::input(
            "the adder needs a cyclic group of order at least 3",
        ));
    }
    let mut y = default_labels(order);
    y.push("e".into());
    let ny = order + 1;
    let mut pmf = Vec::with_capacity(4 * ny);
    for a in 0..2 {
        for b in 0..2 {
            let mut row = vec![0.0; ny];
            row[a + b] = 1.0 - p;
            row[order] += p;
            pmf.extend(row);
        }
    }
    let name = format!("erasure-adder(p={p}, Z{order})");
    let mac = Mac::new(name, bits(), bits(), y, pmf)?;
    let mut action: Vec<Vec<usize>> = (0..order)
        .map(|y| (0..order).map(|g| (y + g) % order).collect())
        .collect();
    action.push(vec![order; order]);
    Ok((
        mac,
        GroupSpec::cyclic(order, vec![0, 1], vec![0, 1], action),
    ))
}

/// `Y = X1 ⊕ X2 ⊕ N` with `N ~ Ber(q)`.
pub fn bsc_mac(q: f64) -> Result<Mac> {
    Ok(bsc_mac_additive(q)?.0)
}

pub fn bsc_mac_additive(q: f64) -> Result<(Mac, GroupSpec)> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::input(format!("crossover {q} outside [0,1]")));
    }
    let mut pmf = Vec::with_capacity(8);
    for a in 0..2 {
        for b in 0..2 {
            let z = (a + b) % 2;
            let mut row = [q, q];
            row[z] = 1.0 - q;
            pmf.extend(row);
        }
    }
    let mac = Mac::new(format!("bsc-mac(q={q})"), bits(), bits(), bits(), pmf)?;
    let action = vec![vec![0, 1], vec![1, 0]];
    Ok((mac, GroupSpec::cyclic(2, vec![0, 1], vec![0, 1], action)))
}

/// A random probability row. With `sparse`, each entry is zeroed with
/// probability 1/3 (keeping at least one); surviving entries are bounded
/// away from zero.
pub fn random_row<R: Rng + ?Sized>(rng: &mut R, n: usize, sparse: bool) -> Vec<f64> {
    loop {
        let mut row: Vec<f64> = (0..n)
            .map(|_| {
                if sparse && rng.gen_bool(1.0 / 3.0) {
                    0.0
                } else {
                    0.05 + rng.gen::<f64>()
                }
            })
            .collect();
        let s: f64 = row.iter().sum();
        if s > 0.0 {
            row.iter_mut().for_each(|v| *v /= s);
            return row;
        }
    }
}

/// A random MAC with the given alphabet sizes.
pub fn random_mac<R: Rng + ?Sized>(
    rng: &mut R,
    n1: usize,
    n2: usize,
    ny: usize,
    sparse: bool,
) -> Mac {
    let pmf = (0..n1 * n2)
        .flat_map(|_| random_row(rng, ny, sparse))
        .collect();
    Mac::new(
        "random",
        default_labels(n1),
        default_labels(n2),
        default_labels(ny),
        pmf,
    )
    .expect("valid")
}

/// A random additive MAC over a cyclic group `Z_n`, `2 <= n <= 5`.
///
/// Both input alphabets are random subsets of the group containing 0; the
/// output alphabet is the group itself, optionally with a fixed point `e`.
/// The channel is `p(y|z) = r(y - z)` for a random base row `r`.
pub fn random_additive<R: Rng + ?Sized>(rng: &mut R) -> (Mac, GroupSpec) {
    let n = rng.gen_range(2..=5);
    let pick = |rng: &mut R| {
        let mut s = vec![0usize];
        for g in 1..n {
            if rng.gen_bool(0.5) {
                s.push(g);
            }
        }
        if s.len() == 1 {
            s.push(rng.gen_range(1..n));
        }
        s
    };
    let e1 = pick(rng);
    let e2 = pick(rng);
    let with_erasure = rng.gen_bool(0.5);
    let ny = n + usize::from(with_erasure);
    let base = random_row(rng, ny, true);

    let mut pmf = Vec::with_capacity(e1.len() * e2.len() * ny);
    for &a in &e1 {
        for &b in &e2 {
            let z = (a + b) % n;
            for y in 0..ny {
                // y - z in the group; the erasure symbol is fixed
                let src = if y == n { n } else { (y + n - z) % n };
                pmf.push(base[src]);
            }
        }
    }
    let mut y_labels = default_labels(n);
    if with_erasure {
        y_labels.push("e".into());
    }
    let label = |s: &[usize]| s.iter().map(|g| g.to_string()).collect::<Vec<_>>();
    let mac = Mac::new("random-additive", label(&e1), label(&e2), y_labels, pmf).expect("valid");
    let mut action: Vec<Vec<usize>> = (0..n)
        .map(|y| (0..n).map(|g| (y + g) % n).collect())
        .collect();
    if with_erasure {
        action.push(vec![n; n]);
    }
    (mac, GroupSpec::cyclic(n, e1, e2, action))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn families_are_valid() {
        for p in [0.0, 0.3, 1.0] {
            assert!(erasure_adder(p).unwrap().validate().is_empty());
        }
        assert_eq!(erasure_adder(0.3).unwrap().y(), ["0", "1", "2", "e"]);
        assert!(bsc_mac(0.11).unwrap().validate().is_empty());
        assert!(erasure_adder(1.5).is_err());
    }

    #[test]
    fn random_additive_channels_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let (mac, g) = random_additive(&mut rng);
            assert!(mac.validate().is_empty());
            assert!(g.check_dims(&mac).is_ok());
        }
    }
}
