//! Entropy, mutual information and divergence in bits.
//!
//! Zero-mass terms are dropped before taking logs; KL divergence returns
//! `f64::INFINITY` when the first argument puts mass outside the support of
//! the second.

use crate::channel::{JointDist, Pmf};
use crate::error::{Error, Result};

/// Information quantities are measured in bits.
pub type Bits = f64;

/// `-Σ p log2 p` over a raw probability slice.
pub fn entropy_of(probs: &[f64]) -> Bits {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

pub fn entropy(p: &Pmf) -> Bits {
    entropy_of(p.probs())
}

/// Binary entropy function.
pub fn h2(p: f64) -> Bits {
    entropy_of(&[p, 1.0 - p])
}

/// `D(p‖q)` over raw slices of equal length.
pub fn kl_of(p: &[f64], q: &[f64]) -> Bits {
    let mut d = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a <= 0.0 {
            continue;
        }
        if b <= 0.0 {
            return f64::INFINITY;
        }
        d += a * (a / b).log2();
    }
    d.max(0.0)
}

pub fn kl_divergence(p: &Pmf, q: &Pmf) -> Result<Bits> {
    if p.alphabet() != q.alphabet() {
        return Err(Error::input("KL divergence between different alphabets"));
    }
    Ok(kl_of(p.probs(), q.probs()))
}

impl JointDist {
    /// Joint entropy of a set of axes.
    pub fn entropy_of_axes(&self, axes: &[usize]) -> Bits {
        if axes.is_empty() {
            return 0.0;
        }
        entropy_of(self.marginal(axes).table())
    }

    /// `H(A | C)`.
    pub fn conditional_entropy(&self, a: &[usize], given: &[usize]) -> Bits {
        let ac = union(a, given);
        (self.entropy_of_axes(&ac) - self.entropy_of_axes(given)).max(0.0)
    }

    /// `I(A; B)` between two axis sets.
    pub fn mi(&self, a: &[usize], b: &[usize]) -> Bits {
        self.cmi(a, b, &[])
    }

    /// `I(A; B | C)` between axis sets.
    pub fn cmi(&self, a: &[usize], b: &[usize], c: &[usize]) -> Bits {
        let ac = union(a, c);
        let bc = union(b, c);
        let abc = union(&ac, b);
        let v = self.entropy_of_axes(&ac) + self.entropy_of_axes(&bc)
            - self.entropy_of_axes(&abc)
            - self.entropy_of_axes(c);
        v.max(0.0)
    }
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// `I(A;B)` of a two-axis joint.
pub fn mutual_information(j: &JointDist) -> Result<Bits> {
    if j.axes().len() != 2 {
        return Err(Error::input(
            "mutual_information expects a joint over (A, B)",
        ));
    }
    Ok(j.mi(&[0], &[1]))
}

/// `I(A;B|C)` of a three-axis joint.
pub fn conditional_mi(j: &JointDist) -> Result<Bits> {
    if j.axes().len() != 3 {
        return Err(Error::input(
            "conditional_mi expects a joint over (A, B, C)",
        ));
    }
    Ok(j.cmi(&[0], &[1], &[2]))
}

/// `I(X;Y)` for input `px` through a channel given by rows `w[x][y]`.
pub fn channel_mi(px: &[f64], rows: &[Vec<f64>]) -> Bits {
    let ny = rows.first().map_or(0, Vec::len);
    let mut q = vec![0.0; ny];
    for (p, row) in px.iter().zip(rows) {
        for (qy, w) in q.iter_mut().zip(row) {
            *qy += p * w;
        }
    }
    let mut v = 0.0;
    for (p, row) in px.iter().zip(rows) {
        if *p > 0.0 {
            v += p * kl_of(row, &q);
        }
    }
    v.max(0.0)
}
