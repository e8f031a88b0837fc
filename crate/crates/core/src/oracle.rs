//! Brute-force references for small instances.
//!
//! Nothing here calls the optimizers: capacities and inner-bound points
//! come from exhaustive lattice sweeps with certified continuity gaps, and
//! the class-variable condition from enumerating every partition.

use serde::{Deserialize, Serialize};

use crate::channel::{index_of, ConditionalPmf, Mac};
use crate::error::{Error, Result};
use crate::info::{channel_mi, entropy_of, h2, Bits};
use crate::regions::{Pentagon, RatePair};

pub const MAX_SUPPORT: usize = 5;
pub const MAX_OUTPUTS: usize = 6;
/// Entropy threshold below which a conditional entropy counts as zero.
pub const ZERO_ENTROPY: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Lattice resolution `N`; probabilities are multiples of `1/N`.
    pub resolution: usize,
    /// Largest simplex dimension the sweep accepts.
    pub max_dims: usize,
}

impl GridSpec {
    pub fn new(resolution: usize, max_dims: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::input("grid resolution must be at least 2"));
        }
        Ok(GridSpec {
            resolution,
            max_dims,
        })
    }

    /// `N = 64` for two symbols, `N = 24` for three, `N = 12` beyond.
    pub fn default_for(dims: usize) -> Self {
        let resolution = match dims {
            0..=2 => 64,
            3 => 24,
            _ => 12,
        };
        GridSpec {
            resolution,
            max_dims: dims.max(2),
        }
    }
}

/// Every vector of `parts` nonnegative integers summing to `n`, in
/// lexicographic order.
pub fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=n {
            cur.push(k);
            rec(n - k, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(n, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

fn lattice(n: usize, parts: usize) -> Vec<Vec<f64>> {
    compositions(n, parts)
        .into_iter()
        .map(|c| c.into_iter().map(|k| k as f64 / n as f64).collect())
        .collect()
}

/// Bound on `|H(p) - H(q)|` for distributions on `d` symbols at total
/// variation distance at most `t` (Fannes–Audenaert).
pub fn entropy_continuity(t: f64, d: usize) -> Bits {
    if d <= 1 || t <= 0.0 {
        return 0.0;
    }
    let t = t.min(1.0);
    if t > 1.0 - 1.0 / d as f64 {
        return (d as f64).log2();
    }
    t * ((d - 1) as f64).log2() + h2(t)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCapacity {
    /// Best mutual information on the lattice; a lower bound on capacity.
    pub value: Bits,
    /// Capacity is at most `value + gap_bound`.
    pub gap_bound: Bits,
    pub argmax: Vec<f64>,
    pub explanation: String,
}

/// Exhaustive lattice search for the capacity of `ch`.
///
/// Every input is within L1 distance `|X|/N` of some lattice point. With the
/// channel fixed, `I(p) = H(pW) - sum_x p(x) H(W_x)`; the first term moves by
/// at most the Fannes–Audenaert bound at output distance `T = |X|/(2N)`, the
/// second by at most `T log|Y|`.
pub fn grid_capacity(ch: &ConditionalPmf, grid: GridSpec) -> Result<GridCapacity> {
    let n = ch.n_inputs();
    if n > grid.max_dims {
        return Err(Error::SizeCap {
            what: "input alphabet",
            size: n,
            cap: grid.max_dims,
        });
    }
    let mut value = f64::NEG_INFINITY;
    let mut argmax = Vec::new();
    for p in lattice(grid.resolution, n) {
        let v = channel_mi(&p, ch.rows());
        if v > value {
            value = v;
            argmax = p;
        }
    }
    let ny = ch.n_outputs();
    let t = (n as f64 / (2.0 * grid.resolution as f64)).min(1.0);
    let gap_bound = entropy_continuity(t, ny) + t * (ny as f64).log2();
    Ok(GridCapacity {
        value,
        gap_bound,
        argmax,
        explanation: format!(
            "lattice N={}; L1 rounding radius {n}/N gives output TV <= {t}; \
             gap = T*log2(|Y|-1) + h2(T) + T*log2|Y| (Fannes-Audenaert plus linear term)",
            grid.resolution
        ),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCLPoint {
    pub rates: RatePair,
    pub value: Bits,
    /// The optimum over `|U| <= u_card` is at most `value + gap_bound`.
    pub gap_bound: Bits,
    pub pentagon: Pentagon,
    pub p_u: Vec<f64>,
    pub p_x1_given_u: Vec<Vec<f64>>,
    pub p_x2_given_u: Vec<Vec<f64>>,
}

/// Pentagon of a factored input computed from scratch through entropies of
/// the full joint `(u, x1, x2, y)`.
fn pentagon_from_joint(
    mac: &Mac,
    pu: &[f64],
    a: &[&[f64]],
    b: &[&[f64]],
    scratch: &mut Scratch,
) -> Pentagon {
    let (k, n1, n2, ny) = (pu.len(), mac.x1().len(), mac.x2().len(), mac.y().len());
    scratch.reset(k, n1, n2, ny);
    for u in 0..k {
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                let w = pu[u] * a[u][x1] * b[u][x2];
                let i = (u * n1 + x1) * n2 + x2;
                scratch.uxx[i] += w;
                scratch.ux2[u * n2 + x2] += w;
                scratch.ux1[u * n1 + x1] += w;
                scratch.xx[x1 * n2 + x2] += w;
                for (y, &py) in mac.row(x1, x2).iter().enumerate() {
                    let m = w * py;
                    scratch.uxxy[i * ny + y] += m;
                    scratch.ux2y[(u * n2 + x2) * ny + y] += m;
                    scratch.ux1y[(u * n1 + x1) * ny + y] += m;
                    scratch.xxy[(x1 * n2 + x2) * ny + y] += m;
                    scratch.y[y] += m;
                }
            }
        }
    }
    let h = entropy_of;
    let h_uxxy = h(&scratch.uxxy);
    let h_uxx = h(&scratch.uxx);
    Pentagon {
        b1: (h(&scratch.ux2y) - h(&scratch.ux2) - h_uxxy + h_uxx).max(0.0),
        b2: (h(&scratch.ux1y) - h(&scratch.ux1) - h_uxxy + h_uxx).max(0.0),
        bsum: (h(&scratch.y) + h(&scratch.xx) - h(&scratch.xxy)).max(0.0),
    }
}

#[derive(Default)]
struct Scratch {
    uxxy: Vec<f64>,
    uxx: Vec<f64>,
    ux1: Vec<f64>,
    ux2: Vec<f64>,
    ux1y: Vec<f64>,
    ux2y: Vec<f64>,
    xxy: Vec<f64>,
    xx: Vec<f64>,
    y: Vec<f64>,
}

impl Scratch {
    fn reset(&mut self, k: usize, n1: usize, n2: usize, ny: usize) {
        let z = |v: &mut Vec<f64>, n: usize| {
            v.clear();
            v.resize(n, 0.0);
        };
        z(&mut self.uxxy, k * n1 * n2 * ny);
        z(&mut self.uxx, k * n1 * n2);
        z(&mut self.ux1, k * n1);
        z(&mut self.ux2, k * n2);
        z(&mut self.ux1y, k * n1 * ny);
        z(&mut self.ux2y, k * n2 * ny);
        z(&mut self.xxy, n1 * n2 * ny);
        z(&mut self.xx, n1 * n2);
        z(&mut self.y, ny);
    }
}

/// Odometer over the cartesian product of `k` copies of `lat`.
fn product_indices(len: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = len.pow(k as u32);
    (0..total).map(move |mut t| {
        let mut v = vec![0; k];
        for slot in v.iter_mut() {
            *slot = t % len;
            t /= len;
        }
        v
    })
}

/// Exhaustive lattice search for the best weighted inner-bound point with
/// `|U| <= u_card`.
///
/// Rounding each of the `1 + 2 u_card` simplices moves the joint of
/// `(U, X1, X2, Y)` by total variation at most `T = (u_card + |X1| + |X2|)/(2N)`.
/// Each pentagon constraint is a signed sum of four joint entropies, each
/// continuous per Fannes–Audenaert; the corner rates are 1- and
/// 2-Lipschitz in the constraints, giving the stated bound.
pub fn grid_cl_point(
    mac: &Mac,
    weight: (f64, f64),
    grid: GridSpec,
    u_card: usize,
) -> Result<GridCLPoint> {
    let (n1, n2, ny) = (mac.x1().len(), mac.x2().len(), mac.y().len());
    for (what, size) in [
        ("x1 alphabet", n1),
        ("x2 alphabet", n2),
        ("auxiliary cardinality", u_card),
    ] {
        if size > 2 {
            return Err(Error::SizeCap { what, size, cap: 2 });
        }
    }
    if u_card == 0 {
        return Err(Error::input("auxiliary cardinality must be at least 1"));
    }
    let (w1, w2) = weight;
    if !(w1 >= 0.0 && w2 >= 0.0) || w1 + w2 == 0.0 {
        return Err(Error::input("weights must be nonnegative and not all zero"));
    }
    let n = grid.resolution;
    let lu = lattice(n, u_card);
    let l1 = lattice(n, n1);
    let l2 = lattice(n, n2);
    let mut scratch = Scratch::default();
    let mut best: Option<GridCLPoint> = None;
    let mut best_value = f64::NEG_INFINITY;
    for pu in &lu {
        for ia in product_indices(l1.len(), u_card) {
            let a: Vec<&[f64]> = ia.iter().map(|&i| l1[i].as_slice()).collect();
            for ib in product_indices(l2.len(), u_card) {
                let b: Vec<&[f64]> = ib.iter().map(|&i| l2[i].as_slice()).collect();
                let pent = pentagon_from_joint(mac, pu, &a, &b, &mut scratch);
                let (rates, value) = pent.best_corner(weight);
                if value > best_value {
                    best_value = value;
                    best = Some(GridCLPoint {
                        rates,
                        value,
                        gap_bound: 0.0,
                        pentagon: pent,
                        p_u: pu.clone(),
                        p_x1_given_u: a.iter().map(|r| r.to_vec()).collect(),
                        p_x2_given_u: b.iter().map(|r| r.to_vec()).collect(),
                    });
                }
            }
        }
    }
    let t = (u_card + n1 + n2) as f64 / (2.0 * n as f64);
    let f = |d: usize| entropy_continuity(t, d);
    let per_constraint = [
        f(u_card * n2 * ny) + f(u_card * n2) + f(u_card * n1 * n2 * ny) + f(u_card * n1 * n2),
        f(u_card * n1 * ny) + f(u_card * n1) + f(u_card * n1 * n2 * ny) + f(u_card * n1 * n2),
        f(ny) + f(n1 * n2) + f(n1 * n2 * ny),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let mut out = best.expect("lattice is nonempty");
    out.gap_bound = 2.0 * (w1 + w2) * per_constraint;
    Ok(out)
}

/// Every set partition of `0..n` as a restricted growth string.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            rec(i + 1, n, max.max(b), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        let mut cur = vec![0];
        rec(1, n, 0, &mut cur, &mut out);
    }
    out
}

/// True iff some function `K` of the input makes `K` a function of the
/// output and `Z -> K -> Y` Markov, with `Z` uniform on `support`.
pub fn brute_force_condition2(ch: &ConditionalPmf, support: &[String]) -> Result<bool> {
    if support.len() > MAX_SUPPORT {
        return Err(Error::SizeCap {
            what: "support",
            size: support.len(),
            cap: MAX_SUPPORT,
        });
    }
    if ch.n_outputs() > MAX_OUTPUTS {
        return Err(Error::SizeCap {
            what: "output alphabet",
            size: ch.n_outputs(),
            cap: MAX_OUTPUTS,
        });
    }
    if support.is_empty() {
        return Err(Error::input("support must be nonempty"));
    }
    let zs: Vec<usize> = support
        .iter()
        .map(|s| index_of(ch.input_alphabet(), s))
        .collect::<Result<_>>()?;
    let ny = ch.n_outputs();
    let pz = 1.0 / zs.len() as f64;
    for part in set_partitions(zs.len()) {
        let nk = part.iter().max().map_or(0, |m| m + 1);
        // p(k, y) and p(z, k, y); z is determined by position
        let mut pky = vec![0.0; nk * ny];
        let mut pzky = Vec::with_capacity(zs.len() * ny);
        let mut pk = vec![0.0; nk];
        for (pos, &z) in zs.iter().enumerate() {
            pk[part[pos]] += pz;
            for (y, &w) in ch.row(z).iter().enumerate() {
                pky[part[pos] * ny + y] += pz * w;
                pzky.push(pz * w);
            }
        }
        let mut py = vec![0.0; ny];
        for k in 0..nk {
            for y in 0..ny {
                py[y] += pky[k * ny + y];
            }
        }
        let h_k_given_y = entropy_of(&pky) - entropy_of(&py);
        // I(Z;Y|K) = H(Z,K) + H(K,Y) - H(K) - H(Z,K,Y), with H(Z,K) = H(Z)
        let h_z = (zs.len() as f64).log2();
        let cmi = h_z + entropy_of(&pky) - entropy_of(&pk) - entropy_of(&pzky);
        if h_k_given_y <= ZERO_ENTROPY && cmi <= ZERO_ENTROPY {
            return Ok(true);
        }
    }
    Ok(false)
}
