//! Cover–Leung inner bound and cut-set outer bounds on the feedback
//! capacity region.
//!
//! The inner frontier is traced by weighted-sum scalarization: for each
//! weight the pentagon of a factored input `p(u) p(x1|u) p(x2|u)` is scored
//! by its better corner, and the score is pushed up by projected ascent
//! over the factored simplices from many starts. Every returned point keeps
//! its input, so achievability is re-checkable independently of how good
//! the optimizer was.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{default_labels, Axis, ConditionalPmf, JointDist, Mac, Pmf, User};
use crate::error::{Error, Result};
use crate::info::{entropy_of, Bits};
use crate::optimize::{blahut_arimoto, maximize_joint_mi, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::report::csv_f64;

/// Finite-difference step for the ascent gradient.
pub const FD_STEP: f64 = 1e-4;
pub const DEFAULT_RESTARTS: usize = 25;
/// Re-evaluation tolerance for stored frontier points.
pub const CERTIFY_TOL: f64 = 1e-9;
const ASCENT_ITERS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeedbackModel {
    PF,
    IF,
    DF,
}

impl FromStr for FeedbackModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "PF" => Ok(FeedbackModel::PF),
            "IF" => Ok(FeedbackModel::IF),
            "DF" => Ok(FeedbackModel::DF),
            _ => Err(Error::input(format!("unknown feedback model {s:?}"))),
        }
    }
}

impl fmt::Display for FeedbackModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Factored auxiliary input `p(u) p(x1|u) p(x2|u)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CLInput {
    pub p_u: Pmf,
    pub p_x1_given_u: ConditionalPmf,
    pub p_x2_given_u: ConditionalPmf,
}

impl CLInput {
    pub fn new(
        p_u: Pmf,
        p_x1_given_u: ConditionalPmf,
        p_x2_given_u: ConditionalPmf,
    ) -> Result<Self> {
        if p_x1_given_u.input_alphabet() != p_u.alphabet()
            || p_x2_given_u.input_alphabet() != p_u.alphabet()
        {
            return Err(Error::input(
                "conditionals must be indexed by the U alphabet",
            ));
        }
        Ok(CLInput {
            p_u,
            p_x1_given_u,
            p_x2_given_u,
        })
    }

    /// `|U| = 1` with independent inputs.
    pub fn product(mac: &Mac, p1: &[f64], p2: &[f64]) -> Result<Self> {
        let u = default_labels(1);
        CLInput::new(
            Pmf::point(u.clone(), 0),
            ConditionalPmf::new(u.clone(), mac.x1().to_vec(), vec![p1.to_vec()])?,
            ConditionalPmf::new(u, mac.x2().to_vec(), vec![p2.to_vec()])?,
        )
    }

    pub fn u_cardinality(&self) -> usize {
        self.p_u.len()
    }

    fn check(&self, mac: &Mac) -> Result<()> {
        if self.p_x1_given_u.output_alphabet() != mac.x1()
            || self.p_x2_given_u.output_alphabet() != mac.x2()
        {
            return Err(Error::input(
                "auxiliary input alphabets do not match the channel",
            ));
        }
        Ok(())
    }

    fn from_params(mac: &Mac, params: &Params) -> Self {
        let u = default_labels(params.k);
        let rows = |flat: &[f64], n: usize| flat.chunks(n).map(<[f64]>::to_vec).collect();
        CLInput {
            p_u: Pmf::from_parts_unchecked(u.clone(), params.pu().to_vec()),
            p_x1_given_u: ConditionalPmf::from_parts_unchecked(
                u.clone(),
                mac.x1().to_vec(),
                rows(params.a(), params.n1),
            ),
            p_x2_given_u: ConditionalPmf::from_parts_unchecked(
                u,
                mac.x2().to_vec(),
                rows(params.b(), params.n2),
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    pub r1: Bits,
    pub r2: Bits,
}

impl RatePair {
    pub fn weighted(&self, w: (f64, f64)) -> f64 {
        w.0 * self.r1 + w.1 * self.r2
    }
}

/// The three constraints `R1 <= b1`, `R2 <= b2`, `R1 + R2 <= bsum`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pentagon {
    pub b1: Bits,
    pub b2: Bits,
    pub bsum: Bits,
}

impl Pentagon {
    /// Corner maximizing `R1` first.
    pub fn corner_a(&self) -> RatePair {
        let r1 = self.b1.min(self.bsum).max(0.0);
        RatePair {
            r1,
            r2: self.b2.min(self.bsum - r1).max(0.0),
        }
    }

    pub fn corner_b(&self) -> RatePair {
        let r2 = self.b2.min(self.bsum).max(0.0);
        RatePair {
            r1: self.b1.min(self.bsum - r2).max(0.0),
            r2,
        }
    }

    /// The corner with the larger weighted value; ties go to corner A.
    pub fn best_corner(&self, w: (f64, f64)) -> (RatePair, f64) {
        let (a, b) = (self.corner_a(), self.corner_b());
        let (va, vb) = (a.weighted(w), b.weighted(w));
        if vb > va {
            (b, vb)
        } else {
            (a, va)
        }
    }

    /// True if `r` satisfies all three constraints within `tol`.
    pub fn contains(&self, r: &RatePair, tol: f64) -> bool {
        r.r1 >= -tol
            && r.r2 >= -tol
            && r.r1 <= self.b1 + tol
            && r.r2 <= self.b2 + tol
            && r.r1 + r.r2 <= self.bsum + tol
    }
}

/// Flat, normalized parameters of a factored input.
#[derive(Debug, Clone)]
struct Params {
    k: usize,
    n1: usize,
    n2: usize,
    v: Vec<f64>,
}

impl Params {
    fn new(k: usize, n1: usize, n2: usize) -> Self {
        Params {
            k,
            n1,
            n2,
            v: vec![0.0; k + k * n1 + k * n2],
        }
    }

    fn pu(&self) -> &[f64] {
        &self.v[..self.k]
    }

    fn a(&self) -> &[f64] {
        &self.v[self.k..self.k + self.k * self.n1]
    }

    fn b(&self) -> &[f64] {
        &self.v[self.k + self.k * self.n1..]
    }

    /// `(start, len)` of every simplex block.
    fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, self.k)];
        for u in 0..self.k {
            out.push((self.k + u * self.n1, self.n1));
        }
        for u in 0..self.k {
            out.push((self.k + self.k * self.n1 + u * self.n2, self.n2));
        }
        out
    }

    fn block_of(&self, i: usize) -> (usize, usize) {
        self.blocks()
            .into_iter()
            .find(|&(s, n)| i >= s && i < s + n)
            .expect("index in range")
    }

    fn from_input(q: &CLInput) -> Self {
        let k = q.u_cardinality();
        let n1 = q.p_x1_given_u.n_outputs();
        let n2 = q.p_x2_given_u.n_outputs();
        let mut v = q.p_u.probs().to_vec();
        v.extend(q.p_x1_given_u.rows().iter().flatten());
        v.extend(q.p_x2_given_u.rows().iter().flatten());
        Params { k, n1, n2, v }
    }
}

/// Entropy after dividing out rounding drift in the total mass, so that a
/// point mass scores exactly zero.
fn normalized_entropy(v: &[f64]) -> f64 {
    let s: f64 = v.iter().sum();
    if s <= 0.0 {
        return 0.0;
    }
    -v.iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| {
            let q = p / s;
            q * q.log2()
        })
        .sum::<f64>()
}

/// Pentagon evaluator specialised to one channel.
struct PentagonEval<'a> {
    mac: &'a Mac,
    /// `H(Y|X1=x1,X2=x2)` per input pair.
    row_entropy: Vec<f64>,
}

impl<'a> PentagonEval<'a> {
    fn new(mac: &'a Mac) -> Self {
        let ny = mac.y().len();
        PentagonEval {
            mac,
            row_entropy: mac.flat().chunks(ny).map(entropy_of).collect(),
        }
    }

    fn eval(&self, p: &Params) -> Pentagon {
        let (k, n1, n2) = (p.k, p.n1, p.n2);
        let ny = self.mac.y().len();
        let (pu, a, b) = (p.pu(), p.a(), p.b());
        let mut h_noise = 0.0;
        let mut h_given_u_x2 = 0.0;
        let mut h_given_u_x1 = 0.0;
        let mut py = vec![0.0; ny];
        let mut mix = vec![0.0; ny];
        for u in 0..k {
            let w = pu[u];
            if w == 0.0 {
                continue;
            }
            let au = &a[u * n1..(u + 1) * n1];
            let bu = &b[u * n2..(u + 1) * n2];
            for x1 in 0..n1 {
                for x2 in 0..n2 {
                    h_noise += w * au[x1] * bu[x2] * self.row_entropy[x1 * n2 + x2];
                }
            }
            for x2 in 0..n2 {
                if bu[x2] == 0.0 {
                    continue;
                }
                mix.iter_mut().for_each(|m| *m = 0.0);
                for x1 in 0..n1 {
                    let row = self.mac.row(x1, x2);
                    for y in 0..ny {
                        mix[y] += au[x1] * row[y];
                    }
                }
                h_given_u_x2 += w * bu[x2] * normalized_entropy(&mix);
                for y in 0..ny {
                    py[y] += w * bu[x2] * mix[y];
                }
            }
            for x1 in 0..n1 {
                if au[x1] == 0.0 {
                    continue;
                }
                mix.iter_mut().for_each(|m| *m = 0.0);
                for x2 in 0..n2 {
                    let row = self.mac.row(x1, x2);
                    for y in 0..ny {
                        mix[y] += bu[x2] * row[y];
                    }
                }
                h_given_u_x1 += w * au[x1] * normalized_entropy(&mix);
            }
        }
        Pentagon {
            b1: (h_given_u_x2 - h_noise).max(0.0),
            b2: (h_given_u_x1 - h_noise).max(0.0),
            bsum: (normalized_entropy(&py) - h_noise).max(0.0),
        }
    }
}

/// Pentagon constraints of a factored input on `mac`.
pub fn cl_pentagon(mac: &Mac, q: &CLInput) -> Result<Pentagon> {
    q.check(mac)?;
    Ok(PentagonEval::new(mac).eval(&Params::from_input(q)))
}

/// The same constraints computed through an explicit joint over
/// `(U, X1, X2, Y)`; slower, used to cross-check [`cl_pentagon`].
pub fn cl_pentagon_via_joint(mac: &Mac, q: &CLInput) -> Result<Pentagon> {
    let j = cl_joint(mac, q)?;
    Ok(Pentagon {
        b1: j.cmi(&[1], &[3], &[0, 2]),
        b2: j.cmi(&[2], &[3], &[0, 1]),
        bsum: j.mi(&[1, 2], &[3]),
    })
}

/// `p(u) p(x1|u) p(x2|u) p(y|x1,x2)` over axes `(u, x1, x2, y)`.
pub fn cl_joint(mac: &Mac, q: &CLInput) -> Result<JointDist> {
    q.check(mac)?;
    let (n1, n2, ny) = (mac.x1().len(), mac.x2().len(), mac.y().len());
    let mut table = Vec::with_capacity(q.u_cardinality() * n1 * n2 * ny);
    for (u, pu) in q.p_u.probs().iter().enumerate() {
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                let w = pu * q.p_x1_given_u.row(u)[x1] * q.p_x2_given_u.row(u)[x2];
                table.extend(mac.row(x1, x2).iter().map(|p| w * p));
            }
        }
    }
    JointDist::new(
        vec![
            Axis::new("u", q.p_u.alphabet().to_vec()),
            Axis::new("x1", mac.x1().to_vec()),
            Axis::new("x2", mac.x2().to_vec()),
            Axis::new("y", mac.y().to_vec()),
        ],
        table,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    InnerBound,
    OuterBound,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::InnerBound => "inner_bound",
            Provenance::OuterBound => "outer_bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub weight: (f64, f64),
    pub rates: RatePair,
    pub value: Bits,
    /// Achieving input; present on inner-bound points.
    pub witness: Option<CLInput>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionFrontier {
    pub points: Vec<FrontierPoint>,
    pub provenance: Provenance,
}

impl RegionFrontier {
    /// Re-evaluates every witness and returns the largest constraint
    /// violation found (0 when every point lies in its pentagon).
    pub fn max_certificate_violation(&self, mac: &Mac) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for p in &self.points {
            let Some(w) = &p.witness else { continue };
            let pent = cl_pentagon(mac, w)?;
            let r = p.rates;
            let excess = [
                -r.r1,
                -r.r2,
                r.r1 - pent.b1,
                r.r2 - pent.b2,
                r.r1 + r.r2 - pent.bsum,
            ];
            worst = excess.iter().copied().fold(worst, f64::max);
        }
        Ok(worst)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("w1,w2,R1,R2,provenance\n");
        self.append_csv_rows(&mut out);
        out
    }

    pub fn append_csv_rows(&self, out: &mut String) {
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_f64(p.weight.0),
                csv_f64(p.weight.1),
                csv_f64(p.rates.r1),
                csv_f64(p.rates.r2),
                self.provenance
            ));
        }
    }
}

/// `n` weight directions spread evenly over the quarter circle, from
/// `(1, 0)` to `(0, 1)`.
pub fn weight_fan(n: usize) -> Vec<(f64, f64)> {
    if n == 1 {
        return vec![(1.0, 1.0)];
    }
    (0..n)
        .map(|i| {
            if i == 0 {
                return (1.0, 0.0);
            }
            if i == n - 1 {
                return (0.0, 1.0);
            }
            let t = std::f64::consts::FRAC_PI_2 * i as f64 / (n - 1) as f64;
            (t.cos(), t.sin())
        })
        .collect()
}

fn check_weights(weights: &[(f64, f64)]) -> Result<()> {
    for &(a, b) in weights {
        if !(a >= 0.0 && b >= 0.0) || (a == 0.0 && b == 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::input(format!(
                "weight ({a}, {b}) must be nonnegative, finite and not all zero"
            )));
        }
    }
    Ok(())
}

fn sort_by_ratio(points: &mut [FrontierPoint]) {
    points.sort_by(|p, q| {
        let ang = |w: (f64, f64)| w.0.atan2(w.1);
        ang(p.weight).total_cmp(&ang(q.weight))
    });
}

/// Default `|U|` for the auxiliary search.
pub fn default_u_card(mac: &Mac) -> usize {
    mac.x1().len() * mac.x2().len() + 2
}

/// Euclidean projection onto the probability simplex, in place.
fn project_simplex(v: &mut [f64]) {
    let mut s: Vec<f64> = v.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, &x) in s.iter().enumerate() {
        cum += x;
        let t = (cum - 1.0) / (i + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    for x in v.iter_mut() {
        *x = (*x - theta).max(0.0);
    }
    let total: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= total);
}

struct Ascent<'a> {
    eval: PentagonEval<'a>,
    weight: (f64, f64),
}

impl Ascent<'_> {
    fn score(&self, p: &Params) -> f64 {
        self.eval.eval(p).best_corner(self.weight).1
    }

    /// Forward-difference gradient of the score with each block
    /// renormalized after the perturbation.
    fn gradient(&self, p: &Params, f0: f64) -> Vec<f64> {
        let mut g = vec![0.0; p.v.len()];
        let mut q = p.clone();
        for i in 0..p.v.len() {
            let (s, n) = p.block_of(i);
            q.v[s..s + n].copy_from_slice(&p.v[s..s + n]);
            q.v[i] += FD_STEP;
            let tot = 1.0 + FD_STEP;
            q.v[s..s + n].iter_mut().for_each(|x| *x /= tot);
            g[i] = (self.score(&q) - f0) / FD_STEP;
            q.v[s..s + n].copy_from_slice(&p.v[s..s + n]);
        }
        g
    }

    fn run(&self, mut p: Params) -> (Params, f64) {
        let blocks = p.blocks();
        let mut f = self.score(&p);
        let mut step = 0.1;
        for _ in 0..ASCENT_ITERS {
            let g = self.gradient(&p, f);
            let gmax = g.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if gmax < 1e-12 {
                break;
            }
            let mut moved = false;
            while step >= 1e-7 {
                let mut cand = p.clone();
                for (x, gi) in cand.v.iter_mut().zip(&g) {
                    *x += step * gi / gmax;
                }
                for &(s, n) in &blocks {
                    project_simplex(&mut cand.v[s..s + n]);
                }
                let fc = self.score(&cand);
                if fc > f {
                    p = cand;
                    f = fc;
                    step = (step * 2.0).min(0.5);
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if !moved {
                break;
            }
        }
        (p, f)
    }
}

/// Seeds derived per `(weight, restart)` so work items are independent.
fn derived_seed(seed: u64, weight_idx: usize, restart: usize) -> u64 {
    seed ^ (weight_idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (restart as u64).wrapping_mul(0xD1B5_4A32_D192_ED03)
}

fn random_simplex(rng: &mut ChaCha8Rng, out: &mut [f64]) {
    for x in out.iter_mut() {
        *x = -(1.0 - rng.gen::<f64>()).ln();
    }
    let s: f64 = out.iter().sum();
    out.iter_mut().for_each(|x| *x /= s);
}

/// Deterministic starts: `U` trivial, one user sending a fixed symbol and
/// the other using the capacity-achieving input for that symbol, plus
/// independent uniform inputs.
fn structured_starts(mac: &Mac, k: usize) -> Vec<Params> {
    let (n1, n2) = (mac.x1().len(), mac.x2().len());
    let base = || {
        let mut p = Params::new(k, n1, n2);
        p.v[0] = 1.0;
        for u in 0..k {
            for x in 0..n1 {
                p.v[k + u * n1 + x] = 1.0 / n1 as f64;
            }
            for x in 0..n2 {
                p.v[k + k * n1 + u * n2 + x] = 1.0 / n2 as f64;
            }
        }
        p
    };
    let mut out = vec![base()];
    for user in [User::One, User::Two] {
        let nk = mac.alphabet(user.other()).len();
        for xk in 0..nk {
            let opt = blahut_arimoto(
                &mac.induced_channel_at(user, xk),
                DEFAULT_TOL,
                DEFAULT_MAX_ITER,
            );
            let mut p = base();
            let (own, fixed, n_own) = match user {
                User::One => (k, k + k * n1, n1),
                User::Two => (k + k * n1, k, n2),
            };
            p.v[own..own + n_own].copy_from_slice(opt.argmax_input.probs());
            for x in 0..nk {
                p.v[fixed + x] = if x == xk { 1.0 } else { 0.0 };
            }
            out.push(p);
        }
    }
    out
}

fn random_start(mac: &Mac, k: usize, seed: u64) -> Params {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Params::new(k, mac.x1().len(), mac.x2().len());
    for (s, n) in p.blocks() {
        random_simplex(&mut rng, &mut p.v[s..s + n]);
    }
    p
}

#[cfg(feature = "parallel")]
fn map_starts<F>(n: usize, f: F) -> Vec<(Params, f64)>
where
    F: Fn(usize) -> (Params, f64) + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_starts<F>(n: usize, f: F) -> Vec<(Params, f64)>
where
    F: Fn(usize) -> (Params, f64),
{
    (0..n).map(f).collect()
}

/// Inner-bound frontier by weighted-sum scalarization.
pub fn cl_frontier(
    mac: &Mac,
    weights: &[(f64, f64)],
    restarts: usize,
    u_card: usize,
    seed: u64,
) -> Result<RegionFrontier> {
    check_weights(weights)?;
    if u_card == 0 {
        return Err(Error::input("auxiliary cardinality must be at least 1"));
    }
    let structured = structured_starts(mac, u_card);
    let mut points = Vec::with_capacity(weights.len());
    for (wi, &w) in weights.iter().enumerate() {
        let ascent = Ascent {
            eval: PentagonEval::new(mac),
            weight: w,
        };
        let n_starts = structured.len() + restarts;
        let results = map_starts(n_starts, |i| {
            let start = if i < structured.len() {
                structured[i].clone()
            } else {
                random_start(mac, u_card, derived_seed(seed, wi, i - structured.len()))
            };
            ascent.run(start)
        });
        // fixed-order reduction; ties keep the earliest start
        let (best, _) = results
            .into_iter()
            .reduce(|acc, r| if r.1 > acc.1 { r } else { acc })
            .expect("at least one start");
        let witness = CLInput::from_params(mac, &best);
        let (rates, value) = cl_pentagon(mac, &witness)?.best_corner(w);
        points.push(FrontierPoint {
            weight: w,
            rates,
            value,
            witness: Some(witness),
        });
    }
    sort_by_ratio(&mut points);
    Ok(RegionFrontier {
        points,
        provenance: Provenance::InnerBound,
    })
}

/// Outputs `(y, y')` of two conditionally independent looks at the channel,
/// labelled `"y|y'"`.
fn two_look_channel(mac: &Mac, user: User, k: usize) -> ConditionalPmf {
    let ch = mac.induced_channel_at(user, k);
    let ys = mac.y();
    let labels = ys
        .iter()
        .flat_map(|a| ys.iter().map(move |b| format!("{a}|{b}")))
        .collect();
    let rows = ch
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .flat_map(|a| r.iter().map(move |b| a * b))
                .collect()
        })
        .collect();
    ConditionalPmf::from_parts_unchecked(ch.input_alphabet().to_vec(), labels, rows)
}

/// Cut-set bound on the rate of `user` alone.
///
/// The conditional mutual information given the other input is an average
/// over its symbols, so the maximization splits into one capacity per
/// fixed symbol. Under perfect feedback the relay's observation is the
/// output itself; under either independent model it is one independent
/// copy, so IF and DF coincide.
pub fn cutset_single_rate(mac: &Mac, user: User, model: FeedbackModel, tol: f64) -> Bits {
    let nk = mac.alphabet(user.other()).len();
    (0..nk)
        .map(|k| {
            let ch = match model {
                FeedbackModel::PF => mac.induced_channel_at(user, k),
                FeedbackModel::IF | FeedbackModel::DF => two_look_channel(mac, user, k),
            };
            blahut_arimoto(&ch, tol, DEFAULT_MAX_ITER).value
        })
        .fold(0.0, f64::max)
}

/// Sum-rate cut-set bound `max I(X1,X2;Y)`.
pub fn cutset_sum_rate(mac: &Mac, tol: f64) -> Bits {
    maximize_joint_mi(mac, tol, DEFAULT_MAX_ITER).value
}

/// Single-rate and sum-rate cut-set values for one feedback model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutSet {
    pub model: FeedbackModel,
    pub c1: Bits,
    pub c2: Bits,
    pub csum: Bits,
}

pub fn cutset_bounds(mac: &Mac, model: FeedbackModel, tol: f64) -> CutSet {
    CutSet {
        model,
        c1: cutset_single_rate(mac, User::One, model, tol),
        c2: cutset_single_rate(mac, User::Two, model, tol),
        csum: cutset_sum_rate(mac, tol),
    }
}

impl CutSet {
    /// Each constraint is maximized separately, so this pentagon contains
    /// the true cut-set region.
    pub fn pentagon(&self) -> Pentagon {
        Pentagon {
            b1: self.c1,
            b2: self.c2,
            bsum: self.csum,
        }
    }

    pub fn frontier(&self, weights: &[(f64, f64)]) -> Result<RegionFrontier> {
        check_weights(weights)?;
        let pent = self.pentagon();
        let mut points: Vec<FrontierPoint> = weights
            .iter()
            .map(|&w| {
                let (rates, value) = pent.best_corner(w);
                FrontierPoint {
                    weight: w,
                    rates,
                    value,
                    witness: None,
                }
            })
            .collect();
        sort_by_ratio(&mut points);
        Ok(RegionFrontier {
            points,
            provenance: Provenance::OuterBound,
        })
    }
}
