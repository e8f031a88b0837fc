//! Capacity iterations over probability simplices.

use serde::{Deserialize, Serialize};

use crate::channel::{ConditionalPmf, Mac, Pmf};
use crate::info::{kl_of, Bits};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 10_000;
/// Probabilities at or below this are treated as outside the support.
pub const SUPPORT_EPS: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    /// `I(X;Y)` at `argmax_input`.
    pub value: Bits,
    pub argmax_input: Pmf,
    pub output_dist: Pmf,
    pub iterations: usize,
    pub converged: bool,
    /// Final `max_x D(p(y|x)‖p(y)) - value`; the capacity lies in
    /// `[value, value + gap]`.
    pub gap: Bits,
}

/// Blahut–Arimoto from the uniform input.
pub fn blahut_arimoto(ch: &ConditionalPmf, tol: f64, max_iter: usize) -> OptResult {
    let n = ch.n_inputs();
    run(ch, vec![1.0 / n as f64; n], tol, max_iter, None)
}

/// Blahut–Arimoto from a caller-supplied starting input. Inputs with zero
/// starting mass stay at zero.
pub fn blahut_arimoto_from(
    ch: &ConditionalPmf,
    init: &[f64],
    tol: f64,
    max_iter: usize,
) -> OptResult {
    run(ch, init.to_vec(), tol, max_iter, None)
}

/// Like [`blahut_arimoto`] but also returns the value at every iterate.
pub fn blahut_arimoto_traced(
    ch: &ConditionalPmf,
    tol: f64,
    max_iter: usize,
) -> (OptResult, Vec<Bits>) {
    let n = ch.n_inputs();
    let mut trace = Vec::new();
    let r = run(ch, vec![1.0 / n as f64; n], tol, max_iter, Some(&mut trace));
    (r, trace)
}

fn run(
    ch: &ConditionalPmf,
    mut p: Vec<f64>,
    tol: f64,
    max_iter: usize,
    mut trace: Option<&mut Vec<Bits>>,
) -> OptResult {
    assert!(tol > 0.0, "tolerance must be positive");
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= total);

    let rows = ch.rows();
    let mut d = vec![0.0; rows.len()];
    let mut iterations = 0;
    loop {
        let q = ch.output_dist(&p);
        for (dx, row) in d.iter_mut().zip(rows) {
            *dx = kl_of(row, &q);
        }
        let value: f64 = p
            .iter()
            .zip(&d)
            .filter(|(px, _)| **px > 0.0)
            .map(|(px, dx)| px * dx)
            .sum::<f64>()
            .max(0.0);
        let upper = d.iter().copied().fold(0.0, f64::max);
        if let Some(t) = trace.as_deref_mut() {
            t.push(value);
        }
        let gap = (upper - value).max(0.0);
        if gap < tol || iterations >= max_iter {
            return OptResult {
                value,
                argmax_input: Pmf::from_parts_unchecked(ch.input_alphabet().to_vec(), p),
                output_dist: Pmf::from_parts_unchecked(ch.output_alphabet().to_vec(), q),
                iterations,
                converged: gap < tol,
                gap,
            };
        }
        if upper.is_infinite() {
            // only reachable after underflow wiped out an input that sees
            // otherwise-unreached outputs; put a sliver of mass back
            for (px, dx) in p.iter_mut().zip(&d) {
                if dx.is_infinite() {
                    *px = px.max(1e-12);
                }
            }
        } else {
            for (px, dx) in p.iter_mut().zip(&d) {
                *px *= (dx - upper).exp2();
            }
        }
        let s: f64 = p.iter().sum();
        p.iter_mut().for_each(|v| *v /= s);
        iterations += 1;
    }
}

/// Capacity-achieving input in the relative interior of the optimal face.
///
/// Runs Blahut–Arimoto from one vertex-biased start per input symbol,
/// averages the limits, and refines the average; the multiplicative update
/// never removes support, so the result keeps every symbol any start kept.
pub fn max_support_input(ch: &ConditionalPmf, tol: f64) -> OptResult {
    let n = ch.n_inputs();
    if n == 1 {
        return blahut_arimoto(ch, tol, DEFAULT_MAX_ITER);
    }
    let mut avg = vec![0.0; n];
    for i in 0..n {
        let mut init = vec![0.5 / n as f64; n];
        init[i] += 0.5;
        let r = blahut_arimoto_from(ch, &init, tol, DEFAULT_MAX_ITER);
        for (a, p) in avg.iter_mut().zip(r.argmax_input.probs()) {
            *a += p / n as f64;
        }
    }
    let mut r = blahut_arimoto_from(ch, &avg, tol, DEFAULT_MAX_ITER);
    r.iterations += 1;
    r
}

/// `max_{p(x1,x2)} I(X1,X2;Y)`, treating the input pair as one symbol.
pub fn maximize_joint_mi(mac: &Mac, tol: f64, max_iter: usize) -> OptResult {
    blahut_arimoto(&mac.joint_input_channel(), tol, max_iter)
}
