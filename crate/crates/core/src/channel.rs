//! Channel objects: probability vectors, conditional tables, the two-user
//! MAC tensor and dense joint distributions built from it.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on row sums.
pub const SUM_TOL: f64 = 1e-9;
/// Magnitudes below this are treated as exact zeros.
pub const ZERO_CLAMP: f64 = 1e-15;

/// One of the two transmitters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum User {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl User {
    pub fn other(self) -> User {
        match self {
            User::One => User::Two,
            User::Two => User::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            User::One => 1,
            User::Two => 2,
        }
    }
}

impl fmt::Display for User {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

impl FromStr for User {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(User::One),
            "2" => Ok(User::Two),
            other => Err(Error::input(format!("user must be 1 or 2, got {other:?}"))),
        }
    }
}

pub(crate) fn index_of(alphabet: &[String], symbol: &str) -> Result<usize> {
    alphabet
        .iter()
        .position(|s| s == symbol)
        .ok_or_else(|| Error::input(format!("unknown symbol {symbol:?}")))
}

pub(crate) fn check_unique(alphabet: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for s in alphabet {
        if !seen.insert(s.as_str()) {
            return Err(Error::input(format!("duplicate symbol {s:?} in {what}")));
        }
    }
    Ok(())
}

fn clamp(p: f64) -> f64 {
    if p.abs() < ZERO_CLAMP {
        0.0
    } else {
        p
    }
}

/// Clamps near-zeros and checks one probability row, renormalizing when the
/// sum is off by less than [`SUM_TOL`].
fn sanitize_row(row: &mut [f64], what: &str) -> Result<()> {
    for p in row.iter_mut() {
        *p = clamp(*p);
        if !p.is_finite() || *p < 0.0 || *p > 1.0 {
            return Err(Error::input(format!("{what}: entry {p} outside [0,1]")));
        }
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::input(format!("{what}: sums to {sum}, not 1")));
    }
    if sum != 1.0 {
        row.iter_mut().for_each(|p| *p /= sum);
    }
    Ok(())
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// A probability vector on a labelled alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pmf {
    alphabet: Vec<String>,
    probs: Vec<f64>,
}

impl Pmf {
    pub fn new(alphabet: Vec<String>, mut probs: Vec<f64>) -> Result<Self> {
        if alphabet.len() != probs.len() {
            return Err(Error::input(format!(
                "pmf has {} labels but {} probabilities",
                alphabet.len(),
                probs.len()
            )));
        }
        if alphabet.is_empty() {
            return Err(Error::input("pmf over an empty alphabet"));
        }
        check_unique(&alphabet, "pmf alphabet")?;
        sanitize_row(&mut probs, "pmf")?;
        Ok(Pmf { alphabet, probs })
    }

    /// Pmf labelled `0..n`.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        Pmf::new(default_labels(probs.len()), probs)
    }

    pub fn uniform(alphabet: Vec<String>) -> Self {
        let n = alphabet.len();
        Pmf {
            alphabet,
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn point(alphabet: Vec<String>, index: usize) -> Self {
        let mut probs = vec![0.0; alphabet.len()];
        probs[index] = 1.0;
        Pmf { alphabet, probs }
    }

    pub(crate) fn from_parts_unchecked(alphabet: Vec<String>, probs: Vec<f64>) -> Self {
        Pmf { alphabet, probs }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn prob_of(&self, symbol: &str) -> Result<f64> {
        Ok(self.probs[index_of(&self.alphabet, symbol)?])
    }

    /// Labels whose mass exceeds `threshold`.
    pub fn support(&self, threshold: f64) -> Vec<String> {
        self.alphabet
            .iter()
            .zip(&self.probs)
            .filter(|(_, &p)| p > threshold)
            .map(|(s, _)| s.clone())
            .collect()
    }
}

/// A stochastic matrix `rows[x][y] = p(y|x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionalPmf {
    input_alphabet: Vec<String>,
    output_alphabet: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl ConditionalPmf {
    pub fn new(
        input_alphabet: Vec<String>,
        output_alphabet: Vec<String>,
        mut rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if rows.len() != input_alphabet.len() || input_alphabet.is_empty() {
            return Err(Error::input(format!(
                "conditional pmf has {} inputs but {} rows",
                input_alphabet.len(),
                rows.len()
            )));
        }
        check_unique(&input_alphabet, "input alphabet")?;
        check_unique(&output_alphabet, "output alphabet")?;
        for (i, row) in rows.iter_mut().enumerate() {
            if row.len() != output_alphabet.len() {
                return Err(Error::input(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    output_alphabet.len()
                )));
            }
            sanitize_row(row, &format!("row {i}"))?;
        }
        Ok(ConditionalPmf {
            input_alphabet,
            output_alphabet,
            rows,
        })
    }

    /// Channel labelled `0..n` on both sides.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let ny = rows.first().map_or(0, Vec::len);
        ConditionalPmf::new(default_labels(rows.len()), default_labels(ny), rows)
    }

    pub(crate) fn from_parts_unchecked(
        input_alphabet: Vec<String>,
        output_alphabet: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> Self {
        ConditionalPmf {
            input_alphabet,
            output_alphabet,
            rows,
        }
    }

    pub fn input_alphabet(&self) -> &[String] {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &[String] {
        &self.output_alphabet
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.rows[x]
    }

    pub fn n_inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.output_alphabet.len()
    }

    /// Output distribution induced by `input`.
    pub fn output_dist(&self, input: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n_outputs()];
        for (px, row) in input.iter().zip(&self.rows) {
            if *px == 0.0 {
                continue;
            }
            for (o, w) in out.iter_mut().zip(row) {
                *o += px * w;
            }
        }
        out
    }

    /// Restriction to a subset of inputs, in the given order.
    pub fn restrict(&self, inputs: &[usize]) -> ConditionalPmf {
        ConditionalPmf {
            input_alphabet: inputs
                .iter()
                .map(|&i| self.input_alphabet[i].clone())
                .collect(),
            output_alphabet: self.output_alphabet.clone(),
            rows: inputs.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }
}

/// One problem found by [`Mac::validate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Shape {
        expected: usize,
        found: usize,
    },
    DuplicateSymbol {
        axis: String,
        symbol: String,
    },
    EmptyAlphabet {
        axis: String,
    },
    /// `residual = 1 - sum` for the `(x1, x2)` slice.
    RowSum {
        x1: String,
        x2: String,
        residual: f64,
    },
    NegativeMass {
        x1: String,
        x2: String,
        y: String,
        value: f64,
    },
    AboveOne {
        x1: String,
        x2: String,
        y: String,
        value: f64,
    },
    NonFinite {
        x1: String,
        x2: String,
        y: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { expected, found } => {
                write!(f, "tensor has {found} entries, expected {expected}")
            }
            Violation::DuplicateSymbol { axis, symbol } => {
                write!(f, "duplicate symbol {symbol:?} in {axis}")
            }
            Violation::EmptyAlphabet { axis } => write!(f, "empty alphabet {axis}"),
            Violation::RowSum { x1, x2, residual } => {
                write!(f, "row (x1={x1}, x2={x2}) off by residual {residual:e}")
            }
            Violation::NegativeMass { x1, x2, y, value } => {
                write!(f, "negative mass {value} at (x1={x1}, x2={x2}, y={y})")
            }
            Violation::AboveOne { x1, x2, y, value } => {
                write!(f, "mass {value} > 1 at (x1={x1}, x2={x2}, y={y})")
            }
            Violation::NonFinite { x1, x2, y } => {
                write!(f, "non-finite mass at (x1={x1}, x2={x2}, y={y})")
            }
        }
    }
}

/// Two-user discrete memoryless MAC `p(y|x1,x2)`, stored densely as
/// `pmf[(x1 * |X2| + x2) * |Y| + y]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mac {
    name: String,
    x1: Vec<String>,
    x2: Vec<String>,
    y: Vec<String>,
    pmf: Vec<f64>,
}

impl Mac {
    /// Builds a MAC, clamping near-zeros and renormalizing rows that are off
    /// by less than [`SUM_TOL`]. Any remaining violation is an error.
    pub fn new(
        name: impl Into<String>,
        x1: Vec<String>,
        x2: Vec<String>,
        y: Vec<String>,
        pmf: Vec<f64>,
    ) -> Result<Self> {
        let mut mac = Mac::from_raw(name, x1, x2, y, pmf);
        for p in mac.pmf.iter_mut() {
            *p = clamp(*p);
        }
        let violations = mac.validate();
        if let Some(v) = violations.first() {
            return Err(Error::input(format!(
                "{} violation(s); first: {v}",
                violations.len()
            )));
        }
        let ny = mac.y.len();
        for row in mac.pmf.chunks_mut(ny) {
            let s: f64 = row.iter().sum();
            if s != 1.0 {
                row.iter_mut().for_each(|p| *p /= s);
            }
        }
        Ok(mac)
    }

    /// Builds from a nested `[x1][x2][y]` table.
    pub fn from_table(
        name: impl Into<String>,
        x1: Vec<String>,
        x2: Vec<String>,
        y: Vec<String>,
        table: &[Vec<Vec<f64>>],
    ) -> Result<Self> {
        let flat = table.iter().flatten().flatten().copied().collect();
        if table.len() != x1.len() || table.iter().any(|r| r.len() != x2.len()) {
            return Err(Error::input("table shape does not match x1/x2 alphabets"));
        }
        Mac::new(name, x1, x2, y, flat)
    }

    /// Builds without any checking, so that [`Mac::validate`] can report on it.
    pub fn from_raw(
        name: impl Into<String>,
        x1: Vec<String>,
        x2: Vec<String>,
        y: Vec<String>,
        pmf: Vec<f64>,
    ) -> Self {
        Mac {
            name: name.into(),
            x1,
            x2,
            y,
            pmf,
        }
    }

    /// Lists every invariant violation. Empty iff the MAC is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (axis, alphabet) in [("x1", &self.x1), ("x2", &self.x2), ("y", &self.y)] {
            if alphabet.is_empty() {
                out.push(Violation::EmptyAlphabet { axis: axis.into() });
            }
            let mut seen = HashSet::new();
            for s in alphabet.iter() {
                if !seen.insert(s) {
                    out.push(Violation::DuplicateSymbol {
                        axis: axis.into(),
                        symbol: s.clone(),
                    });
                }
            }
        }
        let expected = self.x1.len() * self.x2.len() * self.y.len();
        if self.pmf.len() != expected {
            out.push(Violation::Shape {
                expected,
                found: self.pmf.len(),
            });
            return out;
        }
        if expected == 0 {
            return out;
        }
        for (i1, a) in self.x1.iter().enumerate() {
            for (i2, b) in self.x2.iter().enumerate() {
                let row = self.row(i1, i2);
                let mut bad = false;
                for (iy, &p) in row.iter().enumerate() {
                    let at = || (a.clone(), b.clone(), self.y[iy].clone());
                    if !p.is_finite() {
                        let (x1, x2, y) = at();
                        out.push(Violation::NonFinite { x1, x2, y });
                        bad = true;
                    } else if p < 0.0 && p.abs() >= ZERO_CLAMP {
                        let (x1, x2, y) = at();
                        out.push(Violation::NegativeMass {
                            x1,
                            x2,
                            y,
                            value: p,
                        });
                        bad = true;
                    } else if p > 1.0 {
                        let (x1, x2, y) = at();
                        out.push(Violation::AboveOne {
                            x1,
                            x2,
                            y,
                            value: p,
                        });
                    }
                }
                let sum: f64 = row.iter().sum();
                if !bad && (sum - 1.0).abs() > SUM_TOL {
                    out.push(Violation::RowSum {
                        x1: a.clone(),
                        x2: b.clone(),
                        residual: 1.0 - sum,
                    });
                }
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn x1(&self) -> &[String] {
        &self.x1
    }

    pub fn x2(&self) -> &[String] {
        &self.x2
    }

    pub fn y(&self) -> &[String] {
        &self.y
    }

    pub fn alphabet(&self, user: User) -> &[String] {
        match user {
            User::One => &self.x1,
            User::Two => &self.x2,
        }
    }

    pub fn flat(&self) -> &[f64] {
        &self.pmf
    }

    pub fn row(&self, x1: usize, x2: usize) -> &[f64] {
        let ny = self.y.len();
        let start = (x1 * self.x2.len() + x2) * ny;
        &self.pmf[start..start + ny]
    }

    /// Row for the user's own symbol `xj` with the other user sending `xk`.
    pub fn row_for(&self, user: User, xj: usize, xk: usize) -> &[f64] {
        match user {
            User::One => self.row(xj, xk),
            User::Two => self.row(xk, xj),
        }
    }

    pub fn table(&self) -> Vec<Vec<Vec<f64>>> {
        (0..self.x1.len())
            .map(|a| {
                (0..self.x2.len())
                    .map(|b| self.row(a, b).to_vec())
                    .collect()
            })
            .collect()
    }

    /// Channel from the free user's input to `Y` with the other user pinned.
    pub fn induced_channel(&self, fix_user: User, fixed_symbol: &str) -> Result<ConditionalPmf> {
        let k = index_of(self.alphabet(fix_user), fixed_symbol)?;
        Ok(self.induced_channel_at(fix_user.other(), k))
    }

    /// Channel `x_free ↦ Y` with the other user's input fixed at index `k`.
    pub fn induced_channel_at(&self, free_user: User, k: usize) -> ConditionalPmf {
        let free = self.alphabet(free_user);
        let rows = (0..free.len())
            .map(|j| self.row_for(free_user, j, k).to_vec())
            .collect();
        ConditionalPmf::from_parts_unchecked(free.to_vec(), self.y.clone(), rows)
    }

    /// The MAC viewed as one channel from `X1×X2` to `Y`; inputs are
    /// labelled `"x1,x2"` in row-major order.
    pub fn joint_input_channel(&self) -> ConditionalPmf {
        let mut labels = Vec::with_capacity(self.x1.len() * self.x2.len());
        let mut rows = Vec::with_capacity(labels.capacity());
        for (a, la) in self.x1.iter().enumerate() {
            for (b, lb) in self.x2.iter().enumerate() {
                labels.push(format!("{la},{lb}"));
                rows.push(self.row(a, b).to_vec());
            }
        }
        ConditionalPmf::from_parts_unchecked(labels, self.y.clone(), rows)
    }

    /// Appends an independent erasure to the output.
    pub fn erasure_extend(&self, spec: &ErasureSpec) -> Result<Mac> {
        spec.check()?;
        if self.y.contains(&spec.erasure_symbol) {
            return Err(Error::input(format!(
                "erasure symbol {:?} already in the output alphabet",
                spec.erasure_symbol
            )));
        }
        let p = spec.erasure_prob;
        let ny = self.y.len();
        let mut pmf = Vec::with_capacity(self.pmf.len() / ny * (ny + 1));
        for row in self.pmf.chunks(ny) {
            pmf.extend(row.iter().map(|w| (1.0 - p) * w));
            pmf.push(p);
        }
        let mut y = self.y.clone();
        y.push(spec.erasure_symbol.clone());
        Ok(Mac {
            name: format!("{}+erasure({p})", self.name),
            x1: self.x1.clone(),
            x2: self.x2.clone(),
            y,
            pmf,
        })
    }

    /// Joint over `(X1, X2, Y)` or `(X1, X2, Y, Y')` where the outputs are
    /// conditionally independent copies given the inputs.
    pub fn independent_copy_joint(&self, input: &JointDist, copies: usize) -> Result<JointDist> {
        if !(1..=2).contains(&copies) {
            return Err(Error::input(format!("copies must be 1 or 2, got {copies}")));
        }
        let axes = input.axes();
        if axes.len() != 2 || axes[0].alphabet != self.x1 || axes[1].alphabet != self.x2 {
            return Err(Error::input(
                "input joint must have axes (x1, x2) matching the channel alphabets",
            ));
        }
        let ny = self.y.len();
        let mut table = Vec::with_capacity(input.table().len() * ny.pow(copies as u32));
        for a in 0..self.x1.len() {
            for b in 0..self.x2.len() {
                let pin = input.table()[a * self.x2.len() + b];
                let row = self.row(a, b);
                for &wy in row {
                    if copies == 1 {
                        table.push(pin * wy);
                    } else {
                        for &wy2 in row {
                            table.push(pin * wy * wy2);
                        }
                    }
                }
            }
        }
        let mut out_axes = axes.to_vec();
        out_axes.push(Axis::new("y", self.y.clone()));
        if copies == 2 {
            out_axes.push(Axis::new("y'", self.y.clone()));
        }
        Ok(JointDist::from_parts_unchecked(out_axes, table))
    }

    /// `p(x1) p(x2)` as a joint over `(x1, x2)`.
    pub fn product_input(&self, p1: &[f64], p2: &[f64]) -> Result<JointDist> {
        if p1.len() != self.x1.len() || p2.len() != self.x2.len() {
            return Err(Error::input(
                "input marginal lengths do not match the channel",
            ));
        }
        let table = p1
            .iter()
            .flat_map(|a| p2.iter().map(move |b| a * b))
            .collect();
        JointDist::new(
            vec![
                Axis::new("x1", self.x1.clone()),
                Axis::new("x2", self.x2.clone()),
            ],
            table,
        )
    }
}

/// Parameters of an appended erasure channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErasureSpec {
    pub erasure_prob: f64,
    pub erasure_symbol: String,
}

impl ErasureSpec {
    pub fn new(erasure_prob: f64, erasure_symbol: impl Into<String>) -> Result<Self> {
        let spec = ErasureSpec {
            erasure_prob,
            erasure_symbol: erasure_symbol.into(),
        };
        spec.check()?;
        Ok(spec)
    }

    /// Uses `"e"`, or the first of `"e'"`, `"e''"`, ... not already taken.
    pub fn fresh_for(mac: &Mac, erasure_prob: f64) -> Result<Self> {
        let mut sym = String::from("e");
        while mac.y().contains(&sym) {
            sym.push('\'');
        }
        ErasureSpec::new(erasure_prob, sym)
    }

    fn check(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.erasure_prob) {
            return Err(Error::input(format!(
                "erasure probability {} outside [0,1]",
                self.erasure_prob
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub alphabet: Vec<String>,
}

impl Axis {
    pub fn new(name: impl Into<String>, alphabet: Vec<String>) -> Self {
        Axis {
            name: name.into(),
            alphabet,
        }
    }
}

/// Dense joint distribution; the table is row-major with the last axis
/// varying fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDist {
    axes: Vec<Axis>,
    table: Vec<f64>,
}

impl JointDist {
    pub fn new(axes: Vec<Axis>, mut table: Vec<f64>) -> Result<Self> {
        let size: usize = axes.iter().map(|a| a.alphabet.len()).product();
        if axes.is_empty() || size != table.len() {
            return Err(Error::input(format!(
                "joint table has {} cells, axes imply {size}",
                table.len()
            )));
        }
        for a in &axes {
            check_unique(&a.alphabet, &a.name)?;
        }
        sanitize_row(&mut table, "joint table")?;
        Ok(JointDist { axes, table })
    }

    pub(crate) fn from_parts_unchecked(axes: Vec<Axis>, table: Vec<f64>) -> Self {
        JointDist { axes, table }
    }

    /// Joint labelled `0..n` per axis; axis names are `a0`, `a1`, ...
    pub fn from_shape(shape: &[usize], table: Vec<f64>) -> Result<Self> {
        let axes = shape
            .iter()
            .enumerate()
            .map(|(i, &n)| Axis::new(format!("a{i}"), default_labels(n)))
            .collect();
        JointDist::new(axes, table)
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.alphabet.len()).collect()
    }

    pub fn axis_index(&self, name: &str) -> Result<usize> {
        self.axes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::input(format!("no axis named {name:?}")))
    }

    /// Marginal over `keep` (axis indices, kept in the given order).
    pub fn marginal(&self, keep: &[usize]) -> JointDist {
        let shape = self.shape();
        let out_shape: Vec<usize> = keep.iter().map(|&k| shape[k]).collect();
        let out_len: usize = out_shape.iter().product();
        let mut out = vec![0.0; out_len.max(1)];
        // strides of the output for each source axis (0 if dropped)
        let mut out_strides = vec![0usize; shape.len()];
        let mut s = 1;
        for (pos, &k) in keep.iter().enumerate().rev() {
            out_strides[k] = s;
            s *= out_shape[pos];
        }
        let mut idx = vec![0usize; shape.len()];
        for &p in &self.table {
            let key: usize = idx.iter().zip(&out_strides).map(|(i, s)| i * s).sum();
            out[key] += p;
            for d in (0..shape.len()).rev() {
                idx[d] += 1;
                if idx[d] < shape[d] {
                    break;
                }
                idx[d] = 0;
            }
        }
        let axes = keep.iter().map(|&k| self.axes[k].clone()).collect();
        JointDist { axes, table: out }
    }

    /// Marginal of a single axis as a [`Pmf`].
    pub fn marginal_pmf(&self, axis: usize) -> Pmf {
        let m = self.marginal(&[axis]);
        Pmf::from_parts_unchecked(self.axes[axis].alphabet.clone(), m.table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn validate_accepts_binary_adder() {
        assert!(families::erasure_adder(0.0).unwrap().validate().is_empty());
    }

    #[test]
    fn validate_reports_short_row_with_residual() {
        let pmf = vec![1.0, 0.0, 0.9, 0.0, 0.0, 1.0, 1.0, 0.0];
        let mac = Mac::from_raw(
            "bad",
            labels(&["0", "1"]),
            labels(&["0", "1"]),
            labels(&["a", "b"]),
            pmf,
        );
        let v = mac.validate();
        assert_eq!(v.len(), 1);
        match &v[0] {
            Violation::RowSum { x1, x2, residual } => {
                assert_eq!((x1.as_str(), x2.as_str()), ("0", "1"));
                assert!((residual - 0.1).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validate_reports_negative_mass() {
        let pmf = vec![1.01, -0.01, 0.5, 0.5];
        let mac = Mac::from_raw(
            "neg",
            labels(&["0"]),
            labels(&["0", "1"]),
            labels(&["a", "b"]),
            pmf,
        );
        let v = mac.validate();
        assert!(v
            .iter()
            .any(|v| matches!(v, Violation::NegativeMass { value, .. } if *value == -0.01)));
        assert!(v.iter().any(|v| v.to_string().contains("negative mass")));
    }

    #[test]
    fn induced_channel_pins_other_user() {
        let mac = families::noiseless_adder();
        let ch = mac.induced_channel(User::Two, "0").unwrap();
        assert_eq!(ch.input_alphabet(), mac.x1());
        assert_eq!(ch.row(0), &[1.0, 0.0, 0.0][..]);
        assert_eq!(ch.row(1), &[0.0, 1.0, 0.0][..]);

        let mac = families::erasure_adder(0.5).unwrap();
        let ch = mac.induced_channel(User::Two, "1").unwrap();
        // y alphabet is 0,1,2,e
        assert_eq!(ch.row(0), &[0.0, 0.5, 0.0, 0.5][..]);
        assert_eq!(ch.row(1), &[0.0, 0.0, 0.5, 0.5][..]);

        assert!(mac.induced_channel(User::Two, "7").is_err());
    }

    #[test]
    fn independent_copies_of_erasure_adder() {
        let mac = families::erasure_adder(0.5).unwrap();
        let input = mac.product_input(&[1.0, 0.0], &[1.0, 0.0]).unwrap();
        let j = mac.independent_copy_joint(&input, 2).unwrap();
        let yy = j.marginal(&[2, 3]);
        let at = |a: usize, b: usize| yy.table()[a * 4 + b];
        assert!((at(0, 0) - 0.25).abs() < 1e-15);
        assert!((at(3, 3) - 0.25).abs() < 1e-15);
        assert!((at(0, 3) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn independent_copies_of_deterministic_channel_agree() {
        let mac = families::noiseless_adder();
        let input = mac.product_input(&[0.3, 0.7], &[0.6, 0.4]).unwrap();
        let j = mac.independent_copy_joint(&input, 2).unwrap();
        let yy = j.marginal(&[2, 3]);
        let diag: f64 = (0..3).map(|i| yy.table()[i * 3 + i]).sum();
        assert!((diag - 1.0).abs() < 1e-12);
    }

    #[test]
    fn independent_copy_rejects_mismatched_axes() {
        let mac = families::erasure_adder(0.5).unwrap();
        let bad = JointDist::from_shape(&[2, 3], vec![1.0 / 6.0; 6]).unwrap();
        assert!(mac.independent_copy_joint(&bad, 1).is_err());
    }

    #[test]
    fn erasure_extension_edges() {
        let base = families::noiseless_adder();
        let w0 = base
            .erasure_extend(&ErasureSpec::new(0.0, "e").unwrap())
            .unwrap();
        assert_eq!(w0.y().len(), 4);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(&w0.row(a, b)[..3], base.row(a, b));
                assert_eq!(w0.row(a, b)[3], 0.0);
            }
        }
        let w1 = base
            .erasure_extend(&ErasureSpec::new(1.0, "e").unwrap())
            .unwrap();
        assert!(w1.flat().chunks(4).all(|r| r == [0.0, 0.0, 0.0, 1.0]));

        let w = base
            .erasure_extend(&ErasureSpec::new(0.5, "e").unwrap())
            .unwrap();
        assert_eq!(w.row(0, 1), &[0.0, 0.5, 0.0, 0.5][..]);

        assert!(base
            .erasure_extend(&ErasureSpec::new(0.5, "1").unwrap())
            .is_err());
        assert!(ErasureSpec::new(1.5, "e").is_err());
    }

    #[test]
    fn new_renormalizes_tiny_deviation_and_rejects_large() {
        let x = labels(&["0"]);
        let ok = Mac::new(
            "t",
            x.clone(),
            x.clone(),
            labels(&["a", "b"]),
            vec![0.5, 0.5 + 5e-10],
        )
        .unwrap();
        assert_eq!(ok.row(0, 0).iter().sum::<f64>(), 1.0);
        assert!(Mac::new("t", x.clone(), x, labels(&["a", "b"]), vec![0.5, 0.6]).is_err());
    }

    #[test]
    fn marginal_orders_axes_as_requested() {
        let j = JointDist::from_shape(&[2, 3], vec![0.1, 0.2, 0.0, 0.3, 0.15, 0.25]).unwrap();
        let m = j.marginal(&[1, 0]);
        assert_eq!(m.shape(), vec![3, 2]);
        assert!((m.table()[0] - 0.1).abs() < 1e-15);
        assert!((m.table()[1] - 0.3).abs() < 1e-15);
        let p = j.marginal_pmf(0);
        assert!((p.probs()[0] - 0.3).abs() < 1e-15);
    }
}
