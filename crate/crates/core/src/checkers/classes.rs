use serde::{Deserialize, Serialize};

use crate::channel::{index_of, ConditionalPmf};
use crate::error::{Error, Result};
use crate::optimize::SUPPORT_EPS;

/// Row-equality tolerance inside a class.
pub const CLASS_ROW_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivClass {
    pub z: Vec<String>,
    /// Union of the output supports of the class members.
    pub y: Vec<String>,
    /// Conditional row of the first member.
    pub row: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivClassPartition {
    pub classes: Vec<EquivClass>,
    /// True iff all rows within every class coincide.
    pub markov_ok: bool,
    pub m: usize,
}

/// Connected components of the bipartite graph joining each input in
/// `support` to the outputs it reaches with probability above
/// [`SUPPORT_EPS`].
///
/// The component index is a function of both the input and the output, so
/// it certifies the class-variable condition exactly when `markov_ok`.
pub fn equivalence_classes(ch: &ConditionalPmf, support: &[String]) -> Result<EquivClassPartition> {
    if support.is_empty() {
        return Err(Error::input("equivalence classes need a nonempty support"));
    }
    let zs: Vec<usize> = support
        .iter()
        .map(|s| index_of(ch.input_alphabet(), s))
        .collect::<Result<_>>()?;
    let ny = ch.n_outputs();

    // union-find over support positions; outputs are linked via their
    // first owner
    let mut parent: Vec<usize> = (0..zs.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut owner: Vec<Option<usize>> = vec![None; ny];
    for (pos, &z) in zs.iter().enumerate() {
        for (y, &p) in ch.row(z).iter().enumerate() {
            if p <= SUPPORT_EPS {
                continue;
            }
            match owner[y] {
                None => owner[y] = Some(pos),
                Some(o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, pos));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }

    let mut roots: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for pos in 0..zs.len() {
        let r = find(&mut parent, pos);
        match roots.iter().position(|&x| x == r) {
            Some(k) => members[k].push(pos),
            None => {
                roots.push(r);
                members.push(vec![pos]);
            }
        }
    }

    let mut markov_ok = true;
    let classes: Vec<EquivClass> = members
        .iter()
        .map(|ms| {
            let first = ch.row(zs[ms[0]]);
            for &pos in &ms[1..] {
                let same = ch
                    .row(zs[pos])
                    .iter()
                    .zip(first)
                    .all(|(a, b)| (a - b).abs() <= CLASS_ROW_TOL);
                markov_ok &= same;
            }
            let y = (0..ny)
                .filter(|&y| ms.iter().any(|&pos| ch.row(zs[pos])[y] > SUPPORT_EPS))
                .map(|y| ch.output_alphabet()[y].clone())
                .collect();
            EquivClass {
                z: ms.iter().map(|&pos| support[pos].clone()).collect(),
                y,
                row: first.to_vec(),
            }
        })
        .collect();
    Ok(EquivClassPartition {
        m: classes.len(),
        classes,
        markov_ok,
    })
}
