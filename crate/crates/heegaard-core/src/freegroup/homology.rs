use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Basis, Word};
use crate::Result;

/// Abelian group `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/tₛ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigUint>,
    /// Rank of the free part.
    pub free_rank: usize,
}

impl HomologyResult {
    /// True for the infinite cyclic group.
    pub fn is_z(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }
}

/// First homology of `⟨basis | relators⟩`.
pub fn homology(relators: &[Word], basis: &Basis) -> Result<HomologyResult> {
    let k = basis.rank();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(relators.len());
    for r in relators {
        r.check_basis(basis)?;
        m.push(r.abelianize(k).exponents.iter().map(|&e| BigInt::from(e)).collect());
    }
    let diag = smith_diagonal(m, k);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag.into_iter().filter(|d| *d > BigInt::from(1)).map(|d| d.magnitude().clone()).collect();
    Ok(HomologyResult { torsion, free_rank: k - rank })
}

/// Diagonal of the Smith normal form, absolute values, divisibility chain.
pub(crate) fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&m, t, cols) else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&p);
                let (top, rest) = m.split_at_mut(i);
                for (a, b) in rest[0][t..cols].iter_mut().zip(&top[t][t..cols]) {
                    *a -= b * &q;
                }
                dirty |= !m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&p);
                for row in m.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                dirty |= !m[t][j].is_zero();
            }
            if !dirty {
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&p)));
                match bad {
                    None => break,
                    Some(i) => {
                        let (top, rest) = m.split_at_mut(i);
                        for (a, b) in top[t][t..cols].iter_mut().zip(&rest[0][t..cols]) {
                            *a += b;
                        }
                    }
                }
            }
            if let Some((pi, pj)) = smallest_nonzero(&m, t, cols) {
                if m[pi][pj].abs() < m[t][t].abs() || m[t][t].is_zero() {
                    m.swap(t, pi);
                    for row in m.iter_mut() {
                        row.swap(t, pj);
                    }
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

fn smallest_nonzero(m: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().take(cols).skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| v.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
