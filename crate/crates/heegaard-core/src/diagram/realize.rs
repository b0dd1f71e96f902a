use alloc::format;
use alloc::vec::Vec;

use super::{validate_diagram, Arc, Endpoint, HeegaardDiagram, Holes, Side};
use crate::freegroup::{CurveSystem, Letter};
use crate::{Error, Result};

/// Backtracking search for cyclic orders of letter occurrences around
/// each generator such that the curves embed disjointly.
///
/// Occurrence `o` of letter `ℓ` contributes an incoming dart at vertex `ℓ`
/// and an outgoing dart at vertex `ℓ⁻¹`; the edge between consecutive
/// occurrences joins the outgoing dart of the first to the incoming dart of
/// the second. The rotation at `g+` is the occurrence order of `g`, the
/// rotation at `g−` its reverse. A partial order is pruned as soon as the
/// edges whose ends are both placed fail `V − E + F = 2C`.
struct Search {
    letters: Vec<Letter>,
    prev: Vec<usize>,
    order: Vec<Vec<usize>>,
    placed: Vec<bool>,
    found: Vec<Vec<Vec<usize>>>,
    limit: usize,
}

impl Search {
    fn in_dart(o: usize) -> usize {
        2 * o
    }

    fn out_dart(o: usize) -> usize {
        2 * o + 1
    }

    fn vertex(&self, dart: usize) -> usize {
        let l = self.letters[dart / 2];
        if dart % 2 == 0 {
            l.vertex()
        } else {
            l.inv().vertex()
        }
    }

    fn planar(&self) -> bool {
        let n = self.letters.len();
        let mut alpha = alloc::vec![usize::MAX; 2 * n];
        let mut edges = 0;
        for o in 0..n {
            let p = self.prev[o];
            if self.placed[o] && self.placed[p] {
                alpha[Self::in_dart(o)] = Self::out_dart(p);
                alpha[Self::out_dart(p)] = Self::in_dart(o);
                edges += 1;
            }
        }
        if edges == 0 {
            return true;
        }
        let mut next = alloc::vec![usize::MAX; 2 * n];
        let mut at = Vec::new();
        for order in &self.order {
            for plus in [true, false] {
                at.clear();
                for &o in order {
                    let d = if self.letters[o].inverse != plus { Self::in_dart(o) } else { Self::out_dart(o) };
                    if alpha[d] != usize::MAX {
                        at.push(d);
                    }
                }
                if !plus {
                    at.reverse();
                }
                for i in 0..at.len() {
                    next[at[i]] = at[(i + 1) % at.len()];
                }
            }
        }
        let mut seen = alloc::vec![false; 2 * n];
        let mut faces = 0i64;
        for s in 0..2 * n {
            if alpha[s] == usize::MAX || seen[s] {
                continue;
            }
            faces += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = next[alpha[d]];
            }
        }
        let vcount = 2 * self.order.len();
        let mut parent: Vec<usize> = (0..vcount).collect();
        let mut used = alloc::vec![false; vcount];
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (d, &e) in alpha.iter().enumerate() {
            if e != usize::MAX && d < e {
                let (a, b) = (self.vertex(d), self.vertex(e));
                used[a] = true;
                used[b] = true;
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let v = used.iter().filter(|&&u| u).count() as i64;
        let c = (0..vcount).filter(|&x| used[x] && find(&mut parent, x) == x).count() as i64;
        v - edges + faces == 2 * c
    }

    fn run(&mut self, i: usize) -> bool {
        if i == self.letters.len() {
            self.found.push(self.order.clone());
            return self.found.len() >= self.limit;
        }
        let g = self.letters[i].generator;
        let slots = if self.order[g].is_empty() { 0..=0 } else { 1..=self.order[g].len() };
        for p in slots {
            self.order[g].insert(p, i);
            self.placed[i] = true;
            if self.planar() && self.run(i + 1) {
                return true;
            }
            self.order[g].remove(p);
            self.placed[i] = false;
        }
        false
    }
}

fn to_diagram(system: &CurveSystem, starts: &[usize], order: &[Vec<usize>]) -> HeegaardDiagram {
    let rank = system.basis.rank();
    let total = starts.last().copied().unwrap_or(0) + system.curves.last().map_or(0, |c| c.word.len());
    let mut index = alloc::vec![0u32; total];
    for o in order {
        for (i, &occ) in o.iter().enumerate() {
            index[occ] = i as u32;
        }
    }
    let mut arcs = Vec::new();
    for (c, curve) in system.curves.iter().enumerate() {
        let w = curve.word.letters();
        let n = w.len();
        let end = |t: usize| {
            let l = w[t];
            Endpoint::new(l.generator, if l.inverse { Side::Plus } else { Side::Minus }, index[starts[c] + t])
        };
        for t in 0..n {
            arcs.push(Arc { curve: c, index: t, ends: [end((t + n - 1) % n).paired(), end(t)] });
        }
    }
    let holes = order
        .iter()
        .map(|o| {
            let pts: Vec<u32> = (0..o.len() as u32).collect();
            Holes { plus: pts.clone(), minus: pts }
        })
        .collect::<Vec<_>>();
    debug_assert_eq!(holes.len(), rank);
    HeegaardDiagram { disks: system.basis.names().to_vec(), holes, curves: system.names(), arcs }
}

/// Up to `limit` diagrams realizing the system, in search order.
///
/// Each diagram has the basis generators as disks and reproduces every
/// word letter for letter. The first occurrence of each generator is
/// fixed, so diagrams differing only by rotating a hole are not repeated.
pub fn realizations(system: &CurveSystem, limit: usize) -> Vec<HeegaardDiagram> {
    let mut letters = Vec::new();
    let mut prev = Vec::new();
    let mut starts = Vec::new();
    for c in &system.curves {
        let base = letters.len();
        starts.push(base);
        let n = c.word.len();
        for t in 0..n {
            letters.push(c.word.letters()[t]);
            prev.push(base + (t + n - 1) % n);
        }
    }
    let n = letters.len();
    let mut s = Search {
        letters,
        prev,
        order: alloc::vec![Vec::new(); system.basis.rank()],
        placed: alloc::vec![false; n],
        found: Vec::new(),
        limit: limit.max(1),
    };
    if limit > 0 {
        s.run(0);
    }
    s.found.iter().map(|o| to_diagram(system, &starts, o)).collect()
}

/// The first diagram realizing the system.
pub fn realize(system: &CurveSystem) -> Result<HeegaardDiagram> {
    let d = realizations(system, 1).pop().ok_or_else(|| Error::NotRealizable(format!("{:?}", system.names())))?;
    let v = validate_diagram(&d);
    if v.is_empty() {
        Ok(d)
    } else {
        Err(Error::InvalidDiagram(v))
    }
}
