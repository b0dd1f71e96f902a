use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{BridgePattern, WhiteheadGraph, WhiteheadMove};
use crate::freegroup::{CyclicWord, Letter};
use crate::{Error, Result};

/// Outcome of the separability test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Some essential disk misses every curve.
    Separable,
    /// Every essential disk meets the system.
    Diskbusting,
}

/// One reduction step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// The automorphism applied.
    #[serde(rename = "move")]
    pub whitehead_move: WhiteheadMove,
    /// Total cyclic length afterwards.
    pub complexity: usize,
}

/// Why a verdict holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparabilityWitness {
    /// The terminal graph is disconnected.
    Disconnected {
        /// Letter sets of the components.
        components: Vec<Vec<Letter>>,
        /// Indices of the curves lying in each component.
        curves: Vec<Vec<usize>>,
    },
    /// Some generator occurs exactly once in a system of rank at least two.
    ValenceOne {
        /// The degree-one vertex.
        vertex: Letter,
    },
    /// A certified two-vertex bridge.
    Bridge {
        /// The pattern and its certifying move.
        pattern: BridgePattern,
    },
    /// The terminal graph is connected without cut vertices.
    Biconnected,
}

/// Verdict, reduction trace and witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparabilityVerdict {
    /// The verdict.
    pub verdict: Verdict,
    /// Total cyclic length of the input.
    pub initial_complexity: usize,
    /// Automorphisms applied, in order.
    pub trace: Vec<TraceStep>,
    /// Evidence.
    pub witness: SeparabilityWitness,
    /// The system after the last move.
    pub terminal: Vec<CyclicWord>,
}

/// Tuning for [`decide_separability_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    /// Accept valence-one vertices and certified bridges without reducing.
    pub fast_paths: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { fast_paths: true }
    }
}

/// The automorphism used at cut vertex `v` with side `side`: it multiplies
/// by `v⁻¹` on the inverse of `{v} ∪ side`. When `side` is a component of
/// the graph minus `v` not containing `v⁻¹`, total length drops by the
/// number of edges joining `v` to `side`.
pub fn cut_vertex_move(v: usize, side: &[usize]) -> WhiteheadMove {
    let u = Letter::from_vertex(v);
    let set = core::iter::once(v).chain(side.iter().copied()).map(|s| Letter::from_vertex(s).inv()).collect();
    WhiteheadMove::new_unchecked(u.inv(), set)
}

fn complexity(system: &[CyclicWord]) -> usize {
    system.iter().map(CyclicWord::len).sum()
}

fn check_rank(rank: usize, system: &[CyclicWord]) -> Result<()> {
    if system.is_empty() {
        return Err(Error::EmptySystem);
    }
    for w in system {
        if let Some(l) = w.letters().iter().find(|l| l.generator >= rank) {
            return Err(Error::RankMismatch { expected: rank, found: l.generator + 1 });
        }
    }
    Ok(())
}

/// Decides whether `system` is separable in the handlebody of genus `rank`.
pub fn decide_separability(rank: usize, system: &[CyclicWord]) -> Result<SeparabilityVerdict> {
    decide_separability_with(rank, system, DecideOptions::default())
}

fn disconnected_witness(graph: &WhiteheadGraph) -> SeparabilityWitness {
    let comps = graph.components();
    let curves = comps
        .iter()
        .map(|c| {
            graph
                .system()
                .iter()
                .enumerate()
                .filter(|(_, w)| w.letters().first().is_some_and(|l| c.contains(&l.vertex())))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    SeparabilityWitness::Disconnected {
        components: comps.into_iter().map(|c| c.into_iter().map(Letter::from_vertex).collect()).collect(),
        curves,
    }
}

/// Best cut-vertex move on a connected graph, or `None` if there is no
/// cut vertex. Ties break on resulting length, then vertex, then side.
pub(crate) fn best_cut_move(graph: &WhiteheadGraph) -> Option<(WhiteheadMove, Vec<CyclicWord>)> {
    type Candidate = (usize, usize, Vec<usize>, WhiteheadMove, Vec<CyclicWord>);
    let mut best: Option<Candidate> = None;
    for v in graph.cut_vertices() {
        for side in graph.components_without(&[v]) {
            if side.contains(&(v ^ 1)) {
                continue;
            }
            let mv = cut_vertex_move(v, &side);
            let image: Vec<CyclicWord> = graph.system().iter().map(|w| mv.apply(w)).collect();
            let c = complexity(&image);
            let better = match &best {
                None => true,
                Some((bc, bv, bs, _, _)) => (c, v, &side) < (*bc, *bv, bs),
            };
            if better {
                best = Some((c, v, side, mv, image));
            }
        }
    }
    best.map(|(_, _, _, mv, image)| (mv, image))
}

/// [`decide_separability`] with explicit options.
pub fn decide_separability_with(
    rank: usize,
    system: &[CyclicWord],
    options: DecideOptions,
) -> Result<SeparabilityVerdict> {
    check_rank(rank, system)?;
    let initial_complexity = complexity(system);
    let mut current = system.to_vec();
    let mut trace = Vec::new();
    let mut first = true;
    loop {
        let graph = WhiteheadGraph::build(rank, &current);
        if !graph.is_connected() {
            return Ok(SeparabilityVerdict {
                verdict: Verdict::Separable,
                initial_complexity,
                trace,
                witness: disconnected_witness(&graph),
                terminal: current,
            });
        }
        if first && options.fast_paths {
            let fast = if rank >= 2 {
                graph.valence_one().first().map(|&v| SeparabilityWitness::ValenceOne { vertex: Letter::from_vertex(v) })
            } else {
                None
            };
            let fast = fast.or_else(|| {
                graph
                    .bridge_patterns()
                    .into_iter()
                    .find(|p| p.certificate.is_some())
                    .map(|pattern| SeparabilityWitness::Bridge { pattern })
            });
            if let Some(witness) = fast {
                return Ok(SeparabilityVerdict {
                    verdict: Verdict::Separable,
                    initial_complexity,
                    trace,
                    witness,
                    terminal: current,
                });
            }
        }
        first = false;
        match best_cut_move(&graph) {
            None => {
                return Ok(SeparabilityVerdict {
                    verdict: Verdict::Diskbusting,
                    initial_complexity,
                    trace,
                    witness: SeparabilityWitness::Biconnected,
                    terminal: current,
                })
            }
            Some((mv, image)) => {
                let c = complexity(&image);
                debug_assert!(c < complexity(&current));
                trace.push(TraceStep { whitehead_move: mv, complexity: c });
                current = image;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Basis;

    fn decide(b: &Basis, ws: &[&str]) -> SeparabilityVerdict {
        let s: Vec<CyclicWord> = ws.iter().map(|w| b.parse_cyclic(w).unwrap()).collect();
        decide_separability(b.rank(), &s).unwrap()
    }

    #[test]
    fn basic_verdicts() {
        let b = Basis::new(["x", "y"]).unwrap();
        assert_eq!(decide(&b, &["x"]).verdict, Verdict::Separable);
        assert_eq!(decide(&b, &["x y x^-1 y^-1"]).verdict, Verdict::Diskbusting);
        assert_eq!(decide(&b, &["x x y y"]).verdict, Verdict::Diskbusting);
        assert_eq!(decide(&b, &["x y x y^-1 x"]).verdict, Verdict::Diskbusting);
        assert_eq!(decide(&b, &["x y x y y"]).verdict, Verdict::Separable);
    }

    #[test]
    fn rank_one() {
        let b = Basis::new(["x"]).unwrap();
        assert_eq!(decide(&b, &["x"]).verdict, Verdict::Diskbusting);
        assert_eq!(decide(&b, &["x x"]).verdict, Verdict::Diskbusting);
    }

    #[test]
    fn primitive_reduces() {
        let b = Basis::new(["x", "y", "z"]).unwrap();
        let v = decide_separability_with(
            3,
            &[b.parse_cyclic("x y z y x y z").unwrap()],
            DecideOptions { fast_paths: false },
        )
        .unwrap();
        assert_eq!(v.verdict, Verdict::Separable);
        assert!(v.trace.windows(2).all(|w| w[1].complexity < w[0].complexity));
    }

    #[test]
    fn empty_system_rejected() {
        assert_eq!(decide_separability(2, &[]), Err(Error::EmptySystem));
    }
}
