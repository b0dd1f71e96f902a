//! The multi-handle addition checker and the free-factor binding test.
//!
//! For curves `c₁ … cₙ` on the boundary of a genus-`k` handlebody, the
//! boundary of the handlebody with 2-handles attached along them is
//! incompressible when the whole system is diskbusting and, for each
//! `p = 1 … n−1`, no `n−p` of the curves bind a free factor of rank
//! `k−p+1`.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::freegroup::{CurveSystem, CyclicWord, Letter};
use crate::whitehead::{
    cut_vertex_move, decide_separability, BridgePattern, SeparabilityVerdict, TraceStep, Verdict, WhiteheadGraph,
    WhiteheadMove,
};
use crate::{Error, Result};

/// Outcome of a binding test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BindingStatus {
    /// Certified not to bind.
    DoesNotBind,
    /// Certified to bind.
    Binds,
    /// Not decided by the available criteria.
    Unknown,
}

/// Features of the unreduced system's graph in the ambient basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialEvidence {
    /// Generators occurring in the system.
    pub support: Vec<usize>,
    /// Whether the ambient graph is connected.
    pub connected: bool,
    /// Degree-one vertices.
    pub valence_one: Vec<Letter>,
    /// Two-vertex bridge patterns.
    pub bridges: Vec<BridgePattern>,
}

/// Why a status was reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BindingReason {
    /// Fewer than `m` generators remain after minimization.
    SupportDeficient {
        /// Support size.
        support: usize,
    },
    /// Diskbusting in the free factor spanned by its support.
    DiskbustingOnSupport {
        /// Support size.
        support: usize,
    },
    /// Splits into parts over disjoint generator sets.
    Split {
        /// Support size of each part.
        part_supports: Vec<usize>,
        /// Reports for each part at the same target rank.
        parts: Vec<FactorBindingReport>,
    },
}

/// Result of [`binds_free_factor`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBindingReport {
    /// Target rank `m`.
    pub target_rank: usize,
    /// Outcome.
    pub status: BindingStatus,
    /// Evidence read off the input.
    pub initial: InitialEvidence,
    /// Support-restricted reduction moves, in ambient indices.
    pub trace: Vec<TraceStep>,
    /// System after reduction.
    pub minimized: Vec<CyclicWord>,
    /// Support after reduction.
    pub support: Vec<usize>,
    /// Deciding criterion.
    pub reason: BindingReason,
}

fn support_of(system: &[CyclicWord]) -> Vec<usize> {
    let mut s: Vec<usize> = system.iter().flat_map(|w| w.letters().iter().map(|l| l.generator)).collect();
    s.sort_unstable();
    s.dedup();
    s
}

fn relabel(system: &[CyclicWord], map: impl Fn(usize) -> usize) -> Vec<CyclicWord> {
    system
        .iter()
        .map(|w| CyclicWord::from_letters(w.letters().iter().map(|l| Letter::new(map(l.generator), l.inverse))))
        .collect()
}

fn relabel_move(m: &WhiteheadMove, support: &[usize]) -> WhiteheadMove {
    let up = |l: Letter| Letter::new(support[l.generator], l.inverse);
    WhiteheadMove { multiplier: up(m.multiplier), set: m.set.iter().map(|&l| up(l)).collect() }
}

/// Tests whether `system` (over `F_k`) binds a free factor of rank `m`.
///
/// The system is reduced by length-decreasing automorphisms supported on
/// its own generators. A connected graph with a cut vertex is reduced at
/// the cut vertex; a disconnected graph with a component not closed under
/// inversion is reduced by moving that component. The process ends either
/// diskbusting on its support (binds exactly when the support has size
/// `m`) or split into parts with disjoint supports (does not bind when `m`
/// exceeds every part, otherwise unknown). A support smaller than `m`
/// never binds.
pub fn binds_free_factor(k: usize, system: &[CyclicWord], m: usize) -> Result<FactorBindingReport> {
    if m == 0 || m > k {
        return Err(Error::RankOutOfRange { m, k });
    }
    if system.is_empty() {
        return Err(Error::EmptySystem);
    }
    if let Some(l) = system.iter().flat_map(|w| w.letters()).find(|l| l.generator >= k) {
        return Err(Error::RankMismatch { expected: k, found: l.generator + 1 });
    }
    let ambient = WhiteheadGraph::build(k, system);
    let initial = InitialEvidence {
        support: support_of(system),
        connected: ambient.is_connected(),
        valence_one: ambient.valence_one().into_iter().map(Letter::from_vertex).collect(),
        bridges: ambient.bridge_patterns(),
    };
    let mut current = system.to_vec();
    let mut trace = Vec::new();
    loop {
        let support = support_of(&current);
        let s = support.len();
        let done = |status, reason, current, trace| {
            Ok(FactorBindingReport {
                target_rank: m,
                status,
                initial: initial.clone(),
                trace,
                minimized: current,
                support: support.clone(),
                reason,
            })
        };
        if s < m {
            return done(BindingStatus::DoesNotBind, BindingReason::SupportDeficient { support: s }, current, trace);
        }
        let local = relabel(&current, |g| support.binary_search(&g).unwrap_or(g));
        let graph = WhiteheadGraph::build(s, &local);
        let step = if graph.is_connected() {
            match crate::whitehead::best_cut_move(&graph) {
                Some(step) => Some(step),
                None => {
                    let status = if s == m { BindingStatus::Binds } else { BindingStatus::DoesNotBind };
                    return done(status, BindingReason::DiskbustingOnSupport { support: s }, current, trace);
                }
            }
        } else {
            let comps = graph.components();
            comps.iter().find_map(|c| {
                let v = *c.iter().find(|&&v| !c.contains(&(v ^ 1)))?;
                let side: Vec<usize> = c.iter().copied().filter(|&u| u != v).collect();
                let mv = cut_vertex_move(v, &side);
                let image: Vec<CyclicWord> = local.iter().map(|w| mv.apply(w)).collect();
                Some((mv, image))
            })
        };
        match step {
            Some((mv, image)) => {
                current = relabel(&image, |g| support[g]);
                let complexity = current.iter().map(CyclicWord::len).sum();
                trace.push(TraceStep { whitehead_move: relabel_move(&mv, &support), complexity });
            }
            None => {
                let mut groups: Vec<Vec<usize>> = graph
                    .components()
                    .into_iter()
                    .map(|c| {
                        let mut g: Vec<usize> = c.iter().map(|&v| support[v / 2]).collect();
                        g.dedup();
                        g
                    })
                    .collect();
                groups.sort();
                groups.dedup();
                let mut parts = Vec::new();
                let mut part_supports = Vec::new();
                for g in &groups {
                    let words: Vec<CyclicWord> = current
                        .iter()
                        .filter(|w| w.letters().first().is_some_and(|l| g.contains(&l.generator)))
                        .cloned()
                        .collect();
                    if words.is_empty() {
                        continue;
                    }
                    part_supports.push(g.len());
                    parts.push(binds_free_factor(k, &words, m)?);
                }
                let status = if part_supports.iter().all(|&p| m > p) {
                    BindingStatus::DoesNotBind
                } else {
                    BindingStatus::Unknown
                };
                return done(status, BindingReason::Split { part_supports, parts }, current, trace);
            }
        }
    }
}

/// Overall outcome of [`mha_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MhaOverall {
    /// Every condition holds.
    Pass,
    /// A condition fails; `condition` is `p`, `subset` the offending curves.
    Fail {
        /// Condition index `p` (0 for the full system).
        condition: usize,
        /// Names of the curves involved.
        subset: Vec<String>,
    },
    /// Some subset could not be decided.
    Inconclusive {
        /// Names of the undecided curves.
        subset: Vec<String>,
    },
}

/// Binding report for one subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetReport {
    /// Condition index `p`.
    pub condition: usize,
    /// Curve names in the subset.
    pub curves: Vec<String>,
    /// The binding test against `F_{k−p+1}`.
    pub report: FactorBindingReport,
}

/// Certificate for the multi-handle addition conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MhaReport {
    /// Ambient rank.
    pub k: usize,
    /// Number of curves.
    pub n: usize,
    /// Curve names.
    pub curves: Vec<String>,
    /// Separability of the whole system.
    pub condition_0: SeparabilityVerdict,
    /// One entry per proper nonempty subset, by condition then subset order.
    pub subsets: Vec<SubsetReport>,
    /// Verdict.
    pub overall: MhaOverall,
}

/// A single binding test required by [`mha_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MhaJob {
    /// Condition index `p`.
    pub condition: usize,
    /// Curve indices, increasing.
    pub subset: Vec<usize>,
    /// Target rank `k−p+1`.
    pub target_rank: usize,
}

/// Subsets to test for `n` curves over `F_k`, by condition then
/// lexicographic subset order.
pub fn mha_jobs(n: usize, k: usize) -> Vec<MhaJob> {
    let mut jobs = Vec::new();
    for p in 1..n {
        let size = n - p;
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            jobs.push(MhaJob { condition: p, subset: idx.clone(), target_rank: (k + 1).saturating_sub(p) });
            let mut i = size;
            while i > 0 && idx[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    jobs
}

/// Runs one job.
pub fn run_job(system: &CurveSystem, job: &MhaJob) -> Result<FactorBindingReport> {
    let words: Vec<CyclicWord> = job.subset.iter().map(|&i| system.curves[i].word.clone()).collect();
    if job.target_rank == 0 {
        return Err(Error::RankOutOfRange { m: 0, k: system.basis.rank() });
    }
    binds_free_factor(system.basis.rank(), &words, job.target_rank)
}

/// Checks the multi-handle addition conditions sequentially.
pub fn mha_check(system: &CurveSystem) -> Result<MhaReport> {
    mha_check_with(system, |jobs| jobs.iter().map(|j| run_job(system, j)).collect())
}

/// Checks the conditions, delegating the subset tests to `runner`, which
/// must return one result per job in job order.
pub fn mha_check_with<F>(system: &CurveSystem, runner: F) -> Result<MhaReport>
where
    F: FnOnce(&[MhaJob]) -> Vec<Result<FactorBindingReport>>,
{
    let n = system.curves.len();
    if n == 0 {
        return Err(Error::EmptySystem);
    }
    for (i, c) in system.curves.iter().enumerate() {
        if system.curves[..i].iter().any(|d| d.name == c.name) {
            return Err(Error::DuplicateCurve(c.name.clone()));
        }
    }
    let k = system.basis.rank();
    let condition_0 = decide_separability(k, &system.words())?;
    let jobs = mha_jobs(n, k);
    let results = runner(&jobs);
    let mut subsets = Vec::with_capacity(jobs.len());
    for (job, r) in jobs.iter().zip(results) {
        subsets.push(SubsetReport {
            condition: job.condition,
            curves: job.subset.iter().map(|&i| system.curves[i].name.clone()).collect(),
            report: r?,
        });
    }
    let overall = if condition_0.verdict != Verdict::Diskbusting {
        MhaOverall::Fail { condition: 0, subset: system.names() }
    } else if let Some(s) = subsets.iter().find(|s| s.report.status == BindingStatus::Binds) {
        MhaOverall::Fail { condition: s.condition, subset: s.curves.clone() }
    } else if let Some(s) = subsets.iter().find(|s| s.report.status == BindingStatus::Unknown) {
        MhaOverall::Inconclusive { subset: s.curves.clone() }
    } else {
        MhaOverall::Pass
    };
    Ok(MhaReport { k, n, curves: system.names(), condition_0, subsets, overall })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Basis;

    #[test]
    fn jobs_enumerate_proper_subsets() {
        let j = mha_jobs(3, 5);
        let subs: Vec<(usize, Vec<usize>, usize)> =
            j.into_iter().map(|j| (j.condition, j.subset, j.target_rank)).collect();
        assert_eq!(
            subs,
            [
                (1, alloc::vec![0, 1], 5),
                (1, alloc::vec![0, 2], 5),
                (1, alloc::vec![1, 2], 5),
                (2, alloc::vec![0], 4),
                (2, alloc::vec![1], 4),
                (2, alloc::vec![2], 4),
            ]
        );
        assert!(mha_jobs(1, 3).is_empty());
    }

    #[test]
    fn binding_examples() {
        let b = Basis::numbered(5);
        let r = binds_free_factor(5, &[b.parse_cyclic("x1").unwrap()], 5).unwrap();
        assert_eq!(r.status, BindingStatus::DoesNotBind);
        let b2 = Basis::new(["x", "y"]).unwrap();
        let r = binds_free_factor(2, &[b2.parse_cyclic("x y x^-1 y^-1").unwrap()], 2).unwrap();
        assert_eq!(r.status, BindingStatus::Binds);
        assert!(binds_free_factor(2, &[b2.parse_cyclic("x").unwrap()], 3).is_err());
    }

    #[test]
    fn two_letters_fail_condition_zero() {
        let s = CurveSystem::parse(Basis::new(["x", "y"]).unwrap(), [("a", "x"), ("b", "y")]).unwrap();
        let r = mha_check(&s).unwrap();
        assert_eq!(r.overall, MhaOverall::Fail { condition: 0, subset: alloc::vec!["a".into(), "b".into()] });
    }
}
