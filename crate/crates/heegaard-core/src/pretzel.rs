//! Pretzel knots `(p, ±3, q)`: words, diagrams and the certification
//! pipeline.
//!
//! After taking mirror images and reversing the tangle order, `p = ±(2i+1)`,
//! middle `3`, `q = ±(2j+1)` with `i, j ≥ 1` falls into one of three cases
//! by the signs of `p` and `q`. Each case gives the words of the two tunnel
//! meridian disks `D1`, `D2` and of the longitude `λ` over the disk system
//! `{x, y, z}`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cover::{
    cover_basis, lift_diagram, lift_system, slope_word, weak_reducibility_report, CoverContext, CyclicHom, DisjointPair,
};
use crate::diagram::{
    compress, curve_word, dualize, realizations, realize, retain_curves, stabilization_report, HeegaardDiagram,
    StabilizationReport,
};
use crate::factor::{mha_check, MhaOverall, MhaReport};
use crate::freegroup::{homology, Basis, CurveSystem, CyclicWord, HomologyResult, Letter, NamedCurve};
use crate::{Error, Result};

/// Names of the curves produced by [`pretzel_words`].
pub const CURVE_NAMES: [&str; 3] = ["D1", "D2", "lambda"];
/// Name of the filling curve.
pub const FILLING_NAME: &str = "D";

/// Tangle entries `p₁ … p_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PretzelParams {
    /// Nonzero crossing counts.
    pub tangles: Vec<i64>,
}

impl PretzelParams {
    /// Builds parameters from nonzero entries.
    pub fn new(tangles: Vec<i64>) -> Result<Self> {
        if tangles.is_empty() {
            return Err(Error::UnsupportedPretzel(String::from("no tangles")));
        }
        if tangles.contains(&0) {
            return Err(Error::UnsupportedPretzel(String::from("tangle entries must be nonzero")));
        }
        Ok(PretzelParams { tangles })
    }

    /// Parses `3,-3,5`.
    pub fn parse(text: &str) -> Result<Self> {
        let tangles = text
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::UnsupportedPretzel(format!("bad tangle `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        PretzelParams::new(tangles)
    }
}

/// Number of link components.
pub fn component_count(tangles: &[i64]) -> Result<usize> {
    if tangles.is_empty() {
        return Err(Error::UnsupportedPretzel(String::from("no tangles")));
    }
    let even = tangles.iter().filter(|p| *p % 2 == 0).count();
    Ok(match even {
        0 if tangles.len() % 2 == 1 => 1,
        0 => 2,
        e => e,
    })
}

/// A `(p, ±3, q)` knot brought to standard form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    /// Case 1, 2 or 3.
    pub case: u8,
    /// `|p| = 2i + 1`.
    pub i: u32,
    /// `|q| = 2j + 1`.
    pub j: u32,
    /// Whether the mirror image was taken.
    pub mirrored: bool,
    /// Whether the outer tangles were swapped.
    pub reversed: bool,
}

/// Mirrors so the middle tangle is `+3`, then reads the case from the signs
/// of the outer tangles; `(+, −)` is turned into `(−, +)` by reversing.
pub fn normalize(params: &PretzelParams) -> Result<Normalized> {
    let t = &params.tangles;
    if t.len() != 3 || t[1].abs() != 3 {
        return Err(Error::UnsupportedPretzel(format!("{t:?} is not of the form (p, ±3, q)")));
    }
    for &x in [t[0], t[2]].iter() {
        if x % 2 == 0 || x.abs() < 3 {
            return Err(Error::UnsupportedPretzel(format!("outer tangles must be odd with |p| ≥ 3, got {x}")));
        }
    }
    let mirrored = t[1] < 0;
    let s = if mirrored { -1 } else { 1 };
    let (mut p, mut q) = (s * t[0], s * t[2]);
    let reversed = p > 0 && q < 0;
    if reversed {
        core::mem::swap(&mut p, &mut q);
    }
    let case = match (p > 0, q > 0) {
        (true, true) => 1,
        (false, true) => 2,
        _ => 3,
    };
    let half = |x: i64| ((x.abs() - 1) / 2) as u32;
    Ok(Normalized { case, i: half(p), j: half(q), mirrored, reversed })
}

fn formulas(n: &Normalized) -> [String; 3] {
    let (i, j) = (n.i, n.j);
    let d1 = match n.case {
        1 => format!("(x^-1 y)^{} (x y^-1)^{i} (x z^-1)^2 (x^-1 z)", i + 1),
        _ => format!("(y^-1 x)^{i} (y x^-1)^{} (x z^-1)^2 (x^-1 z)", i + 1),
    };
    let d2 = match n.case {
        3 => format!("(y z^-1)^{j} (y^-1 z)^{} (z^-1 x)^2 (z x^-1)", j + 1),
        _ => format!("(z y^-1)^{} (z^-1 y)^{j} (z^-1 x)^2 (z x^-1)", j + 1),
    };
    let lambda = match n.case {
        1 => format!("(y^-1 x)^{i} (y^-1 z)^{} (x^-1 z) (x^-1 y)^{} (z^-1 y)^{j} (z^-1 x)^2", j + 1, i + 1),
        2 => format!("(y^-1 x)^{i} (z^-1 y)^{j} (z^-1 x) z^-1 (y x^-1)^{i} (z y^-1)^{j} (z x^-1) z"),
        _ => format!("(x^-1 z) (y^-1 x)^{i} (y^-1 z)^{j} y^-1 (x z^-1) (y x^-1)^{i} (y z^-1)^{j} y"),
    };
    [d1, d2, lambda]
}

/// The basis `{x, y, z}`.
pub fn xyz() -> Basis {
    Basis::new(["x", "y", "z"]).expect("valid names")
}

/// `D1`, `D2` and `lambda` over `{x, y, z}`.
pub fn pretzel_words(params: &PretzelParams) -> Result<CurveSystem> {
    let n = normalize(params)?;
    let b = xyz();
    let f = formulas(&n);
    CurveSystem::parse(b, CURVE_NAMES.iter().copied().zip(f.iter().map(String::as_str)))
}

fn filling_at(w: &CurveSystem, base: (i64, i64), offset: usize) -> Result<CurveSystem> {
    let x = w.basis.parse("x")?;
    let lambda = w.get("lambda").expect("generated").rotate(offset).to_word();
    let d = slope_word(base.0, base.1, &x, &lambda)?;
    let mut curves = w.curves[..2].to_vec();
    curves.push(NamedCurve { name: String::from(FILLING_NAME), word: d });
    CurveSystem::new(w.basis.clone(), curves)
}

/// Smallest rotation `r` of `lambda` for which `D1`, `D2` and the filling
/// curve built from `lambda` read from letter `r` embed disjointly.
pub fn meridian_offset(params: &PretzelParams, cover_slope: (i64, i64)) -> Result<usize> {
    let w = pretzel_words(params)?;
    let base = base_slope(cover_slope)?;
    let len = w.get("lambda").expect("generated").len();
    for r in 0..len {
        if !realizations(&filling_at(&w, base, r)?, 1).is_empty() {
            return Ok(r);
        }
    }
    Err(Error::NotRealizable(format!("no rotation of lambda admits the slope {}/{}", base.0, base.1)))
}

/// `D1`, `D2` and the filling curve `λⁿ x^{3m}`, with `λ` rotated by
/// [`meridian_offset`].
pub fn filling_words(params: &PretzelParams, cover_slope: (i64, i64)) -> Result<CurveSystem> {
    let offset = meridian_offset(params, cover_slope)?;
    filling_at(&pretzel_words(params)?, base_slope(cover_slope)?, offset)
}

/// The base slope `3m/n` for cover slope `m/n`.
pub fn base_slope((m, n): (i64, i64)) -> Result<(i64, i64)> {
    if m.gcd(&n) != 1 {
        return Err(Error::InvalidSlope { m, n, reason: String::from("m and n are not coprime") });
    }
    if (3 * m).gcd(&n) != 1 {
        return Err(Error::InvalidSlope { m, n, reason: String::from("3m and n are not coprime") });
    }
    Ok((3 * m, n))
}

fn gated(system: &CurveSystem) -> Result<HeegaardDiagram> {
    let d = realize(system)?;
    for c in &system.curves {
        let w = curve_word(&d, &c.name)?;
        if w.letters() != c.word.letters() {
            return Err(Error::GateFailure(c.name.clone()));
        }
    }
    Ok(d)
}

/// Diagram of `D1`, `D2`, `lambda`; each curve word must match
/// [`pretzel_words`] letter for letter.
pub fn pretzel_diagram(params: &PretzelParams) -> Result<HeegaardDiagram> {
    gated(&pretzel_words(params)?)
}

/// Diagram of `D1`, `D2` and the filling curve, gated like
/// [`pretzel_diagram`].
pub fn filling_diagram(params: &PretzelParams, cover_slope: (i64, i64)) -> Result<HeegaardDiagram> {
    gated(&filling_words(params, cover_slope)?)
}

/// Outcome of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    /// Every check passed.
    Pass,
    /// Some check failed.
    Fail,
    /// Some binding test was undecided.
    Inconclusive,
}

/// A named word in text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedWord {
    /// Curve name.
    pub name: String,
    /// Formatted word.
    pub word: String,
}

fn named_words(s: &CurveSystem) -> Vec<NamedWord> {
    s.curves.iter().map(|c| NamedWord { name: c.name.clone(), word: c.word.format(&s.basis) }).collect()
}

/// Everything the pipeline computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Certificate {
    /// Input tangles.
    pub params: PretzelParams,
    /// Normal form.
    pub normalized: Normalized,
    /// Filling slope in the cover.
    pub cover_slope: (i64, i64),
    /// Corresponding slope downstairs.
    pub base_slope: (i64, i64),
    /// Rotation of `lambda` used by the filling curve.
    pub meridian_offset: usize,
    /// `D1`, `D2`, `lambda` and the filling curve.
    pub words: Vec<NamedWord>,
    /// Homology of `⟨x, y, z | D1, D2⟩`.
    pub homology: HomologyResult,
    /// The 3-fold cover.
    pub cover: CoverContext,
    /// Lifts of `D1`, `D2` and `lambda`.
    pub lifted_words: Vec<NamedWord>,
    /// Disjoint curve/disk pairs in the cover.
    pub weak_reducibility: Vec<DisjointPair>,
    /// Crossing counts of the lifted tunnel disks.
    pub stabilization: StabilizationReport,
    /// `D1_3`, `D2_3` over the disks missing sheet `n`.
    pub h_bar_system: CurveSystem,
    /// Handlebody-side check over the sheet-`n`-free disks.
    pub h_bar: MhaReport,
    /// Sheet-`n` disk boundaries over the compressed dual disks.
    pub c_bar_system: CurveSystem,
    /// Compression-body-side check on the dual diagram.
    pub c_bar: MhaReport,
    /// Non-fatal remarks.
    pub warnings: Vec<String>,
    /// Verdict.
    pub overall: Status,
}

fn status(r: &MhaReport) -> Status {
    match r.overall {
        MhaOverall::Pass => Status::Pass,
        MhaOverall::Fail { .. } => Status::Fail,
        MhaOverall::Inconclusive { .. } => Status::Inconclusive,
    }
}

/// Rewrites words over `from` into the sub-basis `to`.
fn restrict(system: &CurveSystem, to: &Basis) -> Result<CurveSystem> {
    let map: Vec<Option<usize>> = system.basis.names().iter().map(|n| to.index_of(n)).collect();
    let curves = system
        .curves
        .iter()
        .map(|c| {
            let letters = c
                .word
                .letters()
                .iter()
                .map(|l| map[l.generator].map(|g| Letter::new(g, l.inverse)))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::InvalidCover(format!("{} meets a disk outside the sub-basis", c.name)))?;
            Ok(NamedCurve { name: c.name.clone(), word: CyclicWord::from_letters(letters) })
        })
        .collect::<Result<Vec<_>>>()?;
    CurveSystem::new(to.clone(), curves)
}

/// Runs the certification for `params` filled along `cover_slope` in the
/// 3-fold cover, with the two MHA checks delegated to `mha`.
pub fn theorem1_pipeline_with<F>(params: &PretzelParams, cover_slope: (i64, i64), mha: F) -> Result<Theorem1Certificate>
where
    F: Fn(&CurveSystem) -> Result<MhaReport>,
{
    let mut warnings = Vec::new();
    let base = base_slope(cover_slope).map_err(|e| e.at_stage("slope"))?;
    if cover_slope.0.abs() < 2 {
        warnings.push(format!("cover slope {}/{} has |m| < 2", cover_slope.0, cover_slope.1));
    }
    let normalized = normalize(params).map_err(|e| e.at_stage("words"))?;
    let words = pretzel_words(params).map_err(|e| e.at_stage("words"))?;
    let offset = meridian_offset(params, cover_slope).map_err(|e| e.at_stage("diagram"))?;
    let filling = filling_at(&words, base, offset).map_err(|e| e.at_stage("words"))?;
    let relators: Vec<_> = words.curves[..2].iter().map(|c| c.word.to_word()).collect();
    let homology = homology(&relators, &words.basis).map_err(|e| e.at_stage("homology"))?;

    let stage = "cover";
    let n = 3;
    let hom = CyclicHom::new(n, alloc::vec![1, 1, 1]).map_err(|e| e.at_stage(stage))?;
    let ctx = cover_basis(&words.basis, &hom, 1).map_err(|e| e.at_stage(stage))?;
    let lifted = lift_system(&words, &ctx).map_err(|e| e.at_stage(stage))?;
    let sheet_n: Vec<String> = ctx.lifted.names().iter().filter(|s| s.ends_with(&n.to_string())).cloned().collect();
    let sheet_n_refs: Vec<&str> = sheet_n.iter().map(String::as_str).collect();
    let tunnels = lifted.select(&["D1_1", "D1_2", "D1_3", "D2_1", "D2_2", "D2_3"]).map_err(|e| e.at_stage(stage))?;
    let all_disks: Vec<&str> = ctx.lifted.names().iter().map(String::as_str).collect();
    let weak_reducibility =
        weak_reducibility_report(&tunnels, &all_disks).map_err(|e| e.at_stage("weak_reducibility"))?;

    let stage = "diagram";
    let diagram = gated(&filling).map_err(|e| e.at_stage(stage))?;
    let stage = "lift";
    let lifted_diagram = lift_diagram(&diagram, &ctx).map_err(|e| e.at_stage(stage))?;
    for c in &tunnels.curves {
        let w = curve_word(&lifted_diagram, &c.name).map_err(|e| e.at_stage(stage))?;
        if !w.same_curve(&c.word) {
            return Err(Error::GateFailure(c.name.clone()).at_stage(stage));
        }
    }
    let tunnel_names: Vec<&str> = tunnels.curves.iter().map(|c| c.name.as_str()).collect();
    let stabilization = retain_curves(&lifted_diagram, &tunnel_names)
        .and_then(|d| stabilization_report(&d))
        .map_err(|e| e.at_stage("stabilization"))?;

    let stage = "h_bar";
    let h_bar_basis = Basis::new(ctx.lifted.names().iter().filter(|s| !sheet_n.contains(s)).cloned())
        .map_err(|e| e.at_stage(stage))?;
    let h_bar_system =
        lifted.select(&["D1_3", "D2_3"]).and_then(|s| restrict(&s, &h_bar_basis)).map_err(|e| e.at_stage(stage))?;
    let h_bar = mha(&h_bar_system).map_err(|e| e.at_stage(stage))?;

    let stage = "c_bar";
    let new_disks = ["D1_1", "D1_2", "D1_3", "D2_1", "D2_2", "D2_3", "D_3"];
    let dual = dualize(&lifted_diagram, &new_disks).map_err(|e| e.at_stage(stage))?;
    let kept = retain_curves(&dual, &sheet_n_refs).map_err(|e| e.at_stage(stage))?;
    let compressed = compress(&kept, &["D1_3", "D2_3"]).map_err(|e| e.at_stage(stage))?;
    warnings.extend(compressed.warnings.iter().cloned());
    let c_bar_basis = compressed.diagram.basis().map_err(|e| e.at_stage(stage))?;
    let c_bar_curves = sheet_n
        .iter()
        .map(|name| Ok(NamedCurve { name: name.clone(), word: curve_word(&compressed.diagram, name)? }))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.at_stage(stage))?;
    let c_bar_system = CurveSystem::new(c_bar_basis, c_bar_curves).map_err(|e| e.at_stage(stage))?;
    let c_bar = mha(&c_bar_system).map_err(|e| e.at_stage(stage))?;

    let overall = match (homology.is_z(), status(&h_bar), status(&c_bar)) {
        (true, Status::Pass, Status::Pass) => Status::Pass,
        (false, _, _) | (_, Status::Fail, _) | (_, _, Status::Fail) => Status::Fail,
        _ => Status::Inconclusive,
    };
    let mut all_words = named_words(&words);
    all_words.push(NamedWord {
        name: String::from(FILLING_NAME),
        word: filling.get(FILLING_NAME).expect("generated").format(&filling.basis),
    });
    Ok(Theorem1Certificate {
        params: params.clone(),
        normalized,
        cover_slope,
        base_slope: base,
        meridian_offset: offset,
        words: all_words,
        homology,
        cover: ctx,
        lifted_words: named_words(&lifted),
        weak_reducibility,
        stabilization,
        h_bar_system,
        h_bar,
        c_bar_system,
        c_bar,
        warnings,
        overall,
    })
}

/// [`theorem1_pipeline_with`] using the sequential [`mha_check`].
pub fn theorem1_pipeline(params: &PretzelParams, cover_slope: (i64, i64)) -> Result<Theorem1Certificate> {
    theorem1_pipeline_with(params, cover_slope, mha_check)
}
