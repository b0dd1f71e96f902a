//! Cyclic covers of handlebodies.
//!
//! A homomorphism `h: F_k → Z_n` determines an `n`-fold cyclic cover of the
//! genus-`k` handlebody. Each disk `g` lifts to `n` disks `g_1 … g_n`; the
//! lift `g_j` has its minus side in sheet `j` and its plus side in sheet
//! `j + h(g)`. The lifts `t_1 … t_{n−1}` of a tree generator `t` join the
//! sheets into one planar surface and are eliminated, leaving a disk system
//! of rank `n(k−1)+1`. Lifted disks are named by upper-casing the base name
//! and appending the sheet, so `x` over sheet `2` is `X2`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::diagram::{compress, validate_diagram, Arc, Endpoint, HeegaardDiagram, Holes, Side};
use crate::freegroup::{Basis, CurveSystem, CyclicWord, Letter, Word};
use crate::{Error, Result};

/// A homomorphism `F_k → Z_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicHom {
    /// The modulus `n`.
    pub modulus: usize,
    /// Residue of each generator.
    pub values: Vec<usize>,
}

impl CyclicHom {
    /// Builds a homomorphism; some value must be a unit mod `n`.
    pub fn new(modulus: usize, values: Vec<i64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidCover(String::from("modulus must be positive")));
        }
        let n = modulus as i64;
        let values: Vec<usize> = values.iter().map(|v| v.rem_euclid(n) as usize).collect();
        if !values.iter().any(|&v| (v as i64).gcd(&n) == 1) {
            return Err(Error::InvalidCover(format!("no generator maps to a unit mod {modulus}")));
        }
        Ok(CyclicHom { modulus, values })
    }

    /// Residue of a letter.
    pub fn letter(&self, l: Letter) -> usize {
        let v = self.values[l.generator] % self.modulus;
        if l.inverse {
            (self.modulus - v) % self.modulus
        } else {
            v
        }
    }

    /// Residue of a word.
    pub fn word(&self, letters: &[Letter]) -> usize {
        letters.iter().fold(0, |acc, &l| (acc + self.letter(l)) % self.modulus)
    }
}

/// Basis, homomorphism and tree data of a cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverContext {
    /// The base basis.
    pub base: Basis,
    /// The homomorphism.
    pub hom: CyclicHom,
    /// The tree generator.
    pub tree: usize,
    /// The lifted basis of rank `n(k−1)+1`.
    pub lifted: Basis,
}

/// Builds the cover context. For `n = 1` the lifted basis is the base.
pub fn cover_basis(base: &Basis, hom: &CyclicHom, tree: usize) -> Result<CoverContext> {
    let k = base.rank();
    if hom.values.len() != k {
        return Err(Error::RankMismatch { expected: k, found: hom.values.len() });
    }
    if tree >= k {
        return Err(Error::InvalidCover(format!("tree generator index {tree} out of range")));
    }
    let n = hom.modulus;
    if (hom.values[tree] as i64).gcd(&(n as i64)) != 1 {
        return Err(Error::InvalidCover(format!("tree generator {} is not a unit mod {n}", base.name(tree))));
    }
    let lifted = if n == 1 {
        base.clone()
    } else {
        let mut names = Vec::with_capacity(n * (k - 1) + 1);
        for g in (0..k).filter(|&g| g != tree) {
            for j in 1..=n {
                names.push(lift_name(base.name(g), j));
            }
        }
        names.push(lift_name(base.name(tree), n));
        Basis::new(names).map_err(|e| Error::InvalidCover(e.to_string()))?
    };
    Ok(CoverContext { base: base.clone(), hom: hom.clone(), tree, lifted })
}

fn lift_name(name: &str, sheet: usize) -> String {
    format!("{}{sheet}", name.to_uppercase())
}

impl CoverContext {
    /// The covering degree `n`.
    pub fn order(&self) -> usize {
        self.hom.modulus
    }

    /// `s + k` on sheets labelled `1..=n`.
    pub fn shift(&self, sheet: usize, k: isize) -> usize {
        let n = self.order() as isize;
        ((sheet as isize - 1 + k).rem_euclid(n) + 1) as usize
    }

    fn step(&self, g: usize) -> isize {
        self.hom.values[g] as isize
    }

    /// Index in the lifted basis of `g_j`, or `None` for eliminated tree
    /// lifts.
    pub fn lifted_index(&self, g: usize, sheet: usize) -> Option<usize> {
        let n = self.order();
        if n == 1 {
            return Some(g);
        }
        if g == self.tree {
            return (sheet == n).then(|| self.lifted.rank() - 1);
        }
        let before = if g > self.tree { g - 1 } else { g };
        Some(before * n + sheet - 1)
    }

    /// Base generator and sheet of a lifted generator.
    pub fn base_of(&self, lifted: usize) -> (usize, usize) {
        let n = self.order();
        if n == 1 {
            return (lifted, 1);
        }
        if lifted == self.lifted.rank() - 1 {
            return (self.tree, n);
        }
        let g = lifted / n;
        (if g >= self.tree { g + 1 } else { g }, lifted % n + 1)
    }

    /// Label of the lift that starts in `sheet`.
    pub fn label_of_start(&self, sheet: usize) -> usize {
        sheet % self.order() + 1
    }

    /// Sheet in which the lift labelled `label` starts.
    pub fn start_of_label(&self, label: usize) -> usize {
        self.shift(label, -1)
    }

    /// Name of lift `label` of curve `name`.
    pub fn curve_name(&self, name: &str, label: usize) -> String {
        if self.order() == 1 {
            String::from(name)
        } else {
            format!("{name}_{label}")
        }
    }
}

/// A lifted word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiftResult {
    /// The lift closes up.
    Closed(CyclicWord),
    /// The lift ends in another sheet.
    Open {
        /// Lifted letters, tree lifts removed.
        letters: Vec<Letter>,
        /// Sheet where the path ends.
        end_sheet: usize,
    },
}

/// Lifts `w` starting in `start_sheet`. Letter `g` read in sheet `s`
/// becomes `g_s` and moves to `s + h(g)`; `g⁻¹` becomes `g_{s−h(g)}⁻¹` and
/// moves to `s − h(g)`. Eliminated tree lifts are dropped.
pub fn lift_word(w: &CyclicWord, ctx: &CoverContext, start_sheet: usize) -> Result<LiftResult> {
    let n = ctx.order();
    if start_sheet == 0 || start_sheet > n {
        return Err(Error::InvalidCover(format!("sheet {start_sheet} outside 1..={n}")));
    }
    ctx.base.check(w.letters())?;
    let mut s = start_sheet;
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let h = ctx.step(l.generator);
        let disk_sheet = if l.inverse { ctx.shift(s, -h) } else { s };
        if let Some(i) = ctx.lifted_index(l.generator, disk_sheet) {
            out.push(Letter::new(i, l.inverse));
        }
        s = ctx.shift(s, if l.inverse { -h } else { h });
    }
    Ok(if s == start_sheet {
        LiftResult::Closed(CyclicWord::from_letters(out))
    } else {
        LiftResult::Open { letters: out, end_sheet: s }
    })
}

/// One closed lift of a curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedCurve {
    /// Name, e.g. `D1_3`.
    pub name: String,
    /// Label in `1..=n`.
    pub label: usize,
    /// Starting sheet.
    pub start_sheet: usize,
    /// The lifted word.
    pub word: CyclicWord,
}

/// All `n` lifts of a curve with `h(w) = 0`, in label order.
pub fn lifts(name: &str, w: &CyclicWord, ctx: &CoverContext) -> Result<Vec<LiftedCurve>> {
    (1..=ctx.order())
        .map(|label| {
            let start = ctx.start_of_label(label);
            match lift_word(w, ctx, start)? {
                LiftResult::Closed(word) => {
                    Ok(LiftedCurve { name: ctx.curve_name(name, label), label, start_sheet: start, word })
                }
                LiftResult::Open { end_sheet, .. } => {
                    Err(Error::InvalidCover(format!("{name} does not lift closed (ends in sheet {end_sheet})")))
                }
            }
        })
        .collect()
}

/// Lifts every curve of a base system.
pub fn lift_system(system: &CurveSystem, ctx: &CoverContext) -> Result<CurveSystem> {
    let mut curves = Vec::new();
    for c in &system.curves {
        for l in lifts(&c.name, &c.word, ctx)? {
            curves.push(crate::freegroup::NamedCurve { name: l.name, word: l.word });
        }
    }
    CurveSystem::new(ctx.lifted.clone(), curves)
}

fn tree_path(ctx: &CoverContext, from: usize, to: usize) -> Vec<Letter> {
    let n = ctx.order();
    let t = ctx.tree;
    let h = ctx.step(t);
    let mut prev: Vec<Option<(usize, Letter)>> = alloc::vec![None; n + 1];
    let mut seen = alloc::vec![false; n + 1];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(s) = queue.pop_front() {
        let up = (s != n).then(|| (ctx.shift(s, h), Letter::pos(t)));
        let down_from = ctx.shift(s, -h);
        let down = (down_from != n).then(|| (down_from, Letter::neg(t)));
        for (u, l) in up.into_iter().chain(down) {
            if !seen[u] {
                seen[u] = true;
                prev[u] = Some((s, l));
                queue.push_back(u);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, l) = prev[cur].expect("tree spans all sheets");
        path.push(l);
        cur = p;
    }
    path.reverse();
    path
}

/// Maps a closed lifted word back to the base, reinserting the tree path
/// between consecutive letters. The result is conjugate to the word the
/// lift came from.
pub fn project(w: &CyclicWord, ctx: &CoverContext) -> Result<CyclicWord> {
    ctx.lifted.check(w.letters())?;
    if w.is_empty() {
        return Ok(w.clone());
    }
    let sheets = |l: Letter| {
        let (g, j) = ctx.base_of(l.generator);
        let there = ctx.shift(j, ctx.step(g));
        let base = Letter::new(g, l.inverse);
        if l.inverse {
            (there, base, j)
        } else {
            (j, base, there)
        }
    };
    let start = sheets(w.letters()[0]).0;
    let mut cur = start;
    let mut out = Vec::new();
    for &l in w.letters() {
        let (from, base, to) = sheets(l);
        out.extend(tree_path(ctx, cur, from));
        out.push(base);
        cur = to;
    }
    out.extend(tree_path(ctx, cur, start));
    Ok(CyclicWord::from_letters(out))
}

/// Lifts a diagram over the base basis; tree lifts are spliced out and the
/// disks are put in lifted-basis order.
pub fn lift_diagram(d: &HeegaardDiagram, ctx: &CoverContext) -> Result<HeegaardDiagram> {
    let v = validate_diagram(d);
    if !v.is_empty() {
        return Err(Error::InvalidDiagram(v));
    }
    if d.disks != ctx.base.names() {
        return Err(Error::InvalidCover(String::from("diagram disks differ from the base basis")));
    }
    let n = ctx.order();
    let k = d.disks.len();
    let full = |g: usize, j: usize| g * n + j - 1;
    let mut disks = Vec::with_capacity(k * n);
    let mut holes = Vec::with_capacity(k * n);
    for g in 0..k {
        for j in 1..=n {
            disks.push(if n == 1 { d.disks[g].clone() } else { lift_name(&d.disks[g], j) });
            holes.push(Holes { plus: d.holes[g].plus.clone(), minus: d.holes[g].minus.clone() });
        }
    }
    let by_curve = d.arcs_by_curve();
    let mut curves = Vec::new();
    let mut arcs = Vec::new();
    for (c, list) in by_curve.iter().enumerate() {
        for label in 1..=n {
            let id = curves.len();
            curves.push(ctx.curve_name(&d.curves[c], label));
            let mut s = ctx.start_of_label(label);
            let place = |e: Endpoint, s: usize| {
                let h = ctx.step(e.disk);
                let j = if e.side == Side::Minus { s } else { ctx.shift(s, -h) };
                Endpoint::new(full(e.disk, j), e.side, e.point)
            };
            for (i, &a) in list.iter().enumerate() {
                let [st, en] = d.arcs[a].ends;
                arcs.push(Arc { curve: id, index: i, ends: [place(st, s), place(en, s)] });
                let h = ctx.step(en.disk);
                s = ctx.shift(s, if en.side == Side::Minus { h } else { -h });
            }
            if s != ctx.start_of_label(label) {
                return Err(Error::InvalidCover(format!("{} does not lift closed", d.curves[c])));
            }
        }
    }
    let raw = HeegaardDiagram { disks, holes, curves, arcs };
    let tree_names: Vec<String> = (1..n).map(|j| raw.disks[full(ctx.tree, j)].clone()).collect();
    let tree_refs: Vec<&str> = tree_names.iter().map(String::as_str).collect();
    let spliced = compress(&raw, &tree_refs)?.diagram;
    let order: Vec<&str> = ctx.lifted.names().iter().map(String::as_str).collect();
    let out = reorder_disks(&spliced, &order)?;
    let v = validate_diagram(&out);
    if v.is_empty() {
        Ok(out)
    } else {
        Err(Error::InvalidDiagram(v))
    }
}

/// Permutes the disks of a diagram into the given order.
pub fn reorder_disks(d: &HeegaardDiagram, order: &[&str]) -> Result<HeegaardDiagram> {
    if order.len() != d.disks.len() {
        return Err(Error::RankMismatch { expected: d.disks.len(), found: order.len() });
    }
    let mut to_new = alloc::vec![0; d.disks.len()];
    for (i, name) in order.iter().enumerate() {
        let g = d.disk_index(name).ok_or_else(|| Error::UnknownDisk(String::from(*name)))?;
        to_new[g] = i;
    }
    let mut disks = alloc::vec![String::new(); d.disks.len()];
    let mut holes = alloc::vec![Holes::default(); d.disks.len()];
    for g in 0..d.disks.len() {
        disks[to_new[g]] = d.disks[g].clone();
        holes[to_new[g]] = d.holes[g].clone();
    }
    let arcs =
        d.arcs.iter().map(|a| Arc { ends: a.ends.map(|e| Endpoint { disk: to_new[e.disk], ..e }), ..*a }).collect();
    Ok(HeegaardDiagram { disks, holes, curves: d.curves.clone(), arcs })
}

/// A maximal pair of curves and disks that miss each other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointPair {
    /// Curves, in system order.
    pub curves: Vec<String>,
    /// Disks, in basis order.
    pub disks: Vec<String>,
}

/// Every maximal pair `(S_A, S_B)`, both nonempty, such that no curve of
/// `S_A` uses a disk of `S_B`. Candidate disks are `disks` (names in the
/// system's basis).
pub fn weak_reducibility_report(system: &CurveSystem, disks: &[&str]) -> Result<Vec<DisjointPair>> {
    let b: Vec<usize> = disks
        .iter()
        .map(|n| system.basis.index_of(n).ok_or_else(|| Error::UnknownDisk(String::from(*n))))
        .collect::<Result<_>>()?;
    let uses: Vec<u64> = system
        .curves
        .iter()
        .map(|c| b.iter().enumerate().filter(|(_, &g)| c.word.occurrences(g) > 0).fold(0u64, |m, (i, _)| m | 1 << i))
        .collect();
    let na = uses.len();
    let nb = b.len();
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    let avoid_b = |sa: u64| -> u64 {
        let used = (0..na).filter(|&i| sa >> i & 1 == 1).fold(0u64, |m, i| m | uses[i]);
        !used & ((1u64 << nb) - 1)
    };
    let avoid_a = |sb: u64| -> u64 { (0..na).filter(|&i| uses[i] & sb == 0).fold(0u64, |m, i| m | 1 << i) };
    if nb <= na {
        if nb > 24 {
            return Err(Error::InvalidCover(String::from("too many disks for exhaustive pairing")));
        }
        for sb in 1..(1u64 << nb) {
            let sa = avoid_a(sb);
            if sa != 0 && avoid_b(sa) == sb {
                pairs.push((sa, sb));
            }
        }
    } else {
        if na > 24 {
            return Err(Error::InvalidCover(String::from("too many curves for exhaustive pairing")));
        }
        for sa in 1..(1u64 << na) {
            let sb = avoid_b(sa);
            if sb != 0 && avoid_a(sb) == sa {
                pairs.push((sa, sb));
            }
        }
        pairs.sort_by_key(|&(a, b)| (b, a));
    }
    Ok(pairs
        .into_iter()
        .map(|(sa, sb)| DisjointPair {
            curves: (0..na).filter(|&i| sa >> i & 1 == 1).map(|i| system.curves[i].name.clone()).collect(),
            disks: (0..nb).filter(|&i| sb >> i & 1 == 1).map(|i| String::from(disks[i])).collect(),
        })
        .collect())
}

/// The cyclic reduction of `longitudeⁿ · meridianᵐ`.
pub fn slope_word(m: i64, n: i64, meridian: &Word, longitude: &Word) -> Result<CyclicWord> {
    if m.gcd(&n) != 1 {
        return Err(Error::InvalidSlope { m, n, reason: String::from("m and n are not coprime") });
    }
    if n == 0 {
        return Err(Error::InvalidSlope { m, n, reason: String::from("trivial filling") });
    }
    Ok(longitude.power(n).concat(&meridian.power(m)).cyclic_reduce().0)
}
