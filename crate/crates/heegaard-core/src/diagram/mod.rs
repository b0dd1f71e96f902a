//! Heegaard diagrams as chord diagrams on a sphere with paired holes.
//!
//! Cutting a genus-`g` surface along a disk system `D₁ … D_g` leaves a
//! sphere with holes `Dᵢ+` and `Dᵢ−`. A curve becomes a cyclic sequence of
//! directed arcs between marked points on the holes; point `p` of `Dᵢ+` is
//! glued to point `p` of `Dᵢ−`. An arc ending on `D−` passes into `D+` and
//! emits the letter `D`; an arc ending on `D+` emits `D⁻¹`.
//!
//! The rotation at `D+` is the order of its point list, the rotation at
//! `D−` is the reverse order, so the two holes are glued by an
//! orientation-reversing map.

mod dual;
mod realize;
mod ribbon;
mod stabilization;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::freegroup::{Basis, CyclicWord, Letter};
use crate::{Error, Result};

pub use dual::dualize;
pub use realize::{realizations, realize};
pub use ribbon::RibbonComplex;
pub use stabilization::{stabilization_report, IntersectionCount, StabilizationReport, ROUTING_CAVEAT};

/// Which of the two holes of a disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// The `+` hole.
    Plus,
    /// The `−` hole.
    Minus,
}

impl Side {
    /// The other side.
    #[must_use]
    pub const fn flip(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }

    const fn suffix(self) -> char {
        match self {
            Side::Plus => '+',
            Side::Minus => '-',
        }
    }
}

/// A marked point on a hole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    /// Disk index.
    pub disk: usize,
    /// Hole of that disk.
    pub side: Side,
    /// Point identifier.
    pub point: u32,
}

impl Endpoint {
    /// Builds an endpoint.
    pub const fn new(disk: usize, side: Side, point: u32) -> Self {
        Endpoint { disk, side, point }
    }

    /// The glued point on the other hole.
    #[must_use]
    pub const fn paired(self) -> Self {
        Endpoint { disk: self.disk, side: self.side.flip(), point: self.point }
    }
}

/// A directed arc of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    /// Curve index.
    pub curve: usize,
    /// Position along the curve.
    pub index: usize,
    /// Start and end.
    pub ends: [Endpoint; 2],
}

/// Point lists of the two holes of a disk.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Holes {
    /// Points of the `+` hole in rotation order.
    pub plus: Vec<u32>,
    /// Points of the `−` hole; the rotation is the reverse of this list.
    pub minus: Vec<u32>,
}

impl Holes {
    /// The list for `side`.
    pub fn side(&self, side: Side) -> &Vec<u32> {
        match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        }
    }

    fn side_mut(&mut self, side: Side) -> &mut Vec<u32> {
        match side {
            Side::Plus => &mut self.plus,
            Side::Minus => &mut self.minus,
        }
    }
}

/// A Heegaard diagram. Fields are public; [`validate_diagram`] checks
/// consistency.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DiagramFile", into = "DiagramFile")]
pub struct HeegaardDiagram {
    /// Disk names.
    pub disks: Vec<String>,
    /// Holes, one entry per disk.
    pub holes: Vec<Holes>,
    /// Curve names; curves without arcs are allowed.
    pub curves: Vec<String>,
    /// Arcs in any order.
    pub arcs: Vec<Arc>,
}

impl HeegaardDiagram {
    /// Number of disks.
    pub fn genus(&self) -> usize {
        self.disks.len()
    }

    /// Index of a disk.
    pub fn disk_index(&self, name: &str) -> Option<usize> {
        self.disks.iter().position(|d| d == name)
    }

    /// Index of a curve.
    pub fn curve_index(&self, name: &str) -> Option<usize> {
        self.curves.iter().position(|c| c == name)
    }

    /// The disks as a free basis.
    pub fn basis(&self) -> Result<Basis> {
        Basis::new(self.disks.iter().cloned())
    }

    /// Name of a hole, e.g. `X+`.
    pub fn hole_name(&self, disk: usize, side: Side) -> String {
        format!("{}{}", self.disks[disk], side.suffix())
    }

    /// Arc indices of each curve, sorted by position.
    pub fn arcs_by_curve(&self) -> Vec<Vec<usize>> {
        let mut out = alloc::vec![Vec::new(); self.curves.len()];
        for (i, a) in self.arcs.iter().enumerate() {
            if let Some(v) = out.get_mut(a.curve) {
                v.push(i);
            }
        }
        for v in out.iter_mut() {
            v.sort_by_key(|&i| self.arcs[i].index);
        }
        out
    }

    /// Letters read along curve `c` without validating the diagram.
    pub fn letters_of(&self, c: usize) -> Vec<Letter> {
        self.arcs_by_curve()
            .get(c)
            .map(|arcs| arcs.iter().map(|&i| letter_at(self.arcs[i].ends[1])).collect())
            .unwrap_or_default()
    }

    /// Total number of marked points on `+` holes.
    pub fn point_count(&self) -> usize {
        self.holes.iter().map(|h| h.plus.len()).sum()
    }
}

fn letter_at(end: Endpoint) -> Letter {
    Letter::new(end.disk, end.side == Side::Plus)
}

fn is_rotation(a: &[u32], b: &[u32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&x| x == a[0]) {
        Some(s) => (0..a.len()).all(|i| a[i] == b[(s + i) % b.len()]),
        None => false,
    }
}

/// Lists every broken invariant; empty iff the diagram is valid.
pub fn validate_diagram(d: &HeegaardDiagram) -> Vec<String> {
    let mut v = Vec::new();
    for (i, name) in d.disks.iter().enumerate() {
        if d.disks[..i].contains(name) {
            v.push(format!("duplicate disk {name}"));
        }
    }
    for (i, name) in d.curves.iter().enumerate() {
        if d.curves[..i].contains(name) {
            v.push(format!("duplicate curve {name}"));
        }
    }
    if d.holes.len() != d.disks.len() {
        v.push(format!("{} hole pairs for {} disks", d.holes.len(), d.disks.len()));
        return v;
    }
    let mut uses: BTreeMap<Endpoint, usize> = BTreeMap::new();
    for (g, h) in d.holes.iter().enumerate() {
        for side in [Side::Plus, Side::Minus] {
            let list = h.side(side);
            for (i, &p) in list.iter().enumerate() {
                if list[..i].contains(&p) {
                    v.push(format!("hole {} repeats point {p}", d.hole_name(g, side)));
                }
                uses.insert(Endpoint::new(g, side, p), 0);
            }
        }
        let mut a = h.plus.clone();
        let mut b = h.minus.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            v.push(format!("through_pairing not bijective on disk {}", d.disks[g]));
        } else if !is_rotation(&h.plus, &h.minus) {
            v.push(format!("hole {} is not ordered like {}", d.hole_name(g, Side::Minus), d.hole_name(g, Side::Plus)));
        }
    }
    for a in &d.arcs {
        let Some(cname) = d.curves.get(a.curve) else {
            v.push(format!("arc with unknown curve index {}", a.curve));
            continue;
        };
        for e in a.ends {
            if e.disk >= d.disks.len() {
                v.push(format!("arc {cname}#{} uses unknown disk index {}", a.index, e.disk));
                continue;
            }
            match uses.get_mut(&e) {
                Some(n) => *n += 1,
                None => v.push(format!(
                    "arc {cname}#{} ends at {}:{} which is not on the hole",
                    a.index,
                    d.hole_name(e.disk, e.side),
                    e.point
                )),
            }
        }
    }
    for (e, n) in &uses {
        if *n != 1 {
            v.push(format!("point {}:{} is the end of {n} arcs", d.hole_name(e.disk, e.side), e.point));
        }
    }
    for (c, arcs) in d.arcs_by_curve().iter().enumerate() {
        let name = &d.curves[c];
        if arcs.iter().enumerate().any(|(i, &a)| d.arcs[a].index != i) {
            v.push(format!("curve {name}: arc indices are not 0..{}", arcs.len()));
            continue;
        }
        for (i, &a) in arcs.iter().enumerate() {
            let next = arcs[(i + 1) % arcs.len()];
            if d.arcs[a].ends[1].disk < d.disks.len() && d.arcs[a].ends[1].paired() != d.arcs[next].ends[0] {
                v.push(format!("curve {name} does not close up after arc {i}"));
            }
        }
    }
    if v.is_empty() {
        let chi = RibbonComplex::build(d).euler_characteristic();
        let want = 2 - 2 * d.disks.len() as i64;
        if chi != want {
            v.push(format!("Euler characteristic {chi}, expected {want}"));
        }
    }
    v
}

fn ensure_valid(d: &HeegaardDiagram) -> Result<()> {
    let v = validate_diagram(d);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidDiagram(v))
    }
}

/// Word of a curve over the disk basis, cyclically reduced.
pub fn curve_word(d: &HeegaardDiagram, curve: &str) -> Result<CyclicWord> {
    let c = d.curve_index(curve).ok_or_else(|| Error::UnknownCurve(String::from(curve)))?;
    ensure_valid(d)?;
    Ok(CyclicWord::from_letters(d.letters_of(c)))
}

/// Keeps only the named curves and the points they use.
pub fn retain_curves(d: &HeegaardDiagram, names: &[&str]) -> Result<HeegaardDiagram> {
    let mut keep = Vec::with_capacity(names.len());
    for n in names {
        let c = d.curve_index(n).ok_or_else(|| Error::UnknownCurve(String::from(*n)))?;
        if keep.contains(&c) {
            return Err(Error::DuplicateCurve(String::from(*n)));
        }
        keep.push(c);
    }
    let arcs: Vec<Arc> = d
        .arcs
        .iter()
        .filter_map(|a| {
            let c = keep.iter().position(|&k| k == a.curve)?;
            Some(Arc { curve: c, ..*a })
        })
        .collect();
    let mut used = alloc::collections::BTreeSet::new();
    for a in &arcs {
        for e in a.ends {
            used.insert((e.disk, e.point));
        }
    }
    let holes = d
        .holes
        .iter()
        .enumerate()
        .map(|(g, h)| Holes {
            plus: h.plus.iter().copied().filter(|&p| used.contains(&(g, p))).collect(),
            minus: h.minus.iter().copied().filter(|&p| used.contains(&(g, p))).collect(),
        })
        .collect();
    Ok(HeegaardDiagram {
        disks: d.disks.clone(),
        holes,
        curves: keep.iter().map(|&c| d.curves[c].clone()).collect(),
        arcs,
    })
}

/// Output of [`compress`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Compression {
    /// The diagram without the compressed disks.
    pub diagram: HeegaardDiagram,
    /// Vanished and spliced curves.
    pub warnings: Vec<String>,
}

/// Deletes the named disks. Each arc ending on a deleted hole is joined
/// to the arc leaving the glued point, so curves through a deleted disk
/// are spliced; a curve all of whose arcs end on deleted holes vanishes.
pub fn compress(d: &HeegaardDiagram, disks: &[&str]) -> Result<Compression> {
    let mut gone = alloc::vec![false; d.disks.len()];
    for n in disks {
        let g = d.disk_index(n).ok_or_else(|| Error::UnknownDisk(String::from(*n)))?;
        gone[g] = true;
    }
    let remap: Vec<usize> = {
        let mut next = 0;
        gone.iter()
            .map(|&x| {
                let r = next;
                if !x {
                    next += 1;
                }
                r
            })
            .collect()
    };
    let fix = |e: Endpoint| Endpoint { disk: remap[e.disk], ..e };
    let mut warnings = Vec::new();
    let mut curves = Vec::new();
    let mut arcs = Vec::new();
    for (c, list) in d.arcs_by_curve().iter().enumerate() {
        let name = &d.curves[c];
        let kept: Vec<usize> = (0..list.len()).filter(|&i| !gone[d.arcs[list[i]].ends[1].disk]).collect();
        if !list.is_empty() && kept.is_empty() {
            warnings.push(format!("curve {name} vanished"));
            continue;
        }
        let id = curves.len();
        curves.push(name.clone());
        if list.is_empty() {
            continue;
        }
        if kept.len() < list.len() {
            warnings.push(format!("curve {name} spliced across compressed disks"));
        }
        let n = list.len();
        let first = (kept[kept.len() - 1] + 1) % n;
        let mut start: Option<Endpoint> = None;
        for k in 0..n {
            let a = d.arcs[list[(first + k) % n]];
            let s = *start.get_or_insert(a.ends[0]);
            if gone[a.ends[1].disk] {
                continue;
            }
            let index = arcs.iter().filter(|x: &&Arc| x.curve == id).count();
            arcs.push(Arc { curve: id, index, ends: [fix(s), fix(a.ends[1])] });
            start = None;
        }
    }
    let diagram = HeegaardDiagram {
        disks: d.disks.iter().zip(&gone).filter(|(_, &g)| !g).map(|(n, _)| n.clone()).collect(),
        holes: d.holes.iter().zip(&gone).filter(|(_, &g)| !g).map(|(h, _)| h.clone()).collect(),
        curves,
        arcs,
    };
    Ok(Compression { diagram, warnings })
}

#[derive(Serialize, Deserialize)]
struct ArcFile {
    curve: String,
    ends: [(String, u32); 2],
    index: usize,
}

#[derive(Serialize, Deserialize)]
struct DiagramFile {
    arcs: Vec<ArcFile>,
    #[serde(default)]
    curves: Vec<String>,
    disks: Vec<String>,
    holes: BTreeMap<String, Vec<u32>>,
}

impl From<HeegaardDiagram> for DiagramFile {
    fn from(d: HeegaardDiagram) -> Self {
        let mut holes = BTreeMap::new();
        for (g, h) in d.holes.iter().enumerate() {
            holes.insert(d.hole_name(g, Side::Plus), h.plus.clone());
            holes.insert(d.hole_name(g, Side::Minus), h.minus.clone());
        }
        let mut arcs: Vec<&Arc> = d.arcs.iter().collect();
        arcs.sort_by_key(|a| (a.curve, a.index));
        let end = |e: Endpoint| (d.hole_name(e.disk, e.side), e.point);
        let arcs = arcs
            .into_iter()
            .map(|a| ArcFile {
                curve: d.curves[a.curve].clone(),
                ends: [end(a.ends[0]), end(a.ends[1])],
                index: a.index,
            })
            .collect();
        DiagramFile { arcs, curves: d.curves, disks: d.disks, holes }
    }
}

impl TryFrom<DiagramFile> for HeegaardDiagram {
    type Error = Error;

    fn try_from(f: DiagramFile) -> Result<Self> {
        let hole = |name: &str| -> Result<(usize, Side)> {
            let bad = || Error::InvalidDiagram(alloc::vec![format!("unknown hole {name}")]);
            let (stem, side) = match name.chars().last() {
                Some('+') => (&name[..name.len() - 1], Side::Plus),
                Some('-') => (&name[..name.len() - 1], Side::Minus),
                _ => return Err(bad()),
            };
            let g = f.disks.iter().position(|d| d == stem).ok_or_else(bad)?;
            Ok((g, side))
        };
        let mut holes = alloc::vec![Holes::default(); f.disks.len()];
        for (name, points) in &f.holes {
            let (g, side) = hole(name)?;
            *holes[g].side_mut(side) = points.clone();
        }
        let mut curves = f.curves.clone();
        for a in &f.arcs {
            if !curves.contains(&a.curve) {
                curves.push(a.curve.clone());
            }
        }
        let mut arcs = Vec::with_capacity(f.arcs.len());
        for a in &f.arcs {
            let curve = curves.iter().position(|c| *c == a.curve).unwrap_or(0);
            let mut ends = [Endpoint::new(0, Side::Plus, 0); 2];
            for (k, (h, p)) in a.ends.iter().enumerate() {
                let (g, side) = hole(h)?;
                ends[k] = Endpoint::new(g, side, *p);
            }
            arcs.push(Arc { curve, index: a.index, ends });
        }
        Ok(HeegaardDiagram { disks: f.disks, holes, curves, arcs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One disk `X`, one curve crossing it once.
    pub(crate) fn once() -> HeegaardDiagram {
        HeegaardDiagram {
            disks: alloc::vec![String::from("X")],
            holes: alloc::vec![Holes { plus: alloc::vec![0], minus: alloc::vec![0] }],
            curves: alloc::vec![String::from("c")],
            arcs: alloc::vec![Arc {
                curve: 0,
                index: 0,
                ends: [Endpoint::new(0, Side::Plus, 0), Endpoint::new(0, Side::Minus, 0)]
            }],
        }
    }

    #[test]
    fn empty_is_valid() {
        assert!(validate_diagram(&HeegaardDiagram::default()).is_empty());
        assert_eq!(RibbonComplex::build(&HeegaardDiagram::default()).euler_characteristic(), 2);
    }

    #[test]
    fn single_crossing() {
        let d = once();
        assert!(validate_diagram(&d).is_empty());
        assert_eq!(curve_word(&d, "c").unwrap().letters(), [Letter::pos(0)]);
    }

    #[test]
    fn unmatched_point() {
        let mut d = once();
        d.holes[0].plus.push(7);
        let v = validate_diagram(&d);
        assert!(v.iter().any(|s| s == "through_pairing not bijective on disk X"), "{v:?}");
    }

    #[test]
    fn compress_single_crossing_vanishes() {
        let r = compress(&once(), &["X"]).unwrap();
        assert_eq!(r.diagram, HeegaardDiagram::default());
        assert_eq!(r.warnings, [String::from("curve c vanished")]);
    }

    #[test]
    fn compress_nothing_is_identity() {
        let d = once();
        assert_eq!(compress(&d, &[]).unwrap().diagram, d);
    }

    #[test]
    fn json_round_trip() {
        let d = once();
        let f: DiagramFile = d.clone().into();
        let back = HeegaardDiagram::try_from(f).unwrap();
        assert_eq!(back, d);
    }
}
