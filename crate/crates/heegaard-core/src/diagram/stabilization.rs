use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{ensure_valid, Arc, HeegaardDiagram, Side};
use crate::Result;

/// Caveat attached to every [`StabilizationReport`].
pub const ROUTING_CAVEAT: &str =
    "counts depend on the arc routing of this diagram; another routing with the same words may differ";

/// Intersection count of one curve with one disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionCount {
    /// Curve name.
    pub curve: String,
    /// Disk name.
    pub disk: String,
    /// Crossings after bigon removal.
    pub count: usize,
    /// True when the count is one.
    pub flagged: bool,
}

/// Curve/disk intersection counts after removing bigons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationReport {
    /// One entry per (curve, disk), curves outer.
    pub pairs: Vec<IntersectionCount>,
    /// Bigons removed.
    pub bigons_removed: usize,
    /// Routing dependence note.
    pub caveat: String,
}

impl StabilizationReport {
    /// Pairs meeting exactly once.
    pub fn flagged(&self) -> impl Iterator<Item = &IntersectionCount> {
        self.pairs.iter().filter(|p| p.flagged)
    }
}

fn sigma(d: &HeegaardDiagram, disk: usize, side: Side, point: u32) -> Option<u32> {
    let list = d.holes[disk].side(side);
    let i = list.iter().position(|&p| p == point)?;
    let n = list.len();
    Some(match side {
        Side::Plus => list[(i + 1) % n],
        Side::Minus => list[(i + n - 1) % n],
    })
}

/// Finds an arc with both ends on one hole at consecutive points.
fn find_bigon(d: &HeegaardDiagram) -> Option<usize> {
    d.arcs.iter().position(|a| {
        let [s, e] = a.ends;
        s.disk == e.disk
            && s.side == e.side
            && (sigma(d, e.disk, e.side, e.point) == Some(s.point)
                || sigma(d, s.disk, s.side, s.point) == Some(e.point))
    })
}

fn remove_bigon(d: &mut HeegaardDiagram, k: usize) {
    let a = d.arcs[k];
    let c = a.curve;
    let mut own: Vec<Arc> = d.arcs.iter().copied().filter(|x| x.curve == c).collect();
    own.sort_by_key(|x| x.index);
    let n = own.len();
    let i = a.index;
    let prev = own[(i + n - 1) % n];
    let next = own[(i + 1) % n];
    let mut rest: Vec<Arc> = Vec::new();
    if n > 2 {
        for j in 1..n - 2 {
            rest.push(own[(i + 1 + j) % n]);
        }
        let merged = Arc { curve: c, index: 0, ends: [prev.ends[0], next.ends[1]] };
        let mut seq = alloc::vec![merged];
        seq.extend(rest);
        for (j, x) in seq.iter_mut().enumerate() {
            x.index = j;
        }
        rest = seq;
    }
    d.arcs.retain(|x| x.curve != c);
    d.arcs.extend(rest);
    let g = a.ends[0].disk;
    let (p, q) = (a.ends[0].point, a.ends[1].point);
    let h = &mut d.holes[g];
    h.plus.retain(|&x| x != p && x != q);
    h.minus.retain(|&x| x != p && x != q);
}

/// Removes bigons until none remain, then counts crossings of every
/// curve with every disk; a count of one is flagged.
pub fn stabilization_report(d: &HeegaardDiagram) -> Result<StabilizationReport> {
    ensure_valid(d)?;
    let mut w = d.clone();
    let mut bigons_removed = 0;
    while let Some(k) = find_bigon(&w) {
        remove_bigon(&mut w, k);
        bigons_removed += 1;
    }
    let mut pairs = Vec::new();
    for (c, name) in w.curves.iter().enumerate() {
        let letters = w.letters_of(c);
        for (g, disk) in w.disks.iter().enumerate() {
            let count = letters.iter().filter(|l| l.generator == g).count();
            pairs.push(IntersectionCount { curve: name.clone(), disk: disk.clone(), count, flagged: count == 1 });
        }
    }
    Ok(StabilizationReport { pairs, bigons_removed, caveat: String::from(ROUTING_CAVEAT) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{validate_diagram, Endpoint, Holes};

    #[test]
    fn single_crossing_flagged() {
        let r = stabilization_report(&crate::diagram::tests::once()).unwrap();
        assert_eq!(r.bigons_removed, 0);
        assert_eq!(r.pairs.len(), 1);
        assert!(r.pairs[0].flagged);
    }

    #[test]
    fn two_crossing_bigon() {
        // c runs X+:0 -> X+:1 and back X-:1 -> X-:0
        let d = HeegaardDiagram {
            disks: alloc::vec![String::from("X")],
            holes: alloc::vec![Holes { plus: alloc::vec![0, 1], minus: alloc::vec![0, 1] }],
            curves: alloc::vec![String::from("c")],
            arcs: alloc::vec![
                Arc { curve: 0, index: 0, ends: [Endpoint::new(0, Side::Plus, 0), Endpoint::new(0, Side::Plus, 1)] },
                Arc { curve: 0, index: 1, ends: [Endpoint::new(0, Side::Minus, 1), Endpoint::new(0, Side::Minus, 0)] },
            ],
        };
        assert!(validate_diagram(&d).is_empty(), "{:?}", validate_diagram(&d));
        let r = stabilization_report(&d).unwrap();
        assert_eq!(r.bigons_removed, 1);
        assert_eq!(r.pairs[0].count, 0);
        assert!(!r.pairs[0].flagged);
    }
}
