use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{ensure_valid, validate_diagram, Arc, Endpoint, HeegaardDiagram, Holes, Side};
use crate::{Error, Result};

/// Re-cuts the surface along the named curves. The new disks are the
/// named curves, and the boundary of every old disk becomes a curve;
/// other curves are dropped. There must be exactly genus many named curves
/// and they must cut the surface into a planar piece.
///
/// Crossing `t` of a new curve `c` is point `t` on both holes of `c`. The
/// boundary of an old disk `g` meets the new disks in the order its points
/// appear on `g+`; where `c` crosses `g` as `g^ε` the boundary of `g`
/// crosses `c` as `c^−ε`.
pub fn dualize(d: &HeegaardDiagram, new_disks: &[&str]) -> Result<HeegaardDiagram> {
    ensure_valid(d)?;
    let mut new = Vec::with_capacity(new_disks.len());
    for n in new_disks {
        let c = d.curve_index(n).ok_or_else(|| Error::UnknownCurve(String::from(*n)))?;
        if new.contains(&c) {
            return Err(Error::DuplicateCurve(String::from(*n)));
        }
        new.push(c);
    }
    let by_curve = d.arcs_by_curve();
    // (old disk, point) -> (new disk index, crossing, letter of c positive)
    let mut crossing: BTreeMap<(usize, u32), (usize, u32, bool)> = BTreeMap::new();
    let mut holes = Vec::with_capacity(new.len());
    for (k, &c) in new.iter().enumerate() {
        for (t, &a) in by_curve[c].iter().enumerate() {
            let e = d.arcs[a].ends[1];
            crossing.insert((e.disk, e.point), (k, t as u32, e.side == Side::Minus));
        }
        let pts: Vec<u32> = (0..by_curve[c].len() as u32).collect();
        holes.push(Holes { plus: pts.clone(), minus: pts });
    }
    let mut arcs = Vec::new();
    for (g, h) in d.holes.iter().enumerate() {
        let seq: Vec<(usize, u32, bool)> = h.plus.iter().filter_map(|&p| crossing.get(&(g, p)).copied()).collect();
        let n = seq.len();
        for i in 0..n {
            let (c1, t1, pos1) = seq[i];
            let (c2, t2, pos2) = seq[(i + 1) % n];
            // the dual letter at a crossing is positive iff the original is negative
            let start = Endpoint::new(c1, if pos1 { Side::Minus } else { Side::Plus }, t1);
            let end = Endpoint::new(c2, if pos2 { Side::Plus } else { Side::Minus }, t2);
            arcs.push(Arc { curve: g, index: i, ends: [start, end] });
        }
    }
    let out = HeegaardDiagram {
        disks: new.iter().map(|&c| d.curves[c].clone()).collect(),
        holes,
        curves: d.disks.clone(),
        arcs,
    };
    if new.len() == d.genus() && validate_diagram(&out).is_empty() {
        Ok(out)
    } else {
        Err(Error::IncompleteDiskSystem(new_disks.iter().map(|s| String::from(*s)).collect()))
    }
}
