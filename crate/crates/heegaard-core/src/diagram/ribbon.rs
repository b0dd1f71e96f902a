use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Endpoint, HeegaardDiagram, Side};

/// Cell structure of the closed Heegaard surface carried by a diagram.
///
/// Vertices are the glued marked points, edges are the arcs together with
/// the boundary segments between consecutive points, and faces are the
/// orbits of `d ↦ σ(α(d))` on arc ends, where `α` swaps the ends of an arc
/// and `σ` steps to the next point around the hole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonComplex {
    /// Marked points, counted once per glued pair.
    pub vertices: usize,
    /// Arcs plus boundary segments.
    pub edges: usize,
    /// Face boundaries as sequences of arc ends.
    pub faces: Vec<Vec<Endpoint>>,
    /// Holes without points; each bounds one face.
    pub empty_holes: usize,
    /// Connected components of the hole–arc graph.
    pub components: usize,
}

impl RibbonComplex {
    /// Builds the complex. Arc ends that are not points of a hole are
    /// ignored.
    pub fn build(d: &HeegaardDiagram) -> Self {
        let mut sigma: BTreeMap<Endpoint, Endpoint> = BTreeMap::new();
        let mut empty_holes = 0;
        for (g, h) in d.holes.iter().enumerate() {
            for side in [Side::Plus, Side::Minus] {
                let list = h.side(side);
                let n = list.len();
                if n == 0 {
                    empty_holes += 1;
                }
                for i in 0..n {
                    let j = match side {
                        Side::Plus => (i + 1) % n,
                        Side::Minus => (i + n - 1) % n,
                    };
                    sigma.insert(Endpoint::new(g, side, list[i]), Endpoint::new(g, side, list[j]));
                }
            }
        }
        let mut alpha: BTreeMap<Endpoint, Endpoint> = BTreeMap::new();
        for a in &d.arcs {
            if sigma.contains_key(&a.ends[0]) && sigma.contains_key(&a.ends[1]) {
                alpha.insert(a.ends[0], a.ends[1]);
                alpha.insert(a.ends[1], a.ends[0]);
            }
        }
        let mut faces = Vec::new();
        let mut seen = alloc::collections::BTreeSet::new();
        for &start in alpha.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut face = Vec::new();
            let mut x = start;
            while seen.insert(x) {
                face.push(x);
                match alpha.get(&x).and_then(|y| sigma.get(y)) {
                    Some(&y) if alpha.contains_key(&y) => x = y,
                    _ => break,
                }
            }
            faces.push(face);
        }
        let holes = 2 * d.holes.len();
        let mut parent: Vec<usize> = (0..holes).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let hole_id = |e: &Endpoint| 2 * e.disk + (e.side == Side::Minus) as usize;
        for (a, b) in &alpha {
            let (x, y) = (find(&mut parent, hole_id(a)), find(&mut parent, hole_id(b)));
            parent[x] = y;
        }
        let components = (0..holes).filter(|&x| find(&mut parent, x) == x).count();
        let vertices = d.point_count();
        RibbonComplex { vertices, edges: alpha.len() / 2 + vertices, faces, empty_holes, components }
    }

    /// `V − E + F − 2(C − 1)`; equals `2 − 2g` exactly when the arcs embed
    /// in the sphere with `2g` holes.
    pub fn euler_characteristic(&self) -> i64 {
        let f = (self.faces.len() + self.empty_holes) as i64;
        self.vertices as i64 - self.edges as i64 + f - 2 * (self.components as i64 - 1)
    }
}
