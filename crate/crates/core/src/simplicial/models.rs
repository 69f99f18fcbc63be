//! Small standard simplicial sets and the degree-`r` circle models.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::set::{SimplicialMap, SimplicialSet};
use super::simplex::SimplexRef;
use crate::error::{invalid, Result};

fn vertex(g: usize) -> SimplexRef {
    SimplexRef::generator(0, g)
}

fn degenerate_vertex(g: usize, q: usize) -> SimplexRef {
    SimplexRef { surj: vec![0; q + 1], gen: g }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The standard `n`-simplex `Δ^n`, truncated at `top`, pointed at vertex 0.
pub fn standard_simplex(n: usize, top: usize) -> SimplicialSet {
    let levels: Vec<Vec<Vec<usize>>> = (0..=top).map(|q| if q <= n { subsets_of_size(n + 1, q + 1) } else { Vec::new() }).collect();
    let index: Vec<BTreeMap<Vec<usize>, usize>> = levels.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
    let mut faces = vec![Vec::new(); top + 1];
    for q in 1..=top {
        for s in &levels[q] {
            let fs = (0..=q)
                .map(|i| {
                    let mut t = s.clone();
                    t.remove(i);
                    SimplexRef::generator(q - 1, index[q - 1][&t])
                })
                .collect();
            faces[q].push(fs);
        }
    }
    let counts = levels.iter().map(|l| l.len()).collect();
    SimplicialSet::new(top, counts, faces, Some(0)).expect("standard simplex is well formed")
}

/// `S¹ = Δ^1/∂Δ^1`: one vertex, one edge.
pub fn standard_circle(top: usize) -> SimplicialSet {
    standard_sphere(1, top).expect("top ≥ 1")
}

/// `S^d = Δ^d/∂Δ^d`: one vertex and one `d`-simplex with all faces at the basepoint.
pub fn standard_sphere(d: usize, top: usize) -> Result<SimplicialSet> {
    if d == 0 {
        return Err(invalid("spheres start in dimension 1 here"));
    }
    if top < d {
        return Err(invalid(format!("truncation {top} is below the sphere dimension {d}")));
    }
    let mut counts = vec![0; top + 1];
    counts[0] = 1;
    counts[d] = 1;
    let mut faces = vec![Vec::new(); top + 1];
    faces[d].push(vec![degenerate_vertex(0, d - 1); d + 1]);
    SimplicialSet::new(top, counts, faces, Some(0))
}

/// The circle `C_r` with a degree-`r` map onto `S¹`.
///
/// For `r > 0`, `C_r` is a cycle of `r` edges all oriented the same way and
/// every edge maps onto the edge of `S¹`. For `r < 0` the cycle has one
/// reference edge followed by `|r|` edges oriented backwards; the backward
/// edges map onto `S¹` and the reference edge is crushed. `C_0 = S¹` with the
/// constant map. In every case `collapse` sends the reference edge onto `S¹`
/// and crushes the rest, which is a weak equivalence.
#[derive(Debug, Clone)]
pub struct DegreeModel {
    pub degree: i64,
    pub cycle: SimplicialSet,
    /// Weak equivalence `C_r → S¹`.
    pub collapse: SimplicialMap,
    /// The degree-`r` map `C_r → S¹`.
    pub map: SimplicialMap,
}

pub fn degree_map(r: i64, top: usize) -> Result<DegreeModel> {
    if top == 0 {
        return Err(invalid("truncation must reach dimension 1"));
    }
    let circle = standard_circle(top);
    let edge = SimplexRef::generator(1, 0);
    let crushed = degenerate_vertex(0, 1);
    // vertices 0..len, edge k joins vertex k and vertex k+1 (mod len)
    let (len, backward): (usize, Vec<bool>) = match r {
        0 => (1, vec![false]),
        r if r > 0 => (r as usize, vec![false; r as usize]),
        r => {
            let s = r.unsigned_abs() as usize;
            (s + 1, core::iter::once(false).chain(core::iter::repeat_n(true, s)).collect())
        }
    };
    let mut counts = vec![0; top + 1];
    counts[0] = len;
    counts[1] = len;
    let mut faces = vec![Vec::new(); top + 1];
    for k in 0..len {
        let (src, tgt) = if backward[k] { ((k + 1) % len, k) } else { (k, (k + 1) % len) };
        faces[1].push(vec![vertex(tgt), vertex(src)]);
    }
    let cycle = SimplicialSet::new(top, counts, faces, Some(0))?;
    let on_vertices = vec![vertex(0); len];
    let mut images = vec![Vec::new(); top + 1];
    images[0] = on_vertices.clone();
    images[1] = (0..len).map(|k| if k == 0 { edge.clone() } else { crushed.clone() }).collect();
    let collapse = SimplicialMap::new(&cycle, &circle, images.clone())?;
    images[1] = (0..len)
        .map(|k| match r {
            0 => crushed.clone(),
            r if r > 0 => edge.clone(),
            _ => {
                if k == 0 {
                    crushed.clone()
                } else {
                    edge.clone()
                }
            }
        })
        .collect();
    let map = SimplicialMap::new(&cycle, &circle, images)?;
    Ok(DegreeModel { degree: r, cycle, collapse, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainalg::{betti_numbers, induced_map, Coefficients};
    use num_bigint::BigInt;

    #[test]
    fn simplex_and_sphere_homology() {
        let d3 = standard_simplex(3, 4);
        assert_eq!(d3.counts(), &[4, 6, 4, 1, 0]);
        let b = betti_numbers(&d3.chains(), 0, 4, Coefficients::Integers).unwrap();
        assert_eq!(b, vec![1, 0, 0, 0, 0]);
        let s2 = standard_sphere(2, 3).unwrap();
        let b = betti_numbers(&s2.chains(), 0, 3, Coefficients::Integers).unwrap();
        assert_eq!(b, vec![1, 0, 1, 0]);
    }

    #[test]
    fn degree_maps_act_by_r() {
        for r in -3..=3i64 {
            let m = degree_map(r, 2).unwrap();
            let circle = standard_circle(2);
            let c = induced_map(&m.collapse.chain_map(&m.cycle, &circle), 1).unwrap();
            let p = induced_map(&m.map.chain_map(&m.cycle, &circle), 1).unwrap();
            assert_eq!((c.nrows(), c.ncols()), (1, 1));
            // collapse is ±1, so the degree is p / c
            let unit = c.get(0, 0);
            assert!(unit == BigInt::from(1) || unit == BigInt::from(-1));
            assert_eq!(p.get(0, 0) * unit, BigInt::from(r));
        }
    }
}
