//! The twisted arrow construction on a simplicial set and its projection to `X^op × X`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::nerve::Nerve;
use super::product::ProductSet;
use super::set::{reflect, SimplicialMap, SimplicialSet};
use super::simplex::{codegeneracy, coface, SimplexRef};
use crate::error::{invalid, Result};

/// The operator on `X` implementing `θ: [p] → [n]` on the twisted arrow set:
/// `[2p+1] → [2n+1]`, reversed on the front half and straight on the back half.
pub fn twisted_operator(theta: &[u8], n: usize) -> Vec<u8> {
    let p = theta.len() - 1;
    let n = n as u8;
    (0..=2 * p + 1).map(|k| if k <= p { n - theta[p - k] } else { n + 1 + theta[k - p - 1] }).collect()
}

/// `Tw(X)`: its `n`-simplices are the `(2n+1)`-simplices of `X`.
#[derive(Debug, Clone)]
pub struct Twisted {
    pub set: SimplicialSet,
    /// `simplices[n][g]`: the simplex of `X` underlying generator `g`.
    pub simplices: Vec<Vec<SimplexRef>>,
}

fn tw_face(x: &SimplicialSet, y: &SimplexRef, n: usize, i: usize) -> SimplexRef {
    x.apply(y, &twisted_operator(&coface(n, i), n))
}

fn tw_degeneracy(x: &SimplicialSet, y: &SimplexRef, n: usize, j: usize) -> SimplexRef {
    x.apply(y, &twisted_operator(&codegeneracy(n, j), n))
}

/// Twisted degeneracy directions of an `n`-simplex of `Tw(X)`.
fn tw_directions(x: &SimplicialSet, y: &SimplexRef, n: usize) -> Vec<usize> {
    (0..n).filter(|&j| tw_degeneracy(x, &tw_face(x, y, n, j), n - 1, j) == *y).collect()
}

/// `Tw(X)` truncated at `top`; needs `X` truncated at `2·top + 1` or above.
pub fn twisted(x: &SimplicialSet, top: usize) -> Result<Twisted> {
    if x.top() < 2 * top + 1 {
        return Err(invalid(format!("twisted arrows through dimension {top} need the source truncated at {}", 2 * top + 1)));
    }
    let mut simplices = Vec::with_capacity(top + 1);
    let mut index: Vec<BTreeMap<SimplexRef, usize>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let gens: Vec<SimplexRef> = x.simplices(2 * n + 1).into_iter().filter(|y| tw_directions(x, y, n).is_empty()).collect();
        index.push(gens.iter().enumerate().map(|(g, y)| (y.clone(), g)).collect());
        simplices.push(gens);
    }
    let mut faces = vec![Vec::new(); top + 1];
    for n in 1..=top {
        for y in &simplices[n] {
            let fs = (0..=n)
                .map(|i| {
                    let z = tw_face(x, y, n, i);
                    decompose(x, &z, n - 1, &index)
                })
                .collect();
            faces[n].push(fs);
        }
    }
    let counts = simplices.iter().map(|s| s.len()).collect();
    let set = SimplicialSet::new(top, counts, faces, None)?;
    Ok(Twisted { set, simplices })
}

/// Eilenberg–Zilber form in `Tw(X)` of an `n`-simplex given as a `(2n+1)`-simplex of `X`.
fn decompose(x: &SimplicialSet, y: &SimplexRef, n: usize, index: &[BTreeMap<SimplexRef, usize>]) -> SimplexRef {
    let dirs = tw_directions(x, y, n);
    let mut rho = vec![0u8];
    let mut section = vec![0u8];
    for j in 0..n {
        let v = *rho.last().unwrap();
        if dirs.contains(&j) {
            rho.push(v);
        } else {
            rho.push(v + 1);
            section.push(j as u8 + 1);
        }
    }
    let p = section.len() - 1;
    let core = x.apply(y, &twisted_operator(&section, n));
    SimplexRef { surj: rho, gen: index[p][&core] }
}

/// The projection `Tw(X) → X^op × X`, `x ↦ (x|[0,n], x|[n+1,2n+1])`.
#[derive(Debug, Clone)]
pub struct HomProjection {
    pub target: ProductSet,
    pub map: SimplicialMap,
}

pub fn hom_projection(x: &SimplicialSet, tw: &Twisted) -> Result<HomProjection> {
    let op = x.opposite();
    let target = ProductSet::new(&[&op, x])?;
    let images = tw
        .simplices
        .iter()
        .enumerate()
        .map(|(n, ys)| {
            let front: Vec<u8> = (0..=n as u8).collect();
            let back: Vec<u8> = (n as u8 + 1..=2 * n as u8 + 1).collect();
            ys.iter()
                .map(|y| {
                    let comps = [reflect(&x.apply(y, &front)), x.apply(y, &back)];
                    target.canonical(&comps).ok_or_else(|| invalid("projection leaves X^op × X"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let map = SimplicialMap::new(&tw.set, target.set(), images)?;
    Ok(HomProjection { target, map })
}

impl HomProjection {
    /// Vertices of `Tw(X)` over the vertex pair `(a, b)`.
    pub fn fiber(&self, tw: &Twisted, a: usize, b: usize) -> Vec<usize> {
        let pair = [SimplexRef::generator(0, a), SimplexRef::generator(0, b)];
        let Some(v) = self.target.canonical(&pair) else { return Vec::new() };
        (0..tw.set.count(0)).filter(|&g| *self.map.image_of_generator(0, g) == v).collect()
    }
}

/// For `X = N(C)`, the comparison `Tw(N C) → N(Tw C)` sending a string
/// `x_0 → ⋯ → x_{2n+1}` to the string of objects `x_{n-k} → x_{n+1+k}` of `Tw C`.
///
/// Fails unless the map is simplicial and bijective on nondegenerate simplices.
pub fn twisted_nerve_iso(nerve: &Nerve, tw: &Twisted) -> Result<(Nerve, SimplicialMap)> {
    let c = nerve.category();
    let twc = c.twisted_arrow();
    let lookup: BTreeMap<(usize, usize, usize), usize> =
        twc.pairs.iter().enumerate().map(|(h, &(u, v))| ((twc.category.source(h), u, v), h)).collect();
    let target = Nerve::new(&twc.category, tw.set.top())?;
    let images = tw
        .simplices
        .iter()
        .enumerate()
        .map(|(n, ys)| {
            ys.iter()
                .map(|y| {
                    let objs: Vec<usize> = (0..=n).map(|k| nerve.arrow_between(y, n - k, n + 1 + k)).collect();
                    let arrows: Vec<usize> = (0..n)
                        .map(|k| {
                            let u = nerve.arrow_between(y, n - k - 1, n - k);
                            let v = nerve.arrow_between(y, n + 1 + k, n + 2 + k);
                            lookup[&(objs[k], u, v)]
                        })
                        .collect();
                    target.simplex_of(objs[0], &arrows)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let map = SimplicialMap::new(&tw.set, &target.set, images)?;
    for n in 0..=tw.set.top() {
        if tw.set.count(n) != target.set.count(n) {
            return Err(invalid(format!("dimension {n}: {} against {} nondegenerate simplices", tw.set.count(n), target.set.count(n))));
        }
        let mut seen = vec![false; target.set.count(n)];
        for g in 0..tw.set.count(n) {
            let y = map.image_of_generator(n, g);
            if !y.is_nondegenerate() || core::mem::replace(&mut seen[y.gen], true) {
                return Err(invalid(format!("dimension {n}: comparison is not injective on generators")));
            }
        }
    }
    Ok((target, map))
}
