//! Finite products of simplicial sets and the basepoint-bounded subcomplexes of powers.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::set::{SimplicialMap, SimplicialSet};
use super::simplex::{compose, SimplexRef};
use crate::error::{invalid, Result};

/// `X_1 × ⋯ × X_m`, with each nondegenerate simplex remembered as its tuple
/// of components.
///
/// A tuple of `q`-simplices is nondegenerate exactly when no index `j` is a
/// degeneracy direction of every component.
#[derive(Debug, Clone)]
pub struct ProductSet {
    set: SimplicialSet,
    tuples: Vec<Vec<Vec<SimplexRef>>>,
    index: Vec<BTreeMap<Vec<SimplexRef>, usize>>,
}

fn direction_mask(x: &SimplexRef) -> u64 {
    x.degeneracy_directions().iter().fold(0, |m, &j| m | 1 << j)
}

impl ProductSet {
    /// The product of `factors` in the given order. An empty list gives the point.
    pub fn new(factors: &[&SimplicialSet]) -> Result<Self> {
        let top = match factors.first() {
            Some(x) => x.top(),
            None => 0,
        };
        if factors.iter().any(|x| x.top() != top) {
            return Err(invalid("product factors must share a truncation level"));
        }
        let mut tuples = Vec::with_capacity(top + 1);
        for q in 0..=top {
            let per_factor: Vec<Vec<(SimplexRef, u64)>> = factors
                .iter()
                .map(|x| {
                    x.simplices(q)
                        .into_iter()
                        .map(|s| {
                            let m = direction_mask(&s);
                            (s, m)
                        })
                        .collect()
                })
                .collect();
            let mut out = Vec::new();
            let mut cur = Vec::with_capacity(factors.len());
            let full = if q == 0 { 0 } else { (1u64 << q) - 1 };
            enumerate(&per_factor, full, &mut cur, &mut out);
            tuples.push(out);
        }
        let index: Vec<BTreeMap<Vec<SimplexRef>, usize>> =
            tuples.iter().map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()).collect();
        let mut p = ProductSet { set: SimplicialSet::new(0, vec![1], Vec::new(), Some(0))?, tuples, index };
        let mut faces = vec![Vec::new(); top + 1];
        for q in 1..=top {
            for t in &p.tuples[q] {
                let fs = (0..=q)
                    .map(|i| {
                        let comps: Vec<SimplexRef> = t.iter().zip(factors).map(|(y, x)| x.face(y, i)).collect();
                        p.canonical(&comps).expect("faces of product generators are product simplices")
                    })
                    .collect();
                faces[q].push(fs);
            }
        }
        let basepoint = if factors.iter().all(|x| x.basepoint().is_some()) {
            let t: Vec<SimplexRef> = factors.iter().map(|x| SimplexRef::generator(0, x.basepoint().unwrap())).collect();
            p.index[0].get(&t).copied()
        } else {
            None
        };
        let counts = p.tuples.iter().map(|t| t.len()).collect();
        p.set = SimplicialSet::new(top, counts, faces, basepoint)?;
        Ok(p)
    }

    /// `X^m` with coordinates in order.
    pub fn power(x: &SimplicialSet, m: usize) -> Result<Self> {
        let factors = vec![x; m];
        Self::new(&factors)
    }

    pub fn set(&self) -> &SimplicialSet {
        &self.set
    }

    pub fn into_set(self) -> SimplicialSet {
        self.set
    }

    /// Components of the `g`-th nondegenerate `q`-simplex.
    pub fn components(&self, q: usize, g: usize) -> &[SimplexRef] {
        &self.tuples[q][g]
    }

    /// Components of an arbitrary simplex.
    pub fn components_of(&self, x: &SimplexRef) -> Vec<SimplexRef> {
        self.tuples[x.gen_dim()][x.gen].iter().map(|y| SimplexRef { surj: compose(&y.surj, &x.surj), gen: y.gen }).collect()
    }

    /// The product simplex with the given components (all of one dimension).
    pub fn canonical(&self, comps: &[SimplexRef]) -> Option<SimplexRef> {
        let q = match comps.first() {
            Some(c) => c.dim(),
            None => return self.index[0].get(comps).map(|&g| SimplexRef::generator(0, g)),
        };
        if comps.iter().any(|c| c.dim() != q) {
            return None;
        }
        let joint = comps.iter().fold(if q == 0 { 0 } else { (1u64 << q) - 1 }, |m, c| m & direction_mask(c));
        let mut rho = Vec::with_capacity(q + 1);
        let mut section = vec![0u8];
        rho.push(0u8);
        for j in 0..q {
            let v = *rho.last().unwrap();
            if joint & (1 << j) != 0 {
                rho.push(v);
            } else {
                rho.push(v + 1);
                section.push(j as u8 + 1);
            }
        }
        let reduced: Vec<SimplexRef> = comps.iter().map(|c| SimplexRef { surj: compose(&c.surj, &section), gen: c.gen }).collect();
        let p = section.len() - 1;
        let g = *self.index.get(p)?.get(&reduced)?;
        Some(SimplexRef { surj: rho, gen: g })
    }

    /// The simplicial map `self → target` given coordinatewise on component tuples.
    pub fn map_to(&self, target: &ProductSet, f: impl Fn(&[SimplexRef]) -> Vec<SimplexRef>) -> Result<SimplicialMap> {
        let images = self
            .tuples
            .iter()
            .enumerate()
            .map(|(q, ts)| {
                ts.iter()
                    .map(|t| {
                        let comps = f(t);
                        target.canonical(&comps).ok_or_else(|| invalid(format!("dimension {q}: image tuple is not a simplex of the target")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(&self.set, &target.set, images)
    }
}

fn enumerate(per_factor: &[Vec<(SimplexRef, u64)>], mask: u64, cur: &mut Vec<SimplexRef>, out: &mut Vec<Vec<SimplexRef>>) {
    let k = cur.len();
    if k == per_factor.len() {
        if mask == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for (s, m) in &per_factor[k] {
        cur.push(s.clone());
        enumerate(per_factor, mask & m, cur, out);
        cur.pop();
    }
}

/// `X × Y`.
pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> Result<SimplicialSet> {
    Ok(ProductSet::new(&[x, y])?.into_set())
}

/// The subcomplex of `X^m` of tuples with at most `bound` coordinates away
/// from the basepoint, with its inclusion.
#[derive(Debug, Clone)]
pub struct AlphaSubcomplex {
    pub set: SimplicialSet,
    pub power: ProductSet,
    /// `ambient[q][k]` is the generator of `X^m` that generator `k` of `set` came from.
    pub ambient: Vec<Vec<usize>>,
    pub inclusion: SimplicialMap,
}

pub fn alpha_subcomplex(x: &SimplicialSet, arity: usize, bound: usize) -> Result<AlphaSubcomplex> {
    if x.count(0) != 1 || x.basepoint() != Some(0) {
        return Err(invalid("the bounded subcomplex needs a reduced pointed simplicial set"));
    }
    if arity == 0 {
        return Err(invalid("arity must be at least 1"));
    }
    let power = ProductSet::power(x, arity)?;
    let keep: Vec<Vec<usize>> = (0..=x.top())
        .map(|q| (0..power.set.count(q)).filter(|&g| power.components(q, g).iter().filter(|c| c.gen_dim() > 0).count() <= bound).collect())
        .collect();
    let (set, ambient) = power.set.subcomplex(&keep)?;
    let images = ambient.iter().enumerate().map(|(q, gs)| gs.iter().map(|&g| SimplexRef::generator(q, g)).collect()).collect();
    let inclusion = SimplicialMap::new(&set, power.set(), images)?;
    Ok(AlphaSubcomplex { set, power, ambient, inclusion })
}
