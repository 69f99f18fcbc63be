//! Nerves of finite categories.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::set::SimplicialSet;
use super::simplex::SimplexRef;
use crate::error::{invalid, Result};
use crate::fincat::FinCat;

/// The nerve of a finite category, truncated at `top`.
///
/// Nondegenerate `q`-simplices are strings of `q` composable non-identity arrows.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub set: SimplicialSet,
    category: FinCat,
    /// `strings[q][g]`: the arrows of generator `g` (for `q = 0`, empty).
    strings: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
}

impl Nerve {
    pub fn new(category: &FinCat, top: usize) -> Result<Self> {
        let mut strings: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); category.objects()]];
        let non_identity: Vec<usize> = (0..category.len()).filter(|&f| !category.is_identity(f)).collect();
        for q in 1..=top {
            let next = if q == 1 {
                non_identity.iter().map(|&f| vec![f]).collect()
            } else {
                let mut next = Vec::new();
                for s in &strings[q - 1] {
                    for &f in &non_identity {
                        if category.source(f) == category.target(*s.last().unwrap()) {
                            let mut t = s.clone();
                            t.push(f);
                            next.push(t);
                        }
                    }
                }
                next
            };
            strings.push(next);
        }
        let index: Vec<BTreeMap<Vec<usize>, usize>> = strings
            .iter()
            .enumerate()
            .map(|(q, ss)| if q == 0 { BTreeMap::new() } else { ss.iter().enumerate().map(|(g, s)| (s.clone(), g)).collect() })
            .collect();
        let mut nerve = Nerve { set: SimplicialSet::new(0, vec![category.objects()], Vec::new(), None)?, category: category.clone(), strings, index };
        let mut faces = vec![Vec::new(); top + 1];
        for q in 1..=top {
            for s in &nerve.strings[q] {
                let start = category.source(s[0]);
                let fs = (0..=q)
                    .map(|i| {
                        let (st, arrows) = face_of_string(category, start, s, i);
                        nerve.simplex_of(st, &arrows).expect("faces of nerve simplices are nerve simplices")
                    })
                    .collect();
                faces[q].push(fs);
            }
        }
        let counts = nerve.strings.iter().map(|s| s.len()).collect();
        nerve.set = SimplicialSet::new(top, counts, faces, None)?;
        Ok(nerve)
    }

    pub fn category(&self) -> &FinCat {
        &self.category
    }

    /// The simplex whose consecutive arrows (identities allowed) are `arrows`,
    /// starting at object `start`.
    pub fn simplex_of(&self, start: usize, arrows: &[usize]) -> Result<SimplexRef> {
        let mut surj = vec![0u8];
        let mut kept = Vec::new();
        let mut at = start;
        for &f in arrows {
            if self.category.source(f) != at {
                return Err(invalid("arrows do not compose"));
            }
            at = self.category.target(f);
            if self.category.is_identity(f) {
                surj.push(*surj.last().unwrap());
            } else {
                surj.push(surj.last().unwrap() + 1);
                kept.push(f);
            }
        }
        let gen = if kept.is_empty() {
            start
        } else {
            *self.index.get(kept.len()).and_then(|m| m.get(&kept)).ok_or_else(|| invalid("string exceeds the truncation"))?
        };
        Ok(SimplexRef { surj, gen })
    }

    /// The objects `x_0, …, x_q` of a simplex.
    pub fn objects_of(&self, x: &SimplexRef) -> Vec<usize> {
        let p = x.gen_dim();
        let verts: Vec<usize> = if p == 0 {
            vec![x.gen]
        } else {
            let s = &self.strings[p][x.gen];
            core::iter::once(self.category.source(s[0])).chain(s.iter().map(|&f| self.category.target(f))).collect()
        };
        x.surj.iter().map(|&v| verts[v as usize]).collect()
    }

    /// The composite arrow `x_a → x_b` of a simplex, `a ≤ b`.
    pub fn arrow_between(&self, x: &SimplexRef, a: usize, b: usize) -> usize {
        let objs = self.objects_of(x);
        let p = x.gen_dim();
        let mut h = self.category.identity(objs[a]);
        for i in a..b {
            let step = if x.surj[i] == x.surj[i + 1] { self.category.identity(objs[i]) } else { self.strings[p][x.gen][x.surj[i] as usize] };
            h = self.category.compose(step, h);
        }
        h
    }
}

fn face_of_string(c: &FinCat, start: usize, s: &[usize], i: usize) -> (usize, Vec<usize>) {
    let q = s.len();
    if i == 0 {
        (c.target(s[0]), s[1..].to_vec())
    } else if i == q {
        (start, s[..q - 1].to_vec())
    } else {
        let mut t = s[..i - 1].to_vec();
        t.push(c.compose(s[i], s[i - 1]));
        t.extend_from_slice(&s[i + 1..]);
        (start, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainalg::{betti_numbers, Coefficients};

    #[test]
    fn nerve_of_ordinal_is_a_simplex() {
        let n = Nerve::new(&FinCat::ordinal(2), 3).unwrap();
        assert_eq!(n.set.counts(), &[3, 3, 1, 0]);
        let b = betti_numbers(&n.set.chains(), 0, 2, Coefficients::Integers).unwrap();
        assert_eq!(b, vec![1, 0, 0]);
    }

    #[test]
    fn nerve_of_z2_has_z2_homology() {
        let z2 = FinCat::monoid(2, 0, |g, f| g ^ f).unwrap();
        let n = Nerve::new(&z2, 4).unwrap();
        assert_eq!(n.set.counts(), &[1, 1, 1, 1, 1]);
        let h = crate::chainalg::homology(&n.set.chains(), 1, Coefficients::Integers).unwrap();
        assert_eq!(h.betti, 0);
        assert_eq!(h.torsion, vec![num_bigint::BigInt::from(2)]);
    }
}
