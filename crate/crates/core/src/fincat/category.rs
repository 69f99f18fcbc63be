//! Finite categories given by composition tables.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Result};

/// A finite 1-category. Morphisms are numbered `0..len`; `compose(g, f)` is `g ∘ f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinCat {
    objects: usize,
    source: Vec<usize>,
    target: Vec<usize>,
    identity: Vec<usize>,
    /// `table[g][f] = g ∘ f` when `target(f) = source(g)`.
    table: Vec<Vec<Option<usize>>>,
}

impl FinCat {
    /// `arrows[f] = (source, target)`; `compose(g, f)` is consulted only for
    /// composable pairs. Checks units and associativity exhaustively.
    pub fn new(objects: usize, arrows: &[(usize, usize)], identity: Vec<usize>, mut compose: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let n = arrows.len();
        let mut table = vec![vec![None; n]; n];
        for g in 0..n {
            for f in 0..n {
                if arrows[f].1 == arrows[g].0 {
                    table[g][f] = Some(compose(g, f));
                }
            }
        }
        let c = FinCat { objects, source: arrows.iter().map(|a| a.0).collect(), target: arrows.iter().map(|a| a.1).collect(), identity, table };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let n = self.source.len();
        if self.identity.len() != self.objects {
            return Err(invalid("one identity per object expected"));
        }
        if self.source.iter().chain(&self.target).any(|&o| o >= self.objects) {
            return Err(invalid("arrow endpoint is not an object"));
        }
        for (a, &id) in self.identity.iter().enumerate() {
            if id >= n || self.source[id] != a || self.target[id] != a {
                return Err(invalid(format!("identity of object {a} is not an endomorphism of it")));
            }
        }
        for g in 0..n {
            for f in 0..n {
                if let Some(h) = self.table[g][f] {
                    if h >= n || self.source[h] != self.source[f] || self.target[h] != self.target[g] {
                        return Err(invalid(format!("composite {g}∘{f} has the wrong endpoints")));
                    }
                }
            }
        }
        for f in 0..n {
            if self.compose(self.identity[self.target[f]], f) != f || self.compose(f, self.identity[self.source[f]]) != f {
                return Err(invalid(format!("identities are not units for arrow {f}")));
            }
        }
        for h in 0..n {
            for g in 0..n {
                let Some(hg) = self.table[h][g] else { continue };
                for f in 0..n {
                    let Some(gf) = self.table[g][f] else { continue };
                    if self.table[hg][f] != self.table[h][gf] {
                        return Err(invalid(format!("composition is not associative on ({h}, {g}, {f})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The category with one object per element and a unique arrow `a → b` iff `leq(a, b)`.
    pub fn poset(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut arrows = Vec::new();
        let mut index = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    index.insert((a, b), arrows.len());
                    arrows.push((a, b));
                }
            }
        }
        let identity = (0..n).map(|a| index.get(&(a, a)).copied().unwrap_or(usize::MAX)).collect();
        let arr = arrows.clone();
        FinCat::new(n, &arrows, identity, |g, f| index.get(&(arr[f].0, arr[g].1)).copied().unwrap_or(usize::MAX))
    }

    /// The ordinal `[n] = {0 < 1 < ⋯ < n}`.
    pub fn ordinal(n: usize) -> Self {
        FinCat::poset(n + 1, |a, b| a <= b).expect("total orders are categories")
    }

    pub fn discrete(n: usize) -> Self {
        FinCat::poset(n, |a, b| a == b).expect("discrete categories are categories")
    }

    pub fn terminal() -> Self {
        FinCat::discrete(1)
    }

    /// The one-object category of a monoid with identity element `unit`.
    pub fn monoid(size: usize, unit: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        FinCat::new(1, &vec![(0, 0); size], vec![unit], mul)
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn source(&self, f: usize) -> usize {
        self.source[f]
    }

    pub fn target(&self, f: usize) -> usize {
        self.target[f]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identity[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.source[f]] == f
    }

    /// `g ∘ f`; panics unless composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.table[g][f].expect("arrows are not composable")
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g][f]
    }

    /// Arrows `a → b` in index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&f| self.source[f] == a && self.target[f] == b).collect()
    }

    /// The opposite category on the same arrow indices.
    pub fn opposite(&self) -> FinCat {
        let n = self.len();
        let mut table = vec![vec![None; n]; n];
        for g in 0..n {
            for f in 0..n {
                table[g][f] = self.table[f][g];
            }
        }
        FinCat { objects: self.objects, source: self.target.clone(), target: self.source.clone(), identity: self.identity.clone(), table }
    }

    /// The twisted arrow category: objects are arrows `f`, and an arrow
    /// `f → g` is a pair `(u, v)` with `g = v ∘ f ∘ u`.
    pub fn twisted_arrow(&self) -> TwistedArrow {
        let mut arrows = Vec::new();
        let mut pairs = Vec::new();
        let mut index = BTreeMap::new();
        for f in 0..self.len() {
            for g in 0..self.len() {
                for u in self.hom(self.source[g], self.source[f]) {
                    for v in self.hom(self.target[f], self.target[g]) {
                        if self.compose(v, self.compose(f, u)) == g {
                            index.insert((u, v, f), arrows.len());
                            arrows.push((f, g));
                            pairs.push((u, v));
                        }
                    }
                }
            }
        }
        let identity = (0..self.len()).map(|f| index[&(self.identity[self.source[f]], self.identity[self.target[f]], f)]).collect();
        let category = FinCat::new(self.len(), &arrows, identity, |second, first| {
            let (u, v) = pairs[first];
            let (u2, v2) = pairs[second];
            index[&(self.compose(u, u2), self.compose(v2, v), arrows[first].0)]
        })
        .expect("twisted arrow categories are categories");
        TwistedArrow { category, pairs }
    }
}

/// `Tw(C)` with each of its arrows remembered as a pair `(u, v)` of arrows of `C`.
#[derive(Debug, Clone)]
pub struct TwistedArrow {
    pub category: FinCat,
    pub pairs: Vec<(usize, usize)>,
}

/// A functor between finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatFunctor {
    pub on_objects: Vec<usize>,
    pub on_arrows: Vec<usize>,
}

impl CatFunctor {
    pub fn new(from: &FinCat, to: &FinCat, on_objects: Vec<usize>, on_arrows: Vec<usize>) -> Result<Self> {
        if on_objects.len() != from.objects() || on_arrows.len() != from.len() {
            return Err(invalid("functor tables do not match the domain"));
        }
        if on_objects.iter().any(|&o| o >= to.objects()) || on_arrows.iter().any(|&f| f >= to.len()) {
            return Err(invalid("functor value outside the codomain"));
        }
        for f in 0..from.len() {
            let h = on_arrows[f];
            if to.source(h) != on_objects[from.source(f)] || to.target(h) != on_objects[from.target(f)] {
                return Err(invalid(format!("arrow {f} is sent to an arrow with the wrong endpoints")));
            }
        }
        for a in 0..from.objects() {
            if on_arrows[from.identity(a)] != to.identity(on_objects[a]) {
                return Err(invalid(format!("identity of object {a} is not preserved")));
            }
        }
        for g in 0..from.len() {
            for f in 0..from.len() {
                if let Some(h) = from.try_compose(g, f) {
                    if on_arrows[h] != to.compose(on_arrows[g], on_arrows[f]) {
                        return Err(invalid(format!("composite {g}∘{f} is not preserved")));
                    }
                }
            }
        }
        Ok(CatFunctor { on_objects, on_arrows })
    }

    pub fn identity(c: &FinCat) -> Self {
        CatFunctor { on_objects: (0..c.objects()).collect(), on_arrows: (0..c.len()).collect() }
    }

    /// All functors `from → to`, in lexicographic order of the tables.
    pub fn enumerate(from: &FinCat, to: &FinCat) -> Vec<CatFunctor> {
        let mut out = Vec::new();
        let mut objs = vec![0; from.objects()];
        enumerate_objects(from, to, 0, &mut objs, &mut out);
        out
    }
}

fn enumerate_objects(from: &FinCat, to: &FinCat, k: usize, objs: &mut Vec<usize>, out: &mut Vec<CatFunctor>) {
    if k == objs.len() {
        let mut arrows = vec![usize::MAX; from.len()];
        for a in 0..from.objects() {
            arrows[from.identity(a)] = to.identity(objs[a]);
        }
        enumerate_arrows(from, to, 0, objs, &mut arrows, out);
        return;
    }
    for o in 0..to.objects() {
        objs[k] = o;
        enumerate_objects(from, to, k + 1, objs, out);
    }
}

fn enumerate_arrows(from: &FinCat, to: &FinCat, f: usize, objs: &[usize], arrows: &mut Vec<usize>, out: &mut Vec<CatFunctor>) {
    if f == from.len() {
        out.push(CatFunctor { on_objects: objs.to_vec(), on_arrows: arrows.clone() });
        return;
    }
    if from.is_identity(f) {
        if consistent(from, to, f, arrows) {
            enumerate_arrows(from, to, f + 1, objs, arrows, out);
        }
        return;
    }
    for h in to.hom(objs[from.source(f)], objs[from.target(f)]) {
        arrows[f] = h;
        if consistent(from, to, f, arrows) {
            enumerate_arrows(from, to, f + 1, objs, arrows, out);
        }
    }
    arrows[f] = usize::MAX;
}

/// Checks every composite whose three arrows are already assigned and involve `f`.
fn consistent(from: &FinCat, to: &FinCat, f: usize, arrows: &[usize]) -> bool {
    let set = |x: usize| arrows[x] != usize::MAX;
    for g in 0..from.len() {
        if !set(g) {
            continue;
        }
        for (a, b) in [(g, f), (f, g)] {
            if let Some(h) = from.try_compose(a, b) {
                if set(h) && arrows[h] != to.compose(arrows[a], arrows[b]) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordinal_and_opposite() {
        let c = FinCat::ordinal(2);
        assert_eq!((c.objects(), c.len()), (3, 6));
        let op = c.opposite();
        assert_eq!(op.hom(2, 0).len(), 1);
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn rejects_non_associative_tables() {
        // {e, a, b} with a∘a = b, a∘b = a, b∘a = b, b∘b = b: (a∘a)∘b = b ≠ a∘(a∘b) = a
        let t = [[0, 1, 2], [1, 2, 1], [2, 2, 2]];
        assert!(FinCat::monoid(3, 0, |g, f| t[g][f]).is_err());
    }

    #[test]
    fn twisted_arrow_of_an_arrow() {
        // Tw([1]) is the cospan id_0 → (0→1) ← id_1
        let tw = FinCat::ordinal(1).twisted_arrow().category;
        assert_eq!((tw.objects(), tw.len()), (3, 5));
    }

    #[test]
    fn functor_enumeration() {
        let one = FinCat::ordinal(1);
        // functors [1] → [1]: constant at 0, constant at 1, identity
        assert_eq!(CatFunctor::enumerate(&one, &one).len(), 3);
        let z2 = FinCat::monoid(2, 0, |g, f| g ^ f).unwrap();
        assert_eq!(CatFunctor::enumerate(&z2, &z2).len(), 2);
    }
}
