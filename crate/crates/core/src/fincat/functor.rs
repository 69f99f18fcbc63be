//! Set- and module-valued functors on finite categories, and bifunctors on `I^op × I`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::category::{CatFunctor, FinCat};
use crate::chainalg::SparseMatrix;
use crate::error::{invalid, Result};

/// A functor into finite sets; `maps[f][x]` is the image of `x ∈ F(source f)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SetFunctor {
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

impl SetFunctor {
    pub fn new(c: &FinCat, sizes: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if sizes.len() != c.objects() || maps.len() != c.len() {
            return Err(invalid("set functor tables do not match the category"));
        }
        for f in 0..c.len() {
            let (a, b) = (c.source(f), c.target(f));
            if maps[f].len() != sizes[a] || maps[f].iter().any(|&y| y >= sizes[b]) {
                return Err(invalid(format!("arrow {f} is not sent to a map F({a}) → F({b})")));
            }
        }
        let f = SetFunctor { sizes, maps };
        for a in 0..c.objects() {
            if f.maps[c.identity(a)].iter().enumerate().any(|(x, &y)| x != y) {
                return Err(invalid(format!("identity of object {a} is not sent to an identity")));
            }
        }
        for g in 0..c.len() {
            for h in 0..c.len() {
                if let Some(gh) = c.try_compose(g, h) {
                    if (0..f.sizes[c.source(h)]).any(|x| f.maps[gh][x] != f.maps[g][f.maps[h][x]]) {
                        return Err(invalid(format!("composite {g}∘{h} is not preserved")));
                    }
                }
            }
        }
        Ok(f)
    }

    /// `F ∘ i`.
    pub fn pullback(&self, i: &CatFunctor) -> SetFunctor {
        SetFunctor { sizes: i.on_objects.iter().map(|&o| self.sizes[o]).collect(), maps: i.on_arrows.iter().map(|&h| self.maps[h].clone()).collect() }
    }

    /// All functors with every value of size at most `max_size`.
    pub fn enumerate(c: &FinCat, max_size: usize) -> Vec<SetFunctor> {
        let mut out = Vec::new();
        Self::for_each(c, max_size, &mut |f| out.push(f));
        out
    }

    /// One functor per isomorphism class (relabelling the elements of each value),
    /// in increasing order of canonical form.
    pub fn enumerate_up_to_iso(c: &FinCat, max_size: usize) -> Vec<SetFunctor> {
        let mut classes = alloc::collections::BTreeSet::new();
        Self::for_each(c, max_size, &mut |f| {
            classes.insert(f.canonical(c));
        });
        classes.into_iter().collect()
    }

    /// The least relabelling of `self` under permutations of each value.
    pub fn canonical(&self, c: &FinCat) -> SetFunctor {
        let perms: Vec<Vec<Vec<usize>>> = self.sizes.iter().map(|&n| all_permutations(n)).collect();
        let mut idx = vec![0; self.sizes.len()];
        let mut best: Option<SetFunctor> = None;
        loop {
            let maps = (0..c.len())
                .map(|h| {
                    let (a, b) = (c.source(h), c.target(h));
                    let (pa, pb) = (&perms[a][idx[a]], &perms[b][idx[b]]);
                    let mut m = vec![0; self.sizes[a]];
                    for x in 0..self.sizes[a] {
                        m[pa[x]] = pb[self.maps[h][x]];
                    }
                    m
                })
                .collect();
            let cand = SetFunctor { sizes: self.sizes.clone(), maps };
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
            let mut k = 0;
            while k < idx.len() && idx[k] + 1 == perms[k].len() {
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                return best.unwrap();
            }
            idx[k] += 1;
        }
    }

    /// Calls `visit` on every functor with values of size at most `max_size`.
    pub fn for_each(c: &FinCat, max_size: usize, visit: &mut dyn FnMut(SetFunctor)) {
        let mut sizes = vec![0; c.objects()];
        loop {
            let mut maps: Vec<Option<Vec<usize>>> = vec![None; c.len()];
            for a in 0..c.objects() {
                maps[c.identity(a)] = Some((0..sizes[a]).collect());
            }
            assign_set_maps(c, &sizes, 0, &mut maps, visit);
            // next size vector
            let mut k = 0;
            while k < sizes.len() && sizes[k] == max_size {
                sizes[k] = 0;
                k += 1;
            }
            if k == sizes.len() {
                return;
            }
            sizes[k] += 1;
        }
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let total = m.checked_pow(n as u32).unwrap_or(0);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = code % m;
                    code /= m;
                    d
                })
                .collect()
        })
        .collect()
}

fn set_consistent(c: &FinCat, sizes: &[usize], f: usize, maps: &[Option<Vec<usize>>]) -> bool {
    for g in 0..c.len() {
        for (a, b) in [(g, f), (f, g)] {
            let Some(h) = c.try_compose(a, b) else { continue };
            let (Some(ma), Some(mb), Some(mh)) = (&maps[a], &maps[b], &maps[h]) else { continue };
            if (0..sizes[c.source(b)]).any(|x| mh[x] != ma[mb[x]]) {
                return false;
            }
        }
    }
    true
}

fn assign_set_maps(c: &FinCat, sizes: &[usize], f: usize, maps: &mut Vec<Option<Vec<usize>>>, out: &mut dyn FnMut(SetFunctor)) {
    if f == c.len() {
        out(SetFunctor { sizes: sizes.to_vec(), maps: maps.iter().map(|m| m.clone().unwrap()).collect() });
        return;
    }
    if c.is_identity(f) {
        if set_consistent(c, sizes, f, maps) {
            assign_set_maps(c, sizes, f + 1, maps, out);
        }
        return;
    }
    for m in all_maps(sizes[c.source(f)], sizes[c.target(f)]) {
        maps[f] = Some(m);
        if set_consistent(c, sizes, f, maps) {
            assign_set_maps(c, sizes, f + 1, maps, out);
        }
    }
    maps[f] = None;
}

/// A functor into finitely generated free modules; `maps[f]` is a
/// `rank(target) × rank(source)` integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleFunctor {
    pub ranks: Vec<usize>,
    pub maps: Vec<SparseMatrix>,
}

impl ModuleFunctor {
    pub fn new(c: &FinCat, ranks: Vec<usize>, maps: Vec<SparseMatrix>) -> Result<Self> {
        if ranks.len() != c.objects() || maps.len() != c.len() {
            return Err(invalid("module functor tables do not match the category"));
        }
        for f in 0..c.len() {
            if maps[f].nrows() != ranks[c.target(f)] || maps[f].ncols() != ranks[c.source(f)] {
                return Err(invalid(format!("matrix of arrow {f} has the wrong shape")));
            }
        }
        for a in 0..c.objects() {
            if maps[c.identity(a)] != SparseMatrix::identity(ranks[a]) {
                return Err(invalid(format!("identity of object {a} is not sent to an identity")));
            }
        }
        for g in 0..c.len() {
            for h in 0..c.len() {
                if let Some(gh) = c.try_compose(g, h) {
                    if maps[gh] != maps[g].mul(&maps[h]) {
                        return Err(invalid(format!("composite {g}∘{h} is not preserved")));
                    }
                }
            }
        }
        Ok(ModuleFunctor { ranks, maps })
    }

    /// The constant functor at the rank-one module.
    pub fn unit(c: &FinCat) -> Self {
        ModuleFunctor { ranks: vec![1; c.objects()], maps: vec![SparseMatrix::identity(1); c.len()] }
    }

    /// `F ∘ i`.
    pub fn pullback(&self, i: &CatFunctor) -> ModuleFunctor {
        ModuleFunctor {
            ranks: i.on_objects.iter().map(|&o| self.ranks[o]).collect(),
            maps: i.on_arrows.iter().map(|&h| self.maps[h].clone()).collect(),
        }
    }

    /// The free module on a set-valued functor.
    pub fn linearize(c: &FinCat, f: &SetFunctor) -> Self {
        let maps = (0..c.len())
            .map(|h| {
                let m = &f.maps[h];
                let trip = m.iter().enumerate().map(|(x, &y)| (y, x, BigInt::from(1)));
                SparseMatrix::from_triplets(f.sizes[c.target(h)], m.len(), trip)
            })
            .collect();
        ModuleFunctor { ranks: f.sizes.clone(), maps }
    }

    /// All functors with ranks at most `max_rank` and matrix entries drawn from `entries`.
    pub fn enumerate(c: &FinCat, max_rank: usize, entries: &[i64]) -> Vec<ModuleFunctor> {
        let mut out = Vec::new();
        Self::for_each(c, max_rank, entries, &mut |f| out.push(f));
        out
    }

    /// Calls `visit` on every functor [`ModuleFunctor::enumerate`] would return.
    pub fn for_each(c: &FinCat, max_rank: usize, entries: &[i64], visit: &mut dyn FnMut(ModuleFunctor)) {
        let mut ranks = vec![0; c.objects()];
        loop {
            let mut maps: Vec<Option<SparseMatrix>> = vec![None; c.len()];
            for a in 0..c.objects() {
                maps[c.identity(a)] = Some(SparseMatrix::identity(ranks[a]));
            }
            assign_matrices(c, &ranks, entries, 0, &mut maps, visit);
            let mut k = 0;
            while k < ranks.len() && ranks[k] == max_rank {
                ranks[k] = 0;
                k += 1;
            }
            if k == ranks.len() {
                return;
            }
            ranks[k] += 1;
        }
    }
}

fn all_matrices(rows: usize, cols: usize, entries: &[i64]) -> Vec<SparseMatrix> {
    let n = rows * cols;
    let total = entries.len().pow(n as u32);
    (0..total)
        .map(|mut code| {
            let dense: Vec<Vec<i64>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| {
                            let e = entries[code % entries.len()];
                            code /= entries.len();
                            e
                        })
                        .collect()
                })
                .collect();
            if rows == 0 {
                SparseMatrix::zeros(0, cols)
            } else {
                SparseMatrix::from_dense(&dense)
            }
        })
        .collect()
}

fn matrix_consistent(c: &FinCat, f: usize, maps: &[Option<SparseMatrix>]) -> bool {
    for g in 0..c.len() {
        for (a, b) in [(g, f), (f, g)] {
            let Some(h) = c.try_compose(a, b) else { continue };
            let (Some(ma), Some(mb), Some(mh)) = (&maps[a], &maps[b], &maps[h]) else { continue };
            if *mh != ma.mul(mb) {
                return false;
            }
        }
    }
    true
}

fn assign_matrices(c: &FinCat, ranks: &[usize], entries: &[i64], f: usize, maps: &mut Vec<Option<SparseMatrix>>, out: &mut dyn FnMut(ModuleFunctor)) {
    if f == c.len() {
        out(ModuleFunctor { ranks: ranks.to_vec(), maps: maps.iter().map(|m| m.clone().unwrap()).collect() });
        return;
    }
    if c.is_identity(f) {
        if matrix_consistent(c, f, maps) {
            assign_matrices(c, ranks, entries, f + 1, maps, out);
        }
        return;
    }
    for m in all_matrices(ranks[c.target(f)], ranks[c.source(f)], entries) {
        maps[f] = Some(m);
        if matrix_consistent(c, f, maps) {
            assign_matrices(c, ranks, entries, f + 1, maps, out);
        }
    }
    maps[f] = None;
}

/// A functor with a tag for its codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorTable {
    Sets(SetFunctor),
    Modules(ModuleFunctor),
}

/// A set-valued functor on `I^op × I`, given by its two one-sided actions:
/// `left[u][b]: T(target u, b) → T(source u, b)` and
/// `right[v][a]: T(a, source v) → T(a, target v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetBifunctor {
    pub sizes: Vec<Vec<usize>>,
    pub left: Vec<Vec<Vec<usize>>>,
    pub right: Vec<Vec<Vec<usize>>>,
}

/// A module-valued functor on `I^op × I`, laid out like [`SetBifunctor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleBifunctor {
    pub ranks: Vec<Vec<usize>>,
    pub maps: BTreeMap<(usize, usize), SparseMatrix>,
}

impl SetBifunctor {
    /// Checks shapes, identities, functoriality in each variable and that the two actions commute.
    pub fn new(c: &FinCat, sizes: Vec<Vec<usize>>, left: Vec<Vec<Vec<usize>>>, right: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let n = c.objects();
        if sizes.len() != n || sizes.iter().any(|r| r.len() != n) || left.len() != c.len() || right.len() != c.len() {
            return Err(invalid("bifunctor tables do not match the category"));
        }
        let is_map = |m: &Vec<usize>, from: usize, to: usize| m.len() == from && m.iter().all(|&y| y < to);
        for h in 0..c.len() {
            let (a, b) = (c.source(h), c.target(h));
            if left[h].len() != n || right[h].len() != n {
                return Err(invalid(format!("bifunctor action of arrow {h} has the wrong shape")));
            }
            for o in 0..n {
                if !is_map(&left[h][o], sizes[b][o], sizes[a][o]) || !is_map(&right[h][o], sizes[o][a], sizes[o][b]) {
                    return Err(invalid(format!("bifunctor action of arrow {h} has the wrong shape")));
                }
            }
        }
        let identity = |m: &Vec<usize>| m.iter().enumerate().all(|(x, &y)| x == y);
        for a in 0..n {
            let id = c.identity(a);
            if !left[id].iter().chain(&right[id]).all(identity) {
                return Err(invalid(format!("bifunctor does not preserve the identity of object {a}")));
            }
        }
        let then = |first: &Vec<usize>, second: &Vec<usize>| -> Vec<usize> { first.iter().map(|&x| second[x]).collect() };
        for g in 0..c.len() {
            for f in 0..c.len() {
                let Some(gf) = c.try_compose(g, f) else { continue };
                for o in 0..n {
                    if left[gf][o] != then(&left[g][o], &left[f][o]) || right[gf][o] != then(&right[f][o], &right[g][o]) {
                        return Err(invalid(format!("bifunctor is not functorial on {g}∘{f}")));
                    }
                }
            }
        }
        for u in 0..c.len() {
            for v in 0..c.len() {
                let lr = then(&left[u][c.source(v)], &right[v][c.source(u)]);
                let rl = then(&right[v][c.target(u)], &left[u][c.target(v)]);
                if lr != rl {
                    return Err(invalid(format!("the actions of {u} and {v} do not commute")));
                }
            }
        }
        Ok(SetBifunctor { sizes, left, right })
    }

    /// `T(u, v)`, the left action followed by the right one.
    pub fn act(&self, c: &FinCat, u: usize, v: usize, x: usize) -> usize {
        self.right[v][c.source(u)][self.left[u][c.source(v)][x]]
    }

    /// `(a, b) ↦ Set(F a, G b)` for functors `F, G: I → Set`; a map `φ` is
    /// encoded as `Σ_x φ(x)·|G b|^x`.
    pub fn hom(c: &FinCat, f: &SetFunctor, g: &SetFunctor) -> SetBifunctor {
        let n = c.objects();
        let sizes: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| g.sizes[b].pow(f.sizes[a] as u32)).collect()).collect();
        let mut phi = Vec::new();
        let mut left = Vec::with_capacity(c.len());
        let mut right = Vec::with_capacity(c.len());
        for h in 0..c.len() {
            let (a, b) = (c.source(h), c.target(h));
            let precompose = (0..n)
                .map(|o| {
                    (0..sizes[b][o])
                        .map(|code| {
                            decode_into(code, f.sizes[b], g.sizes[o], &mut phi);
                            f.maps[h].iter().rev().fold(0, |acc, &x| acc * g.sizes[o] + phi[x])
                        })
                        .collect()
                })
                .collect();
            let postcompose = (0..n)
                .map(|o| {
                    (0..sizes[o][a])
                        .map(|code| {
                            decode_into(code, f.sizes[o], g.sizes[a], &mut phi);
                            phi.iter().rev().fold(0, |acc, &y| acc * g.sizes[b] + g.maps[h][y])
                        })
                        .collect()
                })
                .collect();
            left.push(precompose);
            right.push(postcompose);
        }
        SetBifunctor { sizes, left, right }
    }
}

fn decode_into(mut code: usize, n: usize, m: usize, out: &mut Vec<usize>) {
    out.clear();
    for _ in 0..n {
        out.push(code % m.max(1));
        code /= m.max(1);
    }
}

/// The function `[n] → [m]` encoded by `code`.
pub fn decode(mut code: usize, n: usize, m: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = code % m.max(1);
            code /= m.max(1);
            d
        })
        .collect()
}

pub fn encode(phi: &[usize], m: usize) -> usize {
    phi.iter().rev().fold(0, |acc, &d| acc * m + d)
}

impl ModuleBifunctor {
    pub fn new(c: &FinCat, ranks: Vec<Vec<usize>>, maps: BTreeMap<(usize, usize), SparseMatrix>) -> Result<Self> {
        let t = ModuleBifunctor { ranks, maps };
        check_bifunctor(
            c,
            |a, b| t.ranks[a][b],
            |u, v| t.maps.get(&(u, v)).map(|m| (m.ncols(), Some(m.nrows()).filter(|&r| r > 0).map(|r| r - 1))),
            |first, second, comp| t.maps[&comp] == t.maps[&second].mul(&t.maps[&first]),
            |u, v| t.maps[&(u, v)] == SparseMatrix::identity(t.ranks[c.source(u)][c.target(v)]),
        )?;
        Ok(t)
    }

    /// `(a, b) ↦ F(a) ⊗ G(b)` for `F` on `I^op` (given on `c.opposite()`) and `G` on `I`.
    pub fn tensor(c: &FinCat, f: &ModuleFunctor, g: &ModuleFunctor) -> ModuleBifunctor {
        let n = c.objects();
        let ranks = (0..n).map(|a| (0..n).map(|b| f.ranks[a] * g.ranks[b]).collect()).collect();
        let mut maps = BTreeMap::new();
        for u in 0..c.len() {
            for v in 0..c.len() {
                maps.insert((u, v), kronecker(&f.maps[u], &g.maps[v]));
            }
        }
        ModuleBifunctor { ranks, maps }
    }
}

/// `A ⊗ B` with basis `(i, j) ↦ i·dim B + j`.
pub fn kronecker(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let mut trip = Vec::new();
    for (i, k, x) in a.triplets() {
        for (j, l, y) in b.triplets() {
            trip.push((i * b.nrows() + j, k * b.ncols() + l, x * y));
        }
    }
    SparseMatrix::from_triplets(a.nrows() * b.nrows(), a.ncols() * b.ncols(), trip)
}

fn check_bifunctor(
    c: &FinCat,
    size: impl Fn(usize, usize) -> usize,
    shape: impl Fn(usize, usize) -> Option<(usize, Option<usize>)>,
    composes: impl Fn((usize, usize), (usize, usize), (usize, usize)) -> bool,
    is_identity: impl Fn(usize, usize) -> bool,
) -> Result<()> {
    for u in 0..c.len() {
        for v in 0..c.len() {
            let (len, max) = shape(u, v).ok_or_else(|| invalid(format!("bifunctor has no value on ({u}, {v})")))?;
            let target = size(c.source(u), c.target(v));
            if len != size(c.target(u), c.source(v)) || max.is_some_and(|m| m >= target) {
                return Err(invalid(format!("bifunctor value on ({u}, {v}) has the wrong shape")));
            }
        }
    }
    for a in 0..c.objects() {
        for b in 0..c.objects() {
            if !is_identity(c.identity(a), c.identity(b)) {
                return Err(invalid(format!("bifunctor does not preserve the identity at ({a}, {b})")));
            }
        }
    }
    for u in 0..c.len() {
        for v in 0..c.len() {
            for u2 in 0..c.len() {
                let Some(uu) = c.try_compose(u, u2) else { continue };
                for v2 in 0..c.len() {
                    let Some(vv) = c.try_compose(v2, v) else { continue };
                    if !composes((u, v), (u2, v2), (uu, vv)) {
                        return Err(invalid(format!("bifunctor is not functorial on ({u}, {v}) then ({u2}, {v2})")));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_functor_counts() {
        // functors [1] → Set with sets of size ≤ 1: (0,0), (0,1), (1,1); (1,0) has no map
        assert_eq!(SetFunctor::enumerate(&FinCat::ordinal(1), 1).len(), 3);
        // Z/2 acting on a 2-element set: trivially or by the swap
        let z2 = FinCat::monoid(2, 0, |g, f| g ^ f).unwrap();
        let actions = SetFunctor::enumerate(&z2, 2);
        assert_eq!(actions.iter().filter(|f| f.sizes == [2]).count(), 2);
    }

    #[test]
    fn hom_bifunctor_is_valid() {
        let c = FinCat::ordinal(1);
        for f in SetFunctor::enumerate(&c, 2) {
            for g in SetFunctor::enumerate(&c, 2) {
                let t = SetBifunctor::hom(&c, &f, &g);
                SetBifunctor::new(&c, t.sizes.clone(), t.left.clone(), t.right.clone()).unwrap();
            }
        }
    }

    #[test]
    fn module_functors_on_z2() {
        let z2 = FinCat::monoid(2, 0, |g, f| g ^ f).unwrap();
        // rank one: the involution is ±1
        let fs = ModuleFunctor::enumerate(&z2, 1, &[-1, 0, 1]);
        assert_eq!(fs.iter().filter(|f| f.ranks == [1]).count(), 2);
        for f in &fs {
            let t = ModuleBifunctor::tensor(&z2, f, f);
            ModuleBifunctor::new(&z2, t.ranks.clone(), t.maps.clone()).unwrap();
        }
    }
}
