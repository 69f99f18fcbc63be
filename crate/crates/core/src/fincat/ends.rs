//! Natural transformations, ends, coends, colimits and pointwise left Kan extensions.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::category::{CatFunctor, FinCat};
use super::functor::{decode, encode, kronecker, ModuleBifunctor, ModuleFunctor, SetBifunctor, SetFunctor};
use crate::chainalg::{cokernel, Coefficients, ModulePresentation, SparseMatrix};
use crate::error::{invalid, Result};

/// A natural transformation as its components, `components[c][x] = η_c(x)`.
pub type Transformation = Vec<Vec<usize>>;

/// All natural transformations `F ⇒ G`, in lexicographic order of components.
pub fn nat_transformations(c: &FinCat, f: &SetFunctor, g: &SetFunctor) -> Result<Vec<Transformation>> {
    let mut out = Vec::new();
    for_each_nat(c, f, g, &mut |eta| out.push(eta.iter().map(|e| e.to_vec()).collect()))?;
    Ok(out)
}

/// Calls `visit` on every natural transformation, in the order of [`nat_transformations`].
pub fn for_each_nat(c: &FinCat, f: &SetFunctor, g: &SetFunctor, visit: &mut dyn FnMut(&[&[usize]])) -> Result<()> {
    if f.sizes.len() != c.objects() || g.sizes.len() != c.objects() {
        return Err(invalid("functors must share the domain category"));
    }
    let candidates: Vec<Vec<Vec<usize>>> = (0..c.objects())
        .map(|k| {
            let count = g.sizes[k].pow(f.sizes[k] as u32);
            (0..count).map(|code| decode(code, f.sizes[k], g.sizes[k])).collect()
        })
        .collect();
    let checks = arrows_by_later_endpoint(c);
    let mut cur = Vec::with_capacity(c.objects());
    nat_search(c, f, g, &candidates, &checks, &mut cur, visit);
    Ok(())
}

fn nat_search<'a>(
    c: &FinCat,
    f: &SetFunctor,
    g: &SetFunctor,
    candidates: &'a [Vec<Vec<usize>>],
    checks: &[Vec<usize>],
    cur: &mut Vec<&'a [usize]>,
    visit: &mut dyn FnMut(&[&[usize]]),
) {
    let k = cur.len();
    if k == c.objects() {
        visit(cur);
        return;
    }
    for eta in &candidates[k] {
        cur.push(eta);
        let natural = checks[k].iter().all(|&h| {
            let (a, b) = (c.source(h), c.target(h));
            (0..f.sizes[a]).all(|x| g.maps[h][cur[a][x]] == cur[b][f.maps[h][x]])
        });
        if natural {
            nat_search(c, f, g, candidates, checks, cur, visit);
        }
        cur.pop();
    }
}

/// The end of a set-valued bifunctor: families `x_c ∈ T(c, c)` with
/// `T(id, h)(x_a) = T(h, id)(x_b)` for every `h: a → b`.
pub fn end_bifunctor(c: &FinCat, t: &SetBifunctor) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_end(c, t, &mut |x| out.push(x.to_vec()));
    out
}

/// Calls `visit` on every element of the end, in the order of [`end_bifunctor`].
pub fn for_each_end(c: &FinCat, t: &SetBifunctor, visit: &mut dyn FnMut(&[usize])) {
    let checks = arrows_by_later_endpoint(c);
    let mut cur = Vec::with_capacity(c.objects());
    end_search(c, t, &checks, &mut cur, visit);
}

/// Non-identity arrows grouped by the larger of their endpoints, where a search fixing objects in order can check them.
fn arrows_by_later_endpoint(c: &FinCat) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); c.objects()];
    for h in (0..c.len()).filter(|&h| !c.is_identity(h)) {
        out[c.source(h).max(c.target(h))].push(h);
    }
    out
}

fn end_search(c: &FinCat, t: &SetBifunctor, checks: &[Vec<usize>], cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    let k = cur.len();
    if k == c.objects() {
        visit(cur);
        return;
    }
    for x in 0..t.sizes[k][k] {
        cur.push(x);
        let ok = checks[k].iter().all(|&h| {
            let (a, b) = (c.source(h), c.target(h));
            t.right[h][a][cur[a]] == t.left[h][b][cur[b]]
        });
        if ok {
            end_search(c, t, checks, cur, visit);
        }
        cur.pop();
    }
}

/// The comparison `Nat(F, G) → ∫_c Set(F c, G c)` on one transformation.
pub fn nat_to_end(g: &SetFunctor, eta: &[impl AsRef<[usize]>]) -> Vec<usize> {
    eta.iter().enumerate().map(|(c, e)| encode(e.as_ref(), g.sizes[c])).collect()
}

/// The coend `∫^c T(c, c)`: the cokernel of `Σ_{h: a → b} T(h, id) − T(id, h)` out of `⊕ T(b, a)`.
pub fn coend_bifunctor(c: &FinCat, t: &ModuleBifunctor, k: Coefficients) -> ModulePresentation {
    let offsets = prefix_sums((0..c.objects()).map(|a| t.ranks[a][a]));
    let rows = *offsets.last().unwrap();
    let mut trip = Vec::new();
    let mut col = 0;
    for h in (0..c.len()).filter(|&h| !c.is_identity(h)) {
        let (a, b) = (c.source(h), c.target(h));
        let left = &t.maps[&(h, c.identity(a))];
        let right = &t.maps[&(c.identity(b), h)];
        for e in 0..t.ranks[b][a] {
            push_column(&mut trip, left, e, offsets[a], col, 1);
            push_column(&mut trip, right, e, offsets[b], col, -1);
            col += 1;
        }
    }
    cokernel(&SparseMatrix::from_triplets(rows, col, trip), k)
}

/// The colimit of a module-valued functor.
pub fn colimit(c: &FinCat, f: &ModuleFunctor, k: Coefficients) -> ModulePresentation {
    let offsets = prefix_sums(f.ranks.iter().copied());
    let rows = *offsets.last().unwrap();
    let mut trip = Vec::new();
    let mut col = 0;
    for h in (0..c.len()).filter(|&h| !c.is_identity(h)) {
        let (a, b) = (c.source(h), c.target(h));
        for e in 0..f.ranks[a] {
            push_column(&mut trip, &f.maps[h], e, offsets[b], col, 1);
            trip.push((offsets[a] + e, col, BigInt::from(-1)));
            col += 1;
        }
    }
    cokernel(&SparseMatrix::from_triplets(rows, col, trip), k)
}

/// The colimit of a set-valued functor as a labelling of `⊔ F(c)` by classes.
pub fn set_colimit(c: &FinCat, f: &SetFunctor) -> (usize, Vec<Vec<usize>>) {
    let offsets = prefix_sums(f.sizes.iter().copied());
    let mut uf = UnionFind::new(*offsets.last().unwrap());
    for h in 0..c.len() {
        for x in 0..f.sizes[c.source(h)] {
            uf.union(offsets[c.source(h)] + x, offsets[c.target(h)] + f.maps[h][x]);
        }
    }
    let (count, labels) = uf.labels();
    (count, (0..c.objects()).map(|a| labels[offsets[a]..offsets[a + 1]].to_vec()).collect())
}

/// The pointwise left Kan extension `i_! G` along `i: I → J`, presented at
/// each `j` by generators `(c, g: i c → j)` carrying a copy of `G(c)` and the
/// relations `(c, g' ∘ i h)·e = (c', g')·G(h) e` for `h: c → c'`.
#[derive(Debug, Clone)]
pub struct KanExtension {
    pub generators: Vec<Vec<(usize, usize)>>,
    /// Coordinate offset of each generator block; the last entry is the total.
    pub offsets: Vec<Vec<usize>>,
    pub relations: Vec<SparseMatrix>,
    /// `maps[f]`: `(c, g) ↦ (c, f ∘ g)` on coordinates, for every arrow `f` of `J`.
    pub maps: Vec<SparseMatrix>,
}

pub fn left_kan(i: &CatFunctor, source: &FinCat, target: &FinCat, g: &ModuleFunctor) -> KanExtension {
    let mut generators = Vec::with_capacity(target.objects());
    let mut offsets = Vec::with_capacity(target.objects());
    for j in 0..target.objects() {
        let gens: Vec<(usize, usize)> = (0..source.objects()).flat_map(|c| target.hom(i.on_objects[c], j).into_iter().map(move |a| (c, a))).collect();
        offsets.push(prefix_sums(gens.iter().map(|&(c, _)| g.ranks[c])));
        generators.push(gens);
    }
    let position = |j: usize, c: usize, arrow: usize| generators[j].iter().position(|&p| p == (c, arrow)).unwrap();
    let mut relations = Vec::with_capacity(target.objects());
    for j in 0..target.objects() {
        let mut trip = Vec::new();
        let mut col = 0;
        for h in (0..source.len()).filter(|&h| !source.is_identity(h)) {
            let (c, c2) = (source.source(h), source.target(h));
            for g2 in target.hom(i.on_objects[c2], j) {
                let lhs = position(j, c, target.compose(g2, i.on_arrows[h]));
                let rhs = position(j, c2, g2);
                for e in 0..g.ranks[c] {
                    trip.push((offsets[j][lhs] + e, col, BigInt::from(1)));
                    push_column(&mut trip, &g.maps[h], e, offsets[j][rhs], col, -1);
                    col += 1;
                }
            }
        }
        relations.push(SparseMatrix::from_triplets(*offsets[j].last().unwrap(), col, trip));
    }
    let maps = (0..target.len())
        .map(|f| {
            let (j, j2) = (target.source(f), target.target(f));
            let mut trip = Vec::new();
            for (k, &(c, a)) in generators[j].iter().enumerate() {
                let k2 = position(j2, c, target.compose(f, a));
                for e in 0..g.ranks[c] {
                    trip.push((offsets[j2][k2] + e, offsets[j][k] + e, BigInt::from(1)));
                }
            }
            SparseMatrix::from_triplets(*offsets[j2].last().unwrap(), *offsets[j].last().unwrap(), trip)
        })
        .collect();
    KanExtension { generators, offsets, relations, maps }
}

impl KanExtension {
    /// The module `i_! G (j)`.
    pub fn value(&self, j: usize, k: Coefficients) -> ModulePresentation {
        cokernel(&self.relations[j], k)
    }

    /// `∫^j F(j) ⊗ i_! G(j)` for `F` on `J^op` (given on the opposite category).
    pub fn coend_with(&self, target: &FinCat, f: &ModuleFunctor, k: Coefficients) -> ModulePresentation {
        let dims: Vec<usize> = (0..target.objects()).map(|j| *self.offsets[j].last().unwrap()).collect();
        let blocks = prefix_sums((0..target.objects()).map(|j| f.ranks[j] * dims[j]));
        let mut trip = Vec::new();
        let mut col = 0;
        for j in 0..target.objects() {
            let rel = kronecker(&SparseMatrix::identity(f.ranks[j]), &self.relations[j]);
            for e in 0..rel.ncols() {
                push_column(&mut trip, &rel, e, blocks[j], col, 1);
                col += 1;
            }
        }
        for h in (0..target.len()).filter(|&h| !target.is_identity(h)) {
            let (j, j2) = (target.source(h), target.target(h));
            // F(h) ⊗ id into the j block minus id ⊗ i_!G(h) into the j2 block
            let left = kronecker(&f.maps[h], &SparseMatrix::identity(dims[j]));
            let right = kronecker(&SparseMatrix::identity(f.ranks[j2]), &self.maps[h]);
            for e in 0..f.ranks[j2] * dims[j] {
                push_column(&mut trip, &left, e, blocks[j], col, 1);
                push_column(&mut trip, &right, e, blocks[j2], col, -1);
                col += 1;
            }
        }
        cokernel(&SparseMatrix::from_triplets(*blocks.last().unwrap(), col, trip), k)
    }
}

/// The set-valued left Kan extension, which is again a functor into finite sets.
pub fn left_kan_sets(i: &CatFunctor, source: &FinCat, target: &FinCat, g: &SetFunctor) -> SetFunctor {
    // elements at j: ((c, a: i c → j), x ∈ G c), glued along arrows of I
    let mut elements: Vec<Vec<(usize, usize, usize)>> = Vec::new();
    let mut labels: Vec<Vec<usize>> = Vec::new();
    let mut sizes = Vec::new();
    for j in 0..target.objects() {
        let els: Vec<(usize, usize, usize)> = (0..source.objects())
            .flat_map(|c| target.hom(i.on_objects[c], j).into_iter().flat_map(move |a| (0..g.sizes[c]).map(move |x| (c, a, x))))
            .collect();
        let find = |e: (usize, usize, usize)| els.iter().position(|&y| y == e).unwrap();
        let mut uf = UnionFind::new(els.len());
        for h in 0..source.len() {
            let (c, c2) = (source.source(h), source.target(h));
            for a2 in target.hom(i.on_objects[c2], j) {
                for x in 0..g.sizes[c] {
                    uf.union(find((c, target.compose(a2, i.on_arrows[h]), x)), find((c2, a2, g.maps[h][x])));
                }
            }
        }
        let (count, lab) = uf.labels();
        sizes.push(count);
        labels.push(lab);
        elements.push(els);
    }
    let maps = (0..target.len())
        .map(|f| {
            let (j, j2) = (target.source(f), target.target(f));
            let mut m = vec![0; sizes[j]];
            for (k, &(c, a, x)) in elements[j].iter().enumerate() {
                let k2 = elements[j2].iter().position(|&y| y == (c, target.compose(f, a), x)).unwrap();
                m[labels[j][k]] = labels[j2][k2];
            }
            m
        })
        .collect();
    SetFunctor { sizes, maps }
}

fn prefix_sums(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for x in it {
        out.push(out.last().unwrap() + x);
    }
    out
}

fn push_column(trip: &mut Vec<(usize, usize, BigInt)>, m: &SparseMatrix, e: usize, offset: usize, col: usize, sign: i64) {
    for (r, c, v) in m.triplets() {
        if c == e {
            trip.push((offset + r, col, v * sign));
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Class labels numbered by first occurrence.
    fn labels(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            out.push(label[r]);
        }
        (count, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainalg::Integer;

    fn set_functor(c: &FinCat, sizes: Vec<usize>, maps: Vec<Vec<usize>>) -> SetFunctor {
        SetFunctor::new(c, sizes, maps).unwrap()
    }

    #[test]
    fn nat_counts() {
        let t = FinCat::terminal();
        let two = set_functor(&t, vec![2], vec![vec![0, 1]]);
        assert_eq!(nat_transformations(&t, &two, &two).unwrap().len(), 4);
        let empty = set_functor(&t, vec![0], vec![vec![]]);
        assert_eq!(nat_transformations(&t, &empty, &two).unwrap().len(), 1);
        // [1]: arrows id_0, 0→1, id_1
        let c = FinCat::ordinal(1);
        let f = set_functor(&c, vec![1, 1], vec![vec![0], vec![0], vec![0]]);
        let g = set_functor(&c, vec![2, 2], vec![vec![0, 1], vec![0, 1], vec![0, 1]]);
        let nats = nat_transformations(&c, &f, &g).unwrap();
        assert_eq!(nats.len(), 2);
        let end = end_bifunctor(&c, &SetBifunctor::hom(&c, &f, &g));
        assert_eq!(end.len(), 2);
        for eta in &nats {
            assert!(end.contains(&nat_to_end(&g, eta)));
        }
    }

    #[test]
    fn colimits() {
        let z = Coefficients::Integers;
        let c = FinCat::ordinal(1);
        let double =
            ModuleFunctor::new(&c, vec![1, 1], vec![SparseMatrix::identity(1), SparseMatrix::from_dense(&[vec![2]]), SparseMatrix::identity(1)])
                .unwrap();
        assert_eq!(colimit(&c, &double, z), ModulePresentation::free(z, 1));
        let d3 = FinCat::discrete(3);
        let f =
            ModuleFunctor::new(&d3, vec![1, 2, 0], vec![SparseMatrix::identity(1), SparseMatrix::identity(2), SparseMatrix::identity(0)]).unwrap();
        assert_eq!(colimit(&d3, &f, z).free_rank, 3);
        // parallel arrows acting by 1 and 3 on Z: coequalizer Z/2
        let par = FinCat::new(2, &[(0, 0), (1, 1), (0, 1), (0, 1)], vec![0, 1], |g, f| if g <= 1 { f } else { g }).unwrap();
        let m = |x: i64| SparseMatrix::from_dense(&[vec![x]]);
        let f = ModuleFunctor::new(&par, vec![1, 1], vec![m(1), m(1), m(1), m(3)]).unwrap();
        let q = colimit(&par, &f, z);
        assert_eq!((q.free_rank, q.torsion), (0, vec![Integer::from(2)]));
    }

    #[test]
    fn coend_of_unit_tensor_is_colimit() {
        let z = Coefficients::Integers;
        let c = FinCat::ordinal(1);
        let f = ModuleFunctor::new(
            &c,
            vec![1, 2],
            vec![SparseMatrix::identity(1), SparseMatrix::from_dense(&[vec![1], vec![0]]), SparseMatrix::identity(2)],
        )
        .unwrap();
        let unit = ModuleFunctor::unit(&c.opposite());
        let t = ModuleBifunctor::tensor(&c, &unit, &f);
        assert_eq!(coend_bifunctor(&c, &t, z), ModulePresentation::free(z, 2));
        assert_eq!(colimit(&c, &f, z), ModulePresentation::free(z, 2));
    }

    #[test]
    fn kan_extensions() {
        let z = Coefficients::Integers;
        let point = FinCat::terminal();
        let arrow = FinCat::ordinal(1);
        let i = CatFunctor::new(&point, &arrow, vec![0], vec![0]).unwrap();
        let g = ModuleFunctor::unit(&point);
        let kan = left_kan(&i, &point, &arrow, &g);
        assert_eq!(kan.value(0, z), ModulePresentation::free(z, 1));
        assert_eq!(kan.value(1, z), ModulePresentation::free(z, 1));
        assert_eq!(kan.maps[1], SparseMatrix::identity(1));
        // discrete{a, b} → point is a coproduct
        let d2 = FinCat::discrete(2);
        let to_point = CatFunctor::new(&d2, &point, vec![0, 0], vec![0, 0]).unwrap();
        let g = ModuleFunctor::new(&d2, vec![1, 2], vec![SparseMatrix::identity(1), SparseMatrix::identity(2)]).unwrap();
        assert_eq!(left_kan(&to_point, &d2, &point, &g).value(0, z).free_rank, 3);
        // Z/2 acting by -1 on Z, pushed to the point: the coinvariants Z/2
        let z2 = FinCat::monoid(2, 0, |a, b| a ^ b).unwrap();
        let sign = ModuleFunctor::new(&z2, vec![1], vec![SparseMatrix::identity(1), SparseMatrix::from_dense(&[vec![-1]])]).unwrap();
        let collapse = CatFunctor::new(&z2, &point, vec![0], vec![0, 0]).unwrap();
        let v = left_kan(&collapse, &z2, &point, &sign).value(0, z);
        assert_eq!((v.free_rank, v.torsion), (0, vec![Integer::from(2)]));
        let sets = left_kan_sets(&collapse, &z2, &point, &SetFunctor::new(&z2, vec![2], vec![vec![0, 1], vec![1, 0]]).unwrap());
        assert_eq!(sets.sizes, vec![1]);
    }
}
