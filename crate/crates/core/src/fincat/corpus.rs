//! Exhaustive enumeration of small finite categories up to isomorphism.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::category::FinCat;

/// All categories with at most `max_objects` objects and at most `max_arrows`
/// arrows (identities included), one per isomorphism class.
///
/// Arrows are numbered by `(source, target, index)` with the identity first in
/// each endomorphism set. The output is sorted by object count, then arrow
/// count, then composition table, so it is stable across runs.
pub fn small_categories(max_objects: usize, max_arrows: usize) -> Vec<FinCat> {
    let mut out = Vec::new();
    for objects in 1..=max_objects {
        let mut classes: BTreeSet<(usize, Vec<u8>, Vec<usize>)> = BTreeSet::new();
        for sizes in hom_size_matrices(objects, max_arrows) {
            let layout = Layout::new(objects, &sizes);
            let relabelings = layout.relabelings(&layout.object_automorphisms(&sizes));
            let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; layout.len()]; layout.len()];
            for g in 0..layout.len() {
                for f in 0..layout.len() {
                    if layout.target[f] == layout.source[g] {
                        if layout.is_identity(g) {
                            table[g][f] = Some(f);
                        } else if layout.is_identity(f) {
                            table[g][f] = Some(g);
                        }
                    }
                }
            }
            let open: Vec<(usize, usize)> = (0..layout.len())
                .flat_map(|g| (0..layout.len()).map(move |f| (g, f)))
                .filter(|&(g, f)| layout.target[f] == layout.source[g] && table[g][f].is_none())
                .collect();
            let flat_sizes: Vec<usize> = sizes.iter().flatten().copied().collect();
            search(&layout, &open, &table, &mut |t| {
                let code = layout.canonical_code(t, &relabelings);
                classes.insert((layout.len(), code, flat_sizes.clone()));
            });
        }
        let mut cats: Vec<(usize, Vec<u8>, FinCat)> = classes
            .into_iter()
            .map(|(n, code, flat)| {
                let sizes: Vec<Vec<usize>> = flat.chunks(objects).map(|c| c.to_vec()).collect();
                let layout = Layout::new(objects, &sizes);
                let arrows: Vec<(usize, usize)> = (0..n).map(|f| (layout.source[f], layout.target[f])).collect();
                let identity = (0..objects).map(|a| layout.identity[a]).collect();
                let c = FinCat::new(objects, &arrows, identity, |g, f| code[g * n + f] as usize).expect("enumerated tables are categories");
                (n, code, c)
            })
            .collect();
        cats.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        out.extend(cats.into_iter().map(|(_, _, c)| c));
    }
    out
}

/// Hom-set size matrices with positive diagonal and total at most `max_arrows`,
/// minimal in their orbit under relabelling objects.
fn hom_size_matrices(objects: usize, max_arrows: usize) -> Vec<Vec<Vec<usize>>> {
    let cells = objects * objects;
    let mut out = Vec::new();
    let mut cur = vec![0usize; cells];
    fn rec(k: usize, objects: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == cur.len() {
            let m: Vec<Vec<usize>> = cur.chunks(objects).map(|c| c.to_vec()).collect();
            if permutations(objects).iter().all(|p| permuted(&m, p) >= m) {
                out.push(m);
            }
            return;
        }
        let diagonal = k / objects == k % objects;
        let lo = usize::from(diagonal);
        for v in lo..=left {
            cur[k] = v;
            rec(k + 1, objects, left - v, cur, out);
        }
    }
    if max_arrows >= objects {
        rec(0, objects, max_arrows, &mut cur, &mut out);
    }
    out
}

fn permuted(m: &[Vec<usize>], p: &[usize]) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut out = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            out[p[a]][p[b]] = m[a][b];
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

struct Layout {
    sizes: Vec<Vec<usize>>,
    source: Vec<usize>,
    target: Vec<usize>,
    /// first arrow of each hom-set
    start: Vec<Vec<usize>>,
    identity: Vec<usize>,
}

impl Layout {
    fn new(objects: usize, sizes: &[Vec<usize>]) -> Self {
        let mut source = Vec::new();
        let mut target = Vec::new();
        let mut start = vec![vec![0; objects]; objects];
        for a in 0..objects {
            for b in 0..objects {
                start[a][b] = source.len();
                for _ in 0..sizes[a][b] {
                    source.push(a);
                    target.push(b);
                }
            }
        }
        let identity = (0..objects).map(|a| start[a][a]).collect();
        Layout { sizes: sizes.to_vec(), source, target, start, identity }
    }

    fn len(&self) -> usize {
        self.source.len()
    }

    fn is_identity(&self, f: usize) -> bool {
        self.identity[self.source[f]] == f
    }

    fn object_automorphisms(&self, sizes: &[Vec<usize>]) -> Vec<Vec<usize>> {
        permutations(sizes.len()).into_iter().filter(|p| permuted(sizes, p) == sizes).collect()
    }

    /// Every arrow relabelling induced by an automorphism of the hom-size
    /// matrix and a permutation of the non-identity arrows in each hom-set.
    fn relabelings(&self, autos: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let objects = self.sizes.len();
        let homs: Vec<(usize, usize)> = (0..objects).flat_map(|a| (0..objects).map(move |b| (a, b))).filter(|&(a, b)| self.sizes[a][b] > 0).collect();
        let choices: Vec<Vec<Vec<usize>>> = homs
            .iter()
            .map(|&(a, b)| {
                let fixed = usize::from(a == b);
                permutations(self.sizes[a][b] - fixed).into_iter().map(|q| (0..fixed).chain(q.into_iter().map(|x| x + fixed)).collect()).collect()
            })
            .collect();
        let mut out = Vec::new();
        for p in autos {
            let mut idx = vec![0; homs.len()];
            loop {
                let mut relabel = vec![0; self.len()];
                for (h, &(a, b)) in homs.iter().enumerate() {
                    for (k, &to) in choices[h][idx[h]].iter().enumerate() {
                        relabel[self.start[a][b] + k] = self.start[p[a]][p[b]] + to;
                    }
                }
                out.push(relabel);
                let mut h = 0;
                while h < idx.len() && idx[h] + 1 == choices[h].len() {
                    idx[h] = 0;
                    h += 1;
                }
                if h == idx.len() {
                    break;
                }
                idx[h] += 1;
            }
        }
        out
    }

    /// The lexicographically least encoding of the table over all relabellings.
    fn canonical_code(&self, table: &[Vec<Option<usize>>], relabelings: &[Vec<usize>]) -> Vec<u8> {
        use core::cmp::Ordering;
        let n = self.len();
        let mut best: Vec<u8> = Vec::new();
        let mut scratch = vec![0u8; n * n];
        let mut inverse = vec![0usize; n];
        for relabel in relabelings {
            for (f, &to) in relabel.iter().enumerate() {
                inverse[to] = f;
            }
            // compare entry by entry, stopping at the first difference
            let mut order = if best.is_empty() { Ordering::Less } else { Ordering::Equal };
            for pos in 0..n * n {
                let (g, f) = (inverse[pos / n], inverse[pos % n]);
                let v = table[g][f].map_or(u8::MAX, |h| relabel[h] as u8);
                if order == Ordering::Equal {
                    order = v.cmp(&best[pos]);
                    if order == Ordering::Greater {
                        break;
                    }
                }
                scratch[pos] = v;
            }
            if order == Ordering::Less {
                best.clear();
                best.extend_from_slice(&scratch);
            }
        }
        best
    }
}

const UNSET: u8 = u8::MAX;

/// Backtracking over composition tables with associativity propagation:
/// whenever three of the four entries in `(xy)z = x(yz)` are known, the fourth
/// is forced.
struct Search<'a> {
    layout: &'a Layout,
    n: usize,
    table: Vec<u8>,
    trail: Vec<usize>,
}

impl Search<'_> {
    fn get(&self, g: usize, f: usize) -> Option<usize> {
        let v = self.table[g * self.n + f];
        (v != UNSET).then_some(v as usize)
    }

    /// Sets `g ∘ f = h` and everything it forces; false on a contradiction.
    fn assign(&mut self, g: usize, f: usize, h: usize) -> bool {
        let mut queue = vec![(g, f, h)];
        while let Some((g, f, h)) = queue.pop() {
            match self.get(g, f) {
                Some(old) if old == h => continue,
                Some(_) => return false,
                None => {}
            }
            self.table[g * self.n + f] = h as u8;
            self.trail.push(g * self.n + f);
            let n = self.n;
            let force = |s: &Self, a: (usize, usize), b: (usize, usize), queue: &mut Vec<(usize, usize, usize)>| -> bool {
                match (s.get(a.0, a.1), s.get(b.0, b.1)) {
                    (Some(x), Some(y)) => x == y,
                    (Some(x), None) => {
                        queue.push((b.0, b.1, x));
                        true
                    }
                    (None, Some(y)) => {
                        queue.push((a.0, a.1, y));
                        true
                    }
                    (None, None) => true,
                }
            };
            for z in 0..n {
                // (g f) z = g (f z)
                if let Some(fz) = self.get(f, z) {
                    if !force(self, (h, z), (g, fz), &mut queue) {
                        return false;
                    }
                }
            }
            for x in 0..n {
                // (x g) f = x (g f)
                if let Some(xg) = self.get(x, g) {
                    if !force(self, (xg, f), (x, h), &mut queue) {
                        return false;
                    }
                }
            }
            for x in 0..n {
                for y in 0..n {
                    // (x y) f = x (y f) with xy = g
                    if self.get(x, y) == Some(g) {
                        if let Some(yf) = self.get(y, f) {
                            if !force(self, (g, f), (x, yf), &mut queue) {
                                return false;
                            }
                        }
                    }
                    // (g x) y = g (x y) with xy = f
                    if self.get(x, y) == Some(f) {
                        if let Some(gx) = self.get(g, x) {
                            if !force(self, (gx, y), (g, f), &mut queue) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let pos = self.trail.pop().unwrap();
            self.table[pos] = UNSET;
        }
    }

    fn run(&mut self, open: &[(usize, usize)], emit: &mut impl FnMut(&[Vec<Option<usize>>])) {
        let Some(&(g, f)) = open.iter().find(|&&(g, f)| self.get(g, f).is_none()) else {
            let n = self.n;
            let t: Vec<Vec<Option<usize>>> = (0..n).map(|g| (0..n).map(|f| self.get(g, f)).collect()).collect();
            emit(&t);
            return;
        };
        let (a, b) = (self.layout.source[f], self.layout.target[g]);
        let range = self.layout.start[a][b]..self.layout.start[a][b] + self.layout.sizes[a][b];
        for h in range {
            let mark = self.trail.len();
            if self.assign(g, f, h) {
                self.run(open, emit);
            }
            self.undo(mark);
        }
    }
}

fn search(layout: &Layout, open: &[(usize, usize)], table: &[Vec<Option<usize>>], emit: &mut impl FnMut(&[Vec<Option<usize>>])) {
    let n = layout.len();
    let mut s = Search { layout, n, table: vec![UNSET; n * n], trail: Vec::new() };
    for g in 0..n {
        for f in 0..n {
            if let Some(h) = table[g][f] {
                s.table[g * n + f] = h as u8;
            }
        }
    }
    s.run(open, emit);
}
