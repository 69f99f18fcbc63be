//! The rational group algebra `Q[Σ_q]`, the signed shuffle operators `ψ^k` and the
//! Eulerian idempotents obtained from them.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::chainalg::Integer;
use crate::error::{invalid, Error, Result};

/// `Σ_q` with its elements listed in lexicographic order of their image lists.
#[derive(Debug, Clone)]
pub struct SymmetricGroup {
    q: usize,
    perms: Vec<Vec<u8>>,
    signs: Vec<i8>,
    /// `table[a * n + b]`: the index of `a ∘ b`.
    table: Vec<u16>,
}

impl SymmetricGroup {
    pub fn new(q: usize, budget: &Budget) -> Result<Self> {
        if q > budget.max_symmetric_degree {
            return Err(Error::Budget(format!("Q[Σ_{q}] exceeds the symmetric degree budget {}", budget.max_symmetric_degree)));
        }
        let mut perms = Vec::new();
        let mut cur: Vec<u8> = (0..q as u8).collect();
        loop {
            perms.push(cur.clone());
            if !next_permutation(&mut cur) {
                break;
            }
        }
        let signs = perms.iter().map(|p| sign_of(p)).collect();
        let mut g = SymmetricGroup { q, perms, signs, table: Vec::new() };
        let n = g.len();
        let mut table = vec![0u16; n * n];
        let mut composite = vec![0u8; q];
        for a in 0..n {
            for b in 0..n {
                for (i, slot) in composite.iter_mut().enumerate() {
                    *slot = g.perms[a][g.perms[b][i] as usize];
                }
                table[a * n + b] = g.rank(&composite) as u16;
            }
        }
        g.table = table;
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// Image list of the permutation with index `a`: it sends `i` to `perm(a)[i]`.
    pub fn perm(&self, a: usize) -> &[u8] {
        &self.perms[a]
    }

    pub fn sign(&self, a: usize) -> i8 {
        self.signs[a]
    }

    /// Index of a permutation given by its image list (Lehmer code).
    pub fn rank(&self, p: &[u8]) -> usize {
        let q = p.len();
        let mut r = 0;
        for i in 0..q {
            let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
            r = r * (q - i) + smaller;
        }
        r
    }

    /// Index of `a ∘ b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b] as usize
    }
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn sign_of(p: &[u8]) -> i8 {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An element of `Q[Σ_q]`: dense numerators over a common positive denominator, kept reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymElement {
    pub numerators: Vec<i128>,
    pub denominator: i128,
}

fn overflow() -> Error {
    Error::Budget("group algebra coefficient overflow".into())
}

impl SymElement {
    pub fn zero(g: &SymmetricGroup) -> Self {
        SymElement { numerators: vec![0; g.len()], denominator: 1 }
    }

    pub fn identity(g: &SymmetricGroup) -> Self {
        let mut e = Self::zero(g);
        e.numerators[0] = 1;
        e
    }

    fn reduced(mut self) -> Self {
        let g = self.numerators.iter().fold(self.denominator, |acc, &x| acc.gcd(&x));
        if g > 1 {
            for x in &mut self.numerators {
                *x /= g;
            }
            self.denominator /= g;
        }
        self
    }

    /// Coefficient of permutation `a` as an exact rational.
    pub fn coefficient(&self, a: usize) -> BigRational {
        BigRational::new(Integer::from(self.numerators[a]), Integer::from(self.denominator))
    }

    pub fn is_zero(&self) -> bool {
        self.numerators.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &SymElement) -> Result<SymElement> {
        let l = self.denominator.lcm(&other.denominator);
        let (fa, fb) = (l / self.denominator, l / other.denominator);
        let numerators = self
            .numerators
            .iter()
            .zip(&other.numerators)
            .map(|(&a, &b)| a.checked_mul(fa).zip(b.checked_mul(fb)).and_then(|(x, y)| x.checked_add(y)).ok_or_else(overflow))
            .collect::<Result<_>>()?;
        Ok(SymElement { numerators, denominator: l }.reduced())
    }

    pub fn sub(&self, other: &SymElement) -> Result<SymElement> {
        let negated = SymElement { numerators: other.numerators.iter().map(|x| -x).collect(), denominator: other.denominator };
        self.add(&negated)
    }

    /// The product `self · other`, where `(σ · τ)` acts as `σ ∘ τ`.
    pub fn mul(&self, g: &SymmetricGroup, other: &SymElement) -> Result<SymElement> {
        let n = g.len();
        let mut out = vec![0i128; n];
        let right: Vec<(usize, i128)> = other.numerators.iter().copied().enumerate().filter(|t| t.1 != 0).collect();
        for (a, &x) in self.numerators.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = &g.table[a * n..(a + 1) * n];
            for &(b, y) in &right {
                let c = row[b] as usize;
                out[c] = x.checked_mul(y).and_then(|v| out[c].checked_add(v)).ok_or_else(overflow)?;
            }
        }
        let denominator = self.denominator.checked_mul(other.denominator).ok_or_else(overflow)?;
        Ok(SymElement { numerators: out, denominator }.reduced())
    }

    /// Applies the element to the positions `1..=q` of a Hochschild tensor `(a_0, a_1, …, a_q)`:
    /// a permutation `σ` moves `a_{i+1}` to position `σ(i) + 1`. Terms with equal tensors are combined.
    pub fn act(&self, g: &SymmetricGroup, tensor: &[usize]) -> Vec<(Vec<usize>, i128)> {
        let mut out: Vec<(Vec<usize>, i128)> = Vec::new();
        for (a, &x) in self.numerators.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let mut image = tensor.to_vec();
            for (i, &target) in g.perm(a).iter().enumerate() {
                image[target as usize + 1] = tensor[i + 1];
            }
            out.push((image, x));
        }
        out.sort();
        let mut merged: Vec<(Vec<usize>, i128)> = Vec::with_capacity(out.len());
        for (t, x) in out {
            match merged.last_mut() {
                Some(last) if last.0 == t => last.1 += x,
                _ => merged.push((t, x)),
            }
        }
        merged.retain(|t| t.1 != 0);
        merged
    }
}

/// `ψ^k = Σ sign(σ) σ` over all shuffles of `k` consecutive blocks (empty blocks allowed).
///
/// Each word `w ∈ {0..k}^q` gives one term: output position `t` receives the next unused
/// element of block `w_t`, where the blocks cut `1..q` into runs of lengths `|w^{-1}(j)|`.
pub fn adams_element(g: &SymmetricGroup, k: usize) -> SymElement {
    let q = g.degree();
    let mut e = SymElement::zero(g);
    if k == 0 {
        if q == 0 {
            e.numerators[0] = 1;
        }
        return e;
    }
    let mut word = vec![0usize; q];
    let mut perm = vec![0u8; q];
    loop {
        let mut starts = vec![0usize; k];
        for &b in &word {
            for s in starts.iter_mut().skip(b + 1) {
                *s += 1;
            }
        }
        for (t, &b) in word.iter().enumerate() {
            perm[starts[b]] = t as u8;
            starts[b] += 1;
        }
        let a = g.rank(&perm);
        e.numerators[a] += i128::from(g.sign(a));
        let mut i = 0;
        while i < q && word[i] == k - 1 {
            word[i] = 0;
            i += 1;
        }
        if i == q {
            break;
        }
        word[i] += 1;
    }
    e
}

/// `e^{(1)}, …, e^{(q)}`, solved from `ψ^k = Σ_i k^i e^{(i)}` for `k = 1, …, q`.
/// For `q = 0` the single idempotent is the identity (weight 0).
pub fn eulerian_idempotents(q: usize, budget: &Budget) -> Result<Vec<SymElement>> {
    let g = SymmetricGroup::new(q, budget)?;
    eulerian_idempotents_in(&g)
}

pub fn eulerian_idempotents_in(g: &SymmetricGroup) -> Result<Vec<SymElement>> {
    let q = g.degree();
    if q == 0 {
        return Ok(vec![SymElement::identity(g)]);
    }
    let psi: Vec<SymElement> = (1..=q).map(|k| adams_element(g, k)).collect();
    let vandermonde: Vec<Vec<BigRational>> =
        (1..=q).map(|k| (1..=q).map(|i| BigRational::from_integer(Integer::from(k).pow(i as u32))).collect()).collect();
    let inverse = invert(vandermonde).ok_or_else(|| invalid("Vandermonde system is singular"))?;
    let mut out = Vec::with_capacity(q);
    for row in &inverse {
        let denominator = row.iter().fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
        let weights: Vec<i128> = row
            .iter()
            .map(|c| (c * BigRational::from_integer(denominator.clone())).to_integer().to_i128().ok_or_else(overflow))
            .collect::<Result<_>>()?;
        let mut numerators = vec![0i128; g.len()];
        for (w, p) in weights.iter().zip(&psi) {
            for (slot, &x) in numerators.iter_mut().zip(&p.numerators) {
                *slot = w.checked_mul(x).and_then(|v| slot.checked_add(v)).ok_or_else(overflow)?;
            }
        }
        let denominator = denominator.to_i128().ok_or_else(overflow)?;
        out.push(SymElement { numerators, denominator }.reduced());
    }
    Ok(out)
}

/// Whether `es` are pairwise orthogonal idempotents summing to the identity.
pub fn is_complete_orthogonal_family(g: &SymmetricGroup, es: &[SymElement]) -> Result<bool> {
    let mut total = SymElement::zero(g);
    for (i, ei) in es.iter().enumerate() {
        total = total.add(ei)?;
        for (j, ej) in es.iter().enumerate() {
            let product = ei.mul(g, ej)?;
            if (i == j && product != *ei) || (i != j && !product.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(total == SymElement::identity(g))
}

/// Gauss–Jordan inverse of a square rational matrix.
fn invert(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        inv.swap(c, p);
        let pivot = m[c][c].clone();
        for j in 0..n {
            m[c][j] = &m[c][j] / &pivot;
            inv[c][j] = &inv[c][j] / &pivot;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..n {
                    let (a, b) = (&f * &m[c][j], &f * &inv[c][j]);
                    m[r][j] -= a;
                    inv[r][j] -= b;
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(q: usize) -> SymmetricGroup {
        SymmetricGroup::new(q, &Budget::default()).unwrap()
    }

    #[test]
    fn group_structure() {
        let g = group(4);
        assert_eq!(g.len(), 24);
        for a in 0..g.len() {
            assert_eq!(g.rank(g.perm(a)), a);
            assert_eq!(g.compose(0, a), a);
            assert_eq!(g.compose(a, 0), a);
            for b in 0..g.len() {
                assert_eq!(g.sign(g.compose(a, b)), g.sign(a) * g.sign(b));
            }
        }
        assert!(SymmetricGroup::new(8, &Budget::default()).is_err());
    }

    #[test]
    fn shuffle_operators_count_words() {
        // ψ^k has k^q signed terms; without signs the coefficients would sum to k^q
        for q in 1..=5 {
            let g = group(q);
            for k in 1..=4 {
                let terms: i128 = adams_element(&g, k).numerators.iter().enumerate().map(|(a, &x)| x * i128::from(g.sign(a))).sum();
                assert_eq!(terms, (k as i128).pow(q as u32));
            }
        }
        let g = group(2);
        // 2 · id from the blocks (2,0), (0,2), plus id − swap from (1,1)
        assert_eq!(adams_element(&g, 2).numerators, [3, -1]);
    }

    #[test]
    fn idempotents_in_low_degree() {
        let g = group(1);
        assert_eq!(eulerian_idempotents_in(&g).unwrap(), [SymElement::identity(&g)]);
        let g = group(2);
        let e = eulerian_idempotents_in(&g).unwrap();
        assert_eq!(e[0], SymElement { numerators: vec![1, 1], denominator: 2 });
        assert_eq!(e[1], SymElement { numerators: vec![1, -1], denominator: 2 });
    }

    #[test]
    fn adams_operations_compose_multiplicatively() {
        for q in 1..=5 {
            let g = group(q);
            for (r, s) in [(2, 3), (2, 2), (3, 1)] {
                let lhs = adams_element(&g, r).mul(&g, &adams_element(&g, s)).unwrap();
                assert_eq!(lhs, adams_element(&g, r * s), "q = {q}, r = {r}, s = {s}");
            }
        }
    }
}
