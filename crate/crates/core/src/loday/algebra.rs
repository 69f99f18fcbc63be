//! Augmented commutative algebras with a weight-homogeneous basis, and modules over them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::chainalg::{Coefficients, Integer, SparseMatrix};
use crate::error::{invalid, Result};

/// A linear combination of basis elements: sorted `(index, coefficient)` pairs, no zeros.
pub type Combination = Vec<(usize, Integer)>;

fn normalize(mut terms: Vec<(usize, Integer)>) -> Combination {
    terms.sort_by_key(|t| t.0);
    let mut out: Combination = Vec::with_capacity(terms.len());
    for (i, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|t| !t.1.is_zero());
    out
}

/// A commutative algebra over `k` with basis element 0 the unit (the only one of weight 0),
/// integral structure constants, and augmentation killing every positive weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugAlgebra {
    pub coefficients: Coefficients,
    pub names: Vec<String>,
    pub weights: Vec<u32>,
    /// `products[a][b]`: the expansion of `e_a · e_b`.
    products: Vec<Vec<Combination>>,
}

impl AugAlgebra {
    /// Validates unit, weights, commutativity and associativity on all basis pairs and triples.
    /// Missing products are zero.
    pub fn new(
        coefficients: Coefficients,
        names: Vec<String>,
        weights: Vec<u32>,
        table: &BTreeMap<(usize, usize), Vec<(usize, Integer)>>,
    ) -> Result<Self> {
        let n = weights.len();
        if n == 0 || names.len() != n {
            return Err(invalid("an algebra needs a named basis starting with the unit"));
        }
        if weights[0] != 0 || weights[1..].contains(&0) {
            return Err(invalid("the unit must be the only basis element of weight 0"));
        }
        let mut products = vec![vec![Combination::new(); n]; n];
        for (a, row) in products.iter_mut().enumerate() {
            row[0] = vec![(a, Integer::one())];
        }
        for b in 0..n {
            products[0][b] = vec![(b, Integer::one())];
        }
        for (&(a, b), terms) in table {
            if a >= n || b >= n || terms.iter().any(|t| t.0 >= n) {
                return Err(invalid(format!("product {a}·{b} refers to a missing basis element")));
            }
            let value = normalize(terms.clone());
            if (a == 0 || b == 0) && value != products[a][b] {
                return Err(invalid(format!("the unit does not act as the identity on {}", names[a.max(b)])));
            }
            if value.iter().any(|t| weights[t.0] != weights[a] + weights[b]) {
                return Err(invalid(format!("product {}·{} is not homogeneous of weight {}", names[a], names[b], weights[a] + weights[b])));
            }
            products[a][b] = value;
        }
        let alg = AugAlgebra { coefficients, names, weights, products };
        for a in 0..n {
            for b in 0..n {
                if alg.products[a][b] != alg.products[b][a] {
                    return Err(invalid(format!("{}·{} ≠ {}·{}", alg.names[a], alg.names[b], alg.names[b], alg.names[a])));
                }
                for c in 0..n {
                    let left = alg.mul_combination(&alg.products[a][b], &[(c, Integer::one())]);
                    let right = alg.mul_combination(&[(a, Integer::one())], &alg.products[b][c]);
                    if left != right {
                        return Err(invalid(format!("product is not associative on {}, {}, {}", alg.names[a], alg.names[b], alg.names[c])));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// `k` itself.
    pub fn ground(coefficients: Coefficients) -> Self {
        AugAlgebra { coefficients, names: vec!["1".to_string()], weights: vec![0], products: vec![vec![vec![(0, Integer::one())]]] }
    }

    /// `k[x_1, …, x_vars]` modulo monomials of total degree above `max_weight`, each variable of weight 1.
    /// In weights up to `max_weight` every Loday complex agrees with that of the polynomial ring.
    pub fn polynomial(coefficients: Coefficients, vars: usize, max_weight: u32) -> Result<Self> {
        Self::monomial_quotient(coefficients, vars, max_weight, |_| true)
    }

    /// The quotient of `k[x_1, …, x_vars]` by every monomial rejected by `keep` or of total degree
    /// above `max_weight`. The kept monomials must be closed under division, so that the rest span an ideal.
    pub fn monomial_quotient(coefficients: Coefficients, vars: usize, max_weight: u32, keep: impl Fn(&[u32]) -> bool) -> Result<Self> {
        let mut monomials: Vec<Vec<u32>> = Vec::new();
        for w in 0..=max_weight {
            let mut layer = Vec::new();
            exponent_vectors(vars, w, &mut Vec::new(), &mut layer);
            layer.retain(|m| keep(m));
            layer.sort_unstable_by(|a, b| b.cmp(a));
            monomials.extend(layer);
        }
        let index: BTreeMap<Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut table = BTreeMap::new();
        for (a, ma) in monomials.iter().enumerate() {
            for (b, mb) in monomials.iter().enumerate() {
                let prod: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                if let Some(&c) = index.get(&prod) {
                    table.insert((a, b), vec![(c, Integer::one())]);
                }
            }
        }
        let names = monomials.iter().map(|m| monomial_name(m)).collect();
        let weights = monomials.iter().map(|m| m.iter().sum()).collect();
        AugAlgebra::new(coefficients, names, weights, &table)
    }

    /// `k[x]/(x^n)` with `x` of weight 1.
    pub fn truncated_polynomial(coefficients: Coefficients, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(invalid("k[x]/(x^0) is the zero ring, which has no augmentation"));
        }
        let mut table = BTreeMap::new();
        for a in 0..n as usize {
            for b in 0..n as usize {
                if a + b < n as usize {
                    table.insert((a, b), vec![(a + b, Integer::one())]);
                }
            }
        }
        let names = (0..n).map(|e| monomial_name(&[e])).collect();
        AugAlgebra::new(coefficients, names, (0..n).collect(), &table)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn product(&self, a: usize, b: usize) -> &Combination {
        &self.products[a][b]
    }

    pub fn mul_combination(&self, x: &[(usize, Integer)], y: &[(usize, Integer)]) -> Combination {
        let mut terms = Vec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (c, cc) in &self.products[*a][*b] {
                    terms.push((*c, ca * cb * cc));
                }
            }
        }
        normalize(terms)
    }

    /// The product of basis elements in order, the unit for an empty list.
    pub fn multiply_all(&self, factors: impl IntoIterator<Item = usize>) -> Combination {
        let mut acc: Combination = vec![(0, Integer::one())];
        for f in factors {
            if f != 0 {
                acc = self.mul_combination(&acc, &[(f, Integer::one())]);
            }
        }
        acc
    }

    /// `R^{⊗S} → R^{⊗T}` along `f: S → T` (`f[s] ∈ 0..targets`): factors in each fiber are
    /// multiplied, empty fibers get the unit. Basis tensors are indexed in mixed radix with
    /// the first factor least significant.
    pub fn along_map(&self, f: &[usize], targets: usize) -> SparseMatrix {
        let n = self.dim();
        let cols = n.pow(f.len() as u32);
        let mut trip = Vec::new();
        let mut t = vec![0; f.len()];
        for col in 0..cols {
            let mut code = col;
            for slot in t.iter_mut() {
                *slot = code % n;
                code /= n;
            }
            for (image, c) in self.tensor_along(f, targets, &t) {
                let row = image.iter().rev().fold(0, |acc, &x| acc * n + x);
                trip.push((row, col, c));
            }
        }
        SparseMatrix::from_triplets(n.pow(targets as u32), cols, trip)
    }

    /// The image of one basis tensor under [`AugAlgebra::along_map`], as `(tensor, coefficient)` terms.
    pub fn tensor_along(&self, f: &[usize], targets: usize, tensor: &[usize]) -> Vec<(Vec<usize>, Integer)> {
        let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); targets];
        for (s, &t) in f.iter().enumerate() {
            fibers[t].push(tensor[s]);
        }
        let parts: Vec<Combination> = fibers.into_iter().map(|fib| self.multiply_all(fib)).collect();
        expand_tensor(&parts)
    }
}

/// Small augmented algebras used across the test and acceptance suites, by name.
pub fn algebra_corpus(coefficients: Coefficients) -> Vec<(&'static str, AugAlgebra)> {
    let build = |vars: usize, max_weight: u32, keep: fn(&[u32]) -> bool| {
        AugAlgebra::monomial_quotient(coefficients, vars, max_weight, keep).expect("corpus algebras are valid")
    };
    vec![
        ("k", AugAlgebra::ground(coefficients)),
        ("k[x]", build(1, 4, |_| true)),
        ("k[x]/x^2", build(1, 4, |m| m[0] < 2)),
        ("k[x]/x^3", build(1, 4, |m| m[0] < 3)),
        ("k[x,y]", build(2, 3, |_| true)),
        ("k[x,y]/(x^2,y^2)", build(2, 3, |m| m[0] < 2 && m[1] < 2)),
        ("k[x,y]/(xy)", build(2, 3, |m| m[0] == 0 || m[1] == 0)),
        ("k[x,y]/(x,y)^2", build(2, 3, |m| m[0] + m[1] < 2)),
    ]
}

/// All ways to pick one term from each combination, with the product of the coefficients.
pub fn expand_tensor(parts: &[Combination]) -> Vec<(Vec<usize>, Integer)> {
    let mut out: Vec<(Vec<usize>, Integer)> = vec![(Vec::with_capacity(parts.len()), Integer::one())];
    for part in parts {
        if part.is_empty() {
            return Vec::new();
        }
        if part.len() == 1 {
            for (t, c) in out.iter_mut() {
                t.push(part[0].0);
                *c *= &part[0].1;
            }
            continue;
        }
        out = out
            .into_iter()
            .flat_map(|(t, c)| {
                part.iter().map(move |(i, ci)| {
                    let mut t = t.clone();
                    t.push(*i);
                    (t, &c * ci)
                })
            })
            .collect();
    }
    out
}

fn exponent_vectors(vars: usize, total: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() + 1 == vars {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    if vars == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=total).rev() {
        cur.push(e);
        exponent_vectors(vars, total - e, cur, out);
        cur.pop();
    }
}

fn monomial_name(exponents: &[u32]) -> String {
    const VARS: [&str; 4] = ["x", "y", "z", "w"];
    let mut s = String::new();
    for (i, &e) in exponents.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let var = if exponents.len() <= VARS.len() { VARS[i].to_string() } else { format!("x{}", i + 1) };
        s.push_str(&var);
        if e > 1 {
            s.push_str(&format!("^{e}"));
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// A module over an [`AugAlgebra`] with a weight-homogeneous basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgModule {
    pub names: Vec<String>,
    pub weights: Vec<u32>,
    /// `actions[a][m]`: the expansion of `e_a · m_m`.
    actions: Vec<Vec<Combination>>,
}

impl AlgModule {
    /// Validates that the unit acts as the identity, that the action is associative and weight-additive.
    /// Missing entries act by zero.
    pub fn new(algebra: &AugAlgebra, names: Vec<String>, weights: Vec<u32>, table: &BTreeMap<(usize, usize), Vec<(usize, Integer)>>) -> Result<Self> {
        let n = weights.len();
        if names.len() != n {
            return Err(invalid("module basis names and weights differ in length"));
        }
        let mut actions = vec![vec![Combination::new(); n]; algebra.dim()];
        for m in 0..n {
            actions[0][m] = vec![(m, Integer::one())];
        }
        for (&(a, m), terms) in table {
            if a >= algebra.dim() || m >= n || terms.iter().any(|t| t.0 >= n) {
                return Err(invalid(format!("action {a}·{m} refers to a missing basis element")));
            }
            let value = normalize(terms.clone());
            if a == 0 && value != actions[0][m] {
                return Err(invalid("the unit must act as the identity"));
            }
            if value.iter().any(|t| weights[t.0] != algebra.weights[a] + weights[m]) {
                return Err(invalid(format!("action {a}·{m} is not weight-homogeneous")));
            }
            actions[a][m] = value;
        }
        let module = AlgModule { names, weights, actions };
        for a in 0..algebra.dim() {
            for b in 0..algebra.dim() {
                for m in 0..n {
                    let left = module.act_combination(algebra.product(a, b), &[(m, Integer::one())]);
                    let inner = module.act_combination(&[(b, Integer::one())], &[(m, Integer::one())]);
                    let right = module.act_combination(&[(a, Integer::one())], &inner);
                    if left != right {
                        return Err(invalid(format!("action is not associative on {a}, {b}, {m}")));
                    }
                }
            }
        }
        Ok(module)
    }

    /// `R` as a module over itself.
    pub fn free(algebra: &AugAlgebra) -> Self {
        AlgModule { names: algebra.names.clone(), weights: algebra.weights.clone(), actions: algebra.products.clone() }
    }

    /// `k` through the augmentation: the unit acts as 1 and every positive weight as 0.
    pub fn augmentation(algebra: &AugAlgebra) -> Self {
        let mut actions = vec![vec![Combination::new()]; algebra.dim()];
        actions[0][0] = vec![(0, Integer::one())];
        AlgModule { names: vec!["1".to_string()], weights: vec![0], actions }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn act_combination(&self, x: &[(usize, Integer)], m: &[(usize, Integer)]) -> Combination {
        let mut terms = Vec::new();
        for (a, ca) in x {
            for (b, cb) in m {
                for (c, cc) in &self.actions[*a][*b] {
                    terms.push((*c, ca * cb * cc));
                }
            }
        }
        normalize(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_basis_and_products() {
        let r = AugAlgebra::polynomial(Coefficients::Rationals, 2, 2).unwrap();
        assert_eq!(r.names, ["1", "x", "y", "x^2", "xy", "y^2"]);
        assert_eq!(r.product(1, 2), &vec![(4, Integer::one())]);
        // x · x^2 has weight 3 and is truncated away
        assert!(r.product(1, 3).is_empty());
    }

    #[test]
    fn corpus_dimensions() {
        let dims: Vec<usize> = algebra_corpus(Coefficients::Rationals).iter().map(|(_, r)| r.dim()).collect();
        assert_eq!(dims, [1, 5, 2, 3, 10, 4, 7, 3]);
    }

    #[test]
    fn along_maps() {
        let dual = AugAlgebra::truncated_polynomial(Coefficients::Rationals, 2).unwrap();
        assert_eq!(dual.along_map(&[0, 1], 2), SparseMatrix::identity(4));
        // fold: 1⊗1 ↦ 1, x⊗1 ↦ x, 1⊗x ↦ x, x⊗x ↦ x² = 0
        let fold = dual.along_map(&[0, 0], 1);
        assert_eq!(fold, SparseMatrix::from_dense(&[vec![1, 0, 0, 0], vec![0, 1, 1, 0]]));
        // empty source: the unit inclusion
        assert_eq!(dual.along_map(&[], 1), SparseMatrix::from_dense(&[vec![1], vec![0]]));
    }

    #[test]
    fn rejects_bad_tables() {
        let mut table = BTreeMap::new();
        table.insert((1, 1), vec![(1, Integer::one())]);
        let names = vec!["1".to_string(), "x".to_string()];
        assert!(AugAlgebra::new(Coefficients::Integers, names.clone(), vec![0, 1], &table).is_err());
        table.clear();
        table.insert((1, 2), vec![(2, Integer::one())]);
        let names3 = vec!["1".to_string(), "x".to_string(), "y".to_string()];
        assert!(AugAlgebra::new(Coefficients::Integers, names3, vec![0, 1, 2], &table).is_err());
        assert!(AugAlgebra::new(Coefficients::Integers, names, vec![0, 0], &BTreeMap::new()).is_err());
    }

    #[test]
    fn modules() {
        let r = AugAlgebra::truncated_polynomial(Coefficients::Integers, 3).unwrap();
        let mut table = BTreeMap::new();
        table.insert((1, 0), vec![(0, Integer::one())]);
        assert!(AlgModule::new(&r, vec!["m".to_string()], vec![0], &table).is_err());
        let free = AlgModule::free(&r);
        assert_eq!(free.act_combination(&[(1, Integer::one())], &[(1, Integer::one())]), vec![(2, Integer::one())]);
        let k = AlgModule::augmentation(&r);
        assert!(k.act_combination(&[(1, Integer::one())], &[(0, Integer::one())]).is_empty());
    }
}
