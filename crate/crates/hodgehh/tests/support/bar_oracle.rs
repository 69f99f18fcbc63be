//! Hochschild homology from the full (unnormalized) cyclic bar complex `A^{⊗(n+1)}`,
//! with dense rational matrices. Shares nothing with the library beyond the structure constants it is given.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// A finite-dimensional commutative algebra: basis element 0 is the unit,
/// `mult[a][b][c]` the coefficient of `e_c` in `e_a e_b`, and a weight per basis element.
#[derive(Debug, Clone)]
pub struct DenseAlgebra {
    pub mult: Vec<Vec<Vec<i64>>>,
    pub weights: Vec<u32>,
}

impl DenseAlgebra {
    /// `k[x_1..x_vars]` modulo monomials outside `keep` or above `max_weight`, built from exponents.
    pub fn monomial(vars: usize, max_weight: u32, keep: impl Fn(&[u32]) -> bool) -> Self {
        let mut basis: Vec<Vec<u32>> = Vec::new();
        let mut exps = vec![0u32; vars];
        loop {
            let total: u32 = exps.iter().sum();
            if total <= max_weight && keep(&exps) {
                basis.push(exps.clone());
            }
            let mut i = 0;
            while i < vars && exps[i] == max_weight {
                exps[i] = 0;
                i += 1;
            }
            if i == vars {
                break;
            }
            exps[i] += 1;
        }
        basis.sort_by_key(|m| m.iter().sum::<u32>());
        let d = basis.len();
        let mut mult = vec![vec![vec![0; d]; d]; d];
        for a in 0..d {
            for b in 0..d {
                let prod: Vec<u32> = basis[a].iter().zip(&basis[b]).map(|(x, y)| x + y).collect();
                if let Some(c) = basis.iter().position(|m| *m == prod) {
                    mult[a][b][c] = 1;
                }
            }
        }
        DenseAlgebra { mult, weights: basis.iter().map(|m| m.iter().sum()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}

/// Basis tensors of `A^{⊗(n+1)}` of a fixed weight, as index lists.
fn tensors(alg: &DenseAlgebra, n: usize, weight: u32) -> Vec<Vec<usize>> {
    let d = alg.dim();
    let mut out = Vec::new();
    for code in 0..d.pow(n as u32 + 1) {
        let t: Vec<usize> = (0..=n).map(|i| code / d.pow(i as u32) % d).collect();
        if t.iter().map(|&e| alg.weights[e]).sum::<u32>() == weight {
            out.push(t);
        }
    }
    out
}

/// The Hochschild boundary `C_n → C_{n-1}` in one weight, as a dense matrix (rows: target).
fn boundary(alg: &DenseAlgebra, n: usize, weight: u32) -> Vec<Vec<BigRational>> {
    let src = tensors(alg, n, weight);
    let tgt = tensors(alg, n - 1, weight);
    let mut m = vec![vec![BigRational::zero(); src.len()]; tgt.len()];
    for (col, t) in src.iter().enumerate() {
        for i in 0..=n {
            let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
            // face i multiplies positions i and i+1; the last face wraps a_n onto a_0
            let (x, y) = if i < n { (t[i], t[i + 1]) } else { (t[n], t[0]) };
            for (c, &coef) in alg.mult[x][y].iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                let image: Vec<usize> = if i < n {
                    t[..i].iter().copied().chain([c]).chain(t[i + 2..].iter().copied()).collect()
                } else {
                    [c].into_iter().chain(t[1..n].iter().copied()).collect()
                };
                let row = tgt.iter().position(|u| *u == image).expect("faces preserve weight");
                m[row][col] += BigRational::from_integer(BigInt::from(sign * coef));
            }
        }
    }
    m
}

fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for j in c..cols {
            m[r][j] = &m[r][j] / &pivot;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim HH_n` in weight `weight` for `n ≤ max_degree`.
pub fn hochschild_betti(alg: &DenseAlgebra, max_degree: usize, weight: u32) -> Vec<usize> {
    let ranks: Vec<usize> = (1..=max_degree + 1).map(|n| rank(boundary(alg, n, weight))).collect();
    (0..=max_degree)
        .map(|n| {
            let chains = tensors(alg, n, weight).len();
            let outgoing = if n == 0 { 0 } else { ranks[n - 1] };
            chains - outgoing - ranks[n]
        })
        .collect()
}

/// `(degree, weight, dim)` for every nonzero `HH_n` with `n ≤ max_degree` and weight `≤ max_weight`.
pub fn hochschild_table(alg: &DenseAlgebra, max_degree: usize, max_weight: u32) -> Vec<(usize, u32, usize)> {
    let mut out = Vec::new();
    for w in 0..=max_weight {
        for (n, b) in hochschild_betti(alg, max_degree, w).into_iter().enumerate() {
            if b > 0 {
                out.push((n, w, b));
            }
        }
    }
    out.sort_unstable();
    out
}
