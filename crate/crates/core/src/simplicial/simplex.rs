//! Simplices in Eilenberg–Zilber form and monotone maps between ordinals.

use alloc::vec::Vec;
use core::fmt;

/// A simplex `σ^* g`: a nondegenerate generator `g` of dimension `p` pulled
/// back along a monotone surjection `σ: [q] → [p]`.
///
/// The pair is the unique Eilenberg–Zilber decomposition, so equality of
/// `SimplexRef`s is equality of simplices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    /// Values `σ(0), …, σ(q)`; nondecreasing, starting at 0, steps of 0 or 1.
    pub surj: Vec<u8>,
    pub gen: usize,
}

impl SimplexRef {
    /// The generator itself, as a nondegenerate simplex of dimension `dim`.
    pub fn generator(dim: usize, gen: usize) -> Self {
        SimplexRef { surj: (0..=dim as u8).collect(), gen }
    }

    pub fn dim(&self) -> usize {
        self.surj.len() - 1
    }

    pub fn gen_dim(&self) -> usize {
        *self.surj.last().unwrap() as usize
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.dim() == self.gen_dim()
    }

    /// Indices `j` with `σ(j) = σ(j+1)`, i.e. the simplex is in the image of `s_j`.
    pub fn degeneracy_directions(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.surj[j] == self.surj[j + 1]).collect()
    }

    /// The canonical degeneracy word `s_{j_1} ⋯ s_{j_k}` with `j_1 > ⋯ > j_k`.
    ///
    /// Applying `s_{j_k}` first, the indices in dimension order are exactly the
    /// degeneracy directions.
    pub fn degeneracy_word(&self) -> Vec<usize> {
        let mut w = self.degeneracy_directions();
        w.reverse();
        w
    }

    /// Rebuilds a simplex from its canonical degeneracy word.
    pub fn from_word(gen_dim: usize, gen: usize, word: &[usize]) -> Option<Self> {
        if word.windows(2).any(|w| w[0] <= w[1]) {
            return None;
        }
        let q = gen_dim + word.len();
        let dirs: Vec<usize> = word.iter().rev().copied().collect();
        if dirs.iter().any(|&j| j >= q) {
            return None;
        }
        let mut surj = Vec::with_capacity(q + 1);
        let mut v = 0u8;
        surj.push(0);
        for i in 0..q {
            if !dirs.contains(&i) {
                v += 1;
            }
            surj.push(v);
        }
        (v as usize == gen_dim).then_some(SimplexRef { surj, gen })
    }
}

impl fmt::Debug for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, j) in self.degeneracy_word().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "|g{}@{})", self.gen, self.gen_dim())
    }
}

/// Whether `v` is a monotone surjection `[v.len()-1] → [v.last()]`.
pub fn is_surjection(v: &[u8]) -> bool {
    !v.is_empty() && v[0] == 0 && v.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
}

/// All monotone surjections `[q] → [p]`, lexicographically.
pub fn surjections(q: usize, p: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if p > q {
        return out;
    }
    // choose the p jump positions among 1..=q
    let mut jumps: Vec<usize> = (1..=p).collect();
    loop {
        let mut s = Vec::with_capacity(q + 1);
        let mut v = 0u8;
        let mut k = 0;
        for i in 0..=q {
            if k < jumps.len() && jumps[k] == i {
                v += 1;
                k += 1;
            }
            s.push(v);
        }
        out.push(s);
        // next combination
        let mut i = p;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if jumps[i] < q - (p - 1 - i) {
                jumps[i] += 1;
                for j in i + 1..p {
                    jumps[j] = jumps[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All monotone maps `[a] → [b]`.
pub fn monotone_maps(a: usize, b: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(a + 1);
    fn rec(a: usize, b: u8, lo: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == a + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=b {
            cur.push(v);
            rec(a, b, v, cur, out);
            cur.pop();
        }
    }
    rec(a, b as u8, 0, &mut cur, &mut out);
    out
}

/// The coface `δ_i: [q-1] → [q]` skipping `i`.
pub fn coface(q: usize, i: usize) -> Vec<u8> {
    (0..q).map(|k| if k < i { k as u8 } else { k as u8 + 1 }).collect()
}

/// The codegeneracy `σ_j: [q+1] → [q]` hitting `j` twice.
pub fn codegeneracy(q: usize, j: usize) -> Vec<u8> {
    (0..=q + 1).map(|k| if k <= j { k as u8 } else { k as u8 - 1 }).collect()
}

/// `f ∘ g` for maps given by value lists (`g` first).
pub fn compose(f: &[u8], g: &[u8]) -> Vec<u8> {
    g.iter().map(|&x| f[x as usize]).collect()
}

/// Epi–mono factorization of a monotone map: `(ρ, image)` with `φ = ι_image ∘ ρ`.
pub fn epi_mono(phi: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let mut image: Vec<u8> = Vec::new();
    let mut rho = Vec::with_capacity(phi.len());
    for &v in phi {
        if image.last() != Some(&v) {
            image.push(v);
        }
        rho.push((image.len() - 1) as u8);
    }
    (rho, image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn surjection_counts() {
        for q in 0..7 {
            for p in 0..=q {
                let s = surjections(q, p);
                assert_eq!(s.len(), binom(q, p));
                assert!(s.iter().all(|v| is_surjection(v) && *v.last().unwrap() as usize == p));
            }
        }
        // monotone maps [a] → [b] number C(a+b+1, a+1)
        assert_eq!(monotone_maps(3, 1).len(), 5);
        assert_eq!(monotone_maps(2, 2).len(), 10);
    }

    #[test]
    fn words_round_trip() {
        for q in 0..6 {
            for p in 0..=q {
                for s in surjections(q, p) {
                    let x = SimplexRef { surj: s, gen: 3 };
                    let w = x.degeneracy_word();
                    assert_eq!(SimplexRef::from_word(p, 3, &w), Some(x));
                }
            }
        }
    }
}
