//! Homology over `Z`, `Q` and `F_p`, with explicit integral bases.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::complex::{ChainComplex, ChainMap};
use super::matrix::{Integer, SparseMatrix, SparseVec};
use super::snf::{smith_normal_form, Track};
use crate::error::{Error, Result};

/// Ground ring for homology computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
    Prime(u64),
}

impl Coefficients {
    /// `Prime(p)` for a prime `p`, rejecting composites.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(Coefficients::Prime(p))
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// One homology group: its rank and (over `Z`) torsion invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyRecord {
    pub degree: i64,
    pub weight: Option<u32>,
    pub betti: usize,
    /// Invariant factors `> 1` in divisibility order; empty over fields.
    pub torsion: Vec<Integer>,
}

fn check_degree(c: &ChainComplex, n: i64) -> Result<()> {
    if c.rank(n) == 0 && (n < c.lo() || n > c.hi()) {
        return Err(Error::DegreeOutOfRange(n));
    }
    Ok(())
}

/// `H_n(C; k)`.
pub fn homology(c: &ChainComplex, n: i64, k: Coefficients) -> Result<HomologyRecord> {
    check_degree(c, n)?;
    homology_unchecked(c, n, k)
}

fn homology_unchecked(c: &ChainComplex, n: i64, k: Coefficients) -> Result<HomologyRecord> {
    if let (Some(p), false) = (c.modulus(), matches!(k, Coefficients::Prime(_))) {
        return Err(Error::Invalid(format!("complex is only defined over F{p}")));
    }
    let dn = c.differential(n);
    let dn1 = c.differential(n + 1);
    match k {
        Coefficients::Integers => {
            let out = smith_normal_form(&dn, Track::NONE).rank();
            let inc = smith_normal_form(&dn1, Track::NONE);
            Ok(HomologyRecord { degree: n, weight: None, betti: c.rank(n) - out - inc.rank(), torsion: inc.torsion() })
        }
        Coefficients::Rationals => {
            let out = smith_normal_form(&dn, Track::NONE).rank();
            let inc = smith_normal_form(&dn1, Track::NONE).rank();
            Ok(HomologyRecord { degree: n, weight: None, betti: c.rank(n) - out - inc, torsion: Vec::new() })
        }
        Coefficients::Prime(p) => {
            let betti = c.rank(n) - rank_mod_p(&dn, p) - rank_mod_p(&dn1, p);
            Ok(HomologyRecord { degree: n, weight: None, betti, torsion: Vec::new() })
        }
    }
}

/// Homology records for every degree of `C` (split into weight blocks when weighted).
pub fn homology_all(c: &ChainComplex, k: Coefficients) -> Result<Vec<HomologyRecord>> {
    let mut out = Vec::new();
    if c.is_weighted() {
        for w in c.weight_support() {
            let (block, _) = c.weight_block(w);
            for n in c.lo()..=c.hi() {
                let mut r = homology_unchecked(&block, n, k)?;
                r.weight = Some(w);
                out.push(r);
            }
        }
    } else {
        for n in c.lo()..=c.hi() {
            out.push(homology_unchecked(c, n, k)?);
        }
    }
    Ok(out)
}

/// Betti numbers `H_lo..=H_hi`, zero outside the stored range.
pub fn betti_numbers(c: &ChainComplex, lo: i64, hi: i64, k: Coefficients) -> Result<Vec<usize>> {
    (lo..=hi).map(|n| homology_unchecked(c, n, k).map(|r| r.betti)).collect()
}

/// Rank of an integer matrix reduced modulo the prime `p`.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let modp = |v: &Integer| -> u64 {
        let r = v.mod_floor(&Integer::from(p));
        u64::try_from(r).expect("residue fits")
    };
    let mut rows: Vec<alloc::collections::BTreeMap<usize, u64>> =
        m.rows().iter().map(|r| r.iter().map(|(j, v)| (*j, modp(v))).filter(|(_, v)| *v != 0).collect()).collect();
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        let (mut r, mut e, mut b) = (1u64, p - 2, a);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    let mut pivot_of_col: alloc::collections::BTreeMap<usize, usize> = alloc::collections::BTreeMap::new();
    for i in 0..rows.len() {
        while let Some((&j, &v)) = rows[i].iter().next() {
            match pivot_of_col.get(&j) {
                Some(&pr) => {
                    let f = mulmod(v, inv(rows[pr][&j]));
                    let src: Vec<(usize, u64)> = rows[pr].iter().map(|(c, x)| (*c, *x)).collect();
                    for (c, x) in src {
                        let e = rows[i].entry(c).or_insert(0);
                        *e = (*e + p - mulmod(f, x)) % p;
                        if *e == 0 {
                            rows[i].remove(&c);
                        }
                    }
                }
                None => {
                    pivot_of_col.insert(j, i);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// An integral basis of `H_n(C; Z)` fixed by the Smith forms of the two
/// adjacent differentials, with a coordinate map for cycles.
///
/// The kernel basis is the tail of the right certificate of `d_n` (input
/// column order decides it), and the homology basis is read off the left
/// certificate of the boundaries expressed in kernel coordinates.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    pub degree: i64,
    pub betti: usize,
    pub torsion: Vec<Integer>,
    /// Free generators as cycles of `C_n`.
    pub generators: Vec<SparseVec>,
    /// Torsion generators, paired with `torsion`.
    pub torsion_generators: Vec<SparseVec>,
    rank_out: usize,
    kernel_dim: usize,
    vinv: SparseMatrix,
    reduce: SparseMatrix,
    boundary_rank: usize,
    factors: Vec<Integer>,
}

impl HomologyBasis {
    pub fn new(c: &ChainComplex, n: i64) -> Result<Self> {
        if c.modulus().is_some() {
            return Err(Error::Invalid("integral homology bases need an integral complex".into()));
        }
        let dn = c.differential(n);
        let dn1 = c.differential(n + 1);
        let s = smith_normal_form(&dn, Track::RIGHT);
        let (v, vinv) = s.right.expect("tracked");
        let r = s.diagonal.len();
        let cn = c.rank(n);
        let kernel_dim = cn - r;
        let kernel_idx: Vec<usize> = (r..cn).collect();
        let kernel = v.select_cols(&kernel_idx);
        let m = vinv.mul(&dn1).select_rows(&kernel_idx);
        let t = smith_normal_form(&m, Track::LEFT);
        let (p, pinv) = t.left.expect("tracked");
        let rb = t.diagonal.len();
        let gens_in_kernel = kernel.mul(&pinv);
        let generators: Vec<SparseVec> = (rb..kernel_dim).map(|j| gens_in_kernel.column(j)).collect();
        let torsion_idx: Vec<usize> = (0..rb).filter(|&j| !t.diagonal[j].is_one()).collect();
        let torsion_generators = torsion_idx.iter().map(|&j| gens_in_kernel.column(j)).collect();
        let torsion = torsion_idx.iter().map(|&j| t.diagonal[j].clone()).collect();
        Ok(HomologyBasis {
            degree: n,
            betti: kernel_dim - rb,
            torsion,
            generators,
            torsion_generators,
            rank_out: r,
            kernel_dim,
            vinv,
            reduce: p,
            boundary_rank: rb,
            factors: t.diagonal,
        })
    }

    fn kernel_coordinates(&self, z: &SparseVec) -> Result<SparseVec> {
        let full = self.vinv.mul_vec(z);
        if full.iter().any(|(i, _)| *i < self.rank_out) {
            return Err(Error::Invalid(format!("vector is not a cycle in degree {}", self.degree)));
        }
        Ok(full.into_iter().map(|(i, v)| (i - self.rank_out, v)).collect())
    }

    /// Coordinates of the class of the cycle `z` on the free generators.
    pub fn coordinates(&self, z: &SparseVec) -> Result<Vec<Integer>> {
        let c = self.kernel_coordinates(z)?;
        let y = self.reduce.mul_vec(&c);
        let mut out = alloc::vec![Integer::zero(); self.betti];
        for (i, v) in y {
            if i >= self.boundary_rank {
                out[i - self.boundary_rank] = v;
            }
        }
        Ok(out)
    }

    /// Whether the cycle `z` is a boundary.
    pub fn is_boundary(&self, z: &SparseVec) -> Result<bool> {
        let c = self.kernel_coordinates(z)?;
        let y = self.reduce.mul_vec(&c);
        Ok(y.iter().all(|(i, v)| *i < self.boundary_rank && v.is_multiple_of(&self.factors[*i])))
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }
}

/// The matrix of `H_n(f)` on free parts, in the bases of [`HomologyBasis`].
pub fn induced_map(f: &ChainMap, n: i64) -> Result<SparseMatrix> {
    let src = HomologyBasis::new(f.source(), n)?;
    let tgt = HomologyBasis::new(f.target(), n)?;
    induced_map_with(f, n, &src, &tgt)
}

/// [`induced_map`] with precomputed bases.
pub fn induced_map_with(f: &ChainMap, n: i64, src: &HomologyBasis, tgt: &HomologyBasis) -> Result<SparseMatrix> {
    let fm = f.component(n);
    let mut trip = Vec::new();
    for (j, z) in src.generators.iter().enumerate() {
        let coords = tgt.coordinates(&fm.mul_vec(z))?;
        for (i, v) in coords.into_iter().enumerate() {
            if !v.is_zero() {
                trip.push((i, j, v));
            }
        }
    }
    Ok(SparseMatrix::from_triplets(tgt.betti, src.betti, trip))
}

/// `|det|` of a square matrix is one, i.e. it is invertible over `Z`.
pub fn is_unimodular(m: &SparseMatrix) -> bool {
    m.nrows() == m.ncols() && {
        let s = smith_normal_form(m, Track::NONE);
        s.rank() == m.nrows() && s.diagonal.iter().all(|d| d.abs().is_one())
    }
}
