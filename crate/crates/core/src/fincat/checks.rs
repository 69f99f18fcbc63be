//! Exhaustive checks of the end, coend and Kan extension identities on single instances.

use alloc::vec::Vec;

use super::category::{CatFunctor, FinCat, TwistedArrow};
use super::ends::{coend_bifunctor, colimit, for_each_end, for_each_nat, left_kan};
use super::functor::{encode, ModuleBifunctor, ModuleFunctor, SetBifunctor, SetFunctor};
use crate::chainalg::Coefficients;
use crate::error::Result;

/// `Nat(F, G) → ∫_c Set(F c, G c)` is a bijection.
///
/// The comparison map is the one of `nat_to_end`, applied without allocating.
pub fn end_matches_nat(c: &FinCat, f: &SetFunctor, g: &SetFunctor) -> Result<bool> {
    let t = SetBifunctor::hom(c, f, g);
    // an end element packed into one integer, mixed radix over `|T(a, a)|`
    let pack = |x: &[usize]| x.iter().enumerate().rev().fold(0u128, |acc, (a, &xa)| acc * t.sizes[a][a] as u128 + xa as u128);
    let mut image = Vec::new();
    for_each_nat(c, f, g, &mut |eta| {
        let x = eta.iter().enumerate().rev().fold(0u128, |acc, (a, e)| acc * t.sizes[a][a] as u128 + encode(e, g.sizes[a]) as u128);
        image.push(x)
    })?;
    let mut end = Vec::new();
    for_each_end(c, &t, &mut |x| end.push(pack(x)));
    end.sort_unstable();
    image.sort_unstable();
    Ok(image.windows(2).all(|w| w[0] != w[1]) && image == end)
}

/// `∫^I i*F ⊗ G ≅ ∫^J F ⊗ i_! G` for `i: I → J`, `F` on `J^op`, `G` on `I`.
pub fn kan_coend_matches(i: &CatFunctor, source: &FinCat, target: &FinCat, f: &ModuleFunctor, g: &ModuleFunctor, k: Coefficients) -> bool {
    let restricted = f.pullback(i);
    let lhs = coend_bifunctor(source, &ModuleBifunctor::tensor(source, &restricted, g), k);
    let rhs = left_kan(i, source, target, g).coend_with(target, f, k);
    lhs == rhs
}

/// `∫^I 𝟙 ⊗ F ≅ colim F`.
pub fn unit_coend_matches_colimit(c: &FinCat, f: &ModuleFunctor, k: Coefficients) -> bool {
    let unit = ModuleFunctor::unit(&c.opposite());
    coend_bifunctor(c, &ModuleBifunctor::tensor(c, &unit, f), k) == colimit(c, f, k)
}

/// The projection `Tw(C) → C` sending `f: a → b` to `b` and `(u, v)` to `v`.
pub fn target_projection(c: &FinCat, tw: &TwistedArrow) -> CatFunctor {
    CatFunctor { on_objects: (0..c.len()).map(|f| c.target(f)).collect(), on_arrows: tw.pairs.iter().map(|&(_, v)| v).collect() }
}

/// The projection `Tw(C) → C^op` sending `f: a → b` to `a` and `(u, v)` to `u`.
pub fn source_projection(c: &FinCat, tw: &TwistedArrow) -> CatFunctor {
    CatFunctor { on_objects: (0..c.len()).map(|f| c.source(f)).collect(), on_arrows: tw.pairs.iter().map(|&(u, _)| u).collect() }
}

/// `colim_{Tw C} F ∘ p ≅ colim_C F` for a projection `p` onto `c`.
pub fn projection_preserves_colimit(c: &FinCat, tw: &TwistedArrow, p: &CatFunctor, f: &ModuleFunctor, k: Coefficients) -> bool {
    colimit(&tw.category, &f.pullback(p), k) == colimit(c, f, k)
}

/// Which slices of a category corpus a run of the identity checks covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteScope {
    /// `(max arrows, max set size)`: all pairs of set-valued functors up to isomorphism.
    pub end_nat: Vec<(usize, usize)>,
    /// `(max source arrows, max target arrows, max rank)`: every functor `i` between
    /// the categories and every pair `F`, `G` of module-valued functors.
    pub kan: Vec<(usize, usize, usize)>,
    /// `(max arrows, max rank)`: every module-valued functor.
    pub unit_coend: Vec<(usize, usize)>,
    /// Allowed matrix entries of module-valued functors.
    pub entries: Vec<i64>,
}

impl SuiteScope {
    /// A scope that runs in well under a second.
    pub fn small() -> Self {
        SuiteScope { end_nat: alloc::vec![(3, 2)], kan: alloc::vec![(2, 3, 1)], unit_coend: alloc::vec![(3, 2)], entries: alloc::vec![-1, 0, 1] }
    }

    /// The largest scope that fits a one-minute budget on one core.
    pub fn standard() -> Self {
        SuiteScope {
            end_nat: alloc::vec![(6, 2), (5, 3)],
            kan: alloc::vec![(4, 4, 1), (2, 2, 2)],
            unit_coend: alloc::vec![(6, 1), (4, 2)],
            entries: alloc::vec![-1, 0, 1],
        }
    }
}

/// Instances checked and mismatches found for one identity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: usize,
    pub mismatches: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        self.mismatches += usize::from(!ok);
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub end_nat: Tally,
    pub kan: Tally,
    pub unit_coend: Tally,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        [self.end_nat, self.kan, self.unit_coend].iter().all(|t| t.mismatches == 0)
    }
}

/// Runs the three identities over `corpus` within `scope`, over the integers.
pub fn run_suite(corpus: &[FinCat], scope: &SuiteScope) -> SuiteReport {
    let mut report = SuiteReport::default();
    let k = Coefficients::Integers;
    for &(max_arrows, max_size) in &scope.end_nat {
        for c in corpus.iter().filter(|c| c.len() <= max_arrows) {
            let fs = SetFunctor::enumerate_up_to_iso(c, max_size);
            for f in &fs {
                for g in &fs {
                    report.end_nat.record(end_matches_nat(c, f, g).unwrap_or(false));
                }
            }
        }
    }
    for &(max_source, max_target, max_rank) in &scope.kan {
        for a in corpus.iter().filter(|c| c.len() <= max_source) {
            let gs = ModuleFunctor::enumerate(a, max_rank, &scope.entries);
            for b in corpus.iter().filter(|c| c.len() <= max_target) {
                let is = CatFunctor::enumerate(a, b);
                if is.is_empty() {
                    continue;
                }
                let fs = ModuleFunctor::enumerate(&b.opposite(), max_rank, &scope.entries);
                for i in &is {
                    for f in &fs {
                        for g in &gs {
                            report.kan.record(kan_coend_matches(i, a, b, f, g, k));
                        }
                    }
                }
            }
        }
    }
    for &(max_arrows, max_rank) in &scope.unit_coend {
        for c in corpus.iter().filter(|c| c.len() <= max_arrows) {
            ModuleFunctor::for_each(c, max_rank, &scope.entries, &mut |f| report.unit_coend.record(unit_coend_matches_colimit(c, &f, k)));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::corpus::small_categories;

    #[test]
    fn small_suite_passes() {
        let report = run_suite(&small_categories(3, 3), &SuiteScope::small());
        assert!(report.passed(), "{report:?}");
        assert!(report.end_nat.checked > 0 && report.kan.checked > 0 && report.unit_coend.checked > 0);
    }

    #[test]
    fn identities_hold_on_small_instances() {
        for c in small_categories(2, 3) {
            let sets = SetFunctor::enumerate(&c, 2);
            for f in &sets {
                for g in &sets {
                    assert!(end_matches_nat(&c, f, g).unwrap());
                }
            }
            for f in ModuleFunctor::enumerate(&c, 1, &[-1, 0, 2]) {
                assert!(unit_coend_matches_colimit(&c, &f, Coefficients::Integers));
            }
        }
    }

    #[test]
    fn kan_identity_along_inclusion_of_endpoint() {
        let point = FinCat::terminal();
        let arrow = FinCat::ordinal(2);
        for target_object in 0..2 {
            let i = CatFunctor::new(&point, &arrow, alloc::vec![target_object], alloc::vec![arrow.identity(target_object)]).unwrap();
            for f in ModuleFunctor::enumerate(&arrow.opposite(), 2, &[0, 1, 3]) {
                for g in ModuleFunctor::enumerate(&point, 2, &[0, 1]) {
                    assert!(kan_coend_matches(&i, &point, &arrow, &f, &g, Coefficients::Integers));
                }
            }
        }
    }
}
