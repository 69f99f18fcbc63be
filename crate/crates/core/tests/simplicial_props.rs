use hodgehh_core::fincat::{small_categories, FinCat};
use hodgehh_core::simplicial::*;
use proptest::prelude::*;
use std::sync::OnceLock;

fn corpus() -> &'static Vec<(&'static str, SimplicialSet)> {
    static CORPUS: OnceLock<Vec<(&'static str, SimplicialSet)>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let s1 = standard_circle(7);
        let z2 = FinCat::monoid(2, 0, |g, f| g ^ f).unwrap();
        vec![
            ("circle", standard_circle(5)),
            ("sphere2", standard_sphere(2, 5).unwrap()),
            ("sphere3", standard_sphere(3, 5).unwrap()),
            ("simplex3", standard_simplex(3, 5)),
            ("torus", product(&standard_circle(4), &standard_circle(4)).unwrap()),
            ("alpha_3_1", alpha_subcomplex(&standard_circle(4), 3, 1).unwrap().set),
            ("alpha_3_2", alpha_subcomplex(&standard_circle(4), 3, 2).unwrap().set),
            ("circle_x_sphere", product(&standard_circle(4), &standard_sphere(2, 4).unwrap()).unwrap()),
            ("degree_-2", degree_map(-2, 5).unwrap().cycle),
            ("degree_3", degree_map(3, 5).unwrap().cycle),
            ("nerve_z2", Nerve::new(&z2, 5).unwrap().set),
            ("nerve_ordinal", Nerve::new(&FinCat::ordinal(2), 5).unwrap().set),
            ("tw_circle", twisted(&s1, 3).unwrap().set),
            ("tw_simplex", twisted(&standard_simplex(2, 7), 3).unwrap().set),
            ("tw_sphere", twisted(&standard_sphere(2, 7).unwrap(), 3).unwrap().set),
            ("tw_nerve_z2", twisted(&Nerve::new(&z2, 7).unwrap().set, 3).unwrap().set),
        ]
    })
}

/// Nondecreasing maps `[a] → [b]`, by brute force over all functions.
fn monotone_maps(a: usize, b: usize) -> Vec<Vec<u8>> {
    let total = (b + 1).pow(a as u32 + 1);
    (0..total)
        .map(|mut code| {
            (0..=a)
                .map(|_| {
                    let v = (code % (b + 1)) as u8;
                    code /= b + 1;
                    v
                })
                .collect::<Vec<u8>>()
        })
        .filter(|m| m.windows(2).all(|w| w[0] <= w[1]))
        .collect()
}

/// All simplices of each corpus member through dimension 5, listed once.
fn simplices() -> &'static Vec<Vec<Vec<SimplexRef>>> {
    static SIMPLICES: OnceLock<Vec<Vec<Vec<SimplexRef>>>> = OnceLock::new();
    SIMPLICES.get_or_init(|| corpus().iter().map(|(_, x)| (0..=x.top().min(5)).map(|q| x.simplices(q)).collect()).collect())
}

/// A corpus member, a dimension in `lo..=top - room` and a simplex of that dimension.
fn pick(which: usize, q: usize, k: usize, lo: usize, room: usize) -> Option<(&'static SimplicialSet, usize, SimplexRef)> {
    let which = which % corpus().len();
    let x = &corpus()[which].1;
    let top = x.top().min(5).checked_sub(room)?;
    if top < lo {
        return None;
    }
    let q = lo + q % (top - lo + 1);
    let all = &simplices()[which][q];
    (!all.is_empty()).then(|| (x, q, all[k % all.len()].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]

    #[test]
    fn face_face_identity(which: usize, q: usize, k: usize, i: usize, j: usize) {
        let Some((x, q, s)) = pick(which, q, k, 2, 0) else { return Ok(()) };
        let j = 1 + j % q;
        let i = i % j;
        prop_assert_eq!(x.face(&x.face(&s, j), i), x.face(&x.face(&s, i), j - 1));
    }

    #[test]
    fn face_degeneracy_identities(which: usize, q: usize, k: usize, i: usize, j: usize) {
        let Some((x, q, s)) = pick(which, q, k, 0, 1) else { return Ok(()) };
        let j = j % (q + 1);
        let i = i % (q + 2);
        let lhs = x.face(&x.degeneracy(&s, j), i);
        let rhs = if i < j {
            x.degeneracy(&x.face(&s, i), j - 1)
        } else if i == j || i == j + 1 {
            s.clone()
        } else {
            x.degeneracy(&x.face(&s, i - 1), j)
        };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degeneracy_degeneracy_identity(which: usize, q: usize, k: usize, i: usize, j: usize) {
        let Some((x, q, s)) = pick(which, q, k, 0, 2) else { return Ok(()) };
        let j = j % (q + 1);
        let i = i % (j + 1);
        prop_assert_eq!(x.degeneracy(&x.degeneracy(&s, j), i), x.degeneracy(&x.degeneracy(&s, i), j + 1));
    }
}

#[test]
fn corpus_is_well_formed_through_dimension_three() {
    for (name, x) in corpus() {
        let c = x.chains();
        for q in 1..=3.min(x.top()) {
            let d = c.differential(q as i64);
            let dd = c.differential(q as i64 - 1).mul(&d);
            assert!(q == 1 || dd.is_zero(), "{name}: d∘d ≠ 0 in degree {q}");
        }
    }
}

#[test]
fn two_sphere_has_two_two_simplices() {
    // Δ²/∂Δ²: maps [2] → [2] hitting every vertex survive, the rest collapse to one point
    let maps = monotone_maps(2, 2);
    let surjective = maps.iter().filter(|m| (0..3u8).all(|v| m.contains(&v))).count();
    let collapsed = usize::from(maps.len() > surjective);
    let s2 = standard_sphere(2, 3).unwrap();
    assert_eq!(s2.simplex_count(2), surjective + collapsed);
    assert_eq!(s2.counts(), &[1, 0, 1, 0]);
}

#[test]
fn twisted_interval_counts_match_monotone_maps() {
    let tw = twisted(&standard_simplex(1, 11), 5).unwrap();
    for n in 0..=5 {
        assert_eq!(tw.set.simplex_count(n), monotone_maps(2 * n + 1, 1).len());
    }
}

#[test]
fn alpha_is_monotone_in_the_bound() {
    for (x, max_arity) in [(standard_circle(4), 3), (standard_sphere(2, 4).unwrap(), 2)] {
        for m in 1..=max_arity {
            let mut previous: Option<Vec<Vec<usize>>> = None;
            for n in 0..=m {
                let a = alpha_subcomplex(&x, m, n).unwrap();
                if let Some(prev) = &previous {
                    for (small, big) in prev.iter().zip(&a.ambient) {
                        assert!(small.iter().all(|g| big.contains(g)), "α_{} ⊄ α_{n} at arity {m}", n - 1);
                    }
                }
                previous = Some(a.ambient.clone());
            }
            let full = alpha_subcomplex(&x, m, m).unwrap();
            assert_eq!(full.set.counts(), full.power.set().counts());
        }
    }
}

#[test]
fn groupoid_fibers_are_points() {
    // two objects, one arrow between any ordered pair
    let c = FinCat::poset(2, |_, _| true).unwrap();
    let n = Nerve::new(&c, 3).unwrap();
    let tw = twisted(&n.set, 1).unwrap();
    let p = hom_projection(&n.set, &tw).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(p.fiber(&tw, a, b).len(), 1);
        }
    }
}

#[test]
fn twisted_nerve_matches_twisted_category_on_corpus() {
    for c in small_categories(3, 4) {
        let n = Nerve::new(&c, 5).unwrap();
        let tw = twisted(&n.set, 2).unwrap();
        twisted_nerve_iso(&n, &tw).unwrap();
    }
}
