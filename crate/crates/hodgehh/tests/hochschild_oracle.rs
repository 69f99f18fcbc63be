mod support;

use std::collections::BTreeMap;
use std::path::PathBuf;

use hodgehh_core::budget::Budget;
use hodgehh_core::chainalg::Coefficients;
use hodgehh_core::loday::{algebra_corpus, betti_table, loday_complex, AugAlgebra};
use hodgehh_core::simplicial::standard_circle;
use support::bar_oracle::{hochschild_table, DenseAlgebra};

const MAX_DEGREE: usize = 3;

/// The oracle's own description of each corpus algebra, keyed like the library corpus.
fn oracle_algebras() -> Vec<(&'static str, DenseAlgebra, u32)> {
    vec![
        ("k", DenseAlgebra::monomial(0, 0, |_| true), 0),
        ("k[x]", DenseAlgebra::monomial(1, 4, |_| true), 4),
        ("k[x]/x^2", DenseAlgebra::monomial(1, 4, |m| m[0] < 2), 4),
        ("k[x]/x^3", DenseAlgebra::monomial(1, 4, |m| m[0] < 3), 4),
        ("k[x,y]", DenseAlgebra::monomial(2, 3, |_| true), 3),
        ("k[x,y]/(x^2,y^2)", DenseAlgebra::monomial(2, 3, |m| m[0] < 2 && m[1] < 2), 3),
        ("k[x,y]/(xy)", DenseAlgebra::monomial(2, 3, |m| m[0] == 0 || m[1] == 0), 3),
        ("k[x,y]/(x,y)^2", DenseAlgebra::monomial(2, 3, |m| m[0] + m[1] < 2), 3),
    ]
}

fn library_table(r: &AugAlgebra, max_weight: u32) -> Vec<(usize, u32, usize)> {
    let l = loday_complex(r, &standard_circle(MAX_DEGREE + 2), MAX_DEGREE, max_weight, &Budget::default()).unwrap();
    betti_table(&l.complex, MAX_DEGREE, Coefficients::Rationals).unwrap()
}

fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/hochschild_oracle.json")
}

fn oracle_tables() -> BTreeMap<String, Vec<(usize, u32, usize)>> {
    oracle_algebras().into_iter().map(|(name, alg, w)| (name.to_string(), hochschild_table(&alg, MAX_DEGREE, w))).collect()
}

#[test]
fn normalized_loday_complex_matches_dense_bar_complex() {
    let library: BTreeMap<&str, AugAlgebra> = algebra_corpus(Coefficients::Rationals).into_iter().collect();
    for (name, alg, w) in oracle_algebras() {
        assert_eq!(library_table(&library[name], w), hochschild_table(&alg, MAX_DEGREE, w), "{name}");
    }
}

#[test]
fn dual_numbers_have_betti_two_one_one_one() {
    let table = hochschild_table(&DenseAlgebra::monomial(1, 4, |m| m[0] < 2), MAX_DEGREE, 4);
    let mut by_degree = [0; MAX_DEGREE + 1];
    for (n, _, b) in table {
        by_degree[n] += b;
    }
    assert_eq!(by_degree, [2, 1, 1, 1]);
}

#[test]
fn zeroth_hochschild_group_is_the_algebra() {
    for (name, r) in algebra_corpus(Coefficients::Rationals) {
        let w = r.max_weight();
        let hh0: Vec<(u32, usize)> = library_table(&r, w).into_iter().filter(|e| e.0 == 0).map(|e| (e.1, e.2)).collect();
        let mut expected: BTreeMap<u32, usize> = BTreeMap::new();
        for &wt in &r.weights {
            *expected.entry(wt).or_default() += 1;
        }
        assert_eq!(hh0, expected.into_iter().collect::<Vec<_>>(), "{name}");
    }
}

/// The checked-in fixture is the oracle's output; set `HODGEHH_REGENERATE_FIXTURES=1` to rewrite it.
#[test]
fn oracle_fixture_is_current() {
    let tables = oracle_tables();
    let rows: Vec<String> =
        tables.iter().map(|(name, t)| format!("  {}: {}", serde_json::to_string(name).unwrap(), serde_json::to_string(t).unwrap())).collect();
    let rendered = format!("{{\n{}\n}}\n", rows.join(",\n"));
    serde_json::from_str::<serde_json::Value>(&rendered).unwrap();
    if std::env::var_os("HODGEHH_REGENERATE_FIXTURES").is_some() {
        std::fs::write(fixture_path(), &rendered).unwrap();
    }
    assert_eq!(std::fs::read_to_string(fixture_path()).unwrap(), rendered);
}
