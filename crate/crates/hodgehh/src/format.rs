//! Plain-text algebra and module tables.
//!
//! ```text
//! RING Q
//! BASIS
//! 1 0
//! x 1
//! MUL
//! x x -> 0
//! AUG
//! 1 1
//! ```
//!
//! `BASIS` lines are `name weight` with the unit first. `MUL` lines are
//! `a b -> c_1 e_1 + c_2 e_2` (coefficients optional, `0` for zero); missing
//! products are zero and products with the unit are implied. `AUG` lists
//! `name value` and must agree with the weight augmentation. Module files use
//! `BASIS` and `ACT` (`a m -> …`) the same way.

use std::collections::BTreeMap;

use hodgehh_core::chainalg::{Coefficients, Integer};
use hodgehh_core::loday::{algebra_corpus, AlgModule, AugAlgebra};

use crate::error::{validation, CliError, CliResult};

type Table = BTreeMap<(usize, usize), Vec<(usize, Integer)>>;

/// `Z`, `Q`, `F5` or `Fp(5)`.
pub fn parse_ring(tag: &str) -> CliResult<Coefficients> {
    let tag = tag.trim();
    match tag {
        "Z" => Ok(Coefficients::Integers),
        "Q" => Ok(Coefficients::Rationals),
        _ => {
            let digits = tag
                .strip_prefix("Fp(")
                .and_then(|s| s.strip_suffix(')'))
                .or_else(|| tag.strip_prefix('F'))
                .ok_or_else(|| validation(format!("unknown ring {tag:?}; expected Z, Q, Fp(p) or Fp")))?;
            let p: u64 = digits.parse().map_err(|_| validation(format!("bad prime in ring {tag:?}")))?;
            Ok(Coefficients::prime(p)?)
        }
    }
}

pub fn ring_tag(k: Coefficients) -> String {
    k.to_string()
}

struct Sections<'a> {
    ring: Option<&'a str>,
    blocks: BTreeMap<&'a str, Vec<(usize, &'a str)>>,
}

fn sections<'a>(text: &'a str, allowed: &[&str]) -> CliResult<Sections<'a>> {
    let mut ring = None;
    let mut blocks: BTreeMap<&str, Vec<(usize, &str)>> = BTreeMap::new();
    let mut current: Option<&str> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(tag) = line.strip_prefix("RING") {
            ring = Some(tag.trim());
            continue;
        }
        if allowed.contains(&line) {
            if blocks.contains_key(line) {
                return Err(validation(format!("line {}: section {line} repeated", i + 1)));
            }
            blocks.insert(line, Vec::new());
            current = Some(line);
            continue;
        }
        match current {
            Some(s) => blocks.get_mut(s).expect("opened").push((i + 1, line)),
            None => return Err(validation(format!("line {}: content before any section", i + 1))),
        }
    }
    Ok(Sections { ring, blocks })
}

fn basis(lines: &[(usize, &str)]) -> CliResult<(Vec<String>, Vec<u32>)> {
    let mut names = Vec::new();
    let mut weights = Vec::new();
    for &(no, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [name, weight] = parts[..] else {
            return Err(validation(format!("line {no}: expected `name weight`")));
        };
        if names.iter().any(|n| n == name) {
            return Err(validation(format!("line {no}: basis element {name} repeated")));
        }
        names.push(name.to_string());
        weights.push(weight.parse().map_err(|_| validation(format!("line {no}: bad weight {weight:?}")))?);
    }
    Ok((names, weights))
}

fn lookup(names: &[String], name: &str, no: usize) -> CliResult<usize> {
    names.iter().position(|n| n == name).ok_or_else(|| validation(format!("line {no}: unknown basis element {name}")))
}

fn parse_integer(s: &str, no: usize) -> CliResult<Integer> {
    s.parse().map_err(|_| validation(format!("line {no}: bad coefficient {s:?}")))
}

/// `2 x2 - y + -3*z`, or `0`.
fn linear_combination(expr: &str, names: &[String], no: usize) -> CliResult<Vec<(usize, Integer)>> {
    let expr = expr.trim();
    if expr == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let spaced = expr.replace('*', " ").replace('-', "+-");
    for term in spaced.split('+').filter(|t| !t.trim().is_empty()) {
        let tokens: Vec<&str> = term.split_whitespace().collect();
        let (coef, name) = match tokens[..] {
            [name] => match name.strip_prefix('-') {
                Some(rest) => (-Integer::from(1), rest),
                None => (Integer::from(1), name),
            },
            ["-", name] => (-Integer::from(1), name),
            [c, name] => (parse_integer(c, no)?, name),
            ["-", c, name] => (-parse_integer(c, no)?, name),
            _ => return Err(validation(format!("line {no}: cannot read term {term:?}"))),
        };
        out.push((lookup(names, name, no)?, coef));
    }
    Ok(out)
}

fn table(lines: &[(usize, &str)], left: &[String], right: &[String], result: &[String]) -> CliResult<Table> {
    let mut t = Table::new();
    for &(no, line) in lines {
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| validation(format!("line {no}: expected `a b -> …`")))?;
        let parts: Vec<&str> = lhs.split_whitespace().collect();
        let [a, b] = parts[..] else {
            return Err(validation(format!("line {no}: expected two factors before `->`")));
        };
        let key = (lookup(left, a, no)?, lookup(right, b, no)?);
        if t.insert(key, linear_combination(rhs, result, no)?).is_some() {
            return Err(validation(format!("line {no}: product {a} {b} given twice")));
        }
    }
    Ok(t)
}

/// Parses an algebra file. `ring` overrides the file's `RING` line; without either the ring is `Q`.
pub fn parse_algebra(text: &str, ring: Option<Coefficients>) -> CliResult<AugAlgebra> {
    let s = sections(text, &["BASIS", "MUL", "AUG"])?;
    let k = match (ring, s.ring) {
        (Some(k), _) => k,
        (None, Some(tag)) => parse_ring(tag)?,
        (None, None) => Coefficients::Rationals,
    };
    let (names, weights) = basis(s.blocks.get("BASIS").ok_or_else(|| validation("missing BASIS section"))?)?;
    if names.is_empty() {
        return Err(validation("BASIS is empty"));
    }
    let mut products = table(s.blocks.get("MUL").map_or(&[][..], Vec::as_slice), &names, &names, &names)?;
    let symmetric: Table = products.iter().filter(|((a, b), _)| !products.contains_key(&(*b, *a))).map(|(&(a, b), v)| ((b, a), v.clone())).collect();
    products.extend(symmetric);
    if let Some(lines) = s.blocks.get("AUG") {
        for &(no, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [name, value] = parts[..] else {
                return Err(validation(format!("line {no}: expected `name value`")));
            };
            let i = lookup(&names, name, no)?;
            let expected = Integer::from(u8::from(i == 0));
            if parse_integer(value, no)? != expected {
                return Err(validation(format!("line {no}: the augmentation must send the unit to 1 and positive weights to 0")));
            }
        }
    }
    Ok(AugAlgebra::new(k, names, weights, &products)?)
}

pub fn parse_module(text: &str, algebra: &AugAlgebra) -> CliResult<AlgModule> {
    let s = sections(text, &["BASIS", "ACT"])?;
    let (names, weights) = basis(s.blocks.get("BASIS").ok_or_else(|| validation("missing BASIS section"))?)?;
    let actions = table(s.blocks.get("ACT").map_or(&[][..], Vec::as_slice), &algebra.names, &names, &names)?;
    Ok(AlgModule::new(algebra, names, weights, &actions)?)
}

/// Writes an algebra in the format read by [`parse_algebra`].
pub fn write_algebra(algebra: &AugAlgebra) -> String {
    let mut out = format!("RING {}\nBASIS\n", ring_tag(algebra.coefficients));
    for (name, w) in algebra.names.iter().zip(&algebra.weights) {
        out.push_str(&format!("{name} {w}\n"));
    }
    out.push_str("MUL\n");
    for a in 1..algebra.dim() {
        for b in a..algebra.dim() {
            let terms = algebra.product(a, b);
            if terms.is_empty() {
                continue;
            }
            let rhs: Vec<String> = terms
                .iter()
                .map(|(c, v)| if *v == Integer::from(1) { algebra.names[*c].clone() } else { format!("{v} {}", algebra.names[*c]) })
                .collect();
            out.push_str(&format!("{} {} -> {}\n", algebra.names[a], algebra.names[b], rhs.join(" + ")));
        }
    }
    out.push_str(&format!("AUG\n{} 1\n", algebra.names[0]));
    out
}

/// An algebra from a file path, or `corpus:NAME` for a built-in one.
pub fn load_algebra(source: &str, ring: Option<Coefficients>) -> CliResult<(String, AugAlgebra)> {
    if let Some(name) = source.strip_prefix("corpus:") {
        let k = ring.unwrap_or(Coefficients::Rationals);
        return algebra_corpus(k)
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(n, a)| (n.to_string(), a))
            .ok_or_else(|| validation(format!("no corpus algebra named {name:?}")));
    }
    let text = std::fs::read_to_string(source).map_err(|e| CliError::Validation(format!("{source}: {e}")))?;
    let name = std::path::Path::new(source).file_stem().map_or_else(|| source.to_string(), |s| s.to_string_lossy().into_owned());
    Ok((name, parse_algebra(&text, ring)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = "RING Q\nBASIS\n1 0\nx 1\nMUL\nx x -> 0\nAUG\n1 1\nx 0\n";

    #[test]
    fn reads_dual_numbers() {
        let a = parse_algebra(DUAL, None).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.product(1, 1).is_empty());
        assert_eq!(a.coefficients, Coefficients::Rationals);
        assert_eq!(parse_algebra(DUAL, Some(Coefficients::Integers)).unwrap().coefficients, Coefficients::Integers);
    }

    #[test]
    fn rings() {
        assert_eq!(parse_ring("F5").unwrap(), Coefficients::Prime(5));
        assert_eq!(parse_ring("Fp(7)").unwrap(), Coefficients::Prime(7));
        assert!(parse_ring("F6").is_err());
        assert!(parse_ring("R").is_err());
    }

    #[test]
    fn combinations() {
        let names: Vec<String> = ["1", "x", "y"].iter().map(|s| s.to_string()).collect();
        let parsed = linear_combination("2 x - y + -3*1", &names, 1).unwrap();
        assert_eq!(parsed, vec![(1, Integer::from(2)), (2, Integer::from(-1)), (0, Integer::from(-3))]);
        assert!(linear_combination("x y z", &names, 1).is_err());
    }

    #[test]
    fn corpus_round_trips() {
        for (name, a) in algebra_corpus(Coefficients::Rationals) {
            assert_eq!(parse_algebra(&write_algebra(&a), None).unwrap(), a, "{name}");
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(parse_algebra("BASIS\n1 0\nx 1\nMUL\nx x -> 2 1\n", None).is_err());
        assert!(parse_algebra("BASIS\n1 0\nx 1\nAUG\nx 1\n", None).is_err());
        assert!(parse_algebra("MUL\n", None).is_err());
    }

    #[test]
    fn augmentation_module() {
        let a = parse_algebra(DUAL, None).unwrap();
        let m = parse_module("BASIS\n1 0\nACT\nx 1 -> 0\n", &a).unwrap();
        assert_eq!(m, AlgModule::augmentation(&a));
    }
}
