//! Space selectors: `point`, `circle`, `sphere:D`, `simplex:N`, and products
//! of these joined by `*`.

use hodgehh_core::simplicial::{standard_circle, standard_simplex, standard_sphere, ProductSet, SimplicialSet};

use crate::error::{validation, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Point,
    Sphere(usize),
    Simplex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    pub factors: Vec<Factor>,
}

impl Space {
    pub fn parse(selector: &str) -> CliResult<Self> {
        let factors = selector
            .split('*')
            .map(|f| {
                let f = f.trim();
                let (head, arg) = match f.split_once(':') {
                    Some((h, a)) => (h, Some(a.parse::<usize>().map_err(|_| validation(format!("bad dimension in {f:?}")))?)),
                    None => (f, None),
                };
                match (head, arg) {
                    ("point", None) => Ok(Factor::Point),
                    ("circle", None) => Ok(Factor::Sphere(1)),
                    ("sphere", Some(d)) if d >= 1 => Ok(Factor::Sphere(d)),
                    ("simplex", Some(n)) => Ok(Factor::Simplex(n)),
                    _ => Err(validation(format!("unknown space {f:?}; expected point, circle, sphere:D, simplex:N or a product with *"))),
                }
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Space { factors })
    }

    pub fn is_circle(&self) -> bool {
        self.factors == [Factor::Sphere(1)]
    }

    /// The dimension of the top nondegenerate simplices.
    pub fn dimension(&self) -> usize {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Point => 0,
                Factor::Sphere(d) | Factor::Simplex(d) => *d,
            })
            .sum()
    }

    /// The simplicial model truncated at `top`.
    pub fn build(&self, top: usize) -> CliResult<SimplicialSet> {
        let sets = self
            .factors
            .iter()
            .map(|f| match *f {
                Factor::Point => Ok(standard_simplex(0, top)),
                Factor::Sphere(1) => Ok(standard_circle(top)),
                Factor::Sphere(d) => Ok(standard_sphere(d, top)?),
                Factor::Simplex(n) => Ok(standard_simplex(n, top)),
            })
            .collect::<CliResult<Vec<_>>>()?;
        if sets.len() == 1 {
            return Ok(sets.into_iter().next().expect("one factor"));
        }
        let refs: Vec<&SimplicialSet> = sets.iter().collect();
        Ok(ProductSet::new(&refs)?.into_set())
    }

    pub fn name(&self) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|f| match f {
                Factor::Point => "point".to_string(),
                Factor::Sphere(1) => "circle".to_string(),
                Factor::Sphere(d) => format!("sphere:{d}"),
                Factor::Simplex(n) => format!("simplex:{n}"),
            })
            .collect();
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products() {
        let s = Space::parse("circle * sphere:2").unwrap();
        assert_eq!(s.factors, vec![Factor::Sphere(1), Factor::Sphere(2)]);
        assert_eq!(s.name(), "circle*sphere:2");
        assert_eq!(s.dimension(), 3);
        let x = s.build(3).unwrap();
        assert_eq!(x.count(3), 3);
        assert_eq!(x.chains().euler_characteristic(), 0);
        assert!(Space::parse("torus").is_err());
        assert!(Space::parse("sphere:0").is_err());
    }
}
