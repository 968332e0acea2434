//! Breadth-first search for order-one covariants of binary forms of odd
//! degree.

use super::expr::*;
use super::independence_at;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Form;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    /// Maximal nesting depth of transvectants and powers.
    pub max_depth: u32,
    /// Maximal order of intermediate covariants.
    pub max_order: u32,
    /// Maximal degree in the coefficients of the input.
    pub max_degree: u32,
    /// Maximal number of intermediate covariants kept.
    pub max_pool: usize,
}

impl SearchBounds {
    pub fn for_degree(k: u32) -> Self {
        SearchBounds { max_depth: 4, max_order: 2 * k, max_degree: k + 4, max_pool: 32 }
    }
}

#[derive(Debug, Clone)]
pub struct Candidate<F: Field> {
    pub expr: Cov,
    pub depth: u32,
    pub degree: u32,
    pub value: Form<F>,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome<F: Field> {
    pub chosen: [Candidate<F>; 2],
    /// Order-one candidates met before the search stopped.
    pub candidates: usize,
}

struct Entry<F: Field> {
    expr: Cov,
    depth: u32,
    order: u32,
    degree: u32,
    value: Form<F>,
}

/// Enumerates transvectants and powers of `f` depth by depth, keeping the
/// nonzero ones, and returns the first pair of order-one results that is
/// linearly independent at `f`, in the order (degree, depth, discovery).
pub fn search_order1_binary<F: Field>(f: &Form<F>, bounds: &SearchBounds) -> Result<SearchOutcome<F>> {
    let k = f.total_degree();
    if f.space().groups().len() != 1 || f.space().nvars() != 2 || k < 5 || k % 2 == 0 {
        return Err(Error::DegreeMismatch(format!("expected a binary form of odd degree at least 5, got degree {k}")));
    }
    let mut pool = vec![Entry { expr: input(0, "f"), depth: 0, order: k, degree: 1, value: f.clone() }];
    let mut found: Vec<Candidate<F>> = Vec::new();
    for depth in 1..=bounds.max_depth {
        let mut fresh: Vec<Entry<F>> = Vec::new();
        for ai in 0..pool.len() {
            for bi in ai..pool.len() {
                let (a, b) = (&pool[ai], &pool[bi]);
                if a.depth + 1 != depth && b.depth + 1 != depth {
                    continue;
                }
                let degree = a.degree + b.degree;
                if degree > bounds.max_degree {
                    continue;
                }
                for l in 1..=a.order.min(b.order) {
                    if ai == bi && l % 2 == 1 {
                        continue;
                    }
                    let order = a.order + b.order - 2 * l;
                    if order == 0 || order > bounds.max_order {
                        continue;
                    }
                    let value = crate::transvectant::transvect(&a.value, &b.value, l)?;
                    if value.is_zero() {
                        continue;
                    }
                    let expr = transvect(&a.expr, &b.expr, l);
                    if order == 1 {
                        found.push(Candidate { expr, depth, degree, value });
                    } else {
                        fresh.push(Entry { expr, depth, order, degree, value });
                    }
                }
            }
        }
        for a in pool.iter().filter(|a| a.depth + 1 == depth) {
            for e in 2.. {
                if a.order * e > bounds.max_order || a.degree * e > bounds.max_degree {
                    break;
                }
                fresh.push(Entry {
                    expr: power(&a.expr, e),
                    depth,
                    order: a.order * e,
                    degree: a.degree * e,
                    value: a.value.pow(e),
                });
            }
        }
        fresh.sort_by_key(|e| (e.degree, e.order));
        for e in fresh {
            if pool.len() >= bounds.max_pool {
                break;
            }
            pool.push(e);
        }
        if let Some(pair) = first_independent_pair(&found) {
            return Ok(SearchOutcome { chosen: pair, candidates: found.len() });
        }
    }
    if found.is_empty() {
        Err(Error::SearchExhausted(format!(
            "no order-1 covariant within depth {}, order {}, degree {}, pool {}",
            bounds.max_depth, bounds.max_order, bounds.max_degree, bounds.max_pool
        )))
    } else {
        Err(Error::NotIndependent)
    }
}

fn first_independent_pair<F: Field>(found: &[Candidate<F>]) -> Option<[Candidate<F>; 2]> {
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by_key(|&i| (found[i].degree, found[i].depth, i));
    for (x, &i) in order.iter().enumerate() {
        for &j in &order[x + 1..] {
            if independence_at(&[found[i].value.clone(), found[j].value.clone()]).independent {
                return Some([found[i].clone(), found[j].clone()]);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::{parse_form, Space};

    fn b(s: &str) -> Form<Rational> {
        parse_form(s, &Space::binary()).unwrap()
    }

    #[test]
    fn quintic_has_two_independent_linear_covariants() {
        let f = b("3*x0^5-x0^4*x1+2*x0^3*x1^2+7*x0^2*x1^3-5*x0*x1^4+x1^5");
        let out = search_order1_binary(&f, &SearchBounds::for_degree(5)).unwrap();
        assert!(out.chosen.iter().all(|c| c.value.degree() == [1]));
        let scaled = search_order1_binary(&f.scale(&Rational::from_i64(3)), &SearchBounds::for_degree(5)).unwrap();
        for (x, y) in out.chosen.iter().zip(&scaled.chosen) {
            assert_eq!(x.expr.to_string(), y.expr.to_string());
        }
    }

    #[test]
    fn nullcone_quintic_exhausts_the_search() {
        let err = search_order1_binary(&b("x0^5"), &SearchBounds::for_degree(5)).unwrap_err();
        assert!(matches!(err, Error::SearchExhausted(_)));
    }

    #[test]
    fn even_degree_is_rejected() {
        assert!(search_order1_binary(&b("x0^6+x1^6"), &SearchBounds::for_degree(6)).is_err());
    }
}
