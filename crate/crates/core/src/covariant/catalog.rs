//! Concrete covariant and contravariant families used by the pipelines.

use super::expr::*;

/// A family of expressions together with the named intermediates that
/// build it.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub id: String,
    pub nodes: Vec<Cov>,
    pub family: Vec<Cov>,
}

impl Catalog {
    pub fn get(&self, name: &str) -> Option<&Cov> {
        self.nodes.iter().find(|n| n.name() == Some(name))
    }

    /// `name = definition` lines in construction order.
    pub fn describe(&self) -> Vec<String> {
        self.nodes.iter().map(|n| format!("{n} = {}", n.definition())).collect()
    }
}

struct Builder {
    nodes: Vec<Cov>,
}

impl Builder {
    fn add(&mut self, name: &str, e: Cov) -> Cov {
        let n = named(name, e);
        self.nodes.push(n.clone());
        n
    }

    fn finish(self, id: &str, family: Vec<Cov>) -> Catalog {
        Catalog { id: id.into(), nodes: self.nodes, family }
    }
}

/// Three contravariants of order one of a plane quartic `F`.
pub fn genus3() -> Catalog {
    let mut b = Builder { nodes: Vec::new() };
    let f = input(0, "F");
    let fr = restrict(&f);
    let h = b.add("H", omega(&f, &f, &f, 2));
    let sigma = b.add("sigma", rehomogenize(&transvect(&fr, &fr, 4), 4));
    let psi = b.add("psi", rehomogenize(&transvect(&transvect(&fr, &fr, 2), &fr, 4), 6));
    let rho = b.add("rho", pair(&f, &psi));
    let sr = restrict(&sigma);
    let c44 = b.add("C44", rehomogenize(&transvect(&sr, &sr, 4), 4));
    let sigma2 = power(&sigma, 2);
    let c54 = b.add("c54", pair(&f, &sigma2));
    let c52 = b.add("C52", pair(&sigma, &h));
    let c85 = b.add("C85", omega(&f, &h, &c44, 3));
    let c123 = b.add("c123", pair(&c85, &sigma2));
    let cc123 = b.add("C123", pair(&rho, &c85));
    let p0 = b.add("p0", pair(&cc123, &sigma));
    let p1 = b.add("p1", pair(&cc123, &c54));
    let p2 = b.add("p2", pair(&c52, &c123));
    b.finish("genus3", vec![p0, p1, p2])
}

/// Four covariants of bi-order (1,1) of a bicubic form `f`.
pub fn genus4() -> Catalog {
    let mut b = Builder { nodes: Vec::new() };
    let f = input(0, "f");
    let h = b.add("h", transvect2(&f, &f, 2, 2));
    let j = b.add("j", transvect2(&f, &f, 1, 1));
    let c31 = b.add("c31", transvect2(&h, &f, 2, 2));
    b.add("c33_1", transvect2(&j, &f, 2, 2));
    let c33_2 = b.add("c33_2", transvect2(&h, &f, 1, 1));
    b.add("c42_1", transvect2(&h, &h, 1, 1));
    let c42_2 = b.add("c42_2", transvect2(&c31, &f, 1, 1));
    b.add("c42_3", transvect2(&c33_2, &f, 2, 2));
    let c44_1 = b.add("c44_1", transvect2(&c33_2, &f, 1, 1));
    let c44_2 = b.add("c44_2", transvect2(&transvect2(&j, &f, 1, 1), &f, 2, 2));
    let c51_1 = b.add("c51_1", transvect2(&c42_2, &f, 2, 2));
    let c51_2 = b.add("c51_2", transvect2(&c44_1, &f, 3, 3));
    let c51_3 = b.add("c51_3", transvect2(&c44_2, &f, 3, 3));
    b.finish("genus4", vec![c31, c51_1, c51_2, c51_3])
}

/// Three order-two covariants of a pair (f6, f4) of binary forms.
pub fn sum64() -> Catalog {
    let mut b = Builder { nodes: Vec::new() };
    let f6 = input(0, "f6");
    let f4 = input(1, "f4");
    let q0 = b.add("q0", transvect(&f6, &f4, 4));
    let q1 = b.add("q1", transvect(&f6, &power(&f4, 2), 6));
    let q2 = b.add("q2", transvect(&power(&f6, 2), &power(&f4, 3), 11));
    b.finish("sum64", vec![q0, q1, q2])
}

/// Three order-two covariants of a binary form of even degree `k ≥ 6`.
pub fn binary_even(k: u32) -> Catalog {
    assert!(k >= 6 && k % 2 == 0, "even degree at least 6");
    let mut b = Builder { nodes: Vec::new() };
    let f = input(0, "f");
    let i = b.add("i", transvect(&f, &f, k - 2));
    let s = (k - 2).div_ceil(4);
    let is = if s == 1 { i.clone() } else { power(&i, s) };
    let y1 = b.add("y1", transvect(&f, &is, (k + 4 * s - 2) / 2));
    let y2 = b.add("y2", transvect(&i, &y1, 2));
    let y3 = b.add("y3", transvect(&i, &y2, 2));
    b.finish(&format!("binary{k}"), vec![y1, y2, y3])
}

/// Two order-one covariants of a binary form of odd degree `k ≥ 5`:
/// (f, i^((k−1)/2))_(k−1) and (f, i^((k+1)/2))_k with i = (f, f)_(k−1).
pub fn binary_odd(k: u32) -> Catalog {
    assert!(k >= 5 && k % 2 == 1, "odd degree at least 5");
    let mut b = Builder { nodes: Vec::new() };
    let f = input(0, "f");
    let i = b.add("i", transvect(&f, &f, k - 1));
    let l1 = b.add("l1", transvect(&f, &power(&i, (k - 1) / 2), k - 1));
    let l2 = b.add("l2", transvect(&f, &power(&i, (k + 1) / 2), k));
    b.finish(&format!("binary{k}"), vec![l1, l2])
}
