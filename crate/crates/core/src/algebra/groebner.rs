//! Buchberger's algorithm for homogeneous ideals with the normal selection
//! strategy, followed by interreduction.

use super::field::Field;
use super::mpoly::{GradedPiece, Monomial, MultiPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<E> {
    pub nvars: usize,
    /// Reduced, monic, sorted by leading monomial (ascending).
    pub polys: Vec<MultiPoly<E>>,
}

fn reduce_full<F: Field>(f: &F, p: &MultiPoly<F::Elem>, basis: &[MultiPoly<F::Elem>]) -> MultiPoly<F::Elem> {
    let mut rest = p.clone();
    let mut done: Vec<(Monomial, F::Elem)> = vec![];
    while let Some((m, c)) = rest.leading().cloned() {
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m))) {
            Some(g) => {
                let (lm, lc) = g.leading().unwrap();
                let q = f.div(&c, lc).unwrap();
                rest = rest.sub(f, &g.mul_monomial(f, &lm.quotient(&m), &q));
            }
            None => {
                done.push((m, c.clone()));
                rest = MultiPoly::from_terms(f, p.nvars(), p.degree(), rest.terms()[1..].to_vec());
            }
        }
    }
    MultiPoly::from_terms(f, p.nvars(), p.degree(), done)
}

fn s_poly<F: Field>(f: &F, a: &MultiPoly<F::Elem>, b: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
    let (ma, ca) = a.leading().unwrap();
    let (mb, cb) = b.leading().unwrap();
    let l = ma.lcm(mb);
    let left = a.mul_monomial(f, &ma.quotient(&l), &f.inv(ca).unwrap());
    let right = b.mul_monomial(f, &mb.quotient(&l), &f.inv(cb).unwrap());
    left.sub(f, &right)
}

pub fn groebner_basis<F: Field>(f: &F, gens: &[MultiPoly<F::Elem>]) -> GroebnerBasis<F::Elem> {
    assert!(!gens.is_empty(), "empty generator list");
    let nvars = gens[0].nvars();
    let mut basis: Vec<MultiPoly<F::Elem>> = vec![];
    for g in gens {
        let r = reduce_full(f, g, &basis);
        if !r.is_zero() {
            basis.push(r.normalize(f));
        }
    }
    let mut pairs: Vec<(usize, usize)> = vec![];
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal selection: smallest lcm of leading monomials
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, (i, j))| basis[*i].leading_monomial().unwrap().lcm(&basis[*j].leading_monomial().unwrap()))
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        let (mi, mj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if mi.coprime(&mj) {
            continue;
        }
        let s = s_poly(f, &basis[i], &basis[j]);
        let r = reduce_full(f, &s, &basis);
        if !r.is_zero() {
            basis.push(r.normalize(f));
            let n = basis.len() - 1;
            for k in 0..n {
                pairs.push((k, n));
            }
        }
    }
    interreduce(f, nvars, basis)
}

fn interreduce<F: Field>(f: &F, nvars: usize, basis: Vec<MultiPoly<F::Elem>>) -> GroebnerBasis<F::Elem> {
    let mut minimal: Vec<MultiPoly<F::Elem>> = vec![];
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hm = h.leading_monomial().unwrap();
            j != i && hm.divides(&lm) && (hm != lm || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = vec![];
    for i in 0..minimal.len() {
        let others: Vec<_> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let (lm, lc) = minimal[i].leading().unwrap().clone();
        let tail = MultiPoly::from_terms(f, nvars, minimal[i].degree(), minimal[i].terms()[1..].to_vec());
        let tail = reduce_full(f, &tail, &others);
        let head = MultiPoly::monomial(f, nvars, lm, lc);
        reduced.push(head.add(f, &tail).normalize(f));
    }
    reduced.sort_by_key(|g| g.leading_monomial().unwrap());
    GroebnerBasis { nvars, polys: reduced }
}

impl<E: Clone + PartialEq + std::fmt::Debug> GroebnerBasis<E> {
    pub fn normal_form<F: Field<Elem = E>>(&self, f: &F, p: &MultiPoly<E>) -> MultiPoly<E> {
        reduce_full(f, p, &self.polys)
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, p: &MultiPoly<E>) -> bool {
        self.normal_form(f, p).is_zero()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.polys.iter().any(|g| g.leading_monomial().unwrap().divides(m))
    }

    /// Monomials of degree k outside the leading-term ideal, descending.
    pub fn standard_monomials(&self, k: u32) -> Vec<Monomial> {
        GradedPiece::get(self.nvars, k)
            .monomials
            .iter()
            .filter(|m| self.is_standard(m))
            .copied()
            .collect()
    }

    /// All S-polynomials reduce to zero.
    pub fn satisfies_buchberger<F: Field<Elem = E>>(&self, f: &F) -> bool {
        for j in 0..self.polys.len() {
            for i in 0..j {
                let s = s_poly(f, &self.polys[i], &self.polys[j]);
                if !self.normal_form(f, &s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// No leading monomial divides any term of another element.
    pub fn is_reduced(&self) -> bool {
        for (i, g) in self.polys.iter().enumerate() {
            let lm = g.leading_monomial().unwrap();
            for (j, h) in self.polys.iter().enumerate() {
                if i != j && h.terms().iter().any(|(m, _)| lm.divides(m)) {
                    return false;
                }
            }
        }
        true
    }

    /// Degree-k part of the ideal as the span of monomial multiples.
    pub fn degree_piece<F: Field<Elem = E>>(&self, f: &F, k: u32) -> Vec<MultiPoly<E>> {
        let mut out = vec![];
        for g in &self.polys {
            if g.degree() > k {
                continue;
            }
            for m in &GradedPiece::get(self.nvars, k - g.degree()).monomials {
                out.push(g.mul_monomial(f, m, &f.one()));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::{parse, VAR_NAMES};
    use crate::algebra::prime::PrimeField;

    #[test]
    fn linear_generators() {
        let f = PrimeField::new(7).unwrap();
        let x = MultiPoly::var(&f, 2, 0);
        let y = MultiPoly::var(&f, 2, 1);
        let gb = groebner_basis(&f, &[x.clone(), y.clone()]);
        assert_eq!(gb.polys.len(), 2);
        assert!(gb.polys.contains(&x) && gb.polys.contains(&y));
    }

    #[test]
    fn elliptic_quadrics() {
        let f = PrimeField::new(101).unwrap();
        let names = ["u0", "u1", "u2", "u3"];
        let q1 = parse(&f, 4, &names, "u1^2 - u0*u3").unwrap();
        let q2 = parse(&f, 4, &names, "u2^2 - u1*u3 - 2*u0*u1 - 4*u0^2").unwrap();
        let gb = groebner_basis(&f, &[q1.clone(), q2.clone()]);
        assert!(gb.contains(&f, &q1) && gb.contains(&f, &q2));
        assert!(gb.satisfies_buchberger(&f));
        assert!(gb.is_reduced());
        assert_eq!(gb.standard_monomials(4).len(), 16);
    }

    #[test]
    fn twisted_cubic_ideal() {
        let f = PrimeField::new(101).unwrap();
        let p = |s: &str| parse(&f, 4, &VAR_NAMES, s).unwrap();
        let gb = groebner_basis(&f, &[p("x*z - y^2"), p("y*w - z^2"), p("x*w - y*z")]);
        assert!(gb.satisfies_buchberger(&f));
        for k in 1..6 {
            assert_eq!(gb.standard_monomials(k).len() as u32, 3 * k + 1);
        }
    }
}
