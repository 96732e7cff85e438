//! The intersection ring of the blow-up of P^3 along a curve, and counting
//! oracles for nodes of cone projections and ramification of projections
//! from lines.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::resultant::{bareiss_det, dehomogenize_binary, UPolyRing};
use crate::algebra::upoly::{self, UPoly};
use crate::algebra::{groebner_basis, matrix, Field, Monomial, MultiPoly};
use crate::conic::{classify_vertex, cone_equation, VertexTag};
use crate::curves::{CurveKind, CurveModel};
use crate::error::{Error, Result};

/// Integer combination of monomials L^i E^j of one codimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupClass {
    pub codim: u32,
    pub terms: BTreeMap<(u32, u32), i64>,
}

impl BlowupClass {
    fn monomial(i: u32, j: u32, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((i, j), c);
        }
        BlowupClass { codim: i + j, terms }
    }

    /// Pullback of the hyperplane class.
    pub fn l() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// Exceptional divisor.
    pub fn e() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// M = d L - E.
    pub fn m(d: u32) -> Self {
        Self::l().scale(d as i64).add(&Self::e().scale(-1)).unwrap()
    }

    pub fn scale(&self, c: i64) -> Self {
        let terms = self.terms.iter().map(|(k, v)| (*k, v * c)).filter(|(_, v)| *v != 0).collect();
        BlowupClass { codim: self.codim, terms }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.codim != other.codim {
            return Err(Error::InvalidInput(format!("codimensions {} and {} differ", self.codim, other.codim)));
        }
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            *terms.entry(*k).or_insert(0) += v;
        }
        terms.retain(|_, v| *v != 0);
        Ok(BlowupClass { codim: self.codim, terms })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &other.terms {
                *terms.entry((i + k, j + l)).or_insert(0) += a * b;
            }
        }
        terms.retain(|_, v| *v != 0);
        BlowupClass { codim: self.codim + other.codim, terms }
    }

    /// Degree of a codimension-3 class.
    pub fn degree(&self, d: u32, g: u32) -> Result<i64> {
        if self.codim != 3 {
            return Err(Error::InvalidInput(format!("codimension {} is not 3", self.codim)));
        }
        let (d, g) = (d as i64, g as i64);
        Ok(self
            .terms
            .iter()
            .map(|(k, v)| {
                v * match k {
                    (3, 0) => 1,
                    (2, 1) => 0,
                    (1, 2) => -d,
                    (0, 3) => 2 - 2 * g - 4 * d,
                    _ => unreachable!(),
                }
            })
            .sum())
    }
}

pub fn blowup_product(a: &BlowupClass, b: &BlowupClass, c: &BlowupClass, d: u32, g: u32) -> Result<i64> {
    if a.codim + b.codim + c.codim != 3 {
        return Err(Error::InvalidInput("codimensions must sum to 3".into()));
    }
    a.mul(b).mul(c).degree(d, g)
}

/// Degree of the zero-dimensional scheme cut by `gens` and whether it is
/// reduced, read off the pencil det(λ Z - X) of multiplication maps by two
/// random linear forms on a stable graded piece of the quotient.
pub fn scheme_points<F: Field>(f: &F, gens: &[MultiPoly<F::Elem>], seed: u64) -> Result<(usize, bool)> {
    let nvars = gens[0].nvars();
    let gb = groebner_basis(f, gens);
    let maxdeg = gens.iter().map(|g| g.degree()).max().unwrap();
    let mut k = maxdeg * nvars as u32;
    let stable = loop {
        let h: Vec<usize> = (k..k + 3).map(|j| gb.standard_monomials(j).len()).collect();
        if h[0] == h[1] && h[1] == h[2] {
            break h[0];
        }
        k += 1;
        if k > 8 * maxdeg * nvars as u32 {
            return Err(Error::GenericityFailure("scheme is not zero-dimensional".into()));
        }
    };
    if stable == 0 {
        return Ok((0, true));
    }
    let basis_k = gb.standard_monomials(k);
    let basis_k1 = gb.standard_monomials(k + 1);
    let index = |m: &Monomial| basis_k1.iter().position(|b| b == m).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..6 {
        let mut form = || {
            let coeffs: Vec<F::Elem> = (0..nvars).map(|_| f.from_i64(rng.gen_range(-60..60))).collect();
            MultiPoly::linear(f, &coeffs)
        };
        let (la, lb) = (form(), form());
        let image = |l: &MultiPoly<F::Elem>| -> Vec<Vec<F::Elem>> {
            basis_k
                .iter()
                .map(|m| {
                    let mut row = vec![f.zero(); stable];
                    let p = l.mul_monomial(f, m, &f.one());
                    for (mm, c) in gb.normal_form(f, &p).terms() {
                        row[index(mm)] = c.clone();
                    }
                    row
                })
                .collect()
        };
        let (x, z) = (image(&la), image(&lb));
        let pencil: Vec<Vec<UPoly<F::Elem>>> = (0..stable)
            .map(|i| (0..stable).map(|j| upoly::trim(f, vec![f.neg(&x[i][j]), z[i][j].clone()])).collect())
            .collect();
        let ch = bareiss_det(&UPolyRing(f), pencil);
        if upoly::degree(&ch) != Some(stable) {
            continue;
        }
        let g = upoly::gcd(f, &ch, &upoly::derivative(f, &ch));
        if upoly::degree(&g) == Some(0) {
            return Ok((stable, true));
        }
    }
    Ok((stable, false))
}

fn char_guard<F: Field>(c: &CurveModel<F>) -> Result<()> {
    let p = c.field.characteristic();
    if p != 0 && p <= 2 * c.degree as u64 {
        return Err(Error::InvalidField(format!("characteristic {p} must exceed 2d = {}", 2 * c.degree)));
    }
    Ok(())
}

/// Nodes of the projection of C from p, as singular points of the cone f_p.
pub fn count_nodes<F: Field>(c: &CurveModel<F>, p: &[F::Elem]) -> Result<usize> {
    char_guard(c)?;
    let f = &c.field;
    if classify_vertex(c, p)?.tag != VertexTag::U {
        return Err(Error::InvalidInput("vertex must lie in U".into()));
    }
    let cols = crate::conic::vertex_frame(f, p);
    let fp = cone_equation(c, p)?.change_frame(f, &cols).drop_var(3)?;
    let jac: Vec<MultiPoly<F::Elem>> = (0..3).map(|i| fp.derivative(f, i)).collect();
    let (n, reduced) = scheme_points(f, &jac, 0x0de5)?;
    if !reduced {
        return Err(Error::GenericityFailure("projected curve has a non-nodal singularity".into()));
    }
    Ok(n)
}

/// Ramification points of the projection of C from the line through r and s.
pub fn count_ramification<F: Field>(c: &CurveModel<F>, r: &[F::Elem], s: &[F::Elem]) -> Result<usize> {
    char_guard(c)?;
    let f = &c.field;
    let ker = matrix::kernel(f, &[r.to_vec(), s.to_vec()], 4);
    if ker.len() != 2 {
        return Err(Error::InvalidInput("r and s must be distinct points".into()));
    }
    let (l1, l2) = (MultiPoly::linear(f, &ker[0]), MultiPoly::linear(f, &ker[1]));
    match &c.kind {
        CurveKind::ParametricRational { .. } => {
            let a = c.pullback(&l1).unwrap();
            let b = c.pullback(&l2).unwrap();
            let (ua, _) = dehomogenize_binary(f, &a);
            let (ub, _) = dehomogenize_binary(f, &b);
            if upoly::degree(&upoly::gcd(f, &ua, &ub)) != Some(0) || (a.coeff(f, &Monomial([c.degree as u8, 0, 0, 0])) == f.zero() && b.coeff(f, &Monomial([c.degree as u8, 0, 0, 0])) == f.zero()) {
                return Err(Error::GenericityFailure("the line meets the curve".into()));
            }
            let w = a.derivative(f, 0).mul(f, &b.derivative(f, 1)).sub(f, &a.derivative(f, 1).mul(f, &b.derivative(f, 0)));
            let (u, inf) = dehomogenize_binary(f, &w);
            let sq = upoly::gcd(f, &u, &upoly::derivative(f, &u));
            if w.is_zero() || inf > 1 || upoly::degree(&sq) != Some(0) {
                return Err(Error::GenericityFailure("ramification is not simple".into()));
            }
            Ok(upoly::degree(&u).unwrap() + inf as usize)
        }
        _ => {
            let (q1, q2) = c.quadrics().unwrap();
            let (empty, _) = scheme_points(f, &[q1.clone(), q2.clone(), l1.clone(), l2.clone()], 1)?;
            if empty != 0 {
                return Err(Error::GenericityFailure("the line meets the curve".into()));
            }
            let rows: Vec<Vec<MultiPoly<F::Elem>>> = [q1, q2]
                .iter()
                .map(|q| (0..4).map(|i| q.derivative(f, i)).collect())
                .chain([&l1, &l2].iter().map(|l| (0..4).map(|i| l.derivative(f, i)).collect()))
                .collect();
            let jdet = bareiss_det(&crate::algebra::resultant::FormRing { field: f, nvars: 4 }, rows);
            if jdet.is_zero() {
                return Err(Error::GenericityFailure("degenerate ramification form".into()));
            }
            let (n, reduced) = scheme_points(f, &[q1.clone(), q2.clone(), jdet], 2)?;
            if !reduced {
                return Err(Error::GenericityFailure("ramification is not simple".into()));
            }
            Ok(n)
        }
    }
}

/// Largest genus of a nondegenerate irreducible curve of degree d in P^3.
pub fn castelnuovo_bound(d: u32) -> u32 {
    let m = (d - 1) / 2;
    let eps = d - 1 - 2 * m;
    m * (m - 1) + m * eps
}

/// Expected counts: (d-1)(d-2)/2 - g nodes, 2g - 2 + 2d ramification points.
pub fn expected_nodes(d: u32, g: u32) -> i64 {
    ((d - 1) * (d - 2) / 2) as i64 - g as i64
}

pub fn expected_ramification(d: u32, g: u32) -> i64 {
    2 * g as i64 - 2 + 2 * d as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use crate::conic::VertexTag;

    #[test]
    fn blowup_numbers() {
        let (l, e, m) = (BlowupClass::l(), BlowupClass::e(), BlowupClass::m(4));
        assert_eq!(blowup_product(&m, &l, &e, 4, 1).unwrap(), 4);
        assert_eq!(blowup_product(&m, &m, &e, 4, 1).unwrap(), 16);
        assert_eq!(blowup_product(&l, &l, &l, 4, 1).unwrap(), 1);
        assert!(blowup_product(&l.mul(&l), &l, &e, 4, 1).is_err());
        assert_eq!((3..=6).map(castelnuovo_bound).collect::<Vec<_>>(), vec![0, 1, 2, 4]);
    }

    fn random_u(c: &CurveModel<PrimeField>, rng: &mut ChaCha8Rng) -> Vec<u64> {
        loop {
            let p: Vec<u64> = (0..4).map(|_| rng.gen_range(0..c.field.p())).collect();
            if p.iter().any(|&x| x != 0) && classify_vertex(c, &p).map(|v| v.tag) == Ok(VertexTag::U) {
                return p;
            }
        }
    }

    #[test]
    fn nodes_and_ramification_match_formulas() {
        let f = PrimeField::new(101).unwrap();
        let curves = vec![
            CurveModel::twisted_cubic(f).unwrap(),
            CurveModel::weierstrass(f, 2, 3).unwrap(),
            CurveModel::rational_quartic(f).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for c in &curves {
            let mut checked = (0, 0);
            for _ in 0..4 {
                let p = random_u(c, &mut rng);
                match count_nodes(c, &p) {
                    Ok(n) => {
                        assert_eq!(n as i64, expected_nodes(c.degree, c.genus));
                        checked.0 += 1;
                    }
                    Err(e) => assert!(matches!(e, Error::GenericityFailure(_))),
                }
                let r: Vec<u64> = (0..4).map(|_| rng.gen_range(0..101)).collect();
                let s: Vec<u64> = (0..4).map(|_| rng.gen_range(0..101)).collect();
                match count_ramification(c, &r, &s) {
                    Ok(n) => {
                        assert_eq!(n as i64, expected_ramification(c.degree, c.genus));
                        checked.1 += 1;
                    }
                    Err(e) => assert!(matches!(e, Error::GenericityFailure(_))),
                }
            }
            assert!(checked.0 >= 2 && checked.1 >= 2, "{checked:?}");
        }
    }
}
