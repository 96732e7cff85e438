//! Smooth non-degenerate curves in P^3: rational parametrized curves and
//! complete intersections of two quadrics.

pub mod divisor;
pub mod local;
pub mod sample;
pub mod spec;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::field::normalize_point;
use crate::algebra::matrix;
use crate::algebra::mpoly::{GradedPiece, Monomial, MultiPoly};
use crate::algebra::resultant::{self, bareiss_det, FormRing};
use crate::algebra::upoly;
use crate::algebra::{groebner_basis, Field, GroebnerBasis, SubspaceBasis};
use crate::error::{Error, Result};

pub use divisor::{divisor_on_curve, CurveDivisor, DivisorPoint};
pub use local::{local_series, tangent_and_osculating, vanishing_order, LocalSeries, Order, TangentData};
pub use sample::{sample_points, sample_points_ext};

#[derive(Clone, Debug, PartialEq)]
pub enum CurveKind<E> {
    /// Four binary forms of degree d in (s, u).
    ParametricRational { forms: Vec<MultiPoly<E>> },
    QuadricIntersection { q1: MultiPoly<E>, q2: MultiPoly<E> },
    /// y^2 = x^3 + a x + b embedded by (1 : x : y : x^2).
    WeierstrassEmbedded { a: E, b: E, q1: MultiPoly<E>, q2: MultiPoly<E> },
}

/// Normal-form model of S_k: the span of standard monomials of degree k,
/// with the projection V_k -> S_k given by reduction.
#[derive(Clone, Debug)]
pub struct SectionsModel<E> {
    pub degree: u32,
    pub standard: Vec<Monomial>,
    nf: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> SectionsModel<E> {
    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    /// Dense V_k coordinates of the normal form.
    pub fn project<F: Field<Elem = E>>(&self, f: &F, p: &MultiPoly<E>) -> Vec<E> {
        assert_eq!(p.degree(), self.degree);
        let piece = GradedPiece::get(4, self.degree);
        let mut out = vec![f.zero(); piece.dim()];
        for (m, c) in p.terms() {
            let row = &self.nf[piece.index_of(m)];
            for (o, r) in out.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *o = f.add(o, &f.mul(c, r));
                }
            }
        }
        out
    }

    pub fn image<F: Field<Elem = E>>(&self, f: &F, polys: &[MultiPoly<E>]) -> SubspaceBasis<E> {
        let rows: Vec<Vec<E>> = polys.iter().map(|p| self.project(f, p)).collect();
        SubspaceBasis::from_vectors(f, 4, self.degree, &rows)
    }

    pub fn whole<F: Field<Elem = E>>(&self, f: &F) -> SubspaceBasis<E> {
        let polys: Vec<MultiPoly<E>> = self.standard.iter().map(|m| MultiPoly::monomial(f, 4, *m, f.one())).collect();
        SubspaceBasis::span(f, 4, self.degree, &polys)
    }
}

#[derive(Clone, Debug)]
pub struct CurveModel<F: Field> {
    pub field: F,
    pub kind: CurveKind<F::Elem>,
    pub degree: u32,
    pub genus: u32,
    pub ideal: GroebnerBasis<F::Elem>,
    sections: Arc<Mutex<HashMap<u32, Arc<SectionsModel<F::Elem>>>>>,
}

pub(crate) fn quadric_matrix<F: Field>(f: &F, q: &MultiPoly<F::Elem>) -> Vec<Vec<F::Elem>> {
    let half = f.inv(&f.from_i64(2)).unwrap();
    let mut a = vec![vec![f.zero(); 4]; 4];
    for (m, c) in q.terms() {
        let idx: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat_n(i, m.0[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            a[i][i] = c.clone();
        } else {
            let h = f.mul(c, &half);
            a[i][j] = h.clone();
            a[j][i] = h;
        }
    }
    a
}

/// det(l A1 + m A2) as a binary form in (l, m).
pub fn pencil_discriminant<F: Field>(f: &F, q1: &MultiPoly<F::Elem>, q2: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
    let a = quadric_matrix(f, q1);
    let b = quadric_matrix(f, q2);
    let m: Vec<Vec<MultiPoly<F::Elem>>> = (0..4)
        .map(|i| (0..4).map(|j| MultiPoly::linear(f, &[a[i][j].clone(), b[i][j].clone()])).collect())
        .collect();
    let ring = FormRing { field: f, nvars: 2 };
    let d = bareiss_det(&ring, m);
    if d.is_zero() {
        MultiPoly::zero(2, 4)
    } else {
        d
    }
}

/// Square-free binary form of its full degree: distinct roots over the closure.
pub fn binary_squarefree<F: Field>(f: &F, b: &MultiPoly<F::Elem>) -> bool {
    if b.is_zero() {
        return false;
    }
    let (u, inf) = resultant::dehomogenize_binary(f, b);
    if inf > 1 {
        return false;
    }
    let du = upoly::derivative(f, &u);
    upoly::degree(&upoly::gcd(f, &u, &du)) == Some(0) || upoly::degree(&u) == Some(0)
}

fn binary_coprime<F: Field>(f: &F, forms: &[MultiPoly<F::Elem>]) -> bool {
    let mut g: Vec<F::Elem> = vec![];
    let mut all_inf = true;
    for b in forms {
        let (u, inf) = resultant::dehomogenize_binary(f, b);
        if b.is_zero() {
            continue;
        }
        if inf == 0 {
            all_inf = false;
        }
        g = upoly::gcd(f, &g, &u);
    }
    !all_inf && upoly::degree(&g) == Some(0)
}

impl<F: Field> CurveModel<F> {
    pub fn new(field: F, kind: CurveKind<F::Elem>) -> Result<Self> {
        let f = &field;
        let (degree, genus, gens) = match &kind {
            CurveKind::ParametricRational { forms } => {
                if forms.len() != 4 || forms.iter().any(|b| b.nvars() != 2) {
                    return Err(Error::DegenerateCurve("need four binary forms".into()));
                }
                let d = forms.iter().map(|b| b.degree()).max().unwrap();
                if forms.iter().any(|b| !b.is_zero() && b.degree() != d) {
                    return Err(Error::DegenerateCurve("forms of unequal degree".into()));
                }
                let dense: Vec<Vec<F::Elem>> = forms
                    .iter()
                    .map(|b| if b.is_zero() { vec![f.zero(); d as usize + 1] } else { b.to_dense(f) })
                    .collect();
                if matrix::rank(f, &dense, d as usize + 1) < 4 {
                    return Err(Error::DegenerateCurve("image lies in a plane".into()));
                }
                if !binary_coprime(f, forms) {
                    return Err(Error::DegenerateCurve("forms have a common root".into()));
                }
                let mut gens = vec![];
                for k in 2..=d {
                    gens.extend(parametric_kernel(f, forms, k));
                }
                (d, 0, gens)
            }
            CurveKind::QuadricIntersection { q1, q2 } | CurveKind::WeierstrassEmbedded { q1, q2, .. } => {
                if let CurveKind::WeierstrassEmbedded { a, b, .. } = &kind {
                    let disc = f.add(
                        &f.mul(&f.from_i64(4), &f.pow(a, 3)),
                        &f.mul(&f.from_i64(27), &f.mul(b, b)),
                    );
                    if f.is_zero(&disc) {
                        return Err(Error::DegenerateCurve("4a^3 + 27b^2 = 0".into()));
                    }
                }
                for q in [q1, q2] {
                    if q.nvars() != 4 || q.degree() != 2 || q.is_zero() {
                        return Err(Error::DegenerateCurve("need two quadrics in four variables".into()));
                    }
                }
                if SubspaceBasis::span(f, 4, 2, &[q1.clone(), q2.clone()]).dim() != 2 {
                    return Err(Error::DegenerateCurve("dependent quadrics".into()));
                }
                let disc = pencil_discriminant(f, q1, q2);
                if disc.degree() != 4 || !binary_squarefree(f, &disc) {
                    return Err(Error::DegenerateCurve("quadric pencil has a repeated singular member".into()));
                }
                (4, 1, vec![q1.clone(), q2.clone()])
            }
        };
        let ideal = groebner_basis(f, &gens);
        let model = CurveModel { field, kind, degree, genus, ideal, sections: Arc::new(Mutex::new(HashMap::new())) };
        let expect = (degree * degree + 1 - genus) as usize;
        if model.sections(degree).dim() != expect {
            return Err(Error::DegenerateCurve(format!(
                "Hilbert function in degree {degree} is {} instead of {expect}",
                model.sections(degree).dim()
            )));
        }
        if let CurveKind::ParametricRational { .. } = &model.kind {
            for pt in model.parametric_points(20) {
                if model.jacobian_rank(&pt) != 2 {
                    return Err(Error::DegenerateCurve("singular point found".into()));
                }
            }
        }
        Ok(model)
    }

    pub fn parametric(field: F, forms: Vec<MultiPoly<F::Elem>>) -> Result<Self> {
        Self::new(field, CurveKind::ParametricRational { forms })
    }

    pub fn quadric_intersection(field: F, q1: MultiPoly<F::Elem>, q2: MultiPoly<F::Elem>) -> Result<Self> {
        Self::new(field, CurveKind::QuadricIntersection { q1, q2 })
    }

    /// The |4O| model of y^2 = x^3 + a x + b.
    pub fn weierstrass(field: F, a: F::Elem, b: F::Elem) -> Result<Self> {
        let f = &field;
        let mono = |e: [u8; 4], c: F::Elem| MultiPoly::monomial(f, 4, Monomial(e), c);
        let q1 = mono([0, 2, 0, 0], f.one()).sub(f, &mono([1, 0, 0, 1], f.one()));
        let q2 = mono([0, 0, 2, 0], f.one())
            .sub(f, &mono([0, 1, 0, 1], f.one()))
            .sub(f, &mono([1, 1, 0, 0], a.clone()))
            .sub(f, &mono([2, 0, 0, 0], b.clone()));
        Self::new(field, CurveKind::WeierstrassEmbedded { a, b, q1, q2 })
    }

    /// (s^3 : s^2 u : s u^2 : u^3).
    pub fn twisted_cubic(field: F) -> Result<Self> {
        let forms = (0..4u8)
            .map(|i| MultiPoly::monomial(&field, 2, Monomial([3 - i, i, 0, 0]), field.one()))
            .collect();
        Self::parametric(field, forms)
    }

    /// (s^4 : s^3 u : s u^3 : u^4).
    pub fn rational_quartic(field: F) -> Result<Self> {
        let forms = [[4, 0], [3, 1], [1, 3], [0, 4]]
            .iter()
            .map(|e| MultiPoly::monomial(&field, 2, Monomial([e[0], e[1], 0, 0]), field.one()))
            .collect();
        Self::parametric(field, forms)
    }

    /// sum x_i^2 = 0, sum a_i x_i^2 = 0.
    pub fn diagonal_quartic(field: F, a: [i64; 4]) -> Result<Self> {
        let f = &field;
        let mut q1 = MultiPoly::zero(4, 2);
        let mut q2 = MultiPoly::zero(4, 2);
        for i in 0..4 {
            let mut e = [0u8; 4];
            e[i] = 2;
            q1 = q1.add(f, &MultiPoly::monomial(f, 4, Monomial(e), f.one()));
            q2 = q2.add(f, &MultiPoly::monomial(f, 4, Monomial(e), f.from_i64(a[i])));
        }
        Self::quadric_intersection(field, q1, q2)
    }

    pub fn is_parametric(&self) -> bool {
        matches!(self.kind, CurveKind::ParametricRational { .. })
    }

    /// The defining quadrics of a quadric-intersection model.
    pub fn quadrics(&self) -> Option<(&MultiPoly<F::Elem>, &MultiPoly<F::Elem>)> {
        match &self.kind {
            CurveKind::QuadricIntersection { q1, q2 } | CurveKind::WeierstrassEmbedded { q1, q2, .. } => Some((q1, q2)),
            CurveKind::ParametricRational { .. } => None,
        }
    }

    pub fn forms(&self) -> Option<&[MultiPoly<F::Elem>]> {
        match &self.kind {
            CurveKind::ParametricRational { forms } => Some(forms),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        let f = &self.field;
        let names = ["s", "u"];
        match &self.kind {
            CurveKind::ParametricRational { forms } => format!(
                "parametric ({}) over {}",
                forms.iter().map(|b| b.format_with(f, &names)).collect::<Vec<_>>().join(" : "),
                f.name()
            ),
            CurveKind::QuadricIntersection { q1, q2 } => {
                format!("{{{} = 0, {} = 0}} over {}", q1.format(f), q2.format(f), f.name())
            }
            CurveKind::WeierstrassEmbedded { a, b, .. } => {
                format!("y^2 = x^3 + {} x + {} embedded by |4O| over {}", f.format(a), f.format(b), f.name())
            }
        }
    }

    /// Pullback of a form along the parametrization.
    pub fn pullback(&self, p: &MultiPoly<F::Elem>) -> Option<MultiPoly<F::Elem>> {
        self.forms().map(|forms| {
            let out = p.compose(&self.field, forms);
            if out.is_zero() {
                MultiPoly::zero(2, p.degree() * self.degree)
            } else {
                out
            }
        })
    }

    /// Image of the parameter (s : u).
    pub fn param_point(&self, s: &F::Elem, u: &F::Elem) -> Option<Vec<F::Elem>> {
        self.forms().map(|forms| {
            let pt: Vec<F::Elem> = forms.iter().map(|b| b.eval(&self.field, &[s.clone(), u.clone()])).collect();
            normalize_point(&self.field, &pt)
        })
    }

    /// Images of (i : 1) for small integers i and of (1 : 0), distinct.
    pub fn parametric_points(&self, n: usize) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut out: Vec<Vec<F::Elem>> = vec![];
        if let Some(pt) = self.param_point(&f.one(), &f.zero()) {
            out.push(pt);
        }
        let mut i = 0i64;
        let limit = 4 * n as i64 + 8;
        while out.len() < n && i < limit {
            let pt = self.param_point(&f.from_i64(i), &f.one()).unwrap();
            if !out.contains(&pt) {
                out.push(pt);
            }
            i += 1;
        }
        out.truncate(n);
        out
    }

    pub fn contains_point(&self, pt: &[F::Elem]) -> bool {
        self.ideal.polys.iter().all(|g| self.field.is_zero(&g.eval(&self.field, pt)))
    }

    /// Rank of the Jacobian of the ideal generators at a point.
    pub fn jacobian_rank(&self, pt: &[F::Elem]) -> usize {
        let f = &self.field;
        let rows: Vec<Vec<F::Elem>> = self
            .ideal
            .polys
            .iter()
            .map(|g| (0..4).map(|i| g.derivative(f, i).eval(f, pt)).collect())
            .collect();
        matrix::rank(f, &rows, 4)
    }

    /// I(k) as the degree-k span of Groebner basis multiples.
    pub fn ideal_piece(&self, k: u32) -> SubspaceBasis<F::Elem> {
        SubspaceBasis::span(&self.field, 4, k, &self.ideal.degree_piece(&self.field, k))
    }

    pub fn sections(&self, k: u32) -> Arc<SectionsModel<F::Elem>> {
        let mut cache = self.sections.lock().unwrap();
        cache
            .entry(k)
            .or_insert_with(|| {
                let f = &self.field;
                let piece = GradedPiece::get(4, k);
                let nf = piece
                    .monomials
                    .iter()
                    .map(|m| self.ideal.normal_form(f, &MultiPoly::monomial(f, 4, *m, f.one())).to_dense(f))
                    .map(|v| if v.is_empty() { vec![f.zero(); piece.dim()] } else { v })
                    .collect();
                Arc::new(SectionsModel { degree: k, standard: self.ideal.standard_monomials(k), nf })
            })
            .clone()
    }

    pub fn in_ideal(&self, p: &MultiPoly<F::Elem>) -> bool {
        self.ideal.contains(&self.field, p)
    }

    /// The same curve in coordinates y with X = sum_j y_j cols[j].
    pub fn transform(&self, cols: &[Vec<F::Elem>]) -> Result<Self> {
        let f = &self.field;
        let m = matrix::Matrix::from_rows((0..4).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect(), 4);
        let minv = matrix::inverse(f, &m).ok_or_else(|| Error::InvalidInput("singular frame".into()))?;
        let kind = match &self.kind {
            CurveKind::ParametricRational { forms } => {
                let new_forms = (0..4)
                    .map(|i| {
                        let mut acc = MultiPoly::zero(2, self.degree);
                        for (j, b) in forms.iter().enumerate() {
                            acc = acc.add(f, &b.scale(f, minv.get(i, j)));
                        }
                        acc
                    })
                    .collect();
                CurveKind::ParametricRational { forms: new_forms }
            }
            CurveKind::QuadricIntersection { q1, q2 } | CurveKind::WeierstrassEmbedded { q1, q2, .. } => {
                CurveKind::QuadricIntersection { q1: q1.change_frame(f, cols), q2: q2.change_frame(f, cols) }
            }
        };
        CurveModel::new(self.field.clone(), kind)
    }

    /// Base change along a field embedding.
    pub fn map_field<G: Field>(&self, g: &G, phi: impl Fn(&F::Elem) -> G::Elem) -> Result<CurveModel<G>> {
        let kind = match &self.kind {
            CurveKind::ParametricRational { forms } => {
                CurveKind::ParametricRational { forms: forms.iter().map(|b| b.map_coeffs(g, &phi)).collect() }
            }
            CurveKind::QuadricIntersection { q1, q2 } => {
                CurveKind::QuadricIntersection { q1: q1.map_coeffs(g, &phi), q2: q2.map_coeffs(g, &phi) }
            }
            CurveKind::WeierstrassEmbedded { a, b, q1, q2 } => CurveKind::WeierstrassEmbedded {
                a: phi(a),
                b: phi(b),
                q1: q1.map_coeffs(g, &phi),
                q2: q2.map_coeffs(g, &phi),
            },
        };
        CurveModel::new(g.clone(), kind)
    }
}

/// Degree-k forms vanishing on the parametrized curve.
fn parametric_kernel<F: Field>(f: &F, forms: &[MultiPoly<F::Elem>], k: u32) -> Vec<MultiPoly<F::Elem>> {
    let d = forms[0].degree();
    let piece = GradedPiece::get(4, k);
    let rows: Vec<Vec<F::Elem>> = piece
        .monomials
        .iter()
        .map(|m| {
            let p = MultiPoly::monomial(f, 4, *m, f.one()).compose(f, forms);
            if p.is_zero() {
                vec![f.zero(); (d * k) as usize + 1]
            } else {
                p.to_dense(f)
            }
        })
        .collect();
    matrix::left_kernel(f, &rows, (d * k) as usize + 1)
        .iter()
        .map(|v| MultiPoly::from_dense(f, 4, k, v))
        .collect()
}

/// Kernel of evaluation of V_k at the given points.
pub fn ideal_piece_by_evaluation<F: Field>(f: &F, k: u32, points: &[Vec<F::Elem>]) -> SubspaceBasis<F::Elem> {
    let piece = GradedPiece::get(4, k);
    let rows: Vec<Vec<F::Elem>> = points
        .iter()
        .map(|pt| {
            piece
                .monomials
                .iter()
                .map(|m| MultiPoly::monomial(f, 4, *m, f.one()).eval(f, pt))
                .collect()
        })
        .collect();
    let ker = matrix::kernel(f, &rows, piece.dim());
    SubspaceBasis::from_vectors(f, 4, k, &ker)
}

/// I(k) computed from the Groebner basis and checked against evaluation
/// at the given points.
pub fn graded_ideal_piece<F: Field>(c: &CurveModel<F>, k: u32, points: &[Vec<F::Elem>]) -> Result<SubspaceBasis<F::Elem>> {
    let by_gb = c.ideal_piece(k);
    let by_eval = ideal_piece_by_evaluation(&c.field, k, points);
    if by_gb != by_eval {
        return Err(Error::SamplingDefect(format!(
            "degree {k}: Groebner piece has dimension {}, evaluation kernel on {} points has dimension {}",
            by_gb.dim(),
            points.len(),
            by_eval.dim()
        )));
    }
    Ok(by_gb)
}

/// Point count needed for the evaluation method to be conclusive.
pub fn points_needed(d: u32, k: u32) -> usize {
    (d * k + 1) as usize + 4
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    #[test]
    fn twisted_cubic_invariants() {
        let c = CurveModel::twisted_cubic(Rationals).unwrap();
        assert_eq!((c.degree, c.genus), (3, 0));
        assert_eq!(c.ideal_piece(1).dim(), 0);
        assert_eq!(c.ideal_piece(2).dim(), 3);
        assert_eq!(c.sections(3).dim(), 10);
    }

    #[test]
    fn elliptic_quartic_dimensions() {
        let f = PrimeField::new(101).unwrap();
        let c = CurveModel::weierstrass(f, 2, 3).unwrap();
        assert_eq!((c.degree, c.genus), (4, 1));
        assert_eq!(c.ideal_piece(2).dim(), 2);
        assert_eq!(c.ideal_piece(4).dim(), 19);
        assert_eq!(c.sections(4).dim(), 16);
        assert_eq!(c.sections(3).dim(), 12);
    }

    #[test]
    fn rejects_degenerate_data() {
        let f = PrimeField::new(101).unwrap();
        assert!(CurveModel::weierstrass(f, 0, 0).is_err());
        assert!(CurveModel::diagonal_quartic(f, [1, 1, 2, 3]).is_err());
        assert!(CurveModel::diagonal_quartic(f, [0, 1, 2, 3]).is_ok());
    }

    #[test]
    fn plane_parametrization_rejected() {
        let q = Rationals;
        let forms: Vec<MultiPoly<_>> = [[2u8, 0], [1, 1], [0, 2], [2, 0]]
            .iter()
            .map(|e| MultiPoly::monomial(&q, 2, Monomial([e[0], e[1], 0, 0]), q.one()))
            .collect();
        assert!(matches!(CurveModel::parametric(q, forms), Err(Error::DegenerateCurve(_))));
    }
}
