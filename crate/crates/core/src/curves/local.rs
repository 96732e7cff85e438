//! Local power-series parametrizations, vanishing orders, tangent lines and
//! osculating planes.

use super::{CurveKind, CurveModel};
use crate::algebra::field::normalize_point;
use crate::algebra::matrix;
use crate::algebra::resultant;
use crate::algebra::series::{self, Series};
use crate::algebra::upoly;
use crate::algebra::{Field, MultiPoly, SubspaceBasis};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum LocalParameter<E> {
    /// Expansion of the parametrization at (s0 : u0).
    Parameter(E, E),
    /// Coordinate i minus its value at the point.
    Coordinate(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalSeries<E> {
    pub point: Vec<E>,
    /// Coordinate normalized to 1 along the series.
    pub chart: usize,
    pub parameter: LocalParameter<E>,
    pub truncation: usize,
    /// Four series of length truncation + 1.
    pub coords: Vec<Series<E>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(usize),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<usize> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug> LocalSeries<E> {
    /// Coefficient vector of s^j.
    pub fn jet<F: Field<Elem = E>>(&self, _f: &F, j: usize) -> Vec<E> {
        self.coords.iter().map(|s| s[j].clone()).collect()
    }

    /// Order of f along the series; None if zero up to the truncation.
    pub fn order_of<F: Field<Elem = E>>(&self, f: &F, p: &MultiPoly<E>) -> Option<usize> {
        series::order(f, &series::eval_poly(f, p, &self.coords))
    }
}

fn chart_normalize<F: Field>(f: &F, coords: Vec<Series<F::Elem>>, chart: usize) -> Vec<Series<F::Elem>> {
    let inv = series::inv(f, &coords[chart]).expect("chart coordinate is a unit");
    coords.iter().map(|s| series::mul(f, s, &inv)).collect()
}

fn parameter_of<F: Field>(c: &CurveModel<F>, q: &[F::Elem]) -> Result<(F::Elem, F::Elem)> {
    let f = &c.field;
    let forms = c.forms().unwrap();
    if c.param_point(&f.one(), &f.zero()).unwrap() == q {
        return Ok((f.one(), f.zero()));
    }
    let mut g: Vec<F::Elem> = vec![];
    for i in 0..4 {
        for j in i + 1..4 {
            let cross = forms[i].scale(f, &q[j]).sub(f, &forms[j].scale(f, &q[i]));
            if cross.is_zero() {
                continue;
            }
            let (u, _) = resultant::dehomogenize_binary(f, &cross);
            g = upoly::gcd(f, &g, &u);
        }
    }
    match upoly::degree(&g) {
        Some(1) => Ok((f.neg(&f.div(&g[0], &g[1]).unwrap()), f.one())),
        Some(0) | None => Err(Error::NotOnCurve),
        _ => Err(Error::NotSmooth),
    }
}

fn parametric_series<F: Field>(c: &CurveModel<F>, q: &[F::Elem], len: usize) -> Result<LocalSeries<F::Elem>> {
    let f = &c.field;
    let (s0, u0) = parameter_of(c, q)?;
    let forms = c.forms().unwrap();
    let d = c.degree as usize;
    let coords: Vec<Series<F::Elem>> = forms
        .iter()
        .map(|b| {
            let mut dense = vec![f.zero(); d + 1];
            for (m, coef) in b.terms() {
                dense[m.0[0] as usize] = coef.clone();
            }
            let mut out = vec![f.zero(); len];
            if f.is_zero(&u0) {
                // b(1, s) = sum c_j s^(d-j)
                for (j, coef) in dense.iter().enumerate() {
                    if d - j < len {
                        out[d - j] = coef.clone();
                    }
                }
            } else {
                let shifted = upoly::shift(f, &upoly::trim(f, dense), &s0);
                for (j, coef) in shifted.into_iter().enumerate().take(len) {
                    out[j] = coef;
                }
            }
            out
        })
        .collect();
    let chart = q.iter().position(|x| !f.is_zero(x)).unwrap();
    Ok(LocalSeries {
        point: q.to_vec(),
        chart,
        parameter: LocalParameter::Parameter(s0, u0),
        truncation: len - 1,
        coords: chart_normalize(f, coords, chart),
    })
}

fn newton_series<F: Field>(
    f: &F,
    q1: &MultiPoly<F::Elem>,
    q2: &MultiPoly<F::Elem>,
    q: &[F::Elem],
    len: usize,
) -> Result<LocalSeries<F::Elem>> {
    let chart = q.iter().position(|x| !f.is_zero(x)).unwrap();
    let grads: Vec<Vec<MultiPoly<F::Elem>>> =
        [q1, q2].iter().map(|g| (0..4).map(|i| g.derivative(f, i)).collect()).collect();
    let jac: Vec<Vec<F::Elem>> = grads.iter().map(|row| row.iter().map(|d| d.eval(f, q)).collect()).collect();
    let others: Vec<usize> = (0..4).filter(|&i| i != chart).collect();
    let mut pick = None;
    'outer: for ai in 0..3 {
        for bi in ai + 1..3 {
            let (a, b) = (others[ai], others[bi]);
            let minor = f.sub(&f.mul(&jac[0][a], &jac[1][b]), &f.mul(&jac[0][b], &jac[1][a]));
            if !f.is_zero(&minor) {
                let param = others.iter().copied().find(|&i| i != a && i != b).unwrap();
                pick = Some((a, b, param));
                break 'outer;
            }
        }
    }
    let (a, b, param) = pick.ok_or(Error::NotSmooth)?;
    let mut coords: Vec<Series<F::Elem>> = q.iter().map(|x| series::constant(f, x.clone(), len)).collect();
    if len > 1 {
        coords[param][1] = f.one();
    }
    let mut prec = 1;
    while prec < len {
        let g1 = series::eval_poly(f, q1, &coords);
        let g2 = series::eval_poly(f, q2, &coords);
        let j = |r: usize, c: usize| series::eval_poly(f, &grads[r][c], &coords);
        let (j11, j12, j21, j22) = (j(0, a), j(0, b), j(1, a), j(1, b));
        let det = series::sub(f, &series::mul(f, &j11, &j22), &series::mul(f, &j12, &j21));
        let dinv = series::inv(f, &det).ok_or(Error::NotSmooth)?;
        // [da, db] = J^{-1} [g1, g2]
        let da = series::mul(f, &series::sub(f, &series::mul(f, &j22, &g1), &series::mul(f, &j12, &g2)), &dinv);
        let db = series::mul(f, &series::sub(f, &series::mul(f, &j11, &g2), &series::mul(f, &j21, &g1)), &dinv);
        coords[a] = series::sub(f, &coords[a], &da);
        coords[b] = series::sub(f, &coords[b], &db);
        prec *= 2;
    }
    for g in [q1, q2] {
        if series::order(f, &series::eval_poly(f, g, &coords)).is_some() {
            return Err(Error::Internal("Newton lifting did not converge".into()));
        }
    }
    Ok(LocalSeries {
        point: q.to_vec(),
        chart,
        parameter: LocalParameter::Coordinate(param),
        truncation: len - 1,
        coords,
    })
}

/// Local parametrization of C at q, exact modulo s^(n+1).
pub fn local_series<F: Field>(c: &CurveModel<F>, q: &[F::Elem], n: usize) -> Result<LocalSeries<F::Elem>> {
    let f = &c.field;
    let q = normalize_point(f, q);
    if q.len() != 4 || q.iter().all(|x| f.is_zero(x)) {
        return Err(Error::InvalidInput("need a point of P^3".into()));
    }
    if !c.contains_point(&q) {
        return Err(Error::NotOnCurve);
    }
    let n = n.max(1);
    match &c.kind {
        CurveKind::ParametricRational { .. } => parametric_series(c, &q, n + 1),
        CurveKind::QuadricIntersection { q1, q2 } | CurveKind::WeierstrassEmbedded { q1, q2, .. } => {
            newton_series(f, q1, q2, &q, n + 1)
        }
    }
}

/// Default truncation for forms of degree k on a degree-d curve.
pub fn default_truncation(d: u32, k: u32) -> usize {
    (2 * d * k + 1) as usize
}

/// Vanishing order of p along an existing series, with the membership
/// test deciding the infinite case.
pub fn order_along<F: Field>(c: &CurveModel<F>, ls: &LocalSeries<F::Elem>, p: &MultiPoly<F::Elem>) -> Result<Order> {
    match ls.order_of(&c.field, p) {
        Some(n) => Ok(Order::Finite(n)),
        None if c.in_ideal(p) => Ok(Order::Infinite),
        None => Err(Error::TruncationTooSmall(ls.truncation)),
    }
}

/// nu_q(p); the truncation defaults to 2 d deg(p) + 1.
pub fn vanishing_order<F: Field>(
    c: &CurveModel<F>,
    p: &MultiPoly<F::Elem>,
    q: &[F::Elem],
    truncation: Option<usize>,
) -> Result<Order> {
    let n = truncation.unwrap_or_else(|| default_truncation(c.degree, p.degree()));
    let ls = local_series(c, q, n)?;
    order_along(c, &ls, p)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentData<E> {
    /// Linear forms vanishing on t_q.
    pub tangent: SubspaceBasis<E>,
    /// Tangent direction: a point of t_q other than q.
    pub direction: Vec<E>,
    pub osculating: MultiPoly<E>,
    /// Order of contact of the osculating plane.
    pub contact: Order,
    /// The second-order term was proportional to the first ones.
    pub degenerate: bool,
}

pub fn tangent_and_osculating<F: Field>(c: &CurveModel<F>, q: &[F::Elem]) -> Result<TangentData<F::Elem>> {
    let f = &c.field;
    let n = default_truncation(c.degree, 1);
    let ls = local_series(c, q, n)?;
    let v0 = ls.jet(f, 0);
    let v1 = ls.jet(f, 1);
    if v1.iter().all(|x| f.is_zero(x)) {
        return Err(Error::NotSmooth);
    }
    let tangent_rows = matrix::kernel(f, &[v0.clone(), v1.clone()], 4);
    let tangent_forms: Vec<MultiPoly<F::Elem>> = tangent_rows.iter().map(|r| MultiPoly::linear(f, r)).collect();
    let tangent = SubspaceBasis::span(f, 4, 1, &tangent_forms);
    let mut found = None;
    for j in 2..=n {
        let vj = ls.jet(f, j);
        if matrix::rank(f, &[v0.clone(), v1.clone(), vj.clone()], 4) == 3 {
            found = Some((j, vj));
            break;
        }
    }
    let (j, vj) = found.ok_or_else(|| Error::GenericityFailure("curve is planar to the truncation order".into()))?;
    let osc = matrix::kernel(f, &[v0, v1.clone(), vj], 4);
    let osculating = MultiPoly::linear(f, &osc[0]).normalize(f);
    let contact = order_along(c, &ls, &osculating)?;
    Ok(TangentData { tangent, direction: normalize_point(f, &v1), osculating, contact, degenerate: j != 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::{parse, VAR_NAMES};
    use crate::algebra::{PrimeField, Rationals};
    use crate::curves::sample::sample_points;

    #[test]
    fn twisted_cubic_at_origin() {
        let q = Rationals;
        let c = CurveModel::twisted_cubic(q).unwrap();
        let pt = vec![q.zero(), q.zero(), q.zero(), q.one()];
        let ls = local_series(&c, &pt, 5).unwrap();
        let expect = |k: usize| {
            let mut v = vec![q.zero(); 6];
            v[k] = q.one();
            v
        };
        assert_eq!(ls.coords[0], expect(3));
        assert_eq!(ls.coords[1], expect(2));
        assert_eq!(ls.coords[2], expect(1));
        assert_eq!(ls.coords[3], expect(0));
        let td = tangent_and_osculating(&c, &pt).unwrap();
        let xy = SubspaceBasis::span(&q, 4, 1, &[parse(&q, 4, &VAR_NAMES, "x").unwrap(), parse(&q, 4, &VAR_NAMES, "y").unwrap()]);
        assert_eq!(td.tangent, xy);
        assert_eq!(td.osculating, parse(&q, 4, &VAR_NAMES, "x").unwrap());
        assert_eq!(td.contact, Order::Finite(3));
    }

    #[test]
    fn newton_series_on_elliptic_quartic() {
        let f = PrimeField::new(101).unwrap();
        let c = CurveModel::weierstrass(f, 2, 3).unwrap();
        let (q1, q2) = c.quadrics().unwrap();
        for pt in sample_points(&c, 10) {
            let ls = local_series(&c, &pt, 17).unwrap();
            assert_eq!(ls.coords[0].len(), 18);
            assert!(ls.order_of(&f, q1).is_none());
            assert!(ls.order_of(&f, q2).is_none());
            assert_eq!(vanishing_order(&c, q1, &pt, None).unwrap(), Order::Infinite);
        }
    }

    #[test]
    fn off_curve_point_rejected() {
        let f = PrimeField::new(101).unwrap();
        let c = CurveModel::weierstrass(f, 2, 3).unwrap();
        assert_eq!(local_series(&c, &[1, 1, 1, 1], 4), Err(Error::NotOnCurve));
    }
}
