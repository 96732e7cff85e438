//! Divisors cut on curves over prime fields, with support resolved over
//! finite extensions.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::local::{vanishing_order, Order};
use super::CurveModel;
use crate::algebra::field::{format_point, normalize_point};
use crate::algebra::resultant::{self, form_resultant, to_binary};
use crate::algebra::upoly::{self, UPoly};
use crate::algebra::{ffpoly, matrix, Field, FiniteField, GaloisField, MultiPoly, PrimeField};
use crate::error::{Error, Result};

pub const DEFAULT_EXTENSION_CAP: u32 = 8;
const FRAME_ATTEMPTS: u64 = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorPoint {
    /// F_{p^r} with r the residue degree.
    pub field: GaloisField,
    pub point: Vec<Vec<u64>>,
    pub residue_degree: u32,
    pub multiplicity: u32,
}

impl DivisorPoint {
    pub fn degree(&self) -> u32 {
        self.residue_degree * self.multiplicity
    }

    /// Coordinates in F_p when the point is rational.
    pub fn rational(&self) -> Option<Vec<u64>> {
        self.point.iter().map(|c| self.field.as_base(c)).collect()
    }

    pub fn serialize(&self) -> String {
        format!("{} over {}", format_point(&self.field, &self.point), self.field.name())
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct CurveDivisor {
    pub points: Vec<DivisorPoint>,
}

impl CurveDivisor {
    pub fn total_degree(&self) -> u32 {
        self.points.iter().map(|p| p.degree()).sum()
    }

    /// m when the divisor is m q for one rational point q.
    pub fn concentrated_at(&self) -> Option<(Vec<u64>, u32)> {
        match self.points.as_slice() {
            [pt] if pt.residue_degree == 1 => pt.rational().map(|q| (q, pt.multiplicity)),
            _ => None,
        }
    }

    pub fn format(&self) -> String {
        self.points
            .iter()
            .map(|p| format!("{} {}", p.multiplicity, p.serialize()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn finish(mut points: Vec<DivisorPoint>) -> CurveDivisor {
    points.sort_by_cached_key(|p| (p.residue_degree, p.serialize()));
    CurveDivisor { points }
}

struct Extensions<'a> {
    curve: &'a CurveModel<PrimeField>,
    cache: HashMap<u32, (GaloisField, CurveModel<GaloisField>)>,
}

impl<'a> Extensions<'a> {
    fn new(curve: &'a CurveModel<PrimeField>) -> Self {
        Extensions { curve, cache: HashMap::new() }
    }

    fn get(&mut self, r: u32) -> Result<&(GaloisField, CurveModel<GaloisField>)> {
        if !self.cache.contains_key(&r) {
            let g = GaloisField::galois(self.curve.field.p(), r as usize)?;
            let c = self.curve.map_field(&g, |x| g.embed(x))?;
            self.cache.insert(r, (g, c));
        }
        Ok(&self.cache[&r])
    }
}

fn first_root(g: &GaloisField, h: &[u64]) -> Result<Vec<u64>> {
    let lifted: UPoly<Vec<u64>> = h.iter().map(|c| g.embed(c)).collect();
    ffpoly::distinct_roots(g, &lifted)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("irreducible factor without a root".into()))
}

fn multiplicity(c: &CurveModel<GaloisField>, f: &MultiPoly<Vec<u64>>, pt: &[Vec<u64>]) -> Result<u32> {
    match vanishing_order(c, f, pt, None)? {
        Order::Finite(n) => Ok(n as u32),
        Order::Infinite => Err(Error::InvalidInput("form vanishes on the curve".into())),
    }
}

/// The divisor cut on C by f, with support points of residue degree at
/// most `cap`.
pub fn divisor_on_curve(c: &CurveModel<PrimeField>, f: &MultiPoly<u64>, cap: u32) -> Result<CurveDivisor> {
    if f.nvars() != 4 {
        return Err(Error::AmbientMismatch(format!("form in {} variables", f.nvars())));
    }
    if f.is_zero() || c.in_ideal(f) {
        return Err(Error::InvalidInput("form vanishes on the curve".into()));
    }
    if c.is_parametric() {
        parametric_divisor(c, f, cap)
    } else {
        quadric_divisor(c, f, cap)
    }
}

fn parametric_divisor(c: &CurveModel<PrimeField>, f: &MultiPoly<u64>, cap: u32) -> Result<CurveDivisor> {
    let fp = &c.field;
    let b = c.pullback(f).unwrap();
    let (u, inf) = resultant::dehomogenize_binary(fp, &b);
    let factors = ffpoly::factor(fp, &u);
    if let Some((h, _)) = factors.iter().find(|(h, _)| upoly::degree(h).unwrap() as u32 > cap) {
        return Err(Error::ExtensionExhausted(cap, format!("support point of degree {}", upoly::degree(h).unwrap())));
    }
    let mut ext = Extensions::new(c);
    let mut points = vec![];
    if inf > 0 {
        let (g, cg) = ext.get(1)?;
        points.push(DivisorPoint {
            field: g.clone(),
            point: cg.param_point(&g.one(), &g.zero()).unwrap(),
            residue_degree: 1,
            multiplicity: inf,
        });
    }
    for (h, m) in factors {
        let r = upoly::degree(&h).unwrap() as u32;
        let (g, cg) = ext.get(r)?;
        let alpha = first_root(g, &h)?;
        points.push(DivisorPoint {
            field: g.clone(),
            point: cg.param_point(&alpha, &g.one()).unwrap(),
            residue_degree: r,
            multiplicity: m,
        });
    }
    Ok(finish(points))
}

/// Restriction of p to the line where all variables but `var` are fixed.
fn restrict<F: Field>(f: &F, p: &MultiPoly<F::Elem>, var: usize, pt: &[F::Elem]) -> UPoly<F::Elem> {
    let mut pt = pt.to_vec();
    pt[var] = f.zero();
    upoly::trim(f, p.coefficients_in(f, var).iter().map(|c| c.eval(f, &pt)).collect())
}

fn single_root<F: FiniteField>(f: &F, polys: &[UPoly<F::Elem>]) -> Result<Option<F::Elem>> {
    let mut g: UPoly<F::Elem> = vec![];
    for p in polys {
        g = upoly::gcd(f, &g, p);
    }
    match upoly::degree(&g) {
        Some(0) => Ok(None),
        Some(1) => Ok(Some(f.neg(&f.div(&g[0], &g[1]).unwrap()))),
        _ => Err(Error::GenericityFailure("fibre of the projection is not a single point".into())),
    }
}

enum Attempt {
    Done(CurveDivisor),
    Retry,
    Exhausted(u32),
}

fn quadric_divisor(c: &CurveModel<PrimeField>, f: &MultiPoly<u64>, cap: u32) -> Result<CurveDivisor> {
    let fp = &c.field;
    let (q1, q2) = c.quadrics().unwrap();
    let target = c.degree * f.degree();
    let mut exhausted = None;
    for seed in 0..FRAME_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(0xd1f1_5000 + seed);
        let cols: Vec<Vec<u64>> = if seed == 0 {
            (0..4).map(|j| (0..4).map(|i| u64::from(i == j)).collect()).collect()
        } else {
            (0..4).map(|_| (0..4).map(|_| fp.random(&mut rng)).collect()).collect()
        };
        let m = matrix::Matrix::from_rows((0..4).map(|i| cols.iter().map(|col| col[i]).collect()).collect(), 4);
        if matrix::determinant(fp, &m) == 0 {
            continue;
        }
        match quadric_attempt(c, q1, q2, f, &cols, cap, target) {
            Ok(Attempt::Done(d)) => return Ok(d),
            Ok(Attempt::Exhausted(r)) => exhausted = Some(r),
            Ok(Attempt::Retry) | Err(Error::GenericityFailure(_)) => {}
            Err(e) => return Err(e),
        }
    }
    match exhausted {
        Some(r) => Err(Error::ExtensionExhausted(cap, format!("support point of degree {r}"))),
        None => Err(Error::GenericityFailure(format!("no projection frame resolved the divisor over {}", fp.name()))),
    }
}

fn quadric_attempt(
    c: &CurveModel<PrimeField>,
    q1: &MultiPoly<u64>,
    q2: &MultiPoly<u64>,
    f: &MultiPoly<u64>,
    cols: &[Vec<u64>],
    cap: u32,
    target: u32,
) -> Result<Attempt> {
    let fp = &c.field;
    let a1 = q1.change_frame(fp, cols);
    let a2 = q2.change_frame(fp, cols);
    let af = f.change_frame(fp, cols);
    let u3sq = crate::algebra::Monomial([0, 0, 0, 2]);
    if a1.coeff(fp, &u3sq) == 0 {
        return Ok(Attempt::Retry);
    }
    let r12 = form_resultant(fp, &a1, &a2, 3)?;
    if r12.coeff(fp, &crate::algebra::Monomial([0, 0, 4, 0])) == 0 {
        return Ok(Attempt::Retry);
    }
    let rf = form_resultant(fp, &a1, &af, 3)?;
    if rf.is_zero() {
        return Ok(Attempt::Retry);
    }
    let e = form_resultant(fp, &r12, &rf, 2)?;
    if e.is_zero() {
        return Ok(Attempt::Retry);
    }
    let e = to_binary(fp, &e, [0, 1]);
    let (u, inf) = resultant::dehomogenize_binary(fp, &e);
    let mut heads: Vec<(u32, Option<UPoly<u64>>)> = vec![];
    if inf > 0 {
        heads.push((1, None));
    }
    for (h, _) in ffpoly::factor(fp, &u) {
        heads.push((upoly::degree(&h).unwrap() as u32, Some(h)));
    }
    let too_big = heads.iter().map(|(r, _)| *r).filter(|&r| r > cap).max();
    let mut ext = Extensions::new(c);
    for &(r, _) in heads.iter().filter(|(r, _)| *r <= cap) {
        ext.get(r)?;
    }
    let ext = &ext;
    let resolved: Vec<Result<Option<DivisorPoint>>> = heads
        .par_iter()
        .filter(|(r, _)| *r <= cap)
        .map(|(r, h)| {
            let (g, cg) = &ext.cache[r];
            let lift = |p: &MultiPoly<u64>| p.map_coeffs(g, |x| g.embed(x));
            let head = match h {
                None => vec![g.one(), g.zero()],
                Some(h) => vec![first_root(g, h)?, g.one()],
            };
            let mut pt = vec![head[0].clone(), head[1].clone(), g.zero(), g.zero()];
            let (b12, bf) = (lift(&r12), lift(&rf));
            let Some(u2) = single_root(g, &[restrict(g, &b12, 2, &pt), restrict(g, &bf, 2, &pt)])? else {
                return Ok(None);
            };
            pt[2] = u2;
            let polys: Vec<UPoly<Vec<u64>>> = [&a1, &a2, &af].iter().map(|p| restrict(g, &lift(p), 3, &pt)).collect();
            let Some(u3) = single_root(g, &polys)? else {
                return Ok(None);
            };
            pt[3] = u3;
            let x: Vec<Vec<u64>> = (0..4)
                .map(|i| {
                    (0..4).fold(g.zero(), |acc, j| g.add(&acc, &g.mul(&g.embed(&cols[j][i]), &pt[j])))
                })
                .collect();
            let x = normalize_point(g, &x);
            let m = multiplicity(cg, &lift(f), &x)?;
            Ok(Some(DivisorPoint { field: g.clone(), point: x, residue_degree: *r, multiplicity: m }))
        })
        .collect();
    let mut points = vec![];
    for p in resolved {
        if let Some(p) = p? {
            if !points.iter().any(|q: &DivisorPoint| q.field == p.field && q.point == p.point) {
                points.push(p);
            }
        }
    }
    let d = finish(points);
    let total = d.total_degree();
    if total == target {
        Ok(Attempt::Done(d))
    } else if let Some(r) = too_big.filter(|_| total < target) {
        Ok(Attempt::Exhausted(r))
    } else {
        Ok(Attempt::Retry)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::{parse, VAR_NAMES};
    use crate::curves::sample::sample_points;

    #[test]
    fn twisted_cubic_plane_w() {
        let f = PrimeField::new(7).unwrap();
        let c = CurveModel::twisted_cubic(f).unwrap();
        let w = parse(&f, 4, &VAR_NAMES, "w").unwrap();
        let d = divisor_on_curve(&c, &w, DEFAULT_EXTENSION_CAP).unwrap();
        assert_eq!(d.total_degree(), 3);
        assert_eq!(d.concentrated_at(), Some((vec![1, 0, 0, 0], 3)));
    }

    #[test]
    fn plane_through_four_points() {
        let f = PrimeField::new(101).unwrap();
        let c = CurveModel::weierstrass(f, 2, 3).unwrap();
        let pts = sample_points(&c, 12);
        // the plane through the first three points meets C in a fourth
        let ker = matrix::kernel(&f, &pts[..3], 4);
        let plane = MultiPoly::linear(&f, &ker[0]);
        let d = divisor_on_curve(&c, &plane, DEFAULT_EXTENSION_CAP).unwrap();
        assert_eq!(d.total_degree(), 4);
        for p in &pts[..3] {
            assert!(d.points.iter().any(|q| q.rational().as_ref() == Some(p)));
        }
        for q in &d.points {
            let lifted = plane.map_coeffs(&q.field, |x| q.field.embed(x));
            assert!(q.field.is_zero(&lifted.eval(&q.field, &q.point)));
        }
    }

    #[test]
    fn quadric_section_degree() {
        let f = PrimeField::new(31).unwrap();
        let c = CurveModel::weierstrass(f, 1, 5).unwrap();
        let g = parse(&f, 4, &VAR_NAMES, "x*y + 3*z^2 - w^2 + x*w").unwrap();
        let d = divisor_on_curve(&c, &g, DEFAULT_EXTENSION_CAP).unwrap();
        assert_eq!(d.total_degree(), 8);
    }
}
