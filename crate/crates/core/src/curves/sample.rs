//! Deterministic enumeration of points on curves over finite fields.

use super::{CurveKind, CurveModel};
use crate::algebra::ffpoly;
use crate::algebra::field::normalize_point;
use crate::algebra::upoly::{self, UPoly};
use crate::algebra::{FiniteField, GaloisField, MultiPoly, PrimeField};
use crate::error::{Error, Result};

fn restrict_last<F: FiniteField>(f: &F, q: &MultiPoly<F::Elem>, head: &[F::Elem]) -> UPoly<F::Elem> {
    let coeffs = q.coefficients_in(f, 3);
    let mut pt = head.to_vec();
    pt.push(f.zero());
    upoly::trim(f, coeffs.iter().map(|c| c.eval(f, &pt)).collect())
}

/// Up to n points of the curve over its own field, in enumeration order:
/// the parameter line for parametric models, and otherwise the fibres of
/// the projection from (0:0:0:1) over P^2 in index order.
pub fn sample_points<F: FiniteField>(c: &CurveModel<F>, n: usize) -> Vec<Vec<F::Elem>> {
    let f = &c.field;
    let mut out: Vec<Vec<F::Elem>> = vec![];
    let push = |pt: Vec<F::Elem>, out: &mut Vec<Vec<F::Elem>>| {
        let pt = normalize_point(f, &pt);
        if !out.contains(&pt) {
            out.push(pt);
        }
    };
    match &c.kind {
        CurveKind::ParametricRational { .. } => {
            for s in f.elements() {
                if out.len() >= n {
                    break;
                }
                push(c.param_point(&s, &f.one()).unwrap(), &mut out);
            }
            if out.len() < n {
                push(c.param_point(&f.one(), &f.zero()).unwrap(), &mut out);
            }
        }
        CurveKind::QuadricIntersection { q1, q2 } | CurveKind::WeierstrassEmbedded { q1, q2, .. } => {
            let center = vec![f.zero(), f.zero(), f.zero(), f.one()];
            if c.contains_point(&center) {
                push(center, &mut out);
            }
            let q = f.order();
            let heads = std::iter::once(vec![f.zero(), f.zero(), f.one()])
                .chain((0..q).map(move |i| vec![f.zero(), f.one(), f.element(i)]))
                .chain((0..q * q).map(move |i| vec![f.one(), f.element(i / q), f.element(i % q)]));
            for head in heads {
                if out.len() >= n {
                    break;
                }
                let a = restrict_last(f, q1, &head);
                let b = restrict_last(f, q2, &head);
                let g = upoly::gcd(f, &a, &b);
                if g.is_empty() {
                    continue;
                }
                for r in ffpoly::distinct_roots(f, &g) {
                    let mut pt = head.clone();
                    pt.push(r);
                    push(pt, &mut out);
                }
            }
        }
    }
    out.truncate(n);
    out
}

/// n points of a curve over F_p, over the smallest extension F_{p^e},
/// e <= max_ext, that has enough of them.
pub fn sample_points_ext(
    c: &CurveModel<PrimeField>,
    n: usize,
    max_ext: u32,
) -> Result<(GaloisField, Vec<Vec<Vec<u64>>>)> {
    let p = c.field.p();
    for e in 1..=max_ext {
        let g = GaloisField::galois(p, e as usize)?;
        let cg = c.map_field(&g, |x| g.embed(x))?;
        let pts = sample_points(&cg, n);
        if pts.len() >= n {
            return Ok((g, pts));
        }
    }
    Err(Error::ExtensionExhausted(max_ext, format!("fewer than {n} points over F_{p}^{max_ext}")))
}

/// Jacobian rank 2 at the first n enumerated points.
pub fn check_smooth_samples<F: FiniteField>(c: &CurveModel<F>, n: usize) -> Result<usize> {
    let pts = sample_points(c, n);
    for pt in &pts {
        if !c.contains_point(pt) {
            return Err(Error::Internal("sampled point off the curve".into()));
        }
        if c.jacobian_rank(pt) != 2 {
            return Err(Error::DegenerateCurve(format!("singular point {}", crate::algebra::field::format_point(&c.field, pt))));
        }
    }
    Ok(pts.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_cubic_over_f7() {
        let f = PrimeField::new(7).unwrap();
        let c = CurveModel::twisted_cubic(f).unwrap();
        let pts = sample_points(&c, 8);
        assert_eq!(pts.len(), 8);
        assert!(pts.iter().all(|p| c.contains_point(p)));
        assert_eq!(sample_points(&c, 100).len(), 8);
    }

    #[test]
    fn elliptic_points_satisfy_quadrics() {
        let f = PrimeField::new(101).unwrap();
        let c = CurveModel::weierstrass(f, 2, 3).unwrap();
        let pts = sample_points(&c, 30);
        assert_eq!(pts.len(), 30);
        let (q1, q2) = c.quadrics().unwrap();
        for p in &pts {
            assert_eq!(q1.eval(&c.field, p), 0);
            assert_eq!(q2.eval(&c.field, p), 0);
        }
        assert_eq!(check_smooth_samples(&c, 20).unwrap(), 20);
    }

    #[test]
    fn extension_exhausted() {
        let f = PrimeField::new(7).unwrap();
        let c = CurveModel::twisted_cubic(f).unwrap();
        assert!(matches!(sample_points_ext(&c, 60, 2), Err(Error::ExtensionExhausted(2, _))));
        let (g, pts) = sample_points_ext(&c, 20, 2).unwrap();
        assert_eq!(g.ext_degree(), 2);
        assert_eq!(pts.len(), 20);
    }
}
