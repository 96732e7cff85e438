//! Absolute irreducibility of plane quartics over finite fields: searches
//! for line and conic components over a splitting field.

use rand::Rng;

use crate::algebra::resultant::dehomogenize_binary;
use crate::algebra::upoly;
use crate::algebra::{ffpoly, matrix, FiniteField, GradedPiece, MultiPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting {
    Line,
    Conic,
}

fn restrict_to_line<L: FiniteField>(l: &L, form: &MultiPoly<L::Elem>, a: &[L::Elem], b: &[L::Elem]) -> MultiPoly<L::Elem> {
    // t b + u a
    let images: Vec<MultiPoly<L::Elem>> = (0..3).map(|i| MultiPoly::linear(l, &[b[i].clone(), a[i].clone()])).collect();
    form.compose(l, &images)
}

fn point_on<L: FiniteField>(l: &L, a: &[L::Elem], b: &[L::Elem], t: &L::Elem) -> Vec<L::Elem> {
    (0..3).map(|i| l.add(&a[i], &l.mul(t, &b[i]))).collect()
}

/// A line and the points where a square-free restriction of `form` vanishes.
struct Transversal<E> {
    roots: Vec<Vec<E>>,
}

fn transversal<L: FiniteField, R: Rng>(l: &L, form: &MultiPoly<L::Elem>, base: &[L::Elem], rng: &mut R) -> Result<Option<Transversal<L::Elem>>> {
    let mut pick = || (0..3).map(|_| base[rng.gen_range(0..base.len())].clone()).collect::<Vec<_>>();
    for _ in 0..64 {
        let (a, b) = (pick(), pick());
        if matrix::rank(l, &[a.clone(), b.clone()], 3) < 2 {
            continue;
        }
        let r = restrict_to_line(l, form, &a, &b);
        if r.is_zero() {
            return Ok(None);
        }
        let (u, inf) = dehomogenize_binary(l, &r);
        if inf != 0 {
            continue;
        }
        let du = upoly::derivative(l, &u);
        if upoly::degree(&upoly::gcd(l, &u, &du)) != Some(0) {
            continue;
        }
        let roots = ffpoly::distinct_roots(l, &u).iter().map(|t| point_on(l, &a, &b, t)).collect();
        return Ok(Some(Transversal { roots }));
    }
    Err(Error::GenericityFailure("no transversal line found".into()))
}

fn vanishes_on_line<L: FiniteField>(l: &L, form: &MultiPoly<L::Elem>, p1: &[L::Elem], p2: &[L::Elem]) -> bool {
    restrict_to_line(l, form, p1, p2).is_zero()
}

fn conic_through<L: FiniteField>(l: &L, pts: &[&Vec<L::Elem>]) -> Option<MultiPoly<L::Elem>> {
    let piece = GradedPiece::get(3, 2);
    let rows: Vec<Vec<L::Elem>> = pts
        .iter()
        .map(|p| {
            piece
                .monomials
                .iter()
                .map(|m| (0..3).fold(l.one(), |acc, i| l.mul(&acc, &l.pow(&p[i], m.0[i] as u128))))
                .collect()
        })
        .collect();
    let ker = matrix::kernel(l, &rows, piece.dim());
    (ker.len() == 1).then(|| MultiPoly::from_dense(l, 3, 2, &ker[0]))
}

fn pairs<T>(v: &[T]) -> Vec<(&T, &T)> {
    let mut out = vec![];
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            out.push((&v[i], &v[j]));
        }
    }
    out
}

/// A component of degree at most 2 of the ternary quartic `form`, searched
/// over `l`. `l` must contain the fields of definition of line components
/// (degree dividing 4 over the coefficient field) and the points where
/// conic components (degree at most 2) meet lines of the coefficient field.
/// `base` lists the coefficient-field elements used to draw test lines.
pub fn find_component<L: FiniteField, R: Rng>(
    l: &L,
    form: &MultiPoly<L::Elem>,
    base: &[L::Elem],
    rng: &mut R,
) -> Result<Option<Splitting>> {
    if form.nvars() != 3 || form.degree() != 4 || form.is_zero() {
        return Err(Error::InvalidInput("need a nonzero ternary quartic".into()));
    }
    let mut lines = vec![];
    while lines.len() < 3 {
        match transversal(l, form, base, rng)? {
            None => return Ok(Some(Splitting::Line)),
            Some(t) => lines.push(t),
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for p1 in &lines[i].roots {
            for p2 in &lines[j].roots {
                if matrix::rank(l, &[p1.clone(), p2.clone()], 3) == 2 && vanishes_on_line(l, form, p1, p2) {
                    return Ok(Some(Splitting::Line));
                }
            }
        }
    }
    for (a1, a2) in pairs(&lines[0].roots) {
        for (b1, b2) in pairs(&lines[1].roots) {
            for c in &lines[2].roots {
                let Some(q) = conic_through(l, &[a1, a2, b1, b2, c]) else { continue };
                if form.div_exact(l, &q).is_some() {
                    return Ok(Some(Splitting::Conic));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::parse;
    use crate::algebra::{GaloisField, PrimeField};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn over_ext(factors: &[&str]) -> (GaloisField, MultiPoly<Vec<u64>>, Vec<Vec<u64>>) {
        let f = PrimeField::new(13).unwrap();
        let form = factors
            .iter()
            .map(|s| parse(&f, 3, &["x", "y", "z"], s).unwrap())
            .reduce(|a, b| a.mul(&f, &b))
            .unwrap();
        let l = GaloisField::galois(13, 4).unwrap();
        let base = (0..13).map(|i| l.embed(&i)).collect();
        (l.clone(), form.map_coeffs(&l, |c| l.embed(c)), base)
    }

    #[test]
    fn detects_components() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (l, g, base) = over_ext(&["x^4 + y^4 + z^4"]);
        assert_eq!(find_component(&l, &g, &base, &mut rng).unwrap(), None);
        // the line pair splits over F_13^2 only
        let (l, g, base) = over_ext(&["x^2 - 2*y^2", "x^2 + y^2 + z^2"]);
        assert_eq!(find_component(&l, &g, &base, &mut rng).unwrap(), Some(Splitting::Line));
        let (l, g, base) = over_ext(&["x^2 + y^2 - 2*z^2", "x^2 + 3*y*z + z^2"]);
        assert_eq!(find_component(&l, &g, &base, &mut rng).unwrap(), Some(Splitting::Conic));
        // (x^2 + 2 y^2)^2 - 2 z^4, two conics conjugate over F_13^2
        let (l, g, base) = over_ext(&["x^4 + 4*x^2*y^2 + 4*y^4 - 2*z^4"]);
        assert_eq!(find_component(&l, &g, &base, &mut rng).unwrap(), Some(Splitting::Conic));
        let (l, g, base) = over_ext(&["x - y", "x^3 + y^3 + z^3"]);
        assert_eq!(find_component(&l, &g, &base, &mut rng).unwrap(), Some(Splitting::Line));
    }
}
