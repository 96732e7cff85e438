//! Limits at t = 0 of subspaces defined over F(t).

use super::field::Field;
use super::funcfield::{RatFn, RationalFunctionField};
use super::matrix;
use super::subspace::SubspaceBasis;
use super::upoly::{self, UPoly};
use crate::error::{Error, Result};

/// A subspace of a graded piece over F(t), rows in reduced echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSubspace<F: Field> {
    pub field: RationalFunctionField<F>,
    pub nvars: usize,
    pub degree: u32,
    pub rows: Vec<Vec<RatFn<F::Elem>>>,
}

impl<F: Field> ParamSubspace<F> {
    pub fn new(field: RationalFunctionField<F>, nvars: usize, degree: u32, rows: &[Vec<RatFn<F::Elem>>]) -> Self {
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        let (ech, _) = matrix::rref(&field, rows, n);
        ParamSubspace { field, nvars, degree, rows: ech }
    }

    /// From rows that are polynomial in t (entry = coefficient list in t).
    pub fn from_polynomial_rows(base: &F, nvars: usize, degree: u32, rows: &[Vec<UPoly<F::Elem>>]) -> Self {
        let k = RationalFunctionField::new(base.clone(), "t");
        let lifted: Vec<Vec<RatFn<F::Elem>>> =
            rows.iter().map(|r| r.iter().map(|p| k.from_poly(p.clone())).collect()).collect();
        Self::new(k, nvars, degree, &lifted)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

fn valuation<F: Field>(f: &F, row: &[UPoly<F::Elem>]) -> Option<usize> {
    row.iter()
        .filter(|p| !p.is_empty())
        .map(|p| p.iter().position(|c| !f.is_zero(c)).unwrap())
        .min()
}

fn shift_down<E: Clone>(row: &[UPoly<E>], v: usize) -> Vec<UPoly<E>> {
    row.iter().map(|p| if p.is_empty() { vec![] } else { p[v..].to_vec() }).collect()
}

fn at_zero<F: Field>(f: &F, row: &[UPoly<F::Elem>]) -> Vec<F::Elem> {
    row.iter().map(|p| p.first().cloned().unwrap_or_else(|| f.zero())).collect()
}

/// Flat limit of the span of the given rows over F(t), in F^n.
pub fn flat_limit_vectors<F: Field>(k: &RationalFunctionField<F>, rows: &[Vec<RatFn<F::Elem>>], n: usize) -> Result<Vec<Vec<F::Elem>>> {
    let f = k.base();
    let (ech, r) = matrix::rref(k, rows, n);
    // clear denominators and t-content row by row
    let mut prows: Vec<Vec<UPoly<F::Elem>>> = ech
        .iter()
        .map(|row| {
            let mut l: UPoly<F::Elem> = vec![f.one()];
            for e in row {
                let g = upoly::gcd(f, &l, &e.den);
                l = upoly::div_exact(f, &upoly::mul(f, &l, &e.den), &g).unwrap();
            }
            let pr: Vec<UPoly<F::Elem>> = row
                .iter()
                .map(|e| upoly::mul(f, &e.num, &upoly::div_exact(f, &l, &e.den).unwrap()))
                .collect();
            let v = valuation(f, &pr).expect("nonzero echelon row");
            shift_down(&pr, v)
        })
        .collect();
    loop {
        let m0: Vec<Vec<F::Elem>> = prows.iter().map(|r| at_zero(f, r)).collect();
        let deps = matrix::left_kernel(f, &m0, n);
        let Some(c) = deps.first() else { break };
        let pivot = c.iter().rposition(|x| !f.is_zero(x)).unwrap();
        let mut comb: Vec<UPoly<F::Elem>> = vec![vec![]; n];
        for (ci, row) in c.iter().zip(&prows) {
            if f.is_zero(ci) {
                continue;
            }
            for j in 0..n {
                comb[j] = upoly::add(f, &comb[j], &upoly::scale(f, &row[j], ci));
            }
        }
        let v = valuation(f, &comb).ok_or_else(|| Error::Internal("dependent rows in saturation".into()))?;
        if v == 0 {
            return Err(Error::Internal("saturation step did not gain a factor of t".into()));
        }
        prows[pivot] = shift_down(&comb, v);
    }
    let lim: Vec<Vec<F::Elem>> = prows.iter().map(|r| at_zero(f, r)).collect();
    let (out, rank) = matrix::rref(f, &lim, n);
    if rank != r {
        return Err(Error::Internal(format!("flat limit dropped dimension {r} -> {rank}")));
    }
    Ok(out)
}

pub fn flat_limit_subspace<F: Field>(p: &ParamSubspace<F>) -> Result<SubspaceBasis<F::Elem>> {
    let n = super::mpoly::GradedPiece::get(p.nvars, p.degree).dim();
    let rows = flat_limit_vectors(&p.field, &p.rows, n)?;
    Ok(SubspaceBasis::from_vectors(p.field.base(), p.nvars, p.degree, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::prime::PrimeField;

    #[test]
    fn line_through_one_t() {
        let f = PrimeField::new(7).unwrap();
        let k = RationalFunctionField::new(f, "t");
        let rows = vec![vec![k.one(), k.t()]];
        assert_eq!(flat_limit_vectors(&k, &rows, 2).unwrap(), vec![vec![1, 0]]);
    }

    #[test]
    fn saturation_is_forced() {
        let f = PrimeField::new(7).unwrap();
        let k = RationalFunctionField::new(f, "t");
        let t = k.t();
        let rows = vec![vec![t.clone(), k.mul(&t, &t)]];
        assert_eq!(flat_limit_vectors(&k, &rows, 2).unwrap(), vec![vec![1, 0]]);
    }

    #[test]
    fn two_rows_collapsing() {
        let f = PrimeField::new(11).unwrap();
        let k = RationalFunctionField::new(f, "t");
        let t = k.t();
        // span{(1, 0, t), (1, t, 0)} -> contains (0, 1, -1) after saturation
        let rows = vec![vec![k.one(), k.zero(), t.clone()], vec![k.one(), t.clone(), k.zero()]];
        let lim = flat_limit_vectors(&k, &rows, 3).unwrap();
        assert_eq!(lim, vec![vec![1, 0, 0], vec![0, 1, 10]]);
    }
}
