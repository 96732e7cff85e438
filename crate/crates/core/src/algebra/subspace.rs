use super::field::Field;
use super::matrix;
use super::mpoly::{GradedPiece, MultiPoly};
use crate::error::{Error, Result};

/// A subspace of the degree-`degree` forms in `nvars` variables, stored as
/// reduced echelon rows over the descending monomial basis. The echelon
/// form is unique, so equality of subspaces is equality of this struct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis<E> {
    pub nvars: usize,
    pub degree: u32,
    rows: Vec<Vec<E>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    AContainsB,
    BContainsA,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub relation: Relation,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_sum: usize,
    pub dim_intersection: usize,
}

impl<E: Clone + PartialEq + std::fmt::Debug> SubspaceBasis<E> {
    pub fn ambient_dim(&self) -> usize {
        GradedPiece::get(self.nvars, self.degree).dim()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn empty(nvars: usize, degree: u32) -> Self {
        SubspaceBasis { nvars, degree, rows: vec![] }
    }

    pub fn from_vectors<F: Field<Elem = E>>(f: &F, nvars: usize, degree: u32, vecs: &[Vec<E>]) -> Self {
        let n = GradedPiece::get(nvars, degree).dim();
        let (rows, _) = matrix::rref(f, vecs, n);
        SubspaceBasis { nvars, degree, rows }
    }

    pub fn span<F: Field<Elem = E>>(f: &F, nvars: usize, degree: u32, polys: &[MultiPoly<E>]) -> Self {
        let vecs: Vec<Vec<E>> = polys
            .iter()
            .map(|p| {
                assert!(p.is_zero() || (p.degree() == degree && p.nvars() == nvars), "form outside the piece");
                if p.is_zero() {
                    vec![f.zero(); GradedPiece::get(nvars, degree).dim()]
                } else {
                    p.to_dense(f)
                }
            })
            .collect();
        Self::from_vectors(f, nvars, degree, &vecs)
    }

    pub fn whole<F: Field<Elem = E>>(f: &F, nvars: usize, degree: u32) -> Self {
        let n = GradedPiece::get(nvars, degree).dim();
        Self::from_vectors(f, nvars, degree, &matrix::identity(f, n).to_rows())
    }

    pub fn polys<F: Field<Elem = E>>(&self, f: &F) -> Vec<MultiPoly<E>> {
        self.rows.iter().map(|r| MultiPoly::from_dense(f, self.nvars, self.degree, r)).collect()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::AmbientMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.nvars, self.degree, other.nvars, other.degree
            )));
        }
        Ok(())
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Ok(Self::from_vectors(f, self.nvars, self.degree, &all))
    }

    pub fn with<F: Field<Elem = E>>(&self, f: &F, extra: &[MultiPoly<E>]) -> Self {
        let mut all = self.rows.clone();
        all.extend(extra.iter().map(|p| p.to_dense(f)));
        Self::from_vectors(f, self.nvars, self.degree, &all)
    }

    pub fn contains_vector<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        let mut r = v.to_vec();
        for row in &self.rows {
            let pc = row.iter().position(|x| !f.is_zero(x)).unwrap();
            if !f.is_zero(&r[pc]) {
                let c = r[pc].clone();
                for (j, x) in row.iter().enumerate() {
                    r[j] = f.sub(&r[j], &f.mul(&c, x));
                }
            }
        }
        r.iter().all(|x| f.is_zero(x))
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, p: &MultiPoly<E>) -> bool {
        if p.is_zero() {
            return true;
        }
        p.nvars() == self.nvars && p.degree() == self.degree && self.contains_vector(f, &p.to_dense(f))
    }

    pub fn intersection<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        // solve a.A = b.B via the left kernel of [A; B]
        let mut stacked = self.rows.clone();
        stacked.extend(other.rows.iter().cloned());
        let n = self.ambient_dim();
        let lk = matrix::left_kernel(f, &stacked, n);
        let vecs: Vec<Vec<E>> = lk
            .iter()
            .map(|c| {
                let mut v = vec![f.zero(); n];
                for (ci, row) in c.iter().zip(&self.rows) {
                    if f.is_zero(ci) {
                        continue;
                    }
                    for j in 0..n {
                        v[j] = f.add(&v[j], &f.mul(ci, &row[j]));
                    }
                }
                v
            })
            .collect();
        Ok(Self::from_vectors(f, self.nvars, self.degree, &vecs))
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        let mut out = format!("subspace nvars={} degree={} dim={}\n", self.nvars, self.degree, self.dim());
        for p in self.polys(f) {
            out.push_str("  ");
            out.push_str(&p.canonical(f));
            out.push('\n');
        }
        out
    }
}

pub fn subspace_compare<F: Field>(
    f: &F,
    a: &SubspaceBasis<F::Elem>,
    b: &SubspaceBasis<F::Elem>,
) -> Result<Comparison> {
    let s = a.sum(f, b)?;
    let dim_sum = s.dim();
    let dim_intersection = a.dim() + b.dim() - dim_sum;
    let relation = if a == b {
        Relation::Equal
    } else if dim_sum == a.dim() {
        Relation::AContainsB
    } else if dim_sum == b.dim() {
        Relation::BContainsA
    } else {
        Relation::Incomparable
    };
    Ok(Comparison { relation, dim_a: a.dim(), dim_b: b.dim(), dim_sum, dim_intersection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::{parse, VAR_NAMES};
    use crate::algebra::prime::PrimeField;

    #[test]
    fn compare_with_extension() {
        let f = PrimeField::new(7).unwrap();
        let a = SubspaceBasis::span(&f, 3, 2, &[parse(&f, 3, &VAR_NAMES, "x^2 + y*z").unwrap()]);
        let v = parse(&f, 3, &VAR_NAMES, "z^2").unwrap();
        let b = a.with(&f, &[v]);
        let c = subspace_compare(&f, &a, &b).unwrap();
        assert_eq!(c.relation, Relation::BContainsA);
        assert_eq!(c.dim_b - c.dim_a, 1);
        assert_eq!(subspace_compare(&f, &a, &a).unwrap().relation, Relation::Equal);
    }

    #[test]
    fn intersection_dimension() {
        let f = PrimeField::new(7).unwrap();
        let p = |s: &str| parse(&f, 3, &VAR_NAMES, s).unwrap();
        let a = SubspaceBasis::span(&f, 3, 1, &[p("x"), p("y")]);
        let b = SubspaceBasis::span(&f, 3, 1, &[p("x + y"), p("z")]);
        let i = a.intersection(&f, &b).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&f, &p("x + y")));
    }
}
