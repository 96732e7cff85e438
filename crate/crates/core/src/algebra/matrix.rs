//! Dense row-major matrices over a field: reduced row echelon form, rank,
//! kernels and linear solves.

use super::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Matrix { rows, cols, data: vec![e; rows * cols] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = Matrix::filled(n, n, f.zero());
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows);
    let mut out = Matrix::filled(a.rows, b.cols, f.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let v = f.add(out.get(i, j), &f.mul(x, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    (0..a.rows).map(|i| super::field::dot(f, a.row(i), v)).collect()
}

/// In-place reduced row echelon form; returns pivot columns. Zero rows are
/// moved to the bottom.
pub fn rref_in_place<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).unwrap();
        for j in c..cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..cols {
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Unique reduced echelon rows (zero rows dropped) and the rank.
pub fn rref<F: Field>(f: &F, rows: &[Vec<F::Elem>], cols: usize) -> (Vec<Vec<F::Elem>>, usize) {
    let mut m = Matrix::from_rows(rows.to_vec(), cols);
    let piv = rref_in_place(f, &mut m);
    let r = piv.len();
    (m.to_rows().into_iter().take(r).collect(), r)
}

pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>], cols: usize) -> usize {
    let mut m = Matrix::from_rows(rows.to_vec(), cols);
    rref_in_place(f, &mut m).len()
}

/// Basis of {x : row . x = 0 for all rows}, in reduced echelon form.
pub fn kernel<F: Field>(f: &F, rows: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let (ech, r) = rref(f, rows, cols);
    let mut pivots = Vec::with_capacity(r);
    for row in &ech {
        pivots.push(row.iter().position(|x| !f.is_zero(x)).unwrap());
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (row, &pc) in ech.iter().zip(&pivots) {
            v[pc] = f.neg(&row[free]);
        }
        basis.push(v);
    }
    let (ker, _) = rref(f, &basis, cols);
    ker
}

/// Left kernel: coefficient vectors c with sum c_i row_i = 0.
pub fn left_kernel<F: Field>(f: &F, rows: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let m = Matrix::from_rows(rows.to_vec(), cols).transpose();
    kernel(f, &m.to_rows(), rows.len())
}

/// One solution x of sum_i x_i rows_i = target, if any.
pub fn solve_combination<F: Field>(
    f: &F,
    rows: &[Vec<F::Elem>],
    target: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let n = rows.len();
    let cols = target.len();
    // augmented system: columns are the given rows, plus the target column
    let mut aug = Matrix::filled(cols, n + 1, f.zero());
    for (j, r) in rows.iter().enumerate() {
        for i in 0..cols {
            aug.set(i, j, r[i].clone());
        }
    }
    for i in 0..cols {
        aug.set(i, n, target[i].clone());
    }
    let piv = rref_in_place(f, &mut aug);
    if piv.contains(&n) {
        return None;
    }
    let mut x = vec![f.zero(); n];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = aug.get(r, n).clone();
    }
    Some(x)
}

pub fn determinant<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !f.is_zero(a.get(i, c))) else {
            return f.zero();
        };
        if pr != c {
            for j in 0..n {
                a.data.swap(pr * n + j, c * n + j);
            }
            det = f.neg(&det);
        }
        let piv = a.get(c, c).clone();
        det = f.mul(&det, &piv);
        let inv = f.inv(&piv).unwrap();
        for i in c + 1..n {
            let factor = f.mul(a.get(i, c), &inv);
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..n {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    det
}

pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.rows;
    let mut aug = Matrix::filled(n, 2 * n, f.zero());
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, f.one());
    }
    let piv = rref_in_place(f, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    let mut out = Matrix::filled(n, n, f.zero());
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::prime::PrimeField;
    use crate::algebra::rational::Rationals;

    #[test]
    fn identity_is_its_own_rref() {
        let f = PrimeField::new(7).unwrap();
        let id = identity(&f, 3).to_rows();
        let (e, r) = rref(&f, &id, 3);
        assert_eq!(r, 3);
        assert_eq!(e, id);
    }

    #[test]
    fn proportional_rows_over_q() {
        let q = Rationals;
        let rows = vec![
            vec![q.from_i64(1), q.from_i64(2)],
            vec![q.from_i64(2), q.from_i64(4)],
        ];
        let (e, r) = rref(&q, &rows, 2);
        assert_eq!(r, 1);
        assert_eq!(e, vec![vec![q.from_i64(1), q.from_i64(2)]]);
    }

    #[test]
    fn kernel_dimensions() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(kernel(&f, &[vec![0, 0, 0], vec![0, 0, 0]], 3).len(), 3);
        assert_eq!(kernel(&f, &identity(&f, 4).to_rows(), 4).len(), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let f = PrimeField::new(101).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]], 3);
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv), identity(&f, 3));
        assert_eq!(determinant(&f, &m), f.from_i64(1));
    }

    #[test]
    fn solve_combination_finds_coefficients() {
        let f = PrimeField::new(13).unwrap();
        let rows = vec![vec![1, 0, 2], vec![0, 1, 1]];
        let t = vec![3, 5, f.add(&6, &5)];
        let x = solve_combination(&f, &rows, &t).unwrap();
        assert_eq!(x, vec![3, 5]);
        assert!(solve_combination(&f, &rows, &[0, 0, 1]).is_none());
    }
}
