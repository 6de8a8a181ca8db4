use std::fmt;

use super::scalar::{Field, Scalar};
use super::sparse::{LinMap, SVec};
use super::LinalgError;

/// Dense row-major matrix over the session field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Matrix, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(LinalgError::DimensionMismatch("entry outside the session field".into()));
        }
        Ok(Matrix { field, rows, cols, entries })
    }

    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flatten().map(|x| field.int(*x)).collect();
        Matrix { field, rows: r, cols: c, entries }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn to_linmap(&self) -> LinMap {
        let columns = (0..self.cols)
            .map(|j| (0..self.rows).filter(|i| !self.get(*i, j).is_zero()).map(|i| (i, self.get(i, j).clone())).collect())
            .collect();
        LinMap::from_columns(self.field, self.rows, columns)
    }

    pub fn from_linmap(m: &LinMap) -> Matrix {
        let mut out = Matrix::zero(m.field, m.rows, m.cols);
        for (j, c) in m.columns.iter().enumerate() {
            for (i, x) in c {
                out.set(*i, j, x.clone());
            }
        }
        out
    }

    /// Matrix whose columns are the given sparse vectors of length `rows`.
    pub fn from_sparse_columns(field: Field, rows: usize, cols: &[SVec]) -> Matrix {
        Matrix::from_linmap(&LinMap::from_columns(field, rows, cols.to_vec()))
    }

    fn dense_to_svec(&self, b: &[Scalar]) -> SVec {
        b.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
    }
}

/// Exact rank.
pub fn rank(m: &Matrix) -> usize {
    m.to_linmap().rank()
}

/// Columns form a basis of `ker m`.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let k = m.to_linmap().kernel();
    Matrix::from_sparse_columns(m.field, m.cols, &k)
}

/// Some `x` with `m·x = b`, or `None` when `b` is outside the image.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch(format!("right-hand side of length {} for {} rows", b.len(), m.rows)));
    }
    let x = m.to_linmap().solve(&m.dense_to_svec(b));
    Ok(x.map(|sv| {
        let mut out = vec![m.field.zero(); m.cols];
        for (i, v) in sv {
            out[i] = v;
        }
        out
    }))
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(Q, 2)), 2);
        assert_eq!(rank(&Matrix::zero(Q, 3, 4)), 0);
        assert_eq!(rank(&Matrix::from_rows(Q, &[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(Q, 3)).cols(), 0);
        assert_eq!(kernel_basis(&Matrix::zero(Q, 2, 2)).cols(), 2);
        let k = kernel_basis(&Matrix::from_rows(Q, &[vec![1, 1]]));
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0), &-k.get(1, 0));
        assert!(!k.get(0, 0).is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = vec![Q.int(3), Q.int(-1)];
        assert_eq!(solve(&Matrix::identity(Q, 2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&Matrix::zero(Q, 2, 2), &b).unwrap(), None);
        let x = solve(&Matrix::from_rows(Q, &[vec![2]]), &[Q.int(1)]).unwrap().unwrap();
        assert_eq!(x, vec![Q.frac(1, 2).unwrap()]);
        assert!(solve(&Matrix::identity(Q, 2), &[Q.int(1)]).is_err());
    }

    #[test]
    fn prime_field_rank_drops() {
        let f = Field::prime(3).unwrap();
        assert_eq!(rank(&Matrix::from_rows(f, &[vec![1, 1], vec![1, 4]])), 1);
        assert_eq!(rank(&Matrix::from_rows(Q, &[vec![1, 1], vec![1, 4]])), 2);
    }
}
