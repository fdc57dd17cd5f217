//! Dense real symmetric matrices with structurally enforced symmetry.

use std::fmt;
use std::ops::Index;

use nalgebra::{DMatrix, DVector};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::types::sets::IndexSet;

/// Relative tolerance for accepting almost-symmetric external input;
/// the two triangles are averaged on ingestion.
const SYMMETRY_TOL: f64 = 1e-12;

/// A dense symmetric `n × n` matrix storing only the upper triangle, so
/// `a[(i, j)] == a[(j, i)]` holds exactly by construction.
///
/// Element access is 0-based; [`IndexSet`]-driven submatrix extraction
/// takes the 1-based sets used everywhere else in the crate.
/// Serialized as a row-major array of full rows.
#[derive(Clone, PartialEq)]
pub struct SymmetricMatrix<T> {
    dim: usize,
    // Upper triangle in row-major order: (i, j) with i <= j.
    data: Vec<T>,
}

#[inline]
fn tri_index(dim: usize, i: usize, j: usize) -> usize {
    let (r, c) = if i <= j { (i, j) } else { (j, i) };
    // Row r starts after dim + (dim-1) + ... + (dim-r+1) entries.
    r * dim - r * (r + 1) / 2 + c
}

impl<T: Real> SymmetricMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        SymmetricMatrix {
            dim,
            data: vec![T::zero(); dim * (dim + 1) / 2],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, T::one());
        }
        m
    }

    /// Fills entries from `f(i, j)` evaluated on the upper triangle only
    /// (`i <= j`, 0-based).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds a matrix from full rows, checking squareness and symmetry.
    /// Asymmetries within `1e-12` relative to the largest entry (as arise
    /// from text round-trips) are averaged away; larger ones are rejected.
    #[allow(clippy::needless_range_loop)]
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::constraint("matrix must have dimension >= 1"));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::constraint(format!(
                "matrix rows must all have length {dim}"
            )));
        }
        let scale = rows
            .iter()
            .flatten()
            .fold(T::one(), |acc, &v| acc.max(v.abs()));
        let tol = scale * T::c(SYMMETRY_TOL);
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let (a, b) = (rows[i][j], rows[j][i]);
                if (a - b).abs() > tol {
                    return Err(Error::constraint(format!(
                        "matrix is not symmetric at ({},{}): {} vs {}",
                        i + 1,
                        j + 1,
                        a.as_f64(),
                        b.as_f64()
                    )));
                }
                m.set(i, j, (a + b) / T::c(2.0));
            }
        }
        Ok(m)
    }

    pub fn from_dmatrix(m: &DMatrix<T>) -> Result<Self> {
        let rows: Vec<Vec<T>> = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[tri_index(self.dim, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        let idx = tri_index(self.dim, i, j);
        self.data[idx] = value;
    }

    pub fn to_dmatrix(&self) -> DMatrix<T> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j))
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    /// Matrix-vector product `A x`.
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).fold(T::zero(), |acc, j| acc + self.get(i, j) * x[j]))
            .collect()
    }

    /// Quadratic form `x' A x`.
    pub fn quad(&self, x: &[T]) -> T {
        self.quad_pair(x, x)
    }

    /// Bilinear form `x' A y`.
    pub fn quad_pair(&self, x: &[T], y: &[T]) -> T {
        let ay = self.mul_vec(y);
        x.iter()
            .zip(ay.iter())
            .fold(T::zero(), |acc, (&xi, &ayi)| acc + xi * ayi)
    }

    /// Principal submatrix on the 1-based index set `s`.
    pub fn principal(&self, s: IndexSet) -> DMatrix<T> {
        self.submatrix(s, s)
    }

    /// Submatrix with 1-based row set `rows` and column set `cols`.
    pub fn submatrix(&self, rows: IndexSet, cols: IndexSet) -> DMatrix<T> {
        let r: Vec<usize> = rows.iter().map(|i| i - 1).collect();
        let c: Vec<usize> = cols.iter().map(|j| j - 1).collect();
        DMatrix::from_fn(r.len(), c.len(), |i, j| self.get(r[i], c[j]))
    }

    /// Eigenvalues (ascending) and matching eigenvector columns.
    pub fn eigen_ascending(&self) -> (Vec<T>, DMatrix<T>) {
        eigen_ascending(&self.to_dmatrix())
    }

    /// Entrywise maximum absolute difference to another matrix.
    pub fn max_abs_diff(&self, other: &SymmetricMatrix<T>) -> T {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(other.data.iter())
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()))
    }

    /// Entrywise difference `self - other`.
    pub fn sub(&self, other: &SymmetricMatrix<T>) -> SymmetricMatrix<T> {
        assert_eq!(self.dim, other.dim);
        SymmetricMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

/// Eigendecomposition of a symmetric `DMatrix`, eigenvalues ascending.
pub fn eigen_ascending<T: Real>(m: &DMatrix<T>) -> (Vec<T>, DMatrix<T>) {
    let eig = m.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .expect("eigenvalues are comparable")
    });
    let values: Vec<T> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

/// Singular values of a rectangular matrix, descending.
pub fn singular_values<T: Real>(m: &DMatrix<T>) -> Vec<T> {
    let svd = m.clone().svd(false, false);
    let mut sv: Vec<T> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("singular values are comparable"));
    sv
}

/// Solves `A x = b` via column-pivoted QR, returning `None` if singular.
pub fn solve<T: Real>(a: &DMatrix<T>, b: &DVector<T>) -> Option<DVector<T>> {
    a.clone().col_piv_qr().solve(b)
}

impl<T: Real> Index<(usize, usize)> for SymmetricMatrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[tri_index(self.dim, i, j)]
    }
}

impl<T: Real> fmt::Debug for SymmetricMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymmetricMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                write!(f, "{:>12.8} ", self.get(i, j).as_f64())?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Real + Serialize> Serialize for SymmetricMatrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.rows())
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for SymmetricMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(deserializer)?;
        SymmetricMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}
