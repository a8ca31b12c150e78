//! Dense linear algebra for small real matrices (n ≤ ~32).
//!
//! Provides the symmetric eigensolver, Moore–Penrose pseudoinverse,
//! numerical rank and orthonormal range basis used by the inference
//! pipeline. The eigensolver is a cyclic Jacobi iteration: at these sizes
//! it is accurate, deterministic and dependency-free. Pseudoinverse, rank
//! and range basis are all derived from the eigendecomposition of the
//! Gram matrix AᵀA (or AAᵀ, whichever is smaller).

use thiserror::Error;

/// Default relative tolerance for rank decisions (relative to the largest
/// singular value).
pub const DEFAULT_TOL: f64 = 1e-10;

/// Relative eigenvalue floor for Gram-matrix spectra. Forming AᵀA and
/// diagonalizing it leaves residual eigenvalues of order machine epsilon
/// relative to λ_max; eigenvalues below this floor are treated as exact
/// zeros regardless of the requested tolerance.
const GRAM_EIG_FLOOR: f64 = 1e-13;

const MAX_JACOBI_SWEEPS: usize = 64;

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (residual {residual:.3e})")]
    NotSymmetric { residual: f64 },
}

/// Dense row-major matrix of `f64`. Zero-row and zero-column matrices are
/// valid values (an empty range basis is a matrix with zero columns).
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from row slices. All rows must have equal length and
    /// all entries must be finite.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            assert!(row.iter().all(|x| x.is_finite()), "non-finite entry");
            data.extend_from_slice(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn diag(entries: &[f64]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Rank-one matrix u vᵀ.
    pub fn outer(u: &[f64], v: &[f64]) -> Self {
        Matrix::from_fn(u.len(), v.len(), |i, j| u[i] * v[j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(
            self.cols,
            v.len(),
            "dimension mismatch in matrix-vector product"
        );
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        })
    }

    pub fn scaled(&self, s: f64) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| s * self.get(i, j))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest absolute asymmetry |a_ij - a_ji|.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols.min(self.rows) {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Replaces the matrix by its symmetric part (a + aᵀ)/2.
    pub fn symmetrized(&self) -> Matrix {
        assert_eq!(self.rows, self.cols);
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            0.5 * (self.get(i, j) + self.get(j, i))
        })
    }
}

/// Eigendecomposition of a real symmetric matrix: S = U Λ Uᵀ with the
/// eigenvalues sorted in descending order and the eigenvectors stored as
/// the columns of `eigenvectors`. Each eigenvector is sign-fixed so that
/// its largest-magnitude entry (lowest index on ties) is positive.
#[derive(Debug, Clone)]
pub struct EigDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
pub fn sym_eig(s: &Matrix) -> Result<EigDecomposition, LinalgError> {
    if s.rows() != s.cols() {
        return Err(LinalgError::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    let n = s.rows();
    let scale = s.max_abs();
    let residual = s.asymmetry();
    if residual > 1e-12 * scale.max(1e-300) {
        return Err(LinalgError::NotSymmetric { residual });
    }

    let mut a = s.symmetrized();
    let mut v = Matrix::identity(n);
    if scale > 0.0 {
        let stop = 1e-15 * scale;
        for _ in 0..MAX_JACOBI_SWEEPS {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(a.get(p, q).abs());
                }
            }
            if off <= stop {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.get(p, q);
                    if apq.abs() <= stop * 1e-2 {
                        continue;
                    }
                    let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + (1.0 + theta * theta).sqrt())
                    } else {
                        1.0 / (theta - (1.0 + theta * theta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let sn = t * c;

                    // rows/cols p and q of the symmetric iterate
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, c * akp - sn * akq);
                        a.set(k, q, sn * akp + c * akq);
                    }
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let aqk = a.get(q, k);
                        a.set(p, k, c * apk - sn * aqk);
                        a.set(q, k, sn * apk + c * aqk);
                    }
                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, c * vkp - sn * vkq);
                        v.set(k, q, sn * vkp + c * vkq);
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).partial_cmp(&a.get(i, i)).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let column = v.col(src);
        let mut lead = 0;
        for (k, x) in column.iter().enumerate() {
            if x.abs() > column[lead].abs() {
                lead = k;
            }
        }
        let flip = if column[lead] < 0.0 { -1.0 } else { 1.0 };
        for (k, x) in column.iter().enumerate() {
            eigenvectors.set(k, dst, flip * x);
        }
    }

    Ok(EigDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigendecomposition of the Gram matrix AᵀA. The eigenvalues are the
/// squared singular values of A.
fn gram_eig(a: &Matrix) -> EigDecomposition {
    let gram = a.transpose().mul(a);
    sym_eig(&gram).expect("Gram matrix is square and symmetric by construction")
}

/// Number of Gram eigenvalues counted as nonzero at relative singular-value
/// tolerance `tol`.
fn spectral_count(eigenvalues: &[f64], tol: f64) -> usize {
    let lead = eigenvalues.first().copied().unwrap_or(0.0);
    if lead <= 0.0 {
        return 0;
    }
    let cutoff = (tol * tol).max(GRAM_EIG_FLOOR) * lead;
    eigenvalues.iter().take_while(|&&l| l > cutoff).count()
}

/// Numerical rank: the number of singular values exceeding `tol` relative
/// to the largest one (0 for the zero matrix).
pub fn rank(a: &Matrix, tol: f64) -> usize {
    assert!(tol >= 0.0, "negative tolerance");
    if a.rows() == 0 || a.cols() == 0 {
        return 0;
    }
    // Work with the smaller Gram matrix of the two orientations.
    if a.rows() < a.cols() {
        let eig = gram_eig(&a.transpose());
        spectral_count(&eig.eigenvalues, tol)
    } else {
        let eig = gram_eig(a);
        spectral_count(&eig.eigenvalues, tol)
    }
}

/// Moore–Penrose pseudoinverse. Singular values at or below `tol` relative
/// to the largest are treated as zero.
pub fn pinv(a: &Matrix, tol: f64) -> Matrix {
    assert!(tol >= 0.0, "negative tolerance");
    if a.rows() < a.cols() {
        return pinv(&a.transpose(), tol).transpose();
    }
    let eig = gram_eig(a);
    let r = spectral_count(&eig.eigenvalues, tol);
    if r == 0 {
        return Matrix::zeros(a.cols(), a.rows());
    }
    // A⁺ = V_r Λ_r⁻¹ V_rᵀ Aᵀ
    let n = a.cols();
    let mut core = Matrix::zeros(n, n);
    for k in 0..r {
        let inv_l = 1.0 / eig.eigenvalues[k];
        for i in 0..n {
            let vik = eig.eigenvectors.get(i, k);
            if vik == 0.0 {
                continue;
            }
            for j in 0..n {
                let v = core.get(i, j) + vik * inv_l * eig.eigenvectors.get(j, k);
                core.set(i, j, v);
            }
        }
    }
    core.mul(&a.transpose())
}

/// Orthonormal basis of the numerical column space of A, returned as the
/// columns of an m×r matrix (r = rank). The zero matrix yields a basis
/// with zero columns.
pub fn range_basis(a: &Matrix, tol: f64) -> Matrix {
    assert!(tol >= 0.0, "negative tolerance");
    let m = a.rows();
    if m == 0 || a.cols() == 0 {
        return Matrix::zeros(m, 0);
    }
    let eig = gram_eig(a);
    let r = spectral_count(&eig.eigenvalues, tol);
    let mut basis = Matrix::zeros(m, r);
    for k in 0..r {
        let sigma = eig.eigenvalues[k].sqrt();
        let mut u = a.mul_vec(&eig.eigenvectors.col(k));
        for x in u.iter_mut() {
            *x /= sigma;
        }
        // Gram-Schmidt pass against the columns already emitted; guards the
        // orthonormality of clustered singular directions.
        for prev in 0..k {
            let proj: f64 = (0..m).map(|i| basis.get(i, prev) * u[i]).sum();
            for (i, x) in u.iter_mut().enumerate() {
                *x -= proj * basis.get(i, prev);
            }
        }
        let norm = norm2(&u);
        for (i, x) in u.iter().enumerate() {
            basis.set(i, k, x / norm);
        }
    }
    basis
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

pub fn linf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn sub_vec(a: &[f64], b: &[f64]) -> Vec<f64> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[f64], b: &[f64]) -> Vec<f64> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
