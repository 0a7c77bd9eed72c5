use crate::numeric::Scalar;

/// Dense square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    /// Builds an `n x n` matrix from `entry(row, col)`.
    pub fn from_fn(dim: usize, mut entry: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(entry(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.data[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.data.chunks(self.dim.max(1)).take(self.dim)
    }

    /// Infinity norm (largest absolute row sum), in `f64`.
    pub fn norm_inf(&self) -> f64 {
        self.rows()
            .map(|r| r.iter().map(Scalar::magnitude).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Hadamard's bound `Π_i ‖row_i‖₂`, an upper bound for `|det|`.
    pub fn hadamard_bound(&self) -> f64 {
        self.rows()
            .map(|r| r.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt())
            .product()
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    /// The empty matrix has determinant one.
    pub fn determinant(&self, ctx: S::Ctx) -> S {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = S::one(ctx);
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&x, &y| {
                    a[x * n + col]
                        .magnitude()
                        .total_cmp(&a[y * n + col].magnitude())
                })
                .expect("non-empty range");
            if a[pivot_row * n + col].is_zero() {
                return S::zero(ctx);
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                det = det.neg();
            }
            let pivot = a[col * n + col].clone();
            det = det.mul(&pivot);
            for row in col + 1..n {
                let factor = a[row * n + col].div(&pivot);
                if factor.is_zero() {
                    continue;
                }
                for j in col + 1..n {
                    let update = factor.mul(&a[col * n + j]);
                    a[row * n + j] = a[row * n + j].sub(&update);
                }
            }
        }
        det
    }
}
