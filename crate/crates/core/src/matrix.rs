//! Dense square matrices over a [`Scalar`] field, the corner minors built from
//! them, and the anti-triangular shape subspaces.
//!
//! Indices on the public surface are 1-based. For a size `n` the reflected
//! index of `i` is `i′ = n − i + 1`; position `(i, j)` lies on the
//! anti-diagonal when `j = i′`, above it when `j < i′` and below it when
//! `j > i′`.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;
use crate::field::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    n: usize,
    entries: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[F]> = self.entries.chunks(self.n.max(1)).collect();
        f.debug_struct("Matrix")
            .field("n", &self.n)
            .field("rows", &rows)
            .finish()
    }
}

impl<F: Scalar> Matrix<F> {
    /// Builds a matrix from `n` rows of length `n`.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::SizeMismatch("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch(format!(
                    "row {} has {} entries, expected {n}",
                    r + 1,
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        assert!(n > 0, "matrix size must be positive");
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn from_i64_rows(ctx: &F::Ctx, rows: &[&[i64]]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| F::from_i64(ctx, rows[i - 1][j - 1]))
    }

    pub fn zero(n: usize, ctx: &F::Ctx) -> Self {
        Self::from_fn(n, |_, _| F::zero(ctx))
    }

    pub fn identity(n: usize, ctx: &F::Ctx) -> Self {
        Self::from_fn(n, |i, j| if i == j { F::one(ctx) } else { F::zero(ctx) })
    }

    /// The anti-identity `J` with ones at `(i, i′)`.
    pub fn anti_identity(n: usize, ctx: &F::Ctx) -> Self {
        Self::from_fn(n, |i, j| if j == n + 1 - i { F::one(ctx) } else { F::zero(ctx) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> F::Ctx {
        self.entries[0].ctx()
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &F {
        debug_assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        debug_assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        self.entries[(i - 1) * self.n + (j - 1)] = value;
    }

    pub fn map<G: Scalar>(&self, f: impl FnMut(&F) -> G) -> Matrix<G> {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, Error> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.n, self.n, rhs.n, rhs.n
            )));
        }
        if self.ctx() != rhs.ctx() {
            return Err(Error::FieldMismatch);
        }
        let ctx = self.ctx();
        Ok(Self::from_fn(self.n, |i, j| {
            (1..=self.n).fold(F::zero(&ctx), |acc, c| {
                acc + self.get(i, c).clone() * rhs.get(c, j).clone()
            })
        }))
    }

    pub fn det(&self) -> F {
        F::determinant(self)
    }

    /// Determinant of the submatrix on `rows × cols`, taken in the given order.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<F, Error> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch(format!(
                "{} rows against {} columns",
                rows.len(),
                cols.len()
            )));
        }
        for &index in rows.iter().chain(cols) {
            if index == 0 || index > self.n {
                return Err(Error::IndexOutOfRange { index, n: self.n });
            }
        }
        if rows.is_empty() {
            return Ok(F::one(&self.ctx()));
        }
        Ok(self.submatrix(rows, cols).det())
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), |a, b| self.get(rows[a - 1], cols[b - 1]).clone())
    }

    /// `D_k`: the lower-left corner minor on rows `[k, n]`, columns `[1, k′]`.
    pub fn corner_minor(&self, k: usize) -> Result<F, Error> {
        self.check_index(k)?;
        let kp = self.reflect(k);
        let rows: Vec<usize> = (k..=self.n).collect();
        let cols: Vec<usize> = (1..=kp).collect();
        self.minor(&rows, &cols)
    }

    /// `M_ij`: rows `[i, n]`, columns `[1, i′ − 1] ∪ {j}`; requires `i′ ≤ j`.
    pub fn minor_m(&self, i: usize, j: usize) -> Result<F, Error> {
        self.check_index(i)?;
        self.check_index(j)?;
        let ip = self.reflect(i);
        if ip > j {
            return Err(Error::Precondition(format!("M_{{{i},{j}}} needs i' <= j, got i'={ip}")));
        }
        let rows: Vec<usize> = (i..=self.n).collect();
        let mut cols: Vec<usize> = (1..ip).collect();
        cols.push(j);
        self.minor(&rows, &cols)
    }

    /// `N_jk`: rows `{j} ∪ [k + 1, n]`, columns `[1, k′]`; requires `j ≤ k`.
    pub fn minor_n(&self, j: usize, k: usize) -> Result<F, Error> {
        self.check_index(j)?;
        self.check_index(k)?;
        if j > k {
            return Err(Error::Precondition(format!("N_{{{j},{k}}} needs j <= k")));
        }
        let mut rows = alloc::vec![j];
        rows.extend(k + 1..=self.n);
        let cols: Vec<usize> = (1..=self.reflect(k)).collect();
        self.minor(&rows, &cols)
    }

    pub fn is_member(&self, shape: Shape) -> bool {
        let n = self.n;
        (1..=n).all(|i| (1..=n).all(|j| shape.allows(n, i, j) || self.get(i, j).is_zero()))
    }

    /// Upper triangular with unit diagonal.
    pub fn is_unitriangular(&self) -> bool {
        let ctx = self.ctx();
        let one = F::one(&ctx);
        (1..=self.n).all(|i| {
            (1..=self.n).all(|j| match i.cmp(&j) {
                Ordering::Equal => *self.get(i, j) == one,
                Ordering::Greater => self.get(i, j).is_zero(),
                Ordering::Less => true,
            })
        })
    }

    /// Inverse of an upper unitriangular matrix by back-substitution.
    pub fn unitriangular_inverse(&self) -> Result<Self, Error> {
        if !self.is_unitriangular() {
            return Err(Error::Precondition("matrix is not upper unitriangular".into()));
        }
        let n = self.n;
        let ctx = self.ctx();
        let mut inv = Self::identity(n, &ctx);
        // column j of the inverse solves U x = e_j from the bottom up
        for j in 1..=n {
            for i in (1..j).rev() {
                let mut acc = F::zero(&ctx);
                for c in i + 1..=j {
                    acc = acc + self.get(i, c).clone() * inv.get(c, j).clone();
                }
                inv.set(i, j, -acc);
            }
        }
        Ok(inv)
    }

    fn reflect(&self, i: usize) -> usize {
        self.n + 1 - i
    }

    fn check_index(&self, index: usize) -> Result<(), Error> {
        if index == 0 || index > self.n {
            Err(Error::IndexOutOfRange { index, n: self.n })
        } else {
            Ok(())
        }
    }
}

/// Gaussian elimination with exact division; the default [`Scalar::determinant`].
pub fn gaussian_determinant<F: Scalar>(m: &Matrix<F>) -> F {
    let n = m.n;
    let ctx = m.ctx();
    let mut a = m.entries.clone();
    let mut det = F::one(&ctx);
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return F::zero(&ctx);
        };
        if pivot_row != col {
            for c in 0..n {
                a.swap(col * n + c, pivot_row * n + c);
            }
            det = -det;
        }
        let pivot = a[col * n + col].clone();
        let inv = pivot.try_inv().expect("nonzero pivot must be invertible over a field");
        det = det * pivot;
        for r in col + 1..n {
            if a[r * n + col].is_zero() {
                continue;
            }
            let factor = a[r * n + col].clone() * inv.clone();
            for c in col..n {
                let v = a[r * n + c].clone() - factor.clone() * a[col * n + c].clone();
                a[r * n + c] = v;
            }
        }
    }
    det
}

/// Coordinate subspaces of `Mat(n)` used as section pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Shape {
    /// All of `Mat(n)`.
    Full,
    /// `S⁻`: zero above the anti-diagonal.
    LowerAnti,
    /// `S⁺`: zero below the anti-diagonal.
    UpperAnti,
    /// `Λ`: zero off the anti-diagonal.
    AntiDiag,
}

impl Shape {
    /// Whether position `(i, j)` is a free coordinate of the subspace.
    pub fn allows(self, n: usize, i: usize, j: usize) -> bool {
        let ip = n + 1 - i;
        match self {
            Shape::Full => true,
            Shape::LowerAnti => j >= ip,
            Shape::UpperAnti => j <= ip,
            Shape::AntiDiag => j == ip,
        }
    }

    pub fn dim(self, n: usize) -> usize {
        match self {
            Shape::Full => n * n,
            Shape::LowerAnti | Shape::UpperAnti => n * (n + 1) / 2,
            Shape::AntiDiag => n,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Shape::Full => "Mat",
            Shape::LowerAnti => "S-",
            Shape::UpperAnti => "S+",
            Shape::AntiDiag => "Lambda",
        }
    }
}

/// A matrix position `(row, col)`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IndexPair {
    pub row: usize,
    pub col: usize,
}

impl IndexPair {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// `row′ = n − row + 1`.
    pub fn reflected_row(self, n: usize) -> usize {
        n + 1 - self.row
    }

    pub fn on_anti_diagonal(self, n: usize) -> bool {
        self.col == self.reflected_row(n)
    }

    pub fn below_anti_diagonal(self, n: usize) -> bool {
        self.col > self.reflected_row(n)
    }

    pub fn above_anti_diagonal(self, n: usize) -> bool {
        self.col < self.reflected_row(n)
    }

    /// The coordinate order: column first, then rows from the bottom up, so
    /// `(n,1) ≺ (n−1,1) ≺ … ≺ (1,1) ≺ (n,2) ≺ … ≺ (1,n)`.
    pub fn prec_cmp(&self, other: &Self) -> Ordering {
        self.col.cmp(&other.col).then(other.row.cmp(&self.row))
    }

    pub fn precedes(&self, other: &Self) -> bool {
        self.prec_cmp(other) == Ordering::Less
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}
