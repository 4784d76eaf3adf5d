use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::Shape(format!(
                "row {bad} has {} entries, expected {c}",
                rows[bad].len()
            )));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience for tests and generators.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| Rat::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Rat> {
        (i < self.rows && j < self.cols).then(|| &self.entries[i * self.cols + j])
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out[(i, j)] = (0..self.cols).map(|k| &self[(i, k)] * &other[(k, j)]).sum();
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| super::dot(self.row(i), v)).collect())
    }

    /// Top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> RatMatrix {
        assert!(k <= self.rows && k <= self.cols);
        let mut out = Self::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<Rat> {
        self.require_square()?;
        let n = self.rows;
        let (mut a, scale) = integer_rows(self.entries.chunks(self.cols.max(1)).take(n));
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        negate = !negate;
                    }
                    None => return Ok(Rat::zero()),
                }
            }
            bareiss_step(&mut a, k, n, &prev);
            prev = a[k][k].clone();
        }
        let det = if n == 0 { BigInt::one() } else { prev };
        let det = Rat::from_parts(det, scale).expect("row scale is positive");
        Ok(if negate { -det } else { det })
    }

    /// `(-1)^k det(M_k) > 0` for every leading principal minor.
    pub fn is_negative_definite(&self) -> Result<bool> {
        self.require_square()?;
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for k in 1..=self.rows {
            let minor = self.leading_block(k).det()?;
            let signed = if k % 2 == 1 { -minor } else { minor };
            if !signed.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact solution of `M x = b` for invertible square `M`.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        self.require_square()?;
        let n = self.rows;
        if b.len() != n {
            return Err(Error::Shape(format!(
                "right-hand side has length {}, expected {n}",
                b.len()
            )));
        }
        // Rows of [M | b]; scaling a row does not change the solution.
        let augmented: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        let (mut a, _) = integer_rows(augmented.iter().map(Vec::as_slice));
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let p = (k + 1..n)
                    .find(|&i| !a[i][k].is_zero())
                    .ok_or(Error::Singular)?;
                a.swap(k, p);
            }
            bareiss_step(&mut a, k, n, &prev);
            prev = a[k][k].clone();
        }
        let mut x = vec![Rat::zero(); n];
        for i in (0..n).rev() {
            let mut rhs = Rat::from(a[i][n].clone());
            for j in i + 1..n {
                rhs -= &(Rat::from(a[i][j].clone()) * &x[j]);
            }
            x[i] = rhs / Rat::from(a[i][i].clone());
        }
        Ok(x)
    }
}

/// Clears denominators row by row. Returns the integer rows and the product
/// of the per-row multipliers.
fn integer_rows<'a>(rows: impl Iterator<Item = &'a [Rat]>) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let out = rows
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    (out, scale)
}

/// One Bareiss elimination step below pivot `(k, k)` over all trailing
/// columns. Division by the previous pivot is exact.
fn bareiss_step(a: &mut [Vec<BigInt>], k: usize, n: usize, prev: &BigInt) {
    let width = a[k].len();
    for i in k + 1..n {
        for j in k + 1..width {
            let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
            debug_assert!((&v % prev).is_zero());
            a[i][j] = v / prev;
        }
        a[i][k] = BigInt::zero();
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;

    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &mut self.entries[i * self.cols + j]
    }
}
