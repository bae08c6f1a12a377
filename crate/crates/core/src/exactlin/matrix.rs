use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Matrix unit `E_ij` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, Rat::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Panics on ragged input; meant for literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(rows).expect("ragged literal")
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn diag(entries: &[Rat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Rat) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| *self.get(i, j) == -self.get(j, i).clone())
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &RatMatrix) -> RatMatrix {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, e: u32) -> RatMatrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Selects the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Row rank, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss_echelon(integer_rows(self), self.cols).1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}` as primitive integer vectors.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (ech, pivots) = bareiss_echelon(integer_rows(self), self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Rat::zero(); self.cols];
            x[free] = Rat::one();
            for (i, &p) in pivots.iter().enumerate().rev() {
                let mut s = Rat::zero();
                for j in p + 1..self.cols {
                    if !ech[i][j].is_zero() && !x[j].is_zero() {
                        s += Rat::from_integer(ech[i][j].clone()) * &x[j];
                    }
                }
                x[p] = -s / Rat::from_integer(ech[i][p].clone());
            }
            basis.push(super::primitive(&x));
        }
        basis
    }

    /// Kernel basis via rational Gauss-Jordan elimination; cheaper than
    /// [`RatMatrix::kernel`] for tall sparse matrices with small entries.
    pub fn kernel_rref(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![Rat::zero(); self.cols];
                x[free] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -r.get(i, free).clone();
                }
                super::primitive(&x)
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m, self.cols);
        (m, pivots)
    }

    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::Precondition("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let mut denom = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let (row, l) = clear_row(self.row(i));
            denom *= l;
            a.push(row);
        }
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let d = Rat::new(a[n - 1][n - 1].clone(), denom);
        Ok(if sign { -d } else { d })
    }

    /// Pfaffian of an even antisymmetric matrix, normalized so that the
    /// block-diagonal matrix of `[[0,1],[-1,0]]` blocks has Pfaffian 1.
    pub fn pfaffian(&self) -> Result<Rat> {
        if !self.is_antisymmetric() {
            return Err(Error::Precondition("Pfaffian needs an antisymmetric matrix".into()));
        }
        if self.rows % 2 == 1 {
            return Err(Error::Precondition("Pfaffian needs even size".into()));
        }
        let mut a = self.to_rows();
        let mut n = self.rows;
        let mut result = Rat::one();
        // Each step pivots a nonzero entry into position (0,1) by a simultaneous
        // row/column swap (which negates the Pfaffian), then takes the Schur
        // complement of the leading 2x2 block.
        while n > 0 {
            let Some(p) = (1..n).find(|&j| !a[0][j].is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != 1 {
                a.swap(1, p);
                for row in a.iter_mut() {
                    row.swap(1, p);
                }
                result = -result;
            }
            let piv = a[0][1].clone();
            result *= &piv;
            let mut next = vec![vec![Rat::zero(); n - 2]; n - 2];
            for i in 2..n {
                for j in 2..n {
                    let corr = (&a[1][i] * &a[0][j] - &a[0][i] * &a[1][j]) / &piv;
                    next[i - 2][j - 2] = &a[i][j] + corr;
                }
            }
            a = next;
            n -= 2;
        }
        Ok(result)
    }

    /// Inverse by Gauss-Jordan elimination on `[M | I]`.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::Precondition("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        if rref_in_place(&mut aug, n).len() < n {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        let idx: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(aug.submatrix(&idx, &right))
    }
}

fn clear_row(row: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for x in row {
        if !x.is_zero() {
            l = l.lcm(x.denom());
        }
    }
    let ints = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (ints, l)
}

/// Each row scaled by the lcm of its denominators.
pub fn integer_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| clear_row(m.row(i)).0).collect()
}

/// Fraction-free (Bareiss) row echelon form. Returns the echelon rows and
/// the pivot columns; the number of pivots is the rank. All divisions are
/// exact.
pub fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            if f.is_zero() {
                for j in c + 1..cols {
                    if !row[j].is_zero() {
                        row[j] = (&pivot_row[c] * &row[j]) / &prev;
                    }
                }
            } else {
                for j in c + 1..cols {
                    let v = &pivot_row[c] * &row[j] - &f * &pivot_row[j];
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

fn rref_in_place(m: &mut RatMatrix, pivot_cols: usize) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).recip();
        for j in c..cols {
            let v = m.get(r, j) * &inv;
            m.set(r, j, v);
        }
        let pivot_row: Vec<(usize, Rat)> = (c..cols)
            .filter(|&j| !m.get(r, j).is_zero())
            .map(|j| (j, m.get(r, j).clone()))
            .collect();
        for i in 0..rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for (j, v) in &pivot_row {
                let nv = m.get(i, *j) - &f * v;
                m.set(i, *j, nv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Coordinates with respect to a fixed list of independent vectors.
///
/// Stores the reduced echelon form `R = U V` of the vectors; coordinates of
/// `w` are read at the pivot positions, checked against the sparse rows of
/// `R`, then mapped back through `U`.
#[derive(Clone, Debug)]
pub struct SpanCoords {
    len: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<(usize, Rat)>>,
    transform: Option<RatMatrix>,
}

impl SpanCoords {
    pub fn new(vectors: &[Vec<Rat>]) -> Result<Self> {
        let k = vectors.len();
        let len = vectors.first().map_or(0, Vec::len);
        if vectors.iter().any(|v| v.len() != len) {
            return Err(Error::Shape("vectors of different lengths".into()));
        }
        let mut aug = RatMatrix::zeros(k, len + k);
        for (i, v) in vectors.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                aug.set(i, j, x.clone());
            }
            aug.set(i, len + i, Rat::one());
        }
        let pivots = rref_in_place(&mut aug, len);
        if pivots.len() < k {
            return Err(Error::Dependent);
        }
        let rows = (0..k)
            .map(|i| {
                (0..len)
                    .filter(|&j| !aug.get(i, j).is_zero())
                    .map(|j| (j, aug.get(i, j).clone()))
                    .collect()
            })
            .collect();
        let u = aug.submatrix(&(0..k).collect::<Vec<_>>(), &(len..len + k).collect::<Vec<_>>());
        let transform = (u != RatMatrix::identity(k)).then_some(u);
        Ok(SpanCoords {
            len,
            pivots,
            rows,
            transform,
        })
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates of `w` in the original vectors, or `None` if `w` is
    /// outside their span.
    pub fn coords(&self, w: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(w.len(), self.len, "vector length");
        let d: Vec<Rat> = self.pivots.iter().map(|&p| w[p].clone()).collect();
        let mut residual = w.to_vec();
        for (di, row) in d.iter().zip(&self.rows) {
            if di.is_zero() {
                continue;
            }
            for (j, v) in row {
                residual[*j] -= di * v;
            }
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(match &self.transform {
            None => d,
            Some(u) => {
                let k = d.len();
                (0..k)
                    .map(|j| {
                        (0..k)
                            .filter(|&i| !d[i].is_zero())
                            .map(|i| &d[i] * u.get(i, j))
                            .sum()
                    })
                    .collect()
            }
        })
    }
}

impl<'a> Mul<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &'a RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;

    fn add(self, rhs: &'a RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;

    fn sub(self, rhs: &'a RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;

    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(super::format_rat).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
