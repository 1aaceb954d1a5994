//! Exact rational linear algebra.
//!
//! Everything here works over arbitrary-precision rationals. Elimination is
//! fraction-free: rows are scaled to primitive integer vectors, combined by
//! cross-multiplication and divided by their content after every step.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Vector = Vec<Rational>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `p / q`, panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int_vector(values: &[i64]) -> Vector {
    values.iter().map(|&v| int(v)).collect()
}

/// Position of entry `(i, j)`, `i <= j`, in row-major upper-triangle order.
pub fn upper_index(order: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * order - i * (i.saturating_sub(1)) / 2 + (j - i)
}

/// Inverse of [`upper_index`].
pub fn upper_position(order: usize, index: usize) -> (usize, usize) {
    let mut rest = index;
    for i in 0..order {
        let len = order - i;
        if rest < len {
            return (i, i + rest);
        }
        rest -= len;
    }
    panic!("upper-triangle index {index} out of range for order {order}");
}

pub fn triangle_len(order: usize) -> usize {
    order * (order + 1) / 2
}

/// Symmetric matrix stored as its upper triangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    order: usize,
    upper: Vec<Rational>,
}

impl SymMatrix {
    pub fn new(order: usize, upper: Vec<Rational>) -> Result<Self> {
        if upper.len() != triangle_len(order) {
            return Err(Error::DimensionMismatch {
                expected: triangle_len(order),
                found: upper.len(),
            });
        }
        Ok(Self { order, upper })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut upper = Vec::with_capacity(triangle_len(order));
        for i in 0..order {
            for j in i..order {
                upper.push(f(i, j));
            }
        }
        Self { order, upper }
    }

    /// Builds a matrix from full rows, rejecting non-square or asymmetric input.
    #[allow(clippy::needless_range_loop)]
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Parse(format!(
                        "matrix is not symmetric: entry ({},{}) = {} but ({},{}) = {}",
                        i + 1,
                        j + 1,
                        rows[i][j],
                        j + 1,
                        i + 1,
                        rows[j][i]
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j].clone()))
    }

    /// Integer convenience constructor. Panics on malformed input; meant for
    /// literals in code and tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vector> = rows.iter().map(|r| int_vector(r)).collect();
        Self::from_rows(&rows).expect("integer rows must form a symmetric matrix")
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { int(1) } else { int(0) })
    }

    pub fn ones(order: usize) -> Self {
        Self::from_fn(order, |_, _| int(1))
    }

    /// `x x^T`.
    pub fn outer(x: &[Rational]) -> Self {
        Self::from_fn(x.len(), |i, j| &x[i] * &x[j])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.upper[upper_index(self.order, i, j)]
    }

    pub fn row(&self, i: usize) -> Vector {
        (0..self.order).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vector> {
        (0..self.order).map(|i| self.row(i)).collect()
    }

    pub fn diagonal(&self) -> Vector {
        (0..self.order).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_unit_diagonal(&self) -> bool {
        (0..self.order).all(|i| self.get(i, i).is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(Zero::is_zero)
    }

    /// Principal submatrix on the given (sorted) indices.
    pub fn principal(&self, indices: &[usize]) -> SymMatrix {
        SymMatrix::from_fn(indices.len(), |a, b| {
            self.get(indices[a], indices[b]).clone()
        })
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vector> {
        self.check_len(x)?;
        Ok((0..self.order)
            .map(|i| {
                x.iter()
                    .enumerate()
                    .filter(|(_, xj)| !xj.is_zero())
                    .fold(Rational::zero(), |acc, (j, xj)| acc + self.get(i, j) * xj)
            })
            .collect())
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            upper: self.upper.iter().zip(&other.upper).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scaled(&self, factor: &Rational) -> SymMatrix {
        Self {
            order: self.order,
            upper: self.upper.iter().map(|a| a * factor).collect(),
        }
    }

    /// `P A P^T` for the permutation mapping new index `i` to old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<SymMatrix> {
        if perm.len() != self.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                found: perm.len(),
            });
        }
        Ok(Self::from_fn(self.order, |i, j| self.get(perm[i], perm[j]).clone()))
    }

    /// True when `other = lambda * self` for some rational `lambda != 0`,
    /// decided by cross-multiplication of entries.
    pub fn is_proportional_to(&self, other: &SymMatrix) -> bool {
        if self.order != other.order || self.is_zero() || other.is_zero() {
            return false;
        }
        let (k, a_ref) = self
            .upper
            .iter()
            .enumerate()
            .find(|(_, a)| !a.is_zero())
            .expect("nonzero matrix");
        let b_ref = &other.upper[k];
        self.upper
            .iter()
            .zip(&other.upper)
            .all(|(a, b)| a * b_ref == b * a_ref)
    }

    fn check_len(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                found: x.len(),
            });
        }
        Ok(())
    }

    fn check_order(&self, other: &SymMatrix) -> Result<()> {
        if other.order != self.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                found: other.order,
            });
        }
        Ok(())
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// `x^T A x`, computed exactly.
pub fn eval_quadratic(a: &SymMatrix, x: &[Rational]) -> Result<Rational> {
    let ax = a.mul_vec(x)?;
    Ok(x.iter().zip(&ax).fold(Rational::zero(), |acc, (xi, yi)| acc + xi * yi))
}

/// Dense rectangular rational matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    cols: usize,
    rows: Vec<Vector>,
}

impl RatMatrix {
    pub fn new(cols: usize, rows: Vec<Vector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    pub fn from_int_rows(cols: usize, rows: &[&[i64]]) -> Self {
        Self::new(cols, rows.iter().map(|r| int_vector(r)).collect())
            .expect("rows must have the stated column count")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = int(1);
        }
        m
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vector {
        self.rows
            .iter()
            .map(|r| r.iter().zip(x).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }
}

/// Solution set `{ particular + span(kernel_basis) }` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub dim: usize,
    pub particular: Option<Vector>,
    pub kernel_basis: Vec<Vector>,
}

impl AffineSolutionSet {
    /// The linear subspace spanned by `basis` in dimension `dim`.
    pub fn span(dim: usize, basis: Vec<Vector>) -> Self {
        Self {
            dim,
            particular: Some(vec![Rational::zero(); dim]),
            kernel_basis: basis,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }
}

/// Clears denominators and removes the content, giving a primitive integer row.
pub(crate) fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut ints: Vec<BigInt> = row
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    make_primitive(&mut ints);
    ints
}

fn make_primitive(row: &mut [BigInt]) {
    let content = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for v in row.iter_mut() {
            *v /= &content;
        }
    }
}

/// Reduced row echelon form up to per-row scaling, over the integers.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// Pivot column of each of the leading `pivots.len()` rows.
    pivots: Vec<usize>,
}

/// Fraction-free Gauss-Jordan elimination restricted to the first `limit`
/// columns. Pivot choice: the first row (in current order) with a nonzero
/// entry in the current column.
fn echelon(mut rows: Vec<Vec<BigInt>>, limit: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..limit {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        let pivot = pivot_row[col].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &pivot * &*x - &factor * y;
            }
            make_primitive(row);
        }
        pivots.push(col);
        r += 1;
    }
    Echelon { rows, pivots }
}

fn integer_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    m.rows.iter().map(|r| primitive_integer_row(r)).collect()
}

/// Scales a kernel vector to a primitive integer vector with positive leading entry.
fn normalize_direction(v: Vector) -> Vector {
    let mut ints = primitive_integer_row(&v);
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    ints.into_iter().map(Rational::from_integer).collect()
}

fn kernel_from_echelon(e: &Echelon, cols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; cols];
    for &c in &e.pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (t, &c) in e.pivots.iter().enumerate() {
                let coeff = &e.rows[t][f];
                if !coeff.is_zero() {
                    x[c] = -Rational::new(coeff.clone(), e.rows[t][c].clone());
                }
            }
            normalize_direction(x)
        })
        .collect()
}

/// Basis of `{x : M x = 0}`. Empty iff `M` has full column rank.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vector> {
    let e = echelon(integer_rows(m), m.cols);
    kernel_from_echelon(&e, m.cols)
}

/// `(rank, nullity)` with `rank + nullity = cols`.
pub fn rank_nullity(m: &RatMatrix) -> (usize, usize) {
    let e = echelon(integer_rows(m), m.cols);
    let rank = e.pivots.len();
    (rank, m.cols - rank)
}

/// Full solution set of `M x = b`.
pub fn solve_affine(m: &RatMatrix, b: &[Rational]) -> Result<AffineSolutionSet> {
    if b.len() != m.nrows() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: b.len(),
        });
    }
    let cols = m.cols;
    let augmented: Vec<Vec<BigInt>> = m
        .rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            primitive_integer_row(&row)
        })
        .collect();
    let e = echelon(augmented, cols);
    let rank = e.pivots.len();
    // Any surviving nonzero right-hand side below the pivots is an inconsistent row.
    if e.rows[rank..].iter().any(|r| !r[cols].is_zero()) {
        return Ok(AffineSolutionSet {
            dim: cols,
            particular: None,
            kernel_basis: kernel_from_echelon(&e, cols),
        });
    }
    let mut particular = vec![Rational::zero(); cols];
    for (t, &c) in e.pivots.iter().enumerate() {
        particular[c] = Rational::new(e.rows[t][cols].clone(), e.rows[t][c].clone());
    }
    Ok(AffineSolutionSet {
        dim: cols,
        particular: Some(particular),
        kernel_basis: kernel_from_echelon(&e, cols),
    })
}

/// A point of `set` with every coordinate strictly positive, if one exists.
pub fn strictly_positive_point(set: &AffineSolutionSet) -> Option<Vector> {
    let all: Vec<usize> = (0..set.dim).collect();
    crate::lp::positive_point_on(set, &all)
}
