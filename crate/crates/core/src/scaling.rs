//! Diagonal scalings `X -> D X D` and the `{-1,0,1}` normalization.
//!
//! No square roots are ever approximated. Whether `A` is a diagonal scaling of a
//! unit-diagonal `{-1,0,1}` matrix is decided by `A_ij^2 = A_ii A_jj`, and `D`
//! is returned only when every `A_ii` is the square of a rational.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{int, Rational, SymMatrix, Vector};

/// Positive diagonal matrix, stored as its diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalScaling(Vector);

impl DiagonalScaling {
    pub fn new(d: Vector) -> Result<Self> {
        if let Some(index) = d.iter().position(|x| !x.is_positive()) {
            return Err(Error::NonPositiveScaling { index });
        }
        Ok(Self(d))
    }

    pub fn identity(order: usize) -> Self {
        Self(vec![Rational::one(); order])
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().map(|d| d.recip()).collect())
    }

    /// Coordinatewise product `D x`.
    pub fn apply(&self, x: &[Rational]) -> Vector {
        self.0.iter().zip(x).map(|(d, v)| d * v).collect()
    }
}

/// `Sigma = D^{-1} A D^{-1}` in the forward orientation `A = D Sigma D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingDecomposition {
    pub pattern: SymMatrix,
    /// `None` when some `A_ii` has no rational square root.
    pub scaling: Option<DiagonalScaling>,
}

/// Entries `d_i d_j S_ij`.
pub fn scale(s: &SymMatrix, d: &DiagonalScaling) -> Result<SymMatrix> {
    if d.order() != s.order() {
        return Err(Error::DimensionMismatch {
            expected: s.order(),
            found: d.order(),
        });
    }
    DiagonalScaling::new(d.0.clone())?;
    Ok(SymMatrix::from_fn(s.order(), |i, j| &d.0[i] * &d.0[j] * s.get(i, j)))
}

/// True iff all `A_ii > 0` and every off-diagonal entry is `0` or satisfies
/// `A_ij^2 = A_ii A_jj`.
pub fn condition_ii_scaling_test(a: &SymMatrix) -> bool {
    let n = a.order();
    if (0..n).any(|i| !a.get(i, i).is_positive()) {
        return false;
    }
    (0..n).all(|i| {
        ((i + 1)..n).all(|j| {
            let v = a.get(i, j);
            v.is_zero() || v * v == a.get(i, i) * a.get(j, j)
        })
    })
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let root = |v: &BigInt| {
        let r = v.sqrt();
        (&r * &r == *v).then_some(r)
    };
    // canonical form: x is a square iff numerator and denominator both are
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

pub fn extract_pattern(a: &SymMatrix) -> Result<ScalingDecomposition> {
    if !condition_ii_scaling_test(a) {
        return Err(Error::ScalingConditionFails);
    }
    let pattern = SymMatrix::from_fn(a.order(), |i, j| {
        let v = a.get(i, j);
        if i == j || v.is_positive() {
            int(1)
        } else if v.is_negative() {
            int(-1)
        } else {
            int(0)
        }
    });
    let roots: Option<Vector> = a.diagonal().iter().map(rational_sqrt).collect();
    let scaling = roots.map(|d| DiagonalScaling::new(d).expect("square roots of positive diagonal"));
    if let Some(d) = &scaling {
        debug_assert_eq!(scale(&pattern, d).unwrap(), *a);
    }
    Ok(ScalingDecomposition { pattern, scaling })
}
