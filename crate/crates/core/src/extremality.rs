//! Extremality via the minimal-zero linear system.
//!
//! For each minimal zero `u` and index `k` with `(A u)_k = 0` the system
//! contains the equation `(X u)_k = 0` on symmetric `X`. `A` is extremal in the
//! copositive cone iff the solution space is one-dimensional.
//!
//! Unknowns are the upper-triangle entries of `X` in row-major order.

use num_bigint::BigInt;
use num_traits::Zero as _;

use crate::copositivity::copositive_quick;
use crate::error::{Error, Result};
use crate::linalg::{
    kernel_basis, primitive_integer_row, triangle_len, upper_index, RatMatrix, Rational,
    SymMatrix, Vector,
};
use crate::zeros::{minimal_zeros, MinimalZeroList, Precondition};

/// One equation `(X u^j)_k = 0`, stored as a primitive integer row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemRow {
    pub zero_index: usize,
    pub k: usize,
    pub coefficients: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalitySystem {
    pub order: usize,
    pub rows: Vec<SystemRow>,
}

impl ExtremalitySystem {
    pub fn unknowns(&self) -> usize {
        triangle_len(self.order)
    }

    pub fn coefficient_matrix(&self) -> RatMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| r.coefficients.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        RatMatrix::new(self.unknowns(), rows).expect("rows have one coefficient per unknown")
    }

    /// Evaluates every row at `x` (in upper-triangle coordinates).
    pub fn residuals(&self, x: &SymMatrix) -> Vec<Rational> {
        self.coefficient_matrix().mul_vec(x.upper())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalityCertificate {
    pub system: ExtremalitySystem,
    pub rank: usize,
    pub nullity: usize,
    pub extremal: bool,
    pub basis: Vec<SymMatrix>,
}

pub fn build_system(a: &SymMatrix, zeros: &MinimalZeroList) -> Result<ExtremalitySystem> {
    let n = a.order();
    if zeros.matrix().order() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: zeros.matrix().order(),
        });
    }
    let unknowns = triangle_len(n);
    let mut rows = Vec::new();
    for (j, zero) in zeros.zeros().iter().enumerate() {
        let u = zero.coordinates();
        let au = a.mul_vec(u)?;
        for (k, value) in au.iter().enumerate() {
            if !value.is_zero() {
                continue;
            }
            // (X u)_k = sum_l X_{kl} u_l
            let mut row = vec![Rational::zero(); unknowns];
            for (l, ul) in u.iter().enumerate() {
                if !ul.is_zero() {
                    row[upper_index(n, k, l)] += ul;
                }
            }
            rows.push(SystemRow {
                zero_index: j,
                k,
                coefficients: primitive_integer_row(&row),
            });
        }
    }
    Ok(ExtremalitySystem { order: n, rows })
}

/// Certificate for a matrix whose minimal zeros are already known.
pub fn certificate_from_zeros(a: &SymMatrix, zeros: &MinimalZeroList) -> Result<ExtremalityCertificate> {
    let system = build_system(a, zeros)?;
    let matrix = system.coefficient_matrix();
    if let Some(bad) = system.residuals(a).iter().position(|r| !r.is_zero()) {
        panic!(
            "A violates row {bad} of its own extremality system (zero {}, k = {})",
            system.rows[bad].zero_index, system.rows[bad].k
        );
    }
    let kernel: Vec<Vector> = kernel_basis(&matrix);
    let nullity = kernel.len();
    let rank = matrix.cols() - nullity;
    let n = a.order();
    let basis: Vec<SymMatrix> = kernel
        .into_iter()
        .map(|v| SymMatrix::new(n, v).expect("kernel vectors have triangle length"))
        .collect();
    if !a.is_zero() {
        assert!(nullity >= 1, "a nonzero A always solves its own system");
    }
    let extremal = nullity == 1;
    if extremal && !a.is_zero() {
        assert!(
            basis[0].is_proportional_to(a),
            "one-dimensional solution space must be spanned by A"
        );
    }
    Ok(ExtremalityCertificate {
        system,
        rank,
        nullity,
        extremal,
        basis,
    })
}

pub fn extremality_certificate(a: &SymMatrix, pre: Precondition) -> Result<ExtremalityCertificate> {
    if pre == Precondition::Check && !copositive_quick(a) {
        return Err(Error::NotCopositive);
    }
    let zeros = minimal_zeros(a, Precondition::Certified)?;
    certificate_from_zeros(a, &zeros)
}

/// Basis matrix not proportional to `A`, when the certificate is non-extremal.
pub fn decomposition_direction<'a>(
    a: &SymMatrix,
    cert: &'a ExtremalityCertificate,
) -> Option<&'a SymMatrix> {
    if cert.extremal {
        return None;
    }
    cert.basis.iter().find(|b| !b.is_proportional_to(a))
}
