//! Zeros and minimal zeros of copositive matrices.
//!
//! For copositive `A`, a nonnegative `u` with `u^T A u = 0` minimizes the form
//! over the nonnegative orthant. The first-order conditions at such a minimizer
//! give `(A u)_i = 0` for every `i` in the support `S` of `u` (and `(A u)_i >= 0`
//! elsewhere). Hence `A_S u_S = 0`. Conversely any `u_S > 0` in the kernel of the
//! principal submatrix `A_S` gives `u^T A u = u_S^T A_S u_S = 0`. So the zeros
//! with support exactly `S` are the strictly positive kernel vectors of `A_S`.
//! This only holds under copositivity, which is checked unless the caller
//! vouches for it.

use num_traits::{One, Signed, Zero as _};

use crate::copositivity::copositive_quick;
use crate::error::{Error, Result};
use crate::linalg::{
    eval_quadratic, kernel_basis, rat, AffineSolutionSet, RatMatrix, Rational, SymMatrix, Vector,
};
use crate::support::{supports_by_cardinality, Support};

/// How the copositivity precondition is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precondition {
    /// Run the copositivity oracle first.
    Check,
    /// Caller has already certified copositivity.
    Certified,
}

/// A zero normalized so its coordinates sum to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zero {
    coordinates: Vector,
    support: Support,
}

impl Zero {
    /// Normalizes a nonnegative, nonzero vector. Panics otherwise.
    pub(crate) fn from_nonnegative(mut v: Vector) -> Self {
        let total: Rational = v.iter().sum();
        assert!(total.is_positive(), "zero must be nonnegative and nonzero");
        for x in v.iter_mut() {
            *x /= &total;
        }
        let support = Support::from_sorted(
            v.iter()
                .enumerate()
                .filter(|(_, x)| x.is_positive())
                .map(|(i, _)| i)
                .collect(),
        );
        Self {
            coordinates: v,
            support,
        }
    }

    pub fn coordinates(&self) -> &[Rational] {
        &self.coordinates
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn order(&self) -> usize {
        self.coordinates.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalZeroList {
    matrix: SymMatrix,
    zeros: Vec<Zero>,
}

impl MinimalZeroList {
    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn zeros(&self) -> &[Zero] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn supports(&self) -> Vec<Support> {
        self.zeros.iter().map(|z| z.support.clone()).collect()
    }

    pub fn all_supports_have_cardinality(&self, k: usize) -> bool {
        self.zeros.iter().all(|z| z.support.len() == k)
    }
}

fn check_precondition(a: &SymMatrix, pre: Precondition) -> Result<()> {
    if pre == Precondition::Check && !copositive_quick(a) {
        return Err(Error::NotCopositive);
    }
    Ok(())
}

/// Strictly positive kernel vector of `A_S`, padded, together with `dim ker A_S`.
fn positive_kernel_zero(a: &SymMatrix, s: &Support) -> Option<(Zero, usize)> {
    let sub = a.principal(s.indices());
    let rows: Vec<Vector> = sub.rows();
    let m = RatMatrix::new(s.len(), rows).expect("square principal submatrix");
    let basis = kernel_basis(&m);
    if basis.is_empty() {
        return None;
    }
    let dim = basis.len();
    let point = crate::linalg::strictly_positive_point(&AffineSolutionSet::span(s.len(), basis))?;
    let mut full = vec![Rational::zero(); a.order()];
    for (pos, &i) in s.indices().iter().enumerate() {
        full[i] = point[pos].clone();
    }
    Some((Zero::from_nonnegative(full), dim))
}

/// Zero of `a` with support exactly `s`, if any.
pub fn zeros_with_support(a: &SymMatrix, s: &Support, pre: Precondition) -> Result<Option<Zero>> {
    if let Some(&bad) = s.indices().iter().find(|&&i| i >= a.order()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            order: a.order(),
        });
    }
    check_precondition(a, pre)?;
    Ok(positive_kernel_zero(a, s).map(|(z, _)| z))
}

/// All minimal zeros of a copositive matrix, one per minimal support.
pub fn minimal_zeros(a: &SymMatrix, pre: Precondition) -> Result<MinimalZeroList> {
    check_precondition(a, pre)?;
    let unit_diagonal = a.is_unit_diagonal();
    let mut zeros: Vec<Zero> = Vec::new();
    for s in supports_by_cardinality(a.order()) {
        if zeros.iter().any(|z| z.support.is_strict_subset(&s)) {
            continue;
        }
        let Some((zero, kernel_dim)) = positive_kernel_zero(a, &s) else {
            continue;
        };
        // A second kernel direction would give a zero with strictly smaller support.
        if kernel_dim > 1 {
            return Err(Error::DuplicateMinimalSupport {
                support: s.to_string(),
            });
        }
        debug_assert!(eval_quadratic(a, zero.coordinates()).unwrap().is_zero());
        if unit_diagonal && s.len() == 2 {
            check_pair_zero_structure(a, &zero)?;
        }
        zeros.push(zero);
    }
    Ok(MinimalZeroList {
        matrix: a.clone(),
        zeros,
    })
}

/// With unit diagonal, `[[1,c],[c,1]]` has a positive kernel vector only for
/// `c = -1`, and then the zero is `(1/2, 1/2)` on its support.
fn check_pair_zero_structure(a: &SymMatrix, zero: &Zero) -> Result<()> {
    let (i, j) = (zero.support.indices()[0], zero.support.indices()[1]);
    let half = rat(1, 2);
    if *a.get(i, j) != -Rational::one()
        || zero.coordinates[i] != half
        || zero.coordinates[j] != half
    {
        return Err(Error::LemmaViolation(format!(
            "support-two zero on {} does not have equal coordinates",
            zero.support
        )));
    }
    Ok(())
}

/// The normalized `e_i + e_j`: `1/2` at positions `i` and `j` (zero-based).
pub fn pair_zero(i: usize, j: usize, order: usize) -> Result<Zero> {
    for idx in [i, j] {
        if idx >= order {
            return Err(Error::IndexOutOfRange { index: idx, order });
        }
    }
    if i >= j {
        return Err(Error::Parse(format!(
            "pair indices must satisfy i < j, got ({}, {})",
            i + 1,
            j + 1
        )));
    }
    let mut v = vec![Rational::zero(); order];
    v[i] = Rational::one();
    v[j] = Rational::one();
    Ok(Zero::from_nonnegative(v))
}
