//! Exact copositivity test.
//!
//! `A` is copositive iff the minimum of `x^T A x` over the standard simplex is
//! nonnegative (the form is homogeneous of degree two). The minimum is found by
//! enumerating faces of the simplex: a minimizer `x` lies in the relative
//! interior of exactly one face, the one indexed by its support `S`, and there it
//! is an interior critical point of the form restricted to the affine hull of the
//! face. The Lagrange conditions on that face read
//!
//! ```text
//! A_S u = mu * 1,   sum(u) = 1,   u > 0,
//! ```
//!
//! and any solution has `u^T A_S u = mu`. So the global minimum is the smallest
//! `mu` over all supports whose stationarity system has a strictly positive
//! solution. Singular systems are handled by computing the full affine solution
//! set and testing it for a strictly positive point with an exact LP.

use num_traits::{One, Signed, Zero};

use crate::linalg::{eval_quadratic, int, solve_affine, AffineSolutionSet, RatMatrix, Rational, SymMatrix, Vector};
use crate::lp::positive_point_on;
use crate::support::{supports_by_cardinality, Support};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopositivityVerdict {
    pub copositive: bool,
    /// Nonnegative `x` with `x^T A x < 0`, present iff not copositive.
    pub violator: Option<Vector>,
    pub simplex_minimum: Rational,
    pub minimizer: Vector,
}

/// Stationarity candidate on the face indexed by `support`: `(mu, x)` with `x`
/// padded to full length.
fn face_candidate(a: &SymMatrix, support: &Support) -> Option<(Rational, Vector)> {
    let idx = support.indices();
    let k = idx.len();
    let mut rows = Vec::with_capacity(k + 1);
    for &i in idx {
        let mut row: Vector = idx.iter().map(|&l| a.get(i, l).clone()).collect();
        row.push(-Rational::one());
        rows.push(row);
    }
    let mut sum_row = vec![Rational::one(); k];
    sum_row.push(Rational::zero());
    rows.push(sum_row);
    let mut rhs = vec![Rational::zero(); k];
    rhs.push(Rational::one());

    let system = RatMatrix::new(k + 1, rows).expect("rows have k + 1 columns");
    let set: AffineSolutionSet = solve_affine(&system, &rhs).expect("rhs length matches");
    let mask: Vec<usize> = (0..k).collect();
    let point = positive_point_on(&set, &mask)?;
    let mu = point[k].clone();
    let mut x = vec![Rational::zero(); a.order()];
    for (pos, &i) in idx.iter().enumerate() {
        x[i] = point[pos].clone();
    }
    debug_assert_eq!(eval_quadratic(a, &x).unwrap(), mu);
    Some((mu, x))
}

/// Minimum of `x^T A x` over the standard simplex with a rational minimizer.
///
/// Ties are broken by the first support in cardinality-then-lexicographic order.
pub fn min_on_simplex(a: &SymMatrix) -> (Rational, Vector) {
    assert!(a.order() >= 1, "order must be positive");
    let mut best: Option<(Rational, Vector)> = None;
    for support in supports_by_cardinality(a.order()) {
        if let Some((mu, x)) = face_candidate(a, &support) {
            if best.as_ref().is_none_or(|(b, _)| mu < *b) {
                best = Some((mu, x));
            }
        }
    }
    // every vertex is a candidate, so `best` is always set
    best.expect("singleton supports always yield candidates")
}

pub fn is_copositive(a: &SymMatrix) -> CopositivityVerdict {
    let (simplex_minimum, minimizer) = min_on_simplex(a);
    let copositive = !simplex_minimum.is_negative();
    CopositivityVerdict {
        copositive,
        violator: (!copositive).then(|| minimizer.clone()),
        simplex_minimum,
        minimizer,
    }
}

/// Cheap necessary conditions. `Some(false)` means certainly not copositive.
pub fn prefilter(a: &SymMatrix) -> Option<bool> {
    let n = a.order();
    if (0..n).any(|i| a.get(i, i).is_negative()) {
        return Some(false);
    }
    for i in 0..n {
        if !a.get(i, i).is_zero() {
            continue;
        }
        for j in (i + 1)..n {
            if a.get(j, j).is_zero() && a.get(i, j).is_negative() {
                return Some(false);
            }
        }
    }
    if a.upper().iter().all(|v| !v.is_negative()) {
        return Some(true);
    }
    None
}

/// Copositivity verdict only, stopping at the first negative face candidate.
pub fn copositive_quick(a: &SymMatrix) -> bool {
    if let Some(v) = prefilter(a) {
        return v;
    }
    supports_by_cardinality(a.order())
        .iter()
        .filter_map(|s| face_candidate(a, s))
        .all(|(mu, _)| !mu.is_negative())
}

/// One-sided check: bisects the standard simplex along longest edges up to
/// `depth` levels and returns any visited point with `x^T A x < 0`.
///
/// Returning `None` does not certify copositivity.
pub fn subdivision_falsifier(a: &SymMatrix, depth: usize) -> Option<Vector> {
    let n = a.order();
    let vertices: Vec<Vector> = (0..n)
        .map(|i| (0..n).map(|j| int((i == j) as i64)).collect())
        .collect();
    for v in &vertices {
        if eval_quadratic(a, v).expect("order matches").is_negative() {
            return Some(v.clone());
        }
    }
    bisect(a, vertices, depth)
}

fn bisect(a: &SymMatrix, vertices: Vec<Vector>, depth: usize) -> Option<Vector> {
    if depth == 0 || vertices.len() < 2 {
        return None;
    }
    let images: Vec<Vector> = vertices
        .iter()
        .map(|v| a.mul_vec(v).expect("order matches"))
        .collect();
    let bilinear = |i: usize, j: usize| -> Rational {
        vertices[i].iter().zip(&images[j]).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
    };
    let m = vertices.len();
    // all pairwise values nonnegative: the form is nonnegative on this simplex
    let all_nonneg = (0..m).all(|i| (i..m).all(|j| !bilinear(i, j).is_negative()));
    if all_nonneg {
        return None;
    }
    let mut longest = (0, 1);
    let mut best_len = Rational::zero();
    for i in 0..m {
        for j in (i + 1)..m {
            let len = vertices[i]
                .iter()
                .zip(&vertices[j])
                .fold(Rational::zero(), |acc, (x, y)| acc + (x - y) * (x - y));
            if len > best_len {
                best_len = len;
                longest = (i, j);
            }
        }
    }
    let (i, j) = longest;
    let half = Rational::new(1.into(), 2.into());
    let mid: Vector = vertices[i]
        .iter()
        .zip(&vertices[j])
        .map(|(x, y)| (x + y) * &half)
        .collect();
    if eval_quadratic(a, &mid).expect("order matches").is_negative() {
        return Some(mid);
    }
    let mut left = vertices.clone();
    left[i] = mid.clone();
    let mut right = vertices;
    right[j] = mid;
    bisect(a, left, depth - 1).or_else(|| bisect(a, right, depth - 1))
}
