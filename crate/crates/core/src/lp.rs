//! Exact strict-feasibility test for affine sets.
//!
//! For `x = p + K t` the auxiliary problem is
//!
//! ```text
//! maximize s  subject to  x_i >= s for every masked coordinate i,  s <= 1
//! ```
//!
//! with `t` free. A strictly positive point exists iff the optimum is positive.
//! Writing `s = s0 + s'` with `s0 = min_i p_i` makes `t = 0, s' = 0` a feasible
//! basis, so a single-phase dense simplex with Bland's rule suffices.

use num_traits::{One, Signed, Zero};

use crate::linalg::{AffineSolutionSet, Rational, Vector};

/// Point of `set` whose coordinates listed in `mask` are all strictly positive.
pub(crate) fn positive_point_on(set: &AffineSolutionSet, mask: &[usize]) -> Option<Vector> {
    let p = set.particular.as_ref()?;
    let s0 = mask
        .iter()
        .map(|&i| &p[i])
        .min()
        .cloned()
        .unwrap_or_else(Rational::one);
    if s0.is_positive() {
        return Some(p.clone());
    }
    let k = set.kernel_basis.len();
    if k == 0 {
        return None;
    }

    // Columns: t+ (k), t- (k), s' (1), slacks (mask.len() + 1). Last column is the rhs.
    let m = mask.len() + 1;
    let nvars = 2 * k + 1;
    let width = nvars + m + 1;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (r, &i) in mask.iter().enumerate() {
        // -(K t)_i + s' <= p_i - s0
        let mut row = vec![Rational::zero(); width];
        for (j, kv) in set.kernel_basis.iter().enumerate() {
            row[j] = -kv[i].clone();
            row[k + j] = kv[i].clone();
        }
        row[2 * k] = Rational::one();
        row[nvars + r] = Rational::one();
        row[width - 1] = &p[i] - &s0;
        tab.push(row);
    }
    let mut cap = vec![Rational::zero(); width];
    cap[2 * k] = Rational::one();
    cap[nvars + m - 1] = Rational::one();
    cap[width - 1] = Rational::one() - &s0;
    tab.push(cap);
    // Objective row holds reduced costs c_j - z_j; its rhs holds -(current objective).
    let mut obj = vec![Rational::zero(); width];
    obj[2 * k] = Rational::one();
    let mut basis: Vec<usize> = (nvars..nvars + m).collect();

    loop {
        let current = -&obj[width - 1];
        if (&s0 + &current).is_positive() {
            break;
        }
        // Bland: lowest-index improving column.
        let Some(enter) = (0..width - 1).find(|&j| obj[j].is_positive()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..m {
            let a = &tab[r][enter];
            if a.is_positive() {
                let ratio = &tab[r][width - 1] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // s' <= 1 - s0 keeps the objective bounded, so a blocking row always exists.
        let (lr, _) = leave.expect("auxiliary problem is bounded by construction");
        pivot(&mut tab, &mut obj, lr, enter);
        basis[lr] = enter;
    }

    let mut values = vec![Rational::zero(); nvars];
    for (r, &b) in basis.iter().enumerate() {
        if b < nvars {
            values[b] = tab[r][width - 1].clone();
        }
    }
    let s = &s0 + &values[2 * k];
    if !s.is_positive() {
        return None;
    }
    let mut x = p.clone();
    for (j, kv) in set.kernel_basis.iter().enumerate() {
        let tj = &values[j] - &values[k + j];
        if tj.is_zero() {
            continue;
        }
        for (xi, ki) in x.iter_mut().zip(kv) {
            *xi += &tj * ki;
        }
    }
    debug_assert!(mask.iter().all(|&i| x[i].is_positive()));
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], obj: &mut [Rational], r: usize, c: usize) {
    let inv = Rational::one() / &tab[r][c];
    for v in tab[r].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = tab[r].clone();
    let eliminate = |row: &mut [Rational]| {
        let f = row[c].clone();
        if f.is_zero() {
            return;
        }
        for (x, y) in row.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    eliminate(obj);
}
