//! Named example matrices.

use crate::linalg::{int_vector, SymMatrix};

/// Order-5 unit-diagonal matrix with `-1` on cyclically adjacent pairs and `+1` elsewhere.
pub fn horn() -> SymMatrix {
    SymMatrix::from_fn(5, |i, j| {
        let d = (j + 5 - i) % 5;
        let v = match d {
            0 => 1,
            1 | 4 => -1,
            _ => 1,
        };
        crate::linalg::int(v)
    })
}

/// `x x^T` for an integer vector.
pub fn rank_one(x: &[i64]) -> SymMatrix {
    SymMatrix::outer(&int_vector(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn horn_pattern() {
        let h = horn();
        assert!(h.is_unit_diagonal());
        assert_eq!(*h.get(0, 1), int(-1));
        assert_eq!(*h.get(0, 4), int(-1));
        assert_eq!(*h.get(0, 2), int(1));
        assert_eq!(*h.get(1, 3), int(1));
        assert_eq!(*h.get(3, 4), int(-1));
    }
}
