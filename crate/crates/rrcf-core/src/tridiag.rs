//! Tridiagonal continued-fraction determinants.
//!
//! `D(x_1, ..., x_n)` is the determinant of the `(n+1) x (n+1)` matrix with
//! ones on the diagonal, `x_i` on the superdiagonal and `-1` on the
//! subdiagonal. It satisfies `D(x_1..x_n) = D(x_1..x_(n-1)) + x_n D(x_1..x_(n-2))`
//! with `D() = 1`, which is how it is evaluated here; the slice relation at
//! interior cut points is exercised by the property suite.

use crate::ring::Ring;

/// Evaluates `D(entries)` by the two-term forward recurrence.
///
/// `context` supplies the ring constants (level or precision); it is only
/// used when `entries` is empty.
pub fn tridiagonal_det<R: Ring>(entries: &[R], context: &R) -> R {
    let one = context.one_like();
    let mut prev2 = one.clone(); // D of the empty list
    let mut prev = one; // running determinant
    for x in entries {
        let next = prev.add(&x.mul(&prev2));
        prev2 = prev;
        prev = next;
    }
    prev
}

/// The slice relation at cut `m` (1-based), for cross-checking:
/// `D(x) = D(x_1..x_(m-1)) D(x_(m+1)..x_n) + x_m D(x_1..x_(m-2)) D(x_(m+2)..x_n)`.
pub fn slice_relation_rhs<R: Ring>(entries: &[R], m: usize, context: &R) -> R {
    assert!(m >= 1 && m <= entries.len());
    let left_full = tridiagonal_det(&entries[..m - 1], context);
    let right_full = tridiagonal_det(&entries[m..], context);
    let left_short = tridiagonal_det(&entries[..m.saturating_sub(2)], context);
    let right_short = tridiagonal_det(&entries[(m + 1).min(entries.len())..], context);
    left_full
        .mul(&right_full)
        .add(&entries[m - 1].mul(&left_short).mul(&right_short))
}
