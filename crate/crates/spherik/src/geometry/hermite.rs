//! Completion of a primitive integer vector to a unimodular matrix.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::Error;
use crate::rational::{is_primitive_integer, QMat, Rat};

/// Returns a unimodular integer matrix whose first row is `u`.
///
/// The remaining rows are a basis of a complement, used to give lattice
/// coordinates on the hyperplane `<u, q> = c`.
pub fn hermite_extend(u: &[Rat]) -> Result<QMat, Error> {
    if !is_primitive_integer(u) {
        return Err(Error::NotPrimitive);
    }
    let n = u.len();
    let mut a: Vec<BigInt> = u.iter().map(|x| x.numer().clone()).collect();
    // Column operations reducing the row `a` to e_1, accumulated into v so
    // that u * v = e_1. Then the wanted matrix is v^{-1}.
    let mut v = QMat::identity(n);
    for i in 1..n {
        if a[i].is_zero() {
            continue;
        }
        let e = a[0].extended_gcd(&a[i]);
        let (g, x, y) = (e.gcd, e.x, e.y);
        let p = &a[0] / &g;
        let q = &a[i] / &g;
        // Columns (0, i) <- (0, i) * [[x, -q], [y, p]], det = (x p + y q) = 1.
        for r in 0..n {
            let c0 = v[(r, 0)].clone();
            let ci = v[(r, i)].clone();
            v[(r, 0)] = &c0 * Rat::from_integer(x.clone()) + &ci * Rat::from_integer(y.clone());
            v[(r, i)] = &c0 * Rat::from_integer(-q.clone()) + &ci * Rat::from_integer(p.clone());
        }
        a[0] = g;
        a[i] = BigInt::zero();
    }
    if a[0].is_negative() {
        for r in 0..n {
            v[(r, 0)] = -v[(r, 0)].clone();
        }
        a[0] = -a[0].clone();
    }
    debug_assert!(a[0].is_one());
    let inv = v.inverse().expect("unimodular accumulator is invertible");
    debug_assert_eq!(inv.row(0), u);
    Ok(inv)
}
