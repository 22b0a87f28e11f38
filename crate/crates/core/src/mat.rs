//! Small dense-matrix helpers shared by the other modules.
//!
//! Everything here operates on `ndarray` arrays and stays generic over the
//! floating scalar. Matrices in this crate are tiny (<= 1024^2), so the
//! implementations favor clarity over blocking.

use ndarray::{Array1, Array2, ArrayView2};
use num_complex::Complex;

use crate::scalar::{cast, Scalar};

/// Largest absolute entry.
pub fn max_abs<T: Scalar>(a: &ArrayView2<'_, T>) -> T {
    a.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
}

/// Largest absolute entry of a complex matrix (max of |re|, |im| is not
/// enough for purity checks; this is the modulus).
pub fn max_abs_c<T: Scalar>(a: &ArrayView2<'_, Complex<T>>) -> T {
    a.iter().fold(T::zero(), |m, x| m.max(x.norm()))
}

/// Frobenius norm.
pub fn frobenius<T: Scalar>(a: &ArrayView2<'_, T>) -> T {
    a.iter().map(|&x| x * x).sum::<T>().sqrt()
}

pub fn identity<T: Scalar>(n: usize) -> Array2<T> {
    Array2::from_shape_fn((n, n), |(i, j)| if i == j { T::one() } else { T::zero() })
}

/// Max-abs deviation from symmetry, |A - A^T|_max.
pub fn symmetry_deviation<T: Scalar>(a: &ArrayView2<'_, T>) -> T {
    let mut d = T::zero();
    for i in 0..a.nrows() {
        for j in 0..i {
            d = d.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    d
}

/// Max-abs deviation from Hermiticity, |A - A^dagger|_max.
pub fn hermiticity_deviation<T: Scalar>(a: &ArrayView2<'_, Complex<T>>) -> T {
    let mut d = T::zero();
    for i in 0..a.nrows() {
        for j in 0..=i {
            d = d.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    d
}

/// Max-abs of A B - B A.
pub fn commutator_deviation<T: Scalar>(a: &ArrayView2<'_, T>, b: &ArrayView2<'_, T>) -> T {
    let ab = a.dot(b);
    let ba = b.dot(a);
    max_abs(&(&ab - &ba).view())
}

/// Conjugate transpose.
pub fn adjoint<T: Scalar>(a: &ArrayView2<'_, Complex<T>>) -> Array2<Complex<T>> {
    let mut out = Array2::zeros((a.ncols(), a.nrows()));
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            out[(j, i)] = a[(i, j)].conj();
        }
    }
    out
}

/// Promote a real matrix to complex.
pub fn to_complex<T: Scalar>(a: &ArrayView2<'_, T>) -> Array2<Complex<T>> {
    a.mapv(|x| Complex::new(x, T::zero()))
}

/// One-norm (max absolute column sum), the scaling estimate for `expm`.
fn one_norm<T: Scalar>(a: &ArrayView2<'_, T>) -> T {
    let mut best = T::zero();
    for j in 0..a.ncols() {
        let s = a.column(j).iter().map(|&x| x.abs()).sum::<T>();
        best = best.max(s);
    }
    best
}

/// Matrix exponential by scaling-and-squaring with a fixed-order Taylor
/// series. The matrices this crate exponentiates are real antisymmetric
/// with integer entries and norm <= pi*N_O, where order 18 after scaling
/// to one-norm <= 1/2 leaves a truncation error far below 1e-13.
pub fn expm<T: Scalar>(a: &ArrayView2<'_, T>) -> Array2<T> {
    const TAYLOR_ORDER: usize = 18;
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");

    let norm = one_norm(a);
    let half = cast::<T>(0.5);
    let mut squarings = 0u32;
    let mut scale = T::one();
    while norm * scale > half {
        scale = scale * half;
        squarings += 1;
    }
    let b = a.mapv(|x| x * scale);

    // Horner evaluation of sum_{k<=m} B^k / k!
    let mut acc = identity::<T>(n);
    for k in (1..=TAYLOR_ORDER).rev() {
        let coeff = T::one() / cast::<T>(k as f64);
        acc = b.dot(&acc).mapv(|x| x * coeff);
        for i in 0..n {
            acc[(i, i)] = acc[(i, i)] + T::one();
        }
    }
    for _ in 0..squarings {
        acc = acc.dot(&acc);
    }
    acc
}

/// Complex matrix exponential, same scheme as [`expm`].
pub fn expm_c<T: Scalar>(a: &ArrayView2<'_, Complex<T>>) -> Array2<Complex<T>> {
    const TAYLOR_ORDER: usize = 18;
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");

    let norm = {
        let mut best = T::zero();
        for j in 0..n {
            let s = a.column(j).iter().map(|x| x.norm()).sum::<T>();
            best = best.max(s);
        }
        best
    };
    let half = cast::<T>(0.5);
    let mut squarings = 0u32;
    let mut scale = T::one();
    while norm * scale > half {
        scale = scale * half;
        squarings += 1;
    }
    let b = a.mapv(|x| x * scale);

    let mut acc: Array2<Complex<T>> = Array2::zeros((n, n));
    for i in 0..n {
        acc[(i, i)] = Complex::new(T::one(), T::zero());
    }
    for k in (1..=TAYLOR_ORDER).rev() {
        let coeff = T::one() / cast::<T>(k as f64);
        acc = b.dot(&acc).mapv(|x| x * coeff);
        for i in 0..n {
            acc[(i, i)] = acc[(i, i)] + Complex::new(T::one(), T::zero());
        }
    }
    for _ in 0..squarings {
        acc = acc.dot(&acc);
    }
    acc
}

/// Dense real matrix-vector product against a complex vector.
pub fn real_mat_complex_vec<T: Scalar>(
    a: &ArrayView2<'_, T>,
    v: &Array1<Complex<T>>,
) -> Array1<Complex<T>> {
    let mut out = Array1::from_elem(a.nrows(), Complex::new(T::zero(), T::zero()));
    for i in 0..a.nrows() {
        let mut acc = Complex::new(T::zero(), T::zero());
        for j in 0..a.ncols() {
            acc = acc + v[j] * a[(i, j)];
        }
        out[i] = acc;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn expm_of_rotation_generator() {
        // exp(theta [[0,-1],[1,0]]) = [[cos,-sin],[sin,cos]]
        let theta = std::f64::consts::FRAC_PI_2;
        let a = array![[0.0, -theta], [theta, 0.0]];
        let e = expm(&a.view());
        let expect = array![[0.0, -1.0], [1.0, 0.0]];
        assert!(max_abs(&(&e - &expect).view()) < 1e-14);
    }

    #[test]
    fn expm_matches_series_on_random_antisymmetric() {
        // independent oracle: plain Taylor summation without scaling
        let n = 6;
        let mut a = Array2::<f64>::zeros((n, n));
        let mut state = 1u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        for i in 0..n {
            for j in 0..i {
                let x = next();
                a[(i, j)] = x;
                a[(j, i)] = -x;
            }
        }
        let mut series = identity::<f64>(n);
        let mut term = identity::<f64>(n);
        for k in 1..60 {
            term = a.dot(&term).mapv(|x| x / k as f64);
            series = &series + &term;
        }
        let e = expm(&a.view());
        assert!(max_abs(&(&e - &series).view()) < 1e-13);
    }

    #[test]
    fn expm_c_matches_real_embedding() {
        let a: Array2<f64> = array![[0.0, -0.7], [0.7, 0.0]];
        let ac = to_complex(&a.view());
        let er = expm(&a.view());
        let ec = expm_c(&ac.view());
        for i in 0..2 {
            for j in 0..2 {
                assert!((ec[(i, j)].re - er[(i, j)]).abs() < 1e-14);
                assert!(ec[(i, j)].im.abs() < 1e-14);
            }
        }
    }
}
