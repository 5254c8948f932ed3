//! Small dense helpers on complex amplitude vectors.

use num_complex::Complex64;

/// `<u|v>`, conjugate-linear in the first argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub fn scale(v: &mut [Complex64], s: f64) {
    for a in v {
        *a *= s;
    }
}

/// `v -= c * u`
pub fn sub_scaled(v: &mut [Complex64], c: Complex64, u: &[Complex64]) {
    for (a, b) in v.iter_mut().zip(u) {
        *a -= c * b;
    }
}

pub fn max_abs_diff(u: &[Complex64], v: &[Complex64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

pub fn to_complex(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

/// Removes the components of `v` along the orthonormal set `basis`, twice
/// (classical Gram–Schmidt with one re-orthogonalization pass), and returns
/// the norm of what is left.
pub fn orthogonalize(v: &mut [Complex64], basis: &[&[Complex64]]) -> f64 {
    for _ in 0..2 {
        for u in basis {
            let c = inner(u, v);
            sub_scaled(v, c, u);
        }
    }
    norm(v)
}

/// Residual of `v` after orthogonal projection onto the span of the
/// orthonormal `basis`, relative to `|v|`.
pub fn span_residual(v: &[Complex64], basis: &[&[Complex64]]) -> f64 {
    let n0 = norm(v);
    if n0 == 0.0 {
        return 0.0;
    }
    let mut w = v.to_vec();
    for u in basis {
        let c = inner(u, &w);
        sub_scaled(&mut w, c, u);
    }
    norm(&w) / n0
}
