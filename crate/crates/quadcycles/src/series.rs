//! Truncated power series over a generic field: Vec of coefficients indexed
//! by power of the local parameter, always handled to an explicit order.

use crate::arith::{MultiPoly, Var};
use crate::field::Field;

pub fn trunc<F: Field>(_f: &F, mut s: Vec<F::El>, n: usize) -> Vec<F::El> {
    s.truncate(n);
    s
}

pub fn add<F: Field>(f: &F, a: &[F::El], b: &[F::El], n: usize) -> Vec<F::El> {
    let mut r = vec![f.zero(); n.min(a.len().max(b.len()))];
    for (i, c) in a.iter().take(n).enumerate() {
        r[i] = f.add(&r[i], c);
    }
    for (i, c) in b.iter().take(n).enumerate() {
        r[i] = f.add(&r[i], c);
    }
    r
}

pub fn sub<F: Field>(f: &F, a: &[F::El], b: &[F::El], n: usize) -> Vec<F::El> {
    let mut r = vec![f.zero(); n.min(a.len().max(b.len()))];
    for (i, c) in a.iter().take(n).enumerate() {
        r[i] = f.add(&r[i], c);
    }
    for (i, c) in b.iter().take(n).enumerate() {
        r[i] = f.sub(&r[i], c);
    }
    r
}

pub fn mul<F: Field>(f: &F, a: &[F::El], b: &[F::El], n: usize) -> Vec<F::El> {
    let mut out = vec![f.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= n {
                break;
            }
            let t = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &t);
        }
    }
    out
}

pub fn scale<F: Field>(f: &F, a: &[F::El], k: &F::El) -> Vec<F::El> {
    a.iter().map(|c| f.mul(c, k)).collect()
}

/// Multiplicative inverse mod τⁿ; the constant term must be a unit.
pub fn inv<F: Field>(f: &F, a: &[F::El], n: usize) -> Vec<F::El> {
    let a0 = a.first().cloned().unwrap_or_else(|| f.zero());
    let inv0 = f.inv(&a0).expect("series inverse needs unit constant term");
    let mut q = vec![f.zero(); n];
    q[0] = inv0.clone();
    for k in 1..n {
        // Σ_{i=0..k} a_i q_{k−i} = 0
        let mut s = f.zero();
        for i in 1..=k {
            let ai = a.get(i).cloned().unwrap_or_else(|| f.zero());
            if f.is_zero(&ai) {
                continue;
            }
            let t = f.mul(&ai, &q[k - i]);
            s = f.add(&s, &t);
        }
        q[k] = f.neg(&f.mul(&s, &inv0));
    }
    q
}

/// First index with a nonzero coefficient; None if identically zero to order.
pub fn valuation<F: Field>(f: &F, a: &[F::El]) -> Option<usize> {
    a.iter().position(|c| !f.is_zero(c))
}

/// Evaluate a polynomial in (U, W) on a pair of series, to order n.
pub fn eval_poly_on<F: Field>(
    f: &F,
    poly: &MultiPoly,
    u_series: &[F::El],
    w_series: &[F::El],
    n: usize,
) -> Vec<F::El> {
    // Horner in W, coefficients are polynomials in U evaluated likewise.
    let wc = poly.as_univariate(Var::W);
    let mut acc = vec![f.zero(); n];
    for c_w in wc.iter().rev() {
        acc = mul(f, &acc, w_series, n);
        let uc = c_w.as_univariate(Var::U);
        let mut cu = vec![f.zero(); n];
        for c_u in uc.iter().rev() {
            cu = mul(f, &cu, u_series, n);
            let k = f
                .from_rat(&c_u.constant_term())
                .expect("coefficient reduces");
            if !f.is_zero(&k) {
                if cu.is_empty() {
                    cu = vec![f.zero(); n];
                }
                cu[0] = f.add(&cu[0], &k);
            }
        }
        acc = add(f, &acc, &cu, n);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    #[test]
    fn inverse_roundtrip() {
        let f = Fp::new(101);
        let a = vec![3u64, 5, 7, 1];
        let ai = inv(&f, &a, 8);
        let prod = mul(&f, &a, &ai, 8);
        assert_eq!(prod[0], 1);
        assert!(prod[1..].iter().all(|&c| c == 0));
    }
}
