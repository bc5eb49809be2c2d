//! Dense univariate polynomials over ℤ and ℚ, represented as coefficient
//! vectors with index = power and no trailing zeros.
//!
//! Provides exact division, pseudo-remainder sequences, subresultant-PRS
//! resultants and gcds over ℤ, Newton interpolation over ℚ, and the
//! transforms between power sums and monic polynomial coefficients.

use super::{Int, Rat};
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<Int>;
pub type QPoly = Vec<Rat>;

pub fn zp_trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn qp_trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn zp_deg(p: &ZPoly) -> i64 {
    p.len() as i64 - 1
}

pub fn qp_deg(p: &QPoly) -> i64 {
    p.len() as i64 - 1
}

pub fn zp_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] += ai * bj;
        }
    }
    zp_trim(&mut r);
    r
}

pub fn zp_add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut r = vec![Int::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        r[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        r[i] += c;
    }
    zp_trim(&mut r);
    r
}

pub fn zp_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut r = vec![Int::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        r[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        r[i] -= c;
    }
    zp_trim(&mut r);
    r
}

pub fn zp_scale(a: &ZPoly, k: &Int) -> ZPoly {
    if k.is_zero() {
        return vec![];
    }
    a.iter().map(|c| c * k).collect()
}

pub fn zp_eval(p: &ZPoly, x: &Int) -> Int {
    let mut acc = Int::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn zp_derivative(p: &ZPoly) -> ZPoly {
    if p.len() <= 1 {
        return vec![];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Int::from(i as i64))
        .collect()
}

/// Reduction of a (deg ≥ deg m allowed) by a *monic* m, in place over ℤ.
pub fn zp_rem_monic(a: &ZPoly, m: &ZPoly) -> ZPoly {
    assert!(m.last().is_some_and(|c| c.is_one()), "modulus must be monic");
    let dm = m.len() - 1;
    let mut r = a.clone();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() + 1 - dm - 1;
        for i in 0..dm {
            let v = &m[i] * &lead;
            r[shift + i] -= v;
        }
    }
    zp_trim(&mut r);
    r
}

pub fn zp_content(p: &ZPoly) -> Int {
    let mut g = Int::zero();
    for c in p {
        g = num_integer::gcd(g, c.clone());
    }
    g
}

pub fn zp_primitive(p: &ZPoly) -> ZPoly {
    let g = zp_content(p);
    if g.is_zero() {
        return vec![];
    }
    let g = if p.last().unwrap().is_negative() { -g } else { g };
    p.iter().map(|c| c / &g).collect()
}

/// Pseudo-remainder: lc(b)^(deg a − deg b + 1) · a mod b.
pub fn zp_prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = zp_deg(b);
    assert!(db >= 0);
    let lc = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut steps = zp_deg(a) - db + 1;
    while zp_deg(&r) >= db && !r.is_empty() {
        let dr = zp_deg(&r) as usize;
        let rl = r.last().unwrap().clone();
        let mut nr = zp_scale(&r, &lc);
        let shift = dr - db as usize;
        for (i, bc) in b.iter().enumerate() {
            nr[shift + i] -= bc * &rl;
        }
        zp_trim(&mut nr);
        r = nr;
        steps -= 1;
    }
    // Match the classical pseudo-remainder normalization.
    while steps > 0 {
        r = zp_scale(&r, &lc);
        steps -= 1;
    }
    r
}

/// Resultant over ℤ as the Bareiss (fraction-free) determinant of the
/// Sylvester matrix.
pub fn zp_resultant(a: &ZPoly, b: &ZPoly) -> Int {
    let (mut f, mut g) = (a.clone(), b.clone());
    zp_trim(&mut f);
    zp_trim(&mut g);
    if f.is_empty() || g.is_empty() {
        return Int::zero();
    }
    let (m, n) = (zp_deg(&f) as usize, zp_deg(&g) as usize);
    if m == 0 {
        return f[0].pow(n as u32);
    }
    if n == 0 {
        return g[0].pow(m as u32);
    }
    let size = m + n;
    let mut mat = vec![vec![Int::zero(); size]; size];
    for row in 0..n {
        for (k, c) in f.iter().enumerate() {
            mat[row][row + m - k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in g.iter().enumerate() {
            mat[n + row][row + n - k] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free Gaussian elimination; returns the determinant.
pub fn bareiss_det(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut sign = 1i64;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Int::zero();
            };
            m.swap(k, pivot);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                debug_assert!(r.is_zero(), "Bareiss exact division");
                m[i][j] = q;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Gcd over ℚ via the primitive PRS over ℤ; result is primitive over ℤ.
pub fn zp_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut f = zp_primitive(a);
    let mut g = zp_primitive(b);
    if f.is_empty() {
        return g;
    }
    if g.is_empty() {
        return f;
    }
    if zp_deg(&f) < zp_deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = zp_primitive(&zp_prem(&f, &g));
        f = g;
        g = r;
    }
    zp_primitive(&f)
}

pub fn zp_is_squarefree(p: &ZPoly) -> bool {
    zp_deg(&zp_gcd(p, &zp_derivative(p))) == 0
}

// ---- ℚ[X] helpers ----

pub fn qp_from_zp(p: &ZPoly) -> QPoly {
    p.iter().map(|c| Rat::from_integer(c.clone())).collect()
}

pub fn qp_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            r[i + j] += ai * bj;
        }
    }
    qp_trim(&mut r);
    r
}

pub fn qp_add(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        r[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        r[i] += c;
    }
    qp_trim(&mut r);
    r
}

pub fn qp_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        r[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        r[i] -= c;
    }
    qp_trim(&mut r);
    r
}

pub fn qp_scale(a: &QPoly, k: &Rat) -> QPoly {
    if k.is_zero() {
        return vec![];
    }
    a.iter().map(|c| c * k).collect()
}

pub fn qp_eval(p: &QPoly, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Division with remainder over ℚ; returns (q, r).
pub fn qp_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = qp_deg(b);
    assert!(db >= 0, "division by zero polynomial");
    let lc = b.last().unwrap();
    let mut r = a.clone();
    let mut q = vec![Rat::zero(); a.len().saturating_sub(b.len()) + 1];
    while qp_deg(&r) >= db {
        let dr = qp_deg(&r) as usize;
        let coef = r.last().unwrap() / lc;
        let shift = dr - db as usize;
        q[shift] = coef.clone();
        for (i, bc) in b.iter().enumerate() {
            let v = bc * &coef;
            r[shift + i] -= v;
        }
        qp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    qp_trim(&mut q);
    (q, r)
}

/// Exact division over ℚ; panics on nonzero remainder.
pub fn qp_exact_div(a: &QPoly, b: &QPoly) -> QPoly {
    let (q, r) = qp_divrem(a, b);
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

/// Newton-form interpolation through (points[i], values[i]); points distinct.
pub fn qp_interpolate(points: &[Rat], values: &[QPolyValue]) -> Vec<QPoly> {
    // Interpolates a VECTOR of polynomials sharing the same sample points:
    // values[i] is the coefficient vector observed at points[i]; returns, for
    // each output coordinate, the interpolating polynomial's coefficients.
    assert_eq!(points.len(), values.len());
    let n = points.len();
    let width = values.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut result = Vec::with_capacity(width);
    for k in 0..width {
        let col: Vec<Rat> = values
            .iter()
            .map(|v| v.get(k).cloned().unwrap_or_else(Rat::zero))
            .collect();
        // divided differences
        let mut dd = col.clone();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = dd[i].clone() - dd[i - 1].clone();
                let den = points[i].clone() - points[i - level].clone();
                dd[i] = num / den;
            }
        }
        // expand Newton form
        let mut poly: QPoly = vec![];
        let mut basis: QPoly = vec![Rat::one()];
        for (i, d) in dd.iter().enumerate() {
            poly = qp_add(&poly, &qp_scale(&basis, d));
            if i + 1 < n {
                basis = qp_mul(&basis, &vec![-points[i].clone(), Rat::one()]);
            }
        }
        result.push(poly);
    }
    result
}

pub type QPolyValue = Vec<Rat>;

// ---- power sums ↔ monic coefficients (Newton's identities) ----

/// Power sums p_1..p_k of the roots of a monic polynomial (over ℚ).
pub fn power_sums_from_monic(poly: &QPoly, k: usize) -> Vec<Rat> {
    let n = qp_deg(poly);
    assert!(n >= 0 && poly.last().unwrap().is_one(), "needs monic input");
    let n = n as usize;
    // a[i] = coefficient of X^(n-i) (a[0] = 1)
    let a = |i: usize| -> Rat {
        if i <= n {
            poly[n - i].clone()
        } else {
            Rat::zero()
        }
    };
    let mut p: Vec<Rat> = Vec::with_capacity(k + 1);
    p.push(Rat::from_integer(Int::from(n as i64))); // p_0 = n
    for m in 1..=k {
        // p_m + a1 p_{m-1} + ... + a_{m-1} p_1 + m·a_m = 0   (m ≤ n)
        // p_m + a1 p_{m-1} + ... + a_n p_{m-n} = 0           (m > n)
        let mut s = Rat::zero();
        for i in 1..=m.min(n) {
            if i < m {
                s += a(i) * p[m - i].clone();
            }
        }
        if m <= n {
            s += Rat::from_integer(Int::from(m as i64)) * a(m);
        }
        p.push(-s);
    }
    p.remove(0);
    p
}

/// Monic polynomial (X^n + c_{n-1}X^{n-1} + …) from power sums p_1..p_n.
pub fn monic_from_power_sums(p: &[Rat], n: usize) -> QPoly {
    assert!(p.len() >= n);
    // e_k via Newton: k·e_k = Σ_{i=1..k} (−1)^{i−1} e_{k−i} p_i
    let mut e: Vec<Rat> = vec![Rat::one()];
    for k in 1..=n {
        let mut s = Rat::zero();
        let mut sign = Rat::one();
        for i in 1..=k {
            s += sign.clone() * e[k - i].clone() * p[i - 1].clone();
            sign = -sign;
        }
        e.push(s / Rat::from_integer(Int::from(k as i64)));
    }
    // poly = Σ (−1)^k e_k X^{n−k}
    let mut out = vec![Rat::zero(); n + 1];
    let mut sign = Rat::one();
    for (k, ek) in e.iter().enumerate() {
        out[n - k] = sign.clone() * ek.clone();
        sign = -sign;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn zp(v: &[i64]) -> ZPoly {
        let mut p: ZPoly = v.iter().map(|&c| int(c)).collect();
        zp_trim(&mut p);
        p
    }

    #[test]
    fn resultant_small_cases() {
        // res(x²−1, x−2) = 3
        assert_eq!(zp_resultant(&zp(&[-1, 0, 1]), &zp(&[-2, 1])), int(3));
        // common factor ⇒ 0
        assert_eq!(zp_resultant(&zp(&[1, 0, 1]), &zp(&[1, 0, 1])), int(0));
        // res(x²+1, x²−2) = (x²+1 at ±√2)… = 9
        assert_eq!(zp_resultant(&zp(&[1, 0, 1]), &zp(&[-2, 0, 1])), int(9));
    }

    #[test]
    fn resultant_matches_product_over_roots() {
        // f = (x−1)(x−2)(x−3), g = x² − x − 1; res = lc(f)^2 · g(1)g(2)g(3)
        let f = zp(&[-6, 11, -6, 1]);
        let g = zp(&[-1, -1, 1]);
        let expect = int((1 - 1 - 1) * (4 - 2 - 1) * (9 - 3 - 1));
        assert_eq!(zp_resultant(&f, &g), expect);
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = zp_mul(&zp(&[1, 1]), &zp(&[2, 3])); // (x+1)(3x+2)
        let g = zp_mul(&zp(&[1, 1]), &zp(&[-5, 1]));
        assert_eq!(zp_gcd(&f, &g), zp(&[1, 1]));
        assert!(zp_is_squarefree(&f));
        assert!(!zp_is_squarefree(&zp_mul(&zp(&[1, 1]), &zp(&[1, 1]))));
    }

    #[test]
    fn newton_roundtrip() {
        // (X−1)(X−2)(X+3) = X³ − 7X + 6
        let m: QPoly = vec![rat(6), rat(-7), rat(0), rat(1)];
        let ps = power_sums_from_monic(&m, 8);
        assert_eq!(ps[0], rat(0)); // 1+2−3
        assert_eq!(ps[1], rat(14)); // 1+4+9
        let back = monic_from_power_sums(&ps, 3);
        assert_eq!(back, m);
    }

    #[test]
    fn interpolation_roundtrip() {
        // two coordinates: f0 = 1 + 2c², f1 = c³ − c
        let pts: Vec<Rat> = (-3..=3).map(rat).collect();
        let vals: Vec<QPolyValue> = pts
            .iter()
            .map(|c| {
                vec![
                    rat(1) + rat(2) * c * c,
                    c * c * c - c.clone(),
                ]
            })
            .collect();
        let polys = qp_interpolate(&pts, &vals);
        assert_eq!(polys[0], vec![rat(1), rat(0), rat(2)]);
        assert_eq!(polys[1], vec![rat(0), rat(-1), rat(0), rat(1)]);
    }
}
