//! Euler factors of the curve from point counts, Jacobian orders, torsion
//! triviality certificates, Weil checks, and the endomorphism-ring test.

use crate::arith::primes::{factor, primes_below};
use crate::arith::resultant::resultant;
use crate::arith::unipoly::ZPoly;
use crate::arith::{int, Int, MultiPoly, Rat, Var};
use crate::curve::count_points;
use crate::ff::{factor_degree_pattern, FactorPattern};
use crate::field::{Field, Fp};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Local factor P_p(T) of the zeta function. For good p the full factor has
/// degree 8 with the functional-equation symmetry c₈₋ᵢ = p^{4−i}·cᵢ; large p
/// only carry the truncation the coefficient sieve needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFactor {
    pub p: u64,
    /// coefficients of P_p(T), constant term 1
    pub coeffs: Vec<Int>,
    /// true when the factor is complete (degree 8, or the fixed factor at 2)
    pub full: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZetaError {
    BadPrime(u64),
    Truncated(u64),
    CertificateFailed(String),
}

impl std::fmt::Display for ZetaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ZetaError::BadPrime(p) => write!(f, "no Euler factor available at {}", p),
            ZetaError::Truncated(p) => write!(f, "factor at {} is truncated", p),
            ZetaError::CertificateFailed(s) => write!(f, "certificate failed: {}", s),
        }
    }
}

impl std::error::Error for ZetaError {}

/// The Euler factor at 2, a configured constant: (1 + T + 2T²)²(1 + T)².
///
/// The special fiber at 2 has two elliptic components, each with trace of
/// Frobenius −1, contributing (1 + T + 2T²)², and a 2-dimensional toric part
/// whose loops are orientation-reversed by Frobenius, contributing (1 + T)².
pub fn euler_factor_at_2() -> EulerFactor {
    // (1+T+2T²)² (1+T)² = 1 + 4T + 10T² + 16T³ + 17T⁴ + 12T⁵ + 4T⁶
    EulerFactor {
        p: 2,
        coeffs: vec![int(1), int(4), int(10), int(16), int(17), int(12), int(4)],
        full: true,
    }
}

/// Euler factor at p to the degree needed for `d` Dirichlet-series terms:
/// full (degree 8) once counts over 𝔽_{p^e}, e ≤ 4, are available; truncated
/// to 1 + c₁T (+ …) when only lower counts are requested.
pub fn euler_factor_to_degree(p: u64, d: usize) -> Result<EulerFactor, ZetaError> {
    if p == 2 {
        return Ok(euler_factor_at_2());
    }
    if p == 8029187 {
        return Err(ZetaError::BadPrime(p));
    }
    let e_needed = d.min(4);
    let mut s = Vec::with_capacity(e_needed);
    for e in 1..=e_needed {
        let n = count_points(p, e).map_err(|_| ZetaError::BadPrime(p))?;
        let pe = Int::from(p).pow(e as u32);
        s.push(pe + Int::one() - Int::from(n));
    }
    // Newton: p_k − e₁p_{k−1} + … + (−1)^k k e_k = 0, c_k = (−1)^k e_k
    let mut c = vec![Int::one()];
    for k in 1..=e_needed {
        // c_k = −(1/k)·Σ_{i=1..k} s_i·c_{k−i}
        let mut acc = Int::zero();
        for i in 1..=k {
            acc += &s[i - 1] * &c[k - i];
        }
        let (q, r) = num_integer::Integer::div_rem(&(-acc), &Int::from(k as i64));
        assert!(r.is_zero(), "integral Euler coefficients");
        c.push(q);
    }
    if e_needed == 4 {
        // complete by the functional equation c_{8−i} = p^{4−i} c_i
        for i in (0..4).rev() {
            let pw = Int::from(p).pow((4 - i) as u32);
            let v = &c[i] * pw;
            c.push(v);
        }
        Ok(EulerFactor {
            p,
            coeffs: c,
            full: true,
        })
    } else {
        Ok(EulerFactor {
            p,
            coeffs: c,
            full: false,
        })
    }
}

/// Full Euler factor at a good prime.
pub fn euler_factor(p: u64) -> Result<EulerFactor, ZetaError> {
    euler_factor_to_degree(p, 4)
}

/// #J(𝔽_p) = P_p(1).
pub fn jacobian_order(p: u64) -> Result<Int, ZetaError> {
    let f = euler_factor(p)?;
    if !f.full || f.p == 2 {
        return Err(ZetaError::Truncated(p));
    }
    Ok(f.coeffs.iter().sum())
}

/// Torsion-triviality certificate: for each prime ℓ, the ℓ-part of J(ℚ)_tors
/// injects into J(𝔽_p) for every good p ≠ ℓ in the set; returns the combined
/// bound (1 means trivial torsion is certified).
#[derive(Debug, Clone)]
pub struct TorsionCertificate {
    pub primes: Vec<u64>,
    pub orders: Vec<Int>,
    pub bound: Int,
    pub trivial: bool,
}

pub fn torsion_certificate(primes: &[u64]) -> Result<TorsionCertificate, ZetaError> {
    let orders: Result<Vec<Int>, _> = primes.iter().map(|&p| jacobian_order(p)).collect();
    let orders = orders?;
    // candidate ℓ: prime divisors of any order
    let mut candidates: Vec<u64> = vec![];
    for n in &orders {
        for (q, _) in factor(n, 100_000).factors {
            if let Some(qq) = q.to_u64() {
                if !candidates.contains(&qq) {
                    candidates.push(qq);
                }
            }
        }
    }
    candidates.sort_unstable();
    let mut bound = Int::one();
    for l in candidates {
        let li = Int::from(l);
        let mut v_min: Option<u32> = None;
        for (p, n) in primes.iter().zip(&orders) {
            if *p == l {
                continue;
            }
            let mut v = 0u32;
            let mut m = n.clone();
            while (&m % &li).is_zero() {
                m /= &li;
                v += 1;
            }
            v_min = Some(v_min.map_or(v, |x| x.min(v)));
        }
        match v_min {
            None => {
                // ℓ-part unbounded by this prime set
                return Ok(TorsionCertificate {
                    primes: primes.to_vec(),
                    orders,
                    bound: Int::zero(),
                    trivial: false,
                });
            }
            Some(v) => {
                bound *= li.pow(v);
            }
        }
    }
    let trivial = bound.is_one();
    Ok(TorsionCertificate {
        primes: primes.to_vec(),
        orders,
        bound,
        trivial,
    })
}

/// Monic polynomial with the reciprocal roots of f (constant term first).
fn reversed_monic(f: &EulerFactor) -> ZPoly {
    let mut v: ZPoly = f.coeffs.iter().rev().cloned().collect();
    assert!(v.last().unwrap().is_one());
    crate::arith::unipoly::zp_trim(&mut v);
    v
}

/// Certificate that End(J) = ℤ over the algebraic closure, following the
/// two-prime strategy: both Euler factors irreducible, no ratio of distinct
/// Frobenius eigenvalues a root of unity, and no common subfield except ℚ.
#[derive(Debug, Clone)]
pub struct EndomorphismCertificate {
    pub p1: u64,
    pub p2: u64,
    /// witness primes q with f irreducible mod q
    pub irreducibility_witnesses: (u64, u64),
    /// aux primes used for the squarefreeness of g_m, per m that needed them
    pub gm_scan_max_m: u64,
    pub gm_moduli_used: Vec<u64>,
    /// witness primes for the no-common-subfield check, both directions
    pub subfield_witnesses: (u64, u64),
}

/// m-range for the root-of-unity scan: every cyclotomic divisor of h(T) has
/// φ(m) ≤ deg h = 56, and φ(m) ≥ √(m/2) gives m ≤ 2·56² = 6272.
pub const GM_SCAN_BOUND: u64 = 6272;
pub const PHI_BOUND: u64 = 56;

pub fn endomorphism_test(p1: u64, p2: u64) -> Result<EndomorphismCertificate, ZetaError> {
    let f1 = euler_factor(p1)?;
    let f2 = euler_factor(p2)?;
    let r1 = reversed_monic(&f1);
    let r2 = reversed_monic(&f2);

    // (a) irreducibility over ℚ via an irreducible factor pattern mod q
    let w1 = find_irreducible_witness(&r1)
        .ok_or_else(|| ZetaError::CertificateFailed("no irreducibility witness for f1".into()))?;
    let w2 = find_irreducible_witness(&r2)
        .ok_or_else(|| ZetaError::CertificateFailed("no irreducibility witness for f2".into()))?;

    // (b) for every m with φ(m) ≤ 56: Π(T − α^m) squarefree over ℚ,
    // certified by squarefreeness mod an auxiliary prime
    let mut moduli_used = vec![];
    for r in [&r1, &r2] {
        let used = gm_squarefree_scan(r)?;
        for q in used {
            if !moduli_used.contains(&q) {
                moduli_used.push(q);
            }
        }
    }

    // (c) no common subfield except ℚ: q inert in K₁ and split-at-a-point in
    // K₂ forces any common subfield to be ℚ; both directions recorded
    let s12 = find_subfield_witness(&r1, &r2).ok_or_else(|| {
        ZetaError::CertificateFailed("no inert/split witness (f1 inert, f2 split)".into())
    })?;
    let s21 = find_subfield_witness(&r2, &r1).ok_or_else(|| {
        ZetaError::CertificateFailed("no inert/split witness (f2 inert, f1 split)".into())
    })?;

    Ok(EndomorphismCertificate {
        p1,
        p2,
        irreducibility_witnesses: (w1, w2),
        gm_scan_max_m: GM_SCAN_BOUND,
        gm_moduli_used: moduli_used,
        subfield_witnesses: (s12, s21),
    })
}

fn find_irreducible_witness(f: &ZPoly) -> Option<u64> {
    for q in primes_below(10_000) {
        if q < 3 {
            continue;
        }
        if let Ok(FactorPattern::Irreducible) = factor_degree_pattern(f, q) {
            return Some(q);
        }
    }
    None
}

fn find_subfield_witness(f_inert: &ZPoly, f_split: &ZPoly) -> Option<u64> {
    for q in primes_below(10_000) {
        if q < 3 {
            continue;
        }
        let a = factor_degree_pattern(f_inert, q);
        let b = factor_degree_pattern(f_split, q);
        match (a, b) {
            (Ok(FactorPattern::Irreducible), Ok(FactorPattern::Degrees(d)))
                if d.contains(&1) =>
            {
                return Some(q)
            }
            _ => continue,
        }
    }
    None
}

/// Squarefreeness over ℚ of Π(T − αᵢ^m) for all m ≤ 6272 with φ(m) ≤ 56,
/// certified modulo auxiliary primes; returns the aux primes used.
fn gm_squarefree_scan(rmonic: &ZPoly) -> Result<Vec<u64>, ZetaError> {
    let n = rmonic.len() - 1;
    let phi = euler_phi_table(GM_SCAN_BOUND as usize);
    let ms: Vec<u64> = (1..=GM_SCAN_BOUND)
        .filter(|&m| phi[m as usize] <= PHI_BOUND)
        .collect();
    let aux: Vec<u64> = [10007u64, 10009, 10037, 10039, 10061, 10067, 10069, 10079]
        .into_iter()
        .collect();
    let mut pending: Vec<u64> = ms;
    let mut used = vec![];
    let nmax = 8 * GM_SCAN_BOUND as usize + 1;
    for &q in &aux {
        if pending.is_empty() {
            break;
        }
        let fq = Fp::new(q);
        // s_k mod q for k ≤ 8·6272 via the linear recurrence from rmonic
        let a: Vec<u64> = (0..=n)
            .map(|i| fq.from_int(&rmonic[n - i])) // a[i] = coeff of X^(n−i)
            .collect();
        let mut s = vec![0u64; nmax + 1];
        s[0] = (n as u64) % q;
        for m in 1..=nmax {
            let mut acc = 0u64;
            for i in 1..=m.min(n) {
                if i < m {
                    acc = fq.add(&acc, &fq.mul(&a[i], &s[m - i]));
                }
            }
            if m <= n {
                acc = fq.add(&acc, &fq.mul(&fq.from_i64(m as i64), &a[m]));
            }
            s[m] = fq.neg(&acc);
        }
        let mut still = vec![];
        for &m in &pending {
            // power sums of {α^m}: S_k = s_{mk}
            let sk: Vec<u64> = (1..=n).map(|k| s[m as usize * k]).collect();
            // Newton back to monic coefficients mod q
            let mut e = vec![1u64];
            let mut ok = true;
            for k in 1..=n {
                let mut acc = 0u64;
                let mut sign = true;
                for i in 1..=k {
                    let t = fq.mul(&e[k - i], &sk[i - 1]);
                    acc = if sign { fq.add(&acc, &t) } else { fq.sub(&acc, &t) };
                    sign = !sign;
                }
                let kinv = fq.inv(&fq.from_i64(k as i64)).unwrap();
                e.push(fq.mul(&acc, &kinv));
            }
            // g(T) = Σ (−1)^k e_k T^{n−k}, monic
            let mut g = vec![0u64; n + 1];
            let mut sign = 1i64;
            for (k, ek) in e.iter().enumerate() {
                g[n - k] = if sign > 0 { *ek } else { fq.neg(ek) };
                sign = -sign;
            }
            let d = crate::field::poly_gcd(&fq, &g, &crate::field::poly_derivative(&fq, &g));
            if d.len() != 1 {
                ok = false;
            }
            if !ok {
                still.push(m);
            }
        }
        if still.len() < pending.len() {
            used.push(q);
        }
        pending = still;
    }
    if !pending.is_empty() {
        return Err(ZetaError::CertificateFailed(format!(
            "g_m squarefreeness unresolved for m ∈ {:?}",
            &pending[..pending.len().min(5)]
        )));
    }
    Ok(used)
}

fn euler_phi_table(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            let mut j = i;
            while j <= n {
                phi[j] -= phi[j] / i as u64;
                j += i;
            }
        }
    }
    phi
}

/// h(T) = Res_x(f(x), f(Tx)) / (1−T)^(2g) for the Euler factor at p, kept as
/// a consistency instance: its degree is 2g(2g−1) = 56 and h(1) ≠ 0.
pub fn ratio_polynomial(p: u64) -> Result<(usize, bool), ZetaError> {
    let f = euler_factor(p)?;
    // f(x) and f(T·x) as multivariate polynomials in (x, t)
    let mut fx = MultiPoly::zero();
    let mut ftx = MultiPoly::zero();
    for (i, c) in f.coeffs.iter().enumerate() {
        let ci = Rat::from_integer(c.clone());
        let xi = MultiPoly::var(Var::X).pow(i as u32);
        fx = fx.add(&xi.scale(&ci));
        ftx = ftx.add(&xi.mul(&MultiPoly::var(Var::T).pow(i as u32)).scale(&ci));
    }
    let res = resultant(&fx, &ftx, Var::X).expect("x occurs");
    // divide by (1 − T)^8
    let one_minus_t = MultiPoly::one().sub(&MultiPoly::var(Var::T));
    let mut h = res;
    for _ in 0..8 {
        h = h
            .exact_div(&one_minus_t)
            .ok_or_else(|| ZetaError::CertificateFailed("(1−T)^8 does not divide".into()))?;
    }
    let deg = h.degree(Var::T) as usize;
    let h1 = h.eval(&[(Var::T, Rat::one())]);
    Ok((deg, !h1.is_zero()))
}

/// Weil consistency for a full factor: symmetry and coefficient bounds, plus
/// a floating-point check that all reciprocal roots have modulus √p.
pub fn weil_check(f: &EulerFactor) -> bool {
    if !f.full || f.p == 2 {
        return true;
    }
    let p = Int::from(f.p);
    let c = &f.coeffs;
    if c.len() != 9 {
        return false;
    }
    for i in 0..4 {
        if c[8 - i] != &c[i] * p.pow((4 - i) as u32) {
            return false;
        }
    }
    // |c_i| ≤ C(8,i) p^(i/2)
    let binom = [1f64, 8.0, 28.0, 56.0, 70.0, 56.0, 28.0, 8.0, 1.0];
    for (i, ci) in c.iter().enumerate() {
        let bound = binom[i] * (f.p as f64).powf(i as f64 / 2.0) * (1.0 + 1e-9);
        if ci.abs().to_f64().unwrap() > bound {
            return false;
        }
    }
    // reciprocal roots on the circle |α| = √p (Durand–Kerner in f64)
    let roots = durand_kerner(c);
    let target = (f.p as f64).sqrt();
    roots
        .iter()
        .all(|&(re, im)| ((re * re + im * im).sqrt() - target).abs() < 1e-6 * target)
}

/// Roots of Σ cᵢ Tⁱ (reciprocal roots of the factor are 1/roots; we check
/// |root| = p^(−1/2) equivalently).
fn durand_kerner(c: &[Int]) -> Vec<(f64, f64)> {
    let n = c.len() - 1;
    let lead = c[n].to_f64().unwrap();
    let a: Vec<f64> = c.iter().map(|x| x.to_f64().unwrap() / lead).collect();
    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut acc = (0.0f64, 0.0f64);
        for k in (0..=n).rev() {
            let re = acc.0 * z.0 - acc.1 * z.1 + a[k];
            let im = acc.0 * z.1 + acc.1 * z.0;
            acc = (re, im);
        }
        acc
    };
    let mut zs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            let r = 1.0 + a[0].abs().powf(1.0 / n as f64);
            (r * ang.cos(), r * ang.sin())
        })
        .collect();
    for _ in 0..200 {
        let old = zs.clone();
        for i in 0..n {
            let mut denom = (1.0f64, 0.0f64);
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = (old[i].0 - old[j].0, old[i].1 - old[j].1);
                denom = (
                    denom.0 * d.0 - denom.1 * d.1,
                    denom.0 * d.1 + denom.1 * d.0,
                );
            }
            let v = eval(old[i]);
            let nrm = denom.0 * denom.0 + denom.1 * denom.1;
            if nrm > 0.0 {
                let q = ((v.0 * denom.0 + v.1 * denom.1) / nrm, (v.1 * denom.0 - v.0 * denom.1) / nrm);
                zs[i] = (old[i].0 - q.0, old[i].1 - q.1);
            }
        }
    }
    // the reciprocal-root check wants |1/z| = √p, i.e. |z| = 1/√p; invert
    zs.iter()
        .map(|&(re, im)| {
            let n2 = re * re + im * im;
            (re / n2, -im / n2)
        })
        .collect()
}

/// The displayed Euler factors at 5 and 7, used as frozen cross-checks.
pub fn displayed_factor_5() -> Vec<i64> {
    vec![1, 3, 6, 6, -8, 30, 150, 375, 625]
}

pub fn displayed_factor_7() -> Vec<i64> {
    vec![1, 7, 28, 94, 276, 658, 1372, 2401, 2401]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_at_5_and_7_match_display() {
        let f5 = euler_factor(5).unwrap();
        assert_eq!(
            f5.coeffs,
            displayed_factor_5().into_iter().map(int).collect::<Vec<_>>()
        );
        let f7 = euler_factor(7).unwrap();
        assert_eq!(
            f7.coeffs,
            displayed_factor_7().into_iter().map(int).collect::<Vec<_>>()
        );
        assert!(weil_check(&f5) && weil_check(&f7));
    }

    #[test]
    fn factor_at_2_expansion() {
        let f2 = euler_factor_at_2();
        assert_eq!(f2.coeffs.len(), 7);
        assert_eq!(f2.coeffs[1], int(4));
        // (1+T+2T²)²(1+T)² re-expanded independently
        let a = crate::arith::unipoly::zp_mul(&vec![int(1), int(1), int(2)], &vec![int(1), int(1), int(2)]);
        let b = crate::arith::unipoly::zp_mul(&vec![int(1), int(1)], &vec![int(1), int(1)]);
        assert_eq!(crate::arith::unipoly::zp_mul(&a, &b), f2.coeffs);
    }

    #[test]
    fn jacobian_orders() {
        assert_eq!(jacobian_order(7).unwrap(), int(7238));
        assert_eq!(jacobian_order(7).unwrap(), int(2 * 7 * 11 * 47));
        assert_eq!(jacobian_order(13).unwrap(), int(50439));
        assert_eq!(jacobian_order(13).unwrap(), int(3 * 17 * 23 * 43));
        assert_eq!(jacobian_order(5).unwrap(), int(1188));
    }

    #[test]
    fn torsion_certificates() {
        assert!(torsion_certificate(&[7, 13]).unwrap().trivial);
        let weak = torsion_certificate(&[5, 7]).unwrap();
        assert!(!weak.trivial);
        assert_eq!(weak.bound, int(22));
        let single = torsion_certificate(&[7]).unwrap();
        assert!(!single.trivial);
    }

    #[test]
    fn truncated_factor_for_large_p() {
        let f = euler_factor_to_degree(101, 1).unwrap();
        assert!(!f.full);
        assert_eq!(f.coeffs.len(), 2);
        // full factors stay cheap only for small p; check one mid-size prime
        let full = euler_factor(17).unwrap();
        assert!(full.full);
        assert!(weil_check(&full));
        let trunc = euler_factor_to_degree(17, 2).unwrap();
        assert_eq!(full.coeffs[1], trunc.coeffs[1]);
        assert_eq!(full.coeffs[2], trunc.coeffs[2]);
    }

    #[test]
    fn newton_roundtrip_counts() {
        // counts → factor → counts for p = 5
        let f = euler_factor(5).unwrap();
        // s_e from the factor: power sums of reciprocal roots via the
        // recurrence, must reproduce p^e + 1 − #C
        let n = 8;
        let r = reversed_monic(&f);
        let a = |i: usize| -> Int { r[n - i].clone() };
        let mut s: Vec<Int> = vec![int(8)];
        for m in 1..=4usize {
            let mut acc = Int::zero();
            for i in 1..m {
                acc += a(i) * &s[m - i];
            }
            acc += int(m as i64) * a(m);
            s.push(-acc);
        }
        for e in 1..=4usize {
            let pe = Int::from(5u64).pow(e as u32);
            let expected = &pe + Int::one() - Int::from(count_points(5, e).unwrap());
            assert_eq!(s[e], expected, "power sum e = {}", e);
        }
    }
}
