//! Arithmetic in 𝔽_p and 𝔽_{p^e}: deterministic extension-field moduli,
//! root counting via gcd(x^q − x, f), distinct-degree factor patterns, and
//! Montgomery arithmetic for the point-counting inner loop.

use crate::arith::primes::is_prime_u64;
use crate::arith::unipoly::ZPoly;
use crate::arith::Int;
use crate::field::{
    poly_derivative, poly_gcd, poly_monic, poly_powmod, poly_rem, poly_trim, Ext, Field,
    Fp,
};
use num_traits::Zero;

/// 𝔽_{p^e} with a deterministically chosen sparse monic irreducible modulus:
/// the first irreducible among y^e − a (a = 1, 2, …), then y^e − (y + a),
/// then y^e − (b·y + a) in lexicographic (b, a) order.
#[derive(Clone, Debug)]
pub struct FqField {
    pub p: u64,
    pub e: usize,
    pub ext: Ext<Fp>,
}

impl FqField {
    pub fn new(p: u64, e: usize) -> Self {
        assert!(is_prime_u64(p), "characteristic must be prime");
        assert!(e >= 1);
        let fp = Fp::new(p);
        let modulus = deterministic_modulus(&fp, e);
        FqField {
            p,
            e,
            ext: Ext::new(fp, modulus),
        }
    }

    pub fn q(&self) -> u64 {
        let mut q = 1u64;
        for _ in 0..self.e {
            q = q.checked_mul(self.p).expect("field size overflow");
        }
        q
    }
}

fn deterministic_modulus(fp: &Fp, e: usize) -> Vec<u64> {
    let p = fp.p;
    if e == 1 {
        // y − 0: the prime field itself
        return vec![0, 1];
    }
    let mut candidates: Vec<Vec<u64>> = Vec::new();
    for a in 1..p {
        let mut m = vec![0u64; e + 1];
        m[0] = fp.neg(&a); // y^e − a
        m[e] = 1;
        candidates.push(m);
    }
    for b in 1..p {
        for a in 0..p {
            if b == 0 {
                continue;
            }
            let mut m = vec![0u64; e + 1];
            m[0] = fp.neg(&a);
            m[1] = fp.neg(&b);
            m[e] = 1;
            candidates.push(m);
        }
    }
    for m in candidates {
        if is_irreducible(fp, &m) {
            return m;
        }
    }
    // dense fallback: enumerate all monic polynomials (tiny p only)
    let mut coeffs = vec![0u64; e];
    loop {
        let mut m = coeffs.clone();
        m.push(1);
        if is_irreducible(fp, &m) {
            return m;
        }
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
            assert!(i < e, "no irreducible modulus found");
        }
    }
}

/// Rabin irreducibility test for monic f over 𝔽_p.
pub fn is_irreducible(fp: &Fp, f: &[u64]) -> bool {
    let f = poly_trim(fp, f.to_vec());
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let p = Int::from(fp.p);
    let x = vec![0, 1u64];
    // x^(p^n) ≡ x mod f
    let mut xp = x.clone();
    for _ in 0..n {
        xp = poly_powmod(fp, &xp, &p, &f);
    }
    let diff = crate::field::poly_sub(fp, &xp, &x);
    if !diff.is_empty() {
        return false;
    }
    // gcd(x^(p^(n/ℓ)) − x, f) = 1 for every prime ℓ | n
    let mut ls = vec![];
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            ls.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        ls.push(m);
    }
    for l in ls {
        let k = n / l;
        let mut xq = x.clone();
        for _ in 0..k {
            xq = poly_powmod(fp, &xq, &p, &f);
        }
        let g = poly_gcd(fp, &crate::field::poly_sub(fp, &xq, &x), &f);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Number of distinct roots of f in its field of definition, computed as
/// deg gcd(x^q − x mod f, f).
pub fn count_poly_roots<F: Field>(field: &F, f: &[F::El], q: u64) -> usize {
    let f = poly_trim(field, f.to_vec());
    assert!(!f.is_empty(), "zero polynomial");
    if f.len() == 1 {
        return 0;
    }
    let xq = poly_powmod(field, &[field.zero(), field.one()], &Int::from(q), &f);
    let diff = crate::field::poly_sub(field, &xq, &[field.zero(), field.one()]);
    let g = poly_gcd(field, &diff, &f);
    if g.is_empty() {
        // x^q − x ≡ 0 mod f: f splits into distinct linear factors
        return f.len() - 1;
    }
    g.len() - 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorPattern {
    Irreducible,
    Degrees(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternError {
    NotSquarefreeModP,
    LeadingCoeffVanishes,
}

impl std::fmt::Display for PatternError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PatternError::NotSquarefreeModP => write!(f, "not squarefree mod p"),
            PatternError::LeadingCoeffVanishes => write!(f, "p divides the leading coefficient"),
        }
    }
}

impl std::error::Error for PatternError {}

/// Distinct-degree factorization pattern of an integer polynomial mod p:
/// the multiset of degrees of its irreducible factors.
pub fn factor_degree_pattern(f: &ZPoly, p: u64) -> Result<FactorPattern, PatternError> {
    let fp = Fp::new(p);
    let pint = Int::from(p);
    if f.last().map(|c| (c % &pint).is_zero()).unwrap_or(true) {
        return Err(PatternError::LeadingCoeffVanishes);
    }
    let mut fbar: Vec<u64> = f.iter().map(|c| fp.from_int(c)).collect();
    fbar = poly_monic(&fp, &fbar);
    let n = fbar.len() - 1;
    if n == 0 {
        return Ok(FactorPattern::Degrees(vec![]));
    }
    let d = poly_gcd(&fp, &fbar, &poly_derivative(&fp, &fbar));
    if d.len() != 1 {
        return Err(PatternError::NotSquarefreeModP);
    }
    let mut degrees = vec![];
    let mut rest = fbar.clone();
    let mut xq = vec![0u64, 1];
    let mut dgr = 0usize;
    while rest.len() - 1 > 0 {
        dgr += 1;
        if 2 * dgr > rest.len() - 1 {
            // remainder is irreducible of its own degree
            degrees.push(rest.len() - 1);
            break;
        }
        xq = poly_powmod(&fp, &xq, &pint, &rest);
        let diff = crate::field::poly_sub(&fp, &xq, &[0, 1]);
        let g = poly_gcd(&fp, &diff, &rest);
        if g.len() > 1 {
            let k = (g.len() - 1) / dgr;
            for _ in 0..k {
                degrees.push(dgr);
            }
            let (q, r) = crate::field::poly_divrem(&fp, &rest, &g);
            debug_assert!(r.is_empty());
            rest = q;
            xq = poly_rem(&fp, &xq, &rest);
        }
    }
    degrees.sort_unstable();
    if degrees.len() == 1 && degrees[0] == n {
        Ok(FactorPattern::Irreducible)
    } else {
        Ok(FactorPattern::Degrees(degrees))
    }
}

/// The roots in 𝔽_p of a polynomial over 𝔽_p, by gcd with x^p − x and
/// randomized equal-degree splitting (fixed seed, reproducible runs).
pub fn roots_fp(fp: &Fp, poly: &[u64]) -> Vec<u64> {
    let p = fp.p;
    let f = poly_trim(fp, poly.to_vec());
    if f.len() <= 1 {
        return vec![];
    }
    if p == 2 {
        return (0..2).filter(|x| fp.is_zero(&crate::field::poly_eval(fp, &f, x))).collect();
    }
    let x = vec![0u64, 1];
    let xp = poly_powmod(fp, &x, &Int::from(p), &f);
    let mut lin = poly_gcd(fp, &crate::field::poly_sub(fp, &xp, &x), &f);
    if lin.is_empty() {
        lin = poly_monic(fp, &f);
    }
    if lin.len() <= 1 {
        return vec![];
    }
    let mut roots = vec![];
    if fp.is_zero(&lin[0]) {
        roots.push(0);
        lin = crate::field::poly_divrem(fp, &lin, &x).0;
    }
    let mut stack = vec![lin];
    let mut seed = 0x243f6a8885a308d3u64;
    while let Some(g) = stack.pop() {
        if g.len() <= 1 {
            continue;
        }
        if g.len() == 2 {
            // monic linear: root = −g[0]
            roots.push(fp.neg(&g[0]));
            continue;
        }
        // random shift (x + a)^((p−1)/2) − 1 splits the linear factors
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let a = seed % p;
        let shifted = poly_powmod(fp, &[a, 1], &Int::from((p - 1) / 2), &g);
        let d = poly_gcd(fp, &crate::field::poly_sub(fp, &shifted, &[1]), &g);
        if d.len() <= 1 || d.len() == g.len() {
            stack.push(g); // unlucky shift, retry
            continue;
        }
        let (q, r) = crate::field::poly_divrem(fp, &g, &d);
        debug_assert!(r.is_empty());
        stack.push(d);
        stack.push(q);
    }
    roots.sort_unstable();
    roots
}

/// Montgomery arithmetic for a fixed odd prime p < 2⁶³.
#[derive(Clone, Copy, Debug)]
pub struct Mont {
    pub p: u64,
    pinv: u64, // −p⁻¹ mod 2⁶⁴
    r2: u64,   // 2¹²⁸ mod p
}

impl Mont {
    pub fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1);
        // Newton iteration for p⁻¹ mod 2⁶⁴
        let mut inv = p;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let pinv = inv.wrapping_neg();
        let r2 = ((u128::MAX % p as u128 + 1) % p as u128) as u64; // 2¹²⁸ mod p
        Mont { p, pinv, r2 }
    }

    #[inline(always)]
    pub fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let t2 = (t + (m as u128) * (self.p as u128)) >> 64;
        let t2 = t2 as u64;
        if t2 >= self.p {
            t2 - self.p
        } else {
            t2
        }
    }

    #[inline(always)]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128 * self.r2 as u128)
    }

    #[inline(always)]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }
}

/// Allocation-free 𝔽_{p^e} arithmetic (e ≤ 4) on Montgomery residues, used
/// by the extension-field point-counting kernel. Elements are fixed arrays;
/// the modulus is the deterministic sparse one from `FqField`.
#[derive(Clone, Copy, Debug)]
pub struct FqMont {
    pub m: Mont,
    pub e: usize,
    /// x^e ≡ red[0] + red[1]x + … (Montgomery form)
    red: [u64; 4],
}

pub type FqEl = [u64; 4];

impl FqMont {
    pub fn new(p: u64, e: usize) -> Self {
        assert!((1..=4).contains(&e) && p % 2 == 1);
        let fq = FqField::new(p, e);
        let m = Mont::new(p);
        let fp = Fp::new(p);
        let mut red = [0u64; 4];
        for i in 0..e {
            red[i] = m.to_mont(fp.neg(&fq.ext.modulus[i]));
        }
        FqMont { m, e, red }
    }

    #[inline]
    pub fn zero(&self) -> FqEl {
        [0; 4]
    }

    #[inline]
    pub fn one(&self) -> FqEl {
        let mut v = [0; 4];
        v[0] = self.m.one();
        v
    }

    #[inline]
    pub fn is_zero(&self, a: &FqEl) -> bool {
        a.iter().all(|&c| c == 0)
    }

    #[inline]
    pub fn add(&self, a: &FqEl, b: &FqEl) -> FqEl {
        let mut r = [0; 4];
        for i in 0..self.e {
            r[i] = self.m.add(a[i], b[i]);
        }
        r
    }

    #[inline]
    pub fn sub(&self, a: &FqEl, b: &FqEl) -> FqEl {
        let mut r = [0; 4];
        for i in 0..self.e {
            r[i] = self.m.sub(a[i], b[i]);
        }
        r
    }

    pub fn mul(&self, a: &FqEl, b: &FqEl) -> FqEl {
        let e = self.e;
        let mut prod = [0u64; 7];
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = self.m.add(prod[i + j], self.m.mul(a[i], b[j]));
            }
        }
        for k in (e..=2 * e.saturating_sub(1)).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                prod[k - e + i] = self.m.add(prod[k - e + i], self.m.mul(c, self.red[i]));
            }
        }
        let mut r = [0; 4];
        r[..e].copy_from_slice(&prod[..e]);
        r
    }

    pub fn inv(&self, a: &FqEl) -> FqEl {
        // Fermat: a^(q−2)
        let mut q: u64 = 1;
        for _ in 0..self.e {
            q *= self.m.p;
        }
        let mut acc = self.one();
        let mut base = *a;
        let mut exp = q - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn q(&self) -> u64 {
        let mut q: u64 = 1;
        for _ in 0..self.e {
            q *= self.m.p;
        }
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use proptest::prelude::*;

    #[test]
    fn root_counts_trivial() {
        let f5 = FqField::new(5, 1);
        // x³ − x over 𝔽₅ → 3 roots
        let f: Vec<Vec<u64>> = [0i64, -1, 0, 1]
            .iter()
            .map(|&c| f5.ext.from_int(&int(c)))
            .collect();
        assert_eq!(count_poly_roots(&f5.ext, &f, 5), 3);
        // x²+1 over 𝔽₃ → 0; over 𝔽₅ → 2
        let f3 = FqField::new(3, 1);
        let g3: Vec<_> = [1i64, 0, 1].iter().map(|&c| f3.ext.from_int(&int(c))).collect();
        assert_eq!(count_poly_roots(&f3.ext, &g3, 3), 0);
        let g5: Vec<_> = [1i64, 0, 1].iter().map(|&c| f5.ext.from_int(&int(c))).collect();
        assert_eq!(count_poly_roots(&f5.ext, &g5, 5), 2);
    }

    #[test]
    fn degree_patterns() {
        // (x²−1, 7) → {1,1}
        let f = vec![int(-1), int(0), int(1)];
        assert_eq!(
            factor_degree_pattern(&f, 7).unwrap(),
            FactorPattern::Degrees(vec![1, 1])
        );
        // x⁴+1 ≡ (x+1)⁴ mod 2
        let g = vec![int(1), int(0), int(0), int(0), int(1)];
        assert_eq!(
            factor_degree_pattern(&g, 2),
            Err(PatternError::NotSquarefreeModP)
        );
        // x²+1 irreducible mod 3
        let h = vec![int(1), int(0), int(1)];
        assert_eq!(factor_degree_pattern(&h, 3).unwrap(), FactorPattern::Irreducible);
    }

    #[test]
    fn deterministic_moduli_reproducible() {
        let a = FqField::new(7, 3);
        let b = FqField::new(7, 3);
        assert_eq!(a.ext.modulus, b.ext.modulus);
        assert!(is_irreducible(&Fp::new(7), &a.ext.modulus));
    }

    #[test]
    fn montgomery_matches_plain() {
        let m = Mont::new(1_000_003);
        for (a, b) in [(0u64, 1u64), (999_999, 999_999), (123_456, 789_012)] {
            let am = m.to_mont(a);
            let bm = m.to_mont(b);
            let prod = m.from_mont(m.mul(am, bm));
            assert_eq!(prod, ((a as u128 * b as u128) % 1_000_003) as u64);
        }
    }

    proptest! {
        #[test]
        fn field_axioms_in_extensions(p in prop::sample::select(vec![3u64, 5, 7]),
                                      e in 1usize..=4,
                                      seed in 0u64..10_000) {
            let fq = FqField::new(p, e);
            let f = &fq.ext;
            // pseudo-random elements from the seed
            let mk = |s: u64| -> Vec<u64> {
                (0..e as u64).map(|i| (s.wrapping_mul(6364136223846793005).wrapping_add(i * 1442695040888963407) >> 7) % p).collect()
            };
            let a = mk(seed);
            let b = mk(seed ^ 0xabcdef);
            let c = mk(seed ^ 0x123456);
            // associativity + distributivity
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(
                f.mul(&a, &f.add(&b, &c)),
                f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            );
            // inverses
            if !f.is_zero(&a) {
                let ai = f.inv(&a).unwrap();
                prop_assert_eq!(f.mul(&a, &ai), f.one());
            }
            // Frobenius x ↦ x^p is additive
            let frob = |x: &Vec<u64>| {
                let mut acc = f.one();
                for _ in 0..p {
                    acc = f.mul(&acc, x);
                }
                acc
            };
            prop_assert_eq!(frob(&f.add(&a, &b)), f.add(&frob(&a), &frob(&b)));
        }
    }
}
