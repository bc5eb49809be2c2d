//! Field-object abstraction used by everything that must run both over ℚ and
//! over finite fields (and their small extensions): dense polynomials,
//! Gaussian elimination, power series, branch expansions.
//!
//! A field is a value (carrying its modulus or nothing at all) whose element
//! type is an associated type; all arithmetic goes through the field object.

use crate::arith::{Int, Rat};
use num_traits::{One, Zero};
use std::fmt::Debug;

pub trait Field: Clone + Debug {
    type El: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    /// None exactly for zero.
    fn inv(&self, a: &Self::El) -> Option<Self::El>;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn from_int(&self, n: &Int) -> Self::El;

    fn from_i64(&self, n: i64) -> Self::El {
        self.from_int(&Int::from(n))
    }

    /// Image of an exact rational; None if the denominator maps to zero.
    fn from_rat(&self, r: &Rat) -> Option<Self::El> {
        let num = self.from_int(r.numer());
        let den = self.from_int(r.denom());
        Some(self.mul(&num, &self.inv(&den)?))
    }

    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    fn eq(&self, a: &Self::El, b: &Self::El) -> bool {
        a == b
    }

    /// Stable printable form, used for canonical serialization.
    fn render(&self, a: &Self::El) -> String {
        format!("{:?}", a)
    }
}

/// The rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QQ;

impl Field for QQ {
    type El = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: &Int) -> Rat {
        Rat::from_integer(n.clone())
    }
    fn render(&self, a: &Rat) -> String {
        format!("{}", a)
    }
}

/// Prime field 𝔽_p, p < 2⁶³, elements 0..p−1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(crate::arith::primes::is_prime_u64(p), "Fp needs a prime");
        Fp { p }
    }
}

impl Field for Fp {
    type El = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(crate::arith::primes::pow_mod_u64(*a, self.p - 2, self.p))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_int(&self, n: &Int) -> u64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        n.mod_floor(&Int::from(self.p)).to_u64().unwrap()
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// Extension of `base` by a monic irreducible modulus; elements are dense
/// coefficient vectors of length deg(modulus) over the base field.
#[derive(Clone, Debug)]
pub struct Ext<F: Field> {
    pub base: F,
    /// monic modulus coefficients, length deg+1, top coefficient 1
    pub modulus: Vec<F::El>,
}

impl<F: Field> Ext<F> {
    pub fn new(base: F, modulus: Vec<F::El>) -> Self {
        assert!(modulus.len() >= 2);
        assert!(base.eq(modulus.last().unwrap(), &base.one()), "modulus must be monic");
        Ext { base, modulus }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The adjoined root as an element.
    pub fn gen(&self) -> Vec<F::El> {
        let mut v = vec![self.base.zero(); self.degree()];
        if self.degree() >= 2 {
            v[1] = self.base.one();
        } else {
            // degree-1 extension: generator is −modulus[0]
            v[0] = self.base.neg(&self.modulus[0]);
        }
        v
    }

    pub fn embed(&self, a: &F::El) -> Vec<F::El> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = a.clone();
        v
    }

    fn reduce(&self, mut v: Vec<F::El>) -> Vec<F::El> {
        let d = self.degree();
        while v.len() > d {
            let lead = v.pop().unwrap();
            if self.base.is_zero(&lead) {
                continue;
            }
            let k = v.len() - d;
            for i in 0..d {
                let t = self.base.mul(&self.modulus[i], &lead);
                v[k + i] = self.base.sub(&v[k + i], &t);
            }
        }
        v.resize(d, self.base.zero());
        v
    }
}

impl<F: Field> Field for Ext<F> {
    type El = Vec<F::El>;

    fn zero(&self) -> Self::El {
        vec![self.base.zero(); self.degree()]
    }
    fn one(&self) -> Self::El {
        self.embed(&self.base.one())
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let d = self.degree();
        let mut prod = vec![self.base.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.base.mul(x, y);
                prod[i + j] = self.base.add(&prod[i + j], &t);
            }
        }
        self.reduce(prod)
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn inv(&self, a: &Self::El) -> Option<Self::El> {
        if self.is_zero(a) {
            return None;
        }
        // extended Euclid in base[y] against the modulus
        let fb = poly_from_vec(&self.base, a.clone());
        let (g, _, t) = poly_xgcd(&self.base, &self.modulus, &fb);
        // g must be a nonzero constant for a field extension
        if g.len() != 1 {
            return None;
        }
        let ginv = self.base.inv(&g[0])?;
        let mut r: Vec<F::El> = t.iter().map(|c| self.base.mul(c, &ginv)).collect();
        r.resize(self.degree(), self.base.zero());
        Some(r)
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
    fn from_int(&self, n: &Int) -> Self::El {
        self.embed(&self.base.from_int(n))
    }
    fn render(&self, a: &Self::El) -> String {
        let parts: Vec<String> = a.iter().map(|x| self.base.render(x)).collect();
        format!("[{}]", parts.join(","))
    }
}

// ---- dense polynomials over a generic field ----

pub fn poly_trim<F: Field>(f: &F, mut v: Vec<F::El>) -> Vec<F::El> {
    while v.last().is_some_and(|c| f.is_zero(c)) {
        v.pop();
    }
    v
}

fn poly_from_vec<F: Field>(f: &F, v: Vec<F::El>) -> Vec<F::El> {
    poly_trim(f, v)
}

pub fn poly_deg<F: Field>(_f: &F, v: &[F::El]) -> i64 {
    v.len() as i64 - 1
}

pub fn poly_add<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let mut r = vec![f.zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        r[i] = f.add(&r[i], c);
    }
    for (i, c) in b.iter().enumerate() {
        r[i] = f.add(&r[i], c);
    }
    poly_trim(f, r)
}

pub fn poly_sub<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let mut r = vec![f.zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        r[i] = f.add(&r[i], c);
    }
    for (i, c) in b.iter().enumerate() {
        r[i] = f.sub(&r[i], c);
    }
    poly_trim(f, r)
}

pub fn poly_mul<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = f.mul(x, y);
            r[i + j] = f.add(&r[i + j], &t);
        }
    }
    poly_trim(f, r)
}

pub fn poly_scale<F: Field>(f: &F, a: &[F::El], k: &F::El) -> Vec<F::El> {
    poly_trim(f, a.iter().map(|c| f.mul(c, k)).collect())
}

pub fn poly_eval<F: Field>(f: &F, a: &[F::El], x: &F::El) -> F::El {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn poly_derivative<F: Field>(f: &F, a: &[F::El]) -> Vec<F::El> {
    if a.len() <= 1 {
        return vec![];
    }
    let r: Vec<F::El> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
        .collect();
    poly_trim(f, r)
}

/// (quotient, remainder) with b ≠ 0.
pub fn poly_divrem<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> (Vec<F::El>, Vec<F::El>) {
    let b = poly_trim(f, b.to_vec());
    assert!(!b.is_empty(), "poly division by zero");
    let lc_inv = f.inv(b.last().unwrap()).unwrap();
    let mut r = poly_trim(f, a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![f.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let coef = f.mul(r.last().unwrap(), &lc_inv);
        let shift = r.len() - b.len();
        q[shift] = coef.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = f.mul(bc, &coef);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
        r = poly_trim(f, r);
        if r.is_empty() {
            break;
        }
    }
    (poly_trim(f, q), r)
}

pub fn poly_rem<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    poly_divrem(f, a, b).1
}

/// Monic gcd.
pub fn poly_gcd<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let mut x = poly_trim(f, a.to_vec());
    let mut y = poly_trim(f, b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(f, &x, &y);
        x = y;
        y = r;
    }
    if let Some(lc) = x.last() {
        let inv = f.inv(lc).unwrap();
        x = poly_scale(f, &x, &inv);
    }
    x
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g (g not normalized).
pub fn poly_xgcd<F: Field>(
    f: &F,
    a: &[F::El],
    b: &[F::El],
) -> (Vec<F::El>, Vec<F::El>, Vec<F::El>) {
    let mut r0 = poly_trim(f, a.to_vec());
    let mut r1 = poly_trim(f, b.to_vec());
    let mut s0 = vec![f.one()];
    let mut s1: Vec<F::El> = vec![];
    let mut t0: Vec<F::El> = vec![];
    let mut t1 = vec![f.one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(f, &r0, &r1);
        let ns = poly_sub(f, &s0, &poly_mul(f, &q, &s1));
        let nt = poly_sub(f, &t0, &poly_mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    (r0, s0, t0)
}

/// b^e mod m (m monic not required; uses divrem).
pub fn poly_powmod<F: Field>(f: &F, b: &[F::El], e: &Int, m: &[F::El]) -> Vec<F::El> {
    let base = poly_rem(f, b, m);
    let mut acc = vec![f.one()];
    for i in (0..e.bits()).rev() {
        acc = poly_rem(f, &poly_mul(f, &acc, &acc), m);
        if e.bit(i) {
            acc = poly_rem(f, &poly_mul(f, &acc, &base), m);
        }
    }
    acc
}

pub fn poly_monic<F: Field>(f: &F, a: &[F::El]) -> Vec<F::El> {
    let a = poly_trim(f, a.to_vec());
    if a.is_empty() {
        return a;
    }
    let inv = f.inv(a.last().unwrap()).unwrap();
    poly_scale(f, &a, &inv)
}

/// Evaluate a multivariate polynomial in a field, mapping ℚ-coefficients in;
/// None if some coefficient's denominator is not invertible (bad reduction).
pub fn eval_multipoly<F: Field>(
    f: &F,
    poly: &crate::arith::MultiPoly,
    assign: &[(crate::arith::Var, F::El)],
) -> Option<F::El> {
    let mut acc = f.zero();
    for (mono, coeff) in poly.terms() {
        let mut term = f.from_rat(coeff)?;
        for (v, val) in assign {
            for _ in 0..mono.exp(*v) {
                term = f.mul(&term, val);
            }
        }
        acc = f.add(&acc, &term);
    }
    Some(acc)
}

// ---- linear algebra ----

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Vec<Vec<F::El>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]).unwrap();
        for j in c..cols {
            m[r][j] = f.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let t = f.mul(&factor, &m[r][j]);
                    m[i][j] = f.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.retain(|row| row.iter().any(|x| !f.is_zero(x)));
    pivots
}

/// Basis of the right-kernel {x : M x = 0}, for M given by rows.
pub fn nullspace<F: Field>(f: &F, m: &[Vec<F::El>], ncols: usize) -> Vec<Vec<F::El>> {
    let mut mm: Vec<Vec<F::El>> = m.to_vec();
    let pivots = rref(f, &mut mm);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = vec![];
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (ri, &pc) in pivots.iter().enumerate() {
            // row: x_pc + Σ m[ri][j] x_j = 0 ⇒ x_pc = −m[ri][free]
            v[pc] = f.neg(&mm[ri][free]);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn fp_basics() {
        let f = Fp::new(13);
        assert_eq!(f.mul(&7, &8), 56 % 13);
        assert_eq!(f.mul(&f.inv(&5).unwrap(), &5), 1);
        assert_eq!(f.from_int(&int(-1)), 12);
    }

    #[test]
    fn extension_field_is_a_field() {
        // 𝔽₉ = 𝔽₃[y]/(y² + 1)
        let f3 = Fp::new(3);
        let f9 = Ext::new(f3.clone(), vec![1, 0, 1]);
        let g = f9.gen();
        // g² = −1 = 2
        assert_eq!(f9.mul(&g, &g), f9.from_i64(2));
        // every nonzero element invertible
        for a in 0..3u64 {
            for b in 0..3u64 {
                let el = vec![a, b];
                if f9.is_zero(&el) {
                    assert!(f9.inv(&el).is_none());
                } else {
                    let inv = f9.inv(&el).unwrap();
                    assert_eq!(f9.mul(&el, &inv), f9.one());
                }
            }
        }
    }

    #[test]
    fn tower_extension() {
        // 𝔽₄ = 𝔽₂[y]/(y²+y+1), then 𝔽₁₆ = 𝔽₄[z]/(z² + z + y)
        let f2 = Fp::new(2);
        let f4 = Ext::new(f2, vec![1, 1, 1]);
        let y = f4.gen();
        let f16 = Ext::new(f4.clone(), vec![y.clone(), f4.one(), f4.one()]);
        let z = f16.gen();
        // z is invertible and (z·z⁻¹)=1
        let zi = f16.inv(&z).unwrap();
        assert_eq!(f16.mul(&z, &zi), f16.one());
        // multiplicative order of z divides 15 and not 1, 3, 5 ⇒ check pow
        let mut acc = f16.one();
        for _ in 0..15 {
            acc = f16.mul(&acc, &z);
        }
        assert_eq!(acc, f16.one());
    }

    #[test]
    fn poly_ops_over_fp() {
        let f = Fp::new(5);
        // gcd(x²−1, x−1) = x−1 → monic [4? no: −1 ≡ 4, then monic [−1,1]→[4,1]]
        let g = poly_gcd(&f, &[4, 0, 1], &[4, 1]);
        assert_eq!(g, vec![4, 1]);
        let (q, r) = poly_divrem(&f, &[4, 0, 1], &[4, 1]);
        assert_eq!(r, vec![] as Vec<u64>);
        assert_eq!(q, vec![1, 1]);
    }

    #[test]
    fn powmod_and_roots() {
        let f = Fp::new(7);
        // x^7 mod (x²+1): x^7 = x·(x²)³ = x·(−1)³ = −x = 6x
        let r = poly_powmod(&f, &[0, 1], &int(7), &[1, 0, 1]);
        assert_eq!(r, vec![0, 6]);
    }

    #[test]
    fn nullspace_small() {
        let f = Fp::new(7);
        // x + 2y = 0 → kernel spanned by (−2, 1) = (5, 1)
        let ker = nullspace(&f, &[vec![1, 2]], 2);
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert_eq!(f.add(&f.mul(&1, &v[0]), &f.mul(&2, &v[1])), 0);
    }
}
