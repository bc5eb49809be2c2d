//! Sparse multivariate polynomials over ℚ in the fixed variable set
//! (x, c, t, u, v, w), ordered by graded lexicographic order.
//!
//! The global variable order is fixed so that leading-term normalizations
//! (e.g. the sign convention for polynomial n-th roots) are deterministic.

use super::{rat, Int, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub const NVARS: usize = 6;
pub const VAR_NAMES: [&str; NVARS] = ["x", "c", "t", "u", "v", "w"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X = 0,
    C = 1,
    T = 2,
    U = 3,
    V = 4,
    W = 5,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::C, Var::T, Var::U, Var::V, Var::W];

    pub fn name(self) -> &'static str {
        VAR_NAMES[self as usize]
    }
}

/// Exponent vector. Ordered by total degree first, then lexicographically
/// with x most significant (graded lex).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var) -> Mono {
        let mut e = [0; NVARS];
        e[v as usize] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i].checked_add(other.0[i]).expect("exponent overflow");
        }
        Mono(e)
    }

    /// Componentwise division; None if any exponent would go negative.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Mono(e))
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v as usize]
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in ℚ[x, c, t, u, v, w]. Zero coefficients are never
/// stored; the zero polynomial has an empty term map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::ONE, c);
        }
        MultiPoly { terms }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Mono::var(v), Rat::one())
    }

    pub fn monomial(m: Mono, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| *m == Mono::ONE)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Mono::ONE)
    }

    /// Leading (monomial, coefficient) under graded lex; None for zero.
    pub fn leading(&self) -> Option<(Mono, &Rat)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn degree(&self, v: Var) -> i64 {
        self.terms.keys().map(|m| m.exp(v) as i64).max().unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.total_degree() as i64).max().unwrap_or(-1)
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    fn insert_add(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.insert_add(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.insert_add(*m, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut r = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.insert_add(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut r = MultiPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Exact division: Some(q) with self = q · d, None if the division
    /// leaves a remainder. Term-by-term reduction against d's leading term.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.leading()?;
        let mut rem = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&dm)?;
            let qc = rc / dc;
            let qt = MultiPoly::monomial(qm, qc);
            rem = rem.sub(&qt.mul(d));
            q = q.add(&qt);
        }
        Some(q)
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut r = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                let mut em = *m;
                em.0[v as usize] -= 1;
                r.insert_add(em, c * rat(e as i64));
            }
        }
        r
    }

    /// Coefficients of self viewed as a univariate polynomial in v, index =
    /// power of v. Empty for the zero polynomial.
    pub fn as_univariate(&self, v: Var) -> Vec<MultiPoly> {
        let d = self.degree(v);
        if d < 0 {
            return vec![];
        }
        let mut coeffs = vec![MultiPoly::zero(); d as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let mut rm = *m;
            rm.0[v as usize] = 0;
            coeffs[e].insert_add(rm, c.clone());
        }
        coeffs
    }

    pub fn from_univariate(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut r = MultiPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let m = Mono::var(v);
            let mut pow = Mono::ONE;
            for _ in 0..e {
                pow = pow.mul(&m);
            }
            r = r.add(&c.mul_mono(&pow));
        }
        r
    }

    /// Substitute a polynomial for a variable.
    pub fn subst(&self, v: Var, val: &MultiPoly) -> MultiPoly {
        let coeffs = self.as_univariate(v);
        let mut r = MultiPoly::zero();
        // Horner from the top coefficient down.
        for c in coeffs.iter().rev() {
            r = r.mul(val).add(c);
        }
        r
    }

    /// Substitute rationals for a subset of variables.
    pub fn eval_partial(&self, assign: &[(Var, Rat)]) -> MultiPoly {
        let mut r = self.clone();
        for (v, val) in assign {
            r = r.subst(*v, &MultiPoly::constant(val.clone()));
        }
        r
    }

    /// Full evaluation; panics if a variable with positive degree is missing
    /// an assignment.
    pub fn eval(&self, assign: &[(Var, Rat)]) -> Rat {
        let r = self.eval_partial(assign);
        assert!(r.is_constant(), "evaluation left free variables");
        r.constant_term()
    }

    /// Substitute var := num/den and clear denominators:
    /// returns Σ coeff_i · num^i · den^(deg − i) for self = Σ coeff_i · var^i.
    pub fn rational_subst(&self, v: Var, num: &MultiPoly, den: &MultiPoly) -> MultiPoly {
        let coeffs = self.as_univariate(v);
        if coeffs.is_empty() {
            return MultiPoly::zero();
        }
        let d = coeffs.len() - 1;
        let mut r = MultiPoly::zero();
        let mut num_pow = MultiPoly::one();
        let mut den_pows = vec![MultiPoly::one()];
        for _ in 0..d {
            den_pows.push(den_pows.last().unwrap().mul(den));
        }
        for (i, c) in coeffs.iter().enumerate() {
            r = r.add(&c.mul(&num_pow).mul(&den_pows[d - i]));
            if i < d {
                num_pow = num_pow.mul(num);
            }
        }
        r
    }

    /// Pseudo-remainder of self by d with respect to v:
    /// lc_v(d)^k · self = q·d + r with deg_v r < deg_v d. Returns r.
    pub fn pseudo_rem(&self, d: &MultiPoly, v: Var) -> MultiPoly {
        let dd = d.degree(v);
        assert!(dd >= 0, "pseudo_rem by zero");
        let dcoeffs = d.as_univariate(v);
        let lc = dcoeffs.last().unwrap().clone();
        let mut r = self.clone();
        while r.degree(v) >= dd && !r.is_zero() {
            let rd = r.degree(v);
            let rcoeffs = r.as_univariate(v);
            let rlc = rcoeffs.last().unwrap().clone();
            // r <- lc·r − rlc·v^(rd−dd)·d
            let shift = MultiPoly::monomial(
                {
                    let mut e = [0u16; NVARS];
                    e[v as usize] = (rd - dd) as u16;
                    Mono(e)
                },
                Rat::one(),
            );
            r = r.scale_poly(&lc).sub(&d.mul(&rlc).mul(&shift));
        }
        r
    }

    fn scale_poly(&self, f: &MultiPoly) -> MultiPoly {
        self.mul(f)
    }

    /// Clears denominators and divides by integer content; sign normalized so
    /// the leading coefficient is positive.
    pub fn primitive_part(&self) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let mut den = Int::one();
        for c in self.terms.values() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let mut num = Int::zero();
        for c in self.terms.values() {
            num = num_integer::gcd(num, c.numer() * (&den / c.denom()));
        }
        let mut scale = Rat::new(den, num);
        if self.leading().unwrap().1.is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut s = String::new();
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    s.push_str(VAR_NAMES[j]);
                    if e > 1 {
                        s.push_str(&format!("^{}", e));
                    }
                }
            }
            let a = if i == 0 {
                c.clone()
            } else if c.is_negative() {
                write!(f, " - ")?;
                -c.clone()
            } else {
                write!(f, " + ")?;
                c.clone()
            };
            if s.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", s)?;
            } else if (-a.clone()).is_one() {
                write!(f, "-{}", s)?;
            } else {
                write!(f, "{}*{}", a, s)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn c() -> MultiPoly {
        MultiPoly::var(Var::C)
    }

    #[test]
    fn graded_lex_order() {
        // x² > xc > c² > x > c > 1
        let x2 = Mono([2, 0, 0, 0, 0, 0]);
        let xc = Mono([1, 1, 0, 0, 0, 0]);
        let c2 = Mono([0, 2, 0, 0, 0, 0]);
        assert!(x2 > xc && xc > c2);
        assert!(c2 > Mono::var(Var::X));
        assert!(Mono::var(Var::X) > Mono::var(Var::C));
    }

    #[test]
    fn arithmetic_and_division() {
        let f = x().add(&c()); // x + c
        let g = f.pow(3);
        assert_eq!(g.degree(Var::X), 3);
        let q = g.exact_div(&f).unwrap();
        assert_eq!(q, f.pow(2));
        // (x+c)³ + 1 is not divisible by x+c
        assert!(g.add(&MultiPoly::one()).exact_div(&f).is_none());
    }

    #[test]
    fn substitution() {
        // f = x² + c at x = c: c² + c
        let f = x().pow(2).add(&c());
        let g = f.subst(Var::X, &c());
        assert_eq!(g, c().pow(2).add(&c()));
        let v = f.eval(&[(Var::X, rat_frac(1, 2)), (Var::C, rat_frac(-1, 4))]);
        assert_eq!(v, rat_frac(0, 1));
    }

    #[test]
    fn pseudo_remainder_detects_divisibility() {
        let f = x().pow(2).sub(&c().pow(2));
        let g = x().sub(&c());
        assert!(f.pseudo_rem(&g, Var::X).is_zero());
        let h = x().pow(2).add(&c());
        assert!(!h.pseudo_rem(&g, Var::X).is_zero());
    }
}
