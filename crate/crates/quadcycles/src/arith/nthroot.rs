//! Exact n-th roots of multivariate polynomials over ℚ.

use super::multipoly::MultiPoly;
use super::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootError {
    NotAPower,
}

impl std::fmt::Display for RootError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootError::NotAPower => write!(f, "polynomial is not an exact n-th power"),
        }
    }
}

impl std::error::Error for RootError {}

/// Returns g with gⁿ = f, normalized so that g's leading coefficient under
/// the global graded-lex order is positive. Greedy formal-root extraction:
/// the root's terms are discovered in decreasing monomial order from the
/// leading-term expansion, then the candidate is verified by gⁿ = f.
pub fn nth_root_poly(f: &MultiPoly, n: u32) -> Result<MultiPoly, RootError> {
    assert!(n >= 1);
    if n == 1 {
        return Ok(f.clone());
    }
    if f.is_zero() {
        return Ok(MultiPoly::zero());
    }
    let (lm, lc) = f.leading().unwrap();
    // leading monomial exponents divisible by n, leading coefficient an
    // exact n-th power in ℚ
    let mut root_m = lm;
    for e in root_m.0.iter_mut() {
        if *e % (n as u16) != 0 {
            return Err(RootError::NotAPower);
        }
        *e /= n as u16;
    }
    let root_c = rat_nth_root(lc, n).ok_or(RootError::NotAPower)?;
    let mut g = MultiPoly::monomial(root_m, root_c.clone());
    // correction divisor: n · (leading term of g)^(n−1)
    let lead_pow = MultiPoly::monomial(root_m, root_c).pow(n - 1);
    let corr = lead_pow.scale(&Rat::from_integer(n.into()));
    let (corr_m, corr_c) = corr.leading().unwrap();
    let corr_c = corr_c.clone();

    let max_terms = f.num_terms() * (n as usize) * 8 + 64;
    let mut iterations = 0usize;
    loop {
        let diff = f.sub(&g.pow(n));
        if diff.is_zero() {
            break;
        }
        iterations += 1;
        if iterations > max_terms {
            return Err(RootError::NotAPower);
        }
        let (dm, dc) = diff.leading().unwrap();
        let Some(tm) = dm.div(&corr_m) else {
            return Err(RootError::NotAPower);
        };
        // next term must be strictly below g's current leading term
        let t = MultiPoly::monomial(tm, dc / &corr_c);
        if t.is_zero() {
            return Err(RootError::NotAPower);
        }
        g = g.add(&t);
    }
    // For even n both ±g are roots; pick the positive leading coefficient.
    // For odd n the sign is forced by f.
    if n % 2 == 0 && g.leading().unwrap().1.is_negative() {
        g = g.neg();
    }
    Ok(g)
}

fn rat_nth_root(r: &Rat, n: u32) -> Option<Rat> {
    if r.is_zero() {
        return Some(Rat::zero());
    }
    if r.is_negative() && n % 2 == 0 {
        return None;
    }
    let num = r.numer().nth_root(n);
    let den = r.denom().nth_root(n);
    let cand = Rat::new(num, den);
    let mut p = Rat::one();
    for _ in 0..n {
        p *= &cand;
    }
    if p == *r {
        Some(cand)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::multipoly::{MultiPoly, Var};

    #[test]
    fn cube_root_of_cube() {
        let f = MultiPoly::var(Var::X).add(&MultiPoly::var(Var::C)); // wait: example uses y; any two vars work
        let g = nth_root_poly(&f.pow(3), 3).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn not_a_power() {
        let f = MultiPoly::var(Var::X).pow(2).add(&MultiPoly::one());
        assert_eq!(nth_root_poly(&f, 2), Err(RootError::NotAPower));
    }

    #[test]
    fn sixth_power_roundtrip_with_sign_normalization() {
        let base = MultiPoly::var(Var::T)
            .pow(3)
            .sub(&MultiPoly::var(Var::C).scale(&crate::arith::rat(256)));
        let g = nth_root_poly(&base.neg().pow(6), 6).unwrap();
        // even root: sign normalized to positive leading coefficient
        assert_eq!(g, base);
    }
}
