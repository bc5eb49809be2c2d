//! Closed points of the curve over a base field and formal ℤ-combinations of
//! them. A closed point is rational, or has algebraic w over rational u, or
//! algebraic u with w given over the residue field of u; minimal polynomials
//! are monic and irreducible, so representations are canonical.

use crate::field::{poly_monic, poly_trim, Field};

/// Projective coordinate over F: (a : b), normalized to (x, 1) or (1, 0).
pub type ProjEl<F> = (<F as Field>::El, <F as Field>::El);

pub fn proj_fin<F: Field>(f: &F, x: F::El) -> ProjEl<F> {
    (x, f.one())
}

pub fn proj_inf<F: Field>(f: &F) -> ProjEl<F> {
    (f.one(), f.zero())
}

pub fn proj_norm<F: Field>(f: &F, (a, b): ProjEl<F>) -> ProjEl<F> {
    if f.is_zero(&b) {
        (f.one(), f.zero())
    } else {
        (f.div(&a, &b), f.one())
    }
}

pub fn proj_eq<F: Field>(f: &F, x: &ProjEl<F>, y: &ProjEl<F>) -> bool {
    // cross-multiplication, valid for any representatives
    f.eq(&f.mul(&x.0, &y.1), &f.mul(&y.0, &x.1))
}

#[derive(Debug, Clone)]
pub enum ClosedPoint<F: Field> {
    /// residue degree 1
    Rational { u: ProjEl<F>, w: ProjEl<F> },
    /// u rational (possibly ∞), w a root of the monic irreducible h_w of
    /// degree ≥ 2 over F
    AlgW { u: ProjEl<F>, h_w: Vec<F::El> },
    /// u a root of the monic irreducible m_u of degree ≥ 2; w a root of the
    /// monic irreducible h_w over F[y]/(m_u); w is always finite here
    AlgU {
        m_u: Vec<F::El>,
        h_w: Vec<Vec<F::El>>,
    },
}

impl<F: Field> ClosedPoint<F> {
    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Rational { .. } => 1,
            ClosedPoint::AlgW { h_w, .. } => h_w.len() - 1,
            ClosedPoint::AlgU { m_u, h_w } => (m_u.len() - 1) * (h_w.len() - 1),
        }
    }

    /// Canonical serialization (assumes normalized projective coordinates
    /// and monic minimal polynomials).
    pub fn render(&self, f: &F) -> String {
        match self {
            ClosedPoint::Rational { u, w } => format!(
                "R({}:{},{}:{})",
                f.render(&u.0),
                f.render(&u.1),
                f.render(&w.0),
                f.render(&w.1)
            ),
            ClosedPoint::AlgW { u, h_w } => format!(
                "W({}:{};{})",
                f.render(&u.0),
                f.render(&u.1),
                h_w.iter().map(|c| f.render(c)).collect::<Vec<_>>().join(",")
            ),
            ClosedPoint::AlgU { m_u, h_w } => format!(
                "U({};{})",
                m_u.iter().map(|c| f.render(c)).collect::<Vec<_>>().join(","),
                h_w.iter()
                    .map(|v| format!(
                        "[{}]",
                        v.iter().map(|c| f.render(c)).collect::<Vec<_>>().join(",")
                    ))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }

    pub fn same(&self, other: &Self, f: &F) -> bool {
        self.render(f) == other.render(f)
    }
}

/// Formal ℤ-combination of closed points.
#[derive(Debug, Clone)]
pub struct Divisor<F: Field> {
    pub entries: Vec<(ClosedPoint<F>, i64)>,
}

impl<F: Field> Divisor<F> {
    pub fn zero() -> Self {
        Divisor { entries: vec![] }
    }

    pub fn of(entries: Vec<(ClosedPoint<F>, i64)>) -> Self {
        let mut d = Divisor { entries };
        d.normalize_noop();
        d
    }

    fn normalize_noop(&mut self) {
        self.entries.retain(|(_, m)| *m != 0);
    }

    pub fn normalize(&mut self, f: &F) {
        let mut merged: Vec<(ClosedPoint<F>, i64)> = vec![];
        for (p, m) in self.entries.drain(..) {
            if m == 0 {
                continue;
            }
            if let Some(e) = merged.iter_mut().find(|(q, _)| q.same(&p, f)) {
                e.1 += m;
            } else {
                merged.push((p, m));
            }
        }
        merged.retain(|(_, m)| *m != 0);
        merged.sort_by_key(|(p, _)| p.render(f));
        self.entries = merged;
    }

    pub fn add(&self, other: &Divisor<F>, f: &F) -> Divisor<F> {
        let mut d = Divisor {
            entries: self
                .entries
                .iter()
                .chain(&other.entries)
                .map(|(p, m)| (p.clone(), *m))
                .collect(),
        };
        d.normalize(f);
        d
    }

    pub fn scale(&self, k: i64) -> Divisor<F> {
        Divisor {
            entries: self.entries.iter().map(|(p, m)| (p.clone(), m * k)).collect(),
        }
    }

    pub fn neg(&self) -> Divisor<F> {
        self.scale(-1)
    }

    pub fn degree(&self) -> i64 {
        self.entries
            .iter()
            .map(|(p, m)| p.degree() as i64 * m)
            .sum()
    }

    pub fn is_effective(&self) -> bool {
        self.entries.iter().all(|(_, m)| *m >= 0)
    }

    pub fn positive_part(&self, f: &F) -> Divisor<F> {
        let mut d = Divisor {
            entries: self
                .entries
                .iter()
                .filter(|(_, m)| *m > 0)
                .map(|(p, m)| (p.clone(), *m))
                .collect(),
        };
        d.normalize(f);
        d
    }

    pub fn multiplicity(&self, f: &F, p: &ClosedPoint<F>) -> i64 {
        self.entries
            .iter()
            .find(|(q, _)| q.same(p, f))
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    pub fn render(&self, f: &F) -> String {
        self.entries
            .iter()
            .map(|(p, m)| format!("{}*{}", m, p.render(f)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

// ---- small factorization over finite fields ----

/// Monic irreducible factors with multiplicities, for small degrees over a
/// finite field of size q (works over Fp and its extensions). Randomized
/// splitting with a fixed seed; the factor set is canonical regardless.
pub fn factor_monic_finite<F: Field>(
    f: &F,
    poly: &[F::El],
    q: u64,
    char_p: u64,
) -> Vec<(Vec<F::El>, usize)> {
    let monic = poly_monic(f, poly);
    assert!(monic.len() >= 2);
    // collect the distinct irreducible factors, then read multiplicities off
    // by trial division (degrees here are ≤ 4)
    let mut irreducibles: Vec<Vec<F::El>> = vec![];
    let mut stack = vec![monic.clone()];
    while let Some(work) = stack.pop() {
        if work.len() <= 1 {
            continue;
        }
        let d = crate::field::poly_derivative(f, &work);
        if d.is_empty() {
            // perfect p-th power: deflate with coefficient roots c^(q/p)
            let mut h: Vec<F::El> = vec![];
            for (i, c) in work.iter().enumerate() {
                if i % (char_p as usize) == 0 {
                    h.push(el_pow(f, c, q / char_p));
                } else {
                    assert!(f.is_zero(c), "not a p-th power");
                }
            }
            stack.push(h);
            continue;
        }
        let g = crate::field::poly_gcd(f, &work, &d);
        let (sqfree, r) = crate::field::poly_divrem(f, &work, &g);
        debug_assert!(r.is_empty());
        for fac in factor_squarefree(f, &sqfree, q, char_p) {
            if !irreducibles.contains(&fac) {
                irreducibles.push(fac);
            }
        }
        if g.len() > 1 {
            stack.push(g);
        }
    }
    let mut out: Vec<(Vec<F::El>, usize)> = vec![];
    for fac in irreducibles {
        let mut k = 0usize;
        let mut rem = monic.clone();
        loop {
            if rem.len() < fac.len() {
                break;
            }
            let (quo, r) = crate::field::poly_divrem(f, &rem, &fac);
            if !r.is_empty() {
                break;
            }
            k += 1;
            rem = quo;
        }
        if k > 0 {
            out.push((fac, k));
        }
    }
    out.sort_by_key(|(g, _)| {
        format!(
            "{}:{}",
            g.len(),
            g.iter().map(|c| f.render(c)).collect::<Vec<_>>().join(",")
        )
    });
    out
}

fn el_pow<F: Field>(f: &F, a: &F::El, mut e: u64) -> F::El {
    let mut acc = f.one();
    let mut b = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = f.mul(&acc, &b);
        }
        b = f.mul(&b, &b);
        e >>= 1;
    }
    acc
}

/// Distinct-degree then equal-degree factorization of a squarefree monic
/// polynomial over a finite field of size q.
fn factor_squarefree<F: Field>(
    f: &F,
    poly: &[F::El],
    q: u64,
    char_p: u64,
) -> Vec<Vec<F::El>> {
    let mut out = vec![];
    let mut rest = poly_monic(f, poly);
    let x = vec![f.zero(), f.one()];
    let mut xq = x.clone();
    let mut d = 0usize;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            out.push(rest.clone());
            break;
        }
        xq = crate::field::poly_powmod(f, &xq, &crate::arith::Int::from(q), &rest);
        let diff = crate::field::poly_sub(f, &xq, &x);
        let g = crate::field::poly_gcd(f, &diff, &rest);
        if g.len() > 1 {
            out.extend(equal_degree_split(f, &g, d, q, char_p));
            let (quo, r) = crate::field::poly_divrem(f, &rest, &g);
            debug_assert!(r.is_empty());
            rest = quo;
            xq = crate::field::poly_rem(f, &xq, &rest);
        }
    }
    out
}

/// Cantor–Zassenhaus split of a product of distinct irreducibles of equal
/// degree d over a field of odd size q.
fn equal_degree_split<F: Field>(
    f: &F,
    poly: &[F::El],
    d: usize,
    q: u64,
    _char_p: u64,
) -> Vec<Vec<F::El>> {
    let n = poly.len() - 1;
    if n == d {
        return vec![poly_monic(f, poly)];
    }
    assert!(q % 2 == 1, "equal-degree splitting needs odd q here");
    let mut seed = 0x9e3779b97f4a7c15u64 ^ (n as u64) ^ (q << 8);
    loop {
        // random polynomial of degree < n
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut r: Vec<F::El> = vec![];
        let mut s = seed;
        for _ in 0..n {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(97);
            r.push(f.from_i64((s >> 16) as i64));
        }
        let r = poly_trim(f, r);
        if r.is_empty() {
            continue;
        }
        // r^((q^d − 1)/2) mod poly
        let e = (crate::arith::Int::from(q).pow(d as u32) - 1) / 2;
        let pw = crate::field::poly_powmod(f, &r, &e, poly);
        let shifted = crate::field::poly_sub(f, &pw, &[f.one()]);
        let g = crate::field::poly_gcd(f, &shifted, poly);
        if g.len() > 1 && g.len() < poly.len() {
            let (quo, rem) = crate::field::poly_divrem(f, poly, &g);
            debug_assert!(rem.is_empty());
            let mut out = equal_degree_split(f, &g, d, q, _char_p);
            out.extend(equal_degree_split(f, &quo, d, q, _char_p));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    #[test]
    fn factor_small_polys() {
        let f = Fp::new(5);
        // (x−1)²(x²+2) with x²+2 irreducible mod 5 (−2 = 3 is not a QR)
        let sq = crate::field::poly_mul(
            &f,
            &crate::field::poly_mul(&f, &[4, 1], &[4, 1]),
            &[2, 0, 1],
        );
        let facs = factor_monic_finite(&f, &sq, 5, 5);
        assert_eq!(facs.len(), 2);
        let lin = facs.iter().find(|(g, _)| g.len() == 2).unwrap();
        assert_eq!(lin.1, 2);
        let quad = facs.iter().find(|(g, _)| g.len() == 3).unwrap();
        assert_eq!(quad.1, 1);
        // product reconstructs
        let mut prod = vec![f.one()];
        for (g, m) in &facs {
            for _ in 0..*m {
                prod = crate::field::poly_mul(&f, &prod, g);
            }
        }
        assert_eq!(prod, poly_monic(&f, &sq));
    }

    #[test]
    fn divisor_normalization() {
        let f = Fp::new(7);
        let p1 = ClosedPoint::Rational {
            u: (2, 1),
            w: (3, 1),
        };
        let p2 = ClosedPoint::Rational {
            u: (2, 1),
            w: (3, 1),
        };
        let mut d = Divisor::of(vec![(p1, 2), (p2, -2)]);
        d.normalize(&f);
        assert!(d.entries.is_empty());
    }
}
