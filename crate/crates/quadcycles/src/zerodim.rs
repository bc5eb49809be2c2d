//! Emptiness testing for zero-dimensional systems of the shape
//! { f₁(u,w) = … = f_k(u,w) = 0, m(u) = 0 } over a field, without factoring
//! m: arithmetic runs in the quotient ring F[u]/(m) and splits m by a gcd
//! whenever a zero divisor shows up (dynamic evaluation).

use crate::field::{poly_divrem, poly_gcd, poly_rem, poly_trim, Field};

/// Polynomial in w whose coefficients are polynomials in u.
pub type BiPoly<F> = Vec<Vec<<F as Field>::El>>;

/// Does the system {polys = 0} have a common root (u₀, w₀) over the algebraic
/// closure, with m(u₀) = 0? `m` must be squarefree; `polys` nonempty.
pub fn system_has_common_root<F: Field>(f: &F, m: &[F::El], polys: &[BiPoly<F>]) -> bool {
    let m = poly_trim(f, m.to_vec());
    if m.len() <= 1 {
        return false; // no roots of a constant
    }
    // reduce all coefficients mod m
    let reduced: Vec<BiPoly<F>> = polys
        .iter()
        .map(|p| {
            p.iter()
                .map(|cu| poly_rem(f, cu, &m))
                .collect::<Vec<_>>()
        })
        .collect();
    match gcd_chain(f, &m, &reduced) {
        Verdict::NoRoot => false,
        Verdict::HasRoot => true,
        Verdict::Split(m1, m2) => {
            system_has_common_root(f, &m1, polys) || system_has_common_root(f, &m2, polys)
        }
    }
}

enum Verdict<F: Field> {
    NoRoot,
    HasRoot,
    Split(Vec<F::El>, Vec<F::El>),
}

fn gcd_chain<F: Field>(f: &F, m: &[F::El], polys: &[BiPoly<F>]) -> Verdict<F> {
    // w-gcd of all polys over R = F[u]/(m)
    let mut g: Option<BiPoly<F>> = None;
    for p in polys {
        let p = trim_w(f, m, p.clone());
        g = Some(match g {
            None => p,
            Some(prev) => match ring_gcd(f, m, prev, p) {
                Ok(q) => q,
                Err((m1, m2)) => return Verdict::Split(m1, m2),
            },
        });
    }
    let g = trim_w(f, m, g.unwrap());
    if g.is_empty() {
        // every poly vanishes identically on this component: the whole fiber
        // is in the locus
        return Verdict::HasRoot;
    }
    if g.len() >= 2 {
        return Verdict::HasRoot;
    }
    // constant in w: a common root needs the constant ≡ 0 somewhere on m
    let c = poly_rem(f, &g[0], m);
    let c = poly_trim(f, c);
    if c.is_empty() {
        return Verdict::HasRoot;
    }
    let d = poly_gcd(f, &c, m);
    if d.len() <= 1 {
        Verdict::NoRoot
    } else if d.len() == m.len() {
        Verdict::HasRoot
    } else {
        let (q, r) = poly_divrem(f, m, &d);
        debug_assert!(r.is_empty());
        Verdict::Split(d, q)
    }
}

fn trim_w<F: Field>(f: &F, m: &[F::El], mut p: BiPoly<F>) -> BiPoly<F> {
    for c in p.iter_mut() {
        *c = poly_rem(f, c, m);
    }
    while p.last().is_some_and(|c| poly_trim(f, c.clone()).is_empty()) {
        p.pop();
    }
    p
}

/// Euclid over F[u]/(m). Err means m split into two coprime factors.
#[allow(clippy::type_complexity)]
fn ring_gcd<F: Field>(
    f: &F,
    m: &[F::El],
    mut a: BiPoly<F>,
    mut b: BiPoly<F>,
) -> Result<BiPoly<F>, (Vec<F::El>, Vec<F::El>)> {
    loop {
        a = trim_w(f, m, a);
        b = trim_w(f, m, b);
        if b.is_empty() {
            return Ok(a);
        }
        if a.is_empty() {
            return Ok(b);
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        // invert lc(b) in R or split
        let lc = b.last().unwrap().clone();
        let d = poly_gcd(f, &lc, m);
        if d.len() > 1 {
            if d.len() == m.len() {
                // lc ≡ 0 on all of m: drop it
                b.pop();
                continue;
            }
            let (q, r) = poly_divrem(f, m, &d);
            debug_assert!(r.is_empty());
            return Err((d, q));
        }
        // lc is a unit: standard reduction step a ← a − lc(a)/lc(b) · w^Δ · b
        let inv = ring_inv(f, m, &lc);
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let top = a.last().unwrap().clone();
            let coef = ring_mul(f, m, &top, &inv);
            for (i, bc) in b.iter().enumerate() {
                let t = ring_mul(f, m, bc, &coef);
                a[shift + i] = crate::field::poly_sub(f, &a[shift + i], &t);
            }
            a = trim_w(f, m, a);
        }
        std::mem::swap(&mut a, &mut b);
    }
}

fn ring_mul<F: Field>(f: &F, m: &[F::El], a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    poly_rem(f, &crate::field::poly_mul(f, a, b), m)
}

fn ring_inv<F: Field>(f: &F, m: &[F::El], a: &[F::El]) -> Vec<F::El> {
    let (g, _, t) = crate::field::poly_xgcd(f, m, a);
    assert!(g.len() == 1, "ring_inv needs a unit");
    let ginv = f.inv(&g[0]).unwrap();
    poly_rem(f, &crate::field::poly_scale(f, &t, &ginv), m)
}

/// Squarefree part over a prime field or ℚ. `char_p` is Some(p) in positive
/// characteristic; perfect p-th powers are deflated using c^p = c on 𝔽_p.
pub fn squarefree_part<F: Field>(f: &F, poly: &[F::El], char_p: Option<u64>) -> Vec<F::El> {
    let mut p = poly_trim(f, poly.to_vec());
    if p.len() <= 1 {
        return p;
    }
    loop {
        let d = crate::field::poly_derivative(f, &p);
        if d.is_empty() {
            let q = char_p.expect("zero derivative in characteristic 0") as usize;
            // p(u) = h(u^q): deflate (prime-field coefficients are Frobenius-fixed)
            let mut h = vec![];
            for (i, c) in p.iter().enumerate() {
                if i % q == 0 {
                    h.push(c.clone());
                } else {
                    assert!(f.is_zero(c), "not a q-th power");
                }
            }
            p = h;
            continue;
        }
        let g = poly_gcd(f, &p, &d);
        if g.len() <= 1 {
            return crate::field::poly_monic(f, &p);
        }
        let (q, r) = poly_divrem(f, &p, &g);
        debug_assert!(r.is_empty());
        // recurse: q is squarefree-ish but g may still hide p-th powers
        let rest = squarefree_part(f, &g, char_p);
        let joined = crate::field::poly_mul(f, &q, &rest);
        let dd = poly_gcd(f, &q, &rest);
        let out = if dd.len() <= 1 {
            joined
        } else {
            poly_divrem(f, &joined, &dd).0
        };
        return crate::field::poly_monic(f, &out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    // polys in (u,w) as Vec<Vec<u64>>: index = w power, entries = u-polys
    #[test]
    fn detects_common_root_and_absence() {
        let f = Fp::new(7);
        // m = u² + 1 (irreducible mod 7: −1 is not a QR mod 7)
        let m = vec![1u64, 0, 1];
        // system { w − u = 0, w² − u² = 0 } has common roots (u₀, u₀)
        let p1: BiPoly<Fp> = vec![vec![0, 6], vec![1]]; // −u + w
        let p2: BiPoly<Fp> = vec![vec![0, 0, 6], vec![], vec![1]]; // −u² + w²
        assert!(system_has_common_root(&f, &m, &[p1.clone(), p2]));
        // { w − u, w − u − 1 } has none
        let p3: BiPoly<Fp> = vec![vec![6, 6], vec![1]]; // w − u − 1
        assert!(!system_has_common_root(&f, &m, &[p1, p3]));
    }

    #[test]
    fn split_path() {
        let f = Fp::new(5);
        // m = u² − 1 = (u−1)(u+1), squarefree but reducible
        let m = vec![4u64, 0, 1];
        // { w − (u−1) } and { w } share a root only above u = 1
        let p1: BiPoly<Fp> = vec![vec![1, 4], vec![1]]; // w − u + 1... careful: w + (1 − u)
        let p2: BiPoly<Fp> = vec![vec![], vec![1]]; // w
        assert!(system_has_common_root(&f, &m, &[p1, p2]));
        // but { w − 2 } and { w } never share
        let p3: BiPoly<Fp> = vec![vec![3], vec![1]];
        let p4: BiPoly<Fp> = vec![vec![], vec![1]];
        assert!(!system_has_common_root(&f, &m, &[p3, p4]));
    }

    #[test]
    fn squarefree_parts() {
        let f = Fp::new(5);
        // (u+1)²(u+2) → (u+1)(u+2) = u² + 3u + 2
        let sq = crate::field::poly_mul(&f, &[1, 1], &crate::field::poly_mul(&f, &[1, 1], &[2, 1]));
        assert_eq!(squarefree_part(&f, &sq, Some(5)), vec![2, 3, 1]);
        // u^5 + 1 = (u+1)^5 mod 5 → u + 1
        let p5 = vec![1u64, 0, 0, 0, 0, 1];
        assert_eq!(squarefree_part(&f, &p5, Some(5)), vec![1, 1]);
    }
}
