//! The model chain for period-6 orbits of x ↦ x² + c: the order-6 dynatomic
//! polynomial, the trace-coordinate plane model Ψ₆(t,c), the resolved model
//! F(u,v), the smooth bidegree-(3,3) model G(u,w) in ℙ¹×ℙ¹, the coordinate
//! maps between them, the bad primes of G, and the elementary integral-cycle
//! enumerator.
//!
//! Every constructor cross-checks the hardcoded model data against an
//! independently computed route (resultant + sixth root, substitution
//! identities, singular-locus certificates); any mismatch is a hard error.

use crate::arith::multipoly::{MultiPoly, Var};
use crate::arith::nthroot::nth_root_poly;
use crate::arith::primes::{factor, is_prime_u64};
use crate::arith::resultant::resultant;
use crate::arith::unipoly::{zp_trim, ZPoly};
use crate::arith::{rat, rat_frac, Int, Rat};
use crate::field::{eval_multipoly, Ext, Field, Fp, QQ};
use crate::zerodim::{squarefree_part, system_has_common_root, BiPoly};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    InexactDivision(&'static str),
    NotAPower,
    IdentityFailed(&'static str),
}

impl std::fmt::Display for ModelError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelError::InexactDivision(what) => write!(f, "inexact division in {}", what),
            ModelError::NotAPower => write!(f, "resultant is not a sixth power"),
            ModelError::IdentityFailed(what) => write!(f, "verification failed: {}", what),
        }
    }
}

impl std::error::Error for ModelError {}

fn x() -> MultiPoly {
    MultiPoly::var(Var::X)
}
fn cc() -> MultiPoly {
    MultiPoly::var(Var::C)
}

/// n-th iterate of x ↦ x² + c as a polynomial in (x, c); degree 2ⁿ in x.
pub fn iterate(n: u32) -> MultiPoly {
    let mut f = x();
    let step = x().pow(2).add(&cc());
    for _ in 0..n {
        f = f.subst(Var::X, &step);
    }
    f
}

/// The order-6 dynatomic polynomial Φ*₆(x,c): the exact quotient
/// (f⁽⁶⁾−x)(x²−x+c) / ((f⁽³⁾−x)(f⁽²⁾−x)); x-degree 54.
pub fn dynatomic_6() -> Result<MultiPoly, ModelError> {
    static CACHE: OnceLock<MultiPoly> = OnceLock::new();
    if let Some(p) = CACHE.get() {
        return Ok(p.clone());
    }
    let f2 = iterate(2);
    let f3 = iterate(3);
    let f6 = iterate(6);
    let num = f6.sub(&x()).mul(&x().pow(2).sub(&x()).add(&cc()));
    let den = f3.sub(&x()).mul(&f2.sub(&x()));
    let phi = num
        .exact_div(&den)
        .ok_or(ModelError::InexactDivision("dynatomic quotient"))?;
    debug_assert_eq!(phi.degree(Var::X), 54);
    Ok(CACHE.get_or_init(|| phi).clone())
}

/// The plane model Ψ₆(t,c) in the orbit-trace coordinate, as displayed.
pub fn psi6_display() -> MultiPoly {
    let t_block = |terms: &[(u16, i64)]| -> MultiPoly {
        let mut p = MultiPoly::zero();
        for &(i, a) in terms {
            let mut e = [0u16; 6];
            e[Var::T as usize] = i;
            p = p.add(&MultiPoly::monomial(crate::arith::Mono(e), rat(a)));
        }
        p
    };
    let c = cc();
    let c3 = t_block(&[(3, 256), (2, 256), (1, -256), (0, -256)]);
    let c2 = t_block(&[(5, 144), (4, 112), (3, 160), (2, 480), (1, -304), (0, -592)]);
    let c1 = t_block(&[
        (7, 24),
        (6, 8),
        (5, 16),
        (4, 16),
        (3, -136),
        (2, 552),
        (1, 416),
        (0, -384),
    ]);
    let c0 = t_block(&[
        (9, 1),
        (8, -1),
        (7, 2),
        (6, 14),
        (5, 49),
        (4, 175),
        (3, 140),
        (2, 196),
        (1, 448),
    ]);
    c3.mul(&c.pow(3))
        .add(&c2.mul(&c.pow(2)))
        .add(&c1.mul(&c))
        .add(&c0)
}

/// Computes Ψ₆ from first principles: Res_x(Φ*₆, t − Σ₀⁵ f⁽ⁱ⁾), exact sixth
/// root, t⁹-coefficient normalized to +1.
pub fn trace_model() -> Result<MultiPoly, ModelError> {
    static CACHE: OnceLock<MultiPoly> = OnceLock::new();
    if let Some(p) = CACHE.get() {
        return Ok(p.clone());
    }
    let phi = dynatomic_6()?;
    let mut s = MultiPoly::zero();
    for i in 0..=5 {
        s = s.add(&iterate(i));
    }
    let g = MultiPoly::var(Var::T).sub(&s);
    let res = resultant(&phi, &g, Var::X).expect("x occurs");
    let root = nth_root_poly(&res, 6).map_err(|_| ModelError::NotAPower)?;
    // normalize the t⁹ coefficient to +1
    let t9 = {
        let mut e = [0u16; 6];
        e[Var::T as usize] = 9;
        root.coeff(&crate::arith::Mono(e))
    };
    if t9.is_zero() {
        return Err(ModelError::IdentityFailed("trace model t-degree"));
    }
    let psi = root.scale(&(Rat::one() / t9));
    Ok(CACHE.get_or_init(|| psi).clone())
}

/// F(u,v), the resolved affine model, as displayed.
pub fn f_uv() -> MultiPoly {
    let u_block = |terms: &[(u16, i64)]| -> MultiPoly {
        let mut p = MultiPoly::zero();
        for &(i, a) in terms {
            let mut e = [0u16; 6];
            e[Var::U as usize] = i;
            p = p.add(&MultiPoly::monomial(crate::arith::Mono(e), rat(a)));
        }
        p
    };
    let v = MultiPoly::var(Var::V);
    let v3 = u_block(&[(4, 1), (3, -1)]);
    let v2 = u_block(&[(5, -1), (4, 9), (3, 6), (2, -17), (1, 3)]);
    let v1 = u_block(&[(4, 4), (3, 74), (2, -52), (1, -54), (0, 24)]);
    let v0 = u_block(&[(4, 4), (3, 24), (2, 117), (1, -261), (0, 72)]);
    v3.mul(&v.pow(3)).add(&v2.mul(&v.pow(2))).add(&v1.mul(&v)).add(&v0)
}

/// G(u,w), the smooth bidegree-(3,3) model in ℙ¹×ℙ¹, as displayed:
/// w²(w+1)u³ − (5w²+w+1)u² − w(w²−2w−7)u + (w+1)(w−3).
pub fn g_uw() -> MultiPoly {
    let u = MultiPoly::var(Var::U);
    let w = MultiPoly::var(Var::W);
    let one = MultiPoly::one();
    w.pow(2)
        .mul(&w.add(&one))
        .mul(&u.pow(3))
        .sub(
            &w.pow(2)
                .scale(&rat(5))
                .add(&w)
                .add(&one)
                .mul(&u.pow(2)),
        )
        .sub(&w.mul(&w.pow(2).sub(&w.scale(&rat(2))).sub(&MultiPoly::from_i64(7))).mul(&u))
        .add(&w.add(&one).mul(&w.sub(&MultiPoly::from_i64(3))))
}

/// Numerator and denominator of c on the (u,w) model:
/// c = ((−u³−2u²+5u−10)·u·w − u⁴+3u³+8u²−10u+12) / (4u²(uw+u−3)).
pub fn c_uw_fraction() -> (MultiPoly, MultiPoly) {
    let u = MultiPoly::var(Var::U);
    let w = MultiPoly::var(Var::W);
    let num = u
        .pow(3)
        .neg()
        .sub(&u.pow(2).scale(&rat(2)))
        .add(&u.scale(&rat(5)))
        .sub(&MultiPoly::from_i64(10))
        .mul(&u)
        .mul(&w)
        .sub(&u.pow(4))
        .add(&u.pow(3).scale(&rat(3)))
        .add(&u.pow(2).scale(&rat(8)))
        .sub(&u.scale(&rat(10)))
        .add(&MultiPoly::from_i64(12));
    let den = u
        .pow(2)
        .scale(&rat(4))
        .mul(&u.mul(&w).add(&u).sub(&MultiPoly::from_i64(3)));
    (num, den)
}

/// Fraction for w in terms of (u,v): w = (−u²v+3uv+18)/(u²v+2u²+3u+6).
pub fn w_uv_fraction() -> (MultiPoly, MultiPoly) {
    let u = MultiPoly::var(Var::U);
    let v = MultiPoly::var(Var::V);
    let num = u
        .pow(2)
        .neg()
        .mul(&v)
        .add(&u.mul(&v).scale(&rat(3)))
        .add(&MultiPoly::from_i64(18));
    let den = u
        .pow(2)
        .mul(&v)
        .add(&u.pow(2).scale(&rat(2)))
        .add(&u.scale(&rat(3)))
        .add(&MultiPoly::from_i64(6));
    (num, den)
}

/// The four differential multipliers (numerators of ω₁..ω₄ over ω₀).
pub fn omega_multipliers() -> [MultiPoly; 4] {
    let u = MultiPoly::var(Var::U);
    let v = MultiPoly::var(Var::V);
    let u2 = u.pow(2);
    let u3 = u.pow(3);
    let m1 = u3
        .mul(&v)
        .add(&u3.scale(&rat(2)))
        .sub(&u2.mul(&v).scale(&rat(3)))
        .sub(&u2)
        .add(&u.mul(&v).scale(&rat(3)))
        .add(&MultiPoly::from_i64(6));
    let m2 = u3
        .mul(&v)
        .add(&u3.scale(&rat(2)))
        .sub(&u2.mul(&v))
        .add(&u2)
        .add(&u.scale(&rat(3)))
        .sub(&MultiPoly::from_i64(6));
    let m3 = u3
        .mul(&v)
        .add(&u3.scale(&rat(2)))
        .sub(&u2.mul(&v).scale(&rat(4)))
        .sub(&u2.scale(&rat(3)))
        .add(&u.mul(&v).scale(&rat(3)))
        .sub(&u.scale(&rat(3)));
    let m4 = u3
        .mul(&v)
        .scale(&rat(3))
        .add(&u3.scale(&rat(4)))
        .sub(&u2.mul(&v).scale(&rat(3)))
        .add(&u2.scale(&rat(6)))
        .sub(&u.scale(&rat(6)));
    [m1, m2, m3, m4]
}

/// Verifies the (t,c) → (u,v) chain: substituting t = 2/u − 1 and
/// c = v/4 − 1/u² + 2/u − u/4 into Ψ₆ and clearing denominators yields F
/// times a monomial; the three singular points satisfy the stated cubic and
/// every differential multiplier vanishes there. Returns F.
pub fn uv_model() -> Result<MultiPoly, ModelError> {
    let psi = psi6_display();
    let f = f_uv();
    let u = MultiPoly::var(Var::U);
    // t = (2 − u)/u
    let t_num = MultiPoly::from_i64(2).sub(&u);
    // c = (u²v + 8u − u³ − 4)/(4u²)
    let c_num = u
        .pow(2)
        .mul(&MultiPoly::var(Var::V))
        .add(&u.scale(&rat(8)))
        .sub(&u.pow(3))
        .sub(&MultiPoly::from_i64(4));
    let c_den = u.pow(2).scale(&rat(4));
    let step1 = psi.rational_subst(Var::T, &t_num, &u);
    let cleared = step1.rational_subst(Var::C, &c_num, &c_den);
    let q = cleared
        .exact_div(&f)
        .ok_or(ModelError::IdentityFailed("Ψ₆ → F substitution"))?;
    // quotient must be a single monomial in u (a unit times a power of u)
    if q.num_terms() != 1 || q.degree(Var::V) != 0 {
        return Err(ModelError::IdentityFailed("Ψ₆/F quotient not monomial"));
    }

    // singular locus: β root of 3β³+32β²+69β+72, 18α = 6β²+55β+69
    let qq = QQ;
    let ring = Ext::new(
        qq.clone(),
        vec![rat(24), rat(23), rat_frac(32, 3), Rat::one()],
    );
    let beta = ring.gen();
    let alpha = {
        let b2 = ring.mul(&beta, &beta);
        let mut s = ring.embed(&rat_frac(69, 18));
        s = ring.add(&s, &scale_el(&ring, &beta, rat_frac(55, 18)));
        ring.add(&s, &scale_el(&ring, &b2, rat_frac(6, 18)))
    };
    let assign = [(Var::U, alpha.clone()), (Var::V, beta.clone())];
    for (label, poly) in [
        ("F at singular points", f.clone()),
        ("∂F/∂u at singular points", f.derivative(Var::U)),
        ("∂F/∂v at singular points", f.derivative(Var::V)),
    ] {
        let val = eval_multipoly(&ring, &poly, &assign).unwrap();
        if !ring.is_zero(&val) {
            return Err(ModelError::IdentityFailed(match label {
                "F at singular points" => "F vanishes at singular points",
                "∂F/∂u at singular points" => "F_u vanishes at singular points",
                _ => "F_v vanishes at singular points",
            }));
        }
    }
    for m in omega_multipliers() {
        let val = eval_multipoly(&ring, &m, &assign).unwrap();
        if !ring.is_zero(&val) {
            return Err(ModelError::IdentityFailed(
                "differential multiplier vanishes at singular points",
            ));
        }
    }
    Ok(f)
}

fn scale_el(ring: &Ext<QQ>, a: &Vec<Rat>, k: Rat) -> Vec<Rat> {
    ring.mul(a, &ring.embed(&k))
}

/// Verifies G against F (substituting w(u,v) into G lands in the ideal of F)
/// and certifies that the bihomogenization of G cuts out a smooth curve over
/// ℚ, chart by chart. Returns G.
pub fn uw_model() -> Result<MultiPoly, ModelError> {
    let g = g_uw();
    let f = f_uv();
    let (w_num, w_den) = w_uv_fraction();
    let subst = g.rational_subst(Var::W, &w_num, &w_den);
    let rem = subst.pseudo_rem(&f, Var::V);
    if !rem.is_zero() {
        return Err(ModelError::IdentityFailed("G(u, w(u,v)) ≡ 0 mod F"));
    }
    if !curve_smooth_over(&QQ, &g, None) {
        return Err(ModelError::IdentityFailed("smoothness of G over ℚ"));
    }
    Ok(g)
}

/// The four affine charts of the bihomogenized model: (u,w), (1/u,w),
/// (u,1/w), (1/u,1/w); each as an affine polynomial of bidegree (3,3).
pub fn charts(g: &MultiPoly) -> [MultiPoly; 4] {
    let flip = |p: &MultiPoly, v: Var, deg: usize| -> MultiPoly {
        let mut coeffs = p.as_univariate(v);
        while coeffs.len() < deg + 1 {
            coeffs.push(MultiPoly::zero());
        }
        coeffs.reverse();
        MultiPoly::from_univariate(v, &coeffs)
    };
    [
        g.clone(),
        flip(g, Var::U, 3),
        flip(g, Var::W, 3),
        flip(&flip(g, Var::U, 3), Var::W, 3),
    ]
}

/// Smoothness of the bihomogeneous curve over the given field (ℚ or 𝔽_p):
/// in every chart, the system {g, g_u, g_w} has no solution over the
/// algebraic closure. `char_p` is Some(p) in positive characteristic.
pub fn curve_smooth_over<F: Field>(field: &F, g: &MultiPoly, char_p: Option<u64>) -> bool {
    for chart in charts(g) {
        if !chart_smooth(field, &chart, char_p) {
            return false;
        }
    }
    true
}

fn chart_smooth<F: Field>(field: &F, g: &MultiPoly, char_p: Option<u64>) -> bool {
    let gu = g.derivative(Var::U);
    let gw = g.derivative(Var::W);
    // eliminate w by resultants over ℚ first (exact integer data), then test
    // candidate u-coordinates in the target field
    let r1 = resultant(&g.clone(), &gu, Var::W).expect("w occurs");
    let r2 = resultant(&g.clone(), &gw, Var::W).expect("w occurs");
    let to_field_zpoly = |p: &MultiPoly| -> Vec<F::El> {
        let coeffs = p.as_univariate(Var::U);
        coeffs
            .iter()
            .map(|c| field.from_rat(&c.constant_term()).expect("good reduction"))
            .collect()
    };
    let r1f = crate::field::poly_trim(field, to_field_zpoly(&r1));
    let r2f = crate::field::poly_trim(field, to_field_zpoly(&r2));
    let d = if r1f.is_empty() {
        r2f.clone()
    } else if r2f.is_empty() {
        r1f.clone()
    } else {
        crate::field::poly_gcd(field, &r1f, &r2f)
    };
    if d.len() == 1 {
        return true;
    }
    if d.is_empty() {
        // both resultants vanish identically: the chart system is degenerate;
        // fall back to a full common-root test over the line u generic — this
        // signals a singular (or reducible) reduction.
        return false;
    }
    let m = squarefree_part(field, &d, char_p);
    if m.len() == 1 {
        return true;
    }
    let sys: Vec<BiPoly<F>> = [g, &gu, &gw]
        .iter()
        .map(|p| {
            p.as_univariate(Var::W)
                .iter()
                .map(|cu| {
                    cu.as_univariate(Var::U)
                        .iter()
                        .map(|cc| field.from_rat(&cc.constant_term()).expect("good reduction"))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    !system_has_common_root(field, &m, &sys)
}

/// Report on one bad prime of the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadPrimeReport {
    pub p: u64,
    /// singular points in projective coordinates ((u0:u1),(w0:w1)), reduced
    pub singular_points: Vec<((u64, u64), (u64, u64))>,
    /// for a unique node: is the tangent-cone discriminant a square mod p?
    pub node_with_rational_tangents: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct BadPrimes {
    pub primes: Vec<u64>,
    pub reports: Vec<BadPrimeReport>,
    pub unresolved: Option<Int>,
}

/// Candidate bad primes from iterated-resultant elimination in all four
/// charts, confirmed by smoothness testing mod each candidate.
pub fn bad_primes() -> Result<BadPrimes, ModelError> {
    let g = g_uw();
    let mut candidate_product = Int::zero();
    for chart in charts(&g) {
        let gu = chart.derivative(Var::U);
        let gw = chart.derivative(Var::W);
        let elim = |a: &MultiPoly, b: &MultiPoly, first: Var, second: Var| -> Int {
            let ra = resultant(&chart, a, first).expect("var occurs");
            let rb = resultant(&chart, b, first).expect("var occurs");
            let za = to_zpoly(&ra, second);
            let zb = to_zpoly(&rb, second);
            crate::arith::unipoly::zp_resultant(&za, &zb)
        };
        let n1 = elim(&gu, &gw, Var::W, Var::U);
        let n2 = elim(&gu, &gw, Var::U, Var::W);
        let chart_gcd = num_integer::gcd(n1, n2);
        candidate_product = num_integer::gcd(candidate_product, Int::zero())
            .max(Int::zero());
        candidate_product = if candidate_product.is_zero() {
            chart_gcd.abs()
        } else {
            &candidate_product * chart_gcd.abs()
        };
    }
    let fac = factor(&candidate_product, 10_000_000);
    let mut candidates: Vec<u64> = fac
        .factors
        .iter()
        .filter_map(|(p, _)| u64::try_from(p).ok())
        .collect();
    candidates.sort_unstable();
    candidates.dedup();

    let mut primes = vec![];
    let mut reports = vec![];
    for p in candidates {
        if !is_prime_u64(p) {
            continue;
        }
        let report = examine_prime(&g, p);
        if !report.singular_points.is_empty() {
            primes.push(p);
            reports.push(report);
        }
    }
    Ok(BadPrimes {
        primes,
        reports,
        unresolved: fac.unresolved,
    })
}

fn to_zpoly(p: &MultiPoly, v: Var) -> ZPoly {
    let pp = p.primitive_part();
    let coeffs = pp.as_univariate(v);
    let mut z: ZPoly = coeffs
        .iter()
        .map(|c| {
            let r = c.constant_term();
            assert!(r.denom().is_one());
            r.numer().clone()
        })
        .collect();
    zp_trim(&mut z);
    z
}

/// Singular points of G mod p (projectively deduplicated), plus node data
/// when there is exactly one singular point.
pub fn examine_prime(g: &MultiPoly, p: u64) -> BadPrimeReport {
    let fp = Fp::new(p);
    let mut points: Vec<((u64, u64), (u64, u64))> = vec![];
    let chart_list = charts(g);
    for (ci, chart) in chart_list.iter().enumerate() {
        for (u0, w0) in chart_singular_points(&fp, chart, p) {
            // convert affine chart coords to projective ((u0:u1),(w0:w1))
            let up = if ci == 1 || ci == 3 { (1, u0) } else { (u0, 1) };
            let wp = if ci == 2 || ci == 3 { (1, w0) } else { (w0, 1) };
            let norm = |(a, b): (u64, u64)| -> (u64, u64) {
                if b != 0 {
                    (fp.mul(&a, &fp.inv(&b).unwrap()), 1)
                } else {
                    (1, 0)
                }
            };
            let pt = (norm(up), norm(wp));
            if !points.contains(&pt) {
                points.push(pt);
            }
        }
    }
    points.sort_unstable();
    let node_with_rational_tangents = if points.len() == 1 {
        let ((u0, u1), (w0, w1)) = points[0];
        if u1 == 1 && w1 == 1 {
            // tangent cone at an affine singular point:
            // g_uu·du² + 2 g_uw·du·dw + g_ww·dw²; disc/4 = g_uw² − g_uu·g_ww
            let guu = g.derivative(Var::U).derivative(Var::U);
            let guw = g.derivative(Var::U).derivative(Var::W);
            let gww = g.derivative(Var::W).derivative(Var::W);
            let at = |poly: &MultiPoly| -> u64 {
                eval_multipoly(&fp, poly, &[(Var::U, u0), (Var::W, w0)]).unwrap()
            };
            let disc = fp.sub(&fp.mul(&at(&guw), &at(&guw)), &fp.mul(&at(&guu), &at(&gww)));
            let is_node = disc != 0;
            let is_square =
                disc == 0 || crate::arith::primes::pow_mod_u64(disc, (p - 1) / 2, p) == 1;
            Some(is_node && is_square)
        } else {
            None
        }
    } else {
        None
    };
    BadPrimeReport {
        p,
        singular_points: points,
        node_with_rational_tangents,
    }
}

/// All affine singular points of one chart mod p that are rational over 𝔽_p,
/// with a guarantee that none exist over extensions if the returned list and
/// the residual check agree.
fn chart_singular_points(fp: &Fp, chart: &MultiPoly, p: u64) -> Vec<(u64, u64)> {
    let gu = chart.derivative(Var::U);
    let gw = chart.derivative(Var::W);
    // eliminate w over ℚ, reduce mod p
    let r1 = resultant(chart, &gu, Var::W).expect("w");
    let r2 = resultant(chart, &gw, Var::W).expect("w");
    let z1 = to_zpoly(&r1, Var::U);
    let z2 = to_zpoly(&r2, Var::U);
    let f1: Vec<u64> = z1.iter().map(|c| fp.from_int(c)).collect();
    let f2: Vec<u64> = z2.iter().map(|c| fp.from_int(c)).collect();
    let f1 = crate::field::poly_trim(fp, f1);
    let f2 = crate::field::poly_trim(fp, f2);
    let d = if f1.is_empty() {
        f2.clone()
    } else if f2.is_empty() {
        f1.clone()
    } else {
        crate::field::poly_gcd(fp, &f1, &f2)
    };
    let mut out = vec![];
    if d.len() == 1 {
        return out;
    }
    let m = if d.is_empty() {
        // degenerate elimination: scan all u (small p only)
        (0..p).map(|_| 0u64).collect::<Vec<_>>() // placeholder, handled below
    } else {
        squarefree_part(fp, &d, Some(p))
    };
    let u_candidates: Vec<u64> = if d.is_empty() {
        (0..p).collect()
    } else {
        // rational roots of m via gcd with u^p − u, then root scan of that part
        let xq = crate::field::poly_powmod(fp, &[0, 1], &Int::from(p), &m);
        let lin = crate::field::poly_gcd(fp, &crate::field::poly_sub(fp, &xq, &[0, 1]), &m);
        let roots = if lin.len() > 1 {
            crate::ff::roots_fp(fp, &lin)
        } else {
            vec![]
        };
        // non-rational components must be certified empty
        let (nonlin, rem) = if lin.len() > 1 {
            crate::field::poly_divrem(fp, &m, &lin)
        } else {
            (m.clone(), vec![])
        };
        assert!(rem.is_empty());
        if nonlin.len() > 1 {
            let sys: Vec<BiPoly<Fp>> = [chart, &gu, &gw]
                .iter()
                .map(|poly| {
                    poly.as_univariate(Var::W)
                        .iter()
                        .map(|cu| {
                            cu.as_univariate(Var::U)
                                .iter()
                                .map(|c| fp.from_rat(&c.constant_term()).unwrap())
                                .collect::<Vec<_>>()
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            assert!(
                !system_has_common_root(fp, &nonlin, &sys),
                "singular point over an extension field; report needs extension support"
            );
        }
        roots
    };
    for u0 in u_candidates {
        // common w-roots of (g, g_u, g_w) at u = u0
        let eval_w = |poly: &MultiPoly| -> Vec<u64> {
            let coeffs = poly.as_univariate(Var::W);
            let v: Vec<u64> = coeffs
                .iter()
                .map(|cu| {
                    eval_multipoly(fp, cu, &[(Var::U, u0)]).unwrap()
                })
                .collect();
            crate::field::poly_trim(fp, v)
        };
        let a = eval_w(chart);
        let b = eval_w(&gu);
        let c = eval_w(&gw);
        let mut gcd = a;
        for q in [b, c] {
            if gcd.is_empty() {
                gcd = q;
            } else if !q.is_empty() {
                gcd = crate::field::poly_gcd(fp, &gcd, &q);
            }
        }
        if gcd.is_empty() {
            // entire fiber singular: record all rational w
            for w0 in 0..p {
                out.push((u0, w0));
            }
            continue;
        }
        if gcd.len() > 1 {
            for w0 in crate::ff::roots_fp(fp, &gcd) {
                out.push((u0, w0));
            }
            // irrational w-roots over extensions: only possible if gcd has
            // an irreducible factor of degree ≥ 2; count check
            let nroots = out.iter().filter(|(uu, _)| *uu == u0).count();
            assert!(
                nroots + 1 >= gcd.len() || nroots > 0,
                "singular w over extension at rational u"
            );
        }
    }
    out
}

/// One periodic cycle found by the elementary search.
#[derive(Debug, Clone, PartialEq)]
pub struct FoundCycle {
    pub c: Rat,
    pub members: Vec<Rat>,
    pub len: usize,
}

/// Enumerates all cycles of x ↦ x² + c with m²c ∈ ℤ, |c| ≤ bound, over
/// rationals with denominator dividing m, inside the window |x| < √|c| + 1
/// (|x| ≤ 1 when |c| ≤ 1). Results ascend by c, then by cycle minimum.
pub fn integral_cycle_search(bound: u64, m: u64) -> Vec<FoundCycle> {
    assert!(bound >= 1 && m >= 1);
    let m = m as i128;
    let kmax = bound as i128 * m * m;
    let mut results: Vec<FoundCycle> = (-kmax..=kmax)
        .into_par_iter()
        .flat_map_iter(|k| cycles_for_c(k, m).into_iter())
        .collect();
    results.sort_by(|a, b| {
        a.c.cmp(&b.c)
            .then_with(|| a.members.first().cmp(&b.members.first()))
    });
    results
}

/// Cycles for c = k/m² among x ∈ (1/m)·ℤ.
fn cycles_for_c(k: i128, m: i128) -> Vec<FoundCycle> {
    // window on scaled A = m·x: |A| < m(√|c| + 1) or |A| ≤ m for |c| ≤ 1
    let c_abs_num = k.unsigned_abs(); // |c| = k/m² with |c| ≤ bound
    let m2 = (m * m) as u128;
    let a_bound: i128 = if c_abs_num <= m2 {
        m
    } else {
        // smallest integer > m·(√|c|+1) − 1: use integer sqrt of k·1 (scaled)
        // m·√(k/m²) = √k (k > 0 here)
        let s = isqrt_u128(c_abs_num) + 1; // ≥ √k
        (s as i128) + m
    };
    let step = |a: i128| -> Option<i128> {
        // x ↦ x² + c on A = m·x: A' = (A² + k)/m, exact division required
        let num = a.checked_mul(a)? .checked_add(k)?;
        if num % m != 0 {
            return None;
        }
        let next = num / m;
        if next.abs() > a_bound {
            return None;
        }
        Some(next)
    };
    let mut cycles: Vec<Vec<i128>> = vec![];
    let mut seen_min: Vec<i128> = vec![];
    for a0 in -a_bound..=a_bound {
        let mut orbit = vec![a0];
        let mut cur = a0;
        let maxlen = (2 * a_bound + 2) as usize;
        for _ in 0..maxlen {
            match step(cur) {
                None => break,
                Some(next) => {
                    if next == a0 {
                        // canonical rotation: start at the minimum member
                        let min = *orbit.iter().min().unwrap();
                        if !seen_min.contains(&min) {
                            seen_min.push(min);
                            let pos = orbit.iter().position(|&x| x == min).unwrap();
                            orbit.rotate_left(pos);
                            cycles.push(orbit);
                        }
                        break;
                    }
                    if orbit.contains(&next) {
                        break; // entered a cycle not through a0: preperiodic
                    }
                    orbit.push(next);
                    cur = next;
                }
            }
        }
    }
    cycles
        .into_iter()
        .map(|orbit| FoundCycle {
            c: Rat::new(Int::from(k), Int::from(m * m)),
            len: orbit.len(),
            members: orbit
                .iter()
                .map(|&a| Rat::new(Int::from(a), Int::from(m)))
                .collect(),
        })
        .collect()
}

fn isqrt_u128(n: u128) -> i128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.saturating_mul(x) > n {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= n {
        x += 1;
    }
    x as i128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;

    #[test]
    fn iterate_degrees_and_composition() {
        assert_eq!(iterate(0), x());
        assert_eq!(iterate(1), x().pow(2).add(&cc()));
        for n in 0..=6 {
            assert_eq!(iterate(n).degree(Var::X), 1 << n);
        }
        // f^(m+n) = f^(m) ∘ f^(n)
        let lhs = iterate(5);
        let rhs = iterate(2).subst(Var::X, &iterate(3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dynatomic_identity_and_degree() {
        let phi = dynatomic_6().unwrap();
        assert_eq!(phi.degree(Var::X), 54);
        let lhs = phi.mul(&iterate(3).sub(&x()).mul(&iterate(2).sub(&x())));
        let rhs = iterate(6)
            .sub(&x())
            .mul(&x().pow(2).sub(&x()).add(&cc()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dynatomic_vanishes_at_sqrt33_point() {
        // c = −71/48, x = −1 + √33/12, evaluated in ℚ[y]/(y² − 33)
        let phi = dynatomic_6().unwrap();
        let ring = Ext::new(QQ, vec![rat(-33), Rat::zero(), Rat::one()]);
        let y = ring.gen();
        let x0 = ring.add(
            &ring.embed(&rat(-1)),
            &ring.mul(&y, &ring.embed(&rat_frac(1, 12))),
        );
        let c0 = ring.embed(&rat_frac(-71, 48));
        let v = eval_multipoly(&ring, &phi, &[(Var::X, x0), (Var::C, c0)]).unwrap();
        assert!(ring.is_zero(&v));
    }

    #[test]
    fn ninth_cyclotomic_divides_c0_specialization() {
        // squaring has order 6 mod 9, so primitive 9th roots of unity have
        // period exactly 6 under x ↦ x² when c = 0
        let phi = dynatomic_6().unwrap();
        let phi_c0 = phi.eval_partial(&[(Var::C, Rat::zero())]);
        let cyc9 = x().pow(6).add(&x().pow(3)).add(&MultiPoly::one());
        assert!(phi_c0.exact_div(&cyc9).is_some());
    }

    #[test]
    fn cycles_small_bounds() {
        let res = integral_cycle_search(1, 1);
        // c = −1 yields the 2-cycle {0, −1}
        let two = res
            .iter()
            .find(|f| f.c == rat(-1) && f.len == 2)
            .expect("2-cycle at c = −1");
        let mut mem = two.members.clone();
        mem.sort();
        assert_eq!(mem, vec![rat(-1), rat(0)]);
        // fixed points at c = 0: x = 0 and x = 1
        let fixed: Vec<_> = res.iter().filter(|f| f.c == rat(0) && f.len == 1).collect();
        assert_eq!(fixed.len(), 2);
    }

    #[test]
    fn no_long_cycles_up_to_1000() {
        let res = integral_cycle_search(1000, 1);
        assert!(res.iter().all(|f| f.len <= 2));
        // (x, −x−1) is a 2-cycle for c = −x²−x−1
        for xx in -30i64..=30 {
            let c = -(xx * xx + xx + 1);
            if c.unsigned_abs() <= 1000 {
                let found = res
                    .iter()
                    .any(|f| f.c == rat(c) && f.len == 2 && f.members.contains(&rat(xx)));
                assert!(found, "missing 2-cycle for x = {}", xx);
            }
        }
    }
}
