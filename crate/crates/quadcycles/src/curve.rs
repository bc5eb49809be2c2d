//! The curve C ⊂ ℙ¹×ℙ¹ of bidegree (3,3) as a concrete object: rational and
//! finite-field points, membership, the ten known rational points with their
//! (t, c) data, reduction mod p, point counting over 𝔽_{p^e}, and local
//! power-series expansions at smooth points.

use crate::arith::{rat, rat_frac, Int, MultiPoly, Rat, Var};
use crate::dynatomic::{c_uw_fraction, charts, g_uw};
use crate::ff::Mont;
use crate::field::{eval_multipoly, Field, Fp, QQ};
use crate::series;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// A coordinate on ℙ¹(ℚ): finite value or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coord {
    Fin(Rat),
    Inf,
}

impl Coord {
    pub fn fin(n: i64) -> Coord {
        Coord::Fin(rat(n))
    }

    pub fn fin_frac(n: i64, d: i64) -> Coord {
        Coord::Fin(rat_frac(n, d))
    }

    /// Normalized projective pair (a : b), coprime integers, (1 : 0) for ∞.
    pub fn proj(&self) -> (Int, Int) {
        match self {
            Coord::Inf => (Int::one(), Int::zero()),
            Coord::Fin(r) => (r.numer().clone(), r.denom().clone()),
        }
    }
}

impl std::fmt::Display for Coord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coord::Inf => write!(f, "∞"),
            Coord::Fin(r) => write!(f, "{}", r),
        }
    }
}

/// A rational point of C in bihomogeneous coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePoint {
    pub u: Coord,
    pub w: Coord,
}

impl CurvePoint {
    pub fn new(u: Coord, w: Coord) -> Self {
        CurvePoint { u, w }
    }
}

impl std::fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.u, self.w)
    }
}

/// A point of C(𝔽_p) in normalized projective coordinates: finite x ↦ (x, 1),
/// infinity ↦ (1, 0).
pub type FpPoint = ((u64, u64), (u64, u64));

/// One row of the known-points table.
#[derive(Debug, Clone)]
pub struct KnownPoint {
    pub name: &'static str,
    pub point: CurvePoint,
    pub t: Coord,
    pub c: Coord,
    pub is_cusp: bool,
}

/// The ten known rational points P₀..P₉ (first five are the cusps).
pub fn known_points() -> Vec<KnownPoint> {
    use Coord::{Fin, Inf};
    let mk = |name, u, w, t, c, is_cusp| KnownPoint {
        name,
        point: CurvePoint::new(u, w),
        t,
        c,
        is_cusp,
    };
    vec![
        mk("P0", Coord::fin(0), Inf, Inf, Inf, true),
        mk("P1", Coord::fin(0), Coord::fin(-1), Inf, Inf, true),
        mk("P2", Coord::fin(0), Coord::fin(3), Inf, Inf, true),
        mk("P3", Inf, Coord::fin(0), Coord::fin(-1), Inf, true),
        mk("P4", Coord::fin(1), Coord::fin(2), Coord::fin(1), Inf, true),
        mk("P5", Coord::fin(2), Coord::fin(1), Coord::fin(0), Fin(rat(0)), false),
        mk("P6", Coord::fin(1), Inf, Coord::fin(1), Fin(rat(-2)), false),
        mk("P7", Inf, Coord::fin(-1), Coord::fin(-1), Fin(rat(-2)), false),
        mk("P8", Coord::fin(-1), Inf, Coord::fin(-3), Fin(rat(-4)), false),
        mk(
            "P9",
            Coord::fin_frac(-4, 5),
            Coord::fin(-1),
            Coord::fin_frac(-7, 2),
            Fin(rat_frac(-71, 48)),
            false,
        ),
    ]
}

/// Bihomogenization of a bidegree-(du, dw) polynomial, evaluated at
/// projective coordinates over any field.
pub fn eval_bihom<F: Field>(
    f: &F,
    poly: &MultiPoly,
    du: usize,
    dw: usize,
    u: (F::El, F::El),
    w: (F::El, F::El),
) -> F::El {
    let mut acc = f.zero();
    for (mono, coeff) in poly.terms() {
        let (i, j) = (mono.exp(Var::U) as usize, mono.exp(Var::W) as usize);
        let mut term = f.from_rat(coeff).expect("coefficient reduces");
        for _ in 0..i {
            term = f.mul(&term, &u.0);
        }
        for _ in 0..du - i {
            term = f.mul(&term, &u.1);
        }
        for _ in 0..j {
            term = f.mul(&term, &w.0);
        }
        for _ in 0..dw - j {
            term = f.mul(&term, &w.1);
        }
        acc = f.add(&acc, &term);
    }
    acc
}

/// Is the point on C (over ℚ)?
pub fn contains(p: &CurvePoint) -> bool {
    let g = g_uw();
    let qq = QQ;
    let (u0, u1) = p.u.proj();
    let (w0, w1) = p.w.proj();
    let v = eval_bihom(
        &qq,
        &g,
        3,
        3,
        (Rat::from_integer(u0), Rat::from_integer(u1)),
        (Rat::from_integer(w0), Rat::from_integer(w1)),
    );
    v.is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    BadPrime(u64),
    NotOnCurve,
}

impl std::fmt::Display for CurveError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurveError::BadPrime(p) => write!(f, "{} is a prime of bad reduction", p),
            CurveError::NotOnCurve => write!(f, "point does not lie on the curve"),
        }
    }
}

impl std::error::Error for CurveError {}

pub const BAD_PRIMES: [u64; 2] = [2, 8029187];

/// Reduce a rational point mod a good prime; the result lies on C over 𝔽_p.
pub fn reduce_point(p: &CurvePoint, prime: u64) -> Result<FpPoint, CurveError> {
    if BAD_PRIMES.contains(&prime) {
        return Err(CurveError::BadPrime(prime));
    }
    if !contains(p) {
        return Err(CurveError::NotOnCurve);
    }
    let fp = Fp::new(prime);
    let red = |c: &Coord| -> (u64, u64) {
        let (a, b) = c.proj();
        let (ar, br) = (fp.from_int(&a), fp.from_int(&b));
        if br != 0 {
            (fp.mul(&ar, &fp.inv(&br).unwrap()), 1)
        } else {
            (1, 0)
        }
    };
    Ok((red(&p.u), red(&p.w)))
}

/// Is a projective 𝔽_p pair on the reduced curve?
pub fn contains_fp(pt: &FpPoint, prime: u64) -> bool {
    let fp = Fp::new(prime);
    let g = g_uw();
    let v = eval_bihom(&fp, &g, 3, 3, (pt.0 .0, pt.0 .1), (pt.1 .0, pt.1 .1));
    v == 0
}

/// All points of C(𝔽_p) for small p, by direct fiber enumeration.
pub fn points_fp(prime: u64) -> Vec<FpPoint> {
    let fp = Fp::new(prime);
    let g = g_uw();
    let mut out = vec![];
    let mut us: Vec<(u64, u64)> = (0..prime).map(|x| (x, 1)).collect();
    us.push((1, 0));
    let mut ws = us.clone();
    ws.sort_unstable();
    for &u in &us {
        for &w in &ws {
            if eval_bihom(&fp, &g, 3, 3, u, w) == 0 {
                out.push((u, w));
            }
        }
    }
    out
}

/// #C(𝔽_{p^e}), counted bihomogeneously: for each (u₀:u₁) ∈ ℙ¹(𝔽_q), the
/// number of projective roots in (w₀:w₁) of the bidegree-(3,3) form.
pub fn count_points(p: u64, e: usize) -> Result<u64, CurveError> {
    if BAD_PRIMES.contains(&p) {
        return Err(CurveError::BadPrime(p));
    }
    assert!((1..=4).contains(&e));
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&n) = cache.lock().unwrap().get(&(p, e)) {
        return Ok(n);
    }
    let n = if e == 1 {
        count_points_fast(p)
    } else {
        count_points_ext(p, e)
    };
    cache.lock().unwrap().insert((p, e), n);
    Ok(n)
}

/// The w-coefficients of G as polynomials in u (index = w-power), and the
/// fiber at u = ∞ as a w-polynomial (the u³-coefficients).
fn fiber_data() -> (Vec<Vec<Rat>>, Vec<Rat>) {
    static CACHE: OnceLock<(Vec<Vec<Rat>>, Vec<Rat>)> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let g = g_uw();
            let wcoeffs = g.as_univariate(Var::W);
            let mut by_w: Vec<Vec<Rat>> = vec![];
            for cw in &wcoeffs {
                let uc = cw.as_univariate(Var::U);
                let mut v: Vec<Rat> = uc.iter().map(|c| c.constant_term()).collect();
                while v.len() < 4 {
                    v.push(Rat::zero());
                }
                by_w.push(v);
            }
            while by_w.len() < 4 {
                by_w.push(vec![Rat::zero(); 4]);
            }
            // fiber at u = ∞: coefficient of u³ in each w-coefficient
            let inf: Vec<Rat> = by_w.iter().map(|v| v[3].clone()).collect();
            (by_w, inf)
        })
        .clone()
}

/// Montgomery-arithmetic point count over 𝔽_p (the L-series inner loop).
fn count_points_fast(p: u64) -> u64 {
    let m = Mont::new(p);
    let (by_w, inf_fiber) = fiber_data();
    // coefficient polynomials in u for each w-power, in Montgomery form
    let coef: Vec<[u64; 4]> = by_w
        .iter()
        .map(|v| {
            let mut a = [0u64; 4];
            for (i, c) in v.iter().enumerate() {
                let num = c.numer();
                let r = num.mod_floor(&Int::from(p));
                use num_traits::ToPrimitive;
                a[i] = m.to_mont(r.to_u64().unwrap());
            }
            a
        })
        .collect();
    let mut total = 0u64;
    // affine u fibers
    for u0 in 0..p {
        let um = m.to_mont(u0);
        let mut h = [0u64; 4];
        for j in 0..4 {
            // Horner for coef[j] at u0
            let c = &coef[j];
            let mut acc = c[3];
            for k in (0..3).rev() {
                acc = m.add(m.mul(acc, um), c[k]);
            }
            h[j] = acc;
        }
        total += fiber_projective_count(&m, h, p);
    }
    // fiber at u = ∞
    let mut hinf = [0u64; 4];
    for (j, c) in inf_fiber.iter().enumerate() {
        use num_traits::ToPrimitive;
        let r = c.numer().mod_floor(&Int::from(p)).to_u64().unwrap();
        hinf[j] = m.to_mont(r);
    }
    total += fiber_projective_count(&m, hinf, p);
    total
}

/// Projective root count of the degree-3 binary form with affine part h
/// (h[j] = coefficient of w^j, Montgomery form): distinct roots of h in 𝔽_p
/// plus one if the w³-coefficient vanishes (root at w = ∞).
fn fiber_projective_count(m: &Mont, h: [u64; 4], p: u64) -> u64 {
    let at_inf = (h[3] == 0) as u64;
    // trim
    let mut deg = 3i32;
    while deg >= 0 && h[deg as usize] == 0 {
        deg -= 1;
    }
    if deg < 0 {
        // identically zero fiber: the whole ℙ¹
        return p + 1;
    }
    if deg == 0 {
        return at_inf;
    }
    let hh = &h[..=deg as usize];
    // r = w^p mod h
    let r = powmod_small(m, p, hh);
    // gcd(r − w, h): distinct-root count = deg gcd
    let mut a: Vec<u64> = hh.to_vec();
    let mut b = r;
    if b.len() < 2 {
        b.resize(2, 0);
    }
    b[1] = m.sub(b[1], m.one());
    trim_small(&mut b);
    let roots = gcd_deg(m, &mut a, &mut b, p);
    roots as u64 + at_inf
}

fn trim_small(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// w^p mod h (h of degree 1..3), fixed-size arithmetic in Montgomery form.
fn powmod_small(m: &Mont, p: u64, h: &[u64]) -> Vec<u64> {
    let dh = h.len() - 1;
    if dh == 1 {
        // w ≡ −h0/h1
        let inv = inv_mont(m, h[1], p);
        let root = m.sub(0, m.mul(h[0], inv));
        // w^p mod (w − root) = root^p = root (Fermat) — but we need w^p as a
        // polynomial: it is the constant root^p = root
        return vec![root];
    }
    let hinv = inv_mont(m, h[dh], p);
    let hm: Vec<u64> = h.iter().map(|&c| m.mul(c, hinv)).collect(); // monic
    let mut acc = vec![m.one()];
    let bits = 64 - p.leading_zeros();
    for i in (0..bits).rev() {
        acc = mulmod_small(m, &acc, &acc, &hm);
        if (p >> i) & 1 == 1 {
            // multiply by w: shift
            let mut shifted = vec![0u64];
            shifted.extend_from_slice(&acc);
            acc = redmod_small(m, shifted, &hm);
        }
    }
    acc
}

fn mulmod_small(m: &Mont, a: &[u64], b: &[u64], hm: &[u64]) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = m.add(prod[i + j], m.mul(x, y));
        }
    }
    redmod_small(m, prod, hm)
}

fn redmod_small(m: &Mont, mut v: Vec<u64>, hm: &[u64]) -> Vec<u64> {
    let dh = hm.len() - 1;
    trim_small(&mut v);
    while v.len() > dh {
        let lead = v.pop().unwrap();
        if lead == 0 {
            trim_small(&mut v);
            continue;
        }
        let shift = v.len() - dh;
        for i in 0..dh {
            v[shift + i] = m.sub(v[shift + i], m.mul(hm[i], lead));
        }
        trim_small(&mut v);
    }
    v
}

fn inv_mont(m: &Mont, a: u64, p: u64) -> u64 {
    // a^(p−2) in Montgomery form
    let mut acc = m.one();
    let mut b = a;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = m.mul(acc, b);
        }
        b = m.mul(b, b);
        e >>= 1;
    }
    acc
}

/// Degree of gcd(a, b) over 𝔽_p (coefficients in Montgomery form).
fn gcd_deg(m: &Mont, a: &mut Vec<u64>, b: &mut Vec<u64>, p: u64) -> usize {
    trim_small(a);
    trim_small(b);
    loop {
        if b.is_empty() {
            return a.len().saturating_sub(1);
        }
        if a.len() < b.len() {
            std::mem::swap(a, b);
            continue;
        }
        // a mod b
        let binv = inv_mont(m, *b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let coef = m.mul(*a.last().unwrap(), binv);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                a[shift + i] = m.sub(a[shift + i], m.mul(bc, coef));
            }
            trim_small(a);
        }
        std::mem::swap(a, b);
    }
}

/// Extension-field count for e ≥ 2 on the fixed-size Montgomery kernel.
fn count_points_ext(p: u64, e: usize) -> u64 {
    use crate::ff::{FqEl, FqMont};
    let fq = FqMont::new(p, e);
    let q = fq.q();
    let (by_w, inf_fiber) = fiber_data();
    let fp = Fp::new(p);
    let embed = |r: &Rat| -> FqEl {
        let mut v = fq.zero();
        v[0] = fq.m.to_mont(fp.from_rat(r).unwrap());
        v
    };
    // coefficient polynomials in u for each w-power (u-degree ≤ 3)
    let coef: Vec<[FqEl; 4]> = by_w
        .iter()
        .map(|v| {
            let mut a = [fq.zero(); 4];
            for (i, c) in v.iter().enumerate() {
                a[i] = embed(c);
            }
            a
        })
        .collect();
    let mut total = 0u64;
    let mut counter = [0u64; 4];
    loop {
        let u0: FqEl = counter;
        let mut h = [fq.zero(); 4];
        for j in 0..4 {
            let c = &coef[j];
            let mut acc = c[3];
            for k in (0..3).rev() {
                acc = fq.add(&fq.mul(&acc, &u0), &c[k]);
            }
            h[j] = acc;
        }
        total += fiber_count_ext(&fq, h, q);
        let mut i = 0;
        loop {
            if i == e {
                break;
            }
            counter[i] += 1;
            if counter[i] < p {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
        if i == e {
            break;
        }
    }
    let mut hinf = [fq.zero(); 4];
    for (j, c) in inf_fiber.iter().enumerate() {
        hinf[j] = embed(c);
    }
    total += fiber_count_ext(&fq, hinf, q);
    total
}

/// Projective root count of the fiber cubic over 𝔽_q (Montgomery kernel):
/// distinct roots via deg gcd(w^q − w, h), plus the point at w = ∞ when the
/// top coefficient vanishes.
fn fiber_count_ext(fq: &crate::ff::FqMont, h: [crate::ff::FqEl; 4], q: u64) -> u64 {
    let at_inf = fq.is_zero(&h[3]) as u64;
    let mut deg = 3i32;
    while deg >= 0 && fq.is_zero(&h[deg as usize]) {
        deg -= 1;
    }
    if deg < 0 {
        return q + 1;
    }
    if deg == 0 {
        return at_inf;
    }
    let hh = &h[..=deg as usize];
    // monic modulus
    let lead_inv = fq.inv(hh.last().unwrap());
    let hm: Vec<crate::ff::FqEl> = hh.iter().map(|c| fq.mul(c, &lead_inv)).collect();
    // w^q mod hm
    let mut acc: Vec<crate::ff::FqEl> = vec![fq.one()];
    let bits = 64 - q.leading_zeros();
    for i in (0..bits).rev() {
        acc = ext_mulmod(fq, &acc, &acc, &hm);
        if (q >> i) & 1 == 1 {
            let mut shifted = vec![fq.zero()];
            shifted.extend_from_slice(&acc);
            acc = ext_redmod(fq, shifted, &hm);
        }
    }
    // gcd(acc − w, hm)
    let mut a: Vec<crate::ff::FqEl> = hm.clone();
    let mut b = acc;
    if b.len() < 2 {
        b.resize(2, fq.zero());
    }
    b[1] = fq.sub(&b[1], &fq.one());
    ext_trim(fq, &mut b);
    ext_gcd_deg(fq, &mut a, &mut b) as u64 + at_inf
}

fn ext_trim(fq: &crate::ff::FqMont, v: &mut Vec<crate::ff::FqEl>) {
    while v.last().is_some_and(|c| fq.is_zero(c)) {
        v.pop();
    }
}

fn ext_mulmod(
    fq: &crate::ff::FqMont,
    a: &[crate::ff::FqEl],
    b: &[crate::ff::FqEl],
    hm: &[crate::ff::FqEl],
) -> Vec<crate::ff::FqEl> {
    let mut prod = vec![fq.zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if fq.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = fq.mul(x, y);
            prod[i + j] = fq.add(&prod[i + j], &t);
        }
    }
    ext_redmod(fq, prod, hm)
}

fn ext_redmod(
    fq: &crate::ff::FqMont,
    mut v: Vec<crate::ff::FqEl>,
    hm: &[crate::ff::FqEl],
) -> Vec<crate::ff::FqEl> {
    let dh = hm.len() - 1;
    ext_trim(fq, &mut v);
    while v.len() > dh {
        let lead = v.pop().unwrap();
        if fq.is_zero(&lead) {
            ext_trim(fq, &mut v);
            continue;
        }
        let shift = v.len() - dh;
        for i in 0..dh {
            let t = fq.mul(&hm[i], &lead);
            v[shift + i] = fq.sub(&v[shift + i], &t);
        }
        ext_trim(fq, &mut v);
    }
    v
}

fn ext_gcd_deg(
    fq: &crate::ff::FqMont,
    a: &mut Vec<crate::ff::FqEl>,
    b: &mut Vec<crate::ff::FqEl>,
) -> usize {
    ext_trim(fq, a);
    ext_trim(fq, b);
    loop {
        if b.is_empty() {
            return a.len().saturating_sub(1);
        }
        if a.len() < b.len() {
            std::mem::swap(a, b);
            continue;
        }
        let binv = fq.inv(b.last().unwrap());
        while a.len() >= b.len() && !a.is_empty() {
            let coef = fq.mul(a.last().unwrap(), &binv);
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                let t = fq.mul(bc, &coef);
                a[shift + i] = fq.sub(&a[shift + i], &t);
            }
            ext_trim(fq, a);
        }
        std::mem::swap(a, b);
    }
}

// ---- local expansions ----

/// Which coordinate function serves as the local parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchParam {
    U,
    W,
    InvU,
    InvW,
}

/// Power-series branch of the curve at a smooth point: the chosen parameter
/// τ runs over the chart coordinate minus its center value; the dependent
/// chart coordinate is given by `series` (constant term = its center value).
#[derive(Debug, Clone)]
pub struct Branch<F: Field> {
    pub field: F,
    pub param: BranchParam,
    /// (flip_u, flip_w) chart containing the point with finite coordinates
    pub chart: (bool, bool),
    /// center in chart coordinates (independent, dependent)
    pub center: (F::El, F::El),
    /// dependent coordinate as a series in τ, constant term first
    pub series: Vec<F::El>,
    pub prec: usize,
}

impl<F: Field> Branch<F> {
    /// Series of the independent chart coordinate: center + τ.
    pub fn indep_series(&self) -> Vec<F::El> {
        let mut s = vec![self.center.0.clone(), self.field.one()];
        s.resize(self.prec.max(2), self.field.zero());
        s
    }

    /// u- and w-chart series (in chart coordinates, not flipped back).
    pub fn chart_series(&self) -> (Vec<F::El>, Vec<F::El>) {
        let dep = {
            let mut s = self.series.clone();
            s.resize(self.prec.max(1), self.field.zero());
            s
        };
        match self.param {
            BranchParam::U | BranchParam::InvU => (self.indep_series(), dep),
            BranchParam::W | BranchParam::InvW => (dep, self.indep_series()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpandError {
    NotOnCurve,
    SingularPoint,
    BadReduction,
}

impl std::fmt::Display for ExpandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExpandError::NotOnCurve => write!(f, "center is not on the curve"),
            ExpandError::SingularPoint => write!(f, "no coordinate is a uniformizer"),
            ExpandError::BadReduction => write!(f, "coordinates do not reduce"),
        }
    }
}

impl std::error::Error for ExpandError {}

/// Expand the curve at a point with projective coordinates over F, picking a
/// chart where the point is finite and a coordinate whose differential is
/// nonzero there (u preferred).
pub fn local_expansion<F: Field>(
    f: &F,
    u: (F::El, F::El),
    w: (F::El, F::El),
    prec: usize,
) -> Result<Branch<F>, ExpandError> {
    let g = g_uw();
    let val = eval_bihom(f, &g, 3, 3, (u.0.clone(), u.1.clone()), (w.0.clone(), w.1.clone()));
    if !f.is_zero(&val) {
        return Err(ExpandError::NotOnCurve);
    }
    let flip_u = f.is_zero(&u.1);
    let flip_w = f.is_zero(&w.1);
    let chart_poly = {
        let cs = charts(&g);
        match (flip_u, flip_w) {
            (false, false) => cs[0].clone(),
            (true, false) => cs[1].clone(),
            (false, true) => cs[2].clone(),
            (true, true) => cs[3].clone(),
        }
    };
    let u0 = if flip_u {
        f.div(&u.1, &u.0)
    } else {
        f.div(&u.0, &u.1)
    };
    let w0 = if flip_w {
        f.div(&w.1, &w.0)
    } else {
        f.div(&w.0, &w.1)
    };
    let gu = chart_poly.derivative(Var::U);
    let gw = chart_poly.derivative(Var::W);
    let assign = [(Var::U, u0.clone()), (Var::W, w0.clone())];
    let gw_val = eval_multipoly(f, &gw, &assign).ok_or(ExpandError::BadReduction)?;
    let gu_val = eval_multipoly(f, &gu, &assign).ok_or(ExpandError::BadReduction)?;
    let (param_is_u, center) = if !f.is_zero(&gw_val) {
        (true, (u0, w0))
    } else if !f.is_zero(&gu_val) {
        (false, (w0, u0))
    } else {
        return Err(ExpandError::SingularPoint);
    };
    // Newton iteration for the dependent coordinate series
    let mut dep = vec![center.1.clone()];
    let mut cur_prec = 1usize;
    while cur_prec < prec {
        cur_prec = (cur_prec * 2).min(prec);
        dep.resize(cur_prec, f.zero());
        let indep = {
            let mut s = vec![center.0.clone(), f.one()];
            s.resize(cur_prec.max(2), f.zero());
            s
        };
        let (us, ws) = if param_is_u {
            (indep.clone(), dep.clone())
        } else {
            (dep.clone(), indep.clone())
        };
        let g_val = series::eval_poly_on(f, &chart_poly, &us, &ws, cur_prec);
        let gd = if param_is_u { &gw } else { &gu };
        let gd_val = series::eval_poly_on(f, gd, &us, &ws, cur_prec);
        let corr = series::mul(f, &g_val, &series::inv(f, &gd_val, cur_prec), cur_prec);
        dep = series::sub(f, &dep, &corr, cur_prec);
    }
    dep.resize(prec.max(1), f.zero());
    let param = match (param_is_u, flip_u, flip_w) {
        (true, false, _) => BranchParam::U,
        (true, true, _) => BranchParam::InvU,
        (false, _, false) => BranchParam::W,
        (false, _, true) => BranchParam::InvW,
    };
    Ok(Branch {
        field: f.clone(),
        param,
        chart: (flip_u, flip_w),
        center,
        series: dep,
        prec,
    })
}

/// Expansion at a rational point over ℚ.
pub fn local_expansion_q(p: &CurvePoint, prec: usize) -> Result<Branch<QQ>, ExpandError> {
    let (u0, u1) = p.u.proj();
    let (w0, w1) = p.w.proj();
    local_expansion(
        &QQ,
        (Rat::from_integer(u0), Rat::from_integer(u1)),
        (Rat::from_integer(w0), Rat::from_integer(w1)),
        prec,
    )
}

/// Vanishing order at the branch center of a bidegree-(du,dw) form, computed
/// by composing the chart-dehomogenized form with the branch series.
pub fn vanishing_order<F: Field>(
    branch: &Branch<F>,
    form: &MultiPoly,
    du: usize,
    dw: usize,
) -> Option<usize> {
    let f = &branch.field;
    let chart_form = dehom_to_chart(form, du, dw, branch.chart);
    let (us, ws) = branch.chart_series();
    let s = series::eval_poly_on(f, &chart_form, &us, &ws, branch.prec);
    series::valuation(f, &s)
}

/// Dehomogenize a bidegree-(du,dw) form into the given chart.
pub fn dehom_to_chart(form: &MultiPoly, du: usize, dw: usize, chart: (bool, bool)) -> MultiPoly {
    let flip = |p: &MultiPoly, v: Var, deg: usize| -> MultiPoly {
        let mut coeffs = p.as_univariate(v);
        while coeffs.len() < deg + 1 {
            coeffs.push(MultiPoly::zero());
        }
        coeffs.reverse();
        MultiPoly::from_univariate(v, &coeffs)
    };
    let mut g = form.clone();
    if chart.0 {
        g = flip(&g, Var::U, du);
    }
    if chart.1 {
        g = flip(&g, Var::W, dw);
    }
    g
}

/// Value of c at a point of C, via the projective (4,1)-bihomogenization of
/// the c-fraction, with a branch-series limit when the naive evaluation is
/// indeterminate. Returns None for c = ∞.
pub fn c_of_point(p: &CurvePoint) -> Result<Option<Rat>, CurveError> {
    if !contains(p) {
        return Err(CurveError::NotOnCurve);
    }
    let (num, den) = c_uw_fraction();
    let qq = QQ;
    let (u0, u1) = p.u.proj();
    let (w0, w1) = p.w.proj();
    let up = (Rat::from_integer(u0), Rat::from_integer(u1));
    let wp = (Rat::from_integer(w0), Rat::from_integer(w1));
    let n = eval_bihom(&qq, &num, 4, 1, up.clone(), wp.clone());
    let d = eval_bihom(&qq, &den, 4, 1, up, wp);
    if !d.is_zero() {
        return Ok(Some(n / d));
    }
    if !n.is_zero() {
        return Ok(None);
    }
    // 0/0: resolve along the branch
    let branch = local_expansion_q(p, 16).map_err(|_| CurveError::NotOnCurve)?;
    let f = &branch.field;
    let nc = dehom_to_chart(&num, 4, 1, branch.chart);
    let dc = dehom_to_chart(&den, 4, 1, branch.chart);
    let (us, ws) = branch.chart_series();
    let ns = series::eval_poly_on(f, &nc, &us, &ws, branch.prec);
    let ds = series::eval_poly_on(f, &dc, &us, &ws, branch.prec);
    let vn = series::valuation(f, &ns);
    let vd = series::valuation(f, &ds);
    match (vn, vd) {
        (Some(a), Some(b)) if a == b => Ok(Some(ns[a].clone() / ds[b].clone())),
        (Some(a), Some(b)) if a > b => Ok(Some(Rat::zero())),
        (Some(_), Some(_)) | (None, Some(_)) => Ok(None),
        (Some(_), None) => Ok(None),
        (None, None) => panic!("c-fraction vanishes identically along a branch"),
    }
}

/// t = 2/u − 1 at a point; None for t = ∞ (u = 0).
pub fn t_of_point(p: &CurvePoint) -> Option<Rat> {
    match &p.u {
        Coord::Inf => Some(rat(-1)),
        Coord::Fin(u) if u.is_zero() => None,
        Coord::Fin(u) => Some(rat(2) / u - Rat::one()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_points_lie_on_curve() {
        for kp in known_points() {
            assert!(contains(&kp.point), "{} not on curve", kp.name);
        }
        assert!(!contains(&CurvePoint::new(Coord::fin(0), Coord::fin(0))));
        assert!(contains(&CurvePoint::new(Coord::Inf, Coord::fin(0))));
    }

    #[test]
    fn table_t_and_c_columns() {
        for kp in known_points() {
            let t = t_of_point(&kp.point);
            match (&kp.t, t) {
                (Coord::Inf, None) => {}
                (Coord::Fin(expect), Some(got)) => assert_eq!(*expect, got, "{} t", kp.name),
                other => panic!("{} t mismatch: {:?}", kp.name, other),
            }
            let c = c_of_point(&kp.point).unwrap();
            match (&kp.c, c) {
                (Coord::Inf, None) => {}
                (Coord::Fin(expect), Some(got)) => assert_eq!(*expect, got, "{} c", kp.name),
                other => panic!("{} c mismatch: {:?}", kp.name, other),
            }
        }
    }

    #[test]
    fn reduction_mod_5_is_surjective_with_one_collision() {
        let pts = points_fp(5);
        assert_eq!(pts.len(), 9);
        let mut images = vec![];
        for kp in known_points() {
            let r = reduce_point(&kp.point, 5).unwrap();
            assert!(contains_fp(&r, 5));
            images.push(r);
        }
        // P9 ≡ P7 = (∞, −1)
        let p7 = images[7].clone();
        let p9 = images[9].clone();
        assert_eq!(p7, p9);
        assert_eq!(p7, ((1, 0), (4, 1)));
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), 9);
    }

    #[test]
    fn counts_small_fields() {
        assert_eq!(count_points(5, 1).unwrap(), 9);
        assert_eq!(count_points(7, 1).unwrap(), 15);
        // brute-force oracle over 𝔽₃
        let brute = points_fp(3).len() as u64;
        assert_eq!(count_points(3, 1).unwrap(), brute);
        assert!(count_points(2, 1).is_err());
    }

    #[test]
    fn expansion_at_p1() {
        // at P₁ = (0,−1): w(u) = −1 − u + O(u²)
        let p1 = CurvePoint::new(Coord::fin(0), Coord::fin(-1));
        let b = local_expansion_q(&p1, 10).unwrap();
        assert_eq!(b.param, BranchParam::U);
        assert_eq!(b.series[0], rat(-1));
        assert_eq!(b.series[1], rat(-1));
        // substitution residual vanishes to order 10
        let g = g_uw();
        let (us, ws) = b.chart_series();
        let r = series::eval_poly_on(&QQ, &g, &us, &ws, 10);
        assert!(r.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn expansion_at_p3_uses_w() {
        // at P₃ = (∞,0), w is a uniformizer
        let p3 = CurvePoint::new(Coord::Inf, Coord::fin(0));
        let b = local_expansion_q(&p3, 8).unwrap();
        assert_eq!(b.param, BranchParam::W);
        // 1/u = w² + O(w³) on the branch
        assert!(b.series[0].is_zero());
        assert!(b.series[1].is_zero());
        assert_eq!(b.series[2], rat(1));
    }
}
