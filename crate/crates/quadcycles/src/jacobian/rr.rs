//! Riemann–Roch spaces by bidegree-(a,b) form interpolation: L(D) is realized
//! as {A/B} where B is a product of fiber forms with fully known intersection
//! cycle covering D₊, and A runs over the forms of the same bidegree subject
//! to vanishing conditions along div(B) − D, imposed via branch expansions at
//! each closed point. Dimensions are exact: the conditions encode div(A) ≥
//! div(B) − D precisely, and multiples of the curve equation are quotiented
//! out of the solution space.

use super::point::{proj_eq, proj_fin, proj_inf, ClosedPoint, Divisor, ProjEl};
use crate::arith::{Int, MultiPoly, Rat, Var};
use crate::curve::{local_expansion, Branch};
use crate::dynatomic::g_uw;
use crate::field::{Ext, Field, Fp, QQ};
use crate::series;
use num_traits::{One, Zero};

/// Base fields the divisor machinery runs over.
pub trait BaseField: Field {
    /// (field size, characteristic) for finite fields; None over ℚ.
    fn finite_data(&self) -> Option<(u64, u64)>;
    /// Monic factorization of a polynomial of degree ≤ 3 over the base.
    fn factor_low_degree(&self, poly: &[Self::El]) -> Vec<(Vec<Self::El>, usize)>;
}

impl BaseField for Fp {
    fn finite_data(&self) -> Option<(u64, u64)> {
        Some((self.p, self.p))
    }
    fn factor_low_degree(&self, poly: &[Self::El]) -> Vec<(Vec<Self::El>, usize)> {
        super::point::factor_monic_finite(self, poly, self.p, self.p)
    }
}

impl BaseField for QQ {
    fn finite_data(&self) -> Option<(u64, u64)> {
        None
    }
    fn factor_low_degree(&self, poly: &[Self::El]) -> Vec<(Vec<Self::El>, usize)> {
        factor_cubic_rational(poly)
    }
}

/// Factorization of a monic rational polynomial of degree ≤ 3 into monic
/// irreducibles: rational-root extraction, then the leftover of degree ≥ 2
/// is irreducible (a quadratic or cubic with no rational root).
fn factor_cubic_rational(poly: &[Rat]) -> Vec<(Vec<Rat>, usize)> {
    let f = QQ;
    let mut rest = crate::field::poly_monic(&f, poly);
    assert!(rest.len() <= 4, "rational factorization only for degree ≤ 3");
    let mut roots: Vec<Rat> = vec![];
    'outer: while rest.len() >= 2 {
        if rest.len() == 2 {
            roots.push(-rest[0].clone());
            rest = vec![Rat::one()];
            break;
        }
        // rational roots of the integer model: p/q, p | constant, q | leading
        let mut den = Int::one();
        for c in &rest {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let z: Vec<Int> = rest.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        if z[0].is_zero() {
            roots.push(Rat::zero());
            rest = crate::field::poly_divrem(&f, &rest, &[Rat::zero(), Rat::one()]).0;
            continue;
        }
        let dividers = |n: &Int| -> Vec<Int> {
            let fac = crate::arith::primes::factor(n, 100_000);
            let mut divs = vec![Int::one()];
            for (p, e) in fac.factors {
                let mut next = vec![];
                for d in &divs {
                    let mut pe = Int::one();
                    for _ in 0..=e {
                        next.push(d * &pe);
                        pe *= &p;
                    }
                }
                divs = next;
                assert!(divs.len() < 100_000, "divisor explosion");
            }
            assert!(fac.unresolved.is_none(), "unfactorable coefficient");
            divs
        };
        for p in dividers(&z[0]) {
            for q in dividers(z.last().unwrap()) {
                for sign in [1i64, -1] {
                    let cand = Rat::new(&p * Int::from(sign), q.clone());
                    if crate::field::poly_eval(&f, &rest, &cand).is_zero() {
                        rest = crate::field::poly_divrem(
                            &f,
                            &rest,
                            &[-cand.clone(), Rat::one()],
                        )
                        .0;
                        roots.push(cand);
                        continue 'outer;
                    }
                }
            }
        }
        break; // no rational roots: leftover is irreducible
    }
    let mut out: Vec<(Vec<Rat>, usize)> = vec![];
    for r in roots {
        let lin = vec![-r, Rat::one()];
        if let Some(e) = out.iter_mut().find(|(g, _)| *g == lin) {
            e.1 += 1;
        } else {
            out.push((lin, 1));
        }
    }
    if rest.len() >= 3 {
        out.push((rest, 1));
    }
    out
}

/// Building blocks for auxiliary denominators: single fiber forms.
#[derive(Debug, Clone)]
pub enum Atom<F: Field> {
    /// fiber u = (a : b): the (1,0)-form b·u₀ − a·u₁
    FiberU(ProjEl<F>),
    /// fiber w = (a : b): the (0,1)-form b·w₀ − a·w₁
    FiberW(ProjEl<F>),
    /// all fibers over the roots of a monic irreducible m(u), deg ≥ 2:
    /// the (deg, 0)-form obtained by homogenizing m
    FiberMu(Vec<F::El>),
}

impl<F: Field> Atom<F> {
    pub fn bidegree(&self) -> (usize, usize) {
        match self {
            Atom::FiberU(_) => (1, 0),
            Atom::FiberW(_) => (0, 1),
            Atom::FiberMu(m) => (m.len() - 1, 0),
        }
    }
}

/// A bihomogeneous form of bidegree (a, b): coefficient of u₀^i u₁^(a−i)
/// w₀^j w₁^(b−j) at index i·(b+1) + j.
#[derive(Debug, Clone)]
pub struct Form<F: Field> {
    pub a: usize,
    pub b: usize,
    pub coeffs: Vec<F::El>,
}

impl<F: Field> Form<F> {
    pub fn one(f: &F) -> Self {
        Form {
            a: 0,
            b: 0,
            coeffs: vec![f.one()],
        }
    }

    pub fn atom(f: &F, atom: &Atom<F>) -> Self {
        match atom {
            Atom::FiberU((a0, a1)) => Form {
                a: 1,
                b: 0,
                // b·u₀ − a·u₁: index i·1+0 with b = 0: coeffs[u₁] at i=0, u₀ at i=1
                coeffs: vec![f.neg(a0), a1.clone()],
            },
            Atom::FiberW((a0, a1)) => Form {
                a: 0,
                b: 1,
                coeffs: vec![f.neg(a0), a1.clone()],
            },
            Atom::FiberMu(m) => {
                let e = m.len() - 1;
                // homogenize: Σ m_i u₀^i u₁^(e−i)
                Form {
                    a: e,
                    b: 0,
                    coeffs: m.clone(),
                }
            }
        }
    }

    pub fn mul(&self, other: &Form<F>, f: &F) -> Form<F> {
        let (a, b) = (self.a + other.a, self.b + other.b);
        let mut coeffs = vec![f.zero(); (a + 1) * (b + 1)];
        for i1 in 0..=self.a {
            for j1 in 0..=self.b {
                let c1 = &self.coeffs[i1 * (self.b + 1) + j1];
                if f.is_zero(c1) {
                    continue;
                }
                for i2 in 0..=other.a {
                    for j2 in 0..=other.b {
                        let c2 = &other.coeffs[i2 * (other.b + 1) + j2];
                        if f.is_zero(c2) {
                            continue;
                        }
                        let idx = (i1 + i2) * (b + 1) + (j1 + j2);
                        let t = f.mul(c1, c2);
                        coeffs[idx] = f.add(&coeffs[idx], &t);
                    }
                }
            }
        }
        Form { a, b, coeffs }
    }

    /// Dehomogenize into a chart as a MultiPoly in (U, W) with coefficients
    /// pushed through `lift` into ℚ — only usable when F = ℚ. For generic
    /// fields use `chart_series_eval`.
    pub fn as_multipoly_q(&self) -> MultiPoly
    where
        F: Field<El = Rat>,
    {
        let mut p = MultiPoly::zero();
        for i in 0..=self.a {
            for j in 0..=self.b {
                let c = &self.coeffs[i * (self.b + 1) + j];
                if c.is_zero() {
                    continue;
                }
                let mut e = [0u16; 6];
                e[Var::U as usize] = i as u16;
                e[Var::W as usize] = j as u16;
                p = p.add(&MultiPoly::monomial(crate::arith::Mono(e), c.clone()));
            }
        }
        p
    }
}

/// The divisor cut on C by a single fiber atom.
pub fn atom_divisor<F: BaseField>(f: &F, atom: &Atom<F>) -> Divisor<F> {
    match atom {
        Atom::FiberU(u) => fiber_divisor_u(f, u),
        Atom::FiberW(w) => fiber_divisor_w(f, w),
        Atom::FiberMu(m) => fiber_divisor_mu(f, m),
    }
}

/// w-coefficients of G as u-polynomials, plus the u = ∞ fiber (w-cubic).
fn g_fiber_data_u() -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let g = g_uw();
    let wc = g.as_univariate(Var::W);
    let mut by_w = vec![];
    for c in &wc {
        let uc = c.as_univariate(Var::U);
        let mut v: Vec<Rat> = uc.iter().map(|q| q.constant_term()).collect();
        v.resize(4, Rat::zero());
        by_w.push(v);
    }
    while by_w.len() < 4 {
        by_w.push(vec![Rat::zero(); 4]);
    }
    let inf: Vec<Rat> = by_w.iter().map(|v| v[3].clone()).collect();
    (by_w, inf)
}

fn g_fiber_data_w() -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let g = g_uw();
    let uc = g.as_univariate(Var::U);
    let mut by_u = vec![];
    for c in &uc {
        let wcs = c.as_univariate(Var::W);
        let mut v: Vec<Rat> = wcs.iter().map(|q| q.constant_term()).collect();
        v.resize(4, Rat::zero());
        by_u.push(v);
    }
    while by_u.len() < 4 {
        by_u.push(vec![Rat::zero(); 4]);
    }
    let inf: Vec<Rat> = by_u.iter().map(|v| v[3].clone()).collect();
    (by_u, inf)
}

fn fiber_divisor_u<F: BaseField>(f: &F, u: &ProjEl<F>) -> Divisor<F> {
    let (by_w, inf) = g_fiber_data_u();
    // fiber cubic in w
    let cubic: Vec<F::El> = if f.is_zero(&u.1) {
        inf.iter().map(|c| f.from_rat(c).unwrap()).collect()
    } else {
        let x = f.div(&u.0, &u.1);
        by_w
            .iter()
            .map(|v| {
                let mut acc = f.zero();
                for c in v.iter().rev() {
                    let k = f.from_rat(c).unwrap();
                    acc = f.add(&f.mul(&acc, &x), &k);
                }
                acc
            })
            .collect()
    };
    let trimmed = crate::field::poly_trim(f, cubic);
    let u_norm = if f.is_zero(&u.1) {
        proj_inf(f)
    } else {
        proj_fin(f, f.div(&u.0, &u.1))
    };
    let mut entries: Vec<(ClosedPoint<F>, i64)> = vec![];
    let inf_mult = 3 - (trimmed.len() as i64 - 1);
    if inf_mult > 0 {
        entries.push((
            ClosedPoint::Rational {
                u: u_norm.clone(),
                w: proj_inf(f),
            },
            inf_mult,
        ));
    }
    if trimmed.len() >= 2 {
        for (fac, m) in f.factor_low_degree(&trimmed) {
            if fac.len() == 2 {
                let w0 = f.neg(&fac[0]);
                entries.push((
                    ClosedPoint::Rational {
                        u: u_norm.clone(),
                        w: proj_fin(f, w0),
                    },
                    m as i64,
                ));
            } else {
                entries.push((
                    ClosedPoint::AlgW {
                        u: u_norm.clone(),
                        h_w: fac,
                    },
                    m as i64,
                ));
            }
        }
    }
    let mut d = Divisor::of(entries);
    d.normalize(f);
    debug_assert_eq!(d.degree(), 3);
    d
}

fn fiber_divisor_w<F: BaseField>(f: &F, w: &ProjEl<F>) -> Divisor<F> {
    let (by_u, inf) = g_fiber_data_w();
    let cubic: Vec<F::El> = if f.is_zero(&w.1) {
        inf.iter().map(|c| f.from_rat(c).unwrap()).collect()
    } else {
        let x = f.div(&w.0, &w.1);
        by_u
            .iter()
            .map(|v| {
                let mut acc = f.zero();
                for c in v.iter().rev() {
                    let k = f.from_rat(c).unwrap();
                    acc = f.add(&f.mul(&acc, &x), &k);
                }
                acc
            })
            .collect()
    };
    let trimmed = crate::field::poly_trim(f, cubic);
    let w_norm = if f.is_zero(&w.1) {
        proj_inf(f)
    } else {
        proj_fin(f, f.div(&w.0, &w.1))
    };
    let mut entries: Vec<(ClosedPoint<F>, i64)> = vec![];
    let inf_mult = 3 - (trimmed.len() as i64 - 1);
    if inf_mult > 0 {
        entries.push((
            ClosedPoint::Rational {
                u: proj_inf(f),
                w: w_norm.clone(),
            },
            inf_mult,
        ));
    }
    if trimmed.len() >= 2 {
        for (fac, m) in f.factor_low_degree(&trimmed) {
            if fac.len() == 2 {
                let u0 = f.neg(&fac[0]);
                entries.push((
                    ClosedPoint::Rational {
                        u: proj_fin(f, u0),
                        w: w_norm.clone(),
                    },
                    m as i64,
                ));
            } else {
                // u algebraic, w rational: store as AlgU with linear h_w
                let k = Ext::new(f.clone(), fac.clone());
                let wk = k.embed(&f.div(&w_norm.0, &w_norm.1));
                entries.push((
                    ClosedPoint::AlgU {
                        m_u: fac,
                        h_w: vec![k.neg(&wk), k.one()],
                    },
                    m as i64,
                ));
            }
        }
    }
    let mut d = Divisor::of(entries);
    d.normalize(f);
    debug_assert_eq!(d.degree(), 3);
    d
}

fn fiber_divisor_mu<F: BaseField>(f: &F, m_u: &[F::El]) -> Divisor<F> {
    let (q, p) = f
        .finite_data()
        .expect("algebraic-u fibers are only needed over finite fields");
    let e = m_u.len() - 1;
    let k = Ext::new(f.clone(), m_u.to_vec());
    let ubar = k.gen();
    let (by_w, _) = g_fiber_data_u();
    let cubic: Vec<Vec<F::El>> = by_w
        .iter()
        .map(|v| {
            let mut acc = k.zero();
            for c in v.iter().rev() {
                let kc = k.from_rat(c).unwrap();
                acc = k.add(&k.mul(&acc, &ubar), &kc);
            }
            acc
        })
        .collect();
    let trimmed = crate::field::poly_trim(&k, cubic);
    assert_eq!(trimmed.len(), 4, "algebraic-u fiber must stay cubic");
    let qe = q.pow(e as u32);
    let mut entries: Vec<(ClosedPoint<F>, i64)> = vec![];
    for (fac, m) in super::point::factor_monic_finite(&k, &trimmed, qe, p) {
        entries.push((
            ClosedPoint::AlgU {
                m_u: m_u.to_vec(),
                h_w: fac,
            },
            m as i64,
        ));
    }
    let mut d = Divisor::of(entries);
    d.normalize(f);
    debug_assert_eq!(d.degree(), 3 * e as i64);
    d
}

/// Auxiliary denominator: atoms covering the positive part of D, padded out
/// of the (a ≤ 1, b ≥ 3)/(a ≥ 3, b ≤ 1) region where (a,b)-forms do not
/// surject onto sections on the curve.
pub fn coverage<F: BaseField>(f: &F, d_pos: &Divisor<F>) -> Vec<Atom<F>> {
    let mut atoms: Vec<Atom<F>> = vec![];
    for (p, m) in &d_pos.entries {
        assert!(*m > 0);
        let atom = match p {
            ClosedPoint::Rational { u, .. } => Atom::FiberU(u.clone()),
            ClosedPoint::AlgW { u, .. } => Atom::FiberU(u.clone()),
            ClosedPoint::AlgU { m_u, .. } => Atom::FiberMu(m_u.clone()),
        };
        // one fiber copy per multiplicity unit always covers
        for _ in 0..*m {
            atoms.push(atom.clone());
        }
    }
    loop {
        let (a, b) = atoms
            .iter()
            .fold((0, 0), |acc, at| {
                let d = at.bidegree();
                (acc.0 + d.0, acc.1 + d.1)
            });
        if a >= 3 && b <= 1 {
            atoms.push(Atom::FiberW(proj_inf(f)));
        } else if b >= 3 && a <= 1 {
            atoms.push(Atom::FiberU(proj_inf(f)));
        } else {
            break;
        }
    }
    atoms
}

/// Solution of an L(D) computation.
pub struct RrSolution<F: Field> {
    pub atoms: Vec<Atom<F>>,
    pub b_form: Form<F>,
    pub b_divisor: Divisor<F>,
    /// conditions divisor div(B) − D (effective)
    pub z: Divisor<F>,
    /// numerator basis, reduced modulo multiples of the curve equation
    pub basis: Vec<Form<F>>,
}

impl<F: Field> RrSolution<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Compute L(D) = {A/B}.
pub fn rr_space<F: BaseField>(f: &F, d: &Divisor<F>) -> RrSolution<F> {
    let d_pos = d.positive_part(f);
    let atoms = coverage(f, &d_pos);
    rr_space_with_atoms(f, d, atoms)
}

pub fn rr_space_with_atoms<F: BaseField>(
    f: &F,
    d: &Divisor<F>,
    atoms: Vec<Atom<F>>,
) -> RrSolution<F> {
    let mut b_form = Form::one(f);
    let mut b_divisor = Divisor::zero();
    for at in &atoms {
        b_form = b_form.mul(&Form::atom(f, at), f);
        b_divisor = b_divisor.add(&atom_divisor(f, at), f);
    }
    let z = b_divisor.add(&d.neg(), f);
    assert!(
        z.is_effective(),
        "auxiliary form fails to cover the divisor"
    );
    let (a, b) = (b_form.a, b_form.b);
    let ncols = (a + 1) * (b + 1);
    let mut rows: Vec<Vec<F::El>> = vec![];
    for (pt, m) in &z.entries {
        rows.extend(conditions_at(f, pt, *m as usize, a, b));
    }
    let null = crate::field::nullspace(f, &rows, ncols);
    // quotient by multiples of the curve equation
    let g_mults = g_multiples(f, a, b);
    let mut reducer: Vec<Vec<F::El>> = g_mults.clone();
    let piv = crate::field::rref(f, &mut reducer);
    let reduce = |v: &[F::El]| -> Vec<F::El> {
        let mut v = v.to_vec();
        for (ri, &pc) in piv.iter().enumerate() {
            if !f.is_zero(&v[pc]) {
                let factor = v[pc].clone();
                for j in 0..ncols {
                    let t = f.mul(&factor, &reducer[ri][j]);
                    v[j] = f.sub(&v[j], &t);
                }
            }
        }
        v
    };
    let mut basis_vecs: Vec<Vec<F::El>> = vec![];
    for v in &null {
        let r = reduce(v);
        if r.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        // keep independent ones
        let mut stack = basis_vecs.clone();
        stack.push(r.clone());
        let mut m = stack.clone();
        let rank = crate::field::rref(f, &mut m).len();
        if rank == stack.len() {
            basis_vecs.push(r);
        }
    }
    let basis = basis_vecs
        .into_iter()
        .map(|coeffs| Form { a, b, coeffs })
        .collect();
    RrSolution {
        atoms,
        b_form,
        b_divisor,
        z,
        basis,
    }
}

/// Coefficient vectors of G̃·(a−3, b−3)-forms inside the (a,b) form space.
fn g_multiples<F: Field>(f: &F, a: usize, b: usize) -> Vec<Vec<F::El>> {
    if a < 3 || b < 3 {
        return vec![];
    }
    let g = g_uw();
    let mut gform = Form {
        a: 3,
        b: 3,
        coeffs: vec![f.zero(); 16],
    };
    for (mono, c) in g.terms() {
        let (i, j) = (mono.exp(Var::U) as usize, mono.exp(Var::W) as usize);
        gform.coeffs[i * 4 + j] = f.from_rat(c).unwrap();
    }
    let mut out = vec![];
    for i in 0..=(a - 3) {
        for j in 0..=(b - 3) {
            let mut mono = Form {
                a: a - 3,
                b: b - 3,
                coeffs: vec![f.zero(); (a - 2) * (b - 2)],
            };
            mono.coeffs[i * (b - 2) + j] = f.one();
            out.push(gform.mul(&mono, f).coeffs);
        }
    }
    out
}

/// Vanishing conditions of order m at a closed point, as rows over F on the
/// (a+1)(b+1) form coefficients.
fn conditions_at<F: BaseField>(
    f: &F,
    pt: &ClosedPoint<F>,
    m: usize,
    a: usize,
    b: usize,
) -> Vec<Vec<F::El>> {
    match pt {
        ClosedPoint::Rational { u, w } => {
            let branch = local_expansion(f, u.clone(), w.clone(), m + 2)
                .expect("smooth rational point");
            monomial_rows(f, &branch, m, a, b, |coef: &F::El| vec![coef.clone()])
        }
        ClosedPoint::AlgW { u, h_w } => {
            let k = Ext::new(f.clone(), h_w.clone());
            let uk = (k.embed(&u.0), k.embed(&u.1));
            let wk = (k.gen(), k.one());
            let branch =
                local_expansion(&k, uk, wk, m + 2).expect("smooth algebraic point");
            monomial_rows(&k, &branch, m, a, b, |coef: &Vec<F::El>| coef.clone())
                .into_iter()
                .collect()
        }
        ClosedPoint::AlgU { m_u, h_w } => {
            let k1 = Ext::new(f.clone(), m_u.clone());
            if h_w.len() == 2 {
                let w0 = k1.neg(&h_w[0]);
                let uk = (k1.gen(), k1.one());
                let wk = (w0, k1.one());
                let branch =
                    local_expansion(&k1, uk, wk, m + 2).expect("smooth algebraic point");
                monomial_rows(&k1, &branch, m, a, b, |coef: &Vec<F::El>| coef.clone())
            } else {
                let k2 = Ext::new(k1.clone(), h_w.clone());
                let uk = (k2.embed(&k1.gen()), k2.one());
                let wk = (k2.gen(), k2.one());
                let branch =
                    local_expansion(&k2, uk, wk, m + 2).expect("smooth algebraic point");
                monomial_rows(&k2, &branch, m, a, b, |coef: &Vec<Vec<F::El>>| {
                    coef.iter().flat_map(|v| v.iter().cloned()).collect()
                })
            }
        }
    }
}

/// Rows from the first m series coefficients of every form monomial composed
/// with the branch; `flatten` maps a residue-field element to its fixed-width
/// base-field coordinate vector.
fn monomial_rows<F, K, FL>(
    k: &K,
    branch: &Branch<K>,
    m: usize,
    a: usize,
    b: usize,
    flatten: FL,
) -> Vec<Vec<F>>
where
    F: Clone,
    K: Field,
    FL: Fn(&K::El) -> Vec<F>,
{
    let (us, ws) = branch.chart_series();
    let prec = m.max(1);
    let width = flatten(&k.zero()).len();
    // powers of the chart series
    let mut upow: Vec<Vec<K::El>> = vec![vec![k.one()]];
    for i in 1..=a {
        upow.push(series::mul(k, &upow[i - 1], &us, prec));
    }
    let mut wpow: Vec<Vec<K::El>> = vec![vec![k.one()]];
    for j in 1..=b {
        wpow.push(series::mul(k, &wpow[j - 1], &ws, prec));
    }
    let ncols = (a + 1) * (b + 1);
    let mut rows: Vec<Vec<Vec<F>>> = vec![vec![flatten(&k.zero()); ncols]; m];
    for i in 0..=a {
        for j in 0..=b {
            // dehomogenized exponents in this chart
            let ie = if branch.chart.0 { a - i } else { i };
            let je = if branch.chart.1 { b - j } else { j };
            let s = series::mul(k, &upow[ie], &wpow[je], prec);
            for r in 0..m {
                let c = s.get(r).cloned().unwrap_or_else(|| k.zero());
                let v = flatten(&c);
                debug_assert_eq!(v.len(), width);
                rows[r][i * (b + 1) + j] = v;
            }
        }
    }
    let mut out = vec![];
    for r in rows {
        for t in 0..width {
            let mut row = Vec::with_capacity(ncols);
            for c in &r {
                row.push(c[t].clone());
            }
            out.push(row);
        }
    }
    out
}

/// Vanishing order of a form at a closed point (doubling precision until the
/// order resolves).
pub fn form_order_at<F: BaseField>(
    f: &F,
    form: &Form<F>,
    pt: &ClosedPoint<F>,
    hint: usize,
) -> usize {
    let mut prec = hint + 4;
    loop {
        let v = form_order_try(f, form, pt, prec);
        if let Some(o) = v {
            return o;
        }
        prec *= 2;
        assert!(prec < 4096, "form appears to vanish along the whole branch");
    }
}

fn form_order_try<F: BaseField>(
    f: &F,
    form: &Form<F>,
    pt: &ClosedPoint<F>,
    prec: usize,
) -> Option<usize> {
    match pt {
        ClosedPoint::Rational { u, w } => {
            let branch = local_expansion(f, u.clone(), w.clone(), prec).unwrap();
            form_series_valuation(f, form, &branch, prec)
        }
        ClosedPoint::AlgW { u, h_w } => {
            let k = Ext::new(f.clone(), h_w.clone());
            let uk = (k.embed(&u.0), k.embed(&u.1));
            let wk = (k.gen(), k.one());
            let branch = local_expansion(&k, uk, wk, prec).unwrap();
            form_series_valuation_k(f, &k, form, &branch, prec)
        }
        ClosedPoint::AlgU { m_u, h_w } => {
            let k1 = Ext::new(f.clone(), m_u.clone());
            if h_w.len() == 2 {
                let w0 = k1.neg(&h_w[0]);
                let branch =
                    local_expansion(&k1, (k1.gen(), k1.one()), (w0, k1.one()), prec).unwrap();
                form_series_valuation_k(f, &k1, form, &branch, prec)
            } else {
                let k2 = Ext::new(k1.clone(), h_w.clone());
                let branch = local_expansion(
                    &k2,
                    (k2.embed(&k1.gen()), k2.one()),
                    (k2.gen(), k2.one()),
                    prec,
                )
                .unwrap();
                form_series_valuation_k2(f, &k1, &k2, form, &branch, prec)
            }
        }
    }
}

fn compose_form_on_branch<K: Field>(
    k: &K,
    coeffs: &[K::El],
    a: usize,
    b: usize,
    branch: &Branch<K>,
    prec: usize,
) -> Vec<K::El> {
    let (us, ws) = branch.chart_series();
    let mut acc = vec![k.zero(); prec];
    let mut upow: Vec<Vec<K::El>> = vec![vec![k.one()]];
    for i in 1..=a {
        upow.push(series::mul(k, &upow[i - 1], &us, prec));
    }
    let mut wpow: Vec<Vec<K::El>> = vec![vec![k.one()]];
    for j in 1..=b {
        wpow.push(series::mul(k, &wpow[j - 1], &ws, prec));
    }
    for i in 0..=a {
        for j in 0..=b {
            let c = &coeffs[i * (b + 1) + j];
            if k.is_zero(c) {
                continue;
            }
            let ie = if branch.chart.0 { a - i } else { i };
            let je = if branch.chart.1 { b - j } else { j };
            let s = series::mul(k, &upow[ie], &wpow[je], prec);
            let scaled = series::scale(k, &s, c);
            acc = series::add(k, &acc, &scaled, prec);
        }
    }
    acc
}

fn form_series_valuation<F: BaseField>(
    f: &F,
    form: &Form<F>,
    branch: &Branch<F>,
    prec: usize,
) -> Option<usize> {
    let s = compose_form_on_branch(f, &form.coeffs, form.a, form.b, branch, prec);
    series::valuation(f, &s)
}

fn form_series_valuation_k<F: BaseField>(
    _f: &F,
    k: &Ext<F>,
    form: &Form<F>,
    branch: &Branch<Ext<F>>,
    prec: usize,
) -> Option<usize> {
    let coeffs: Vec<Vec<F::El>> = form.coeffs.iter().map(|c| k.embed(c)).collect();
    let s = compose_form_on_branch(k, &coeffs, form.a, form.b, branch, prec);
    series::valuation(k, &s)
}

fn form_series_valuation_k2<F: BaseField>(
    f: &F,
    k1: &Ext<F>,
    k2: &Ext<Ext<F>>,
    form: &Form<F>,
    branch: &Branch<Ext<Ext<F>>>,
    prec: usize,
) -> Option<usize> {
    let _ = f;
    let coeffs: Vec<Vec<Vec<F::El>>> = form
        .coeffs
        .iter()
        .map(|c| k2.embed(&k1.embed(c)))
        .collect();
    let s = compose_form_on_branch(k2, &coeffs, form.a, form.b, branch, prec);
    series::valuation(k2, &s)
}

/// Certify div(A) = `claimed` exactly: verify the vanishing order at every
/// claimed point and exhaust the degree 3a + 3b.
pub fn certify_form_divisor<F: BaseField>(
    f: &F,
    form: &Form<F>,
    claimed: &Divisor<F>,
) -> bool {
    if !claimed.is_effective() {
        return false;
    }
    if claimed.degree() != 3 * (form.a as i64 + form.b as i64) {
        return false;
    }
    for (pt, m) in &claimed.entries {
        let o = form_order_at(f, form, pt, *m as usize);
        if o != *m as usize {
            return false;
        }
    }
    true
}

/// Outcome of a principality test. On success the function with divisor
/// exactly D is B/A: the solver's numerator A satisfies div(A) = div(B) − D,
/// certified point by point with the degree exhausted.
pub enum Principality<F: Field> {
    Principal {
        numerator: Form<F>,
        atoms: Vec<Atom<F>>,
        /// certified div(A) = div(B) − D
        div_a: Divisor<F>,
    },
    /// dim L(D) = 0 witness
    NotPrincipal,
}

/// Decide whether a degree-0 divisor is principal, with an order-certified
/// function witness on success.
pub fn is_principal<F: BaseField>(f: &F, d: &Divisor<F>) -> Principality<F> {
    assert_eq!(d.degree(), 0, "principality needs degree 0");
    let sol = rr_space(f, d);
    if sol.dim() == 0 {
        return Principality::NotPrincipal;
    }
    assert_eq!(sol.dim(), 1, "degree-0 divisor with dim L > 1");
    let a = sol.basis[0].clone();
    // div(A) ≥ Z with deg equality forces div(A) = Z = div(B) − D
    let claimed = sol.z.clone();
    assert!(
        certify_form_divisor(f, &a, &claimed),
        "order certification failed for a principality witness"
    );
    Principality::Principal {
        numerator: a,
        atoms: sol.atoms,
        div_a: claimed,
    }
}

/// dim L(D) for arbitrary D (no certification).
pub fn dim_l<F: BaseField>(f: &F, d: &Divisor<F>) -> usize {
    rr_space(f, d).dim()
}

pub fn proj_from_coord<F: Field>(f: &F, c: &crate::curve::Coord) -> ProjEl<F> {
    match c {
        crate::curve::Coord::Inf => proj_inf(f),
        crate::curve::Coord::Fin(r) => {
            let num = f.from_int(r.numer());
            let den = f.from_int(r.denom());
            proj_norm_pair(f, num, den)
        }
    }
}

fn proj_norm_pair<F: Field>(f: &F, a: F::El, b: F::El) -> ProjEl<F> {
    if f.is_zero(&b) {
        proj_inf(f)
    } else {
        proj_fin(f, f.div(&a, &b))
    }
}

/// The known point Pᵢ as a closed point over F (requires good reduction).
pub fn known_point_over<F: Field>(f: &F, idx: usize) -> ClosedPoint<F> {
    let kp = &crate::curve::known_points()[idx];
    ClosedPoint::Rational {
        u: proj_from_coord(f, &kp.point.u),
        w: proj_from_coord(f, &kp.point.w),
    }
}

pub fn points_equal<F: Field>(f: &F, a: &ClosedPoint<F>, b: &ClosedPoint<F>) -> bool {
    match (a, b) {
        (ClosedPoint::Rational { u: u1, w: w1 }, ClosedPoint::Rational { u: u2, w: w2 }) => {
            proj_eq(f, u1, u2) && proj_eq(f, w1, w2)
        }
        _ => a.render(f) == b.render(f),
    }
}
