//! Resultants of multivariate polynomials.
//!
//! The general path builds the Sylvester matrix in the elimination variable
//! and runs fraction-free Bareiss elimination with exact polynomial division.
//! A dedicated fast path handles Res_x(f, κ·y − s(x,…)) for a variable y not
//! occurring in f or s: that resultant is κ^deg(f) times the characteristic
//! polynomial of multiplication by s/κ on ℚ(…)[x]/(f), which is computed from
//! power sums (traces) with interpolation in the remaining variable instead
//! of a determinant of size deg f + deg s.

use super::multipoly::{MultiPoly, Var};
use super::unipoly::{
    monic_from_power_sums, power_sums_from_monic, qp_interpolate, zp_trim, QPoly, ZPoly,
};
use super::{rat, Int, Rat};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResultantError {
    VarAbsent,
}

impl std::fmt::Display for ResultantError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResultantError::VarAbsent => write!(f, "variable absent from both inputs"),
        }
    }
}

impl std::error::Error for ResultantError {}

/// Res_var(f, g). Zero iff f and g share a factor of positive degree in var
/// over the fraction field of the remaining variables.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: Var) -> Result<MultiPoly, ResultantError> {
    if !f.uses_var(var) && !g.uses_var(var) {
        return Err(ResultantError::VarAbsent);
    }
    if let Some(r) = charpoly_fast_path(f, g, var) {
        return Ok(r);
    }
    if let Some(r) = charpoly_fast_path(g, f, var).map(|r| {
        // Res(g,f) = (−1)^(deg f · deg g) Res(f,g)
        let m = f.degree(var).max(0) as u32;
        let n = g.degree(var).max(0) as u32;
        if (m * n) % 2 == 1 {
            r.neg()
        } else {
            r
        }
    }) {
        return Ok(r);
    }
    Ok(sylvester_bareiss(f, g, var))
}

/// Degenerate-degree conventions: Res(f, g) with deg_var g = 0 is g^deg(f).
fn sylvester_bareiss(f: &MultiPoly, g: &MultiPoly, var: Var) -> MultiPoly {
    let fc = f.as_univariate(var);
    let gc = g.as_univariate(var);
    let m = fc.len().saturating_sub(1);
    let n = gc.len().saturating_sub(1);
    if fc.is_empty() || gc.is_empty() {
        return MultiPoly::zero();
    }
    if m == 0 {
        return fc[0].pow(n as u32);
    }
    if n == 0 {
        return gc[0].pow(m as u32);
    }
    let size = m + n;
    let mut mat = vec![vec![MultiPoly::zero(); size]; size];
    for row in 0..n {
        for (k, c) in fc.iter().enumerate() {
            mat[row][row + m - k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in gc.iter().enumerate() {
            mat[n + row][row + n - k] = c.clone();
        }
    }
    poly_bareiss_det(mat)
}

fn poly_bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    let mut sign = 1i64;
    let mut prev = MultiPoly::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return MultiPoly::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss step divides exactly");
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// Fast path for Res_x(f, κ·y − s): requires f monic in x with at most one
/// other variable (the interpolation variable), g = κ·y − s(x, interp var)
/// with κ a nonzero constant and y a fresh variable.
fn charpoly_fast_path(f: &MultiPoly, g: &MultiPoly, var: Var) -> Option<MultiPoly> {
    let n = f.degree(var);
    if n < 1 {
        return None;
    }
    // f must be monic in var.
    let fc = f.as_univariate(var);
    if !fc.last().unwrap().is_constant() || fc.last().unwrap().constant_term() != Rat::one() {
        return None;
    }
    // find the fresh linear variable y in g
    let mut fresh: Option<(Var, Rat)> = None;
    for y in Var::ALL {
        if y == var || f.uses_var(y) {
            continue;
        }
        if g.degree(y) == 1 {
            let gy = g.as_univariate(y);
            if gy[1].is_constant() {
                fresh = Some((y, gy[1].constant_term()));
                break;
            }
        }
    }
    let (y, kappa) = fresh?;
    let gy = g.as_univariate(y);
    let s = gy[0].neg(); // g = κ·y − s
    if s.uses_var(y) || s.degree(var) < 1 {
        return None;
    }
    // the interpolation variable: everything in f and s besides var/y
    let mut others: Vec<Var> = Var::ALL
        .iter()
        .copied()
        .filter(|&v| v != var && v != y && (f.uses_var(v) || s.uses_var(v)))
        .collect();
    if others.len() > 1 {
        return None;
    }
    let deg_s = s.degree(var) as usize;
    let n = n as usize;

    let charpoly_at = |fval: &QPoly, sval: &QPoly| -> QPoly {
        // all-integer route when the specialization is integral (the common
        // case: integer sample points, monic integer model)
        if fval.iter().chain(sval.iter()).all(|c| c.denom().is_one()) {
            let fz: ZPoly = fval.iter().map(|c| c.numer().clone()).collect();
            let sz: ZPoly = sval.iter().map(|c| c.numer().clone()).collect();
            let traces = integer_traces(&fz, &sz, n);
            let traces_q: Vec<Rat> = traces.into_iter().map(Rat::from_integer).collect();
            return monic_from_power_sums(&traces_q, n);
        }
        // power sums t_j of roots of fval (monic), j = 0..n−1
        let mut troots = vec![Rat::from_integer(Int::from(n as i64))];
        troots.extend(power_sums_from_monic(fval, n.saturating_sub(1)));
        // iterate s^k mod f, collect traces
        let mut cur: QPoly = vec![Rat::one()];
        let mut traces: Vec<Rat> = Vec::with_capacity(n);
        for _ in 1..=n {
            cur = qp_mulmod_monic(&cur, sval, fval);
            let mut tr = Rat::zero();
            for (j, cj) in cur.iter().enumerate() {
                tr += cj * &troots[j];
            }
            traces.push(tr);
        }
        monic_from_power_sums(&traces, n)
    };

    let result_in_y: Vec<QPoly>;
    let interp_var: Option<Var>;
    if others.is_empty() {
        let fval: QPoly = fc.iter().map(|c| c.constant_term()).collect();
        let sval: QPoly = s
            .as_univariate(var)
            .iter()
            .map(|c| c.constant_term())
            .collect();
        result_in_y = charpoly_at(&fval, &sval)
            .into_iter()
            .map(|c| vec![c])
            .collect();
        interp_var = None;
    } else {
        let iv = others.pop().unwrap();
        interp_var = Some(iv);
        // Rigorous degree bound in iv from Sylvester row degrees; the loop
        // normally stops much earlier, once an interpolant fitted on the
        // current samples correctly predicts four fresh evaluation points.
        let df = f.degree(iv).max(0) as usize;
        let ds = s.degree(iv).max(0) as usize;
        let bound = deg_s * df + n * ds;
        let sample = |k: i64| -> QPoly {
            let c0 = rat(k);
            let fv = f.eval_partial(&[(iv, c0.clone())]);
            let sv = s.eval_partial(&[(iv, c0)]);
            let fval: QPoly = fv
                .as_univariate(var)
                .iter()
                .map(|c| c.constant_term())
                .collect();
            let sval: QPoly = sv
                .as_univariate(var)
                .iter()
                .map(|c| c.constant_term())
                .collect();
            charpoly_at(&fval, &sval)
        };
        let point_seq = |i: usize| -> i64 {
            // 0, 1, −1, 2, −2, …
            let m = (i as i64 + 1) / 2;
            if i % 2 == 1 {
                m
            } else {
                -m
            }
        };
        let mut points: Vec<Rat> = Vec::new();
        let mut values: Vec<QPoly> = Vec::new();
        let mut next = 0usize;
        let grow = |points: &mut Vec<Rat>, values: &mut Vec<QPoly>, n_new: usize, next: &mut usize| {
            use rayon::prelude::*;
            let ks: Vec<i64> = (0..n_new).map(|i| point_seq(*next + i)).collect();
            *next += n_new;
            let vals: Vec<QPoly> = ks.par_iter().map(|&k| sample(k)).collect();
            points.extend(ks.iter().map(|&k| rat(k)));
            values.extend(vals);
        };
        grow(&mut points, &mut values, 8, &mut next);
        let fit = loop {
            let fit = qp_interpolate(&points, &values);
            if points.len() >= bound + 1 {
                break fit;
            }
            let mut probe_pts = Vec::new();
            let mut probe_vals = Vec::new();
            grow(&mut probe_pts, &mut probe_vals, 4, &mut next);
            let ok = probe_pts.iter().zip(&probe_vals).all(|(p, v)| {
                (0..fit.len().max(v.len())).all(|j| {
                    let pred = fit
                        .get(j)
                        .map(|poly| super::unipoly::qp_eval(poly, p))
                        .unwrap_or_else(Rat::zero);
                    let actual = v.get(j).cloned().unwrap_or_else(Rat::zero);
                    pred == actual
                })
            });
            if ok {
                break fit;
            }
            points.extend(probe_pts);
            values.extend(probe_vals);
        };
        result_in_y = fit;
    }

    // assemble: Res = κ^n · Π (y − s(α)/κ) = Σ charpoly-coeffs in y, scaled.
    // charpoly computed is Π (Y − s(α)); substitute Y = κ·y then multiply by
    // κ^(n·0)… directly: Res_x(f, κy − s) = Π (κy − s(αᵢ)) = κ^n Π(y − s/κ).
    let mut out = MultiPoly::zero();
    for (pow_y, coeff_poly) in result_in_y.iter().enumerate() {
        // coefficient of Y^pow_y in Π(Y − s(α)); with Y = κy the term becomes
        // κ^pow_y y^pow_y · coeff.
        let scale = pow_rat(&kappa, pow_y as u32);
        let mut c_mp = if let Some(iv) = interp_var {
            MultiPoly::from_univariate(iv, &coeff_poly.iter().map(|c| MultiPoly::constant(c.clone())).collect::<Vec<_>>())
        } else {
            MultiPoly::constant(coeff_poly.first().cloned().unwrap_or_else(Rat::zero))
        };
        c_mp = c_mp.scale(&scale);
        let ymono = {
            let mut e = [0u16; super::multipoly::NVARS];
            e[y as usize] = pow_y as u16;
            super::multipoly::Mono(e)
        };
        out = out.add(&c_mp.mul_mono(&ymono));
    }
    Some(out)
}

/// Traces of multiplication by s on ℤ[x]/(f), f monic over ℤ: power sums of
/// s at the roots of f, for exponents 1..=n. Integer-only inner loop.
fn integer_traces(f: &ZPoly, s: &ZPoly, n: usize) -> Vec<Int> {
    use num_traits::One as _;
    let deg = f.len() - 1;
    debug_assert!(f.last().unwrap().is_one());
    // power sums of f's roots via Newton (division-free in this direction)
    let a = |i: usize| -> Int {
        if i <= deg {
            f[deg - i].clone()
        } else {
            Int::zero()
        }
    };
    let mut troots: Vec<Int> = vec![Int::from(deg as i64)];
    for m in 1..deg.max(1) {
        let mut acc = Int::zero();
        for i in 1..m {
            acc += a(i) * &troots[m - i];
        }
        acc += Int::from(m as i64) * a(m);
        troots.push(-acc);
    }
    let smod = super::unipoly::zp_rem_monic(s, f);
    let mut cur: ZPoly = vec![Int::one()];
    let mut traces = Vec::with_capacity(n);
    for _ in 1..=n {
        cur = super::unipoly::zp_rem_monic(&super::unipoly::zp_mul(&cur, &smod), f);
        let mut tr = Int::zero();
        for (j, cj) in cur.iter().enumerate() {
            tr += cj * &troots[j];
        }
        traces.push(tr);
    }
    traces
}

fn pow_rat(r: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..n {
        acc *= r;
    }
    acc
}

/// (a·b) mod m for dense ℚ[x] with m monic.
pub fn qp_mulmod_monic(a: &QPoly, b: &QPoly, m: &QPoly) -> QPoly {
    let mut prod = super::unipoly::qp_mul(a, b);
    let dm = m.len() - 1;
    while prod.len() > dm {
        let lead = prod.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = prod.len() + 1 - dm - 1;
        for i in 0..dm {
            let v = &m[i] * &lead;
            prod[shift + i] -= v;
        }
    }
    super::unipoly::qp_trim(&mut prod);
    prod
}

/// Resultant of the w-parts of two bihomogeneous forms on ℙ¹×ℙ¹, returned as
/// the pair (dehomogenized polynomial in X = u₀/u₁, degree deficit), where
/// the full binary form is X-poly · u₁^deficit up to the stated total degree.
/// Inputs are given as polynomials in (u, w); degrees (du, dw) are the
/// bidegrees to homogenize to.
pub fn fiber_resultant_u(
    a: &MultiPoly,
    da: (usize, usize),
    b: &MultiPoly,
    db: (usize, usize),
) -> (ZPoly, usize) {
    // Res over w of the two w-homogenized forms, as a binary form in
    // (u₀ : u₁) of degree da.0*db.1 + db.0*da.1; we compute its affine part
    // by clearing denominators of the rational-coefficient resultant.
    let r = sylvester_bareiss_whom(a, da, b, db);
    let total = da.0 * db.1 + db.0 * da.1;
    let mut z: ZPoly = Vec::new();
    let mut den = Int::one();
    for c in &r {
        den = num_integer::lcm(den, c.denom().clone());
    }
    for c in &r {
        z.push(c.numer() * (&den / c.denom()));
    }
    zp_trim(&mut z);
    (z, total)
}

fn sylvester_bareiss_whom(
    a: &MultiPoly,
    da: (usize, usize),
    b: &MultiPoly,
    db: (usize, usize),
) -> QPoly {
    // Build Sylvester matrix in w of the w-homogenizations: row entries are
    // polynomials in u only (degrees ≤ da.0 resp. db.0); the determinant is a
    // polynomial in u of degree ≤ da.0*db.1 + db.0*da.1.
    let ac = pad(a.as_univariate(Var::W), da.1 + 1);
    let bc = pad(b.as_univariate(Var::W), db.1 + 1);
    let m = da.1;
    let n = db.1;
    let size = m + n;
    let mut mat = vec![vec![MultiPoly::zero(); size]; size];
    for row in 0..n {
        for (k, c) in ac.iter().enumerate() {
            mat[row][row + m - k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in bc.iter().enumerate() {
            mat[n + row][row + n - k] = c.clone();
        }
    }
    let det = poly_bareiss_det(mat);
    let coeffs = det.as_univariate(Var::U);
    coeffs.iter().map(|c| c.constant_term()).collect()
}

fn pad(mut v: Vec<MultiPoly>, len: usize) -> Vec<MultiPoly> {
    while v.len() < len {
        v.push(MultiPoly::zero());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::multipoly::{MultiPoly, Var};

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }

    #[test]
    fn trivial_examples() {
        // (x²−1, x−2, x) → 3
        let f = x().pow(2).sub(&MultiPoly::one());
        let g = x().sub(&MultiPoly::from_i64(2));
        assert_eq!(resultant(&f, &g, Var::X).unwrap(), MultiPoly::from_i64(3));
        // (x²+1, x²+1, x) → 0
        let h = x().pow(2).add(&MultiPoly::one());
        assert!(resultant(&h, &h, Var::X).unwrap().is_zero());
        // var absent from both
        assert!(resultant(&MultiPoly::one(), &MultiPoly::one(), Var::X).is_err());
    }

    #[test]
    fn fast_path_matches_sylvester() {
        // f = x³ − 2x + c (monic in x), g = t − (x² + c x)
        let c = MultiPoly::var(Var::C);
        let t = MultiPoly::var(Var::T);
        let f = x()
            .pow(3)
            .sub(&x().scale(&crate::arith::rat(2)))
            .add(&c);
        let s = x().pow(2).add(&c.mul(&x()));
        let g = t.sub(&s);
        let fast = charpoly_fast_path(&f, &g, Var::X).expect("fast path applies");
        let slow = sylvester_bareiss(&f, &g, Var::X);
        assert_eq!(fast, slow);
    }

    #[test]
    fn bivariate_resultant_vanishes_iff_common_factor() {
        // f = (x−c)(x+1), g = (x−c)(x+2): share x−c
        let c = MultiPoly::var(Var::C);
        let f = x().sub(&c).mul(&x().add(&MultiPoly::one()));
        let g = x().sub(&c).mul(&x().add(&MultiPoly::from_i64(2)));
        assert!(resultant(&f, &g, Var::X).unwrap().is_zero());
        let g2 = x().add(&MultiPoly::from_i64(2));
        let r = resultant(&f, &g2, Var::X).unwrap();
        // res = f(−2) = (−2−c)(−1) = c + 2
        assert_eq!(r, c.add(&MultiPoly::from_i64(2)));
    }
}
