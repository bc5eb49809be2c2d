//! Integer lattices: Hermite and Smith normal forms, kernels, intersections,
//! membership solving, and exact-rational LLL reduction.
//!
//! Dimensions in this crate stay ≤ 10-ish, so everything is done with exact
//! arithmetic: rational Gram–Schmidt for LLL, naive HNF/SNF with pivoting.

use super::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-generated integer lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    pub basis: Vec<Vec<Int>>,
}

impl IntLattice {
    pub fn new(basis: Vec<Vec<Int>>) -> Self {
        assert!(!basis.is_empty());
        let n = basis[0].len();
        assert!(basis.iter().all(|r| r.len() == n), "ragged basis");
        IntLattice { basis }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        hnf(&self.basis).len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis[0].len()
    }

    /// Canonical Hermite normal form (zero rows dropped).
    pub fn hnf(&self) -> Vec<Vec<Int>> {
        hnf(&self.basis)
    }

    pub fn same_lattice(&self, other: &IntLattice) -> bool {
        self.hnf() == other.hnf()
    }

    /// Does v lie in the lattice?
    pub fn contains(&self, v: &[Int]) -> bool {
        let h = self.hnf();
        let mut v = v.to_vec();
        for row in &h {
            let Some(p) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            if !v[p].is_zero() {
                let (q, r) = v[p].div_rem(&row[p]);
                if !r.is_zero() {
                    return false;
                }
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi -= &q * ri;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}

/// Row-style Hermite normal form: row-reduced echelon over ℤ, pivots
/// positive, entries above pivots reduced to [0, pivot). Zero rows dropped.
pub fn hnf(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut m: Vec<Vec<Int>> = rows.to_vec();
    if m.is_empty() {
        return m;
    }
    let ncols = m[0].len();
    let mut row = 0;
    for col in 0..ncols {
        // find pivot: gcd-reduce all rows below `row` in this column
        loop {
            let mut idx: Option<usize> = None;
            for i in row..m.len() {
                if !m[i][col].is_zero()
                    && (idx.is_none() || m[i][col].abs() < m[idx.unwrap()][col].abs())
                {
                    idx = Some(i);
                }
            }
            let Some(p) = idx else { break };
            m.swap(row, p);
            let mut done = true;
            for i in row + 1..m.len() {
                if !m[i][col].is_zero() {
                    let q = div_round(&m[i][col], &m[row][col]);
                    for j in 0..ncols {
                        let v = &m[row][j] * &q;
                        m[i][j] -= v;
                    }
                    if !m[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if row < m.len() && !m[row][col].is_zero() {
            if m[row][col].is_negative() {
                for x in m[row].iter_mut() {
                    *x = -x.clone();
                }
            }
            // reduce entries above the pivot
            for i in 0..row {
                if !m[i][col].is_zero() {
                    let q = m[i][col].div_floor(&m[row][col]);
                    for j in 0..ncols {
                        let v = &m[row][j] * &q;
                        m[i][j] -= v;
                    }
                }
            }
            row += 1;
            if row == m.len() {
                break;
            }
        }
    }
    m.truncate(row);
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    m
}

fn div_round(a: &Int, b: &Int) -> Int {
    // nearest-integer division
    let two = Int::from(2);
    let (q, r) = a.div_rem(b);
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + Int::one()
        } else {
            q - Int::one()
        }
    } else {
        q
    }
}

/// Kernel of the ℤ-linear map given by `mat` (acting on row vectors:
/// x ↦ x·mat), as a basis of {x ∈ ℤ^rows : x·mat = 0}.
pub fn integer_kernel(mat: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let rows = mat.len();
    if rows == 0 {
        return vec![];
    }
    let cols = mat[0].len();
    // augment [mat | I], HNF the rows; rows whose mat-part is zero give the
    // kernel via the identity part.
    let mut aug: Vec<Vec<Int>> = Vec::with_capacity(rows);
    for (i, r) in mat.iter().enumerate() {
        let mut row = r.clone();
        for j in 0..rows {
            row.push(if i == j { Int::one() } else { Int::zero() });
        }
        aug.push(row);
    }
    let h = hnf_full(&aug, cols);
    let mut kernel = vec![];
    for r in &h {
        if r[..cols].iter().all(|x| x.is_zero()) && r[cols..].iter().any(|x| !x.is_zero()) {
            kernel.push(r[cols..].to_vec());
        }
    }
    kernel
}

/// HNF that only eliminates within the first `lead_cols` columns but carries
/// the full rows (used to track transformations).
fn hnf_full(rows: &[Vec<Int>], lead_cols: usize) -> Vec<Vec<Int>> {
    let mut m: Vec<Vec<Int>> = rows.to_vec();
    if m.is_empty() {
        return m;
    }
    let ncols = m[0].len();
    let mut row = 0;
    for col in 0..lead_cols {
        loop {
            let mut idx: Option<usize> = None;
            for i in row..m.len() {
                if !m[i][col].is_zero()
                    && (idx.is_none() || m[i][col].abs() < m[idx.unwrap()][col].abs())
                {
                    idx = Some(i);
                }
            }
            let Some(p) = idx else { break };
            m.swap(row, p);
            let mut done = true;
            for i in row + 1..m.len() {
                if !m[i][col].is_zero() {
                    let q = div_round(&m[i][col], &m[row][col]);
                    for j in 0..ncols {
                        let v = &m[row][j] * &q;
                        m[i][j] -= v;
                    }
                    if !m[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if row < m.len() && !m[row][col].is_zero() {
            row += 1;
            if row == m.len() {
                break;
            }
        }
    }
    m
}

/// Basis of the intersection L₁ ∩ L₂ (row lattices in the same ambient ℤⁿ).
pub fn lattice_intersection(l1: &[Vec<Int>], l2: &[Vec<Int>]) -> Vec<Vec<Int>> {
    // x ∈ L₁∩L₂ ⟺ x = a·B₁ = b·B₂. Solve (a, b) with a·B₁ − b·B₂ = 0 and
    // map a ↦ a·B₁.
    let n = l1[0].len();
    let mut stacked: Vec<Vec<Int>> = Vec::new();
    for r in l1 {
        stacked.push(r.clone());
    }
    for r in l2 {
        stacked.push(r.iter().map(|x| -x.clone()).collect());
    }
    let ker = integer_kernel(&stacked);
    let mut out = vec![];
    for k in &ker {
        let mut v = vec![Int::zero(); n];
        for (ai, row) in k[..l1.len()].iter().zip(l1) {
            for (vj, rj) in v.iter_mut().zip(row) {
                *vj += ai * rj;
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    hnf(&out)
}

/// Smith normal form of `mat`: returns the diagonal d₁ | d₂ | … (nonzero
/// entries only).
pub fn smith_normal_form(mat: &[Vec<Int>]) -> Vec<Int> {
    let mut m: Vec<Vec<Int>> = mat.to_vec();
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut diag = vec![];
    let mut top = 0usize;
    let mut left = 0usize;
    while top < rows && left < cols {
        // find smallest nonzero entry in the remaining block
        let mut piv: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in left..cols {
                if !m[i][j].is_zero()
                    && (piv.is_none()
                        || m[i][j].abs() < m[piv.unwrap().0][piv.unwrap().1].abs())
                {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        m.swap(top, pi);
        for r in m.iter_mut() {
            r.swap(left, pj);
        }
        // clear row and column
        let mut clean = true;
        for i in top + 1..rows {
            if !m[i][left].is_zero() {
                let q = div_round(&m[i][left], &m[top][left]);
                for j in left..cols {
                    let v = &m[top][j] * &q;
                    m[i][j] -= v;
                }
                if !m[i][left].is_zero() {
                    clean = false;
                }
            }
        }
        for j in left + 1..cols {
            if !m[top][j].is_zero() {
                let q = div_round(&m[top][j], &m[top][left]);
                for i in top..rows {
                    let v = &m[i][left] * &q;
                    m[i][j] -= v;
                }
                if !m[top][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // divisibility condition: pivot must divide the rest of the block
        let mut fixed = false;
        'outer: for i in top + 1..rows {
            for j in left + 1..cols {
                if !(&m[i][j] % &m[top][left]).is_zero() {
                    // add row i to row top and restart this pivot
                    for jj in left..cols {
                        let v = m[i][jj].clone();
                        m[top][jj] += v;
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        diag.push(m[top][left].abs());
        top += 1;
        left += 1;
    }
    diag
}

/// LLL with exact rational Gram–Schmidt. 1/4 < delta < 1.
pub fn lll_reduce(lattice: &IntLattice, delta: &Rat) -> IntLattice {
    let quarter = Rat::new(Int::one(), Int::from(4));
    assert!(*delta > quarter && *delta < Rat::one(), "delta out of range");
    let mut b: Vec<Vec<Int>> = lattice.basis.clone();
    // reject dependent rows
    assert_eq!(
        hnf(&b).len(),
        b.len(),
        "LLL input rows must be independent"
    );
    let n = b.len();
    if n <= 1 {
        return IntLattice::new(b);
    }

    let dot = |x: &[Int], y: &[Int]| -> Rat {
        let mut s = Int::zero();
        for (a, c) in x.iter().zip(y) {
            s += a * c;
        }
        Rat::from_integer(s)
    };

    // Gram–Schmidt data recomputed from scratch after swaps; fine at n ≤ 10.
    let gso = |b: &Vec<Vec<Int>>| -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>, Vec<Rat>) {
        let n = b.len();
        let dim = b[0].len();
        let mut star: Vec<Vec<Rat>> = Vec::with_capacity(n);
        let mut mu = vec![vec![Rat::zero(); n]; n];
        let mut norms: Vec<Rat> = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<Rat> = b[i].iter().map(|x| Rat::from_integer(x.clone())).collect();
            for j in 0..i {
                let num = {
                    let mut s = Rat::zero();
                    for k in 0..dim {
                        s += Rat::from_integer(b[i][k].clone()) * star[j][k].clone();
                    }
                    s
                };
                let m = num / norms[j].clone();
                mu[i][j] = m.clone();
                for k in 0..dim {
                    let d = m.clone() * star[j][k].clone();
                    v[k] -= d;
                }
            }
            let nn = {
                let mut s = Rat::zero();
                for x in &v {
                    s += x * x;
                }
                s
            };
            star.push(v);
            norms.push(nn);
        }
        (star, mu, norms)
    };

    let (_, mut mu, mut norms) = gso(&b);
    let mut k = 1usize;
    let half = Rat::new(Int::one(), Int::from(2));
    while k < n {
        // size-reduce b_k against b_{k-1}..b_0
        for j in (0..k).rev() {
            if mu[k][j].clone().abs() > half {
                let q = round_rat(&mu[k][j]);
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                let (_, m2, n2) = gso(&b);
                mu = m2;
                norms = n2;
            }
        }
        // Lovász condition
        let lhs = norms[k].clone();
        let rhs = (delta.clone() - mu[k][k - 1].clone() * mu[k][k - 1].clone())
            * norms[k - 1].clone();
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let (_, m2, n2) = gso(&b);
            mu = m2;
            norms = n2;
            k = k.max(2) - 1;
        }
        let _ = dot;
    }
    let out = IntLattice::new(b);
    debug_assert!(out.same_lattice(lattice));
    out
}

fn round_rat(r: &Rat) -> Int {
    let two = Int::from(2);
    let num = r.numer() * &two + r.denom();
    let den = r.denom() * &two;
    num.div_floor(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat_frac};

    #[test]
    fn hnf_membership() {
        let l = IntLattice::from_i64(&[&[2, 0], &[0, 3]]);
        assert!(l.contains(&[int(4), int(3)]));
        assert!(!l.contains(&[int(1), int(0)]));
        assert_eq!(l.rank(), 2);
    }

    #[test]
    fn identity_already_reduced() {
        let l = IntLattice::from_i64(&[&[1, 0], &[0, 1]]);
        let r = lll_reduce(&l, &rat_frac(3, 4));
        assert_eq!(r.hnf(), l.hnf());
        assert_eq!(r.basis, l.basis);
    }

    #[test]
    fn lll_finds_short_vector() {
        let l = IntLattice::from_i64(&[&[58, 19], &[97, 32]]);
        let r = lll_reduce(&l, &rat_frac(3, 4));
        assert!(r.same_lattice(&l));
        // oracle: enumerate all lattice vectors with coordinates bounded by
        // 100 and find the first successive minimum
        let mut best: Option<i64> = None;
        for a in -100i64..=100 {
            for b in -100i64..=100 {
                if a == 0 && b == 0 {
                    continue;
                }
                let x = 58 * a + 97 * b;
                let y = 19 * a + 32 * b;
                if x.abs() <= 100 && y.abs() <= 100 {
                    let n = x * x + y * y;
                    best = Some(best.map_or(n, |m: i64| m.min(n)));
                }
            }
        }
        let first = &r.basis[0];
        let n0 = (&first[0] * &first[0] + &first[1] * &first[1]).clone();
        assert_eq!(n0, Int::from(best.unwrap()));
    }

    #[test]
    fn smith_form_diagonal() {
        // ℤ²/⟨(2,0),(0,4)⟩ ≅ ℤ/2 × ℤ/4
        let d = smith_normal_form(&[
            vec![int(2), int(0)],
            vec![int(0), int(4)],
        ]);
        assert_eq!(d, vec![int(2), int(4)]);
        // divisibility chain enforced
        let d2 = smith_normal_form(&[
            vec![int(2), int(1)],
            vec![int(0), int(3)],
        ]);
        assert_eq!(d2, vec![int(1), int(6)]);
    }

    #[test]
    fn kernel_and_intersection() {
        // map (x,y,z) ↦ x+y+z : kernel rank 2
        let ker = integer_kernel(&[vec![int(1)], vec![int(1)], vec![int(1)]]);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            let s: Int = k.iter().sum();
            assert!(s.is_zero());
        }
        // 2ℤ² ∩ 3ℤ² = 6ℤ²
        let a: Vec<Vec<Int>> = vec![vec![int(2), int(0)], vec![int(0), int(2)]];
        let b: Vec<Vec<Int>> = vec![vec![int(3), int(0)], vec![int(0), int(3)]];
        let i = lattice_intersection(&a, &b);
        assert_eq!(i, vec![vec![int(6), int(0)], vec![int(0), int(6)]]);
    }
}
