//! Dense exact-integer matrices and the elimination kernels the lattice
//! layer is built on: Bareiss determinants, Smith normal form with
//! unimodular transforms, integer kernels and integer linear solves.
//!
//! Everything here is `BigInt`-valued so intermediate growth during
//! elimination can never overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

/// Row-major dense matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> BigInt {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn scale(&self, m: &BigInt) -> IntMat {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= m;
        }
        out
    }

    /// Block-diagonal stacking of `self` and `other`.
    pub fn block_diag(&self, other: &IntMat) -> IntMat {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det_bareiss(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                // pivot search below
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    // exact by the Bareiss identity
                    a[(i, j)] = num / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Characteristic polynomial by the Faddeev-LeVerrier recurrence.
    /// Returns coefficients ascending: `p(x) = c[0] + c[1] x + ... + x^n`.
    /// All divisions in the recurrence are exact over Z.
    pub fn charpoly(&self) -> Vec<BigInt> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = IntMat::identity(n);
        for k in 1..=n {
            let am = self.mul(&m);
            let c = -(am.trace() / BigInt::from(k as i64));
            coeffs[n - k] = c.clone();
            m = am;
            for i in 0..n {
                m[(i, i)] += &c;
            }
        }
        coeffs
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  {:?}",
                self.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>()
            )?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `S = U * A * V` with `U`, `V` unimodular.
/// `vinv` is maintained alongside `V` so saturations come out for free.
pub struct Snf {
    pub s: IntMat,
    pub u: IntMat,
    pub v: IntMat,
    pub vinv: IntMat,
}

impl Snf {
    /// Positive diagonal entries of `S` (the invariant factors, including 1s).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.s.nrows().min(self.s.ncols());
        (0..n)
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct SnfWork {
    s: IntMat,
    u: IntMat,
    v: IntMat,
    vinv: IntMat,
}

impl SnfWork {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.s.nrows() {
            let (x, y) = (self.s[(i, a)].clone(), self.s[(i, b)].clone());
            self.s[(i, a)] = y;
            self.s[(i, b)] = x;
        }
        for i in 0..self.v.nrows() {
            let (x, y) = (self.v[(i, a)].clone(), self.v[(i, b)].clone());
            self.v[(i, a)] = y;
            self.v[(i, b)] = x;
        }
        self.vinv.swap_rows(a, b);
    }

    /// row[dst] += q * row[src]
    fn addmul_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.s.ncols() {
            let t = q * &self.s[(src, j)];
            self.s[(dst, j)] += t;
        }
        for j in 0..self.u.ncols() {
            let t = q * &self.u[(src, j)];
            self.u[(dst, j)] += t;
        }
    }

    /// col[dst] += q * col[src]
    fn addmul_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.s.nrows() {
            let t = q * &self.s[(i, src)];
            self.s[(i, dst)] += t;
        }
        for i in 0..self.v.nrows() {
            let t = q * &self.v[(i, src)];
            self.v[(i, dst)] += t;
        }
        // inverse op on vinv: row[src] -= q * row[dst]
        for j in 0..self.vinv.ncols() {
            let t = q * &self.vinv[(dst, j)];
            self.vinv[(src, j)] -= t;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.s.ncols() {
            let v = -self.s[(r, j)].clone();
            self.s[(r, j)] = v;
        }
        for j in 0..self.u.ncols() {
            let v = -self.u[(r, j)].clone();
            self.u[(r, j)] = v;
        }
    }
}

/// Smith normal form over the integers with full transform tracking.
pub fn smith_normal_form(a: &IntMat) -> Snf {
    let (m, n) = (a.nrows(), a.ncols());
    let mut w = SnfWork {
        s: a.clone(),
        u: IntMat::identity(m),
        v: IntMat::identity(n),
        vinv: IntMat::identity(n),
    };
    let steps = m.min(n);
    for t in 0..steps {
        loop {
            // smallest-magnitude nonzero pivot in the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !w.s[(i, j)].is_zero()
                        && pivot.map_or(true, |(pi, pj)| {
                            w.s[(i, j)].abs() < w.s[(pi, pj)].abs()
                        })
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // trailing block is zero
                return Snf {
                    s: w.s,
                    u: w.u,
                    v: w.v,
                    vinv: w.vinv,
                };
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if !w.s[(i, t)].is_zero() {
                    let q = -(&w.s[(i, t)] / &w.s[(t, t)]);
                    w.addmul_row(i, t, &q);
                    if !w.s[(i, t)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !w.s[(t, j)].is_zero() {
                    let q = -(&w.s[(t, j)] / &w.s[(t, t)]);
                    w.addmul_col(j, t, &q);
                    if !w.s[(t, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let mut fixed = true;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&w.s[(i, j)] % &w.s[(t, t)]).is_zero() {
                        w.addmul_row(t, i, &BigInt::one());
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if w.s[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    Snf {
        s: w.s,
        u: w.u,
        v: w.v,
        vinv: w.vinv,
    }
}

/// Basis (as rows) of the integer kernel `{x : A x = 0}`.
/// The returned rows always span a saturated subgroup of Z^n.
pub fn integer_kernel(a: &IntMat) -> IntMat {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let n = a.ncols();
    let mut out = IntMat::zeros(n - r, n);
    for (k, j) in (r..n).enumerate() {
        for i in 0..n {
            out[(k, i)] = snf.v[(i, j)].clone();
        }
    }
    out
}

/// Solve `X * B = R` over the integers; `None` when no integral solution exists.
pub fn solve_left(b: &IntMat, r: &IntMat) -> Option<IntMat> {
    assert_eq!(b.ncols(), r.ncols());
    let snf = smith_normal_form(b);
    let rank = snf.rank();
    let c = r.mul(&snf.v);
    let m = r.nrows();
    let k = b.nrows();
    let mut y = IntMat::zeros(m, k);
    for i in 0..m {
        for j in 0..c.ncols() {
            if j < rank {
                let d = &snf.s[(j, j)];
                let (q, rem) = c[(i, j)].div_rem(d);
                if !rem.is_zero() {
                    return None;
                }
                y[(i, j)] = q;
            } else if !c[(i, j)].is_zero() {
                return None;
            }
        }
    }
    Some(y.mul(&snf.u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn bareiss_matches_cofactor_on_small_matrices() {
        let m = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det_bareiss(), bi(-1));
        let m = IntMat::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.det_bareiss(), bi(4));
    }

    #[test]
    fn bareiss_zero_pivot_needs_row_swap() {
        let m = IntMat::from_rows(&[vec![0, 2, 1], vec![3, 0, 0], vec![1, 1, 1]]);
        // expansion: 0*(0-0) - 2*(3-0) + 1*(3-0) = -3
        assert_eq!(m.det_bareiss(), bi(-3));
    }

    #[test]
    fn charpoly_of_hyperbolic_plane() {
        let m = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        // x^2 - 1
        assert_eq!(m.charpoly(), vec![bi(-1), bi(0), bi(1)]);
    }

    #[test]
    fn snf_diag_and_transforms() {
        let a = IntMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors(), vec![bi(2), bi(2), bi(156)]);
        // S = U A V must hold exactly
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
        // V * Vinv = I
        assert_eq!(snf.v.mul(&snf.vinv), IntMat::identity(3));
        // transforms are unimodular
        assert_eq!(snf.u.det_bareiss().abs(), bi(1).abs());
        assert_eq!(snf.v.det_bareiss().abs(), bi(1).abs());
    }

    #[test]
    fn kernel_of_projection() {
        let a = IntMat::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]]);
        let k = integer_kernel(&a);
        assert_eq!(k.nrows(), 1);
        // kernel is +-e3
        assert!(k[(0, 2)].abs() == bi(1) && k[(0, 0)].is_zero() && k[(0, 1)].is_zero());
    }

    #[test]
    fn solve_left_exact_and_failing() {
        let b = IntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let r = IntMat::from_rows(&[vec![4, 9]]);
        let x = solve_left(&b, &r).unwrap();
        assert_eq!(x.mul(&b), r);
        let r_bad = IntMat::from_rows(&[vec![1, 0]]);
        assert!(solve_left(&b, &r_bad).is_none());
    }
}
