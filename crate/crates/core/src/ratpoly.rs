//! Univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored ascending by degree with no trailing zeros; the
//! zero polynomial is the empty coefficient vector and its degree is `None`.
//! This module carries the Euclidean toolkit (gcd, squarefree parts,
//! resultants) and Sturm-sequence root counting used for lattice signatures.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::matrix::IntMat;

#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("DivisionByZeroPoly")]
    DivisionByZeroPoly,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn x() -> Self {
        RatPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn neg(&self) -> Self {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitute `x -> c * x`.
    pub fn compose_scale_x(&self, c: &BigRational) -> Self {
        let mut pow = BigRational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a * &pow;
                pow = &pow * c;
                v
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat(k as i64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZeroPoly);
        }
        let dd = divisor.degree().unwrap();
        let lc = divisor.leading_coeff();
        let mut rem = self.clone();
        let mut quot = vec![
            BigRational::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let q = rem.leading_coeff() / &lc;
            let shift = rd - dd;
            quot[shift] = q.clone();
            // rem -= q * x^shift * divisor
            let mut sub = vec![BigRational::zero(); shift];
            sub.extend(divisor.coeffs.iter().map(|c| c * &q));
            rem = rem.sub(&Self::from_coeffs(sub));
        }
        Ok((Self::from_coeffs(quot), rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&(BigRational::one() / lc))
    }

    /// Monic gcd by the Euclidean algorithm. Errors when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::DivisionByZeroPoly);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZeroPoly);
        }
        if self.degree() == Some(0) {
            return Ok(Self::one());
        }
        let g = self.gcd(&self.derivative())?;
        let (q, r) = self.div_rem(&g)?;
        debug_assert!(r.is_zero());
        Ok(q.monic())
    }

    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Ok(false);
        }
        if self.degree() == Some(0) {
            return Ok(true);
        }
        Ok(self.gcd(&self.derivative())?.degree() == Some(0))
    }

    /// Yun's squarefree decomposition: returns `[(p_1, 1), (p_2, 2), ...]`
    /// with `self = lc * prod p_i^i`, each `p_i` monic squarefree, trivial
    /// entries dropped.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZeroPoly);
        }
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(vec![]);
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp)?;
        let mut b = f.div_rem(&a0)?.0;
        let mut c = fp.div_rem(&a0)?.0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1usize;
        loop {
            let ai = b.gcd(&d)?;
            if ai.degree().unwrap_or(0) > 0 {
                out.push((ai.clone(), i));
            }
            b = b.div_rem(&ai)?.0;
            if b.degree() == Some(0) {
                break;
            }
            c = d.div_rem(&ai)?.0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    /// Resultant via the Sylvester matrix. Rows are scaled to integers and the
    /// determinant is taken fraction-free (Bareiss), then rescaled. Sign
    /// convention: `resultant(p, q) = lc(q)^deg(p) * prod p(beta)` over the
    /// roots `beta` of `q`, so `resultant(t, t - 5) = 5`.
    pub fn resultant(&self, other: &Self) -> Result<BigRational, PolyError> {
        let (Some(n), Some(m)) = (self.degree(), other.degree()) else {
            return Err(PolyError::DivisionByZeroPoly);
        };
        if n == 0 && m == 0 {
            return Ok(BigRational::one());
        }
        let size = n + m;
        let mut scale = BigRational::one();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(size);
        for shift in 0..n {
            rows.push(sylvester_row(&other.coeffs, m, shift, size, &mut scale));
        }
        for shift in 0..m {
            rows.push(sylvester_row(&self.coeffs, n, shift, size, &mut scale));
        }
        let det = IntMat::from_bigint_rows(rows).det_bareiss();
        Ok(BigRational::from_integer(det) / scale)
    }

    /// Number of real roots in `(0, +inf)` and `(-inf, 0)`, counted **with
    /// multiplicity**, via Sturm chains on each squarefree factor.
    /// Requires a nonzero constant term (no root at 0).
    pub fn signed_root_counts(&self) -> Result<(usize, usize), PolyError> {
        if self.is_zero() || self.coeff(0).is_zero() {
            return Err(PolyError::DivisionByZeroPoly);
        }
        let mut pos = 0usize;
        let mut neg = 0usize;
        for (factor, mult) in self.squarefree_decomposition()? {
            let (p, n) = sturm_signed_counts(&factor)?;
            pos += p * mult;
            neg += n * mult;
        }
        Ok((pos, neg))
    }
}

fn sylvester_row(
    coeffs: &[BigRational],
    deg: usize,
    shift: usize,
    size: usize,
    scale: &mut BigRational,
) -> Vec<BigInt> {
    let mut denom_lcm = BigInt::one();
    for c in coeffs {
        denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
    }
    *scale = scale.clone() * BigRational::from_integer(denom_lcm.clone());
    let mut row = vec![BigInt::zero(); size];
    for (k, c) in coeffs.iter().enumerate() {
        // coefficient of x^k sits at descending-power column
        let col = shift + (deg - k);
        let scaled = c * BigRational::from_integer(denom_lcm.clone());
        row[col] = scaled.to_integer();
    }
    row
}

/// Sturm counts of distinct real roots of a squarefree polynomial in
/// `(0, +inf)` and `(-inf, 0)`.
fn sturm_signed_counts(f: &RatPoly) -> Result<(usize, usize), PolyError> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok((0, 0));
    }
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    let sign_at_zero = |p: &RatPoly| -> i32 {
        let c = p
            .coeffs()
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or_else(BigRational::zero);
        // nonzero lowest coefficient gives the sign just right of 0; for the
        // variation count at 0 itself we use p(0), falling back to the limit
        // convention is unnecessary because callers exclude roots at 0
        rational_sign(&p.eval(&BigRational::zero()), &c)
    };
    let v_zero = sign_variations(chain.iter().map(sign_at_zero));
    let v_pos_inf = sign_variations(chain.iter().map(|p| {
        let lc = p.leading_coeff();
        if lc.is_positive() {
            1
        } else if lc.is_negative() {
            -1
        } else {
            0
        }
    }));
    let v_neg_inf = sign_variations(chain.iter().map(|p| {
        let lc = p.leading_coeff();
        let s = if lc.is_positive() {
            1
        } else if lc.is_negative() {
            -1
        } else {
            0
        };
        if p.degree().unwrap_or(0) % 2 == 0 {
            s
        } else {
            -s
        }
    }));
    Ok((
        v_zero.saturating_sub(v_pos_inf),
        v_neg_inf.saturating_sub(v_zero),
    ))
}

fn rational_sign(value: &BigRational, fallback: &BigRational) -> i32 {
    let v = if value.is_zero() { fallback } else { value };
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_variations<I: Iterator<Item = i32>>(signs: I) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{}", c),
                1 => format!("{}*t", c),
                _ => format!("{}*t^{}", c, k),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
