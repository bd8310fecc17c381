//! Weierstrass models `y^2 = x(x^2 + a(t)x + b(t))` over the rational
//! function field, their I1/I2 fiber tables, the 2-isogeny quotient by the
//! section (0,0), and the Shioda-Tate rank count.

pub mod factor;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ratpoly::{PolyError, RatPoly};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EllipticError {
    #[error("BadDegrees: deg a = {a:?} (max 4), deg b = {b:?} (max 8)")]
    BadDegrees { a: Option<usize>, b: Option<usize> },
    #[error("NonGeneric: {0}")]
    NonGeneric(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `y^2 = x(x^2 + a(t) x + b(t))` with `deg a <= 4`, `deg b <= 8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassModel {
    a: RatPoly,
    b: RatPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiberKind {
    I1,
    I2,
}

impl FiberKind {
    /// number of irreducible components of the fiber
    pub fn components(self) -> u32 {
        match self {
            FiberKind::I1 => 1,
            FiberKind::I2 => 2,
        }
    }

    /// Euler number: e(I_n) = n
    pub fn euler(self) -> u32 {
        match self {
            FiberKind::I1 => 1,
            FiberKind::I2 => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberEntry {
    pub factor: RatPoly,
    pub kodaira: FiberKind,
    /// degree of the factor = number of roots in the algebraic closure
    pub root_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberTable {
    pub entries: Vec<FiberEntry>,
    pub euler_sum: u32,
    pub rho: u32,
    pub transcendental_dim: u32,
}

impl WeierstrassModel {
    pub fn new(a: RatPoly, b: RatPoly) -> Result<Self, EllipticError> {
        let da = a.degree();
        let db = b.degree();
        if da.map_or(false, |d| d > 4) || db.map_or(false, |d| d > 8) {
            return Err(EllipticError::BadDegrees { a: da, b: db });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &RatPoly {
        &self.a
    }

    pub fn b(&self) -> &RatPoly {
        &self.b
    }

    /// `a^2 - 4b`, the discriminant of the quadratic factor in x.
    pub fn quad_disc(&self) -> RatPoly {
        self.a
            .mul(&self.a)
            .sub(&self.b.scale(&BigRational::from_integer(4.into())))
    }

    /// Discriminant of the cubic in x: `16 b^2 (a^2 - 4b)`.
    pub fn discriminant(&self) -> RatPoly {
        self.b
            .mul(&self.b)
            .mul(&self.quad_disc())
            .scale(&BigRational::from_integer(16.into()))
    }

    /// The genericity conditions, checked in a fixed order; the error names
    /// the first one that fails.
    pub fn genericity_check(&self) -> Result<(), EllipticError> {
        let fail = |msg: &str| Err(EllipticError::NonGeneric(msg.to_string()));
        if self.b.degree() != Some(8) {
            return fail("deg b != 8");
        }
        let q = self.quad_disc();
        if q.degree() != Some(8) {
            return fail("deg (a^2 - 4b) != 8");
        }
        if !self.b.is_squarefree()? {
            return fail("b is not squarefree");
        }
        if !q.is_squarefree()? {
            return fail("a^2 - 4b is not squarefree");
        }
        if self.b.gcd(&q)?.degree() != Some(0) {
            return fail("gcd(b, a^2 - 4b) != 1");
        }
        if self.b.coeff(0).is_zero() {
            return fail("b(0) = 0");
        }
        if q.coeff(0).is_zero() {
            return fail("(a^2 - 4b)(0) = 0");
        }
        Ok(())
    }

    /// I2 fibers over the roots of b, I1 fibers over the roots of a^2 - 4b;
    /// requires genericity.
    pub fn fiber_table(&self) -> Result<FiberTable, EllipticError> {
        self.genericity_check()?;
        let mut entries = Vec::new();
        for (f, mult) in factor::factor_rational(&self.b)? {
            debug_assert_eq!(mult, 1);
            let root_count = f.degree().unwrap_or(0);
            entries.push(FiberEntry {
                factor: f,
                kodaira: FiberKind::I2,
                root_count,
            });
        }
        for (f, mult) in factor::factor_rational(&self.quad_disc())? {
            debug_assert_eq!(mult, 1);
            let root_count = f.degree().unwrap_or(0);
            entries.push(FiberEntry {
                factor: f,
                kodaira: FiberKind::I1,
                root_count,
            });
        }
        let euler_sum: u32 = entries
            .iter()
            .map(|e| e.kodaira.euler() * e.root_count as u32)
            .sum();
        let (rho, transcendental_dim) = shioda_tate(&entries, 0);
        Ok(FiberTable {
            entries,
            euler_sum,
            rho,
            transcendental_dim,
        })
    }

    /// 2-isogeny quotient by the section (0,0): `a' = -2a`, `b' = a^2 - 4b`.
    pub fn quotient_model(&self) -> Result<WeierstrassModel, EllipticError> {
        self.genericity_check()?;
        let a_new = self.a.scale(&BigRational::from_integer((-2).into()));
        let b_new = self.quad_disc();
        WeierstrassModel::new(a_new, b_new)
    }
}

/// `rho = 2 + sum (m_v - 1) * root_count + mw_rank`; also returns
/// `dim T = 22 - rho`.
pub fn shioda_tate(entries: &[FiberEntry], mw_rank: u32) -> (u32, u32) {
    let extra: u32 = entries
        .iter()
        .map(|e| (e.kodaira.components() - 1) * e.root_count as u32)
        .sum();
    let rho = 2 + extra + mw_rank;
    (rho, 22u32.saturating_sub(rho))
}

/// Deterministic search for a generic model with small integer coefficients,
/// driven by a seeded stream.
pub fn random_generic_model(seed: u64) -> WeierstrassModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let a_coeffs: Vec<i64> = (0..5).map(|_| rng.gen_range(-5..=5)).collect();
        let mut b_coeffs: Vec<i64> = (0..9).map(|_| rng.gen_range(-5..=5)).collect();
        if b_coeffs[8] == 0 {
            b_coeffs[8] = 1;
        }
        let model = match WeierstrassModel::new(
            RatPoly::from_i64(&a_coeffs),
            RatPoly::from_i64(&b_coeffs),
        ) {
            Ok(m) => m,
            Err(_) => continue,
        };
        if model.genericity_check().is_ok() {
            return model;
        }
    }
}

// ---- reporting ----------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiberEntryReport {
    pub factor: String,
    pub kodaira: String,
    pub root_count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EllipticReport {
    pub a: String,
    pub b: String,
    pub discriminant: String,
    pub entries: Vec<FiberEntryReport>,
    pub euler_sum: u32,
    pub rho: u32,
    pub transcendental_dim: u32,
    pub citations: Vec<String>,
    pub notes: Vec<String>,
}

pub fn analyze(model: &WeierstrassModel, quotient: bool) -> Result<EllipticReport, EllipticError> {
    let mut notes = Vec::new();
    let target = if quotient {
        notes.push(
            "quotient uses b' = a^2 - 4b; the variant coefficient 9a^2 - 4b fails the \
             fiber-swap identity a'^2 - 4b' = 16b and the double-quotient round trip, \
             and is rejected as a misprint"
                .to_string(),
        );
        model.quotient_model()?
    } else {
        model.clone()
    };
    let table = target.fiber_table()?;
    Ok(EllipticReport {
        a: format!("{:?}", target.a()),
        b: format!("{:?}", target.b()),
        discriminant: format!("{:?}", target.discriminant()),
        entries: table
            .entries
            .iter()
            .map(|e| FiberEntryReport {
                factor: format!("{:?}", e.factor),
                kodaira: format!("{:?}", e.kodaira),
                root_count: e.root_count,
            })
            .collect(),
        euler_sum: table.euler_sum,
        rho: table.rho,
        transcendental_dim: table.transcendental_dim,
        citations: vec![
            "Thm 7: a general model y^2 = x(x^2 + a(t)x + b(t)) with deg a = 4, deg b = 8 \
             has 8 fibers of type I1 (over the roots of a^2 - 4b) and 8 of type I2 (over \
             the roots of b)"
                .to_string(),
            "Rem 4: for such a fibration rho = 10, so the transcendental part has \
             dimension 12"
                .to_string(),
        ],
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(a: &[i64], b: &[i64]) -> WeierstrassModel {
        WeierstrassModel::new(RatPoly::from_i64(a), RatPoly::from_i64(b)).unwrap()
    }

    #[test]
    fn degree_bounds_enforced() {
        assert!(WeierstrassModel::new(
            RatPoly::from_i64(&[0, 0, 0, 0, 0, 1]),
            RatPoly::from_i64(&[1]),
        )
        .is_err());
        assert!(WeierstrassModel::new(
            RatPoly::from_i64(&[1]),
            RatPoly::from_i64(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
        )
        .is_err());
    }

    #[test]
    fn discriminant_constant_case() {
        // a = 0, b = 1: disc = 16 * 1 * (-4) = -64
        let m = model(&[0], &[1]);
        assert_eq!(m.discriminant(), RatPoly::from_i64(&[-64]));
        // b = 0 degenerates to the zero polynomial
        let m = model(&[1], &[]);
        assert!(m.discriminant().is_zero());
    }

    #[test]
    fn discriminant_matches_root_product() {
        // for x(x^2+ax+b) with roots 0, r1, r2: disc = 16 b^2 (a^2-4b) equals
        // 16 (r1 r2)^2 ((r1+r2)^2 - 4 r1 r2); spot-check at a=3, b=2
        // (r1=-1, r2=-2): (0-r1)^2 (0-r2)^2 (r1-r2)^2 = 1*4*1 = 4, and the
        // cubic discriminant convention carries the 16.
        let m = model(&[3], &[2]);
        assert_eq!(m.discriminant(), RatPoly::from_i64(&[16 * 4 * 1]));
    }

    #[test]
    fn genericity_reasons_in_order() {
        // deg b != 8
        let m = model(&[0], &[1, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(
            m.genericity_check(),
            Err(EllipticError::NonGeneric(ref r)) if r.contains("deg b")
        ));
        // a = 0 makes gcd(b, -4b) = b
        let m = model(&[0], &[1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(
            m.genericity_check(),
            Err(EllipticError::NonGeneric(ref r)) if r.contains("gcd")
        ));
        // b with a repeated root
        let b = RatPoly::from_i64(&[-1, 1]); // (t-1)^2 * (t^6 + t + 2)... keep it simple:
        let b = b.mul(&b).mul(&RatPoly::from_i64(&[2, 1, 0, 0, 0, 0, 1]));
        let m = WeierstrassModel::new(RatPoly::from_i64(&[0, 0, 0, 0, 1]), b).unwrap();
        assert!(matches!(
            m.genericity_check(),
            Err(EllipticError::NonGeneric(ref r)) if r.contains("squarefree")
        ));
    }

    #[test]
    fn generic_example_counts() {
        // a = t^4, b = 1 + t^8 is generic: a^2 - 4b = t^8 - 4t^8 ... compute:
        // a^2 = t^8, so a^2 - 4b = -3t^8 - 4
        let m = model(&[0, 0, 0, 0, 1], &[1, 0, 0, 0, 0, 0, 0, 0, 1]);
        m.genericity_check().unwrap();
        let t = m.fiber_table().unwrap();
        let i1: usize = t
            .entries
            .iter()
            .filter(|e| e.kodaira == FiberKind::I1)
            .map(|e| e.root_count)
            .sum();
        let i2: usize = t
            .entries
            .iter()
            .filter(|e| e.kodaira == FiberKind::I2)
            .map(|e| e.root_count)
            .sum();
        assert_eq!((i1, i2), (8, 8));
        assert_eq!(t.euler_sum, 24);
        assert_eq!(t.rho, 10);
        assert_eq!(t.transcendental_dim, 12);
    }

    #[test]
    fn quotient_constant_formula() {
        let m = model(&[0], &[1]);
        let q = m.quotient_model();
        // not generic, so the guarded op refuses; check the raw formulas
        assert!(q.is_err());
        assert_eq!(m.quad_disc(), RatPoly::from_i64(&[-4]));
    }

    #[test]
    fn fiber_swap_identity() {
        let m = random_generic_model(7);
        let q = m.quotient_model().unwrap();
        // a'^2 - 4b' = 16 b
        assert_eq!(
            q.quad_disc(),
            m.b().scale(&BigRational::from_integer(16.into()))
        );
        q.genericity_check().unwrap();
    }

    #[test]
    fn double_quotient_round_trip() {
        let m = random_generic_model(11);
        let qq = m.quotient_model().unwrap().quotient_model().unwrap();
        // a'' = 4a, b'' = 16b, undone by (x, y) -> (4x, 8y)
        assert_eq!(*qq.a(), m.a().scale(&BigRational::from_integer(4.into())));
        assert_eq!(*qq.b(), m.b().scale(&BigRational::from_integer(16.into())));
    }

    #[test]
    fn shioda_tate_presets() {
        assert_eq!(shioda_tate(&[], 0), (2, 20));
        let entries = vec![
            FiberEntry {
                factor: RatPoly::x(),
                kodaira: FiberKind::I2,
                root_count: 8,
            },
            FiberEntry {
                factor: RatPoly::x(),
                kodaira: FiberKind::I1,
                root_count: 8,
            },
        ];
        assert_eq!(shioda_tate(&entries, 0), (10, 12));
        assert_eq!(shioda_tate(&entries, 1), (11, 11));
    }

    #[test]
    fn seeded_models_are_deterministic() {
        assert_eq!(random_generic_model(3), random_generic_model(3));
    }
}
