//! Integral lattices: canonical builders (U, E8, twists, rank-1 forms),
//! exact invariants, discriminant groups, sublattice machinery and
//! witness-based isometry verification.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::{integer_kernel, smith_normal_form, solve_left, IntMat};
use crate::ratpoly::RatPoly;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("UnknownLattice: {0}")]
    UnknownLattice(String),
    #[error("DegenerateForm")]
    DegenerateForm,
    #[error("BadSublattice: {0}")]
    BadSublattice(String),
    #[error("RankMismatch")]
    RankMismatch,
    #[error("NotInvolution")]
    NotInvolution,
    #[error("NotSymmetric")]
    NotSymmetric,
}

/// A nondegenerate integral lattice given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMat,
    rank: usize,
}

/// Summary invariants of a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeInvariants {
    pub det: String,
    pub rank: usize,
    pub signature: (usize, usize),
    pub even: bool,
    pub unimodular: bool,
}

/// Finite discriminant group, as its nontrivial invariant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<BigInt>,
}

impl DiscriminantGroup {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }
}

/// Canonical lattices used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardLattice {
    U,
    E8,
    E8Minus1,
    /// `<2d>`: rank 1 with Gram `[[2d]]`, `2d` a nonzero even integer.
    Rank1(i64),
}

impl Lattice {
    /// Build from a symmetric integer Gram matrix; rejects degenerate forms.
    pub fn new(gram: IntMat) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if gram.det_bareiss().is_zero() {
            return Err(LatticeError::DegenerateForm);
        }
        let rank = gram.nrows();
        Ok(Lattice { gram, rank })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Self::new(IntMat::from_rows(rows))
    }

    pub fn standard(name: StandardLattice) -> Result<Self, LatticeError> {
        match name {
            StandardLattice::U => Self::from_rows(&[vec![0, 1], vec![1, 0]]),
            StandardLattice::E8 => Self::new(e8_gram()),
            StandardLattice::E8Minus1 => Self::new(e8_gram().scale(&BigInt::from(-1))),
            StandardLattice::Rank1(two_d) => {
                if two_d == 0 || two_d % 2 != 0 {
                    return Err(LatticeError::UnknownLattice(format!(
                        "RANK1({two_d}) needs a nonzero even integer"
                    )));
                }
                Self::from_rows(&[vec![two_d]])
            }
        }
    }

    /// Look up a lattice by CLI name: `U`, `E8`, `E8_MINUS_1`, `RANK1(k)`.
    pub fn by_name(name: &str) -> Result<Self, LatticeError> {
        match name {
            "U" => Self::standard(StandardLattice::U),
            "E8" => Self::standard(StandardLattice::E8),
            "E8_MINUS_1" => Self::standard(StandardLattice::E8Minus1),
            other => {
                if let Some(arg) = other
                    .strip_prefix("RANK1(")
                    .and_then(|s| s.strip_suffix(')'))
                {
                    let two_d: i64 = arg
                        .trim()
                        .parse()
                        .map_err(|_| LatticeError::UnknownLattice(other.to_string()))?;
                    Self::standard(StandardLattice::Rank1(two_d))
                } else {
                    Err(LatticeError::UnknownLattice(other.to_string()))
                }
            }
        }
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn det(&self) -> BigInt {
        self.gram.det_bareiss()
    }

    /// Scale the form by a nonzero integer: `L(m)`.
    pub fn twist(&self, m: i64) -> Result<Self, LatticeError> {
        if m == 0 {
            return Err(LatticeError::DegenerateForm);
        }
        Self::new(self.gram.scale(&BigInt::from(m)))
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice {
            gram: self.gram.block_diag(&other.gram),
            rank: self.rank + other.rank,
        }
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank).all(|i| (&self.gram[(i, i)] % BigInt::from(2)).is_zero())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Exact signature: positive/negative eigenvalue counts of the Gram
    /// matrix, via Sturm sequences on the characteristic polynomial.
    pub fn signature(&self) -> Result<(usize, usize), LatticeError> {
        let charpoly = RatPoly::from_bigints(&self.gram.charpoly());
        charpoly
            .signed_root_counts()
            .map_err(|_| LatticeError::DegenerateForm)
    }

    pub fn invariants(&self) -> Result<LatticeInvariants, LatticeError> {
        let det = self.det();
        if det.is_zero() {
            return Err(LatticeError::DegenerateForm);
        }
        let signature = self.signature()?;
        Ok(LatticeInvariants {
            det: det.to_string(),
            rank: self.rank,
            signature,
            even: self.is_even(),
            unimodular: det.abs().is_one(),
        })
    }

    /// Invariant factors > 1 of the Smith normal form of the Gram matrix.
    pub fn discriminant_group(&self) -> Result<DiscriminantGroup, LatticeError> {
        if self.det().is_zero() {
            return Err(LatticeError::DegenerateForm);
        }
        let snf = smith_normal_form(&self.gram);
        let invariant_factors = snf
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        Ok(DiscriminantGroup { invariant_factors })
    }

    /// Full-rank sublattice of `self` (ambient = self, identity basis).
    pub fn as_sublattice(&self) -> Sublattice {
        Sublattice {
            ambient: self.clone(),
            basis: IntMat::identity(self.rank),
            saturated: true,
        }
    }

    pub fn sublattice(&self, basis: IntMat) -> Result<Sublattice, LatticeError> {
        Sublattice::new(self.clone(), basis)
    }

    /// Kernels of `iota - id` and `iota + id` for an involutive isometry:
    /// the fixed and antifixed sublattices. Both come out saturated, the
    /// ranks add to `rank` and differ by `trace(iota)`.
    pub fn fixed_and_antifixed(
        &self,
        iota: &Isometry,
    ) -> Result<(Sublattice, Sublattice), LatticeError> {
        if iota.domain() != self {
            return Err(LatticeError::RankMismatch);
        }
        if !iota.is_involution() {
            return Err(LatticeError::NotInvolution);
        }
        let n = self.rank;
        let id = IntMat::identity(n);
        let mut minus = iota.matrix().clone();
        let mut plus = iota.matrix().clone();
        for i in 0..n {
            minus[(i, i)] -= &id[(i, i)];
            plus[(i, i)] += &id[(i, i)];
        }
        let fixed = integer_kernel(&minus);
        let anti = integer_kernel(&plus);
        Ok((
            Sublattice {
                ambient: self.clone(),
                basis: fixed,
                saturated: true,
            },
            Sublattice {
                ambient: self.clone(),
                basis: anti,
                saturated: true,
            },
        ))
    }
}

/// Bourbaki-numbered E8 Cartan matrix: chain 1-2-3-4-5-6-7, node 8 on node 5.
fn e8_gram() -> IntMat {
    let edges: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    let mut g = IntMat::zeros(8, 8);
    for i in 0..8 {
        g[(i, i)] = BigInt::from(2);
    }
    for &(a, b) in edges {
        g[(a, b)] = BigInt::from(-1);
        g[(b, a)] = BigInt::from(-1);
    }
    g
}

/// A sublattice stored by its basis rows in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    ambient: Lattice,
    basis: IntMat,
    saturated: bool,
}

impl Sublattice {
    pub fn new(ambient: Lattice, basis: IntMat) -> Result<Self, LatticeError> {
        if basis.ncols() != ambient.rank() {
            return Err(LatticeError::BadSublattice(
                "basis width differs from ambient rank".into(),
            ));
        }
        let snf = smith_normal_form(&basis);
        if snf.rank() != basis.nrows() {
            return Err(LatticeError::BadSublattice(
                "basis rows are linearly dependent".into(),
            ));
        }
        let saturated = snf.invariant_factors().iter().all(|d| d.is_one());
        Ok(Sublattice {
            ambient,
            basis,
            saturated,
        })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Induced Gram matrix `B G B^T`, computed on demand.
    pub fn induced_gram(&self) -> IntMat {
        self.basis
            .mul(self.ambient.gram())
            .mul(&self.basis.transpose())
    }

    /// The induced form as a lattice (errors if degenerate).
    pub fn induced_lattice(&self) -> Result<Lattice, LatticeError> {
        Lattice::new(self.induced_gram())
    }

    /// Smallest saturated sublattice containing this one. The index of the
    /// input in its saturation is the product of the basis SNF invariant
    /// factors.
    pub fn saturate(&self) -> Sublattice {
        if self.saturated {
            return self.clone();
        }
        let snf = smith_normal_form(&self.basis);
        let k = self.basis.nrows();
        let n = self.basis.ncols();
        // U B = S V^-1, so rows 0..k of V^-1 span the saturation
        let mut rows = IntMat::zeros(k, n);
        for i in 0..k {
            for j in 0..n {
                rows[(i, j)] = snf.vinv[(i, j)].clone();
            }
        }
        Sublattice {
            ambient: self.ambient.clone(),
            basis: rows,
            saturated: true,
        }
    }

    /// Index of `self` inside its saturation.
    pub fn saturation_index(&self) -> BigInt {
        smith_normal_form(&self.basis)
            .invariant_factors()
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    /// Does this sublattice contain `other` (same ambient)?
    pub fn contains(&self, other: &Sublattice) -> bool {
        self.ambient == other.ambient && solve_left(&self.basis, &other.basis).is_some()
    }

    /// Do the two bases span the same sublattice of the same ambient?
    pub fn same_span(&self, other: &Sublattice) -> bool {
        self.contains(other) && other.contains(self)
    }

    /// Orthogonal complement inside the ambient lattice: the integer kernel
    /// of pairing with this sublattice. Always saturated.
    pub fn orthogonal_complement(&self) -> Sublattice {
        // rows of B*G are the pairing functionals; complement = kernel
        let pairing = self.basis.mul(self.ambient.gram());
        let kernel = integer_kernel(&pairing);
        Sublattice {
            ambient: self.ambient.clone(),
            basis: kernel,
            saturated: true,
        }
    }

    /// Entrywise pairing of this sublattice's basis with another's.
    pub fn pairing_with(&self, other: &Sublattice) -> IntMat {
        self.basis
            .mul(self.ambient.gram())
            .mul(&other.basis.transpose())
    }
}

/// An integer matrix certified to preserve a lattice's form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    matrix: IntMat,
    domain: Lattice,
}

impl Isometry {
    /// Column-vector convention: `v -> M v`; requires `M^T G M = G` and
    /// `det M = +-1`.
    pub fn new(matrix: IntMat, domain: Lattice) -> Result<Self, LatticeError> {
        if matrix.nrows() != domain.rank() || matrix.ncols() != domain.rank() {
            return Err(LatticeError::RankMismatch);
        }
        if !verify_isometry(&matrix, &domain, &domain)? {
            return Err(LatticeError::BadSublattice(
                "matrix does not preserve the form".into(),
            ));
        }
        Ok(Isometry { matrix, domain })
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn domain(&self) -> &Lattice {
        &self.domain
    }

    pub fn trace(&self) -> BigInt {
        self.matrix.trace()
    }

    pub fn is_involution(&self) -> bool {
        self.matrix.mul(&self.matrix) == IntMat::identity(self.domain.rank())
    }
}

/// `true` iff `M^T gram(L2) M = gram(L1)` and `|det M| = 1`, i.e. `M` is an
/// explicit isometry witness `L1 -> L2` in coordinates.
pub fn verify_isometry(m: &IntMat, l1: &Lattice, l2: &Lattice) -> Result<bool, LatticeError> {
    if l1.rank() != l2.rank() || m.nrows() != l1.rank() || m.ncols() != l1.rank() {
        return Err(LatticeError::RankMismatch);
    }
    if !m.det_bareiss().abs().is_one() {
        return Ok(false);
    }
    Ok(m.transpose().mul(l2.gram()).mul(m) == *l1.gram())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Lattice {
        Lattice::standard(StandardLattice::U).unwrap()
    }

    fn e8() -> Lattice {
        Lattice::standard(StandardLattice::E8).unwrap()
    }

    #[test]
    fn standard_gram_matrices() {
        assert_eq!(u().gram(), &IntMat::from_rows(&[vec![0, 1], vec![1, 0]]));
        let e8 = e8();
        assert_eq!(e8.det(), BigInt::from(1));
        assert!(e8.is_even());
        assert_eq!(e8.signature().unwrap(), (8, 0));
        let r = Lattice::standard(StandardLattice::Rank1(6)).unwrap();
        assert_eq!(r.gram(), &IntMat::from_rows(&[vec![6]]));
    }

    #[test]
    fn rank1_rejects_odd_and_zero() {
        assert!(Lattice::standard(StandardLattice::Rank1(0)).is_err());
        assert!(Lattice::standard(StandardLattice::Rank1(3)).is_err());
    }

    #[test]
    fn by_name_parses() {
        assert!(Lattice::by_name("U").is_ok());
        assert!(Lattice::by_name("RANK1(6)").is_ok());
        assert_eq!(
            Lattice::by_name("X"),
            Err(LatticeError::UnknownLattice("X".into()))
        );
    }

    #[test]
    fn twist_scales_entrywise_and_det_law() {
        let t = u().twist(2).unwrap();
        assert_eq!(t.gram(), &IntMat::from_rows(&[vec![0, 2], vec![2, 0]]));
        // det(L(m)) = m^n det(L)
        let e8m2 = e8().twist(-2).unwrap();
        assert_eq!(e8m2.det(), BigInt::from(256));
        assert_eq!(u().twist(1).unwrap(), u());
        assert_eq!(u().twist(0), Err(LatticeError::DegenerateForm));
    }

    #[test]
    fn direct_sum_invariants() {
        let s = u().direct_sum(&u());
        assert_eq!(s.rank(), 4);
        assert_eq!(s.det(), BigInt::from(1));
        let inv = s.invariants().unwrap();
        assert_eq!(inv.signature, (2, 2));
    }

    #[test]
    fn invariants_of_u() {
        let inv = u().invariants().unwrap();
        assert_eq!(inv.det, "-1");
        assert_eq!(inv.signature, (1, 1));
        assert!(inv.even && inv.unimodular);
    }

    #[test]
    fn invariants_of_e8_minus_2() {
        let inv = e8().twist(-2).unwrap().invariants().unwrap();
        assert_eq!(inv.det, "256");
        assert_eq!(inv.signature, (0, 8));
        assert!(inv.even && !inv.unimodular);
    }

    #[test]
    fn discriminant_groups() {
        assert!(e8()
            .twist(-1)
            .unwrap()
            .discriminant_group()
            .unwrap()
            .is_trivial());
        let d = e8().twist(-2).unwrap().discriminant_group().unwrap();
        assert_eq!(d.invariant_factors, vec![BigInt::from(2); 8]);
        let d = u().twist(2).unwrap().discriminant_group().unwrap();
        assert_eq!(d.invariant_factors, vec![BigInt::from(2); 2]);
    }

    #[test]
    fn orthogonal_complement_of_block() {
        let amb = u().direct_sum(&e8().twist(-1).unwrap());
        let first_u = amb
            .sublattice(IntMat::from_rows(&[
                vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
            ]))
            .unwrap();
        let comp = first_u.orthogonal_complement();
        assert_eq!(comp.rank(), 8);
        assert!(comp.is_saturated());
        assert_eq!(
            comp.induced_lattice().unwrap().invariants().unwrap(),
            e8().twist(-1).unwrap().invariants().unwrap()
        );
        // pairs to zero with the original block
        let pairing = comp.pairing_with(&first_u);
        assert!((0..8).all(|i| (0..2).all(|j| pairing[(i, j)].is_zero())));
    }

    #[test]
    fn saturate_clears_factors() {
        let s = u()
            .sublattice(IntMat::from_rows(&[vec![2, 0]]))
            .unwrap();
        assert!(!s.is_saturated());
        assert_eq!(s.saturation_index(), BigInt::from(2));
        let sat = s.saturate();
        assert!(sat.is_saturated());
        assert!(sat.contains(&s));
        // idempotent
        assert!(sat.saturate().same_span(&sat));
    }

    #[test]
    fn fixed_and_antifixed_identity_and_negation() {
        let l = u();
        let id = Isometry::new(IntMat::identity(2), l.clone()).unwrap();
        let (f, a) = l.fixed_and_antifixed(&id).unwrap();
        assert_eq!((f.rank(), a.rank()), (2, 0));
        let neg = Isometry::new(IntMat::identity(2).scale(&BigInt::from(-1)), l.clone()).unwrap();
        let (f, a) = l.fixed_and_antifixed(&neg).unwrap();
        assert_eq!((f.rank(), a.rank()), (0, 2));
    }

    #[test]
    fn non_involution_rejected() {
        // 4-cycle of basis vectors on U + U: an isometry of order 4
        let l = u().direct_sum(&u());
        let m = IntMat::from_rows(&[
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
        ]);
        let iso = Isometry::new(m, l.clone()).unwrap();
        assert!(!iso.is_involution());
        assert_eq!(l.fixed_and_antifixed(&iso), Err(LatticeError::NotInvolution));
    }

    #[test]
    fn verify_isometry_basics() {
        assert!(verify_isometry(&IntMat::identity(2), &u(), &u()).unwrap());
        let det2 = IntMat::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(!verify_isometry(&det2, &u(), &u()).unwrap());
        assert_eq!(
            verify_isometry(&IntMat::identity(2), &u(), &e8()),
            Err(LatticeError::RankMismatch)
        );
    }
}
