//! Neron-Severi classification for a rank-9 lattice `Z L + E8(-2)`:
//! candidate lattices per the `L^2 mod 4` branch and construction of the
//! index-2 overlattice from an explicit glue vector.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::lattice::{Lattice, LatticeError, StandardLattice, Sublattice};
use crate::matrix::IntMat;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum NsClassError {
    #[error("BadPolarization: d = {0}, expected d >= 1")]
    BadPolarization(i64),
    #[error("GlueNotFound: no vector with v^2 = -2d mod 8 within |v^2| <= 2d")]
    GlueNotFound,
    #[error("OddPolarization: d = {0}, the overlattice needs d even")]
    OddPolarization(i64),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The candidate Neron-Severi lattices for a polarization of degree `2d`.
#[derive(Debug, Clone)]
pub struct NsCandidateSet {
    pub d: i64,
    pub candidates: Vec<Lattice>,
    /// Glue vector in E8 root-basis coordinates, when the overlattice exists.
    pub glue_vector: Option<Vec<i64>>,
}

/// Result of the glue-vector search for even `d`.
#[derive(Debug, Clone)]
pub struct GlueExtension {
    /// Coordinates of `v` in the E8 root basis.
    pub glue: Vec<i64>,
    /// `v^2` in `E8(-2)`.
    pub glue_norm: i64,
    /// `((L+v)/2)^2` in the overlattice.
    pub half_class_norm: i64,
    pub overlattice: Lattice,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NsReport {
    pub d: i64,
    pub candidate_count: usize,
    pub determinants: Vec<String>,
    pub glue_vector: Option<Vec<i64>>,
    pub glue_norm: Option<i64>,
}

/// `Lambda_2d = Z L + E8(-2)` with `L^2 = 2d`.
pub fn lambda_2d(d: i64) -> Result<Lattice, NsClassError> {
    if d < 1 {
        return Err(NsClassError::BadPolarization(d));
    }
    let l = Lattice::standard(StandardLattice::Rank1(2 * d))?;
    let e8m2 = Lattice::standard(StandardLattice::E8)?.twist(-2)?;
    Ok(l.direct_sum(&e8m2))
}

/// One candidate when `2d = 2 mod 4`, two when `2d = 0 mod 4`.
pub fn ns_candidates(d: i64) -> Result<NsCandidateSet, NsClassError> {
    let base = lambda_2d(d)?;
    if d % 2 != 0 {
        return Ok(NsCandidateSet {
            d,
            candidates: vec![base],
            glue_vector: None,
        });
    }
    let ext = find_glue_and_extend(d)?;
    Ok(NsCandidateSet {
        d,
        candidates: vec![base, ext.overlattice],
        glue_vector: Some(ext.glue),
    })
}

/// Search `E8(-2)` for a glue vector `v` with `v^2 = -2d mod 8`, minimal
/// `|v^2|`, lexicographically first in root-basis coordinates, and build the
/// even index-2 overlattice on the basis `{(L+v)/2, E8(-2) root basis}`.
pub fn find_glue_and_extend(d: i64) -> Result<GlueExtension, NsClassError> {
    if d < 1 {
        return Err(NsClassError::BadPolarization(d));
    }
    if d % 2 != 0 {
        return Err(NsClassError::OddPolarization(d));
    }
    let e8 = Lattice::standard(StandardLattice::E8)?;
    // v^2 = -2q with q the E8 norm; v^2 = -2d (mod 8) iff q = d (mod 4)
    let residue = d.rem_euclid(4);
    let mut target = if residue == 0 { 4 } else { residue };
    let glue = loop {
        if target > d {
            return Err(NsClassError::GlueNotFound);
        }
        let mut hits = enumerate_by_norm(e8.gram(), target);
        if !hits.is_empty() {
            hits.sort();
            break hits.swap_remove(0);
        }
        target += 4;
    };
    let q = target;

    // overlattice Gram on {(L+v)/2, r_1..r_8}
    let e8m2 = e8.twist(-2)?;
    let mut gram = IntMat::zeros(9, 9);
    gram[(0, 0)] = BigInt::from((d - q) / 2);
    let v_mat = IntMat::from_rows(&[glue.clone()]);
    let pairings = v_mat.mul(e8.gram()); // (v . r_j) in E8
    for j in 0..8 {
        let p = -pairings[(0, j)].clone();
        gram[(0, j + 1)] = p.clone();
        gram[(j + 1, 0)] = p;
        for k in 0..8 {
            gram[(j + 1, k + 1)] = e8m2.gram()[(j, k)].clone();
        }
    }
    let overlattice = Lattice::new(gram)?;
    Ok(GlueExtension {
        glue,
        glue_norm: -2 * q,
        half_class_norm: (d - q) / 2,
        overlattice,
    })
}

/// `true` iff the sublattice is primitive (saturated) in its ambient.
pub fn verify_primitive(sub: &Sublattice) -> bool {
    sub.saturate().same_span(sub)
}

/// The copy of `E8(-2)` inside an overlattice built by
/// [`find_glue_and_extend`]: basis vectors 2..=9.
pub fn e8_sublattice_of_overlattice(over: &Lattice) -> Result<Sublattice, NsClassError> {
    let mut basis = IntMat::zeros(8, 9);
    for i in 0..8 {
        basis[(i, i + 1)] = BigInt::one();
    }
    Ok(over.sublattice(basis)?)
}

/// `Lambda_2d` expressed in overlattice coordinates: `L = 2 b_0 - v`,
/// roots unchanged. The determinant of this change of basis is the index.
pub fn lambda_in_overlattice(d: i64, glue: &[i64]) -> Result<Sublattice, NsClassError> {
    let ext_gram_holder = find_glue_and_extend(d)?;
    let over = &ext_gram_holder.overlattice;
    let mut basis = IntMat::zeros(9, 9);
    basis[(0, 0)] = BigInt::from(2);
    for (j, &c) in glue.iter().enumerate() {
        basis[(0, j + 1)] = BigInt::from(-c);
    }
    for i in 0..8 {
        basis[(i + 1, i + 1)] = BigInt::one();
    }
    Ok(over.sublattice(basis)?)
}

pub fn report(d: i64) -> Result<NsReport, NsClassError> {
    let set = ns_candidates(d)?;
    let glue_norm = set.glue_vector.as_ref().map(|v| {
        let m = IntMat::from_rows(&[v.clone()]);
        let e8m2 = Lattice::standard(StandardLattice::E8)
            .and_then(|l| l.twist(-2))
            .expect("standard lattice");
        let n = m.mul(e8m2.gram()).mul(&m.transpose());
        let s: BigInt = n[(0, 0)].clone();
        i64::try_from(s).expect("small norm")
    });
    Ok(NsReport {
        d,
        candidate_count: set.candidates.len(),
        determinants: set.candidates.iter().map(|l| l.det().to_string()).collect(),
        glue_vector: set.glue_vector,
        glue_norm,
    })
}

/// All integer vectors of exact norm `target` for a positive definite Gram
/// matrix, by exact-rational Fincke-Pohst enumeration.
fn enumerate_by_norm(gram: &IntMat, target: i64) -> Vec<Vec<i64>> {
    let n = gram.nrows();
    let bound = BigRational::from_integer(BigInt::from(target));
    // rational Cholesky: q(x) = sum_i d[i] * (x_i + sum_{j>i} c[i][j] x_j)^2
    let mut q: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(gram[(i, j)].clone()))
                .collect()
        })
        .collect();
    let mut d = vec![BigRational::zero(); n];
    let mut c = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        d[i] = q[i][i].clone();
        assert!(d[i].is_positive(), "form must be positive definite");
        for j in i + 1..n {
            c[i][j] = &q[i][j] / &d[i];
        }
        for k in i + 1..n {
            for l in i + 1..n {
                let delta = &q[i][k] * &q[i][l] / &d[i];
                q[k][l] = &q[k][l] - delta;
            }
        }
    }

    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    enumerate_level(
        n,
        (n - 1) as isize,
        &d,
        &c,
        &bound,
        &BigRational::zero(),
        &mut x,
        &mut out,
    );
    let target_big = BigInt::from(target);
    out.retain(|v| {
        let m = IntMat::from_rows(&[v.clone()]);
        m.mul(gram).mul(&m.transpose())[(0, 0)] == target_big
    });
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate_level(
    n: usize,
    level: isize,
    d: &[BigRational],
    c: &[Vec<BigRational>],
    budget: &BigRational,
    _spent: &BigRational,
    x: &mut Vec<BigInt>,
    out: &mut Vec<Vec<i64>>,
) {
    if level < 0 {
        if x.iter().any(|v| !v.is_zero()) {
            out.push(x.iter().map(|v| i64::try_from(v).expect("small coord")).collect());
        }
        return;
    }
    let i = level as usize;
    // center u = sum_{j>i} c[i][j] x_j
    let mut u = BigRational::zero();
    for j in i + 1..n {
        u = u + &c[i][j] * BigRational::from_integer(x[j].clone());
    }
    let cost = |xi: &BigInt| -> BigRational {
        let t = BigRational::from_integer(xi.clone()) + &u;
        &d[i] * &t * &t
    };
    let start = (-&u).floor().to_integer();
    // scan the contiguous feasible interval around -u in both directions
    let mut xi = start.clone();
    loop {
        let spent = cost(&xi);
        if &spent > budget {
            break;
        }
        x[i] = xi.clone();
        let rest = budget - &spent;
        enumerate_level(n, level - 1, d, c, &rest, &spent, x, out);
        xi -= 1;
    }
    let mut xi = &start + 1;
    loop {
        let spent = cost(&xi);
        if &spent > budget {
            break;
        }
        x[i] = xi.clone();
        let rest = budget - &spent;
        enumerate_level(n, level - 1, d, c, &rest, &spent, x, out);
        xi += 1;
    }
    x[i] = BigInt::zero();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_basics() {
        let l = lambda_2d(1).unwrap();
        assert_eq!(l.det().abs(), BigInt::from(512));
        assert!(l.is_even());
        let l = lambda_2d(3).unwrap();
        assert_eq!(l.det().abs(), BigInt::from(1536));
        assert_eq!(l.signature().unwrap(), (1, 8));
        assert!(matches!(lambda_2d(0), Err(NsClassError::BadPolarization(0))));
    }

    #[test]
    fn candidate_counts_follow_parity() {
        assert_eq!(ns_candidates(1).unwrap().candidates.len(), 1);
        assert_eq!(ns_candidates(2).unwrap().candidates.len(), 2);
        assert_eq!(ns_candidates(3).unwrap().candidates.len(), 1);
    }

    #[test]
    fn root_count_of_e8_is_240() {
        let e8 = Lattice::standard(StandardLattice::E8).unwrap();
        assert_eq!(enumerate_by_norm(e8.gram(), 2).len(), 240);
    }

    #[test]
    fn d2_reproduces_the_square_zero_half_class() {
        let ext = find_glue_and_extend(2).unwrap();
        assert_eq!(ext.glue_norm, -4);
        assert_eq!(ext.half_class_norm, 0);
        assert!(ext.overlattice.is_even());
        assert_eq!(ext.overlattice.det().abs(), BigInt::from(256));
    }

    #[test]
    fn d4_glue() {
        let ext = find_glue_and_extend(4).unwrap();
        assert_eq!(ext.glue_norm, -8);
        assert_eq!(ext.half_class_norm, 0);
        assert_eq!(ext.overlattice.det().abs(), BigInt::from(512));
    }

    #[test]
    fn odd_d_rejected_for_extension() {
        assert!(matches!(
            find_glue_and_extend(3),
            Err(NsClassError::OddPolarization(3))
        ));
    }

    #[test]
    fn e8_primitive_in_overlattice() {
        let ext = find_glue_and_extend(2).unwrap();
        let sub = e8_sublattice_of_overlattice(&ext.overlattice).unwrap();
        assert!(verify_primitive(&sub));
        // doubled roots are visibly non-primitive
        let e8m2 = Lattice::standard(StandardLattice::E8)
            .unwrap()
            .twist(-2)
            .unwrap();
        let doubled = e8m2
            .sublattice(IntMat::identity(8).scale(&BigInt::from(2)))
            .unwrap();
        assert!(!verify_primitive(&doubled));
    }

    #[test]
    fn index_two_containment() {
        let ext = find_glue_and_extend(2).unwrap();
        let lam = lambda_in_overlattice(2, &ext.glue).unwrap();
        assert_eq!(lam.basis().det_bareiss().abs(), BigInt::from(2));
        // the embedded copy carries the Lambda_2d Gram
        assert_eq!(lam.induced_gram(), *lambda_2d(2).unwrap().gram());
    }

    #[test]
    fn glue_determinism() {
        let a = find_glue_and_extend(2).unwrap();
        let b = find_glue_and_extend(2).unwrap();
        assert_eq!(a.glue, b.glue);
    }
}
