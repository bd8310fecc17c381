//! The rank-22 model `U^3 + E8(-1) + E8(-1)` with the block-swap involution,
//! the Euler/trace balance for a symplectic involution, and the trace split
//! of the Neron-Severi action.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::lattice::{verify_isometry, Isometry, Lattice, LatticeError, StandardLattice};
use crate::matrix::IntMat;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum NikulinError {
    #[error("NonIntegralBalance: {0} is odd")]
    NonIntegralBalance(i64),
    #[error("RankOutOfRange: rho = {0}, expected 9..=20")]
    RankOutOfRange(i64),
    #[error("ForbiddenEvenSet: k = {0}, expected 0, 8 or 16")]
    ForbiddenEvenSet(i64),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `U^3 + E8(-1)^2` with the involution fixing the `U^3` block and swapping
/// the two `E8(-1)` blocks.
#[derive(Debug, Clone)]
pub struct K3CohomologyModel {
    pub lattice: Lattice,
    pub swap: Isometry,
}

/// Verification flags for the two invariant-sublattice isomorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantLatticeCheck {
    pub fixed_ok: bool,
    pub antifixed_ok: bool,
    pub fixed_rank: usize,
    pub antifixed_rank: usize,
}

/// Trace split of an involution acting on the rank-rho algebraic part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsTraceDecomposition {
    pub r: i64,
    pub ns_trace: i64,
    pub tr_trace: i64,
    pub total: i64,
}

/// Outcome of the even-set count on a quotient surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvenSetBranch {
    Trivial,
    NikulinQuotientK3,
    KummerOfAbelian,
}

/// Block order is fixed as U,U,U,E8(-1),E8(-1); the swap matrix depends on it.
pub fn build_model() -> Result<K3CohomologyModel, NikulinError> {
    let u = Lattice::standard(StandardLattice::U)?;
    let e8m1 = Lattice::standard(StandardLattice::E8Minus1)?;
    let lattice = u
        .direct_sum(&u)
        .direct_sum(&u)
        .direct_sum(&e8m1)
        .direct_sum(&e8m1);
    let mut m = IntMat::zeros(22, 22);
    for i in 0..6 {
        m[(i, i)] = BigInt::from(1);
    }
    for i in 0..8 {
        m[(6 + i, 14 + i)] = BigInt::from(1);
        m[(14 + i, 6 + i)] = BigInt::from(1);
    }
    let swap = Isometry::new(m, lattice.clone())?;
    Ok(K3CohomologyModel { lattice, swap })
}

/// Certify the fixed sublattice as `U^3 + E8(-2)` and the antifixed one as
/// `E8(-2)`, by explicit diagonal/antidiagonal witness bases.
pub fn verify_invariant_lattices(
    model: &K3CohomologyModel,
) -> Result<InvariantLatticeCheck, NikulinError> {
    let (fixed, antifixed) = model.lattice.fixed_and_antifixed(&model.swap)?;

    // expected fixed basis: e1..e6 and (0^6, r, r)
    let mut fixed_basis = IntMat::zeros(14, 22);
    for i in 0..6 {
        fixed_basis[(i, i)] = BigInt::from(1);
    }
    for i in 0..8 {
        fixed_basis[(6 + i, 6 + i)] = BigInt::from(1);
        fixed_basis[(6 + i, 14 + i)] = BigInt::from(1);
    }
    let fixed_witness = model.lattice.sublattice(fixed_basis)?;

    // expected antifixed basis: (0^6, r, -r)
    let mut anti_basis = IntMat::zeros(8, 22);
    for i in 0..8 {
        anti_basis[(i, 6 + i)] = BigInt::from(1);
        anti_basis[(i, 14 + i)] = BigInt::from(-1);
    }
    let anti_witness = model.lattice.sublattice(anti_basis)?;

    let u = Lattice::standard(StandardLattice::U)?;
    let e8m2 = Lattice::standard(StandardLattice::E8)?.twist(-2)?;
    let fixed_target = u.direct_sum(&u).direct_sum(&u).direct_sum(&e8m2);

    // the witness basis must span exactly the computed kernel, and its
    // induced Gram must equal the target Gram on the nose
    let fixed_ok = fixed.same_span(&fixed_witness)
        && fixed_witness.induced_gram() == *fixed_target.gram()
        && verify_isometry(
            &IntMat::identity(14),
            &fixed_witness.induced_lattice()?,
            &fixed_target,
        )?;
    let antifixed_ok = antifixed.same_span(&anti_witness)
        && anti_witness.induced_gram() == *e8m2.gram()
        && verify_isometry(
            &IntMat::identity(8),
            &anti_witness.induced_lattice()?,
            &e8m2,
        )?;

    Ok(InvariantLatticeCheck {
        fixed_ok,
        antifixed_ok,
        fixed_rank: fixed.rank(),
        antifixed_rank: antifixed.rank(),
    })
}

/// Solve `e(X) + t + 2 + 2k = 2 e(Y)` for `e(Y)`.
pub fn euler_balance_solve(e_x: i64, t: i64, k: u32) -> Result<i64, NikulinError> {
    let total = e_x + t + 2 + 2 * k as i64;
    if total % 2 != 0 {
        return Err(NikulinError::NonIntegralBalance(total));
    }
    Ok(total / 2)
}

/// Trace bookkeeping for an involution with `rho` in `9..=20`: `r = rho - 8`
/// invariant divisor classes, trace `rho - 16` on the algebraic part,
/// identity (trace `22 - rho`) on the transcendental part.
pub fn ns_trace_decomposition(rho: i64) -> Result<NsTraceDecomposition, NikulinError> {
    if !(9..=20).contains(&rho) {
        return Err(NikulinError::RankOutOfRange(rho));
    }
    let ns_trace = rho - 16;
    let tr_trace = 22 - rho;
    Ok(NsTraceDecomposition {
        r: rho - 8,
        ns_trace,
        tr_trace,
        total: ns_trace + tr_trace,
    })
}

/// Classify an even set of `k` disjoint rational curves; only 0, 8, 16 occur.
pub fn even_set_branch(k: i64) -> Result<EvenSetBranch, NikulinError> {
    match k {
        0 => Ok(EvenSetBranch::Trivial),
        8 => Ok(EvenSetBranch::NikulinQuotientK3),
        16 => Ok(EvenSetBranch::KummerOfAbelian),
        other => Err(NikulinError::ForbiddenEvenSet(other)),
    }
}
