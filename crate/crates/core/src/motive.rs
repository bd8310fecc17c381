//! Symbolic motive calculus: formal direct sums of Unit, Lefschetz powers
//! and transcendental atoms; the two-element involution algebra with its
//! idempotent splitting; valence composition and the induced trichotomy.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::sync::RwLock;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MotiveError {
    #[error("RankOutOfRange: rho = {0}, expected 1..=20")]
    RankOutOfRange(i64),
    #[error("NoValence")]
    NoValence,
    #[error("ValenceNotUnique: p_g = 0 admits two valences for the diagonal")]
    ValenceNotUnique,
    #[error("InconsistentValence: {0}")]
    InconsistentValence(String),
}

/// Atom of a formal motive expression.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MotiveAtom {
    Unit,
    /// Lefschetz power `L^k`, `k >= 1`.
    Lef(u32),
    /// Transcendental atom with a surface label and `dim = b2 - rho`.
    T2 { label: String, dim: u32 },
}

/// Formal direct sum of atoms, kept in sorted normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotiveExpr {
    atoms: Vec<MotiveAtom>,
}

impl MotiveExpr {
    pub fn new(mut atoms: Vec<MotiveAtom>) -> Self {
        atoms.sort();
        MotiveExpr { atoms }
    }

    pub fn atoms(&self) -> &[MotiveAtom] {
        &self.atoms
    }

    pub fn lef_count(&self, k: u32) -> usize {
        self.atoms
            .iter()
            .filter(|a| matches!(a, MotiveAtom::Lef(p) if *p == k))
            .count()
    }

    pub fn t2_atoms(&self) -> Vec<&MotiveAtom> {
        self.atoms
            .iter()
            .filter(|a| matches!(a, MotiveAtom::T2 { .. }))
            .collect()
    }

    /// Graded Betti dimensions `[h0, h1, h2, h3, h4]`.
    pub fn betti_dims(&self) -> [u32; 5] {
        let mut dims = [0u32; 5];
        for atom in &self.atoms {
            match atom {
                MotiveAtom::Unit => dims[0] += 1,
                MotiveAtom::Lef(k) => {
                    let deg = (2 * k) as usize;
                    if deg < 5 {
                        dims[deg] += 1;
                    }
                }
                MotiveAtom::T2 { dim, .. } => dims[2] += dim,
            }
        }
        dims
    }

    /// Blow-up at 8 points: adds eight `L` summands, `t_2` unchanged.
    pub fn blowup_8(&self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend(std::iter::repeat(MotiveAtom::Lef(1)).take(8));
        Self::new(atoms)
    }
}

/// Refined Chow-Kunneth shape of a K3 motive with Picard rank `rho`:
/// `1 + L^{+rho} + t2(22 - rho) + L^2`.
pub fn chow_kunneth_k3(rho: i64, label: &str) -> Result<MotiveExpr, MotiveError> {
    if !(1..=20).contains(&rho) {
        return Err(MotiveError::RankOutOfRange(rho));
    }
    let mut atoms = vec![MotiveAtom::Unit, MotiveAtom::Lef(2)];
    atoms.extend(std::iter::repeat(MotiveAtom::Lef(1)).take(rho as usize));
    atoms.push(MotiveAtom::T2 {
        label: label.to_string(),
        dim: (22 - rho) as u32,
    });
    Ok(MotiveExpr::new(atoms))
}

/// Numerical invariants of a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    pub rho: i64,
    pub q: u32,
    pub p_g: u32,
    pub b2: u32,
    pub e: u32,
}

impl SurfaceData {
    pub fn k3(rho: i64) -> Result<Self, MotiveError> {
        if !(1..=20).contains(&rho) {
            return Err(MotiveError::RankOutOfRange(rho));
        }
        Ok(SurfaceData {
            rho,
            q: 0,
            p_g: 1,
            b2: 22,
            e: 24,
        })
    }
}

/// A registered fact with its provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisteredFact {
    pub fact: String,
    pub subjects: Vec<String>,
    pub citation: String,
}

/// Store of registered identification facts. Reads are concurrent,
/// writes exclusive.
#[derive(Debug, Default)]
pub struct FactStore {
    facts: RwLock<Vec<RegisteredFact>>,
}

impl FactStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&self, fact: RegisteredFact) {
        self.facts.write().expect("fact store poisoned").push(fact);
    }

    pub fn register_t2_isomorphism(&self, label_a: &str, label_b: &str, citation: &str) {
        self.register(RegisteredFact {
            fact: "t2_isomorphism".into(),
            subjects: vec![label_a.to_string(), label_b.to_string()],
            citation: citation.to_string(),
        });
    }

    pub fn has_t2_isomorphism(&self, label_a: &str, label_b: &str) -> bool {
        if label_a == label_b {
            return true;
        }
        self.facts
            .read()
            .expect("fact store poisoned")
            .iter()
            .any(|f| {
                f.fact == "t2_isomorphism"
                    && ((f.subjects.first().map(String::as_str) == Some(label_a)
                        && f.subjects.get(1).map(String::as_str) == Some(label_b))
                        || (f.subjects.first().map(String::as_str) == Some(label_b)
                            && f.subjects.get(1).map(String::as_str) == Some(label_a)))
            })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&*self.facts.read().expect("fact store poisoned"))
            .expect("facts serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, serde_json::Error> {
        let facts: Vec<RegisteredFact> = serde_json::from_value(value.clone())?;
        Ok(FactStore {
            facts: RwLock::new(facts),
        })
    }
}

/// Normal-form equality, with `T2` atoms matching only when their dims agree
/// and an identification fact has been registered for their labels.
pub fn motives_isomorphic(m1: &MotiveExpr, m2: &MotiveExpr, facts: &FactStore) -> bool {
    if m1.atoms.len() != m2.atoms.len() {
        return false;
    }
    m1.atoms.iter().zip(m2.atoms.iter()).all(|(a, b)| match (a, b) {
        (
            MotiveAtom::T2 { label: la, dim: da },
            MotiveAtom::T2 { label: lb, dim: db },
        ) => da == db && facts.has_t2_isomorphism(la, lb),
        (a, b) => a == b,
    })
}

/// Element `c1 * [xi] + ca * alpha` of the algebra with `alpha^2 = [xi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionAlgebraElement {
    pub c1: BigRational,
    pub ca: BigRational,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

impl InvolutionAlgebraElement {
    pub fn new(c1: BigRational, ca: BigRational) -> Self {
        InvolutionAlgebraElement { c1, ca }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    /// The identity `[xi]`.
    pub fn xi() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    /// The involution generator `alpha`.
    pub fn alpha() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// `p+ = ([xi] + alpha)/2`.
    pub fn p_plus() -> Self {
        Self::new(half(), half())
    }

    /// `p- = ([xi] - alpha)/2`.
    pub fn p_minus() -> Self {
        Self::new(half(), -half())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.c1 + &other.c1, &self.ca + &other.ca)
    }

    /// `(a + b alpha)(c + d alpha) = (ac + bd) + (ad + bc) alpha`.
    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.c1 * &other.c1 + &self.ca * &other.ca,
            &self.c1 * &other.ca + &self.ca * &other.c1,
        )
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }
}

/// Pushforward to the quotient side: `c1 [xi] + ca alpha -> 2 (c1 + ca) [eta]`.
/// Returns the coefficient of `[eta]`.
pub fn push(x: &InvolutionAlgebraElement) -> BigRational {
    BigRational::from_integer(BigInt::from(2)) * (&x.c1 + &x.ca)
}

/// Pullback from the quotient side: `c [eta] -> c ([xi] + alpha)`.
pub fn pull(c: &BigRational) -> InvolutionAlgebraElement {
    InvolutionAlgebraElement::new(c.clone(), c.clone())
}

/// `v(T o T') = -v(T) v(T')`.
pub fn valence_compose(
    v1: &Option<BigRational>,
    v2: &Option<BigRational>,
) -> Result<BigRational, MotiveError> {
    match (v1, v2) {
        (Some(a), Some(b)) => Ok(-(a * b)),
        _ => Err(MotiveError::NoValence),
    }
}

/// A projector with a valence has valence 0 or -1.
pub fn projector_valence_check(v: &BigRational) -> bool {
    v.is_zero() || *v == -BigRational::one()
}

/// Outcome of the valence criterion for an involution quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ValenceOutcome {
    /// `t2` of the quotient vanishes.
    T2QuotientZero,
    /// `t2` maps isomorphically to the quotient.
    T2Isomorphism,
}

/// Valence criterion: for `p_g > 0`, valence `+1` of the involution graph
/// kills `t2` of the quotient and `-1` gives an isomorphism.
pub fn theorem1_decide(v_gamma: &BigRational, p_g: u32) -> Result<ValenceOutcome, MotiveError> {
    if p_g == 0 {
        return Err(MotiveError::ValenceNotUnique);
    }
    if *v_gamma == BigRational::one() {
        Ok(ValenceOutcome::T2QuotientZero)
    } else if *v_gamma == -BigRational::one() {
        Ok(ValenceOutcome::T2Isomorphism)
    } else {
        Err(MotiveError::InconsistentValence(v_gamma.to_string()))
    }
}

/// How the involution acts on the identity of `End(t2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InvolutionAction {
    PlusOne,
    MinusOne,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrichotomyOutcome {
    Isomorphism,
    QuotientZero,
    ProperSummand,
}

/// The idempotent splitting forces exactly three cases.
pub fn corollary1_trichotomy(action: InvolutionAction) -> TrichotomyOutcome {
    match action {
        InvolutionAction::PlusOne => TrichotomyOutcome::Isomorphism,
        InvolutionAction::MinusOne => TrichotomyOutcome::QuotientZero,
        InvolutionAction::Mixed => TrichotomyOutcome::ProperSummand,
    }
}

/// Severi indices of a correspondence: additive, swapped by transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedCorrespondence {
    pub valence: Option<BigRational>,
    pub indices: Option<(i64, i64)>,
}

impl ValuedCorrespondence {
    pub fn formal_sum(&self, other: &Self) -> Self {
        ValuedCorrespondence {
            valence: match (&self.valence, &other.valence) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
            indices: match (self.indices, other.indices) {
                (Some((a1, b1)), Some((a2, b2))) => Some((a1 + a2, b1 + b2)),
                _ => None,
            },
        }
    }

    pub fn transpose(&self) -> Self {
        ValuedCorrespondence {
            valence: self.valence.clone(),
            indices: self.indices.map(|(a, b)| (b, a)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn chow_kunneth_shapes() {
        let m = chow_kunneth_k3(9, "X").unwrap();
        assert_eq!(m.lef_count(1), 9);
        assert_eq!(m.lef_count(2), 1);
        assert_eq!(m.betti_dims(), [1, 0, 22, 0, 1]);
        let m20 = chow_kunneth_k3(20, "X").unwrap();
        let t2 = m20.t2_atoms();
        assert!(matches!(t2[0], MotiveAtom::T2 { dim: 2, .. }));
        assert!(matches!(
            chow_kunneth_k3(0, "X"),
            Err(MotiveError::RankOutOfRange(0))
        ));
        assert!(matches!(
            chow_kunneth_k3(21, "X"),
            Err(MotiveError::RankOutOfRange(21))
        ));
    }

    #[test]
    fn betti_and_blowup() {
        assert_eq!(MotiveExpr::new(vec![MotiveAtom::Unit]).betti_dims(), [1, 0, 0, 0, 0]);
        let m = chow_kunneth_k3(9, "X").unwrap();
        let b = m.blowup_8();
        assert_eq!(b.lef_count(1), 17);
        assert_eq!(b.betti_dims(), [1, 0, 30, 0, 1]);
        assert_eq!(b.betti_dims().iter().sum::<u32>(), 32);
        assert_eq!(b.blowup_8().lef_count(1), 25);
        // t2 untouched by blow-ups
        assert_eq!(m.t2_atoms(), b.t2_atoms());
    }

    #[test]
    fn isomorphism_needs_registered_fact() {
        let x = chow_kunneth_k3(10, "X").unwrap();
        let y = chow_kunneth_k3(10, "Y").unwrap();
        let facts = FactStore::new();
        assert!(!motives_isomorphic(&x, &y, &facts));
        facts.register_t2_isomorphism("X", "Y", "Thm 3");
        assert!(motives_isomorphic(&x, &y, &facts));
        // a missing Lefschetz atom breaks it regardless of facts
        let y9 = chow_kunneth_k3(9, "Y").unwrap();
        assert!(!motives_isomorphic(&x, &y9, &facts));
    }

    #[test]
    fn involution_algebra_relations() {
        let xi = InvolutionAlgebraElement::xi();
        let alpha = InvolutionAlgebraElement::alpha();
        assert_eq!(alpha.mul(&alpha), xi);
        let p = InvolutionAlgebraElement::p_plus();
        let q = InvolutionAlgebraElement::p_minus();
        assert!(p.is_idempotent());
        assert!(q.is_idempotent());
        assert_eq!(p.mul(&q), InvolutionAlgebraElement::zero());
        assert_eq!(p.add(&q), xi);
    }

    #[test]
    fn push_pull_formulas() {
        let xi = InvolutionAlgebraElement::xi();
        let alpha = InvolutionAlgebraElement::alpha();
        assert_eq!(push(&xi), rat(2));
        assert_eq!(push(&alpha), rat(2));
        assert_eq!(push(&InvolutionAlgebraElement::p_minus()), rat(0));
        assert_eq!(pull(&rat(1)), InvolutionAlgebraElement::new(rat(1), rat(1)));
        // pull(push([xi])) = 2 [xi] + 2 alpha
        assert_eq!(
            pull(&push(&xi)),
            InvolutionAlgebraElement::new(rat(2), rat(2))
        );
        // push(pull([eta])) = 4 [eta]
        assert_eq!(push(&pull(&rat(1))), rat(4));
    }

    #[test]
    fn valence_rules() {
        let m1 = Some(rat(-1));
        assert_eq!(valence_compose(&m1, &m1).unwrap(), rat(-1));
        assert_eq!(valence_compose(&Some(rat(1)), &Some(rat(1))).unwrap(), rat(-1));
        assert_eq!(valence_compose(&Some(rat(0)), &Some(rat(5))).unwrap(), rat(0));
        assert!(valence_compose(&None, &m1).is_err());
        assert!(projector_valence_check(&rat(0)));
        assert!(projector_valence_check(&rat(-1)));
        assert!(!projector_valence_check(&BigRational::new(
            BigInt::one(),
            BigInt::from(2)
        )));
    }

    #[test]
    fn decide_and_trichotomy_agree() {
        assert_eq!(
            theorem1_decide(&rat(1), 1).unwrap(),
            ValenceOutcome::T2QuotientZero
        );
        assert_eq!(
            theorem1_decide(&rat(-1), 1).unwrap(),
            ValenceOutcome::T2Isomorphism
        );
        assert!(matches!(
            theorem1_decide(&rat(-1), 0),
            Err(MotiveError::ValenceNotUnique)
        ));
        assert!(matches!(
            theorem1_decide(&rat(2), 1),
            Err(MotiveError::InconsistentValence(_))
        ));
        // v = -1 corresponds to the +1 action, v = +1 to the -1 action
        assert_eq!(
            corollary1_trichotomy(InvolutionAction::PlusOne),
            TrichotomyOutcome::Isomorphism
        );
        assert_eq!(
            corollary1_trichotomy(InvolutionAction::MinusOne),
            TrichotomyOutcome::QuotientZero
        );
        assert_eq!(
            corollary1_trichotomy(InvolutionAction::Mixed),
            TrichotomyOutcome::ProperSummand
        );
    }

    #[test]
    fn indices_additive_and_transposed() {
        let a = ValuedCorrespondence {
            valence: Some(rat(1)),
            indices: Some((2, 3)),
        };
        let b = ValuedCorrespondence {
            valence: Some(rat(-1)),
            indices: Some((1, 1)),
        };
        let s = a.formal_sum(&b);
        assert_eq!(s.indices, Some((3, 4)));
        assert_eq!(s.valence, Some(rat(0)));
        assert_eq!(a.transpose().indices, Some((3, 2)));
    }
}
