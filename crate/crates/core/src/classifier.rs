//! Forward-chaining rule engine over surface descriptors. Each rule encodes
//! one theorem-level implication; derivations carry rule ids, citations, and
//! acyclic provenance back to descriptor fields, assumptions, or earlier
//! facts.

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ClassifierError {
    #[error("Inconsistent: {constraint} ({citation})")]
    Inconsistent { constraint: String, citation: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfaceKind {
    K3,
    GeneralType,
    Abelian,
    Kummer,
    Enriques,
    Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Feature {
    NikulinInvolution,
    NonSymplecticInvolution { fixed_locus_empty: bool },
    NonSymplecticTrivialGroup { m: u32, unimodular: bool },
    EllipticWithTwoTorsionSection,
    InvariantThreeQuadrics,
    EvenSet(u32),
    ShiodaInose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Assumption {
    FiniteDimensional,
    ValenceExists,
    IdentityOnZeroCycles,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDescriptor {
    pub kind: SurfaceKind,
    #[serde(default)]
    pub rho: Option<u32>,
    #[serde(default)]
    pub pg: Option<u32>,
    #[serde(default)]
    pub q: Option<u32>,
    #[serde(default)]
    pub features: Vec<Feature>,
    #[serde(default)]
    pub assumptions: Vec<Assumption>,
}

impl SurfaceDescriptor {
    pub fn k3() -> Self {
        Self {
            kind: SurfaceKind::K3,
            rho: None,
            pg: Some(1),
            q: Some(0),
            features: Vec::new(),
            assumptions: Vec::new(),
        }
    }

    pub fn with_rho(mut self, rho: u32) -> Self {
        self.rho = Some(rho);
        self
    }

    pub fn with_feature(mut self, f: Feature) -> Self {
        self.features.push(f);
        self
    }

    pub fn with_assumption(mut self, a: Assumption) -> Self {
        self.assumptions.push(a);
        self
    }

    fn has_feature(&self, f: &Feature) -> bool {
        self.features.contains(f)
    }

    fn has_assumption(&self, a: Assumption) -> bool {
        self.assumptions.contains(&a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    FiniteDimensional,
    AbelianSubcategory,
    MotiveIsoWithQuotient,
    T2IsoWithQuotient,
    FermatCover(u32),
    AllowedRhoSet(Vec<u32>),
    T2QuotientZero,
    NotT2Iso,
    QuotientKind(SurfaceKind),
    KummerQuotient,
    T2IsoAll,
    CoverHasNikulinInvolution,
    QuotientRhoEqualsRho,
    InvolutionTraceSix,
}

/// Where a fact came from: a descriptor field, a user assumption (hypothesis
/// provenance), or an earlier fact by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Premise {
    Field(String),
    Hypothesis(String),
    Fact(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub conclusion: Conclusion,
    pub rule_id: String,
    pub citation: String,
    pub premises: Vec<Premise>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub facts: Vec<Fact>,
    pub iterations: u32,
}

impl Derivation {
    pub fn has(&self, c: &Conclusion) -> bool {
        self.facts.iter().any(|f| &f.conclusion == c)
    }

    fn index_of(&self, c: &Conclusion) -> Option<usize> {
        self.facts.iter().position(|f| &f.conclusion == c)
    }
}

const CITE_THM2: &str =
    "Thm 2: a K3 surface with rho = 19 or 20 has a finite-dimensional motive lying in an \
     abelian subcategory of motives";
const CITE_THM3: &str =
    "Thm 3: if a K3 surface with a Nikulin involution has finite-dimensional motive, then \
     h(X) is isomorphic to h(Y) for the quotient Y";
const CITE_THM4: &str =
    "Thm 4: a valence for the involution, or triviality of its action on degree-zero \
     0-cycles, forces t2(X) isomorphic to t2(Y)";
const CITE_THM5: &str =
    "Thm 5: a K3 with trivially-acting non-symplectic group of order m != 3 is dominated \
     by the degree-n Fermat surface, n = m in the unimodular case and 2m otherwise, hence \
     finite dimensional";
const CITE_COR2: &str = "Cor 2: in that situation rho is one of 2, 4, 6, 10, 12, 16, 18, 20";
const CITE_REM3: &str =
    "Rem 3: for a non-symplectic involution t2 of the quotient vanishes and no t2 \
     isomorphism exists; the quotient is Enriques when the fixed locus is empty, rational \
     otherwise";
const CITE_THM7: &str =
    "Thm 7: the 2-isogeny involution of a general elliptic K3 with a 2-torsion section \
     (equally: three invariant quadrics) induces t2(X) isomorphic to t2(Y)";
const CITE_EVEN16: &str =
    "even-set count 16: the quotient is the Kummer surface of an abelian surface and \
     t2(A), t2(X), t2(Y) are all isomorphic and finite dimensional";
const CITE_EVEN8: &str =
    "even-set count 8: the double cover branched on the eight curves carries a Nikulin \
     involution";
const CITE_LEM2: &str =
    "Lem 2: the quotient satisfies rho(Y) = rho(X) and the involution has trace 6 on \
     degree-2 cohomology";
const CITE_EVEN_SET_RANGE: &str =
    "an even set of disjoint rational curves on a K3 surface has k = 0, 8 or 16";
const CITE_NIKULIN_RANK: &str = "a K3 surface with a Nikulin involution has rho >= 9";
const CITE_K3_INVARIANTS: &str = "a K3 surface has q = 0 and pg = 1";

fn check_consistency(d: &SurfaceDescriptor) -> Result<(), ClassifierError> {
    if d.kind == SurfaceKind::K3 {
        if d.q.map_or(false, |q| q != 0) || d.pg.map_or(false, |pg| pg != 1) {
            return Err(ClassifierError::Inconsistent {
                constraint: format!("kind K3 with q = {:?}, pg = {:?}", d.q, d.pg),
                citation: CITE_K3_INVARIANTS.to_string(),
            });
        }
        if d.has_feature(&Feature::NikulinInvolution) && d.rho.map_or(false, |r| r < 9) {
            return Err(ClassifierError::Inconsistent {
                constraint: format!("NikulinInvolution with rho = {}", d.rho.unwrap()),
                citation: CITE_NIKULIN_RANK.to_string(),
            });
        }
    }
    for f in &d.features {
        if let Feature::EvenSet(k) = f {
            if ![0, 8, 16].contains(k) {
                return Err(ClassifierError::Inconsistent {
                    constraint: format!("EvenSet({})", k),
                    citation: CITE_EVEN_SET_RANGE.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Run rules R1-R8 to a fixed point; each rule fires at most once.
pub fn classify(d: &SurfaceDescriptor) -> Result<Derivation, ClassifierError> {
    check_consistency(d)?;
    let is_k3 = d.kind == SurfaceKind::K3;
    let mut der = Derivation {
        facts: Vec::new(),
        iterations: 0,
    };
    let mut fired = [false; 8];

    for iteration in 1..=8u32 {
        der.iterations = iteration;
        let before = der.facts.len();

        // R1
        if !fired[0] && is_k3 && matches!(d.rho, Some(19) | Some(20)) {
            fired[0] = true;
            let prem = vec![
                Premise::Field("kind = K3".into()),
                Premise::Field(format!("rho = {}", d.rho.unwrap())),
            ];
            der.facts.push(Fact {
                conclusion: Conclusion::FiniteDimensional,
                rule_id: "R1".into(),
                citation: CITE_THM2.into(),
                premises: prem.clone(),
            });
            der.facts.push(Fact {
                conclusion: Conclusion::AbelianSubcategory,
                rule_id: "R1".into(),
                citation: CITE_THM2.into(),
                premises: prem,
            });
        }

        // R2: needs FiniteDimensional as assumption or derived fact
        if !fired[1] && is_k3 && d.has_feature(&Feature::NikulinInvolution) {
            let fd_premise = if d.has_assumption(Assumption::FiniteDimensional) {
                Some(Premise::Hypothesis("FiniteDimensional".into()))
            } else {
                der.index_of(&Conclusion::FiniteDimensional).map(Premise::Fact)
            };
            if let Some(fd) = fd_premise {
                fired[1] = true;
                der.facts.push(Fact {
                    conclusion: Conclusion::MotiveIsoWithQuotient,
                    rule_id: "R2".into(),
                    citation: CITE_THM3.into(),
                    premises: vec![
                        Premise::Field("kind = K3".into()),
                        Premise::Field("NikulinInvolution".into()),
                        fd,
                    ],
                });
            }
        }

        // R3
        if !fired[2]
            && is_k3
            && d.has_feature(&Feature::NikulinInvolution)
            && (d.has_assumption(Assumption::ValenceExists)
                || d.has_assumption(Assumption::IdentityOnZeroCycles))
        {
            fired[2] = true;
            let hyp = if d.has_assumption(Assumption::ValenceExists) {
                "ValenceExists"
            } else {
                "IdentityOnZeroCycles"
            };
            der.facts.push(Fact {
                conclusion: Conclusion::T2IsoWithQuotient,
                rule_id: "R3".into(),
                citation: CITE_THM4.into(),
                premises: vec![
                    Premise::Field("kind = K3".into()),
                    Premise::Field("NikulinInvolution".into()),
                    Premise::Hypothesis(hyp.into()),
                ],
            });
        }

        // R4
        if !fired[3] && is_k3 {
            let group = d.features.iter().find_map(|f| match f {
                Feature::NonSymplecticTrivialGroup { m, unimodular } => Some((*m, *unimodular)),
                _ => None,
            });
            if let Some((m, unimodular)) = group {
                if m != 3 {
                    let n = if unimodular { m } else { 2 * m };
                    if n >= 4 {
                        fired[3] = true;
                        let prem = vec![
                            Premise::Field("kind = K3".into()),
                            Premise::Field(format!(
                                "NonSymplecticTrivialGroup(m = {}, unimodular = {})",
                                m, unimodular
                            )),
                        ];
                        der.facts.push(Fact {
                            conclusion: Conclusion::FermatCover(n),
                            rule_id: "R4".into(),
                            citation: CITE_THM5.into(),
                            premises: prem.clone(),
                        });
                        der.facts.push(Fact {
                            conclusion: Conclusion::FiniteDimensional,
                            rule_id: "R4".into(),
                            citation: CITE_THM5.into(),
                            premises: prem.clone(),
                        });
                        der.facts.push(Fact {
                            conclusion: Conclusion::AllowedRhoSet(vec![
                                2, 4, 6, 10, 12, 16, 18, 20,
                            ]),
                            rule_id: "R4".into(),
                            citation: CITE_COR2.into(),
                            premises: prem,
                        });
                    }
                }
            }
        }

        // R5
        if !fired[4] && is_k3 {
            let ns = d.features.iter().find_map(|f| match f {
                Feature::NonSymplecticInvolution { fixed_locus_empty } => {
                    Some(*fixed_locus_empty)
                }
                _ => None,
            });
            if let Some(fixed_locus_empty) = ns {
                fired[4] = true;
                let prem = vec![
                    Premise::Field("kind = K3".into()),
                    Premise::Field(format!(
                        "NonSymplecticInvolution(fixed_locus_empty = {})",
                        fixed_locus_empty
                    )),
                ];
                let quotient = if fixed_locus_empty {
                    SurfaceKind::Enriques
                } else {
                    SurfaceKind::Rational
                };
                for conclusion in [
                    Conclusion::T2QuotientZero,
                    Conclusion::NotT2Iso,
                    Conclusion::QuotientKind(quotient),
                ] {
                    der.facts.push(Fact {
                        conclusion,
                        rule_id: "R5".into(),
                        citation: CITE_REM3.into(),
                        premises: prem.clone(),
                    });
                }
            }
        }

        // R6
        if !fired[5]
            && is_k3
            && (d.has_feature(&Feature::EllipticWithTwoTorsionSection)
                || d.has_feature(&Feature::InvariantThreeQuadrics))
        {
            fired[5] = true;
            let which = if d.has_feature(&Feature::EllipticWithTwoTorsionSection) {
                "EllipticWithTwoTorsionSection"
            } else {
                "InvariantThreeQuadrics"
            };
            der.facts.push(Fact {
                conclusion: Conclusion::T2IsoWithQuotient,
                rule_id: "R6".into(),
                citation: CITE_THM7.into(),
                premises: vec![
                    Premise::Field("kind = K3".into()),
                    Premise::Field(which.into()),
                ],
            });
        }

        // R7 (the k not in {0,8,16} branch is rejected up front)
        if !fired[6] {
            let even = d.features.iter().find_map(|f| match f {
                Feature::EvenSet(k) => Some(*k),
                _ => None,
            });
            match even {
                Some(16) => {
                    fired[6] = true;
                    let prem = vec![Premise::Field("EvenSet(16)".into())];
                    for conclusion in [
                        Conclusion::KummerQuotient,
                        Conclusion::FiniteDimensional,
                        Conclusion::T2IsoAll,
                    ] {
                        der.facts.push(Fact {
                            conclusion,
                            rule_id: "R7".into(),
                            citation: CITE_EVEN16.into(),
                            premises: prem.clone(),
                        });
                    }
                }
                Some(8) => {
                    fired[6] = true;
                    der.facts.push(Fact {
                        conclusion: Conclusion::CoverHasNikulinInvolution,
                        rule_id: "R7".into(),
                        citation: CITE_EVEN8.into(),
                        premises: vec![Premise::Field("EvenSet(8)".into())],
                    });
                }
                _ => {}
            }
        }

        // R8
        if !fired[7] && is_k3 && d.has_feature(&Feature::NikulinInvolution) {
            fired[7] = true;
            let prem = vec![
                Premise::Field("kind = K3".into()),
                Premise::Field("NikulinInvolution".into()),
            ];
            der.facts.push(Fact {
                conclusion: Conclusion::QuotientRhoEqualsRho,
                rule_id: "R8".into(),
                citation: CITE_LEM2.into(),
                premises: prem.clone(),
            });
            der.facts.push(Fact {
                conclusion: Conclusion::InvolutionTraceSix,
                rule_id: "R8".into(),
                citation: CITE_LEM2.into(),
                premises: prem,
            });
        }

        if der.facts.len() == before {
            break;
        }
    }
    Ok(der)
}

// ---- explanation --------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExplainedFact {
    pub index: usize,
    pub conclusion: String,
    pub rule_id: String,
    pub citation: String,
    pub premises: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Explanation {
    pub facts: Vec<ExplainedFact>,
    pub iterations: u32,
}

pub fn explain(derivation: &Derivation) -> Explanation {
    let facts = derivation
        .facts
        .iter()
        .enumerate()
        .map(|(index, f)| ExplainedFact {
            index,
            conclusion: format!("{:?}", f.conclusion),
            rule_id: f.rule_id.clone(),
            citation: f.citation.clone(),
            premises: f
                .premises
                .iter()
                .map(|p| match p {
                    Premise::Field(s) => format!("field: {}", s),
                    Premise::Hypothesis(s) => format!("hypothesis: {}", s),
                    Premise::Fact(i) => format!("fact #{}", i),
                })
                .collect(),
        })
        .collect();
    Explanation {
        facts,
        iterations: derivation.iterations,
    }
}

pub fn explain_text(derivation: &Derivation) -> String {
    if derivation.facts.is_empty() {
        return "no facts derived\n".to_string();
    }
    let mut out = String::new();
    for f in &explain(derivation).facts {
        out.push_str(&format!(
            "[{}] {} — {} ({})\n    from: {}\n",
            f.index,
            f.conclusion,
            f.rule_id,
            f.citation,
            f.premises.join("; ")
        ));
    }
    out
}
