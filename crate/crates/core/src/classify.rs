//! Forbidden-pair classification, class membership and verdicts.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, Catalog};
use crate::enumerate::is_odd_cycle;
use crate::graph::Graph;
use crate::holes::{claw, is_perfect, HoleCertificate};
use crate::iso::{are_isomorphic, contains_induced};

/// The maximal graphs of the all-perfect case, in reporting order.
pub const SCRIPT_X: [&str; 5] = ["P6", "K1uP5", "2P3", "Z2", "K1uZ1"];

/// The exceptional pattern with finitely many imperfect class members.
pub const FINITE_CASE: &str = "2K1uK3";

/// Every X outside the first two cases contains one of these, checked in
/// this order.
pub const UNAVOIDABLE: [&str; 15] = [
    "5K1", "3K1uK2", "3K2", "K2uP4", "K_1_3", "C4", "C5", "C6", "C7", "K4", "D", "H", "B", "K2uK3", "K1uZ2",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("alpha threshold must be 2, 3 or 4, got {0}")]
    Threshold(u8),
    #[error("X is an induced subgraph of {0}; no imperfection witness applies")]
    NotInfinite(String),
    #[error("X contains none of the unavoidable graphs")]
    NoWitness,
    #[error("unknown witness {0:?}")]
    UnknownWitness(String),
    #[error("not in the class: {0}")]
    NotInClass(&'static str),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyId {
    F1,
    F2,
    F3,
    F4,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] = [FamilyId::F1, FamilyId::F2, FamilyId::F3, FamilyId::F4];

    /// Patterns every member of the family avoids (besides the claw).
    pub fn free_of(self) -> &'static [&'static str] {
        match self {
            FamilyId::F1 => &["C4", "C5", "C6", "C7", "K4", "D", "H"],
            FamilyId::F2 => &["B"],
            FamilyId::F3 => &["5K1", "3K1uK2", "K1uZ2", "3K2", "K2uP4"],
            FamilyId::F4 => &["K2uK3"],
        }
    }
}

impl std::str::FromStr for FamilyId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "F1" => Ok(FamilyId::F1),
            "F2" => Ok(FamilyId::F2),
            "F3" => Ok(FamilyId::F3),
            "F4" => Ok(FamilyId::F4),
            _ => Err(format!("unknown family {s:?}")),
        }
    }
}

impl std::fmt::Display for FamilyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The family attached to an infinite case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FamilyRef {
    Family(FamilyId),
    /// Thresholds 2 and 3 carry no constructive family.
    Unavailable(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairCase {
    /// X embeds in the named maximal graph.
    AllPerfect { witness: &'static str },
    FiniteExceptions,
    Infinite {
        witness: Option<&'static str>,
        family: FamilyRef,
        /// The family was picked by repository convention.
        convention: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairClassification {
    pub case: &'static str,
    #[serde(skip)]
    pub alpha_threshold: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyRef>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub family_convention: bool,
}

impl PairCase {
    pub fn name(&self) -> &'static str {
        match self {
            PairCase::AllPerfect { .. } => "AllPerfect",
            PairCase::FiniteExceptions => "FiniteExceptions",
            PairCase::Infinite { .. } => "Infinite",
        }
    }

    pub fn to_report(&self, alpha_threshold: u8) -> PairClassification {
        let (witness, family, family_convention) = match self {
            PairCase::AllPerfect { witness } => (Some(*witness), None, false),
            PairCase::FiniteExceptions => (None, None, false),
            PairCase::Infinite {
                witness,
                family,
                convention,
            } => (*witness, Some(*family), *convention),
        };
        PairClassification {
            case: self.name(),
            alpha_threshold,
            witness,
            family,
            family_convention,
        }
    }
}

fn embeds(cat: &Catalog, x: &Graph, name: &str) -> bool {
    cat.named(name).is_ok_and(|h| contains_induced(&h, x).is_some())
}

/// First of P6, K1uP5, 2P3, Z2, K1uZ1 containing X as an induced subgraph.
pub fn in_script_x(x: &Graph) -> Option<&'static str> {
    in_script_x_in(catalog::standard(), x)
}

pub fn in_script_x_in(cat: &Catalog, x: &Graph) -> Option<&'static str> {
    SCRIPT_X.into_iter().find(|name| embeds(cat, x, name))
}

pub fn classify_pair(x: &Graph, alpha_threshold: u8) -> Result<PairCase, ClassifyError> {
    classify_pair_in(catalog::standard(), x, alpha_threshold)
}

pub fn classify_pair_in(cat: &Catalog, x: &Graph, alpha_threshold: u8) -> Result<PairCase, ClassifyError> {
    let small = |names: [&'static str; 2]| -> PairCase {
        match names.into_iter().find(|n| embeds(cat, x, n)) {
            Some(witness) => PairCase::AllPerfect { witness },
            None => PairCase::Infinite {
                witness: None,
                family: FamilyRef::Unavailable("unavailable"),
                convention: false,
            },
        }
    };
    match alpha_threshold {
        2 => Ok(small(["Z1", "P4"])),
        3 => Ok(small(["Z2", "P5"])),
        4 => {
            if let Some(witness) = in_script_x_in(cat, x) {
                return Ok(PairCase::AllPerfect { witness });
            }
            if are_isomorphic(x, &cat.named(FINITE_CASE)?) {
                return Ok(PairCase::FiniteExceptions);
            }
            let witness = unavoidable_witness_in(cat, x).ok();
            let (family, convention) = match witness {
                Some(w) => family_for_witness(w)?,
                None => (FamilyId::F1, true),
            };
            Ok(PairCase::Infinite {
                witness,
                family: FamilyRef::Family(family),
                convention,
            })
        }
        t => Err(ClassifyError::Threshold(t)),
    }
}

/// One of the 15 unavoidable graphs contained in X, in fixed list order.
pub fn unavoidable_witness(x: &Graph) -> Result<&'static str, ClassifyError> {
    unavoidable_witness_in(catalog::standard(), x)
}

pub fn unavoidable_witness_in(cat: &Catalog, x: &Graph) -> Result<&'static str, ClassifyError> {
    if let Some(m) = SCRIPT_X.into_iter().chain([FINITE_CASE]).find(|n| embeds(cat, x, n)) {
        return Err(ClassifyError::NotInfinite(m.to_string()));
    }
    for name in UNAVOIDABLE {
        if contains_induced(x, &cat.named(name)?).is_some() {
            return Ok(name);
        }
    }
    Err(ClassifyError::NoWitness)
}

/// The family avoiding `witness`; the flag marks the claw-only default.
pub fn family_for_witness(witness: &str) -> Result<(FamilyId, bool), ClassifyError> {
    Ok(match witness {
        "K_1_3" => (FamilyId::F1, true),
        "C4" | "C5" | "C6" | "C7" | "K4" | "D" | "H" => (FamilyId::F1, false),
        "B" => (FamilyId::F2, false),
        "5K1" | "3K1uK2" | "K1uZ2" | "3K2" | "K2uP4" => (FamilyId::F3, false),
        "K2uK3" => (FamilyId::F4, false),
        other => return Err(ClassifyError::UnknownWitness(other.to_string())),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub in_class: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_predicate: Option<&'static str>,
}

/// Connected, claw-free, X-free, not an odd cycle, α ≥ 4; names the first
/// predicate that fails.
pub fn member_of_class_g(g: &Graph, x: &Graph) -> Membership {
    let failing = if g.order() == 0 || !g.is_connected().unwrap_or(false) {
        Some("not connected")
    } else if contains_induced(g, &claw()).is_some() {
        Some("not K_{1,3}-free")
    } else if contains_induced(g, x).is_some() {
        Some("not X-free")
    } else if is_odd_cycle(g) {
        Some("is an odd cycle")
    } else if g.independence_number() < 4 {
        Some("independence number below 4")
    } else {
        None
    };
    Membership {
        in_class: failing.is_none(),
        failing_predicate: failing,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Perfect,
    /// Isomorphic to the exception with this index.
    Exception(usize),
    Imperfect(HoleCertificate),
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Perfect => "Perfect",
            Outcome::Exception(_) => "Exception",
            Outcome::Imperfect(_) => "Imperfect",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Odd hole or antihole, also present for exceptions.
    pub certificate: Option<HoleCertificate>,
}

pub fn verdict(g: &Graph, x: &Graph) -> Result<Verdict, ClassifyError> {
    verdict_in(catalog::standard(), g, x)
}

pub fn verdict_in(cat: &Catalog, g: &Graph, x: &Graph) -> Result<Verdict, ClassifyError> {
    let m = member_of_class_g(g, x);
    if let Some(p) = m.failing_predicate {
        return Err(ClassifyError::NotInClass(p));
    }
    let p = is_perfect(g);
    if p.perfect {
        return Ok(Verdict {
            outcome: Outcome::Perfect,
            certificate: None,
        });
    }
    let cert = p.certificate.expect("imperfect graphs carry a certificate");
    if are_isomorphic(x, &cat.named(FINITE_CASE)?) {
        if let Some((i, _)) = cat.exceptions().into_iter().find(|(_, e)| are_isomorphic(e, g)) {
            return Ok(Verdict {
                outcome: Outcome::Exception(i),
                certificate: Some(cert),
            });
        }
    }
    Ok(Verdict {
        outcome: Outcome::Imperfect(cert.clone()),
        certificate: Some(cert),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;

    fn g(name: &str) -> Graph {
        named(name).unwrap()
    }

    #[test]
    fn script_x_examples() {
        assert_eq!(in_script_x(&g("P6")), Some("P6"));
        assert_eq!(in_script_x(&g("K1uZ1")), Some("K1uZ1"));
        assert_eq!(in_script_x(&g("2K1uK3")), None);
        assert_eq!(in_script_x(&g("P4")), Some("P6"));
    }

    #[test]
    fn pair_cases() {
        assert_eq!(classify_pair(&g("2P3"), 4).unwrap(), PairCase::AllPerfect { witness: "2P3" });
        assert_eq!(classify_pair(&g("2K1uK3"), 4).unwrap(), PairCase::FiniteExceptions);
        match classify_pair(&g("B_1_2"), 4).unwrap() {
            PairCase::Infinite { witness, family, .. } => {
                assert_eq!(witness, Some("B"));
                assert_eq!(family, FamilyRef::Family(FamilyId::F2));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(classify_pair(&g("P5"), 3).unwrap(), PairCase::AllPerfect { witness: "P5" });
        assert!(matches!(classify_pair(&g("P5"), 2).unwrap(), PairCase::Infinite { witness: None, .. }));
        assert!(matches!(classify_pair(&g("P5"), 5), Err(ClassifyError::Threshold(5))));
    }

    #[test]
    fn witnesses() {
        assert_eq!(unavoidable_witness(&g("C4")).unwrap(), "C4");
        assert_eq!(unavoidable_witness(&g("K1uZ2")).unwrap(), "K1uZ2");
        assert_eq!(unavoidable_witness(&g("P7")).unwrap(), "K2uP4");
        assert!(matches!(unavoidable_witness(&g("P5")), Err(ClassifyError::NotInfinite(_))));
        assert_eq!(family_for_witness("B").unwrap(), (FamilyId::F2, false));
        assert_eq!(family_for_witness("K2uK3").unwrap(), (FamilyId::F4, false));
        assert_eq!(family_for_witness("K_1_3").unwrap(), (FamilyId::F1, true));
        assert!(family_for_witness("P9").is_err());
    }

    #[test]
    fn membership() {
        assert_eq!(member_of_class_g(&g("C9"), &g("B_1_2")).failing_predicate, Some("is an odd cycle"));
        assert!(member_of_class_g(&g("E1"), &g("2K1uK3")).in_class);
        assert_eq!(member_of_class_g(&g("K_1_3"), &g("P6")).failing_predicate, Some("not K_{1,3}-free"));
        assert_eq!(member_of_class_g(&g("2P3"), &g("P6")).failing_predicate, Some("not connected"));
    }

    #[test]
    fn verdicts() {
        let v = verdict(&g("E8"), &g("2K1uK3")).unwrap();
        assert_eq!(v.outcome, Outcome::Exception(8));
        assert!(v.certificate.unwrap().is_valid(&g("E8")));
        let e1 = verdict(&g("E1"), &g("P6"));
        assert!(matches!(e1, Err(ClassifyError::NotInClass("not X-free"))));
    }
}
