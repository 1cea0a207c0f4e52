//! One report per state covering the four notions of entanglement: not a
//! product, Schmidt rank, local-unitary invariants, and Majorana stars.
//! Every verdict carries the numbers it was derived from.

use serde::Serialize;

use crate::bipartite::{
    bipartite_determinant, det_squared, scaled_determinant, schmidt_decompose, Cut, DEFAULT_RANK_TOL,
};
use crate::error::{Error, Result};
use crate::hyperdet::{cayley_hyperdeterminant, ThreeQubitClass, DEFAULT_CLASS_TOL};
use crate::majorana::{classify_symmetric, DISCRIMINANT_ZERO_TOL};
use crate::scalar::{cabs, Real};
use crate::state::StateVector;

/// Warning attached to every two-qubit determinant.
pub const DETERMINANT_NORMALIZATION_WARNING: &str = "bipartite determinant is evaluated on normalized amplitudes: \
     Bell states give det = ±1/2; the scaled value 2·det gives ±1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evidence {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefinitionCheck {
    pub definition: u8,
    pub verdict: String,
    pub evidence: Vec<Evidence>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub state_id: String,
    pub dims: Vec<usize>,
    pub checks: Vec<DefinitionCheck>,
    pub warnings: Vec<String>,
}

impl ClassificationReport {
    pub fn check(&self, definition: u8) -> Option<&DefinitionCheck> {
        self.checks.iter().find(|c| c.definition == definition)
    }
}

impl DefinitionCheck {
    pub fn evidence(&self, name: &str) -> Option<f64> {
        self.evidence.iter().find(|e| e.name == name).map(|e| e.value)
    }
}

fn ev(name: impl Into<String>, value: f64) -> Evidence {
    Evidence { name: name.into(), value }
}

pub fn classify<T: Real>(state_id: &str, state: &StateVector<T>) -> Result<ClassificationReport> {
    let n = state.n_parties();
    if n < 2 {
        return Err(Error::InvalidDims("classification needs at least two parties".into()));
    }
    let tol = T::lit(DEFAULT_RANK_TOL);
    let mut warnings = Vec::new();

    let mut ranks = Vec::with_capacity(n);
    let mut cut_evidence = Vec::new();
    for p in 0..n {
        let sd = schmidt_decompose(state, &Cut::single(p), tol)?;
        cut_evidence.push(ev(format!("schmidt_rank_party{p}"), sd.rank as f64));
        if n == 2 && p == 0 {
            for (k, l) in sd.lambdas.iter().enumerate() {
                cut_evidence.push(ev(format!("lambda{k}"), l.to_f64_lossy()));
            }
        }
        ranks.push(sd.rank);
    }
    let product = ranks.iter().all(|&r| r == 1);

    let def1 = DefinitionCheck {
        definition: 1,
        verdict: if product { "product".into() } else { "entangled".into() },
        evidence: ranks.iter().enumerate().map(|(p, &r)| ev(format!("schmidt_rank_party{p}"), r as f64)).collect(),
    };

    let entangled_cuts = ranks.iter().filter(|&&r| r >= 2).count();
    let def2_verdict = if n == 2 {
        if ranks[0] >= 2 {
            format!("entangled (Schmidt rank {})", ranks[0])
        } else {
            "not entangled (Schmidt rank 1)".into()
        }
    } else if entangled_cuts == n {
        format!("entangled across every single-party cut (ranks {ranks:?})")
    } else if entangled_cuts == 0 {
        "not entangled across any single-party cut".into()
    } else {
        format!("entangled across {entangled_cuts} of {n} single-party cuts (ranks {ranks:?})")
    };
    let def2 = DefinitionCheck { definition: 2, verdict: def2_verdict, evidence: cut_evidence };

    let def3 = match state.dims() {
        [2, 2] => {
            let det = bipartite_determinant(state)?;
            let scaled = scaled_determinant(state)?;
            let sq = det_squared(state)?;
            warnings.push(DETERMINANT_NORMALIZATION_WARNING.to_string());
            let zero = cabs(det) <= T::lit(DEFAULT_CLASS_TOL);
            DefinitionCheck {
                definition: 3,
                verdict: if zero { "det = 0: product class".into() } else { "det != 0: entangled class".into() },
                evidence: vec![
                    ev("det_re", det.re.to_f64_lossy()),
                    ev("det_im", det.im.to_f64_lossy()),
                    ev("det_abs", cabs(det).to_f64_lossy()),
                    ev("scaled_det_re", scaled.re.to_f64_lossy()),
                    ev("scaled_det_im", scaled.im.to_f64_lossy()),
                    ev("det_squared_re", sq.re.to_f64_lossy()),
                    ev("det_squared_im", sq.im.to_f64_lossy()),
                ],
            }
        }
        [2, 2, 2] => {
            let det = cayley_hyperdeterminant(state)?;
            let class = if cabs(det) > T::lit(DEFAULT_CLASS_TOL) {
                ThreeQubitClass::GhzClass
            } else {
                ThreeQubitClass::Degenerate
            };
            DefinitionCheck {
                definition: 3,
                verdict: class.to_string(),
                evidence: vec![
                    ev("hyperdet_re", det.re.to_f64_lossy()),
                    ev("hyperdet_im", det.im.to_f64_lossy()),
                    ev("hyperdet_abs", cabs(det).to_f64_lossy()),
                ],
            }
        }
        [3, 3, 3] => {
            warnings.push(
                "three-qutrit invariants are defined on normal-form weights (a1, a2, a3); use qutrit-inv".to_string(),
            );
            DefinitionCheck { definition: 3, verdict: "not evaluated".into(), evidence: vec![] }
        }
        dims => {
            warnings.push(format!("no local-unitary invariant is implemented for dims {dims:?}"));
            DefinitionCheck { definition: 3, verdict: "not evaluated".into(), evidence: vec![] }
        }
    };

    let def4 = if state.dims().iter().all(|&d| d == 2) {
        match classify_symmetric(state) {
            Ok(sym) => {
                let c = &sym.constellation;
                let mut evidence = vec![
                    ev("distinct_stars", c.distinct_count as f64),
                    ev("onion_level", sym.onion.level as f64),
                    ev("discriminant_re", c.discriminant.re.to_f64_lossy()),
                    ev("discriminant_im", c.discriminant.im.to_f64_lossy()),
                    ev("discriminant_abs", cabs(c.discriminant).to_f64_lossy()),
                ];
                for (k, s) in c.stars.iter().enumerate() {
                    evidence.push(ev(format!("star{k}_theta"), s.theta.to_f64_lossy()));
                    evidence.push(ev(format!("star{k}_phi"), s.phi.to_f64_lossy()));
                    evidence.push(ev(format!("star{k}_multiplicity"), s.multiplicity as f64));
                }
                let disc = if c.discriminant_vanishes(T::lit(DISCRIMINANT_ZERO_TOL)) { "zero" } else { "nonzero" };
                DefinitionCheck {
                    definition: 4,
                    verdict: format!(
                        "{} distinct star{} (partition {:?}, onion level {} of {}, discriminant {disc})",
                        c.distinct_count,
                        if c.distinct_count == 1 { "" } else { "s" },
                        c.partition,
                        sym.onion.level,
                        sym.onion.n
                    ),
                    evidence,
                }
            }
            Err(Error::NotSymmetric { a, b, deviation }) => DefinitionCheck {
                definition: 4,
                verdict: "not applicable: state is not permutation symmetric".into(),
                evidence: vec![ev(format!("swap_deviation_party{a}_party{b}"), deviation)],
            },
            Err(e) => return Err(e),
        }
    } else {
        DefinitionCheck { definition: 4, verdict: "not applicable: parties are not qubits".into(), evidence: vec![] }
    };

    Ok(ClassificationReport {
        state_id: state_id.to_string(),
        dims: state.dims().to_vec(),
        checks: vec![def1, def2, def3, def4],
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{bell_state, ghz_state, BellState};

    #[test]
    fn ghz_report() {
        let r = classify("ghz3", &ghz_state::<f64>(3).unwrap()).unwrap();
        assert_eq!(r.check(1).unwrap().verdict, "entangled");
        assert!(r.check(2).unwrap().verdict.contains("[2, 2, 2]"));
        let d3 = r.check(3).unwrap();
        assert_eq!(d3.verdict, "GHZClass");
        assert!((d3.evidence("hyperdet_re").unwrap() - 0.25).abs() < 1e-12);
        assert_eq!(r.check(4).unwrap().evidence("distinct_stars"), Some(3.0));
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn product_report() {
        let r = classify("zero", &StateVector::<f64>::basis(&[2, 2, 2], &[0, 0, 0]).unwrap()).unwrap();
        assert_eq!(r.check(1).unwrap().verdict, "product");
        assert_eq!(r.check(3).unwrap().verdict, "DegenerateClass");
        assert_eq!(r.check(4).unwrap().evidence("distinct_stars"), Some(1.0));
    }

    #[test]
    fn bell_report_carries_normalization_warning() {
        let r = classify("bell", &bell_state::<f64>(BellState::PhiPlus)).unwrap();
        assert_eq!(r.warnings, vec![DETERMINANT_NORMALIZATION_WARNING.to_string()]);
        let d3 = r.check(3).unwrap();
        assert!((d3.evidence("det_re").unwrap() - 0.5).abs() < 1e-15);
        assert!((d3.evidence("scaled_det_re").unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn asymmetric_and_qutrit_reports() {
        let s = StateVector::<f64>::basis(&[2, 2], &[0, 1]).unwrap();
        let r = classify("01", &s).unwrap();
        assert!(r.check(4).unwrap().verdict.starts_with("not applicable"));
        let q = StateVector::<f64>::basis(&[3, 3, 3], &[0, 1, 2]).unwrap();
        let r = classify("q", &q).unwrap();
        assert_eq!(r.check(3).unwrap().verdict, "not evaluated");
        assert_eq!(r.warnings.len(), 1);
        assert!(r.warnings[0].contains("qutrit-inv"));
    }
}
