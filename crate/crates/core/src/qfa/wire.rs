//! JSON documents for the automaton models. Every document carries a
//! `"model"` discriminator; complex numbers are `[re, im]` pairs and
//! matrices nested row-major arrays.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dfa::{Dfa, DfaDoc};
use crate::linalg::{
    matrix_from_wire, matrix_to_wire, vector_from_wire, vector_to_wire, ComplexWire,
    ProjectiveMeasurement, UnitaryOperator,
};

use super::{KLetterQfa, Mm1Qfa, Mo1Qfa, Provenance, Qfac, QfaCl, QfaError, END_MARKER};

pub type MatrixWire = Vec<Vec<ComplexWire>>;

#[derive(Debug, Serialize, Deserialize)]
pub struct KWindowWire {
    pub window: Vec<Option<String>>,
    pub matrix: MatrixWire,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum MachineDoc {
    Mo1qfa {
        basis: Vec<String>,
        alphabet: Vec<String>,
        initial: Vec<ComplexWire>,
        unitaries: BTreeMap<String, MatrixWire>,
        accepting: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        provenance: Option<Provenance>,
    },
    Mm1qfa {
        basis: Vec<String>,
        alphabet: Vec<String>,
        initial: Vec<ComplexWire>,
        unitaries: BTreeMap<String, MatrixWire>,
        end_unitary: MatrixWire,
        accepting: Vec<String>,
        rejecting: Vec<String>,
    },
    Kletter {
        k: usize,
        basis: Vec<String>,
        alphabet: Vec<String>,
        initial: Vec<ComplexWire>,
        transitions: Vec<KWindowWire>,
        accepting: Vec<String>,
    },
    Qfacl {
        basis: Vec<String>,
        alphabet: Vec<String>,
        initial: Vec<ComplexWire>,
        unitaries: BTreeMap<String, MatrixWire>,
        outcomes: Vec<String>,
        projectors: BTreeMap<String, MatrixWire>,
        control: DfaDoc,
    },
    Qfac {
        classical: Vec<String>,
        basis: Vec<String>,
        alphabet: Vec<String>,
        outcomes: Vec<String>,
        start: String,
        initial: Vec<ComplexWire>,
        delta: Vec<(String, String, String)>,
        unitaries: Vec<(String, String, MatrixWire)>,
        measurements: Vec<(String, String, MatrixWire)>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        provenance: Option<Provenance>,
    },
}

/// A deserialized machine of any model.
#[derive(Debug, Clone)]
pub enum AnyMachine {
    Mo(Mo1Qfa),
    Mm(Mm1Qfa),
    KLetter(KLetterQfa),
    Cl(QfaCl),
    Qfac(Qfac),
}

impl AnyMachine {
    pub fn model_name(&self) -> &'static str {
        match self {
            AnyMachine::Mo(_) => "mo1qfa",
            AnyMachine::Mm(_) => "mm1qfa",
            AnyMachine::KLetter(_) => "kletter",
            AnyMachine::Cl(_) => "qfacl",
            AnyMachine::Qfac(_) => "qfac",
        }
    }
}

fn unitary_from_wire(w: &MatrixWire) -> Result<UnitaryOperator, QfaError> {
    Ok(UnitaryOperator::new(matrix_from_wire(w)?)?)
}

impl From<&Mo1Qfa> for MachineDoc {
    fn from(m: &Mo1Qfa) -> Self {
        MachineDoc::Mo1qfa {
            basis: m.basis().to_vec(),
            alphabet: m.alphabet().to_vec(),
            initial: vector_to_wire(m.initial()),
            unitaries: m
                .alphabet()
                .iter()
                .map(|s| (s.clone(), matrix_to_wire(m.unitary(s).unwrap().matrix())))
                .collect(),
            accepting: m.accepting().to_vec(),
            provenance: m.provenance().cloned(),
        }
    }
}

impl From<&Mm1Qfa> for MachineDoc {
    fn from(m: &Mm1Qfa) -> Self {
        MachineDoc::Mm1qfa {
            basis: m.basis().to_vec(),
            alphabet: m.alphabet().to_vec(),
            initial: vector_to_wire(m.initial()),
            unitaries: m
                .alphabet()
                .iter()
                .map(|s| (s.clone(), matrix_to_wire(m.unitary(s).unwrap().matrix())))
                .collect(),
            end_unitary: matrix_to_wire(m.end_unitary().matrix()),
            accepting: m.accepting().to_vec(),
            rejecting: m.rejecting().to_vec(),
        }
    }
}

impl From<&KLetterQfa> for MachineDoc {
    fn from(m: &KLetterQfa) -> Self {
        let mut transitions: Vec<KWindowWire> = m
            .windows()
            .map(|(w, u)| KWindowWire {
                window: w
                    .iter()
                    .map(|ws| ws.map(|i| m.alphabet()[i].clone()))
                    .collect(),
                matrix: matrix_to_wire(u.matrix()),
            })
            .collect();
        transitions.sort_by(|a, b| format!("{:?}", a.window).cmp(&format!("{:?}", b.window)));
        MachineDoc::Kletter {
            k: m.k(),
            basis: m.basis().to_vec(),
            alphabet: m.alphabet().to_vec(),
            initial: vector_to_wire(m.initial()),
            transitions,
            accepting: m.accepting().to_vec(),
        }
    }
}

impl From<&QfaCl> for MachineDoc {
    fn from(m: &QfaCl) -> Self {
        let mut unitaries: BTreeMap<String, MatrixWire> = m
            .alphabet()
            .iter()
            .map(|s| (s.clone(), matrix_to_wire(m.unitary(s).unwrap().matrix())))
            .collect();
        unitaries.insert(
            END_MARKER.to_string(),
            matrix_to_wire(m.unitary(END_MARKER).unwrap().matrix()),
        );
        MachineDoc::Qfacl {
            basis: m.basis().to_vec(),
            alphabet: m.alphabet().to_vec(),
            initial: vector_to_wire(m.initial()),
            unitaries,
            outcomes: m.observable().outcomes().to_vec(),
            projectors: m
                .observable()
                .outcomes()
                .iter()
                .zip(m.observable().projectors())
                .map(|(o, p)| (o.clone(), matrix_to_wire(p)))
                .collect(),
            control: DfaDoc::from(m.control()),
        }
    }
}

impl From<&Qfac> for MachineDoc {
    fn from(m: &Qfac) -> Self {
        let mut delta = Vec::new();
        let mut unitaries = Vec::new();
        let mut measurements = Vec::new();
        for (si, s) in m.classical_states().iter().enumerate() {
            for (ci, c) in m.alphabet().iter().enumerate() {
                delta.push((
                    s.clone(),
                    c.clone(),
                    m.classical_states()[m.next_classical(si, ci)].clone(),
                ));
                unitaries.push((s.clone(), c.clone(), matrix_to_wire(m.unitary_at(si, ci).matrix())));
            }
            for (gi, g) in m.outcomes().iter().enumerate() {
                measurements.push((
                    s.clone(),
                    g.clone(),
                    matrix_to_wire(&m.measurement_at(si).projectors()[gi]),
                ));
            }
        }
        MachineDoc::Qfac {
            classical: m.classical_states().to_vec(),
            basis: m.basis().to_vec(),
            alphabet: m.alphabet().to_vec(),
            outcomes: m.outcomes().to_vec(),
            start: m.classical_states()[m.start_index()].clone(),
            initial: vector_to_wire(m.initial()),
            delta,
            unitaries,
            measurements,
            provenance: m.provenance().cloned(),
        }
    }
}

impl From<&AnyMachine> for MachineDoc {
    fn from(m: &AnyMachine) -> Self {
        match m {
            AnyMachine::Mo(x) => MachineDoc::from(x),
            AnyMachine::Mm(x) => MachineDoc::from(x),
            AnyMachine::KLetter(x) => MachineDoc::from(x),
            AnyMachine::Cl(x) => MachineDoc::from(x),
            AnyMachine::Qfac(x) => MachineDoc::from(x),
        }
    }
}

impl TryFrom<MachineDoc> for AnyMachine {
    type Error = QfaError;

    fn try_from(doc: MachineDoc) -> Result<Self, QfaError> {
        match doc {
            MachineDoc::Mo1qfa {
                basis,
                alphabet,
                initial,
                unitaries,
                accepting,
                provenance,
            } => {
                let unitaries = unitaries
                    .into_iter()
                    .map(|(s, w)| Ok((s, unitary_from_wire(&w)?)))
                    .collect::<Result<Vec<_>, QfaError>>()?;
                let mut m = Mo1Qfa::new(
                    basis,
                    alphabet,
                    vector_from_wire(&initial)?,
                    unitaries,
                    accepting,
                )?;
                if let Some(p) = provenance {
                    m = m.with_provenance(p);
                }
                Ok(AnyMachine::Mo(m))
            }
            MachineDoc::Mm1qfa {
                basis,
                alphabet,
                initial,
                unitaries,
                end_unitary,
                accepting,
                rejecting,
            } => {
                let unitaries = unitaries
                    .into_iter()
                    .map(|(s, w)| Ok((s, unitary_from_wire(&w)?)))
                    .collect::<Result<Vec<_>, QfaError>>()?;
                Ok(AnyMachine::Mm(Mm1Qfa::new(
                    basis,
                    alphabet,
                    vector_from_wire(&initial)?,
                    unitaries,
                    unitary_from_wire(&end_unitary)?,
                    accepting,
                    rejecting,
                )?))
            }
            MachineDoc::Kletter {
                k,
                basis,
                alphabet,
                initial,
                transitions,
                accepting,
            } => {
                let transitions = transitions
                    .into_iter()
                    .map(|t| Ok((t.window, unitary_from_wire(&t.matrix)?)))
                    .collect::<Result<Vec<_>, QfaError>>()?;
                Ok(AnyMachine::KLetter(KLetterQfa::new(
                    k,
                    basis,
                    alphabet,
                    vector_from_wire(&initial)?,
                    transitions,
                    accepting,
                )?))
            }
            MachineDoc::Qfacl {
                basis,
                alphabet,
                initial,
                mut unitaries,
                outcomes,
                projectors,
                control,
            } => {
                let end = unitaries.remove(END_MARKER).ok_or_else(|| {
                    QfaError::InvalidMachine("missing end-marker unitary".into())
                })?;
                let unitaries = unitaries
                    .into_iter()
                    .map(|(s, w)| Ok((s, unitary_from_wire(&w)?)))
                    .collect::<Result<Vec<_>, QfaError>>()?;
                let projs = outcomes
                    .iter()
                    .map(|o| {
                        let w = projectors.get(o).ok_or_else(|| {
                            QfaError::InvalidMachine(format!("missing projector for outcome {o:?}"))
                        })?;
                        Ok(matrix_from_wire(w)?)
                    })
                    .collect::<Result<Vec<_>, QfaError>>()?;
                let observable = ProjectiveMeasurement::new(outcomes, projs)?;
                Ok(AnyMachine::Cl(QfaCl::new(
                    basis,
                    alphabet,
                    vector_from_wire(&initial)?,
                    unitaries,
                    unitary_from_wire(&end)?,
                    observable,
                    Dfa::try_from(control)?,
                )?))
            }
            MachineDoc::Qfac {
                classical,
                basis,
                alphabet,
                outcomes,
                start,
                initial,
                delta,
                unitaries,
                measurements,
                provenance,
            } => {
                let unitaries = unitaries
                    .into_iter()
                    .map(|(s, c, w)| Ok((s, c, unitary_from_wire(&w)?)))
                    .collect::<Result<Vec<_>, QfaError>>()?;
                let measurements = measurements
                    .into_iter()
                    .map(|(s, g, w)| Ok((s, g, matrix_from_wire(&w)?)))
                    .collect::<Result<Vec<_>, QfaError>>()?;
                let mut m = Qfac::new(
                    classical,
                    basis,
                    alphabet,
                    outcomes,
                    start,
                    vector_from_wire(&initial)?,
                    delta,
                    unitaries,
                    measurements,
                )?;
                if let Some(p) = provenance {
                    m = m.with_provenance(p);
                }
                Ok(AnyMachine::Qfac(m))
            }
        }
    }
}
