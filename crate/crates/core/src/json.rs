//! JSON documents for automata, transducers, chains and boolean models.
//!
//! Maps are emitted with sorted keys so identical values serialise to
//! identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::boolean::{Clause, DecisionTree, DisjointDnf};
use crate::error::{config_err, Result};
use crate::markov::{Extension, MarkovChain, Transitions, VectorMarkov};
use crate::matrix::Matrix;
use crate::wa::{WeightedAutomaton, WeightedTransducer};

type Rows = Vec<Vec<f64>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaDoc {
    pub alphabet: Vec<String>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub transitions: BTreeMap<String, Rows>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WtDoc {
    pub input_alphabet: Vec<String>,
    pub output_alphabet: Vec<String>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    /// Keyed by `"in|out"`.
    pub transitions: BTreeMap<String, Rows>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkovDoc {
    pub alphabet: Vec<String>,
    pub init: Vec<f64>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Rows>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorMarkovDoc {
    pub num_vars: usize,
    pub init: [f64; 2],
    pub transitions: Vec<[[f64; 2]; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DnfDoc {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TreeDoc {
    Leaf { leaf: u8 },
    Split { var: usize, low: Box<TreeDoc>, high: Box<TreeDoc> },
}

fn matrix(rows: &Rows, what: &str) -> Result<Matrix<f64>> {
    Matrix::from_rows(rows.clone()).map_err(|e| config_err!("{what}: {e}"))
}

fn check_keys<'a>(keys: impl Iterator<Item = &'a String>, expected: &[String], what: &str) -> Result<()> {
    for k in keys {
        if !expected.contains(k) {
            return Err(config_err!("{what}: unexpected key {k:?}"));
        }
    }
    Ok(())
}

pub fn wa_from_doc(doc: &WaDoc) -> Result<WeightedAutomaton<f64>> {
    let alphabet = Alphabet::from_tokens(&doc.alphabet)?;
    let tokens = alphabet.tokens();
    check_keys(doc.transitions.keys(), &tokens, "transitions")?;
    let mats = tokens
        .iter()
        .map(|t| {
            let rows = doc.transitions.get(t).ok_or_else(|| config_err!("no transition matrix for symbol {t:?}"))?;
            matrix(rows, &format!("symbol {t:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightedAutomaton::new(alphabet, doc.alpha.clone(), doc.beta.clone(), mats)
}

pub fn wa_to_doc(a: &WeightedAutomaton<f64>) -> WaDoc {
    let tokens = a.alphabet().tokens();
    WaDoc {
        transitions: tokens.iter().enumerate().map(|(s, t)| (t.clone(), a.transition(s).to_rows())).collect(),
        alphabet: tokens,
        alpha: a.alpha().to_vec(),
        beta: a.beta().to_vec(),
    }
}

pub fn wt_from_doc(doc: &WtDoc) -> Result<WeightedTransducer<f64>> {
    let input = Alphabet::from_tokens(&doc.input_alphabet)?;
    let output = Alphabet::from_tokens(&doc.output_alphabet)?;
    let keys: Vec<String> = input
        .tokens()
        .iter()
        .flat_map(|i| output.tokens().into_iter().map(move |o| format!("{i}|{o}")))
        .collect();
    check_keys(doc.transitions.keys(), &keys, "transitions")?;
    let mats = keys
        .iter()
        .map(|k| {
            let rows = doc.transitions.get(k).ok_or_else(|| config_err!("no transition matrix for pair {k:?}"))?;
            matrix(rows, &format!("pair {k:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightedTransducer::new(input, output, doc.alpha.clone(), doc.beta.clone(), mats)
}

pub fn wt_to_doc(t: &WeightedTransducer<f64>) -> WtDoc {
    let (input, output) = (t.input_alphabet(), t.output_alphabet());
    let mut transitions = BTreeMap::new();
    for i in 0..input.len() {
        for o in 0..output.len() {
            transitions.insert(format!("{}|{}", input.symbol(i), output.symbol(o)), t.transition(i, o).to_rows());
        }
    }
    WtDoc {
        input_alphabet: input.tokens(),
        output_alphabet: output.tokens(),
        alpha: t.alpha().to_vec(),
        beta: t.beta().to_vec(),
        transitions,
    }
}

pub fn markov_from_doc(doc: &MarkovDoc) -> Result<MarkovChain<f64>> {
    let alphabet = Alphabet::new(doc.alphabet.iter().cloned())?;
    let transitions = match (doc.kind.as_str(), &doc.matrix, &doc.matrices) {
        ("stationary", Some(m), None) => Transitions::Stationary(m.clone()),
        ("positional", None, Some(ms)) => {
            let ext = doc
                .extension
                .as_deref()
                .ok_or_else(|| config_err!("a positional chain needs an extension rule"))?;
            Transitions::Positional { matrices: ms.clone(), extension: Extension::parse(ext)? }
        }
        ("stationary", _, _) => return Err(config_err!("a stationary chain takes exactly one \"matrix\"")),
        ("positional", _, _) => return Err(config_err!("a positional chain takes a \"matrices\" list")),
        (other, _, _) => return Err(config_err!("unknown chain kind {other:?}")),
    };
    if doc.kind == "stationary" && doc.extension.is_some() {
        return Err(config_err!("a stationary chain takes no extension rule"));
    }
    MarkovChain::new(alphabet, doc.init.clone(), transitions)
}

pub fn markov_to_doc(p: &MarkovChain<f64>) -> MarkovDoc {
    let (kind, matrix, matrices, extension) = match p.transitions() {
        Transitions::Stationary(m) => ("stationary", Some(m.clone()), None, None),
        Transitions::Positional { matrices, extension } => {
            ("positional", None, Some(matrices.clone()), Some(extension.name().to_string()))
        }
    };
    MarkovDoc {
        alphabet: p.alphabet().tokens(),
        init: p.init().to_vec(),
        kind: kind.to_string(),
        matrix,
        matrices,
        extension,
    }
}

pub fn vector_markov_from_doc(doc: &VectorMarkovDoc) -> Result<VectorMarkov<f64>> {
    if doc.num_vars == 0 || doc.transitions.len() + 1 != doc.num_vars {
        return Err(config_err!(
            "{} variables need {} transition matrices, got {}",
            doc.num_vars,
            doc.num_vars.saturating_sub(1),
            doc.transitions.len()
        ));
    }
    VectorMarkov::new(doc.init, doc.transitions.clone())
}

pub fn vector_markov_to_doc(p: &VectorMarkov<f64>) -> VectorMarkovDoc {
    VectorMarkovDoc { num_vars: p.num_vars(), init: *p.init(), transitions: p.transitions().to_vec() }
}

pub fn dnf_from_doc(doc: &DnfDoc) -> Result<DisjointDnf> {
    let clauses = doc.clauses.iter().map(|c| Clause::from_signed(c)).collect::<Result<Vec<_>>>()?;
    DisjointDnf::new(doc.num_vars, clauses)
}

pub fn dnf_to_doc(d: &DisjointDnf) -> DnfDoc {
    DnfDoc {
        num_vars: d.num_vars(),
        clauses: d.clauses().iter().map(|c| c.literals().iter().map(|l| l.to_signed()).collect()).collect(),
    }
}

pub fn tree_from_doc(doc: &TreeDoc) -> Result<DecisionTree> {
    Ok(match doc {
        TreeDoc::Leaf { leaf: 0 } => DecisionTree::Leaf(false),
        TreeDoc::Leaf { leaf: 1 } => DecisionTree::Leaf(true),
        TreeDoc::Leaf { leaf } => return Err(config_err!("leaf value {leaf} is not 0 or 1")),
        TreeDoc::Split { var, low, high } => DecisionTree::split(*var, tree_from_doc(low)?, tree_from_doc(high)?),
    })
}

pub fn tree_to_doc(t: &DecisionTree) -> TreeDoc {
    match t {
        DecisionTree::Leaf(b) => TreeDoc::Leaf { leaf: *b as u8 },
        DecisionTree::Split { var, low, high } => {
            TreeDoc::Split { var: *var, low: Box::new(tree_to_doc(low)), high: Box::new(tree_to_doc(high)) }
        }
    }
}

pub fn parse_wa(text: &str) -> Result<WeightedAutomaton<f64>> {
    wa_from_doc(&serde_json::from_str(text)?)
}

pub fn parse_wt(text: &str) -> Result<WeightedTransducer<f64>> {
    wt_from_doc(&serde_json::from_str(text)?)
}

pub fn parse_markov(text: &str) -> Result<MarkovChain<f64>> {
    markov_from_doc(&serde_json::from_str(text)?)
}

pub fn parse_vector_markov(text: &str) -> Result<VectorMarkov<f64>> {
    vector_markov_from_doc(&serde_json::from_str(text)?)
}

pub fn parse_dnf(text: &str) -> Result<DisjointDnf> {
    dnf_from_doc(&serde_json::from_str(text)?)
}

pub fn parse_tree(text: &str) -> Result<DecisionTree> {
    tree_from_doc(&serde_json::from_str(text)?)
}
