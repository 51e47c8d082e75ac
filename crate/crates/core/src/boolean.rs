//! Boolean models over `X_1 … X_N`: disjoint DNFs and decision trees, their
//! compilation to automata over `{0, 1}`, and SHAP scores through the
//! sequence engine.

use crate::alphabet::Alphabet;
use crate::error::{contract, Result};
use crate::markov::VectorMarkov;
use crate::matrix::Matrix;
use crate::pattern::Pattern;
use crate::scalar::Scalar;
use crate::shap::{ShapEngine, ShapReport, WeightMode};
use crate::wa::WeightedAutomaton;

/// Literal on variable `var` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    /// DIMACS-style signed integer: `3` is `X3`, `-3` is `¬X3`.
    pub fn from_signed(v: i64) -> Result<Self> {
        if v == 0 {
            return Err(contract!("literal 0 is not a variable"));
        }
        Ok(Literal { var: v.unsigned_abs() as usize, positive: v > 0 })
    }

    pub fn to_signed(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }
}

/// Conjunction of literals over distinct variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Result<Self> {
        for (j, l) in literals.iter().enumerate() {
            if l.var == 0 {
                return Err(contract!("variables are numbered from 1"));
            }
            if literals[..j].iter().any(|o| o.var == l.var) {
                return Err(contract!("variable X{} appears twice in a clause", l.var));
            }
        }
        Ok(Clause { literals })
    }

    pub fn from_signed(literals: &[i64]) -> Result<Self> {
        Self::new(literals.iter().map(|&v| Literal::from_signed(v)).collect::<Result<_>>()?)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn max_var(&self) -> usize {
        self.literals.iter().map(|l| l.var).max().unwrap_or(0)
    }

    pub fn satisfied_by(&self, x: &[bool]) -> bool {
        self.literals.iter().all(|l| x[l.var - 1] == l.positive)
    }

    fn conflicts_with(&self, other: &Clause) -> bool {
        self.literals
            .iter()
            .any(|l| other.literals.iter().any(|o| o.var == l.var && o.positive != l.positive))
    }
}

/// Outcome of the pairwise disjointness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Disjointness {
    Disjoint,
    /// Clauses `first` and `second` (0-based) are both satisfied by `witness`.
    Overlap { first: usize, second: usize, witness: Vec<bool> },
}

/// Two consistent conjunctions are disjoint iff they disagree on some
/// variable; otherwise setting both clauses' literals (others false) is a
/// common model.
pub fn check_disjoint(clauses: &[Clause], num_vars: usize) -> Disjointness {
    for (a, ca) in clauses.iter().enumerate() {
        for (b, cb) in clauses.iter().enumerate().skip(a + 1) {
            if !ca.conflicts_with(cb) {
                let mut witness = vec![false; num_vars];
                for l in ca.literals.iter().chain(&cb.literals) {
                    witness[l.var - 1] = l.positive;
                }
                return Disjointness::Overlap { first: a, second: b, witness };
            }
        }
    }
    Disjointness::Disjoint
}

/// DNF whose clauses have pairwise disjoint models, verified on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointDnf {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl DisjointDnf {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        if num_vars == 0 {
            return Err(contract!("a boolean model needs at least one variable"));
        }
        if let Some(c) = clauses.iter().find(|c| c.max_var() > num_vars) {
            return Err(contract!("clause mentions X{} but there are only {num_vars} variables", c.max_var()));
        }
        if let Disjointness::Overlap { first, second, witness } = check_disjoint(&clauses, num_vars) {
            let bits: String = witness.iter().map(|&b| if b { '1' } else { '0' }).collect();
            return Err(contract!("clauses {} and {} are both satisfied by {bits}", first + 1, second + 1));
        }
        Ok(DisjointDnf { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn evaluate(&self, x: &[bool]) -> bool {
        self.clauses.iter().any(|c| c.satisfied_by(x))
    }
}

/// `#` on free variables, `1`/`0` on positive/negative literals.
pub fn clause_to_pattern(c: &Clause, num_vars: usize) -> Result<Pattern> {
    if c.max_var() > num_vars {
        return Err(contract!("clause mentions X{} but there are only {num_vars} variables", c.max_var()));
    }
    let binary = Alphabet::binary();
    let mut entries = vec![binary.len(); num_vars];
    for l in &c.literals {
        entries[l.var - 1] = l.positive as usize;
    }
    Pattern::new(&binary, entries)
}

/// Chain automaton over `{0, 1}` with value 1 exactly on the words matching `p`.
fn pattern_indicator<S: Scalar>(p: &Pattern) -> Result<WeightedAutomaton<S>> {
    let n = p.len();
    let dim = n + 1;
    let mut mats = vec![Matrix::zeros(dim, dim); 2];
    for j in 0..n {
        for (s, m) in mats.iter_mut().enumerate() {
            if p.is_hash(j) || p.entries()[j] == s {
                m.set(j, j + 1, S::one());
            }
        }
    }
    let mut alpha = vec![S::zero(); dim];
    alpha[0] = S::one();
    let mut beta = vec![S::zero(); dim];
    beta[n] = S::one();
    WeightedAutomaton::new(Alphabet::binary(), alpha, beta, mats)
}

/// Sum of the clause indicators; disjointness keeps the values in `{0, 1}`.
/// An empty DNF maps to the constant-zero automaton.
pub fn ddnf_to_wa<S: Scalar>(phi: &DisjointDnf) -> Result<WeightedAutomaton<S>> {
    let mut acc: Option<WeightedAutomaton<S>> = None;
    for c in &phi.clauses {
        let a = pattern_indicator(&clause_to_pattern(c, phi.num_vars)?)?;
        acc = Some(match acc {
            None => a,
            Some(prev) => prev.sum(&a)?,
        });
    }
    Ok(acc.unwrap_or_else(|| WeightedAutomaton::constant(Alphabet::binary(), S::zero())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(bool),
    /// Tests `X_var` (1-based): `low` when false, `high` when true.
    Split { var: usize, low: Box<DecisionTree>, high: Box<DecisionTree> },
}

impl DecisionTree {
    pub fn split(var: usize, low: DecisionTree, high: DecisionTree) -> Self {
        DecisionTree::Split { var, low: Box::new(low), high: Box::new(high) }
    }

    /// Variables in `1..=num_vars`, none repeated along a path.
    pub fn validate(&self, num_vars: usize) -> Result<()> {
        fn walk(t: &DecisionTree, n: usize, path: &mut Vec<usize>) -> Result<()> {
            match t {
                DecisionTree::Leaf(_) => Ok(()),
                DecisionTree::Split { var, low, high } => {
                    if *var == 0 || *var > n {
                        return Err(contract!("tree tests X{var} outside 1..={n}"));
                    }
                    if path.contains(var) {
                        return Err(contract!("X{var} is tested twice on one path"));
                    }
                    path.push(*var);
                    walk(low, n, path)?;
                    walk(high, n, path)?;
                    path.pop();
                    Ok(())
                }
            }
        }
        walk(self, num_vars, &mut Vec::new())
    }

    pub fn evaluate(&self, x: &[bool]) -> bool {
        match self {
            DecisionTree::Leaf(b) => *b,
            DecisionTree::Split { var, low, high } => {
                if x[var - 1] {
                    high.evaluate(x)
                } else {
                    low.evaluate(x)
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Split { low, high, .. } => 1 + low.depth().max(high.depth()),
        }
    }
}

/// One clause per true leaf, conjoining the tests along its path.
pub fn dt_to_ddnf(t: &DecisionTree, num_vars: usize) -> Result<DisjointDnf> {
    fn walk(t: &DecisionTree, path: &mut Vec<Literal>, out: &mut Vec<Clause>) {
        match t {
            DecisionTree::Leaf(true) => out.push(Clause { literals: path.clone() }),
            DecisionTree::Leaf(false) => {}
            DecisionTree::Split { var, low, high } => {
                for (branch, positive) in [(low, false), (high, true)] {
                    path.push(Literal { var: *var, positive });
                    walk(branch, path, out);
                    path.pop();
                }
            }
        }
    }
    t.validate(num_vars)?;
    let mut clauses = Vec::new();
    walk(t, &mut Vec::new(), &mut clauses);
    DisjointDnf::new(num_vars, clauses)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BooleanModel {
    Dnf(DisjointDnf),
    Tree { tree: DecisionTree, num_vars: usize },
}

impl BooleanModel {
    pub fn num_vars(&self) -> usize {
        match self {
            BooleanModel::Dnf(d) => d.num_vars(),
            BooleanModel::Tree { num_vars, .. } => *num_vars,
        }
    }

    pub fn evaluate(&self, x: &[bool]) -> bool {
        match self {
            BooleanModel::Dnf(d) => d.evaluate(x),
            BooleanModel::Tree { tree, .. } => tree.evaluate(x),
        }
    }

    pub fn to_ddnf(&self) -> Result<DisjointDnf> {
        match self {
            BooleanModel::Dnf(d) => Ok(d.clone()),
            BooleanModel::Tree { tree, num_vars } => dt_to_ddnf(tree, *num_vars),
        }
    }
}

/// `x` as a word over `{0, 1}`.
pub fn sequentialize_instance(x: &[bool]) -> Vec<usize> {
    x.iter().map(|&b| b as usize).collect()
}

/// Sequence engine for a boolean model, instance and vector chain.
pub fn boolean_engine<S: Scalar>(model: &BooleanModel, x: &[bool], pv: &VectorMarkov<S>) -> Result<ShapEngine<S>> {
    let n = model.num_vars();
    if x.len() != n || pv.num_vars() != n {
        return Err(contract!(
            "model has {n} variables, instance {}, distribution {}",
            x.len(),
            pv.num_vars()
        ));
    }
    let wa = ddnf_to_wa(&model.to_ddnf()?)?;
    ShapEngine::new(&wa, &sequentialize_instance(x), &pv.sequentialize())
}

/// SHAP score of variable `i` (1-based).
pub fn shap_boolean<S: Scalar>(
    model: &BooleanModel,
    x: &[bool],
    i: usize,
    pv: &VectorMarkov<S>,
    mode: WeightMode,
) -> Result<ShapReport<S>> {
    boolean_engine(model, x, pv)?.shap(i, mode, true)
}
