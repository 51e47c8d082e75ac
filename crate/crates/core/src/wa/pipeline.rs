//! Expression trees over automata and transducers, evaluated without
//! materialising their Kronecker-structured transition matrices.
//!
//! A composite state is the tuple of its leaves' states (plus a branch tag
//! per sum node). Evaluation propagates a sparse weight map over those
//! tuples one symbol at a time. Only exact zeros are dropped, together with
//! tuples in which some leaf can no longer reach a final state within the
//! remaining number of steps.

use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

use crate::alphabet::Alphabet;
use crate::error::{contract, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::wa::automaton::WeightedAutomaton;
use crate::wa::transducer::WeightedTransducer;

/// What a pipeline node denotes.
#[derive(Debug, Clone, PartialEq)]
pub enum Sort {
    /// A language over one alphabet.
    Language(Alphabet),
    /// A seq2seq language over aligned (input, output) word pairs.
    Relation { input: Alphabet, output: Alphabet },
}

/// A fully materialised pipeline.
#[derive(Debug, Clone)]
pub enum Materialized<S> {
    Automaton(WeightedAutomaton<S>),
    Transducer(WeightedTransducer<S>),
}

/// Shared leaf with a cached backward reachability table.
#[derive(Debug)]
struct Leaf<T> {
    machine: T,
    live: Mutex<Option<Arc<LiveTable>>>,
}

impl<T> Leaf<T> {
    fn new(machine: T) -> Arc<Self> {
        Arc::new(Leaf { machine, live: Mutex::new(None) })
    }
}

/// `rows[r][q]`: state `q` reaches a nonzero final weight in exactly `r` steps.
#[derive(Debug)]
struct LiveTable {
    rows: Vec<Vec<bool>>,
}

impl LiveTable {
    fn build<S: Scalar>(mats: &[Matrix<S>], beta: &[S], horizon: usize) -> Self {
        let dim = beta.len();
        let mut rows = Vec::with_capacity(horizon + 1);
        rows.push(beta.iter().map(|b| !b.is_zero()).collect::<Vec<_>>());
        for r in 1..=horizon {
            let prev = &rows[r - 1];
            let row = (0..dim)
                .map(|q| mats.iter().any(|m| m.row_entries(q).iter().any(|(c, _)| prev[*c as usize])))
                .collect();
            rows.push(row);
        }
        LiveTable { rows }
    }
}

fn live_table<T, S: Scalar>(leaf: &Leaf<T>, mats: &[Matrix<S>], beta: &[S], horizon: usize) -> Arc<LiveTable> {
    let mut guard = leaf.live.lock().expect("live table lock");
    if let Some(t) = guard.as_ref() {
        if t.rows.len() > horizon {
            return t.clone();
        }
    }
    let t = Arc::new(LiveTable::build(mats, beta, horizon));
    *guard = Some(t.clone());
    t
}

#[derive(Debug, Clone)]
enum Node<S> {
    Automaton(Arc<Leaf<WeightedAutomaton<S>>>),
    Transducer(Arc<Leaf<WeightedTransducer<S>>>),
    Product(Box<Pipeline<S>>, Box<Pipeline<S>>),
    Sum(Box<Pipeline<S>>, Box<Pipeline<S>>),
    Scale(Box<Pipeline<S>>, S),
    Project(Box<Pipeline<S>>, Box<Pipeline<S>>),
    Times(Box<Pipeline<S>>, Box<Pipeline<S>>),
    Inverse(Box<Pipeline<S>>),
}

/// Composite language or seq2seq language built from operator nodes.
///
/// Leaves are reference counted, so cloning a pipeline or reusing a leaf in
/// several pipelines is cheap.
#[derive(Debug, Clone)]
pub struct Pipeline<S> {
    node: Node<S>,
    sort: Sort,
}

impl<S: Scalar> From<WeightedAutomaton<S>> for Pipeline<S> {
    fn from(a: WeightedAutomaton<S>) -> Self {
        Pipeline::automaton(a)
    }
}

impl<S: Scalar> From<WeightedTransducer<S>> for Pipeline<S> {
    fn from(t: WeightedTransducer<S>) -> Self {
        Pipeline::transducer(t)
    }
}

impl<S: Scalar> Pipeline<S> {
    pub fn automaton(a: WeightedAutomaton<S>) -> Self {
        let sort = Sort::Language(a.alphabet().clone());
        Pipeline { node: Node::Automaton(Leaf::new(a)), sort }
    }

    pub fn transducer(t: WeightedTransducer<S>) -> Self {
        let sort = Sort::Relation { input: t.input_alphabet().clone(), output: t.output_alphabet().clone() };
        Pipeline { node: Node::Transducer(Leaf::new(t)), sort }
    }

    pub fn sort(&self) -> &Sort {
        &self.sort
    }

    fn language(&self, op: &str) -> Result<&Alphabet> {
        match &self.sort {
            Sort::Language(a) => Ok(a),
            Sort::Relation { .. } => Err(contract!("{op}: expected a language operand, got a transducer")),
        }
    }

    fn relation(&self, op: &str) -> Result<(&Alphabet, &Alphabet)> {
        match &self.sort {
            Sort::Relation { input, output } => Ok((input, output)),
            Sort::Language(_) => Err(contract!("{op}: expected a transducer operand, got a language")),
        }
    }

    /// Hadamard product of two languages.
    pub fn product(a: impl Into<Self>, b: impl Into<Self>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        let alpha = a.language("product")?.clone();
        if b.language("product")? != &alpha {
            return Err(contract!("product: alphabet mismatch"));
        }
        Ok(Pipeline { node: Node::Product(Box::new(a), Box::new(b)), sort: Sort::Language(alpha) })
    }

    pub fn sum(a: impl Into<Self>, b: impl Into<Self>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        let alpha = a.language("sum")?.clone();
        if b.language("sum")? != &alpha {
            return Err(contract!("sum: alphabet mismatch"));
        }
        Ok(Pipeline { node: Node::Sum(Box::new(a), Box::new(b)), sort: Sort::Language(alpha) })
    }

    pub fn scale(a: impl Into<Self>, c: S) -> Result<Self> {
        let a = a.into();
        let alpha = a.language("scale")?.clone();
        if !c.is_finite_value() {
            return Err(contract!("scale: non-finite constant"));
        }
        Ok(Pipeline { node: Node::Scale(Box::new(a), c), sort: Sort::Language(alpha) })
    }

    /// Projection of a language through a transducer onto its output side.
    pub fn project(a: impl Into<Self>, t: impl Into<Self>) -> Result<Self> {
        let (a, t) = (a.into(), t.into());
        let alpha = a.language("projection")?;
        let (input, output) = t.relation("projection")?;
        if alpha != input {
            return Err(contract!("projection: automaton alphabet differs from transducer input alphabet"));
        }
        let sort = Sort::Language(output.clone());
        Ok(Pipeline { node: Node::Project(Box::new(a), Box::new(t)), sort })
    }

    /// Multiplicative operator `(f × g)(u, s) = f(u)·g(u, s)`.
    pub fn times(a: impl Into<Self>, t: impl Into<Self>) -> Result<Self> {
        let (a, t) = (a.into(), t.into());
        let alpha = a.language("multiplicative operator")?;
        let (input, output) = t.relation("multiplicative operator")?;
        if alpha != input {
            return Err(contract!("multiplicative operator: alphabet differs from transducer input alphabet"));
        }
        let sort = Sort::Relation { input: input.clone(), output: output.clone() };
        Ok(Pipeline { node: Node::Times(Box::new(a), Box::new(t)), sort })
    }

    pub fn inverse(t: impl Into<Self>) -> Result<Self> {
        let t = t.into();
        let (input, output) = t.relation("inverse")?;
        let sort = Sort::Relation { input: output.clone(), output: input.clone() };
        Ok(Pipeline { node: Node::Inverse(Box::new(t)), sort })
    }

    /// Number of states of the (never built) dense composite.
    pub fn composite_dim(&self) -> u128 {
        match &self.node {
            Node::Automaton(l) => l.machine.dim() as u128,
            Node::Transducer(l) => l.machine.dim() as u128,
            Node::Sum(a, b) => a.composite_dim() + b.composite_dim(),
            Node::Scale(a, _) | Node::Inverse(a) => a.composite_dim(),
            Node::Product(a, b) | Node::Project(a, b) | Node::Times(a, b) => {
                a.composite_dim().saturating_mul(b.composite_dim())
            }
        }
    }

    /// Builds the dense composite with the operator constructors.
    pub fn materialize(&self) -> Result<Materialized<S>> {
        use Materialized::{Automaton, Transducer};
        Ok(match &self.node {
            Node::Automaton(l) => Automaton(l.machine.clone()),
            Node::Transducer(l) => Transducer(l.machine.clone()),
            Node::Product(a, b) => Automaton(a.materialize_wa()?.product(&b.materialize_wa()?)?),
            Node::Sum(a, b) => Automaton(a.materialize_wa()?.sum(&b.materialize_wa()?)?),
            Node::Scale(a, c) => Automaton(a.materialize_wa()?.scale(c.clone())),
            Node::Project(a, t) => Automaton(a.materialize_wa()?.project(&t.materialize_wt()?)?),
            Node::Times(a, t) => Transducer(a.materialize_wa()?.times(&t.materialize_wt()?)?),
            Node::Inverse(t) => Transducer(t.materialize_wt()?.inverse()),
        })
    }

    pub fn materialize_wa(&self) -> Result<WeightedAutomaton<S>> {
        match self.materialize()? {
            Materialized::Automaton(a) => Ok(a),
            Materialized::Transducer(_) => Err(contract!("pipeline denotes a transducer")),
        }
    }

    pub fn materialize_wt(&self) -> Result<WeightedTransducer<S>> {
        match self.materialize()? {
            Materialized::Transducer(t) => Ok(t),
            Materialized::Automaton(_) => Err(contract!("pipeline denotes a language")),
        }
    }

    /// `Σ_{w ∈ Σ^n} f(w)` for a language-valued pipeline, by sparse forward
    /// propagation.
    pub fn partition_constant(&self, n: usize) -> Result<S> {
        let alphabet = self.language("partition constant")?;
        let plan = Compiler::compile(self, Some(n))?;
        let symbols: Vec<Sym> = (0..alphabet.len()).map(Sym::One).collect();
        Ok(plan.run(n, |_| &symbols[..], true))
    }

    /// Partition constants of the pipelines obtained by replacing the final
    /// vector of `leaf` (a leaf of `self`, shared by reference) with each of
    /// `betas`, computed in a single propagation. Every variant must be
    /// supported inside the leaf's own final vector.
    pub fn partition_constants_with_finals(&self, n: usize, leaf: &Pipeline<S>, betas: &[Vec<S>]) -> Result<Vec<S>> {
        let alphabet = self.language("partition constant")?;
        let (own_beta, dim) = match &leaf.node {
            Node::Automaton(l) => (l.machine.beta(), l.machine.dim()),
            Node::Transducer(l) => (l.machine.beta(), l.machine.dim()),
            _ => return Err(contract!("final-vector variants need a leaf automaton or transducer")),
        };
        for beta in betas {
            if beta.len() != dim {
                return Err(contract!("final vector has length {}, leaf has dimension {dim}", beta.len()));
            }
            if beta.iter().zip(own_beta).any(|(b, o)| !b.is_zero() && o.is_zero()) {
                return Err(contract!("final-vector variant is not supported inside the leaf's final vector"));
            }
        }
        let plan = Compiler::compile(self, Some(n))?;
        let slot = plan
            .plan
            .leaf_slot(leaf_id(leaf).expect("checked to be a leaf"))
            .ok_or_else(|| contract!("the given leaf does not occur in this pipeline"))?;
        let symbols: Vec<Sym> = (0..alphabet.len()).map(Sym::One).collect();
        let frontier = plan.propagate(n, |_| &symbols[..], true);
        Ok(betas.iter().map(|b| plan.final_sum(&frontier, Some((slot, b)))).collect())
    }

    /// Value of a language-valued pipeline on one word.
    pub fn evaluate(&self, word: &[usize]) -> Result<S> {
        let alphabet = self.language("evaluate")?;
        alphabet.check_word(word)?;
        let plan = Compiler::compile(self, None)?;
        let steps: Vec<[Sym; 1]> = word.iter().map(|&s| [Sym::One(s)]).collect();
        Ok(plan.run(word.len(), |j| &steps[j][..], false))
    }

    /// Value of a transducer-valued pipeline on an aligned pair.
    pub fn evaluate_pair(&self, w: &[usize], u: &[usize]) -> Result<S> {
        let (input, output) = self.relation("evaluate")?;
        if w.len() != u.len() {
            return Err(contract!("transducer inputs have lengths {} and {}", w.len(), u.len()));
        }
        input.check_word(w)?;
        output.check_word(u)?;
        let plan = Compiler::compile(self, None)?;
        let steps: Vec<[Sym; 1]> = w.iter().zip(u).map(|(&a, &b)| [Sym::Pair(a, b)]).collect();
        Ok(plan.run(w.len(), |j| &steps[j][..], false))
    }
}

fn leaf_id<S>(p: &Pipeline<S>) -> Option<usize> {
    match &p.node {
        Node::Automaton(l) => Some(Arc::as_ptr(l) as *const () as usize),
        Node::Transducer(l) => Some(Arc::as_ptr(l) as *const () as usize),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy)]
enum Sym {
    One(usize),
    Pair(usize, usize),
}

enum Plan<'a, S> {
    Leaf {
        id: usize,
        slot: usize,
        mats: &'a [Matrix<S>],
        n_out: usize,
        alpha: &'a [S],
        beta: &'a [S],
        live: Option<Arc<LiveTable>>,
    },
    Product(Box<Plan<'a, S>>, Box<Plan<'a, S>>),
    Sum { tag: usize, range: (usize, usize), left: Box<Plan<'a, S>>, right: Box<Plan<'a, S>> },
    Scale(Box<Plan<'a, S>>, &'a S),
    Project { wa: Box<Plan<'a, S>>, wt: Box<Plan<'a, S>>, inner: usize },
    Times(Box<Plan<'a, S>>, Box<Plan<'a, S>>),
    Inverse(Box<Plan<'a, S>>),
}

type Cont<'c, S> = &'c mut dyn FnMut(&mut [u32], S);

impl<'a, S: Scalar> Plan<'a, S> {
    fn initial(&self, state: &mut [u32], w: S, k: Cont<'_, S>) {
        match self {
            Plan::Leaf { slot, alpha, .. } => {
                for (q, a) in alpha.iter().enumerate() {
                    if !a.is_zero() {
                        state[*slot] = q as u32;
                        k(state, w.clone() * a.clone());
                    }
                }
            }
            Plan::Product(a, b) | Plan::Project { wa: a, wt: b, .. } | Plan::Times(a, b) => {
                a.initial(state, w, &mut |st, w1| b.initial(st, w1, k));
            }
            Plan::Sum { tag, range, left, right } => {
                state[range.0..range.1].iter_mut().for_each(|s| *s = 0);
                state[*tag] = 0;
                left.initial(state, w.clone(), k);
                state[range.0..range.1].iter_mut().for_each(|s| *s = 0);
                state[*tag] = 1;
                right.initial(state, w, k);
            }
            Plan::Scale(a, c) => a.initial(state, w * (*c).clone(), k),
            Plan::Inverse(a) => a.initial(state, w, k),
        }
    }

    fn leaf_slot(&self, id: usize) -> Option<usize> {
        match self {
            Plan::Leaf { id: own, slot, .. } => (*own == id).then_some(*slot),
            Plan::Product(a, b) | Plan::Project { wa: a, wt: b, .. } | Plan::Times(a, b) => {
                a.leaf_slot(id).or_else(|| b.leaf_slot(id))
            }
            Plan::Sum { left, right, .. } => left.leaf_slot(id).or_else(|| right.leaf_slot(id)),
            Plan::Scale(a, _) | Plan::Inverse(a) => a.leaf_slot(id),
        }
    }

    fn final_weight(&self, state: &[u32], over: Option<(usize, &[S])>) -> S {
        match self {
            Plan::Leaf { slot, beta, .. } => match over {
                Some((o, b)) if o == *slot => b[state[*slot] as usize].clone(),
                _ => beta[state[*slot] as usize].clone(),
            },
            Plan::Product(a, b) | Plan::Project { wa: a, wt: b, .. } | Plan::Times(a, b) => {
                let x = a.final_weight(state, over);
                if x.is_zero() {
                    x
                } else {
                    x * b.final_weight(state, over)
                }
            }
            Plan::Sum { tag, left, right, .. } => {
                if state[*tag] == 0 {
                    left.final_weight(state, over)
                } else {
                    right.final_weight(state, over)
                }
            }
            Plan::Scale(a, _) | Plan::Inverse(a) => a.final_weight(state, over),
        }
    }

    fn alive(&self, state: &[u32], remaining: usize) -> bool {
        match self {
            Plan::Leaf { slot, live, .. } => {
                live.as_ref().is_none_or(|t| t.rows.get(remaining).is_none_or(|r| r[state[*slot] as usize]))
            }
            Plan::Product(a, b) | Plan::Project { wa: a, wt: b, .. } | Plan::Times(a, b) => {
                a.alive(state, remaining) && b.alive(state, remaining)
            }
            Plan::Sum { tag, left, right, .. } => {
                if state[*tag] == 0 {
                    left.alive(state, remaining)
                } else {
                    right.alive(state, remaining)
                }
            }
            Plan::Scale(a, _) | Plan::Inverse(a) => a.alive(state, remaining),
        }
    }

    /// Enumerates successors of `cur` on `sym`, writing into `next`.
    fn succ(&self, cur: &[u32], next: &mut [u32], sym: Sym, w: &S, k: Cont<'_, S>) {
        match self {
            Plan::Leaf { slot, mats, n_out, .. } => {
                let code = match sym {
                    Sym::One(s) => s,
                    Sym::Pair(i, o) => i * n_out + o,
                };
                for (c, v) in mats[code].row_entries(cur[*slot] as usize) {
                    next[*slot] = *c;
                    k(next, w.clone() * v.clone());
                }
            }
            Plan::Product(a, b) => {
                a.succ(cur, next, sym, w, &mut |nx, w1| b.succ(cur, nx, sym, &w1, k));
            }
            Plan::Sum { tag, left, right, .. } => {
                if cur[*tag] == 0 {
                    left.succ(cur, next, sym, w, k)
                } else {
                    right.succ(cur, next, sym, w, k)
                }
            }
            Plan::Scale(a, _) => a.succ(cur, next, sym, w, k),
            Plan::Project { wa, wt, inner } => {
                let Sym::One(out) = sym else { unreachable!("projection yields a language") };
                // The transducer side is usually the more selective one.
                for s in 0..*inner {
                    wt.succ(cur, next, Sym::Pair(s, out), w, &mut |nx, w1| wa.succ(cur, nx, Sym::One(s), &w1, k));
                }
            }
            Plan::Times(a, t) => {
                let Sym::Pair(i, _) = sym else { unreachable!("multiplicative operator yields a transducer") };
                a.succ(cur, next, Sym::One(i), w, &mut |nx, w1| t.succ(cur, nx, sym, &w1, k));
            }
            Plan::Inverse(t) => {
                let Sym::Pair(i, o) = sym else { unreachable!("inverse yields a transducer") };
                t.succ(cur, next, Sym::Pair(o, i), w, k)
            }
        }
    }
}

struct Compiled<'a, S> {
    plan: Plan<'a, S>,
    radix: Vec<u128>,
    stride: Vec<u128>,
}

struct Compiler {
    radix: Vec<u128>,
    horizon: Option<usize>,
}

impl Compiler {
    fn compile<S: Scalar>(p: &Pipeline<S>, horizon: Option<usize>) -> Result<Compiled<'_, S>> {
        let mut c = Compiler { radix: Vec::new(), horizon };
        let plan = c.node(p);
        let mut stride = Vec::with_capacity(c.radix.len());
        let mut acc: u128 = 1;
        for r in &c.radix {
            stride.push(acc);
            acc = acc
                .checked_mul(*r)
                .ok_or_else(|| contract!("composite state space too large to index"))?;
        }
        Ok(Compiled { plan, radix: c.radix, stride })
    }

    fn slot(&mut self, radix: usize) -> usize {
        self.radix.push(radix as u128);
        self.radix.len() - 1
    }

    fn node<'a, S: Scalar>(&mut self, p: &'a Pipeline<S>) -> Plan<'a, S> {
        match &p.node {
            Node::Automaton(l) => {
                let a = &l.machine;
                let live = self.horizon.map(|h| live_table(l, a.transitions(), a.beta(), h));
                let slot = self.slot(a.dim());
                Plan::Leaf { id: leaf_id(p).unwrap_or(0), slot, mats: a.transitions(), n_out: 1, alpha: a.alpha(), beta: a.beta(), live }
            }
            Node::Transducer(l) => {
                let t = &l.machine;
                let mats = transducer_mats(t);
                let live = self.horizon.map(|h| live_table(l, mats, t.beta(), h));
                let slot = self.slot(t.dim());
                Plan::Leaf { id: leaf_id(p).unwrap_or(0), slot, mats, n_out: t.output_alphabet().len(), alpha: t.alpha(), beta: t.beta(), live }
            }
            Node::Product(a, b) => Plan::Product(Box::new(self.node(a)), Box::new(self.node(b))),
            Node::Sum(a, b) => {
                let tag = self.slot(2);
                let lo = self.radix.len();
                let left = Box::new(self.node(a));
                let right = Box::new(self.node(b));
                Plan::Sum { tag, range: (lo, self.radix.len()), left, right }
            }
            Node::Scale(a, c) => Plan::Scale(Box::new(self.node(a)), c),
            Node::Project(a, t) => {
                let inner = match a.sort() {
                    Sort::Language(al) => al.len(),
                    Sort::Relation { .. } => unreachable!("checked at construction"),
                };
                Plan::Project { wa: Box::new(self.node(a)), wt: Box::new(self.node(t)), inner }
            }
            Node::Times(a, t) => Plan::Times(Box::new(self.node(a)), Box::new(self.node(t))),
            Node::Inverse(t) => Plan::Inverse(Box::new(self.node(t))),
        }
    }
}

fn transducer_mats<S: Scalar>(t: &WeightedTransducer<S>) -> &[Matrix<S>] {
    t.matrices()
}

impl<'a, S: Scalar> Compiled<'a, S> {
    fn pack(&self, state: &[u32]) -> u128 {
        state.iter().zip(&self.stride).map(|(&s, &st)| s as u128 * st).sum()
    }

    fn unpack(&self, mut key: u128, state: &mut [u32]) {
        for (slot, r) in state.iter_mut().zip(&self.radix) {
            *slot = (key % r) as u32;
            key /= r;
        }
    }

    fn run<'s>(&self, n: usize, symbols: impl Fn(usize) -> &'s [Sym], prune: bool) -> S {
        let frontier = self.propagate(n, symbols, prune);
        self.final_sum(&frontier, None)
    }

    /// Forward propagation over `n` steps; `symbols(j)` lists the root
    /// symbols summed at step `j`.
    fn propagate<'s>(&self, n: usize, symbols: impl Fn(usize) -> &'s [Sym], prune: bool) -> Vec<(u128, S)> {
        let slots = self.radix.len();
        let mut frontier: Vec<(u128, S)> = Vec::new();
        {
            let mut init: FxHashMap<u128, S> = FxHashMap::default();
            let mut state = vec![0u32; slots];
            self.plan.initial(&mut state, S::one(), &mut |st, w| {
                let key = self.pack(st);
                let e = init.entry(key).or_insert_with(S::zero);
                *e = e.clone() + w;
            });
            frontier.extend(init);
            self.retain(&mut frontier, prune.then_some(n));
        }

        let mut cur = vec![0u32; slots];
        let mut next = vec![0u32; slots];
        for j in 0..n {
            let mut acc: FxHashMap<u128, S> = FxHashMap::default();
            for (key, w) in &frontier {
                self.unpack(*key, &mut cur);
                for &sym in symbols(j) {
                    next.copy_from_slice(&cur);
                    self.plan.succ(&cur, &mut next, sym, w, &mut |nx, v| {
                        let key = self.pack(nx);
                        let e = acc.entry(key).or_insert_with(S::zero);
                        *e = e.clone() + v;
                    });
                }
            }
            frontier = acc.into_iter().collect();
            self.retain(&mut frontier, prune.then_some(n - j - 1));
        }
        frontier
    }

    fn final_sum(&self, frontier: &[(u128, S)], over: Option<(usize, &[S])>) -> S {
        let mut cur = vec![0u32; self.radix.len()];
        let mut total = S::zero();
        for (key, w) in frontier {
            self.unpack(*key, &mut cur);
            let f = self.plan.final_weight(&cur, over);
            if !f.is_zero() {
                total = total + w.clone() * f;
            }
        }
        total
    }

    fn retain(&self, frontier: &mut Vec<(u128, S)>, remaining: Option<usize>) {
        let mut state = vec![0u32; self.radix.len()];
        frontier.retain(|(key, w)| {
            if w.is_zero() {
                return false;
            }
            match remaining {
                Some(r) => {
                    self.unpack(*key, &mut state);
                    self.plan.alive(&state, r)
                }
                None => true,
            }
        });
        frontier.sort_unstable_by_key(|(k, _)| *k);
    }
}
