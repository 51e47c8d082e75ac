//! Automata and transducers expressing conditional probabilities of a
//! Markov chain given a pattern: the word-probability automaton, the
//! matching indicators, the conditional marginal table `G`, the automaton of
//! reciprocal pattern probabilities, and their assembly into the
//! conditional transducers.

use crate::alphabet::Alphabet;
use crate::error::{config_err, contract, Result};
use crate::markov::MarkovChain;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::wa::{Pipeline, WeightedAutomaton, WeightedTransducer};

/// Conditional marginals `G(σ', n, σ, m)`: probability that position `m`
/// holds `σ'` given that position `n` holds `σ` (the plain marginal when
/// `n = 0`, where the anchor is the start marker).
///
/// All anchors and targets up to a fixed length are computed on
/// construction; the table is immutable afterwards.
#[derive(Debug, Clone)]
pub struct GTable<S> {
    size: usize,
    len: usize,
    /// `rows[anchor][m - n - 1]`, anchor `0` for the start marker and
    /// `1 + (n - 1) * size + σ` otherwise.
    rows: Vec<Vec<Vec<S>>>,
}

fn push_forward<S: Scalar>(v: &[S], m: &[Vec<S>]) -> Vec<S> {
    let mut out = vec![S::zero(); v.len()];
    for (x, row) in v.iter().zip(m) {
        for (o, p) in out.iter_mut().zip(row) {
            *o = o.clone() + x.clone() * p.clone();
        }
    }
    out
}

impl<S: Scalar> GTable<S> {
    /// Table for targets `m ≤ len`.
    pub fn new(p: &MarkovChain<S>, len: usize) -> Result<Self> {
        let size = p.alphabet().len();
        let mut rows = Vec::with_capacity(1 + len.saturating_sub(1) * size);

        let mut chain = Vec::with_capacity(len);
        if len >= 1 {
            chain.push(p.init().to_vec());
            for m in 1..len {
                let next = push_forward(&chain[m - 1], p.transition_matrix(m)?);
                chain.push(next);
            }
        }
        rows.push(chain);

        for n in 1..len {
            let pn = p.transition_matrix(n)?;
            for first in pn {
                let mut chain = Vec::with_capacity(len - n);
                chain.push(first.clone());
                for m in n + 1..len {
                    let next = push_forward(&chain[m - n - 1], p.transition_matrix(m)?);
                    chain.push(next);
                }
                rows.push(chain);
            }
        }
        let table = GTable { size, len, rows };
        for chain in &table.rows {
            for row in chain {
                if let Some(j) = row.iter().position(|g| *g <= S::zero()) {
                    return Err(config_err!("conditional marginal of symbol {j} is not positive"));
                }
            }
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `target` indexes the extended alphabet (`size` is `#`); `anchor_sym`
    /// is `None` exactly when `anchor_pos = 0`.
    pub fn get(&self, target: usize, anchor_pos: usize, anchor_sym: Option<usize>, m: usize) -> Result<S> {
        let anchor = match (anchor_pos, anchor_sym) {
            (0, None) => 0,
            (n, Some(s)) if n >= 1 && s < self.size => 1 + (n - 1) * self.size + s,
            _ => return Err(contract!("anchor ({anchor_pos}, {anchor_sym:?}) is not a valid conditioning anchor")),
        };
        if m <= anchor_pos || m > self.len {
            return Err(contract!("target position {m} must lie in {}..={}", anchor_pos + 1, self.len));
        }
        if target == self.size {
            return Ok(S::one());
        }
        if target > self.size {
            return Err(contract!("target symbol {target} outside the extended alphabet"));
        }
        Ok(self.rows[anchor][m - anchor_pos - 1][target].clone())
    }
}

/// One-off `G(σ', n, σ, m)` without a shared table.
pub fn compute_g<S: Scalar>(
    p: &MarkovChain<S>,
    target: usize,
    anchor_pos: usize,
    anchor_sym: Option<usize>,
    m: usize,
) -> Result<S> {
    GTable::new(p, m)?.get(target, anchor_pos, anchor_sym, m)
}

/// Automaton over `Σ` with value `P(w')` on words of length `len`, zero on
/// other lengths. State `(j, s)` (position, last symbol or start marker
/// `|Σ|`) has index `j * (|Σ| + 1) + s`.
pub fn build_markov_dwa<S: Scalar>(len: usize, p: &MarkovChain<S>) -> Result<WeightedAutomaton<S>> {
    if len == 0 {
        return Err(contract!("the word-probability automaton needs a positive length"));
    }
    let size = p.alphabet().len();
    let bos = size;
    let idx = |j: usize, s: usize| j * (size + 1) + s;
    let dim = (len + 1) * (size + 1);
    let mut mats = vec![Matrix::zeros(dim, dim); size];
    for (t, m) in mats.iter_mut().enumerate() {
        m.set(idx(0, bos), idx(1, t), p.init()[t].clone());
    }
    for j in 1..len {
        let pj = p.transition_matrix(j)?;
        for (s, row) in pj.iter().enumerate() {
            for (t, m) in mats.iter_mut().enumerate() {
                m.set(idx(j, s), idx(j + 1, t), row[t].clone());
            }
        }
    }
    let mut alpha = vec![S::zero(); dim];
    alpha[idx(0, bos)] = S::one();
    let mut beta = vec![S::zero(); dim];
    for s in 0..size {
        beta[idx(len, s)] = S::one();
    }
    WeightedAutomaton::new(p.alphabet().clone(), alpha, beta, mats)
}

/// Transducer `Σ × Σ_#` with value 1 iff `w'` matches `p`.
pub fn build_indicator_dft<S: Scalar>(alphabet: &Alphabet) -> WeightedTransducer<S> {
    let base = alphabet.base();
    let ext = base.extended();
    let hash = base.len();
    WeightedTransducer::from_fn(base, ext, vec![S::one()], vec![S::one()], |s, q| {
        let mut m = Matrix::zeros(1, 1);
        if q == s || q == hash {
            m.set(0, 0, S::one());
        }
        m
    })
    .expect("indicator transducer shapes are consistent")
}

/// Transducer `Σ × Σ_#` with value 1 iff `w'` matches `swap(p, i)`.
/// State `j < i` counts the symbols read; state `i` is the post-swap tail.
pub fn build_swap_indicator_dft<S: Scalar>(alphabet: &Alphabet, i: usize) -> Result<WeightedTransducer<S>> {
    if i == 0 {
        return Err(contract!("swap positions start at 1"));
    }
    let base = alphabet.base();
    let ext = base.extended();
    let hash = base.len();
    let dim = i + 1;
    let mut alpha = vec![S::zero(); dim];
    alpha[0] = S::one();
    let beta = vec![S::one(); dim];
    WeightedTransducer::from_fn(base, ext, alpha, beta, |s, q| {
        let mut m = Matrix::zeros(dim, dim);
        let matched = q == s || q == hash;
        for j in 0..i - 1 {
            if matched {
                m.set(j, j + 1, S::one());
            }
        }
        m.set(i - 1, i, S::one());
        if matched {
            m.set(i, i, S::one());
        }
        m
    })
}

/// Automaton over `Σ_#` with value `1 / P(L_p)`, or `1 / P(L_swap(p, i))`
/// when `swap` is `Some(i)`, on patterns of length `len`. State
/// `(k, l, s)` (symbols read, last counted fixed position, its symbol or the
/// start marker) has index `(k * (len + 1) + l) * (|Σ| + 1) + s`.
pub fn build_inverse_prob_dwa<S: Scalar>(
    len: usize,
    g: &GTable<S>,
    alphabet: &Alphabet,
    swap: Option<usize>,
) -> Result<WeightedAutomaton<S>> {
    if len == 0 {
        return Err(contract!("the reciprocal-probability automaton needs a positive length"));
    }
    if g.len() < len {
        return Err(contract!("conditional marginal table covers length {} < {len}", g.len()));
    }
    if let Some(i) = swap {
        if i == 0 || i > len {
            return Err(contract!("swap position {i} outside 1..={len}"));
        }
    }
    let base = alphabet.base();
    let ext = base.extended();
    let size = base.len();
    let bos = size;
    let hash = size;
    let idx = |k: usize, l: usize, s: usize| (k * (len + 1) + l) * (size + 1) + s;
    let dim = (len + 1) * (len + 1) * (size + 1);

    let mut mats = vec![Matrix::zeros(dim, dim); ext.len()];
    for k in 0..len {
        for l in 0..=k {
            let anchors: Vec<Option<usize>> = if l == 0 { vec![None] } else { (0..size).map(Some).collect() };
            for anchor in anchors {
                let s = anchor.unwrap_or(bos);
                let from = idx(k, l, s);
                let stay = idx(k + 1, l, s);
                if swap == Some(k + 1) {
                    for m in mats.iter_mut() {
                        m.set(from, stay, S::one());
                    }
                    continue;
                }
                mats[hash].set(from, stay, S::one());
                for (t, mat) in mats[..size].iter_mut().enumerate() {
                    let gv = g.get(t, l, anchor, k + 1)?;
                    mat.set(from, idx(k + 1, k + 1, t), S::one() / gv);
                }
            }
        }
    }
    let mut alpha = vec![S::zero(); dim];
    alpha[idx(0, 0, bos)] = S::one();
    let mut beta = vec![S::zero(); dim];
    for l in 0..=len {
        for s in 0..=size {
            beta[idx(len, l, s)] = S::one();
        }
    }
    WeightedAutomaton::new(ext, alpha, beta, mats)
}

/// Shared, position-independent pieces for conditioning on patterns of one
/// length under one chain.
#[derive(Debug, Clone)]
pub struct Conditioner<S> {
    alphabet: Alphabet,
    len: usize,
    table: GTable<S>,
    word_prob: Pipeline<S>,
    indicator: Pipeline<S>,
}

impl<S: Scalar> Conditioner<S> {
    pub fn new(len: usize, p: &MarkovChain<S>) -> Result<Self> {
        let alphabet = p.alphabet().clone();
        Ok(Conditioner {
            table: GTable::new(p, len)?,
            word_prob: build_markov_dwa(len, p)?.into(),
            indicator: build_indicator_dft(&alphabet).into(),
            alphabet,
            len,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn table(&self) -> &GTable<S> {
        &self.table
    }

    /// Transducer `Σ × Σ_#` with value `P(w' | w' ∈ L_p)`, or conditioned on
    /// `L_swap(p, i)` when `swap` is `Some(i)`.
    pub fn conditional(&self, swap: Option<usize>) -> Result<Pipeline<S>> {
        let inverse_prob = build_inverse_prob_dwa(self.len, &self.table, &self.alphabet, swap)?;
        let matcher = match swap {
            Some(i) => build_swap_indicator_dft(&self.alphabet, i)?.into(),
            None => self.indicator.clone(),
        };
        let joint = Pipeline::inverse(Pipeline::times(self.word_prob.clone(), matcher)?)?;
        Pipeline::inverse(Pipeline::times(inverse_prob, joint)?)
    }
}

/// Conditional transducer built from scratch; see [`Conditioner::conditional`].
pub fn build_conditional_wt<S: Scalar>(len: usize, p: &MarkovChain<S>, swap: Option<usize>) -> Result<Pipeline<S>> {
    Conditioner::new(len, p)?.conditional(swap)
}
