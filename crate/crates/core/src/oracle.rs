//! Brute-force reference computations by exhaustive enumeration.
//!
//! Nothing here goes through the pipeline or conditioning code: conditional
//! expectations, coalition weights and word probabilities are recomputed
//! from the raw chain parameters. Running time is exponential, so inputs are
//! capped.

use std::collections::BTreeMap;

use crate::alphabet::Word;
use crate::error::{contract, Error, Result};
use crate::markov::{MarkovChain, VectorMarkov};
use crate::scalar::Scalar;
use crate::shap::WeightMode;
use crate::wa::WeightedAutomaton;

/// Largest table [`enumerate_language`] will build.
pub const MAX_LANGUAGE_TABLE: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_len: usize,
    pub max_vars: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_len: 12, max_vars: 12 }
    }
}

impl OracleConfig {
    fn check_len(&self, n: usize) -> Result<()> {
        if n > self.max_len {
            return Err(Error::Scale(format!("word length {n} exceeds oracle cap {}", self.max_len)));
        }
        Ok(())
    }

    fn check_vars(&self, n: usize) -> Result<()> {
        if n > self.max_vars {
            return Err(Error::Scale(format!("{n} variables exceed oracle cap {}", self.max_vars)));
        }
        Ok(())
    }
}

/// Every word of length `n` over `size` symbols, last position fastest.
fn words(size: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..size).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

fn chain_probability<S: Scalar>(chain: &MarkovChain<S>, w: &[usize]) -> Result<S> {
    let mut p = chain.init()[w[0]].clone();
    for j in 1..w.len() {
        p = p * chain.transition_matrix(j)?[w[j - 1]][w[j]].clone();
    }
    Ok(p)
}

fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, j| acc * S::from_count(j as u128))
}

/// Coalition weight for a coalition of `s` players out of `n` (the
/// explained player counted in `s` for the literal form, excluded otherwise).
fn subset_weight<S: Scalar>(n: usize, s: usize) -> S {
    factorial::<S>(s) * factorial::<S>(n - s - 1) / factorial::<S>(n)
}

/// Conditional expectation of `values` given the fixed positions `mask`
/// agree with `anchor`, under the weights `probs`.
fn conditional<S: Scalar>(all: &[Word], probs: &[S], values: &[S], anchor: &[usize], mask: u32) -> S {
    let mut num = S::zero();
    let mut den = S::zero();
    for ((w, p), v) in all.iter().zip(probs).zip(values) {
        let agrees = (0..anchor.len()).all(|j| mask & (1 << j) == 0 || w[j] == anchor[j]);
        if agrees {
            num = num + p.clone() * v.clone();
            den = den + p.clone();
        }
    }
    num / den
}

/// Exhaustive word table with probabilities and model values.
struct Table<S> {
    words: Vec<Word>,
    probs: Vec<S>,
    values: Vec<S>,
}

impl<S: Scalar> Table<S> {
    fn new(f: &dyn Fn(&[usize]) -> Result<S>, chain: &MarkovChain<S>, n: usize) -> Result<Self> {
        let words = words(chain.alphabet().len(), n);
        let probs = words.iter().map(|w| chain_probability(chain, w)).collect::<Result<Vec<_>>>()?;
        let values = words.iter().map(|w| f(w)).collect::<Result<Vec<_>>>()?;
        Ok(Table { words, probs, values })
    }

    /// `V` for the pattern of `anchor` fixing exactly the positions in `mask`.
    fn value(&self, anchor: &[usize], mask: u32) -> S {
        conditional(&self.words, &self.probs, &self.values, anchor, mask)
    }
}

/// Splits a pattern over the extended alphabet into (anchor, fixed mask).
fn anchor_of(p: &[usize], hash: usize) -> (Word, u32) {
    let mut mask = 0u32;
    let anchor = p
        .iter()
        .enumerate()
        .map(|(j, &e)| {
            if e == hash {
                0
            } else {
                mask |= 1 << j;
                e
            }
        })
        .collect();
    (anchor, mask)
}

/// `E[f(w') | w' ∈ L_p]`; `p` indexes the extended alphabet of the chain.
pub fn oracle_value<S: Scalar>(
    f: &dyn Fn(&[usize]) -> Result<S>,
    p: &[usize],
    chain: &MarkovChain<S>,
    cfg: &OracleConfig,
) -> Result<S> {
    if p.is_empty() {
        return Err(contract!("the pattern must be non-empty"));
    }
    cfg.check_len(p.len())?;
    let table = Table::new(f, chain, p.len())?;
    let (anchor, mask) = anchor_of(p, chain.alphabet().len());
    Ok(table.value(&anchor, mask))
}

fn fixed_masks(n: usize, hashes: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |m| n - m.count_ones() as usize == hashes)
}

/// Mean of `V(p)` over the patterns of `w` with `k` hashes, and the mean of
/// `V(swap(p, i))` when `swap` is `Some(i)`.
pub fn oracle_pattern_mean<S: Scalar>(
    f: &dyn Fn(&[usize]) -> Result<S>,
    w: &[usize],
    k: usize,
    swap: Option<usize>,
    chain: &MarkovChain<S>,
    cfg: &OracleConfig,
) -> Result<S> {
    let n = w.len();
    cfg.check_len(n)?;
    if k > n {
        return Err(contract!("hash count {k} exceeds word length {n}"));
    }
    let table = Table::new(f, chain, n)?;
    let mut total = S::zero();
    let mut count = 0u128;
    for mask in fixed_masks(n, k) {
        let mask = match swap {
            Some(i) => mask & !(1 << (i - 1)),
            None => mask,
        };
        total = total + table.value(w, mask);
        count += 1;
    }
    Ok(total / S::from_count(count))
}

/// SHAP score of position `i` by enumerating every pattern of `w`.
pub fn oracle_shap_patterns<S: Scalar>(
    f: &dyn Fn(&[usize]) -> Result<S>,
    w: &[usize],
    i: usize,
    chain: &MarkovChain<S>,
    mode: WeightMode,
    cfg: &OracleConfig,
) -> Result<S> {
    let n = w.len();
    if n == 0 || i == 0 || i > n {
        return Err(contract!("position {i} outside 1..={n}"));
    }
    cfg.check_len(n)?;
    let table = Table::new(f, chain, n)?;
    let bit = 1u32 << (i - 1);
    let hash_counts = match mode {
        WeightMode::PaperLiteral => 1..n,
        WeightMode::ClassicShapley => 0..n,
    };
    let mut score = S::zero();
    for m in hash_counts {
        let coef = match mode {
            WeightMode::PaperLiteral => S::one() / S::from_count(m as u128),
            WeightMode::ClassicShapley => S::one() / S::from_count((n - m) as u128),
        };
        let mut total = S::zero();
        let mut count = 0u128;
        for mask in fixed_masks(n, m) {
            total = total + table.value(w, mask) - table.value(w, mask & !bit);
            count += 1;
        }
        score = score + coef * total / S::from_count(count);
    }
    Ok(score)
}

fn vector_probability<S: Scalar>(pv: &VectorMarkov<S>, x: &[bool]) -> S {
    let mut p = pv.init()[x[0] as usize].clone();
    for (j, m) in pv.transitions().iter().enumerate() {
        p = p * m[x[j] as usize][x[j + 1] as usize].clone();
    }
    p
}

/// SHAP score of variable `i` (1-based) of a boolean function by
/// enumerating coalitions `S ⊆ [N]`.
///
/// Literal mode sums `|S|!(N−|S|−1)!/N! [v(S) − v(S∖{i})]` over `S ∋ i`
/// with `1 ≤ |S| ≤ N−1`; classic mode sums the same weight on
/// `v(S ∪ {i}) − v(S)` over `S ∌ i`.
pub fn oracle_shap_subsets<S: Scalar>(
    f: &dyn Fn(&[bool]) -> S,
    x: &[bool],
    i: usize,
    pv: &VectorMarkov<S>,
    mode: WeightMode,
    cfg: &OracleConfig,
) -> Result<S> {
    let n = pv.num_vars();
    if x.len() != n {
        return Err(contract!("instance has {} variables, distribution has {n}", x.len()));
    }
    if i == 0 || i > n {
        return Err(contract!("variable {i} outside 1..={n}"));
    }
    cfg.check_vars(n)?;
    let points: Vec<Vec<bool>> = (0u32..1 << n).map(|b| (0..n).map(|j| b & (1 << j) != 0).collect()).collect();
    let probs: Vec<S> = points.iter().map(|z| vector_probability(pv, z)).collect();
    let values: Vec<S> = points.iter().map(|z| f(z)).collect();
    let v = |set: u32| {
        let mut num = S::zero();
        let mut den = S::zero();
        for ((z, p), val) in points.iter().zip(&probs).zip(&values) {
            if (0..n).all(|j| set & (1 << j) == 0 || z[j] == x[j]) {
                num = num + p.clone() * val.clone();
                den = den + p.clone();
            }
        }
        num / den
    };
    let bit = 1u32 << (i - 1);
    let mut score = S::zero();
    for set in 0u32..1 << n {
        let size = set.count_ones() as usize;
        match mode {
            WeightMode::PaperLiteral => {
                if set & bit != 0 && size < n {
                    score = score + subset_weight::<S>(n, size) * (v(set) - v(set & !bit));
                }
            }
            WeightMode::ClassicShapley => {
                if set & bit == 0 {
                    score = score + subset_weight::<S>(n, size) * (v(set | bit) - v(set));
                }
            }
        }
    }
    Ok(score)
}

/// Value of `a` on every word of length `n`.
pub fn enumerate_language<S: Scalar>(a: &WeightedAutomaton<S>, n: usize) -> Result<BTreeMap<Word, S>> {
    let size = a.alphabet().len();
    let fits = (size as f64).powi(n as i32) <= MAX_LANGUAGE_TABLE as f64;
    if !fits {
        return Err(Error::Scale(format!("{size}^{n} words exceed the table cap {MAX_LANGUAGE_TABLE}")));
    }
    words(size, n).into_iter().map(|w| Ok((w.clone(), a.evaluate(&w)?))).collect()
}
