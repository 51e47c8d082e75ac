//! SHAP scores of a weighted automaton under a Markov chain, computed as
//! partition constants of operator pipelines over patterns.

use std::fmt;

use rayon::prelude::*;

use crate::alphabet::{Alphabet, Word};
use crate::conditioning::Conditioner;
use crate::error::{contract, Result};
use crate::markov::MarkovChain;
use crate::pattern::{build_pattern_family_wa, build_pattern_wa, pattern_family_beta, Pattern};
use crate::scalar::Scalar;
use crate::wa::{Pipeline, WeightedAutomaton};

/// Coalition weighting used to combine the per-`m` expectations, where `m`
/// is the number of free positions in a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightMode {
    /// `Σ_{m=1}^{n-1} (1/m) [SHAP1(m) − SHAP2(i, m)]`.
    PaperLiteral,
    /// `Σ_{m=0}^{n-1} (1/(n−m)) [SHAP1(m) − SHAP2(i, m)]`, the classical
    /// Shapley kernel.
    ClassicShapley,
}

impl WeightMode {
    pub fn name(self) -> &'static str {
        match self {
            WeightMode::PaperLiteral => "paper",
            WeightMode::ClassicShapley => "classic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "paper" => Some(WeightMode::PaperLiteral),
            "classic" => Some(WeightMode::ClassicShapley),
            _ => None,
        }
    }

    /// Hash counts contributing to a score for words of length `n`, ascending.
    pub fn hash_counts(self, n: usize) -> std::ops::Range<usize> {
        match self {
            WeightMode::PaperLiteral => 1..n.max(1),
            WeightMode::ClassicShapley => 0..n,
        }
    }

    /// Coefficient of the `m`-hash term for words of length `n`.
    pub fn coefficient<S: Scalar>(self, n: usize, m: usize) -> S {
        let d = match self {
            WeightMode::PaperLiteral => m,
            WeightMode::ClassicShapley => n - m,
        };
        S::one() / S::from_count(d as u128)
    }
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Expectations for one hash count `k`: over patterns `p` of the instance
/// with `k` hashes, the mean of `V(p)` and of `V(swap(p, i))`.
#[derive(Debug, Clone, PartialEq)]
pub struct KTerm<S> {
    pub k: usize,
    pub shap1: S,
    pub shap2: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapReport<S> {
    pub word: Word,
    /// 1-based.
    pub position: usize,
    pub score: S,
    pub mode: WeightMode,
    pub per_k_terms: Option<Vec<KTerm<S>>>,
}

impl<S: Scalar> ShapReport<S> {
    /// Score recomputed from `per_k_terms` in ascending `k`.
    pub fn recombine(&self) -> Option<S> {
        let n = self.word.len();
        let terms = self.per_k_terms.as_ref()?;
        Some(combine(self.mode, n, terms))
    }
}

fn combine<S: Scalar>(mode: WeightMode, n: usize, terms: &[KTerm<S>]) -> S {
    terms.iter().fold(S::zero(), |acc, t| {
        acc + mode.coefficient::<S>(n, t.k) * (t.shap1.clone() - t.shap2.clone())
    })
}

/// Everything needed to score the positions of one instance: the model, the
/// word, the chain and the position-independent pipelines built from them.
#[derive(Debug, Clone)]
pub struct ShapEngine<S> {
    alphabet: Alphabet,
    word: Word,
    model: Pipeline<S>,
    conditioner: Conditioner<S>,
    family: Pipeline<S>,
    value: Pipeline<S>,
}

impl<S: Scalar> ShapEngine<S> {
    pub fn new(model: &WeightedAutomaton<S>, word: &[usize], chain: &MarkovChain<S>) -> Result<Self> {
        let alphabet = chain.alphabet().clone();
        if model.alphabet() != &alphabet {
            return Err(contract!("model alphabet {:?} differs from chain alphabet {:?}", model.alphabet(), alphabet));
        }
        if word.is_empty() {
            return Err(contract!("the explained word must be non-empty"));
        }
        alphabet.check_word(word)?;
        let model: Pipeline<S> = model.clone().into();
        let conditioner = Conditioner::new(word.len(), chain)?;
        let value = Pipeline::project(model.clone(), conditioner.conditional(None)?)?;
        Ok(ShapEngine {
            family: build_pattern_family_wa(&alphabet, word)?.into(),
            alphabet,
            word: word.to_vec(),
            model,
            conditioner,
            value,
        })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    fn n(&self) -> usize {
        self.word.len()
    }

    /// `V(p) = E[f(w') | w' ∈ L_p]`, read off the projected conditional
    /// transducer at `p`.
    pub fn value(&self, p: &Pattern) -> Result<S> {
        if p.len() != self.n() {
            return Err(contract!("pattern length {} differs from instance length {}", p.len(), self.n()));
        }
        if p.alphabet().base() != self.alphabet {
            return Err(contract!("pattern alphabet differs from the model alphabet"));
        }
        self.value.evaluate(p.entries())
    }

    fn projected(&self, swap: Option<usize>) -> Result<Pipeline<S>> {
        match swap {
            None => Ok(self.value.clone()),
            Some(i) => Pipeline::project(self.model.clone(), self.conditioner.conditional(Some(i))?),
        }
    }

    fn check_position(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            return Err(contract!("position {i} outside 1..={}", self.n()));
        }
        Ok(())
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k > self.n() {
            return Err(contract!("hash count {k} exceeds instance length {}", self.n()));
        }
        Ok(())
    }

    fn single(&self, swap: Option<usize>, k: usize) -> Result<S> {
        self.check_k(k)?;
        let pattern: Pipeline<S> = build_pattern_wa(&self.alphabet, &self.word, k)?.into();
        Pipeline::product(pattern, self.projected(swap)?)?.partition_constant(self.n())
    }

    /// Mean of `V(p)` over the patterns of the instance with `k` hashes.
    pub fn shap1(&self, k: usize) -> Result<S> {
        self.single(None, k)
    }

    /// Mean of `V(swap(p, i))` over the patterns of the instance with `k` hashes.
    pub fn shap2(&self, i: usize, k: usize) -> Result<S> {
        self.check_position(i)?;
        self.single(Some(i), k)
    }

    /// The requested `k` values in one propagation.
    fn batch(&self, swap: Option<usize>, ks: &[usize]) -> Result<Vec<S>> {
        let n = self.n();
        let betas = ks.iter().map(|&k| pattern_family_beta(n, k)).collect::<Result<Vec<_>>>()?;
        let root = Pipeline::product(self.family.clone(), self.projected(swap)?)?;
        root.partition_constants_with_finals(n, &self.family, &betas)
    }

    fn report(&self, i: usize, mode: WeightMode, ks: &[usize], s1: &[S], s2: &[S], verbose: bool) -> ShapReport<S> {
        let terms: Vec<KTerm<S>> = ks
            .iter()
            .zip(s1.iter().zip(s2))
            .map(|(&k, (a, b))| KTerm { k, shap1: a.clone(), shap2: b.clone() })
            .collect();
        ShapReport {
            word: self.word.clone(),
            position: i,
            score: combine(mode, self.n(), &terms),
            mode,
            per_k_terms: verbose.then_some(terms),
        }
    }

    /// Score of 1-based position `i`.
    pub fn shap(&self, i: usize, mode: WeightMode, verbose: bool) -> Result<ShapReport<S>> {
        self.check_position(i)?;
        let ks: Vec<usize> = mode.hash_counts(self.n()).collect();
        let s1 = self.batch(None, &ks)?;
        let s2 = self.batch(Some(i), &ks)?;
        Ok(self.report(i, mode, &ks, &s1, &s2, verbose))
    }

    /// Scores of every position; positions run in parallel on the current
    /// rayon pool, with results in position order.
    pub fn shap_vector(&self, mode: WeightMode, verbose: bool) -> Result<Vec<ShapReport<S>>> {
        self.shap_positions(&(1..=self.n()).collect::<Vec<_>>(), mode, verbose)
    }

    pub fn shap_positions(&self, positions: &[usize], mode: WeightMode, verbose: bool) -> Result<Vec<ShapReport<S>>> {
        for &i in positions {
            self.check_position(i)?;
        }
        let ks: Vec<usize> = mode.hash_counts(self.n()).collect();
        let s1 = self.batch(None, &ks)?;
        positions
            .par_iter()
            .map(|&i| {
                let s2 = self.batch(Some(i), &ks)?;
                Ok(self.report(i, mode, &ks, &s1, &s2, verbose))
            })
            .collect()
    }
}

/// `E[f_A(w') | w' ∈ L_p]` under `chain`, through the conditional transducer.
pub fn value_v<S: Scalar>(a: &WeightedAutomaton<S>, p: &Pattern, chain: &MarkovChain<S>) -> Result<S> {
    if p.is_empty() {
        return Err(contract!("the pattern must be non-empty"));
    }
    let w = vec![0; p.len()];
    ShapEngine::new(a, &w, chain)?.value(p)
}

pub fn shap1<S: Scalar>(a: &WeightedAutomaton<S>, w: &[usize], k: usize, chain: &MarkovChain<S>) -> Result<S> {
    ShapEngine::new(a, w, chain)?.shap1(k)
}

pub fn shap2<S: Scalar>(a: &WeightedAutomaton<S>, w: &[usize], i: usize, k: usize, chain: &MarkovChain<S>) -> Result<S> {
    ShapEngine::new(a, w, chain)?.shap2(i, k)
}

pub fn shap<S: Scalar>(
    a: &WeightedAutomaton<S>,
    w: &[usize],
    i: usize,
    chain: &MarkovChain<S>,
    mode: WeightMode,
) -> Result<ShapReport<S>> {
    ShapEngine::new(a, w, chain)?.shap(i, mode, true)
}

pub fn shap_vector<S: Scalar>(
    a: &WeightedAutomaton<S>,
    w: &[usize],
    chain: &MarkovChain<S>,
    mode: WeightMode,
) -> Result<Vec<ShapReport<S>>> {
    ShapEngine::new(a, w, chain)?.shap_vector(mode, true)
}
