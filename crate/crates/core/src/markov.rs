//! First-order Markov distributions over words with position-indexed
//! transition matrices, and the sequentialisation of boolean vector chains.

use crate::alphabet::Alphabet;
use crate::error::{config_err, contract, Result};
use crate::pattern::Pattern;
use crate::scalar::Scalar;

/// Row-major dense stochastic matrix: `m[from][to]`.
pub type Stochastic<S> = Vec<Vec<S>>;

const NORMALISATION_TOL: f64 = 1e-12;

/// Default cap on word length for exhaustive probability sums.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// Rule for positions beyond a stored positional list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    RepeatLast,
    Uniform,
}

impl Extension {
    pub fn name(self) -> &'static str {
        match self {
            Extension::RepeatLast => "repeat-last",
            Extension::Uniform => "uniform",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "repeat-last" => Ok(Extension::RepeatLast),
            "uniform" => Ok(Extension::Uniform),
            other => Err(config_err!("unknown extension rule {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Transitions<S> {
    /// One matrix for every position.
    Stationary(Stochastic<S>),
    /// `matrices[i - 1]` is `P_i`; later positions follow `extension`.
    Positional { matrices: Vec<Stochastic<S>>, extension: Extension },
}

/// Distribution `P(w) = P_init(w_1) · Π_{i<n} P_i[w_i, w_{i+1}]`.
///
/// `P_i` governs the step from position `i` to position `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain<S> {
    alphabet: Alphabet,
    init: Vec<S>,
    transitions: Transitions<S>,
    uniform: Stochastic<S>,
}

fn check_distribution<S: Scalar>(row: &[S], what: &str) -> Result<()> {
    let mut total = S::zero();
    for (j, v) in row.iter().enumerate() {
        if !v.is_finite_value() {
            return Err(config_err!("{what}: entry {j} is not finite"));
        }
        if *v <= S::zero() {
            return Err(config_err!("{what}: entry {j} is not strictly positive"));
        }
        total = total + v.clone();
    }
    let off = if S::is_exact() { total != S::one() } else { (total.to_f64_lossy() - 1.0).abs() > NORMALISATION_TOL };
    if off {
        return Err(config_err!("{what}: sums to {total:?} instead of 1"));
    }
    Ok(())
}

fn check_stochastic<S: Scalar>(m: &Stochastic<S>, size: usize, what: &str) -> Result<()> {
    if m.len() != size || m.iter().any(|r| r.len() != size) {
        return Err(config_err!("{what}: expected a {size}x{size} matrix"));
    }
    for (r, row) in m.iter().enumerate() {
        check_distribution(row, &format!("{what}, row {r}"))?;
    }
    Ok(())
}

impl<S: Scalar> MarkovChain<S> {
    pub fn new(alphabet: Alphabet, init: Vec<S>, transitions: Transitions<S>) -> Result<Self> {
        if alphabet.is_extended() {
            return Err(config_err!("a Markov chain is defined over a base alphabet without '#'"));
        }
        let size = alphabet.len();
        if init.len() != size {
            return Err(config_err!("initial distribution has {} entries, alphabet has {size}", init.len()));
        }
        check_distribution(&init, "initial distribution")?;
        match &transitions {
            Transitions::Stationary(m) => check_stochastic(m, size, "stationary matrix")?,
            Transitions::Positional { matrices, .. } => {
                for (i, m) in matrices.iter().enumerate() {
                    check_stochastic(m, size, &format!("matrix P_{}", i + 1))?;
                }
            }
        }
        let u = S::one() / S::from_count(size as u128);
        let uniform = vec![vec![u; size]; size];
        Ok(MarkovChain { alphabet, init, transitions, uniform })
    }

    pub fn stationary(alphabet: Alphabet, init: Vec<S>, matrix: Stochastic<S>) -> Result<Self> {
        Self::new(alphabet, init, Transitions::Stationary(matrix))
    }

    pub fn positional(alphabet: Alphabet, init: Vec<S>, matrices: Vec<Stochastic<S>>, extension: Extension) -> Result<Self> {
        Self::new(alphabet, init, Transitions::Positional { matrices, extension })
    }

    /// Independent uniform symbols.
    pub fn uniform(alphabet: Alphabet) -> Result<Self> {
        let size = alphabet.len();
        let u = S::one() / S::from_count(size as u128);
        Self::stationary(alphabet, vec![u.clone(); size], vec![vec![u; size]; size])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn init(&self) -> &[S] {
        &self.init
    }

    pub fn transitions(&self) -> &Transitions<S> {
        &self.transitions
    }

    /// `P_i` for `i ≥ 1`.
    pub fn transition_matrix(&self, i: usize) -> Result<&Stochastic<S>> {
        if i == 0 {
            return Err(contract!("transition matrices are indexed from 1"));
        }
        match &self.transitions {
            Transitions::Stationary(m) => Ok(m),
            Transitions::Positional { matrices, extension } => match (matrices.get(i - 1), extension) {
                (Some(m), _) => Ok(m),
                (None, Extension::Uniform) => Ok(&self.uniform),
                (None, Extension::RepeatLast) => matrices
                    .last()
                    .ok_or_else(|| config_err!("positional chain has no matrix to repeat for P_{i}")),
            },
        }
    }

    pub fn seq_probability(&self, w: &[usize]) -> Result<S> {
        let Some((&first, _)) = w.split_first() else {
            return Err(contract!("sequence probability needs a non-empty word"));
        };
        self.alphabet.check_word(w)?;
        let mut p = self.init[first].clone();
        for (i, pair) in w.windows(2).enumerate() {
            p = p * self.transition_matrix(i + 1)?[pair[0]][pair[1]].clone();
        }
        Ok(p)
    }

    /// `P(L_p)` by summing over every matching word.
    pub fn pattern_probability(&self, p: &Pattern) -> Result<S> {
        self.pattern_probability_capped(p, DEFAULT_ENUMERATION_CAP)
    }

    pub fn pattern_probability_capped(&self, p: &Pattern, cap: usize) -> Result<S> {
        if p.is_empty() {
            return Err(contract!("pattern probability needs a non-empty pattern"));
        }
        if p.len() > cap {
            return Err(crate::Error::Scale(format!("pattern length {} exceeds enumeration cap {cap}", p.len())));
        }
        if p.alphabet().base() != self.alphabet {
            return Err(contract!("pattern alphabet differs from the chain alphabet"));
        }
        let mut total = S::zero();
        for w in self.alphabet.words(p.len()) {
            if p.matches(&w) {
                total = total + self.seq_probability(&w)?;
            }
        }
        Ok(total)
    }

    /// Converts every probability with `f`, re-validating the result.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Result<MarkovChain<T>> {
        let m = |m: &Stochastic<S>| m.iter().map(|r| r.iter().map(&f).collect()).collect();
        let transitions = match &self.transitions {
            Transitions::Stationary(s) => Transitions::Stationary(m(s)),
            Transitions::Positional { matrices, extension } => {
                Transitions::Positional { matrices: matrices.iter().map(m).collect(), extension: *extension }
            }
        };
        MarkovChain::new(self.alphabet.clone(), self.init.iter().map(&f).collect(), transitions)
    }
}

/// Markov chain over boolean vectors `X_1 … X_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorMarkov<S> {
    init: [S; 2],
    transitions: Vec<[[S; 2]; 2]>,
}

impl<S: Scalar> VectorMarkov<S> {
    /// `transitions[i - 1][a][b] = P_i(X_{i+1} = b | X_i = a)`; the number of
    /// variables is `transitions.len() + 1`.
    pub fn new(init: [S; 2], transitions: Vec<[[S; 2]; 2]>) -> Result<Self> {
        check_distribution(&init, "initial distribution")?;
        for (i, m) in transitions.iter().enumerate() {
            for (r, row) in m.iter().enumerate() {
                check_distribution(row, &format!("matrix P_{}, row {r}", i + 1))?;
            }
        }
        Ok(VectorMarkov { init, transitions })
    }

    /// Independent variables with `P(X_i = 1) = q`.
    pub fn independent(num_vars: usize, q: S) -> Result<Self> {
        if num_vars == 0 {
            return Err(config_err!("at least one variable is required"));
        }
        let row = [S::one() - q.clone(), q];
        Self::new(row.clone(), vec![[row.clone(), row]; num_vars - 1])
    }

    pub fn num_vars(&self) -> usize {
        self.transitions.len() + 1
    }

    pub fn init(&self) -> &[S; 2] {
        &self.init
    }

    pub fn transitions(&self) -> &[[[S; 2]; 2]] {
        &self.transitions
    }

    /// Chain over `{"0","1"}` agreeing on positions `1..=N` and uniform after.
    pub fn sequentialize(&self) -> MarkovChain<S> {
        let matrices = self.transitions.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect();
        MarkovChain::positional(Alphabet::binary(), self.init.to_vec(), matrices, Extension::Uniform)
            .expect("validated vector chain yields a valid sequence chain")
    }
}
