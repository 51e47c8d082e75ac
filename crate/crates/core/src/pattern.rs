//! Fixed-length patterns over `Σ ∪ {#}` and the automaton of the uniform
//! distribution over the patterns of an instance with a given number of `#`.

use std::fmt;

use num_integer::Integer;

use crate::alphabet::Alphabet;
use crate::error::{contract, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::wa::WeightedAutomaton;

/// A word over the extended alphabet; `#` marks a free position.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    alphabet: Alphabet,
    entries: Vec<usize>,
}

impl Pattern {
    /// `entries` index the extended alphabet (the hash is `alphabet.base_len()`).
    pub fn new(alphabet: &Alphabet, entries: Vec<usize>) -> Result<Self> {
        let alphabet = alphabet.extended();
        alphabet.check_word(&entries)?;
        Ok(Pattern { alphabet, entries })
    }

    /// Parses a character pattern such as `"#b#a#"`.
    pub fn parse(alphabet: &Alphabet, s: &str) -> Result<Self> {
        let alphabet = alphabet.extended();
        let entries = alphabet.encode_str(s)?;
        Ok(Pattern { alphabet, entries })
    }

    /// The fully fixed pattern equal to `w`.
    pub fn from_word(alphabet: &Alphabet, w: &[usize]) -> Result<Self> {
        alphabet.base().check_word(w)?;
        Ok(Pattern { alphabet: alphabet.extended(), entries: w.to_vec() })
    }

    pub fn all_hash(alphabet: &Alphabet, n: usize) -> Self {
        let alphabet = alphabet.extended();
        let h = alphabet.base_len();
        Pattern { alphabet, entries: vec![h; n] }
    }

    /// Extended alphabet the entries index into.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn hash(&self) -> usize {
        self.alphabet.base_len()
    }

    /// Whether 0-based position `j` is free.
    pub fn is_hash(&self, j: usize) -> bool {
        self.entries[j] == self.hash()
    }

    pub fn num_hashes(&self) -> usize {
        self.entries.iter().filter(|&&e| e == self.hash()).count()
    }

    /// Frees 1-based position `i`.
    pub fn swap(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.len() {
            return Err(contract!("swap position {i} outside 1..={}", self.len()));
        }
        let mut p = self.clone();
        p.entries[i - 1] = self.hash();
        Ok(p)
    }

    /// `w ∈ L_p` for a word over the base alphabet.
    pub fn matches(&self, w: &[usize]) -> bool {
        let h = self.hash();
        w.len() == self.len() && self.entries.iter().zip(w).all(|(&e, &s)| e == h || e == s)
    }

    /// Greatest 1-based fixed position, 0 when every position is free.
    pub fn pos(&self) -> usize {
        let h = self.hash();
        self.entries.iter().rposition(|&e| e != h).map_or(0, |j| j + 1)
    }

    /// Symbol at [`Pattern::pos`], `None` standing for the start-of-sequence marker.
    pub fn sym(&self) -> Option<usize> {
        match self.pos() {
            0 => None,
            j => Some(self.entries[j - 1]),
        }
    }

    /// String form when every symbol is one character, token array with
    /// `null` for `#` otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        if self.alphabet.is_char_based() {
            serde_json::Value::String(self.to_string())
        } else {
            let h = self.hash();
            self.entries
                .iter()
                .map(|&e| if e == h { serde_json::Value::Null } else { self.alphabet.symbol(e).into() })
                .collect()
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet.is_char_based() {
            f.write_str(&self.alphabet.decode(&self.entries))
        } else {
            let tokens: Vec<&str> = self.entries.iter().map(|&e| self.alphabet.symbol(e)).collect();
            write!(f, "[{}]", tokens.join(" "))
        }
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

/// `binomial(n, k)`, the number of patterns of a length-`n` word with `k` hashes.
pub fn coalition_count(n: usize, k: usize) -> Result<u128> {
    if k > n {
        return Err(contract!("coalition size {k} exceeds word length {n}"));
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for j in 0..k {
        // c * (n - j) is divisible by (j + 1); cancel first to delay overflow.
        let d = j as u128 + 1;
        let g = c.gcd(&d);
        c = (c / g)
            .checked_mul((n - j) as u128 / (d / g))
            .ok_or_else(|| Error::Scale(format!("binomial({n}, {k}) overflows")))?;
    }
    Ok(c)
}

/// Automaton over `Σ_#` with value `1 / binomial(|w|, k)` on each pattern of
/// `w` with exactly `k` hashes and 0 elsewhere. State `(l, h)` (symbols read,
/// hashes read) has index `l * (k + 1) + h`.
pub fn build_pattern_wa<S: Scalar>(alphabet: &Alphabet, w: &[usize], k: usize) -> Result<WeightedAutomaton<S>> {
    let base = alphabet.base();
    base.check_word(w)?;
    let n = w.len();
    let count = coalition_count(n, k)?;
    let ext = base.extended();
    let hash = ext.base_len();
    let dim = (n + 1) * (k + 1);
    let idx = |l: usize, h: usize| l * (k + 1) + h;

    let mut mats = vec![Matrix::zeros(dim, dim); ext.len()];
    for (l, &s) in w.iter().enumerate() {
        for h in 0..=k {
            mats[s].set(idx(l, h), idx(l + 1, h), S::one());
            if h < k {
                mats[hash].set(idx(l, h), idx(l + 1, h + 1), S::one());
            }
        }
    }
    let mut alpha = vec![S::zero(); dim];
    alpha[idx(0, 0)] = S::one() / S::from_count(count);
    let mut beta = vec![S::zero(); dim];
    beta[idx(n, k)] = S::one();
    WeightedAutomaton::new(ext, alpha, beta, mats)
}

/// Unnormalised automaton accepting every pattern of `w`, with state
/// `(l, h)` at index `l * (|w| + 1) + h` and final weight 1 on every
/// `(|w|, h)`. Replacing the final vector by [`pattern_family_beta`] for `k`
/// yields the same language as [`build_pattern_wa`] for `k`.
pub fn build_pattern_family_wa<S: Scalar>(alphabet: &Alphabet, w: &[usize]) -> Result<WeightedAutomaton<S>> {
    let n = w.len();
    let full = build_pattern_wa::<S>(alphabet, w, n)?;
    let mut alpha = vec![S::zero(); full.dim()];
    alpha[0] = S::one();
    let beta = (0..full.dim()).map(|q| if q / (n + 1) == n { S::one() } else { S::zero() }).collect();
    WeightedAutomaton::new(full.alphabet().clone(), alpha, beta, full.transitions().to_vec())
}

/// Final vector selecting `k` hashes in [`build_pattern_family_wa`], with
/// the uniform normalisation folded in.
pub fn pattern_family_beta<S: Scalar>(n: usize, k: usize) -> Result<Vec<S>> {
    let count = coalition_count(n, k)?;
    let mut beta = vec![S::zero(); (n + 1) * (n + 1)];
    beta[n * (n + 1) + k] = S::one() / S::from_count(count);
    Ok(beta)
}
