//! Finite alphabets and words over them.

use std::fmt;
use std::sync::Arc;

use crate::error::{contract, Error, Result};

/// Reserved token for the "any symbol" pattern entry.
pub const HASH: &str = "#";

/// A word is a sequence of symbol indices into some [`Alphabet`].
pub type Word = Vec<usize>;

/// Ordered finite set of tokens.
///
/// The extended variant used for patterns carries `#` as its last symbol;
/// it can only be obtained through [`Alphabet::extended`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Arc<[String]>,
    extended: bool,
}

impl Alphabet {
    pub fn new<I, T>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(contract!("alphabet must contain at least one symbol"));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(contract!("empty symbol in alphabet"));
            }
            if s == HASH {
                return Err(contract!("'#' is reserved and cannot be an alphabet symbol"));
            }
            if symbols[..i].contains(s) {
                return Err(contract!("duplicate symbol {s:?} in alphabet"));
            }
        }
        Ok(Alphabet { symbols: symbols.into(), extended: false })
    }

    /// One alphabet symbol per character of `chars`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    /// Parses a token list as written in model files: a trailing `#`
    /// denotes the extended alphabet.
    pub fn from_tokens(tokens: &[String]) -> Result<Self> {
        match tokens.split_last() {
            Some((last, base)) if last == HASH => Ok(Self::new(base.iter().cloned())?.extended()),
            _ => Self::new(tokens.iter().cloned()),
        }
    }

    pub fn binary() -> Self {
        Self::new(["0", "1"]).expect("valid alphabet")
    }

    /// `Σ ∪ {#}`; idempotent.
    pub fn extended(&self) -> Alphabet {
        Alphabet { symbols: self.symbols.clone(), extended: true }
    }

    /// The alphabet without `#`.
    pub fn base(&self) -> Alphabet {
        Alphabet { symbols: self.symbols.clone(), extended: false }
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    /// Number of symbols including `#` for extended alphabets.
    pub fn len(&self) -> usize {
        self.symbols.len() + usize::from(self.extended)
    }

    /// Number of symbols excluding `#`.
    pub fn base_len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of `#`, if present.
    pub fn hash_index(&self) -> Option<usize> {
        self.extended.then_some(self.symbols.len())
    }

    pub fn symbol(&self, index: usize) -> &str {
        if Some(index) == self.hash_index() {
            HASH
        } else {
            &self.symbols[index]
        }
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        if self.extended && token == HASH {
            return Some(self.symbols.len());
        }
        self.symbols.iter().position(|s| s == token)
    }

    pub fn tokens(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.symbol(i).to_string()).collect()
    }

    /// True when every symbol is a single character.
    pub fn is_char_based(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    pub fn encode_tokens<T: AsRef<str>>(&self, tokens: &[T]) -> Result<Word> {
        tokens
            .iter()
            .enumerate()
            .map(|(pos, t)| {
                self.index_of(t.as_ref()).ok_or_else(|| Error::UnknownSymbol {
                    symbol: t.as_ref().to_string(),
                    position: pos + 1,
                })
            })
            .collect()
    }

    /// Encodes a word written one character per symbol.
    pub fn encode_str(&self, word: &str) -> Result<Word> {
        let tokens: Vec<String> = word.chars().map(String::from).collect();
        self.encode_tokens(&tokens)
    }

    /// Verifies that every index is in range.
    pub fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().position(|&s| s >= self.len()) {
            Some(pos) => Err(Error::UnknownSymbol { symbol: format!("#{}", word[pos]), position: pos + 1 }),
            None => Ok(()),
        }
    }

    pub fn decode(&self, word: &[usize]) -> String {
        let sep = if self.is_char_based() { "" } else { " " };
        word.iter().map(|&s| self.symbol(s)).collect::<Vec<_>>().join(sep)
    }

    /// All words of length `n` in lexicographic index order.
    pub fn words(&self, n: usize) -> impl Iterator<Item = Word> {
        all_words(self.len(), n)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.len()).map(|i| self.symbol(i))).finish()
    }
}

pub(crate) fn all_words(size: usize, n: usize) -> impl Iterator<Item = Word> {
    let total = size.checked_pow(n as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut code| {
        let mut w = vec![0; n];
        for slot in w.iter_mut().rev() {
            *slot = code % size;
            code /= size;
        }
        w
    })
}
