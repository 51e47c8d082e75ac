//! File loading and instance parsing.

use std::fs;
use std::path::Path;

use markov_shap::json::{self, MarkovDoc, VectorMarkovDoc};
use markov_shap::{Alphabet, Error, MarkovChain, VectorMarkov, Word};

use crate::Failure;

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Runs a parser over a file, prefixing errors with the path.
pub fn parse<T>(path: &Path, f: impl FnOnce(&str) -> markov_shap::Result<T>) -> Result<T, Failure> {
    let text = read(path)?;
    f(&text).map_err(|e| Failure::from_error(e).context(&path.display().to_string()))
}

/// Words over single-character alphabets are plain strings; otherwise
/// tokens are separated by whitespace or commas.
pub fn instance(alphabet: &Alphabet, s: &str) -> Result<Word, Failure> {
    let tokens: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
    let word = if alphabet.is_char_based() && tokens.len() <= 1 {
        alphabet.encode_str(s.trim())
    } else {
        alphabet.encode_tokens(&tokens)
    };
    let word = word.map_err(|e| Failure::from_error(e).context("instance"))?;
    if word.is_empty() {
        return Err(Failure::input("instance: empty word".into()));
    }
    Ok(word)
}

pub fn bits(s: &str) -> Result<Vec<bool>, Failure> {
    s.trim()
        .chars()
        .enumerate()
        .map(|(j, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Failure::input(format!("instance: {c:?} at position {} is not 0 or 1", j + 1))),
        })
        .collect()
}

/// A vector chain document, or a sequence chain over `{"0","1"}` whose first
/// `num_vars - 1` transition matrices are taken.
pub fn vector_markov(path: &Path, num_vars: usize) -> Result<VectorMarkov<f64>, Failure> {
    let text = read(path)?;
    let ctx = |e: Error| Failure::from_error(e).context(&path.display().to_string());
    if let Ok(doc) = serde_json::from_str::<VectorMarkovDoc>(&text) {
        return json::vector_markov_from_doc(&doc).map_err(ctx);
    }
    let doc: MarkovDoc = serde_json::from_str(&text).map_err(|e| ctx(e.into()))?;
    let chain = json::markov_from_doc(&doc).map_err(ctx)?;
    from_binary_chain(&chain, num_vars).map_err(ctx)
}

fn from_binary_chain(chain: &MarkovChain<f64>, num_vars: usize) -> markov_shap::Result<VectorMarkov<f64>> {
    if chain.alphabet().tokens() != ["0", "1"] {
        return Err(Error::Configuration("a boolean distribution must be over the alphabet [\"0\", \"1\"]".into()));
    }
    let init = [chain.init()[0], chain.init()[1]];
    let transitions = (1..num_vars)
        .map(|i| {
            let m = chain.transition_matrix(i)?;
            Ok([[m[0][0], m[0][1]], [m[1][0], m[1][1]]])
        })
        .collect::<markov_shap::Result<Vec<_>>>()?;
    VectorMarkov::new(init, transitions)
}
