use crate::alphabet::Alphabet;
use crate::error::{contract, Result};
use crate::matrix::{dot, Matrix};
use crate::scalar::Scalar;
use crate::wa::automaton::{check_square, check_vectors};

/// Linear representation `⟨α, {A_σ^σ'}, β⟩` of a weighted transducer over
/// aligned word pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTransducer<S> {
    input: Alphabet,
    output: Alphabet,
    alpha: Vec<S>,
    beta: Vec<S>,
    // indexed by input * |output| + output
    transitions: Vec<Matrix<S>>,
}

impl<S: Scalar> WeightedTransducer<S> {
    /// `transitions[i * output.len() + o]` is the matrix of the pair `(i, o)`.
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        alpha: Vec<S>,
        beta: Vec<S>,
        transitions: Vec<Matrix<S>>,
    ) -> Result<Self> {
        let dim = check_vectors(&alpha, &beta)?;
        let expected = input.len() * output.len();
        if transitions.len() != expected {
            return Err(contract!("transducer needs {expected} matrices, got {}", transitions.len()));
        }
        for (k, m) in transitions.iter().enumerate() {
            let (i, o) = (k / output.len(), k % output.len());
            check_square(m, dim, &format!("pair {:?}|{:?}", input.symbol(i), output.symbol(o)))?;
        }
        Ok(WeightedTransducer { input, output, alpha, beta, transitions })
    }

    /// Builds the matrix family from a function of `(input, output)`.
    pub fn from_fn(
        input: Alphabet,
        output: Alphabet,
        alpha: Vec<S>,
        beta: Vec<S>,
        mut f: impl FnMut(usize, usize) -> Matrix<S>,
    ) -> Result<Self> {
        let mut mats = Vec::with_capacity(input.len() * output.len());
        for i in 0..input.len() {
            for o in 0..output.len() {
                mats.push(f(i, o));
            }
        }
        Self::new(input, output, alpha, beta, mats)
    }

    /// Single-state transducer with weight 1 exactly on equal pairs.
    pub fn identity(alphabet: Alphabet) -> Self {
        Self::from_fn(alphabet.clone(), alphabet, vec![S::one()], vec![S::one()], |i, o| {
            let mut m = Matrix::zeros(1, 1);
            if i == o {
                m.set(0, 0, S::one());
            }
            m
        })
        .expect("well-formed identity transducer")
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn alpha(&self) -> &[S] {
        &self.alpha
    }

    pub fn beta(&self) -> &[S] {
        &self.beta
    }

    pub fn transition(&self, input: usize, output: usize) -> &Matrix<S> {
        &self.transitions[input * self.output.len() + output]
    }

    pub fn evaluate(&self, w: &[usize], u: &[usize]) -> Result<S> {
        if w.len() != u.len() {
            return Err(contract!("transducer inputs have lengths {} and {}", w.len(), u.len()));
        }
        self.input.check_word(w)?;
        self.output.check_word(u)?;
        let v = w.iter().zip(u).fold(self.alpha.clone(), |v, (&i, &o)| self.transition(i, o).left_mul(&v));
        Ok(dot(&v, &self.beta))
    }

    pub fn evaluate_str(&self, w: &str, u: &str) -> Result<S> {
        self.evaluate(&self.input.encode_str(w)?, &self.output.encode_str(u)?)
    }

    /// All matrices, indexed by `input * |output| + output`.
    pub fn matrices(&self) -> &[Matrix<S>] {
        &self.transitions
    }

    /// `inv(T)(u, s) = T(s, u)`.
    pub fn inverse(&self) -> Self {
        let mut mats = Vec::with_capacity(self.transitions.len());
        for o in 0..self.output.len() {
            for i in 0..self.input.len() {
                mats.push(self.transition(i, o).clone());
            }
        }
        WeightedTransducer {
            input: self.output.clone(),
            output: self.input.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            transitions: mats,
        }
    }
}
