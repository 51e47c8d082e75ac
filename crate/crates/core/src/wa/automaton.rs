use crate::alphabet::Alphabet;
use crate::error::{contract, Result};
use crate::matrix::{dot, kron_vec, Matrix};
use crate::scalar::Scalar;
use crate::wa::transducer::WeightedTransducer;

/// Largest state count an operator constructor will materialise densely.
pub const MAX_DENSE_DIM: usize = 10_000;

/// Linear representation `⟨α, {A_σ}, β⟩` computing `f(w) = αᵀ A_{w_1} ⋯ A_{w_n} β`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedAutomaton<S> {
    alphabet: Alphabet,
    alpha: Vec<S>,
    beta: Vec<S>,
    transitions: Vec<Matrix<S>>,
}

pub(crate) fn check_vectors<S: Scalar>(alpha: &[S], beta: &[S]) -> Result<usize> {
    let dim = alpha.len();
    if dim == 0 {
        return Err(contract!("automaton needs at least one state"));
    }
    if beta.len() != dim {
        return Err(contract!("alpha has {dim} entries but beta has {}", beta.len()));
    }
    if !alpha.iter().chain(beta).all(Scalar::is_finite_value) {
        return Err(contract!("non-finite initial or final weight"));
    }
    Ok(dim)
}

pub(crate) fn check_square<S: Scalar>(m: &Matrix<S>, dim: usize, what: &str) -> Result<()> {
    if m.rows() != dim || m.cols() != dim {
        return Err(contract!("{what}: expected {dim}x{dim} matrix, got {}x{}", m.rows(), m.cols()));
    }
    if !m.all_finite() {
        return Err(contract!("{what}: non-finite matrix entry"));
    }
    Ok(())
}

impl<S: Scalar> WeightedAutomaton<S> {
    /// `transitions[s]` is the matrix of the symbol with index `s`.
    pub fn new(alphabet: Alphabet, alpha: Vec<S>, beta: Vec<S>, transitions: Vec<Matrix<S>>) -> Result<Self> {
        let dim = check_vectors(&alpha, &beta)?;
        if transitions.len() != alphabet.len() {
            return Err(contract!(
                "alphabet has {} symbols but {} transition matrices were given",
                alphabet.len(),
                transitions.len()
            ));
        }
        for (s, m) in transitions.iter().enumerate() {
            check_square(m, dim, &format!("symbol {:?}", alphabet.symbol(s)))?;
        }
        Ok(WeightedAutomaton { alphabet, alpha, beta, transitions })
    }

    /// Single-state automaton with value `c` on every word.
    pub fn constant(alphabet: Alphabet, c: S) -> Self {
        let transitions = vec![Matrix::identity(1); alphabet.len()];
        WeightedAutomaton { alphabet, alpha: vec![c], beta: vec![S::one()], transitions }
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn alpha(&self) -> &[S] {
        &self.alpha
    }

    pub fn beta(&self) -> &[S] {
        &self.beta
    }

    pub fn transition(&self, symbol: usize) -> &Matrix<S> {
        &self.transitions[symbol]
    }

    pub fn transitions(&self) -> &[Matrix<S>] {
        &self.transitions
    }

    pub fn evaluate(&self, word: &[usize]) -> Result<S> {
        self.alphabet.check_word(word)?;
        let v = word.iter().fold(self.alpha.clone(), |v, &s| self.transitions[s].left_mul(&v));
        Ok(dot(&v, &self.beta))
    }

    pub fn evaluate_str(&self, word: &str) -> Result<S> {
        self.evaluate(&self.alphabet.encode_str(word)?)
    }

    fn same_alphabet(&self, other: &Alphabet, op: &str) -> Result<()> {
        if &self.alphabet != other {
            return Err(contract!("{op}: alphabet mismatch {:?} vs {:?}", self.alphabet, other));
        }
        Ok(())
    }

    /// Hadamard product: `f_{A⊗B}(w) = f_A(w)·f_B(w)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_alphabet(&other.alphabet, "product")?;
        dense_cap(self.dim() * other.dim())?;
        Ok(WeightedAutomaton {
            alphabet: self.alphabet.clone(),
            alpha: kron_vec(&self.alpha, &other.alpha),
            beta: kron_vec(&self.beta, &other.beta),
            transitions: self.transitions.iter().zip(&other.transitions).map(|(a, b)| a.kron(b)).collect(),
        })
    }

    /// Block-diagonal sum: `f_{A+B} = f_A + f_B`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_alphabet(&other.alphabet, "sum")?;
        let transitions = self.transitions.iter().zip(&other.transitions).map(|(a, b)| a.block_diag(b)).collect();
        Ok(WeightedAutomaton {
            alphabet: self.alphabet.clone(),
            alpha: self.alpha.iter().chain(&other.alpha).cloned().collect(),
            beta: self.beta.iter().chain(&other.beta).cloned().collect(),
            transitions,
        })
    }

    /// Multiplies every value by `c` (scales α).
    pub fn scale(&self, c: S) -> Self {
        let mut out = self.clone();
        out.alpha.iter_mut().for_each(|a| *a = a.clone() * c.clone());
        out
    }

    /// `Σ_σ A_σ`.
    pub fn symbol_sum(&self) -> Matrix<S> {
        self.transitions.iter().skip(1).fold(self.transitions[0].clone(), |acc, m| acc.add(m))
    }

    /// `|f|_n = αᵀ (Σ_σ A_σ)^n β`, by `n` vector-matrix products.
    pub fn partition_constant(&self, n: usize) -> S {
        let total = self.symbol_sum();
        let v = (0..n).fold(self.alpha.clone(), |v, _| total.left_mul(&v));
        dot(&v, &self.beta)
    }

    /// Projection through a transducer: `u ↦ Σ_{w ∈ Σ^{|u|}} f_A(w) f_T(w, u)`.
    pub fn project(&self, t: &WeightedTransducer<S>) -> Result<Self> {
        self.same_alphabet(t.input_alphabet(), "projection")?;
        dense_cap(self.dim() * t.dim())?;
        let out_alpha = t.output_alphabet().clone();
        let transitions = (0..out_alpha.len())
            .map(|o| {
                (0..self.alphabet.len())
                    .map(|s| self.transitions[s].kron(t.transition(s, o)))
                    .reduce(|a, b| a.add(&b))
                    .expect("non-empty alphabet")
            })
            .collect();
        Ok(WeightedAutomaton {
            alphabet: out_alpha,
            alpha: kron_vec(&self.alpha, t.alpha()),
            beta: kron_vec(&self.beta, t.beta()),
            transitions,
        })
    }

    /// Multiplicative operator: `(f × g)(u, s) = f(u)·g(u, s)`.
    pub fn times(&self, t: &WeightedTransducer<S>) -> Result<WeightedTransducer<S>> {
        self.same_alphabet(t.input_alphabet(), "multiplicative operator")?;
        dense_cap(self.dim() * t.dim())?;
        let n_out = t.output_alphabet().len();
        let mut mats = Vec::with_capacity(self.alphabet.len() * n_out);
        for s in 0..self.alphabet.len() {
            for o in 0..n_out {
                mats.push(self.transitions[s].kron(t.transition(s, o)));
            }
        }
        WeightedTransducer::new(
            self.alphabet.clone(),
            t.output_alphabet().clone(),
            kron_vec(&self.alpha, t.alpha()),
            kron_vec(&self.beta, t.beta()),
            mats,
        )
    }

    /// Converts every weight to another scalar type.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> WeightedAutomaton<T> {
        WeightedAutomaton {
            alphabet: self.alphabet.clone(),
            alpha: self.alpha.iter().map(&f).collect(),
            beta: self.beta.iter().map(&f).collect(),
            transitions: self
                .transitions
                .iter()
                .map(|m| m.map(&f))
                .collect(),
        }
    }
}

pub(crate) fn dense_cap(dim: usize) -> Result<()> {
    if dim > MAX_DENSE_DIM {
        return Err(contract!(
            "dense composite of dimension {dim} exceeds the materialisation cap {MAX_DENSE_DIM}; use a pipeline"
        ));
    }
    Ok(())
}
