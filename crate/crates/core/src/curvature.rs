//! The index of 2-character words and the curvature cocycle of 3-character
//! words.
//!
//! For a 1-word with `k0` entrances of rank 0 and `k1` entrances of rank 1,
//! count the pairs where the rank-1 entrance stands left of the rank-0
//! entrance (`B`) and the remaining pairs (`W = k0*k1 - B`). Then
//!
//! ```text
//! ind(w)  = (B - W) / (2 k0 k1)
//! curv(w) = ind(δ0 w) - ind(δ1 w) + ind(δ2 w)
//! ```
//!
//! With this orientation `ind("ab") = -1/2` and `curv("abc") = -1/2`.

use thiserror::Error;

use crate::rational::Rational;
use crate::word::{CyclicWord, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("not a 1-word: {0}")]
    NotAOneWord(WordError),
    #[error("not a 2-word: {0}")]
    NotATwoWord(WordError),
    #[error("not a {degree}-word: {source}")]
    NotAnNWord { degree: usize, source: WordError },
    #[error("cochain of degree {cochain} cannot be evaluated on a word of degree {word}")]
    DegreeMismatch { cochain: usize, word: usize },
}

fn check_degree(w: &Word, degree: usize) -> Result<(), WordError> {
    if w.alphabet_size() != degree + 1 {
        return Err(WordError::SizeMismatch { expected: degree + 1, found: w.alphabet_size() });
    }
    w.validate_n_word().map(|_| ())
}

/// Signed pair count `B - W` and the pair total `k0 * k1` of a 2-character word.
fn pair_balance(letters: &[u8]) -> (i64, i64) {
    let (mut k0, mut k1, mut left) = (0i64, 0i64, 0i64);
    for &r in letters {
        if r == 0 {
            k0 += 1;
            left += k1;
        } else {
            k1 += 1;
        }
    }
    let total = k0 * k1;
    (2 * left - total, total)
}

/// Rational index of a 1-word.
pub fn ind(w: &Word) -> Result<Rational, CurvatureError> {
    check_degree(w, 1).map_err(CurvatureError::NotAOneWord)?;
    let (balance, total) = pair_balance(w.letters());
    Ok(Rational::new(balance, 2 * total))
}

/// Curvature of a 2-word.
pub fn curv(w: &Word) -> Result<Rational, CurvatureError> {
    check_degree(w, 2).map_err(CurvatureError::NotATwoWord)?;
    // Faces of a 2-word are 1-words, so the index cannot fail here.
    let face = |i| ind(&w.delta(i)).expect("face of a 2-word is a 1-word");
    Ok(face(0) - face(1) + face(2))
}

/// Curvature of a cyclic 2-word, evaluated on its canonical rotation.
pub fn curv_cyclic(cw: &CyclicWord) -> Result<Rational, CurvatureError> {
    curv(cw.rep())
}

/// A rational-valued function on n-words.
pub trait Cochain {
    fn degree(&self) -> usize;

    /// Value on `w`; implementations may assume `w` is a valid n-word.
    fn eval_unchecked(&self, w: &Word) -> Rational;

    fn eval(&self, w: &Word) -> Result<Rational, CurvatureError> {
        let degree = self.degree();
        if w.alphabet_size() != degree + 1 {
            return Err(CurvatureError::DegreeMismatch {
                cochain: degree,
                word: w.alphabet_size().saturating_sub(1),
            });
        }
        w.validate_n_word().map_err(|source| CurvatureError::NotAnNWord { degree, source })?;
        Ok(self.eval_unchecked(w))
    }
}

impl<C: Cochain + ?Sized> Cochain for &C {
    fn degree(&self) -> usize {
        (**self).degree()
    }

    fn eval_unchecked(&self, w: &Word) -> Rational {
        (**self).eval_unchecked(w)
    }
}

/// The index cochain, degree 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct Ind;

impl Cochain for Ind {
    fn degree(&self) -> usize {
        1
    }

    fn eval_unchecked(&self, w: &Word) -> Rational {
        let (balance, total) = pair_balance(w.letters());
        Rational::new(balance, 2 * total)
    }
}

/// The curvature cochain, degree 2.
#[derive(Debug, Clone, Copy, Default)]
pub struct Curv;

impl Cochain for Curv {
    fn degree(&self) -> usize {
        2
    }

    fn eval_unchecked(&self, w: &Word) -> Rational {
        let face = |i| Ind.eval_unchecked(&w.delta(i));
        face(0) - face(1) + face(2)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ZeroCochain(pub usize);

impl Cochain for ZeroCochain {
    fn degree(&self) -> usize {
        self.0
    }

    fn eval_unchecked(&self, _: &Word) -> Rational {
        Rational::zero()
    }
}

/// A cochain given by a closure.
pub struct FnCochain<F> {
    degree: usize,
    f: F,
}

impl<F: Fn(&Word) -> Rational> FnCochain<F> {
    pub fn new(degree: usize, f: F) -> Self {
        Self { degree, f }
    }
}

impl<F: Fn(&Word) -> Rational> Cochain for FnCochain<F> {
    fn degree(&self) -> usize {
        self.degree
    }

    fn eval_unchecked(&self, w: &Word) -> Rational {
        (self.f)(w)
    }
}

/// `d f`, a cochain of degree one more than `f`.
#[derive(Debug, Clone, Copy)]
pub struct Coboundary<C>(pub C);

impl<C: Cochain> Cochain for Coboundary<C> {
    fn degree(&self) -> usize {
        self.0.degree() + 1
    }

    fn eval_unchecked(&self, w: &Word) -> Rational {
        (0..w.alphabet_size())
            .map(|i| {
                let v = self.0.eval_unchecked(&w.delta(i));
                if i % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }
}

/// `(d f)(w) = Σ (-1)^i f(δ_i w)` for an (n+1)-word `w`.
pub fn coboundary<C: Cochain>(f: C, w: &Word) -> Result<Rational, CurvatureError> {
    Coboundary(f).eval(w)
}
