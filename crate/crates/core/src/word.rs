//! Words and cyclic words over ordered alphabets.
//!
//! Letters are stored as ranks `0..alphabet_size`, rank order being the
//! alphabet order. An *n-word* is a word over `n + 1` characters in which
//! every character occurs at least once. The boundary operator
//! [`Word::delta`] deletes one character and re-ranks the rest, which turns
//! the set of n-words into a semi-simplicial set.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word is empty")]
    Empty,
    #[error("rank {rank} is outside an alphabet of size {alphabet_size}")]
    RankOutOfRange { rank: usize, alphabet_size: usize },
    #[error("character of rank {0} never occurs")]
    MissingCharacter(usize),
    #[error("character {0:?} is not in the alphabet")]
    UnknownCharacter(char),
    #[error("character {0:?} is listed twice in the alphabet")]
    DuplicateCharacter(char),
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("alphabets of more than {} characters are not supported", u8::MAX)]
    AlphabetTooLarge,
    #[error("expected alphabet of size {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("images do not form a permutation")]
    NotAPermutation,
}

/// A finite sequence of character ranks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet_size: usize,
    letters: Vec<u8>,
}

impl Word {
    /// Builds a raw word; characters may be missing.
    pub fn new(alphabet_size: usize, letters: Vec<u8>) -> Result<Self, WordError> {
        if alphabet_size > u8::MAX as usize {
            return Err(WordError::AlphabetTooLarge);
        }
        if let Some(&r) = letters.iter().find(|&&r| r as usize >= alphabet_size) {
            return Err(WordError::RankOutOfRange { rank: r as usize, alphabet_size });
        }
        Ok(Self { alphabet_size, letters })
    }

    /// Builds a word and checks that it is an n-word (`n = alphabet_size - 1`).
    pub fn n_word(alphabet_size: usize, letters: Vec<u8>) -> Result<Self, WordError> {
        let w = Self::new(alphabet_size, letters)?;
        w.validate_n_word()?;
        Ok(w)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Occurrence count of every rank.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.alphabet_size];
        for &r in &self.letters {
            counts[r as usize] += 1;
        }
        counts
    }

    /// Returns `n` if every rank `0..=n` occurs, `n + 1` being the alphabet size.
    pub fn validate_n_word(&self) -> Result<usize, WordError> {
        if self.letters.is_empty() || self.alphabet_size == 0 {
            return Err(WordError::Empty);
        }
        match self.counts().iter().position(|&c| c == 0) {
            Some(rank) => Err(WordError::MissingCharacter(rank)),
            None => Ok(self.alphabet_size - 1),
        }
    }

    /// True when every character occurs at least `min` times.
    ///
    /// Words with at least three entrances per character correspond to bundles
    /// whose total space is an honest simplicial complex.
    pub fn has_min_multiplicity(&self, min: usize) -> bool {
        self.counts().iter().all(|&c| c >= min)
    }

    /// Deletes every occurrence of rank `i` and re-ranks the survivors.
    ///
    /// # Panics
    /// If `i >= alphabet_size`.
    pub fn delta(&self, i: usize) -> Word {
        assert!(i < self.alphabet_size, "delta index {i} out of range");
        let i = i as u8;
        let letters =
            self.letters.iter().filter(|&&r| r != i).map(|&r| if r > i { r - 1 } else { r }).collect();
        Word { alphabet_size: self.alphabet_size - 1, letters }
    }

    /// Moves the first letter to the end.
    pub fn cyclic_shift(&self) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(1);
        }
        Word { alphabet_size: self.alphabet_size, letters }
    }

    /// Rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(k % self.letters.len());
        }
        Word { alphabet_size: self.alphabet_size, letters }
    }

    pub fn mirror(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { alphabet_size: self.alphabet_size, letters }
    }

    /// Replaces every rank `r` with `p(r)`.
    pub fn permute_alphabet(&self, p: &Permutation) -> Result<Word, WordError> {
        if p.len() != self.alphabet_size {
            return Err(WordError::SizeMismatch { expected: self.alphabet_size, found: p.len() });
        }
        let letters = self.letters.iter().map(|&r| p.images[r as usize]).collect();
        Ok(Word { alphabet_size: self.alphabet_size, letters })
    }

    pub fn canonicalize(&self) -> CyclicWord {
        CyclicWord::new(self.clone())
    }

    /// Renders with the first `alphabet_size` lowercase latin letters.
    pub fn to_latin(&self) -> String {
        self.letters.iter().map(|&r| latin(r)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet_size <= 26 {
            f.write_str(&self.to_latin())
        } else {
            write!(f, "{:?}", self.letters)
        }
    }
}

fn latin(r: u8) -> char {
    (b'a' + r) as char
}

/// Start of the lexicographically least rotation, in linear time.
///
/// Two candidate starts are compared character by character; on the first
/// mismatch the losing candidate and every start inside the matched stretch
/// are discarded.
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// A rotation class of words, stored as its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    rep: Word,
}

impl CyclicWord {
    pub fn new(w: Word) -> Self {
        let k = least_rotation(&w.letters);
        Self { rep: w.rotate(k) }
    }

    /// The canonical (least) rotation.
    pub fn rep(&self) -> &Word {
        &self.rep
    }

    pub fn into_rep(self) -> Word {
        self.rep
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn delta(&self, i: usize) -> CyclicWord {
        CyclicWord::new(self.rep.delta(i))
    }

    /// Reverses the orientation of the circle.
    pub fn mirror(&self) -> CyclicWord {
        CyclicWord::new(self.rep.mirror())
    }

    pub fn is_cyclic_palindrome(&self) -> bool {
        self.mirror() == *self
    }

    /// Smallest `p > 0` with the word invariant under rotation by `p`.
    pub fn period(&self) -> usize {
        let s = self.rep.letters();
        let n = s.len();
        (1..=n).filter(|p| n % p == 0).find(|&p| (0..n).all(|i| s[i] == s[(i + p) % n])).unwrap_or(n)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// A bijection of `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<u8>) -> Result<Self, WordError> {
        let mut seen = vec![false; images.len()];
        for &r in &images {
            match seen.get_mut(r as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(WordError::NotAPermutation),
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u8).collect() }
    }

    /// Exchanges ranks `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    /// All `n!` permutations in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn go(prefix: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation { images: prefix.clone() });
                return;
            }
            for r in 0..used.len() {
                if !used[r] {
                    used[r] = true;
                    prefix.push(r as u8);
                    go(prefix, used, out);
                    prefix.pop();
                    used[r] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, r: usize) -> usize {
        self.images[r] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation { images: other.images.iter().map(|&r| self.images[r as usize]).collect() }
    }

    /// Sign of the permutation, `+1` or `-1`.
    pub fn parity(&self) -> i8 {
        let mut seen = vec![false; self.images.len()];
        let mut sign = 1i8;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut r = start;
            while !seen[r] {
                seen[r] = true;
                r = self.images[r] as usize;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

/// An ordered set of character symbols; the first listed character has rank 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    chars: Vec<char>,
}

impl Alphabet {
    pub fn new(order: &str) -> Result<Self, WordError> {
        let chars: Vec<char> = order.chars().collect();
        if chars.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        if chars.len() > u8::MAX as usize {
            return Err(WordError::AlphabetTooLarge);
        }
        for (i, c) in chars.iter().enumerate() {
            if chars[..i].contains(c) {
                return Err(WordError::DuplicateCharacter(*c));
            }
        }
        Ok(Self { chars })
    }

    /// `a`, `b`, `c`, ... of the given size.
    pub fn latin(size: usize) -> Self {
        assert!(size <= 26, "latin alphabet has 26 characters");
        Self { chars: (0..size as u8).map(latin).collect() }
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    pub fn rank(&self, c: char) -> Option<usize> {
        self.chars.iter().position(|&x| x == c)
    }

    /// Parses a raw word (characters may be missing).
    pub fn parse(&self, text: &str) -> Result<Word, WordError> {
        let letters = text
            .chars()
            .map(|c| self.rank(c).map(|r| r as u8).ok_or(WordError::UnknownCharacter(c)))
            .collect::<Result<Vec<_>, _>>()?;
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        Word::new(self.len(), letters)
    }

    /// Parses and validates an n-word.
    pub fn parse_n_word(&self, text: &str) -> Result<Word, WordError> {
        let w = self.parse(text)?;
        w.validate_n_word()?;
        Ok(w)
    }

    pub fn render(&self, w: &Word) -> Result<String, WordError> {
        if w.alphabet_size() != self.len() {
            return Err(WordError::SizeMismatch { expected: self.len(), found: w.alphabet_size() });
        }
        Ok(w.letters().iter().map(|&r| self.chars[r as usize]).collect())
    }

    /// The alphabet of `delta(_, i)`.
    pub fn without(&self, i: usize) -> Alphabet {
        let mut chars = self.chars.clone();
        chars.remove(i);
        Alphabet { chars }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.chars.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// Serialized form of a word: `{"alphabet": "cat", "word": "cattactact"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub alphabet: String,
    pub word: String,
}

impl WordJson {
    pub fn from_word(w: &Word, alphabet: &Alphabet) -> Result<Self, WordError> {
        Ok(Self { alphabet: alphabet.to_string(), word: alphabet.render(w)? })
    }

    pub fn latin(w: &Word) -> Self {
        Self { alphabet: Alphabet::latin(w.alphabet_size()).to_string(), word: w.to_latin() }
    }

    /// Parses the word (not validated as an n-word).
    pub fn to_word(&self) -> Result<(Word, Alphabet), WordError> {
        let alphabet = Alphabet::new(&self.alphabet)?;
        let w = alphabet.parse(&self.word)?;
        Ok((w, alphabet))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc(s: &str) -> Word {
        Alphabet::new("abc").unwrap().parse(s).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(abc("bcabbccacb").validate_n_word(), Ok(2));
        assert_eq!(Alphabet::new("a").unwrap().parse("aaaa").unwrap().validate_n_word(), Ok(0));
        assert_eq!(abc("aab").validate_n_word(), Err(WordError::MissingCharacter(2)));
    }

    #[test]
    fn delta_examples() {
        let w = abc("bcabbccacb");
        assert_eq!(w.delta(0), Alphabet::new("bc").unwrap().parse("bcbbcccb").unwrap());
        assert_eq!(w.delta(1), Alphabet::new("ac").unwrap().parse("caccac").unwrap());
        assert_eq!(w.delta(2), Alphabet::new("ab").unwrap().parse("babbab").unwrap());
        assert_eq!(w.delta(0).alphabet_size(), 2);
    }

    #[test]
    fn shift_and_mirror() {
        assert_eq!(abc("abc").cyclic_shift(), abc("bca"));
        assert_eq!(abc("aaaa").cyclic_shift(), abc("aaaa"));
        let w = abc("abccba");
        let mut v = w.clone();
        for _ in 0..w.len() {
            v = v.cyclic_shift();
        }
        assert_eq!(v, w);
        assert_eq!(abc("abc").mirror(), abc("cba"));
        assert_eq!(abc("abba").mirror(), abc("abba"));
    }

    #[test]
    fn permutations() {
        let swap = Permutation::transposition(3, 0, 1);
        assert_eq!(abc("abc").permute_alphabet(&swap).unwrap(), abc("bac"));
        assert_eq!(abc("abc").permute_alphabet(&Permutation::identity(3)).unwrap(), abc("abc"));
        assert_eq!(swap.parity(), -1);
        assert_eq!(Permutation::new(vec![1, 2, 0]).unwrap().parity(), 1);
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::new(vec![0, 0]), Err(WordError::NotAPermutation));
        assert!(matches!(
            abc("abc").permute_alphabet(&Permutation::identity(2)),
            Err(WordError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn canonical_rotation() {
        assert_eq!(abc("cab").canonicalize().rep(), &abc("abc"));
        assert_eq!(abc("bca").canonicalize().rep(), &abc("abc"));
        assert_eq!(abc("aaaa").canonicalize().rep(), &abc("aaaa"));
        assert_eq!(abc("babab").canonicalize().rep(), &abc("ababb"));
    }

    #[test]
    fn palindromes() {
        let lgu = Alphabet::new("lgu").unwrap().parse("lguguglu").unwrap();
        assert!(lgu.canonicalize().is_cyclic_palindrome());
        assert!(!abc("abc").canonicalize().is_cyclic_palindrome());
        assert!(abc("abba").canonicalize().is_cyclic_palindrome());
    }

    #[test]
    fn period() {
        assert_eq!(abc("abcabc").canonicalize().period(), 3);
        assert_eq!(abc("aab").canonicalize().period(), 3);
        assert_eq!(abc("aaaa").canonicalize().period(), 1);
    }

    #[test]
    fn alphabet_errors() {
        assert_eq!(Alphabet::new("aba"), Err(WordError::DuplicateCharacter('a')));
        assert_eq!(Alphabet::new(""), Err(WordError::EmptyAlphabet));
        assert_eq!(Alphabet::new("ab").unwrap().parse("abz"), Err(WordError::UnknownCharacter('z')));
        let sel = Alphabet::new("sel").unwrap();
        let w = sel.parse("selllesseels").unwrap();
        assert_eq!(sel.render(&w).unwrap(), "selllesseels");
        assert_eq!(sel.without(0).to_string(), "el");
    }

    #[test]
    fn word_json() {
        let j: WordJson = serde_json::from_str(r#"{"alphabet":"cat","word":"cattactact"}"#).unwrap();
        let (w, a) = j.to_word().unwrap();
        assert_eq!(w.validate_n_word(), Ok(2));
        assert_eq!(WordJson::from_word(&w, &a).unwrap(), j);
    }
}
