//! Exhaustive surveys of the curvature over cyclic 3-character words.
//!
//! Rotation classes are enumerated by walking all words of a given length in
//! lexicographic order and keeping those that are their own least rotation.
//! A class containing every character has a representative starting with
//! rank 0, so only such words are walked. Surveys split the walk by word
//! prefix and merge the partial tallies; the merge is commutative, so the
//! report does not depend on scheduling.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curvature::{Cochain, Curv};
use crate::rational::Rational;
use crate::word::{least_rotation, CyclicWord, Word};

const ALPHABET: usize = 3;

/// Canonical representatives of rotation classes of 2-words of one length.
#[derive(Debug, Clone)]
pub struct CyclicWords {
    letters: Vec<u8>,
    fixed: usize,
    done: bool,
}

impl CyclicWords {
    pub fn new(length: usize) -> Self {
        Self::with_prefix(length, &[0])
    }

    /// Only words starting with `prefix`.
    pub fn with_prefix(length: usize, prefix: &[u8]) -> Self {
        let done = length < ALPHABET
            || prefix.is_empty()
            || prefix.len() > length
            || prefix[0] != 0
            || prefix.iter().any(|&r| r as usize >= ALPHABET);
        let mut letters = vec![0u8; length];
        letters[..prefix.len().min(length)].copy_from_slice(&prefix[..prefix.len().min(length)]);
        Self { letters, fixed: prefix.len(), done }
    }

    fn advance(&mut self) -> bool {
        for p in (self.fixed..self.letters.len()).rev() {
            if (self.letters[p] as usize) + 1 < ALPHABET {
                self.letters[p] += 1;
                return true;
            }
            self.letters[p] = 0;
        }
        false
    }

    fn accept(&self) -> bool {
        let mut seen = [false; ALPHABET];
        for &r in &self.letters {
            seen[r as usize] = true;
        }
        seen.iter().all(|&s| s) && least_rotation(&self.letters) == 0
    }
}

impl Iterator for CyclicWords {
    type Item = CyclicWord;

    fn next(&mut self) -> Option<CyclicWord> {
        while !self.done {
            let hit = self.accept().then(|| self.letters.clone());
            if !self.advance() {
                self.done = true;
            }
            if let Some(letters) = hit {
                let w = Word::new(ALPHABET, letters).expect("ranks below 3");
                return Some(CyclicWord::new(w));
            }
        }
        None
    }
}

/// Rotation classes of 2-words of length `length`, one canonical word each.
pub fn enumerate_cyclic_words(length: usize) -> CyclicWords {
    CyclicWords::new(length)
}

fn prefixes(length: usize) -> Vec<Vec<u8>> {
    let depth = length.min(3);
    let mut out = vec![vec![0u8]];
    for _ in 1..depth {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..ALPHABET as u8).map(move |r| {
                    let mut q = p.clone();
                    q.push(r);
                    q
                })
            })
            .collect();
    }
    out
}

/// Shorter words first, then lexicographic.
fn example_order(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.letters().cmp(b.letters()))
}

#[derive(Debug, Clone, Default)]
struct Tally {
    classes: u64,
    palindromes: u64,
    values: BTreeMap<Rational, (u64, Word)>,
    zero_palindromes: u64,
    zero_nonpalindromes: Vec<Word>,
    nonzero_palindromes: Vec<Word>,
    extremal: Vec<Word>,
    out_of_range: Vec<Word>,
}

impl Tally {
    fn record(&mut self, cw: &CyclicWord) {
        let w = cw.rep();
        let value = Curv.eval_unchecked(w);
        let palindrome = cw.is_cyclic_palindrome();
        self.classes += 1;
        if palindrome {
            self.palindromes += 1;
        }
        if value.is_zero() {
            if palindrome {
                self.zero_palindromes += 1;
            } else {
                self.zero_nonpalindromes.push(w.clone());
            }
        } else if palindrome {
            self.nonzero_palindromes.push(w.clone());
        }
        let half = Rational::half();
        let magnitude = value.abs();
        match magnitude.cmp(&half) {
            Ordering::Equal => self.extremal.push(w.clone()),
            Ordering::Greater => self.out_of_range.push(w.clone()),
            Ordering::Less => {}
        }
        match self.values.get_mut(&value) {
            Some((count, example)) => {
                *count += 1;
                if example_order(w, example) == Ordering::Less {
                    *example = w.clone();
                }
            }
            None => {
                self.values.insert(value, (1, w.clone()));
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.classes += other.classes;
        self.palindromes += other.palindromes;
        self.zero_palindromes += other.zero_palindromes;
        for (value, (count, example)) in other.values {
            match self.values.get_mut(&value) {
                Some((c, e)) => {
                    *c += count;
                    if example_order(&example, e) == Ordering::Less {
                        *e = example;
                    }
                }
                None => {
                    self.values.insert(value, (count, example));
                }
            }
        }
        self.zero_nonpalindromes.extend(other.zero_nonpalindromes);
        self.nonzero_palindromes.extend(other.nonzero_palindromes);
        self.extremal.extend(other.extremal);
        self.out_of_range.extend(other.out_of_range);
        self
    }

    fn normalize(&mut self) {
        for list in [
            &mut self.zero_nonpalindromes,
            &mut self.nonzero_palindromes,
            &mut self.extremal,
            &mut self.out_of_range,
        ] {
            list.sort_by(example_order);
        }
    }
}

fn tally_length(length: usize) -> Tally {
    let mut t = prefixes(length)
        .into_par_iter()
        .map(|p| {
            let mut t = Tally::default();
            for cw in CyclicWords::with_prefix(length, &p) {
                t.record(&cw);
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    t.normalize();
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthSummary {
    pub length: usize,
    pub classes: u64,
    pub palindromes: u64,
    pub zero_curvature: u64,
    pub distinct_values: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueRow {
    pub value: Rational,
    pub count: u64,
    /// Shortest, then lexicographically least, class attaining the value.
    pub example: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSplit {
    pub total: u64,
    pub palindromes: u64,
    pub non_palindromes: Vec<String>,
}

/// Aggregated curvature statistics over all rotation classes in a length
/// range. Words are canonical representatives over the alphabet `abc`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub min_length: usize,
    pub max_length: usize,
    pub classes: u64,
    pub palindromes: u64,
    pub lengths: Vec<LengthSummary>,
    pub values: Vec<ValueRow>,
    pub zero_curvature: ZeroSplit,
    /// Cyclic palindromes with nonzero curvature.
    pub nonzero_palindromes: Vec<String>,
    /// Classes with |curv| = 1/2.
    pub extremal: Vec<String>,
    /// Classes with |curv| > 1/2.
    pub out_of_range: Vec<String>,
}

impl SurveyReport {
    pub fn range_holds(&self) -> bool {
        self.out_of_range.is_empty()
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text table.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "rotation classes of 3-character words, lengths {}..={}",
            self.min_length, self.max_length
        );
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:>6} {:>10} {:>12} {:>10} {:>8}",
            "length", "classes", "palindromes", "curv = 0", "values"
        );
        for l in &self.lengths {
            let _ = writeln!(
                s,
                "{:>6} {:>10} {:>12} {:>10} {:>8}",
                l.length, l.classes, l.palindromes, l.zero_curvature, l.distinct_values
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "{:>12} {:>10}  example", "curv", "classes");
        for row in &self.values {
            let _ = writeln!(s, "{:>12} {:>10}  {}", row.value.to_string(), row.count, row.example);
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "curv = 0: {} classes, {} cyclic palindromes, {} others",
            self.zero_curvature.total,
            self.zero_curvature.palindromes,
            self.zero_curvature.non_palindromes.len()
        );
        for w in &self.zero_curvature.non_palindromes {
            let _ = writeln!(s, "  not a palindrome: {w}");
        }
        let _ = writeln!(s, "cyclic palindromes with curv != 0: {}", self.nonzero_palindromes.len());
        let _ = writeln!(s, "|curv| = 1/2: {} classes", self.extremal.len());
        let _ = writeln!(
            s,
            "range [-1/2, 1/2]: {}",
            if self.range_holds() {
                "holds".to_string()
            } else {
                format!("{} violations", self.out_of_range.len())
            }
        );
        s
    }
}

/// Curvature statistics over every rotation class with length in
/// `min_length..=max_length`. Deterministic.
///
/// # Panics
/// If `min_length < 3` or `min_length > max_length`.
pub fn survey(min_length: usize, max_length: usize) -> SurveyReport {
    assert!(3 <= min_length && min_length <= max_length, "need 3 <= min_length <= max_length");
    let per_length: Vec<(usize, Tally)> =
        (min_length..=max_length).map(|length| (length, tally_length(length))).collect();
    let lengths = per_length
        .iter()
        .map(|(length, t)| LengthSummary {
            length: *length,
            classes: t.classes,
            palindromes: t.palindromes,
            zero_curvature: t.zero_palindromes + t.zero_nonpalindromes.len() as u64,
            distinct_values: t.values.len(),
        })
        .collect();
    let mut all = per_length.into_iter().map(|(_, t)| t).fold(Tally::default(), Tally::merge);
    all.normalize();
    let names = |ws: &[Word]| ws.iter().map(Word::to_latin).collect::<Vec<_>>();
    SurveyReport {
        min_length,
        max_length,
        classes: all.classes,
        palindromes: all.palindromes,
        lengths,
        values: all
            .values
            .iter()
            .map(|(value, (count, example))| ValueRow {
                value: value.clone(),
                count: *count,
                example: example.to_latin(),
            })
            .collect(),
        zero_curvature: ZeroSplit {
            total: all.zero_palindromes + all.zero_nonpalindromes.len() as u64,
            palindromes: all.zero_palindromes,
            non_palindromes: names(&all.zero_nonpalindromes),
        },
        nonzero_palindromes: names(&all.nonzero_palindromes),
        extremal: names(&all.extremal),
        out_of_range: names(&all.out_of_range),
    }
}

/// Every rotation class of length `3..=max_length` with zero curvature that
/// is not a cyclic palindrome.
pub fn find_zero_nonpalindromes(max_length: usize) -> Vec<CyclicWord> {
    let mut out: Vec<CyclicWord> = (3..=max_length)
        .flat_map(|length| prefixes(length).into_iter().map(move |p| (length, p)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|(length, p)| {
            CyclicWords::with_prefix(length, &p)
                .filter(|cw| !cw.is_cyclic_palindrome() && Curv.eval_unchecked(cw.rep()).is_zero())
        })
        .collect();
    out.sort_by(|a, b| example_order(a.rep(), b.rep()));
    out
}
