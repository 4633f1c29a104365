mod common;

use std::collections::{BTreeMap, BTreeSet};

use chern_core::{curv, enumerate_cyclic_words, find_zero_nonpalindromes, survey, Alphabet, Rational};
use common::{all_n_words, brute_is_cyclic_palindrome, brute_least_rotation, reference_curv_word};

#[test]
fn enumeration_is_complete() {
    for len in 3..=8 {
        let brute: BTreeSet<Vec<u8>> =
            all_n_words(3, len..=len).iter().map(|w| brute_least_rotation(w).letters().to_vec()).collect();
        let listed: Vec<Vec<u8>> =
            enumerate_cyclic_words(len).map(|cw| cw.rep().letters().to_vec()).collect();
        assert_eq!(listed.len(), brute.len(), "length {len}");
        assert_eq!(listed.into_iter().collect::<BTreeSet<_>>(), brute);
    }
}

#[test]
fn survey_is_deterministic() {
    let a = survey(3, 9);
    let b = survey(3, 9);
    assert_eq!(a.to_json_pretty(), b.to_json_pretty());
    assert_eq!(a.to_table(), b.to_table());
}

#[test]
fn survey_rows_recompute() {
    let report = survey(3, 8);
    let latin = Alphabet::latin(3);
    let mut brute: BTreeMap<Rational, u64> = BTreeMap::new();
    let mut classes = 0u64;
    let mut palindromes = 0u64;
    for len in 3..=8 {
        let reps: BTreeSet<Vec<u8>> =
            all_n_words(3, len..=len).iter().map(|w| brute_least_rotation(w).letters().to_vec()).collect();
        for letters in reps {
            let w = chern_core::Word::new(3, letters).unwrap();
            *brute.entry(reference_curv_word(&w)).or_default() += 1;
            classes += 1;
            palindromes += brute_is_cyclic_palindrome(&w) as u64;
        }
        let row = report.lengths.iter().find(|l| l.length == len).unwrap();
        assert_eq!(row.classes, enumerate_cyclic_words(len).count() as u64);
    }
    assert_eq!(report.classes, classes);
    assert_eq!(report.palindromes, palindromes);
    assert_eq!(report.values.len(), brute.len());
    let step = (report.values.len() / 100).max(1);
    let mut checked = 0;
    for row in report.values.iter().step_by(step).take(100) {
        assert_eq!(brute[&row.value], row.count, "{}", row.value);
        let w = latin.parse(&row.example).unwrap();
        assert_eq!(curv(&w).unwrap(), row.value);
        assert_eq!(w.canonicalize().rep(), &w);
        checked += 1;
    }
    assert!(checked >= report.values.len().min(100));
    assert_eq!(report.zero_curvature.total, brute.get(&Rational::zero()).copied().unwrap_or(0));
}

#[test]
fn zero_nonpalindromes_agree_with_survey() {
    let report = survey(3, 8);
    let found = find_zero_nonpalindromes(8);
    let names: Vec<String> = found.iter().map(|cw| cw.rep().to_latin()).collect();
    assert_eq!(names, report.zero_curvature.non_palindromes);
    for cw in &found {
        assert!(curv(cw.rep()).unwrap().is_zero());
        assert!(!brute_is_cyclic_palindrome(cw.rep()));
    }
    let zero_classes = report.zero_curvature.total;
    assert_eq!(zero_classes, report.zero_curvature.palindromes + found.len() as u64);
}

#[test]
fn survey_flags_match_definitions() {
    let report = survey(3, 9);
    let latin = Alphabet::latin(3);
    for w in &report.extremal {
        assert_eq!(curv(&latin.parse(w).unwrap()).unwrap().abs(), Rational::half());
    }
    for w in &report.nonzero_palindromes {
        let w = latin.parse(w).unwrap();
        assert!(brute_is_cyclic_palindrome(&w) && !curv(&w).unwrap().is_zero());
    }
    assert!(report.range_holds());
    let json: serde_json::Value = serde_json::from_str(&report.to_json_pretty()).unwrap();
    assert!(json["values"][0]["value"].is_string());
}
