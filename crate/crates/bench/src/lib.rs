//! Deterministic inputs for the benchmarks.

use chern_core::Word;

/// A 2-word of length `len` with no short period: letter `p` is
/// `(p^2 + p/3) mod 3`, with the first three letters fixed to `abc`.
pub fn mixed_word(len: usize) -> Word {
    assert!(len >= 3, "a 2-word needs at least three letters");
    let letters = (0..len).map(|p| if p < 3 { p as u8 } else { ((p * p + p / 3) % 3) as u8 }).collect();
    Word::new(3, letters).expect("ranks below 3")
}

/// `mixed_word` rotated so it is far from its least rotation.
pub fn rotated_word(len: usize) -> Word {
    mixed_word(len).rotate(len / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_two_words() {
        for len in [3, 10, 1000] {
            assert!(mixed_word(len).validate_n_word().is_ok());
            assert_eq!(rotated_word(len).canonicalize(), mixed_word(len).canonicalize());
        }
    }
}
