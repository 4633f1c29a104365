//! Curvature cocycle of triangulated circle bundles.
//!
//! An elementary circle bundle over an ordered triangle is encoded by a cyclic
//! word over a 3-character ordered alphabet. Its curvature is an exact
//! rational in `[-1/2, 1/2]`, and summing curvatures over the oriented
//! triangles of a closed surface yields the Chern number of the bundle.
//!
//! ```
//! use chern_core::{curv, Alphabet, Rational};
//!
//! let cat = Alphabet::new("cat").unwrap();
//! let w = cat.parse_n_word("cattactact").unwrap();
//! assert_eq!(curv(&w).unwrap(), Rational::new(1, 18));
//! ```

pub mod bundle;
pub mod chern;
pub mod curvature;
pub mod explorer;
pub mod rational;
pub mod word;

pub use bundle::{
    bundle_from_cyclic_word, bundle_from_word, cyclic_shift_bundle, glue, restrict, word_from_bundle,
    word_from_s_bundle, BundleError, BundleJson, Cell, ElementaryBundle, FiberKind, LabeledVertex,
};
pub use chern::{
    chern_number, curvature_sum, gauss_word, validate_cycle, BaseTriangle, ChernError, CycleReport,
    SBundleJson, SurfaceTriangle, TriangleId, TriangulatedSBundle,
};
pub use curvature::{
    coboundary, curv, curv_cyclic, ind, Coboundary, Cochain, Curv, CurvatureError, FnCochain, Ind,
    ZeroCochain,
};
pub use explorer::{enumerate_cyclic_words, find_zero_nonpalindromes, survey, SurveyReport};
pub use rational::Rational;
pub use word::{Alphabet, CyclicWord, Permutation, Word, WordError, WordJson};
