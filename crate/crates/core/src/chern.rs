//! Chern numbers of triangulated circle bundles over closed oriented surfaces.
//!
//! The base is given by its oriented triangles. Vertex ids are totally
//! ordered by their position in the `vertices` list, and every triangle lists
//! its vertices in that order, so the local ordering of each triangle is the
//! restriction of one global order. Each triangle carries the cyclic word of
//! the circle bundle over it: character `i` of the word is the triangle's
//! `i`-th vertex. The Chern number is the sum of the triangles' curvatures
//! weighted by their orientation signs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bundle::{restrict, word_from_s_bundle, BundleError, BundleJson, ElementaryBundle};
use crate::curvature::{curv_cyclic, CurvatureError};
use crate::rational::Rational;
use crate::word::{CyclicWord, WordError, WordJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("triangle {triangle}: {source}")]
    Word { triangle: TriangleId, source: WordError },
    #[error("triangle {triangle}: {source}")]
    Bundle { triangle: TriangleId, source: BundleError },
    #[error("triangle {triangle}: {source}")]
    Curvature { triangle: TriangleId, source: CurvatureError },
    #[error("the surface does not form a valid fundamental cycle: {0}")]
    InvalidCycle(CycleReport),
    #[error("curvature sums to the non-integer {0}; the input is not a closed oriented surface bundle")]
    ValidationGap(Rational),
}

/// Triangle identifier as given in the input file.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TriangleId {
    Int(i64),
    Name(String),
}

impl fmt::Display for TriangleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangleId::Int(i) => write!(f, "{i}"),
            TriangleId::Name(s) => f.write_str(s),
        }
    }
}

/// An oriented triangle of the base; `vertices` are increasing in the global order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseTriangle {
    pub id: TriangleId,
    pub vertices: [u64; 3],
    pub sign: i8,
}

impl BaseTriangle {
    /// The edge opposite local vertex `i`, as global ids.
    pub fn edge_opposite(&self, i: usize) -> (u64, u64) {
        let [a, b, c] = self.vertices;
        match i {
            0 => (b, c),
            1 => (a, c),
            2 => (a, b),
            _ => panic!("triangle has three edges"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceTriangle {
    pub triangle: BaseTriangle,
    pub word: CyclicWord,
    /// Total-complex piece over the triangle, when supplied.
    pub total: Option<ElementaryBundle>,
}

/// A triangulated circle bundle over a triangulated surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulatedSBundle {
    vertices: Vec<u64>,
    triangles: Vec<SurfaceTriangle>,
}

impl TriangulatedSBundle {
    /// Checks vertex ordering and word shape; surface-level checks live in
    /// [`validate_cycle`].
    pub fn new(vertices: Vec<u64>, triangles: Vec<SurfaceTriangle>) -> Result<Self, ChernError> {
        let mut position = HashMap::new();
        for (k, &v) in vertices.iter().enumerate() {
            if position.insert(v, k).is_some() {
                return Err(ChernError::InvalidInput(format!("vertex {v} listed twice")));
            }
        }
        for t in &triangles {
            let tri = &t.triangle;
            let pos = tri
                .vertices
                .iter()
                .map(|v| {
                    position.get(v).copied().ok_or_else(|| {
                        ChernError::InvalidInput(format!("triangle {} uses unknown vertex {v}", tri.id))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !(pos[0] < pos[1] && pos[1] < pos[2]) {
                return Err(ChernError::InvalidInput(format!(
                    "triangle {} must list distinct vertices in increasing global order",
                    tri.id
                )));
            }
            if tri.sign != 1 && tri.sign != -1 {
                return Err(ChernError::InvalidInput(format!("triangle {} has sign {}", tri.id, tri.sign)));
            }
            let rep = t.word.rep();
            if rep.alphabet_size() != 3 {
                return Err(ChernError::Word {
                    triangle: tri.id.clone(),
                    source: WordError::SizeMismatch { expected: 3, found: rep.alphabet_size() },
                });
            }
            rep.validate_n_word().map_err(|source| ChernError::Word { triangle: tri.id.clone(), source })?;
        }
        Ok(Self { vertices, triangles })
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[SurfaceTriangle] {
        &self.triangles
    }

    /// Negates every orientation sign.
    pub fn reversed_orientation(&self) -> Self {
        let mut out = self.clone();
        for t in &mut out.triangles {
            t.triangle.sign = -t.triangle.sign;
        }
        out
    }

    /// Reverses the fiber orientation: every word is mirrored.
    pub fn mirrored_fibers(&self) -> Self {
        let mut out = self.clone();
        for t in &mut out.triangles {
            t.word = t.word.mirror();
            t.total = None;
        }
        out
    }

    pub fn to_json(&self) -> SBundleJson {
        SBundleJson {
            vertices: self.vertices.clone(),
            triangles: self
                .triangles
                .iter()
                .map(|t| TriangleJson {
                    id: t.triangle.id.clone(),
                    v: t.triangle.vertices,
                    sign: t.triangle.sign,
                    word: Some(WordJson::latin(t.word.rep())),
                    total: t.total.as_ref().map(ElementaryBundle::to_json),
                })
                .collect(),
        }
    }
}

/// Serialized surface bundle; each triangle carries a `word`, a `total`
/// bundle, or both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SBundleJson {
    pub vertices: Vec<u64>,
    pub triangles: Vec<TriangleJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleJson {
    pub id: TriangleId,
    pub v: [u64; 3],
    pub sign: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<WordJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<BundleJson>,
}

impl SBundleJson {
    pub fn to_bundle(&self) -> Result<TriangulatedSBundle, ChernError> {
        let triangles = self
            .triangles
            .iter()
            .map(|t| {
                let triangle = BaseTriangle { id: t.id.clone(), vertices: t.v, sign: t.sign };
                let id = || t.id.clone();
                let total = match &t.total {
                    Some(j) => {
                        Some(j.to_bundle().map_err(|source| ChernError::Bundle { triangle: id(), source })?)
                    }
                    None => None,
                };
                let from_total = match &total {
                    Some(b) => {
                        Some(gauss_word(b).map_err(|source| ChernError::Bundle { triangle: id(), source })?)
                    }
                    None => None,
                };
                let from_word = match &t.word {
                    Some(j) => {
                        let (w, alphabet) =
                            j.to_word().map_err(|source| ChernError::Word { triangle: id(), source })?;
                        if alphabet.len() != 3 {
                            return Err(ChernError::Word {
                                triangle: id(),
                                source: WordError::SizeMismatch { expected: 3, found: alphabet.len() },
                            });
                        }
                        Some(w.canonicalize())
                    }
                    None => None,
                };
                let word = match (from_word, from_total) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(ChernError::InvalidInput(format!(
                            "triangle {}: word {a} disagrees with the total complex word {b}",
                            t.id
                        )))
                    }
                    (Some(a), _) => a,
                    (None, Some(b)) => b,
                    (None, None) => {
                        return Err(ChernError::InvalidInput(format!(
                            "triangle {} has neither word nor total",
                            t.id
                        )))
                    }
                };
                Ok(SurfaceTriangle { triangle, word, total })
            })
            .collect::<Result<Vec<_>, _>>()?;
        TriangulatedSBundle::new(self.vertices.clone(), triangles)
    }
}

/// Cyclic word of the circle bundle over one ordered triangle.
pub fn gauss_word(total: &ElementaryBundle) -> Result<CyclicWord, BundleError> {
    if total.base_dim() != 2 {
        return Err(BundleError::Invalid(format!(
            "expected a bundle over a triangle, found base dimension {}",
            total.base_dim()
        )));
    }
    word_from_s_bundle(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryDefect {
    pub edge: (u64, u64),
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeMismatch {
    pub edge: (u64, u64),
    pub triangles: Vec<TriangleId>,
    /// The 2-character cyclic words induced on the edge, one per triangle.
    pub words: Vec<String>,
}

/// Result of [`validate_cycle`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    /// Edges where the signed boundary of the surface does not cancel.
    pub boundary: Vec<BoundaryDefect>,
    /// Edges whose adjacent triangles induce different bundles.
    pub incompatible: Vec<EdgeMismatch>,
}

impl CycleReport {
    pub fn is_valid(&self) -> bool {
        self.boundary.is_empty() && self.incompatible.is_empty()
    }

    pub fn failing_edges(&self) -> Vec<(u64, u64)> {
        let mut edges: Vec<_> =
            self.boundary.iter().map(|d| d.edge).chain(self.incompatible.iter().map(|m| m.edge)).collect();
        edges.sort();
        edges.dedup();
        edges
    }
}

impl fmt::Display for CycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("ok");
        }
        let mut parts = Vec::new();
        for d in &self.boundary {
            parts.push(format!("edge {:?} has boundary coefficient {}", d.edge, d.coefficient));
        }
        for m in &self.incompatible {
            parts.push(format!("edge {:?} carries different bundles {:?}", m.edge, m.words));
        }
        f.write_str(&parts.join("; "))
    }
}

/// The piece of a total complex over one edge. Both adjacent triangles rank
/// the edge's endpoints in global order, so equal pieces compare equal.
fn edge_piece(t: &SurfaceTriangle, opposite: usize) -> Option<ElementaryBundle> {
    restrict(t.total.as_ref()?, opposite).ok()
}

/// Checks that the signed boundary vanishes and that adjacent triangles
/// induce the same bundle on every shared edge.
///
/// Words are compared as 2-character cyclic words. Where every adjacent
/// triangle also supplies its total complex, the labeled edge pieces must
/// coincide as well.
pub fn validate_cycle(tb: &TriangulatedSBundle) -> CycleReport {
    let mut coefficient: BTreeMap<(u64, u64), i64> = BTreeMap::new();
    let mut incident: BTreeMap<(u64, u64), Vec<(usize, usize)>> = BTreeMap::new();
    for (k, t) in tb.triangles.iter().enumerate() {
        for i in 0..3 {
            let edge = t.triangle.edge_opposite(i);
            let s = if i % 2 == 0 { 1 } else { -1 };
            *coefficient.entry(edge).or_default() += s * t.triangle.sign as i64;
            incident.entry(edge).or_default().push((k, i));
        }
    }
    let boundary = coefficient
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(edge, coefficient)| BoundaryDefect { edge, coefficient })
        .collect();

    let mut incompatible = Vec::new();
    for (edge, sides) in incident {
        let words: Vec<CyclicWord> = sides.iter().map(|&(k, i)| tb.triangles[k].word.delta(i)).collect();
        let mut ok = words.windows(2).all(|p| p[0] == p[1]);
        if ok {
            let pieces: Option<Vec<ElementaryBundle>> =
                sides.iter().map(|&(k, i)| edge_piece(&tb.triangles[k], i)).collect();
            if let Some(pieces) = pieces {
                ok = pieces.windows(2).all(|p| p[0] == p[1]);
            }
        }
        if !ok {
            incompatible.push(EdgeMismatch {
                edge,
                triangles: sides.iter().map(|&(k, _)| tb.triangles[k].triangle.id.clone()).collect(),
                words: words.iter().map(|w| w.to_string()).collect(),
            });
        }
    }
    CycleReport { boundary, incompatible }
}

/// Σ sign(t) · curv(word(t)) over a validated fundamental cycle.
pub fn chern_number(tb: &TriangulatedSBundle) -> Result<Rational, ChernError> {
    let report = validate_cycle(tb);
    if !report.is_valid() {
        return Err(ChernError::InvalidCycle(report));
    }
    let total = curvature_sum(tb)?;
    if !total.is_integer() {
        return Err(ChernError::ValidationGap(total));
    }
    Ok(total)
}

/// The signed curvature sum without any surface validation.
pub fn curvature_sum(tb: &TriangulatedSBundle) -> Result<Rational, ChernError> {
    tb.triangles
        .iter()
        .map(|t| {
            let c = curv_cyclic(&t.word)
                .map_err(|source| ChernError::Curvature { triangle: t.triangle.id.clone(), source })?;
            Ok(if t.triangle.sign < 0 { -c } else { c })
        })
        .sum::<Result<Rational, ChernError>>()
}
