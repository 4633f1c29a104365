//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;

use chern_core::{
    gauss_word, BaseTriangle, Cell, ElementaryBundle, FiberKind, Rational, SBundleJson, SurfaceTriangle,
    TriangleId, TriangulatedSBundle, Word,
};

/// Every word of length `len` over `k` characters, lexicographic.
pub fn all_words(k: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = k.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut letters = vec![0u8; len];
        for p in (0..len).rev() {
            letters[p] = (code % k) as u8;
            code /= k;
        }
        Word::new(k, letters).unwrap()
    })
}

/// Every n-word over `k` characters with length in `lens`.
pub fn all_n_words(k: usize, lens: std::ops::RangeInclusive<usize>) -> Vec<Word> {
    lens.flat_map(|len| all_words(k, len)).filter(|w| w.validate_n_word().is_ok()).collect()
}

/// Least rotation by comparing all rotations.
pub fn brute_least_rotation(w: &Word) -> Word {
    (0..w.len()).map(|k| w.rotate(k)).min_by(|a, b| a.letters().cmp(b.letters())).unwrap()
}

pub fn brute_is_cyclic_palindrome(w: &Word) -> bool {
    let m = w.mirror();
    (0..w.len()).any(|k| w.rotate(k) == m)
}

/// Line-by-line transcription of the reference `Index` procedure: for every
/// entrance of `a`, +1 per `b` on its left and -1 per `b` on its right.
#[allow(clippy::needless_range_loop)]
pub fn reference_index(a: char, b: char, s: &[char]) -> Rational {
    let mut k0 = 0i64;
    let mut ind = 0i64;
    for i in 0..s.len() {
        if s[i] == a {
            k0 += 1;
            for j in 0..s.len() {
                if s[j] == b {
                    if j < i {
                        ind += 1;
                    }
                    if j > i {
                        ind -= 1;
                    }
                }
            }
        }
    }
    let k1 = s.len() as i64 - k0;
    Rational::new(ind, 2 * k0 * k1)
}

/// Transcription of the reference `Curv` procedure.
pub fn reference_curv(a: char, b: char, c: char, word: &str) -> Rational {
    let l: Vec<char> = word.chars().collect();
    let (mut lab, mut lac, mut lbc) = (Vec::new(), Vec::new(), Vec::new());
    for &x in &l {
        if x == a {
            lab.push(x);
            lac.push(x);
        }
        if x == b {
            lab.push(x);
            lbc.push(x);
        }
        if x == c {
            lac.push(x);
            lbc.push(x);
        }
    }
    reference_index(b, c, &lbc) - reference_index(a, c, &lac) + reference_index(a, b, &lab)
}

pub fn reference_curv_word(w: &Word) -> Rational {
    reference_curv('a', 'b', 'c', &w.to_latin())
}

/// Interval bundle of a word built by stepping sections: each letter raises
/// the level over its character by one.
pub fn section_chain_bundle(w: &Word) -> ElementaryBundle {
    let n1 = w.alphabet_size();
    let mut section = vec![0usize; n1];
    let mut cells = Vec::new();
    for &r in w.letters() {
        let r = r as usize;
        cells.push(Cell::new(section.clone(), r, section[r] + 1));
        section[r] += 1;
    }
    let sizes = w.counts().iter().map(|c| c + 1).collect();
    ElementaryBundle::new(FiberKind::Interval, sizes, cells).unwrap()
}

/// Circle bundle of a labeled cyclic word: token `(c, l)` is an entrance of
/// character `c` whose following arc carries level `l`.
pub fn labeled_circle_bundle(tokens: &[(u8, usize)], sizes: &[usize]) -> ElementaryBundle {
    let n = tokens.len();
    let cells = (0..n)
        .map(|p| {
            let (c, l) = tokens[p];
            let bottom = (0..sizes.len())
                .map(|m| {
                    if m == c as usize {
                        (l + sizes[m] - 1) % sizes[m]
                    } else {
                        let q =
                            (1..=n).map(|d| (p + n - d) % n).find(|&q| tokens[q].0 as usize == m).unwrap();
                        tokens[q].1
                    }
                })
                .collect();
            Cell::new(bottom, c as usize, l)
        })
        .collect();
    ElementaryBundle::new(FiberKind::Circle, sizes.to_vec(), cells).unwrap()
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}

pub fn load_surface(name: &str) -> TriangulatedSBundle {
    let text = std::fs::read_to_string(data_path(name)).unwrap();
    let json: SBundleJson = serde_json::from_str(&text).unwrap();
    json.to_bundle().unwrap()
}

/// Vertex of a total complex: (base vertex id, level).
pub type TotalVertex = (u64, usize);

/// Maximal simplices of the total complex glued from per-triangle pieces.
pub fn total_complex(tb: &TriangulatedSBundle) -> Vec<Vec<TotalVertex>> {
    let mut out = Vec::new();
    for t in tb.triangles() {
        let total = t.total.as_ref().expect("total complex supplied");
        for c in total.cells() {
            let mut vs: Vec<TotalVertex> =
                c.vertices().iter().map(|v| (t.triangle.vertices[v.base], v.level)).collect();
            vs.sort();
            out.push(vs);
        }
    }
    out
}

/// True when distinct cells of every dimension have distinct vertex sets,
/// i.e. the glued cell complex is a simplicial complex.
pub fn is_simplicial(tb: &TriangulatedSBundle) -> bool {
    let tets = total_complex(tb);
    if tets.iter().any(|t| t.iter().collect::<BTreeSet<_>>().len() != 4) {
        return false;
    }
    let faces = |k: usize| -> usize {
        let mut set = BTreeSet::new();
        for t in &tets {
            for mask in 0u32..16 {
                if mask.count_ones() as usize == k {
                    let f: Vec<_> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| t[i]).collect();
                    set.insert(f);
                }
            }
        }
        set.len()
    };
    // Cell counts: over each vertex k_v vertices and k_v vertical edges, over
    // each edge and each triangle as many top cells as interior sections.
    let mut fiber: HashMap<u64, usize> = HashMap::new();
    let mut edge_len: HashMap<(u64, u64), usize> = HashMap::new();
    let mut tri_len = 0;
    for t in tb.triangles() {
        let total = t.total.as_ref().unwrap();
        for (i, &m) in total.fiber_sizes().iter().enumerate() {
            fiber.insert(t.triangle.vertices[i], m);
        }
        for i in 0..3 {
            let len = t.word.delta(i).len();
            edge_len.insert(t.triangle.edge_opposite(i), len);
        }
        tri_len += t.word.len();
    }
    let verts: usize = fiber.values().sum();
    let edges = verts + edge_len.values().sum::<usize>();
    let tris = edge_len.values().sum::<usize>() + tri_len;
    faces(1) == verts && faces(2) == edges && faces(3) == tris && faces(4) == tri_len
}

/// First integral homology of a simplicial complex given by maximal
/// simplices: `(free rank, torsion coefficients)`.
pub fn first_homology(maximal: &[Vec<TotalVertex>]) -> (usize, Vec<i128>) {
    let mut verts = BTreeSet::new();
    let mut edges = BTreeSet::new();
    let mut tris = BTreeSet::new();
    for s in maximal {
        let mut s = s.clone();
        s.sort();
        for &v in &s {
            verts.insert(v);
        }
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                edges.insert((s[i], s[j]));
                for k in j + 1..s.len() {
                    tris.insert((s[i], s[j], s[k]));
                }
            }
        }
    }
    let vi: HashMap<_, _> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let ei: HashMap<_, _> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut d1 = vec![vec![0i128; edges.len()]; verts.len()];
    for (j, (a, b)) in edges.iter().enumerate() {
        d1[vi[a]][j] -= 1;
        d1[vi[b]][j] += 1;
    }
    let mut d2 = vec![vec![0i128; tris.len()]; edges.len()];
    for (j, (a, b, c)) in tris.iter().enumerate() {
        d2[ei[&(*b, *c)]][j] += 1;
        d2[ei[&(*a, *c)]][j] -= 1;
        d2[ei[&(*a, *b)]][j] += 1;
    }
    let rank1 = diagonalize(d1).len();
    let diag2 = diagonalize(d2);
    let free = edges.len() - rank1 - diag2.len();
    let torsion = diag2.into_iter().map(i128::abs).filter(|&d| d != 1).collect();
    (free, torsion)
}

/// Nonzero diagonal of an integer diagonal form (row and column operations).
#[allow(clippy::needless_range_loop)]
fn diagonalize(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero magnitude in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        let p = m[t][t];
        for i in t + 1..rows {
            let q = m[i][t] / p;
            if q != 0 {
                for j in t..cols {
                    m[i][j] -= q * m[t][j];
                }
            }
            clean &= m[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = m[t][j] / p;
            if q != 0 {
                for row in m.iter_mut().skip(t) {
                    row[j] -= q * row[t];
                }
            }
            clean &= m[t][j] == 0;
        }
        if clean {
            diag.push(p);
            t += 1;
        }
    }
    diag
}

/// Labeled cyclic 2-words with `k` entrances per character and the first
/// token fixed to `(0, 0)`. Each is one elementary circle bundle over a
/// triangle with fiber size `k` over every vertex.
pub fn labeled_words(k: usize) -> Vec<Vec<(u8, usize)>> {
    let mut out = Vec::new();
    let mut rest = vec![0u8; k - 1];
    rest.extend(std::iter::repeat(1).take(k));
    rest.extend(std::iter::repeat(2).take(k));
    permute_multiset(&rest, &mut Vec::new(), &mut vec![false; rest.len()], &mut |perm| {
        for o1 in 0..k {
            for o2 in 0..k {
                let offset = [0, o1, o2];
                let mut count = [0usize; 3];
                let mut tokens = Vec::with_capacity(3 * k);
                for &c in std::iter::once(&0u8).chain(perm.iter()) {
                    let c = c as usize;
                    tokens.push((c as u8, (offset[c] + count[c]) % k));
                    count[c] += 1;
                }
                out.push(tokens);
            }
        }
    });
    out
}

fn permute_multiset(items: &[u8], cur: &mut Vec<u8>, used: &mut Vec<bool>, f: &mut dyn FnMut(&[u8])) {
    if cur.len() == items.len() {
        f(cur);
        return;
    }
    let mut tried = BTreeSet::new();
    for i in 0..items.len() {
        if !used[i] && tried.insert(items[i]) {
            used[i] = true;
            cur.push(items[i]);
            permute_multiset(items, cur, used, f);
            cur.pop();
            used[i] = false;
        }
    }
}

pub type Tokens = Vec<(u8, usize)>;

/// Boundary of the tetrahedron with signs of the outward orientation.
pub const TETRA: [([u64; 3], i8); 4] = [([1, 2, 3], 1), ([0, 2, 3], -1), ([0, 1, 3], 1), ([0, 1, 2], -1)];

pub fn surface(
    vertices: Vec<u64>,
    faces: &[([u64; 3], i8, Tokens)],
    sizes: &HashMap<u64, usize>,
) -> TriangulatedSBundle {
    let triangles = faces
        .iter()
        .enumerate()
        .map(|(k, (v, sign, tokens))| {
            let local: Vec<usize> = v.iter().map(|x| sizes[x]).collect();
            let total = labeled_circle_bundle(tokens, &local);
            SurfaceTriangle {
                triangle: BaseTriangle { id: TriangleId::Int(k as i64), vertices: *v, sign: *sign },
                word: gauss_word(&total).unwrap(),
                total: Some(total),
            }
        })
        .collect();
    let tb = TriangulatedSBundle::new(vertices, triangles).unwrap();
    // Through the serialized total-complex path as well.
    let mut json = tb.to_json();
    for t in &mut json.triangles {
        t.word = None;
    }
    let back = json.to_bundle().unwrap();
    assert_eq!(back, tb);
    back
}

/// Product bundle: every base vertex carries points on one global circle
/// `Z/period`, and each triangle reads them in circle order.
pub fn product(
    vertices: Vec<u64>,
    faces: &[([u64; 3], i8)],
    points: &HashMap<u64, Vec<usize>>,
    period: usize,
) -> TriangulatedSBundle {
    let sizes: HashMap<u64, usize> = points.iter().map(|(v, p)| (*v, p.len())).collect();
    let faces: Vec<_> = faces
        .iter()
        .map(|(v, sign)| {
            let mut marks: Vec<(usize, u8, usize)> = Vec::new();
            for (rank, x) in v.iter().enumerate() {
                for (level, &p) in points[x].iter().enumerate() {
                    marks.push((p % period, rank as u8, level));
                }
            }
            marks.sort();
            assert!(marks.windows(2).all(|m| m[0].0 != m[1].0), "points must be distinct");
            (*v, *sign, marks.iter().map(|&(_, r, l)| (r, l)).collect())
        })
        .collect();
    surface(vertices, &faces, &sizes)
}

pub fn tetra_points(offsets: [usize; 4], per_vertex: usize, period: usize) -> HashMap<u64, Vec<usize>> {
    (0..4u64)
        .map(|v| (v, (0..per_vertex).map(|j| j * period / per_vertex + offsets[v as usize]).collect()))
        .collect()
}
