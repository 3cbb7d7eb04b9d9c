//! Facet gluings of tetrahedra and their barycentric coloured graphs.
//!
//! Line format, one gluing per line (`#` starts a comment):
//!
//! ```text
//! tet <t>: face <f> -> tet <t'> face <f'> perm <abc>
//! ```
//!
//! Tetrahedra and their vertices are numbered from 0; face `f` is the one
//! opposite vertex `f`. `abc` lists the images in tetrahedron `t'` of the
//! three vertices of face `f`, taken in ascending order. Each pair of faces
//! may be given from one side or from both; both sides must agree.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::ColouredGraph;

/// Where a face goes: tetrahedron `tet`, face `face`, and the vertex map
/// `map` (indexed by the source tetrahedron's vertex labels, with the
/// opposite vertex sent to the opposite vertex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaceMap {
    pub tet: usize,
    pub face: usize,
    pub map: [usize; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetGluing {
    /// `faces[t][f]`.
    faces: Vec<[FaceMap; 4]>,
}

fn inverse(map: &[usize; 4]) -> [usize; 4] {
    let mut inv = [0; 4];
    for (a, &b) in map.iter().enumerate() {
        inv[b] = a;
    }
    inv
}

fn gluing_error(line: usize, msg: impl fmt::Display) -> Error {
    Error::Gluing(format!("line {line}: {msg}"))
}

impl FacetGluing {
    /// Builds and validates a gluing from one face map per face.
    pub fn new(faces: Vec<[FaceMap; 4]>) -> Result<Self> {
        let g = FacetGluing { faces };
        g.validate()?;
        Ok(g)
    }

    pub fn tet_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face(&self, tet: usize, face: usize) -> FaceMap {
        self.faces[tet][face]
    }

    fn validate(&self) -> Result<()> {
        if self.faces.is_empty() {
            return Err(Error::Gluing("no tetrahedra".into()));
        }
        for (t, faces) in self.faces.iter().enumerate() {
            for (f, fm) in faces.iter().enumerate() {
                if fm.tet >= self.faces.len() || fm.face > 3 {
                    return Err(Error::Gluing(format!("tet {t} face {f}: target out of range")));
                }
                let mut seen = [false; 4];
                for &x in &fm.map {
                    if x > 3 || std::mem::replace(&mut seen[x], true) {
                        return Err(Error::Gluing(format!("tet {t} face {f}: bad permutation")));
                    }
                }
                if fm.map[f] != fm.face {
                    return Err(Error::Gluing(format!("tet {t} face {f}: bad permutation")));
                }
                let back = self.faces[fm.tet][fm.face];
                if back.tet != t || back.face != f || back.map != inverse(&fm.map) {
                    return Err(Error::Gluing(format!("tet {t} face {f}: non-involutive gluing")));
                }
                // a face glued to itself must move every flag on it
                if fm.tet == t && fm.face == f && fm.map == [0, 1, 2, 3] {
                    return Err(Error::Gluing(format!("tet {t} face {f}: bad permutation")));
                }
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut given: Vec<[Option<FaceMap>; 4]> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let n = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let ["tet", t, "face", f, "->", "tet", t2, "face", f2, "perm", perm] = tokens[..] else {
                return Err(gluing_error(n, "expected `tet <t>: face <f> -> tet <t'> face <f'> perm <abc>`"));
            };
            let t = t.strip_suffix(':').ok_or_else(|| gluing_error(n, "missing `:` after tetrahedron"))?;
            let num = |s: &str| s.parse::<usize>().map_err(|_| gluing_error(n, format!("bad number {s:?}")));
            let (t, f, t2, f2) = (num(t)?, num(f)?, num(t2)?, num(f2)?);
            if f > 3 || f2 > 3 {
                return Err(gluing_error(n, "faces are numbered 0 to 3"));
            }
            let digits: Vec<usize> = perm
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).filter(|&d| d < 4))
                .collect::<Option<_>>()
                .ok_or_else(|| gluing_error(n, "bad permutation"))?;
            if digits.len() != 3 {
                return Err(gluing_error(n, "bad permutation"));
            }
            let mut map = [0usize; 4];
            map[f] = f2;
            for (&v, &img) in (0..4).filter(|&v| v != f).collect::<Vec<_>>().iter().zip(&digits) {
                map[v] = img;
            }
            let mut hit = [false; 4];
            if map.iter().any(|&x| std::mem::replace(&mut hit[x], true)) {
                return Err(gluing_error(n, "bad permutation"));
            }
            let need = t.max(t2) + 1;
            if given.len() < need {
                given.resize(need, [None; 4]);
            }
            for (st, sf, fm) in [
                (t, f, FaceMap { tet: t2, face: f2, map }),
                (t2, f2, FaceMap { tet: t, face: f, map: inverse(&map) }),
            ] {
                match given[st][sf] {
                    None => given[st][sf] = Some(fm),
                    Some(prev) if prev == fm => {}
                    Some(_) => return Err(gluing_error(n, format!("non-involutive gluing at tet {st} face {sf}"))),
                }
            }
        }
        let mut faces = Vec::with_capacity(given.len());
        for (t, row) in given.iter().enumerate() {
            let mut out = [FaceMap { tet: 0, face: 0, map: [0; 4] }; 4];
            for f in 0..4 {
                out[f] = row[f].ok_or_else(|| Error::Gluing(format!("dangling face: tet {t} face {f}")))?;
            }
            faces.push(out);
        }
        Self::new(faces)
    }

    /// One line per face, in `(t, f)` order; parses back to `self`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (t, faces) in self.faces.iter().enumerate() {
            for (f, fm) in faces.iter().enumerate() {
                let perm: String =
                    (0..4).filter(|&v| v != f).map(|v| char::from(b'0' + fm.map[v] as u8)).collect();
                s.push_str(&format!("tet {t}: face {f} -> tet {} face {} perm {perm}\n", fm.tet, fm.face));
            }
        }
        s
    }
}

/// The 24 orderings `(a, b, c, d)` of `{0,1,2,3}`, lexicographic. Ordering
/// `(a, b, c, d)` stands for the flag vertex `a`, edge `ab`, face `abc`.
fn flags() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

fn flag_key(f: &[usize; 4]) -> usize {
    f[0] * 16 + f[1] * 4 + f[2]
}

/// Dual graph of the barycentric subdivision, its vertices labelled by the
/// dimension of the simplex they subdivide. Vertex `24 t + k` is the `k`-th
/// flag of tetrahedron `t`; its colour-`c` neighbour is the flag differing
/// only in the `c`-dimensional member, found across a gluing for `c = 3`.
pub fn barycentric_graph(t: &FacetGluing) -> ColouredGraph {
    let fl = flags();
    let mut index = [usize::MAX; 64];
    for (k, f) in fl.iter().enumerate() {
        index[flag_key(f)] = k;
    }
    let order = 24 * t.tet_count();
    let mut adj = vec![0u32; order * 4];
    for tet in 0..t.tet_count() {
        for (k, &[a, b, c, d]) in fl.iter().enumerate() {
            let v = 24 * tet + k;
            let local = |f: [usize; 4]| (24 * tet + index[flag_key(&f)]) as u32;
            adj[v * 4] = local([b, a, c, d]);
            adj[v * 4 + 1] = local([a, c, b, d]);
            adj[v * 4 + 2] = local([a, b, d, c]);
            let fm = t.face(tet, d);
            let image = [fm.map[a], fm.map[b], fm.map[c], fm.map[d]];
            adj[v * 4 + 3] = (24 * fm.tet + index[flag_key(&image)]) as u32;
        }
    }
    ColouredGraph::from_adjacency(4, adj).expect("validated gluings give proper colourings")
}

/// The gluing dual to a 4-coloured graph: one tetrahedron per vertex, its
/// vertices labelled by colours, face `c` glued to the `c`-neighbour's
/// face `c` by the identity on labels.
pub fn dual_gluing(g: &ColouredGraph) -> Result<FacetGluing> {
    g.require_four_colours()?;
    let faces = (0..g.order())
        .map(|v| {
            let mut row = [FaceMap { tet: 0, face: 0, map: [0, 1, 2, 3] }; 4];
            for (c, fm) in row.iter_mut().enumerate() {
                *fm = FaceMap { tet: g.neighbour(v, c), face: c, map: [0, 1, 2, 3] };
            }
            row
        })
        .collect();
    FacetGluing::new(faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_TET_SPHERE: &str = "\
tet 0: face 0 -> tet 1 face 0 perm 123
tet 0: face 1 -> tet 1 face 1 perm 023
tet 0: face 2 -> tet 1 face 2 perm 013
tet 0: face 3 -> tet 1 face 3 perm 012
";

    #[test]
    fn two_tetrahedron_sphere() {
        let t = FacetGluing::parse(TWO_TET_SPHERE).unwrap();
        assert_eq!(t.tet_count(), 2);
        let g = barycentric_graph(&t);
        assert_eq!(g.order(), 48);
        assert!(g.represents_manifold().unwrap());
        assert!(g.is_bipartite().unwrap());
        assert_eq!(FacetGluing::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn dangling_face() {
        let text: String = TWO_TET_SPHERE.lines().take(3).map(|l| format!("{l}\n")).collect();
        let err = FacetGluing::parse(&text).unwrap_err();
        assert!(err.to_string().contains("dangling face"), "{err}");
    }

    #[test]
    fn conflicting_lines() {
        let text = format!("{TWO_TET_SPHERE}tet 1: face 3 -> tet 0 face 3 perm 102\n");
        assert!(FacetGluing::parse(&text).unwrap_err().to_string().contains("non-involutive"));
        assert!(FacetGluing::parse("tet 0: face 0 -> tet 0 face 0 perm 123\n").is_err());
        assert!(FacetGluing::parse("tet 0: face 0 -> tet 1 face 0 perm 113\n").is_err());
        assert!(FacetGluing::parse("tet 0: face 0 -> tet 1 face 1 perm 123\n").is_err());
    }

    #[test]
    fn self_glued_face() {
        // face 3 folded onto itself by swapping vertices 0 and 1; faces 0
        // and 1 glued to each other, face 2 folded the same way
        let text = "\
tet 0: face 3 -> tet 0 face 3 perm 102
tet 0: face 2 -> tet 0 face 2 perm 103
tet 0: face 0 -> tet 0 face 1 perm 023
";
        let t = FacetGluing::parse(text).unwrap();
        let g = barycentric_graph(&t);
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn dual_gluing_round_trip() {
        let g = ColouredGraph::dipole_sphere(4);
        let t = dual_gluing(&g).unwrap();
        assert_eq!(t.tet_count(), 2);
        let b = barycentric_graph(&t);
        assert_eq!(b.order(), 48);
        assert!(b.represents_manifold().unwrap());
    }
}
