#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crystal::{build_catalogue, code, decode, Catalogue, Code, ColourSet, ColouredGraph};

/// Catalogues for orders 2, 4, ..., 24, computed once per test binary.
pub fn catalogues() -> &'static [Catalogue] {
    static CELL: OnceLock<Vec<Catalogue>> = OnceLock::new();
    CELL.get_or_init(|| (2..=24).step_by(2).map(build_catalogue).collect())
}

pub fn catalogue(order: usize) -> &'static Catalogue {
    &catalogues()[order / 2 - 1]
}

/// Every catalogued graph with at most `max` vertices.
pub fn members_up_to(max: usize) -> Vec<ColouredGraph> {
    catalogues()
        .iter()
        .filter(|c| c.vertex_count <= max)
        .flat_map(|c| c.bipartite.iter().chain(&c.non_bipartite))
        .map(|c| decode(c).unwrap())
        .collect()
}

pub fn non_bipartite_up_to(max: usize) -> Vec<Code> {
    catalogues().iter().filter(|c| c.vertex_count <= max).flat_map(|c| c.non_bipartite.clone()).collect()
}

/// The rigid 14-vertex crystallization of the non-orientable handle.
pub fn m14() -> ColouredGraph {
    decode(&catalogue(14).non_bipartite[0]).unwrap()
}

/// Non-rigid 8-vertex crystallizations of the two handles, each with
/// rho3 pairs.
pub const HANDLE8_ORIENTABLE: &str = "4:8:21573846217684353516248746513287";
pub const HANDLE8_NON_ORIENTABLE: &str = "4:8:21573846351827643617824545712836";

/// All perfect matchings of `0..n`, as involution tables.
pub fn matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(m: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(u) = m.iter().position(|&x| x == usize::MAX) else {
            out.push(m.clone());
            return;
        };
        for v in u + 1..m.len() {
            if m[v] == usize::MAX {
                m[u] = v;
                m[v] = u;
                rec(m, out);
                m[u] = usize::MAX;
                m[v] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; n], &mut out);
    out
}

/// Whether a 3-coloured graph is connected and represents the 2-sphere.
pub fn is_sphere3(g: &ColouredGraph) -> bool {
    g.is_connected()
        && [0b011u8, 0b101, 0b110].iter().map(|&m| g.residue_count(ColourSet::from_mask(m))).sum::<usize>()
            == g.order() / 2 + 2
}

/// Partitions of `n` into positive parts, descending.
fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for part in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - part, part) {
            rest.insert(0, part);
            out.push(rest);
        }
    }
    out
}

/// Colours 0 and 1 laid out as consecutive alternating cycles with
/// `2 * part` vertices each. Relabelling along the `{0,1}`-cycles brings
/// any graph to one of these forms.
pub fn standard_pairs(n: usize) -> Vec<[Vec<usize>; 2]> {
    partitions(n / 2, n / 2)
        .into_iter()
        .map(|parts| {
            let mut m0 = vec![0; n];
            let mut m1 = vec![0; n];
            let mut start = 0;
            for part in parts {
                let len = 2 * part;
                for t in 0..len {
                    let v = start + t;
                    m0[v] = if t % 2 == 0 { v + 1 } else { v - 1 };
                    m1[v] = if t % 2 == 1 { start + (t + 1) % len } else { start + (t + len - 1) % len };
                }
                start += len;
            }
            [m0, m1]
        })
        .collect()
}

/// Brute force: every `n`-vertex 4-coloured graph up to relabelling, with
/// colours 0 and 1 in [`standard_pairs`] form and colours 2 and 3 ranging
/// over all perfect matchings; filtered by `keep` and deduplicated by code.
/// The `{0,1,2}`-residue of a crystallization is a connected sphere, so
/// triples failing that are skipped before the fourth colour is tried.
pub fn brute_force<F: Fn(&ColouredGraph) -> bool + Sync>(n: usize, keep: F) -> BTreeSet<Code> {
    use rayon::prelude::*;
    let ms = matchings(n);
    let bases = standard_pairs(n);
    bases
        .par_iter()
        .flat_map_iter(|[m0, m1]| {
            let mut out = BTreeSet::new();
            for m2 in &ms {
                let Ok(g3) = ColouredGraph::from_involutions(&[m0.clone(), m1.clone(), m2.clone()]) else {
                    continue;
                };
                if !is_sphere3(&g3) {
                    continue;
                }
                for m3 in &ms {
                    let tables = [m0.clone(), m1.clone(), m2.clone(), m3.clone()];
                    let Ok(g) = ColouredGraph::from_involutions(&tables) else { continue };
                    if keep(&g) {
                        out.insert(code(&g).unwrap());
                    }
                }
            }
            out
        })
        .collect()
}
