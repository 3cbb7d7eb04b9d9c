//! Exhaustive generation of rigid crystallizations.
//!
//! Seeds are the rigid 3-coloured graphs representing the 2-sphere. They are
//! enumerated directly: colours 0 and 1 are fixed to one cycle structure per
//! partition of `p` (up to relabelling there is exactly one such pair of
//! matchings per partition), colour 2 is searched with planarity pruning, and
//! the results are deduplicated by code. Each seed is then extended by every
//! colour-3 matching keeping the three other 3-residues spheres.

mod search;

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::canon::{code, Code};
use crate::graph::ColouredGraph;
use crate::moves::is_rigid;
use search::{enumerate_matchings, CycleSymmetry, MatchingProblem};

/// A 3-coloured graph representing the 2-sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereGem {
    pub graph: ColouredGraph,
    pub rigid: bool,
}

/// Rigid crystallizations with a fixed number of vertices, split by
/// bipartiteness. Both lists are sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Catalogue {
    pub vertex_count: usize,
    pub bipartite: Vec<Code>,
    pub non_bipartite: Vec<Code>,
}

impl Catalogue {
    pub fn len(&self) -> usize {
        self.bipartite.len() + self.non_bipartite.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Partitions of `n` into parts of size at least `min`, parts descending.
fn partitions(n: usize, min: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (min..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, min, &mut Vec::new(), &mut out);
    out
}

/// Colours 0 and 1 as disjoint alternating cycles of lengths `2 * part`.
fn two_coloured_base(parts: &[usize]) -> Vec<u32> {
    let order: usize = 2 * parts.iter().sum::<usize>();
    let mut adj = vec![0u32; order * 2];
    let mut start = 0;
    for &part in parts {
        let len = 2 * part;
        for t in 0..len {
            let v = start + t;
            let partner0 = if t % 2 == 0 { v + 1 } else { v - 1 };
            let partner1 = if t % 2 == 1 { start + (t + 1) % len } else { start + (t + len - 1) % len };
            adj[v * 2] = partner0 as u32;
            adj[v * 2 + 1] = partner1 as u32;
        }
        start += len;
    }
    adj
}

fn cycle_symmetry(parts: &[usize]) -> CycleSymmetry {
    let mut cycle = Vec::new();
    let mut first = Vec::new();
    let mut class = Vec::new();
    let mut start = 0;
    for (t, &part) in parts.iter().enumerate() {
        cycle.extend(std::iter::repeat(t as u32).take(2 * part));
        first.push(start as u32);
        class.push(part as u32);
        start += 2 * part;
    }
    CycleSymmetry { cycle, first, class }
}

fn add_colour(base: &[u32], k: usize, mate: &[u32]) -> Vec<u32> {
    let order = mate.len();
    let mut adj = Vec::with_capacity(order * (k + 1));
    for v in 0..order {
        adj.extend_from_slice(&base[v * k..(v + 1) * k]);
        adj.push(mate[v]);
    }
    adj
}

/// All rigid 3-coloured sphere gems with `order` vertices, one per
/// colour-isomorphism class, sorted by code. Odd or zero orders give none.
pub fn generate_sphere_gems(order: usize) -> Vec<SphereGem> {
    if order == 0 || order % 2 != 0 {
        return Vec::new();
    }
    let p = order / 2;
    let shapes = if p == 1 { vec![vec![1]] } else { partitions(p, 2) };
    let found: BTreeSet<(Code, Vec<u32>)> = shapes
        .par_iter()
        .filter(|parts| 3 * parts.len() >= p + 2)
        .flat_map_iter(|parts| {
            let base = two_coloured_base(parts);
            let problem = MatchingProblem {
                base: &base,
                base_colours: 2,
                tracked: vec![(0, 1)],
                forbid_parallel: p >= 2,
                max_closed: Some(parts.len()),
                symmetry: Some(cycle_symmetry(parts)),
            };
            let mut local = BTreeSet::new();
            enumerate_matchings(&problem, |mate| {
                let g = ColouredGraph::from_adjacency_unchecked(3, add_colour(&base, 2, mate));
                if is_rigid(&g) {
                    let c = code(&g).expect("sphere gems are connected");
                    local.insert(c);
                }
            });
            local.into_iter().map(|c| {
                let g = crate::canon::decode(&c).expect("fresh code decodes");
                (c, g.adjacency().to_vec())
            })
        })
        .collect();
    found
        .into_iter()
        .map(|(_, adj)| SphereGem { graph: ColouredGraph::from_adjacency_unchecked(3, adj), rigid: true })
        .collect()
}

/// All rigid crystallizations whose 3-residue is the given seed, as added
/// colour-3 matchings. Results may repeat up to isomorphism.
pub fn extend_with_colour3(seed: &SphereGem) -> Vec<ColouredGraph> {
    let mut out = Vec::new();
    for_each_extension(&seed.graph, |g| out.push(g));
    out
}

fn for_each_extension<F: FnMut(ColouredGraph)>(seed: &ColouredGraph, mut f: F) {
    let base = seed.adjacency();
    let p = seed.order() / 2;
    let problem = MatchingProblem {
        base,
        base_colours: 3,
        tracked: vec![(1, 2), (0, 2), (0, 1)],
        forbid_parallel: p >= 2,
        max_closed: None,
        symmetry: None,
    };
    enumerate_matchings(&problem, |mate| {
        let g = ColouredGraph::from_adjacency_unchecked(4, add_colour(base, 3, mate));
        if is_rigid(&g)
            && g.is_crystallization().unwrap_or(false)
            && g.euler_characteristic().map(|x| x == 0).unwrap_or(false)
        {
            f(g);
        }
    });
}

/// Codes of all rigid crystallizations extending one seed, split by
/// bipartiteness.
fn seed_catalogue(seed: &SphereGem) -> (BTreeSet<Code>, BTreeSet<Code>) {
    let mut bip = BTreeSet::new();
    let mut non = BTreeSet::new();
    for_each_extension(&seed.graph, |g| {
        let c = code(&g).expect("crystallizations are connected");
        if g.bipartition().is_some() {
            bip.insert(c);
        } else {
            non.insert(c);
        }
    });
    (bip, non)
}

/// The catalogue of rigid crystallizations with `order` vertices. Output is
/// independent of the thread schedule.
pub fn build_catalogue(order: usize) -> Catalogue {
    let seeds = generate_sphere_gems(order);
    let (bip, non) = seeds
        .par_iter()
        .map(seed_catalogue)
        .reduce(
            || (BTreeSet::new(), BTreeSet::new()),
            |(mut b1, mut n1), (b2, n2)| {
                b1.extend(b2);
                n1.extend(n2);
                (b1, n1)
            },
        );
    Catalogue {
        vertex_count: order,
        bipartite: bip.into_iter().collect(),
        non_bipartite: non.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_six() {
        assert_eq!(partitions(6, 2), vec![vec![6], vec![4, 2], vec![3, 3], vec![2, 2, 2]]);
    }

    #[test]
    fn base_cycles_are_involutions() {
        let adj = two_coloured_base(&[3, 2]);
        for v in 0..10 {
            for c in 0..2 {
                let w = adj[v * 2 + c] as usize;
                assert_ne!(w, v);
                assert_eq!(adj[w * 2 + c] as usize, v);
            }
        }
        // the first cycle has six vertices
        let mut v = 0;
        for step in 0..6 {
            v = adj[v * 2 + step % 2] as usize;
        }
        assert_eq!(v, 0);
    }

    #[test]
    fn two_vertex_seed_and_extension() {
        let seeds = generate_sphere_gems(2);
        assert_eq!(seeds.len(), 1);
        let ext = extend_with_colour3(&seeds[0]);
        assert_eq!(ext.len(), 1);
        assert_eq!(code(&ext[0]).unwrap().as_str(), "4:2:21212121");
    }

    #[test]
    fn small_catalogues_have_no_non_bipartite_members() {
        for order in [2, 4, 6, 8] {
            assert!(build_catalogue(order).non_bipartite.is_empty());
        }
    }
}
