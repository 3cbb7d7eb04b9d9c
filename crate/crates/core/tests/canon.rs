use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crystal::{canonical_order, code, decode, is_colour_isomorphic, Code, ColouredGraph};

/// A random connected `colours`-coloured graph on `n` vertices.
fn random_graph(rng: &mut StdRng, colours: usize, n: usize) -> ColouredGraph {
    loop {
        let tables: Vec<Vec<usize>> = (0..colours)
            .map(|_| {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(rng);
                let mut m = vec![0; n];
                for pair in order.chunks(2) {
                    m[pair[0]] = pair[1];
                    m[pair[1]] = pair[0];
                }
                m
            })
            .collect();
        let g = ColouredGraph::from_involutions(&tables).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

fn shuffled(rng: &mut StdRng, k: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..k).collect();
    p.shuffle(rng);
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn code_ignores_labels(seed in any::<u64>(), half in 1usize..15, colours in 3usize..=4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, colours, 2 * half);
        let relabelled = g.relabel(&shuffled(&mut rng, g.order())).unwrap();
        let recoloured = relabelled.permute_colours(&shuffled(&mut rng, colours)).unwrap();
        prop_assert_eq!(code(&g).unwrap(), code(&recoloured).unwrap());
        prop_assert!(is_colour_isomorphic(&g, &recoloured).unwrap());
    }

    #[test]
    fn canonical_order_is_an_isomorphism(seed in any::<u64>(), half in 1usize..15) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 4, 2 * half);
        let o = canonical_order(&g).unwrap();
        for k in 0..g.order() {
            for c in 0..4 {
                let image = o.graph.neighbour(k, o.colour_map[c]);
                prop_assert_eq!(g.neighbour(o.ordering[k], c), o.ordering[image]);
            }
        }
        prop_assert_eq!(&o.code, &code(&g).unwrap());
        prop_assert_eq!(decode(&o.code).unwrap(), o.graph);
    }

    #[test]
    fn codes_parse_back(seed in any::<u64>(), half in 1usize..40) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 4, 2 * half);
        let c = code(&g).unwrap();
        prop_assert_eq!(Code::parse(c.as_str()).unwrap(), c.clone());
        prop_assert_eq!(c.order(), g.order());
        prop_assert_eq!(code(&decode(&c).unwrap()).unwrap(), c);
    }
}

/// Codes separate non-isomorphic graphs: on all 3-coloured graphs with six
/// vertices, the number of distinct codes equals the number of orbits of
/// the relabelling and recolouring action, counted independently.
#[test]
fn codes_separate_six_vertex_graphs() {
    use std::collections::BTreeSet;
    let n = 6;
    let mut all = Vec::new();
    let matchings = {
        let mut out = Vec::new();
        fn rec(m: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let Some(u) = m.iter().position(|&x| x == usize::MAX) else { out.push(m.clone()); return };
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
        rec(&mut vec![usize::MAX; n], &mut out);
        out
    };
    for a in &matchings {
        for b in &matchings {
            for c in &matchings {
                let g = ColouredGraph::from_involutions(&[a.clone(), b.clone(), c.clone()]).unwrap();
                if g.is_connected() {
                    all.push(g);
                }
            }
        }
    }
    // orbit representatives: least adjacency table over all relabellings
    let perms: Vec<Vec<usize>> = {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for x in 0..used.len() {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    };
    let three: Vec<Vec<usize>> =
        vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]];
    let key = |g: &ColouredGraph| -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for p in &perms {
            let r = g.relabel(p).unwrap();
            for q in &three {
                let h = r.permute_colours(q).unwrap();
                let t: Vec<usize> = (0..3).flat_map(|c| (0..n).map(move |v| (c, v))).map(|(c, v)| h.neighbour(v, c)).collect();
                if best.as_ref().map_or(true, |b| t < *b) {
                    best = Some(t);
                }
            }
        }
        best.unwrap()
    };
    let orbits: BTreeSet<Vec<usize>> = all.iter().map(key).collect();
    let codes: BTreeSet<Code> = all.iter().map(|g| code(g).unwrap()).collect();
    assert_eq!(codes.len(), orbits.len());
}
