//! Classification of rigid crystallizations up to handle summands.
//!
//! Every graph is pushed through a fixed family of reduction sequences, each
//! a composition of maps `theta_i` that cancel `{0,i}` generalized dipoles
//! and rigidify after every cancellation. Two graphs whose reductions share
//! a code represent the same manifold up to `S^2`-bundle summands; the
//! number of rho3 switches met on the way tells how many.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::canon::{canonical_order, code, decode, Code, OrderedGraph};
use crate::error::{Error, Result};
use crate::graph::{find_sum_split, ColouredGraph};
use crate::moves::{cancel_gen_dipole, find_gen_dipoles, rigidify, Handle};

/// Largest cycle length `m` or `n` (vertices besides the base vertex) of a
/// generalized dipole cancelled by `theta`.
pub const MAX_DIPOLE_SIDE: usize = 8;

/// How far a reduction may grow past its input before it is abandoned.
pub const GROWTH_CAP: usize = 16;

/// Cancellation steps after which a single `theta` is abandoned.
const STEP_CAP: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub reduced: ColouredGraph,
    pub rho3_count: usize,
}

/// Cancels `{0,i}` generalized dipoles with both sides at most
/// [`MAX_DIPOLE_SIDE`], smallest `m * n` first and then lowest base vertex,
/// rigidifying after each one. The graph is brought back to canonical order
/// between steps. `theta(g, 0)` is the identity.
///
/// Returns `None` when the reduction outgrows `order + GROWTH_CAP`. A
/// reduction that revisits a graph stops there.
pub fn theta(g: &OrderedGraph, i: usize) -> Result<Option<ReductionResult>> {
    if i > 3 {
        return Err(Error::InvalidColour { colour: i, colours: 4 });
    }
    g.graph.require_four_colours()?;
    if i == 0 {
        return Ok(Some(ReductionResult { reduced: g.graph.clone(), rho3_count: 0 }));
    }
    let cap = g.graph.order() + GROWTH_CAP;
    let mut cur = g.graph.clone();
    let mut rho3 = 0;
    let mut seen = HashSet::from([g.code.clone()]);
    for _ in 0..STEP_CAP {
        let dipoles = find_gen_dipoles(&cur, i, MAX_DIPOLE_SIDE, MAX_DIPOLE_SIDE)?;
        let Some(d) = dipoles.first() else {
            return Ok(Some(ReductionResult { reduced: cur, rho3_count: rho3 }));
        };
        let r = rigidify(&cancel_gen_dipole(&cur, d)?)?;
        if r.graph.order() > cap {
            return Ok(None);
        }
        rho3 += r.rho3_count;
        let next = canonical_order(&r.graph)?;
        cur = next.graph;
        if !seen.insert(next.code) {
            return Ok(Some(ReductionResult { reduced: cur, rho3_count: rho3 }));
        }
    }
    Ok(None)
}

/// The permutations of `{0,1,2,3}` fixing 0, in lexicographic order.
pub const PERMUTATIONS: [[usize; 4]; 6] =
    [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1]];

/// One reduction sequence. With `chained == false` it applies
/// `theta_{d(1)}, ..., theta_{d(i)}` for the `k`-th permutation `d`
/// (1-based); with `chained == true` the full runs `d(1), d(2), d(3)` of the
/// permutations `1..k` come first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSequence {
    pub k: usize,
    pub i: usize,
    pub chained: bool,
}

impl MoveSequence {
    pub fn new(k: usize, i: usize, chained: bool) -> Result<Self> {
        let min_k = if chained { 2 } else { 1 };
        if !(min_k..=6).contains(&k) || i > 3 {
            return Err(Error::InvalidSequence { k, i });
        }
        Ok(MoveSequence { k, i, chained })
    }

    /// Colours of the `theta` maps in application order (identities omitted).
    pub fn colours(&self) -> Vec<usize> {
        let mut out = Vec::new();
        if self.chained {
            for perm in &PERMUTATIONS[..self.k - 1] {
                out.extend_from_slice(&perm[1..]);
            }
        }
        out.extend_from_slice(&PERMUTATIONS[self.k - 1][1..=self.i]);
        out
    }
}

/// All 44 sequences: the 24 plain ones, then the 20 chained ones, each
/// group ordered by `k` then `i`.
pub fn sequences() -> Vec<MoveSequence> {
    let mut out = Vec::with_capacity(44);
    for chained in [false, true] {
        for k in if chained { 2 } else { 1 }..=6 {
            for i in 0..4 {
                out.push(MoveSequence { k, i, chained });
            }
        }
    }
    out
}

/// Applies a sequence, re-canonicalizing before every `theta`. `None` if
/// some step was abandoned.
pub fn apply_sequence(g: &ColouredGraph, eps: &MoveSequence) -> Result<Option<ReductionResult>> {
    let eps = MoveSequence::new(eps.k, eps.i, eps.chained)?;
    let mut cur = ReductionResult { reduced: g.clone(), rho3_count: 0 };
    for c in eps.colours() {
        let ordered = canonical_order(&cur.reduced)?;
        match theta(&ordered, c)? {
            Some(r) => {
                cur = ReductionResult { reduced: r.reduced, rho3_count: cur.rho3_count + r.rho3_count };
            }
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// `theta` keyed on codes, so that shared prefixes of sequences are reduced
/// once.
#[derive(Default)]
struct Reducer {
    memo: HashMap<(Code, usize), Option<(Code, usize)>>,
}

impl Reducer {
    fn theta(&mut self, c: &Code, i: usize) -> Result<Option<(Code, usize)>> {
        if i == 0 {
            return Ok(Some((c.clone(), 0)));
        }
        if let Some(hit) = self.memo.get(&(c.clone(), i)) {
            return Ok(hit.clone());
        }
        let ordered = canonical_order(&decode(c)?)?;
        let out = match theta(&ordered, i)? {
            Some(r) => Some((code(&r.reduced)?, r.rho3_count)),
            None => None,
        };
        self.memo.insert((c.clone(), i), out.clone());
        Ok(out)
    }

    fn apply(&mut self, c: &Code, eps: &MoveSequence) -> Result<Option<(Code, usize)>> {
        let mut cur = (c.clone(), 0);
        for colour in eps.colours() {
            match self.theta(&cur.0, colour)? {
                Some((next, h)) => cur = (next, cur.1 + h),
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }
}

/// Reduced code and rho3 count of `c` under every sequence, in
/// [`sequences`] order.
pub fn reductions(c: &Code) -> Result<Vec<Option<(Code, usize)>>> {
    let mut reducer = Reducer::default();
    sequences().iter().map(|eps| reducer.apply(c, eps)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub id: usize,
    /// Members in input order with their handle offsets `h`.
    pub members: Vec<(Code, usize)>,
    pub name: Option<String>,
}

impl ClassRecord {
    pub fn representative(&self) -> &Code {
        &self.members[0].0
    }
}

/// Splits the input into classes of graphs related by reduction sequences.
///
/// Graphs are processed in input order. Each reduced code remembers the
/// first graph that produced it; when a later graph hits the same code in a
/// different class, the two classes merge and the `h` values of one of them
/// are shifted so that both reductions sit at the same level. Members at
/// equal `h` represent the same manifold, and a difference `d` in `h` is `d`
/// handle summands.
///
/// `known` names graphs by code; a name spreads to its whole class.
pub fn classify_list(list: &[Code], known: &BTreeMap<Code, String>) -> Result<Vec<ClassRecord>> {
    let all: Vec<Vec<Option<(Code, usize)>>> = list.par_iter().map(reductions).collect::<Result<_>>()?;

    let n = list.len();
    let mut h = vec![0usize; n];
    let mut class_of: Vec<usize> = (0..n).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    // reduced code -> (first graph reaching it, its rho3 count on the way)
    let mut store: HashMap<&Code, (usize, usize)> = HashMap::new();

    for (g, reds) in all.iter().enumerate() {
        for (reduced, h_eps) in reds.iter().flatten() {
            let Some(&(other, h_other)) = store.get(reduced) else {
                store.insert(reduced, (g, *h_eps));
                continue;
            };
            let (cg, co) = (class_of[g], class_of[other]);
            if cg == co {
                continue;
            }
            let level_g = h[g] as i64 - *h_eps as i64;
            let level_other = h[other] as i64 - h_other as i64;
            let (shifted, by) = if level_other >= level_g {
                (cg, level_other - level_g)
            } else {
                (co, level_g - level_other)
            };
            for &x in &members[shifted] {
                h[x] = (h[x] as i64 + by) as usize;
            }
            let (keep, gone) = (cg.min(co), cg.max(co));
            let moved = std::mem::take(&mut members[gone]);
            for &x in &moved {
                class_of[x] = keep;
            }
            members[keep].extend(moved);
            members[keep].sort_unstable();
        }
    }

    let mut out = Vec::new();
    for group in members.into_iter().filter(|m| !m.is_empty()) {
        let id = out.len();
        let mut name: Option<&String> = None;
        for &x in &group {
            if let Some(found) = known.get(&list[x]) {
                match name {
                    Some(prev) if prev != found => {
                        return Err(Error::NameConflict { class: id, first: prev.clone(), second: found.clone() });
                    }
                    _ => name = Some(found),
                }
            }
        }
        out.push(ClassRecord {
            id,
            members: group.iter().map(|&x| (list[x].clone(), h[x])).collect(),
            name: name.cloned(),
        });
    }
    Ok(out)
}

/// Members of a class grouped by `h`, ascending.
pub fn split_by_h(c: &ClassRecord) -> Vec<(usize, Vec<Code>)> {
    let mut groups: BTreeMap<usize, Vec<Code>> = BTreeMap::new();
    for (code, h) in &c.members {
        groups.entry(*h).or_default().push(code.clone());
    }
    groups.into_iter().collect()
}

/// Rigid connected summands of a crystallization, plus the handles split
/// off by rho3 switches while rigidifying the pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Summands sorted by code. `S^3` pieces are dropped unless nothing
    /// else is left.
    pub pieces: Vec<ColouredGraph>,
    pub handles: Vec<Handle>,
}

/// Splits `g` along sum decompositions, rigidifying and recursing into the
/// pieces until none splits further.
pub fn factorize(g: &ColouredGraph) -> Result<Factorization> {
    let mut pieces = Vec::new();
    let mut handles = Vec::new();
    let mut stack = vec![g.clone()];
    while let Some(cur) = stack.pop() {
        match find_sum_split(&cur)? {
            Some(split) => {
                for piece in [split.left, split.right] {
                    let r = rigidify(&piece)?;
                    handles.extend(r.handles);
                    stack.push(r.graph);
                }
            }
            None => pieces.push(cur),
        }
    }
    let mut keyed: Vec<(Code, ColouredGraph)> =
        pieces.into_iter().map(|p| Ok((code(&p)?, p))).collect::<Result<_>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let sphere = code(&ColouredGraph::dipole_sphere(4))?;
    if keyed.iter().any(|(c, _)| *c != sphere) {
        keyed.retain(|(c, _)| *c != sphere);
    } else {
        keyed.truncate(1);
    }
    Ok(Factorization { pieces: keyed.into_iter().map(|(_, p)| p).collect(), handles })
}
