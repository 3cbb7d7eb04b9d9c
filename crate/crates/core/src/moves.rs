//! Dipoles, generalized dipoles and rho-pairs.

use crate::error::{Error, Result};
use crate::graph::{ColourSet, ColouredGraph, ResidueLabels};

/// Two vertices joined by the edges of `colours` and lying in different
/// residues of the complementary colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dipole {
    pub x: usize,
    pub y: usize,
    pub colours: ColourSet,
}

impl Dipole {
    pub fn kind(&self) -> usize {
        self.colours.len()
    }
}

/// Where to insert a new dipole: for each colour outside the dipole's
/// colour set, the edge `(a, b)` to subdivide. The new vertex `x` is joined
/// to `a` and the new vertex `y` to `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DipoleSite {
    pub edges: Vec<(usize, usize, usize)>,
}

impl DipoleSite {
    /// Subdivides every edge at `v` whose colour is not in `colours`.
    pub fn at_vertex(g: &ColouredGraph, v: usize, colours: ColourSet) -> Self {
        let edges = g
            .all_colours()
            .iter()
            .filter(|&c| !colours.contains(c))
            .map(|c| (c, v, g.neighbour(v, c)))
            .collect();
        DipoleSite { edges }
    }
}

/// Residue labels for every colour set, computed on demand.
struct LabelCache<'a> {
    g: &'a ColouredGraph,
    labels: Vec<Option<ResidueLabels>>,
}

impl<'a> LabelCache<'a> {
    fn new(g: &'a ColouredGraph) -> Self {
        LabelCache { g, labels: vec![None; 16] }
    }

    fn get(&mut self, set: ColourSet) -> &ResidueLabels {
        let g = self.g;
        self.labels[set.mask() as usize].get_or_insert_with(|| g.residue_labels(set))
    }
}

fn dipole_at(g: &ColouredGraph, x: usize, y: usize, cache: &mut LabelCache<'_>) -> Option<Dipole> {
    let colours = g.colours_between(x, y);
    if colours.is_empty() || colours.len() == g.colours() {
        return None;
    }
    let rest = colours.complement(g.colours());
    let labels = cache.get(rest);
    (labels.of(x) != labels.of(y)).then_some(Dipole { x, y, colours })
}

fn all_dipoles(g: &ColouredGraph) -> Vec<Dipole> {
    let mut cache = LabelCache::new(g);
    let mut out = Vec::new();
    for x in 0..g.order() {
        let mut ys: Vec<usize> = (0..g.colours()).map(|c| g.neighbour(x, c)).filter(|&y| y > x).collect();
        ys.sort_unstable();
        ys.dedup();
        for y in ys {
            if let Some(d) = dipole_at(g, x, y, &mut cache) {
                out.push(d);
            }
        }
    }
    out
}

/// All dipoles of type `k`, in lexicographic `(x, y)` order with `x < y`.
pub fn find_dipoles(g: &ColouredGraph, k: usize) -> Vec<Dipole> {
    all_dipoles(g).into_iter().filter(|d| d.kind() == k).collect()
}

/// Removes the dipole and welds the hanging edges. Remaining vertices keep
/// their relative order.
pub fn delete_dipole(g: &ColouredGraph, d: &Dipole) -> Result<ColouredGraph> {
    g.check_vertex(d.x)?;
    g.check_vertex(d.y)?;
    let mut cache = LabelCache::new(g);
    match dipole_at(g, d.x, d.y, &mut cache) {
        Some(found) if found.colours == d.colours => {}
        _ => {
            return Err(Error::NotADipole(format!(
                "vertices {} and {} with colours {}",
                d.x + 1,
                d.y + 1,
                d.colours
            )))
        }
    }
    let colours = g.colours();
    let order = g.order();
    let map = |v: usize| v - (v > d.x) as usize - (v > d.y) as usize;
    let mut adj = vec![0u32; (order - 2) * colours];
    for v in (0..order).filter(|&v| v != d.x && v != d.y) {
        for c in 0..colours {
            let mut w = g.neighbour(v, c);
            if w == d.x {
                w = g.neighbour(d.y, c);
            } else if w == d.y {
                w = g.neighbour(d.x, c);
            }
            adj[map(v) * colours + c] = map(w) as u32;
        }
    }
    Ok(ColouredGraph::from_adjacency_unchecked(colours, adj))
}

/// Inserts a dipole of the given colours. The two new vertices are appended
/// (`x` then `y`). Fails if the inserted pair would not be a proper dipole.
pub fn add_dipole(g: &ColouredGraph, site: &DipoleSite, colours: ColourSet) -> Result<ColouredGraph> {
    let k = g.colours();
    g.check_colours(colours)?;
    if colours.is_empty() || colours.len() == k {
        return Err(Error::NotADipole(format!("colour set {colours} cannot form a dipole")));
    }
    let missing = colours.complement(k);
    let mut given = ColourSet::EMPTY;
    for &(c, a, b) in &site.edges {
        g.check_vertex(a)?;
        g.check_vertex(b)?;
        if !missing.contains(c) || given.contains(c) || g.neighbour(a, c) != b {
            return Err(Error::NotADipole(format!(
                "site edge ({}, {}) of colour {c} does not fit",
                a + 1,
                b + 1
            )));
        }
        given = given.with(c);
    }
    if given != missing {
        return Err(Error::NotADipole("site must give one edge per missing colour".into()));
    }
    let order = g.order();
    let (x, y) = (order, order + 1);
    let mut adj = g.adjacency().to_vec();
    adj.resize((order + 2) * k, 0);
    for c in colours.iter() {
        adj[x * k + c] = y as u32;
        adj[y * k + c] = x as u32;
    }
    for &(c, a, b) in &site.edges {
        adj[a * k + c] = x as u32;
        adj[x * k + c] = a as u32;
        adj[b * k + c] = y as u32;
        adj[y * k + c] = b as u32;
    }
    let out = ColouredGraph::from_adjacency(k, adj)?;
    let mut cache = LabelCache::new(&out);
    if dipole_at(&out, x, y, &mut cache).is_none() {
        return Err(Error::NotADipole("the inserted vertices share a complementary residue".into()));
    }
    Ok(out)
}

/// Two bicoloured cycles on complementary colour pairs meeting only at
/// `x0`. `colours = [i, j, h, k]`: the first cycle is `{i,j}`-coloured and
/// leaves `x0` along colour `i` to `xs[0]`, returning along `j` from the last
/// of `xs`; likewise the second cycle is `{h,k}`-coloured through `ys`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenDipole {
    pub x0: usize,
    pub colours: [usize; 4],
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
}

impl GenDipole {
    pub fn m(&self) -> usize {
        self.xs.len()
    }

    pub fn n(&self) -> usize {
        self.ys.len()
    }
}

/// The bicoloured cycle through `x0` starting along colour `a`, minus `x0`.
fn cycle_path(g: &ColouredGraph, x0: usize, a: usize, b: usize) -> Vec<usize> {
    let mut path = Vec::new();
    let mut cur = g.neighbour(x0, a);
    let mut colour = b;
    while cur != x0 {
        path.push(cur);
        cur = g.neighbour(cur, colour);
        colour = if colour == a { b } else { a };
    }
    path
}

fn gen_dipole_at(g: &ColouredGraph, x0: usize, colours: [usize; 4]) -> Option<GenDipole> {
    let [i, j, h, k] = colours;
    let xs = cycle_path(g, x0, i, j);
    let ys = cycle_path(g, x0, h, k);
    if xs.iter().any(|x| ys.contains(x)) {
        return None;
    }
    Some(GenDipole { x0, colours, xs, ys })
}

/// All generalized dipoles of type `{0, i}` with `m <= m_max` and
/// `n <= n_max`, ordered by `m * n`, then by `x0`.
pub fn find_gen_dipoles(g: &ColouredGraph, i: usize, m_max: usize, n_max: usize) -> Result<Vec<GenDipole>> {
    g.require_four_colours()?;
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidColour { colour: i, colours: 4 });
    }
    let mut rest = (1..4).filter(|&c| c != i);
    let (h, k) = (rest.next().unwrap(), rest.next().unwrap());
    let mut out: Vec<GenDipole> = (0..g.order())
        .filter_map(|x0| gen_dipole_at(g, x0, [0, i, h, k]))
        .filter(|d| d.m() <= m_max && d.n() <= n_max)
        .collect();
    out.sort_by_key(|d| (d.m() * d.n(), d.x0));
    Ok(out)
}

/// Cancels a generalized dipole, replacing its `m + n + 1` vertices by an
/// `m x n` grid. The grid's rows copy the first cycle's path, its columns
/// the second's; every other edge at a removed vertex is reattached at the
/// grid boundary vertex that lacks that colour. Untouched vertices keep
/// their relative order and the grid follows, row by row.
pub fn cancel_gen_dipole(g: &ColouredGraph, d: &GenDipole) -> Result<ColouredGraph> {
    g.require_four_colours()?;
    g.check_vertex(d.x0)?;
    let [i, j, h, k] = d.colours;
    if ColourSet::from_colours(d.colours) != ColourSet::all(4) {
        return Err(Error::StaleDipole("colours must be a permutation of 0..4".into()));
    }
    match gen_dipole_at(g, d.x0, d.colours) {
        Some(current) if current == *d => {}
        _ => return Err(Error::StaleDipole(format!("no such configuration at vertex {}", d.x0 + 1))),
    }
    let order = g.order();
    let (m, n) = (d.m(), d.n());
    // position of every removed vertex: Row(r) for xs[r], Col(s) for ys[s]
    let mut pos_x = vec![usize::MAX; order];
    let mut pos_y = vec![usize::MAX; order];
    for (r, &x) in d.xs.iter().enumerate() {
        pos_x[x] = r;
    }
    for (s, &y) in d.ys.iter().enumerate() {
        pos_y[y] = s;
    }
    let removed = |v: usize| v == d.x0 || pos_x[v] != usize::MAX || pos_y[v] != usize::MAX;
    let mut new_index = vec![usize::MAX; order];
    let mut kept = 0;
    for v in 0..order {
        if !removed(v) {
            new_index[v] = kept;
            kept += 1;
        }
    }
    let grid = |r: usize, s: usize| kept + r * n + s;
    // Grid vertex standing in for removed vertex `w` on colour `c`.
    let port = |w: usize, c: usize| -> usize {
        if pos_y[w] != usize::MAX {
            let r = if c == i { 0 } else { m - 1 };
            grid(r, pos_y[w])
        } else {
            let s = if c == h { 0 } else { n - 1 };
            grid(pos_x[w], s)
        }
    };
    let target = |w: usize, c: usize| if removed(w) { port(w, c) } else { new_index[w] };

    let total = kept + m * n;
    let mut adj = vec![0u32; total * 4];
    for v in (0..order).filter(|&v| !removed(v)) {
        for c in 0..4 {
            adj[new_index[v] * 4 + c] = target(g.neighbour(v, c), c) as u32;
        }
    }
    for (r, &x) in d.xs.iter().enumerate() {
        for (s, &y) in d.ys.iter().enumerate() {
            let v = grid(r, s);
            for c in [i, j] {
                let w = g.neighbour(x, c);
                adj[v * 4 + c] = if w == d.x0 {
                    target(g.neighbour(y, c), c)
                } else {
                    grid(pos_x[w], s)
                } as u32;
            }
            for c in [h, k] {
                let w = g.neighbour(y, c);
                adj[v * 4 + c] = if w == d.x0 {
                    target(g.neighbour(x, c), c)
                } else {
                    grid(r, pos_y[w])
                } as u32;
            }
        }
    }
    ColouredGraph::from_adjacency(4, adj)
        .map_err(|e| Error::Internal(format!("generalized dipole cancellation: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhoKind {
    Rho2,
    Rho3,
}

/// Two edges of one colour sharing two (`Rho2`) or all three (`Rho3`)
/// bicoloured cycles through that colour. Edges are `(u, v)` with `u < v`
/// and `e < f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RhoPair {
    pub colour: usize,
    pub e: (usize, usize),
    pub f: (usize, usize),
    pub kind: RhoKind,
}

/// All rho-pairs, ordered by colour and then edges. In a 3-coloured graph
/// only the two-cycle kind exists.
pub fn find_rho_pairs(g: &ColouredGraph) -> Vec<RhoPair> {
    let colours = g.colours();
    let mut out = Vec::new();
    for i in 0..colours {
        let edges = g.edges(i);
        let others: Vec<usize> = (0..colours).filter(|&c| c != i).collect();
        let labels: Vec<ResidueLabels> =
            others.iter().map(|&j| g.residue_labels(ColourSet::from_colours([i, j]))).collect();
        for a in 0..edges.len() {
            for b in a + 1..edges.len() {
                let (e, f) = (edges[a], edges[b]);
                let shared = labels.iter().filter(|l| l.of(e.0) == l.of(f.0)).count();
                if shared >= 2 {
                    let kind = if shared == 3 { RhoKind::Rho3 } else { RhoKind::Rho2 };
                    out.push(RhoPair { colour: i, e, f, kind });
                }
            }
        }
    }
    out
}

/// Whether the graph has no rho-pairs.
pub fn is_rigid(g: &ColouredGraph) -> bool {
    let colours = g.colours();
    let mut keys: Vec<(u32, u32)> = Vec::with_capacity(g.order() / 2);
    for i in 0..colours {
        let edges = g.edges(i);
        let others: Vec<usize> = (0..colours).filter(|&c| c != i).collect();
        let labels: Vec<ResidueLabels> =
            others.iter().map(|&j| g.residue_labels(ColourSet::from_colours([i, j]))).collect();
        for a in 0..labels.len() {
            for b in a + 1..labels.len() {
                keys.clear();
                keys.extend(edges.iter().map(|e| (labels[a].labels[e.0], labels[b].labels[e.0])));
                keys.sort_unstable();
                if keys.windows(2).any(|w| w[0] == w[1]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Switches a rho-pair. Both edges lie on a common `{i,j}`-cycle; walking it
/// from `e` as `a -> b ... c -> d`, the edges are replaced by `b-c` and
/// `a-d`, which splits every shared cycle in two.
pub fn switch_rho_pair(g: &ColouredGraph, r: &RhoPair) -> Result<ColouredGraph> {
    let i = r.colour;
    if i >= g.colours() {
        return Err(Error::InvalidColour { colour: i, colours: g.colours() });
    }
    for &(u, v) in [r.e, r.f].iter() {
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        if g.neighbour(u, i) != v {
            return Err(Error::NotARhoPair(format!("({}, {}) is not an edge of colour {i}", u + 1, v + 1)));
        }
    }
    if r.e == r.f || r.e == (r.f.1, r.f.0) {
        return Err(Error::NotARhoPair("the two edges coincide".into()));
    }
    let shared: Vec<usize> = (0..g.colours())
        .filter(|&j| j != i)
        .filter(|&j| {
            let l = g.residue_labels(ColourSet::from_colours([i, j]));
            l.of(r.e.0) == l.of(r.f.0)
        })
        .collect();
    if shared.len() < 2 {
        return Err(Error::NotARhoPair("the edges share fewer than two bicoloured cycles".into()));
    }
    let j = shared[0];
    let (a, b) = r.e;
    let mut cur = g.neighbour(b, j);
    let mut colour = i;
    let (c, dd) = loop {
        if colour == i && (cur == r.f.0 || cur == r.f.1) {
            break (cur, g.neighbour(cur, i));
        }
        cur = g.neighbour(cur, colour);
        colour = if colour == i { j } else { i };
    };
    let k = g.colours();
    let mut adj = g.adjacency().to_vec();
    adj[b * k + i] = c as u32;
    adj[c * k + i] = b as u32;
    adj[a * k + i] = dd as u32;
    adj[dd * k + i] = a as u32;
    let out = ColouredGraph::from_adjacency_unchecked(k, adj);
    if !out.is_connected() {
        return Err(Error::SwitchDisconnects);
    }
    Ok(out)
}

/// Which `S^2`-bundle over the circle a rho3 switch splits off: the
/// orientable one when the graph's bipartiteness is unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Handle {
    Orientable,
    NonOrientable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rigidified {
    pub graph: ColouredGraph,
    pub rho3_count: usize,
    pub handles: Vec<Handle>,
}

/// Deletes dipoles and switches rho-pairs until none are left. Dipoles go
/// first, then rho2 pairs, then rho3 pairs, always taking the first in
/// order and rescanning after each change.
pub fn rigidify(g: &ColouredGraph) -> Result<Rigidified> {
    g.require_connected()?;
    let limit = 10 * g.order().max(1);
    let mut cur = g.clone();
    let mut handles = Vec::new();
    for _ in 0..limit {
        if let Some(d) = all_dipoles(&cur).first() {
            cur = delete_dipole(&cur, d)?;
            continue;
        }
        if is_rigid(&cur) {
            return Ok(Rigidified { graph: cur, rho3_count: handles.len(), handles });
        }
        let pairs = find_rho_pairs(&cur);
        let pick = pairs
            .iter()
            .find(|r| r.kind == RhoKind::Rho2)
            .or_else(|| pairs.first())
            .copied()
            .ok_or_else(|| Error::Internal("rigidity and rho-pair scan disagree".into()))?;
        let next = switch_rho_pair(&cur, &pick)?;
        if pick.kind == RhoKind::Rho3 {
            let same = cur.bipartition().is_some() == next.bipartition().is_some();
            handles.push(if same { Handle::Orientable } else { Handle::NonOrientable });
        }
        cur = next;
    }
    Err(Error::RigidifyLimit(limit))
}
