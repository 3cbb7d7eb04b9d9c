//! Properly edge-coloured regular multigraphs.
//!
//! A graph with `n + 1` colours is stored as `n + 1` fixed-point-free
//! involutions on the vertex set, one per colour. Vertices are dense
//! indices `0..order`; text formats shift them to 1-based numbering.

use std::fmt;

use crate::error::{Error, Result};

/// A set of colours, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColourSet(u8);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);

    pub fn from_mask(mask: u8) -> Self {
        ColourSet(mask)
    }

    pub fn all(colours: usize) -> Self {
        ColourSet(((1u16 << colours) - 1) as u8)
    }

    pub fn single(c: usize) -> Self {
        ColourSet(1 << c)
    }

    pub fn from_colours<I: IntoIterator<Item = usize>>(colours: I) -> Self {
        ColourSet(colours.into_iter().fold(0u8, |m, c| m | (1 << c)))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn contains(self, c: usize) -> bool {
        c < 8 && self.0 & (1 << c) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, c: usize) -> Self {
        ColourSet(self.0 | (1 << c))
    }

    pub fn without(self, c: usize) -> Self {
        ColourSet(self.0 & !(1 << c))
    }

    pub fn union(self, other: ColourSet) -> Self {
        ColourSet(self.0 | other.0)
    }

    /// Complement within `0..colours`.
    pub fn complement(self, colours: usize) -> Self {
        ColourSet(!self.0 & ColourSet::all(colours).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..8).filter(move |&c| self.0 & (1 << c) != 0)
    }
}

impl fmt::Display for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// An `(n+1)`-coloured graph, `n` in `{2, 3}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColouredGraph {
    colours: usize,
    /// `adj[v * colours + c]` is the `c`-neighbour of `v`.
    adj: Vec<u32>,
}

impl fmt::Debug for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColouredGraph({} colours, order {}: ", self.colours, self.order())?;
        for c in 0..self.colours {
            if c > 0 {
                write!(f, "; ")?;
            }
            for v in 0..self.order() {
                if v > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.neighbour(v, c) + 1)?;
            }
        }
        write!(f, ")")
    }
}

impl ColouredGraph {
    /// Builds a graph from one involution per colour (`tables[c][v]` is the
    /// `c`-neighbour of `v`, 0-based).
    pub fn from_involutions(tables: &[Vec<usize>]) -> Result<Self> {
        let colours = tables.len();
        if !(3..=4).contains(&colours) {
            return Err(Error::MalformedGraph(format!(
                "expected 3 or 4 colours, got {colours}"
            )));
        }
        let order = tables[0].len();
        let mut adj = vec![0u32; order * colours];
        for (c, table) in tables.iter().enumerate() {
            if table.len() != order {
                return Err(Error::MalformedGraph(format!(
                    "colour {c} has {} entries, expected {order}",
                    table.len()
                )));
            }
            for (v, &w) in table.iter().enumerate() {
                adj[v * colours + c] = w as u32;
            }
        }
        Self::from_adjacency(colours, adj)
    }

    /// Builds a graph from a vertex-major adjacency table and validates it.
    pub fn from_adjacency(colours: usize, adj: Vec<u32>) -> Result<Self> {
        let g = ColouredGraph { colours, adj };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_adjacency_unchecked(colours: usize, adj: Vec<u32>) -> Self {
        let g = ColouredGraph { colours, adj };
        debug_assert!(g.validate().is_ok(), "{:?}", g.validate());
        g
    }

    fn validate(&self) -> Result<()> {
        if !(3..=4).contains(&self.colours) {
            return Err(Error::MalformedGraph(format!(
                "expected 3 or 4 colours, got {}",
                self.colours
            )));
        }
        if self.adj.len() % self.colours != 0 {
            return Err(Error::MalformedGraph("ragged adjacency table".into()));
        }
        let order = self.order();
        if order == 0 || order % 2 != 0 {
            return Err(Error::MalformedGraph(format!("order {order} is not even and positive")));
        }
        for v in 0..order {
            for c in 0..self.colours {
                let w = self.adj[v * self.colours + c] as usize;
                if w >= order {
                    return Err(Error::MalformedGraph(format!(
                        "vertex {} has {c}-neighbour {} outside 1..{order}",
                        v + 1,
                        w + 1
                    )));
                }
                if w == v {
                    return Err(Error::MalformedGraph(format!(
                        "colour {c} fixes vertex {}",
                        v + 1
                    )));
                }
                if self.adj[w * self.colours + c] as usize != v {
                    return Err(Error::MalformedGraph(format!(
                        "colour {c} is not an involution at vertex {}",
                        v + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// The graph with two vertices joined by one edge of every colour.
    pub fn dipole_sphere(colours: usize) -> Self {
        assert!((3..=4).contains(&colours));
        let mut adj = vec![1u32; colours];
        adj.extend(std::iter::repeat(0u32).take(colours));
        ColouredGraph { colours, adj }
    }

    pub fn order(&self) -> usize {
        self.adj.len() / self.colours
    }

    /// Number of colours, `n + 1`.
    pub fn colours(&self) -> usize {
        self.colours
    }

    /// Dimension `n` of the represented complex.
    pub fn dimension(&self) -> usize {
        self.colours - 1
    }

    pub fn all_colours(&self) -> ColourSet {
        ColourSet::all(self.colours)
    }

    #[inline]
    pub fn neighbour(&self, v: usize, c: usize) -> usize {
        self.adj[v * self.colours + c] as usize
    }

    pub(crate) fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    /// Edges of colour `c` as pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self, c: usize) -> Vec<(usize, usize)> {
        (0..self.order())
            .filter_map(|u| {
                let v = self.neighbour(u, c);
                (u < v).then_some((u, v))
            })
            .collect()
    }

    /// Colours of the edges joining `u` and `v`.
    pub fn colours_between(&self, u: usize, v: usize) -> ColourSet {
        ColourSet::from_colours((0..self.colours).filter(|&c| self.neighbour(u, c) == v))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.order() });
        }
        Ok(())
    }

    pub(crate) fn check_colours(&self, set: ColourSet) -> Result<()> {
        if let Some(c) = set.iter().find(|&c| c >= self.colours) {
            return Err(Error::InvalidColour { colour: c, colours: self.colours });
        }
        Ok(())
    }

    pub(crate) fn require_four_colours(&self) -> Result<()> {
        if self.colours != 4 {
            return Err(Error::WrongArity { expected: 4, found: self.colours });
        }
        Ok(())
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// Component labels of the subgraph spanned by the colours in `set`.
    pub fn residue_labels(&self, set: ColourSet) -> ResidueLabels {
        let order = self.order();
        let mut labels = vec![u32::MAX; order];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for start in 0..order {
            if labels[start] != u32::MAX {
                continue;
            }
            labels[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for c in set.iter() {
                    let w = self.neighbour(v, c);
                    if labels[w] == u32::MAX {
                        labels[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        ResidueLabels { labels, count: count as usize }
    }

    /// All residues for the colour set `set`, each with sorted members,
    /// ordered by least member.
    pub fn residues(&self, set: ColourSet) -> Result<Vec<Residue>> {
        self.check_colours(set)?;
        let labels = self.residue_labels(set);
        let mut members = vec![Vec::new(); labels.count];
        for v in 0..self.order() {
            members[labels.labels[v] as usize].push(v);
        }
        Ok(members.into_iter().map(|members| Residue { colours: set, members }).collect())
    }

    pub fn residue_count(&self, set: ColourSet) -> usize {
        self.residue_labels(set).count
    }

    pub fn is_connected(&self) -> bool {
        self.residue_count(self.all_colours()) == 1
    }

    /// Whether the vertices admit a 2-colouring with every edge crossing.
    pub fn is_bipartite(&self) -> Result<bool> {
        self.require_connected()?;
        Ok(self.bipartition().is_some())
    }

    /// Side (0 or 1) of every vertex, when the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let order = self.order();
        let mut side = vec![u8::MAX; order];
        let mut stack = Vec::new();
        for start in 0..order {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for c in 0..self.colours {
                    let w = self.neighbour(v, c);
                    if side[w] == u8::MAX {
                        side[w] = side[v] ^ 1;
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// Euler characteristic of the represented 3-dimensional complex, counting
    /// simplices through their dual residues.
    pub fn euler_characteristic(&self) -> Result<i64> {
        self.require_four_colours()?;
        self.require_connected()?;
        let mut chi = 0i64;
        for mask in 0u8..16 {
            let set = ColourSet(mask);
            let dim = 3 - set.len() as i64;
            let cells = match set.len() {
                0 => self.order() as i64,
                1 => (self.order() / 2) as i64,
                4 => continue,
                _ => self.residue_count(set) as i64,
            };
            chi += if dim % 2 == 0 { cells } else { -cells };
        }
        Ok(chi)
    }

    /// Euler characteristic of every `î`-residue, viewed as a 3-coloured
    /// graph representing a closed surface.
    pub fn surface_check(&self) -> Result<Vec<SurfaceResidue>> {
        self.require_four_colours()?;
        let mut out = Vec::new();
        for missing in 0..4 {
            let set = ColourSet::all(4).without(missing);
            let labels = self.residue_labels(set);
            let mut sizes = vec![0i64; labels.count];
            for &l in &labels.labels {
                sizes[l as usize] += 1;
            }
            let mut cycles = vec![0i64; labels.count];
            for drop in set.iter() {
                let pair = set.without(drop);
                let pair_labels = self.residue_labels(pair);
                let mut seen = vec![false; pair_labels.count];
                for v in 0..self.order() {
                    let p = pair_labels.labels[v] as usize;
                    if !seen[p] {
                        seen[p] = true;
                        cycles[labels.labels[v] as usize] += 1;
                    }
                }
            }
            let mut members = vec![Vec::new(); labels.count];
            for v in 0..self.order() {
                members[labels.labels[v] as usize].push(v);
            }
            for (r, members) in members.into_iter().enumerate() {
                out.push(SurfaceResidue {
                    missing_colour: missing,
                    members,
                    euler: cycles[r] - sizes[r] / 2,
                });
            }
        }
        Ok(out)
    }

    /// Whether every 3-residue represents the 2-sphere, i.e. the graph
    /// represents a closed 3-manifold.
    pub fn represents_manifold(&self) -> Result<bool> {
        Ok(self.surface_check()?.iter().all(|r| r.euler == 2))
    }

    /// Each `î`-residue is connected.
    pub fn is_contracted(&self) -> Result<bool> {
        self.require_four_colours()?;
        self.require_connected()?;
        Ok((0..4).all(|i| self.residue_count(ColourSet::all(4).without(i)) == 1))
    }

    pub fn is_crystallization(&self) -> Result<bool> {
        Ok(self.is_contracted()? && self.represents_manifold()?)
    }

    /// Relabels vertices: vertex `v` of `self` becomes `new_label[v]`.
    pub fn relabel(&self, new_label: &[usize]) -> Result<Self> {
        let order = self.order();
        if new_label.len() != order {
            return Err(Error::MalformedGraph("relabelling has the wrong length".into()));
        }
        let mut seen = vec![false; order];
        for &l in new_label {
            if l >= order || std::mem::replace(&mut seen[l], true) {
                return Err(Error::MalformedGraph("relabelling is not a permutation".into()));
            }
        }
        let mut adj = vec![0u32; self.adj.len()];
        for v in 0..order {
            for c in 0..self.colours {
                adj[new_label[v] * self.colours + c] = new_label[self.neighbour(v, c)] as u32;
            }
        }
        Ok(ColouredGraph { colours: self.colours, adj })
    }

    /// Recolours edges: an edge of colour `c` gets colour `map[c]`.
    pub fn permute_colours(&self, map: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.colours];
        if map.len() != self.colours
            || map.iter().any(|&c| c >= self.colours || std::mem::replace(&mut seen[c], true))
        {
            return Err(Error::MalformedGraph("colour map is not a permutation".into()));
        }
        let mut adj = vec![0u32; self.adj.len()];
        for v in 0..self.order() {
            for c in 0..self.colours {
                adj[v * self.colours + map[c]] = self.neighbour(v, c) as u32;
            }
        }
        Ok(ColouredGraph { colours: self.colours, adj })
    }

    /// The subgraph spanned by the colours in `set`, as a graph in its own
    /// right with colours renumbered in ascending order. Requires
    /// `set.len() >= 3` and keeps all vertices.
    pub fn restrict_colours(&self, set: ColourSet) -> Result<Self> {
        self.check_colours(set)?;
        let kept: Vec<usize> = set.iter().collect();
        let mut adj = Vec::with_capacity(self.order() * kept.len());
        for v in 0..self.order() {
            for &c in &kept {
                adj.push(self.neighbour(v, c) as u32);
            }
        }
        ColouredGraph::from_adjacency(kept.len(), adj)
    }

    /// Induced graph on a set of vertices closed under the given colours,
    /// keeping only those colours.
    pub fn induced(&self, members: &[usize], set: ColourSet) -> Result<Self> {
        let mut index = vec![u32::MAX; self.order()];
        for (k, &v) in members.iter().enumerate() {
            index[v] = k as u32;
        }
        let kept: Vec<usize> = set.iter().collect();
        let mut adj = Vec::with_capacity(members.len() * kept.len());
        for &v in members {
            for &c in &kept {
                let w = index[self.neighbour(v, c)];
                if w == u32::MAX {
                    return Err(Error::MalformedGraph(
                        "vertex set is not closed under the colours".into(),
                    ));
                }
                adj.push(w);
            }
        }
        ColouredGraph::from_adjacency(kept.len(), adj)
    }
}

/// Component labels for one colour set.
#[derive(Debug, Clone)]
pub struct ResidueLabels {
    pub labels: Vec<u32>,
    pub count: usize,
}

impl ResidueLabels {
    #[inline]
    pub fn of(&self, v: usize) -> usize {
        self.labels[v] as usize
    }
}

/// One connected component of the subgraph spanned by a colour set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    pub colours: ColourSet,
    pub members: Vec<usize>,
}

/// Euler characteristic of one `î`-residue of a 4-coloured graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceResidue {
    pub missing_colour: usize,
    pub members: Vec<usize>,
    pub euler: i64,
}

/// Graph of `g1 # g2`: removes `x` from `g1` and `y` from `g2` and welds
/// the hanging edges colour by colour. Vertices of `g1` (minus `x`) come
/// first, in order, followed by those of `g2` (minus `y`).
pub fn connected_sum(
    g1: &ColouredGraph,
    g2: &ColouredGraph,
    x: usize,
    y: usize,
) -> Result<ColouredGraph> {
    if g1.colours != g2.colours {
        return Err(Error::WrongArity { expected: g1.colours, found: g2.colours });
    }
    g1.check_vertex(x)?;
    g2.check_vertex(y)?;
    let colours = g1.colours;
    let (n1, n2) = (g1.order(), g2.order());
    let map1 = |v: usize| if v < x { v } else { v - 1 };
    let map2 = |v: usize| (n1 - 1) + if v < y { v } else { v - 1 };
    let mut adj = vec![0u32; (n1 + n2 - 2) * colours];
    for v in (0..n1).filter(|&v| v != x) {
        for c in 0..colours {
            let w = g1.neighbour(v, c);
            let target = if w == x { map2(g2.neighbour(y, c)) } else { map1(w) };
            adj[map1(v) * colours + c] = target as u32;
        }
    }
    for v in (0..n2).filter(|&v| v != y) {
        for c in 0..colours {
            let w = g2.neighbour(v, c);
            let target = if w == y { map1(g1.neighbour(x, c)) } else { map2(w) };
            adj[map2(v) * colours + c] = target as u32;
        }
    }
    ColouredGraph::from_adjacency(colours, adj)
}

/// A decomposition `g = left # right` found from a set of cut edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSplit {
    /// One edge per colour, `cut_edges[c] = (u, v)` with `u < v`.
    pub cut_edges: Vec<(usize, usize)>,
    /// Piece containing vertex 0, capped with one new (last) vertex.
    pub left: ColouredGraph,
    pub right: ColouredGraph,
}

/// Searches for `n + 1` edges, one per colour, whose removal splits `g` into
/// two components of more than one vertex each. Quadruples are tried in
/// lexicographic edge order and the first hit is returned.
pub fn find_sum_split(g: &ColouredGraph) -> Result<Option<SumSplit>> {
    g.require_connected()?;
    let colours = g.colours;
    let order = g.order();
    let edges: Vec<Vec<(usize, usize)>> = (0..colours).map(|c| g.edges(c)).collect();
    let mut cut = vec![(0usize, 0usize); colours];
    let mut side = vec![u8::MAX; order];
    let mut stack = Vec::with_capacity(order);

    // Labels the component of vertex 0 in g minus the cut; returns its size.
    let flood = |cut: &[(usize, usize)], side: &mut [u8], stack: &mut Vec<usize>| -> usize {
        side.iter_mut().for_each(|s| *s = 1);
        side[0] = 0;
        stack.clear();
        stack.push(0);
        let mut size = 1;
        while let Some(v) = stack.pop() {
            for (c, &(a, b)) in cut.iter().enumerate() {
                let w = g.neighbour(v, c);
                if (v == a && w == b) || (v == b && w == a) {
                    continue;
                }
                if side[w] == 1 {
                    side[w] = 0;
                    size += 1;
                    stack.push(w);
                }
            }
        }
        size
    };

    let mut idx = vec![0usize; colours];
    loop {
        for c in 0..colours {
            cut[c] = edges[c][idx[c]];
        }
        let size = flood(&cut, &mut side, &mut stack);
        let crossing = cut.iter().all(|&(a, b)| side[a] != side[b]);
        if crossing && size > 1 && order - size > 1 {
            let left_members: Vec<usize> = (0..order).filter(|&v| side[v] == 0).collect();
            let right_members: Vec<usize> = (0..order).filter(|&v| side[v] == 1).collect();
            // The complement must itself be connected for the split to have
            // exactly two components.
            if is_connected_without(g, &right_members, &cut) {
                let left = cap_piece(g, &left_members, &cut)?;
                let right = cap_piece(g, &right_members, &cut)?;
                return Ok(Some(SumSplit { cut_edges: cut, left, right }));
            }
        }
        // advance the odometer, last colour fastest
        let mut c = colours;
        loop {
            if c == 0 {
                return Ok(None);
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] < edges[c].len() {
                break;
            }
            idx[c] = 0;
        }
    }
}

fn is_connected_without(g: &ColouredGraph, members: &[usize], cut: &[(usize, usize)]) -> bool {
    let mut inside = vec![false; g.order()];
    for &v in members {
        inside[v] = true;
    }
    let mut seen = vec![false; g.order()];
    let mut stack = vec![members[0]];
    seen[members[0]] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for (c, &(a, b)) in cut.iter().enumerate() {
            let w = g.neighbour(v, c);
            if (v == a && w == b) || (v == b && w == a) || !inside[w] || seen[w] {
                continue;
            }
            seen[w] = true;
            count += 1;
            stack.push(w);
        }
    }
    count == members.len()
}

fn cap_piece(g: &ColouredGraph, members: &[usize], cut: &[(usize, usize)]) -> Result<ColouredGraph> {
    let colours = g.colours;
    let cap = members.len();
    let mut index = vec![u32::MAX; g.order()];
    for (k, &v) in members.iter().enumerate() {
        index[v] = k as u32;
    }
    let mut adj = vec![0u32; (cap + 1) * colours];
    for (k, &v) in members.iter().enumerate() {
        for c in 0..colours {
            let w = g.neighbour(v, c);
            let (a, b) = cut[c];
            adj[k * colours + c] =
                if (v == a && w == b) || (v == b && w == a) { cap as u32 } else { index[w] };
        }
    }
    for (c, &(a, b)) in cut.iter().enumerate() {
        let inner = if index[a] != u32::MAX { index[a] } else { index[b] };
        adj[cap * colours + c] = inner;
    }
    ColouredGraph::from_adjacency(colours, adj)
}
