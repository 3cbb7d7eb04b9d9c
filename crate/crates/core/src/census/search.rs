//! Backtracking search that adds one new colour, as a perfect matching, to a
//! graph whose other colours are already complete.
//!
//! Each tracked residue `{a, b, new}` is kept planar throughout: a new edge
//! may join two components freely, but inside one component it must join two
//! corners at odd distance along a common face. Faces of a partial residue
//! are the closed `{a,b}`, `{a,new}`, `{b,new}` cycles together with the
//! "mixed" faces formed by open `{a,new}` and `{b,new}` paths chained at
//! unmatched vertices. Sub-ribbon-graphs of planar ribbon graphs are planar,
//! so the prune is exact.
//!
//! Edges on one partial `{c,new}` path end up on one `{c,new}` cycle, so a
//! rho-pair is rejected as soon as two equally coloured edges share two
//! (partial) bicoloured components.

const NONE: u32 = u32::MAX;

struct UndoUnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    trail: Vec<u32>,
}

impl UndoUnionFind {
    fn new(n: usize) -> Self {
        UndoUnionFind { parent: (0..n as u32).collect(), size: vec![1; n], trail: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    /// Returns whether a merge happened (and was pushed on the trail).
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.trail.push(rb as u32);
        true
    }

    fn undo(&mut self) {
        let child = self.trail.pop().expect("undo without union") as usize;
        let root = self.parent[child] as usize;
        self.size[root] -= self.size[child];
        self.parent[child] = child as u32;
    }
}

/// Configuration of one matching search.
pub(crate) struct MatchingProblem<'a> {
    /// Vertex-major adjacency of the complete colours `0..base_colours`.
    pub base: &'a [u32],
    pub base_colours: usize,
    /// Residues `{a, b, new}` that must stay planar and end up connected.
    pub tracked: Vec<(usize, usize)>,
    /// Forbid a new edge parallel to an existing one.
    pub forbid_parallel: bool,
    /// Upper bound on closed `{c,new}` cycles for every base colour `c`.
    pub max_closed: Option<usize>,
    /// Interchangeable base cycles, for symmetry reduction.
    pub symmetry: Option<CycleSymmetry>,
}

/// A base made of disjoint bicoloured cycles whose colour-preserving
/// automorphisms act regularly on each cycle and permute cycles of equal
/// length. Cycles no edge of the partial matching touches are then all
/// equivalent within a length class, so only one representative vertex of
/// one such cycle per class needs to be tried.
pub(crate) struct CycleSymmetry {
    /// Cycle of every vertex.
    pub cycle: Vec<u32>,
    /// Least vertex of every cycle.
    pub first: Vec<u32>,
    /// Length class of every cycle.
    pub class: Vec<u32>,
}

struct State<'a> {
    p: &'a MatchingProblem<'a>,
    order: usize,
    k: usize,
    mate: Vec<u32>,
    unions: Vec<UndoUnionFind>,
    components: Vec<usize>,
    /// `base_cycle[c][d][v]`: label of the `{c,d}` cycle through `v`.
    base_cycle: Vec<Vec<Vec<u32>>>,
    /// Components of the `{c,new}` subgraph, per base colour `c`.
    paths: Vec<UndoUnionFind>,
    closed: Vec<usize>,
    face: Vec<u32>,
    scratch: Vec<u32>,
    /// Matched vertices per base cycle (symmetry reduction only).
    touched: Vec<u32>,
}

impl<'a> State<'a> {
    #[inline]
    fn nb(&self, v: usize, c: usize) -> usize {
        self.p.base[v * self.k + c] as usize
    }

    /// Other end of the open `{c,new}` path starting at unmatched `u`.
    #[inline]
    fn path_end(&self, u: usize, c: usize) -> usize {
        let mut x = u;
        loop {
            let y = self.nb(x, c);
            let m = self.mate[y];
            if m == NONE {
                return y;
            }
            x = m as usize;
        }
    }

    fn run<F: FnMut(&[u32])>(&mut self, emit: &mut F, stamp: &mut u32) {
        let u = match self.mate.iter().position(|&m| m == NONE) {
            Some(u) => u,
            None => {
                if self.components.iter().all(|&c| c == 1) {
                    emit(&self.mate);
                }
                return;
            }
        };

        // Odd-position face markers per tracked residue, for candidates in
        // the same component as u.
        let tracked = self.p.tracked.len();
        let mut stamps = Vec::with_capacity(tracked);
        for t in 0..tracked {
            *stamp += 1;
            let (a, b) = self.p.tracked[t];
            self.mark_face_t(u, a, b, *stamp, t);
            stamps.push(*stamp);
        }

        // representative vertex per length class among untouched cycles
        let mut representative: Vec<u32> = Vec::new();
        if let Some(sym) = &self.p.symmetry {
            let own = sym.cycle[u] as usize;
            representative = vec![NONE; self.order + 1];
            for cyc in 0..sym.first.len() {
                let class = sym.class[cyc] as usize;
                if cyc != own && self.touched[cyc] == 0 && representative[class] == NONE {
                    representative[class] = sym.first[cyc];
                }
            }
        }

        let ends: Vec<usize> = (0..self.k).map(|c| self.path_end(u, c)).collect();
        for v in (u + 1)..self.order {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(sym) = &self.p.symmetry {
                let cyc = sym.cycle[v] as usize;
                if cyc != sym.cycle[u] as usize
                    && self.touched[cyc] == 0
                    && representative[sym.class[cyc] as usize] != v as u32
                {
                    continue;
                }
            }
            if self.p.forbid_parallel && (0..self.k).any(|c| self.nb(u, c) == v) {
                continue;
            }
            let mut ok = true;
            for t in 0..tracked {
                let uf = &self.unions[t];
                if uf.find(u) == uf.find(v) && self.face_stamp(t, v) != stamps[t] {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            self.try_edge(u, v, &ends, emit, stamp);
            // deeper levels reuse the marker array
            for t in 0..tracked {
                let (a, b) = self.p.tracked[t];
                self.mark_face_t(u, a, b, stamps[t], t);
            }
        }
    }

    /// Stamps the vertices at odd positions on the mixed `{a,b}` face of `u`.
    fn mark_face_t(&mut self, u: usize, a: usize, b: usize, stamp: u32, t: usize) {
        let offset = t * self.order;
        let mut w = u;
        loop {
            let odd = self.path_end(w, a);
            self.face[offset + odd] = stamp;
            w = self.path_end(odd, b);
            if w == u {
                break;
            }
        }
    }

    #[inline]
    fn face_stamp(&self, t: usize, v: usize) -> u32 {
        self.face[t * self.order + v]
    }

    fn try_edge<F: FnMut(&[u32])>(
        &mut self,
        u: usize,
        v: usize,
        ends: &[usize],
        emit: &mut F,
        stamp: &mut u32,
    ) {
        self.mate[u] = v as u32;
        self.mate[v] = u as u32;
        if let Some(sym) = &self.p.symmetry {
            self.touched[sym.cycle[u] as usize] += 1;
            self.touched[sym.cycle[v] as usize] += 1;
        }
        let mut merged = Vec::with_capacity(self.p.tracked.len());
        for t in 0..self.p.tracked.len() {
            let m = self.unions[t].union(u, v);
            if m {
                self.components[t] -= 1;
            }
            merged.push(m);
        }

        let mut path_merged = [false; 4];
        for c in 0..self.k {
            path_merged[c] = self.paths[c].union(u, v);
        }
        let mut ok = true;
        for c in 0..self.k {
            if ends[c] == v {
                self.closed[c] += 1;
                if self.p.max_closed.is_some_and(|max| self.closed[c] > max) {
                    ok = false;
                }
            }
        }
        ok = ok && (0..self.k).all(|c| self.component_is_rigid(u, c));

        if ok {
            self.run(emit, stamp);
        }

        for c in (0..self.k).rev() {
            if ends[c] == v {
                self.closed[c] -= 1;
            }
            if path_merged[c] {
                self.paths[c].undo();
            }
        }
        for t in (0..self.p.tracked.len()).rev() {
            if merged[t] {
                self.unions[t].undo();
                self.components[t] += 1;
            }
        }
        if let Some(sym) = &self.p.symmetry {
            self.touched[sym.cycle[u] as usize] -= 1;
            self.touched[sym.cycle[v] as usize] -= 1;
        }
        self.mate[u] = NONE;
        self.mate[v] = NONE;
    }

    /// Checks the `{c,new}` component through `u` (just grown by the new
    /// edge at `u`): its `c`-edges must lie on distinct `{c,d}` cycles and its
    /// new edges on distinct `{d,new}` components, for every other base `d`.
    fn component_is_rigid(&mut self, u: usize, c: usize) -> bool {
        // Collect the component: walk from u along c, then from u along new.
        let mut c_edges = std::mem::take(&mut self.scratch);
        c_edges.clear();
        let mut new_edges: Vec<u32> = Vec::new();
        let mut x = u;
        'walk: {
            loop {
                let y = self.nb(x, c);
                c_edges.push(y as u32);
                let m = self.mate[y];
                if m == NONE {
                    break;
                }
                new_edges.push(y as u32);
                x = m as usize;
                if x == u {
                    break 'walk;
                }
            }
            let mut x = u;
            loop {
                let y = self.mate[x];
                if y == NONE {
                    break;
                }
                new_edges.push(x as u32);
                let z = self.nb(y as usize, c);
                c_edges.push(z as u32);
                x = z;
            }
        }
        let mut ok = true;
        let mut labels: Vec<u32> = Vec::with_capacity(c_edges.len().max(new_edges.len()));
        for d in (0..self.k).filter(|&d| d != c) {
            labels.clear();
            labels.extend(c_edges.iter().map(|&y| self.base_cycle[c][d][y as usize]));
            if has_duplicate(&mut labels) {
                ok = false;
                break;
            }
            labels.clear();
            labels.extend(new_edges.iter().map(|&x| self.paths[d].find(x as usize) as u32));
            if has_duplicate(&mut labels) {
                ok = false;
                break;
            }
        }
        self.scratch = c_edges;
        ok
    }
}

fn has_duplicate(labels: &mut [u32]) -> bool {
    labels.sort_unstable();
    labels.windows(2).any(|w| w[0] == w[1])
}

fn cycle_labels(base: &[u32], k: usize, order: usize, c: usize, d: usize) -> Vec<u32> {
    let mut labels = vec![NONE; order];
    let mut next = 0;
    for s in 0..order {
        if labels[s] != NONE {
            continue;
        }
        let mut x = s;
        let mut colour = c;
        while labels[x] == NONE {
            labels[x] = next;
            x = base[x * k + colour] as usize;
            colour = if colour == c { d } else { c };
        }
        next += 1;
    }
    labels
}

/// Enumerates every perfect matching satisfying the problem's constraints and
/// hands each to `emit` as a mate table.
pub(crate) fn enumerate_matchings<F: FnMut(&[u32])>(problem: &MatchingProblem<'_>, mut emit: F) {
    let k = problem.base_colours;
    let order = problem.base.len() / k;
    let mut base_cycle = vec![vec![Vec::new(); k]; k];
    for c in 0..k {
        for d in 0..k {
            if c != d {
                base_cycle[c][d] = cycle_labels(problem.base, k, order, c, d);
            }
        }
    }
    let mut unions = Vec::new();
    let mut components = Vec::new();
    for &(a, b) in &problem.tracked {
        let mut uf = UndoUnionFind::new(order);
        let labels = &base_cycle[a][b];
        let mut first = vec![NONE; order];
        for v in 0..order {
            let l = labels[v] as usize;
            if first[l] == NONE {
                first[l] = v as u32;
            } else {
                uf.union(first[l] as usize, v);
            }
        }
        uf.trail.clear();
        components.push(first.iter().filter(|&&f| f != NONE).count());
        unions.push(uf);
    }
    let paths = (0..k)
        .map(|c| {
            let mut uf = UndoUnionFind::new(order);
            for v in 0..order {
                uf.union(v, problem.base[v * k + c] as usize);
            }
            uf.trail.clear();
            uf
        })
        .collect();
    let mut state = State {
        p: problem,
        order,
        k,
        mate: vec![NONE; order],
        unions,
        components,
        base_cycle,
        paths,
        closed: vec![0; k],
        face: vec![0; order * problem.tracked.len().max(1)],
        scratch: Vec::new(),
        touched: vec![0; problem.symmetry.as_ref().map_or(0, |s| s.first.len())],
    };
    let mut stamp = 0u32;
    state.run(&mut emit, &mut stamp);
}
