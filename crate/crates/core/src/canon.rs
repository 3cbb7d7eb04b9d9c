//! Canonical codes for coloured graphs.
//!
//! For every root vertex and every permutation of the colours, vertices are
//! numbered in breadth-first order, scanning the neighbours of each dequeued
//! vertex colour by colour. The relabelled involutions, written colour-major,
//! form a table; the code is the lexicographically least table over all
//! roots and permutations. Two graphs get the same code exactly when they are
//! colour-isomorphic.
//!
//! Text form: `<colours>:<order>:<body>`, where the body lists, for each
//! colour of the canonical labelling and each vertex `1..=order`, the
//! neighbour's number as a fixed-width base-62 numeral (digits `0-9A-Za-z`,
//! width = digits needed for `order`). The alphabet is ASCII-ordered, so for
//! a fixed order string comparison agrees with table comparison.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::ColouredGraph;

const DIGITS: &[u8; 62] = b"0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

/// Canonical string of a connected coloured graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Code(String);

impl Code {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Wraps text without checking canonicity; use [`Code::parse`] for
    /// untrusted input.
    pub fn from_string_unchecked(text: String) -> Self {
        Code(text)
    }

    /// Parses a code and checks it is in canonical form.
    pub fn parse(text: &str) -> Result<Self> {
        let g = decode_str(text)?;
        let canonical = code(&g)?;
        if canonical.0 != text {
            return Err(Error::Parse {
                position: 0,
                message: "well-formed but not canonical".into(),
            });
        }
        Ok(canonical)
    }

    pub fn order(&self) -> usize {
        self.0
            .split(':')
            .nth(1)
            .and_then(|s| s.parse().ok())
            .unwrap_or(0)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A graph relabelled into its canonical numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedGraph {
    /// Canonically labelled graph; its colour-major tables are the code's.
    pub graph: ColouredGraph,
    /// `ordering[k]` is the vertex of the source graph that received number `k`.
    pub ordering: Vec<usize>,
    /// `colour_map[c]` is the colour in `graph` of the source's colour `c`.
    pub colour_map: Vec<usize>,
    pub code: Code,
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    fn rec(perm: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
        if start == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in start..perm.len() {
            perm[start..=i].rotate_right(1);
            rec(perm, start + 1, out);
            perm[start..=i].rotate_left(1);
        }
    }
    rec(&mut perm, 0, &mut out);
    out
}

struct Canonical {
    table: Vec<u32>,
    ordering: Vec<usize>,
    /// `source_colour[new] = old`
    source_colour: Vec<usize>,
}

fn canonical_form(g: &ColouredGraph) -> Canonical {
    let order = g.order();
    let colours = g.colours();
    let perms = permutations(colours);
    let mut best: Option<Canonical> = None;
    let mut label = vec![u32::MAX; order];
    let mut seq = vec![0usize; order];
    let mut table = vec![0u32; order * colours];

    for root in 0..order {
        for psi in &perms {
            label.iter_mut().for_each(|l| *l = u32::MAX);
            label[root] = 0;
            seq[0] = root;
            let mut filled = 1;
            let mut head = 0;
            while head < filled {
                let v = seq[head];
                head += 1;
                for &c in psi {
                    let w = g.neighbour(v, c);
                    if label[w] == u32::MAX {
                        label[w] = filled as u32;
                        seq[filled] = w;
                        filled += 1;
                    }
                }
            }
            debug_assert_eq!(filled, order);

            // Build the table, comparing against the incumbent as we go.
            let mut state = if best.is_some() { Ordering::Equal } else { Ordering::Less };
            let mut idx = 0;
            'fill: for &c in psi {
                for &v in seq.iter().take(order) {
                    let value = label[g.neighbour(v, c)];
                    if state == Ordering::Equal {
                        let incumbent = best.as_ref().unwrap().table[idx];
                        state = value.cmp(&incumbent);
                        if state == Ordering::Greater {
                            break 'fill;
                        }
                    }
                    table[idx] = value;
                    idx += 1;
                }
            }
            if state == Ordering::Less {
                best = Some(Canonical {
                    table: table.clone(),
                    ordering: seq.clone(),
                    source_colour: psi.clone(),
                });
            }
        }
    }
    best.expect("graph has at least one vertex")
}

fn width_for(order: usize) -> usize {
    let mut w = 1;
    let mut cap = 62usize;
    while order >= cap {
        w += 1;
        cap *= 62;
    }
    w
}

fn render(colours: usize, order: usize, table: &[u32]) -> String {
    let width = width_for(order);
    let mut s = format!("{colours}:{order}:");
    s.reserve(table.len() * width);
    let mut digits = vec![0u8; width];
    for &v in table {
        let mut x = v as usize + 1;
        for d in digits.iter_mut().rev() {
            *d = DIGITS[x % 62];
            x /= 62;
        }
        s.push_str(std::str::from_utf8(&digits).unwrap());
    }
    s
}

/// Canonical code of a connected graph.
pub fn code(g: &ColouredGraph) -> Result<Code> {
    g.require_connected()?;
    let canon = canonical_form(g);
    Ok(Code(render(g.colours(), g.order(), &canon.table)))
}

/// Canonical relabelling realising [`code`].
pub fn canonical_order(g: &ColouredGraph) -> Result<OrderedGraph> {
    g.require_connected()?;
    let canon = canonical_form(g);
    let order = g.order();
    let colours = g.colours();
    let mut adj = vec![0u32; order * colours];
    for c in 0..colours {
        for v in 0..order {
            adj[v * colours + c] = canon.table[c * order + v];
        }
    }
    let mut colour_map = vec![0usize; colours];
    for (new, &old) in canon.source_colour.iter().enumerate() {
        colour_map[old] = new;
    }
    Ok(OrderedGraph {
        graph: ColouredGraph::from_adjacency_unchecked(colours, adj),
        ordering: canon.ordering,
        colour_map,
        code: Code(render(colours, order, &canon.table)),
    })
}

pub fn is_colour_isomorphic(g1: &ColouredGraph, g2: &ColouredGraph) -> Result<bool> {
    if g1.colours() != g2.colours() || g1.order() != g2.order() {
        g1.require_connected()?;
        g2.require_connected()?;
        return Ok(false);
    }
    Ok(code(g1)? == code(g2)?)
}

/// Decodes a code back into its (canonically labelled) graph.
pub fn decode(c: &Code) -> Result<ColouredGraph> {
    decode_str(c.as_str())
}

/// Parses any string in code syntax, canonical or not.
pub fn decode_str(text: &str) -> Result<ColouredGraph> {
    let bytes = text.as_bytes();
    let err = |position: usize, message: &str| Error::Parse { position, message: message.to_string() };

    let first = text.find(':').ok_or_else(|| err(0, "missing ':' after colour count"))?;
    let colours: usize = text[..first].parse().map_err(|_| err(0, "colour count is not a number"))?;
    if !(3..=4).contains(&colours) {
        return Err(err(0, "colour count must be 3 or 4"));
    }
    let rest = &text[first + 1..];
    let second = rest.find(':').ok_or_else(|| err(first + 1, "missing ':' after order"))?;
    let order: usize =
        rest[..second].parse().map_err(|_| err(first + 1, "order is not a number"))?;
    if order == 0 || order % 2 != 0 {
        return Err(err(first + 1, "order must be even and positive"));
    }
    let body_start = first + 1 + second + 1;
    let width = width_for(order);
    let expected = order * colours * width;
    let body = &bytes[body_start..];
    if body.len() != expected {
        return Err(err(
            body_start + body.len().min(expected),
            &format!("body has {} characters, expected {expected}", body.len()),
        ));
    }
    let mut adj = vec![0u32; order * colours];
    for c in 0..colours {
        for v in 0..order {
            let at = (c * order + v) * width;
            let mut x = 0usize;
            for k in 0..width {
                let ch = body[at + k];
                let d = DIGITS
                    .iter()
                    .position(|&d| d == ch)
                    .ok_or_else(|| err(body_start + at + k, "invalid digit"))?;
                x = x * 62 + d;
            }
            if x == 0 || x > order {
                return Err(err(body_start + at, "vertex number out of range"));
            }
            adj[v * colours + c] = (x - 1) as u32;
        }
    }
    ColouredGraph::from_adjacency(colours, adj).map_err(|e| err(body_start, &e.to_string()))
}
