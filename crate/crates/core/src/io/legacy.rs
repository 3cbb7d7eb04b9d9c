//! Reader for letter codes of 4-coloured graphs.
//!
//! Layout for a graph with `2p` vertices (`4p` letters, `p <= 26`): the
//! vertices are `A, B, ...` (the first `p` capitals) followed by `a, b, ...`
//! (the first `p` lower-case letters), and colour 0 joins each capital to
//! its lower-case letter. Then come two blocks of `p` capitals, one for
//! colour 1 and one for colour 2: the `k`-th letter `L` of a block joins the
//! `k`-th capital to the lower-case `l`. The last `2p` letters give the
//! colour-3 neighbour of each vertex in the order `A, B, ..., a, b, ...`,
//! written with the case flipped: `x` names the capital `X` and `X` the
//! lower-case `x`.

use crate::graph::ColouredGraph;
use crate::moves::is_rigid;

fn letter_vertex(ch: char, p: usize) -> Option<usize> {
    let (base, offset) = match ch {
        'A'..='Z' => (b'A', 0),
        'a'..='z' => (b'a', p),
        _ => return None,
    };
    let k = (ch as u8 - base) as usize;
    (k < p).then_some(k + offset)
}

fn block(text: &[char], p: usize) -> Result<Vec<usize>, String> {
    let mut seen = vec![false; p];
    let mut out = Vec::with_capacity(p);
    for &ch in text {
        match letter_vertex(ch, p) {
            Some(k) if k < p && !std::mem::replace(&mut seen[k], true) => out.push(k),
            _ => return Err(format!("permutation block contains {ch:?} out of place")),
        }
    }
    Ok(out)
}

fn assemble(p: usize, perm1: &[usize], perm2: &[usize], colour3: &[usize]) -> Result<ColouredGraph, String> {
    let order = 2 * p;
    let mut tables = vec![vec![0; order]; 4];
    for k in 0..p {
        tables[0][k] = p + k;
        tables[0][p + k] = k;
        for (c, perm) in [(1, perm1), (2, perm2)] {
            tables[c][k] = p + perm[k];
            tables[c][p + perm[k]] = k;
        }
    }
    for (v, &w) in colour3.iter().enumerate() {
        if w == v || colour3[w] != v {
            return Err(format!("colour-3 letters are not an involution at vertex {}", v + 1));
        }
    }
    tables[3] = colour3.to_vec();
    ColouredGraph::from_involutions(&tables).map_err(|e| e.to_string())
}

fn check(g: &ColouredGraph) -> Result<(), String> {
    if !g.is_connected() {
        return Err("graph is disconnected".into());
    }
    if !g.is_crystallization().map_err(|e| e.to_string())? {
        return Err("not a crystallization".into());
    }
    if !is_rigid(g) {
        return Err("not rigid".into());
    }
    if g.bipartition().is_some() {
        return Err("bipartite".into());
    }
    Ok(())
}

/// Decodes a letter code under the layout above and checks that it is a
/// rigid non-bipartite crystallization. Never panics; on failure the error
/// names the first check that failed.
pub fn decode_legacy_code(text: &str) -> Result<ColouredGraph, String> {
    let chars: Vec<char> = text.trim().chars().collect();
    if chars.len() < 4 || chars.len() % 4 != 0 {
        return Err(format!("length {} is not a positive multiple of 4", chars.len()));
    }
    let p = chars.len() / 4;
    if p > 26 {
        return Err(format!("{p} letters per block exceed the alphabet"));
    }
    let perm1 = block(&chars[..p], p)?;
    let perm2 = block(&chars[p..2 * p], p)?;
    let mut colour3 = Vec::with_capacity(2 * p);
    for &ch in &chars[2 * p..] {
        let flipped = if ch.is_ascii_uppercase() { ch.to_ascii_lowercase() } else { ch.to_ascii_uppercase() };
        colour3.push(letter_vertex(flipped, p).ok_or_else(|| format!("bad colour-3 letter {ch:?}"))?);
    }
    let g = assemble(p, &perm1, &perm2, &colour3)?;
    check(&g)?;
    Ok(g)
}
