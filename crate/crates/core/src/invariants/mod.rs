//! Homology and fundamental-group presentations of crystallizations.

pub mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{ColourSet, ColouredGraph, ResidueLabels};

/// Cellular chain complex of the complex dual to a 4-coloured graph. An
/// `h`-cell is a residue on `3 - h` colours.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    /// `cells[h]` lists `(colour set, representative vertex)` per `h`-cell.
    pub cells: [Vec<(ColourSet, usize)>; 4],
    /// `boundaries[h - 1]` is the matrix of the boundary map from `h`-cells
    /// to `(h-1)`-cells (rows index `(h-1)`-cells).
    pub boundaries: [Vec<Vec<i64>>; 3],
}

impl ChainComplex {
    pub fn cell_counts(&self) -> [usize; 4] {
        [self.cells[0].len(), self.cells[1].len(), self.cells[2].len(), self.cells[3].len()]
    }

    pub fn euler_characteristic(&self) -> i64 {
        let c = self.cell_counts();
        c[0] as i64 - c[1] as i64 + c[2] as i64 - c[3] as i64
    }
}

/// The chain complex, with `∂∂ = 0` verified.
pub fn chain_complex(g: &ColouredGraph) -> Result<ChainComplex> {
    g.require_four_colours()?;
    let labels: Vec<ResidueLabels> = (0u8..16).map(|m| g.residue_labels(ColourSet::from_mask(m))).collect();
    // offset of each colour set's residues inside its dimension
    let mut cells: [Vec<(ColourSet, usize)>; 4] = Default::default();
    let mut offset = [0usize; 16];
    for mask in 0u8..16 {
        let set = ColourSet::from_mask(mask);
        if set.len() == 4 {
            continue;
        }
        let dim = 3 - set.len();
        offset[mask as usize] = cells[dim].len();
        let l = &labels[mask as usize];
        let mut rep = vec![usize::MAX; l.count];
        for v in 0..g.order() {
            if rep[l.of(v)] == usize::MAX {
                rep[l.of(v)] = v;
            }
        }
        cells[dim].extend(rep.into_iter().map(|v| (set, v)));
    }
    let index = |set: ColourSet, v: usize| offset[set.mask() as usize] + labels[set.mask() as usize].of(v);

    let mut boundaries: [Vec<Vec<i64>>; 3] = Default::default();
    for h in 1..4 {
        let mut m = vec![vec![0i64; cells[h].len()]; cells[h - 1].len()];
        for (col, &(set, v)) in cells[h].iter().enumerate() {
            for (pos, d) in set.complement(4).iter().enumerate() {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                m[index(set.with(d), v)][col] += sign;
            }
        }
        boundaries[h - 1] = m;
    }
    // ∂_{h-1} ∘ ∂_h = 0
    for h in 2..4 {
        let (a, b) = (&boundaries[h - 2], &boundaries[h - 1]);
        for row in a {
            for col in 0..cells[h].len() {
                let s: i64 = row.iter().enumerate().map(|(k, &x)| x * b[k][col]).sum();
                if s != 0 {
                    return Err(Error::Internal(format!("boundary of boundary is nonzero in degree {h}")));
                }
            }
        }
    }
    Ok(ChainComplex { cells, boundaries })
}

/// A finitely generated abelian group `Z^rank + Z_{t1} + ... + Z_{tk}` with
/// `t1 | t2 | ... | tk`, each `ti >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(rank: usize, torsion: &[u64]) -> Self {
        AbelianGroup { rank, torsion: torsion.iter().map(|&t| BigInt::from(t)).collect() }
    }

    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    /// `Z^generators` modulo the row span of `relations`.
    pub fn from_relations(relations: &[Vec<i64>], generators: usize) -> Self {
        let factors = snf::invariant_factors(relations);
        AbelianGroup {
            rank: generators - factors.len(),
            torsion: factors.into_iter().filter(|x| !x.is_one()).collect(),
        }
    }

    /// Direct sum, brought back to normal form.
    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut diag: Vec<Vec<i64>> = Vec::new();
        let all: Vec<&BigInt> = self.torsion.iter().chain(other.torsion.iter()).collect();
        let n = all.len();
        for (k, t) in all.iter().enumerate() {
            let mut row = vec![0i64; n];
            row[k] = i64::try_from(*t).expect("torsion fits in 64 bits");
            diag.push(row);
        }
        let mut g = AbelianGroup::from_relations(&diag, n);
        g.rank = self.rank + other.rank;
        g
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec!["Z".to_string(); self.rank];
        parts.extend(self.torsion.iter().map(|t| format!("Z{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// `H_0 .. H_3` with integer coefficients.
pub fn homology(g: &ColouredGraph) -> Result<[AbelianGroup; 4]> {
    let cx = chain_complex(g)?;
    let counts = cx.cell_counts();
    let factors: Vec<Vec<BigInt>> = cx.boundaries.iter().map(|m| snf::invariant_factors(m)).collect();
    // rank of ∂_h for h = 0..=4 (∂_0 = ∂_4 = 0)
    let rank = |h: usize| if (1..=3).contains(&h) { factors[h - 1].len() } else { 0 };
    let mut out: [AbelianGroup; 4] = Default::default();
    for (h, slot) in out.iter_mut().enumerate() {
        let torsion = if h < 3 {
            factors[h].iter().filter(|x| !x.is_one()).cloned().collect()
        } else {
            Vec::new()
        };
        *slot = AbelianGroup { rank: counts[h] - rank(h) - rank(h + 1), torsion };
    }
    Ok(out)
}

/// First homology group.
pub fn first_homology(g: &ColouredGraph) -> Result<AbelianGroup> {
    Ok(homology(g)?[1].clone())
}

/// A letter with a sign: generator `index`, inverted when `inverse`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// A finite group presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<Letter>>,
}

fn free_reduce(word: &mut Vec<Letter>) {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word.iter() {
        match out.last() {
            Some(&last) if last.generator == l.generator && last.inverse != l.inverse => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    *word = out;
}

fn generator_name(k: usize) -> String {
    if k < 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("x{}", k + 1)
    }
}

fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if n < 0 {
        s.push('⁻');
    }
    for ch in n.unsigned_abs().to_string().chars() {
        s.push(DIGITS[ch.to_digit(10).unwrap() as usize]);
    }
    s
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.generators).map(generator_name).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                let mut s = String::new();
                let mut k = 0;
                while k < w.len() {
                    // collapse runs of one letter into a power
                    let mut run = 1;
                    while k + run < w.len() && w[k + run] == w[k] {
                        run += 1;
                    }
                    s.push_str(&generator_name(w[k].generator));
                    let e = if w[k].inverse { -(run as i64) } else { run as i64 };
                    if e != 1 {
                        s.push_str(&superscript(e));
                    }
                    k += run;
                }
                if s.is_empty() {
                    s.push('1');
                }
                s
            })
            .collect();
        write!(f, "< {} | {} >", gens.join(","), rels.join(", "))
    }
}

impl Presentation {
    /// Parses `a,b,c | r1, r2, ...`, optionally wrapped in angle brackets.
    /// Relators are products of generator letters with exponents written
    /// `^n`, `^-n`, `^{-n}` or in superscript digits, and commutators
    /// `[u,v]`; a trailing `=1` is ignored.
    pub fn parse(text: &str) -> Result<Presentation> {
        let err = |message: &str| Error::Parse { position: 0, message: message.to_string() };
        let body = text.trim().trim_start_matches(['<', '⟨']).trim_end_matches(['>', '⟩']);
        let (gens, rels) = body.split_once(['|', '/']).ok_or_else(|| err("missing '|' separator"))?;
        let names: Vec<String> =
            gens.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        let lookup = |name: char| names.iter().position(|n| n.len() == 1 && n.starts_with(name));
        let mut relators = Vec::new();
        let mut depth = 0;
        let mut current = String::new();
        let mut raw = Vec::new();
        for ch in rels.chars() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                _ => {}
            }
            if ch == ',' && depth == 0 {
                raw.push(std::mem::take(&mut current));
            } else {
                current.push(ch);
            }
        }
        raw.push(current);
        for r in raw {
            let r = r.trim().trim_end_matches("=1").trim();
            if r.is_empty() {
                continue;
            }
            let chars: Vec<char> = r.chars().filter(|c| !c.is_whitespace()).collect();
            let mut pos = 0;
            let word = parse_word(&chars, &mut pos, &lookup).map_err(|m| err(&m))?;
            if pos != chars.len() {
                return Err(err("unexpected character in relator"));
            }
            relators.push(word);
        }
        Ok(Presentation { generators: names.len(), relators })
    }
}

fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| Letter { generator: l.generator, inverse: !l.inverse }).collect()
}

fn parse_exponent(chars: &[char], pos: &mut usize) -> std::result::Result<i64, String> {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if *pos < chars.len() && chars[*pos] == '^' {
        *pos += 1;
        let braced = *pos < chars.len() && chars[*pos] == '{';
        if braced {
            *pos += 1;
        }
        let start = *pos;
        if *pos < chars.len() && chars[*pos] == '-' {
            *pos += 1;
        }
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        let text: String = chars[start..*pos].iter().collect();
        if braced {
            if *pos >= chars.len() || chars[*pos] != '}' {
                return Err("unclosed exponent".into());
            }
            *pos += 1;
        }
        return text.parse().map_err(|_| format!("bad exponent {text:?}"));
    }
    let mut sign = 1;
    let mut value: Option<i64> = None;
    if *pos < chars.len() && chars[*pos] == '⁻' {
        sign = -1;
        *pos += 1;
    }
    while *pos < chars.len() {
        match SUP.iter().position(|&c| c == chars[*pos]) {
            Some(d) => {
                value = Some(value.unwrap_or(0) * 10 + d as i64);
                *pos += 1;
            }
            None => break,
        }
    }
    match value {
        Some(v) => Ok(sign * v),
        None if sign < 0 => Err("dangling minus".into()),
        None => Ok(1),
    }
}

fn parse_word(
    chars: &[char],
    pos: &mut usize,
    lookup: &dyn Fn(char) -> Option<usize>,
) -> std::result::Result<Vec<Letter>, String> {
    let mut word = Vec::new();
    while *pos < chars.len() {
        let ch = chars[*pos];
        let base: Vec<Letter> = if ch == '[' {
            *pos += 1;
            let u = parse_word(chars, pos, lookup)?;
            if *pos >= chars.len() || chars[*pos] != ',' {
                return Err("expected ',' in commutator".into());
            }
            *pos += 1;
            let v = parse_word(chars, pos, lookup)?;
            if *pos >= chars.len() || chars[*pos] != ']' {
                return Err("expected ']'".into());
            }
            *pos += 1;
            let mut c = u.clone();
            c.extend(v.iter().copied());
            c.extend(invert(&u));
            c.extend(invert(&v));
            c
        } else if let Some(generator) = lookup(ch) {
            *pos += 1;
            vec![Letter { generator, inverse: false }]
        } else {
            break;
        };
        let e = parse_exponent(chars, pos)?;
        let unit = if e < 0 { invert(&base) } else { base };
        for _ in 0..e.unsigned_abs() {
            word.extend(unit.iter().copied());
        }
    }
    free_reduce(&mut word);
    Ok(word)
}

/// Presentation of the fundamental group read off the `{i,j}`- and
/// `{h,k}`-coloured cycles, `{h,k}` the complementary pair with `h < k`.
/// Generators are the `{i,j}`-cycles other than the one through vertex 0,
/// in order of least vertex; each `{h,k}`-cycle other than the one through
/// vertex 0 gives a relator, read from its least vertex starting along its
/// `h`-edge: every vertex entered contributes its `{i,j}`-cycle, inverted
/// when entered along `k`.
pub fn pi1_presentation(g: &ColouredGraph, i: usize, j: usize) -> Result<Presentation> {
    g.require_four_colours()?;
    g.require_connected()?;
    for c in [i, j] {
        if c >= 4 {
            return Err(Error::InvalidColour { colour: c, colours: 4 });
        }
    }
    if i == j {
        return Err(Error::MalformedGraph("the two colours must differ".into()));
    }
    let pair = ColourSet::from_colours([i, j]);
    let mut rest = pair.complement(4).iter();
    let (h, k) = (rest.next().unwrap(), rest.next().unwrap());
    let gens = g.residue_labels(pair);
    let rels = g.residue_labels(ColourSet::from_colours([h, k]));
    // residue labels are assigned in order of least vertex, so label 0 is
    // the cycle through vertex 0
    let generator = |v: usize| gens.of(v).checked_sub(1);
    let mut seen = vec![false; rels.count];
    seen[rels.of(0)] = true;
    let mut relators = Vec::new();
    for start in 0..g.order() {
        if std::mem::replace(&mut seen[rels.of(start)], true) {
            continue;
        }
        let mut word = Vec::new();
        let mut cur = start;
        let mut colour = h;
        loop {
            cur = g.neighbour(cur, colour);
            if let Some(generator) = generator(cur) {
                word.push(Letter { generator, inverse: colour == k });
            }
            colour = if colour == h { k } else { h };
            if cur == start {
                break;
            }
        }
        free_reduce(&mut word);
        relators.push(word);
    }
    Ok(Presentation { generators: gens.count - 1, relators })
}

/// Abelianization of a presentation.
pub fn abelianize(p: &Presentation) -> AbelianGroup {
    let rows: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|w| {
            let mut row = vec![0i64; p.generators];
            for l in w {
                row[l.generator] += if l.inverse { -1 } else { 1 };
            }
            row
        })
        .collect();
    AbelianGroup::from_relations(&rows, p.generators)
}
