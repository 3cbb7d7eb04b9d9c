//! Text formats: catalogue files, class files, facet gluings and the legacy
//! letter codes.
//!
//! Catalogue file:
//!
//! ```text
//! GEMS v1 <order> <bipartite|nonbipartite> <count>
//! <code>
//! ...
//! ```
//!
//! Class file:
//!
//! ```text
//! CLASSES v1 <class count>
//! class <id> <member count> [name]
//! <code> <h>
//! ...
//! ```
//!
//! Writes go through a temporary file in the target directory that is then
//! renamed over the destination.

mod gluing;
mod legacy;

pub use gluing::{barycentric_graph, dual_gluing, FacetGluing, FaceMap};
pub use legacy::decode_legacy_code;

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::canon::Code;
use crate::census::Catalogue;
use crate::classify::ClassRecord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Bipartite,
    NonBipartite,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Bipartite => "bipartite",
            Parity::NonBipartite => "nonbipartite",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bipartite" => Ok(Parity::Bipartite),
            "nonbipartite" => Ok(Parity::NonBipartite),
            _ => Err(Error::Format(format!("unknown parity {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogueFile {
    pub vertex_count: usize,
    pub parity: Parity,
    /// Sorted, distinct canonical codes.
    pub codes: Vec<Code>,
}

impl CatalogueFile {
    /// Both halves of a catalogue, bipartite first.
    pub fn from_catalogue(cat: &Catalogue) -> [CatalogueFile; 2] {
        [
            CatalogueFile { vertex_count: cat.vertex_count, parity: Parity::Bipartite, codes: cat.bipartite.clone() },
            CatalogueFile {
                vertex_count: cat.vertex_count,
                parity: Parity::NonBipartite,
                codes: cat.non_bipartite.clone(),
            },
        ]
    }

    /// Conventional file name, e.g. `gems-24-nonbipartite.txt`.
    pub fn file_name(vertex_count: usize, parity: Parity) -> String {
        format!("gems-{vertex_count}-{parity}.txt")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("GEMS v1 {} {} {}\n", self.vertex_count, self.parity, self.codes.len());
        for c in &self.codes {
            s.push_str(c.as_str());
            s.push('\n');
        }
        s
    }

    /// Parses and validates: header fields, count, canonical codes of the
    /// stated order, strictly increasing.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Format("empty catalogue file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [magic, version, order, parity, count] = fields[..] else {
            return Err(Error::Format(format!("bad catalogue header {header:?}")));
        };
        if magic != "GEMS" || version != "v1" {
            return Err(Error::Format(format!("bad catalogue header {header:?}")));
        }
        let vertex_count = parse_number(order, "vertex count")?;
        let parity: Parity = parity.parse()?;
        let count = parse_number(count, "code count")?;
        let mut codes: Vec<Code> = Vec::with_capacity(count);
        for (n, line) in lines.enumerate() {
            let c = Code::parse(line).map_err(|e| Error::Format(format!("line {}: {e}", n + 2)))?;
            if c.order() != vertex_count {
                return Err(Error::Format(format!("line {}: code has order {}", n + 2, c.order())));
            }
            if codes.last().is_some_and(|prev| *prev >= c) {
                return Err(Error::Format(format!("line {}: codes not strictly increasing", n + 2)));
            }
            codes.push(c);
        }
        if codes.len() != count {
            return Err(Error::Format(format!("header says {count} codes, found {}", codes.len())));
        }
        Ok(CatalogueFile { vertex_count, parity, codes })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassFile {
    pub classes: Vec<ClassRecord>,
}

impl ClassFile {
    pub fn to_text(&self) -> String {
        let mut s = format!("CLASSES v1 {}\n", self.classes.len());
        for c in &self.classes {
            s.push_str(&format!("class {} {}", c.id, c.members.len()));
            if let Some(name) = &c.name {
                s.push(' ');
                s.push_str(name);
            }
            s.push('\n');
            for (code, h) in &c.members {
                s.push_str(&format!("{code} {h}\n"));
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(n, l)| (n + 1, l));
        let (_, header) = lines.next().ok_or_else(|| Error::Format("empty class file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let ["CLASSES", "v1", count] = fields[..] else {
            return Err(Error::Format(format!("bad class header {header:?}")));
        };
        let count = parse_number(count, "class count")?;
        let mut classes = Vec::with_capacity(count);
        while let Some((n, line)) = lines.next() {
            let mut parts = line.splitn(4, ' ');
            if parts.next() != Some("class") {
                return Err(Error::Format(format!("line {n}: expected a class line")));
            }
            let id = parse_number(parts.next().unwrap_or(""), "class id")?;
            let size = parse_number(parts.next().unwrap_or(""), "member count")?;
            let name = parts.next().map(str::to_string);
            if id != classes.len() {
                return Err(Error::Format(format!("line {n}: class ids must be consecutive")));
            }
            let mut members = Vec::with_capacity(size);
            for _ in 0..size {
                let (n, line) = lines
                    .next()
                    .ok_or_else(|| Error::Format(format!("class {id} is missing members")))?;
                let (code, h) = line
                    .split_once(' ')
                    .ok_or_else(|| Error::Format(format!("line {n}: expected `<code> <h>`")))?;
                let code = Code::parse(code).map_err(|e| Error::Format(format!("line {n}: {e}")))?;
                members.push((code, parse_number(h, "h")?));
            }
            if members.is_empty() {
                return Err(Error::Format(format!("class {id} is empty")));
            }
            classes.push(ClassRecord { id, members, name });
        }
        if classes.len() != count {
            return Err(Error::Format(format!("header says {count} classes, found {}", classes.len())));
        }
        Ok(ClassFile { classes })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_text())
    }
}

fn parse_number(s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Format(format!("bad {what} {s:?}")))
}

/// Writes `contents` to a temporary sibling of `path`, then renames it.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error.to_string()))?;
    Ok(())
}
