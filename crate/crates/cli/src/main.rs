use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use crystal::io::{barycentric_graph, CatalogueFile, ClassFile, FacetGluing, Parity};
use crystal::{
    build_catalogue, classify_list, code, factorize, homology, pi1_presentation, rigidify, Code,
    ColouredGraph,
};

/// Census, classification and invariants of crystallizations of closed
/// 3-manifolds.
#[derive(Parser)]
#[command(name = "crystal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the catalogues of rigid crystallizations for every even
    /// order up to `--vertices`.
    Gen {
        #[arg(long)]
        vertices: usize,
        /// Directory receiving one file per order and parity.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Reuse catalogue files already present in `--out`.
        #[arg(long, requires = "out")]
        resume: bool,
    },
    /// Split catalogued graphs into classes.
    Classify {
        #[arg(long, num_args = 1.., required = true)]
        catalogues: Vec<PathBuf>,
        /// File of `<code> <name>` lines.
        #[arg(long)]
        known: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Homology groups, and optionally a fundamental group presentation.
    Invariants {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        code: Option<String>,
        /// Catalogue file, or a file with one code per line.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Colour pair `i,j` for the presentation.
        #[arg(long)]
        pi1: Option<String>,
    },
    /// Decompose a crystallization into connected summands.
    Split {
        #[arg(long)]
        code: String,
    },
    /// Build a crystallization from a facet gluing.
    Ingest {
        #[arg(long)]
        gluing: PathBuf,
        /// File receiving the code.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical code of a graph.
    Code {
        /// A graph in code syntax, or a file with one line of 1-based
        /// neighbours per colour.
        #[arg(long)]
        normalize: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = e.downcast_ref::<crystal::Error>().map_or("cli", |e| e.kind());
            let message = format!("{e:#}").replace('\n', " ");
            eprintln!("error: {kind}: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Gen { vertices, out, threads, resume } => {
            set_threads(threads)?;
            gen(vertices, out.as_deref(), resume)
        }
        Command::Classify { catalogues, known, out, threads } => {
            set_threads(threads)?;
            classify(&catalogues, known.as_deref(), &out)
        }
        Command::Invariants { code, file, pi1 } => {
            let pair = pi1.as_deref().map(parse_pair).transpose()?;
            match (code, file) {
                (Some(c), _) => invariants(&crystal::canon::decode_str(&c)?, pair),
                (None, Some(path)) => {
                    let codes = read_codes(&path)?;
                    for c in codes {
                        println!("code {c}");
                        invariants(&crystal::canon::decode_str(&c)?, pair)?;
                    }
                    Ok(())
                }
                (None, None) => bail!("one of --code and --file is required"),
            }
        }
        Command::Split { code: c } => {
            let g = crystal::canon::decode_str(&c)?;
            let f = factorize(&rigidify(&g)?.graph)?;
            for piece in &f.pieces {
                println!("piece {}", code(piece)?);
            }
            for h in &f.handles {
                println!("handle {}", if *h == crystal::Handle::Orientable { "orientable" } else { "nonorientable" });
            }
            Ok(())
        }
        Command::Ingest { gluing, out } => {
            let text = std::fs::read_to_string(&gluing).with_context(|| format!("reading {}", gluing.display()))?;
            let t = FacetGluing::parse(&text)?;
            let g = barycentric_graph(&t);
            if !g.is_connected() {
                return Err(crystal::Error::Disconnected.into());
            }
            if !g.represents_manifold()? {
                return Err(crystal::Error::Gluing("the gluing is not a closed 3-manifold".into()).into());
            }
            let r = rigidify(&g)?;
            let c = code(&r.graph)?;
            println!("vertices {}", r.graph.order());
            println!("handles {}", r.rho3_count);
            println!("code {c}");
            if let Some(path) = out {
                crystal::io::write_atomic(&path, &format!("{c}\n"))?;
            }
            Ok(())
        }
        Command::Code { normalize } => {
            let g = read_raw_graph(&normalize)?;
            println!("{}", code(&g)?);
            Ok(())
        }
    }
}

fn set_threads(flag: Option<usize>) -> Result<()> {
    let env = std::env::var("CRYSTAL_THREADS").ok();
    let threads = match env {
        Some(v) => Some(v.parse::<usize>().map_err(|_| anyhow!("CRYSTAL_THREADS must be a number, got {v:?}"))?),
        None => flag,
    };
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn gen(max: usize, out: Option<&Path>, resume: bool) -> Result<()> {
    if max < 2 {
        bail!("--vertices must be at least 2");
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for order in (2..=max).step_by(2) {
        let paths = out.map(|dir| {
            [Parity::Bipartite, Parity::NonBipartite].map(|p| dir.join(CatalogueFile::file_name(order, p)))
        });
        let existing = match &paths {
            Some(ps) if resume && ps.iter().all(|p| p.exists()) => {
                Some([CatalogueFile::read(&ps[0])?, CatalogueFile::read(&ps[1])?])
            }
            _ => None,
        };
        let files = match existing {
            Some(files) => files,
            None => {
                let files = CatalogueFile::from_catalogue(&build_catalogue(order));
                if let Some(ps) = &paths {
                    for (f, p) in files.iter().zip(ps) {
                        f.write(p)?;
                    }
                }
                files
            }
        };
        println!("vertices {order} bipartite {} nonbipartite {}", files[0].codes.len(), files[1].codes.len());
    }
    Ok(())
}

fn classify(paths: &[PathBuf], known: Option<&Path>, out: &Path) -> Result<()> {
    let mut list: Vec<Code> = Vec::new();
    for p in paths {
        list.extend(CatalogueFile::read(p).with_context(|| format!("reading {}", p.display()))?.codes);
    }
    list.sort_by(|a, b| (a.order(), a).cmp(&(b.order(), b)));
    list.dedup();
    let mut names = BTreeMap::new();
    if let Some(path) = known {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (c, name) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| crystal::Error::Format(format!("{} line {}: expected `<code> <name>`", path.display(), n + 1)))?;
            let c = crystal::Code::parse(c)?;
            if !list.contains(&c) {
                list.push(c.clone());
            }
            names.insert(c, name.trim().to_string());
        }
        list.sort_by(|a, b| (a.order(), a).cmp(&(b.order(), b)));
    }
    let classes = classify_list(&list, &names)?;
    ClassFile { classes: classes.clone() }.write(out)?;
    println!("graphs {}", list.len());
    println!("classes {}", classes.len());
    println!("named {}", classes.iter().filter(|c| c.name.is_some()).count());
    Ok(())
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(',').ok_or_else(|| anyhow!("--pi1 expects `i,j`, got {s:?}"))?;
    let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
    if a > 3 || b > 3 || a == b {
        bail!("--pi1 needs two distinct colours in 0..=3");
    }
    Ok((a, b))
}

fn invariants(g: &ColouredGraph, pair: Option<(usize, usize)>) -> Result<()> {
    let h = homology(g)?;
    for (k, group) in h.iter().enumerate() {
        println!("H{k} = {group}");
    }
    if let Some((i, j)) = pair {
        println!("pi1 = {}", pi1_presentation(g, i, j)?);
    }
    Ok(())
}

fn read_codes(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.starts_with("GEMS ") {
        return Ok(CatalogueFile::parse(&text)?.codes.into_iter().map(Code::into_string).collect());
    }
    Ok(text.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::to_string).collect())
}

fn read_raw_graph(arg: &str) -> Result<ColouredGraph> {
    if arg.contains(':') && !Path::new(arg).exists() {
        return Ok(crystal::canon::decode_str(arg)?);
    }
    let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
    let mut tables = Vec::new();
    for (n, line) in text.lines().map(str::trim).filter(|l| !l.is_empty()).enumerate() {
        let row = line
            .split_whitespace()
            .map(|x| match x.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(crystal::Error::Parse { position: n + 1, message: format!("bad vertex {x:?}") }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        tables.push(row);
    }
    Ok(ColouredGraph::from_involutions(&tables)?)
}
