use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use sorder_core::{from_graph6, Tree};

fn open(path: Option<&Path>) -> Result<Box<dyn BufRead>> {
    Ok(match path {
        None => Box::new(BufReader::new(io::stdin())),
        Some(p) if p.as_os_str() == "-" => Box::new(BufReader::new(io::stdin())),
        Some(p) => Box::new(BufReader::new(
            File::open(p).with_context(|| format!("cannot open {}", p.display()))?,
        )),
    })
}

/// One tree per non-blank line.
pub fn read_trees(path: Option<&Path>) -> Result<Vec<Tree>> {
    let name = path.map_or_else(|| "<stdin>".to_string(), |p| p.display().to_string());
    let mut trees = Vec::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        trees.push(from_graph6(line).with_context(|| format!("{name}:{}", i + 1))?);
    }
    Ok(trees)
}

pub fn read_single(path: &Path) -> Result<Tree> {
    let mut trees = read_trees(Some(path))?;
    if trees.len() != 1 {
        bail!(
            "{} holds {} trees, expected exactly one",
            path.display(),
            trees.len()
        );
    }
    Ok(trees.pop().expect("one tree"))
}

pub fn sink(out: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        None => Box::new(BufWriter::new(io::stdout().lock())),
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
    })
}

pub fn write_json_line<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}
