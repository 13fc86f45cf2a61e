//! Text formats. Every user-facing point (and color) is 1-based.
//!
//! Generator file:
//!
//! ```text
//! # comment
//! 5
//! (1,2)
//! (1,2,3,4,5)
//! ```
//!
//! Subset file: the points on one line, separated by spaces or commas.
//! Coloring file: one `point:color` line per point.
//! Map table: one `source -> image` line per generator, both in cycle notation.

use std::path::Path;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses disjoint-cycle notation with 1-based points, e.g. `(1,2,3)(4,5)`.
/// `()` is the identity.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Permutation> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::NotAPermutation(format!("expected '(' in {text:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::NotAPermutation(format!("unclosed cycle in {text:?}")))?;
        let inner = body[..close].trim();
        if !inner.is_empty() {
            let cycle = inner
                .split(',')
                .map(|tok| {
                    let x: usize = tok.trim().parse().map_err(|_| {
                        Error::NotAPermutation(format!("bad point {:?} in {text:?}", tok.trim()))
                    })?;
                    if x == 0 || x > degree {
                        return Err(Error::PointOutOfRange {
                            point: x,
                            degree,
                        });
                    }
                    Ok(x - 1)
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles)
}

/// Disjoint-cycle notation with 1-based points.
pub fn format_cycles(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "()".to_string();
    }
    cycles
        .iter()
        .map(|c| {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            format!("({})", pts.join(","))
        })
        .collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Parses a generator file.
pub fn parse_generators(text: &str) -> Result<PermGroup> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing degree line"))?;
    let degree: usize = header
        .parse()
        .map_err(|_| parse_err(ln, format!("expected the degree, found {header:?}")))?;
    if degree == 0 {
        return Err(Error::EmptyDomain);
    }
    let gens = lines
        .map(|(ln, line)| {
            parse_cycles(degree, line).map_err(|e| match e {
                Error::Parse { .. } => e,
                other => parse_err(ln, other.to_string()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(degree, gens)
}

pub fn format_generators(g: &PermGroup) -> String {
    let mut out = format!("{}\n", g.degree());
    for s in g.generators() {
        out.push_str(&format_cycles(s));
        out.push('\n');
    }
    out
}

pub fn read_generators(path: impl AsRef<Path>) -> Result<PermGroup> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_generators(&text)
}

/// Points of a subset, sorted, 1-based, space-separated.
pub fn format_subset(points: &[usize]) -> String {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let pts: Vec<String> = sorted.iter().map(|x| (x + 1).to_string()).collect();
    pts.join(" ")
}

/// Parses a subset written as 1-based points; returns sorted 0-based points.
pub fn parse_subset(text: &str, degree: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (ln, line) in content_lines(text) {
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let x: usize = tok
                .parse()
                .map_err(|_| parse_err(ln, format!("bad point {tok:?}")))?;
            if x == 0 || x > degree {
                return Err(Error::PointOutOfRange { point: x, degree });
            }
            out.push(x - 1);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `point:color` lines, both 1-based.
pub fn format_coloring(colors: &[usize]) -> String {
    colors
        .iter()
        .enumerate()
        .map(|(x, c)| format!("{}:{}\n", x + 1, c + 1))
        .collect()
}

/// Parses `point:color` lines; every point of `0..degree` must appear once.
pub fn parse_coloring(text: &str, degree: usize) -> Result<Vec<usize>> {
    let mut colors = vec![None; degree];
    for (ln, line) in content_lines(text) {
        let (p, c) = line
            .split_once(':')
            .ok_or_else(|| parse_err(ln, "expected point:color"))?;
        let p: usize = p.trim().parse().map_err(|_| parse_err(ln, "bad point"))?;
        let c: usize = c.trim().parse().map_err(|_| parse_err(ln, "bad color"))?;
        if p == 0 || p > degree {
            return Err(Error::PointOutOfRange { point: p, degree });
        }
        if c == 0 {
            return Err(parse_err(ln, "colors are 1-based"));
        }
        if colors[p - 1].replace(c - 1).is_some() {
            return Err(parse_err(ln, format!("point {p} colored twice")));
        }
    }
    colors
        .into_iter()
        .enumerate()
        .map(|(x, c)| c.ok_or_else(|| parse_err(0, format!("point {} has no color", x + 1))))
        .collect()
}

/// Parses `source -> image` lines.
pub fn parse_map_table(
    text: &str,
    source_degree: usize,
    target_degree: usize,
) -> Result<Vec<(Permutation, Permutation)>> {
    content_lines(text)
        .map(|(ln, line)| {
            let (a, b) = line
                .split_once("->")
                .ok_or_else(|| parse_err(ln, "expected `source -> image`"))?;
            let wrap = |e: Error| match e {
                Error::Parse { .. } => e,
                other => parse_err(ln, other.to_string()),
            };
            Ok((
                parse_cycles(source_degree, a).map_err(wrap)?,
                parse_cycles(target_degree, b).map_err(wrap)?,
            ))
        })
        .collect()
}

pub fn format_map_table(pairs: &[(Permutation, Permutation)]) -> String {
    pairs
        .iter()
        .map(|(a, b)| format!("{} -> {}\n", format_cycles(a), format_cycles(b)))
        .collect()
}

/// Images of the generators of `source`, looked up in a map table.
pub fn images_from_table(source: &PermGroup, table: &[(Permutation, Permutation)]) -> Result<Vec<Permutation>> {
    source
        .generators()
        .iter()
        .map(|g| {
            table
                .iter()
                .find(|(a, _)| a == g)
                .map(|(_, b)| b.clone())
                .ok_or_else(|| parse_err(0, format!("no image given for generator {}", format_cycles(g))))
        })
        .collect()
}
