//! Graph and permutation interchange formats.
//!
//! Edge list: a header line `n m`, then one `u v` line per edge with `u < v`,
//! sorted lexicographically. Sparse6: the standard `:`-prefixed encoding,
//! without the optional `>>sparse6<<` header, terminated by a newline.
//! Permutations: one generator per line, images as space-separated integers.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Perm;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphFormat {
    EdgeList,
    Sparse6,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" => Ok(GraphFormat::EdgeList),
            "sparse6" => Ok(GraphFormat::Sparse6),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

impl GraphFormat {
    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::EdgeList => "edges",
            GraphFormat::Sparse6 => "s6",
        }
    }
}

pub fn export_graph(g: &Graph, format: GraphFormat) -> Vec<u8> {
    match format {
        GraphFormat::EdgeList => write_edge_list(g).into_bytes(),
        GraphFormat::Sparse6 => write_sparse6(g),
    }
}

pub fn parse_graph(bytes: &[u8], format: GraphFormat) -> Result<Graph> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Sparse6 => parse_sparse6(text),
    }
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.order(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn parse_numbers(line: &str, line_no: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|e| Error::Parse { line: line_no, msg: format!("{t:?}: {e}") }))
        .collect()
}

/// Parses an edge list. Line numbers in errors are 1-based and offset by
/// `first_line - 1`.
pub(crate) fn parse_edge_list_lines<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Graph> {
    let mut lines = lines.filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let nums = parse_numbers(header, hline)?;
    let [n, m] = nums[..] else {
        return Err(Error::Parse { line: hline, msg: "header must be `n m`".into() });
    };
    let mut edges = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let nums = parse_numbers(line, line_no)?;
        let [u, v] = nums[..] else {
            return Err(Error::Parse { line: line_no, msg: "edge line must be `u v`".into() });
        };
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse { line: hline, msg: format!("header declares {m} edges, found {}", edges.len()) });
    }
    Graph::from_edges(n, &edges).map_err(|e| Error::Parse { line: hline, msg: e.to_string() })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    parse_edge_list_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
}

fn size_bits(n: usize) -> usize {
    let mut k = 1;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn write_sparse6(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let k = size_bits(n);
    let mut bits: Vec<bool> = Vec::new();
    let push = |bits: &mut Vec<bool>, x: usize| {
        for i in (0..k).rev() {
            bits.push((x >> i) & 1 == 1);
        }
    };
    let mut edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (v, u)).collect();
    edges.sort_unstable();
    let mut cur = 0;
    for (v, u) in edges {
        if v == cur {
            bits.push(false);
            push(&mut bits, u);
        } else if v == cur + 1 {
            cur += 1;
            bits.push(true);
            push(&mut bits, u);
        } else {
            cur = v;
            bits.push(true);
            push(&mut bits, v);
            bits.push(false);
            push(&mut bits, u);
        }
    }
    let pad = (6 - bits.len() % 6) % 6;
    if k < 6 && n == (1 << k) && pad >= k && cur + 1 < n {
        bits.push(false);
    }
    let pad = (6 - bits.len() % 6) % 6;
    bits.extend(std::iter::repeat_n(true, pad));

    let mut out = vec![b':'];
    encode_size(n, &mut out);
    for chunk in bits.chunks(6) {
        let v = chunk.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
        out.push(v + 63);
    }
    out.push(b'\n');
    out
}

pub fn parse_sparse6(text: &str) -> Result<Graph> {
    let err = |msg: &str| Error::Parse { line: 1, msg: msg.to_string() };
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>sparse6<<").unwrap_or(line);
    let body = line.strip_prefix(':').ok_or_else(|| err("sparse6 data must start with ':'"))?;
    let data: Vec<u8> = body.bytes().map(|b| b.wrapping_sub(63)).collect();
    if data.iter().any(|&d| d > 63) {
        return Err(err("byte outside the sparse6 range"));
    }
    let (n, rest) = match data.as_slice() {
        [63, 63, r @ ..] if r.len() >= 6 => (r[..6].iter().fold(0usize, |a, &d| (a << 6) | d as usize), &r[6..]),
        [63, r @ ..] if r.len() >= 3 => (r[..3].iter().fold(0usize, |a, &d| (a << 6) | d as usize), &r[3..]),
        [d, r @ ..] if *d < 63 => (*d as usize, r),
        _ => return Err(err("truncated size field")),
    };
    let k = size_bits(n);
    let bits: Vec<bool> = rest.iter().flat_map(|&d| (0..6).rev().map(move |i| (d >> i) & 1 == 1)).collect();

    let mut edges = Vec::new();
    let mut pos = 0;
    let mut v = 0usize;
    while pos + 1 + k <= bits.len() {
        let b = bits[pos];
        let x = bits[pos + 1..pos + 1 + k].iter().fold(0usize, |a, &bit| (a << 1) | bit as usize);
        pos += 1 + k;
        if b {
            v += 1;
        }
        if x >= n || v >= n {
            break;
        } else if x > v {
            v = x;
        } else {
            edges.push((x, v));
        }
    }
    Graph::from_edges(n, &edges).map_err(|e| err(&e.to_string()))
}

pub fn write_perms(perms: &[Perm]) -> String {
    let mut out = String::new();
    for p in perms {
        let line: Vec<String> = p.images().iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub(crate) fn parse_perm_lines<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Vec<Perm>> {
    let mut perms = Vec::new();
    for (line_no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let images = parse_numbers(line, line_no)?;
        let perm = Perm::from_images(images).map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
        if let Some(first) = perms.first().map(Perm::degree) {
            if perm.degree() != first {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("degree {} differs from {first}", perm.degree()),
                });
            }
        }
        perms.push(perm);
    }
    Ok(perms)
}

pub fn parse_perms(text: &str) -> Result<Vec<Perm>> {
    parse_perm_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
}
