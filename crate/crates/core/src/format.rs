//! Text file format for matrices and vectors.
//!
//! ```text
//! kybermat v1 kind=matrix k=2 n=256 q=3329 L=2 domain=ntt order=bitrev
//! entry i=0 j=0 phase=0:
//! 1402 17 3001 ...
//! entry i=0 j=0 phase=1:
//! ...
//! ```
//!
//! Matrices are stored in the NTT domain, one line of residues per phase.
//! Vectors (`kind=vector` for inputs, `kind=output` for results) are stored in
//! the coefficient domain with `L=1`, `j=0` and `phase=0` on every entry.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matvec::{NttMatrix, PolyVector, N};
use crate::modarith::{Residue, Q};
use crate::ntt::{NttVector, Polynomial, ORDER_NAME};
use crate::polyphase::Parallelism;

const MAGIC: &str = "kybermat v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorKind {
    Vector,
    Output,
}

impl VectorKind {
    fn name(self) -> &'static str {
        match self {
            VectorKind::Vector => "vector",
            VectorKind::Output => "output",
        }
    }
}

fn header(kind: &str, k: usize, l: usize, domain: &str, order: &str) -> String {
    format!("{MAGIC} kind={kind} k={k} n={N} q={Q} L={l} domain={domain} order={order}\n")
}

fn push_entry(out: &mut String, i: usize, j: usize, phase: usize, values: &[Residue]) {
    writeln!(out, "entry i={i} j={j} phase={phase}:").expect("writing to a String");
    let line: Vec<String> = values.iter().map(Residue::to_string).collect();
    out.push_str(&line.join(" "));
    out.push('\n');
}

pub fn matrix_to_string(m: &NttMatrix) -> String {
    let mut out = header("matrix", m.k(), m.parallelism().phases(), "ntt", ORDER_NAME);
    for i in 0..m.k() {
        for j in 0..m.k() {
            for (t, phase) in m.entry(i, j).iter().enumerate() {
                push_entry(&mut out, i, j, t, phase.evals());
            }
        }
    }
    out
}

pub fn vector_to_string(v: &PolyVector, kind: VectorKind) -> String {
    let mut out = header(kind.name(), v.k(), 1, "coeff", "natural");
    for (i, p) in v.entries().iter().enumerate() {
        push_entry(&mut out, i, 0, 0, p.coeffs());
    }
    out
}

struct Lines<'a> {
    path: &'a Path,
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, path: &'a Path) -> Self {
        Lines { path, iter: text.lines().enumerate(), last: 0 }
    }

    fn err(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Parse { path: self.path.to_path_buf(), line, message: message.into() }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.iter.next() {
            Some((idx, text)) => {
                self.last = idx + 1;
                Ok((idx + 1, text))
            }
            None => Err(self.err(self.last + 1, format!("unexpected end of file, expected {what}"))),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        for (idx, text) in self.iter.by_ref() {
            if !text.trim().is_empty() {
                return Err(Error::Parse {
                    path: self.path.to_path_buf(),
                    line: idx + 1,
                    message: "unexpected content after last entry".into(),
                });
            }
        }
        Ok(())
    }

    fn entry_marker(&mut self, i: usize, j: usize, phase: usize) -> Result<()> {
        let (line, text) = self.next_line("an entry marker")?;
        let expected = format!("entry i={i} j={j} phase={phase}:");
        if text.trim_end() != expected {
            return Err(self.err(line, format!("expected `{expected}`, found `{}`", text.trim_end())));
        }
        Ok(())
    }

    fn residues(&mut self, count: usize) -> Result<Vec<Residue>> {
        let (line, text) = self.next_line("a line of residues")?;
        let values = text
            .split_ascii_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .ok()
                    .and_then(Residue::try_from_canonical)
                    .ok_or_else(|| self.err(line, format!("`{tok}` is not a residue in [0, {Q})")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != count {
            return Err(self.err(line, format!("expected {count} residues, found {}", values.len())));
        }
        Ok(values)
    }
}

struct Header {
    kind: String,
    k: usize,
    l: usize,
}

fn parse_header(lines: &mut Lines<'_>, domain: &str, order: &str) -> Result<Header> {
    let (line, text) = lines.next_line("a header")?;
    let rest = text.strip_prefix(MAGIC).ok_or_else(|| lines.err(line, format!("missing `{MAGIC}` header")))?;
    let mut fields = HashMap::new();
    for tok in rest.split_ascii_whitespace() {
        let (key, value) =
            tok.split_once('=').ok_or_else(|| lines.err(line, format!("malformed header field `{tok}`")))?;
        fields.insert(key, value);
    }
    let field =
        |key: &str| fields.get(key).copied().ok_or_else(|| lines.err(line, format!("header is missing `{key}`")));
    let number = |key: &str| -> Result<usize> {
        let v = field(key)?;
        v.parse().map_err(|_| lines.err(line, format!("`{key}={v}` is not a number")))
    };
    let require = |key: &str, expected: &str| -> Result<()> {
        let v = field(key)?;
        if v == expected {
            Ok(())
        } else {
            Err(lines.err(line, format!("expected `{key}={expected}`, found `{key}={v}`")))
        }
    };
    require("n", &N.to_string())?;
    require("q", &Q.to_string())?;
    require("domain", domain)?;
    require("order", order)?;
    let k = number("k")?;
    if !(1..=4).contains(&k) {
        return Err(lines.err(line, format!("k={k} is outside 1..=4")));
    }
    Ok(Header { kind: field("kind")?.to_string(), k, l: number("L")? })
}

pub fn parse_matrix(text: &str, path: &Path) -> Result<NttMatrix> {
    let mut lines = Lines::new(text, path);
    let h = parse_header(&mut lines, "ntt", ORDER_NAME)?;
    if h.kind != "matrix" {
        return Err(lines.err(1, format!("expected kind=matrix, found kind={}", h.kind)));
    }
    let l = Parallelism::try_from(h.l).map_err(|e| lines.err(1, e.to_string()))?;
    let len = l.phase_len(N);
    let mut entries = Vec::with_capacity(h.k * h.k);
    for i in 0..h.k {
        for j in 0..h.k {
            let mut phases = Vec::with_capacity(l.phases());
            for t in 0..l.phases() {
                lines.entry_marker(i, j, t)?;
                phases.push(NttVector::from_evals(lines.residues(len)?));
            }
            entries.push(phases);
        }
    }
    lines.expect_end()?;
    NttMatrix::new(h.k, l, entries)
}

pub fn parse_vector(text: &str, path: &Path) -> Result<(VectorKind, PolyVector)> {
    let mut lines = Lines::new(text, path);
    let h = parse_header(&mut lines, "coeff", "natural")?;
    let kind = match h.kind.as_str() {
        "vector" => VectorKind::Vector,
        "output" => VectorKind::Output,
        other => return Err(lines.err(1, format!("expected kind=vector or kind=output, found kind={other}"))),
    };
    if h.l != 1 {
        return Err(lines.err(1, format!("coefficient-domain vectors use L=1, found L={}", h.l)));
    }
    let mut entries = Vec::with_capacity(h.k);
    for i in 0..h.k {
        lines.entry_marker(i, 0, 0)?;
        entries.push(Polynomial::from_coeffs(lines.residues(N)?));
    }
    lines.expect_end()?;
    Ok((kind, PolyVector::new(entries)?))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn read_matrix(path: &Path) -> Result<NttMatrix> {
    parse_matrix(&read(path)?, path)
}

pub fn read_vector(path: &Path) -> Result<(VectorKind, PolyVector)> {
    parse_vector(&read(path)?, path)
}

pub fn write_matrix(path: &Path, m: &NttMatrix) -> Result<()> {
    write(path, &matrix_to_string(m))
}

pub fn write_vector(path: &Path, v: &PolyVector, kind: VectorKind) -> Result<()> {
    write(path, &vector_to_string(v, kind))
}
