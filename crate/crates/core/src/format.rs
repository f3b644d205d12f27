//! Plain-text instance and partition files.
//!
//! Instance file:
//!
//! ```text
//! lpmwc 1
//! # kind fig1
//! # a 64
//! p 2
//! graph 6 14
//! terminals 5 0 2 3 4 5
//! 2 3 64
//! ...
//! ```
//!
//! `#` starts a comment. Whole-line comments are kept, in order, and
//! written back right after the header; gadget generators use them for
//! `kind`, parameters and `threshold`. Vertex ids are 0-based, `p` is a
//! decimal or `inf`.
//!
//! Partition file: one `part <i> <id...>` line per part (i is 1-based,
//! part i holds t_i), or one `frac <v> <x_1> ... <x_k>` line per vertex.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, Exponent, Graph, Instance, MultiwayCut};
use crate::instances::{GadgetKind, GadgetMeta, Generated};
use crate::relax::FractionalAssignment;

pub const HEADER: &str = "lpmwc 1";

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub instance: Instance,
    pub comments: Vec<String>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| perr(line, format!("bad {what} '{tok}'")))
}

fn format_p(p: Exponent) -> String {
    p.to_string()
}

fn parse_p(tok: Option<&str>, line: usize) -> Result<Exponent> {
    match tok {
        Some("inf") => Ok(Exponent::Infinity),
        other => {
            let v: f64 = num(other, line, "exponent")?;
            if !v.is_finite() {
                return Err(perr(line, "finite exponent expected (use 'inf')"));
            }
            Exponent::finite(v).map_err(|e| perr(line, e.to_string()))
        }
    }
}

impl InstanceFile {
    pub fn plain(instance: Instance) -> Self {
        Self {
            instance,
            comments: Vec::new(),
        }
    }

    pub fn from_generated(g: &Generated) -> Self {
        Self {
            instance: g.instance.clone(),
            comments: meta_comments(&g.meta),
        }
    }

    pub fn serialize(&self) -> String {
        let inst = &self.instance;
        let mut out = String::new();
        out.push_str(HEADER);
        out.push('\n');
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "p {}", format_p(inst.p));
        let _ = writeln!(out, "graph {} {}", inst.n(), inst.graph.edges().len());
        let _ = write!(out, "terminals {}", inst.k());
        for t in &inst.terminals {
            let _ = write!(out, " {t}");
        }
        out.push('\n');
        for e in inst.graph.edges() {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut comments = Vec::new();
        let mut header = false;
        let mut p = None;
        let mut dims: Option<(usize, usize)> = None;
        let mut terminals: Option<Vec<usize>> = None;
        let mut edges = Vec::new();
        let mut last_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let trimmed = raw.trim();
            if let Some(c) = trimmed.strip_prefix('#') {
                comments.push(c.trim().to_string());
                continue;
            }
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut toks = body.split_whitespace();
            if !header {
                if body.split_whitespace().collect::<Vec<_>>() != ["lpmwc", "1"] {
                    return Err(perr(line, format!("expected header '{HEADER}'")));
                }
                header = true;
                continue;
            }
            match toks.next() {
                Some("p") if p.is_none() => p = Some(parse_p(toks.next(), line)?),
                Some("graph") if dims.is_none() => {
                    dims = Some((
                        num(toks.next(), line, "vertex count")?,
                        num(toks.next(), line, "edge count")?,
                    ));
                }
                Some("terminals") if terminals.is_none() => {
                    let k: usize = num(toks.next(), line, "terminal count")?;
                    let ids: Vec<usize> = toks
                        .by_ref()
                        .map(|t| {
                            t.parse()
                                .map_err(|_| perr(line, format!("bad terminal id '{t}'")))
                        })
                        .collect::<Result<_>>()?;
                    if ids.len() != k {
                        return Err(perr(
                            line,
                            format!("{k} terminals announced, {} listed", ids.len()),
                        ));
                    }
                    terminals = Some(ids);
                    continue;
                }
                Some(tok) if dims.is_some() && terminals.is_some() => {
                    let u = num(Some(tok), line, "endpoint")?;
                    let v = num(toks.next(), line, "endpoint")?;
                    let w = num(toks.next(), line, "weight")?;
                    edges.push(Edge { u, v, w });
                }
                Some(tok) => return Err(perr(line, format!("unexpected '{tok}'"))),
                None => unreachable!(),
            }
            if toks.next().is_some() {
                return Err(perr(line, "trailing tokens"));
            }
        }

        if !header {
            return Err(perr(last_line.max(1), format!("missing header '{HEADER}'")));
        }
        let p = p.ok_or_else(|| perr(last_line, "missing 'p' line"))?;
        let (n, m) = dims.ok_or_else(|| perr(last_line, "missing 'graph' line"))?;
        let terminals = terminals.ok_or_else(|| perr(last_line, "missing 'terminals' line"))?;
        if edges.len() != m {
            return Err(perr(
                last_line,
                format!("{m} edges announced, {} found", edges.len()),
            ));
        }
        let graph = Graph::new(n, edges).map_err(|e| perr(last_line, e.to_string()))?;
        let instance =
            Instance::new(graph, terminals, p).map_err(|e| perr(last_line, e.to_string()))?;
        Ok(Self { instance, comments })
    }

    /// Gadget metadata recovered from `kind`/param/`threshold` comments.
    pub fn meta(&self) -> Option<GadgetMeta> {
        let mut kind = None;
        let mut params = Vec::new();
        let mut threshold = None;
        for c in &self.comments {
            let mut it = c.split_whitespace();
            let (Some(key), Some(val), None) = (it.next(), it.next(), it.next()) else {
                continue;
            };
            match key {
                "kind" => kind = GadgetKind::from_name(val),
                "threshold" => threshold = val.parse().ok(),
                _ => {
                    if let Ok(v) = val.parse::<f64>() {
                        params.push((key.to_string(), v));
                    }
                }
            }
        }
        Some(GadgetMeta {
            kind: kind?,
            params,
            threshold,
        })
    }
}

pub fn meta_comments(meta: &GadgetMeta) -> Vec<String> {
    let mut out = vec![format!("kind {}", meta.kind.name())];
    out.extend(meta.params.iter().map(|(k, v)| format!("{k} {v}")));
    if let Some(t) = meta.threshold {
        out.push(format!("threshold {t}"));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum PartitionFile {
    /// (1-based part index, vertex ids).
    Integral(Vec<(usize, Vec<usize>)>),
    /// (vertex, row of k memberships).
    Fractional(Vec<(usize, Vec<f64>)>),
}

impl PartitionFile {
    pub fn from_cut(cut: &MultiwayCut) -> Self {
        PartitionFile::Integral(
            cut.parts()
                .iter()
                .enumerate()
                .map(|(i, p)| (i + 1, p.to_vec()))
                .collect(),
        )
    }

    pub fn from_fractional(x: &FractionalAssignment) -> Self {
        PartitionFile::Fractional((0..x.n()).map(|v| (v, x.row(v).to_vec())).collect())
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        match self {
            PartitionFile::Integral(parts) => {
                for (i, ids) in parts {
                    let _ = write!(out, "part {i}");
                    for v in ids {
                        let _ = write!(out, " {v}");
                    }
                    out.push('\n');
                }
            }
            PartitionFile::Fractional(rows) => {
                for (v, row) in rows {
                    let _ = write!(out, "frac {v}");
                    for x in row {
                        let _ = write!(out, " {x}");
                    }
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = Vec::new();
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut toks = body.split_whitespace();
            match toks.next() {
                Some("part") => {
                    let i: usize = num(toks.next(), line, "part index")?;
                    let ids = toks
                        .map(|t| {
                            t.parse()
                                .map_err(|_| perr(line, format!("bad vertex id '{t}'")))
                        })
                        .collect::<Result<Vec<usize>>>()?;
                    parts.push((i, ids));
                }
                Some("frac") => {
                    let v: usize = num(toks.next(), line, "vertex id")?;
                    let row = toks
                        .map(|t| {
                            t.parse()
                                .map_err(|_| perr(line, format!("bad value '{t}'")))
                        })
                        .collect::<Result<Vec<f64>>>()?;
                    rows.push((v, row));
                }
                Some(tok) => return Err(perr(line, format!("unexpected '{tok}'"))),
                None => unreachable!(),
            }
            if !parts.is_empty() && !rows.is_empty() {
                return Err(perr(line, "cannot mix 'part' and 'frac' lines"));
            }
        }
        if rows.is_empty() {
            Ok(PartitionFile::Integral(parts))
        } else {
            Ok(PartitionFile::Fractional(rows))
        }
    }

    pub fn to_cut(&self, inst: &Instance) -> Result<MultiwayCut> {
        let PartitionFile::Integral(parts) = self else {
            return Err(Error::DimensionMismatch(
                "expected an integral partition".into(),
            ));
        };
        let n = inst.n();
        let k = inst.k();
        let mut assignment = vec![usize::MAX; n];
        for (i, ids) in parts {
            if *i == 0 || *i > k {
                return Err(Error::DimensionMismatch(format!(
                    "part index {i} outside 1..={k}"
                )));
            }
            for &v in ids {
                if v >= n {
                    return Err(Error::DimensionMismatch(format!(
                        "vertex {v} outside 0..{n}"
                    )));
                }
                if assignment[v] != usize::MAX {
                    return Err(Error::InvalidCut(format!("vertex {v} listed twice")));
                }
                assignment[v] = i - 1;
            }
        }
        if let Some(v) = assignment.iter().position(|&a| a == usize::MAX) {
            return Err(Error::InvalidCut(format!(
                "vertex {v} missing from the partition"
            )));
        }
        MultiwayCut::new(inst, assignment)
    }

    pub fn to_fractional(&self, inst: &Instance) -> Result<FractionalAssignment> {
        let PartitionFile::Fractional(rows) = self else {
            return Err(Error::DimensionMismatch(
                "expected a fractional assignment".into(),
            ));
        };
        let n = inst.n();
        let mut dense: Vec<Option<Vec<f64>>> = vec![None; n];
        for (v, row) in rows {
            if *v >= n {
                return Err(Error::DimensionMismatch(format!(
                    "vertex {v} outside 0..{n}"
                )));
            }
            if row.len() != inst.k() {
                return Err(Error::DimensionMismatch(format!(
                    "row for vertex {v} has {} entries, k = {}",
                    row.len(),
                    inst.k()
                )));
            }
            if dense[*v].replace(row.clone()).is_some() {
                return Err(Error::DimensionMismatch(format!("vertex {v} listed twice")));
            }
        }
        let rows = dense
            .into_iter()
            .enumerate()
            .map(|(v, r)| r.ok_or_else(|| Error::DimensionMismatch(format!("vertex {v} missing"))))
            .collect::<Result<Vec<_>>>()?;
        FractionalAssignment::from_rows(rows)
    }
}
