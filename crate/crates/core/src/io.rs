//! The `momst 1` graph text format and run-record CSV output.
//!
//! ```text
//! momst 1
//! n m d
//! u v w1 [w2]      (m lines, 0-based vertices, edge ids in line order)
//! ```

use std::io::{BufRead, Write};

use crate::ea::RunRecord;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::weight::{Weight, WeightVec};

const HEADER: &str = "momst 1";

pub fn write_graph<W: Weight, Wr: Write>(graph: &Graph<W>, mut out: Wr) -> Result<()> {
    writeln!(out, "{HEADER}")?;
    writeln!(out, "{} {} {}", graph.n(), graph.m(), graph.weight_dim())?;
    for e in graph.edges() {
        write!(out, "{} {}", e.u, e.v)?;
        for w in e.weight.as_slice() {
            write!(out, " {w}")?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

/// A graph read from disk: integral weights stay exact.
#[derive(Clone, Debug)]
pub enum AnyGraph {
    Int(Graph<i64>),
    Float(Graph<f64>),
}

impl AnyGraph {
    pub fn n(&self) -> usize {
        match self {
            AnyGraph::Int(g) => g.n(),
            AnyGraph::Float(g) => g.n(),
        }
    }

    pub fn weight_dim(&self) -> usize {
        match self {
            AnyGraph::Int(g) => g.weight_dim(),
            AnyGraph::Float(g) => g.weight_dim(),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn build<W: Weight>(n: usize, rows: &[(usize, usize, Vec<&str>)], first_line: usize) -> Result<Graph<W>> {
    let mut edges = Vec::with_capacity(rows.len());
    for (i, (u, v, ws)) in rows.iter().enumerate() {
        let line = first_line + i;
        let comps = ws
            .iter()
            .map(|s| W::parse_weight(s).ok_or_else(|| parse_err(line, format!("bad weight '{s}'"))))
            .collect::<Result<Vec<W>>>()?;
        edges.push(Edge { u: *u, v: *v, weight: WeightVec::from_slice(&comps)? });
    }
    Graph::new(n, edges)
}

/// Reads a graph, choosing integer weights when every weight is integral.
pub fn read_graph<R: BufRead>(input: R) -> Result<AnyGraph> {
    let lines: Vec<String> = input.lines().collect::<std::io::Result<_>>()?;
    let mut content = lines.iter().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    match content.next() {
        Some((_, HEADER)) => {}
        Some((line, other)) => return Err(parse_err(line, format!("expected '{HEADER}', found '{other}'"))),
        None => return Err(parse_err(1, "empty graph file")),
    }
    let (hline, header) = content.next().ok_or_else(|| parse_err(2, "missing 'n m d' line"))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(hline, format!("bad number '{t}'"))))
        .collect::<Result<_>>()?;
    let [n, m, d] = nums[..] else {
        return Err(parse_err(hline, "expected 'n m d'"));
    };
    if !(1..=2).contains(&d) {
        return Err(parse_err(hline, format!("weight dimension must be 1 or 2, got {d}")));
    }
    let mut rows = Vec::with_capacity(m);
    let mut first_line = hline + 1;
    for (k, (line, text)) in content.enumerate() {
        if k == 0 {
            first_line = line;
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != 2 + d {
            return Err(parse_err(line, format!("expected {} fields, found {}", 2 + d, toks.len())));
        }
        let vertex = |t: &str| t.parse::<usize>().map_err(|_| parse_err(line, format!("bad vertex '{t}'")));
        rows.push((vertex(toks[0])?, vertex(toks[1])?, toks[2..].to_vec()));
    }
    if rows.len() != m {
        return Err(parse_err(hline, format!("header announces {m} edges, found {}", rows.len())));
    }
    let integral = rows.iter().all(|(_, _, ws)| ws.iter().all(|s| s.parse::<i64>().is_ok()));
    if integral {
        Ok(AnyGraph::Int(build(n, &rows, first_line)?))
    } else {
        Ok(AnyGraph::Float(build(n, &rows, first_line)?))
    }
}

pub fn write_records_csv<Wr: Write>(out: Wr, records: &[RunRecord]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(RunRecord::CSV_HEADER)?;
    for r in records {
        wtr.write_record(r.csv_row())?;
    }
    wtr.flush()?;
    Ok(())
}

/// Writes weight vectors as CSV `w1,w2`.
pub fn write_front_csv<W: Weight, Wr: Write>(out: Wr, front: &[WeightVec<W>]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["w1", "w2"])?;
    for p in front {
        wtr.write_record([p.get(0).to_string(), p.get(1).to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Reads a `w1,w2` front table.
pub fn read_front_csv<W: Weight, R: std::io::Read>(input: R) -> Result<Vec<WeightVec<W>>> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let comp = |k: usize| {
            row.get(k).and_then(|s| W::parse_weight(s.trim())).ok_or_else(|| parse_err(line, "bad front weight"))
        };
        out.push(WeightVec::pair(comp(0)?, comp(1)?));
    }
    Ok(out)
}
