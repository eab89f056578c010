//! Plain-text matrix files.
//!
//! ```text
//! %boolmac-matrix v1
//! flavor boolean
//! degree total 2
//! num_vars 2
//! dims 8 3
//! col 0 1,0
//! row 0 0 0,0
//! entry 0 0 1 1
//! rhs 0 1 1
//! ```
//!
//! Indices are 0-based; exponent vectors are comma separated; `entry` and
//! `rhs` carry numerator and denominator. Later lines starting with `%` are
//! comments.

use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::{DegreeKind, Flavor, LabeledSparseMatrix, MacaulaySystem, RowLabel};
use crate::error::{Error, Result};
use crate::polysys::Monomial;
use crate::rational::Q;

const MAGIC: &str = "%boolmac-matrix v1";

fn exps(m: &Monomial) -> String {
    m.exps().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub fn write_matrix<W: Write>(ms: &MacaulaySystem, mut w: W) -> std::io::Result<()> {
    let m = &ms.matrix;
    writeln!(w, "{MAGIC}")?;
    writeln!(w, "flavor {}", ms.flavor)?;
    writeln!(w, "degree {} {}", ms.kind.name(), ms.kind.d())?;
    writeln!(w, "num_vars {}", ms.num_vars)?;
    writeln!(w, "dims {} {}", m.num_rows(), m.num_cols())?;
    for (c, label) in m.col_labels.iter().enumerate() {
        writeln!(w, "col {c} {}", exps(label))?;
    }
    for (r, label) in m.row_labels.iter().enumerate() {
        writeln!(w, "row {r} {} {}", label.poly_index, exps(&label.multiplier))?;
    }
    for (r, row) in m.rows.iter().enumerate() {
        for (c, v) in row {
            writeln!(w, "entry {r} {c} {} {}", v.numer(), v.denom())?;
        }
    }
    for (r, v) in &ms.b {
        writeln!(w, "rhs {r} {} {}", v.numer(), v.denom())?;
    }
    Ok(())
}

struct Cursor<'a> {
    line: usize,
    fields: std::str::SplitWhitespace<'a>,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(format!("line {}", self.line), msg)
    }

    fn next(&mut self) -> Result<&'a str> {
        let line = self.line;
        self.fields
            .next()
            .ok_or_else(|| Error::parse(format!("line {line}"), "missing field"))
    }

    fn usize(&mut self) -> Result<usize> {
        let s = self.next()?.to_string();
        s.parse().map_err(|_| self.err(format!("bad index {s:?}")))
    }

    fn int(&mut self) -> Result<BigInt> {
        let s = self.next()?.to_string();
        s.parse().map_err(|_| self.err(format!("bad integer {s:?}")))
    }

    fn rational(&mut self) -> Result<Q> {
        let n = self.int()?;
        let d = self.int()?;
        if d.is_zero() {
            return Err(self.err("zero denominator"));
        }
        Ok(Q::new(n, d))
    }

    fn monomial(&mut self, n: usize) -> Result<Monomial> {
        let s = self.next()?.to_string();
        let e: Vec<u32> = if s.is_empty() || n == 0 {
            Vec::new()
        } else {
            s.split(',')
                .map(|x| x.parse().map_err(|_| self.err(format!("bad exponent list {s:?}"))))
                .collect::<Result<_>>()?
        };
        if e.len() != n {
            return Err(self.err(format!("expected {n} exponents, found {}", e.len())));
        }
        Ok(Monomial::new(e))
    }
}

pub fn read_matrix<R: BufRead>(r: R) -> Result<MacaulaySystem> {
    let lines: Vec<String> = r
        .lines()
        .collect::<std::io::Result<_>>()
        .map_err(|e| Error::parse("input", e.to_string()))?;
    if lines.first().map(|l| l.trim()) != Some(MAGIC) {
        return Err(Error::parse("line 1", format!("expected {MAGIC:?}")));
    }
    let mut flavor = None;
    let mut kind = None;
    let mut num_vars = None;
    let mut dims = None;
    let mut cols: Vec<Option<Monomial>> = Vec::new();
    let mut row_labels: Vec<Option<RowLabel>> = Vec::new();
    let mut rows: Vec<Vec<(usize, Q)>> = Vec::new();
    let mut b = Vec::new();
    for (i, text) in lines.iter().enumerate().skip(1) {
        let mut cur = Cursor {
            line: i + 1,
            fields: text.split_whitespace(),
        };
        let Some(tag) = text.split_whitespace().next() else { continue };
        cur.fields.next();
        let need_dims = |cur: &Cursor, dims: Option<(usize, usize)>| dims.ok_or_else(|| cur.err("dims must come first"));
        match tag {
            "flavor" => {
                flavor = Some(match cur.next()? {
                    "plain" => Flavor::Plain,
                    "boolean" => Flavor::Boolean,
                    s => return Err(cur.err(format!("unknown flavor {s:?}"))),
                })
            }
            "degree" => {
                let name = cur.next()?.to_string();
                let d = cur.usize()? as u32;
                kind = Some(match name.as_str() {
                    "max" => DegreeKind::Max(d),
                    "total" => DegreeKind::Total(d),
                    s => return Err(cur.err(format!("unknown degree kind {s:?}"))),
                });
            }
            "num_vars" => num_vars = Some(cur.usize()?),
            "dims" => {
                let (nr, nc) = (cur.usize()?, cur.usize()?);
                dims = Some((nr, nc));
                cols = vec![None; nc];
                row_labels = vec![None; nr];
                rows = vec![Vec::new(); nr];
            }
            "col" => {
                let (_, nc) = need_dims(&cur, dims)?;
                let c = cur.usize()?;
                if c >= nc {
                    return Err(cur.err(format!("column {c} out of range")));
                }
                let n = num_vars.ok_or_else(|| cur.err("num_vars must come first"))?;
                cols[c] = Some(cur.monomial(n)?);
            }
            "row" => {
                let (nr, _) = need_dims(&cur, dims)?;
                let r = cur.usize()?;
                if r >= nr {
                    return Err(cur.err(format!("row {r} out of range")));
                }
                let poly_index = cur.usize()?;
                let n = num_vars.ok_or_else(|| cur.err("num_vars must come first"))?;
                row_labels[r] = Some(RowLabel {
                    multiplier: cur.monomial(n)?,
                    poly_index,
                });
            }
            "entry" => {
                let (nr, nc) = need_dims(&cur, dims)?;
                let (r, c) = (cur.usize()?, cur.usize()?);
                if r >= nr || c >= nc {
                    return Err(cur.err(format!("entry ({r}, {c}) out of range")));
                }
                let v = cur.rational()?;
                if !v.is_zero() {
                    rows[r].push((c, v));
                }
            }
            "rhs" => {
                let (nr, _) = need_dims(&cur, dims)?;
                let r = cur.usize()?;
                if r >= nr {
                    return Err(cur.err(format!("rhs row {r} out of range")));
                }
                let v = cur.rational()?;
                if !v.is_zero() {
                    b.push((r, v));
                }
            }
            s if s.starts_with('%') => continue,
            s => return Err(cur.err(format!("unknown record {s:?}"))),
        }
        if cur.fields.next().is_some() {
            return Err(cur.err("trailing fields"));
        }
    }
    let missing = |what: &str| Error::parse("header", format!("missing {what}"));
    let flavor = flavor.ok_or_else(|| missing("flavor"))?;
    let kind = kind.ok_or_else(|| missing("degree"))?;
    let num_vars = num_vars.ok_or_else(|| missing("num_vars"))?;
    dims.ok_or_else(|| missing("dims"))?;
    let col_labels = cols
        .into_iter()
        .enumerate()
        .map(|(c, m)| m.ok_or_else(|| missing(&format!("col {c}"))))
        .collect::<Result<_>>()?;
    let row_labels = row_labels
        .into_iter()
        .enumerate()
        .map(|(r, l)| l.ok_or_else(|| missing(&format!("row {r}"))))
        .collect::<Result<_>>()?;
    for row in &mut rows {
        row.sort_by_key(|e| e.0);
        if row.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::parse("entries", "duplicate entry"));
        }
    }
    b.sort_by_key(|e| e.0);
    Ok(MacaulaySystem {
        matrix: LabeledSparseMatrix {
            row_labels,
            col_labels,
            rows,
        },
        b,
        kind,
        flavor,
        num_vars,
    })
}
