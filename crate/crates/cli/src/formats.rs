//! Text file formats. Everything external is 1-based.
//!
//! * Matrix: header `k n`, then `k` lines of `n` space-separated `0`/`1`.
//! * Collection: header `k r`, then `r` lines listing the elements of each
//!   set (a blank line is the empty set).
//! * Certificate: JSON with fields `kind`, `t`, `symbols` in that order.
//! * Campaign: CSV with columns `k,t,n,source`.

use std::fmt::{self, Write as _};

use pircode::search::{CampaignResult, SearchReport};
use pircode::steiner::StWitness;
use pircode::{BitVector, Collection, GenMatrix, PirCertificate, RecoveringSet, StCertificate};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A malformed input, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Splits into lines, dropping the empty piece after a final newline.
fn lines(text: &str) -> Vec<&str> {
    let mut v: Vec<&str> = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    if v.last() == Some(&"") {
        v.pop();
    }
    v
}

fn parse_header(line: Option<&&str>, names: [&str; 2]) -> Result<(usize, usize), ParseError> {
    let Some(line) = line else {
        return err(
            1,
            1,
            format!("missing header \"{} {}\"", names[0], names[1]),
        );
    };
    let toks = tokens(line);
    if toks.len() != 2 {
        let col = toks.get(2).map_or(line.len() + 1, |t| t.0);
        return err(
            1,
            col,
            format!("header must be \"{} {}\"", names[0], names[1]),
        );
    }
    let mut vals = [0usize; 2];
    for (v, ((col, tok), name)) in vals.iter_mut().zip(toks.iter().zip(names)) {
        *v = match tok.parse() {
            Ok(x) => x,
            Err(_) => {
                return err(
                    1,
                    *col,
                    format!("{name} must be a nonnegative integer, found {tok:?}"),
                )
            }
        };
    }
    Ok((vals[0], vals[1]))
}

fn trailing_content(all: &[&str], from: usize) -> Result<(), ParseError> {
    for (i, l) in all.iter().enumerate().skip(from) {
        if let Some((col, _)) = tokens(l).first() {
            return err(i + 1, *col, "unexpected content after the last row");
        }
    }
    Ok(())
}

pub fn parse_matrix(text: &str) -> Result<GenMatrix, ParseError> {
    let all = lines(text);
    let (k, n) = parse_header(all.first(), ["k", "n"])?;
    if k == 0 || n == 0 {
        return err(1, 1, "k and n must be positive");
    }
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let lineno = i + 2;
        let Some(line) = all.get(i + 1) else {
            return err(lineno, 1, format!("expected {k} rows, found {i}"));
        };
        let toks = tokens(line);
        let mut bits = Vec::with_capacity(n);
        for &(col, tok) in &toks {
            match tok {
                "0" => bits.push(false),
                "1" => bits.push(true),
                _ => return err(lineno, col, format!("expected 0 or 1, found {tok:?}")),
            }
        }
        if bits.len() != n {
            let col = toks.get(n).map_or(line.len() + 1, |t| t.0);
            return err(
                lineno,
                col,
                format!("expected {n} entries, found {}", bits.len()),
            );
        }
        rows.push(BitVector::from_bools(&bits));
    }
    trailing_content(&all, k + 1)?;
    Ok(GenMatrix::new(rows).expect("k, n >= 1 and equal row lengths"))
}

pub fn emit_matrix(g: &GenMatrix) -> String {
    let mut s = format!("{} {}\n", g.k(), g.n());
    for row in g.rows() {
        let toks: Vec<&str> = (0..row.len())
            .map(|j| if row.get(j) { "1" } else { "0" })
            .collect();
        s.push_str(&toks.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_collection(text: &str) -> Result<Collection, ParseError> {
    let all = lines(text);
    let (k, r) = parse_header(all.first(), ["k", "r"])?;
    if k == 0 || r == 0 {
        return err(1, 1, "k and r must be positive");
    }
    let mut sets = Vec::with_capacity(r);
    for j in 0..r {
        let lineno = j + 2;
        let Some(line) = all.get(j + 1) else {
            return err(lineno, 1, format!("expected {r} set lines, found {j}"));
        };
        let mut set = BitVector::zeros(k);
        for (col, tok) in tokens(line) {
            let x: usize = match tok.parse() {
                Ok(x) if (1..=k).contains(&x) => x,
                _ => {
                    return err(
                        lineno,
                        col,
                        format!("expected an element in 1..={k}, found {tok:?}"),
                    )
                }
            };
            if set.get(x - 1) {
                return err(lineno, col, format!("element {x} repeated"));
            }
            set.set(x - 1, true);
        }
        sets.push(set);
    }
    trailing_content(&all, r + 1)?;
    Ok(Collection::from_bitsets(k, sets).expect("k >= 1"))
}

pub fn emit_collection(c: &Collection) -> String {
    let mut s = format!("{} {}\n", c.k(), c.r());
    for set in c.sets() {
        let elems: Vec<String> = set.ones_iter().map(|x| (x + 1).to_string()).collect();
        s.push_str(&elems.join(" "));
        s.push('\n');
    }
    s
}

/// Either kind of certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Pir(PirCertificate),
    St(StCertificate),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWitness {
    #[serde(rename = "J")]
    j: Vec<usize>,
    #[serde(rename = "I")]
    i: Vec<usize>,
    #[serde(rename = "V")]
    v: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawCertificate {
    Pir {
        t: usize,
        symbols: Vec<Vec<Vec<usize>>>,
    },
    St {
        t: usize,
        symbols: Vec<RawWitness>,
    },
}

fn json_list(v: impl IntoIterator<Item = usize>) -> String {
    let items: Vec<String> = v.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

/// Emits JSON with one symbol per line, fields in a fixed order.
pub fn emit_certificate(cert: &Certificate) -> String {
    let (kind, t, symbols): (&str, usize, Vec<String>) = match cert {
        Certificate::Pir(c) => (
            "pir",
            c.t,
            c.per_symbol
                .iter()
                .map(|sets| {
                    let inner: Vec<String> = sets
                        .iter()
                        .map(|s| json_list(s.coords().iter().map(|c| c + 1)))
                        .collect();
                    format!("[{}]", inner.join(", "))
                })
                .collect(),
        ),
        Certificate::St(c) => (
            "st",
            c.t,
            c.per_symbol
                .iter()
                .map(|w| {
                    format!(
                        "{{\"J\": {}, \"I\": {}, \"V\": {}}}",
                        json_list(w.members.iter().map(|j| j + 1)),
                        json_list(w.info.iter().map(|x| x + 1)),
                        json_list(w.parity.iter().map(|j| j + 1)),
                    )
                })
                .collect(),
        ),
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{{\n  \"kind\": \"{kind}\",\n  \"t\": {t},\n  \"symbols\": ["
    );
    for (i, sym) in symbols.iter().enumerate() {
        let comma = if i + 1 < symbols.len() { "," } else { "" };
        let _ = writeln!(s, "    {sym}{comma}");
    }
    s.push_str("  ]\n}\n");
    s
}

fn zero_based(v: Vec<usize>, what: &str) -> Result<Vec<usize>, ParseError> {
    v.into_iter()
        .map(|x| {
            x.checked_sub(1).ok_or_else(|| ParseError {
                line: 0,
                column: 0,
                message: format!("{what} indices are 1-based; found 0"),
            })
        })
        .collect()
}

pub fn parse_certificate(text: &str) -> Result<Certificate, ParseError> {
    let raw: RawCertificate = serde_json::from_str(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let loc = |mut e: ParseError| {
        e.line = e.line.max(1);
        e.column = e.column.max(1);
        e
    };
    match raw {
        RawCertificate::Pir { t, symbols } => {
            let mut per_symbol = Vec::with_capacity(symbols.len());
            for sets in symbols {
                let mut out = Vec::with_capacity(sets.len());
                for coords in sets {
                    let coords = zero_based(coords, "coordinate").map_err(loc)?;
                    let set = RecoveringSet::new(coords).ok_or_else(|| ParseError {
                        line: 1,
                        column: 1,
                        message: "recovering sets must be nonempty with distinct coordinates"
                            .into(),
                    })?;
                    out.push(set);
                }
                per_symbol.push(out);
            }
            Ok(Certificate::Pir(PirCertificate { t, per_symbol }))
        }
        RawCertificate::St { t, symbols } => {
            let mut per_symbol = Vec::with_capacity(symbols.len());
            for w in symbols {
                per_symbol.push(StWitness {
                    members: zero_based(w.j, "J").map_err(loc)?,
                    info: zero_based(w.i, "I").map_err(loc)?,
                    parity: zero_based(w.v, "V").map_err(loc)?,
                });
            }
            Ok(Certificate::St(StCertificate { t, per_symbol }))
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_certificate(self))
    }
}

#[derive(Serialize)]
struct ReportStep {
    z: String,
    scanned: u64,
    verdict: String,
}

#[derive(Serialize)]
struct ReportFile {
    mode: String,
    t: usize,
    w: usize,
    k_input: usize,
    n_input: usize,
    r: usize,
    k_best: usize,
    n_best: usize,
    termination: String,
    inconclusive: bool,
    candidates_scanned: u64,
    steps: Vec<ReportStep>,
    best_matrix: Vec<String>,
}

/// JSON report for a search run. The elapsed time is left out so reports
/// are byte-identical across runs.
pub fn emit_report(r: &SearchReport) -> String {
    let file = ReportFile {
        mode: match r.mode {
            pircode::search::SearchMode::Pir => "pir".into(),
            pircode::search::SearchMode::PropertyS => format!("s{}", r.t),
        },
        t: r.t,
        w: r.w,
        k_input: r.k_input,
        n_input: r.n_input,
        r: r.r,
        k_best: r.k_best,
        n_best: r.n_best,
        termination: r.termination.to_string(),
        inconclusive: r.inconclusive,
        candidates_scanned: r.candidates_scanned,
        steps: r
            .steps
            .iter()
            .map(|s| ReportStep {
                z: s.z.to_string(),
                scanned: s.scanned,
                verdict: s.verdict.to_string(),
            })
            .collect(),
        best_matrix: r.best.rows().iter().map(|row| row.to_string()).collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    s
}

/// One row of a campaign CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignRow {
    pub k: usize,
    pub t: usize,
    pub n: usize,
    pub source: String,
}

pub fn campaign_rows(res: &CampaignResult) -> Vec<CampaignRow> {
    res.entries
        .values()
        .map(|e| CampaignRow {
            k: e.k,
            t: res.t,
            n: e.n,
            source: e.source.clone(),
        })
        .collect()
}

pub fn emit_campaign(rows: &[CampaignRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn parse_campaign(text: &str) -> Result<Vec<CampaignRow>, ParseError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.deserialize() {
        let row: CampaignRow = rec.map_err(|e| {
            let line = e.position().map_or(1, |p| p.line() as usize);
            ParseError {
                line,
                column: 1,
                message: e.to_string(),
            }
        })?;
        rows.push(row);
    }
    Ok(rows)
}
