//! Existence tables for ETFs: the real table (`n > 2m`, integrality-driven),
//! the complex table (known constructions, `n > 2m`) and the redundancy-two
//! table (`n = 2m`).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::conditions::{
    graph_feasibility, inverse_coherence, known_dne_pairs, real_integrality, redundancy_two_integrality,
    srg_parameters_for, Outcome,
};
use crate::error::{Error, Result};
use crate::registry::{
    enumerate_families, hard_coded_rows, Catalog, FamilyKind, TABLE_COMPLEX_MAX_M, TABLE_CONFERENCE_MAX_M, TABLE_MAX_N,
};

/// Realness marker of the redundancy-two table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RealFlag {
    #[serde(rename = "+")]
    Known,
    #[serde(rename = "-")]
    ComplexOnly,
    #[serde(rename = "?")]
    Open,
}

impl RealFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            RealFlag::Known => "+",
            RealFlag::ComplexOnly => "-",
            RealFlag::Open => "?",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub table: u8,
    pub m: u64,
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_flag: Option<RealFlag>,
    pub notes: Vec<String>,
}

impl TableRow {
    /// Cells in column order, notes joined by `", "`.
    pub fn cells(&self) -> Vec<String> {
        let mut cells = vec![self.m.to_string(), self.n.to_string()];
        match self.table {
            1 => {
                cells.push(self.alpha.map(|a| a.to_string()).unwrap_or_default());
                cells.push(self.k.map(|k| k.to_string()).unwrap_or_default());
            }
            3 => cells.push(self.r_flag.map(|f| f.as_str().to_string()).unwrap_or_default()),
            _ => {}
        }
        cells.push(self.notes.join(", "));
        cells
    }
}

pub fn table_number(catalog: Catalog) -> u8 {
    match catalog {
        Catalog::Real => 1,
        Catalog::Complex => 2,
        Catalog::Conference => 3,
    }
}

pub fn header(table: u8) -> &'static [&'static str] {
    match table {
        1 => &["M", "N", "alpha", "k", "notes"],
        3 => &["M", "N", "real", "notes"],
        _ => &["M", "N", "notes"],
    }
}

/// Collects `(kind, label)` notes per `(m, n)`, keeping insertion order
/// within a kind.
#[derive(Default)]
struct Notes(BTreeMap<(u64, u64), Vec<(FamilyKind, String)>>);

impl Notes {
    fn add(&mut self, key: (u64, u64), kind: FamilyKind, label: String) {
        self.0.entry(key).or_default().push((kind, label));
    }

    fn take(&mut self, key: (u64, u64)) -> Vec<String> {
        let mut entries = self.0.remove(&key).unwrap_or_default();
        if entries.iter().any(|(k, _)| *k == FamilyKind::Dne) {
            return vec!["DNE".to_string()];
        }
        entries.sort_by_key(|(k, _)| *k);
        let mut labels: Vec<String> = Vec::with_capacity(entries.len());
        for (_, label) in entries {
            if !labels.contains(&label) {
                labels.push(label);
            }
        }
        labels
    }

    fn with_table(catalog: Catalog, max_m: u64, max_n: u64) -> Self {
        let table = table_number(catalog);
        let mut notes = Notes::default();
        for fd in enumerate_families(max_m, max_n, catalog) {
            notes.add((fd.m, fd.n), fd.kind, fd.name);
        }
        for row in hard_coded_rows().into_iter().filter(|r| r.table == table) {
            notes.add((row.m, row.n), row.provenance.kind(), row.note);
        }
        notes
    }
}

/// `(m, n)` with `2 <= m`, `2m < n <= min(m(m+1)/2, max_n)` passing the
/// integrality conditions on both Naimark sides.
pub fn real_integrality_pairs(max_n: u64) -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    for m in 2.. {
        if 2 * m + 1 > max_n {
            break;
        }
        let top = (m * (m + 1) / 2).min(max_n);
        for n in 2 * m + 1..=top {
            let pass = |a, b| real_integrality(a, b).map(|o| o == Outcome::Pass).unwrap_or(false);
            if pass(m, n) && pass(n - m, n) {
                pairs.push((m, n));
            }
        }
    }
    pairs
}

/// Real ETFs with `n > 2m`, `n <= 1300`: every integrality-feasible pair,
/// annotated with the known real constructions and nonexistence results.
pub fn build_table_real() -> Vec<TableRow> {
    let mut notes = Notes::with_table(Catalog::Real, TABLE_MAX_N / 2, TABLE_MAX_N);
    real_integrality_pairs(TABLE_MAX_N)
        .into_iter()
        .map(|(m, n)| {
            let mut row_notes = notes.take((m, n));
            let feasible = [m, n - m].iter().all(|&side| {
                srg_parameters_for(side, n)
                    .and_then(|p| graph_feasibility(&p))
                    .map(|f| f.passes())
                    .unwrap_or(false)
            });
            if !feasible {
                row_notes.push("failed graph test".to_string());
            }
            TableRow {
                table: 1,
                m,
                n,
                alpha: inverse_coherence(m, n),
                k: srg_parameters_for(m, n).ok().map(|p| p.k),
                r_flag: None,
                notes: row_notes,
            }
        })
        .collect()
}

/// Known ETFs (real or complex) with `n > 2m`, `m <= 300`, `n <= 1300`.
pub fn build_table_complex() -> Vec<TableRow> {
    let dne = known_dne_pairs().complex;
    let mut notes = Notes::with_table(Catalog::Complex, TABLE_COMPLEX_MAX_M, TABLE_MAX_N);
    let keys: Vec<(u64, u64)> = notes.0.keys().copied().filter(|key| !dne.contains(key)).collect();
    keys.into_iter()
        .map(|(m, n)| TableRow {
            table: 2,
            m,
            n,
            alpha: None,
            k: None,
            r_flag: None,
            notes: notes.take((m, n)),
        })
        .collect()
}

/// ETFs with `n = 2m`, `m <= 150`, that are either known to exist or pass
/// the redundancy-two integrality test.
pub fn build_table_conference() -> Vec<TableRow> {
    let families = enumerate_families(TABLE_CONFERENCE_MAX_M, 2 * TABLE_CONFERENCE_MAX_M, Catalog::Conference);
    let mut rows = Vec::new();
    for m in 2..=TABLE_CONFERENCE_MAX_M {
        let here: Vec<_> = families.iter().filter(|fd| fd.m == m).collect();
        let integral = redundancy_two_integrality(m) == Outcome::Pass;
        if here.is_empty() && !integral {
            continue;
        }
        let flag = if here.iter().any(|fd| fd.real) {
            RealFlag::Known
        } else if integral {
            RealFlag::Open
        } else {
            RealFlag::ComplexOnly
        };
        let mut letters: Vec<String> = here.iter().map(|fd| fd.name.clone()).collect();
        letters.sort();
        letters.dedup();
        rows.push(TableRow {
            table: 3,
            m,
            n: 2 * m,
            alpha: None,
            k: None,
            r_flag: Some(flag),
            notes: letters,
        });
    }
    rows
}

pub fn build_table(catalog: Catalog) -> Vec<TableRow> {
    match catalog {
        Catalog::Real => build_table_real(),
        Catalog::Complex => build_table_complex(),
        Catalog::Conference => build_table_conference(),
    }
}

fn table_of(rows: &[TableRow]) -> u8 {
    rows.first().map(|r| r.table).unwrap_or(2)
}

/// Canonical CSV: header line, notes quoted only when they contain a
/// comma.
pub fn to_csv(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header(table_of(rows))).expect("in-memory write");
    for row in rows {
        w.write_record(row.cells()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("cells are UTF-8")
}

pub fn to_markdown(rows: &[TableRow]) -> String {
    let head = header(table_of(rows));
    let mut out = format!("| {} |\n|{}\n", head.join(" | "), "---|".repeat(head.len()));
    for row in rows {
        let _ = writeln!(out, "| {} |", row.cells().join(" | "));
    }
    out
}

/// A `longtable` body with one `\\`-terminated line per row.
pub fn to_latex(rows: &[TableRow]) -> String {
    let table = table_of(rows);
    let head: Vec<String> = header(table)
        .iter()
        .map(|h| match *h {
            "alpha" => "$\\alpha$".to_string(),
            "real" => "$\\mathbb{R}$?".to_string(),
            "notes" => "Notes".to_string(),
            other => format!("${other}$"),
        })
        .collect();
    let align = "r".repeat(head.len() - 1) + "l";
    let mut out = format!(
        "\\begin{{longtable}}{{{align}}}\n{}\t\\\\\n\\hline\n\\endhead\n",
        head.join("\t&\t")
    );
    for row in rows {
        let _ = writeln!(out, "{}\t\\\\", row.cells().join("\t&\t"));
    }
    out.push_str("\\end{longtable}\n");
    out
}

pub fn to_json(rows: &[TableRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows always serialize")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowMismatch {
    pub m: u64,
    pub n: u64,
    pub expected: Vec<String>,
    pub found: Vec<String>,
}

/// Differences between generated rows and a reference table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TableDiff {
    /// Reference rows that were not generated.
    pub missing: Vec<(u64, u64)>,
    /// Generated rows absent from the reference.
    pub extra: Vec<(u64, u64)>,
    pub mismatched: Vec<RowMismatch>,
}

impl TableDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.mismatched.is_empty()
    }
}

impl std::fmt::Display for TableDiff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (m, n) in &self.missing {
            writeln!(f, "missing ({m},{n})")?;
        }
        for (m, n) in &self.extra {
            writeln!(f, "extra ({m},{n})")?;
        }
        for x in &self.mismatched {
            writeln!(
                f,
                "mismatch ({},{}): expected {:?}, found {:?}",
                x.m, x.n, x.expected, x.found
            )?;
        }
        Ok(())
    }
}

/// Compares rows against CSV text with the header of the rows' table.
pub fn diff_against_csv(rows: &[TableRow], text: &str) -> Result<TableDiff> {
    let table = table_of(rows);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let found_header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if found_header != header(table) {
        return Err(Error::Format(format!(
            "unexpected header {found_header:?} for table {table}"
        )));
    }
    let key_of = |cells: &[String]| -> Result<(u64, u64)> {
        let parse = |s: &String| {
            s.parse::<u64>()
                .map_err(|_| Error::Format(format!("bad integer {s:?}")))
        };
        Ok((parse(&cells[0])?, parse(&cells[1])?))
    };
    let mut reference: BTreeMap<(u64, u64), Vec<String>> = BTreeMap::new();
    for record in reader.records() {
        let cells: Vec<String> = record?.iter().map(str::to_string).collect();
        if cells.len() != header(table).len() {
            return Err(Error::Format(format!("row {cells:?} has the wrong number of fields")));
        }
        reference.insert(key_of(&cells)?, cells);
    }
    let mut diff = TableDiff::default();
    let mut seen = Vec::new();
    for row in rows {
        let key = (row.m, row.n);
        seen.push(key);
        let cells = row.cells();
        match reference.get(&key) {
            None => diff.extra.push(key),
            Some(expected) if *expected != cells => diff.mismatched.push(RowMismatch {
                m: row.m,
                n: row.n,
                expected: expected.clone(),
                found: cells,
            }),
            Some(_) => {}
        }
    }
    diff.missing = reference.keys().filter(|k| !seen.contains(k)).copied().collect();
    Ok(diff)
}

pub fn diff_against_fixture(rows: &[TableRow], fixture: impl AsRef<Path>) -> Result<TableDiff> {
    diff_against_csv(rows, &std::fs::read_to_string(fixture)?)
}
