use std::collections::BTreeMap;
use std::path::PathBuf;

use etf::conditions::check;
use etf::frames::{coherence, naimark_complement, verify_etf, DEFAULT_TOL};
use etf::registry::{
    construct, enumerate_families, hard_coded_rows, Catalog, FamilyDescriptor, TABLE_COMPLEX_MAX_M,
    TABLE_CONFERENCE_MAX_M, TABLE_MAX_N,
};

fn fixture_notes(table: u8) -> BTreeMap<(u64, u64), String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../fixtures/table{table}.csv"));
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            let key = (r[0].parse().unwrap(), r[1].parse().unwrap());
            (key, r[r.len() - 1].to_string())
        })
        .collect()
}

fn families() -> Vec<(u8, FamilyDescriptor)> {
    let mut all: Vec<(u8, FamilyDescriptor)> = Vec::new();
    all.extend(
        enumerate_families(TABLE_MAX_N / 2, TABLE_MAX_N, Catalog::Real)
            .into_iter()
            .map(|f| (1, f)),
    );
    all.extend(
        enumerate_families(TABLE_COMPLEX_MAX_M, TABLE_MAX_N, Catalog::Complex)
            .into_iter()
            .map(|f| (2, f)),
    );
    all.extend(
        enumerate_families(TABLE_CONFERENCE_MAX_M, 2 * TABLE_CONFERENCE_MAX_M, Catalog::Conference)
            .into_iter()
            .map(|f| (3, f)),
    );
    all
}

#[test]
fn every_descriptor_is_printed_in_its_table() {
    let tables: Vec<_> = (1..=3).map(fixture_notes).collect();
    for (table, fd) in families() {
        assert!(fd.tables.contains(&table), "{} not tagged for table {table}", fd.name);
        let notes = &tables[table as usize - 1];
        let cell = notes
            .get(&(fd.m, fd.n))
            .unwrap_or_else(|| panic!("{} ({},{}) missing", fd.name, fd.m, fd.n));
        // the DNE rows of the real table suppress every other note
        assert!(cell.contains(&fd.name) || cell == "DNE", "{} not in {cell:?}", fd.name);
    }
    for row in hard_coded_rows() {
        let cell = &tables[row.table as usize - 1][&(row.m, row.n)];
        assert!(cell.contains(&row.note), "{row:?}");
    }
}

#[test]
fn no_family_is_ruled_out() {
    for (_, fd) in families() {
        let report = check(fd.m, fd.n).unwrap();
        assert!(!report.complex_verdict.is_dne(), "{}", fd.name);
        if fd.real && !report.real_verdict.is_dne() {
            continue;
        }
        assert!(
            !fd.real,
            "{} is flagged real but ruled out: {:?}",
            fd.name, report.real_verdict
        );
    }
}

#[test]
fn every_constructible_descriptor_builds_an_etf() {
    let mut seen = std::collections::BTreeSet::new();
    let mut built = 0;
    for (_, fd) in families().into_iter().filter(|(_, f)| f.constructible) {
        if !seen.insert(fd.name.clone()) {
            continue;
        }
        let frame = construct(&fd).unwrap_or_else(|| panic!("{} failed to build", fd.name));
        assert_eq!((frame.m() as u64, frame.n() as u64), (fd.m, fd.n), "{}", fd.name);
        let report = verify_etf(&frame, DEFAULT_TOL);
        assert!(report.is_etf(), "{}: {report:?}", fd.name);
        if let Some(alpha) = etf::conditions::inverse_coherence(fd.m, fd.n) {
            assert!(
                (alpha as f64 * coherence(&frame).unwrap() - 1.0).abs() < 1e-8,
                "{}",
                fd.name
            );
        }
        built += 1;
    }
    assert!(built > 100, "only {built} constructions");
}

#[test]
fn small_complements_verify() {
    for (_, fd) in families().into_iter().filter(|(_, f)| f.constructible && f.n <= 120) {
        let frame = construct(&fd).unwrap();
        let complement = naimark_complement(&frame).unwrap();
        assert_eq!(complement.m() as u64, fd.n - fd.m);
        assert!(verify_etf(&complement, DEFAULT_TOL).is_etf(), "{}", fd.name);
    }
}
