//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use num_complex::Complex64;

use etf::algebra::AbelianGroup;
use etf::conditions::{check, graph_feasibility, real_integrality, srg_parameters_for, Outcome};
use etf::constructions::{
    brute_force_difference_sets, conference_to_etf, graphical_hadamard_complement_etf, graphical_hadamard_etf,
    harmonic_etf, paley_conference, paley_difference_set, singer_difference_set,
};
use etf::frames::{
    drop_one_transform, is_tight_spherical_5_design, naimark_complement, spherical_moment_deviations, verify_etf,
    Frame, DEFAULT_TOL,
};
use etf::registry::{construct, enumerate_families, Catalog};
use etf::tabulate::{build_table, diff_against_fixture, to_csv, RealFlag};

type Checked = Result<String, String>;
type Criterion<'a> = Box<dyn Fn() -> Checked + 'a>;

fn fixture(table: u8) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../fixtures/table{table}.csv"))
}

fn fixture_pairs(table: u8) -> BTreeSet<(u64, u64)> {
    let mut reader = csv::Reader::from_path(fixture(table)).expect("fixture readable");
    reader
        .records()
        .map(|r| {
            let r = r.expect("fixture row");
            (r[0].parse().expect("M"), r[1].parse().expect("N"))
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// Oracles computed from the raw entries, independent of the library's
// verifier.

fn max_cross_gram(f: &Frame) -> f64 {
    let cols: Vec<&[Complex64]> = f.columns().collect();
    let mut worst: f64 = 0.0;
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            let z: Complex64 = cols[i].iter().zip(cols[j]).map(|(a, b)| a.conj() * b).sum();
            worst = worst.max(z.norm());
        }
    }
    worst
}

fn tightness_defect(f: &Frame) -> f64 {
    let (m, n) = (f.m(), f.n());
    let scale = n as f64 / m as f64;
    let mut worst: f64 = 0.0;
    for a in 0..m {
        for b in 0..m {
            let z: Complex64 = (0..n).map(|j| f.entry(a, j) * f.entry(b, j).conj()).sum();
            let target = if a == b { scale } else { 0.0 };
            worst = worst.max((z - target).norm());
        }
    }
    worst
}

fn welch(m: usize, n: usize) -> f64 {
    ((n - m) as f64 / (m as f64 * (n - 1) as f64)).sqrt()
}

fn attains_welch(f: &Frame) -> Result<(), String> {
    let (m, n) = (f.m(), f.n());
    let norms = f.columns().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
    let worst_norm = norms.fold(0.0f64, |w, x| w.max((x - 1.0).abs()));
    ensure(worst_norm <= 1e-8, || {
        format!("({m},{n}) column norm off by {worst_norm:e}")
    })?;
    let gap = (max_cross_gram(f) - welch(m, n)).abs();
    ensure(gap <= 1e-8, || {
        format!("({m},{n}) coherence misses the Welch bound by {gap:e}")
    })?;
    let tight = tightness_defect(f);
    ensure(tight <= 1e-8, || format!("({m},{n}) frame operator off by {tight:e}"))
}

fn table_reproduction() -> Checked {
    let start = Instant::now();
    let mut counts = Vec::new();
    for (table, catalog) in [(1, Catalog::Real), (2, Catalog::Complex), (3, Catalog::Conference)] {
        let rows = build_table(catalog);
        let diff = diff_against_fixture(&rows, fixture(table)).map_err(|e| e.to_string())?;
        ensure(diff.is_empty(), || format!("table {table}:\n{diff}"))?;
        let bytes = std::fs::read_to_string(fixture(table)).map_err(|e| e.to_string())?;
        ensure(to_csv(&rows) == bytes, || {
            format!("table {table} CSV is not byte-identical")
        })?;
        counts.push(rows.len().to_string());
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{} rows, {secs:.1} s", counts.join(" / ")))
}

/// Frames covered by the Welch-attainment criterion.
fn small_etfs() -> Result<Vec<(String, Frame)>, String> {
    let mut frames = Vec::new();
    let mut seen = BTreeSet::new();
    let descriptors = enumerate_families(300, 300, Catalog::Complex)
        .into_iter()
        .chain(enumerate_families(150, 300, Catalog::Conference));
    for fd in descriptors.filter(|fd| fd.constructible) {
        let label = format!("{} ({},{})", fd.name, fd.m, fd.n);
        if seen.insert(label.clone()) {
            frames.push((
                label,
                construct(&fd).ok_or_else(|| format!("{} did not build", fd.name))?,
            ));
        }
    }
    for q in (3u64..300).filter(|q| q % 4 == 3 && etf::algebra::is_prime_power(*q).is_some()) {
        let c = paley_conference(q).map_err(|e| e.to_string())?;
        let f = conference_to_etf(&c)
            .and_then(|f| drop_one_transform(&f))
            .map_err(|e| e.to_string())?;
        frames.push((format!("drop-one Paley({q})"), f));
    }
    for k in 1..=3 {
        let f = graphical_hadamard_etf(k).map_err(|e| e.to_string())?;
        let g = graphical_hadamard_complement_etf(k).map_err(|e| e.to_string())?;
        frames.push((format!("graphical Hadamard k={k}"), f));
        frames.push((format!("graphical Hadamard complement k={k}"), g));
    }
    Ok(frames)
}

fn welch_attainment(frames: &[(String, Frame)]) -> Checked {
    let start = Instant::now();
    for (label, f) in frames {
        attains_welch(f).map_err(|e| format!("{label}: {e}"))?;
    }
    let pairs: BTreeSet<_> = frames.iter().map(|(_, f)| (f.m(), f.n())).collect();
    ensure(pairs.len() >= 60, || {
        format!("only {} distinct (M,N) pairs", pairs.len())
    })?;
    Ok(format!(
        "{} frames, {} distinct pairs, {:.1} s",
        frames.len(),
        pairs.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn naimark_closure(frames: &[(String, Frame)]) -> Checked {
    let start = Instant::now();
    let mut count = 0;
    for (label, f) in frames.iter().filter(|(_, f)| f.n() > f.m()) {
        let c = naimark_complement(f).map_err(|e| format!("{label}: {e}"))?;
        ensure(c.m() == f.n() - f.m(), || {
            format!("{label}: complement has {} rows", c.m())
        })?;
        attains_welch(&c).map_err(|e| format!("{label} complement: {e}"))?;
        ensure(verify_etf(&c, DEFAULT_TOL).is_etf(), || {
            format!("{label} complement fails verify_etf")
        })?;
        count += 1;
    }
    Ok(format!("{count} complements, {:.1} s", start.elapsed().as_secs_f64()))
}

/// Real integrality for `2m < n`: both `sqrt(m(n-1)/(n-m))` and
/// `sqrt((n-m)(n-1)/m)` are odd integers.
fn integrality_oracle(m: u64, n: u64) -> bool {
    let odd_root = |num: u64, den: u64| {
        if num % den != 0 {
            return false;
        }
        let x = num / den;
        let r = (x as f64).sqrt().round() as u64;
        r * r == x && r % 2 == 1
    };
    odd_root(m * (n - 1), n - m) && odd_root((n - m) * (n - 1), m)
}

fn integrality_completeness() -> Checked {
    let start = Instant::now();
    let mut oracle = BTreeSet::new();
    let mut library = BTreeSet::new();
    // the real dimension bound n <= m(m+1)/2 limits the sweep
    for n in 5..=1300u64 {
        for m in (2..=(n - 1) / 2).filter(|m| n <= m * (m + 1) / 2) {
            if integrality_oracle(m, n) {
                oracle.insert((m, n));
            }
            if real_integrality(m, n).map_err(|e| e.to_string())? == Outcome::Pass {
                library.insert((m, n));
            }
        }
    }
    let table = fixture_pairs(1);
    ensure(oracle == table, || {
        let extra: Vec<_> = oracle.difference(&table).collect();
        let missing: Vec<_> = table.difference(&oracle).collect();
        format!("oracle differs from the table: extra {extra:?}, missing {missing:?}")
    })?;
    ensure(library == oracle, || {
        "library integrality test differs from the oracle".into()
    })?;
    for &(m, n) in &oracle {
        for side in [m, n - m] {
            let p = srg_parameters_for(side, n).map_err(|e| format!("({side},{n}): {e}"))?;
            let feas = graph_feasibility(&p).map_err(|e| format!("({side},{n}): {e}"))?;
            ensure(feas.passes(), || {
                format!("({side},{n}) fails graph feasibility: {feas:?}")
            })?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "{} pairs, both sides graph-feasible, {secs:.1} s",
        oracle.len()
    ))
}

type Vec3 = [f64; 3];

fn dot3(a: Vec3, b: Vec3) -> f64 {
    a.iter().zip(&b).map(|(x, y)| x * y).sum()
}

fn unit3(a: Vec3) -> Vec3 {
    let r = dot3(a, a).sqrt();
    [a[0] / r, a[1] / r, a[2] / r]
}

/// Columns `phi_j + 0.01 (cos t_j u_j + sin t_j w_j)`, renormalized, where
/// `u_j, w_j` span the tangent plane at `phi_j`.
fn displaced(base: &[Vec3], angles: &[f64]) -> Vec<Vec3> {
    base.iter()
        .zip(angles)
        .map(|(&p, &t)| {
            let k = (0..3)
                .min_by(|&a, &b| p[a].abs().total_cmp(&p[b].abs()))
                .expect("three axes");
            let mut e = [0.0; 3];
            e[k] = 1.0;
            let c = dot3(p, e);
            let u = unit3([e[0] - c * p[0], e[1] - c * p[1], e[2] - c * p[2]]);
            let w = [
                p[1] * u[2] - p[2] * u[1],
                p[2] * u[0] - p[0] * u[2],
                p[0] * u[1] - p[1] * u[0],
            ];
            let d = |i: usize| 0.01 * (t.cos() * u[i] + t.sin() * w[i]);
            unit3([p[0] + d(0), p[1] + d(1), p[2] + d(2)])
        })
        .collect()
}

fn fourth_moment_excess(cols: &[Vec3]) -> f64 {
    let n = cols.len() as f64;
    let s: f64 = cols
        .iter()
        .flat_map(|a| cols.iter().map(move |b| dot3(*a, *b).powi(4)))
        .sum();
    s / (n * n) - 3.0 / 15.0
}

fn spherical_design() -> Checked {
    let f = conference_to_etf(&paley_conference(5).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure((f.m(), f.n(), f.is_real()) == (3, 6, true), || {
        "Paley(5) did not give a real (3,6) frame".into()
    })?;
    ensure(is_tight_spherical_5_design(&f).map_err(|e| e.to_string())?, || {
        "(3,6) ETF is not a 5-design".into()
    })?;
    let base: Vec<Vec3> = f.columns().map(|c| [c[0].re, c[1].re, c[2].re]).collect();
    // Every vector moves by 0.01. The moments are stationary at a design,
    // so the deviation is quadratic in the displacement and depends on its
    // direction; a coordinate search over the six directions finds the
    // largest one.
    let mut angles = vec![0.0; base.len()];
    for _ in 0..6 {
        for j in 0..angles.len() {
            let best = (0..720)
                .map(|s| s as f64 * std::f64::consts::PI / 360.0)
                .max_by(|&a, &b| {
                    let score = |t| {
                        let mut trial = angles.clone();
                        trial[j] = t;
                        fourth_moment_excess(&displaced(&base, &trial))
                    };
                    score(a).total_cmp(&score(b))
                })
                .expect("nonempty grid");
            angles[j] = best;
        }
    }
    let columns = displaced(&base, &angles)
        .into_iter()
        .map(|v| v.iter().map(|&x| Complex64::new(x, 0.0)).collect())
        .collect();
    let perturbed = Frame::from_columns(columns).map_err(|e| e.to_string())?;
    let moved = base
        .iter()
        .zip(perturbed.columns())
        .map(|(p, c)| (0..3).map(|i| (c[i].re - p[i]).powi(2)).sum::<f64>().sqrt())
        .fold(0.0f64, f64::max);
    ensure(moved <= 0.0101, || format!("a vector moved by {moved}"))?;
    let dev = spherical_moment_deviations(&perturbed).map_err(|e| e.to_string())?;
    let worst = dev[0].max(dev[1]);
    ensure(worst > 1e-4, || format!("perturbed moment deviation only {worst:e}"))?;
    ensure(!is_tight_spherical_5_design(&perturbed).unwrap_or(true), || {
        "perturbed copy passes".into()
    })?;
    Ok(format!("1% displacement gives deviation {worst:.3e}"))
}

fn oracle_equivalence() -> Checked {
    let start = Instant::now();
    let cases = [
        (7u32, 3usize, paley_difference_set(7)),
        (13, 4, singer_difference_set(3, 3)),
    ];
    let mut found_total = 0;
    for (v, k, library_set) in cases {
        let group = AbelianGroup::cyclic(v).map_err(|e| e.to_string())?;
        let found = brute_force_difference_sets(&group, k, 1).map_err(|e| e.to_string())?;
        ensure(!found.is_empty(), || format!("no ({v},{k},1) difference sets found"))?;
        for d in &found {
            let f = harmonic_etf(d).map_err(|e| e.to_string())?;
            attains_welch(&f).map_err(|e| format!("Z_{v} set {:?}: {e}", d.elements()))?;
        }
        let library_set = library_set.map_err(|e| e.to_string())?;
        ensure(library_set.group().order() == v as usize, || {
            format!("library set for Z_{v} lives elsewhere")
        })?;
        let target: BTreeSet<usize> = library_set.elements().iter().copied().collect();
        ensure(
            found
                .iter()
                .any(|d| d.elements().iter().copied().collect::<BTreeSet<_>>() == target),
            || format!("library set {target:?} not among the {} found in Z_{v}", found.len()),
        )?;
        found_total += found.len();
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{found_total} sets found, {secs:.2} s"))
}

fn spot_checks() -> Checked {
    let report = |m, n| check(m, n).map_err(|e| e.to_string());
    ensure(report(19, 76)?.real_verdict.is_dne(), || {
        "(19,76) real not ruled out".into()
    })?;
    ensure(report(3, 8)?.complex_verdict.is_dne(), || {
        "(3,8) complex not ruled out".into()
    })?;
    ensure(report(47, 1128)?.real_verdict.is_dne(), || {
        "(47,1128) real not ruled out".into()
    })?;
    ensure(!report(33, 66)?.real_verdict.is_dne(), || {
        "(33,66) real ruled out".into()
    })?;
    let row = build_table(Catalog::Conference)
        .into_iter()
        .find(|r| (r.m, r.n) == (33, 66))
        .ok_or("(33,66) missing from the conference table")?;
    ensure(row.r_flag == Some(RealFlag::Open) && row.notes.is_empty(), || {
        format!("(33,66) row is {row:?}")
    })?;
    for (m, n) in [(21u64, 28u64), (253, 276)] {
        let p = srg_parameters_for(m, n).map_err(|e| e.to_string())?;
        let feas = graph_feasibility(&p).map_err(|e| e.to_string())?;
        ensure(feas.passes() && feas.q111_zero, || format!("({m},{n}): {feas:?}"))?;
    }
    Ok("6 pairs".into())
}

fn main() {
    let frames = small_etfs();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("table reproduction", Box::new(table_reproduction)),
        (
            "Welch-bound attainment",
            Box::new(|| welch_attainment(frames.as_ref()?)),
        ),
        ("Naimark closure", Box::new(|| naimark_closure(frames.as_ref()?))),
        ("integrality completeness", Box::new(integrality_completeness)),
        ("spherical 5-design", Box::new(spherical_design)),
        ("difference-set oracle equivalence", Box::new(oracle_equivalence)),
        ("condition spot checks", Box::new(spot_checks)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
