//! Catalog of the known ETF families: parameter iterators, `(m, n)`
//! formulas, realness, constructibility and table labels.
//!
//! Labels follow the note vocabulary used by the existence tables, so the
//! tabulator can assemble note cells directly from descriptors.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::numbers::{checked_pow, exact_sqrt, is_prime_power};
use crate::constructions::{
    conference_to_etf, graphical_hadamard_complement_etf, hadamard_matrix, harmonic_etf, mcfarland_difference_set,
    paley_conference, paley_difference_set, singer_difference_set, skew_conference, steiner_etf, steiner_from_geometry,
    steiner_pairs, steiner_triples, symmetric_from_skew, Geometry, MAX_KRONECKER_POWER,
};
use crate::error::{Error, Result};
use crate::frames::{drop_one_transform, naimark_complement, FieldTag, Frame};

/// Largest `n` the enumerators will visit; larger bounds are clamped.
pub const REGISTRY_LIMIT: u64 = 1 << 20;

/// Table bounds used for the published tables.
pub const TABLE_MAX_N: u64 = 1300;
pub const TABLE_COMPLEX_MAX_M: u64 = 300;
pub const TABLE_CONFERENCE_MAX_M: u64 = 150;

/// Orders of the skew-Hadamard matrices used for (d) and (g): `h = 2^t`,
/// `t >= 2`.
fn power_of_two_orders(max: u64) -> impl Iterator<Item = u64> {
    (2..63).map(|t| 1u64 << t).take_while(move |&h| h <= max)
}

/// Orders for which a real Hadamard matrix is assumed to exist: 1, 2 and
/// every multiple of 4.
pub fn is_known_hadamard_order(n: u64) -> bool {
    n == 1 || n == 2 || (n > 0 && n % 4 == 0)
}

/// Family kinds in the order their labels are printed in a note cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Singer,
    McFarland,
    Spence,
    Paley,
    Cyclo4,
    Cyclo4Prime,
    Cyclo8,
    Cyclo8Prime,
    Hall,
    TwinPrimePower,
    ExtraDifferenceSet,
    SteinerBibd,
    SteinerAffine,
    SteinerProjective,
    SteinerUnital,
    SteinerDenniston,
    SkewPaley,
    SkewHadamard,
    GeneralizedQuadrangle,
    Rshcd,
    Schcd,
    Tremain,
    QuasiSymmetricDesign,
    Hyperoval1,
    Hyperoval2,
    Maximal,
    StronglyRegularGraph,
    Dne,
    ConferenceA,
    ConferenceB,
    ConferenceC,
    ConferenceD,
    ConferenceE,
    ConferenceF,
    ConferenceG,
}

/// Which table a family enumeration targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Catalog {
    /// Real families with `n > 2m`.
    Real,
    /// All families with `n > 2m`.
    Complex,
    /// Conference-matrix families with `n = 2m`.
    Conference,
}

impl std::str::FromStr for Catalog {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Catalog::Real),
            "complex" => Ok(Catalog::Complex),
            "conference" => Ok(Catalog::Conference),
            other => Err(Error::InvalidParameter(format!("unknown catalog {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyDescriptor {
    pub kind: FamilyKind,
    pub name: String,
    pub params: Vec<u64>,
    pub m: u64,
    pub n: u64,
    pub real: bool,
    pub constructible: bool,
    /// Tables the family contributes a note to.
    #[serde(rename = "table")]
    pub tables: Vec<u8>,
}

impl FamilyDescriptor {
    fn new(kind: FamilyKind, name: String, params: Vec<u64>, (m, n): (u64, u64), real: bool) -> Self {
        let tables = if n == 2 * m {
            vec![3]
        } else if real && m <= TABLE_COMPLEX_MAX_M {
            vec![1, 2]
        } else if real {
            vec![1]
        } else {
            vec![2]
        };
        let mut fd = FamilyDescriptor {
            kind,
            name,
            params,
            m,
            n,
            real,
            constructible: false,
            tables,
        };
        fd.constructible = builder_exists(&fd);
        fd
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Qsd,
    SrgTable,
    ExtraDifferenceSet,
    Dne,
}

impl Provenance {
    pub fn kind(self) -> FamilyKind {
        match self {
            Provenance::Qsd => FamilyKind::QuasiSymmetricDesign,
            Provenance::SrgTable => FamilyKind::StronglyRegularGraph,
            Provenance::ExtraDifferenceSet => FamilyKind::ExtraDifferenceSet,
            Provenance::Dne => FamilyKind::Dne,
        }
    }
}

/// A table entry taken verbatim rather than derived from a formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HardCodedRow {
    pub m: u64,
    pub n: u64,
    pub note: String,
    pub table: u8,
    pub provenance: Provenance,
}

const SRG_ROWS: [(u64, u64); 4] = [(22, 176), (23, 276), (63, 280), (77, 210)];
const EXTRA_DIFFERENCE_SET_ROWS: [(u64, u64); 6] =
    [(33, 133), (66, 144), (88, 320), (153, 324), (225, 901), (276, 576)];
const DNE_ROWS: [(u64, u64); 3] = [(19, 76), (20, 96), (47, 1128)];
const QSD_ROWS: [(u64, u64, &str); 9] = [
    (6, 16, "QSD(6,2,1)"),
    (15, 36, "QSD(15,3,1)"),
    (28, 64, "QSD(28,4,1)"),
    (45, 100, "QSD(45,5,1)"),
    (66, 144, "QSD(66,6,1)"),
    (66, 144, "QSD(66,30,29)"),
    (91, 196, "QSD(91,7,1)"),
    (120, 256, "QSD(120,8,1)"),
    (496, 1024, "QSD(496,16,1)"),
];

/// Block sizes excluded from BIBD(v,6,1): the four orders known not to
/// exist and the two smallest open cases.
pub const SIX_BLOCK_EXCEPTIONS: [u64; 6] = [16, 21, 36, 46, 51, 61];

/// Entries that no formula in the registry produces.
pub fn hard_coded_rows() -> Vec<HardCodedRow> {
    let row = |m, n, note: &str, table, provenance| HardCodedRow {
        m,
        n,
        note: note.to_string(),
        table,
        provenance,
    };
    let mut rows = Vec::new();
    for table in [1, 2] {
        rows.extend(
            SRG_ROWS
                .iter()
                .map(|&(m, n)| row(m, n, "SRG", table, Provenance::SrgTable)),
        );
    }
    rows.extend(
        EXTRA_DIFFERENCE_SET_ROWS
            .iter()
            .map(|&(m, n)| row(m, n, "difference set", 2, Provenance::ExtraDifferenceSet)),
    );
    rows.extend(DNE_ROWS.iter().map(|&(m, n)| row(m, n, "DNE", 1, Provenance::Dne)));
    for &(m, n, note) in &QSD_ROWS {
        rows.push(row(m, n, note, 1, Provenance::Qsd));
        if m <= TABLE_COMPLEX_MAX_M {
            rows.push(row(m, n, note, 2, Provenance::Qsd));
        }
    }
    rows
}

fn pp(n: u64) -> bool {
    is_prime_power(n).is_some()
}

fn odd_pp(n: u64) -> bool {
    n % 2 == 1 && pp(n)
}

/// Prime powers `2 <= q <= max`.
fn prime_powers(max: u64) -> impl Iterator<Item = u64> {
    (2..=max).filter(|&q| pp(q))
}

/// Harmonic ETFs are real only for `n = 4^(j+1)`,
/// `m = 2^j (2^(j+1) +- 1)`.
fn harmonic_is_real(m: u64, n: u64) -> bool {
    (0..31).any(|j| {
        let big = 1u64 << (j + 1);
        n == big * big && (m == (big / 2) * (big - 1) || m == (big / 2) * (big + 1))
    })
}

/// Symmetric conference orders from (a) through (e), closed under the
/// recursion in (e), up to `max_n`.
pub fn symmetric_conference_orders(max_n: u64) -> BTreeSet<u64> {
    let max_n = max_n.min(REGISTRY_LIMIT);
    let mut orders: BTreeSet<u64> = BTreeSet::new();
    for q in prime_powers(max_n.saturating_sub(1)) {
        if q % 4 == 1 {
            orders.insert(q + 1);
        }
    }
    let d_orders = conference_d(max_n).map(|(_, n)| n);
    for n in conference_b(max_n)
        .chain(conference_c(max_n))
        .map(|(_, n)| n)
        .chain(d_orders)
    {
        orders.insert(n);
    }
    loop {
        let mut grown = false;
        for base in orders.clone() {
            for (_, n) in powers_plus_one(base - 1, 2, max_n) {
                grown |= orders.insert(n);
            }
        }
        if !grown {
            return orders;
        }
    }
}

/// `(s, b^s + 1)` for `s >= from` while the value stays within `max`.
fn powers_plus_one(b: u64, from: u32, max: u64) -> Vec<(u32, u64)> {
    if b < 2 {
        return Vec::new();
    }
    (from..64)
        .map_while(|s| checked_pow(b, s).map(|p| (s, p + 1)))
        .take_while(|&(_, n)| n <= max)
        .collect()
}

fn conference_b(max_n: u64) -> impl Iterator<Item = (u64, u64)> {
    (3..)
        .step_by(4)
        .map(|q: u64| (q, q * q * (q + 2) + 1))
        .take_while(move |&(_, n)| n <= max_n)
        .filter(|&(q, _)| pp(q) && pp(q + 2))
}

fn conference_c(max_n: u64) -> impl Iterator<Item = (u64, u64)> {
    (0..20u32)
        .map_while(|t| checked_pow(9, 2 * t + 1).map(|p| (t as u64, 5 * p + 1)))
        .take_while(move |&(_, n)| n <= max_n)
}

/// `((h, s), n)` pairs for (d).
fn conference_d(max_n: u64) -> impl Iterator<Item = ((u64, u64), u64)> {
    power_of_two_orders(max_n).flat_map(move |h| {
        powers_plus_one((h - 1) * (h - 1), 1, max_n)
            .into_iter()
            .map(move |(s, n)| ((h, s as u64), n))
    })
}

struct Sink {
    out: Vec<FamilyDescriptor>,
    max_m: u64,
    max_n: u64,
    catalog: Catalog,
}

impl Sink {
    fn push(&mut self, kind: FamilyKind, name: String, params: Vec<u64>, (m, n): (u64, u64), real: bool) {
        let in_bounds = m >= 2 && m <= self.max_m && n <= self.max_n;
        let shape_ok = match self.catalog {
            Catalog::Real => real && n > 2 * m,
            Catalog::Complex => n > 2 * m,
            Catalog::Conference => n == 2 * m,
        };
        if in_bounds && shape_ok {
            self.out.push(FamilyDescriptor::new(kind, name, params, (m, n), real));
        }
    }
}

/// Every family instance with `2 <= m <= max_m` and `n <= max_n` in the
/// given catalog, grouped by kind in note order.
pub fn enumerate_families(max_m: u64, max_n: u64, catalog: Catalog) -> Vec<FamilyDescriptor> {
    let max_n = max_n.min(REGISTRY_LIMIT);
    let mut sink = Sink {
        out: Vec::new(),
        max_m,
        max_n,
        catalog,
    };
    if catalog == Catalog::Conference {
        conference_families(&mut sink);
    } else {
        difference_set_families(&mut sink);
        steiner_families(&mut sink);
        other_families(&mut sink);
    }
    sink.out.sort_by_key(|fd| fd.kind);
    sink.out
}

fn difference_set_families(sink: &mut Sink) {
    use FamilyKind::*;
    let max_n = sink.max_n;
    let harmonic = |sink: &mut Sink, kind, name: String, params: Vec<u64>, mn: (u64, u64)| {
        sink.push(kind, name, params, mn, harmonic_is_real(mn.0, mn.1));
    };
    for q in prime_powers(max_n) {
        for m in 3u32.. {
            let Some(top) = checked_pow(q, m) else { break };
            let n = (top - 1) / (q - 1);
            if n > max_n {
                break;
            }
            let small = (top / q - 1) / (q - 1);
            harmonic(
                sink,
                Singer,
                format!("PG({},{q})", m - 1),
                vec![(m - 1) as u64, q],
                (small, n),
            );
        }
    }
    for q in prime_powers(max_n) {
        for d in 1u32.. {
            let Some(top) = checked_pow(q, d + 1) else { break };
            let r = (top - 1) / (q - 1);
            let (Some(m), Some(n)) = ((top / q).checked_mul(r), top.checked_mul(r + 1)) else {
                break;
            };
            if n > max_n {
                break;
            }
            harmonic(sink, McFarland, format!("MF({q},{d})"), vec![q, d as u64], (m, n));
        }
    }
    for d in 1u32.. {
        let Some(p) = checked_pow(3, d + 1) else { break };
        let (m, n) = (p / 3 * (p + 1) / 2, p * (p - 1) / 2);
        if n > max_n {
            break;
        }
        harmonic(sink, Spence, format!("Sp({d})"), vec![d as u64], (m, n));
    }
    for t in (1..).take_while(|t| 4 * t - 1 <= max_n) {
        if pp(4 * t - 1) {
            harmonic(sink, Paley, format!("Paley({t})"), vec![t], (2 * t - 1, 4 * t - 1));
        }
    }
    for t in (1..).step_by(2).take_while(|t| 4 * t * t < max_n) {
        if pp(4 * t * t + 1) {
            harmonic(sink, Cyclo4, format!("Cyclo4({t})"), vec![t], (t * t, 4 * t * t + 1));
        }
    }
    for t in (1..).step_by(2).take_while(|t| 4 * t * t + 9 <= max_n) {
        if pp(4 * t * t + 9) {
            harmonic(
                sink,
                Cyclo4Prime,
                format!("Cyclo4prime({t})"),
                vec![t],
                (t * t + 3, 4 * t * t + 9),
            );
        }
    }
    for u in (1..).step_by(2).take_while(|u| 64 * u * u + 9 <= max_n) {
        let n = 64 * u * u + 9;
        if let Some(t) = exact_sqrt(8 * u * u + 1) {
            if t % 2 == 1 && pp(n) {
                harmonic(sink, Cyclo8, format!("Cyclo8({t},{u})"), vec![t, u], (t * t, n));
            }
        }
    }
    for u in (2..).step_by(2).take_while(|u| 64 * u * u + 441 <= max_n) {
        let n = 64 * u * u + 441;
        if let Some(t) = exact_sqrt(8 * u * u + 49) {
            if t % 2 == 1 && pp(n) {
                harmonic(
                    sink,
                    Cyclo8Prime,
                    format!("Cyclo8prime({t},{u})"),
                    vec![t, u],
                    (t * t + 7, n),
                );
            }
        }
    }
    for t in (1..).take_while(|t| 4 * t * t + 27 <= max_n) {
        let n = 4 * t * t + 27;
        if n % 6 == 1 && pp(n) {
            harmonic(sink, Hall, format!("H({t})"), vec![t], (2 * t * t + 13, n));
        }
    }
    for q in (3..).step_by(2).take_while(|q| q * q + 2 * q <= max_n) {
        if odd_pp(q) && odd_pp(q + 2) {
            harmonic(
                sink,
                TwinPrimePower,
                format!("TPP({q})"),
                vec![q],
                ((q * q + 2 * q - 1) / 2, q * q + 2 * q),
            );
        }
    }
}

/// Records the `b x v(r+1)` ETF of a Steiner system `(v, k, 1)` when its
/// divisibility conditions hold.
fn steiner(sink: &mut Sink, kind: FamilyKind, name: String, params: Vec<u64>, v: u64, k: u64) {
    if k < 2 || v <= k || (v - 1) % (k - 1) != 0 || (v * (v - 1)) % (k * (k - 1)) != 0 {
        return;
    }
    let r = (v - 1) / (k - 1);
    let b = v * (v - 1) / (k * (k - 1));
    sink.push(kind, name, params, (b, v * (r + 1)), is_known_hadamard_order(r + 1));
}

fn steiner_families(sink: &mut Sink) {
    use FamilyKind::*;
    let max_n = sink.max_n;
    let admissible = |v: u64, k: u64| match k {
        2 => true,
        3 => v % 6 == 1 || v % 6 == 3,
        4 => v % 12 == 1 || v % 12 == 4,
        5 => v % 20 == 1 || v % 20 == 5,
        6 => (v % 15 == 1 || v % 15 == 6) && !SIX_BLOCK_EXCEPTIONS.contains(&v),
        _ => false,
    };
    for k in 2..=6u64 {
        // n = v (r + 1) >= v
        for v in (k + 1..=max_n).filter(|&v| admissible(v, k)) {
            steiner(sink, SteinerBibd, format!("Steiner BIBD({v},{k},1)"), vec![v, k], v, k);
        }
    }
    for q in prime_powers(max_n) {
        for d in 2u32.. {
            let Some(v) = checked_pow(q, d).filter(|&v| v <= max_n) else {
                break;
            };
            steiner(
                sink,
                SteinerAffine,
                format!("Steiner AG({q},{d})"),
                vec![q, d as u64],
                v,
                q,
            );
        }
        for d in 2u32.. {
            let Some(top) = checked_pow(q, d + 1) else { break };
            let v = (top - 1) / (q - 1);
            if v > max_n {
                break;
            }
            steiner(
                sink,
                SteinerProjective,
                format!("Steiner PG({q},{d})"),
                vec![q, d as u64],
                v,
                q + 1,
            );
        }
    }
    for q in prime_powers(max_n) {
        let Some(v) = checked_pow(q, 3).map(|c| c + 1).filter(|&v| v <= max_n) else {
            break;
        };
        steiner(sink, SteinerUnital, format!("Steiner Unitals({q})"), vec![q], v, q + 1);
    }
    for s in 3u32..40 {
        let Some(big) = checked_pow(2, s) else { break };
        if big > max_n {
            break;
        }
        for r in 2..s {
            let v = (1u64 << (r + s)) + (1u64 << r) - big;
            if v <= max_n {
                let name = format!("Steiner Denniston({r},{s})");
                steiner(sink, SteinerDenniston, name, vec![r as u64, s as u64], v, 1 << r);
            }
        }
    }
}

fn other_families(sink: &mut Sink) {
    use FamilyKind::*;
    let max_n = sink.max_n;
    for q in prime_powers(max_n).filter(|q| q % 4 == 3) {
        sink.push(
            SkewPaley,
            format!("SkewPaley({})", q + 1),
            vec![q + 1],
            ((q - 1) / 2, q),
            false,
        );
    }
    for h in power_of_two_orders(max_n + 1) {
        sink.push(
            SkewHadamard,
            format!("SkewHadamard({h})"),
            vec![h],
            (h / 2 - 1, h - 1),
            false,
        );
    }
    for q in prime_powers(max_n) {
        let Some(n) = checked_pow(q, 3).map(|c| c + 1).filter(|&n| n <= max_n) else {
            break;
        };
        sink.push(
            GeneralizedQuadrangle,
            format!("GQ({q},{})", q * q),
            vec![q],
            (q * q - q + 1, n),
            q % 2 == 1,
        );
    }
    let conference_orders = symmetric_conference_orders(max_n);
    for a in (2..).take_while(|a| a * a <= max_n) {
        let n = a * a;
        let rshcd = [4, 36, 100, 196].contains(&n)
            || is_known_hadamard_order(a)
            || (a > 1 && odd_pp(a - 1) && odd_pp(a + 1))
            || (pp(a + 1) && conference_orders.contains(&a))
            || (a % 2 == 0 && exact_sqrt(a / 2).is_some());
        let side = (n - a) / 2;
        if rshcd {
            sink.push(Rshcd, format!("RSHCD({n})"), vec![n], (side, n), true);
        }
        sink.push(Schcd, format!("SCHCD({n})"), vec![n], (side, n), false);
    }
    for v in (1..).take_while(|v| (v + 1) * (v + 2) / 2 <= max_n) {
        if v % 6 == 1 || v % 6 == 3 {
            let real = (v + 1) % 2 == 0 && is_known_hadamard_order(v.div_ceil(2));
            let mn = ((v + 2) * (v + 3) / 6, (v + 1) * (v + 2) / 2);
            sink.push(Tremain, format!("Tremain({v})"), vec![v], mn, real);
        }
    }
    for q in [4u64, 8] {
        sink.push(
            Hyperoval1,
            format!("Hyperoval1({q})"),
            vec![q],
            (q * q + q - 1, q * (q * q + q - 1)),
            false,
        );
        sink.push(
            Hyperoval2,
            format!("Hyperoval2({q})"),
            vec![q],
            (q * q + q, q * q * (q + 2)),
            false,
        );
    }
    for m in (2..=17u64).chain([19, 24, 28, 35, 48]) {
        sink.push(Maximal, "maximal".to_string(), vec![m], (m, m * m), false);
    }
}

fn conference_families(sink: &mut Sink) {
    use FamilyKind::*;
    let max_n = sink.max_n;
    let half = |n: u64| (n / 2, n);
    for q in prime_powers(max_n.saturating_sub(1)).filter(|q| q % 4 == 1) {
        sink.push(ConferenceA, "(a)".into(), vec![q], half(q + 1), true);
    }
    for (q, n) in conference_b(max_n) {
        sink.push(ConferenceB, "(b)".into(), vec![q], half(n), true);
    }
    for (t, n) in conference_c(max_n) {
        sink.push(ConferenceC, "(c)".into(), vec![t], half(n), true);
    }
    for ((h, s), n) in conference_d(max_n) {
        sink.push(ConferenceD, "(d)".into(), vec![h, s], half(n), true);
    }
    for base in symmetric_conference_orders(max_n) {
        for (s, n) in powers_plus_one(base - 1, 2, max_n) {
            sink.push(ConferenceE, "(e)".into(), vec![base, s as u64], half(n), true);
        }
    }
    for q in prime_powers(max_n.saturating_sub(1)).filter(|q| q % 4 == 3) {
        sink.push(ConferenceF, "(f)".into(), vec![q], half(q + 1), false);
    }
    for h in power_of_two_orders(max_n) {
        sink.push(ConferenceG, "(g)".into(), vec![h], half(h), false);
    }
}

fn graphical_power(n: u64) -> Option<u32> {
    (1..=MAX_KRONECKER_POWER).find(|&k| checked_pow(4, k) == Some(n))
}

fn builder_exists(fd: &FamilyDescriptor) -> bool {
    use FamilyKind::*;
    match fd.kind {
        Singer | McFarland | Paley | SteinerAffine | SteinerProjective | SkewPaley | SkewHadamard => true,
        SteinerBibd => fd.params[1] <= 3,
        Rshcd => graphical_power(fd.n).is_some(),
        ConferenceA | ConferenceF | ConferenceG => true,
        ConferenceD => fd.params[1] == 1,
        _ => false,
    }
}

fn steiner_frame(s: crate::constructions::SteinerSystem, real: bool) -> Result<Frame> {
    let field = if real && hadamard_matrix(s.r() + 1).is_some() {
        FieldTag::Real
    } else {
        FieldTag::Complex
    };
    steiner_etf(&s, field)
}

/// Builds a frame for a constructible descriptor, or explains why not.
pub fn try_construct(fd: &FamilyDescriptor) -> Result<Frame> {
    use FamilyKind::*;
    if !fd.constructible {
        return Err(Error::Precondition(format!(
            "{} has no construction in this library",
            fd.name
        )));
    }
    let p = &fd.params;
    let frame = match fd.kind {
        Singer => harmonic_etf(&singer_difference_set(p[1], p[0] as u32 + 1)?)?,
        McFarland => harmonic_etf(&mcfarland_difference_set(p[0], p[1] as u32)?)?,
        Paley => harmonic_etf(&paley_difference_set(4 * p[0] - 1)?)?,
        SteinerBibd if p[1] == 2 => steiner_frame(steiner_pairs(p[0] as usize)?, fd.real)?,
        SteinerBibd => steiner_frame(steiner_triples(p[0] as usize)?, fd.real)?,
        SteinerAffine => steiner_frame(steiner_from_geometry(Geometry::Affine, p[0], p[1] as u32)?, fd.real)?,
        SteinerProjective => steiner_frame(steiner_from_geometry(Geometry::Projective, p[0], p[1] as u32)?, fd.real)?,
        SkewPaley => naimark_complement(&drop_one_transform(&conference_to_etf(&paley_conference(p[0] - 1)?)?)?)?,
        SkewHadamard => naimark_complement(&drop_one_transform(&conference_to_etf(&skew_conference(
            p[0] as usize,
        )?)?)?)?,
        Rshcd => graphical_hadamard_complement_etf(graphical_power(fd.n).expect("checked by builder_exists"))?,
        ConferenceA | ConferenceF => conference_to_etf(&paley_conference(p[0])?)?,
        ConferenceD => conference_to_etf(&symmetric_from_skew(&skew_conference(p[0] as usize)?)?)?,
        ConferenceG => conference_to_etf(&skew_conference(p[0] as usize)?)?,
        _ => unreachable!("builder_exists admits only the kinds above"),
    };
    if (frame.m() as u64, frame.n() as u64) != (fd.m, fd.n) {
        return Err(Error::RankMismatch {
            expected: fd.m as usize,
            found: frame.m(),
        });
    }
    Ok(frame)
}

/// [`try_construct`] with the error discarded.
pub fn construct(fd: &FamilyDescriptor) -> Option<Frame> {
    try_construct(fd).ok()
}

/// Looks up a descriptor by its label among all catalogs within the table
/// bounds.
pub fn find(name: &str) -> Option<FamilyDescriptor> {
    [Catalog::Complex, Catalog::Conference]
        .into_iter()
        .flat_map(|c| enumerate_families(TABLE_MAX_N / 2, TABLE_MAX_N, c))
        .find(|fd| fd.name == name)
}

/// Pretty-printed JSON list of descriptors.
pub fn to_json(descriptors: &[FamilyDescriptor]) -> String {
    serde_json::to_string_pretty(descriptors).expect("descriptors always serialize")
}
