//! Necessary conditions for the existence of real and complex ETFs, and a
//! combined verdict for a given `(m, n)`.
//!
//! Integrality questions are decided in exact integer arithmetic. Graph
//! feasibility uses exact arithmetic whenever the SRG eigenvalues are
//! integers and falls back to doubles (relative tolerance `1e-9`) for
//! conference graphs with irrational spectra.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::numbers::{exact_sqrt, is_square_free, is_sum_of_two_squares};
use crate::constructions::SrgParameters;
use crate::error::{Error, Result};
use crate::frames::FieldTag;

const FLOAT_REL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "lowercase")]
pub enum Verdict {
    Plausible,
    Dne(String),
    Trivial,
}

impl Verdict {
    pub fn is_dne(&self) -> bool {
        matches!(self, Verdict::Dne(_))
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Plausible => f.write_str("plausible"),
            Verdict::Trivial => f.write_str("trivial"),
            Verdict::Dne(reason) => write!(f, "DNE ({reason})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubResult {
    pub test: String,
    pub outcome: Outcome,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub m: u64,
    pub n: u64,
    pub real_verdict: Verdict,
    pub complex_verdict: Verdict,
    pub sub_results: Vec<SubResult>,
    pub srg_params: Option<SrgParameters>,
}

/// Result of the SRG feasibility tests for one parameter set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Feasibility {
    pub r: f64,
    pub s: f64,
    pub f: f64,
    pub q111_zero: bool,
    pub krein: bool,
    pub absolute_bound: bool,
    pub mu_one: Outcome,
}

impl Feasibility {
    pub fn passes(&self) -> bool {
        self.krein && self.absolute_bound && self.mu_one != Outcome::Fail
    }
}

/// Status of a real ETF of `m(m+1)/2` vectors in dimension `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MaximalStatus {
    Exists,
    Dne,
    Unknown,
}

/// Pairs known not to admit an ETF despite passing the general tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownDne {
    pub real: BTreeSet<(u64, u64)>,
    pub complex: BTreeSet<(u64, u64)>,
}

fn check_dims(m: u64, n: u64) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(format!("need 1 <= m <= n, got ({m}, {n})")));
    }
    Ok(())
}

/// Gerzon-type bounds `n <= d(d+1)/2` (real) or `n <= d^2` (complex) for
/// both `d = m` and the Naimark side `d = n - m`. A side of dimension at
/// most one carries no constraint.
pub fn dimension_bounds(m: u64, n: u64, field: FieldTag) -> Result<Outcome> {
    check_dims(m, n)?;
    let bound = |d: u64| match field {
        FieldTag::Real => d * (d + 1) / 2,
        FieldTag::Complex => d * d,
    };
    let ok = [m, n - m].iter().all(|&d| d <= 1 || n <= bound(d));
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

/// `sqrt(m(n-1)/(n-m))` and `sqrt((n-m)(n-1)/m)` must both be odd
/// integers when `n != 2m`.
pub fn real_integrality(m: u64, n: u64) -> Result<Outcome> {
    check_dims(m, n)?;
    if n == m {
        return Err(Error::InvalidParameter("integrality needs m < n".into()));
    }
    if n == 2 * m {
        return Ok(Outcome::NotApplicable);
    }
    let odd_root = |num: u64, den: u64| num % den == 0 && exact_sqrt(num / den).is_some_and(|r| r % 2 == 1);
    let ok = odd_root(m * (n - 1), n - m) && odd_root((n - m) * (n - 1), m);
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

/// `sqrt(m(n-1)/(n-m))`, when it is an integer.
pub fn inverse_coherence(m: u64, n: u64) -> Option<u64> {
    if m == 0 || n <= m {
        return None;
    }
    let num = m * (n - 1);
    (num % (n - m) == 0).then(|| exact_sqrt(num / (n - m))).flatten()
}

/// Parameters of the SRG on `n - 1` vertices that a real `m x n` ETF
/// would determine: `k = n/2 - 1 + (1 - n/(2m)) alpha`,
/// `lambda = (3k - n)/2`, `mu = k/2`, with `alpha` the inverse coherence.
pub fn srg_parameters_for(m: u64, n: u64) -> Result<SrgParameters> {
    check_dims(m, n)?;
    let infeasible = |why: &str| Error::Precondition(format!("no SRG for ({m}, {n}): {why}"));
    // 2m k = m(n - 2) + (2m - n) alpha
    let twice_mk: i128 = if n == 2 * m {
        (m * (n - 2)) as i128
    } else {
        let alpha = inverse_coherence(m, n).ok_or_else(|| infeasible("inverse coherence is irrational"))?;
        (m * (n - 2)) as i128 + (2 * m as i128 - n as i128) * alpha as i128
    };
    let denom = 2 * m as i128;
    if twice_mk < 0 || twice_mk % denom != 0 {
        return Err(infeasible("k is not a nonnegative integer"));
    }
    let k = twice_mk / denom;
    let three_k_minus_n = 3 * k - n as i128;
    if three_k_minus_n < 0 || three_k_minus_n % 2 != 0 || k % 2 != 0 {
        return Err(infeasible("lambda or mu is not a nonnegative integer"));
    }
    SrgParameters::new(n - 1, k as u64, (three_k_minus_n / 2) as u64, (k / 2) as u64)
}

/// Krein conditions, the absolute bound and the `mu = 1` divisibility test.
pub fn graph_feasibility(p: &SrgParameters) -> Result<Feasibility> {
    let (v, k, lambda, mu) = (p.v as i128, p.k as i128, p.lambda as i128, p.mu as i128);
    let b = lambda - mu;
    let disc = b * b + 4 * (k - mu);
    if disc < 0 {
        return Err(Error::Precondition(format!("{p} has non-real eigenvalues")));
    }
    let mu_one = if mu == 1 {
        if (v * k) % ((lambda + 1) * (lambda + 2)) == 0 {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    } else {
        Outcome::NotApplicable
    };
    let co = v - k - 1;
    let root = exact_sqrt(disc as u64).map(|x| x as i128);
    let result = match root {
        Some(sq) if (b + sq) % 2 == 0 => {
            let (r, s) = ((b + sq) / 2, (b - sq) / 2);
            let krein = (r + 1) * (k + r + 2 * r * s) <= (k + r) * (s + 1) * (s + 1)
                && (s + 1) * (k + s + 2 * r * s) <= (k + s) * (r + 1) * (r + 1);
            let q111_zero = k > 0 && co > 0 && k * k * co * co + r * r * r * co * co == (r + 1).pow(3) * k * k;
            // f = fnum / fden with fden > 0
            let (mut fnum, mut fden) = (s * (v - 1) + k, s - r);
            if fden < 0 {
                (fnum, fden) = (-fnum, -fden);
            }
            let extra = if q111_zero { 3 } else { 1 };
            let absolute_bound = fden == 0 || 2 * v * fden * fden <= fnum * (fnum + extra * fden);
            Feasibility {
                r: r as f64,
                s: s as f64,
                f: if fden == 0 { f64::NAN } else { fnum as f64 / fden as f64 },
                q111_zero,
                krein,
                absolute_bound,
                mu_one,
            }
        }
        _ => {
            let sq = (disc as f64).sqrt();
            let (b, k, v, co) = (b as f64, k as f64, v as f64, co as f64);
            let (r, s) = ((b + sq) / 2.0, (b - sq) / 2.0);
            let le = |a: f64, c: f64| a <= c + FLOAT_REL_TOL * a.abs().max(c.abs()).max(1.0);
            let krein = le((r + 1.0) * (k + r + 2.0 * r * s), (k + r) * (s + 1.0).powi(2))
                && le((s + 1.0) * (k + s + 2.0 * r * s), (k + s) * (r + 1.0).powi(2));
            let terms = [k * k * co * co, r.powi(3) * co * co, (r + 1.0).powi(3) * k * k];
            let q111_zero = k > 0.0
                && co > 0.0
                && (terms[0] + terms[1] - terms[2]).abs()
                    <= FLOAT_REL_TOL * terms.iter().fold(0.0f64, |a, t| a.max(t.abs()));
            let f = (s * (v - 1.0) + k) / (s - r);
            let extra = if q111_zero { 3.0 } else { 1.0 };
            let absolute_bound = le(v, f * (f + extra) / 2.0);
            Feasibility {
                r,
                s,
                f,
                q111_zero,
                krein,
                absolute_bound,
                mu_one,
            }
        }
    };
    Ok(result)
}

/// Known status of a real ETF with `m(m+1)/2` vectors.
pub fn maximal_real_nonexistence(m: u64) -> MaximalStatus {
    if matches!(m, 3 | 7 | 23) {
        return MaximalStatus::Exists;
    }
    if m == 47 {
        return MaximalStatus::Dne;
    }
    // m = (4k+1)^2 - 2 with k = 2 mod 3 and both k, 2k+1 square-free
    if let Some(root) = exact_sqrt(m + 2) {
        if root % 4 == 1 && root > 1 {
            let k = root / 4;
            if k % 3 == 2 && is_square_free(k) && is_square_free(2 * k + 1) {
                return MaximalStatus::Dne;
            }
        }
    }
    MaximalStatus::Unknown
}

/// A real `m x 2m` ETF needs `m` odd and `2m - 1` a sum of two squares.
pub fn redundancy_two_integrality(m: u64) -> Outcome {
    if m >= 1 && m % 2 == 1 && is_sum_of_two_squares(2 * m - 1) {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

/// Pairs ruled out by results outside the general tests, with Naimark
/// mirrors included on the real side.
pub fn known_dne_pairs() -> KnownDne {
    let mut real = BTreeSet::new();
    for (m, n) in [(19, 76), (20, 96), (47, 1128)] {
        real.insert((m, n));
        real.insert((n - m, n));
    }
    let complex = [(3, 8), (5, 8)].into_iter().collect();
    KnownDne { real, complex }
}

/// Runs every applicable test on `(m, n)` and its Naimark side.
pub fn check(m: u64, n: u64) -> Result<ConditionReport> {
    check_dims(m, n)?;
    let mut report = ConditionReport {
        m,
        n,
        real_verdict: Verdict::Plausible,
        complex_verdict: Verdict::Plausible,
        sub_results: Vec::new(),
        srg_params: None,
    };
    if n == m || n == m + 1 || m == 1 {
        report.real_verdict = Verdict::Trivial;
        report.complex_verdict = Verdict::Trivial;
        let details = match () {
            _ if n == m => "orthonormal basis",
            _ if n == m + 1 => "regular simplex",
            _ => "unimodular scalars in one dimension",
        };
        report.sub_results.push(SubResult {
            test: "trivial".into(),
            outcome: Outcome::Pass,
            details: details.into(),
        });
        return Ok(report);
    }
    let known = known_dne_pairs();
    let mut real_fail: Option<String> = None;
    let mut complex_fail: Option<String> = None;
    let push =
        |report: &mut ConditionReport, test: &str, outcome: Outcome, details: String, fail: &mut Option<String>| {
            if outcome == Outcome::Fail && fail.is_none() {
                *fail = Some(test.to_string());
            }
            report.sub_results.push(SubResult {
                test: test.into(),
                outcome,
                details,
            });
        };

    // real side
    let real_known = known.real.contains(&(m, n));
    let outcome = dimension_bounds(m, n, FieldTag::Real)?;
    push(
        &mut report,
        "real dimension bound",
        outcome,
        format!("n <= d(d+1)/2 for d in {{{m}, {}}}", n - m),
        &mut real_fail,
    );
    let integral = if n == 2 * m {
        let outcome = redundancy_two_integrality(m);
        push(
            &mut report,
            "redundancy-two integrality",
            outcome,
            format!("m odd and 2m-1 = {} a sum of two squares", 2 * m - 1),
            &mut real_fail,
        );
        outcome
    } else {
        let outcome = real_integrality(m, n)?;
        push(
            &mut report,
            "real integrality",
            outcome,
            "sqrt(m(n-1)/(n-m)) and sqrt((n-m)(n-1)/m) odd integers".into(),
            &mut real_fail,
        );
        outcome
    };
    if integral == Outcome::Pass {
        let mut outcome = Outcome::Pass;
        let mut details = Vec::new();
        for (side, d) in [("m", m), ("n-m", n - m)] {
            match srg_parameters_for(d, n).and_then(|p| Ok((p, graph_feasibility(&p)?))) {
                Ok((p, feas)) => {
                    if d == m {
                        report.srg_params = Some(p);
                    }
                    if !feas.passes() {
                        outcome = Outcome::Fail;
                    }
                    details.push(format!(
                        "{side}: {p} krein={} absolute={} q111_zero={} mu_one={:?}",
                        feas.krein, feas.absolute_bound, feas.q111_zero, feas.mu_one
                    ));
                }
                Err(e) => {
                    outcome = Outcome::Fail;
                    details.push(format!("{side}: {e}"));
                }
            }
        }
        push(
            &mut report,
            "graph feasibility",
            outcome,
            details.join("; "),
            &mut real_fail,
        );
    } else {
        push(
            &mut report,
            "graph feasibility",
            Outcome::NotApplicable,
            "integrality failed".into(),
            &mut real_fail,
        );
    }
    let maximal_side = [m, n - m].into_iter().find(|&d| n == d * (d + 1) / 2);
    match maximal_side {
        Some(d) => {
            let status = maximal_real_nonexistence(d);
            let outcome = if status == MaximalStatus::Dne {
                Outcome::Fail
            } else {
                Outcome::Pass
            };
            push(
                &mut report,
                "maximal real ETF",
                outcome,
                format!("dimension {d}: {status:?}"),
                &mut real_fail,
            );
        }
        None => push(
            &mut report,
            "maximal real ETF",
            Outcome::NotApplicable,
            "n != d(d+1)/2".into(),
            &mut real_fail,
        ),
    }
    report.sub_results.push(SubResult {
        test: "known real nonexistence".into(),
        outcome: if real_known { Outcome::Fail } else { Outcome::Pass },
        details: "hard-coded nonexistence results".into(),
    });

    // complex side
    let complex_known = known.complex.contains(&(m, n)) || known.complex.contains(&(n - m, n));
    let outcome = dimension_bounds(m, n, FieldTag::Complex)?;
    push(
        &mut report,
        "complex dimension bound",
        outcome,
        format!("n <= d^2 for d in {{{m}, {}}}", n - m),
        &mut complex_fail,
    );
    report.sub_results.push(SubResult {
        test: "known complex nonexistence".into(),
        outcome: if complex_known { Outcome::Fail } else { Outcome::Pass },
        details: "hard-coded nonexistence results".into(),
    });

    report.real_verdict = if real_known {
        Verdict::Dne("known real nonexistence".into())
    } else if let Some(test) = real_fail {
        Verdict::Dne(test)
    } else {
        Verdict::Plausible
    };
    report.complex_verdict = if complex_known {
        Verdict::Dne("known complex nonexistence".into())
    } else if let Some(test) = complex_fail {
        Verdict::Dne(test)
    } else {
        Verdict::Plausible
    };
    Ok(report)
}
