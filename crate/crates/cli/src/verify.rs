//! The `verify` targets. Each one compares two independent computations and
//! stops a check at its first disagreement.

use num_bigint::BigInt;
use srstirling::graphcombi::{
    constrained_orientation_formula, count_acyclic_orientations, count_constrained_orientations, Graph,
};
use srstirling::polyseq::{
    poly_bernoulli, poly_bernoulli_egf, poly_cauchy_first, poly_cauchy_first_egf, poly_cauchy_second,
    poly_cauchy_second_egf,
};
use srstirling::riordan::{inverse_matrix, is_riordan, stirling_matrix, stirling_pair};
use srstirling::stirling::identities::{check_all, Outcome};
use srstirling::{
    EgfSeries, Guards, IndexSet, Kind, MonoidPolicy, OrderedUniverse, PairUniverse, Rational, Result, SRContext,
    TriMatrix,
};

use crate::output::{Counterexample, Report};

fn example(check: &str, params: String, expected: impl ToString, actual: impl ToString) -> Counterexample {
    Counterexample {
        check: check.to_string(),
        params,
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

pub fn recurrences(set: &IndexSet, r: usize, n_max: usize) -> Result<Report> {
    let mut report = Report::default();
    for rep in check_all(set, r, n_max)? {
        match rep.outcome {
            Outcome::Holds { cases } => report.passed(rep.identity, cases),
            Outcome::NotApplicable(why) => report.skipped(rep.identity, why),
            Outcome::Fails(f) => {
                let params = format!("S={set}, r={r}, {}", f.case);
                report.failed(rep.identity, 1, example(f.identity, params, f.rhs, f.lhs));
            }
        }
    }
    Ok(report)
}

/// First `(n, k)` where `a * b` is not the identity.
fn identity_defect(a: &TriMatrix, b: &TriMatrix) -> Result<Option<(usize, usize, Rational)>> {
    let p = a.multiply(b)?;
    for n in 0..p.size() {
        for k in 0..=n {
            let want = Rational::from_integer(BigInt::from((n == k) as u8));
            if p.get(n, k) != want {
                return Ok(Some((n, k, p.get(n, k))));
            }
        }
    }
    Ok(None)
}

pub fn orthogonality(ctx: &SRContext, size: usize) -> Result<Report> {
    let mut report = Report::default();
    let cases = size * (size + 1) / 2;
    let mut matrices = Vec::new();
    for kind in [Kind::Second, Kind::First] {
        let m = stirling_matrix(ctx, kind, size)?;
        let name = format!("{kind}-kind inverse");
        // the Riordan inverse is computed by series reversion, independently
        // of forward substitution
        let inv = if is_riordan(ctx) {
            stirling_pair(ctx, kind)?.inverse()?.build(size)?
        } else {
            m.invert()?
        };
        let mut bad = None;
        for (a, b, side) in [(&m, &inv, "M*T"), (&inv, &m, "T*M")] {
            if let Some((n, k, v)) = identity_defect(a, b)? {
                bad = Some(example(&name, format!("{side} at n={n}, k={k}"), (n == k) as u8, v));
                break;
            }
        }
        match bad {
            Some(ce) => report.failed(name, cases, ce),
            None => report.passed(name, 2 * cases),
        }
        matrices.push((m, inv));
    }
    if *ctx.set() == IndexSet::all() {
        // T is the signed first kind and U the signed second kind
        let name = "signed cross inverse";
        let mut bad = None;
        'outer: for (inv, other) in [(&matrices[0].1, &matrices[1].0), (&matrices[1].1, &matrices[0].0)] {
            for n in 0..size {
                for k in 0..=n {
                    let mut want = other.get(n, k);
                    if (n - k) % 2 == 1 {
                        want = -want;
                    }
                    if inv.get(n, k) != want {
                        bad = Some(example(name, format!("n={n}, k={k}"), want, inv.get(n, k)));
                        break 'outer;
                    }
                }
            }
        }
        match bad {
            Some(ce) => report.failed(name, 2 * cases, ce),
            None => report.passed(name, 2 * cases),
        }
    } else {
        report.skipped("signed cross inverse", "needs S = all positive integers");
    }
    Ok(report)
}

fn compare_row(report: &mut Report, name: &str, params: &str, sums: &[BigInt], row: &[BigInt]) -> bool {
    for (k, (s, t)) in sums.iter().zip(row).enumerate() {
        if s != t {
            report.failed(name, k + 1, example(name, format!("{params}, k={k}"), t, s));
            return false;
        }
    }
    true
}

pub fn mobius(
    ctx: &SRContext,
    kinds: &[Kind],
    n_max: usize,
    policy: MonoidPolicy,
    guards: &Guards,
) -> Result<Report> {
    let mut report = Report::default();
    let (set, r) = (ctx.set(), ctx.r());
    for &kind in kinds {
        let name = format!("{kind}-kind column sums");
        let inverse = inverse_matrix(ctx, kind, n_max + 1)?.to_integer_rows()?;
        let mut cases = 0;
        let mut ok = true;
        for n in 0..=n_max {
            let sums = match kind {
                Kind::Second => PairUniverse::new(set, r, n, policy, guards)?.mobius_column_sums()?,
                Kind::First => OrderedUniverse::new(set, r, n, policy, guards)?.mobius_column_sums()?,
            };
            let params = format!("S={set}, r={r}, n={n}");
            if !compare_row(&mut report, &name, &params, &sums, &inverse[n]) {
                ok = false;
                break;
            }
            cases += sums.len();
        }
        if ok {
            report.passed(name, cases);
        }
    }
    Ok(report)
}

pub fn orientations(set: &IndexSet, r: usize, n_max: usize, guards: &Guards) -> Result<Report> {
    let mut report = Report::default();

    let name = "constrained orientations";
    let mut cases = 0;
    let mut bad = None;
    'grid: for n1 in 0..=n_max {
        for n2 in 0..=n_max {
            let brute = count_constrained_orientations(n1, n2, r, set, guards)?;
            let formula = constrained_orientation_formula(n1, n2, r, set)?;
            cases += 1;
            if brute != formula {
                bad = Some(example(name, format!("S={set}, n1={n1}, n2={n2}, r={r}"), formula, brute));
                break 'grid;
            }
        }
    }
    match bad {
        Some(ce) => report.failed(name, cases, ce),
        None => report.passed(name, cases),
    }

    let name = "bipartite orientations";
    let ctx = SRContext::new(IndexSet::all(), 0)?;
    let mut cases = 0;
    let mut bad = None;
    'grid2: for n1 in 0..=n_max {
        for n2 in 0..=n_max {
            let brute = count_acyclic_orientations(&Graph::complete_bipartite(n1, n2), guards)?;
            let pb = poly_bernoulli(&ctx, -(n2 as i64), n1)?;
            cases += 1;
            if Rational::from_integer(brute.clone()) != pb {
                bad = Some(example(name, format!("n1={n1}, n2={n2}"), pb, brute));
                break 'grid2;
            }
        }
    }
    match bad {
        Some(ce) => report.failed(name, cases, ce),
        None => report.passed(name, cases),
    }
    Ok(report)
}

type SumFn = fn(&SRContext, i64, usize) -> Result<Rational>;
type EgfFn = fn(&SRContext, i64, usize) -> Result<EgfSeries>;

pub fn polyegf(ctx: &SRContext, mus: &[i64], n_max: usize) -> Result<Report> {
    let mut report = Report::default();
    let families: [(&str, SumFn, EgfFn); 3] = [
        ("poly-Bernoulli", poly_bernoulli, poly_bernoulli_egf),
        ("poly-Cauchy first kind", poly_cauchy_first, poly_cauchy_first_egf),
        ("poly-Cauchy second kind", poly_cauchy_second, poly_cauchy_second_egf),
    ];
    for (name, sum, egf) in families {
        let mut cases = 0;
        let mut bad = None;
        'mus: for &mu in mus {
            let series = egf(ctx, mu, n_max)?;
            for n in 0..=n_max {
                let a = sum(ctx, mu, n)?;
                let b = series.coefficient_egf(n)?;
                cases += 1;
                if a != b {
                    bad = Some(example(name, format!("{}, mu={mu}, n={n}", ctx.describe()), a, b));
                    break 'mus;
                }
            }
        }
        match bad {
            Some(ce) => report.failed(name, cases, ce),
            None => report.passed(name, cases),
        }
    }
    Ok(report)
}
