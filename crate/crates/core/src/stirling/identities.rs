//! Recurrences for $(S,r)$-Stirling and Bell numbers, checked numerically.
//!
//! Each checker walks `0 <= k <= n <= n_max` (Bell forms: `n <= n_max`) and
//! reports the first case where the two sides differ. Sums over `s in S`
//! stop at `n + 2`; every binomial vanishes beyond that.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Kind, SRContext};
use crate::indexset::{egf_e, IndexSet};
use crate::series::factorial;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub identity: &'static str,
    pub case: String,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}: lhs = {}, rhs = {}", self.identity, self.case, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds { cases: usize },
    Fails(Failure),
    NotApplicable(&'static str),
}

impl Outcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, Outcome::Fails(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub identity: &'static str,
    pub outcome: Outcome,
}

/// Names of every identity checked by [`check_all`], in report order.
pub const IDENTITIES: &[&str] = &[
    "k-weighted",
    "r-weighted",
    "size-weighted",
    "n-step",
    "singletons",
    "fixed-size",
    "reduction",
    "k0-proposition",
    "bell-r-step",
    "bell-weighted",
    "bell-n-step",
    "bell-singletons",
    "k-weighted-first",
    "r-weighted-first",
    "size-weighted-first",
    "n-step-first",
    "singletons-first",
    "fixed-size-first",
    "broder",
];

/// Memoised triangles for the sets and `r` values an identity touches.
pub struct Tables {
    size: usize,
    cache: HashMap<(String, usize, Kind), Vec<Vec<BigInt>>>,
}

impl Tables {
    /// Tables covering `n <= n_max`.
    pub fn new(n_max: usize) -> Self {
        Tables {
            size: n_max + 1,
            cache: HashMap::new(),
        }
    }

    fn rows(&mut self, kind: Kind, set: &IndexSet, r: usize) -> Result<&Vec<Vec<BigInt>>> {
        let key = (set.to_string(), r, kind);
        if !self.cache.contains_key(&key) {
            let ctx = SRContext::with_order(set.clone(), r, self.size - 1)?;
            let rows = ctx.triangle(kind, self.size)?;
            self.cache.insert(key.clone(), rows);
        }
        Ok(&self.cache[&key])
    }

    /// The value at `(n, k)`, zero outside `0 <= k <= n`.
    pub fn get(&mut self, kind: Kind, set: &IndexSet, r: usize, n: i64, k: i64) -> Result<BigInt> {
        if n < 0 || k < 0 || k > n {
            return Ok(BigInt::zero());
        }
        let size = self.size;
        let rows = self.rows(kind, set, r)?;
        let row = rows.get(n as usize).ok_or(Error::IndexBeyondOrder {
            index: n as usize,
            order: size - 1,
        })?;
        Ok(row[k as usize].clone())
    }

    /// Row sum of the second kind: $B_{n,S,r}$, zero for negative `n`.
    pub fn bell(&mut self, set: &IndexSet, r: usize, n: i64) -> Result<BigInt> {
        if n < 0 {
            return Ok(BigInt::zero());
        }
        let rows = self.rows(Kind::Second, set, r)?;
        Ok(rows[n as usize].iter().sum())
    }
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn fact(n: i64) -> BigInt {
    factorial(n as usize)
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `s in S` with `1 <= s <= bound`.
fn members(set: &IndexSet, bound: i64) -> Vec<i64> {
    set.elements_up_to(bound.max(0) as u64)
        .into_iter()
        .filter(|&s| s >= 1)
        .map(|s| s as i64)
        .collect()
}

/// `l! {m brace l}_{S-1}`: ordered `l`-tuples of possibly empty blocks of
/// sizes in `S - 1` covering `[m]`.
fn ordered_shifted_blocks(set: &IndexSet, l: usize, m: i64) -> Result<BigInt> {
    if m < 0 {
        return Ok(BigInt::zero());
    }
    let m = m as usize;
    egf_e(&set.derivative(), m).pow(l as u32).integer_egf(m)
}

struct Grid<'a> {
    identity: &'static str,
    set: &'a IndexSet,
    r: usize,
    cases: usize,
}

impl<'a> Grid<'a> {
    fn new(identity: &'static str, set: &'a IndexSet, r: usize) -> Self {
        Grid { identity, set, r, cases: 0 }
    }

    fn compare(&mut self, case: impl FnOnce() -> String, lhs: BigInt, rhs: BigInt) -> Option<Failure> {
        self.cases += 1;
        if lhs == rhs {
            None
        } else {
            Some(Failure {
                identity: self.identity,
                case: format!("S={}, r={}, {}", self.set, self.r, case()),
                lhs,
                rhs,
            })
        }
    }

    fn done(self) -> Outcome {
        Outcome::Holds { cases: self.cases }
    }
}

macro_rules! check {
    ($grid:expr, $case:expr, $lhs:expr, $rhs:expr) => {
        if let Some(f) = $grid.compare(|| $case, $lhs, $rhs) {
            return Ok(Outcome::Fails(f));
        }
    };
}

/// First-kind weight of a cycle of size `s`: `(s-1)!`. Second kind: 1.
fn cycle_weight(kind: Kind, s: i64) -> BigInt {
    match kind {
        Kind::Second => BigInt::one(),
        Kind::First => fact(s - 1),
    }
}

/// `k T(n,k) = sum_s w(s) C(n,s) T(n-s,k-1)`.
pub fn check_k_weighted(t: &mut Tables, kind: Kind, set: &IndexSet, r: usize, n_max: usize) -> Result<Outcome> {
    let name = if kind == Kind::Second { "k-weighted" } else { "k-weighted-first" };
    let mut g = Grid::new(name, set, r);
    for n in 0..=n_max as i64 {
        for k in 0..=n {
            let lhs = big(k) * t.get(kind, set, r, n, k)?;
            let mut rhs = BigInt::zero();
            for s in members(set, n) {
                rhs += cycle_weight(kind, s) * binomial(n, s) * t.get(kind, set, r, n - s, k - 1)?;
            }
            check!(g, format!("n={n}, k={k}"), lhs, rhs);
        }
    }
    Ok(g.done())
}

/// `r T_r(n,k) = sum_s r w(s) C(n,s-1) T_{r-1}(n-s+1,k)`.
pub fn check_r_weighted(t: &mut Tables, kind: Kind, set: &IndexSet, r: usize, n_max: usize) -> Result<Outcome> {
    let name = if kind == Kind::Second { "r-weighted" } else { "r-weighted-first" };
    if r == 0 {
        return Ok(Outcome::NotApplicable("needs r >= 1"));
    }
    let mut g = Grid::new(name, set, r);
    let rb = big(r as i64);
    for n in 0..=n_max as i64 {
        for k in 0..=n {
            let lhs = &rb * t.get(kind, set, r, n, k)?;
            let mut rhs = BigInt::zero();
            for s in members(set, n + 1) {
                rhs += &rb * cycle_weight(kind, s) * binomial(n, s - 1) * t.get(kind, set, r - 1, n - s + 1, k)?;
            }
            check!(g, format!("n={n}, k={k}"), lhs, rhs);
        }
    }
    Ok(g.done())
}

/// `(n+r) T_r(n,k) = sum_s s w(s) C(n,s) T_r(n-s,k-1) + r sum_s s w(s) C(n,s-1) T_{r-1}(n-s+1,k)`.
pub fn check_size_weighted(t: &mut Tables, kind: Kind, set: &IndexSet, r: usize, n_max: usize) -> Result<Outcome> {
    let name = if kind == Kind::Second { "size-weighted" } else { "size-weighted-first" };
    let mut g = Grid::new(name, set, r);
    let rb = big(r as i64);
    for n in 0..=n_max as i64 {
        for k in 0..=n {
            let lhs = big(n + r as i64) * t.get(kind, set, r, n, k)?;
            let mut rhs = BigInt::zero();
            for s in members(set, n + 1) {
                let w = big(s) * cycle_weight(kind, s);
                rhs += &w * binomial(n, s) * t.get(kind, set, r, n - s, k - 1)?;
                if r > 0 {
                    rhs += &rb * &w * binomial(n, s - 1) * t.get(kind, set, r - 1, n - s + 1, k)?;
                }
            }
            check!(g, format!("n={n}, k={k}"), lhs, rhs);
        }
    }
    Ok(g.done())
}

/// `T_r(n+1,k) = T_{r+1}(n,k-1) + r sum_s w(s) C(n,s-2) T_{r-1}(n-s+2,k)`.
pub fn check_n_step(t: &mut Tables, kind: Kind, set: &IndexSet, r: usize, n_max: usize) -> Result<Outcome> {
    let name = if kind == Kind::Second { "n-step" } else { "n-step-first" };
    let mut g = Grid::new(name, set, r);
    let rb = big(r as i64);
    for n in 0..n_max as i64 {
        for k in 0..=n + 1 {
            let lhs = t.get(kind, set, r, n + 1, k)?;
            let mut rhs = t.get(kind, set, r + 1, n, k - 1)?;
            if r > 0 {
                for s in members(set, n + 2) {
                    rhs += &rb * cycle_weight(kind, s) * binomial(n, s - 2) * t.get(kind, set, r - 1, n - s + 2, k)?;
                }
            }
            check!(g, format!("n={n}, k={k}"), lhs, rhs);
        }
    }
    Ok(g.done())
}

/// With `1 in S`: `T_{S,r}(n,k) = sum_{i,j} C(r,i) C(n,j) T_{S-{1},r-i}(n-j,k-j)`.
pub fn check_singletons(t: &mut Tables, kind: Kind, set: &IndexSet, r: usize, n_max: usize) -> Result<Outcome> {
    let name = if kind == Kind::Second { "singletons" } else { "singletons-first" };
    if !set.contains(1) {
        return Ok(Outcome::NotApplicable("needs 1 in S"));
    }
    let reduced = set.remove(1)?;
    let mut g = Grid::new(name, set, r);
    for n in 0..=n_max as i64 {
        for k in 0..=n {
            let lhs = t.get(kind, set, r, n, k)?;
            let mut rhs = BigInt::zero();
            for i in 0..=r as i64 {
                for j in 0..=k {
                    rhs += binomial(r as i64, i) * binomial(n, j) * t.get(kind, &reduced, r - i as usize, n - j, k - j)?;
                }
            }
            check!(g, format!("n={n}, k={k}"), lhs, rhs);
        }
    }
    Ok(g.done())
}

/// Counting by blocks (or cycles) of a fixed size `u in S`.
///
/// Second kind weight: `n! / ((u-1)!^i u!^j j! (n-(u-1)i-uj)!)`.
/// First kind weight: `n! / (u^j j! (n-(u-1)i-uj)!)`.
pub fn check_fixed_size(t: &mut Tables, kind: Kind, set: &IndexSet, r: usize, n_max: usize) -> Result<Outcome> {
    let name = if kind == Kind::Second { "fixed-size" } else { "fixed-size-first" };
    let mut g = Grid::new(name, set, r);
    for u in members(set, n_max as i64) {
        let reduced = set.remove(u as u64)?;
        for n in 0..=n_max as i64 {
            for k in 0..=n {
                let lhs = t.get(kind, set, r, n, k)?;
                let mut rhs = BigInt::zero();
                for i in 0..=r as i64 {
                    for j in 0..=k {
                        let used = (u - 1) * i + u * j;
                        if used > n {
                            continue;
                        }
                        let denominator = match kind {
                            Kind::Second => {
                                num_traits::pow(fact(u - 1), i as usize)
                                    * num_traits::pow(fact(u), j as usize)
                                    * fact(j)
                                    * fact(n - used)
                            }
                            Kind::First => num_traits::pow(big(u), j as usize) * fact(j) * fact(n - used),
                        };
                        let weight = binomial(r as i64, i) * fact(n) / denominator;
                        rhs += weight * t.get(kind, &reduced, r - i as usize, n - used, k - j)?;
                    }
                }
                check!(g, format!("u={u}, n={n}, k={k}"), lhs, rhs);
            }
        }
    }
    Ok(g.done())
}

/// Both forms of the `r`-reduction for every `0 <= l <= r`.
pub fn check_reduction(t: &mut Tables, set: &IndexSet, r: usize, n_max: usize) -> Result<Outcome> {
    let mut g = Grid::new("reduction", set, r);
    let kind = Kind::Second;
    for l in 0..=r {
        for n in 0..=n_max as i64 {
            for k in 0..=n {
                let lhs = t.get(kind, set, r, n, k)?;
                let mut first = BigInt::zero();
                let mut second = BigInt::zero();
                for j in 0..=n {
                    let head = binomial(n, j) * t.get(kind, set, r - l, j, k)?;
                    first += &head * ordered_shifted_blocks(set, l, n - j)?;
                    second += &head * t.get(kind, set, l, n - j, 0)?;
                }
                check!(g, format!("l={l}, n={n}, k={k} (first form)"), lhs.clone(), first);
                check!(g, format!("l={l}, n={n}, k={k} (second form)"), lhs, second);
            }
        }
    }
    Ok(g.done())
}

/// ${n\brace 0}_{S,r}$ from the special-block decomposition.
pub fn check_k0(t: &mut Tables, set: &IndexSet, r: usize, n_max: usize) -> Result<Outcome> {
    let mut g = Grid::new("k0-proposition", set, r);
    let ctx = SRContext::with_order(set.clone(), r, n_max)?;
    for n in 0..=n_max as i64 {
        let lhs = t.get(Kind::Second, set, r, n, 0)?;
        let rhs = ctx.stirling2_k0(n as usize)?;
        check!(g, format!("n={n}"), lhs, rhs);
    }
    Ok(g.done())
}

/// The three Bell recurrences and, when `1 in S`, the singleton expansion.
pub fn check_bell(t: &mut Tables, set: &IndexSet, r: usize, n_max: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let rb = big(r as i64);

    let mut g = Grid::new("bell-r-step", set, r);
    let outcome = 'block: {
        for n in 0..=n_max as i64 {
            let lhs = t.bell(set, r + 1, n)?;
            let mut rhs = BigInt::zero();
            for s in members(set, n + 1) {
                rhs += binomial(n, s - 1) * t.bell(set, r, n - s + 1)?;
            }
            if let Some(f) = g.compare(|| format!("n={n}"), lhs, rhs) {
                break 'block Outcome::Fails(f);
            }
        }
        g.done()
    };
    out.push(Report { identity: "bell-r-step", outcome });

    let mut g = Grid::new("bell-weighted", set, r);
    let outcome = 'block: {
        for n in 0..=n_max as i64 {
            let lhs = big(n + r as i64) * t.bell(set, r, n)?;
            let mut rhs = BigInt::zero();
            for s in members(set, n + 1) {
                rhs += big(s) * binomial(n, s) * t.bell(set, r, n - s)?;
                if r > 0 {
                    rhs += &rb * big(s) * binomial(n, s - 1) * t.bell(set, r - 1, n - s + 1)?;
                }
            }
            if let Some(f) = g.compare(|| format!("n={n}"), lhs, rhs) {
                break 'block Outcome::Fails(f);
            }
        }
        g.done()
    };
    out.push(Report { identity: "bell-weighted", outcome });

    let mut g = Grid::new("bell-n-step", set, r);
    let outcome = 'block: {
        for n in 0..n_max as i64 {
            let lhs = t.bell(set, r, n + 1)?;
            let mut rhs = t.bell(set, r + 1, n)?;
            if r > 0 {
                for s in members(set, n + 2) {
                    rhs += &rb * binomial(n, s - 2) * t.bell(set, r - 1, n - s + 2)?;
                }
            }
            if let Some(f) = g.compare(|| format!("n={n}"), lhs, rhs) {
                break 'block Outcome::Fails(f);
            }
        }
        g.done()
    };
    out.push(Report { identity: "bell-n-step", outcome });

    let outcome = if set.contains(1) {
        let reduced = set.remove(1)?;
        let mut g = Grid::new("bell-singletons", set, r);
        'block: {
            for n in 0..=n_max as i64 {
                let lhs = t.bell(set, r, n)?;
                let mut rhs = BigInt::zero();
                for i in 0..=r as i64 {
                    for j in 0..=n {
                        rhs += binomial(r as i64, i) * binomial(n, j) * t.bell(&reduced, r - i as usize, n - j)?;
                    }
                }
                if let Some(f) = g.compare(|| format!("n={n}"), lhs, rhs) {
                    break 'block Outcome::Fails(f);
                }
            }
            g.done()
        }
    } else {
        Outcome::NotApplicable("needs 1 in S")
    };
    out.push(Report { identity: "bell-singletons", outcome });
    Ok(out)
}

/// `T_r(n,k) = (k+r) T_r(n-1,k) + T_r(n-1,k-1)`, for `S` = all positive integers.
pub fn check_broder(t: &mut Tables, set: &IndexSet, r: usize, n_max: usize) -> Result<Outcome> {
    if *set != IndexSet::all() {
        return Ok(Outcome::NotApplicable("needs S = all positive integers"));
    }
    let mut g = Grid::new("broder", set, r);
    let kind = Kind::Second;
    for n in 1..=n_max as i64 {
        for k in 0..=n {
            let lhs = t.get(kind, set, r, n, k)?;
            let rhs = big(k + r as i64) * t.get(kind, set, r, n - 1, k)? + t.get(kind, set, r, n - 1, k - 1)?;
            check!(g, format!("n={n}, k={k}"), lhs, rhs);
        }
    }
    Ok(g.done())
}

/// Runs every identity for one `(S, r)` over `n <= n_max`.
pub fn check_all(set: &IndexSet, r: usize, n_max: usize) -> Result<Vec<Report>> {
    let mut t = Tables::new(n_max);
    let mut out = Vec::new();
    let mut push = |identity: &'static str, outcome: Outcome| out.push(Report { identity, outcome });
    push("k-weighted", check_k_weighted(&mut t, Kind::Second, set, r, n_max)?);
    push("r-weighted", check_r_weighted(&mut t, Kind::Second, set, r, n_max)?);
    push("size-weighted", check_size_weighted(&mut t, Kind::Second, set, r, n_max)?);
    push("n-step", check_n_step(&mut t, Kind::Second, set, r, n_max)?);
    push("singletons", check_singletons(&mut t, Kind::Second, set, r, n_max)?);
    push("fixed-size", check_fixed_size(&mut t, Kind::Second, set, r, n_max)?);
    push("reduction", check_reduction(&mut t, set, r, n_max)?);
    push("k0-proposition", check_k0(&mut t, set, r, n_max)?);
    let bell = check_bell(&mut t, set, r, n_max)?;
    for report in bell {
        push(report.identity, report.outcome);
    }
    push("k-weighted-first", check_k_weighted(&mut t, Kind::First, set, r, n_max)?);
    push("r-weighted-first", check_r_weighted(&mut t, Kind::First, set, r, n_max)?);
    push("size-weighted-first", check_size_weighted(&mut t, Kind::First, set, r, n_max)?);
    push("n-step-first", check_n_step(&mut t, Kind::First, set, r, n_max)?);
    push("singletons-first", check_singletons(&mut t, Kind::First, set, r, n_max)?);
    push("fixed-size-first", check_fixed_size(&mut t, Kind::First, set, r, n_max)?);
    push("broder", check_broder(&mut t, set, r, n_max)?);
    Ok(out)
}
