//! $(S,r)$-Stirling numbers of both kinds, Bell and factorial numbers.
//!
//! Every value is read off a truncated EGF:
//!
//! - second kind: $n!\,[x^n]\ \frac{1}{k!} E_{S'}(x)^r E_S(x)^k$
//! - first kind: $n!\,[x^n]\ \frac{1}{k!} \big(\sum_{s\in S} x^{s-1}\big)^r \big(\sum_{s\in S} x^s/s\big)^k$
//!
//! [`oracle`] counts the same objects by brute force and [`identities`]
//! checks the known recurrences against this engine.

pub mod identities;
pub mod oracle;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::indexset::{cycle_sum, egf_e, egf_e_derived, ogf_shifted, IndexSet};
use crate::series::{factorial, EgfSeries, Rational};
use crate::{Error, Result};

/// Which family of numbers: set partitions or permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Second,
    First,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Second => write!(f, "second"),
            Kind::First => write!(f, "first"),
        }
    }
}

/// A block-size set, a number of special elements and a truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SRContext {
    set: IndexSet,
    r: usize,
    order: usize,
}

impl SRContext {
    pub fn new(set: IndexSet, r: usize) -> Result<Self> {
        Self::with_order(set, r, EgfSeries::DEFAULT_ORDER)
    }

    pub fn with_order(set: IndexSet, r: usize, order: usize) -> Result<Self> {
        if set.contains_zero() {
            return Err(Error::InvalidSet(format!(
                "{set} contains 0; blocks must be nonempty"
            )));
        }
        Ok(SRContext { set, r, order })
    }

    pub fn set(&self) -> &IndexSet {
        &self.set
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The same set and order with a different `r`.
    pub fn with_r(&self, r: usize) -> SRContext {
        SRContext { r, ..self.clone() }
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.order {
            Err(Error::IndexBeyondOrder {
                index: n,
                order: self.order,
            })
        } else {
            Ok(())
        }
    }

    /// The pair `(g, f)` whose column `k` is `g f^k / k!`, truncated at `order`.
    pub fn pair_series(&self, kind: Kind, order: usize) -> Result<(EgfSeries, EgfSeries)> {
        let (base, f) = match kind {
            Kind::Second => (egf_e_derived(&self.set, order)?, egf_e(&self.set, order)),
            Kind::First => (ogf_shifted(&self.set, order)?, cycle_sum(&self.set, order)?),
        };
        Ok((base.pow(self.r as u32), f))
    }

    /// EGF of column `k`, truncated at the context order.
    pub fn column_series(&self, kind: Kind, k: usize) -> Result<EgfSeries> {
        let (g, f) = self.pair_series(kind, self.order)?;
        let scale = Rational::new(One::one(), factorial(k));
        g.mul(&f.pow(k as u32)).map(|c| c.scalar_mul(&scale))
    }

    pub fn stirling(&self, kind: Kind, n: usize, k: usize) -> Result<BigInt> {
        self.check_n(n)?;
        if k > n {
            return Ok(BigInt::zero());
        }
        let (g, f) = self.pair_series(kind, n)?;
        let col = g.mul(&f.pow(k as u32))?;
        let value = counting_value(&col, n, &format!("{kind} kind ({n},{k}) for {}", self.describe()))?;
        Ok(value / factorial(k))
    }

    /// ${n\brace k}_{S,r}$.
    pub fn stirling2(&self, n: usize, k: usize) -> Result<BigInt> {
        self.stirling(Kind::Second, n, k)
    }

    /// ${n\brack k}_{S,r}$.
    pub fn stirling1(&self, n: usize, k: usize) -> Result<BigInt> {
        self.stirling(Kind::First, n, k)
    }

    /// Rows `0..size` of the triangle, row `n` holding `k = 0..=n`.
    pub fn triangle(&self, kind: Kind, size: usize) -> Result<Vec<Vec<BigInt>>> {
        if size == 0 {
            return Ok(Vec::new());
        }
        let top = size - 1;
        self.check_n(top)?;
        let (g, f) = self.pair_series(kind, top)?;
        let mut rows: Vec<Vec<BigInt>> = (0..size).map(|n| vec![BigInt::zero(); n + 1]).collect();
        let mut column = g;
        for k in 0..size {
            let kf = factorial(k);
            for (n, row) in rows.iter_mut().enumerate().skip(k) {
                let context = format!("{kind} kind ({n},{k}) for {}", self.describe());
                let v = counting_value(&column, n, &context)?;
                if (&v % &kf).is_zero() {
                    row[k] = v / &kf;
                } else {
                    return Err(Error::NotIntegral {
                        value: format!("{v}/{kf}"),
                        context,
                    });
                }
            }
            column = column.mul(&f)?;
        }
        Ok(rows)
    }

    /// $B_{n,S,r}$ as a row sum, cross-checked against the Bell EGF.
    pub fn bell(&self, n: usize) -> Result<BigInt> {
        let rows = self.triangle(Kind::Second, n + 1)?;
        let sum: BigInt = rows[n].iter().sum();
        let from_egf = self.bell_from_egf(n)?;
        if sum != from_egf {
            return Err(Error::Inconsistent(format!(
                "Bell number n={n} for {}: row sum {sum} but EGF gives {from_egf}",
                self.describe()
            )));
        }
        Ok(sum)
    }

    /// $n!\,[x^n]\ E_{S'}(x)^r \exp(E_S(x))$.
    pub fn bell_from_egf(&self, n: usize) -> Result<BigInt> {
        self.check_n(n)?;
        let (g, f) = self.pair_series(Kind::Second, n)?;
        let series = g.mul(&f.exp_series()?)?;
        counting_value(&series, n, &format!("Bell n={n} for {}", self.describe()))
    }

    /// Bell numbers for `0..=n_max`, by EGF alone.
    pub fn bell_sequence(&self, n_max: usize) -> Result<Vec<BigInt>> {
        self.check_n(n_max)?;
        let (g, f) = self.pair_series(Kind::Second, n_max)?;
        let series = g.mul(&f.exp_series()?)?;
        (0..=n_max)
            .map(|n| counting_value(&series, n, &format!("Bell n={n} for {}", self.describe())))
            .collect()
    }

    /// $B_{n,S,r}(x) = \sum_k {n\brace k}_{S,r} x^k$.
    pub fn bell_polynomial(&self, n: usize) -> Result<IntPolynomial> {
        let rows = self.triangle(Kind::Second, n + 1)?;
        Ok(IntPolynomial::new(rows[n].clone()))
    }

    /// $A_{n,S,r}(x) = \sum_k {n\brack k}_{S,r} x^k$.
    pub fn factorial_polynomial(&self, n: usize) -> Result<IntPolynomial> {
        let rows = self.triangle(Kind::First, n + 1)?;
        Ok(IntPolynomial::new(rows[n].clone()))
    }

    /// ${n\brace 0}_{S,r}$ by splitting off the special blocks.
    ///
    /// Every block holds exactly one special element. Removing it leaves a
    /// set of size in `S - 1`. If `1` is not in `S` none is empty and the
    /// count is $r!\,{n\brace r}_{S-1}$. Otherwise the `i` specials with a
    /// nonempty remainder give $\sum_i (r)_i\,{n\brace i}_{(S\setminus\{1\})-1}$.
    pub fn stirling2_k0(&self, n: usize) -> Result<BigInt> {
        self.check_n(n)?;
        let r = self.r;
        if !self.set.contains(1) {
            let shifted = SRContext::with_order(self.set.derivative(), 0, n)?;
            return Ok(factorial(r) * shifted.stirling2(n, r)?);
        }
        let reduced = self.set.remove(1)?.derivative();
        let inner = SRContext::with_order(reduced, 0, n)?;
        let mut total = BigInt::zero();
        let mut falling = BigInt::one();
        for i in 0..=r.min(n) {
            total += &falling * inner.stirling2(n, i)?;
            falling *= BigInt::from(r - i);
        }
        Ok(total)
    }

    pub fn describe(&self) -> String {
        format!("S={}, r={}", self.set, self.r)
    }
}

/// `n! t_n`, required to be a nonnegative integer.
fn counting_value(series: &EgfSeries, n: usize, context: &str) -> Result<BigInt> {
    let value = series.integer_egf(n).map_err(|e| match e {
        Error::NotIntegral { value, .. } => Error::NotIntegral {
            value,
            context: context.to_string(),
        },
        other => other,
    })?;
    if value.is_negative() {
        return Err(Error::Inconsistent(format!("negative count {value} ({context})")));
    }
    Ok(value)
}

/// A polynomial with integer coefficients, index = degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = magnitude.is_one();
            match d {
                0 => write!(f, "{magnitude}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{magnitude}x")?,
                _ if unit => write!(f, "x^{d}")?,
                _ => write!(f, "{magnitude}x^{d}")?,
            }
        }
        Ok(())
    }
}
