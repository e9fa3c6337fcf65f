//! Truncated formal power series over exact rationals.
//!
//! An [`EgfSeries`] of order `N` stores the Taylor coefficients
//! `t_0, ..., t_N` of `sum t_n x^n`. Products and compositions are plain
//! Cauchy operations on these; the exponential-generating-function view
//! `a_n = n! t_n` is only applied at the boundary by
//! [`EgfSeries::coefficient_egf`].
//!
//! Binary operations require equal orders. Use [`EgfSeries::truncate`] or
//! [`EgfSeries::extend`] to change precision explicitly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EgfSeries {
    taylor: Vec<Rational>,
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

impl EgfSeries {
    pub const DEFAULT_ORDER: usize = 32;

    pub fn zero(order: usize) -> Self {
        EgfSeries {
            taylor: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.taylor[0] = c;
        s
    }

    /// The series `x`. At order 0 this is the zero series.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.taylor[1] = Rational::one();
        }
        s
    }

    /// Series from Taylor coefficients; the order is `taylor.len() - 1`.
    pub fn from_taylor(taylor: Vec<Rational>) -> Self {
        assert!(!taylor.is_empty(), "a series needs at least one coefficient");
        EgfSeries { taylor }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        EgfSeries {
            taylor: (0..=order).map(f).collect(),
        }
    }

    /// Series whose EGF coefficients are `a_n`, i.e. `t_n = a_n / n!`.
    pub fn from_egf(egf: &[Rational]) -> Self {
        assert!(!egf.is_empty(), "a series needs at least one coefficient");
        let mut fact = BigInt::one();
        let taylor = egf
            .iter()
            .enumerate()
            .map(|(n, a)| {
                if n > 0 {
                    fact *= BigInt::from(n);
                }
                a / Rational::from_integer(fact.clone())
            })
            .collect();
        EgfSeries { taylor }
    }

    pub fn exp_x(order: usize) -> Self {
        Self::from_egf(&vec![Rational::one(); order + 1])
    }

    pub fn order(&self) -> usize {
        self.taylor.len() - 1
    }

    pub fn taylor(&self) -> &[Rational] {
        &self.taylor
    }

    /// Taylor coefficient `t_n`; zero beyond the order.
    pub fn coeff(&self, n: usize) -> Rational {
        self.taylor.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    /// EGF coefficient `a_n = n! t_n`.
    pub fn coefficient_egf(&self, n: usize) -> Result<Rational> {
        if n > self.order() {
            return Err(Error::IndexBeyondOrder {
                index: n,
                order: self.order(),
            });
        }
        Ok(&self.taylor[n] * Rational::from_integer(factorial(n)))
    }

    /// `a_n` as an integer; a fractional value is an error.
    pub fn integer_egf(&self, n: usize) -> Result<BigInt> {
        let a = self.coefficient_egf(n)?;
        if !a.is_integer() {
            return Err(Error::NotIntegral {
                value: a.to_string(),
                context: format!("EGF coefficient {n}"),
            });
        }
        Ok(a.to_integer())
    }

    pub fn egf_coefficients(&self) -> Vec<Rational> {
        let mut fact = BigInt::one();
        self.taylor
            .iter()
            .enumerate()
            .map(|(n, t)| {
                if n > 0 {
                    fact *= BigInt::from(n);
                }
                t * Rational::from_integer(fact.clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.taylor.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        EgfSeries {
            taylor: self.taylor[..=order].to_vec(),
        }
    }

    /// Raise the order, padding with zeros. The padded coefficients are
    /// exact only if the series is a polynomial of degree at most the old
    /// order.
    pub fn extend(&self, order: usize) -> Self {
        let mut taylor = self.taylor.clone();
        if order + 1 > taylor.len() {
            taylor.resize(order + 1, Rational::zero());
        }
        EgfSeries { taylor }
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(EgfSeries {
            taylor: self
                .taylor
                .iter()
                .zip(&other.taylor)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(EgfSeries {
            taylor: self
                .taylor
                .iter()
                .zip(&other.taylor)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        EgfSeries {
            taylor: self.taylor.iter().map(|a| -a).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        EgfSeries {
            taylor: self.taylor.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(EgfSeries {
            taylor: cauchy(&self.taylor, &other.taylor, self.order()),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result.taylor = cauchy(&result.taylor, &base.taylor, self.order());
            }
            e >>= 1;
            if e > 0 {
                base.taylor = cauchy(&base.taylor, &base.taylor, self.order());
            }
        }
        result
    }

    /// `x -> c x`, i.e. `t_n -> c^n t_n`.
    pub fn scale_argument(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let taylor = self
            .taylor
            .iter()
            .map(|t| {
                let v = t * &power;
                power *= c;
                v
            })
            .collect();
        EgfSeries { taylor }
    }

    /// `x -> -x`: flips the sign of odd coefficients.
    pub fn negate_argument(&self) -> Self {
        EgfSeries {
            taylor: self
                .taylor
                .iter()
                .enumerate()
                .map(|(n, t)| if n % 2 == 1 { -t } else { t.clone() })
                .collect(),
        }
    }

    /// Derivative; the order drops by one (an order-0 series stays order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        EgfSeries {
            taylor: self.taylor[1..]
                .iter()
                .enumerate()
                .map(|(i, t)| t * rat(i as i64 + 1))
                .collect(),
        }
    }

    /// Antiderivative with zero constant term; the order rises by one.
    pub fn integral(&self) -> Self {
        let mut taylor = Vec::with_capacity(self.taylor.len() + 1);
        taylor.push(Rational::zero());
        taylor.extend(
            self.taylor
                .iter()
                .enumerate()
                .map(|(i, t)| t / rat(i as i64 + 1)),
        );
        EgfSeries { taylor }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.taylor[0];
        if a0.is_zero() {
            return Err(Error::BadConstantTerm { expected: "nonzero" });
        }
        let inv0 = a0.recip();
        let n = self.order();
        let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.taylor[k].is_zero() {
                    acc += &self.taylor[k] * &b[m - k];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(EgfSeries { taylor: b })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.reciprocal()?)
    }

    /// `g(f(x))` by Horner's rule in the truncated ring; `f` must have zero
    /// constant term.
    pub fn compose(&self, f: &Self) -> Result<Self> {
        self.same_order(f)?;
        if !f.taylor[0].is_zero() {
            return Err(Error::NonzeroConstant);
        }
        Ok(EgfSeries {
            taylor: compose_raw(&self.taylor, &f.taylor, self.order()),
        })
    }

    /// Compositional inverse `f^{<-1>}` by Newton iteration, doubling the
    /// working precision each step.
    pub fn reversion(&self) -> Result<Self> {
        if !self.taylor[0].is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let n = self.order();
        if n == 0 {
            return Err(Error::ZeroLinearTerm);
        }
        if self.taylor[1].is_zero() {
            return Err(Error::ZeroLinearTerm);
        }
        let fprime = self.derivative();
        // g = x / t_1 is correct through order 1.
        let mut g = vec![Rational::zero(), self.taylor[1].recip()];
        let mut prec = 1;
        while prec < n {
            prec = (2 * prec).min(n);
            g.resize(prec + 1, Rational::zero());
            let f_at = &self.taylor[..=prec];
            let fg = compose_raw(f_at, &g, prec);
            // residual r = f(g) - x
            let mut residual = fg;
            residual[1] -= Rational::one();
            let mut fp = fprime.taylor[..prec.min(fprime.order()) + 1].to_vec();
            fp.resize(prec + 1, Rational::zero());
            let fpg = compose_raw(&fp, &g, prec);
            let inv = EgfSeries { taylor: fpg }.reciprocal()?;
            let step = cauchy(&residual, &inv.taylor, prec);
            for (gi, si) in g.iter_mut().zip(step) {
                *gi -= si;
            }
        }
        g.truncate(n + 1);
        g.resize(n + 1, Rational::zero());
        Ok(EgfSeries { taylor: g })
    }

    /// `exp(a)` for `a` with zero constant term.
    pub fn exp_series(&self) -> Result<Self> {
        if !self.taylor[0].is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let n = self.order();
        let mut e: Vec<Rational> = Vec::with_capacity(n + 1);
        e.push(Rational::one());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.taylor[k].is_zero() {
                    acc += &self.taylor[k] * rat(k as i64) * &e[m - k];
                }
            }
            e.push(acc / rat(m as i64));
        }
        Ok(EgfSeries { taylor: e })
    }

    /// `log(a)` for `a` with constant term 1.
    pub fn log_series(&self) -> Result<Self> {
        if !self.taylor[0].is_one() {
            return Err(Error::BadConstantTerm { expected: "1" });
        }
        let n = self.order();
        let mut l: Vec<Rational> = vec![Rational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = &self.taylor[m] * rat(m as i64);
            for k in 1..m {
                if !l[k].is_zero() && !self.taylor[m - k].is_zero() {
                    acc -= rat(k as i64) * &l[k] * &self.taylor[m - k];
                }
            }
            l[m] = acc / rat(m as i64);
        }
        Ok(EgfSeries { taylor: l })
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.taylor.iter().position(|t| !t.is_zero())
    }

    pub fn max_abs_denominator(&self) -> BigInt {
        self.taylor
            .iter()
            .map(|t| t.denom().abs())
            .max()
            .unwrap_or_else(BigInt::one)
    }
}

fn cauchy(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn compose_raw(g: &[Rational], f: &[Rational], order: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); order + 1];
    for gi in g.iter().take(order + 1).rev() {
        acc = cauchy(&acc, f, order);
        acc[0] += gi;
    }
    acc
}
