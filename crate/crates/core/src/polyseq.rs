//! $(S,r)$-poly-Bernoulli and $(S,r)$-poly-Cauchy numbers, by finite sum and
//! by generating function.
//!
//! $$\mathbb{B}^{(\mu)}_{n,S,r} = \sum_k {n \brace k}_{S,r} \frac{(-1)^{n-k} k!}{(k+1)^\mu},\qquad
//! c^{(\mu)}_{n,S,r} = \sum_k {n \brack k}_{S,r} \frac{(-1)^{n-k}}{(k+1)^\mu},\qquad
//! \widehat{c}^{(\mu)}_{n,S,r} = \sum_k {n \brack k}_{S,r} \frac{(-1)^{n}}{(k+1)^\mu}.$$

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::indexset::{egf_e, egf_e_derived, egf_f, ogf_shifted};
use crate::series::{factorial, EgfSeries, Rational};
use crate::stirling::SRContext;
use crate::Result;

/// $(k+1)^{-\mu}$, computed as an integer power when $\mu \le 0$.
fn weight(k: usize, mu: i64) -> Rational {
    let base = BigInt::from(k as u64 + 1);
    let p = num_traits::pow(base, mu.unsigned_abs() as usize);
    if mu <= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// $\mathrm{Li}_\mu(t) = \sum_{n \ge 1} t^n / n^\mu$, truncated at `order`.
pub fn polylog(mu: i64, order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |n| if n == 0 { Rational::zero() } else { weight(n - 1, mu) })
}

/// $\mathrm{Lif}_\mu(t) = \sum_{n \ge 0} t^n / (n! (n+1)^\mu)$.
pub fn polylog_factorial(mu: i64, order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |n| weight(n, mu) / Rational::from_integer(factorial(n)))
}

/// $\mathrm{Li}_\mu(x)/x = \sum_{k \ge 0} x^k / (k+1)^\mu$.
pub fn polylog_over_x(mu: i64, order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |k| weight(k, mu))
}

pub fn poly_bernoulli(ctx: &SRContext, mu: i64, n: usize) -> Result<Rational> {
    let mut total = Rational::zero();
    for k in 0..=n {
        let s = Rational::from_integer(ctx.stirling2(n, k)?);
        total += s * sign(n - k) * Rational::from_integer(factorial(k)) * weight(k, mu);
    }
    Ok(total)
}

/// $\bigl(E_{S-1}(-t)\bigr)^r \,\mathrm{Li}_\mu(X)/X$ with $X = -E_S(-t)$.
pub fn poly_bernoulli_egf(ctx: &SRContext, mu: i64, order: usize) -> Result<EgfSeries> {
    let x = egf_e(ctx.set(), order).negate_argument().neg();
    let head = egf_e_derived(ctx.set(), order)?.negate_argument().pow(ctx.r() as u32);
    head.mul(&polylog_over_x(mu, order).compose(&x)?)
}

pub fn poly_cauchy_first(ctx: &SRContext, mu: i64, n: usize) -> Result<Rational> {
    let mut total = Rational::zero();
    for k in 0..=n {
        total += Rational::from_integer(ctx.stirling1(n, k)?) * sign(n - k) * weight(k, mu);
    }
    Ok(total)
}

pub fn poly_cauchy_second(ctx: &SRContext, mu: i64, n: usize) -> Result<Rational> {
    let mut total = Rational::zero();
    for k in 0..=n {
        total += Rational::from_integer(ctx.stirling1(n, k)?) * weight(k, mu);
    }
    Ok(total * sign(n))
}

/// $\bigl(\sum_{s \in S} (-t)^{s-1}\bigr)^r$.
fn cauchy_head(ctx: &SRContext, order: usize) -> Result<EgfSeries> {
    Ok(ogf_shifted(ctx.set(), order)?.negate_argument().pow(ctx.r() as u32))
}

/// $\bigl(\sum_{s \in S} (-t)^{s-1}\bigr)^r \mathrm{Lif}_\mu(F_S(t))$.
pub fn poly_cauchy_first_egf(ctx: &SRContext, mu: i64, order: usize) -> Result<EgfSeries> {
    let inner = egf_f(ctx.set(), order)?;
    cauchy_head(ctx, order)?.mul(&polylog_factorial(mu, order).compose(&inner)?)
}

/// $\bigl(\sum_{s \in S} (-t)^{s-1}\bigr)^r \mathrm{Lif}_\mu(-F_S(t))$.
pub fn poly_cauchy_second_egf(ctx: &SRContext, mu: i64, order: usize) -> Result<EgfSeries> {
    let inner = egf_f(ctx.set(), order)?.neg();
    cauchy_head(ctx, order)?.mul(&polylog_factorial(mu, order).compose(&inner)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, ratio};

    fn ctx(s: &str, r: usize) -> SRContext {
        SRContext::new(s.parse().unwrap(), r).unwrap()
    }

    #[test]
    fn polylog_special_cases() {
        let n = 12;
        // Li_1 = -log(1 - t)
        let one_minus_t = EgfSeries::one(n).sub(&EgfSeries::x(n)).unwrap();
        assert_eq!(polylog(1, n), one_minus_t.log_series().unwrap().neg());
        // Li_0 = t / (1 - t)
        assert_eq!(polylog(0, n), EgfSeries::x(n).div(&one_minus_t).unwrap());
        assert_eq!(polylog_factorial(0, n), EgfSeries::exp_x(n));
        assert_eq!(polylog(-2, n).coeff(3), rat(9));
    }

    #[test]
    fn classical_values() {
        let all = ctx("all", 0);
        assert_eq!(poly_bernoulli(&all, -2, 2).unwrap(), rat(14));
        assert_eq!(poly_bernoulli(&all, 1, 1).unwrap(), ratio(1, 2));
        assert_eq!(poly_bernoulli(&all, 1, 2).unwrap(), ratio(1, 6));
        assert_eq!(poly_cauchy_first(&all, 1, 1).unwrap(), ratio(1, 2));
        assert_eq!(poly_cauchy_first(&all, 1, 2).unwrap(), ratio(-1, 6));
        assert_eq!(poly_cauchy_second(&all, 1, 2).unwrap(), ratio(5, 6));
        for mu in -2..=2 {
            assert_eq!(poly_bernoulli(&ctx("odd", 2), mu, 0).unwrap(), rat(1));
            assert_eq!(poly_cauchy_first(&all, mu, 0).unwrap(), rat(1));
        }
    }

    #[test]
    fn egf_matches_sum_for_a_few_cases() {
        for (s, r) in [("all", 0), ("odd", 2), ("{1,3,8}", 1), ("2..", 3)] {
            let c = ctx(s, r);
            for mu in [-1, 2] {
                let b = poly_bernoulli_egf(&c, mu, 8).unwrap();
                let c1 = poly_cauchy_first_egf(&c, mu, 8).unwrap();
                let c2 = poly_cauchy_second_egf(&c, mu, 8).unwrap();
                for n in 0..=8 {
                    assert_eq!(b.coefficient_egf(n).unwrap(), poly_bernoulli(&c, mu, n).unwrap());
                    assert_eq!(c1.coefficient_egf(n).unwrap(), poly_cauchy_first(&c, mu, n).unwrap());
                    assert_eq!(c2.coefficient_egf(n).unwrap(), poly_cauchy_second(&c, mu, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn second_kind_cauchy_generating_function() {
        // t / ((1 + t) log(1 + t))
        let n = 10;
        let one_plus_t = EgfSeries::one(n).add(&EgfSeries::x(n)).unwrap();
        let log = one_plus_t.log_series().unwrap();
        // log(1+t)/t, shifted down one place
        let mut shifted: Vec<Rational> = log.taylor()[1..].to_vec();
        shifted.push(Rational::zero());
        let denom = one_plus_t.mul(&EgfSeries::from_taylor(shifted)).unwrap();
        let gf = denom.reciprocal().unwrap();
        let all = ctx("all", 0);
        // the last coefficient is lost to the shift
        for k in 0..n {
            assert_eq!(gf.coefficient_egf(k).unwrap(), poly_cauchy_second(&all, 1, k).unwrap());
        }
    }
}
