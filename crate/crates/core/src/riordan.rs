//! Exponential Riordan arrays and the $(S,r)$-Stirling matrices.
//!
//! `M` and `L` hold the second- and first-kind numbers; `T` and `U` are
//! their inverses. When `1 in S` both are Riordan arrays
//! $\langle E_{S'}^r, E_S\rangle$ and
//! $\langle (\sum_{s\in S} x^{s-1})^r, \sum_{s\in S} x^s/s\rangle$.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::series::{factorial, EgfSeries, Rational};
use crate::stirling::{IntPolynomial, Kind, SRContext};
use crate::{Error, Result};

/// A finite lower-triangular matrix over $\mathbb{Q}$.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MatrixJson", try_from = "MatrixJson")]
pub struct TriMatrix {
    rows: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    size: usize,
    rows: Vec<Vec<String>>,
}

impl From<TriMatrix> for MatrixJson {
    fn from(m: TriMatrix) -> Self {
        MatrixJson {
            size: m.size(),
            rows: m
                .rows
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for TriMatrix {
    type Error = Error;

    fn try_from(json: MatrixJson) -> Result<Self> {
        if json.rows.len() != json.size {
            return Err(Error::MalformedMatrix(format!(
                "size {} but {} rows",
                json.size,
                json.rows.len()
            )));
        }
        let rows = json
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        s.parse::<Rational>()
                            .map_err(|_| Error::MalformedMatrix(format!("bad entry {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        TriMatrix::from_rows(rows)
    }
}

impl TriMatrix {
    pub fn identity(size: usize) -> Self {
        let rows = (0..size)
            .map(|n| {
                let mut row = vec![Rational::zero(); n + 1];
                row[n] = Rational::one();
                row
            })
            .collect();
        TriMatrix { rows }
    }

    /// Row `n` must have exactly `n + 1` entries.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::MalformedMatrix(format!(
                    "row {n} has {} entries, expected {}",
                    row.len(),
                    n + 1
                )));
            }
        }
        Ok(TriMatrix { rows })
    }

    pub fn from_integer_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|row| row.into_iter().map(Rational::from_integer).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Entry `(n, k)`; zero above the diagonal. Panics if `n >= size`.
    pub fn get(&self, n: usize, k: usize) -> Rational {
        if k > n {
            Rational::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn column(&self, k: usize) -> Vec<Rational> {
        (0..self.size()).map(|n| self.get(n, k)).collect()
    }

    /// The leading `size x size` block.
    pub fn truncate(&self, size: usize) -> TriMatrix {
        TriMatrix {
            rows: self.rows.iter().take(size).cloned().collect(),
        }
    }

    pub fn multiply(&self, other: &TriMatrix) -> Result<TriMatrix> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let rows = (0..self.size())
            .map(|n| {
                (0..=n)
                    .map(|k| (k..=n).map(|i| &self.rows[n][i] * &other.rows[i][k]).sum())
                    .collect()
            })
            .collect();
        Ok(TriMatrix { rows })
    }

    /// Exact inverse by forward substitution.
    pub fn invert(&self) -> Result<TriMatrix> {
        let size = self.size();
        if let Some(row) = (0..size).find(|&n| self.rows[n][n].is_zero()) {
            return Err(Error::ZeroDiagonal { row });
        }
        let mut inv: Vec<Vec<Rational>> = (0..size).map(|n| vec![Rational::zero(); n + 1]).collect();
        for k in 0..size {
            inv[k][k] = self.rows[k][k].recip();
            for n in k + 1..size {
                let acc: Rational = (k..n).map(|i| &self.rows[n][i] * &inv[i][k]).sum();
                inv[n][k] = -acc / &self.rows[n][n];
            }
        }
        Ok(TriMatrix { rows: inv })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.rows.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().flatten().all(|v| v.is_integer())
    }

    pub fn to_integer_rows(&self) -> Result<Vec<Vec<BigInt>>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                row.iter()
                    .enumerate()
                    .map(|(k, v)| {
                        if v.is_integer() {
                            Ok(v.to_integer())
                        } else {
                            Err(Error::NotIntegral {
                                value: v.to_string(),
                                context: format!("matrix entry ({n},{k})"),
                            })
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialisation cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedMatrix(e.to_string()))
    }
}

/// `<g, f>` with `g(0) != 0`, `f(0) = 0`, `f'(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiordanPair {
    g: EgfSeries,
    f: EgfSeries,
}

impl RiordanPair {
    pub fn new(g: EgfSeries, f: EgfSeries) -> Result<Self> {
        if g.order() != f.order() {
            return Err(Error::OrderMismatch {
                left: g.order(),
                right: f.order(),
            });
        }
        if g.coeff(0).is_zero() {
            return Err(Error::InvalidPair("g(0) must be nonzero".into()));
        }
        if !f.coeff(0).is_zero() {
            return Err(Error::InvalidPair("f(0) must be zero".into()));
        }
        if f.coeff(1).is_zero() {
            return Err(Error::InvalidPair("f'(0) must be nonzero".into()));
        }
        Ok(RiordanPair { g, f })
    }

    pub fn g(&self) -> &EgfSeries {
        &self.g
    }

    pub fn f(&self) -> &EgfSeries {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// Entry `(n, k)` is $n!\,[x^n]\ g f^k / k!$.
    pub fn build(&self, size: usize) -> Result<TriMatrix> {
        if size > self.order() + 1 {
            return Err(Error::IndexBeyondOrder {
                index: size.saturating_sub(1),
                order: self.order(),
            });
        }
        let mut rows: Vec<Vec<Rational>> = (0..size).map(|n| vec![Rational::zero(); n + 1]).collect();
        let mut column = self.g.clone();
        for k in 0..size {
            let kf = Rational::from_integer(factorial(k));
            for (n, row) in rows.iter_mut().enumerate().skip(k) {
                row[k] = column.coefficient_egf(n)? / &kf;
            }
            column = column.mul(&self.f)?;
        }
        Ok(TriMatrix { rows })
    }

    /// $\langle g,f\rangle * \langle h,\ell\rangle = \langle g\,h(f), \ell(f)\rangle$.
    pub fn product(&self, other: &RiordanPair) -> Result<RiordanPair> {
        let g = self.g.mul(&other.g.compose(&self.f)?)?;
        let f = other.f.compose(&self.f)?;
        RiordanPair::new(g, f)
    }

    /// The group inverse $\langle 1/g(\bar f), \bar f\rangle$, $\bar f = f^{\langle -1\rangle}$.
    pub fn inverse(&self) -> Result<RiordanPair> {
        let fbar = self.f.reversion()?;
        let g = self.g.compose(&fbar)?.reciprocal()?;
        RiordanPair::new(g, fbar)
    }
}

/// The Riordan pair of `M` (second kind) or `L` (first kind). Needs `1 in S`.
pub fn stirling_pair(ctx: &SRContext, kind: Kind) -> Result<RiordanPair> {
    if !is_riordan(ctx) {
        return Err(Error::RequiresOne(format!("{} is not a Riordan array", ctx.describe())));
    }
    let (g, f) = ctx.pair_series(kind, ctx.order())?;
    RiordanPair::new(g, f)
}

/// Whether `M` and `L` are Riordan arrays, i.e. `1 in S`.
pub fn is_riordan(ctx: &SRContext) -> bool {
    ctx.set().contains(1)
}

/// `M` or `L`, built entrywise; defined for every `S`.
pub fn stirling_matrix(ctx: &SRContext, kind: Kind, size: usize) -> Result<TriMatrix> {
    TriMatrix::from_integer_rows(ctx.triangle(kind, size)?)
}

/// ${\mathbb M}_{S,r}$.
pub fn matrix_m(ctx: &SRContext, size: usize) -> Result<TriMatrix> {
    stirling_matrix(ctx, Kind::Second, size)
}

/// ${\mathbb L}_{S,r}$.
pub fn matrix_l(ctx: &SRContext, size: usize) -> Result<TriMatrix> {
    stirling_matrix(ctx, Kind::First, size)
}

/// `T` or `U`: the inverse of the Stirling matrix.
pub fn inverse_matrix(ctx: &SRContext, kind: Kind, size: usize) -> Result<TriMatrix> {
    stirling_matrix(ctx, kind, size)?.invert()
}

/// $B_{n,S,r}(x)$ (second kind) or $A_{n,S,r}(x)$ (first kind) from the
/// inverse matrix: $P_m(x) = x^m - \sum_{k<m} T(m,k) P_k(x)$, the expansion
/// of the bordered determinant along its last column.
pub fn polynomial_by_determinant(ctx: &SRContext, kind: Kind, n: usize) -> Result<IntPolynomial> {
    let inv = checked_inverse(ctx, kind, n)?;
    let mut polys: Vec<IntPolynomial> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut p = IntPolynomial::monomial(BigInt::one(), m);
        for (k, q) in polys.iter().enumerate() {
            p = p.sub(&q.scale(&inv[m][k]));
        }
        polys.push(p);
    }
    Ok(polys.pop().expect("n + 1 >= 1 polynomials"))
}

pub fn bell_poly_determinant(ctx: &SRContext, n: usize) -> Result<IntPolynomial> {
    polynomial_by_determinant(ctx, Kind::Second, n)
}

pub fn factorial_poly_determinant(ctx: &SRContext, n: usize) -> Result<IntPolynomial> {
    polynomial_by_determinant(ctx, Kind::First, n)
}

/// The same polynomial as `(-1)^n` times the full `(n+1) x (n+1)`
/// determinant, expanded over all permutations. Limited to `n <= 6`.
pub fn dense_polynomial_determinant(ctx: &SRContext, kind: Kind, n: usize) -> Result<IntPolynomial> {
    if n > 6 {
        return Err(Error::GuardExceeded {
            what: "n (dense determinant)",
            value: n,
            limit: 6,
        });
    }
    let inv = checked_inverse(ctx, kind, n)?;
    let dim = n + 1;
    let entry = |i: usize, j: usize| -> IntPolynomial {
        if i == 0 {
            IntPolynomial::monomial(BigInt::one(), j)
        } else if i - 1 <= j {
            IntPolynomial::new(vec![inv[j][i - 1].clone()])
        } else {
            IntPolynomial::zero()
        }
    };
    let matrix: Vec<Vec<IntPolynomial>> = (0..dim).map(|i| (0..dim).map(|j| entry(i, j)).collect()).collect();
    let det = polynomial_det(&matrix);
    Ok(if n % 2 == 1 { det.scale(&BigInt::from(-1)) } else { det })
}

fn checked_inverse(ctx: &SRContext, kind: Kind, n: usize) -> Result<Vec<Vec<BigInt>>> {
    if !is_riordan(ctx) {
        return Err(Error::RequiresOne(format!(
            "the determinant identity is stated for 1 in S ({})",
            ctx.describe()
        )));
    }
    inverse_matrix(ctx, kind, n + 1)?.to_integer_rows()
}

/// Cofactor expansion along the first row.
fn polynomial_det(m: &[Vec<IntPolynomial>]) -> IntPolynomial {
    let dim = m.len();
    if dim == 0 {
        return IntPolynomial::one();
    }
    if dim == 1 {
        return m[0][0].clone();
    }
    let mut total = IntPolynomial::zero();
    for j in 0..dim {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<IntPolynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = m[0][j].mul(&polynomial_det(&minor));
        total = if j % 2 == 0 { total.add(&term) } else { total.sub(&term) };
    }
    total
}
