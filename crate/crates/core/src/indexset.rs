//! The block-size set `S`.
//!
//! Base sets are subsets of the positive integers, given either as an
//! explicit finite list or as one of a few closed families. Shifting and
//! removing elements produce derived sets; the derivative `S' = S - 1` may
//! contain 0 (an empty composition component).
//!
//! Text grammar (whitespace-insensitive): `all`, `odd`, `even`, `1..m`,
//! `m..`, `mod q` and `{a,b,c}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::series::{factorial, rat, EgfSeries, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet {
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Explicit(BTreeSet<u64>),
    UpTo(u64),
    AtLeast(u64),
    All,
    /// `{q k + 1 : k >= 0}`
    Congruence(u64),
    Odd,
    Even,
    Shifted(Box<Repr>, i64),
    Without(Box<Repr>, BTreeSet<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidVerdict {
    Yes,
    No(MonoidWitness),
    /// Closure holds for every pair whose combination is at most `bound`.
    YesUpToBound(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonoidWitness {
    MissingOne,
    /// `s1 + s2 - 1` is not in the set.
    NotClosed(u64, u64),
}

impl MonoidVerdict {
    pub fn is_no(&self) -> bool {
        matches!(self, MonoidVerdict::No(_))
    }
}

impl fmt::Display for MonoidVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidVerdict::Yes => write!(f, "yes"),
            MonoidVerdict::YesUpToBound(b) => write!(f, "yes up to {b}"),
            MonoidVerdict::No(MonoidWitness::MissingOne) => write!(f, "no: 1 is missing"),
            MonoidVerdict::No(MonoidWitness::NotClosed(a, b)) => {
                write!(f, "no: {a} + {b} - 1 = {} is missing", a + b - 1)
            }
        }
    }
}

impl Repr {
    fn contains(&self, s: u64) -> bool {
        match self {
            Repr::Explicit(set) => set.contains(&s),
            Repr::UpTo(m) => (1..=*m).contains(&s),
            Repr::AtLeast(m) => s >= *m && s >= 1,
            Repr::All => s >= 1,
            Repr::Congruence(q) => s >= 1 && (s - 1).is_multiple_of(*q),
            Repr::Odd => s % 2 == 1,
            Repr::Even => s >= 2 && s.is_multiple_of(2),
            Repr::Shifted(base, by) => {
                let t = s as i64 - by;
                t >= 0 && base.contains(t as u64)
            }
            Repr::Without(base, removed) => !removed.contains(&s) && base.contains(s),
        }
    }

    fn max_element(&self) -> Option<u64> {
        match self {
            Repr::Explicit(set) => set.iter().next_back().copied(),
            Repr::UpTo(m) => Some(*m),
            Repr::Shifted(base, by) => base.max_element().map(|m| (m as i64 + by) as u64),
            Repr::Without(base, removed) => {
                let top = base.max_element()?;
                (0..=top)
                    .rev()
                    .find(|s| !removed.contains(s) && base.contains(*s))
            }
            _ => None,
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            Repr::Explicit(_) | Repr::UpTo(_) => true,
            Repr::Shifted(base, _) | Repr::Without(base, _) => base.is_finite(),
            _ => false,
        }
    }

    fn min_element(&self) -> Option<u64> {
        match self {
            Repr::Explicit(set) => set.iter().next().copied(),
            Repr::UpTo(_) | Repr::All | Repr::Congruence(_) | Repr::Odd => Some(1),
            Repr::AtLeast(m) => Some(*m),
            Repr::Even => Some(2),
            Repr::Shifted(base, by) => base.min_element().map(|m| (m as i64 + by) as u64),
            Repr::Without(base, removed) => {
                let start = base.min_element()?;
                match base.max_element() {
                    Some(top) => (start..=top).find(|s| !removed.contains(s) && base.contains(*s)),
                    // infinitely many candidates, finitely many removed
                    None => (start..).find(|s| !removed.contains(s) && base.contains(*s)),
                }
            }
        }
    }
}

impl IndexSet {
    pub fn all() -> Self {
        IndexSet { repr: Repr::All }
    }

    pub fn odd() -> Self {
        IndexSet { repr: Repr::Odd }
    }

    pub fn even() -> Self {
        IndexSet { repr: Repr::Even }
    }

    /// `{1, ..., m}`.
    pub fn up_to(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSet("1..m needs m >= 1".into()));
        }
        Ok(IndexSet { repr: Repr::UpTo(m) })
    }

    /// `{m, m + 1, ...}`.
    pub fn at_least(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSet("m.. needs m >= 1".into()));
        }
        Ok(IndexSet {
            repr: Repr::AtLeast(m),
        })
    }

    /// `S_q = {q k + 1 : k >= 0}`.
    pub fn congruence(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidSet("mod q needs q >= 1".into()));
        }
        Ok(IndexSet {
            repr: Repr::Congruence(q),
        })
    }

    /// A nonempty finite set of positive integers.
    pub fn explicit<I: IntoIterator<Item = u64>>(elements: I) -> Result<Self> {
        let set: BTreeSet<u64> = elements.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidSet("explicit set must be nonempty".into()));
        }
        if set.contains(&0) {
            return Err(Error::InvalidSet("explicit set elements must be >= 1".into()));
        }
        Ok(IndexSet {
            repr: Repr::Explicit(set),
        })
    }

    pub fn contains(&self, s: u64) -> bool {
        self.repr.contains(s)
    }

    pub fn contains_zero(&self) -> bool {
        self.repr.contains(0)
    }

    pub fn is_finite(&self) -> bool {
        self.repr.is_finite()
    }

    pub fn max_element(&self) -> Option<u64> {
        self.repr.max_element()
    }

    pub fn min_element(&self) -> Option<u64> {
        self.repr.min_element()
    }

    pub fn is_empty(&self) -> bool {
        self.min_element().is_none()
    }

    /// Elements `<= bound` in increasing order.
    pub fn elements_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&s| self.contains(s)).collect()
    }

    /// True for the closed families (not explicit lists, not derived sets).
    pub fn is_closed_family(&self) -> bool {
        matches!(
            self.repr,
            Repr::All | Repr::Odd | Repr::Even | Repr::Congruence(_) | Repr::UpTo(_) | Repr::AtLeast(_)
        )
    }

    /// `S' = {s - 1 : s in S}`; may contain 0.
    pub fn derivative(&self) -> IndexSet {
        self.shift(-1, true)
            .expect("elements of a base set are >= 1, so S - 1 >= 0")
    }

    /// `S + a`. Elements must stay `>= 1`, or `>= 0` when `allow_zero`.
    pub fn shift(&self, by: i64, allow_zero: bool) -> Result<IndexSet> {
        let floor = if allow_zero { 0 } else { 1 };
        if let Some(min) = self.min_element() {
            if (min as i64) + by < floor {
                return Err(Error::InvalidSet(format!(
                    "shifting {self} by {by} gives element {}",
                    min as i64 + by
                )));
            }
        }
        if by == 0 {
            return Ok(self.clone());
        }
        let repr = match &self.repr {
            Repr::Explicit(set) => Repr::Explicit(set.iter().map(|&s| (s as i64 + by) as u64).collect()),
            Repr::Shifted(base, a) if a + by == 0 => (**base).clone(),
            Repr::Shifted(base, a) => Repr::Shifted(base.clone(), a + by),
            other => Repr::Shifted(Box::new(other.clone()), by),
        };
        Ok(IndexSet { repr })
    }

    /// `S - {u}`; `u` must be an element.
    pub fn remove(&self, u: u64) -> Result<IndexSet> {
        if !self.contains(u) {
            return Err(Error::NotAnElement {
                element: u,
                set: self.to_string(),
            });
        }
        let repr = match &self.repr {
            Repr::Explicit(set) => {
                let mut set = set.clone();
                set.remove(&u);
                Repr::Explicit(set)
            }
            Repr::UpTo(m) => Repr::Explicit((1..=*m).filter(|&s| s != u).collect()),
            Repr::Without(base, removed) => {
                let mut removed = removed.clone();
                removed.insert(u);
                Repr::Without(base.clone(), removed)
            }
            other => Repr::Without(Box::new(other.clone()), BTreeSet::from([u])),
        };
        Ok(IndexSet { repr })
    }

    /// Decide whether `S` is a `+1`-monoid: `1 in S` and
    /// `s1, s2 in S => s1 + s2 - 1 in S`.
    ///
    /// Odd, all and congruence sets are answered exactly. Anything else gets
    /// a bounded pairwise check, which can only certify closure up to `bound`.
    pub fn is_plus_one_monoid(&self, bound: u64) -> MonoidVerdict {
        let bound = bound.max(2);
        match self.repr {
            Repr::All | Repr::Odd | Repr::Congruence(_) => return MonoidVerdict::Yes,
            Repr::Even => return MonoidVerdict::No(MonoidWitness::MissingOne),
            _ => {}
        }
        if !self.contains(1) {
            return MonoidVerdict::No(MonoidWitness::MissingOne);
        }
        let elements = self.elements_up_to(bound);
        for (i, &a) in elements.iter().enumerate() {
            for &b in &elements[i..] {
                let c = a + b - 1;
                if c > bound {
                    break;
                }
                if !self.contains(c) {
                    return MonoidVerdict::No(MonoidWitness::NotClosed(a, b));
                }
            }
        }
        MonoidVerdict::YesUpToBound(bound)
    }

    fn bounded(&self, order: usize) -> impl Iterator<Item = u64> + '_ {
        self.elements_up_to(order as u64).into_iter()
    }
}

/// `E_S(t) = sum_{s in S} t^s / s!`.
pub fn egf_e(set: &IndexSet, order: usize) -> EgfSeries {
    let mut out = EgfSeries::zero(order).taylor().to_vec();
    for s in set.bounded(order) {
        out[s as usize] = Rational::new(One::one(), factorial(s as usize));
    }
    EgfSeries::from_taylor(out)
}

/// `sum_{s in S} t^{s-1} / (s-1)!`, i.e. `E_{S'}(t)`.
pub fn egf_e_derived(set: &IndexSet, order: usize) -> Result<EgfSeries> {
    if set.contains_zero() {
        return Err(Error::InvalidSet(format!("{set} contains 0; S - 1 would be negative")));
    }
    Ok(egf_e(&set.derivative(), order))
}

/// `F_S(t) = sum_{s in S} (-1)^{s+1} t^s / s`.
pub fn egf_f(set: &IndexSet, order: usize) -> Result<EgfSeries> {
    if set.contains_zero() {
        return Err(Error::InvalidSet(format!("{set} contains 0; t^0/0 is undefined")));
    }
    let mut out = vec![Rational::zero(); order + 1];
    for s in set.bounded(order) {
        let sign = if s % 2 == 1 { 1 } else { -1 };
        out[s as usize] = Rational::new(sign.into(), s.into());
    }
    Ok(EgfSeries::from_taylor(out))
}

/// `sum_{s in S} t^s / s`, the column generator for cycles.
pub fn cycle_sum(set: &IndexSet, order: usize) -> Result<EgfSeries> {
    if set.contains_zero() {
        return Err(Error::InvalidSet(format!("{set} contains 0; t^0/0 is undefined")));
    }
    let mut out = vec![Rational::zero(); order + 1];
    for s in set.bounded(order) {
        out[s as usize] = Rational::new(One::one(), s.into());
    }
    Ok(EgfSeries::from_taylor(out))
}

/// The ordinary shifted sum `sum_{s in S} t^{s-1}`.
pub fn ogf_shifted(set: &IndexSet, order: usize) -> Result<EgfSeries> {
    if set.contains_zero() {
        return Err(Error::InvalidSet(format!("{set} contains 0; t^-1 is not a power series")));
    }
    let mut out = vec![Rational::zero(); order + 1];
    for s in set.bounded(order + 1) {
        out[s as usize - 1] = rat(1);
    }
    Ok(EgfSeries::from_taylor(out))
}

impl fmt::Display for Repr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Repr::Explicit(set) => {
                write!(f, "{{")?;
                for (i, s) in set.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, "}}")
            }
            Repr::UpTo(m) => write!(f, "1..{m}"),
            Repr::AtLeast(m) => write!(f, "{m}.."),
            Repr::All => write!(f, "all"),
            Repr::Congruence(q) => write!(f, "mod {q}"),
            Repr::Odd => write!(f, "odd"),
            Repr::Even => write!(f, "even"),
            Repr::Shifted(base, by) if *by < 0 => write!(f, "({base})-{}", -by),
            Repr::Shifted(base, by) => write!(f, "({base})+{by}"),
            Repr::Without(base, removed) => {
                write!(f, "({base})\\{{")?;
                for (i, s) in removed.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.repr.fmt(f)
    }
}

impl FromStr for IndexSet {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let fail = |reason: &str| Error::SetParse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let number = |s: &str| -> Result<u64> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(fail(&format!("{s:?} is not a positive integer")));
            }
            s.parse::<u64>().map_err(|_| fail("integer out of range"))
        };
        match compact.as_str() {
            "all" => return Ok(IndexSet::all()),
            "odd" => return Ok(IndexSet::odd()),
            "even" => return Ok(IndexSet::even()),
            "" => return Err(fail("empty input")),
            _ => {}
        }
        if let Some(q) = compact.strip_prefix("mod") {
            return IndexSet::congruence(number(q)?).map_err(|e| fail(&e.to_string()));
        }
        if let Some(inner) = compact.strip_prefix('{') {
            let inner = inner.strip_suffix('}').ok_or_else(|| fail("missing closing brace"))?;
            if inner.is_empty() {
                return Err(fail("explicit set must be nonempty"));
            }
            let elements = inner.split(',').map(number).collect::<Result<Vec<_>>>()?;
            return IndexSet::explicit(elements).map_err(|e| fail(&e.to_string()));
        }
        if let Some(m) = compact.strip_suffix("..") {
            return IndexSet::at_least(number(m)?).map_err(|e| fail(&e.to_string()));
        }
        if let Some(m) = compact.strip_prefix("1..") {
            return IndexSet::up_to(number(m)?).map_err(|e| fail(&e.to_string()));
        }
        Err(fail("expected all, odd, even, 1..m, m.., mod q or {a,b,...}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> IndexSet {
        s.parse().unwrap()
    }

    #[test]
    fn membership() {
        assert!(IndexSet::odd().contains(3));
        assert!(!IndexSet::odd().contains(4));
        assert!(set("mod 3").contains(7));
        assert!(!set("mod 3").contains(6));
        assert!(set("{1,3,8}").contains(8));
        assert!(!set("{1,3,8}").contains(2));
        assert!(set("2..").contains(2) && !set("2..").contains(1));
        assert!(set("1..3").contains(3) && !set("1..3").contains(4));
        assert!(!set("even").contains(0));
    }

    #[test]
    fn grammar_round_trip() {
        for text in ["all", "odd", "even", "1..3", "2..", "mod 3", "{1,3,8}"] {
            assert_eq!(set(text).to_string(), text);
        }
        assert_eq!(set("  { 8, 1 ,3 } "), set("{1,3,8}"));
        assert_eq!(set("mod3"), set("mod 3"));
    }

    #[test]
    fn grammar_rejects_garbage() {
        for bad in ["", "{}", "{0,1}", "{1,2", "3..7", "mod", "mod 0", "0..", "1..0", "odds", "{a}"] {
            assert!(bad.parse::<IndexSet>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn derivative_examples() {
        let d = set("{1,3,8}").derivative();
        assert_eq!(d.elements_up_to(10), vec![0, 2, 7]);
        let d = IndexSet::odd().derivative();
        assert_eq!(d.elements_up_to(8), vec![0, 2, 4, 6, 8]);
        let d = set("mod 3").derivative();
        assert_eq!(d.elements_up_to(10), vec![0, 3, 6, 9]);
        assert!(d.contains_zero());
    }

    #[test]
    fn shift_and_remove() {
        assert_eq!(
            set("{1,3,8}").shift(-1, true).unwrap().elements_up_to(10),
            vec![0, 2, 7]
        );
        assert!(set("{1,3,8}").shift(-1, false).is_err());
        assert!(set("{1,3,8}").shift(-2, true).is_err());
        assert_eq!(set("{1,3,8}").remove(1).unwrap(), set("{3,8}"));
        assert!(set("{1,3,8}").remove(2).is_err());
        let r = IndexSet::odd().remove(1).unwrap();
        assert_eq!(r.elements_up_to(9), vec![3, 5, 7, 9]);
        assert_eq!(r.min_element(), Some(3));
        assert!(!r.is_finite());
        let up = set("1..3").remove(2).unwrap();
        assert_eq!(up.elements_up_to(9), vec![1, 3]);
        let emptied = set("{1}").remove(1).unwrap();
        assert!(emptied.is_empty());
    }

    #[test]
    fn shift_then_derivative_is_identity() {
        for text in ["all", "odd", "even", "1..3", "2..", "mod 3", "{1,3,8}"] {
            let s = set(text);
            let back = s.shift(1, false).unwrap().derivative();
            assert_eq!(back.elements_up_to(30), s.elements_up_to(30), "{text}");
        }
    }

    #[test]
    fn monoid_verdicts() {
        assert_eq!(IndexSet::odd().is_plus_one_monoid(20), MonoidVerdict::Yes);
        assert_eq!(IndexSet::all().is_plus_one_monoid(20), MonoidVerdict::Yes);
        assert_eq!(set("mod 4").is_plus_one_monoid(20), MonoidVerdict::Yes);
        assert_eq!(
            set("{1,3,8}").is_plus_one_monoid(10),
            MonoidVerdict::No(MonoidWitness::NotClosed(3, 3))
        );
        assert_eq!(
            IndexSet::even().is_plus_one_monoid(10),
            MonoidVerdict::No(MonoidWitness::MissingOne)
        );
        assert_eq!(set("{1}").is_plus_one_monoid(10), MonoidVerdict::YesUpToBound(10));
        assert_eq!(
            set("1..3").is_plus_one_monoid(10),
            MonoidVerdict::No(MonoidWitness::NotClosed(2, 3))
        );
    }

    #[test]
    fn closed_families_agree_with_bounded_check() {
        for text in ["all", "odd", "even", "mod 2", "mod 3", "mod 5"] {
            let s = set(text);
            let bound = 40;
            let explicit = IndexSet::explicit(s.elements_up_to(bound)).unwrap();
            let exact = s.is_plus_one_monoid(bound);
            let bounded = explicit.is_plus_one_monoid(bound);
            assert_eq!(exact.is_no(), bounded.is_no(), "{text}");
        }
    }

    #[test]
    fn generating_series() {
        let all = IndexSet::all();
        let mut expm1 = EgfSeries::exp_x(10).taylor().to_vec();
        expm1[0] = Rational::zero();
        assert_eq!(egf_e(&all, 10).taylor(), &expm1[..]);
        let odd = IndexSet::odd();
        let sinh = egf_e(&odd, 9).egf_coefficients();
        let cosh = egf_e_derived(&odd, 9).unwrap().egf_coefficients();
        for n in 0..=9 {
            assert_eq!(sinh[n], rat((n % 2) as i64));
            assert_eq!(cosh[n], rat(((n + 1) % 2) as i64));
        }
        let f = egf_f(&all, 6).unwrap();
        let expected: Vec<Rational> = (0..=6)
            .map(|n| if n == 0 { rat(0) } else { Rational::new(if n % 2 == 1 { 1.into() } else { (-1).into() }, (n as i64).into()) })
            .collect();
        assert_eq!(f.taylor(), &expected[..]);
        let o = ogf_shifted(&set("{1,3,8}"), 8).unwrap();
        assert_eq!(o.coeff(0), rat(1));
        assert_eq!(o.coeff(2), rat(1));
        assert_eq!(o.coeff(7), rat(1));
        assert_eq!(o.coeff(1), rat(0));
    }
}
