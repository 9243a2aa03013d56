//! The circle group `T = R/Z` over the rationals extended by formal square roots
//! of primes.
//!
//! A [`TorusElement`] is a [`SurdReal`] taken modulo 1, stored with its rational
//! part in `[0, 1)`. Two elements are equal exactly when their normalized forms
//! agree, and an element has finite order exactly when it has no surd terms.
//! [`Arc`]s are open with rational endpoints; [`solve_arc`] picks a division
//! point of prescribed multiple inside an arc while dodging one forbidden value.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::real::{floor_rat, Marker, SurdReal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("arc length {0} is outside (0, 1]")]
    BadArcLength(BigRational),
    #[error("need m >= 2 and 1 <= n < m, got m = {m}, n = {n}")]
    BadMultipliers { m: BigInt, n: BigInt },
    #[error("2/{m} is not below the arc length {length}")]
    ArcTooShort { m: BigInt, length: BigRational },
    #[error("cannot parse torus element {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Allocator of fresh formal irrationals. Markers are handed out in increasing
/// prime order, so two runs that allocate in the same order agree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IrrationalBasis {
    symbols: Vec<Marker>,
}

impl IrrationalBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// A basis that has already handed out `count` markers.
    pub fn with_allocated(count: usize) -> Self {
        IrrationalBasis {
            symbols: (0..count as u32).map(Marker).collect(),
        }
    }

    pub fn fresh(&mut self) -> Marker {
        let m = Marker(self.symbols.len() as u32);
        self.symbols.push(m);
        m
    }

    pub fn symbols(&self) -> &[Marker] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TorusElement {
    rational: BigRational,
    surds: BTreeMap<Marker, BigRational>,
}

fn frac(q: &BigRational) -> BigRational {
    q - BigRational::from_integer(floor_rat(q))
}

impl TorusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(q: BigRational) -> Self {
        TorusElement {
            rational: frac(&q),
            surds: BTreeMap::new(),
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    /// Image of a real number under `R -> T`.
    pub fn from_real(x: &SurdReal) -> Self {
        TorusElement {
            rational: frac(x.rational_part()),
            surds: x.surds().clone(),
        }
    }

    pub fn surd(marker: Marker, coeff: BigRational) -> Self {
        Self::from_real(&SurdReal::surd(marker, coeff))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surds(&self) -> &BTreeMap<Marker, BigRational> {
        &self.surds
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surds.is_empty()
    }

    /// The stored representative as a real number (rational part in `[0, 1)`).
    pub fn lift(&self) -> SurdReal {
        SurdReal::new(self.rational.clone(), self.surds.clone())
    }

    /// The representative lying in `[0, 1)`.
    pub fn unit_lift(&self) -> SurdReal {
        let x = self.lift();
        if x.is_rational() {
            return x;
        }
        let f = x.floor();
        x.add_rational(&BigRational::from_integer(-f))
    }

    pub fn add(&self, other: &TorusElement) -> TorusElement {
        Self::from_real(&self.lift().add(&other.lift()))
    }

    pub fn neg(&self) -> TorusElement {
        Self::from_real(&self.lift().neg())
    }

    pub fn sub(&self, other: &TorusElement) -> TorusElement {
        Self::from_real(&self.lift().sub(&other.lift()))
    }

    pub fn scale(&self, n: &BigInt) -> TorusElement {
        Self::from_real(&self.lift().scale(&BigRational::from_integer(n.clone())))
    }

    pub fn scale_i64(&self, n: i64) -> TorusElement {
        self.scale(&BigInt::from(n))
    }

    /// `None` when the element has infinite order.
    pub fn order(&self) -> Option<BigInt> {
        self.surds
            .is_empty()
            .then(|| self.rational.denom().clone())
    }

    /// Compares the `[0, 1)` representative with `q`.
    pub fn compare_to_rational(&self, q: &BigRational) -> Ordering {
        self.unit_lift().cmp_rational(q)
    }

    /// `f64` enclosure of the `[0, 1)` representative.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        self.unit_lift().to_f64_bounds()
    }
}

pub fn compare_to_rational(a: &TorusElement, q: &BigRational) -> Ordering {
    a.compare_to_rational(q)
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        for (m, c) in &self.surds {
            write!(f, " + ({c})*{m}")?;
        }
        Ok(())
    }
}

/// Parses `p/q` or an integer; decimal points are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let parse_int = |t: &str| -> Result<BigInt, String> {
        if t.is_empty() || !t.trim_start_matches(['-', '+']).chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("{s:?} is not an exact rational p/q"));
        }
        t.parse::<BigInt>().map_err(|e| e.to_string())
    };
    let n = parse_int(num)?;
    let d = parse_int(den)?;
    if d.is_zero() {
        return Err(format!("{s:?} has a zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out
}

fn parse_sqrt(t: &str) -> Result<Marker, String> {
    let inner = t
        .trim()
        .strip_prefix("sqrt(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("{t:?} is not sqrt(p)"))?;
    let p: u64 = inner
        .trim()
        .parse()
        .map_err(|_| format!("{inner:?} is not a prime"))?;
    Marker::from_prime(p).ok_or_else(|| format!("{p} is not a prime"))
}

impl FromStr for TorusElement {
    type Err = TorusError;

    /// Accepts `p/q + (a/b)*sqrt(r) + …` in any term order; `·` is accepted as
    /// the multiplication sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| TorusError::Parse {
            input: s.to_string(),
            reason,
        };
        let mut rational = BigRational::zero();
        let mut surds: BTreeMap<Marker, BigRational> = BTreeMap::new();
        for term in split_terms(&s.replace('·', "*")) {
            let t = term.trim();
            if t.is_empty() {
                return Err(err("empty term".into()));
            }
            if t.contains("sqrt") {
                let (coef, root) = match t.split_once('*') {
                    Some((c, r)) => {
                        let c = c.trim();
                        let c = c
                            .strip_prefix('(')
                            .and_then(|c| c.strip_suffix(')'))
                            .unwrap_or(c);
                        (parse_rational(c).map_err(err)?, r)
                    }
                    None => (BigRational::one(), t),
                };
                let m = parse_sqrt(root).map_err(err)?;
                *surds.entry(m).or_insert_with(BigRational::zero) += coef;
            } else {
                rational += parse_rational(t).map_err(err)?;
            }
        }
        Ok(Self::from_real(&SurdReal::new(rational, surds)))
    }
}

/// An open arc `(start, start + length)` of `T` with rational endpoints.
/// Length 1 stands for the whole circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    start: BigRational,
    length: BigRational,
}

impl Arc {
    pub fn new(start: BigRational, length: BigRational) -> Result<Self, TorusError> {
        if !length.is_positive() || length > BigRational::one() {
            return Err(TorusError::BadArcLength(length));
        }
        Ok(Arc {
            start: frac(&start),
            length,
        })
    }

    pub fn from_ratios(start: (i64, i64), length: (i64, i64)) -> Result<Self, TorusError> {
        Arc::new(
            BigRational::new(start.0.into(), start.1.into()),
            BigRational::new(length.0.into(), length.1.into()),
        )
    }

    pub fn full() -> Self {
        Arc {
            start: BigRational::zero(),
            length: BigRational::one(),
        }
    }

    pub fn start(&self) -> &BigRational {
        &self.start
    }

    pub fn length(&self) -> &BigRational {
        &self.length
    }

    /// `start + length`, possibly beyond 1.
    pub fn end(&self) -> BigRational {
        &self.start + &self.length
    }

    pub fn is_full(&self) -> bool {
        self.length.is_one()
    }

    pub fn midpoint(&self) -> TorusElement {
        TorusElement::from_rational(&self.start + &self.length / BigRational::from_integer(2.into()))
    }

    pub fn contains(&self, y: &TorusElement) -> bool {
        if self.is_full() {
            return true;
        }
        let end = self.end();
        let u = y.unit_lift();
        if end <= BigRational::one() {
            u.cmp_rational(&self.start) == Ordering::Greater
                && u.cmp_rational(&end) == Ordering::Less
        } else {
            u.cmp_rational(&self.start) == Ordering::Greater
                || u.cmp_rational(&(end - BigRational::one())) == Ordering::Less
        }
    }

    /// Distance from a rational point inside the arc to the nearer endpoint.
    pub(crate) fn clearance(&self, y: &BigRational) -> Option<BigRational> {
        if self.is_full() {
            return Some(BigRational::one());
        }
        let mut u = frac(y);
        if u <= self.start {
            u += BigRational::one();
        }
        let end = self.end();
        (u < end).then(|| (&u - &self.start).min(&end - &u))
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, +{})", self.start, self.length)
    }
}

pub fn arc_contains(v: &Arc, y: &TorusElement) -> bool {
    v.contains(y)
}

/// Inclusive index ranges `j` for which `(base + j)/m` lies in `v`, in
/// increasing `j`. `base` must lie in `[0, 1)`.
fn lift_ranges(v: &Arc, base: &SurdReal, m: &BigInt) -> Vec<(BigInt, BigInt)> {
    let last = m - 1;
    if v.is_full() {
        return vec![(BigInt::zero(), last)];
    }
    let mq = BigRational::from_integer(m.clone());
    // j > s·m - base
    let above = |s: &BigRational| base.neg().add_rational(&(s * &mq)).floor() + 1;
    // j < e·m - base
    let below = |e: &BigRational| base.neg().add_rational(&(e * &mq)).ceil() - 1;
    let clamp = |lo: BigInt, hi: BigInt| -> Option<(BigInt, BigInt)> {
        let lo = lo.max(BigInt::zero());
        let hi = hi.min(last.clone());
        (lo <= hi).then_some((lo, hi))
    };
    let end = v.end();
    if end <= BigRational::one() {
        clamp(above(&v.start), below(&end)).into_iter().collect()
    } else {
        let low = clamp(BigInt::zero(), below(&(end - BigRational::one())));
        let high = clamp(above(&v.start), last.clone());
        low.into_iter().chain(high).collect()
    }
}

/// Finds `y ∈ v` with `m·y = z` and `n·y ≠ z_prime`.
///
/// The `m` solutions of `m·y = z` are `y_j = (ẑ + j)/m` for `j = 0..m`, where
/// `ẑ` is the representative of `z` in `[0, 1)`; they are spaced `1/m` apart,
/// so an arc longer than `2/m` holds at least two, and two neighbours cannot
/// both satisfy `n·y = z_prime` when `n < m`. The valid lift with the smallest
/// `j` is returned.
pub fn solve_arc(
    v: &Arc,
    z: &TorusElement,
    z_prime: &TorusElement,
    m: &BigInt,
    n: &BigInt,
) -> Result<TorusElement, TorusError> {
    if m < &BigInt::from(2) || n < &BigInt::one() || n >= m {
        return Err(TorusError::BadMultipliers {
            m: m.clone(),
            n: n.clone(),
        });
    }
    let two = BigRational::from_integer(2.into());
    if two / BigRational::from_integer(m.clone()) >= *v.length() {
        return Err(TorusError::ArcTooShort {
            m: m.clone(),
            length: v.length().clone(),
        });
    }
    let base = z.unit_lift();
    let ranges = lift_ranges(v, &base, m);
    let count: BigInt = ranges.iter().map(|(a, b)| b - a + 1).sum();
    assert!(
        count >= BigInt::from(2),
        "arc {v} holds {count} of the {m} lifts of {z}, expected at least two"
    );
    let inv_m = BigRational::new(BigInt::one(), m.clone());
    for (lo, hi) in ranges {
        let mut j = lo;
        while j <= hi {
            let y = TorusElement::from_real(
                &base.add_rational(&BigRational::from_integer(j.clone())).scale(&inv_m),
            );
            debug_assert!(v.contains(&y));
            if y.scale(n) != *z_prime {
                debug_assert_eq!(y.scale(m), *z);
                return Ok(y);
            }
            j += 1;
        }
    }
    unreachable!("two consecutive lifts in {v} both satisfy n·y = z'")
}

/// Integer `j` in `0..m` picked by [`solve_arc`]; exposed for tests that
/// enumerate lifts independently.
pub fn lift_index(y: &TorusElement, z: &TorusElement, m: &BigInt) -> Option<BigInt> {
    let base = z.unit_lift();
    let scaled = y.unit_lift().scale(&BigRational::from_integer(m.clone())).sub(&base);
    scaled
        .is_rational()
        .then(|| scaled.rational_part().clone())
        .filter(|q| q.is_integer())
        .map(|q| q.to_integer().mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::rat;

    fn t(n: i64, d: i64) -> TorusElement {
        TorusElement::from_ratio(n, d)
    }

    fn sqrt2(c: BigRational) -> TorusElement {
        TorusElement::surd(Marker(0), c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(t(1, 3).add(&t(5, 6)), t(1, 6));
        let a = t(1, 4).add(&sqrt2(rat(1, 2)));
        let b = a.scale_i64(4);
        assert!(b.rational_part().is_zero());
        assert_eq!(b.surds().get(&Marker(0)), Some(&rat(2, 1)));
        assert_eq!(t(1, 3).scale_i64(-1), t(2, 3));
    }

    #[test]
    fn orders() {
        assert_eq!(t(3, 12).order(), Some(BigInt::from(4)));
        assert_eq!(TorusElement::zero().order(), Some(BigInt::one()));
        assert_eq!(sqrt2(rat(1, 3)).order(), None);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(t(1, 2).compare_to_rational(&rat(1, 2)), Ordering::Equal);
        assert_eq!(sqrt2(rat(1, 2)).compare_to_rational(&rat(7, 10)), Ordering::Greater);
        let a = t(1, 4).add(&sqrt2(rat(-1, 8)));
        assert_eq!(a.compare_to_rational(&rat(1, 10)), Ordering::Less);
        // negative surd coefficient wraps: -√2/2 ≡ 0.2929
        let b = sqrt2(rat(-1, 2));
        assert_eq!(b.compare_to_rational(&rat(29, 100)), Ordering::Greater);
        assert_eq!(b.compare_to_rational(&rat(30, 100)), Ordering::Less);
    }

    #[test]
    fn arc_examples() {
        let v = Arc::from_ratios((1, 10), (1, 2)).unwrap();
        assert!(v.contains(&t(1, 5)));
        assert!(!v.contains(&t(7, 10)));
        assert!(!v.contains(&t(6, 10)));
        assert!(!v.contains(&t(1, 10)));
        let w = Arc::from_ratios((3, 4), (1, 2)).unwrap();
        assert!(w.contains(&t(1, 10)));
        assert!(w.contains(&t(9, 10)));
        assert!(!w.contains(&t(1, 4)));
        assert!(!w.contains(&t(1, 2)));
        assert!(Arc::full().contains(&t(0, 1)));
        assert!(Arc::from_ratios((0, 1), (0, 1)).is_err());
        assert!(Arc::from_ratios((0, 1), (3, 2)).is_err());
    }

    #[test]
    fn solve_arc_examples() {
        let v = Arc::from_ratios((1, 10), (1, 2)).unwrap();
        let y = solve_arc(&v, &t(0, 1), &t(2, 5), &5.into(), &2.into()).unwrap();
        assert_eq!(y, t(2, 5));

        let y = solve_arc(&Arc::full(), &t(0, 1), &t(1, 3), &3.into(), &1.into()).unwrap();
        assert_eq!(y, t(0, 1));

        // z = √2/2, m = 4: lifts √2/8 + j/4; the first two lie in (0, 3/5)
        let v = Arc::from_ratios((0, 1), (3, 5)).unwrap();
        let z = sqrt2(rat(1, 2));
        let z_prime = sqrt2(rat(3, 8));
        let y = solve_arc(&v, &z, &z_prime, &4.into(), &3.into()).unwrap();
        assert_eq!(y, t(1, 4).add(&sqrt2(rat(1, 8))));
        assert_eq!(y.scale_i64(4), z);
        assert_ne!(y.scale_i64(3), z_prime);
        assert!(v.contains(&y));
    }

    #[test]
    fn solve_arc_preconditions() {
        let v = Arc::from_ratios((0, 1), (1, 2)).unwrap();
        assert!(matches!(
            solve_arc(&v, &t(0, 1), &t(0, 1), &4.into(), &1.into()),
            Err(TorusError::ArcTooShort { .. })
        ));
        assert!(matches!(
            solve_arc(&Arc::full(), &t(0, 1), &t(0, 1), &2.into(), &1.into()),
            Err(TorusError::ArcTooShort { .. })
        ));
        assert!(matches!(
            solve_arc(&v, &t(0, 1), &t(0, 1), &5.into(), &5.into()),
            Err(TorusError::BadMultipliers { .. })
        ));
    }

    #[test]
    fn solve_arc_with_huge_modulus() {
        let m = BigInt::from(10).pow(40u32) + 7;
        let v = Arc::from_ratios((1, 3), (1, 100)).unwrap();
        let z = sqrt2(rat(1, 1));
        let y = solve_arc(&v, &z, &TorusElement::zero(), &m, &1.into()).unwrap();
        assert!(v.contains(&y));
        assert_eq!(y.scale(&m), z);
    }

    #[test]
    fn display_and_parse() {
        let a = t(1, 4).add(&sqrt2(rat(-1, 8))).add(&TorusElement::surd(Marker(2), rat(3, 1)));
        let s = a.to_string();
        assert_eq!(s, "1/4 + (-1/8)*sqrt(2) + (3)*sqrt(5)");
        assert_eq!(s.parse::<TorusElement>().unwrap(), a);
        assert_eq!("5/4".parse::<TorusElement>().unwrap(), t(1, 4));
        assert_eq!("sqrt(3) + 1/2".parse::<TorusElement>().unwrap().to_string(), "1/2 + (1)*sqrt(3)");
        assert_eq!("0 + (1/2)·sqrt(2)".parse::<TorusElement>().unwrap(), sqrt2(rat(1, 2)));
        assert!("0.5".parse::<TorusElement>().is_err());
        assert!("1/2 + (1)*sqrt(4)".parse::<TorusElement>().is_err());
        assert!("1/0".parse::<TorusElement>().is_err());
    }
}
