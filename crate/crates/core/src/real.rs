//! Real numbers of the form `q + Σ c_p·√p` with rational `q`, `c_p` and distinct
//! primes `p`.
//!
//! The square roots of distinct primes are linearly independent over the
//! rationals, so a value with any nonzero surd coefficient is irrational and in
//! particular nonzero. Signs are decided by enclosing every `√p` in a dyadic
//! interval and doubling the precision until the enclosure excludes zero.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Initial enclosure precision in bits.
const START_BITS: u64 = 32;
/// Precision at which refinement gives up.
pub const PRECISION_CAP_BITS: u64 = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("sign refinement reached {bits} bits without separating {value} from zero")]
pub struct PrecisionExhausted {
    pub bits: u64,
    pub value: String,
}

/// A formal irrational: the square root of the `index`-th prime (2, 3, 5, …).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marker(pub u32);

fn primes_table() -> &'static Mutex<Vec<u64>> {
    static TABLE: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![2, 3, 5, 7, 11, 13]))
}

fn nth_prime(index: usize) -> u64 {
    let mut table = primes_table().lock().expect("prime table poisoned");
    while table.len() <= index {
        let mut c = table.last().copied().unwrap_or(2) + 2;
        while table.iter().take_while(|&&p| p * p <= c).any(|&p| c % p == 0) {
            c += 2;
        }
        table.push(c);
    }
    table[index]
}

impl Marker {
    pub fn prime(self) -> u64 {
        nth_prime(self.0 as usize)
    }

    /// Marker for a given prime, if it is one.
    pub fn from_prime(p: u64) -> Option<Marker> {
        if p < 2 {
            return None;
        }
        let mut i = 0;
        loop {
            let q = nth_prime(i);
            match q.cmp(&p) {
                Ordering::Equal => return Some(Marker(i as u32)),
                Ordering::Greater => return None,
                Ordering::Less => i += 1,
            }
        }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sqrt({})", self.prime())
    }
}

/// Enclosure `[lo, hi]` of `√p` with `hi - lo = 2^-bits`.
fn sqrt_enclosure(p: u64, bits: u64) -> (BigRational, BigRational) {
    let scaled = BigInt::from(p) << (2 * bits);
    let s = scaled.sqrt();
    let den = BigInt::one() << bits;
    (
        BigRational::new(s.clone(), den.clone()),
        BigRational::new(s + 1, den),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SurdReal {
    rational: BigRational,
    surds: BTreeMap<Marker, BigRational>,
}

impl SurdReal {
    pub fn new(rational: BigRational, surds: BTreeMap<Marker, BigRational>) -> Self {
        let mut out = SurdReal { rational, surds };
        out.surds.retain(|_, c| !c.is_zero());
        out
    }

    pub fn rational(q: BigRational) -> Self {
        SurdReal {
            rational: q,
            surds: BTreeMap::new(),
        }
    }

    pub fn surd(marker: Marker, coeff: BigRational) -> Self {
        SurdReal::new(BigRational::zero(), BTreeMap::from([(marker, coeff)]))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surds(&self) -> &BTreeMap<Marker, BigRational> {
        &self.surds
    }

    pub fn is_rational(&self) -> bool {
        self.surds.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.surds.is_empty() && self.rational.is_zero()
    }

    pub fn add(&self, other: &SurdReal) -> SurdReal {
        let mut surds = self.surds.clone();
        for (m, c) in &other.surds {
            *surds.entry(*m).or_insert_with(BigRational::zero) += c;
        }
        SurdReal::new(&self.rational + &other.rational, surds)
    }

    pub fn neg(&self) -> SurdReal {
        SurdReal {
            rational: -&self.rational,
            surds: self.surds.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &SurdReal) -> SurdReal {
        self.add(&other.neg())
    }

    pub fn add_rational(&self, q: &BigRational) -> SurdReal {
        SurdReal {
            rational: &self.rational + q,
            surds: self.surds.clone(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> SurdReal {
        if q.is_zero() {
            return SurdReal::default();
        }
        SurdReal {
            rational: &self.rational * q,
            surds: self.surds.iter().map(|(m, c)| (*m, c * q)).collect(),
        }
    }

    /// Rational enclosure at the given precision.
    pub fn enclose(&self, bits: u64) -> (BigRational, BigRational) {
        let mut lo = self.rational.clone();
        let mut hi = self.rational.clone();
        for (m, c) in &self.surds {
            let (a, b) = sqrt_enclosure(m.prime(), bits);
            if c.is_positive() {
                lo += c * a;
                hi += c * b;
            } else {
                lo += c * b;
                hi += c * a;
            }
        }
        (lo, hi)
    }

    fn refine<T>(
        &self,
        mut decide: impl FnMut(&BigRational, &BigRational) -> Option<T>,
    ) -> Result<T, PrecisionExhausted> {
        let mut bits = START_BITS;
        loop {
            let (lo, hi) = self.enclose(bits);
            if let Some(t) = decide(&lo, &hi) {
                return Ok(t);
            }
            if bits >= PRECISION_CAP_BITS {
                return Err(PrecisionExhausted {
                    bits,
                    value: self.to_string(),
                });
            }
            bits *= 2;
        }
    }

    pub fn try_signum(&self) -> Result<Ordering, PrecisionExhausted> {
        if self.is_rational() {
            return Ok(self.rational.cmp(&BigRational::zero()));
        }
        self.refine(|lo, hi| {
            if lo.is_positive() {
                Some(Ordering::Greater)
            } else if hi.is_negative() {
                Some(Ordering::Less)
            } else {
                None
            }
        })
    }

    /// Sign of the value. Panics if refinement hits [`PRECISION_CAP_BITS`],
    /// which would mean an irrational value was enclosed around zero.
    pub fn signum(&self) -> Ordering {
        self.try_signum().unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        self.add_rational(&-q).signum()
    }

    pub fn try_floor(&self) -> Result<BigInt, PrecisionExhausted> {
        if self.is_rational() {
            return Ok(self.rational.floor().to_integer());
        }
        self.refine(|lo, hi| {
            let f = lo.floor();
            (hi < &(&f + BigRational::one())).then(|| f.to_integer())
        })
    }

    pub fn floor(&self) -> BigInt {
        self.try_floor().unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Enclosure of the value as `f64` bounds `(lo, hi)` valid to within one
    /// ulp each; the width is below `2^-50` for moderate magnitudes.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        let magnitude = self
            .surds
            .values()
            .map(|c| (c.numer().bits() as i64 - c.denom().bits() as i64).max(0) as u64)
            .max()
            .unwrap_or(0);
        let (lo, hi) = self.enclose(64 + magnitude);
        let lo = lo.to_f64().unwrap_or(f64::NAN);
        let hi = hi.to_f64().unwrap_or(f64::NAN);
        (lo.next_down(), hi.next_up())
    }
}

impl fmt::Display for SurdReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        for (m, c) in &self.surds {
            write!(f, " + ({c})*{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Denominator-respecting floor of a rational.
pub(crate) fn floor_rat(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_in_order() {
        let ps: Vec<u64> = (0..10).map(|i| Marker(i).prime()).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(Marker::from_prime(29), Some(Marker(9)));
        assert_eq!(Marker::from_prime(27), None);
    }

    #[test]
    fn sign_of_small_differences() {
        // √2/2 vs 7/10
        let x = SurdReal::surd(Marker(0), rat(1, 2));
        assert_eq!(x.cmp_rational(&rat(7, 10)), Ordering::Greater);
        assert_eq!(x.cmp_rational(&rat(71, 100)), Ordering::Less);
        // 1/4 - √2/8 ≈ 0.0732 vs 1/10
        let y = SurdReal::new(rat(1, 4), BTreeMap::from([(Marker(0), rat(-1, 8))]));
        assert_eq!(y.cmp_rational(&rat(1, 10)), Ordering::Less);
        // √3 - √2 - 0.3178...: 577/1815 vs true value 0.31783724...
        let z = SurdReal::new(
            BigRational::zero(),
            BTreeMap::from([(Marker(1), rat(1, 1)), (Marker(0), rat(-1, 1))]),
        );
        assert_eq!(z.cmp_rational(&rat(31783, 100000)), Ordering::Greater);
        assert_eq!(z.cmp_rational(&rat(31784, 100000)), Ordering::Less);
    }

    #[test]
    fn floor_and_ceil() {
        let x = SurdReal::surd(Marker(0), rat(7, 1)); // 9.899
        assert_eq!(x.floor(), BigInt::from(9));
        assert_eq!(x.ceil(), BigInt::from(10));
        assert_eq!(x.neg().floor(), BigInt::from(-10));
        let r = SurdReal::rational(rat(-3, 2));
        assert_eq!(r.floor(), BigInt::from(-2));
        assert_eq!(r.ceil(), BigInt::from(-1));
    }

    #[test]
    fn f64_bounds_bracket_value() {
        let x = SurdReal::surd(Marker(0), rat(1, 1));
        let (lo, hi) = x.to_f64_bounds();
        assert!(lo <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= hi);
        assert!(hi - lo < 1e-15);
    }
}
