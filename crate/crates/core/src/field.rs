//! Exact scalar fields.
//!
//! Two implementations of [`Field`] are provided: [`Rational`], an exact
//! rational number with an `i64` fast path that promotes to arbitrary
//! precision on overflow, and [`Fp`], the prime field of a compile-time
//! modulus.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::FieldError;

/// An exact field of scalars.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// Maps a rational number into the field; fails when the denominator
    /// vanishes in positive characteristic.
    fn from_rational(q: &Rational) -> Result<Self, FieldError>;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// 0 for the rationals, `p` for GF(p).
    fn characteristic() -> u64;
    fn field_name() -> String;
    /// Distinct roots in the field of the polynomial with ascending
    /// coefficients `coeffs`. Best effort: may omit roots when the search
    /// would be too expensive.
    fn roots(coeffs: &[Self]) -> Vec<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

/// Exact rational number. Values whose numerator and denominator fit in an
/// `i64` are kept unboxed; everything else lives in a [`BigRational`].
///
/// The representation is canonical (reduced, positive denominator, small
/// whenever possible) so structural equality is numeric equality.
#[derive(Clone)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn integer(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        if num == 0 {
            return Rational::Small(0, 1);
        }
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(BigRational::new(BigInt::from(num), BigInt::from(den))),
        }
    }

    pub fn from_big(q: BigRational) -> Self {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(q),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(q) => q.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(q) => q.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(q) => q.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(q) => q.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(q) => {
                if q.is_positive() {
                    1
                } else if q.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            Field::neg(self)
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rational::Small(n, d) => *n as f64 / *d as f64,
            Rational::Big(q) => q.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn big_op(&self, other: &Self, op: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        Rational::from_big(op(&self.to_big(), &other.to_big()))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            (Rational::Big(p), Rational::Big(q)) => p == q,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rational::Big(q) => {
                1u8.hash(state);
                q.hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = FieldError;

    /// Accepts `"3"`, `"-3/2"`, `"0.25"` and the Unicode minus sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned = s.trim().replace('\u{2212}', "-");
        let bad = || FieldError::BadScalar(s.to_string());
        if cleaned.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = cleaned.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Rational::from_big(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = cleaned.split_once('.') {
            let negative = int.trim_start().starts_with('-');
            let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
                BigInt::zero()
            } else {
                int.parse().map_err(|_| bad())?
            };
            if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() {
                return Err(bad());
            }
            let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let mut value = BigRational::new(int_part.abs() * &scale + frac_num, scale);
            if negative {
                value = -value;
            }
            return Ok(Rational::from_big(value));
        }
        let n: BigInt = cleaned.parse().map_err(|_| bad())?;
        Ok(Rational::from_big(BigRational::from_integer(n)))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }

    fn one() -> Self {
        Rational::Small(1, 1)
    }

    fn from_i64(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    fn from_rational(q: &Rational) -> Result<Self, FieldError> {
        Ok(q.clone())
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn add(&self, other: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Rational::Small(s, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y), Some(den)) = (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                if let Some(num) = x.checked_add(y) {
                    return Rational::from_i128(num, den);
                }
            }
        }
        self.big_op(other, |p, q| p + q)
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Rational::Small(p, 1);
                }
            }
            let num = (*a as i128) * (*c as i128);
            let den = (*b as i128) * (*d as i128);
            return Rational::from_i128(num, den);
        }
        self.big_op(other, |p, q| p * q)
    }

    fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => Rational::from_big(-self.to_big()),
            },
            Rational::Big(q) => Rational::from_big(-q.clone()),
        }
    }

    fn inv(&self) -> Option<Self> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) => Some(Rational::from_i128(*d as i128, *n as i128)),
            Rational::Big(q) => Some(Rational::from_big(q.recip())),
        }
    }

    fn characteristic() -> u64 {
        0
    }

    fn field_name() -> String {
        "Q".to_string()
    }

    fn roots(coeffs: &[Self]) -> Vec<Self> {
        rational_roots(coeffs)
    }
}

/// The prime field GF(P). `P` must be prime; this is checked by
/// [`Fp::new`] and every constructor goes through it or through
/// reduction of an already valid element.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u64> Fp<P> {
    pub fn new(value: u64) -> Self {
        debug_assert!(is_prime(P), "GF({P}) requested for a non-prime modulus");
        Fp(value % P)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let p = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u64)
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits in u64"))
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {P})", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1 % P)
    }

    fn from_i64(n: i64) -> Self {
        Fp((n as i128).rem_euclid(P as i128) as u64)
    }

    fn from_rational(q: &Rational) -> Result<Self, FieldError> {
        let num = Self::from_bigint(&q.numer());
        let den = Self::from_bigint(&q.denom());
        match den.inv() {
            Some(d) => Ok(num.mul(&d)),
            None => Err(FieldError::DenominatorVanishes {
                value: q.to_string(),
                p: P,
            }),
        }
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 + other.0 as u128) % P as u128) as u64)
    }

    fn sub(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - other.0 as u128) % P as u128) as u64)
    }

    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 * other.0 as u128) % P as u128) as u64)
    }

    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(P - self.0)
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn characteristic() -> u64 {
        P
    }

    fn field_name() -> String {
        format!("GF({P})")
    }

    fn roots(coeffs: &[Self]) -> Vec<Self> {
        let eval = |x: u64| {
            let x = Fp::<P>(x);
            coeffs.iter().rev().fold(Fp::<P>(0), |acc, c| acc.mul(&x).add(c))
        };
        let limit = if P <= 1 << 16 { P } else { 1 << 12 };
        let mut out: Vec<Self> = (0..limit).filter(|&x| eval(x).is_zero()).map(Fp).collect();
        if limit < P {
            out.extend((1..limit).map(|x| P - x).filter(|&x| eval(x).is_zero()).map(Fp));
        }
        out
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots by the rational root theorem. Gives up (returning what
/// it has) when the extreme coefficients exceed 10^12.
fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::new();
    let Some(top) = coeffs.iter().rposition(|c| !c.is_zero()) else {
        return out;
    };
    let low = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    if low > 0 {
        out.push(Rational::zero());
    }
    if top == low {
        return out;
    }
    let lcm = coeffs.iter().fold(BigInt::from(1), |acc, c| acc.lcm(&c.denom()));
    let ints: Vec<BigInt> = coeffs[low..=top]
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints[ints.len() - 1].abs().to_u64()) else {
        return out;
    };
    if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 {
        return out;
    }
    let poly = &coeffs[low..=top];
    let eval = |x: &Rational| poly.iter().rev().fold(Rational::zero(), |acc, c| acc.mul(x).add(c));
    let dens = divisors(an);
    let mut seen = std::collections::BTreeSet::new();
    for p in divisors(a0) {
        for q in &dens {
            for sign in [1i64, -1] {
                let x = Rational::from_big(BigRational::new(BigInt::from(p) * sign, BigInt::from(*q)));
                if seen.insert(x.clone()) && eval(&x).is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out.sort();
    out
}

/// Primes accepted by the `GF(p)` field mode. The field is a compile-time
/// parameter, so the set of available moduli is fixed.
pub const SUPPORTED_PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13, 101, 32003, 2147483647];

/// Parsed field selection, as it appears in spec files and on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FieldChoice {
    #[default]
    Rationals,
    Prime(u64),
}

impl FieldChoice {
    /// Parses `Q`, `GF(p)` or `GF:p`.
    pub fn parse(s: &str) -> Result<Self, FieldError> {
        let t = s.trim();
        if t == "Q" || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldChoice::Rationals);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("GF:"))
            .ok_or_else(|| FieldError::UnknownField(s.to_string()))?;
        let p: u64 = digits
            .trim()
            .parse()
            .map_err(|_| FieldError::UnknownField(s.to_string()))?;
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(FieldError::UnsupportedPrime(p));
        }
        Ok(FieldChoice::Prime(p))
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(f, "Q"),
            FieldChoice::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[cfg(test)]
mod root_tests {
    use super::*;

    #[test]
    fn rational_roots_found() {
        // (t - 1/2)(t + 3) t = t^3 + 5/2 t^2 - 3/2 t
        let c: Vec<Rational> = vec![Rational::zero(), Rational::new(-3, 2), Rational::new(5, 2), Rational::one()];
        assert_eq!(Rational::roots(&c), vec![Rational::integer(-3), Rational::zero(), Rational::new(1, 2)]);
        // t^2 - 2 has none
        assert!(Rational::roots(&[Rational::integer(-2), Rational::zero(), Rational::one()]).is_empty());
    }

    #[test]
    fn prime_field_roots() {
        type F = Fp<7>;
        // t^2 - 1 over GF(7)
        let r = F::roots(&[F::from_i64(-1), F::zero(), F::one()]);
        assert_eq!(r, vec![F::new(1), F::new(6)]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_rationals() {
        assert_eq!("-3/2".parse::<Rational>().unwrap(), Rational::new(-3, 2));
        assert_eq!("\u{2212}3/2".parse::<Rational>().unwrap(), Rational::new(-3, 2));
        assert_eq!("0.25".parse::<Rational>().unwrap(), Rational::new(1, 4));
        assert_eq!("-1.5".parse::<Rational>().unwrap(), Rational::new(-3, 2));
        assert_eq!("4/6".parse::<Rational>().unwrap(), Rational::new(2, 3));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
    }

    #[test]
    fn overflow_promotes_to_big() {
        let big = Rational::integer(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq.mul(&big.inv().unwrap());
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(..)));
        let min = Rational::integer(i64::MIN);
        assert_eq!(min.neg().add(&min), Rational::zero());
    }

    #[test]
    fn prime_field_arithmetic() {
        type F7 = Fp<7>;
        let three = F7::from_i64(3);
        assert_eq!(three.mul(&three.inv().unwrap()), F7::one());
        assert_eq!(F7::from_i64(-1), F7::new(6));
        assert_eq!(F7::from_rational(&Rational::new(1, 2)).unwrap(), F7::new(4));
        assert!(F7::from_rational(&Rational::new(1, 7)).is_err());
    }

    #[test]
    fn field_choice_parsing() {
        assert_eq!(FieldChoice::parse("Q").unwrap(), FieldChoice::Rationals);
        assert_eq!(FieldChoice::parse("GF(101)").unwrap(), FieldChoice::Prime(101));
        assert_eq!(FieldChoice::parse("GF:5").unwrap(), FieldChoice::Prime(5));
        assert!(matches!(FieldChoice::parse("GF(9)"), Err(FieldError::NotPrime(9))));
        assert!(matches!(FieldChoice::parse("GF(17)"), Err(FieldError::UnsupportedPrime(17))));
    }

    proptest! {
        #[test]
        fn small_and_big_paths_agree(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            let bx = x.to_big();
            let by = y.to_big();
            prop_assert_eq!(x.add(&y).to_big(), &bx + &by);
            prop_assert_eq!(x.mul(&y).to_big(), &bx * &by);
            prop_assert_eq!(x.sub(&y).to_big(), &bx - &by);
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        }
    }
}
