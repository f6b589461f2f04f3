use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::introot::{ceil_root, floor_root};
use super::{NumericError, Trilean};

/// Extra bits kept below the working precision before rounding outward.
pub const GUARD_BITS: u32 = 8;

/// A closed interval `[lo * 2^exp, hi * 2^exp]` with exact dyadic endpoints.
///
/// `prec` is the working precision `p`: results of arithmetic are rounded
/// outward onto the grid `2^-(p + GUARD_BITS)`, so every result is an
/// absolute-precision approximation. Binary operations use the larger
/// precision of their operands. Integers and other exact constants may carry
/// `prec = 0`; they adopt the precision of whatever they are combined with.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    lo: BigInt,
    hi: BigInt,
    exp: i64,
    prec: u32,
}

fn shl_exact(m: &BigInt, by: i64) -> BigInt {
    debug_assert!(by >= 0);
    if by == 0 || m.is_zero() {
        m.clone()
    } else {
        m << (by as u64)
    }
}

fn floor_shr(m: &BigInt, by: u64) -> BigInt {
    m >> by
}

fn ceil_shr(m: &BigInt, by: u64) -> BigInt {
    -((-m) >> by)
}

/// Floor of `m * 2^e`.
fn floor_scaled(m: &BigInt, e: i64) -> BigInt {
    if e >= 0 {
        shl_exact(m, e)
    } else {
        floor_shr(m, (-e) as u64)
    }
}

/// Ceiling of `m * 2^e`.
fn ceil_scaled(m: &BigInt, e: i64) -> BigInt {
    if e >= 0 {
        shl_exact(m, e)
    } else {
        ceil_shr(m, (-e) as u64)
    }
}

fn cmp_dyadic(m1: &BigInt, e1: i64, m2: &BigInt, e2: i64) -> Ordering {
    let s1 = m1.sign();
    let s2 = m2.sign();
    if s1 != s2 {
        return s1.cmp(&s2);
    }
    if s1 == Sign::NoSign {
        return Ordering::Equal;
    }
    // Same nonzero sign: compare magnitudes by bit length first.
    let b1 = m1.bits() as i64 + e1;
    let b2 = m2.bits() as i64 + e2;
    let mag = if b1 != b2 {
        b1.cmp(&b2)
    } else if e1 >= e2 {
        shl_exact(&m1.abs(), e1 - e2).cmp(&m2.abs())
    } else {
        m1.abs().cmp(&shl_exact(&m2.abs(), e2 - e1))
    };
    if s1 == Sign::Minus {
        mag.reverse()
    } else {
        mag
    }
}

fn dyadic_to_rational(m: &BigInt, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(shl_exact(m, e))
    } else {
        BigRational::new(m.clone(), BigInt::one() << ((-e) as u64))
    }
}

impl DyadicInterval {
    fn raw(lo: BigInt, hi: BigInt, exp: i64, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        let mut x = DyadicInterval { lo, hi, exp, prec };
        x.round_outward();
        x
    }

    fn grid_exp(prec: u32) -> i64 {
        -(prec as i64 + GUARD_BITS as i64)
    }

    fn round_outward(&mut self) {
        let min_exp = Self::grid_exp(self.prec);
        if self.exp < min_exp {
            let by = (min_exp - self.exp) as u64;
            self.lo = floor_shr(&self.lo, by);
            self.hi = ceil_shr(&self.hi, by);
            self.exp = min_exp;
        }
    }

    /// The point interval `[n, n]`.
    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        let n = n.into();
        DyadicInterval { lo: n.clone(), hi: n, exp: 0, prec }
    }

    /// The point interval `[m * 2^e, m * 2^e]`, rounded to `prec` if needed.
    pub fn from_dyadic(m: impl Into<BigInt>, e: i64, prec: u32) -> Self {
        let m = m.into();
        Self::raw(m.clone(), m, e, prec)
    }

    /// `[lo * 2^e, hi * 2^e]`.
    pub fn from_endpoints(lo: impl Into<BigInt>, hi: impl Into<BigInt>, e: i64, prec: u32) -> Self {
        let (lo, hi) = (lo.into(), hi.into());
        assert!(lo <= hi, "interval endpoints out of order");
        Self::raw(lo, hi, e, prec)
    }

    /// Outward-rounded enclosure of a rational number.
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let num = DyadicInterval::from_int(q.numer().clone(), prec);
        let den = DyadicInterval::from_int(q.denom().clone(), prec);
        num.checked_div(&den).expect("rational with zero denominator")
    }

    /// Enclosure of an `f64` (exact: every finite double is dyadic).
    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Self::from_int(0, prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp_bits == 0 {
            (frac as i64, -1074)
        } else {
            ((frac | (1u64 << 52)) as i64, exp_bits - 1075)
        };
        Self::from_dyadic(sign * m, e, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same enclosure, re-tagged with working precision `prec`.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::raw(self.lo.clone(), self.hi.clone(), self.exp, prec)
    }

    pub fn lower(&self) -> BigRational {
        dyadic_to_rational(&self.lo, self.exp)
    }

    pub fn upper(&self) -> BigRational {
        dyadic_to_rational(&self.hi, self.exp)
    }

    /// Exact width `hi - lo`.
    pub fn width(&self) -> BigRational {
        dyadic_to_rational(&(&self.hi - &self.lo), self.exp)
    }

    /// `log2` of the width, or `None` for a point interval.
    pub fn width_log2(&self) -> Option<f64> {
        let w = &self.hi - &self.lo;
        if w.is_zero() {
            return None;
        }
        let bits = w.bits() as i64;
        let shift = (bits - 53).max(0);
        let top = (&w >> shift as u64).to_f64().unwrap();
        Some(top.log2() + (shift + self.exp) as f64)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lower() <= q && q <= &self.upper()
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &DyadicInterval) -> bool {
        cmp_dyadic(&other.lo, other.exp, &self.lo, self.exp) != Ordering::Greater
            && cmp_dyadic(&self.hi, self.exp, &other.hi, other.exp) != Ordering::Greater
    }

    pub fn overlaps(&self, other: &DyadicInterval) -> bool {
        cmp_dyadic(&self.lo, self.exp, &other.hi, other.exp) != Ordering::Greater
            && cmp_dyadic(&other.lo, other.exp, &self.hi, self.exp) != Ordering::Greater
    }

    /// Approximate midpoint, for display only.
    pub fn mid_f64(&self) -> f64 {
        let sum = &self.lo + &self.hi;
        let bits = sum.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&sum >> shift as u64).to_f64().unwrap();
        top * 2f64.powi((shift + self.exp - 1).clamp(-1100, 1100) as i32)
    }

    /// `True` if every enclosed value is positive, `False` if none is.
    pub fn is_positive(&self) -> Trilean {
        if self.lo.is_positive() {
            Trilean::True
        } else if !self.hi.is_positive() {
            Trilean::False
        } else {
            Trilean::Unknown
        }
    }

    pub fn is_negative(&self) -> Trilean {
        if self.hi.is_negative() {
            Trilean::True
        } else if !self.lo.is_negative() {
            Trilean::False
        } else {
            Trilean::Unknown
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `floor(x)` if it is the same for every point of the interval.
    pub fn floor_partial(&self) -> Option<BigInt> {
        let a = floor_scaled(&self.lo, self.exp);
        let b = floor_scaled(&self.hi, self.exp);
        (a == b).then_some(a)
    }

    /// `ceil(x)` if it is the same for every point of the interval.
    pub fn ceil_partial(&self) -> Option<BigInt> {
        let a = ceil_scaled(&self.lo, self.exp);
        let b = ceil_scaled(&self.hi, self.exp);
        (a == b).then_some(a)
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        (
            shl_exact(&self.lo, self.exp - e),
            shl_exact(&self.hi, self.exp - e),
            shl_exact(&other.lo, other.exp - e),
            shl_exact(&other.hi, other.exp - e),
            e,
        )
    }

    fn add_ref(&self, other: &Self) -> Self {
        let (a, b, c, d, e) = self.aligned(other);
        Self::raw(a + c, b + d, e, self.prec.max(other.prec))
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let (a, b, c, d, e) = self.aligned(other);
        Self::raw(a - d, b - c, e, self.prec.max(other.prec))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        let e = self.exp + other.exp;
        let (a, b, c, d) = (&self.lo, &self.hi, &other.lo, &other.hi);
        let (lo, hi) = if !a.is_negative() && !c.is_negative() {
            (a * c, b * d)
        } else if !b.is_positive() && !d.is_positive() {
            (b * d, a * c)
        } else if !a.is_negative() && !d.is_positive() {
            (b * c, a * d)
        } else if !b.is_positive() && !c.is_negative() {
            (a * d, b * c)
        } else {
            let p = [a * c, a * d, b * c, b * d];
            let lo = p.iter().min().unwrap().clone();
            let hi = p.iter().max().unwrap().clone();
            (lo, hi)
        };
        Self::raw(lo, hi, e, prec)
    }

    /// Multiply by an exact integer.
    pub fn scale_int(&self, k: &BigInt) -> Self {
        let (lo, hi) = if k.is_negative() {
            (&self.hi * k, &self.lo * k)
        } else {
            (&self.lo * k, &self.hi * k)
        };
        Self::raw(lo, hi, self.exp, self.prec)
    }

    /// Multiply by `2^k` (exact).
    pub fn mul_pow2(&self, k: i64) -> Self {
        Self::raw(self.lo.clone(), self.hi.clone(), self.exp + k, self.prec)
    }

    pub fn square(&self) -> Self {
        if !self.lo.is_negative() || !self.hi.is_positive() {
            return self.mul_ref(self);
        }
        let m = self.lo.abs().max(self.hi.abs());
        Self::raw(BigInt::zero(), &m * &m, 2 * self.exp, self.prec)
    }

    pub fn powi(&self, n: u32) -> Self {
        match n {
            0 => Self::from_int(1, self.prec),
            1 => self.clone(),
            _ => {
                let half = self.powi(n / 2).square();
                if n % 2 == 1 {
                    half.mul_ref(self)
                } else {
                    half
                }
            }
        }
    }

    /// Containment-sound quotient.
    pub fn checked_div(&self, other: &Self) -> Result<Self, NumericError> {
        if other.contains_zero() {
            return Err(NumericError::DivisorStraddlesZero);
        }
        if other.hi.is_negative() {
            return (-self).checked_div(&(-other));
        }
        let prec = self.prec.max(other.prec);
        let q = -Self::grid_exp(prec);
        // divisor is strictly positive here
        let lo_den = if self.lo.is_negative() { &other.lo } else { &other.hi };
        let hi_den = if self.hi.is_negative() { &other.hi } else { &other.lo };
        let quot = |num: &BigInt, den: &BigInt, den_exp: i64, ceil: bool| {
            // num * 2^self.exp / (den * 2^den_exp) * 2^q
            let shift = self.exp - den_exp + q;
            let (n, d) = if shift >= 0 {
                (shl_exact(num, shift), den.clone())
            } else {
                (num.clone(), shl_exact(den, -shift))
            };
            if ceil {
                n.div_ceil(&d)
            } else {
                n.div_floor(&d)
            }
        };
        let lo = quot(&self.lo, lo_den, other.exp, false);
        let hi = quot(&self.hi, hi_den, other.exp, true);
        Ok(Self::raw(lo, hi, -q, prec))
    }

    /// Containment-sound `k`-th root.
    pub fn root(&self, k: u32) -> Result<Self, NumericError> {
        if k == 0 {
            return Err(NumericError::ZeroRootDegree);
        }
        if k == 1 {
            return Ok(self.clone());
        }
        if k % 2 == 0 && self.lo.is_negative() {
            return Err(NumericError::NegativeEvenRoot);
        }
        let q = -Self::grid_exp(self.prec);
        // root(m 2^e) * 2^q = root(m 2^(e + kq))
        let scale = self.exp + k as i64 * q;
        let root_floor = |m: &BigInt| -> BigInt {
            if m.is_negative() {
                let n = ceil_scaled(&-m, scale);
                -BigInt::from(ceil_root(n.magnitude(), k))
            } else {
                let n = floor_scaled(m, scale);
                BigInt::from(floor_root(n.magnitude(), k))
            }
        };
        let root_ceil = |m: &BigInt| -> BigInt {
            if m.is_negative() {
                let n = floor_scaled(&-m, scale);
                -BigInt::from(floor_root(n.magnitude(), k))
            } else {
                let n = ceil_scaled(m, scale);
                BigInt::from(ceil_root(n.magnitude(), k))
            }
        };
        Ok(Self::raw(root_floor(&self.lo), root_ceil(&self.hi), -q, self.prec))
    }

    pub fn sqrt(&self) -> Result<Self, NumericError> {
        self.root(2)
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            let m = self.lo.abs().max(self.hi.clone());
            Self::raw(BigInt::zero(), m, self.exp, self.prec)
        }
    }
}

/// `True` iff every point of `x` is below every point of `y`; `False` iff
/// every point of `x` is above every point of `y`.
pub fn compare3(x: &DyadicInterval, y: &DyadicInterval) -> Trilean {
    if cmp_dyadic(&x.hi, x.exp, &y.lo, y.exp) == Ordering::Less {
        Trilean::True
    } else if cmp_dyadic(&x.lo, x.exp, &y.hi, y.exp) == Ordering::Greater {
        Trilean::False
    } else {
        Trilean::Unknown
    }
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp >= -64 && self.lo.bits() < 128 && self.hi.bits() < 128 {
            write!(f, "[{}, {}]", self.lower(), self.upper())
        } else {
            write!(f, "[~{:e} ± 2^{:.1}]", self.mid_f64(), self.width_log2().unwrap_or(f64::NEG_INFINITY) - 1.0)
        }
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Neg for DyadicInterval {
    type Output = DyadicInterval;
    fn neg(self) -> DyadicInterval {
        DyadicInterval { lo: -self.hi, hi: -self.lo, exp: self.exp, prec: self.prec }
    }
}

impl Neg for &DyadicInterval {
    type Output = DyadicInterval;
    fn neg(self) -> DyadicInterval {
        DyadicInterval { lo: -&self.hi, hi: -&self.lo, exp: self.exp, prec: self.prec }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<DyadicInterval> for DyadicInterval {
            type Output = DyadicInterval;
            fn $method(self, rhs: DyadicInterval) -> DyadicInterval {
                self.$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a DyadicInterval> for DyadicInterval {
            type Output = DyadicInterval;
            fn $method(self, rhs: &'a DyadicInterval) -> DyadicInterval {
                self.$imp(rhs)
            }
        }
        impl<'a> $tr<DyadicInterval> for &'a DyadicInterval {
            type Output = DyadicInterval;
            fn $method(self, rhs: DyadicInterval) -> DyadicInterval {
                self.$imp(&rhs)
            }
        }
        impl<'a, 'b> $tr<&'b DyadicInterval> for &'a DyadicInterval {
            type Output = DyadicInterval;
            fn $method(self, rhs: &'b DyadicInterval) -> DyadicInterval {
                self.$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Zero for DyadicInterval {
    fn zero() -> Self {
        DyadicInterval::from_int(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl One for DyadicInterval {
    fn one() -> Self {
        DyadicInterval::from_int(1, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> DyadicInterval {
        DyadicInterval::from_endpoints(lo, hi, 0, 32)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn add_sub_mul_examples() {
        assert_eq!(iv(1, 1) + iv(2, 2), iv(3, 3));
        assert_eq!(iv(-1, 1) * iv(-1, 1), iv(-1, 1));
        assert_eq!(iv(1, 2) - iv(1, 2), iv(-1, 1));
    }

    #[test]
    fn division_examples() {
        assert_eq!(iv(4, 4).checked_div(&iv(2, 2)).unwrap().lower(), rat(2, 1));
        assert_eq!(iv(4, 4).checked_div(&iv(2, 2)).unwrap().upper(), rat(2, 1));
        for p in [8u32, 16, 53, 200] {
            let third = DyadicInterval::from_int(1, p).checked_div(&DyadicInterval::from_int(3, p)).unwrap();
            assert!(third.contains(&rat(1, 3)));
            assert!(third.width() <= BigRational::new(2.into(), BigInt::one() << p));
        }
        assert_eq!(iv(1, 1).checked_div(&iv(-1, 1)), Err(NumericError::DivisorStraddlesZero));
        let neg = iv(1, 2).checked_div(&iv(-4, -2)).unwrap();
        assert!(neg.contains(&rat(-1, 1)) && neg.contains(&rat(-1, 4)));
    }

    #[test]
    fn root_examples() {
        let r = iv(4, 4).root(2).unwrap();
        assert_eq!((r.lower(), r.upper()), (rat(2, 1), rat(2, 1)));
        let r = iv(256, 256).root(4).unwrap();
        assert_eq!((r.lower(), r.upper()), (rat(4, 1), rat(4, 1)));
        assert_eq!(iv(-1, 4).root(2), Err(NumericError::NegativeEvenRoot));
        let r = iv(-27, -8).root(3).unwrap();
        assert_eq!((r.lower(), r.upper()), (rat(-3, 1), rat(-2, 1)));
    }

    #[test]
    fn sqrt3_against_sixty_digit_reference() {
        // floor(sqrt(3) * 10^60) from an exact integer square root of 3 * 10^120
        let digits: BigInt = "1732050807568877293527446341505872366942805253810380628055806".parse().unwrap();
        let ten60 = BigInt::from(10).pow(60);
        let reference_lo = BigRational::new(digits.clone(), ten60.clone());
        let reference_hi = BigRational::new(digits + 1, ten60);
        for p in [16u32, 64, 128, 190] {
            let r = DyadicInterval::from_int(3, p).sqrt().unwrap();
            assert!(r.width() <= BigRational::new(4.into(), BigInt::one() << p));
            // the enclosure must meet the reference bracket
            assert!(r.lower() <= reference_hi && r.upper() >= reference_lo);
        }
        let r = DyadicInterval::from_int(3, 256).sqrt().unwrap();
        assert!(r.lower() >= reference_lo && r.upper() <= reference_hi);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare3(&iv(1, 2), &iv(3, 4)), Trilean::True);
        assert_eq!(compare3(&iv(3, 4), &iv(1, 2)), Trilean::False);
        assert_eq!(compare3(&iv(1, 3), &iv(2, 4)), Trilean::Unknown);
    }

    #[test]
    fn floor_ceil_examples() {
        // [3.2, 3.4], [2.9, 3.1], [-0.5, -0.4] at 20 bits
        let enc = |a: i64, b: i64, d: i64| {
            let lo = DyadicInterval::from_rational(&rat(a, d), 20);
            let hi = DyadicInterval::from_rational(&rat(b, d), 20);
            DyadicInterval::from_endpoints(lo.lo.clone(), hi.hi.clone(), lo.exp, 20)
        };
        assert_eq!(enc(32, 34, 10).floor_partial(), Some(BigInt::from(3)));
        assert_eq!(enc(29, 31, 10).floor_partial(), None);
        assert_eq!(enc(-5, -4, 10).floor_partial(), Some(BigInt::from(-1)));
        assert_eq!(enc(32, 34, 10).ceil_partial(), Some(BigInt::from(4)));
        assert_eq!(enc(-5, -4, 10).ceil_partial(), Some(BigInt::from(0)));
        assert_eq!(iv(3, 3).ceil_partial(), Some(BigInt::from(3)));
    }

    #[test]
    fn floor_shift_rounds_down_for_negatives() {
        assert_eq!(floor_shr(&BigInt::from(-5), 1), BigInt::from(-3));
        assert_eq!(ceil_shr(&BigInt::from(-5), 1), BigInt::from(-2));
        assert_eq!(ceil_shr(&BigInt::from(5), 1), BigInt::from(3));
    }

    #[test]
    fn f64_embedding_is_exact() {
        let x = DyadicInterval::from_f64(0.1, 2000);
        assert!(x.is_point());
        assert_eq!(x.mid_f64(), 0.1);
    }
}
