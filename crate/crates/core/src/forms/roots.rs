//! Integer polynomials and exact integer roots of cubics.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial with integer coefficients, lowest degree first, no trailing
/// zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i).collect())
    }

    /// Cauchy bound: every real root lies strictly inside `(-m, m)`.
    pub fn cauchy_bound(&self) -> BigInt {
        let lead = self.lead().abs();
        let max = self.coeffs[..self.coeffs.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
        BigInt::one() + max.div_ceil(&lead)
    }
}

/// Some integer root of `p`, which must have degree at most 3.
///
/// The real line is cut at the integers next to the critical points, which
/// come from an integer square root of the derivative's discriminant. On
/// each remaining piece `p` is monotone, so a root exists iff the signs at
/// the ends differ; it is then bracketed within a factor of two by binary
/// search on the exponent and finished with safeguarded Newton steps.
pub fn find_integer_root(p: &IntPoly) -> Option<BigInt> {
    let degree = p.degree()?;
    assert!(degree <= 3, "integer roots are only searched for up to degree 3");
    if degree == 0 {
        return None;
    }
    if p.coeffs[0].is_zero() {
        return Some(BigInt::zero());
    }
    let m = p.cauchy_bound();
    let mut cuts = critical_cuts(&p.derivative());
    cuts.push(-&m);
    cuts.push(m.clone());
    cuts.retain(|k| k.abs() <= m);
    cuts.sort();
    cuts.dedup();

    let values: Vec<BigInt> = cuts.iter().map(|k| p.eval(k)).collect();
    if let Some(i) = values.iter().position(|v| v.is_zero()) {
        return Some(cuts[i].clone());
    }
    for i in 1..cuts.len() {
        let (slo, shi) = (values[i - 1].sign(), values[i].sign());
        if slo != shi && &cuts[i] - &cuts[i - 1] > BigInt::one() {
            if let Some(r) = monotone_root(p, cuts[i - 1].clone(), cuts[i].clone(), slo) {
                return Some(r);
            }
        }
    }
    None
}

/// Integers `⌊ρ⌋` and `⌊ρ⌋ + 1` around every real root `ρ` of `q`
/// (degree at most 2), plus a few harmless extras.
fn critical_cuts(q: &IntPoly) -> Vec<BigInt> {
    let around = |num: BigInt, den: &BigInt| {
        let f = num.div_floor(den);
        [&f - 1, f.clone(), f + 1]
    };
    match q.degree() {
        Some(1) => around(-&q.coeffs[0], &q.coeffs[1]).to_vec(),
        Some(2) => {
            let (c, b, a) = (&q.coeffs[0], &q.coeffs[1], &q.coeffs[2]);
            let disc = b * b - BigInt::from(4) * a * c;
            if disc.is_negative() {
                return Vec::new();
            }
            // √disc ∈ [s, s + 1]
            let s = disc.sqrt();
            let den = BigInt::from(2) * a;
            let mut cuts = Vec::with_capacity(12);
            for root in [&s, &(&s + 1)] {
                cuts.extend(around(-b + root, &den));
                cuts.extend(around(-b - root, &den));
            }
            cuts
        }
        _ => Vec::new(),
    }
}

/// The integer root of `p` in `(lo, hi)`, if any, when `p` is monotone there
/// and `sign p(lo) = slo` differs from `sign p(hi)`.
fn monotone_root(p: &IntPoly, lo: BigInt, hi: BigInt, slo: Sign) -> Option<BigInt> {
    let zero = BigInt::zero();
    if lo < zero && hi > zero {
        let s0 = p.eval(&zero).sign();
        return if s0 == slo { monotone_root(p, zero, hi, slo) } else { monotone_root(p, lo, zero, slo) };
    }
    // shrink to (2^(j-1), 2^j] in absolute value
    let (lo, hi) = if lo >= zero {
        let j = first_exponent(lo.bits(), hi.bits(), |j| p.eval(&(BigInt::one() << j).min(hi.clone())).sign() != slo);
        let top = BigInt::one() << j;
        let bottom = BigInt::one() << j.saturating_sub(1);
        (lo.max(if j == 0 { zero } else { bottom }), hi.min(top))
    } else {
        let j = first_exponent(hi.magnitude().bits(), lo.magnitude().bits(), |j| {
            p.eval(&-(BigInt::one() << j).min(lo.abs())).sign() == slo
        });
        let top = -(BigInt::one() << j);
        let bottom = -(BigInt::one() << j.saturating_sub(1));
        (lo.max(top), hi.min(if j == 0 { zero } else { bottom }))
    };
    let plo = p.eval(&lo);
    if plo.is_zero() {
        return Some(lo);
    }
    let phi = p.eval(&hi);
    if phi.is_zero() {
        return Some(hi);
    }
    narrow(p, lo, hi, plo.sign())
}

/// Smallest `j` in `[from, to]` with `pred(j)`, for a monotone `pred` that
/// holds at `to`. Points `±2^j` are clamped to the piece.
fn first_exponent(from: u64, to: u64, pred: impl Fn(u64) -> bool) -> u64 {
    let (mut lo, mut hi) = (from, to);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    hi
}

/// One simple root in `(lo, hi)` with `sign p(lo) = slo ≠ sign p(hi)`.
fn narrow(p: &IntPoly, mut lo: BigInt, mut hi: BigInt, slo: Sign) -> Option<BigInt> {
    let dp = p.derivative();
    let two = BigInt::from(2);
    let mut plo = p.eval(&lo);
    let mut phi = p.eval(&hi);
    while &hi - &lo > BigInt::one() {
        let width = &hi - &lo;
        let (x0, px0) = if plo.abs() <= phi.abs() { (&lo, &plo) } else { (&hi, &phi) };
        let slope = dp.eval(x0);
        let mut probes = Vec::with_capacity(4);
        if !slope.is_zero() {
            // Newton from one side only ever moves that end; probing both
            // neighbours of the estimate closes the other one too
            let guess = x0 - px0.div_floor(&slope);
            probes.push(&guess - 1);
            probes.push(guess.clone());
            probes.push(guess + 1);
        }
        let mut candidates: Vec<BigInt> = probes.into_iter().filter(|x| x > &lo && x < &hi).collect();
        candidates.push((&lo + &hi).div_floor(&two));
        for x in candidates {
            if !(x > lo && x < hi) {
                continue;
            }
            let px = p.eval(&x);
            if px.is_zero() {
                return Some(x);
            }
            if px.sign() == slo {
                lo = x;
                plo = px;
            } else {
                hi = x;
                phi = px;
            }
            // stop early once the bracket halved
            if (&hi - &lo) * &two <= width {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn integer_roots() {
        let r = find_integer_root(&poly(&[10, -7, -4, 1])).unwrap();
        assert!([1, -2, 5].map(BigInt::from).contains(&r));
        assert_eq!(find_integer_root(&poly(&[-1, -1, 0, 1])), None);
        assert_eq!(find_integer_root(&poly(&[-4, 0, 0, 1])), None);
        assert_eq!(find_integer_root(&poly(&[-8, 0, 0, 1])), Some(BigInt::from(2)));
        // (x - 1000003)(x^2 - 2)
        let p = poly(&[2_000_006, -2, -1_000_003, 1]);
        assert_eq!(find_integer_root(&p), Some(BigInt::from(1_000_003)));
        // (2x - 3)(4x - 7): two roots inside one unit interval
        let close = poly(&[21, -26, 8]);
        assert_eq!(find_integer_root(&close), None);
        // roots at the shell boundaries 1, -1, 4
        assert_eq!(find_integer_root(&poly(&[4, -1, -4, 1])).map(|r| r.abs() == 1.into() || r == 4.into()), Some(true));
        for (c, r) in [(-4, 2), (-16, 4), (-1, 1)] {
            assert_eq!(find_integer_root(&poly(&[c, 0, 1])).map(|x| x.abs()), Some(BigInt::from(r)));
            assert_eq!(find_integer_root(&poly(&[-c, 0, -1])).map(|x| x.abs()), Some(BigInt::from(r)));
        }
        assert_eq!(find_integer_root(&poly(&[-8, 0, 0, -1])), Some(BigInt::from(-2)));
    }

    #[test]
    fn brute_force_agreement() {
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                for c in -30i64..=30 {
                    let p = poly(&[c, b, a, 1]);
                    let expected = (-40i64..=40).any(|x| x * x * x + a * x * x + b * x + c == 0);
                    let got = find_integer_root(&p);
                    assert_eq!(got.is_some(), expected, "{:?}", p);
                    if let Some(r) = got {
                        assert!(p.eval(&r).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn enormous_coefficients() {
        // (x - 7^20000)(x^2 - 3), plus a unit shift that removes the root
        let r = BigInt::from(7).pow(20000u32);
        let three = BigInt::from(3);
        let p = IntPoly::new(vec![&r * &three, -three.clone(), -r.clone(), BigInt::one()]);
        assert_eq!(find_integer_root(&p), Some(r.clone()));
        let q = IntPoly::new(vec![&r * &three + 1, -three, -r, BigInt::one()]);
        assert_eq!(find_integer_root(&q), None);
    }

    #[test]
    fn huge_root_found_quickly() {
        // (x - 3^200) (x^2 + x + 1)
        let r = BigInt::from(3).pow(200);
        let p = IntPoly::new(vec![-r.clone(), BigInt::one() - &r, BigInt::one() - &r, BigInt::one()]);
        assert_eq!(find_integer_root(&p), Some(r.clone()));
        let q = IntPoly::new(vec![-r.clone() - 1, BigInt::one() - &r, BigInt::one() - &r, BigInt::one()]);
        assert_eq!(find_integer_root(&q), None);
    }
}
