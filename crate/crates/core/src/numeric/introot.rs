//! Integer k-th roots by Newton iteration, no floating point involved.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

fn small_floor_root(n: u64, k: u32) -> u64 {
    if n < 2 || k == 1 {
        return n;
    }
    let bits = 64 - n.leading_zeros();
    let n = n as u128;
    let k128 = k as u128;
    // 2^ceil(bits/k) is above the root.
    let mut x: u128 = 1u128 << bits.div_ceil(k);
    loop {
        let y = ((k128 - 1) * x + n / x.pow(k - 1)) / k128;
        if y >= x {
            return x as u64;
        }
        x = y;
    }
}

/// `floor(n^(1/k))`.
pub fn floor_root(n: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1, "root degree must be positive");
    if k == 1 || n.is_zero() {
        return n.clone();
    }
    let bits = n.bits();
    if bits <= 64 {
        return BigUint::from(small_floor_root(n.to_u64().unwrap(), k));
    }
    // Root of the top half of the bits gives a starting point whose relative
    // error is about the square root of the target's, so Newton from just
    // above it finishes in one or two steps.
    let m = ((bits / 2) / k as u64).max(1);
    let top = n >> (k as u64 * m);
    let r = floor_root(&top, k);
    let mut x: BigUint = (r + 1u32) << m;
    let km1 = k - 1;
    loop {
        let y: BigUint = (&x * km1 + n / x.pow(km1)) / k;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `ceil(n^(1/k))`.
pub fn ceil_root(n: &BigUint, k: u32) -> BigUint {
    let r = floor_root(n, k);
    if &r.pow(k) == n {
        r
    } else {
        r + BigUint::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exact_powers() {
        for k in 1..=6u32 {
            for base in 0u64..200 {
                let n = BigUint::from(base).pow(k);
                assert_eq!(floor_root(&n, k), BigUint::from(base));
                if base > 1 {
                    assert_eq!(floor_root(&(&n - 1u32), k), BigUint::from(base - 1));
                    assert_eq!(ceil_root(&(&n + 1u32), k), BigUint::from(base + 1));
                }
            }
        }
    }

    #[test]
    fn large_bracket_property() {
        let mut n = BigUint::from(3u32);
        for i in 0..300u32 {
            n = &n * 1_000_003u32 + i;
            for k in 2..=4u32 {
                let r = floor_root(&n, k);
                assert!(r.pow(k) <= n);
                assert!((&r + 1u32).pow(k) > n);
            }
        }
    }

    #[test]
    fn sqrt_of_three_to_sixty_digits() {
        // isqrt(3 * 10^120) = floor(sqrt(3) * 10^60)
        let n = BigUint::from(3u32) * BigUint::from(10u32).pow(120);
        let r = floor_root(&n, 2);
        assert_eq!(
            r.to_string(),
            "1732050807568877293527446341505872366942805253810380628055806"
        );
    }
}
