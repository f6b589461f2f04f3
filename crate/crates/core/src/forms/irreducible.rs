use num_bigint::BigInt;

use super::roots::{find_integer_root, IntPoly};
use super::BinaryCubic;
use crate::scalar::IntScalar;

/// Whether `f` has no root in `P¹(Q)`.
///
/// With `a ≠ 0` the rational roots of `f(X, 1)` lie in `(1/a)Z`, and
/// `x ↦ a·x` maps them to integer roots of the monic cubic
/// `h(m) = m³ + b·m² + ac·m + a²d`, which are found exactly by
/// [`find_integer_root`].
pub fn is_irreducible<I: IntScalar>(f: &BinaryCubic<I>) -> bool {
    if f.a.is_zero() || f.d.is_zero() {
        // [1:0] or [0:1] is a root
        return false;
    }
    let f = f.to_bigint();
    let h = IntPoly::new(vec![&f.a * &f.a * &f.d, &f.a * &f.c, f.b.clone(), BigInt::from(1)]);
    find_integer_root(&h).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    type F = BinaryCubic<i64>;

    #[test]
    fn examples() {
        assert!(!is_irreducible(&F::new(1, 0, -1, 0)));
        assert!(is_irreducible(&F::new(1, 0, -1, -1)));
        assert!(is_irreducible(&F::new(2, 0, 0, -1)));
        assert!(!is_irreducible(&F::new(0, 1, 2, 3)));
        // (2X - Y)(X^2 + Y^2) = 2X^3 - X^2Y + 2XY^2 - Y^3
        assert!(!is_irreducible(&F::new(2, -1, 2, -1)));
    }

    fn has_rational_root(f: &F) -> bool {
        if f.a == 0 || f.d == 0 {
            return true;
        }
        // candidates p/q with q | a, p | d
        let divisors = |n: i64| (1..=n.abs()).filter(move |k| n % k == 0);
        for q in divisors(f.a) {
            for p in divisors(f.d) {
                for p in [p, -p] {
                    if p.gcd(&q) != 1 {
                        continue;
                    }
                    // q^3 f(p/q, 1) = a p^3 + b p^2 q + c p q^2 + d q^3
                    let v = f.a * p * p * p + f.b * p * p * q + f.c * p * q * q + f.d * q * q * q;
                    if v == 0 {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn agrees_with_rational_root_search() {
        let r = -8i64..=8;
        let mut checked = 0;
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        let f = F::new(a, b, c, d);
                        assert_eq!(is_irreducible(&f), !has_rational_root(&f), "{f:?}");
                        checked += 1;
                    }
                }
            }
        }
        assert_eq!(checked, 17 * 17 * 17 * 17);
    }
}
