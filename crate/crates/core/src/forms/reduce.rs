//! Stabilizer orders and canonical orbit representatives.

use std::collections::{HashSet, VecDeque};

use super::{is_irreducible, BinaryCubic, FormError, Gl2};
use crate::scalar::IntScalar;

/// Forms whose `q` exceeds this multiple of the smallest `q` seen are not
/// expanded during canonicalization.
pub const CANONICAL_PRUNE_FACTOR: i64 = 64;

/// Generators of GL2(Z) used by the orbit search, with closed-form actions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Generator {
    LowerShear(i8),
    UpperShear(i8),
    Swap,
    NegateX,
}

const GENERATORS: [Generator; 6] = [
    Generator::LowerShear(1),
    Generator::LowerShear(-1),
    Generator::UpperShear(1),
    Generator::UpperShear(-1),
    Generator::Swap,
    Generator::NegateX,
];

impl Generator {
    fn apply<I: IntScalar>(self, f: &BinaryCubic<I>) -> BinaryCubic<I> {
        match self {
            Generator::LowerShear(k) => f.lower_shear(&I::from_i64(k as i64)),
            Generator::UpperShear(k) => {
                // f(x, kx + y) is the lower shear of the reversed form, reversed
                let rev = BinaryCubic::new(f.d.clone(), f.c.clone(), f.b.clone(), f.a.clone());
                let s = rev.lower_shear(&I::from_i64(k as i64));
                BinaryCubic::new(s.d, s.c, s.b, s.a)
            }
            // det = -1: -f(y, x)
            Generator::Swap => BinaryCubic::new(-f.d.clone(), -f.c.clone(), -f.b.clone(), -f.a.clone()),
            // diag(-1, 1), det = -1: -f(-x, y)
            Generator::NegateX => BinaryCubic::new(f.a.clone(), -f.b.clone(), f.c.clone(), -f.d.clone()),
        }
    }

    #[cfg(test)]
    fn matrix<I: IntScalar>(self) -> Gl2<I> {
        match self {
            Generator::LowerShear(k) => Gl2::lower_shear(I::from_i64(k as i64)),
            Generator::UpperShear(k) => Gl2::upper_shear(I::from_i64(k as i64)),
            Generator::Swap => Gl2::swap(),
            Generator::NegateX => Gl2::diag(-I::one(), I::one()),
        }
    }
}

/// Transport `f` so that its (positive definite) Hessian `(P, Q, R)` is
/// Gauss reduced: `0 ≤ Q ≤ P ≤ R`. Requires `disc(f) > 0`.
fn reduce_by_hessian<I: IntScalar>(f: &BinaryCubic<I>) -> BinaryCubic<I> {
    let mut g = f.clone();
    loop {
        let (p, q, r) = g.hessian();
        debug_assert!(p.is_positive());
        if q > p || q <= -p.clone() {
            // H(x + ky, y) has middle coefficient Q + 2kP ∈ (−P, P]
            let two_p = p.clone() + p.clone();
            let k = (p - q).div_floor(&two_p);
            g = g.lower_shear(&k);
        } else if p > r {
            g = Gl2::swap().apply(&g).expect("swap is unimodular");
        } else {
            break;
        }
    }
    if g.hessian().1.is_negative() {
        g = Gl2::diag(I::one(), -I::one()).apply(&g).expect("reflection is unimodular");
    }
    g
}

/// The GL2(Z)-reduced Hessian `(P, Q, R)`, `0 ≤ Q ≤ P ≤ R`, of a form with
/// positive discriminant.
pub fn reduced_hessian<I: IntScalar>(f: &BinaryCubic<I>) -> Result<(I, I, I), FormError> {
    if !f.discriminant().is_positive() {
        return Err(FormError::ZeroDiscriminant);
    }
    Ok(reduce_by_hessian(f).hessian())
}

/// Order of `Stab_{GL2(Z)}(f)` for an irreducible form: 1 or 3.
///
/// A negative discriminant means a non-Galois cubic field, so the answer is
/// 1. Otherwise the stabilizer fixes the Hessian; after Gauss-reducing the
/// Hessian its automorphs have entries in `[-2, 2]`, which are searched
/// exhaustively.
pub fn stab_order<I: IntScalar>(f: &BinaryCubic<I>) -> Result<u8, FormError> {
    let disc = f.discriminant();
    if disc.is_zero() {
        return Err(FormError::ZeroDiscriminant);
    }
    if !is_irreducible(f) {
        return Err(FormError::ReducibleInput);
    }
    if disc.is_negative() {
        return Ok(1);
    }
    let g = reduce_by_hessian(f);
    Ok(count_small_automorphs(&g, 2))
}

/// Number of `M` with entries in `[-bound, bound]` and `det = ±1` fixing `f`.
pub(crate) fn count_small_automorphs<I: IntScalar>(f: &BinaryCubic<I>, bound: i64) -> u8 {
    let range = || (-bound..=bound).map(I::from_i64);
    let mut count = 0u8;
    for m11 in range() {
        for m12 in range() {
            for m21 in range() {
                for m22 in range() {
                    let m = Gl2::new(m11.clone(), m12.clone(), m21.clone(), m22.clone());
                    if let Ok(g) = m.apply(f) {
                        if &g == f {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    count
}

fn best_key<I: IntScalar>(f: &BinaryCubic<I>) -> (I, &BinaryCubic<I>) {
    (f.q_value(), f)
}

/// A distinguished representative of the GL2(Z)-orbit of `f`.
///
/// The form is first walked downhill in `q` along the generators; then a
/// breadth-first search explores the orbit, never expanding forms whose `q`
/// exceeds [`CANONICAL_PRUNE_FACTOR`] times the smallest `q` seen. The
/// result is the lexicographically smallest `(a, b, c, d)` among visited
/// forms of minimal `q`.
pub fn canonicalize<I: IntScalar>(f: &BinaryCubic<I>) -> Result<BinaryCubic<I>, FormError> {
    if f.discriminant().is_zero() {
        return Err(FormError::ZeroDiscriminant);
    }
    let start = descend(f);
    let beta = I::from_i64(CANONICAL_PRUNE_FACTOR);
    let mut min_q = start.q_value();
    let mut best = start.clone();
    let mut seen: HashSet<BinaryCubic<I>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(g) = queue.pop_front() {
        let qg = g.q_value();
        if qg > beta.clone() * min_q.clone() {
            continue;
        }
        for gen in GENERATORS {
            let h = gen.apply(&g);
            if seen.contains(&h) {
                continue;
            }
            let qh = h.q_value();
            if qh > beta.clone() * min_q.clone() {
                continue;
            }
            if qh < min_q || (qh == min_q && h < best) {
                min_q = qh.clone();
                best = h.clone();
            }
            seen.insert(h.clone());
            queue.push_back(h);
        }
    }
    Ok(best)
}

/// Greedy descent in `q` along the generators.
pub(crate) fn descend<I: IntScalar>(f: &BinaryCubic<I>) -> BinaryCubic<I> {
    let mut cur = f.clone();
    let mut cur_q = cur.q_value();
    loop {
        let step = GENERATORS
            .iter()
            .map(|g| g.apply(&cur))
            .min_by(|x, y| best_key(x).cmp(&best_key(y)))
            .unwrap();
        let q = step.q_value();
        if q < cur_q {
            cur = step;
            cur_q = q;
        } else {
            return cur;
        }
    }
}
