//! Brute-force census of `GL2(Z)`-orbits of irreducible integral binary
//! cubic forms with `0 < |disc| ≤ T` and signature `r`, for small `T`.
//!
//! Every such orbit has a representative in the sampler's sheared boxes
//! `n(t)I′(λ, s)` with `|t| ≤ 1/2`, `s_min ≤ s ≤ s_max`, so scanning the
//! coefficient box covering all of them finds every orbit. Representatives
//! are merged with [`canonicalize`].

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::forms::{canonicalize, descend, is_irreducible, stab_order};
use crate::numeric::DyadicInterval;
use crate::sampler::{default_radius, Mode};
use crate::stats::{chisquare_gof, ChiSquareReport, StatsError};
use crate::{CubicForm, SmallCubicForm};

/// Largest bound the census accepts.
pub const MAX_CENSUS_BOUND: u32 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("census bound {0} exceeds {MAX_CENSUS_BOUND}")]
    BoundTooLarge(BigInt),
    #[error("signature must be 1 or 3, got {0}")]
    InvalidSignature(u8),
}

/// One orbit: its canonical representative and invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub form: CubicForm,
    #[serde(serialize_with = "as_string")]
    pub disc: BigInt,
    pub signature: u8,
    pub stab: u8,
}

fn as_string<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl OrbitRecord {
    /// `{"form":["a","b","c","d"],"disc":"…","signature":r,"stab":k}`
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// Half-widths of the scanned coefficient box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefficientBox {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl CoefficientBox {
    pub fn scaled(self, k: i64) -> Self {
        CoefficientBox { a: k * self.a, b: k * self.b, c: k * self.c, d: k * self.d }
    }
}

/// The box `|a| ≤ A, |b| ≤ B, |c| ≤ C, |d| ≤ D` with
/// `A = ⌈λ s_min⁻³⌉`, `B = ⌈√5λ s_min⁻¹ + 3A/2⌉`, `C = ⌈√5λ s_max + 3A + B⌉`,
/// `D = ⌈λ s_max³ + A + B/2 + C/2⌉`: side lengths of the sampler's boxes
/// plus the shear terms for `|t| ≤ 1/2`.
pub fn completeness_box(signature: u8, bound: u32) -> CoefficientBox {
    let p = 64;
    let int = |n: i64| DyadicInterval::from_int(n, p);
    let up = |x: &DyadicInterval| -> i64 { x.upper().ceil().to_integer().to_i64().expect("box fits i64") };
    let lambda = &DyadicInterval::from_rational(&default_radius(signature), p)
        * &int(bound as i64).root(4).expect("positive bound");
    let sqrt5 = int(5).sqrt().expect("positive");
    let s_min = int(3).sqrt().expect("positive").mul_pow2(-1).sqrt().expect("positive");
    let s_min_inv = int(1).checked_div(&s_min).expect("positive");
    let s_max = lambda.mul_pow2(-1).root(3).expect("positive");

    let a = up(&(&lambda * &s_min_inv.powi(3)));
    let b = up(&(&(&sqrt5 * &lambda) * &s_min_inv + DyadicInterval::from_dyadic(3 * a, -1, p)));
    let c = up(&(&(&sqrt5 * &lambda) * &s_max + int(3 * a + b)));
    let d = up(&(&lambda * &s_max.powi(3) + DyadicInterval::from_dyadic(2 * a + b + c, -1, p)));
    CoefficientBox { a, b, c, d }
}

/// All orbits of signature `r` with `0 < |disc| ≤ T`, sorted by
/// `(|disc|, canonical form)`.
pub fn enumerate_orbits(signature: u8, bound: &BigInt) -> Result<Vec<OrbitRecord>, CensusError> {
    if signature != 1 && signature != 3 {
        return Err(CensusError::InvalidSignature(signature));
    }
    let t = match bound.to_u32() {
        Some(t) if t <= MAX_CENSUS_BOUND => t,
        _ if bound < &BigInt::from(1) => return Ok(Vec::new()),
        _ => return Err(CensusError::BoundTooLarge(bound.clone())),
    };
    Ok(enumerate_in_box(signature, t, completeness_box(signature, t)))
}

/// The census restricted to representatives inside `bx`.
pub fn enumerate_in_box(signature: u8, bound: u32, bx: CoefficientBox) -> Vec<OrbitRecord> {
    // -f and (a, -b, c, -d) are in the orbit of f and the box is symmetric,
    // so a > 0 and b ≥ 0 suffice
    let slices: Vec<HashSet<SmallCubicForm>> =
        (1..=bx.a).into_par_iter().map(|a| scan_slice(signature, bound as i128, a as i128, bx)).collect();
    let mut orbits: HashSet<SmallCubicForm> = HashSet::new();
    for s in slices {
        orbits.extend(s);
    }
    let mut records: Vec<OrbitRecord> = orbits
        .into_iter()
        .filter(|f| is_irreducible(f))
        .map(|f| {
            let stab = stab_order(&f).expect("irreducible with nonzero disc");
            let form = f.to_bigint();
            OrbitRecord { disc: form.discriminant(), form, signature, stab }
        })
        .collect();
    records.sort_by(|x, y| {
        let key = |r: &OrbitRecord| (num_traits::Signed::abs(&r.disc), r.form.clone());
        key(x).cmp(&key(y))
    });
    records
}

fn scan_slice(signature: u8, bound: i128, a: i128, bx: CoefficientBox) -> HashSet<SmallCubicForm> {
    let mut memo: HashMap<SmallCubicForm, SmallCubicForm> = HashMap::new();
    let mut out = HashSet::new();
    let (bmax, cmax, dmax) = (bx.b as i128, bx.c as i128, bx.d as i128);
    for b in 0..=bmax {
        for c in -cmax..=cmax {
            for d in disc_window(a, b, c, bound, dmax) {
                let f = SmallCubicForm::new(a, b, c, d);
                let disc = f.discriminant();
                let ok = if signature == 3 { disc > 0 && disc <= bound } else { disc < 0 && -disc <= bound };
                if !ok {
                    continue;
                }
                let start = descend(&f);
                let canon = memo
                    .entry(start)
                    .or_insert_with_key(|s| canonicalize(s).expect("nonzero discriminant"))
                    .clone();
                out.insert(canon);
            }
        }
    }
    out
}

/// Candidate `d ∈ [-dmax, dmax]` with `|disc(a, b, c, d)| ≤ T`, a slight
/// superset. As a function of `d`, `disc = -27a²d² + βd + γ` is a concave
/// quadratic, so the solutions form at most two runs.
fn disc_window(a: i128, b: i128, c: i128, bound: i128, dmax: i128) -> Vec<i128> {
    let k = (27 * a * a) as f64;
    let beta = (18 * a * b * c - 4 * b * b * b) as f64;
    let gamma = (b * b * c * c - 4 * a * c * c * c) as f64;
    // roots of -k d² + β d + γ = v
    let roots = |v: f64| -> Option<(f64, f64)> {
        let disc = beta * beta + 4.0 * k * (gamma - v);
        (disc >= 0.0).then(|| {
            let r = disc.sqrt();
            ((beta - r) / (2.0 * k), (beta + r) / (2.0 * k))
        })
    };
    let clamp = |x: f64| (x.max(-(dmax as f64) - 1.0)).min(dmax as f64 + 1.0);
    let Some((lo, hi)) = roots(-(bound as f64)) else {
        return Vec::new();
    };
    let lo_i = (clamp(lo).floor() as i128 - 1).max(-dmax);
    let hi_i = (clamp(hi).ceil() as i128 + 1).min(dmax);
    match roots(bound as f64) {
        // drop the middle run where disc > T, keeping a margin of one
        Some((ilo, ihi)) => {
            let first_end = hi_i.min(clamp(ilo).ceil() as i128 + 1);
            let second_start = lo_i.max(clamp(ihi).floor() as i128 - 1).max(first_end + 1);
            (lo_i..=first_end).chain(second_start..=hi_i).collect()
        }
        None => (lo_i..=hi_i).collect(),
    }
}

/// Expected orbit frequencies: `1/stab` for weighted sampling, equal for
/// uniform sampling.
pub fn expected_weights(records: &[OrbitRecord], mode: Mode) -> BTreeMap<CubicForm, f64> {
    records
        .iter()
        .map(|r| {
            let w = match mode {
                Mode::Weighted => 1.0 / r.stab as f64,
                Mode::Uniform => 1.0,
            };
            (r.form.clone(), w)
        })
        .collect()
}

/// Orbit counts of sampled forms, keyed by canonical representative.
pub fn tally<'a>(forms: impl IntoIterator<Item = &'a CubicForm>) -> BTreeMap<CubicForm, u64> {
    let mut counts = BTreeMap::new();
    for f in forms {
        let canon = match f.try_narrow::<i128>() {
            Some(small) => canonicalize(&small).map(|c| c.to_bigint()),
            None => canonicalize(f),
        }
        .expect("sampled forms have nonzero discriminant");
        *counts.entry(canon).or_insert(0) += 1;
    }
    counts
}

/// Chi-square test of sampled orbit frequencies against the census.
pub fn compare_with_census<'a>(
    forms: impl IntoIterator<Item = &'a CubicForm>,
    records: &[OrbitRecord],
    mode: Mode,
) -> Result<ChiSquareReport, StatsError> {
    chisquare_gof(&tally(forms), &expected_weights(records, mode))
}
