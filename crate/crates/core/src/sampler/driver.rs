use num_bigint::BigInt;
use rayon::prelude::*;

use super::attempt::{attempt, SampleOutcome, KEEP_VARIABLE};
use super::params::SamplerParams;
use crate::forms::stab_order;
use crate::numeric::DyadicInterval;
use crate::random::{LazyUniform, RandomStream, StreamAddress};
use crate::CubicForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Orbits weighted by `1/#Stab`.
    Weighted,
    /// All orbits equally likely.
    Uniform,
}

/// A sampled form with bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Draw {
    pub form: CubicForm,
    /// Attempts consumed, including the successful one.
    pub attempts: u64,
    /// Working precision of the successful attempt.
    pub precision: u32,
    /// Stabilizer order; always known in uniform mode.
    pub stab: Option<u8>,
}

/// Repeat attempts `0, 1, 2, …` of sample `sample` until one succeeds.
pub fn sample_weighted(params: &SamplerParams, seed: u64, sample: u64) -> Draw {
    weighted_from(params, seed, sample, 0)
}

fn weighted_from(params: &SamplerParams, seed: u64, sample: u64, first: u64) -> Draw {
    let mut id = first;
    loop {
        let report = attempt(params, seed, sample, id);
        id += 1;
        if let SampleOutcome::Success(form) = report.outcome {
            return Draw { form, attempts: id, precision: report.precision, stab: None };
        }
    }
}

/// Weighted draws thinned by `#Stab/3`: a form with three automorphisms is
/// always kept, one with a trivial stabilizer with probability 1/3. On a
/// discard the attempt ids continue where they stopped.
pub fn sample_uniform(params: &SamplerParams, seed: u64, sample: u64) -> Draw {
    let mut next = 0;
    loop {
        let draw = weighted_from(params, seed, sample, next);
        next = draw.attempts;
        let stab = stab_order(&draw.form).expect("sampler output is irreducible");
        if keep(seed, sample, next - 1, stab) {
            return Draw { stab: Some(stab), attempts: next, ..draw };
        }
    }
}

/// Keep with probability `stab/3`, decided from the attempt's keep coin.
fn keep(seed: u64, sample: u64, attempt: u64, stab: u8) -> bool {
    if stab >= 3 {
        return true;
    }
    let mut coin = LazyUniform::fresh(RandomStream::new(StreamAddress::new(seed, sample, attempt, KEEP_VARIABLE)));
    coin.less_than(|p| {
        DyadicInterval::from_int(stab as i64, p)
            .checked_div(&DyadicInterval::from_int(3, p))
            .expect("nonzero divisor")
    })
}

pub fn sample(params: &SamplerParams, mode: Mode, seed: u64, sample: u64) -> Draw {
    match mode {
        Mode::Weighted => sample_weighted(params, seed, sample),
        Mode::Uniform => sample_uniform(params, seed, sample),
    }
}

/// Samples `0..count` in order. Runs on the current rayon pool; the result
/// does not depend on its size.
pub fn sample_many(params: &SamplerParams, mode: Mode, seed: u64, count: u64) -> Vec<Draw> {
    (0..count).into_par_iter().map(|i| sample(params, mode, seed, i)).collect()
}

/// Fraction of successful attempts among `attempts` consecutive ones.
pub fn success_rate(params: &SamplerParams, seed: u64, attempts: u64) -> f64 {
    let hits = (0..attempts)
        .into_par_iter()
        .filter(|&i| attempt(params, seed, 0, i).outcome.is_success())
        .count();
    hits as f64 / attempts as f64
}

/// `|disc|` of the draw.
pub fn abs_disc(d: &Draw) -> BigInt {
    use num_traits::Signed;
    d.form.discriminant().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::make_params;

    #[test]
    fn smallest_orbits() {
        let p1 = make_params(1, 23.into(), None).unwrap();
        assert_eq!(sample_weighted(&p1, 5, 0).form.discriminant(), BigInt::from(-23));
        let p3 = make_params(3, 49.into(), None).unwrap();
        let d = sample_uniform(&p3, 5, 0);
        assert_eq!(d.form.discriminant(), BigInt::from(49));
        assert_eq!(d.stab, Some(3));
    }

    #[test]
    fn keep_coin_frequency() {
        let kept = (0..3000).filter(|&i| keep(1, i, 0, 1)).count();
        assert!((800..1200).contains(&kept), "{kept}");
        assert!((0..50).all(|i| keep(1, i, 0, 3)));
    }

    #[test]
    fn parallel_batch_matches_serial() {
        let params = make_params(3, 2000.into(), None).unwrap();
        let batch = sample_many(&params, Mode::Uniform, 77, 12);
        let serial: Vec<Draw> = (0..12).map(|i| sample_uniform(&params, 77, i)).collect();
        assert_eq!(batch, serial);
    }
}
