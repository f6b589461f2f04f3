use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::params::{Constants, SamplerParams, MAX_PRECISION_LOG2};
use crate::forms::{is_irreducible, BinaryCubic};
use crate::lattice::{sample_point, IntBox, LatticeError, LowerUnipotent};
use crate::numeric::{compare3, DyadicInterval, Trilean};
use crate::random::{LazyUniform, RandomStream, StreamAddress};
use crate::CubicForm;

/// Why an attempt failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rejection {
    /// `s` outside `((1 - t²)^{1/4}, s_max)`.
    RangeS,
    /// The box-volume thinning coin.
    Thinning,
    ZeroA,
    /// `|disc|` is zero or exceeds the bound.
    Disc,
    Signature,
    /// Outside the scaled ball around the sampled group element.
    QBall,
    Reducible,
}

impl Rejection {
    pub const ALL: [Rejection; 7] = [
        Rejection::RangeS,
        Rejection::Thinning,
        Rejection::ZeroA,
        Rejection::Disc,
        Rejection::Signature,
        Rejection::QBall,
        Rejection::Reducible,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleOutcome {
    Success(CubicForm),
    Rejected(Rejection),
}

impl SampleOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, SampleOutcome::Success(_))
    }

    pub fn form(&self) -> Option<&CubicForm> {
        match self {
            SampleOutcome::Success(f) => Some(f),
            SampleOutcome::Rejected(_) => None,
        }
    }
}

/// Result of one attempt: the outcome and the precision at which the body
/// first ran to completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttemptReport {
    pub outcome: SampleOutcome,
    pub precision: u32,
    /// `s` at the deciding precision, if it was computed.
    pub s: Option<DyadicInterval>,
}

/// One resolved step of the attempt body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Less(bool),
    Floor(BigInt),
    Ceil(BigInt),
}

/// The random reals of one attempt. Variable slots: `τ, σ, π, Δ₁..Δ₄`;
/// slot 7 is the keep coin of the uniform driver.
#[derive(Clone)]
pub struct AttemptStreams {
    pub tau: LazyUniform,
    pub sigma: LazyUniform,
    pub pi: LazyUniform,
    pub deltas: [LazyUniform; 4],
}

pub(crate) const KEEP_VARIABLE: u64 = 7;

impl AttemptStreams {
    pub fn new(seed: u64, sample: u64, attempt: u64) -> Self {
        let u = |var| LazyUniform::fresh(RandomStream::new(StreamAddress::new(seed, sample, attempt, var)));
        AttemptStreams { tau: u(0), sigma: u(1), pi: u(2), deltas: [u(3), u(4), u(5), u(6)] }
    }

    /// Current enclosures of all seven reals.
    pub fn enclosures(&self) -> Vec<DyadicInterval> {
        let mut v = vec![self.tau.as_interval(), self.sigma.as_interval(), self.pi.as_interval()];
        v.extend(self.deltas.iter().map(|d| d.as_interval()));
        v
    }
}

/// Marker for "the current precision cannot decide this step".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Undecided;

struct Recorder {
    trace: Option<Vec<Decision>>,
}

impl Recorder {
    fn less(&mut self, x: &DyadicInterval, y: &DyadicInterval) -> Result<bool, Undecided> {
        let answer = match compare3(x, y) {
            Trilean::True => true,
            Trilean::False => false,
            Trilean::Unknown => return Err(Undecided),
        };
        if let Some(t) = &mut self.trace {
            t.push(Decision::Less(answer));
        }
        Ok(answer)
    }

    fn floor(&mut self, x: &DyadicInterval) -> Result<BigInt, Undecided> {
        let v = x.floor_partial().ok_or(Undecided)?;
        if let Some(t) = &mut self.trace {
            t.push(Decision::Floor(v.clone()));
        }
        Ok(v)
    }

    fn ceil(&mut self, x: &DyadicInterval) -> Option<BigInt> {
        let v = x.ceil_partial()?;
        if let Some(t) = &mut self.trace {
            t.push(Decision::Ceil(v.clone()));
        }
        Some(v)
    }
}

/// Run attempt `attempt` of sample `sample` to completion: the body is
/// evaluated at `p = p₀, 2p₀, 4p₀, …` on the same digit streams until
/// every step is decided.
pub fn attempt(params: &SamplerParams, seed: u64, sample: u64, attempt: u64) -> AttemptReport {
    let mut streams = AttemptStreams::new(seed, sample, attempt);
    run_attempt(params, &mut streams)
}

/// [`attempt`] on caller-supplied streams.
pub fn run_attempt(params: &SamplerParams, streams: &mut AttemptStreams) -> AttemptReport {
    let mut p = params.initial_precision();
    loop {
        let mut rec = Recorder { trace: None };
        let mut s_seen = None;
        if let Ok(outcome) = body(params, streams, p, &mut rec, &mut s_seen) {
            return AttemptReport { outcome, precision: p, s: s_seen };
        }
        assert!(p.trailing_zeros() < MAX_PRECISION_LOG2, "precision loop exceeded 2^{MAX_PRECISION_LOG2} bits");
        p *= 2;
    }
}

/// Evaluate the attempt body once at precision `p`, recording every
/// decided comparison, floor and ceiling.
pub fn evaluate_at(
    params: &SamplerParams,
    streams: &mut AttemptStreams,
    p: u32,
) -> (Result<SampleOutcome, Undecided>, Vec<Decision>) {
    let mut rec = Recorder { trace: Some(Vec::new()) };
    let mut s_seen = None;
    let out = body(params, streams, p, &mut rec, &mut s_seen);
    (out, rec.trace.unwrap_or_default())
}

fn body(
    params: &SamplerParams,
    u: &mut AttemptStreams,
    p: u32,
    rec: &mut Recorder,
    s_seen: &mut Option<DyadicInterval>,
) -> Result<SampleOutcome, Undecided> {
    use Rejection::*;
    let k: &Constants = params.constants(p);
    let one = k.one();

    let tau = u.tau.reveal(p);
    let sigma = u.sigma.reveal(p);
    let t = &tau - &one.mul_pow2(-1);

    // s_min²/s_max² < σ < s_min²/√(1 - t²)
    if !rec.less(&k.sigma_floor, &sigma)? {
        return Ok(SampleOutcome::Rejected(RangeS));
    }
    let cos = (&one - &t.square()).sqrt().map_err(|_| Undecided)?;
    let sigma_ceiling = k.s_min_sq.checked_div(&cos).map_err(|_| Undecided)?;
    if !rec.less(&sigma, &sigma_ceiling)? {
        return Ok(SampleOutcome::Rejected(RangeS));
    }

    // s = s_min/√σ
    let sqrt_sigma = sigma.sqrt().map_err(|_| Undecided)?;
    let s = k.s_min.checked_div(&sqrt_sigma).map_err(|_| Undecided)?;
    let s_inv = &sqrt_sigma * &k.s_min_inv;
    *s_seen = Some(s.clone());

    let s3 = s.powi(3);
    let lengths_real = [&k.lambda * &s_inv.powi(3), &k.sqrt5_lambda * &s_inv, &k.sqrt5_lambda * &s, &k.lambda * &s3];
    let mut lengths: Vec<BigInt> = Vec::with_capacity(4);
    for l in &lengths_real {
        lengths.push(rec.floor(&(&one + l))?);
    }

    // thinning: fail if π > ∏l′/∏L′
    let volume: BigInt = lengths.iter().product();
    let ratio = DyadicInterval::from_int(volume, p).checked_div(&k.box_volume).map_err(|_| Undecided)?;
    assert!(
        ratio.is_negative() != Trilean::True && compare3(&one, &ratio) != Trilean::True,
        "thinning ratio {ratio:?} outside [0, 1]"
    );
    let pi = u.pi.reveal(p);
    if rec.less(&ratio, &pi)? {
        return Ok(SampleOutcome::Rejected(Thinning));
    }

    let mut offsets: Vec<BigInt> = Vec::with_capacity(4);
    for (delta, l) in u.deltas.iter_mut().zip(&lengths) {
        offsets.push(rec.floor(&delta.reveal(p).scale_int(l))?);
    }

    // a = ⌈-l₁′/2⌉ + δ₁
    let a = -lengths[0].div_floor(&BigInt::from(2)) + &offsets[0];
    if a.is_zero() {
        return Ok(SampleOutcome::Rejected(ZeroA));
    }

    // (b, c, d) from the box [-l′/2, l′/2) sheared by n(t)
    let lower: Vec<DyadicInterval> = lengths.iter().map(|l| DyadicInterval::from_dyadic(-l, -1, p)).collect();
    let bx = IntBox::new(lower, lengths);
    let t2 = t.square();
    let inverse = vec![
        vec![],
        vec![-t.scale_int(&BigInt::from(3))],
        vec![t2.scale_int(&BigInt::from(3)), -t.mul_pow2(1)],
        vec![-(&t2 * &t), t2.clone(), -t.clone()],
    ];
    let shear = LowerUnipotent::from_inverse(inverse);
    let v = match sample_point(&bx, &shear, &offsets, |x| rec.ceil(x)) {
        Ok(v) => v,
        Err(LatticeError::PrecisionInsufficient) => return Err(Undecided),
        Err(e) => panic!("lattice step failed: {e}"),
    };
    debug_assert_eq!(v[0], a);
    let [a, b, c, d]: [BigInt; 4] = v.try_into().expect("four coordinates");
    let f = BinaryCubic::new(a, b, c, d);

    let disc = f.discriminant();
    if disc.is_zero() || &disc.abs() > params.bound() {
        return Ok(SampleOutcome::Rejected(Disc));
    }
    let want_positive = params.signature() == 3;
    if disc.is_positive() != want_positive {
        return Ok(SampleOutcome::Rejected(Signature));
    }

    if !rec.less(&scaled_q(&f, &t, &s), &scaled_ball_radius(&disc, &s, k))? {
        return Ok(SampleOutcome::Rejected(QBall));
    }

    if !is_irreducible(&f) {
        return Ok(SampleOutcome::Rejected(Reducible));
    }
    Ok(SampleOutcome::Success(f))
}

/// `s⁶·q(a(s)⁻¹n(-t)f)`, free of negative powers of `s`.
fn scaled_q(f: &CubicForm, t: &DyadicInterval, s: &DyadicInterval) -> DyadicInterval {
    let p = t.prec();
    let g = f.map(|x| DyadicInterval::from_int(x.clone(), p)).lower_shear(&-t);
    let s4 = s.powi(4);
    let s8 = s4.square();
    let s12 = &s8 * &s4;
    let five = BigInt::from(5);
    let (a, b, c, d) = (&g.a, &g.b, &g.c, &g.d);
    let mut acc = (&s12 * &a.square()).scale_int(&five);
    acc = acc + &s8 * &b.square();
    acc = acc + &s4 * &c.square();
    acc = acc + d.square().scale_int(&five);
    acc = acc + (&s8 * &(a * c)).mul_pow2(1);
    acc + (&s4 * &(b * d)).mul_pow2(1)
}

/// `s⁶·R²·|disc|^{1/2}`.
fn scaled_ball_radius(disc: &BigInt, s: &DyadicInterval, k: &Constants) -> DyadicInterval {
    let p = s.prec();
    let root = DyadicInterval::from_int(disc.abs(), p).sqrt().expect("nonnegative");
    &(&s.powi(6) * &k.radius_sq) * &root
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::make_params;
    use num_rational::BigRational;

    #[test]
    fn scaled_q_matches_rational_formula() {
        // t = 1/4, s = 2: compare against the explicit coefficient maps
        let f = CubicForm::new(2.into(), (-3).into(), 5.into(), 7.into());
        let p = 64;
        let t = DyadicInterval::from_dyadic(1, -2, p);
        let s = DyadicInterval::from_int(2, p);
        let got = scaled_q(&f, &t, &s);
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let (a, b, c, d) = (q(2, 1), q(-3, 1), q(5, 1), q(7, 1));
        let tt = q(1, 4);
        let a1 = a.clone();
        let b1 = &b - q(3, 1) * &tt * &a;
        let c1 = &c - q(2, 1) * &tt * &b + q(3, 1) * &tt * &tt * &a;
        let d1 = &d - &tt * &c + &tt * &tt * &b - &tt * &tt * &tt * &a;
        // a(s)⁻¹ scales by (s³, s, s⁻¹, s⁻³)
        let sc = |x: &BigRational, e: i32| x * BigRational::from_integer(2.into()).pow(e);
        let g = BinaryCubic::new(sc(&a1, 3), sc(&b1, 1), sc(&c1, -1), sc(&d1, -3));
        let expected = g.q_value() * BigRational::from_integer(64.into());
        assert!(got.contains(&expected), "{got:?} vs {expected}");
    }

    #[test]
    fn rejections_and_successes_both_occur() {
        let params = make_params(3, 10_000.into(), None).unwrap();
        let mut successes = 0;
        let mut reasons = std::collections::BTreeSet::new();
        for i in 0..400 {
            let r = attempt(&params, 9, 0, i);
            match r.outcome {
                SampleOutcome::Success(f) => {
                    successes += 1;
                    let disc = f.discriminant();
                    assert!(disc.is_positive() && disc <= BigInt::from(10_000));
                    assert!(is_irreducible(&f));
                }
                SampleOutcome::Rejected(why) => {
                    reasons.insert(why);
                }
            }
        }
        assert!(successes > 0);
        assert!(reasons.contains(&Rejection::RangeS));
        assert!(reasons.contains(&Rejection::QBall) || reasons.contains(&Rejection::Disc));
    }

    #[test]
    fn smallest_negative_discriminant() {
        let params = make_params(1, 23.into(), None).unwrap();
        let mut found = 0;
        for i in 0..3000 {
            if let SampleOutcome::Success(f) = attempt(&params, 1, 0, i).outcome {
                assert_eq!(f.discriminant(), BigInt::from(-23));
                found += 1;
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn replay_at_four_times_precision_agrees() {
        let params = make_params(1, 5000.into(), None).unwrap();
        for i in 0..200 {
            let mut streams = AttemptStreams::new(3, 0, i);
            let report = run_attempt(&params, &mut streams);
            let (first, trace) = evaluate_at(&params, &mut streams, report.precision);
            assert_eq!(first, Ok(report.outcome.clone()));
            let (again, trace4) = evaluate_at(&params, &mut streams, 4 * report.precision);
            assert_eq!(again, Ok(report.outcome));
            assert_eq!(trace, trace4);
        }
    }
}
