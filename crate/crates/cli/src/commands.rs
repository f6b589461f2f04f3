use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use cubic_orbits::census::{compare_with_census, enumerate_orbits, OrbitRecord, MAX_CENSUS_BOUND};
use cubic_orbits::forms::stab_order;
use cubic_orbits::sampler::{make_params, sample_many, Draw, Mode, SamplerParams};
use cubic_orbits::CubicForm;
use num_bigint::BigInt;
use serde::Serialize;

use crate::args::{BenchArgs, Common, EnumerateArgs, Format, SampleArgs, SamplingArgs, StatsArgs};

/// Largest bound accepted by `stats`.
pub const STATS_MAX_BOUND: u32 = 10_000;
/// `stats` needs at least this many samples per census orbit.
pub const STATS_SAMPLES_PER_ORBIT: u64 = 20;
/// `stats` passes when the p-value exceeds this.
pub const STATS_SIGNIFICANCE: f64 = 0.001;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// What a successful command reports back to `main`.
pub enum Verdict {
    Ok,
    StatisticalFailure,
}

fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(f)
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    let seed = seed.unwrap_or_else(rand::random);
    eprintln!("seed: {seed}");
    seed
}

fn build_params(common: &Common, sampling: &SamplingArgs) -> Result<SamplerParams, CliError> {
    let params = make_params(common.signature, common.bound.clone(), sampling.radius.clone())
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(params.with_initial_precision(sampling.initial_precision))
}

/// One sampled ring.
#[derive(Debug, Serialize)]
pub struct SampleRecord {
    pub form: CubicForm,
    pub disc: String,
    pub signature: u8,
    pub stab: u8,
    pub ring: RingRecord,
    pub attempts: u64,
    pub precision: u32,
}

/// Structure constants of the ring in the basis `(1, ω₁, ω₂)`.
#[derive(Debug, Serialize)]
pub struct RingRecord {
    pub w1w2: [String; 3],
    pub w1w1: [String; 3],
    pub w2w2: [String; 3],
}

impl SampleRecord {
    fn new(draw: &Draw, signature: u8) -> Self {
        let f = &draw.form;
        let stab = draw.stab.unwrap_or_else(|| stab_order(f).expect("sampled forms are irreducible"));
        let t = f.ring_table();
        let strs = |v: &[BigInt; 3]| v.clone().map(|x| x.to_string());
        SampleRecord {
            form: f.clone(),
            disc: f.discriminant().to_string(),
            signature,
            stab,
            ring: RingRecord { w1w2: strs(&t.w1w2), w1w1: strs(&t.w1w1), w2w2: strs(&t.w2w2) },
            attempts: draw.attempts,
            precision: draw.precision,
        }
    }

    fn csv_header() -> Vec<String> {
        let mut h: Vec<String> = ["a", "b", "c", "d", "disc", "signature", "stab"].map(String::from).to_vec();
        for name in ["w1w2", "w1w1", "w2w2"] {
            h.extend((0..3).map(|k| format!("{name}_{k}")));
        }
        h.push("attempts".into());
        h.push("precision".into());
        h
    }

    fn csv_row(&self) -> Vec<String> {
        let f = &self.form;
        let mut row = vec![f.a.to_string(), f.b.to_string(), f.c.to_string(), f.d.to_string(), self.disc.clone()];
        row.push(self.signature.to_string());
        row.push(self.stab.to_string());
        for v in [&self.ring.w1w2, &self.ring.w1w1, &self.ring.w2w2] {
            row.extend(v.iter().cloned());
        }
        row.push(self.attempts.to_string());
        row.push(self.precision.to_string());
        row
    }
}

pub fn sample(args: &SampleArgs) -> Result<Verdict, CliError> {
    let params = build_params(&args.common, &args.sampling)?;
    let seed = resolve_seed(args.sampling.seed);
    let mode: Mode = args.sampling.mode.into();
    let count = args.sampling.count;
    let draws = with_pool(args.common.jobs, || sample_many(&params, mode, seed, count));
    let records: Vec<SampleRecord> = draws.iter().map(|d| SampleRecord::new(d, params.signature())).collect();

    let mut out = open_output(args.common.out.as_deref())?;
    match args.common.format {
        Format::Json => {
            for r in &records {
                serde_json::to_writer(&mut out, r).map_err(io::Error::from)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(SampleRecord::csv_header())?;
            for r in &records {
                w.write_record(r.csv_row())?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(Verdict::Ok)
}

fn census(common: &Common, limit: u32) -> Result<Vec<OrbitRecord>, CliError> {
    if common.bound > BigInt::from(limit) {
        return Err(CliError::Usage(format!("bound {} exceeds {limit}", common.bound)));
    }
    enumerate_orbits(common.signature, &common.bound).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn enumerate(args: &EnumerateArgs) -> Result<Verdict, CliError> {
    let records = with_pool(args.common.jobs, || census(&args.common, MAX_CENSUS_BOUND))?;
    let mut out = open_output(args.common.out.as_deref())?;
    match args.common.format {
        Format::Json => {
            for r in &records {
                writeln!(out, "{}", r.to_json_line())?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["a", "b", "c", "d", "disc", "signature", "stab"])?;
            for r in &records {
                let f = &r.form;
                w.write_record([
                    f.a.to_string(),
                    f.b.to_string(),
                    f.c.to_string(),
                    f.d.to_string(),
                    r.disc.to_string(),
                    r.signature.to_string(),
                    r.stab.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(Verdict::Ok)
}

#[derive(Debug, Serialize)]
struct StatsReport {
    mode: &'static str,
    signature: u8,
    bound: String,
    samples: u64,
    orbits: usize,
    statistic: f64,
    dof: usize,
    p_value: f64,
    pass: bool,
}

pub fn stats(args: &StatsArgs) -> Result<Verdict, CliError> {
    let params = build_params(&args.common, &args.sampling)?;
    let records = with_pool(args.common.jobs, || census(&args.common, STATS_MAX_BOUND))?;
    let count = args.sampling.count;
    let floor = STATS_SAMPLES_PER_ORBIT * records.len() as u64;
    if count < floor {
        return Err(CliError::Usage(format!(
            "{count} samples is below {floor} ({STATS_SAMPLES_PER_ORBIT} per census orbit, {} orbits)",
            records.len()
        )));
    }
    let seed = resolve_seed(args.sampling.seed);
    let mode: Mode = args.sampling.mode.into();
    let draws = with_pool(args.common.jobs, || sample_many(&params, mode, seed, count));
    let report = compare_with_census(draws.iter().map(|d| &d.form), &records, mode)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let pass = report.p_value > STATS_SIGNIFICANCE;
    let summary = StatsReport {
        mode: match mode {
            Mode::Weighted => "weighted",
            Mode::Uniform => "uniform",
        },
        signature: params.signature(),
        bound: params.bound().to_string(),
        samples: count,
        orbits: records.len(),
        statistic: report.statistic,
        dof: report.dof,
        p_value: report.p_value,
        pass,
    };

    let mut out = open_output(args.common.out.as_deref())?;
    match args.common.format {
        Format::Json => {
            serde_json::to_writer(&mut out, &summary).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.serialize(&summary)?;
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(if pass { Verdict::Ok } else { Verdict::StatisticalFailure })
}

#[derive(Debug, Serialize)]
struct BenchRow {
    t: u32,
    seconds_r3: f64,
    seconds_r1: f64,
}

pub fn bench(args: &BenchArgs) -> Result<Verdict, CliError> {
    let seed = resolve_seed(args.seed);
    if args.count == 0 {
        return Err(CliError::Usage("count must be positive".into()));
    }
    let mut rows = Vec::new();
    for &t in &args.exponents {
        let bound = BigInt::from(1) << t;
        let time = |signature: u8| -> Result<f64, CliError> {
            let params = make_params(signature, bound.clone(), None).map_err(|e| CliError::Usage(e.to_string()))?;
            let start = Instant::now();
            with_pool(args.jobs, || sample_many(&params, Mode::Weighted, seed, args.count));
            Ok(start.elapsed().as_secs_f64() / args.count as f64)
        };
        let seconds_r3 = time(3)?;
        let seconds_r1 = time(1)?;
        rows.push(BenchRow { t, seconds_r3, seconds_r1 });
    }

    let mut out = open_output(args.out.as_deref())?;
    match args.format {
        Format::Json => {
            for r in &rows {
                serde_json::to_writer(&mut out, r).map_err(io::Error::from)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(Verdict::Ok)
}
