//! Cost comparison between `Jac(E, m)`, `E x G_m`, `E` and `G_m`.
//!
//! Every trial draws two random elements `(P, lambda)`, `(Q, mu)` and a scalar
//! of exactly `scalar_bits` bits, then measures one group operation and one
//! scalar multiplication in each of the four groups. Counts come from the
//! field multiplication counter and are exact; times are medians.

use std::fmt::Write as _;
use std::io;
use std::time::Instant;

use genjac_core::extgroup::{ExtElement, GroupBackend};
use genjac_core::field::MulCounter;
use genjac_core::genjac::{GenJacParams, JacElement};
use genjac_core::Error as CoreError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::experiments::{random_jac_element, PointSampler};

pub const PRNG_NAME: &str = "ChaCha20Rng/seed_from_u64";
pub const MIN_TRIALS: usize = 5;

pub const CSV_COLUMNS: [&str; 12] = [
    "group",
    "element_bytes",
    "op_mults_median",
    "op_mults_max",
    "scalar_mul_mults_median",
    "op_ns_median",
    "scalar_mul_ns_median",
    "trials",
    "scalar_bits",
    "seed",
    "prng",
    "skipped",
];

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("need at least {MIN_TRIALS} trials, got {0}")]
    TooFewTrials(usize),
    #[error("scalar_bits must be in 1..=64, got {0}")]
    ScalarBits(u32),
    #[error("trial {trial}: Jac add used {jac} mults but E add + G_m mul used {parts}")]
    Inequality { trial: usize, jac: u64, parts: u64 },
    #[error("Jac elements take {jac} bytes but E x G_m elements take {product}")]
    ByteSize { jac: usize, product: usize },
    #[error("gave up after {0} consecutive support collisions")]
    Collisions(usize),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Jac,
    Product,
    Curve,
    Gm,
}

impl GroupKind {
    pub const ALL: [GroupKind; 4] = [GroupKind::Jac, GroupKind::Product, GroupKind::Curve, GroupKind::Gm];

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Jac => "Jac(E,m)",
            GroupKind::Product => "E x G_m",
            GroupKind::Curve => "E",
            GroupKind::Gm => "G_m",
        }
    }
}

/// Measurements of one group in one trial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Sample {
    pub op_mults: u64,
    pub scalar_mul_mults: u64,
    pub op_ns: u128,
    pub scalar_mul_ns: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub group: GroupKind,
    pub element_bytes: usize,
    pub op_mults_median: u64,
    pub op_mults_max: u64,
    pub scalar_mul_mults_median: u64,
    pub op_ns_median: u128,
    pub scalar_mul_ns_median: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchReport {
    pub seed: u64,
    pub prng: &'static str,
    pub params_file: Option<String>,
    pub trials: usize,
    pub scalar_bits: u32,
    pub skipped: usize,
    pub rows: Vec<BenchRow>,
    /// `samples[t]` holds trial `t`, one entry per group in [`GroupKind::ALL`] order.
    pub samples: Vec<[Sample; 4]>,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub trials: usize,
    pub scalar_bits: u32,
    pub seed: u64,
    pub params_file: Option<String>,
}

fn median<T: Copy + Ord>(mut v: Vec<T>) -> T {
    v.sort_unstable();
    v[v.len() / 2]
}

fn measure<T>(counter: &MulCounter, f: impl FnOnce() -> Result<T, CoreError>) -> Result<(u64, u128), CoreError> {
    counter.reset();
    let start = Instant::now();
    let out = f();
    let ns = start.elapsed().as_nanos();
    let mults = counter.get();
    out.map(|_| (mults, ns))
}

/// One trial on a fresh counter. Returns `Err(SupportCollision)` untouched so
/// the caller can resample.
fn trial(params: &GenJacParams, x: &JacElement, y: &JacElement, s: u64) -> Result<[Sample; 4], CoreError> {
    let params = params.recounted(MulCounter::new());
    let counter = params.counter().clone();
    let (jac, prod, e, gm) = (params.group(), params.direct_product(), params.curve_group(), params.gm_group());
    let mut out = [Sample::default(); 4];
    for (slot, kind) in out.iter_mut().zip(GroupKind::ALL) {
        let (op, sm) = match kind {
            GroupKind::Jac => (measure(&counter, || jac.add(x, y))?, measure(&counter, || jac.scalar_mul(s, x))?),
            GroupKind::Product => (measure(&counter, || prod.add(x, y))?, measure(&counter, || prod.scalar_mul(s, x))?),
            GroupKind::Curve => {
                (measure(&counter, || e.add(&x.a, &y.a))?, measure(&counter, || e.scalar_mul(s, &x.a))?)
            }
            GroupKind::Gm => (measure(&counter, || gm.add(&x.b, &y.b))?, measure(&counter, || gm.scalar_mul(s, &x.b))?),
        };
        *slot = Sample { op_mults: op.0, scalar_mul_mults: sm.0, op_ns: op.1, scalar_mul_ns: sm.1 };
    }
    Ok(out)
}

/// Element sizes under `to_bytes`, in [`GroupKind::ALL`] order.
pub fn element_sizes(params: &GenJacParams) -> [usize; 4] {
    let x = ExtElement::new(genjac_core::curve::Point::Infinity, params.ext_curve().field().one());
    [
        params.group().to_bytes(&x).len(),
        params.direct_product().to_bytes(&x).len(),
        params.curve_group().to_bytes(&x.a).len(),
        params.gm_group().to_bytes(&x.b).len(),
    ]
}

pub fn run_benchmark(params: &GenJacParams, config: &BenchConfig) -> Result<BenchReport, BenchError> {
    if config.trials < MIN_TRIALS {
        return Err(BenchError::TooFewTrials(config.trials));
    }
    if !(1..=64).contains(&config.scalar_bits) {
        return Err(BenchError::ScalarBits(config.scalar_bits));
    }
    let sizes = element_sizes(params);
    if sizes[0] != sizes[1] {
        return Err(BenchError::ByteSize { jac: sizes[0], product: sizes[1] });
    }
    let points = PointSampler::new(params.base_curve())?;
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    let top = 1u64 << (config.scalar_bits - 1);
    let (mut samples, mut skipped, mut streak) = (Vec::with_capacity(config.trials), 0, 0);
    while samples.len() < config.trials {
        let x = random_jac_element(params, &points, &mut rng)?;
        let y = random_jac_element(params, &points, &mut rng)?;
        let s = top | (rng.random::<u64>() & (top - 1));
        match trial(params, &x, &y, s) {
            Ok(sample) => {
                streak = 0;
                let parts = sample[2].op_mults + sample[3].op_mults;
                if sample[0].op_mults < parts {
                    return Err(BenchError::Inequality { trial: samples.len(), jac: sample[0].op_mults, parts });
                }
                samples.push(sample);
            }
            Err(CoreError::SupportCollision) => {
                skipped += 1;
                streak += 1;
                if streak >= 1000 {
                    return Err(BenchError::Collisions(streak));
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    let rows = GroupKind::ALL
        .iter()
        .enumerate()
        .map(|(i, &group)| {
            let col = |f: fn(&Sample) -> u128| samples.iter().map(|s| f(&s[i])).collect::<Vec<_>>();
            BenchRow {
                group,
                element_bytes: sizes[i],
                op_mults_median: median(col(|s| s.op_mults.into())) as u64,
                op_mults_max: samples.iter().map(|s| s[i].op_mults).max().unwrap_or(0),
                scalar_mul_mults_median: median(col(|s| s.scalar_mul_mults.into())) as u64,
                op_ns_median: median(col(|s| s.op_ns)),
                scalar_mul_ns_median: median(col(|s| s.scalar_mul_ns)),
            }
        })
        .collect();
    Ok(BenchReport {
        seed: config.seed,
        prng: PRNG_NAME,
        params_file: config.params_file.clone(),
        trials: config.trials,
        scalar_bits: config.scalar_bits,
        skipped,
        rows,
        samples,
    })
}

impl BenchReport {
    fn cells(&self, row: &BenchRow, timings: bool) -> [String; 7] {
        let time = |ns: u128| if timings { ns.to_string() } else { "-".to_string() };
        [
            row.group.name().to_string(),
            row.element_bytes.to_string(),
            row.op_mults_median.to_string(),
            row.op_mults_max.to_string(),
            row.scalar_mul_mults_median.to_string(),
            time(row.op_ns_median),
            time(row.scalar_mul_ns_median),
        ]
    }

    /// Aligned text table. With `timings = false` the wall-clock columns are
    /// printed as `-` and the output depends only on the seed.
    pub fn render_table(&self, timings: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "prng {}  seed {}  params {}  trials {}  scalar_bits {}  skipped {}",
            self.prng,
            self.seed,
            self.params_file.as_deref().unwrap_or("-"),
            self.trials,
            self.scalar_bits,
            self.skipped
        );
        let header = ["group", "bytes", "op_mults", "op_max", "smul_mults", "op_ns", "smul_ns"];
        let body: Vec<[String; 7]> = self.rows.iter().map(|r| self.cells(r, timings)).collect();
        let mut widths = header.map(str::len);
        for cells in &body {
            for (w, c) in widths.iter_mut().zip(cells) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: &[&str]| {
            let mut s = format!("{:<w$}", cells[0], w = widths[0]);
            for (c, w) in cells[1..].iter().zip(&widths[1..]) {
                let _ = write!(s, "  {c:>w$}");
            }
            s
        };
        let _ = writeln!(out, "{}", line(&header));
        for cells in &body {
            let refs: Vec<&str> = cells.iter().map(String::as_str).collect();
            let _ = writeln!(out, "{}", line(&refs));
        }
        out
    }

    /// CSV with the columns in [`CSV_COLUMNS`], one row per group.
    pub fn write_csv<W: io::Write>(&self, w: W, timings: bool) -> Result<(), BenchError> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(CSV_COLUMNS)?;
        for row in &self.rows {
            let mut rec: Vec<String> = self.cells(row, timings).into();
            rec.extend([
                self.trials.to_string(),
                self.scalar_bits.to_string(),
                self.seed.to_string(),
                self.prng.to_string(),
                self.skipped.to_string(),
            ]);
            wtr.write_record(&rec)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn row(&self, group: GroupKind) -> &BenchRow {
        self.rows.iter().find(|r| r.group == group).expect("every group has a row")
    }
}
