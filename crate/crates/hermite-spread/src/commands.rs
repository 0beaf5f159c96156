use std::collections::BTreeMap;

use hermite_spread_core::analysis::{linear_fit_over, FitResult};
use hermite_spread_core::entropic::{
    aptekarev_asymptotic, azor_z4_asymptotic, entropic_moment, onicescu_heller_length,
    renyi_entropy, renyi_length, tsallis_entropy, z4_factorial_normalized,
};
use hermite_spread_core::hermite::{fisher_length, moment, standard_deviation};
use hermite_spread_core::oscillator::{
    ho_fisher_information, ho_fisher_length, ho_onicescu_heller_length, ho_renyi_length, ho_shannon,
    ho_standard_deviation, OscillatorParams,
};
use hermite_spread_core::quadrature::{entropic_moment_quadrature, QuadratureConfig};
use hermite_spread_core::shannon::{optimal_bound, shannon_asymptotic, shannon_entropy, shannon_length};
use hermite_spread_core::{Error, ExactReal, Mp};
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::Value;

use crate::cli::Command;
use crate::record::{int, Columns, Fmt, Kind, OutputRecord};

/// Largest degree accepted without `--no-limits`.
pub const N_CAP: usize = 150;
/// Largest entropic order accepted without `--no-limits`.
pub const Q_CAP: u32 = 8;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for numerical failures, 1 for everything the caller can fix.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Compute(Error::PrecisionNotMet { .. } | Error::ConvergenceFailure { .. }) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub struct Context {
    pub bits: usize,
    pub fmt: Fmt,
    pub cfg: QuadratureConfig,
    pub no_limits: bool,
}

impl Context {
    pub fn new(bits: usize, digits: usize, no_limits: bool) -> Result<Self> {
        let cfg = QuadratureConfig::with_precision(bits);
        cfg.validate()?;
        if digits == 0 {
            return Err(CliError::Usage("--digits must be positive".into()));
        }
        Ok(Context {
            bits,
            fmt: Fmt { digits },
            cfg,
            no_limits,
        })
    }

    fn degrees(&self, lo: usize, hi: usize) -> Result<std::ops::RangeInclusive<usize>> {
        if lo > hi {
            return Err(CliError::Usage(format!("empty degree range {lo}..={hi}")));
        }
        if hi > N_CAP && !self.no_limits {
            return Err(CliError::Usage(format!(
                "degree {hi} exceeds the cap {N_CAP}; pass --no-limits to lift it"
            )));
        }
        Ok(lo..=hi)
    }

    fn orders(&self, qs: &[u32], min: u32) -> Result<()> {
        for &q in qs {
            if q < min {
                return Err(CliError::Usage(format!("order {q} is below {min}")));
            }
            if q > Q_CAP && !self.no_limits {
                return Err(CliError::Usage(format!(
                    "order {q} exceeds the cap {Q_CAP}; pass --no-limits to lift it"
                )));
            }
        }
        Ok(())
    }
}

pub fn run(command: &Command, ctx: &Context) -> Result<OutputRecord> {
    match command {
        Command::Lengths { n_min, n_max, q, k_max } => lengths(ctx, *n_min, *n_max, q, *k_max),
        Command::Moments { n_min, n_max, k } => moments(ctx, *n_min, *n_max, k),
        Command::Entropic { n_min, n_max, q } => entropic(ctx, *n_min, *n_max, q),
        Command::Bounds { n_max, k_max } => bounds(ctx, *n_max, *k_max),
        Command::Fits { range } => fits(ctx, range),
        Command::Oscillator { n_min, n_max, lambda } => oscillator(ctx, *n_min, *n_max, lambda),
        Command::Asymptotics { n, q } => asymptotics(ctx, n, *q),
    }
}

fn params(pairs: &[(&str, String)], ctx: &Context) -> BTreeMap<String, String> {
    let mut map: BTreeMap<String, String> =
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    map.insert("precision_bits".into(), ctx.bits.to_string());
    map.insert("digits".into(), ctx.fmt.digits.to_string());
    map
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn rows<F>(degrees: std::ops::RangeInclusive<usize>, f: F) -> Result<Vec<Vec<Value>>>
where
    F: Fn(usize) -> Result<Vec<Value>> + Send + Sync,
{
    degrees.into_par_iter().map(f).collect()
}

fn lengths(ctx: &Context, n_min: usize, n_max: usize, qs: &[u32], k_max: u32) -> Result<OutputRecord> {
    let degrees = ctx.degrees(n_min, n_max)?;
    ctx.orders(qs, 2)?;
    if k_max < 2 {
        return Err(CliError::Usage("--k-max must be at least 2".into()));
    }
    let mut cols = Columns::default();
    cols.push("n", "1", Kind::Int).exact("std_dev", "x");
    for q in qs {
        let name = format!("renyi_length_q{q}");
        if *q == 2 {
            cols.exact(&name, "x");
        } else {
            cols.push(&name, "x", Kind::Float);
        }
    }
    cols.push("shannon_length", "x", Kind::Float)
        .push("shannon_length_error", "x", Kind::Float)
        .push("k_opt", "1", Kind::Int)
        .push("shannon_bound", "x", Kind::Float)
        .push("bound_warning", "1", Kind::Bool)
        .exact("fisher_length", "x");
    let parameters = params(
        &[
            ("n_min", n_min.to_string()),
            ("n_max", n_max.to_string()),
            ("q", list(qs)),
            ("k_max", k_max.to_string()),
        ],
        ctx,
    );
    let mut record = OutputRecord::new("lengths", parameters, cols.build());
    let f = &ctx.fmt;
    record.rows = rows(degrees, |n| {
        let mut row = vec![int(n)];
        row.extend(f.exact(&standard_deviation(n)));
        for &q in qs {
            if q == 2 {
                row.extend(f.exact(&onicescu_heller_length(n, ctx.bits).exact));
            } else {
                row.push(f.real(&renyi_length(n, q, ctx.bits)?.length));
            }
        }
        let s = shannon_length(n, &ctx.cfg)?;
        row.push(f.real(&s.length));
        row.push(f.f64(s.length_error()));
        let b = optimal_bound(n, k_max)?;
        row.push(Value::from(b.k_opt));
        row.push(f.f64(b.c));
        row.push(Value::Bool(b.warning));
        row.extend(f.exact(&fisher_length(n)));
        Ok(row)
    })?;
    Ok(record)
}

fn moments(ctx: &Context, n_min: usize, n_max: usize, ks: &[usize]) -> Result<OutputRecord> {
    let degrees = ctx.degrees(n_min, n_max)?;
    let mut cols = Columns::default();
    cols.push("n", "1", Kind::Int);
    for k in ks {
        cols.exact(&format!("moment_k{k}"), &format!("x^{k}"));
    }
    let parameters = params(
        &[("n_min", n_min.to_string()), ("n_max", n_max.to_string()), ("k", list(ks))],
        ctx,
    );
    let mut record = OutputRecord::new("moments", parameters, cols.build());
    record.rows = rows(degrees, |n| {
        let mut row = vec![int(n)];
        for &k in ks {
            row.extend(ctx.fmt.exact(&ExactReal::from_rational(moment(n, k))));
        }
        Ok(row)
    })?;
    Ok(record)
}

fn entropic(ctx: &Context, n_min: usize, n_max: usize, qs: &[u32]) -> Result<OutputRecord> {
    let degrees = ctx.degrees(n_min, n_max)?;
    ctx.orders(qs, 1)?;
    let mut cols = Columns::default();
    cols.push("n", "1", Kind::Int)
        .push("q", "1", Kind::Int)
        .exact("entropic_moment", "x^(1-q)")
        .push("renyi_entropy", "nat", Kind::Float)
        .push("tsallis_entropy", "1", Kind::Float);
    let parameters = params(
        &[("n_min", n_min.to_string()), ("n_max", n_max.to_string()), ("q", list(qs))],
        ctx,
    );
    let mut record = OutputRecord::new("entropic", parameters, cols.build());
    let per_n = degrees
        .into_par_iter()
        .map(|n| {
            let mut block = Vec::with_capacity(qs.len());
            for &q in qs {
                let mut row = vec![int(n), Value::from(q)];
                row.extend(ctx.fmt.exact(&entropic_moment(n, q)?.value));
                if q == 1 {
                    // Both families tend to the Shannon entropy as q → 1.
                    let s = ctx.fmt.real(&shannon_entropy(n, &ctx.cfg)?.entropy);
                    row.push(s.clone());
                    row.push(s);
                } else {
                    row.push(ctx.fmt.real(&renyi_entropy(n, q, ctx.bits)?));
                    row.push(ctx.fmt.real(&tsallis_entropy(n, q, ctx.bits)?));
                }
                block.push(row);
            }
            Ok(block)
        })
        .collect::<Result<Vec<_>>>()?;
    record.rows = per_n.into_iter().flatten().collect();
    Ok(record)
}

fn bounds(ctx: &Context, n_max: usize, k_max: u32) -> Result<OutputRecord> {
    let degrees = ctx.degrees(0, n_max)?;
    if k_max < 2 {
        return Err(CliError::Usage("--k-max must be at least 2".into()));
    }
    let mut cols = Columns::default();
    cols.push("n", "1", Kind::Int)
        .push("k_opt", "1", Kind::Int)
        .push("shannon_bound", "x", Kind::Float)
        .push("bound_warning", "1", Kind::Bool);
    let parameters = params(&[("n_max", n_max.to_string()), ("k_max", k_max.to_string())], ctx);
    let mut record = OutputRecord::new("bounds", parameters, cols.build());
    record.rows = rows(degrees, |n| {
        let b = optimal_bound(n, k_max)?;
        Ok(vec![int(n), Value::from(b.k_opt), ctx.fmt.f64(b.c), Value::Bool(b.warning)])
    })?;
    Ok(record)
}

fn parse_range(range: &str) -> Result<(usize, usize)> {
    let bad = || CliError::Usage(format!("range must look like lo:hi, got {range:?}"));
    let (lo, hi) = range.split_once(':').ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn fits(ctx: &Context, range: &str) -> Result<OutputRecord> {
    let (lo, hi) = parse_range(range)?;
    let degrees = ctx.degrees(lo, hi)?;
    if hi < lo + 2 {
        return Err(CliError::Usage("a fit needs at least three degrees".into()));
    }
    let points = degrees
        .into_par_iter()
        .map(|n| {
            let sigma = standard_deviation(n).to_f64();
            let shannon = shannon_length(n, &ctx.cfg)?.length.to_f64();
            let heller = onicescu_heller_length(n, ctx.bits).value.to_f64();
            Ok((sigma, shannon, heller))
        })
        .collect::<Result<Vec<_>>>()?;
    let column = |pick: fn(&(f64, f64, f64)) -> f64| -> Vec<(f64, f64)> {
        points.iter().map(|p| (p.0, pick(p))).collect()
    };
    let shannon = linear_fit_over(&column(|p| p.1), (lo, hi))?;
    let heller = linear_fit_over(&column(|p| p.2), (lo, hi))?;
    let mut cols = Columns::default();
    cols.push("length", "", Kind::Text)
        .push("slope", "1", Kind::Float)
        .push("intercept", "x", Kind::Float)
        .push("correlation", "1", Kind::Float)
        .push("n_lo", "1", Kind::Int)
        .push("n_hi", "1", Kind::Int);
    let parameters = params(&[("range", format!("{lo}:{hi}"))], ctx);
    let mut record = OutputRecord::new("fits", parameters, cols.build());
    let row = |name: &str, fit: &FitResult| {
        vec![
            Value::String(name.into()),
            ctx.fmt.f64(fit.slope),
            ctx.fmt.f64(fit.intercept),
            ctx.fmt.f64(fit.correlation),
            int(fit.n_range.0),
            int(fit.n_range.1),
        ]
    };
    record.rows = vec![row("shannon", &shannon), row("onicescu_heller", &heller)];
    Ok(record)
}

fn oscillator(ctx: &Context, n_min: usize, n_max: usize, lambda: &str) -> Result<OutputRecord> {
    let degrees = ctx.degrees(n_min, n_max)?;
    let p: OscillatorParams = lambda
        .parse()
        .map_err(|e: Error| CliError::Usage(e.to_string()))?;
    let mut cols = Columns::default();
    cols.push("n", "1", Kind::Int)
        .exact("std_dev", "x")
        .exact("fisher_information", "x^-2")
        .exact("fisher_length", "x")
        .exact("renyi_length_q2", "x");
    for q in 3..=5 {
        cols.push(&format!("renyi_length_q{q}"), "x", Kind::Float);
    }
    cols.push("shannon_entropy", "nat", Kind::Float)
        .push("shannon_length", "x", Kind::Float);
    let parameters = params(
        &[
            ("n_min", n_min.to_string()),
            ("n_max", n_max.to_string()),
            ("lambda", lambda_text(p.lambda())),
        ],
        ctx,
    );
    let mut record = OutputRecord::new("oscillator", parameters, cols.build());
    let f = &ctx.fmt;
    record.rows = rows(degrees, |n| {
        let mut row = vec![int(n)];
        row.extend(f.exact(&ho_standard_deviation(n, &p)));
        row.extend(f.exact(&ExactReal::from_rational(ho_fisher_information(n, &p))));
        row.extend(f.exact(&ho_fisher_length(n, &p)));
        row.extend(f.exact(&ho_onicescu_heller_length(n, &p)));
        for q in 3..=5 {
            row.push(f.real(&ho_renyi_length(n, q, &p, ctx.bits)?));
        }
        let s = ho_shannon(n, &p, &ctx.cfg)?;
        row.push(f.real(&s.entropy));
        row.push(f.real(&s.length));
        Ok(row)
    })?;
    Ok(record)
}

fn lambda_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn asymptotics(ctx: &Context, ns: &[usize], q: f64) -> Result<OutputRecord> {
    if ns.is_empty() {
        return Err(CliError::Usage("--n needs at least one degree".into()));
    }
    for &n in ns {
        ctx.degrees(n, n)?;
    }
    // Validates q before any work is done.
    aptekarev_asymptotic(1, q).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut cols = Columns::default();
    cols.push("n", "1", Kind::Int)
        .push("entropic_moment", "x^(1-q)", Kind::Float)
        .push("entropic_moment_asymptotic", "x^(1-q)", Kind::Float)
        .push("entropic_moment_ratio", "1", Kind::Float)
        .push("z4_scaled", "1", Kind::Float)
        .push("z4_asymptotic", "1", Kind::Float)
        .push("z4_ratio", "1", Kind::Float)
        .push("shannon_length", "x", Kind::Float)
        .push("shannon_length_asymptotic", "x", Kind::Float)
        .push("shannon_length_ratio", "1", Kind::Float);
    let parameters = params(&[("n", list(ns)), ("q", format!("{q}"))], ctx);
    let mut record = OutputRecord::new("asymptotics", parameters, cols.build());
    let f = &ctx.fmt;
    record.rows = ns
        .par_iter()
        .map(|&n| {
            let mp = Mp::new(ctx.bits);
            // Integer orders have exact moments.
            let w = if q.fract() == 0.0 && q >= 1.0 {
                entropic_moment(n, q as u32)?.value.to_float(ctx.bits)
            } else {
                entropic_moment_quadrature(n, &mp.real(q), &ctx.cfg)?.value
            };
            let w_asym = aptekarev_asymptotic(n, q)?;
            let mut row = vec![int(n), f.real(&w), f.f64(w_asym), f.real(&(&w / &mp.real(w_asym)))];
            match azor_z4_asymptotic(n, ctx.bits) {
                Ok(z_asym) => {
                    let z = z4_factorial_normalized(n).to_float(ctx.bits);
                    let ratio = &z / &z_asym;
                    row.extend([f.real(&z), f.real(&z_asym), f.real(&ratio)]);
                }
                Err(Error::Domain(_)) => row.extend([Value::Null, Value::Null, Value::Null]),
                Err(e) => return Err(e.into()),
            }
            let s = shannon_length(n, &ctx.cfg)?.length;
            if n == 0 {
                row.extend([f.real(&s), Value::Null, Value::Null]);
            } else {
                let a = shannon_asymptotic(n);
                let ratio = &s / &mp.real(a);
                row.extend([f.real(&s), f.f64(a), f.real(&ratio)]);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_classes() {
        let precision = CliError::Compute(Error::PrecisionNotMet { estimate: 1.0, tolerance: 0.5 });
        assert_eq!(precision.exit_code(), 2);
        assert_eq!(CliError::Compute(Error::ConvergenceFailure { n: 3 }).exit_code(), 2);
        assert_eq!(CliError::Compute(Error::Domain("q".into())).exit_code(), 1);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3:17").unwrap(), (3, 17));
        assert!(parse_range("3-17").is_err());
        assert!(parse_range("a:1").is_err());
    }

    #[test]
    fn caps() {
        let ctx = Context::new(128, 10, false).unwrap();
        assert!(ctx.degrees(0, N_CAP).is_ok());
        assert!(ctx.degrees(0, N_CAP + 1).is_err());
        assert!(ctx.degrees(3, 2).is_err());
        assert!(ctx.orders(&[2, Q_CAP], 2).is_ok());
        assert!(ctx.orders(&[1], 2).is_err());
        let open = Context::new(128, 10, true).unwrap();
        assert!(open.degrees(0, 1000).is_ok() && open.orders(&[20], 2).is_ok());
        assert!(Context::new(16, 10, false).is_err());
    }
}
