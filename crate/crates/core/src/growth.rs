//! Growth classes of dimension sequences `d |-> dim M_{C_d}`.

use std::fmt;

use crate::comod::stream::floor_log;
use crate::error::{Error, Result};

/// Shortest sequence accepted by [`classify`] and [`equal_growth`].
pub const MIN_LEN: usize = 6;

/// Least coefficient of determination accepted for an exponential fit.
pub const MIN_R2: f64 = 0.98;

/// Relative spread of trailing ratios accepted as equal growth.
pub const RATIO_TOLERANCE: f64 = 0.10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthClass {
    Polynomial(u32),
    Logarithmic,
    Exponential(u32),
    Inconclusive,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::Polynomial(m) => write!(f, "polynomial({m})"),
            GrowthClass::Logarithmic => f.write_str("logarithmic"),
            GrowthClass::Exponential(e) => write!(f, "exponential({e})"),
            GrowthClass::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

/// Least-squares line `ln(dim) ~ slope * x^e + c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fit {
    pub exponent: u32,
    pub slope: f64,
    pub r2: f64,
    /// Fitted against `r` at the samples `d = p^r`.
    pub p_power_sampling: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub class: GrowthClass,
    /// First and last `d` of the analysed trailing window.
    pub window: (u32, u32),
    /// Finite-difference table over the window, starting with the values.
    pub differences: Vec<Vec<i64>>,
    pub fit: Option<Fit>,
}

fn differences(values: &[i64]) -> Vec<Vec<i64>> {
    let mut table = vec![values.to_vec()];
    while table.last().unwrap().len() > 1 {
        let prev = table.last().unwrap();
        table.push(prev.windows(2).map(|w| w[1] - w[0]).collect());
    }
    table
}

/// Increments equal to one positive constant exactly at `d = p^r`.
fn logarithmic(seq: &[u64], start: u32, p: u32) -> bool {
    let mut step = None;
    let mut jumps = 0;
    for (i, w) in seq.windows(2).enumerate() {
        let d = start + i as u32 + 1;
        let inc = w[1] as i64 - w[0] as i64;
        let at_power = d >= 1 && p.pow(floor_log(p, d)) == d;
        if at_power {
            if inc <= 0 || step.is_some_and(|s| s != inc) {
                return false;
            }
            step = Some(inc);
            jumps += 1;
        } else if inc != 0 {
            return false;
        }
    }
    jumps >= 2
}

fn polynomial(table: &[Vec<i64>]) -> Option<u32> {
    // m-th row constant and nonzero, (m+1)-st zero, with at least two
    // entries in the m-th row.
    (0..table.len().saturating_sub(1)).find_map(|m| {
        let row = &table[m];
        let next = &table[m + 1];
        (row.len() >= 2 && row[0] != 0 && next.iter().all(|&x| x == 0)).then_some(m as u32)
    })
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 || syy == 0.0 {
        return (0.0, 0.0);
    }
    let slope = sxy / sxx;
    (slope, sxy * sxy / (sxx * syy))
}

fn exponential(seq: &[u64], start: u32, p: Option<u32>, window: usize) -> Option<Fit> {
    let n = seq.len();
    let powers: Vec<(u32, f64)> = match p {
        Some(p) => (0..)
            .map(|r| (r, p.checked_pow(r)))
            .take_while(|(_, q)| q.is_some_and(|q| (q as usize) < n + start as usize))
            .filter_map(|(r, q)| {
                let q = q.unwrap();
                let v = *seq.get(q.checked_sub(start)? as usize)?;
                (v > 0).then(|| (r, (v as f64).ln()))
            })
            .collect(),
        None => Vec::new(),
    };
    let samples: Vec<(f64, f64, bool)> = if powers.len() >= 4 {
        powers.iter().map(|&(r, y)| (r as f64, y, true)).collect()
    } else {
        seq[n - window..]
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(i, &v)| ((start as usize + n - window + i) as f64, (v as f64).ln(), false))
            .collect()
    };
    if samples.len() < 4 {
        return None;
    }
    let by_powers = samples[0].2;
    (1..=3u32)
        .map(|e| {
            let xs: Vec<f64> = samples.iter().map(|s| s.0.powi(e as i32)).collect();
            let ys: Vec<f64> = samples.iter().map(|s| s.1).collect();
            let (slope, r2) = linear_fit(&xs, &ys);
            Fit {
                exponent: e,
                slope,
                r2,
                p_power_sampling: by_powers,
            }
        })
        .filter(|f| f.slope > 0.0 && f.r2 >= MIN_R2)
        .max_by(|a, b| a.r2.total_cmp(&b.r2))
}

/// Classifies `seq`, whose entry `i` is the value at `d = start + i`.
///
/// Checked in order: the logarithmic pattern (needs `p`), exact polynomial
/// growth on the trailing window, an exponential fit, else inconclusive.
/// `window` defaults to all but the first `ceil(len/3)` entries.
pub fn classify(seq: &[u64], start: u32, p: Option<u32>, window: Option<usize>) -> Result<GrowthReport> {
    let n = seq.len();
    if n < MIN_LEN {
        return Err(Error::Growth(format!(
            "sequence of length {n} is shorter than {MIN_LEN}"
        )));
    }
    if seq.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Growth("sequence is not non-decreasing".into()));
    }
    let window = window.unwrap_or(n - n.div_ceil(3)).clamp(2, n);
    let tail: Vec<i64> = seq[n - window..].iter().map(|&v| v as i64).collect();
    let table = differences(&tail);
    let bounds = (start + (n - window) as u32, start + n as u32 - 1);
    let report = |class, fit| GrowthReport {
        class,
        window: bounds,
        differences: table.clone(),
        fit,
    };
    if p.is_some_and(|p| logarithmic(seq, start, p)) {
        return Ok(report(GrowthClass::Logarithmic, None));
    }
    if let Some(m) = polynomial(&table) {
        return Ok(report(GrowthClass::Polynomial(m), None));
    }
    if let Some(fit) = exponential(seq, start, p, window) {
        return Ok(report(GrowthClass::Exponential(fit.exponent), Some(fit)));
    }
    Ok(report(GrowthClass::Inconclusive, None))
}

/// Window-based verdict on `a ~ b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EqualGrowth {
    pub equal: bool,
    /// Last ratio `a_d / b_d`.
    pub ratio: f64,
    /// `(max - min) / ratio` over the trailing third.
    pub spread: f64,
}

pub fn equal_growth(a: &[u64], b: &[u64]) -> Result<EqualGrowth> {
    if a.len() != b.len() {
        return Err(Error::Growth(format!("lengths differ: {} and {}", a.len(), b.len())));
    }
    if a.len() < MIN_LEN {
        return Err(Error::Growth(format!(
            "sequences of length {} are shorter than {MIN_LEN}",
            a.len()
        )));
    }
    let n = a.len();
    let from = n - n.div_ceil(3).max(2);
    if let Some(i) = (from..n).find(|&i| b[i] == 0) {
        return Err(Error::Growth(format!("b vanishes at index {i}")));
    }
    let ratios: Vec<f64> = (from..n).map(|i| a[i] as f64 / b[i] as f64).collect();
    let ratio = *ratios.last().unwrap();
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| {
        (lo.min(r), hi.max(r))
    });
    let spread = if ratio > 0.0 { (hi - lo) / ratio } else { f64::INFINITY };
    Ok(EqualGrowth {
        equal: ratio > 0.0 && spread <= RATIO_TOLERANCE,
        ratio,
        spread,
    })
}
