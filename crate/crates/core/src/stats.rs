//! Outlier-trimmed score statistics, the tuner's fitness, histograms and
//! skewness.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Corrected mean reported when trimming discards every sample. Callers must
/// read it as "unusable parameter set", not as a real mean.
pub const SENTINEL_MEAN: f64 = -10000.0;

/// Divisor of the sum of squared deviations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StddevDivisor {
    /// `N + 1`, as in the original tuner.
    #[default]
    NPlusOne,
    /// The usual sample divisor `N - 1` (`N` for a single sample).
    NMinusOne,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrimmedStats<T> {
    pub raw_mean: T,
    pub stddev: T,
    /// Mean of the samples within `raw_mean ± stddev`, or
    /// [`SENTINEL_MEAN`] when none are.
    pub corrected_mean: T,
    pub kept: usize,
    pub discarded: usize,
}

impl<T: Scalar> TrimmedStats<T> {
    pub fn is_sentinel(&self) -> bool {
        self.kept == 0
    }
}

/// Trims samples outside one standard deviation of the mean (bounds
/// inclusive) and averages the rest, using the `N + 1` divisor.
pub fn corrected_mean<T: Scalar>(samples: &[T]) -> Result<TrimmedStats<T>> {
    corrected_mean_with(samples, StddevDivisor::NPlusOne)
}

pub fn corrected_mean_with<T: Scalar>(
    samples: &[T],
    divisor: StddevDivisor,
) -> Result<TrimmedStats<T>> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let n = samples.len();
    let count = T::from_usize(n).expect("sample size fits");
    let raw_mean = samples.iter().fold(T::zero(), |a, &b| a + b) / count;
    let squares = samples
        .iter()
        .fold(T::zero(), |acc, &s| acc + (raw_mean - s) * (raw_mean - s));
    let denom = match divisor {
        StddevDivisor::NPlusOne => n + 1,
        StddevDivisor::NMinusOne => n.saturating_sub(1).max(1),
    };
    let stddev = (squares / T::from_usize(denom).expect("fits")).sqrt();
    let (lo, hi) = (raw_mean - stddev, raw_mean + stddev);
    let (sum, kept) = samples
        .iter()
        .filter(|&&s| s >= lo && s <= hi)
        .fold((T::zero(), 0usize), |(sum, k), &s| (sum + s, k + 1));
    let corrected_mean = if kept == 0 {
        T::lit(SENTINEL_MEAN)
    } else {
        sum / T::from_usize(kept).expect("fits")
    };
    Ok(TrimmedStats {
        raw_mean,
        stddev,
        corrected_mean,
        kept,
        discarded: n - kept,
    })
}

/// Fitness of one parameter set over a batch of trials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitnessScore<T> {
    pub value: T,
    /// Seconds spent in all trials of the batch.
    pub total_time: f64,
}

/// `corrected_mean^3 / total_time`. The odd power keeps the sign of the mean.
pub fn ga_score<T: Scalar>(stats: &TrimmedStats<T>, total_time: f64) -> Result<FitnessScore<T>> {
    if !(total_time > 0.0) {
        return Err(Error::NonPositiveTime(total_time));
    }
    let m = stats.corrected_mean;
    Ok(FitnessScore {
        value: m * m * m / T::lit(total_time),
        total_time,
    })
}

/// One histogram bin: `[low, high)`, the last bin closed on the right.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bin<T> {
    pub low: T,
    pub high: T,
    pub count: usize,
}

/// Equal-width bins over `[min, max]` of the samples. When every sample is
/// equal, all samples land in the first bin.
pub fn histogram<T: Scalar>(samples: &[T], bins: usize) -> Result<Vec<Bin<T>>> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    if bins == 0 {
        return Err(Error::InvalidConfig(
            "histogram needs at least one bin".into(),
        ));
    }
    let min = samples.iter().copied().fold(T::infinity(), T::min);
    let max = samples.iter().copied().fold(T::neg_infinity(), T::max);
    let nb = T::from_usize(bins).expect("fits");
    let width = (max - min) / nb;
    let mut out: Vec<Bin<T>> = (0..bins)
        .map(|i| {
            let i = T::from_usize(i).expect("fits");
            Bin {
                low: min + width * i,
                high: min + width * (i + T::one()),
                count: 0,
            }
        })
        .collect();
    if let Some(last) = out.last_mut() {
        last.high = max;
    }
    for &s in samples {
        let idx = if width > T::zero() {
            ((s - min) / width)
                .floor()
                .to_usize()
                .unwrap_or(0)
                .min(bins - 1)
        } else {
            0
        };
        out[idx].count += 1;
    }
    Ok(out)
}

/// `bin_low,bin_high,count` lines with a header.
pub fn histogram_csv<T: Scalar>(bins: &[Bin<T>]) -> String {
    let mut out = String::from("bin_low,bin_high,count\n");
    for b in bins {
        out.push_str(&format!("{},{},{}\n", b.low, b.high, b.count));
    }
    out
}

/// Standardised third central moment `m3 / m2^(3/2)` (population moments).
pub fn skewness<T: Scalar>(samples: &[T]) -> Result<T> {
    if samples.len() < 3 {
        return Err(Error::UndefinedStatistic(
            "skewness needs at least three samples",
        ));
    }
    let n = T::from_usize(samples.len()).expect("fits");
    let mean = samples.iter().fold(T::zero(), |a, &b| a + b) / n;
    let (m2, m3) = samples.iter().fold((T::zero(), T::zero()), |(m2, m3), &s| {
        let d = s - mean;
        (m2 + d * d, m3 + d * d * d)
    });
    let (m2, m3) = (m2 / n, m3 / n);
    if !(m2 > T::zero()) {
        return Err(Error::UndefinedStatistic(
            "skewness of a zero-variance sample",
        ));
    }
    Ok(m3 / m2.powf(T::lit(1.5)))
}
