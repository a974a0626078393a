//! Least-squares growth model fitting on exact integer series, in log
//! scale, plus the polynomial bound check. Generic over the float type.

use num_traits::{Float, FromPrimitive};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FitError {
    #[error("series too short: need at least {need} values from the tail start")]
    TooShort { need: usize },
    #[error("series value at n={0} is not positive")]
    NonPositive(usize),
    #[error("tail must start at n >= 2 (log-log models)")]
    TailTooEarly,
    #[error("window out of range")]
    BadWindow,
}

/// Float scalar for the fitting routines.
pub trait Real: Float + FromPrimitive + Serialize + std::fmt::Debug + Send + Sync {}
impl<T: Float + FromPrimitive + Serialize + std::fmt::Debug + Send + Sync> Real for T {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Exponential,
    PolyLog,
    Polynomial,
}

/// A fitted growth model; `parameter` is the exponential rate or the
/// polynomial degree (fixed at 2 for the n^2 log n model), `residual` the
/// sum of squared log-scale errors over the tail.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GrowthModel<F: Real> {
    pub kind: ModelKind,
    pub parameter: F,
    pub coefficient: F,
    pub residual: F,
}

fn least_squares<F: Real>(xs: &[F], ys: &[F]) -> (F, F, F) {
    let n = F::from_usize(xs.len()).unwrap();
    let sx = xs.iter().fold(F::zero(), |a, &b| a + b);
    let sy = ys.iter().fold(F::zero(), |a, &b| a + b);
    let sxy = xs.iter().zip(ys).fold(F::zero(), |a, (&x, &y)| a + x * y);
    let sxx = xs.iter().fold(F::zero(), |a, &b| a + b * b);
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let residual = xs.iter().zip(ys).fold(F::zero(), |acc, (&x, &y)| {
        let e = y - (intercept + slope * x);
        acc + e * e
    });
    (slope, intercept, residual)
}

/// Fits the three growth models to `values[tail_start..]` (`values[n]` is
/// the count at radius n) and ranks them by log-scale residual; ties break
/// in the fixed order exponential, poly-log, polynomial.
pub fn fit_growth<F: Real>(
    values: &[u64],
    tail_start: usize,
) -> Result<Vec<GrowthModel<F>>, FitError> {
    if tail_start < 2 {
        return Err(FitError::TailTooEarly);
    }
    if values.len() < tail_start + 4 {
        return Err(FitError::TooShort {
            need: tail_start + 4,
        });
    }
    let tail: Vec<(usize, u64)> = (tail_start..values.len())
        .map(|n| (n, values[n]))
        .collect();
    if let Some(&(n, _)) = tail.iter().find(|&&(_, v)| v == 0) {
        return Err(FitError::NonPositive(n));
    }
    let ns: Vec<F> = tail
        .iter()
        .map(|&(n, _)| F::from_usize(n).unwrap())
        .collect();
    let logs: Vec<F> = tail
        .iter()
        .map(|&(_, v)| F::from_u64(v).unwrap().ln())
        .collect();

    // exponential: ln g = ln C + r n
    let (rate, intercept, res_exp) = least_squares(&ns, &logs);
    let exponential = GrowthModel {
        kind: ModelKind::Exponential,
        parameter: rate,
        coefficient: intercept.exp(),
        residual: res_exp,
    };

    // polynomial: ln g = ln C + d ln n
    let lns: Vec<F> = ns.iter().map(|&n| n.ln()).collect();
    let (degree, intercept, res_poly) = least_squares(&lns, &logs);
    let polynomial = GrowthModel {
        kind: ModelKind::Polynomial,
        parameter: degree,
        coefficient: intercept.exp(),
        residual: res_poly,
    };

    // n^2 log n with fitted constant: ln C = mean(ln g - ln(n^2 ln n))
    let shape: Vec<F> = ns.iter().map(|&n| (n * n * n.ln()).ln()).collect();
    let diffs: Vec<F> = logs.iter().zip(&shape).map(|(&l, &s)| l - s).collect();
    let ln_c =
        diffs.iter().fold(F::zero(), |a, &b| a + b) / F::from_usize(diffs.len()).unwrap();
    let res_pl = diffs
        .iter()
        .fold(F::zero(), |acc, &d| acc + (d - ln_c) * (d - ln_c));
    let poly_log = GrowthModel {
        kind: ModelKind::PolyLog,
        parameter: F::from_u8(2).unwrap(),
        coefficient: ln_c.exp(),
        residual: res_pl,
    };

    let mut models = vec![exponential, poly_log, polynomial];
    // stable sort keeps the declared order on ties
    models.sort_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap());
    Ok(models)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundCheck<F: Real> {
    /// False exactly when g(n)/n^s increases strictly across the whole
    /// window, the empirical signature of an unbounded ratio.
    pub bounded: bool,
    /// Max of g(n)/n^s over the window: the witness constant C.
    pub constant: F,
    pub exponent: F,
}

/// Checks g(n) <= C n^s over the window `lo..=hi`.
pub fn bound_check<F: Real>(
    values: &[u64],
    exponent: F,
    lo: usize,
    hi: usize,
) -> Result<BoundCheck<F>, FitError> {
    if lo < 1 || hi >= values.len() || lo > hi {
        return Err(FitError::BadWindow);
    }
    let ratios: Vec<F> = (lo..=hi)
        .map(|n| F::from_u64(values[n]).unwrap() / F::from_usize(n).unwrap().powf(exponent))
        .collect();
    let strictly_increasing = ratios.windows(2).all(|w| w[1] > w[0]);
    let constant = ratios
        .iter()
        .fold(F::neg_infinity(), |a, &b| if b > a { b } else { a });
    Ok(BoundCheck {
        bounded: !(strictly_increasing && ratios.len() > 1),
        constant,
        exponent,
    })
}
