//! Floating-point traces, discrete frequencies, residual order measurement,
//! and the comparison figure.
//!
//! The symmetric recurrence at step `h < 2` oscillates at the discrete
//! frequency `omega = (2/h) arcsin(h/2)`; truncating the modified equation
//! after the `h^{2N}` term instead gives `omega_N`, the square root of the
//! truncated series with its sign flipped. The [`FrequencyLadder`] collects
//! these, the traces sample the matching cosines, and the residual
//! functions measure, on a dyadic step grid, the order at which a truncated
//! modified solution fails to satisfy the stencil.
//!
//! Residual amplitudes are evaluated in factored form. Substituting
//! `cos(omega t)` into the two-step stencil leaves the amplitude
//! `h^2 - 4 sin^2(omega h / 2)`, a difference of nearly equal quantities;
//! the product `(h - 2 sin(omega h/2)) (h + 2 sin(omega h/2))` computes the
//! same value with rounding noise near `eps * h^2` instead of `eps`, which
//! keeps sixth-order residuals measurable on the grids used here. The
//! one-step amplitude `exp(S h) - 1 + h` is computed with `exp_m1` for the
//! same reason.

use std::path::Path;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::modified_eq::SchemeKind;
use crate::series::PowerSeries;

/// A labelled sampled curve: `(t, x)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub label: &'static str,
    pub samples: Vec<(f64, f64)>,
}

/// Discrete frequency of the symmetric scheme next to its truncated
/// approximations: `omega_n` keeps the series terms through `h^{2n}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyLadder {
    pub h: f64,
    pub omega_exact: f64,
    pub omega_0: f64,
    pub omega_1: f64,
    pub omega_2: f64,
}

/// Which interpolant frequency a modified trace uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModifiedLevel {
    /// The full discrete frequency `(2/h) arcsin(h/2)`.
    Exact,
    /// Series truncated after `h^0` (the unmodified flow).
    Order0,
    /// Series truncated after `h^2`.
    Order2,
    /// Series truncated after `h^4`.
    Order4,
}

impl ModifiedLevel {
    pub fn label(self) -> &'static str {
        match self {
            ModifiedLevel::Exact => "exact",
            ModifiedLevel::Order0 => "mod0",
            ModifiedLevel::Order2 => "mod2",
            ModifiedLevel::Order4 => "mod4",
        }
    }

    fn omega(self, ladder: &FrequencyLadder) -> f64 {
        match self {
            ModifiedLevel::Exact => ladder.omega_exact,
            ModifiedLevel::Order0 => ladder.omega_0,
            ModifiedLevel::Order2 => ladder.omega_1,
            ModifiedLevel::Order4 => ladder.omega_2,
        }
    }
}

fn check_step(h: f64) -> Result<()> {
    if h.is_finite() && h > 0.0 && h < 2.0 {
        Ok(())
    } else {
        Err(Error::StepSizeOutOfRange(h))
    }
}

/// Truncated discrete frequency: square root of the negated multiplier
/// series kept through `h^{2n}`.
fn omega_truncated(h: f64, n: u32) -> f64 {
    let h2 = h * h;
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 1..=n as u64 + 1 {
        let c = -crate::modified_eq::verlet_closed_coefficient(k)
            .to_f64()
            .expect("small rational fits in f64");
        sum += c * power;
        power *= h2;
    }
    sum.sqrt()
}

/// Builds the frequency ladder at step `h`, defined for `0 < h < 2`.
pub fn frequency_ladder(h: f64) -> Result<FrequencyLadder> {
    check_step(h)?;
    Ok(FrequencyLadder {
        h,
        omega_exact: 2.0 * (h / 2.0).asin() / h,
        omega_0: omega_truncated(h, 0),
        omega_1: omega_truncated(h, 1),
        omega_2: omega_truncated(h, 2),
    })
}

/// Runs the two-step recurrence `x_{j+1} = (2 - h^2) x_j - x_{j-1}` in f64
/// from the given seeds, sampling at `t_j = j h`.
pub fn discrete_trace(h: f64, steps: usize, x0: f64, x1: f64) -> Trace {
    assert!(h.is_finite() && h > 0.0, "positive finite step required");
    let weight = 2.0 - h * h;
    let mut samples = Vec::with_capacity(steps + 2);
    samples.push((0.0, x0));
    samples.push((h, x1));
    for j in 1..=steps {
        let next = weight * samples[j].1 - samples[j - 1].1;
        samples.push(((j as f64 + 1.0) * h, next));
    }
    Trace {
        label: "discrete",
        samples,
    }
}

/// Samples `cos(omega t)` on the given time grid, with `omega` picked from
/// the ladder at step `h`.
pub fn modified_trace(h: f64, level: ModifiedLevel, t_grid: &[f64]) -> Result<Trace> {
    let ladder = frequency_ladder(h)?;
    let omega = level.omega(&ladder);
    let samples = t_grid.iter().map(|&t| (t, (omega * t).cos())).collect();
    Ok(Trace {
        label: level.label(),
        samples,
    })
}

/// Residual amplitude: the stencil applied to the truncated modified
/// solution, maximized over time (the cosine factor peaks at 1). Uses the
/// factored forms described in the module docs. For the symmetric scheme
/// `keep_order` must be even.
pub fn residual_amplitude(kind: SchemeKind, keep_order: usize, h: f64) -> Result<f64> {
    check_step(h)?;
    let multiplier = kind.derive(keep_order)?.into_multiplier();
    let as_f64: PowerSeries<f64> =
        multiplier.map(|c| c.to_f64().expect("derived coefficients fit in f64"));
    let s_h = as_f64.eval(&h);
    match kind {
        SchemeKind::Euler => Ok(((s_h * h).exp_m1() + h).abs()),
        SchemeKind::Verlet => {
            let omega = (-s_h).sqrt();
            let double_sine = 2.0 * (omega * h / 2.0).sin();
            Ok(((h - double_sine) * (h + double_sine)).abs())
        }
    }
}

/// The dyadic grid `2^-3 ..= 2^-8` used by the order measurements.
pub fn standard_residual_grid() -> Vec<f64> {
    (3..=8).map(|e| 2f64.powi(-e)).collect()
}

/// Fits the observed order of the residual: the least-squares slope of
/// `ln(residual)` against `ln(h)`. Requires at least four strictly
/// decreasing positive steps, and reports an error when the smallest
/// residual sits at the evaluation's rounding floor (about
/// `eps * h^2` for the symmetric scheme, `eps * h` for the one-step one),
/// where the fitted slope would be noise.
pub fn residual_order_estimate(kind: SchemeKind, keep_order: usize, h_list: &[f64]) -> Result<f64> {
    if h_list.len() < 4 {
        return Err(Error::BadResidualGrid("need at least four step sizes"));
    }
    if h_list.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
        return Err(Error::BadResidualGrid(
            "step sizes must be positive and finite",
        ));
    }
    if h_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::BadResidualGrid("step sizes must strictly decrease"));
    }
    let amplitudes = h_list
        .iter()
        .map(|&h| residual_amplitude(kind, keep_order, h))
        .collect::<Result<Vec<_>>>()?;
    let h_min = *h_list.last().expect("nonempty by the length check");
    let floor = match kind {
        SchemeKind::Verlet => 100.0 * f64::EPSILON * h_min * h_min,
        SchemeKind::Euler => 100.0 * f64::EPSILON * h_min,
    };
    if *amplitudes.last().expect("same length") <= floor {
        return Err(Error::ResidualBelowNoise { h: h_min });
    }
    let xs: Vec<f64> = h_list.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = amplitudes.iter().map(|a| a.ln()).collect();
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut covar = 0.0;
    let mut var = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        covar += (x - x_mean) * (y - y_mean);
        var += (x - x_mean) * (x - x_mean);
    }
    Ok(covar / var)
}

/// Positional decimal rendering of `x` with `sig` significant digits.
pub fn format_significant(x: f64, sig: usize) -> String {
    assert!(sig >= 1, "at least one digit");
    if x == 0.0 {
        return "0".to_string();
    }
    assert!(x.is_finite(), "finite values only");
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - exponent).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// One output row of the comparison figure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Row {
    pub t: f64,
    /// Exact-frequency interpolant `cos(omega_exact t)`.
    pub exact: f64,
    /// Recurrence value, present on integer times only.
    pub discrete: Option<f64>,
    /// Interpolant truncated after `h^2`.
    pub mod2: f64,
    /// Interpolant truncated after `h^4`.
    pub mod4: f64,
}

/// The comparison figure at `h = 1`: 601 grid rows over `t` in `[0, 12]`
/// (integer times land exactly on the grid) plus the 13 recurrence dots.
/// Seeds are `x_0 = 1` and `x_1 = 1 - h^2/2`, which equals
/// `cos(omega_exact h)` exactly, so the dots sample the exact-frequency
/// interpolant to rounding error.
pub fn figure1_rows() -> Vec<Figure1Row> {
    let h = 1.0;
    let ladder = frequency_ladder(h).expect("h = 1 is inside (0, 2)");
    let dots = discrete_trace(h, 11, 1.0, 1.0 - h * h / 2.0);
    let mut rows = Vec::with_capacity(601);
    for i in 0..=600usize {
        let t = 12.0 * i as f64 / 600.0;
        let discrete = if i % 50 == 0 {
            Some(dots.samples[i / 50].1)
        } else {
            None
        };
        rows.push(Figure1Row {
            t,
            exact: (ladder.omega_exact * t).cos(),
            discrete,
            mod2: (ladder.omega_1 * t).cos(),
            mod4: (ladder.omega_2 * t).cos(),
        });
    }
    rows
}

/// The figure as CSV: header `t,exact,discrete,mod2,mod4`, 15 significant
/// digits, empty discrete cells off the integer times.
pub fn figure1_csv() -> String {
    let mut out = String::from("t,exact,discrete,mod2,mod4\n");
    for row in figure1_rows() {
        let discrete = row
            .discrete
            .map_or(String::new(), |x| format_significant(x, 15));
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_significant(row.t, 15),
            format_significant(row.exact, 15),
            discrete,
            format_significant(row.mod2, 15),
            format_significant(row.mod4, 15),
        ));
    }
    out
}

pub fn write_figure1_csv(path: &Path) -> Result<()> {
    std::fs::write(path, figure1_csv())?;
    Ok(())
}

/// The figure as a self-contained SVG: three interpolant curves and the
/// recurrence dots.
pub fn figure1_svg() -> String {
    let rows = figure1_rows();
    let x_px = |t: f64| 50.0 + t / 12.0 * 740.0;
    let y_px = |v: f64| 200.0 - v * 163.0;
    let polyline = |pick: &dyn Fn(&Figure1Row) -> f64, style: &str| {
        let mut points = String::new();
        for row in &rows {
            points.push_str(&format!("{:.2},{:.2} ", x_px(row.t), y_px(pick(row))));
        }
        format!(
            "<polyline fill=\"none\" {style} points=\"{}\"/>\n",
            points.trim_end()
        )
    };
    let mut out = String::new();
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 820 420\">\n");
    out.push_str("<rect width=\"820\" height=\"420\" fill=\"white\"/>\n");
    out.push_str("<line x1=\"50\" y1=\"200\" x2=\"790\" y2=\"200\" stroke=\"#999\"/>\n");
    out.push_str("<line x1=\"50\" y1=\"20\" x2=\"50\" y2=\"380\" stroke=\"#999\"/>\n");
    for t in 0..=12 {
        let x = x_px(t as f64);
        out.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"197\" x2=\"{x:.2}\" y2=\"203\" stroke=\"#999\"/>\n"
        ));
        out.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"218\" font-size=\"11\" text-anchor=\"middle\" fill=\"#555\">{t}</text>\n"
        ));
    }
    out.push_str(&polyline(
        &|r| r.exact,
        "stroke=\"#222\" stroke-dasharray=\"6 3\"",
    ));
    out.push_str(&polyline(&|r| r.mod2, "stroke=\"#d62728\""));
    out.push_str(&polyline(&|r| r.mod4, "stroke=\"#1f77b4\""));
    for row in &rows {
        if let Some(x) = row.discrete {
            out.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#222\"/>\n",
                x_px(row.t),
                y_px(x)
            ));
        }
    }
    out.push_str("<text x=\"560\" y=\"40\" font-size=\"12\" fill=\"#222\">dashed: exact-frequency interpolant</text>\n");
    out.push_str("<text x=\"560\" y=\"56\" font-size=\"12\" fill=\"#d62728\">solid red: order-2 interpolant</text>\n");
    out.push_str("<text x=\"560\" y=\"72\" font-size=\"12\" fill=\"#1f77b4\">solid blue: order-4 interpolant</text>\n");
    out.push_str(
        "<text x=\"560\" y=\"88\" font-size=\"12\" fill=\"#222\">dots: recurrence values</text>\n",
    );
    out.push_str("</svg>\n");
    out
}

pub fn write_figure1_svg(path: &Path) -> Result<()> {
    std::fs::write(path, figure1_svg())?;
    Ok(())
}
