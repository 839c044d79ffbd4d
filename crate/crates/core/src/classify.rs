//! Helix classification: estimate the best frame-constant field coefficients
//! for a curve and name the most specific family it belongs to.

use serde::Serialize;

use crate::config::NumericConfig;
use crate::curve::Vec3;
use crate::error::{Error, Result};
use crate::frenet::FrenetSample;
use crate::hypothesis::{HelixHypothesis, HypothesisKind};
use crate::laws::{
    general_residual, lancret_series, normal_residual, osculating_residual, LancretSeries,
};
use crate::numeric;

/// Result of the inverse problem: the unit triple minimizing the general-law
/// residual, with a scale-free score.
#[derive(Debug, Clone)]
pub struct HypothesisFit {
    pub hypothesis: HelixHypothesis,
    /// RMS of the general residual normalized by the curve's curvature scale.
    pub score: f64,
    /// True when the score is below the configured fit threshold.
    pub well_fit: bool,
    /// True when the minimizer is not isolated (cylindrical input, where a
    /// one-parameter family of triples fits); the reported hypothesis is the
    /// canonical rectifying representative.
    pub ambiguous: bool,
}

/// Curve classes ordered from most to least specific.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HelixClass {
    Plane,
    Cylindrical,
    Normal,
    Osculating,
    General,
    None,
}

/// Scores of each classification stage (max residual magnitude, or the fit
/// score for the general stage). NaN-free: stages skipped by an earlier
/// match are None.
#[derive(Debug, Clone, Serialize)]
pub struct StageScores {
    pub planarity: f64,
    pub cylindrical: Option<f64>,
    pub normal: Option<f64>,
    pub osculating: Option<f64>,
    pub general: Option<f64>,
}

/// Classification outcome.
#[derive(Debug, Clone)]
pub struct ClassReport {
    pub class: HelixClass,
    pub theta: Option<f64>,
    pub abc: Option<[f64; 3]>,
    /// RMS of the winning law's residual series (planarity: rms of tau).
    pub residual_rms: f64,
    pub axis: Option<Vec3>,
    pub axis_drift: Option<f64>,
    pub stage_scores: StageScores,
    /// Residual series of the winning law on the sample grid.
    pub residuals: Vec<f64>,
}

fn curvature_scale(samples: &[FrenetSample]) -> f64 {
    let cubes: Vec<f64> =
        samples.iter().map(|x| (x.kappa * x.kappa + x.tau * x.tau).powf(1.5)).collect();
    numeric::rms(&cubes).max(1e-300)
}

fn normalized_general_score(
    series: &LancretSeries,
    samples: &[FrenetSample],
    hyp: &HelixHypothesis,
    scale: f64,
) -> f64 {
    numeric::rms(&general_residual(series, samples, hyp)) / scale
}

/// Estimates the unit coefficient triple whose general law best fits the
/// samples: coarse spherical grid on the b >= 0 hemisphere followed by
/// shrinking local refinement. Cylindrical inputs are detected first and
/// reported as the (ambiguous) canonical rectifying fit.
pub fn estimate_hypothesis(
    samples: &[FrenetSample],
    cfg: &NumericConfig,
) -> Result<HypothesisFit> {
    if samples.len() < 32 {
        return Err(Error::InvalidInput(format!(
            "need at least 32 samples, got {}",
            samples.len()
        )));
    }
    let series = lancret_series(samples, cfg)?;
    let scale = curvature_scale(samples);

    // Degenerate directions first: on a cylindrical helix every triple on a
    // one-parameter subfamily fits, so the minimizer is not informative.
    let max_rho_prime = numeric::max_abs(&series.rho_prime);
    if max_rho_prime <= cfg.law_tol {
        let rho = numeric::median(&series.rho);
        // the rectifying member detected by the axis relation rho = -c/a
        let norm = (1.0 + rho * rho).sqrt();
        let hyp = HelixHypothesis::new(-1.0 / norm, 0.0, rho / norm, cfg.hypothesis_zero_tol)?
            .canonical(cfg.hypothesis_zero_tol);
        let score = normalized_general_score(&series, samples, &hyp, scale);
        return Ok(HypothesisFit {
            hypothesis: hyp,
            score,
            well_fit: score <= cfg.fit_threshold,
            ambiguous: true,
        });
    }

    // coarse grid over the hemisphere b >= 0: b = cos(p), (a, c) from the
    // azimuth; antipodal pairs are identified by construction
    let (np, nl) = cfg.hypothesis_grid;
    let mut best = (f64::INFINITY, 0.0_f64, 0.0_f64); // (score, polar, azimuth)
    let eval = |polar: f64, azimuth: f64| -> f64 {
        let (sp, cp) = polar.sin_cos();
        let hyp = HelixHypothesis {
            a: sp * azimuth.cos(),
            b: cp,
            c: sp * azimuth.sin(),
            kind: HypothesisKind::General,
        };
        normalized_general_score(&series, samples, &hyp, scale)
    };
    for i in 0..=np {
        let polar = std::f64::consts::FRAC_PI_2 * i as f64 / np as f64;
        for j in 0..nl {
            let azimuth = std::f64::consts::TAU * j as f64 / nl as f64;
            let score = eval(polar, azimuth);
            if score < best.0 {
                best = (score, polar, azimuth);
            }
        }
    }
    // compass-search refinement: walk improving steps, halve the step only
    // when no neighbor improves; robust in the narrow residual valleys
    let mut dp = std::f64::consts::FRAC_PI_2 / np as f64;
    let mut dl = std::f64::consts::TAU / nl as f64;
    let mut evals = 0usize;
    while (dp > 1e-10 || dl > 1e-10) && evals < 50_000 {
        let mut improved = false;
        for (ddp, ddl) in [
            (dp, 0.0),
            (-dp, 0.0),
            (0.0, dl),
            (0.0, -dl),
            (dp, dl),
            (dp, -dl),
            (-dp, dl),
            (-dp, -dl),
        ] {
            let score = eval(best.1 + ddp, best.2 + ddl);
            evals += 1;
            if score < best.0 {
                best = (score, best.1 + ddp, best.2 + ddl);
                improved = true;
                break;
            }
        }
        if !improved {
            dp *= 0.5;
            dl *= 0.5;
        }
    }
    let (sp, cp) = best.1.sin_cos();
    let hyp = HelixHypothesis::new(
        sp * best.2.cos(),
        cp,
        sp * best.2.sin(),
        cfg.hypothesis_zero_tol,
    )?
    .canonical(cfg.hypothesis_zero_tol);
    Ok(HypothesisFit {
        hypothesis: hyp,
        score: best.0,
        well_fit: best.0 <= cfg.fit_threshold,
        ambiguous: false,
    })
}

/// Pointwise solve of the normal law for tan(theta), iterated to a fixed
/// point and aggregated by the median.
fn estimate_normal_theta(series: &LancretSeries, samples: &[FrenetSample]) -> f64 {
    let mut solutions = Vec::with_capacity(samples.len());
    for (x, rp) in samples.iter().zip(&series.rho_prime) {
        let (k, t) = (x.kappa, x.tau);
        let mut tan = 0.0_f64;
        for _ in 0..24 {
            tan = -k * rp * (1.0 + tan * tan) / (k * k + (1.0 + tan * tan) * t * t);
        }
        if tan.is_finite() {
            solutions.push(tan);
        }
    }
    numeric::median(&solutions).atan()
}

/// Global 1-D search for the osculating angle: scan the RMS of the
/// osculating residual over theta, then refine by golden-section.
fn estimate_osculating_theta(
    series: &LancretSeries,
    samples: &[FrenetSample],
    cfg: &NumericConfig,
) -> Option<f64> {
    let score = |theta: f64| -> f64 {
        match osculating_residual(series, samples, theta, cfg) {
            Ok(r) => numeric::rms(&r),
            Err(_) => f64::INFINITY,
        }
    };
    let n = 512;
    let mut best = (f64::INFINITY, 0.0_f64);
    for i in 0..n {
        // open scan of (-pi/2, pi/2], skipping the 0 pole of cot
        let theta = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (i as f64 + 0.5) / n as f64;
        if theta.abs() < 1e-6 {
            continue;
        }
        let s = score(theta);
        if s < best.0 {
            best = (s, theta);
        }
    }
    if !best.0.is_finite() {
        return None;
    }
    let golden = 0.5 * (3.0 - 5.0_f64.sqrt());
    let step = std::f64::consts::PI / n as f64;
    let (mut lo, mut hi) = (best.1 - step, best.1 + step);
    for _ in 0..60 {
        let a = lo + golden * (hi - lo);
        let b = hi - golden * (hi - lo);
        if score(a) < score(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Ordered classification: plane, cylindrical, normal, osculating, general,
/// none. Returns the most specific class whose law holds within `law_tol`
/// (`planar_tol` for planarity), with the winning parameters, residuals and
/// reconstructed axis.
pub fn classify(samples: &[FrenetSample], cfg: &NumericConfig) -> Result<ClassReport> {
    if samples.len() < 32 {
        return Err(Error::InvalidInput(format!(
            "need at least 32 samples, got {}",
            samples.len()
        )));
    }
    let taus: Vec<f64> = samples.iter().map(|x| x.tau).collect();
    let planarity = numeric::max_abs(&taus);
    let mut scores = StageScores {
        planarity,
        cylindrical: None,
        normal: None,
        osculating: None,
        general: None,
    };
    if planarity <= cfg.planar_tol {
        // the binormal is the fixed direction of a plane curve
        let axis: Vec3 = samples.iter().map(|x| x.binormal).sum::<Vec3>().normalize();
        return Ok(ClassReport {
            class: HelixClass::Plane,
            theta: None,
            abc: None,
            residual_rms: numeric::rms(&taus),
            axis: Some(axis),
            axis_drift: None,
            stage_scores: scores,
            residuals: taus,
        });
    }

    let series = lancret_series(samples, cfg)?;
    let cylindrical = numeric::max_abs(&series.rho_prime);
    scores.cylindrical = Some(cylindrical);
    if cylindrical <= cfg.law_tol {
        // axis through the theta = 0 normal branch: V = -rho T - B
        let rec = crate::axis::reconstruct_axis(samples, &HelixHypothesis::normal(0.0), cfg)?;
        return Ok(ClassReport {
            class: HelixClass::Cylindrical,
            theta: None,
            abc: None,
            residual_rms: numeric::rms(&series.rho_prime),
            axis: Some(rec.direction()),
            axis_drift: Some(rec.drift),
            stage_scores: scores,
            residuals: series.rho_prime.clone(),
        });
    }

    // normal family
    let theta_n = estimate_normal_theta(&series, samples);
    let residual_n = normal_residual(&series, samples, theta_n)?;
    let score_n = numeric::rms(&residual_n);
    scores.normal = Some(score_n);
    if score_n <= cfg.law_tol {
        let hyp = HelixHypothesis::normal(theta_n);
        let rec = crate::axis::reconstruct_axis(samples, &hyp, cfg)?;
        return Ok(ClassReport {
            class: HelixClass::Normal,
            theta: Some(theta_n),
            abc: Some(hyp.components()),
            residual_rms: numeric::rms(&residual_n),
            axis: Some(rec.direction()),
            axis_drift: Some(rec.drift),
            stage_scores: scores,
            residuals: residual_n,
        });
    }

    // osculating family (needs nonvanishing torsion)
    if taus.iter().all(|t| t.abs() > cfg.tau_min) {
        if let Some(theta_o) = estimate_osculating_theta(&series, samples, cfg) {
            let residual_o = osculating_residual(&series, samples, theta_o, cfg)?;
            let score_o = numeric::rms(&residual_o);
            scores.osculating = Some(score_o);
            if score_o <= cfg.law_tol {
                let hyp = HelixHypothesis::osculating(theta_o);
                let rec = crate::axis::reconstruct_axis(samples, &hyp, cfg)?;
                return Ok(ClassReport {
                    class: HelixClass::Osculating,
                    theta: Some(theta_o),
                    abc: Some(hyp.components()),
                    residual_rms: numeric::rms(&residual_o),
                    axis: Some(rec.direction()),
                    axis_drift: Some(rec.drift),
                    stage_scores: scores,
                    residuals: residual_o,
                });
            }
        }
    }

    // general family
    let fit = estimate_hypothesis(samples, cfg)?;
    scores.general = Some(fit.score);
    if fit.well_fit && fit.hypothesis.kind == HypothesisKind::General {
        let rec = crate::axis::reconstruct_axis(samples, &fit.hypothesis, cfg)?;
        let residuals = general_residual(&series, samples, &fit.hypothesis);
        return Ok(ClassReport {
            class: HelixClass::General,
            theta: None,
            abc: Some(fit.hypothesis.components()),
            residual_rms: numeric::rms(&residuals),
            axis: Some(rec.direction()),
            axis_drift: Some(rec.drift),
            stage_scores: scores,
            residuals,
        });
    }

    let residuals = general_residual(&series, samples, &fit.hypothesis);
    Ok(ClassReport {
        class: HelixClass::None,
        theta: None,
        abc: Some(fit.hypothesis.components()),
        residual_rms: numeric::rms(&residuals),
        axis: None,
        axis_drift: None,
        stage_scores: scores,
        residuals,
    })
}
