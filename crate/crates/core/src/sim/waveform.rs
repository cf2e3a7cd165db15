//! First-principles ranging information from a sampled waveform.
//!
//! The received mean signal is `mu_k(d) = A(d) s_k(d)`, where `A` is the
//! path-loss amplitude and `s` the unit-energy pulse delayed by the
//! distance (one metre of distance shifts the pulse by one unit of the
//! sample time axis). The information is assembled from central finite
//! differences of the mean signal, `J = sum_k (d mu_k / d d)^2 / sigma^2`,
//! with the delay and amplitude sensitivities computed at their own step
//! scales and Richardson-checked. The two contributions are additive: the
//! pulse energy is shift-invariant, so the cross term vanishes identically.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::NetworkModel;

/// A uniformly sampled real transmit pulse and its discrete spectrum.
#[derive(Debug, Clone)]
pub struct SampledWaveform {
    /// (time [s], amplitude) pairs on a uniform grid.
    samples: Vec<(f64, f64)>,
    /// Per-sample noise standard deviation.
    noise_std: f64,
    /// Complex DFT bins (re, im), natural bin order.
    dft: Vec<(f64, f64)>,
    /// Signed bin frequencies [Hz].
    freqs: Vec<f64>,
    /// Discrete energy of the samples.
    energy: f64,
}

impl SampledWaveform {
    /// Wrap raw samples; requires a uniform time grid and at least 64
    /// points. The spectrum is derived immediately.
    pub fn new(samples: Vec<(f64, f64)>, noise_std: f64) -> Result<Self> {
        if samples.len() < 64 {
            return Err(Error::UnitOutOfRange {
                field: "samples",
                value: samples.len() as f64,
                constraint: ">= 64 points",
            });
        }
        if !(noise_std > 0.0 && noise_std.is_finite()) {
            return Err(Error::UnitOutOfRange {
                field: "noise_std",
                value: noise_std,
                constraint: "> 0",
            });
        }
        let dt = samples[1].0 - samples[0].0;
        if !(dt > 0.0) {
            return Err(Error::UnitOutOfRange {
                field: "sample spacing",
                value: dt,
                constraint: "> 0",
            });
        }
        for w in samples.windows(2) {
            let step = w[1].0 - w[0].0;
            if ((step - dt) / dt).abs() > 1e-9 {
                return Err(Error::UnitOutOfRange {
                    field: "sample grid",
                    value: step,
                    constraint: "uniform spacing",
                });
            }
        }
        let n = samples.len();
        let mut dft = Vec::with_capacity(n);
        for m in 0..n {
            let mut re = 0.0;
            let mut im = 0.0;
            for (k, &(_, x)) in samples.iter().enumerate() {
                let phase = -2.0 * PI * (m * k % n) as f64 / n as f64;
                re += x * phase.cos();
                im += x * phase.sin();
            }
            dft.push((re, im));
        }
        let freqs = (0..n)
            .map(|m| {
                let m_signed = if m <= n / 2 { m as i64 } else { m as i64 - n as i64 };
                m_signed as f64 / (n as f64 * dt)
            })
            .collect();
        let energy = samples.iter().map(|&(_, x)| x * x).sum::<f64>();
        if energy == 0.0 {
            return Err(Error::EmptySpectrum);
        }
        Ok(Self {
            samples,
            noise_std,
            dft,
            freqs,
            energy,
        })
    }

    /// Flat-spectrum pulse occupying [-bandwidth/2, bandwidth/2], sampled
    /// at `oversample` times the occupied band, normalized to unit energy.
    pub fn flat_spectrum(
        bandwidth: f64,
        n_samples: usize,
        oversample: usize,
        noise_std: f64,
    ) -> Result<Self> {
        if !(bandwidth > 0.0 && bandwidth.is_finite()) {
            return Err(Error::UnitOutOfRange {
                field: "bandwidth",
                value: bandwidth,
                constraint: "> 0",
            });
        }
        if oversample < 2 {
            return Err(Error::UnitOutOfRange {
                field: "oversample",
                value: oversample as f64,
                constraint: ">= 2",
            });
        }
        let n = n_samples;
        let dt = 1.0 / (oversample as f64 * bandwidth);
        // Dirichlet kernel: equal-weight cosine sum over the occupied bins,
        // centred mid-record so the pulse peak sits away from the edges.
        let m_max = ((bandwidth / 2.0) * n as f64 * dt).floor() as usize;
        let center = n as f64 / 2.0;
        let mut samples: Vec<(f64, f64)> = (0..n)
            .map(|k| {
                let t = (k as f64 - center) / n as f64;
                let mut x = 1.0;
                for m in 1..=m_max {
                    x += 2.0 * (2.0 * PI * m as f64 * t).cos();
                }
                (k as f64 * dt, x)
            })
            .collect();
        let energy: f64 = samples.iter().map(|&(_, x)| x * x).sum();
        let scale = 1.0 / energy.sqrt();
        for s in &mut samples {
            s.1 *= scale;
        }
        Self::new(samples, noise_std)
    }

    /// Derived (frequency [Hz], magnitude) pairs.
    pub fn spectrum(&self) -> Vec<(f64, f64)> {
        self.freqs
            .iter()
            .zip(&self.dft)
            .map(|(&f, &(re, im))| (f, (re * re + im * im).sqrt()))
            .collect()
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn noise_std(&self) -> f64 {
        self.noise_std
    }

    /// Unit-energy pulse delayed by `shift` seconds, via the phase-ramped
    /// inverse DFT (the derivative of the trigonometric interpolant, so the
    /// discrete energy is exactly shift-invariant).
    fn delayed_unit_pulse(&self, shift: f64) -> Vec<f64> {
        let n = self.samples.len();
        let norm = 1.0 / self.energy.sqrt();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = 0.0;
            for (m, &(re, im)) in self.dft.iter().enumerate() {
                let w = 2.0 * PI * self.freqs[m];
                let phase = 2.0 * PI * (m * k % n) as f64 / n as f64 - w * shift;
                acc += re * phase.cos() - im * phase.sin();
            }
            out.push(acc / n as f64 * norm);
        }
        out
    }

    /// Characteristic time scale of the pulse: inverse RMS angular
    /// bandwidth.
    fn pulse_scale(&self) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for (m, &(re, im)) in self.dft.iter().enumerate() {
            let w = 2.0 * PI * self.freqs[m];
            let p = re * re + im * im;
            num += w * w * p;
            den += p;
        }
        (den / num).sqrt()
    }
}

/// Information decomposition returned by [`waveform_fisher`], all [1/m^2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveformFisher {
    /// Delay-sensitivity contribution.
    pub delay_term: f64,
    /// Amplitude (path-loss slope) contribution.
    pub amplitude_term: f64,
    /// Total: delay + amplitude (cross term identically zero).
    pub total: f64,
}

/// Relative Richardson truncation estimate above which the step is
/// considered untrustworthy.
const STEP_TRUST: f64 = 1e-3;

/// Numerical ranging information at distance `d` from the sampled waveform
/// and the model's path-loss amplitude.
pub fn waveform_fisher(
    w: &SampledWaveform,
    model: &NetworkModel,
    d: f64,
) -> Result<WaveformFisher> {
    if !(d >= 0.0) {
        return Err(Error::UnitOutOfRange {
            field: "d",
            value: d,
            constraint: ">= 0",
        });
    }
    let (p_loc, _) = model.power_split();
    if p_loc == 0.0 {
        return Ok(WaveformFisher {
            delay_term: 0.0,
            amplitude_term: 0.0,
            total: 0.0,
        });
    }
    let sigma2 = w.noise_std() * w.noise_std();
    let amplitude = |d: f64| {
        (model.k_pl() * model.g0() * p_loc).sqrt()
            * (model.h_bs() * model.h_bs() + d * d).powf(-model.alpha() / 4.0)
    };
    let a = amplitude(d);

    // Delay sensitivity: central difference of the shifted pulse at the
    // pulse's own scale (cube root of machine epsilon times that scale).
    let h_delay = f64::EPSILON.cbrt() * w.pulse_scale();
    let delay_j = |h: f64| -> f64 {
        let plus = w.delayed_unit_pulse(h);
        let minus = w.delayed_unit_pulse(-h);
        let sum: f64 = plus
            .iter()
            .zip(&minus)
            .map(|(p, m)| {
                let ds = (p - m) / (2.0 * h);
                ds * ds
            })
            .sum();
        a * a * sum / sigma2
    };
    let j_h = delay_j(h_delay);
    let j_2h = delay_j(2.0 * h_delay);
    let delay_err = (j_2h - j_h).abs() / (3.0 * j_h.abs().max(f64::MIN_POSITIVE));
    if delay_err > STEP_TRUST {
        return Err(Error::StepTooLarge {
            relative_error: delay_err,
        });
    }
    let delay_term = j_h + (j_h - j_2h) / 3.0;

    // Amplitude sensitivity: the envelope varies on the geometric scale.
    let h_amp = f64::EPSILON.cbrt() * d.max(model.h_bs());
    let da_h = (amplitude(d + h_amp) - amplitude(d - h_amp)) / (2.0 * h_amp);
    let da_2h = (amplitude(d + 2.0 * h_amp) - amplitude(d - 2.0 * h_amp)) / (4.0 * h_amp);
    let amp_err = (da_2h - da_h).abs() / (3.0 * da_h.abs().max(f64::MIN_POSITIVE));
    // d = 0 is a symmetry point: the slope is exactly zero and the
    // Richardson ratio is noise over noise, so skip the trust check there.
    if d > 0.0 && da_h.abs() > 1e-300 && amp_err > STEP_TRUST {
        return Err(Error::StepTooLarge {
            relative_error: amp_err,
        });
    }
    let da = da_h + (da_h - da_2h) / 3.0;
    let amplitude_term = da * da / sigma2;

    Ok(WaveformFisher {
        delay_term,
        amplitude_term,
        total: delay_term + amplitude_term,
    })
}
