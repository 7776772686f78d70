//! Time-reversal matched filtering: the effective non-causal channel after
//! per-antenna conjugate time-reversed filtering, its demodulated
//! coefficients with a CP-centering delay, and the resulting SINR/rate.
//!
//! Filtering every antenna with its own time-reversed conjugate impulse
//! response turns the multi-antenna channel into a scalar autocorrelation
//! `g[n]` of support `2L-1` centered at `n = 0`. Delaying demodulation by
//! `delta = floor(n_cp/2)` centers that bulk inside the CP; residual
//! leakage produces ICI and ISI towards *both* neighbor blocks, captured by
//! the `b = -1, 0, +1` coefficient sets.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::channel::ChannelRealization;
use crate::dsp::{weight_c, weight_ctilde, OfdmConfig};
use crate::precoding::SinrRateReport;

/// Effective scalar channel `g[n] = sum_m h[m] h^H[m-n] / omega_tilde` over
/// `n` in `[-L+1, L-1]`, stored densely, plus the nonzero offsets for sparse
/// iteration.
#[derive(Debug, Clone)]
pub struct TrEffectiveChannel {
    g: Vec<Complex64>,
    support: Vec<i64>,
    omega_tilde: f64,
    delta: usize,
    l: usize,
}

impl TrEffectiveChannel {
    /// `g[n]`; zero outside `[-L+1, L-1]`.
    pub fn g(&self, n: i64) -> Complex64 {
        let idx = n + self.l as i64 - 1;
        if (0..self.g.len() as i64).contains(&idx) {
            self.g[idx as usize]
        } else {
            Complex64::ZERO
        }
    }

    /// Offsets with nonzero autocorrelation, ascending.
    pub fn support(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.support.iter().map(|&n| (n, self.g(n)))
    }

    /// `omega_tilde = sqrt(sum_p ||h_p||^2)`.
    pub fn omega_tilde(&self) -> f64 {
        self.omega_tilde
    }

    /// Demodulation delay `floor(n_cp / 2)`.
    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn l(&self) -> usize {
        self.l
    }
}

/// Builds the effective channel of the matched-filter bank; the correlation
/// runs only over actual tap pairs, so sparse PDPs stay cheap.
pub fn tr_effective_channel(cir: &ChannelRealization, cfg: &OfdmConfig) -> TrEffectiveChannel {
    let l = cir.l();
    let omega_sq: f64 =
        cir.taps().iter().map(|(_, h)| h.iter().map(|v| v.norm_sqr()).sum::<f64>()).sum();
    let omega_tilde = omega_sq.sqrt();
    let mut g = vec![Complex64::ZERO; 2 * l - 1];
    for (p, hp) in cir.taps() {
        for (q, hq) in cir.taps() {
            let n = *p as i64 - *q as i64;
            let dot: Complex64 = hp.iter().zip(hq).map(|(a, b)| a * b.conj()).sum();
            g[(n + l as i64 - 1) as usize] += dot / omega_tilde;
        }
    }
    let support: Vec<i64> = (0..g.len())
        .filter(|&k| g[k] != Complex64::ZERO)
        .map(|k| k as i64 - (l as i64 - 1))
        .collect();
    TrEffectiveChannel { g, support, omega_tilde, delta: cfg.n_cp / 2, l }
}

/// Demodulated coefficients of the TR link: desired gains, same-block ICI
/// and previous/next-block ISI.
#[derive(Debug, Clone)]
pub struct TrCoefficients {
    /// `G_{0,i,i}`.
    desired: Vec<Complex64>,
    /// `ici[i][l] = G_{0,l,i}` for l != i (diagonal zero).
    ici: Vec<Vec<Complex64>>,
    /// `isi[0]` is the previous block (b = -1), `isi[1]` the next (b = +1);
    /// each `[i][l]` including the diagonal.
    isi: [Vec<Vec<Complex64>>; 2],
}

impl TrCoefficients {
    pub fn desired(&self) -> &[Complex64] {
        &self.desired
    }

    pub fn ici(&self, i: usize, l: usize) -> Complex64 {
        self.ici[i][l]
    }

    /// `G_{b,l,i}` for b = -1 or +1.
    pub fn isi(&self, b: i64, i: usize, l: usize) -> Complex64 {
        match b {
            -1 => self.isi[0][i][l],
            1 => self.isi[1][i][l],
            _ => panic!("isi block index must be -1 or +1"),
        }
    }

    pub fn n_sc(&self) -> usize {
        self.desired.len()
    }

    /// Spread of the per-subcarrier desired gain magnitudes, max/min of
    /// |G_{0,i,i}| — a diagnostic for in-band spectral flatness.
    pub fn desired_gain_spread(&self) -> f64 {
        let mags: Vec<f64> = self.desired.iter().map(|v| v.norm()).collect();
        let max = mags.iter().cloned().fold(f64::MIN, f64::max);
        let min = mags.iter().cloned().fold(f64::MAX, f64::min);
        max / min
    }
}

/// Desired gains `G_{0,i,i}` only — what a receiver needs for equalization.
pub fn tr_desired_gains(ch: &TrEffectiveChannel, cfg: &OfdmConfig) -> Vec<Complex64> {
    let n_fft = cfg.n_fft as f64;
    let delta = ch.delta() as i64;
    (0..cfg.n_sc)
        .map(|i| {
            let acc: Complex64 = ch
                .support()
                .map(|(m, gv)| {
                    weight_c(m + delta, cfg)
                        * gv
                        * Complex64::from_polar(1.0, -2.0 * PI * (i as i64 * m) as f64 / n_fft)
                })
                .sum();
            Complex64::from_polar(1.0, -2.0 * PI * (i as i64 * delta) as f64 / n_fft) * acc
        })
        .collect()
}

/// Evaluates the closed-form coefficients for all demodulated subcarriers.
pub fn tr_channels(ch: &TrEffectiveChannel, cfg: &OfdmConfig) -> TrCoefficients {
    let n_sc = cfg.n_sc;
    let n_fft = cfg.n_fft as f64;
    let delta = ch.delta as i64;
    let sup: Vec<(i64, Complex64)> = ch.support().collect();
    // Per-offset caches: weights by subcarrier distance d = l - i, phases by l.
    let c_w: Vec<f64> = sup.iter().map(|&(m, _)| weight_c(m + delta, cfg)).collect();
    let ct_w: Vec<Vec<Complex64>> = sup
        .iter()
        .map(|&(m, _)| {
            (-(n_sc as i64 - 1)..n_sc as i64)
                .map(|d| {
                    if d == 0 {
                        Complex64::ZERO
                    } else if d > 0 {
                        weight_ctilde(d as usize, 0, m + delta, cfg)
                    } else {
                        weight_ctilde(0, (-d) as usize, m + delta, cfg)
                    }
                })
                .collect()
        })
        .collect();
    let phases: Vec<Vec<Complex64>> = sup
        .iter()
        .map(|&(m, _)| {
            (0..n_sc)
                .map(|l| Complex64::from_polar(1.0, -2.0 * PI * l as f64 * m as f64 / n_fft))
                .collect()
        })
        .collect();
    let lead = |l: usize, shift: i64| {
        Complex64::from_polar(1.0, -2.0 * PI * l as f64 * shift as f64 / n_fft)
    };

    let mut desired = vec![Complex64::ZERO; n_sc];
    for i in 0..n_sc {
        let mut acc = Complex64::ZERO;
        for (k, &(_, gv)) in sup.iter().enumerate() {
            acc += c_w[k] * gv * phases[k][i];
        }
        desired[i] = lead(i, delta) * acc;
    }

    let mut ici = vec![vec![Complex64::ZERO; n_sc]; n_sc];
    for (k, &(_, gv)) in sup.iter().enumerate() {
        for i in 0..n_sc {
            for l in 0..n_sc {
                if l != i {
                    ici[i][l] += ct_w[k][(l as i64 - i as i64 + n_sc as i64 - 1) as usize]
                        * gv
                        * phases[k][l];
                }
            }
        }
    }
    for (i, row) in ici.iter_mut().enumerate() {
        for (l, v) in row.iter_mut().enumerate() {
            if l != i {
                *v *= lead(l, delta);
            }
        }
    }

    // ISI towards block b covers offsets m >= 0 (b = -1) or m <= 0 (b = +1).
    let mut isi = [vec![vec![Complex64::ZERO; n_sc]; n_sc], vec![vec![Complex64::ZERO; n_sc]; n_sc]];
    for (side, b) in [(0usize, -1i64), (1, 1)] {
        for (k, &(m, gv)) in sup.iter().enumerate() {
            let in_range = if b == -1 { m >= 0 } else { m <= 0 };
            if !in_range {
                continue;
            }
            for i in 0..n_sc {
                for l in 0..n_sc {
                    if l == i {
                        isi[side][i][i] += (1.0 - c_w[k]) * gv * phases[k][i];
                    } else {
                        isi[side][i][l] -=
                            ct_w[k][(l as i64 - i as i64 + n_sc as i64 - 1) as usize]
                                * gv
                                * phases[k][l];
                    }
                }
            }
        }
        let shift = b * cfg.n_cp as i64 + delta;
        for i in 0..n_sc {
            for l in 0..n_sc {
                isi[side][i][l] *= lead(l, shift);
            }
        }
    }
    TrCoefficients { desired, ici, isi }
}

/// Exact per-subcarrier SINR of the TR link; both ISI blocks enter
/// explicitly, so no factor-2 shortcut applies.
pub fn sinr_tr(coeffs: &TrCoefficients, snr: f64, cfg: &OfdmConfig) -> SinrRateReport {
    let n_sc = coeffs.n_sc();
    let signal: Vec<f64> = coeffs.desired.iter().map(|v| v.norm_sqr()).collect();
    let interference: Vec<f64> = (0..n_sc)
        .map(|i| {
            let mut acc = 0.0;
            for l in 0..n_sc {
                if l != i {
                    acc += coeffs.ici[i][l].norm_sqr();
                }
                acc += coeffs.isi[0][i][l].norm_sqr() + coeffs.isi[1][i][l].norm_sqr();
            }
            acc
        })
        .collect();
    SinrRateReport::from_powers(signal, interference, snr, cfg.rate_prefactor())
}
