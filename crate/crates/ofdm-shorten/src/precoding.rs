//! F- and TF-precoders and the exact per-realization SINR/rate of the
//! precoded OFDM link.
//!
//! TF-precoding is per-subcarrier maximum-ratio transmission matched to the
//! channel impulse response *truncated* at a threshold `tau_tr`; the
//! conventional F-precoder is the special case `tau_tr = L`. The demodulated
//! symbol decomposes into a desired term, ICI from other subcarriers of the
//! same block and ISI from the previous block; all coefficients here are the
//! single-sum closed forms in the tap delays, weighted by `weight_c` /
//! `weight_ctilde`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::channel::ChannelRealization;
use crate::dsp::{weight_c, weight_ctilde, OfdmConfig};
use crate::error::Error;

/// Per-subcarrier unit-norm precoding vectors together with the truncation
/// threshold and the pre-normalization norms `omega_i`.
#[derive(Debug, Clone)]
pub struct PrecoderSet {
    tau_tr: usize,
    vectors: Vec<Vec<Complex64>>,
    norms: Vec<f64>,
}

impl PrecoderSet {
    pub fn tau_tr(&self) -> usize {
        self.tau_tr
    }

    /// `w_i` as a column vector (stored as a row of conjugated response).
    pub fn vector(&self, i: usize) -> &[Complex64] {
        &self.vectors[i]
    }

    /// `omega_i(tau_tr) = ||hhat_i(tau_tr)||` before normalization.
    pub fn norm(&self, i: usize) -> f64 {
        self.norms[i]
    }

    pub fn n_sc(&self) -> usize {
        self.vectors.len()
    }
}

/// MRT matched to the truncated response: `w_i = hhat_i^H(tau_tr) / omega_i`.
pub fn tf_precoder(
    cir: &ChannelRealization,
    tau_tr: usize,
    cfg: &OfdmConfig,
) -> Result<PrecoderSet, Error> {
    if tau_tr == 0 || tau_tr > cfg.n_fft {
        return Err(Error::InvalidConfig(format!("truncation threshold {tau_tr} outside [1, n_fft]")));
    }
    let mut vectors = Vec::with_capacity(cfg.n_sc);
    let mut norms = Vec::with_capacity(cfg.n_sc);
    for i in 0..cfg.n_sc {
        let hhat = cir.freq_response(i, tau_tr, cfg);
        let omega = hhat.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if omega == 0.0 {
            return Err(Error::DegenerateChannel);
        }
        vectors.push(hhat.iter().map(|v| v.conj() / omega).collect());
        norms.push(omega);
    }
    Ok(PrecoderSet { tau_tr, vectors, norms })
}

/// Conventional full-response MRT; identical to [`tf_precoder`] with
/// `tau_tr = L`.
pub fn f_precoder(cir: &ChannelRealization, cfg: &OfdmConfig) -> Result<PrecoderSet, Error> {
    tf_precoder(cir, cir.l(), cfg)
}

/// Scalar effective channels of one realization under one precoder set:
/// everything needed to evaluate the SINR and to equalize a simulated link.
#[derive(Debug, Clone)]
pub struct EffectiveChannels {
    /// `H_{0,i,i} w_i` — desired gain of subcarrier i.
    desired: Vec<Complex64>,
    /// `ici[i][l] = H_{0,l,i} w_l` for l != i (diagonal kept at zero).
    ici: Vec<Vec<Complex64>>,
    /// `(hhat_i - H_{0,i,i}) w_i` — same-subcarrier ISI gain.
    isi_same: Vec<Complex64>,
    /// `hhat_i w_i` — full (untruncated) response projected on w_i.
    hhat_w: Vec<Complex64>,
    n_cp: usize,
    n_fft: usize,
}

impl EffectiveChannels {
    pub fn desired(&self) -> &[Complex64] {
        &self.desired
    }

    pub fn ici(&self, i: usize, l: usize) -> Complex64 {
        self.ici[i][l]
    }

    pub fn isi_same(&self) -> &[Complex64] {
        &self.isi_same
    }

    pub fn hhat_w(&self) -> &[Complex64] {
        &self.hhat_w
    }

    /// Previous-block ISI gain `H_{-1,l,i} w_l` via the compact identity
    /// `e^{j2pi l n_cp / n_fft} (delta_{l,i} hhat_i - H_{0,l,i}) w_l`.
    pub fn isi_compact(&self, l: usize, i: usize) -> Complex64 {
        let phase = Complex64::from_polar(1.0, 2.0 * PI * (l * self.n_cp) as f64 / self.n_fft as f64);
        let base = if l == i { self.isi_same[i] } else { -self.ici[i][l] };
        phase * base
    }

    pub fn n_sc(&self) -> usize {
        self.desired.len()
    }
}

/// Evaluates the closed-form effective-channel coefficients for every
/// demodulated subcarrier.
pub fn effective_channels(
    cir: &ChannelRealization,
    precoders: &PrecoderSet,
    cfg: &OfdmConfig,
) -> EffectiveChannels {
    let n_sc = cfg.n_sc;
    let n_fft = cfg.n_fft as f64;
    // Inner products h_p . w_l for every tap and precoded subcarrier.
    let dots: Vec<Vec<Complex64>> = cir
        .taps()
        .iter()
        .map(|(_, h)| {
            (0..n_sc)
                .map(|l| h.iter().zip(precoders.vector(l)).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let mut desired = vec![Complex64::ZERO; n_sc];
    let mut isi_same = vec![Complex64::ZERO; n_sc];
    let mut hhat_w = vec![Complex64::ZERO; n_sc];
    for (t, (p, _)) in cir.taps().iter().enumerate() {
        let c = weight_c(*p as i64, cfg);
        for i in 0..n_sc {
            let phase = Complex64::from_polar(1.0, -2.0 * PI * (i * p) as f64 / n_fft);
            let contrib = dots[t][i] * phase;
            desired[i] += c * contrib;
            hhat_w[i] += contrib;
            if *p > cfg.n_cp {
                isi_same[i] += (1.0 - c) * contrib;
            }
        }
    }
    // ICI only involves taps beyond the CP; ctilde depends on l - i only,
    // so cache it per (tap, offset).
    let late: Vec<usize> = (0..cir.taps().len()).filter(|&t| cir.taps()[t].0 > cfg.n_cp).collect();
    let mut ctilde_by_offset: Vec<Vec<Complex64>> = Vec::with_capacity(late.len());
    for &t in &late {
        let p = cir.taps()[t].0 as i64;
        // offset d = l - i in [-(n_sc-1), n_sc-1], stored at index d + n_sc - 1
        let row = (-(n_sc as i64 - 1)..n_sc as i64)
            .map(|d| {
                if d == 0 {
                    Complex64::ZERO
                } else {
                    // ctilde_{l,i} depends on (l-i, m); evaluate at (l,i) = (d,0) or (0,-d)
                    if d > 0 {
                        weight_ctilde(d as usize, 0, p, cfg)
                    } else {
                        weight_ctilde(0, (-d) as usize, p, cfg)
                    }
                }
            })
            .collect();
        ctilde_by_offset.push(row);
    }
    let mut ici = vec![vec![Complex64::ZERO; n_sc]; n_sc];
    for (row, &t) in ctilde_by_offset.iter().zip(&late) {
        let p = cir.taps()[t].0;
        let tap_phases: Vec<Complex64> = (0..n_sc)
            .map(|l| Complex64::from_polar(1.0, -2.0 * PI * (l * p) as f64 / n_fft))
            .collect();
        for i in 0..n_sc {
            for l in 0..n_sc {
                if l != i {
                    ici[i][l] += row[(l as i64 - i as i64 + n_sc as i64 - 1) as usize]
                        * dots[t][l]
                        * tap_phases[l];
                }
            }
        }
    }
    EffectiveChannels { desired, ici, isi_same, hhat_w, n_cp: cfg.n_cp, n_fft: cfg.n_fft }
}

/// Desired gains `H_{0,i,i} w_i` only — what a receiver needs for
/// equalization, much cheaper than the full coefficient set.
pub fn desired_gains(
    cir: &ChannelRealization,
    precoders: &PrecoderSet,
    cfg: &OfdmConfig,
) -> Vec<Complex64> {
    let n_fft = cfg.n_fft as f64;
    let mut desired = vec![Complex64::ZERO; cfg.n_sc];
    for (p, h) in cir.taps() {
        let c = weight_c(*p as i64, cfg);
        for (i, d) in desired.iter_mut().enumerate() {
            let dot: Complex64 = h.iter().zip(precoders.vector(i)).map(|(a, b)| a * b).sum();
            *d += c * dot * Complex64::from_polar(1.0, -2.0 * PI * (i * p) as f64 / n_fft);
        }
    }
    desired
}

/// Per-subcarrier signal power, interference power, SINR and aggregate rate.
#[derive(Debug, Clone)]
pub struct SinrRateReport {
    pub signal: Vec<f64>,
    pub interference: Vec<f64>,
    pub sinr: Vec<f64>,
    pub rate_bps_hz: f64,
}

impl SinrRateReport {
    /// Assembles the report from per-subcarrier powers; `prefactor` is the
    /// CP-overhead/per-subcarrier rate scale.
    pub fn from_powers(signal: Vec<f64>, interference: Vec<f64>, snr: f64, prefactor: f64) -> Self {
        let sinr: Vec<f64> = signal
            .iter()
            .zip(&interference)
            .map(|(&s, &i)| s / (i + 1.0 / snr))
            .collect();
        let rate_bps_hz = prefactor * sinr.iter().map(|&s| (1.0 + s).log2()).sum::<f64>();
        Self { signal, interference, sinr, rate_bps_hz }
    }
}

/// Exact per-subcarrier SINR of the precoded link: the l != i interference
/// terms carry a factor 2 because ICI and ISI from subcarrier l contribute
/// equal power, while the same-subcarrier ISI enters once.
pub fn sinr_tf(effch: &EffectiveChannels, snr: f64, cfg: &OfdmConfig) -> SinrRateReport {
    let n_sc = effch.n_sc();
    let signal: Vec<f64> = effch.desired.iter().map(|v| v.norm_sqr()).collect();
    let interference: Vec<f64> = (0..n_sc)
        .map(|i| {
            let ici: f64 =
                (0..n_sc).filter(|&l| l != i).map(|l| 2.0 * effch.ici[i][l].norm_sqr()).sum();
            effch.isi_same[i].norm_sqr() + ici
        })
        .collect();
    SinrRateReport::from_powers(signal, interference, snr, cfg.rate_prefactor())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{generate_cir, PowerDelayProfile};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> OfdmConfig {
        OfdmConfig::new(32, 4, 12, 60e3).unwrap()
    }

    #[test]
    fn precoders_have_unit_norm_and_aligned_gain() {
        let cfg = cfg();
        let pdp = PowerDelayProfile::exponential(10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let cir = generate_cir(&pdp, 4, None, &mut rng);
        for tau in [1, 4, 10] {
            let w = tf_precoder(&cir, tau, &cfg).unwrap();
            for i in 0..cfg.n_sc {
                let norm: f64 = w.vector(i).iter().map(|v| v.norm_sqr()).sum();
                assert!((norm - 1.0).abs() < 1e-12);
                // hhat_i(tau) . w_i = omega_i, real and non-negative
                let gain: Complex64 = cir
                    .freq_response(i, tau, &cfg)
                    .iter()
                    .zip(w.vector(i))
                    .map(|(a, b)| a * b)
                    .sum();
                assert!((gain - Complex64::new(w.norm(i), 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn f_precoder_is_full_truncation() {
        let cfg = cfg();
        let pdp = PowerDelayProfile::exponential(10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cir = generate_cir(&pdp, 3, None, &mut rng);
        let f = f_precoder(&cir, &cfg).unwrap();
        let tf = tf_precoder(&cir, cir.l(), &cfg).unwrap();
        for i in 0..cfg.n_sc {
            for (a, b) in f.vector(i).iter().zip(tf.vector(i)) {
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn short_channel_is_interference_free() {
        let cfg = cfg();
        // all delays <= n_cp = 4
        let pdp = PowerDelayProfile::new(vec![(0, 0.5), (2, 0.3), (4, 0.2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cir = generate_cir(&pdp, 2, None, &mut rng);
        let w = f_precoder(&cir, &cfg).unwrap();
        let eff = effective_channels(&cir, &w, &cfg);
        for i in 0..cfg.n_sc {
            assert!(eff.isi_same()[i].norm() < 1e-15);
            assert!((eff.desired()[i] - eff.hhat_w()[i]).norm() < 1e-12);
            for l in 0..cfg.n_sc {
                assert!(eff.ici(i, l).norm() < 1e-15);
            }
        }
        // MRT on an interference-free channel: sinr_i = ||hhat_i||^2 snr
        let snr = 3.7;
        let rep = sinr_tf(&eff, snr, &cfg);
        for i in 0..cfg.n_sc {
            let expect = w.norm(i).powi(2) * snr;
            assert!((rep.sinr[i] - expect).abs() / expect < 1e-10);
        }
    }

    #[test]
    fn compact_isi_identity_matches_direct_sum() {
        let cfg = cfg();
        let pdp = PowerDelayProfile::new(vec![(0, 0.4), (3, 0.2), (6, 0.2), (11, 0.2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cir = generate_cir(&pdp, 2, None, &mut rng);
        let w = tf_precoder(&cir, 7, &cfg).unwrap();
        let eff = effective_channels(&cir, &w, &cfg);
        // direct single-sum evaluation of the previous-block coefficients
        for i in 0..cfg.n_sc {
            for l in 0..cfg.n_sc {
                let mut direct = Complex64::ZERO;
                for (p, h) in cir.taps() {
                    if *p <= cfg.n_cp {
                        continue;
                    }
                    let dot: Complex64 =
                        h.iter().zip(w.vector(l)).map(|(a, b)| a * b).sum();
                    let phase =
                        Complex64::from_polar(1.0, -2.0 * PI * (l * p) as f64 / cfg.n_fft as f64);
                    let lead =
                        Complex64::from_polar(1.0, 2.0 * PI * (l * cfg.n_cp) as f64 / cfg.n_fft as f64);
                    if l == i {
                        direct += lead * (1.0 - weight_c(*p as i64, &cfg)) * dot * phase;
                    } else {
                        direct -= lead * weight_ctilde(l, i, *p as i64, &cfg) * dot * phase;
                    }
                }
                assert!((direct - eff.isi_compact(l, i)).norm() < 1e-12, "l={l} i={i}");
            }
        }
    }

    #[test]
    fn sinr_saturates_at_high_snr_with_late_tap() {
        let cfg = cfg();
        let pdp = PowerDelayProfile::new(vec![(0, 0.7), (10, 0.3)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let cir = generate_cir(&pdp, 2, None, &mut rng);
        let w = f_precoder(&cir, &cfg).unwrap();
        let eff = effective_channels(&cir, &w, &cfg);
        let hi = sinr_tf(&eff, 1e9, &cfg);
        let hi2 = sinr_tf(&eff, 1e12, &cfg);
        for i in 0..cfg.n_sc {
            assert!(hi.sinr[i].is_finite());
            // saturated: a 1000x SNR increase moves the SINR by < 0.1%
            assert!((hi2.sinr[i] / hi.sinr[i] - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn truncation_to_cp_edge_kills_asymptotic_interference_terms() {
        // tau = n_cp + 1 leaves no tap strictly between n_cp and tau, so the
        // truncated response equals the in-CP response; interference still
        // exists from late taps but the precoder ignores them. This checks
        // the precoder only uses taps with delay < tau.
        let cfg = cfg();
        let pdp = PowerDelayProfile::new(vec![(0, 0.6), (2, 0.2), (9, 0.2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cir = generate_cir(&pdp, 2, None, &mut rng);
        let w = tf_precoder(&cir, cfg.n_cp + 1, &cfg).unwrap();
        for i in 0..cfg.n_sc {
            let hhat_trunc = cir.freq_response(i, cfg.n_cp + 1, &cfg);
            let omega: f64 = hhat_trunc.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            assert!((w.norm(i) - omega).abs() < 1e-12);
        }
    }

    #[test]
    fn scale_invariance_of_sinr() {
        let cfg = cfg();
        let pdp = PowerDelayProfile::new(vec![(0, 0.5), (8, 0.5)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let cir = generate_cir(&pdp, 2, None, &mut rng);
        let gamma = 2.5;
        let scaled = {
            let taps = cir
                .taps()
                .iter()
                .map(|(p, h)| (*p, h.iter().map(|v| v * gamma).collect()))
                .collect::<Vec<_>>();
            // rebuild through generate_cir is not possible; construct via freq
            // responses being linear, so just compare powers directly below.
            taps
        };
        let w = f_precoder(&cir, &cfg).unwrap();
        let eff = snl(&cir, &w, &cfg);
        // signal and interference powers scale by gamma^2
        let cir2 = crate::channel::tests_support::from_taps(scaled);
        let w2 = f_precoder(&cir2, &cfg).unwrap();
        let eff2 = snl(&cir2, &w2, &cfg);
        for i in 0..cfg.n_sc {
            assert!((eff2.0[i] / eff.0[i] - gamma * gamma).abs() < 1e-9);
            assert!((eff2.1[i] / eff.1[i] - gamma * gamma).abs() < 1e-9);
        }
    }

    fn snl(
        cir: &ChannelRealization,
        w: &PrecoderSet,
        cfg: &OfdmConfig,
    ) -> (Vec<f64>, Vec<f64>) {
        let eff = effective_channels(cir, w, cfg);
        let rep = sinr_tf(&eff, 1.0, cfg);
        (rep.signal, rep.interference)
    }
}
