//! OFDM numerology, discrete Fourier transforms, interference weight
//! functions and QAM constellations.
//!
//! The weight functions `c[m]` and `c~_{l,i}[m]` describe how much a channel
//! tap at (possibly negative) delay `m` contributes to the desired signal and
//! to the inter-carrier/inter-symbol interference of a CP-OFDM demodulator.
//! They are the building blocks for every closed-form coefficient in the
//! other modules.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::Error;

/// OFDM numerology: IFFT size, CP length, occupied subcarriers and
/// subcarrier spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OfdmConfig {
    pub n_fft: usize,
    pub n_cp: usize,
    pub n_sc: usize,
    pub scs_hz: f64,
}

impl OfdmConfig {
    pub fn new(n_fft: usize, n_cp: usize, n_sc: usize, scs_hz: f64) -> Result<Self, Error> {
        if n_fft == 0 || n_sc == 0 || n_sc > n_fft || n_cp >= n_fft || scs_hz <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "bad OFDM numerology: n_fft={n_fft} n_cp={n_cp} n_sc={n_sc} scs_hz={scs_hz}"
            )));
        }
        Ok(Self { n_fft, n_cp, n_sc, scs_hz })
    }

    /// Symbol duration without CP, seconds.
    pub fn symbol_duration(&self) -> f64 {
        1.0 / self.scs_hz
    }

    /// Sample period, seconds.
    pub fn sample_period(&self) -> f64 {
        self.symbol_duration() / self.n_fft as f64
    }

    /// Samples per CP-extended OFDM block.
    pub fn block_len(&self) -> usize {
        self.n_fft + self.n_cp
    }

    /// Rate prefactor `n_fft / ((n_fft + n_cp) * n_sc)` accounting for CP
    /// overhead and per-subcarrier averaging.
    pub fn rate_prefactor(&self) -> f64 {
        self.n_fft as f64 / ((self.n_fft + self.n_cp) as f64 * self.n_sc as f64)
    }
}

/// Transform direction for [`dft`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// DFT with the `e^{-j2pi ik/N}` forward kernel. The forward transform is
/// unscaled; the inverse carries the `1/N` factor so that
/// `dft(dft(x, Forward), Inverse) == x`.
pub fn dft(input: &[Complex64], direction: Direction) -> Vec<Complex64> {
    assert!(!input.is_empty(), "dft of empty sequence");
    let mut buf = input.to_vec();
    let mut planner = FftPlanner::new();
    let fft = match direction {
        Direction::Forward => planner.plan_fft_forward(buf.len()),
        Direction::Inverse => planner.plan_fft_inverse(buf.len()),
    };
    fft.process(&mut buf);
    if direction == Direction::Inverse {
        let scale = 1.0 / input.len() as f64;
        for v in &mut buf {
            *v *= scale;
        }
    }
    buf
}

/// Reusable FFT pair for hot loops (the planner allocation in [`dft`] is
/// wasteful inside a per-block simulation loop).
pub struct FftPair {
    forward: Arc<dyn rustfft::Fft<f64>>,
    inverse: Arc<dyn rustfft::Fft<f64>>,
    len: usize,
}

impl FftPair {
    pub fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft_forward(len),
            inverse: planner.plan_fft_inverse(len),
            len,
        }
    }

    pub fn forward_in_place(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.len);
        self.forward.process(buf);
    }

    /// Unscaled inverse kernel `sum_l X[l] e^{+j2pi lk/N}`.
    pub fn inverse_unscaled_in_place(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.len);
        self.inverse.process(buf);
    }
}

/// Desired-signal weight `c[m]`, defined piecewise on all integers and zero
/// outside `[-n_fft, n_fft + n_cp]`.
pub fn weight_c(m: i64, cfg: &OfdmConfig) -> f64 {
    let n_fft = cfg.n_fft as i64;
    let n_cp = cfg.n_cp as i64;
    if m >= -n_fft && m <= 0 {
        (n_fft + m) as f64 / n_fft as f64
    } else if m > 0 && m <= n_cp {
        1.0
    } else if m > n_cp && m <= n_fft + n_cp {
        (n_fft - (m - n_cp)) as f64 / n_fft as f64
    } else {
        0.0
    }
}

/// Interference weight `c~_{l,i}[m]`. For `l == i` this is the diagonal
/// extension `(1 - c[m]) / sqrt(2)` (half the ISI power of the demodulated
/// subcarrier on itself), restricted to the support of `c`.
pub fn weight_ctilde(l: usize, i: usize, m: i64, cfg: &OfdmConfig) -> Complex64 {
    let n_fft = cfg.n_fft as i64;
    let n_cp = cfg.n_cp as i64;
    if l == i {
        return if m >= -n_fft && m <= n_fft + n_cp {
            Complex64::new((1.0 - weight_c(m, cfg)) / std::f64::consts::SQRT_2, 0.0)
        } else {
            Complex64::ZERO
        };
    }
    let d = l as i64 - i as i64;
    debug_assert!(d != 0 && d.unsigned_abs() < cfg.n_fft as u64);
    let unit = Complex64::from_polar(1.0, 2.0 * PI * d as f64 / n_fft as f64);
    let denom = (Complex64::ONE - unit) * n_fft as f64;
    if m >= -n_fft && m <= 0 {
        let num = Complex64::ONE - Complex64::from_polar(1.0, 2.0 * PI * (m * d) as f64 / n_fft as f64);
        num / denom
    } else if m >= n_cp && m <= n_fft + n_cp {
        let num =
            Complex64::from_polar(1.0, 2.0 * PI * ((m - n_cp) * d) as f64 / n_fft as f64) - Complex64::ONE;
        num / denom
    } else {
        Complex64::ZERO
    }
}

/// Square QAM constellation with unit average symbol energy and Gray-coded
/// axis labeling. Only symbol indices matter for SER measurement.
#[derive(Debug, Clone)]
pub struct QamConstellation {
    order: usize,
    points: Vec<Complex64>,
    side: usize,
    step: f64,
    // amplitude-axis position -> Gray label
    pos_to_label: Vec<usize>,
}

impl QamConstellation {
    /// Supported orders: 4, 16, 64.
    pub fn new(order: usize) -> Result<Self, Error> {
        let side = match order {
            4 => 2,
            16 => 4,
            64 => 8,
            _ => return Err(Error::InvalidConfig(format!("unsupported QAM order {order}"))),
        };
        // PAM levels -(side-1), ..., side-1 in steps of 2; the square grid has
        // average energy 2(side^2 - 1)/3 before normalization.
        let norm = (2.0 * (side * side - 1) as f64 / 3.0).sqrt();
        let mut pos_to_label = vec![0usize; side];
        for label in 0..side {
            pos_to_label[gray_decode(label)] = label;
        }
        let mut points = Vec::with_capacity(order);
        for li in 0..side {
            for lq in 0..side {
                let ai = gray_decode(li) as f64;
                let aq = gray_decode(lq) as f64;
                points.push(Complex64::new(
                    (2.0 * ai - (side as f64 - 1.0)) / norm,
                    (2.0 * aq - (side as f64 - 1.0)) / norm,
                ));
            }
        }
        Ok(Self { order, points, side, step: 2.0 / norm, pos_to_label })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits_per_symbol(&self) -> f64 {
        (self.order as f64).log2()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// Maps symbol indices to constellation points.
    pub fn map(&self, indices: &[usize]) -> Vec<Complex64> {
        indices.iter().map(|&k| self.points[k]).collect()
    }

    /// ML detection of the transmitted index given the received sample `y`
    /// and the (scalar) effective channel `h_eff`: `argmin_q |y - h_eff q|`,
    /// implemented as a nearest-level slicer on `y / h_eff`.
    pub fn detect(&self, y: Complex64, h_eff: Complex64) -> Result<usize, Error> {
        if h_eff.norm_sqr() == 0.0 {
            return Err(Error::DegenerateChannel);
        }
        let z = y / h_eff;
        let li = self.pos_to_label[self.slice_axis(z.re)];
        let lq = self.pos_to_label[self.slice_axis(z.im)];
        Ok(li * self.side + lq)
    }

    /// Nearest PAM level position (0-based, amplitude order) for a real
    /// coordinate.
    fn slice_axis(&self, x: f64) -> usize {
        let k = ((x + (self.side - 1) as f64 * self.step / 2.0) / self.step).round();
        (k.max(0.0) as usize).min(self.side - 1)
    }
}

/// Binary-reflected Gray decode.
fn gray_decode(mut v: usize) -> usize {
    let mut mask = v >> 1;
    while mask != 0 {
        v ^= mask;
        mask >>= 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn cfg(n_fft: usize, n_cp: usize, n_sc: usize) -> OfdmConfig {
        OfdmConfig::new(n_fft, n_cp, n_sc, 60e3).unwrap()
    }

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect()
    }

    #[test]
    fn impulse_has_flat_spectrum() {
        let mut x = vec![Complex64::ZERO; 4];
        x[0] = Complex64::ONE;
        for v in dft(&x, Direction::Forward) {
            assert!((v - Complex64::ONE).norm() < 1e-14);
        }
    }

    #[test]
    fn forward_inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let x = random_vec(&mut rng, 32);
        let back = dft(&dft(&x, Direction::Forward), Direction::Inverse);
        let num: f64 = x.iter().zip(&back).map(|(a, b)| (a - b).norm_sqr()).sum();
        let den: f64 = x.iter().map(|a| a.norm_sqr()).sum();
        assert!((num / den).sqrt() < 1e-12);
    }

    #[test]
    fn complex_tone_lands_on_its_bin() {
        // forward kernel e^{-j2pi ik/N}: the tone e^{+j2pi k 3/8} peaks at bin 3
        let x: Vec<Complex64> =
            (0..8).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 * 3.0 / 8.0)).collect();
        let spec = dft(&x, Direction::Forward);
        for (i, v) in spec.iter().enumerate() {
            let expect = if i == 3 { Complex64::new(8.0, 0.0) } else { Complex64::ZERO };
            assert!((v - expect).norm() < 1e-12, "bin {i}: {v}");
        }
    }

    #[test]
    fn parseval_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_vec(&mut rng, 64);
        let spec = dft(&x, Direction::Forward);
        let time_energy: f64 = x.iter().map(|v| v.norm_sqr()).sum();
        let freq_energy: f64 = spec.iter().map(|v| v.norm_sqr()).sum::<f64>() / 64.0;
        assert!((time_energy - freq_energy).abs() / time_energy < 1e-10);
    }

    #[test]
    fn fft_pair_matches_dft() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = random_vec(&mut rng, 16);
        let pair = FftPair::new(16);
        let mut buf = x.clone();
        pair.forward_in_place(&mut buf);
        let direct = dft(&x, Direction::Forward);
        for (a, b) in buf.iter().zip(&direct) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn weight_c_branches() {
        let c2048 = cfg(2048, 144, 600);
        for m in 0..=144 {
            assert_eq!(weight_c(m, &c2048), 1.0);
        }
        assert_eq!(weight_c(145, &c2048), 2047.0 / 2048.0);
        assert_eq!(weight_c(-2048, &c2048), 0.0);
        assert_eq!(weight_c(2048 + 144, &c2048), 0.0);
        assert_eq!(weight_c(-1, &c2048), 2047.0 / 2048.0);
        for m in -3000..3000 {
            let v = weight_c(m, &c2048);
            assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn weight_ctilde_vanishes_inside_cp() {
        let c = cfg(32, 4, 12);
        for l in 0..12 {
            for i in 0..12 {
                for m in 0..=4 {
                    assert!(weight_ctilde(l, i, m, &c).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn weight_ctilde_diagonal_is_scaled_complement() {
        let c = cfg(32, 4, 12);
        for m in -40..45 {
            let v = weight_ctilde(3, 3, m, &c);
            let expect = if (-32..=36).contains(&m) {
                (1.0 - weight_c(m, &c)) / std::f64::consts::SQRT_2
            } else {
                0.0
            };
            assert!((v - Complex64::new(expect, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn full_band_interference_identity() {
        // for n_sc = n_fft: sum over l != i of |ctilde_{l,i}[m]|^2 equals
        // c[m] - c[m]^2, and adding the doubled off-diagonal terms to the
        // doubled diagonal term gives the total interference weight 1 - c^2
        let c = cfg(16, 4, 16);
        for i in [0, 5, 15] {
            for m in [-10i64, -3, 5, 7, 12, 18] {
                let off: f64 = (0..16)
                    .filter(|&l| l != i)
                    .map(|l| weight_ctilde(l, i, m, &c).norm_sqr())
                    .sum();
                let cm = weight_c(m, &c);
                assert!((off - (cm - cm * cm)).abs() < 1e-12, "i={i} m={m}");
                let diag = weight_ctilde(i, i, m, &c).norm_sqr();
                let total = 2.0 * off + 2.0 * diag;
                assert!((total - (1.0 - cm * cm)).abs() < 1e-12, "i={i} m={m}");
            }
        }
    }

    #[test]
    fn qam_unit_energy_and_noiseless_round_trip() {
        for order in [4, 16, 64] {
            let q = QamConstellation::new(order).unwrap();
            let mean: f64 =
                q.points().iter().map(|p| p.norm_sqr()).sum::<f64>() / order as f64;
            assert!((mean - 1.0).abs() < 1e-12);
            let h = Complex64::new(0.3, -1.2);
            for k in 0..order {
                let y = h * q.points()[k];
                assert_eq!(q.detect(y, h).unwrap(), k);
            }
        }
    }

    #[test]
    fn qam_rejects_zero_channel_and_bad_order() {
        let q = QamConstellation::new(4).unwrap();
        assert!(matches!(q.detect(Complex64::ONE, Complex64::ZERO), Err(Error::DegenerateChannel)));
        assert!(QamConstellation::new(32).is_err());
    }

    #[test]
    fn qam4_awgn_ser_matches_closed_form() {
        // SER = 2Q(sqrt(snr)) - Q(sqrt(snr))^2 = 1.564789636945209e-3 at 10 dB
        let expect = 1.564_789_636_945_209e-3;
        let q = QamConstellation::new(4).unwrap();
        let snr = 10.0f64;
        let sigma = (1.0 / (2.0 * snr)).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let trials = 2_000_000usize;
        let mut errors = 0usize;
        for _ in 0..trials {
            let k = rng.random_range(0..4);
            let n = Complex64::new(
                rng.sample::<f64, _>(StandardNormal) * sigma,
                rng.sample::<f64, _>(StandardNormal) * sigma,
            );
            let y = q.points()[k] + n;
            if q.detect(y, Complex64::ONE).unwrap() != k {
                errors += 1;
            }
        }
        let ser = errors as f64 / trials as f64;
        let sigma_mc = (expect * (1.0 - expect) / trials as f64).sqrt();
        assert!((ser - expect).abs() < 3.0 * sigma_mc, "ser {ser} vs {expect}");
    }
}
