//! Power delay profiles, random multi-antenna channel realizations and
//! frequency responses.
//!
//! A [`PowerDelayProfile`] lives on the integer sample grid of an
//! [`OfdmConfig`]; continuous tapped-delay-line specifications (e.g. the ETU
//! table in `data/etu.txt`) are quantized with round-to-nearest and
//! normalized to unit total energy. Channel draws are i.i.d. Rayleigh per
//! tap, optionally shaped by an exponential spatial correlation model.

use std::f64::consts::PI;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::dsp::OfdmConfig;
use crate::error::Error;

/// Embedded copy of the shipped ETU tapped-delay-line table.
const ETU_TABLE: &str = include_str!("../data/etu.txt");

/// Average tap energies on the sample grid: strictly increasing integer
/// delays with positive energies.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerDelayProfile {
    taps: Vec<(usize, f64)>,
}

impl PowerDelayProfile {
    /// Builds a profile from raw (delay_samples, energy) pairs. Delays must
    /// be strictly increasing and energies positive; energies are kept as
    /// given (call [`Self::normalized`] for unit total energy).
    pub fn new(taps: Vec<(usize, f64)>) -> Result<Self, Error> {
        if taps.is_empty() {
            return Err(Error::InvalidConfig("empty PDP".into()));
        }
        for w in taps.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidConfig("PDP delays must be strictly increasing".into()));
            }
        }
        if taps.iter().any(|&(_, e)| e <= 0.0) {
            return Err(Error::InvalidConfig("PDP energies must be positive".into()));
        }
        Ok(Self { taps })
    }

    /// Quantizes a continuous (delay_ns, power_dB) specification onto the
    /// sample grid of `cfg`: round-to-nearest sample, co-located taps merged
    /// by energy addition, energies normalized to unit total.
    pub fn from_spec(delays_ns: &[f64], powers_db: &[f64], cfg: &OfdmConfig) -> Result<Self, Error> {
        if delays_ns.len() != powers_db.len() || delays_ns.is_empty() {
            return Err(Error::InvalidConfig("delay/power lists must be equal-length and non-empty".into()));
        }
        if delays_ns.iter().any(|&d| d < 0.0) {
            return Err(Error::InvalidConfig("negative tap delay".into()));
        }
        let t_sp_ns = cfg.sample_period() * 1e9;
        let mut merged: Vec<(usize, f64)> = Vec::new();
        for (&d, &p) in delays_ns.iter().zip(powers_db) {
            let sample = (d / t_sp_ns).round() as usize;
            let energy = 10f64.powf(p / 10.0);
            match merged.iter_mut().find(|(s, _)| *s == sample) {
                Some((_, e)) => *e += energy,
                None => merged.push((sample, energy)),
            }
        }
        merged.sort_by_key(|&(s, _)| s);
        let pdp = Self::new(merged)?.normalized();
        if pdp.l() > cfg.n_fft {
            return Err(Error::PdpTooLong { l: pdp.l(), n_fft: cfg.n_fft });
        }
        Ok(pdp)
    }

    /// Parses a plain-text tapped-delay-line table (columns `delay_ns
    /// power_db`, `#` comments) and quantizes it onto `cfg`'s grid.
    pub fn from_table(text: &str, cfg: &OfdmConfig) -> Result<Self, Error> {
        let mut delays = Vec::new();
        let mut powers = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<f64, Error> {
                tok.ok_or_else(|| Error::Parse(format!("line {}: expected two columns", no + 1)))?
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))
            };
            delays.push(parse(cols.next())?);
            powers.push(parse(cols.next())?);
        }
        Self::from_spec(&delays, &powers, cfg)
    }

    /// Loads a tapped-delay-line table from a file; see [`Self::from_table`].
    pub fn from_file(path: &Path, cfg: &OfdmConfig) -> Result<Self, Error> {
        Self::from_table(&std::fs::read_to_string(path)?, cfg)
    }

    /// The shipped Extended Typical Urban profile quantized onto `cfg`.
    pub fn etu(cfg: &OfdmConfig) -> Result<Self, Error> {
        Self::from_table(ETU_TABLE, cfg)
    }

    /// Synthetic exponentially decaying profile `E_p = e^{-p}` over
    /// `p = 0..len-1`, normalized to unit total energy.
    pub fn exponential(len: usize) -> Result<Self, Error> {
        let taps = (0..len).map(|p| (p, (-(p as f64)).exp())).collect();
        Ok(Self::new(taps)?.normalized())
    }

    /// Rescales energies so `alpha_sq(L) == 1`.
    pub fn normalized(&self) -> Self {
        let total: f64 = self.taps.iter().map(|&(_, e)| e).sum();
        Self { taps: self.taps.iter().map(|&(p, e)| (p, e / total)).collect() }
    }

    /// `(delay, energy)` pairs in increasing delay order.
    pub fn taps(&self) -> &[(usize, f64)] {
        &self.taps
    }

    /// Channel length in samples: max delay + 1.
    pub fn l(&self) -> usize {
        self.taps.last().unwrap().0 + 1
    }

    /// Partial energy `alpha_tau^2 = sum of E_p over delays p < tau`.
    pub fn alpha_sq(&self, tau: usize) -> f64 {
        self.taps.iter().filter(|&&(p, _)| p < tau).map(|&(_, e)| e).sum()
    }

    /// Total energy `alpha_L^2`.
    pub fn total_energy(&self) -> f64 {
        self.alpha_sq(self.l())
    }

    /// PDP energy autocorrelation `rho_m = sum_n E_n E_{n-m}` (out-of-range
    /// energies are zero), returned sparsely over delay differences.
    pub fn energy_autocorr(&self) -> Vec<(i64, f64)> {
        let mut acc: std::collections::BTreeMap<i64, f64> = std::collections::BTreeMap::new();
        for &(p, ep) in &self.taps {
            for &(q, eq) in &self.taps {
                *acc.entry(p as i64 - q as i64).or_insert(0.0) += ep * eq;
            }
        }
        acc.into_iter().collect()
    }
}

/// Exponential spatial correlation across the transmit array: adjacent
/// antennas correlate with magnitude `rho`, and each tap gets a random angle
/// of departure drawn uniformly from `aod_range` per realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialCorrelationSpec {
    pub rho: f64,
    pub aod_range: (f64, f64),
}

impl SpatialCorrelationSpec {
    pub fn new(rho: f64) -> Result<Self, Error> {
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::InvalidConfig(format!("correlation magnitude {rho} outside [0,1)")));
        }
        Ok(Self { rho, aod_range: (-PI / 3.0, PI / 3.0) })
    }

    /// Hermitian square root of the n_t x n_t correlation matrix for angle
    /// `phi`: with D = diag(e^{jk phi}) and T the real symmetric Toeplitz
    /// matrix rho^{|k-l|}, R^{1/2} = D sqrt(T) D^H. Only `sqrt(T)` needs an
    /// eigendecomposition; the phase is applied as diagonal scalings.
    pub fn sqrt_toeplitz(&self, n_t: usize) -> DMatrix<f64> {
        let t = DMatrix::from_fn(n_t, n_t, |k, l| self.rho.powi((k as i32 - l as i32).abs()));
        let eig = t.symmetric_eigen();
        // Clamp tiny negative eigenvalues (rho -> 1 makes T nearly singular).
        let sqrt_vals = eig.eigenvalues.map(|v| if v > 0.0 { v.sqrt() } else { 0.0 });
        &eig.eigenvectors * DMatrix::from_diagonal(&sqrt_vals) * eig.eigenvectors.transpose()
    }
}

/// One fading draw: a complex row vector of length `n_t` per PDP tap.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    n_t: usize,
    taps: Vec<(usize, Vec<Complex64>)>,
}

impl ChannelRealization {
    pub fn n_t(&self) -> usize {
        self.n_t
    }

    /// `(delay, h_p)` pairs in increasing delay order.
    pub fn taps(&self) -> &[(usize, Vec<Complex64>)] {
        &self.taps
    }

    /// Channel length in samples.
    pub fn l(&self) -> usize {
        self.taps.last().unwrap().0 + 1
    }

    /// Truncated frequency response at subcarrier `i`:
    /// `sum_{p < tau_tr} h_p e^{-j2pi i p / n_fft}`. `tau_tr = L` gives the
    /// full response.
    pub fn freq_response(&self, i: usize, tau_tr: usize, cfg: &OfdmConfig) -> Vec<Complex64> {
        let mut out = vec![Complex64::ZERO; self.n_t];
        for (p, h) in &self.taps {
            if *p >= tau_tr {
                break;
            }
            let phase = Complex64::from_polar(1.0, -2.0 * PI * (i * p) as f64 / cfg.n_fft as f64);
            for (o, v) in out.iter_mut().zip(h) {
                *o += v * phase;
            }
        }
        out
    }
}

/// Draws one channel realization: each entry of tap `p` is CN(0, E_p),
/// optionally shaped by the exponential spatial correlation model (a fresh
/// angle of departure per tap).
pub fn generate_cir<R: Rng + ?Sized>(
    pdp: &PowerDelayProfile,
    n_t: usize,
    correlation: Option<&SpatialCorrelationSpec>,
    rng: &mut R,
) -> ChannelRealization {
    let sqrt_t = correlation.map(|c| c.sqrt_toeplitz(n_t));
    let taps = pdp
        .taps()
        .iter()
        .map(|&(p, energy)| {
            let scale = (energy / 2.0).sqrt();
            let mut h: Vec<Complex64> = (0..n_t)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re * scale, im * scale)
                })
                .collect();
            if let (Some(sqrt_t), Some(corr)) = (&sqrt_t, correlation) {
                let (lo, hi) = corr.aod_range;
                let phi = rng.random_range(lo..=hi);
                h = apply_correlation(&h, sqrt_t, phi);
            }
            (p, h)
        })
        .collect();
    ChannelRealization { n_t, taps }
}

/// Computes `z R^{1/2}` for a row vector `z`, with `R^{1/2} = D S D^H`,
/// `S = sqrt(T)` real symmetric and `D = diag(e^{jk phi})`.
fn apply_correlation(z: &[Complex64], sqrt_t: &DMatrix<f64>, phi: f64) -> Vec<Complex64> {
    let n = z.len();
    // u = z D
    let u: Vec<Complex64> =
        z.iter().enumerate().map(|(k, v)| v * Complex64::from_polar(1.0, k as f64 * phi)).collect();
    // v = u S (S symmetric real), then h = v D^H
    (0..n)
        .map(|l| {
            let mut acc = Complex64::ZERO;
            for (k, uv) in u.iter().enumerate() {
                acc += uv * sqrt_t[(k, l)];
            }
            acc * Complex64::from_polar(1.0, -(l as f64) * phi)
        })
        .collect()
}
