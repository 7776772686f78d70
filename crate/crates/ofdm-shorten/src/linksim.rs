//! Time-domain Monte-Carlo link simulation: full transmit/channel/receive
//! chains for both air interfaces, SER/BLER/throughput measurement and
//! Monte-Carlo rate averaging.
//!
//! Chains are simulated sample-exactly. For the precoded link the
//! per-antenna signals are never materialized: the received stream only
//! depends on the per-tap scalars `h_p . w_l`, so each tap contributes one
//! IFFT per block. The TR link convolves the common OFDM signal with the
//! effective autocorrelation channel `g[n]` directly, which is exact.
//! Subframes are 14 measured blocks wrapped in dummy blocks so edge blocks
//! see physical inter-block interference.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::channel::{generate_cir, ChannelRealization, PowerDelayProfile, SpatialCorrelationSpec};
use crate::dsp::{FftPair, OfdmConfig, QamConstellation};
use crate::error::Error;
use crate::precoding::{effective_channels, f_precoder, sinr_tf, tf_precoder, PrecoderSet};
use crate::trfilter::{sinr_tr, tr_channels, tr_desired_gains, tr_effective_channel, TrEffectiveChannel};

/// Blocks per subframe sharing one channel realization.
pub const BLOCKS_PER_SUBFRAME: usize = 14;

/// Air interface under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Conventional full-response MRT.
    F,
    /// Truncated-response MRT with the given threshold.
    Tf { tau_tr: usize },
    /// Time-reversal matched filtering (CP length comes from the scenario's
    /// numerology; use `n_cp = 0` for the CP-free variant).
    Tr,
}

/// How the SNR grid of a scenario is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnrAxis {
    /// Values are per-antenna SNR in dB.
    PerAntenna,
    /// Values are operational SNR `n_t * snr` in dB; the chain divides by
    /// `n_t` explicitly.
    Operational,
}

/// Complete description of one link experiment.
#[derive(Debug, Clone)]
pub struct LinkScenario {
    pub cfg: OfdmConfig,
    pub pdp: PowerDelayProfile,
    pub scheme: Scheme,
    pub n_t: usize,
    pub correlation: Option<SpatialCorrelationSpec>,
    pub qam_order: usize,
    pub snr_db: Vec<f64>,
    pub snr_axis: SnrAxis,
    /// Subframes per SNR point.
    pub trials: usize,
    pub seed: u64,
}

impl LinkScenario {
    /// Per-antenna linear SNR at grid point `idx`.
    pub fn snr_linear(&self, idx: usize) -> f64 {
        let v = 10f64.powf(self.snr_db[idx] / 10.0);
        match self.snr_axis {
            SnrAxis::PerAntenna => v,
            SnrAxis::Operational => v / self.n_t as f64,
        }
    }

    /// Deterministic RNG for (grid point, trial), independent of scheduling.
    fn trial_rng(&self, point: usize, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((point as u64) << 32) | trial as u64);
        rng
    }
}

/// Error counts of one simulated subframe.
#[derive(Debug, Clone, Copy, Default)]
pub struct SubframeCounts {
    pub symbol_errors: u64,
    pub symbols: u64,
    pub block_errors: u64,
    pub blocks: u64,
}

impl SubframeCounts {
    fn merge(mut self, other: Self) -> Self {
        self.symbol_errors += other.symbol_errors;
        self.symbols += other.symbols;
        self.block_errors += other.block_errors;
        self.blocks += other.blocks;
        self
    }
}

/// One SNR point of a finished link run.
#[derive(Debug, Clone)]
pub struct LinkPoint {
    pub snr_db: f64,
    pub ser: f64,
    pub ser_half_width: f64,
    pub bler: f64,
    pub bler_half_width: f64,
    pub throughput_bps_hz: f64,
    pub symbols: u64,
    pub blocks: u64,
}

/// Aggregated link-level results over the scenario's SNR grid.
#[derive(Debug, Clone)]
pub struct LinkResult {
    pub points: Vec<LinkPoint>,
}

/// One SNR point of a Monte-Carlo rate average.
#[derive(Debug, Clone)]
pub struct McRatePoint {
    pub snr_db: f64,
    pub rate_bps_hz: f64,
    pub half_width: f64,
}

/// Builds the CP-extended scalar OFDM block `(1/sqrt(n_sc)) sum_l X_l
/// e^{j2pi l k / n_fft}` for `k` in `[-n_cp, n_fft-1]`.
pub fn scalar_ofdm_block(symbols: &[Complex64], cfg: &OfdmConfig, fft: &FftPair) -> Vec<Complex64> {
    let mut spec = vec![Complex64::ZERO; cfg.n_fft];
    let scale = 1.0 / (cfg.n_sc as f64).sqrt();
    for (l, &x) in symbols.iter().enumerate() {
        spec[l] = x * scale;
    }
    fft.inverse_unscaled_in_place(&mut spec);
    let mut block = Vec::with_capacity(cfg.block_len());
    block.extend_from_slice(&spec[cfg.n_fft - cfg.n_cp..]);
    block.extend_from_slice(&spec);
    block
}

/// Noiseless received stream of the precoded link for consecutive blocks of
/// frequency-domain symbols. Block `b` occupies stream samples
/// `[b*block_len, (b+1)*block_len)`, with the CP first; the tail of the
/// final convolution is dropped.
pub fn tf_received_stream(
    cfg: &OfdmConfig,
    cir: &ChannelRealization,
    precoders: &PrecoderSet,
    blocks: &[Vec<Complex64>],
) -> Vec<Complex64> {
    let fft = FftPair::new(cfg.n_fft);
    let stream_len = blocks.len() * cfg.block_len();
    let mut r = vec![Complex64::ZERO; stream_len];
    // per-tap projections h_p . w_l
    let dots: Vec<Vec<Complex64>> = cir
        .taps()
        .iter()
        .map(|(_, h)| {
            (0..cfg.n_sc)
                .map(|l| h.iter().zip(precoders.vector(l)).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    for (b, symbols) in blocks.iter().enumerate() {
        for (t, (p, _)) in cir.taps().iter().enumerate() {
            // scalar contribution of tap p: OFDM block built on h_p . w_l x_l
            let projected: Vec<Complex64> =
                symbols.iter().enumerate().map(|(l, &x)| dots[t][l] * x).collect();
            let block = scalar_ofdm_block(&projected, cfg, &fft);
            let base = b * cfg.block_len() + p;
            for (k, &v) in block.iter().enumerate() {
                if base + k < stream_len {
                    r[base + k] += v;
                }
            }
        }
    }
    r
}

/// Noiseless received stream of the TR link: the common OFDM signal
/// convolved with the non-causal effective channel `g[n]`. Same block
/// layout as [`tf_received_stream`].
pub fn tr_received_stream(
    cfg: &OfdmConfig,
    ch: &TrEffectiveChannel,
    blocks: &[Vec<Complex64>],
) -> Vec<Complex64> {
    let fft = FftPair::new(cfg.n_fft);
    let stream_len = blocks.len() * cfg.block_len();
    let mut t_stream = Vec::with_capacity(stream_len);
    for symbols in blocks {
        t_stream.extend(scalar_ofdm_block(symbols, cfg, &fft));
    }
    let mut r = vec![Complex64::ZERO; stream_len];
    for (n, gv) in ch.support() {
        for k in 0..stream_len {
            let src = k as i64 - n;
            if (0..stream_len as i64).contains(&src) {
                r[k] += gv * t_stream[src as usize];
            }
        }
    }
    r
}

fn add_awgn<R: Rng + ?Sized>(r: &mut [Complex64], sigma_z_sq: f64, rng: &mut R) {
    let s = (sigma_z_sq / 2.0).sqrt();
    for v in r.iter_mut() {
        *v += Complex64::new(
            rng.sample::<f64, _>(StandardNormal) * s,
            rng.sample::<f64, _>(StandardNormal) * s,
        );
    }
}

/// Demodulates block `b` of a received stream: FFT of the n_fft-sample
/// window starting `offset` samples past the block's CP, scaled by
/// `sqrt(n_sc)/n_fft`, returning the occupied bins.
fn demodulate(
    r: &[Complex64],
    b: usize,
    offset: i64,
    cfg: &OfdmConfig,
    fft: &FftPair,
) -> Vec<Complex64> {
    let start = (b * cfg.block_len() + cfg.n_cp) as i64 + offset;
    let mut buf: Vec<Complex64> = (0..cfg.n_fft as i64)
        .map(|k| {
            let idx = start + k;
            if (0..r.len() as i64).contains(&idx) { r[idx as usize] } else { Complex64::ZERO }
        })
        .collect();
    fft.forward_in_place(&mut buf);
    let scale = (cfg.n_sc as f64).sqrt() / cfg.n_fft as f64;
    buf.truncate(cfg.n_sc);
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

fn random_block<R: Rng + ?Sized>(
    qam: &QamConstellation,
    n_sc: usize,
    rng: &mut R,
) -> (Vec<usize>, Vec<Complex64>) {
    let indices: Vec<usize> = (0..n_sc).map(|_| rng.random_range(0..qam.order())).collect();
    let symbols = qam.map(&indices);
    (indices, symbols)
}

fn detect_and_count(
    received: &[Complex64],
    sent: &[usize],
    gains: &[Complex64],
    qam: &QamConstellation,
    counts: &mut SubframeCounts,
) -> Result<(), Error> {
    let mut block_errs = 0u64;
    for ((&y, &idx), &h) in received.iter().zip(sent).zip(gains) {
        if qam.detect(y, h)? != idx {
            block_errs += 1;
        }
    }
    counts.symbol_errors += block_errs;
    counts.symbols += sent.len() as u64;
    counts.block_errors += (block_errs > 0) as u64;
    counts.blocks += 1;
    Ok(())
}

/// Simulates one precoded subframe (dummy lead-in block plus 14 measured
/// blocks) over a fixed realization and returns the error counts.
pub fn simulate_subframe_tf<R: Rng + ?Sized>(
    scenario: &LinkScenario,
    cir: &ChannelRealization,
    snr: f64,
    rng: &mut R,
) -> Result<SubframeCounts, Error> {
    let cfg = &scenario.cfg;
    let qam = QamConstellation::new(scenario.qam_order)?;
    let precoders = match scenario.scheme {
        Scheme::F => f_precoder(cir, cfg)?,
        Scheme::Tf { tau_tr } => tf_precoder(cir, tau_tr, cfg)?,
        Scheme::Tr => {
            return Err(Error::InvalidConfig("TR scenario routed to the precoded chain".into()))
        }
    };
    let gains = crate::precoding::desired_gains(cir, &precoders, cfg);
    let mut sent = Vec::with_capacity(BLOCKS_PER_SUBFRAME + 1);
    let mut blocks = Vec::with_capacity(BLOCKS_PER_SUBFRAME + 1);
    for _ in 0..BLOCKS_PER_SUBFRAME + 1 {
        let (idx, sym) = random_block(&qam, cfg.n_sc, rng);
        sent.push(idx);
        blocks.push(sym);
    }
    let mut r = tf_received_stream(cfg, cir, &precoders, &blocks);
    add_awgn(&mut r, cfg.n_fft as f64 / cfg.n_sc as f64 / snr, rng);
    let fft = FftPair::new(cfg.n_fft);
    let mut counts = SubframeCounts::default();
    for b in 1..=BLOCKS_PER_SUBFRAME {
        let y = demodulate(&r, b, 0, cfg, &fft);
        detect_and_count(&y, &sent[b], &gains, &qam, &mut counts)?;
    }
    Ok(counts)
}

/// Simulates one TR subframe (dummy blocks on both sides, since the
/// demodulated signal depends on the previous *and* next block).
pub fn simulate_subframe_tr<R: Rng + ?Sized>(
    scenario: &LinkScenario,
    cir: &ChannelRealization,
    snr: f64,
    rng: &mut R,
) -> Result<SubframeCounts, Error> {
    let cfg = &scenario.cfg;
    let qam = QamConstellation::new(scenario.qam_order)?;
    let ch = tr_effective_channel(cir, cfg);
    let gains = tr_desired_gains(&ch, cfg);
    let mut sent = Vec::with_capacity(BLOCKS_PER_SUBFRAME + 2);
    let mut blocks = Vec::with_capacity(BLOCKS_PER_SUBFRAME + 2);
    for _ in 0..BLOCKS_PER_SUBFRAME + 2 {
        let (idx, sym) = random_block(&qam, cfg.n_sc, rng);
        sent.push(idx);
        blocks.push(sym);
    }
    let mut r = tr_received_stream(cfg, &ch, &blocks);
    add_awgn(&mut r, cfg.n_fft as f64 / cfg.n_sc as f64 / snr, rng);
    let fft = FftPair::new(cfg.n_fft);
    let mut counts = SubframeCounts::default();
    let offset = -(ch.delta() as i64);
    for b in 1..=BLOCKS_PER_SUBFRAME {
        let y = demodulate(&r, b, offset, cfg, &fft);
        detect_and_count(&y, &sent[b], &gains, &qam, &mut counts)?;
    }
    Ok(counts)
}

/// Runs the full scenario: independent subframes (fresh channel each) per
/// SNR point, parallelized with deterministic per-trial seeding.
pub fn run_link(scenario: &LinkScenario) -> Result<LinkResult, Error> {
    let mut points = Vec::with_capacity(scenario.snr_db.len());
    for (pt, &snr_db) in scenario.snr_db.iter().enumerate() {
        let snr = scenario.snr_linear(pt);
        let counts = (0..scenario.trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = scenario.trial_rng(pt, trial);
                let cir = generate_cir(
                    &scenario.pdp,
                    scenario.n_t,
                    scenario.correlation.as_ref(),
                    &mut rng,
                );
                match scenario.scheme {
                    Scheme::Tr => simulate_subframe_tr(scenario, &cir, snr, &mut rng),
                    _ => simulate_subframe_tf(scenario, &cir, snr, &mut rng),
                }
            })
            .try_reduce(SubframeCounts::default, |a, b| Ok(a.merge(b)))?;
        let ser = counts.symbol_errors as f64 / counts.symbols as f64;
        let bler = counts.block_errors as f64 / counts.blocks as f64;
        let half = |p: f64, n: u64| 1.96 * (p * (1.0 - p) / n as f64).sqrt();
        let cp_factor = scenario.cfg.n_fft as f64 / scenario.cfg.block_len() as f64;
        points.push(LinkPoint {
            snr_db,
            ser,
            ser_half_width: half(ser, counts.symbols),
            bler,
            bler_half_width: half(bler, counts.blocks),
            throughput_bps_hz: (scenario.qam_order as f64).log2() * cp_factor * (1.0 - bler),
            symbols: counts.symbols,
            blocks: counts.blocks,
        });
    }
    Ok(LinkResult { points })
}

/// Monte-Carlo average of the per-realization rate formulas (not the link
/// chain) over fresh channels — the reference curve for the finite-size
/// approximations.
pub fn mc_rate(scenario: &LinkScenario) -> Result<Vec<McRatePoint>, Error> {
    let mut out = Vec::with_capacity(scenario.snr_db.len());
    for (pt, &snr_db) in scenario.snr_db.iter().enumerate() {
        let snr = scenario.snr_linear(pt);
        let rates: Vec<f64> = (0..scenario.trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = scenario.trial_rng(pt, trial);
                let cir = generate_cir(
                    &scenario.pdp,
                    scenario.n_t,
                    scenario.correlation.as_ref(),
                    &mut rng,
                );
                match scenario.scheme {
                    Scheme::Tr => {
                        let ch = tr_effective_channel(&cir, &scenario.cfg);
                        let coeffs = tr_channels(&ch, &scenario.cfg);
                        Ok(sinr_tr(&coeffs, snr, &scenario.cfg).rate_bps_hz)
                    }
                    Scheme::F | Scheme::Tf { .. } => {
                        let w = match scenario.scheme {
                            Scheme::F => f_precoder(&cir, &scenario.cfg)?,
                            Scheme::Tf { tau_tr } => tf_precoder(&cir, tau_tr, &scenario.cfg)?,
                            Scheme::Tr => unreachable!(),
                        };
                        let eff = effective_channels(&cir, &w, &scenario.cfg);
                        Ok(sinr_tf(&eff, snr, &scenario.cfg).rate_bps_hz)
                    }
                }
            })
            .collect::<Result<_, Error>>()?;
        let n = rates.len() as f64;
        let mean = rates.iter().sum::<f64>() / n;
        let var = rates.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
        out.push(McRatePoint {
            snr_db,
            rate_bps_hz: mean,
            half_width: 1.96 * (var / n).sqrt(),
        });
    }
    Ok(out)
}
