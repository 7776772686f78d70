//! Sweeps the operational SNR and reports the asymptotically optimal
//! truncation threshold on the ETU profile, together with the rates of the
//! candidate thresholds.

use ofdm_shorten::asymptotics::{optimize_threshold, rate_inf_tf, threshold_candidates};
use ofdm_shorten::channel::PowerDelayProfile;
use ofdm_shorten::dsp::OfdmConfig;

fn main() {
    let cfg = OfdmConfig::new(2048, 144, 600, 60e3).unwrap();
    let pdp = PowerDelayProfile::etu(&cfg).unwrap();
    let candidates = threshold_candidates(&pdp, &cfg);
    println!("ETU at 60 kHz: L = {}, candidate thresholds {candidates:?}", pdp.l());
    println!("{:>8} {:>8} {}", "SNR_op", "tau*", "rate per candidate [bps/Hz]");
    for snr_db in (0..=40).step_by(5) {
        let snr_op = 10f64.powf(snr_db as f64 / 10.0);
        let best = optimize_threshold(&pdp, snr_op, &cfg);
        let rates: Vec<String> = candidates
            .iter()
            .map(|&tau| format!("{:.3}", rate_inf_tf(&pdp, tau, snr_op, &cfg)))
            .collect();
        println!("{snr_db:>6} dB {best:>8} {}", rates.join("  "));
    }
}
