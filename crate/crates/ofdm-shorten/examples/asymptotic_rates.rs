//! Infinite-antenna rates of the competing schemes on ETU versus the
//! operational SNR: optimally truncated precoding, full-response precoding,
//! CP-edge truncation and CP-free matched filtering.

use ofdm_shorten::asymptotics::{optimize_threshold, rate_inf_tf, rate_inf_tr};
use ofdm_shorten::channel::PowerDelayProfile;
use ofdm_shorten::dsp::OfdmConfig;

fn main() {
    let cfg = OfdmConfig::new(2048, 144, 600, 60e3).unwrap();
    let pdp = PowerDelayProfile::etu(&cfg).unwrap();
    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10}",
        "SNR_op", "tf(opt)", "full", "cp-edge", "tr(no CP)"
    );
    for snr_db in (0..=40).step_by(4) {
        let snr_op = 10f64.powf(snr_db as f64 / 10.0);
        let tau = optimize_threshold(&pdp, snr_op, &cfg);
        println!(
            "{snr_db:>6} dB {:>10.3} {:>10.3} {:>10.3} {:>10.3}",
            rate_inf_tf(&pdp, tau, snr_op, &cfg),
            rate_inf_tf(&pdp, pdp.l(), snr_op, &cfg),
            rate_inf_tf(&pdp, cfg.n_cp + 1, snr_op, &cfg),
            rate_inf_tr(&pdp, snr_op),
        );
    }
}
