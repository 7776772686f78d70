//! Finds the array size at which CP-free matched filtering overtakes
//! truncated precoding on ETU, using the deterministic finite-size
//! approximations (no Monte-Carlo).

use ofdm_shorten::channel::PowerDelayProfile;
use ofdm_shorten::dsp::OfdmConfig;
use ofdm_shorten::finite_size::{GammaTfTable, GammaTrTable};

fn main() {
    let cfg = OfdmConfig::new(2048, 144, 600, 60e3).unwrap();
    let cfg_no_cp = OfdmConfig::new(2048, 0, 600, 60e3).unwrap();
    let pdp = PowerDelayProfile::etu(&cfg).unwrap();
    let tf = GammaTfTable::new(&pdp, 145, &cfg);
    let tr = GammaTrTable::new(&pdp, &cfg_no_cp, 0);
    println!("truncated precoding (tau = 145, normal CP) vs matched filtering (no CP)");
    println!("{:>8} {:>10} {:>14} {:>14}", "SNR_op", "crossing", "tf @ crossing", "tr @ crossing");
    for snr_db in [25.0f64, 30.0, 35.0, 40.0] {
        let snr_op = 10f64.powf(snr_db / 10.0);
        let cross = (2..=600)
            .find(|&n| tr.rate(n, snr_op) > tf.rate(n, snr_op))
            .expect("no crossing up to n_t = 600");
        println!(
            "{snr_db:>6} dB {cross:>10} {:>14.4} {:>14.4}",
            tf.rate(cross, snr_op),
            tr.rate(cross, snr_op)
        );
    }
}
