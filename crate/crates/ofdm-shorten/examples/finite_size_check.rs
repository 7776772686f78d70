//! Compares the deterministic finite-size rate approximations against
//! Monte-Carlo averages of the exact per-realization rates on a small
//! numerology, for both the precoded and the matched-filter link.

use ofdm_shorten::channel::PowerDelayProfile;
use ofdm_shorten::dsp::OfdmConfig;
use ofdm_shorten::finite_size::{GammaTfTable, GammaTrTable};
use ofdm_shorten::linksim::{mc_rate, LinkScenario, Scheme, SnrAxis};

fn main() {
    let cfg = OfdmConfig::new(32, 2, 12, 60e3).unwrap();
    let pdp = PowerDelayProfile::exponential(32).unwrap();
    let tau = 4;
    let snr_op_db = 30.0;
    let snr_op = 10f64.powf(snr_op_db / 10.0);
    let tf = GammaTfTable::new(&pdp, tau, &cfg);
    let tr = GammaTrTable::new(&pdp, &cfg, cfg.n_cp / 2);
    println!("exponential PDP, snr_op = {snr_op_db} dB, 800 realizations per point");
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12}",
        "n_t", "tf approx", "tf MC", "tr approx", "tr MC"
    );
    for n_t in [2usize, 5, 10, 20, 50, 100] {
        let mc = |scheme| {
            let sc = LinkScenario {
                cfg,
                pdp: pdp.clone(),
                scheme,
                n_t,
                correlation: None,
                qam_order: 4,
                snr_db: vec![snr_op_db],
                snr_axis: SnrAxis::Operational,
                trials: 800,
                seed: 1,
            };
            mc_rate(&sc).unwrap()[0].rate_bps_hz
        };
        println!(
            "{n_t:>6} {:>12.4} {:>12.4} {:>12.4} {:>12.4}",
            tf.rate(n_t, snr_op),
            mc(Scheme::Tf { tau_tr: tau }),
            tr.rate(n_t, snr_op),
            mc(Scheme::Tr),
        );
    }
}
