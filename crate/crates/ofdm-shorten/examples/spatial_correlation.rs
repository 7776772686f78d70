//! Effect of transmit-side spatial correlation on the Monte-Carlo rates of
//! truncated precoding and CP-free matched filtering.

use ofdm_shorten::channel::{PowerDelayProfile, SpatialCorrelationSpec};
use ofdm_shorten::dsp::OfdmConfig;
use ofdm_shorten::linksim::{mc_rate, LinkScenario, Scheme, SnrAxis};

fn main() {
    let snr_op_db = 30.0;
    let n_t = 32;
    println!("exponential PDP, n_t = {n_t}, snr_op = {snr_op_db} dB, 600 realizations");
    println!("{:>6} {:>16} {:>16}", "rho", "tf rate", "tr rate");
    for rho in [0.0f64, 0.3, 0.6, 0.9] {
        let correlation =
            if rho == 0.0 { None } else { Some(SpatialCorrelationSpec::new(rho).unwrap()) };
        let rate = |scheme, n_cp| {
            let cfg = OfdmConfig::new(32, n_cp, 12, 60e3).unwrap();
            let sc = LinkScenario {
                cfg,
                pdp: PowerDelayProfile::exponential(32).unwrap(),
                scheme,
                n_t,
                correlation: correlation.clone(),
                qam_order: 4,
                snr_db: vec![snr_op_db],
                snr_axis: SnrAxis::Operational,
                trials: 600,
                seed: 5,
            };
            let p = &mc_rate(&sc).unwrap()[0];
            format!("{:.4} ± {:.4}", p.rate_bps_hz, p.half_width)
        };
        println!("{rho:>6} {:>16} {:>16}", rate(Scheme::Tf { tau_tr: 4 }, 2), rate(Scheme::Tr, 0));
    }
}
