//! Multi-antenna OFDM downlink with insufficient cyclic prefix: channel
//! shortening by precoding and filtering.
//!
//! The crate models a single-user massive-MIMO OFDM link whose channel delay
//! spread exceeds the cyclic prefix, and provides three transmitter-side
//! countermeasures together with their exact and approximate performance
//! analysis:
//!
//! - **F-precoding** — conventional per-subcarrier maximum-ratio
//!   transmission ([`precoding`]);
//! - **TF-precoding** — MRT built from a *truncated* impulse response, which
//!   shortens the effective channel ([`precoding`]);
//! - **TR-filtering** — per-antenna time-reversed conjugate filtering of a
//!   common OFDM signal ([`trfilter`]).
//!
//! Analysis layers:
//!
//! - exact per-realization SINR/rate via closed-form effective-channel
//!   coefficients ([`precoding`], [`trfilter`]);
//! - infinite-antenna limits and truncation-threshold optimization
//!   ([`asymptotics`]);
//! - deterministic finite-antenna rate approximations ([`finite_size`]);
//! - time-domain Monte-Carlo link simulation with QAM, ML detection, SER and
//!   throughput ([`linksim`]);
//! - experiment presets and CSV output ([`experiment`]).

pub mod asymptotics;
pub mod channel;
pub mod dsp;
pub mod error;
pub mod experiment;
pub mod finite_size;
pub mod linksim;
pub mod precoding;
pub mod trfilter;

pub use error::Error;
