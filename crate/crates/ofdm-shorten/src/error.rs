//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates a structural invariant (bad numerology, bad QAM
    /// order, inconsistent dimensions, ...).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// An effective channel gain is exactly zero, so equalization or
    /// precoder normalization is impossible. Probability zero under the
    /// Rayleigh model, but reachable with hand-crafted inputs.
    #[error("degenerate channel realization (zero effective gain)")]
    DegenerateChannel,

    /// The quantized delay spread does not fit inside one OFDM symbol.
    #[error("PDP delay spread too long: L={l} exceeds n_fft={n_fft}")]
    PdpTooLong { l: usize, n_fft: usize },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed text input (PDP table or experiment config).
    #[error("parse error: {0}")]
    Parse(String),
}
