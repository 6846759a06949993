use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("bit length {len} is not a multiple of {bits_per_symbol} bits per symbol")]
    BitLength { len: usize, bits_per_symbol: usize },

    #[error("symbol count {symbols} is not divisible by barrier period {period}")]
    SymbolCount { symbols: usize, period: usize },

    #[error("requested {pulses} pulses from a {len}-chip sequence")]
    TooManyPulses { pulses: usize, len: usize },

    #[error("exhaustive search needs {candidates} candidates, cap is {cap}")]
    EnumerationCap { candidates: f64, cap: f64 },

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e}")]
    Quadrature { estimate: f64, error: f64 },

    #[error("target BER {target:e} not bracketed by [{lo} dB, {hi} dB]")]
    NotBracketed { target: f64, lo: f64, hi: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EnumerationCap { .. }
            | Error::Quadrature { .. }
            | Error::NotBracketed { .. } => 3,
            Error::Io(_) | Error::Csv(_) => 1,
            _ => 2,
        }
    }
}
