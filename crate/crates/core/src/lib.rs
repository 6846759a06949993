//! Digital pulse interval modulation (DPIM) and its barrier-signal variant
//! (BDPIM) for intensity-modulation / direct-detection optical links.
//!
//! The crate is organised bottom-up:
//!
//! * [`signal`] maps bits to chip sequences (DPIM, BDPIM, PPM, MDPIM, DHPIM) and back.
//! * [`channel`] adds Gaussian noise and Gamma-Gamma turbulence fading.
//! * [`detect`] holds the threshold, sort-based, exhaustive and two-phase barrier detectors.
//! * [`bounds`] evaluates chip error probabilities, order-statistic comparisons
//!   and the approximate BER upper bounds for the four detection schemes.
//! * [`coding`] is the rate-1/2 convolutional code, block interleaver and Viterbi decoder.
//! * [`optimize`] searches barrier amplitudes and SNR thresholds.
//! * [`harness`] runs deterministic Monte Carlo sweeps and writes CSV.
//!
//! ```
//! use bdpim::signal::{map_dpim, demap_dpim, ModulationSpec};
//!
//! let spec = ModulationSpec::new(4, 1).unwrap();
//! let frame = map_dpim(&[0, 0, 0, 1], &spec, 1.0).unwrap();
//! assert_eq!(frame.chips(), &[1.0, 0.0, 1.0, 0.0, 0.0]);
//! let out = demap_dpim(frame.chips(), &spec, Some(2)).unwrap();
//! assert_eq!(out.bits, vec![0, 0, 0, 1]);
//! ```

pub mod bounds;
pub mod channel;
pub mod coding;
pub mod detect;
mod error;
pub mod harness;
pub mod optimize;
pub mod quadrature;
pub mod signal;
pub mod special;

pub use error::{Error, Result};
