//! Rate-1/2 convolutional code with generators `1 + D + D²` and `1 + D²`
//! (7, 5 in octal), zero-tail terminated, plus a row-column block
//! interleaver and a hard-decision Viterbi decoder.

use log::debug;

use crate::{Error, Result};

/// Memory of the encoder; also the number of tail bits.
pub const MEMORY: usize = 2;
const STATES: usize = 1 << MEMORY;

/// The encoder state holds the previous two inputs, most recent in the high bit.
fn step(state: usize, bit: u8) -> (usize, [u8; 2]) {
    let s1 = ((state >> 1) & 1) as u8;
    let s2 = (state & 1) as u8;
    let out = [bit ^ s1 ^ s2, bit ^ s2];
    (((bit as usize) << 1) | (state >> 1), out)
}

/// Encodes `bits` followed by two zero tail bits; the output has
/// `2·(len + 2)` bits.
pub fn conv_encode(bits: &[u8]) -> Vec<u8> {
    let mut state = 0;
    let mut out = Vec::with_capacity(2 * (bits.len() + MEMORY));
    for &b in bits.iter().chain([0u8; MEMORY].iter()) {
        let (next, pair) = step(state, b & 1);
        out.extend_from_slice(&pair);
        state = next;
    }
    out
}

/// Information bits carried by `coded_len` coded bits.
pub fn info_len(coded_len: usize) -> Result<usize> {
    if coded_len % 2 != 0 || coded_len < 2 * MEMORY {
        return Err(Error::InvalidParameter(format!(
            "coded length must be even and at least {}, got {coded_len}",
            2 * MEMORY
        )));
    }
    Ok(coded_len / 2 - MEMORY)
}

/// Maximum-likelihood decoding under the Hamming metric, traced back from
/// the zero state. Equal metrics keep the predecessor with the smaller index.
pub fn viterbi_decode(coded: &[u8]) -> Result<Vec<u8>> {
    let n_info = info_len(coded.len())?;
    let steps = coded.len() / 2;
    const UNREACHED: u32 = u32::MAX / 2;
    let mut metric = [UNREACHED; STATES];
    metric[0] = 0;
    // survivors[t][s] = (predecessor, input bit)
    let mut survivors: Vec<[(u8, u8); STATES]> = Vec::with_capacity(steps);
    for t in 0..steps {
        let rx = [coded[2 * t] & 1, coded[2 * t + 1] & 1];
        let mut next = [UNREACHED; STATES];
        let mut surv = [(0u8, 0u8); STATES];
        for prev in 0..STATES {
            if metric[prev] >= UNREACHED {
                continue;
            }
            for bit in 0..2u8 {
                let (to, out) = step(prev, bit);
                let m = metric[prev] + (out[0] ^ rx[0]) as u32 + (out[1] ^ rx[1]) as u32;
                // `prev` ascends, so strict `<` keeps the smaller predecessor on ties.
                if m < next[to] {
                    next[to] = m;
                    surv[to] = (prev as u8, bit);
                }
            }
        }
        metric = next;
        survivors.push(surv);
    }
    let mut bits = vec![0u8; steps];
    let mut state = 0usize;
    for t in (0..steps).rev() {
        let (prev, bit) = survivors[t][state];
        bits[t] = bit;
        state = prev as usize;
    }
    bits.truncate(n_info);
    Ok(bits)
}

/// Row-column block interleaver: bits are written into rows of `depth`
/// and read out column by column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockInterleaver {
    depth: usize,
}

impl BlockInterleaver {
    pub fn new(depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidParameter(
                "interleaver depth must be at least 1".into(),
            ));
        }
        Ok(Self { depth })
    }

    /// Depth `K·log2(M)`.
    pub fn for_barrier(period: usize, bits_per_symbol: usize) -> Result<Self> {
        Self::new(period * bits_per_symbol)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Length after zero padding to a whole number of rows.
    pub fn padded_len(&self, len: usize) -> usize {
        len.div_ceil(self.depth) * self.depth
    }

    /// Interleaves `bits`, zero-padding the last row if needed.
    pub fn interleave(&self, bits: &[u8]) -> Vec<u8> {
        let len = self.padded_len(bits.len());
        if len != bits.len() {
            debug!("interleaver padded {} bits to {len}", bits.len());
        }
        let rows = len / self.depth;
        let mut out = vec![0u8; len];
        for (i, &b) in bits.iter().enumerate() {
            let (r, c) = (i / self.depth, i % self.depth);
            out[c * rows + r] = b;
        }
        out
    }

    /// Inverse of [`interleave`](Self::interleave); the input must fill whole rows.
    pub fn deinterleave(&self, bits: &[u8]) -> Result<Vec<u8>> {
        if bits.len() % self.depth != 0 {
            return Err(Error::InvalidParameter(format!(
                "deinterleaver input of {} bits does not fill rows of {}",
                bits.len(),
                self.depth
            )));
        }
        let rows = bits.len() / self.depth;
        let mut out = vec![0u8; bits.len()];
        for (i, o) in out.iter_mut().enumerate() {
            let (r, c) = (i / self.depth, i % self.depth);
            *o = bits[c * rows + r];
        }
        Ok(out)
    }
}
