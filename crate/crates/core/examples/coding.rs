//! Shows how the block interleaver spreads a chip-error burst so that the
//! rate-1/2 Viterbi decoder can correct it.

use bdpim::coding::{conv_encode, viterbi_decode, BlockInterleaver};

fn main() -> bdpim::Result<()> {
    let info: Vec<u8> = (0..98).map(|i| ((i * 13 + i / 5) % 2) as u8).collect();
    let coded = conv_encode(&info);
    let il = BlockInterleaver::for_barrier(10, 2)?;
    println!(
        "{} info bits -> {} coded bits, interleaver depth {}",
        info.len(),
        coded.len(),
        il.depth()
    );

    let burst = 40..52;
    let mut plain = coded.clone();
    let mut spread = il.interleave(&coded);
    for i in burst.clone() {
        plain[i] ^= 1;
        spread[i] ^= 1;
    }

    let count = |rx: &[u8]| info.iter().zip(rx).filter(|(a, b)| a != b).count();
    let direct = viterbi_decode(&plain)?;
    let through = viterbi_decode(&il.deinterleave(&spread)?)?;
    println!("burst of {} flipped bits", burst.len());
    println!("  without interleaver: {} info errors", count(&direct));
    println!("  with interleaver:    {} info errors", count(&through));
    Ok(())
}
