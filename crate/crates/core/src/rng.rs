//! Splittable deterministic random streams.
//!
//! Every sampler in this crate takes a `u64` seed and owes bitwise-identical
//! output for identical seeds, on any platform and under any thread schedule.
//! Parallel drivers get independence by deriving one child stream per work
//! item from `(master seed, tag, index)` instead of sharing a generator.
//!
//! Derivation mixes the key material through splitmix64 into a 256-bit
//! ChaCha8 key. ChaCha8 is a counter-mode stream cipher, so child streams
//! with different keys are statistically independent for simulation purposes,
//! and splitmix64's finalizer separates adjacent tags/indices.

use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

/// splitmix64 output function: advances `state` by the golden-ratio increment
/// and returns the finalized mix of the new state.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Collapses arbitrary key material into a single well-mixed u64.
///
/// Each word is absorbed by xoring into the running state and then passing
/// through the splitmix64 finalizer, so permuting or truncating the tag list
/// changes the result.
pub fn mix_key(words: &[u64]) -> u64 {
    let mut state: u64 = 0x243F6A8885A308D3; // arbitrary non-zero start
    let mut acc: u64 = 0;
    for &w in words {
        state ^= w;
        acc = splitmix64(&mut state);
    }
    acc
}

/// A deterministic child stream keyed by a master seed plus tag words.
///
/// Typical use: `derive_rng(master, &[n as u64, replica, STREAM_WALK])` gives
/// every (walk length, replica) pair its own stream, independent of how work
/// is scheduled across threads.
pub fn derive_rng(master: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut words = Vec::with_capacity(tags.len() + 2);
    words.push(master);
    words.push(tags.len() as u64);
    words.extend_from_slice(tags);
    let mut s = mix_key(&words);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut s).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Stream tag for walk sampling.
pub const STREAM_WALK: u64 = 1;
