use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::protocol::{self, MeasurementStrength, PhasePair};

/// Observed shot counts for the four outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct CountTable {
    /// Indexed by [`crate::protocol::Outcome::index`].
    pub counts: [u64; 4],
    pub strength: f64,
    /// Phases that generated the counts, known only for simulations.
    pub truth: Option<PhasePair>,
    pub seed: Option<u64>,
}

impl CountTable {
    pub fn new(counts: [u64; 4], strength: f64) -> Self {
        Self {
            counts,
            strength,
            truth: None,
            seed: None,
        }
    }

    pub fn shots(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Relative frequencies, or `None` for an empty table.
    pub fn frequencies(&self) -> Option<[f64; 4]> {
        let n = self.shots();
        if n == 0 {
            return None;
        }
        Some(self.counts.map(|c| c as f64 / n as f64))
    }
}

/// Mixes a base seed with an index into an independent stream seed
/// (splitmix64 finalizer).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(mix(base) ^ index)
}

/// One multinomial draw of `shots` events over `probabilities`.
pub fn sample_multinomial<R: Rng + ?Sized>(
    probabilities: &[f64; 4],
    shots: u64,
    rng: &mut R,
) -> [u64; 4] {
    let mut out = [0u64; 4];
    let mut remaining = shots;
    let mut mass: f64 = probabilities.iter().map(|p| p.max(0.0)).sum();
    for i in 0..3 {
        if remaining == 0 || mass <= 0.0 {
            break;
        }
        let p = (probabilities[i].max(0.0) / mass).clamp(0.0, 1.0);
        let n = Binomial::new(remaining, p)
            .expect("probability clamped to [0, 1]")
            .sample(rng);
        out[i] = n;
        remaining -= n;
        mass -= probabilities[i].max(0.0);
    }
    out[3] = remaining;
    out
}

/// Simulates `shots` runs of the ideal protocol.
pub fn sample_counts(
    phases: PhasePair,
    strength: MeasurementStrength,
    shots: u64,
    seed: u64,
) -> Result<CountTable> {
    if shots == 0 {
        return Err(Error::NoEvents);
    }
    let p = protocol::outcome_distribution(phases, strength).probabilities;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(CountTable {
        counts: sample_multinomial(&p, shots, &mut rng),
        strength: strength.k(),
        truth: Some(phases),
        seed: Some(seed),
    })
}
