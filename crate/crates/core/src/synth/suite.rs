use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GenConfig, Regime};

const CONFIG_STREAM: u64 = 1 << 32;

fn config_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(CONFIG_STREAM);
    rng
}

fn base(
    rng: &mut ChaCha8Rng,
    regime: Regime,
    n_agents: usize,
    belief_order: usize,
    seed: u64,
) -> GenConfig {
    GenConfig {
        n_agents,
        n_rooms: rng.gen_range(1..=4),
        n_containers: rng.gen_range(2..=6),
        n_objects: rng.gen_range(1..=4),
        n_events: rng.gen_range(regime.min_events()..=20),
        belief_order,
        communication_rate: rng.gen_range(0.0..0.5),
        deception_rate: rng.gen_range(0.0..=1.0),
        distractor_rate: rng.gen_range(0.0..0.5),
        regime,
        seed,
    }
}

/// Mixed-regime config: regime cycles with the seed, everything else is
/// drawn from the seed.
pub fn suite_config(seed: u64) -> GenConfig {
    let mut rng = config_rng(seed);
    let regime = Regime::ALL[(seed % 4) as usize];
    let n_agents = rng.gen_range(2..=5);
    let order = rng.gen_range(0..=n_agents.min(4));
    base(&mut rng, regime, n_agents, order, seed)
}

/// False-belief config: a quarter reality questions, the rest belief,
/// memory and search.
pub fn false_belief_config(seed: u64) -> GenConfig {
    let mut rng = config_rng(seed);
    let n_agents = rng.gen_range(2..=5);
    let order = usize::from(!seed.is_multiple_of(4));
    base(&mut rng, Regime::FalseBelief, n_agents, order, seed)
}

/// Nested config with a fixed belief order.
pub fn nested_config(seed: u64, order: usize) -> GenConfig {
    let mut rng = config_rng(seed);
    let n_agents = rng.gen_range(order.max(2)..=5);
    base(&mut rng, Regime::Nested, n_agents, order, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_configs_are_valid() {
        for seed in 0..400 {
            suite_config(seed).validate().unwrap();
            false_belief_config(seed).validate().unwrap();
            nested_config(seed, (seed % 5) as usize).validate().unwrap();
        }
    }

    #[test]
    fn suite_config_is_deterministic() {
        assert_eq!(suite_config(42), suite_config(42));
        assert_ne!(suite_config(42), suite_config(43));
    }
}
