use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Event, Over, SlicedDiagram};
use crate::error::{Result, SkeinError};

pub const MAX_RANDOM_CROSSINGS: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RandomParams {
    pub max_crossings: usize,
    pub genus: usize,
    pub bottom: usize,
    pub top: usize,
    /// Upper bound on the number of strands at any level.
    pub max_width: usize,
    pub oriented: bool,
}

impl RandomParams {
    pub fn closed(max_crossings: usize, genus: usize) -> Self {
        Self { max_crossings, genus, bottom: 0, top: 0, max_width: 6, oriented: true }
    }

    pub fn tangle(max_crossings: usize, bottom: usize, top: usize) -> Self {
        Self { max_crossings, genus: 0, bottom, top, max_width: 6.max(bottom.max(top) + 2), oriented: true }
    }
}

/// A random valid diagram; the same seed and parameters always give the same diagram.
pub fn random_diagram(seed: u64, params: RandomParams) -> Result<SlicedDiagram> {
    let RandomParams { max_crossings, genus, bottom, top, max_width, oriented } = params;
    if max_crossings > MAX_RANDOM_CROSSINGS {
        return Err(SkeinError::CrossingBound { count: max_crossings, bound: MAX_RANDOM_CROSSINGS });
    }
    if (bottom + top) % 2 != 0 {
        return Err(SkeinError::InvalidParams("bottom + top must be even".into()));
    }
    if genus > 0 && (bottom > 0 || top > 0) {
        return Err(SkeinError::TangleWithPunctures { genus });
    }
    if max_width < 2 || max_width < bottom.max(top) {
        return Err(SkeinError::InvalidParams(format!("max_width {max_width} too small")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut events = Vec::new();
    let mut count = bottom;
    let mut crossings = 0;
    let mut punctures = 0;
    let budget = rng.gen_range(2..=2 * max_crossings + 2 * genus + 4);
    for _ in 0..budget {
        let roll = rng.gen_range(0..100);
        if roll < 45 && count >= 2 && crossings < max_crossings {
            let i = rng.gen_range(0..count - 1);
            let over = if rng.gen_bool(0.5) { Over::L } else { Over::R };
            events.push(Event::Cross(i, over));
            crossings += 1;
        } else if roll < 70 && count + 2 <= max_width {
            events.push(Event::Cup(rng.gen_range(0..=count)));
            count += 2;
        } else if roll < 90 && count >= 2 && (count > top || rng.gen_bool(0.3)) {
            events.push(Event::Cap(rng.gen_range(0..count - 1)));
            count -= 2;
        } else if punctures < genus && count >= 2 {
            // prefer gaps strictly inside the strand row
            let gap = rng.gen_range(1..count);
            events.push(Event::Punctures(vec![gap]));
            punctures += 1;
        } else if count + 2 <= max_width {
            events.push(Event::Cup(rng.gen_range(0..=count)));
            count += 2;
        }
    }
    while punctures < genus {
        if count < 2 {
            events.push(Event::Cup(0));
            count += 2;
        }
        let gap = rng.gen_range(0..=count);
        events.push(Event::Punctures(vec![gap]));
        punctures += 1;
    }
    while count > top {
        events.push(Event::Cap(rng.gen_range(0..count - 1)));
        count -= 2;
    }
    while count < top {
        events.push(Event::Cup(rng.gen_range(0..=count)));
        count += 2;
    }
    let d = SlicedDiagram::new(bottom, top, events)?;
    if !oriented {
        return Ok(d);
    }
    let n = d.component_count();
    let signs = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    d.with_orientation(signs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let p = RandomParams::closed(6, 2);
        assert_eq!(random_diagram(42, p).unwrap(), random_diagram(42, p).unwrap());
        assert_ne!(random_diagram(42, p).unwrap(), random_diagram(43, p).unwrap());
    }

    #[test]
    fn corpus_is_valid_and_exercises_every_event_kind() {
        let mut seen = [0usize; 4];
        for seed in 0..1000u64 {
            let g = (seed % 3) as usize;
            let p = if seed % 5 == 4 {
                RandomParams::tangle(5, 2, 2)
            } else {
                RandomParams::closed(5, g)
            };
            let d = random_diagram(seed, p).unwrap();
            d.validate().unwrap();
            assert!(d.crossing_count() <= 5);
            assert_eq!(d.genus(), p.genus);
            for e in d.events() {
                let k = match e {
                    Event::Cup(_) => 0,
                    Event::Cap(_) => 1,
                    Event::Cross(..) => 2,
                    Event::Punctures(_) => 3,
                };
                seen[k] += 1;
            }
        }
        assert!(seen.iter().all(|&n| n > 100), "{seen:?}");
    }

    #[test]
    fn parameter_errors() {
        assert!(random_diagram(0, RandomParams::closed(25, 0)).is_err());
        assert!(random_diagram(0, RandomParams::tangle(3, 1, 2)).is_err());
        let mut p = RandomParams::tangle(3, 2, 2);
        p.genus = 1;
        assert!(random_diagram(0, p).is_err());
    }
}
