//! Breadth-first search in the Cayley graph, as an oracle for the syllable
//! length formula.

use std::collections::HashMap;

use super::group::{GroupElement, Letter};

pub const MAX_BFS_RADIUS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("radius {0} exceeds the supported maximum {MAX_BFS_RADIUS}")]
pub struct RadiusTooLarge(pub u32);

/// Distance from the identity of every element in the ball of the given
/// radius in `Cay(Z² * Z, {a±, b±, t±})`.
pub fn bfs_oracle(radius: u32) -> Result<HashMap<GroupElement, u32>, RadiusTooLarge> {
    if radius > MAX_BFS_RADIUS {
        return Err(RadiusTooLarge(radius));
    }
    let mut dist = HashMap::from([(GroupElement::identity(), 0)]);
    let mut frontier = vec![GroupElement::identity()];
    for r in 1..=radius {
        let mut next = Vec::new();
        for g in &frontier {
            for letter in Letter::ALL {
                let mut h = g.clone();
                h.push(letter.syllable());
                dist.entry(h).or_insert_with_key(|h| {
                    next.push(h.clone());
                    r
                });
            }
        }
        frontier = next;
    }
    Ok(dist)
}

/// Number of elements at each distance `0..=radius`.
pub fn sphere_sizes(ball: &HashMap<GroupElement, u32>) -> Vec<usize> {
    let radius = ball.values().copied().max().unwrap_or(0) as usize;
    let mut sizes = vec![0; radius + 1];
    for &d in ball.values() {
        sizes[d as usize] += 1;
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_balls() {
        let b1 = bfs_oracle(1).unwrap();
        assert_eq!(sphere_sizes(&b1), vec![1, 6]);
        let b4 = bfs_oracle(4).unwrap();
        let sizes = sphere_sizes(&b4);
        assert!(sizes.windows(2).all(|w| w[0] < w[1]));
        for (g, d) in &b4 {
            assert_eq!(g.word_length(), *d as u64, "{g}");
        }
        assert_eq!(bfs_oracle(11), Err(RadiusTooLarge(11)));
    }
}
