//! Surface topology descriptors and Fenchel-Nielsen coordinates.
//!
//! A pants decomposition of S_{g,n} is recorded as a list of pants, each with
//! three boundary slots. A slot carries `Some(curve_id)` for an interior
//! pants curve or `None` for a puncture. Every interior curve id must occur
//! exactly twice across all slots.

use crate::error::BuildError;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    pub genus: usize,
    pub punctures: usize,
    /// One entry per pants: three boundary slots.
    pub pants_graph: Vec<[Option<usize>; 3]>,
}

impl Topology {
    /// Closed genus-2 surface cut along three curves into two pants
    /// (the "theta" decomposition).
    pub fn genus2() -> Topology {
        Topology {
            genus: 2,
            punctures: 0,
            pants_graph: vec![
                [Some(0), Some(1), Some(2)],
                [Some(0), Some(1), Some(2)],
            ],
        }
    }

    /// Once-punctured torus: one pants, two slots glued to each other.
    pub fn punctured_torus() -> Topology {
        Topology {
            genus: 1,
            punctures: 1,
            pants_graph: vec![[Some(0), Some(0), None]],
        }
    }

    /// Number of pants curves 3g − 3 + n.
    pub fn curve_count(&self) -> usize {
        3 * self.genus + self.punctures - 3
    }

    /// Teichmüller dimension 6g − 6 + 2n.
    pub fn teich_dim(&self) -> usize {
        2 * self.curve_count()
    }

    pub fn validate(&self) -> Result<(), BuildError> {
        if 3 * self.genus + self.punctures < 4 || self.curve_count() < 1 {
            return Err(BuildError::UnsupportedTopology(format!(
                "surface ({}, {}) has no pants decomposition with at least one curve",
                self.genus, self.punctures
            )));
        }
        let expected_pants = 2 * self.genus - 2 + self.punctures;
        if self.pants_graph.len() != expected_pants {
            return Err(BuildError::InvalidPantsGraph(format!(
                "expected {expected_pants} pants, got {}",
                self.pants_graph.len()
            )));
        }
        let n_curves = self.curve_count();
        let mut occurrences = vec![0usize; n_curves];
        let mut puncture_slots = 0usize;
        for pants in &self.pants_graph {
            for slot in pants {
                match slot {
                    Some(c) => {
                        if *c >= n_curves {
                            return Err(BuildError::InvalidPantsGraph(format!(
                                "curve id {c} out of range (have {n_curves} curves)"
                            )));
                        }
                        occurrences[*c] += 1;
                    }
                    None => puncture_slots += 1,
                }
            }
        }
        if puncture_slots != self.punctures {
            return Err(BuildError::InvalidPantsGraph(format!(
                "{} puncture slots for {} punctures",
                puncture_slots, self.punctures
            )));
        }
        for (c, occ) in occurrences.iter().enumerate() {
            if *occ != 2 {
                return Err(BuildError::InvalidPantsGraph(format!(
                    "curve {c} glued {occ} times (must be exactly 2)"
                )));
            }
        }
        Ok(())
    }

    /// The two (pants, slot) positions of a curve.
    pub fn curve_slots(&self, curve: usize) -> [(usize, usize); 2] {
        let mut found = Vec::with_capacity(2);
        for (p, pants) in self.pants_graph.iter().enumerate() {
            for (s, slot) in pants.iter().enumerate() {
                if *slot == Some(curve) {
                    found.push((p, s));
                }
            }
        }
        [found[0], found[1]]
    }
}

/// Fenchel-Nielsen coordinates: hyperbolic lengths and twists (in length
/// units) along the pants curves of a fixed decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FNCoordinates {
    #[serde(flatten)]
    pub topology: Topology,
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
}

impl FNCoordinates {
    pub fn new(
        topology: Topology,
        lengths: Vec<f64>,
        twists: Vec<f64>,
    ) -> Result<Self, BuildError> {
        topology.validate()?;
        let n = topology.curve_count();
        if lengths.len() != n || twists.len() != n {
            return Err(BuildError::InvalidPantsGraph(format!(
                "expected {n} lengths and twists, got {} and {}",
                lengths.len(),
                twists.len()
            )));
        }
        for (i, &l) in lengths.iter().enumerate() {
            if !(l > 0.0) || !l.is_finite() {
                return Err(BuildError::NonPositiveLength {
                    index: i,
                    length: l,
                });
            }
        }
        for &t in &twists {
            if !t.is_finite() {
                return Err(BuildError::InvalidPantsGraph(
                    "twists must be finite".to_string(),
                ));
            }
        }
        Ok(FNCoordinates {
            topology,
            lengths,
            twists,
        })
    }

    pub fn genus2(lengths: [f64; 3], twists: [f64; 3]) -> Result<Self, BuildError> {
        FNCoordinates::new(Topology::genus2(), lengths.to_vec(), twists.to_vec())
    }

    pub fn punctured_torus(length: f64, twist: f64) -> Result<Self, BuildError> {
        FNCoordinates::new(Topology::punctured_torus(), vec![length], vec![twist])
    }

    pub fn from_json(s: &str) -> Result<Self, BuildError> {
        let raw: FNCoordinates = serde_json::from_str(s)
            .map_err(|e| BuildError::InvalidPantsGraph(format!("JSON parse: {e}")))?;
        FNCoordinates::new(raw.topology, raw.lengths, raw.twists)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("FN coordinates serialize")
    }

    /// Displaces one coordinate; index < n twists length i, index ≥ n twists
    /// twist i − n. Used for finite differencing in FN charts.
    pub fn perturbed(&self, coord: usize, delta: f64) -> Result<FNCoordinates, BuildError> {
        let n = self.lengths.len();
        let mut lengths = self.lengths.clone();
        let mut twists = self.twists.clone();
        if coord < n {
            lengths[coord] += delta;
        } else {
            twists[coord - n] += delta;
        }
        FNCoordinates::new(self.topology.clone(), lengths, twists)
    }

    /// Linear interpolation in FN coordinates.
    pub fn lerp(&self, other: &FNCoordinates, t: f64) -> Result<FNCoordinates, BuildError> {
        let lengths = self
            .lengths
            .iter()
            .zip(&other.lengths)
            .map(|(a, b)| a + t * (b - a))
            .collect();
        let twists = self
            .twists
            .iter()
            .zip(&other.twists)
            .map(|(a, b)| a + t * (b - a))
            .collect();
        FNCoordinates::new(self.topology.clone(), lengths, twists)
    }

    /// Flat coordinate vector (lengths then twists).
    pub fn as_vector(&self) -> Vec<f64> {
        let mut v = self.lengths.clone();
        v.extend_from_slice(&self.twists);
        v
    }

    pub fn from_vector(topology: Topology, v: &[f64]) -> Result<FNCoordinates, BuildError> {
        let n = topology.curve_count();
        FNCoordinates::new(topology, v[..n].to_vec(), v[n..].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus2_topology_is_valid() {
        Topology::genus2().validate().unwrap();
        assert_eq!(Topology::genus2().curve_count(), 3);
        assert_eq!(Topology::genus2().teich_dim(), 6);
    }

    #[test]
    fn punctured_torus_is_valid() {
        Topology::punctured_torus().validate().unwrap();
        assert_eq!(Topology::punctured_torus().curve_count(), 1);
    }

    #[test]
    fn bad_gluing_rejected() {
        let t = Topology {
            genus: 2,
            punctures: 0,
            pants_graph: vec![[Some(0), Some(0), Some(1)], [Some(1), Some(2), Some(0)]],
        };
        assert!(t.validate().is_err());
    }

    #[test]
    fn zero_length_rejected() {
        let err = FNCoordinates::genus2([0.0, 2.0, 2.0], [0.0; 3]).unwrap_err();
        assert!(matches!(err, BuildError::NonPositiveLength { index: 0, .. }));
    }

    #[test]
    fn json_round_trip() {
        let fnc = FNCoordinates::genus2([1.0, 2.0, 3.0], [0.3, -0.7, 1.1]).unwrap();
        let s = fnc.to_json();
        let back = FNCoordinates::from_json(&s).unwrap();
        assert_eq!(fnc, back);
    }
}
