//! Breadth-first orbit enumeration with displacement and tube pruning.
//!
//! Group elements are deduplicated through their orbit point w·i: in a
//! torsion-free discrete group the stabilizer of a generic point is trivial,
//! so the orbit point determines the element, and two distinct orbit points
//! are at least the minimal displacement apart. Points are keyed in Fermi
//! coordinates along the imaginary axis,
//!
//!   ρ = signed dist(z, iℝ⁺) = arcsinh(x/y),   s = ln|z|,
//!
//! which keep both the floating-point drift of long matrix products and the
//! separation of distinct points at a hyperbolically uniform scale. Each
//! point is hashed into four half-cell-offset grids; two points closer than
//! a quarter cell share a cell in at least one grid, so near-duplicates from
//! different word paths are always caught while distinct orbit points (≥ the
//! minimal displacement apart) never collide.

use crate::error::EnumError;
use crate::fuchsian::word::Word;
use crate::hplane::{dist, MoebiusMap, UHPoint};
use std::collections::{HashSet, VecDeque};
use std::hash::{BuildHasherDefault, Hasher};

/// Cell sizes for the dedup grid. `CELL_S` must stay below the minimal
/// s-spacing of distinct orbit points at the largest tube radius in use
/// (min displacement / cosh(ρ_max)); drift of long f64 products is ~1e-12
/// in these coordinates, two orders below the cell.
const CELL_RHO: f64 = 1e-5;
const CELL_S: f64 = 2e-9;

/// Hasher for already-mixed u64 keys.
#[derive(Default)]
pub(crate) struct MixedKeyHasher(u64);

impl Hasher for MixedKeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, _bytes: &[u8]) {
        unreachable!("only u64 keys are hashed");
    }
    fn write_u64(&mut self, v: u64) {
        self.0 = v;
    }
}

type KeySet = HashSet<u64, BuildHasherDefault<MixedKeyHasher>>;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn grid_key(grid: u64, i_rho: i64, i_s: i64) -> u64 {
    splitmix(grid ^ splitmix(i_rho as u64) ^ splitmix((i_s as u64).rotate_left(17)))
}

/// Four-grid point registry in Fermi coordinates.
pub(crate) struct PointRegistry {
    cells: KeySet,
}

impl PointRegistry {
    pub fn new() -> Self {
        PointRegistry {
            cells: KeySet::default(),
        }
    }

    /// Registers (ρ, s); returns false if the point (up to drift) was seen.
    pub fn insert(&mut self, rho: f64, s: f64) -> bool {
        let mut keys = [0u64; 4];
        let mut seen = false;
        for (g, key) in keys.iter_mut().enumerate() {
            let off = if g & 1 == 0 { 0.0 } else { 0.5 };
            let off2 = if g & 2 == 0 { 0.0 } else { 0.5 };
            let i_rho = (rho / CELL_RHO + off).floor() as i64;
            let i_s = (s / CELL_S + off2).floor() as i64;
            *key = grid_key(g as u64, i_rho, i_s);
            if self.cells.contains(key) {
                seen = true;
            }
        }
        if seen {
            return false;
        }
        for key in keys {
            self.cells.insert(key);
        }
        true
    }

    pub fn len(&self) -> usize {
        self.cells.len() / 4
    }
}

/// Signed Fermi coordinates of a point along the imaginary axis.
pub(crate) fn fermi(z: UHPoint) -> (f64, f64) {
    ((z.x() / z.y()).asinh(), z.r().ln())
}

/// A group element with its generating word and basepoint displacement.
#[derive(Debug, Clone)]
pub struct Element {
    pub mat: MoebiusMap,
    pub word: Word,
    pub displacement: f64,
}

/// Generator list with inverses appended, as (matrix, letter) pairs.
fn symmetrized(gens: &[MoebiusMap]) -> Vec<(MoebiusMap, i32)> {
    let mut out = Vec::with_capacity(2 * gens.len());
    for (k, g) in gens.iter().enumerate() {
        out.push((*g, k as i32 + 1));
    }
    for (k, g) in gens.iter().enumerate() {
        out.push((g.inverse(), -(k as i32 + 1)));
    }
    out
}

/// All group elements with dist(i, w·i) ≤ radius, found by breadth-first
/// search over reduced words pruned at that displacement. The identity is
/// included. Completeness rests on the pruning radius being generous enough
/// for the word metric; callers certify by re-running with a larger radius.
pub fn enumerate_ball(
    gens: &[MoebiusMap],
    radius: f64,
    max_elements: usize,
) -> Result<Vec<Element>, EnumError> {
    let steps = symmetrized(gens);
    let mut registry = PointRegistry::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();

    let (rho0, s0) = fermi(UHPoint::I);
    registry.insert(rho0, s0);
    out.push(Element {
        mat: MoebiusMap::IDENTITY,
        word: Word::identity(),
        displacement: 0.0,
    });
    queue.push_back(0usize);

    let mut head = 0;
    while let Some(idx) = queue.pop_front() {
        head += 1;
        let parent = out[idx].clone();
        for (g, letter) in &steps {
            if parent.word.0.last() == Some(&-letter) {
                continue;
            }
            let mat = parent.mat.compose(g);
            let z = mat.apply(UHPoint::I);
            let d = dist(UHPoint::I, z);
            if d > radius + 1e-9 {
                continue;
            }
            let (rho, s) = fermi(z);
            if !registry.insert(rho, s) {
                continue;
            }
            if out.len() >= max_elements {
                return Err(EnumError::BudgetExceeded {
                    budget: max_elements,
                    explored: head,
                });
            }
            let mut word = parent.word.clone();
            word.push(*letter);
            out.push(Element {
                mat,
                word,
                displacement: d,
            });
            queue.push_back(out.len() - 1);
        }
    }
    Ok(out)
}

/// Result of a tube enumeration: one A-normalized representative per left
/// coset ⟨A⟩w whose orbit point lies within `tube_radius` of the axis.
pub struct TubeEnumeration {
    pub cosets: Vec<MoebiusMap>,
    pub complete: bool,
    pub explored: usize,
}

/// Enumerates cosets ⟨A⟩\Γ in the frame where A = scaling(ell) and the axis
/// is the imaginary axis. `gens` must already be conjugated to this frame;
/// the basepoint is `base` (the conjugated image of the group basepoint).
///
/// A coset representative is normalized so that the s-coordinate of its
/// orbit point lies in [0, ell); representatives near the wrap boundary are
/// registered under both lifts so the quotient dedup has no seam.
pub fn enumerate_tube(
    gens: &[MoebiusMap],
    ell: f64,
    base: UHPoint,
    tube_radius: f64,
    max_elements: usize,
) -> TubeEnumeration {
    let steps: Vec<MoebiusMap> = {
        let mut v: Vec<MoebiusMap> = gens.to_vec();
        v.extend(gens.iter().map(|g| g.inverse()));
        v
    };
    let period_down = MoebiusMap::scaling(-ell);
    let period_up = MoebiusMap::scaling(ell);

    let mut registry = PointRegistry::new();
    let mut cosets: Vec<MoebiusMap> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut explored = 0usize;
    let wrap_margin = 16.0 * CELL_S;

    let mut push = |mat: MoebiusMap,
                    registry: &mut PointRegistry,
                    cosets: &mut Vec<MoebiusMap>,
                    queue: &mut VecDeque<usize>|
     -> bool {
        let z = mat.apply(base);
        let (rho, s) = fermi(z);
        if rho.abs() > tube_radius {
            return true;
        }
        // Normalize s into [0, ell) by powers of A.
        let k = (s / ell).floor();
        let (mut mat_n, mut s_n) = (mat, s - k * ell);
        if k != 0.0 {
            let mut shift = MoebiusMap::IDENTITY;
            let step = if k > 0.0 { period_down } else { period_up };
            for _ in 0..(k.abs() as i64) {
                shift = shift.compose(&step);
            }
            mat_n = shift.compose(&mat);
            let z_n = mat_n.apply(base);
            s_n = fermi(z_n).1;
            // Renormalization drift can leave s_n marginally outside [0, ell).
            if s_n < 0.0 {
                mat_n = period_up.compose(&mat_n);
                s_n += ell;
            } else if s_n >= ell {
                mat_n = period_down.compose(&mat_n);
                s_n -= ell;
            }
        }
        if !registry.insert(rho, s_n) {
            return true;
        }
        if s_n < wrap_margin {
            registry.insert(rho, s_n + ell);
        } else if s_n > ell - wrap_margin {
            registry.insert(rho, s_n - ell);
        }
        if cosets.len() >= max_elements {
            return false;
        }
        cosets.push(mat_n);
        queue.push_back(cosets.len() - 1);
        true
    };

    let mut complete = push(MoebiusMap::IDENTITY, &mut registry, &mut cosets, &mut queue);
    'bfs: while let Some(idx) = queue.pop_front() {
        explored += 1;
        let parent = cosets[idx];
        for g in &steps {
            let child = parent.compose(g);
            if !push(child, &mut registry, &mut cosets, &mut queue) {
                complete = false;
                break 'bfs;
            }
        }
    }
    TubeEnumeration {
        cosets,
        complete,
        explored,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_dedups_drifted_copies_and_separates_distinct() {
        let mut r = PointRegistry::new();
        assert!(r.insert(0.123456, 0.654321));
        assert!(!r.insert(0.123456 + 1e-12, 0.654321 - 1e-12));
        assert!(r.insert(0.123456 + 10.0 * CELL_RHO, 0.654321));
        assert!(r.insert(0.123456, 0.654321 + 10.0 * CELL_S));
    }

    #[test]
    fn ball_of_cyclic_scaling_group() {
        // ⟨z ↦ e² z⟩: orbit points i·e^{2k}; displacement of k-th power is 2|k|.
        let gens = [MoebiusMap::scaling(2.0)];
        let got = enumerate_ball(&gens, 6.1, 1000).unwrap();
        assert_eq!(got.len(), 7); // k = -3..3
        let mut displacements: Vec<f64> = got.iter().map(|e| e.displacement).collect();
        displacements.sort_by(f64::total_cmp);
        assert!((displacements[0]).abs() < 1e-12);
        assert!((displacements[6] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn ball_respects_budget() {
        let gens = [MoebiusMap::scaling(0.5)];
        assert!(matches!(
            enumerate_ball(&gens, 50.0, 10),
            Err(EnumError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn tube_quotient_of_cyclic_group_is_single_coset() {
        // Quotienting ⟨A⟩ by itself leaves one coset whatever the radius.
        let ell = 1.3;
        let gens = [MoebiusMap::scaling(ell)];
        let tube = enumerate_tube(&gens, ell, UHPoint::I, 5.0, 1000);
        assert!(tube.complete);
        assert_eq!(tube.cosets.len(), 1);
    }
}
