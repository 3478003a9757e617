//! A hyperbolic pair of pants in standard position.
//!
//! Given cuff lengths (L₀, L₁, L₂) with L₀ > 0 (a zero length is a cusp),
//! three pairwise disjoint geodesics C₀, C₁, C₂ are placed so that
//!
//!   dist(C₁, C₂) = L₀/2,  dist(C₂, C₀) = L₁/2,  dist(C₀, C₁) = L₂/2.
//!
//! Products of the reflections σᵢ in the Cᵢ generate the pants group:
//!
//!   X₀ = σ₂σ₁ : z ↦ e^{L₀} z,   X₁ = σ₀σ₂,   X₂ = σ₁σ₀,
//!
//! with X₂X₁X₀ = id, and each Xⱼ translating along the cuff-j geodesic by
//! exactly Lⱼ (the common perpendicular of the other two C's). The seam
//! between cuffs i and j lies on the remaining C-line and realizes the
//! right-angled hexagon identity
//!
//!   cosh(seam_ij) = (cosh(L_k/2) + cosh(L_i/2)·cosh(L_j/2))
//!                   / (sinh(L_i/2)·sinh(L_j/2)).
//!
//! Concretely C₁ = {|z| = 1}, C₂ = {|z| = e^{L₀/2}} and C₀ is a circle in the
//! right half-plane between them, so the pants hexagon sits on the Re z > 0
//! side of the cuff-0 axis (the imaginary axis).

use crate::error::BuildError;
use crate::hplane::{
    double_reflection, GeodesicLine, MoebiusMap, UHPoint, HYPERBOLIC_TRACE_TOL,
};

/// One pair of pants placed in the half-plane, frame cuff on the imaginary
/// axis. Cuff index 0 must be a geodesic boundary; indices with length 0 are
/// cusps and have no axis or frame.
#[derive(Debug, Clone)]
pub struct PantsPlacement {
    pub lengths: [f64; 3],
    /// Boundary deck transformations, X₂X₁X₀ = id.
    pub cuff_maps: [MoebiusMap; 3],
    /// Axes of the geodesic cuffs.
    pub cuff_axes: [Option<GeodesicLine>; 3],
    /// Fᵢ with Fᵢ ∘ scaling(Lᵢ) ∘ Fᵢ⁻¹ = Xᵢ (None for cusps).
    pub cuff_frames: [Option<MoebiusMap>; 3],
    /// Side of each cuff axis occupied by the pants (±1).
    pub cuff_sides: [Option<f64>; 3],
    /// Residual of X₂X₁X₀ = ±id plus the cuff trace identities.
    pub residual: f64,
}

/// A vertex of the standard hexagon (the corner C₁ ∩ cuff-0 axis); it marks
/// the pants side of every cuff axis.
pub const PANTS_SIDE_PROBE: UHPoint = UHPoint::I;

pub fn place_pants(lengths: [f64; 3]) -> Result<PantsPlacement, BuildError> {
    for (i, &l) in lengths.iter().enumerate() {
        if !(l >= 0.0) || !l.is_finite() {
            return Err(BuildError::NonPositiveLength {
                index: i,
                length: l,
            });
        }
    }
    if lengths[0] <= 0.0 {
        return Err(BuildError::InvalidPantsGraph(
            "frame cuff of a pants must be a geodesic boundary".to_string(),
        ));
    }
    let a = [lengths[0] / 2.0, lengths[1] / 2.0, lengths[2] / 2.0];
    let r2 = a[0].exp();

    let c1 = GeodesicLine::Arc { p: -1.0, q: 1.0 };
    let c2 = GeodesicLine::Arc { p: -r2, q: r2 };
    // C₀ solves the two inversive-distance conditions against C₁ and C₂.
    let rho = (r2 * r2 - 1.0) / (2.0 * (a[2].cosh() + r2 * a[1].cosh()));
    let x0 = (1.0 + rho * rho + 2.0 * rho * a[2].cosh()).sqrt();
    let c0 = GeodesicLine::Arc {
        p: x0 - rho,
        q: x0 + rho,
    };

    let x_map_0 = double_reflection(&c2, &c1).map_err(placement_err)?;
    let x_map_1 = double_reflection(&c0, &c2).map_err(placement_err)?;
    let x_map_2 = double_reflection(&c1, &c0).map_err(placement_err)?;
    let cuff_maps = [x_map_0, x_map_1, x_map_2];

    let mut cuff_axes = [None; 3];
    let mut cuff_frames = [None; 3];
    let mut cuff_sides = [None; 3];
    let mut residual = cuff_maps[2]
        .compose(&cuff_maps[1])
        .compose(&cuff_maps[0])
        .identity_residual();

    for j in 0..3 {
        let expected = 2.0 * a[j].cosh();
        residual = residual.max((cuff_maps[j].abs_trace() - expected).abs());
        if lengths[j] > 0.0 {
            let (axis, _) = cuff_maps[j].axis_and_length().map_err(placement_err)?;
            let frame = cuff_maps[j].frame().map_err(placement_err)?;
            let side = axis.side_of(PANTS_SIDE_PROBE);
            cuff_axes[j] = Some(axis);
            cuff_frames[j] = Some(frame);
            cuff_sides[j] = Some(side);
        } else if (cuff_maps[j].abs_trace() - 2.0).abs() > HYPERBOLIC_TRACE_TOL {
            return Err(BuildError::InvalidPantsGraph(format!(
                "cusp boundary {j} is not parabolic (|tr| = {})",
                cuff_maps[j].abs_trace()
            )));
        }
    }

    Ok(PantsPlacement {
        lengths,
        cuff_maps,
        cuff_axes,
        cuff_frames,
        cuff_sides,
        residual,
    })
}

fn placement_err(e: crate::error::HplaneError) -> BuildError {
    BuildError::InvalidPantsGraph(format!("pants placement: {e}"))
}

/// cosh of the seam length between cuffs i and j of a pants with half-lengths
/// from `lengths`; the hexagon identity quoted in the module docs.
pub fn seam_cosh(lengths: [f64; 3], i: usize, j: usize) -> f64 {
    let k = 3 - i - j;
    let h = |idx: usize| lengths[idx] / 2.0;
    ((h(k)).cosh() + h(i).cosh() * h(j).cosh()) / (h(i).sinh() * h(j).sinh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hplane::{line_distance, GeodesicLine};

    #[test]
    fn frame_cuff_is_standard_scaling() {
        let p = place_pants([1.5, 2.0, 0.7]).unwrap();
        let m = p.cuff_maps[0];
        assert!(m.dist_to(&MoebiusMap::scaling(1.5)) < 1e-12);
        assert_eq!(p.cuff_axes[0], Some(GeodesicLine::IMAGINARY_AXIS));
    }

    #[test]
    fn traces_match_cuff_lengths() {
        for lengths in [[1.0, 2.0, 3.0], [0.5, 0.5, 0.5], [4.0, 0.3, 1.1]] {
            let p = place_pants(lengths).unwrap();
            for j in 0..3 {
                let expected = 2.0 * (lengths[j] / 2.0).cosh();
                assert!(
                    (p.cuff_maps[j].abs_trace() - expected).abs() < 1e-12,
                    "lengths {lengths:?} cuff {j}"
                );
            }
            assert!(p.residual < 1e-12);
        }
    }

    #[test]
    fn relation_holds() {
        let p = place_pants([2.0, 2.0, 2.0]).unwrap();
        let prod = p.cuff_maps[2].compose(&p.cuff_maps[1]).compose(&p.cuff_maps[0]);
        assert!(prod.identity_residual() < 1e-13);
    }

    #[test]
    fn seam_distances_match_hexagon_identity() {
        let lengths = [1.2, 2.3, 0.9];
        let p = place_pants(lengths).unwrap();
        // The seam between cuff i and cuff j is the common perpendicular of
        // their axes; its length must satisfy the hexagon identity.
        for (i, j) in [(0usize, 1usize), (1, 2), (2, 0)] {
            let d = line_distance(
                &p.cuff_axes[i].unwrap(),
                &p.cuff_axes[j].unwrap(),
            )
            .unwrap();
            let expected = seam_cosh(lengths, i, j).acosh();
            assert!(
                (d - expected).abs() < 1e-10,
                "seam {i}{j}: {d} vs {expected}"
            );
        }
    }

    #[test]
    fn cusp_boundary_is_parabolic() {
        let p = place_pants([1.0, 1.0, 0.0]).unwrap();
        assert!((p.cuff_maps[2].abs_trace() - 2.0).abs() < 1e-12);
        assert!(p.cuff_axes[2].is_none());
        // Two-cusp pants.
        let p = place_pants([2.0, 0.0, 0.0]).unwrap();
        assert!((p.cuff_maps[1].abs_trace() - 2.0).abs() < 1e-12);
        assert!((p.cuff_maps[2].abs_trace() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn frames_conjugate_scaling_to_cuffs() {
        let p = place_pants([1.0, 2.0, 3.0]).unwrap();
        for j in 0..3 {
            let f = p.cuff_frames[j].unwrap();
            let rebuilt = MoebiusMap::scaling(p.lengths[j]).conjugate_by(&f);
            assert!(rebuilt.dist_to(&p.cuff_maps[j]) < 1e-11, "cuff {j}");
        }
    }

    #[test]
    fn probe_is_on_positive_side_of_frame_cuff() {
        let p = place_pants([1.0, 2.0, 3.0]).unwrap();
        assert_eq!(p.cuff_sides[0], Some(1.0));
    }

    #[test]
    fn cuff_axes_are_disjoint_from_each_other() {
        let p = place_pants([0.8, 1.7, 2.6]).unwrap();
        for i in 0..3 {
            for j in (i + 1)..3 {
                let d = line_distance(&p.cuff_axes[i].unwrap(), &p.cuff_axes[j].unwrap())
                    .unwrap();
                assert!(d > 0.0, "axes {i},{j} should be disjoint");
            }
        }
    }
}
