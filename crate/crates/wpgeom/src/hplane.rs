//! Exact upper-half-plane hyperbolic geometry.
//!
//! The model is ℍ = {x + iy : y > 0} with metric |dz|²/y². Geodesic lines are
//! vertical rays or semicircles orthogonal to the real axis. Isometries are
//! real Möbius maps z ↦ (az+b)/(cz+d) with ad − bc = 1, identified with their
//! negatives (PSL(2,ℝ)).
//!
//! Everything here is an immutable value and every operation is a pure
//! function, so the module is safe for unrestricted parallel use.

use crate::error::HplaneError;
use serde::{Deserialize, Serialize};

/// Tolerance below which |tr| − 2 is treated as non-hyperbolic.
pub const HYPERBOLIC_TRACE_TOL: f64 = 1e-9;

/// A point x + iy of the open upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UHPoint {
    x: f64,
    y: f64,
}

impl UHPoint {
    pub fn new(x: f64, y: f64) -> Result<Self, HplaneError> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(HplaneError::NotInUpperHalfPlane { x, y });
        }
        Ok(UHPoint { x, y })
    }

    /// The conventional basepoint i = (0, 1).
    pub const I: UHPoint = UHPoint { x: 0.0, y: 1.0 };

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Polar radius r = |z| > 0.
    pub fn r(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Polar angle θ ∈ (0, π) measured from the positive real axis.
    pub fn theta(&self) -> f64 {
        self.y.atan2(self.x)
    }
}

/// A point of the ideal boundary ∂ℍ = ℝ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum IdealPoint {
    Finite(f64),
    Infinity,
}

impl IdealPoint {
    pub fn approx_eq(&self, other: &IdealPoint, tol: f64) -> bool {
        match (self, other) {
            (IdealPoint::Infinity, IdealPoint::Infinity) => true,
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => {
                (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
            }
            _ => false,
        }
    }
}

/// A real Möbius map with ad − bc = 1, acting on ℍ.
///
/// A map and its negation act identically; `canonical_sign` picks one of the
/// two matrix representatives when a deterministic form is needed.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MoebiusMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MoebiusMap {
    pub const IDENTITY: MoebiusMap = MoebiusMap {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Builds a map from matrix entries, rescaling so that ad − bc = 1.
    ///
    /// Entries with negative determinant are rejected: those are
    /// orientation-reversing and live outside PSL(2,ℝ).
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, HplaneError> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(HplaneError::NotOrientationPreserving { a, b, c, d });
        }
        let s = det.sqrt().recip();
        Ok(MoebiusMap {
            a: a * s,
            b: b * s,
            c: c * s,
            d: d * s,
        })
    }

    /// The scaling map z ↦ e^ℓ·z, a hyperbolic translation of length ℓ along
    /// the imaginary axis (repelling 0, attracting ∞ for ℓ > 0).
    pub fn scaling(ell: f64) -> Self {
        MoebiusMap {
            a: (0.5 * ell).exp(),
            b: 0.0,
            c: 0.0,
            d: (-0.5 * ell).exp(),
        }
    }

    /// The parabolic z ↦ z + t.
    pub fn translation(t: f64) -> Self {
        MoebiusMap {
            a: 1.0,
            b: t,
            c: 0.0,
            d: 1.0,
        }
    }

    /// The half-turn z ↦ −1/z, swapping the two sides of the imaginary axis.
    pub fn half_turn() -> Self {
        MoebiusMap {
            a: 0.0,
            b: -1.0,
            c: 1.0,
            d: 0.0,
        }
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn conjugate_by(&self, g: &MoebiusMap) -> MoebiusMap {
        g.compose(self).compose(&g.inverse())
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn abs_trace(&self) -> f64 {
        self.trace().abs()
    }

    /// Flips the matrix sign so the first nonzero of (a, b, c, d) is positive.
    pub fn canonical_sign(&self) -> MoebiusMap {
        let lead = [self.a, self.b, self.c, self.d]
            .into_iter()
            .find(|v| v.abs() > 1e-14)
            .unwrap_or(1.0);
        if lead < 0.0 {
            MoebiusMap {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        } else {
            *self
        }
    }

    /// Max-norm distance to ±identity.
    pub fn identity_residual(&self) -> f64 {
        let res = |s: f64| {
            (s * self.a - 1.0)
                .abs()
                .max((s * self.d - 1.0).abs())
                .max((s * self.b).abs())
                .max((s * self.c).abs())
        };
        res(1.0).min(res(-1.0))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.identity_residual() <= tol
    }

    /// Max-norm distance between the maps as elements of PSL(2,ℝ).
    pub fn dist_to(&self, other: &MoebiusMap) -> f64 {
        let res = |s: f64| {
            (s * self.a - other.a)
                .abs()
                .max((s * self.b - other.b).abs())
                .max((s * self.c - other.c).abs())
                .max((s * self.d - other.d).abs())
        };
        res(1.0).min(res(-1.0))
    }

    pub fn apply(&self, z: UHPoint) -> UHPoint {
        let (x, y) = (z.x, z.y);
        let cx_d = self.c * x + self.d;
        let denom = cx_d * cx_d + self.c * self.c * y * y;
        let ax_b = self.a * x + self.b;
        let nx = (ax_b * cx_d + self.a * self.c * y * y) / denom;
        // det = 1 keeps ny > 0 exactly in exact arithmetic.
        let ny = y / denom;
        UHPoint { x: nx, y: ny }
    }

    /// Action on the ideal boundary.
    pub fn apply_boundary(&self, p: IdealPoint) -> IdealPoint {
        match p {
            IdealPoint::Infinity => {
                if self.c.abs() < 1e-300 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite(self.a / self.c)
                }
            }
            IdealPoint::Finite(t) => {
                let den = self.c * t + self.d;
                if den.abs() < 1e-300 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite((self.a * t + self.b) / den)
                }
            }
        }
    }

    pub fn apply_line(&self, line: &GeodesicLine) -> Result<GeodesicLine, HplaneError> {
        let (p, q) = line.endpoints();
        GeodesicLine::from_endpoints(self.apply_boundary(p), self.apply_boundary(q))
    }

    /// Fixed points (repelling, attracting) of a hyperbolic map.
    pub fn fixed_points(&self) -> Result<(IdealPoint, IdealPoint), HplaneError> {
        let tr = self.trace();
        if tr.abs() <= 2.0 + HYPERBOLIC_TRACE_TOL {
            return Err(HplaneError::NotHyperbolic {
                abs_trace: tr.abs(),
            });
        }
        if self.c.abs() < 1e-14 {
            // Fixed points are ∞ and b/(d − a).
            let finite = IdealPoint::Finite(self.b / (self.d - self.a));
            // ∞ attracts iff |a| > |d|.
            if self.a.abs() > self.d.abs() {
                return Ok((finite, IdealPoint::Infinity));
            }
            return Ok((IdealPoint::Infinity, finite));
        }
        // Roots of c z² + (d − a) z − b = 0, via the stable quadratic form.
        let r = self.a - self.d;
        let disc = (tr * tr - 4.0).max(0.0);
        let s = disc.sqrt();
        let z1 = if r >= 0.0 {
            (r + s) / (2.0 * self.c)
        } else {
            (r - s) / (2.0 * self.c)
        };
        let z2 = if z1.abs() > 1e-300 {
            -self.b / (self.c * z1)
        } else {
            // z1 = 0 forces b = 0; the other root is r/c.
            r / self.c
        };
        // Attracting fixed point z* has |c z* + d| > 1.
        let m1 = (self.c * z1 + self.d).abs();
        let m2 = (self.c * z2 + self.d).abs();
        if m1 > m2 {
            Ok((IdealPoint::Finite(z2), IdealPoint::Finite(z1)))
        } else {
            Ok((IdealPoint::Finite(z1), IdealPoint::Finite(z2)))
        }
    }

    /// Translation length ℓ from |tr| = 2 cosh(ℓ/2).
    pub fn translation_length(&self) -> Result<f64, HplaneError> {
        let t = self.abs_trace();
        if t <= 2.0 + HYPERBOLIC_TRACE_TOL {
            return Err(HplaneError::NotHyperbolic { abs_trace: t });
        }
        Ok(2.0 * (t / 2.0).acosh())
    }

    /// Axis (as an unoriented line) and translation length of a hyperbolic map.
    pub fn axis_and_length(&self) -> Result<(GeodesicLine, f64), HplaneError> {
        let ell = self.translation_length()?;
        let (p, q) = self.fixed_points()?;
        Ok((GeodesicLine::from_endpoints(p, q)?, ell))
    }

    /// A map F with F(0) = p, F(∞) = q; it carries the imaginary axis onto the
    /// line (p, q).
    pub fn map_axis_from_imaginary(p: IdealPoint, q: IdealPoint) -> Result<Self, HplaneError> {
        match (p, q) {
            (IdealPoint::Finite(p), IdealPoint::Finite(q)) => {
                if p == q {
                    return Err(HplaneError::DegenerateLine);
                }
                if q > p {
                    MoebiusMap::new(q, p, 1.0, 1.0)
                } else {
                    MoebiusMap::new(q, -p, 1.0, -1.0)
                }
            }
            (IdealPoint::Infinity, IdealPoint::Finite(q)) => MoebiusMap::new(q, -1.0, 1.0, 0.0),
            (IdealPoint::Finite(p), IdealPoint::Infinity) => MoebiusMap::new(1.0, p, 0.0, 1.0),
            (IdealPoint::Infinity, IdealPoint::Infinity) => Err(HplaneError::DegenerateLine),
        }
    }

    /// The frame of a hyperbolic map: F with F ∘ scaling(ℓ) ∘ F⁻¹ = ±self,
    /// taking the imaginary axis (oriented 0 → ∞) onto the oriented axis.
    pub fn frame(&self) -> Result<MoebiusMap, HplaneError> {
        let (rep, att) = self.fixed_points()?;
        MoebiusMap::map_axis_from_imaginary(rep, att)
    }
}

/// An unoriented geodesic line, canonically parametrized by its ideal
/// endpoints: a vertical ray (x, ∞) or a semicircle with feet p < q.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GeodesicLine {
    Vertical { x: f64 },
    Arc { p: f64, q: f64 },
}

impl GeodesicLine {
    pub const IMAGINARY_AXIS: GeodesicLine = GeodesicLine::Vertical { x: 0.0 };

    pub fn from_endpoints(p: IdealPoint, q: IdealPoint) -> Result<Self, HplaneError> {
        match (p, q) {
            (IdealPoint::Infinity, IdealPoint::Infinity) => Err(HplaneError::DegenerateLine),
            (IdealPoint::Infinity, IdealPoint::Finite(x))
            | (IdealPoint::Finite(x), IdealPoint::Infinity) => Ok(GeodesicLine::Vertical { x }),
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => {
                if a == b {
                    Err(HplaneError::DegenerateLine)
                } else {
                    Ok(GeodesicLine::Arc {
                        p: a.min(b),
                        q: a.max(b),
                    })
                }
            }
        }
    }

    pub fn endpoints(&self) -> (IdealPoint, IdealPoint) {
        match *self {
            GeodesicLine::Vertical { x } => (IdealPoint::Finite(x), IdealPoint::Infinity),
            GeodesicLine::Arc { p, q } => (IdealPoint::Finite(p), IdealPoint::Finite(q)),
        }
    }

    /// Hyperbolic distance from `z` to the line.
    pub fn dist_to_point(&self, z: UHPoint) -> f64 {
        match *self {
            GeodesicLine::Vertical { x } => ((z.x - x).abs() / z.y).asinh(),
            GeodesicLine::Arc { p, q } => {
                let c = 0.5 * (p + q);
                let rho = 0.5 * (q - p);
                let dx = z.x - c;
                let s = ((dx * dx + z.y * z.y - rho * rho) / (2.0 * rho * z.y)).abs();
                s.asinh()
            }
        }
    }

    /// Which side of the line a point lies on: ±1 (0 exactly on it).
    ///
    /// For a vertical line, + means larger x; for an arc, + means outside the
    /// semicircle.
    pub fn side_of(&self, z: UHPoint) -> f64 {
        let v = match *self {
            GeodesicLine::Vertical { x } => z.x - x,
            GeodesicLine::Arc { p, q } => {
                let c = 0.5 * (p + q);
                let rho = 0.5 * (q - p);
                (z.x - c).hypot(z.y) - rho
            }
        };
        if v > 0.0 {
            1.0
        } else if v < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    /// The matrix of the anti-Möbius reflection in this line, as a real matrix
    /// of determinant −1 acting by z ↦ (a z̄ + b)/(c z̄ + d).
    fn reflection_entries(&self) -> [f64; 4] {
        match *self {
            GeodesicLine::Vertical { x } => [1.0, -2.0 * x, 0.0, -1.0],
            GeodesicLine::Arc { p, q } => {
                let c = 0.5 * (p + q);
                let rho = 0.5 * (q - p);
                [c / rho, (rho * rho - c * c) / rho, 1.0 / rho, -c / rho]
            }
        }
    }
}

/// The orientation-preserving product of reflections σ_first ∘ σ_second.
pub fn double_reflection(
    first: &GeodesicLine,
    second: &GeodesicLine,
) -> Result<MoebiusMap, HplaneError> {
    let m = first.reflection_entries();
    let n = second.reflection_entries();
    MoebiusMap::new(
        m[0] * n[0] + m[1] * n[2],
        m[0] * n[1] + m[1] * n[3],
        m[2] * n[0] + m[3] * n[2],
        m[2] * n[1] + m[3] * n[3],
    )
}

/// Hyperbolic distance, via sinh(d/2) = |z − w| / (2 √(Im z · Im w)).
pub fn dist(z: UHPoint, w: UHPoint) -> f64 {
    let chord = (z.x - w.x).hypot(z.y - w.y);
    2.0 * (chord / (2.0 * (z.y * w.y).sqrt())).asinh()
}

/// Distance to the imaginary axis: ln|csc θ + |cot θ|| for z = (r, θ).
///
/// Computed as arcsinh(|x|/y), which is the same quantity in Cartesian form.
pub fn dist_to_imaginary_axis(z: UHPoint) -> f64 {
    (z.x.abs() / z.y).asinh()
}

/// Relative position of two geodesic lines with distinct ideal endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinePosition {
    /// u = cos of the intersection angle, in [0, 1).
    Crossing(f64),
    /// u = cosh of the distance between the lines, > 1.
    Disjoint(f64),
}

impl LinePosition {
    pub fn u(&self) -> f64 {
        match *self {
            LinePosition::Crossing(u) | LinePosition::Disjoint(u) => u,
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, LinePosition::Crossing(_))
    }
}

const ENDPOINT_SHARE_TOL: f64 = 1e-12;

fn lines_share_endpoint(g1: &GeodesicLine, g2: &GeodesicLine) -> bool {
    let (p1, q1) = g1.endpoints();
    let (p2, q2) = g2.endpoints();
    for a in [p1, q1] {
        for b in [p2, q2] {
            if a.approx_eq(&b, ENDPOINT_SHARE_TOL) {
                return true;
            }
        }
    }
    false
}

/// Normalizes g1 to the imaginary axis and returns the images (a, b) of g2's
/// endpoints, both finite and nonzero when no endpoint is shared.
fn normalized_endpoint_images(
    g1: &GeodesicLine,
    g2: &GeodesicLine,
) -> Result<(f64, f64), HplaneError> {
    if lines_share_endpoint(g1, g2) {
        return Err(HplaneError::SharedEndpoint);
    }
    let (p1, q1) = g1.endpoints();
    let to_axis = MoebiusMap::map_axis_from_imaginary(p1, q1)?.inverse();
    let (p2, q2) = g2.endpoints();
    match (to_axis.apply_boundary(p2), to_axis.apply_boundary(q2)) {
        (IdealPoint::Finite(a), IdealPoint::Finite(b)) if a != 0.0 && b != 0.0 => Ok((a, b)),
        // An image at 0 or ∞ means a shared endpoint slipped through the
        // tolerance check above.
        _ => Err(HplaneError::SharedEndpoint),
    }
}

/// The pairing invariant u of two geodesic lines: the cosine of the
/// intersection angle if they cross, cosh of their distance if disjoint.
///
/// With g1 normalized to the imaginary axis and g2 carried to the line with
/// feet (a, b), both cases reduce to u = |a + b| / |b − a|.
pub fn geodesic_u(g1: &GeodesicLine, g2: &GeodesicLine) -> Result<LinePosition, HplaneError> {
    let (a, b) = normalized_endpoint_images(g1, g2)?;
    let u = (a + b).abs() / (b - a).abs();
    if a.signum() == b.signum() {
        Ok(LinePosition::Disjoint(u))
    } else {
        Ok(LinePosition::Crossing(u))
    }
}

/// Distance between two disjoint geodesic lines (0 if they cross or touch).
pub fn line_distance(g1: &GeodesicLine, g2: &GeodesicLine) -> Result<f64, HplaneError> {
    match geodesic_u(g1, g2)? {
        LinePosition::Crossing(_) => Ok(0.0),
        LinePosition::Disjoint(u) => Ok(u.acosh()),
    }
}

/// Common perpendicular of two disjoint geodesic lines.
pub fn common_perpendicular(
    g1: &GeodesicLine,
    g2: &GeodesicLine,
) -> Result<GeodesicLine, HplaneError> {
    let (a, b) = normalized_endpoint_images(g1, g2)?;
    if a.signum() != b.signum() {
        return Err(HplaneError::LinesCross);
    }
    let s = (a * b).sqrt();
    let (p1, q1) = g1.endpoints();
    let back = MoebiusMap::map_axis_from_imaginary(p1, q1)?;
    GeodesicLine::from_endpoints(
        back.apply_boundary(IdealPoint::Finite(-s)),
        back.apply_boundary(IdealPoint::Finite(s)),
    )
}

/// Intersection point of two crossing geodesic lines.
pub fn line_intersection(
    g1: &GeodesicLine,
    g2: &GeodesicLine,
) -> Result<UHPoint, HplaneError> {
    let (a, b) = normalized_endpoint_images(g1, g2)?;
    if a.signum() == b.signum() {
        return Err(HplaneError::LinesDoNotCross);
    }
    let y = (-a * b).sqrt();
    let (p1, q1) = g1.endpoints();
    let back = MoebiusMap::map_axis_from_imaginary(p1, q1)?;
    Ok(back.apply(UHPoint::new(0.0, y)?))
}

/// Hyperbolic midpoint of the segment [z, w].
pub fn geodesic_midpoint(z: UHPoint, w: UHPoint) -> UHPoint {
    if (z.x - w.x).abs() <= 1e-14 * (1.0 + z.x.abs()) {
        return UHPoint {
            x: 0.5 * (z.x + w.x),
            y: (z.y * w.y).sqrt(),
        };
    }
    // The geodesic through z, w is a semicircle; points at angle θ from its
    // center have arclength coordinate ln tan(θ/2), so the midpoint angle is
    // the geometric mean of the half-angle tangents.
    let c = ((w.x * w.x + w.y * w.y) - (z.x * z.x + z.y * z.y)) / (2.0 * (w.x - z.x));
    let t_z = z.y.atan2(z.x - c);
    let t_w = w.y.atan2(w.x - c);
    let tm = ((0.5 * t_z).tan() * (0.5 * t_w).tan()).sqrt();
    let theta = 2.0 * tm.atan();
    let rho = (z.x - c).hypot(z.y);
    UHPoint {
        x: c + rho * theta.cos(),
        y: rho * theta.sin(),
    }
}

/// The point of the circle of hyperbolic radius `r` around i at direction
/// angle `phi` (angles measured in the Poincaré disk centered at i).
pub fn circle_point_about_i(r: f64, phi: f64) -> UHPoint {
    let rho = (0.5 * r).tanh();
    let (wx, wy) = (rho * phi.cos(), rho * phi.sin());
    // Inverse Cayley transform: z = i(1 + w)/(1 − w).
    let den = (1.0 - wx) * (1.0 - wx) + wy * wy;
    UHPoint {
        x: -2.0 * wy / den,
        y: (1.0 - wx * wx - wy * wy) / den,
    }
}

/// Direction angle at the basepoint i of the geodesic from i to w.
pub fn direction_from_i(w: UHPoint) -> f64 {
    // Cayley transform t = (w − i)/(w + i); the direction is arg t.
    let (x, y) = (w.x, w.y);
    let den = x * x + (y + 1.0) * (y + 1.0);
    let re = (x * x + y * y - 1.0) / den;
    let im = 2.0 * x / den;
    // arg of (re + i·im) read as the disk direction; the sign convention
    // matches `circle_point_about_i`.
    (-im).atan2(re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> UHPoint {
        UHPoint::new(x, y).unwrap()
    }

    #[test]
    fn apply_identity_fixes_basepoint() {
        let z = MoebiusMap::IDENTITY.apply(UHPoint::I);
        assert_eq!((z.x(), z.y()), (0.0, 1.0));
    }

    #[test]
    fn apply_scaling_moves_i_to_e_i() {
        // The deck map z ↦ e^ℓ z with ℓ = 1.
        let m = MoebiusMap::scaling(1.0);
        let z = m.apply(UHPoint::I);
        assert!((z.x()).abs() < 1e-15);
        assert!((z.y() - 1.0f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn apply_inversion() {
        let m = MoebiusMap::new(0.0, -1.0, 1.0, 0.0).unwrap();
        let z = m.apply(pt(0.0, 2.0));
        assert!((z.x()).abs() < 1e-15);
        assert!((z.y() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn group_action_law() {
        let m1 = MoebiusMap::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let m2 = MoebiusMap::new(1.0, -0.7, 0.3, 1.0).unwrap();
        let z = pt(0.4, 2.3);
        let lhs = m1.compose(&m2).apply(z);
        let rhs = m1.apply(m2.apply(z));
        assert!(dist(lhs, rhs) < 1e-13);
    }

    #[test]
    fn dist_examples() {
        assert_eq!(dist(UHPoint::I, UHPoint::I), 0.0);
        let e = 1.0f64.exp();
        assert!((dist(UHPoint::I, pt(0.0, e)) - 1.0).abs() < 1e-14);
        // cosh d = 1 + |z−w|²/(2 Im z Im w) = 1.5 for i and 1+i.
        assert!((dist(UHPoint::I, pt(1.0, 1.0)) - 1.5f64.acosh()).abs() < 1e-14);
    }

    #[test]
    fn dist_is_moebius_invariant() {
        let m = MoebiusMap::new(3.0, 1.0, 2.0, 1.0).unwrap();
        let z = pt(-0.3, 0.7);
        let w = pt(2.0, 0.01);
        let d0 = dist(z, w);
        let d1 = dist(m.apply(z), m.apply(w));
        assert!((d0 - d1).abs() < 1e-10 * (1.0 + d0));
    }

    #[test]
    fn axis_distance_matches_polar_formula() {
        for &(x, y) in &[(1.0, 1.0), (0.5, 2.0), (-3.0, 0.2), (1e-8, 5.0)] {
            let z = pt(x, y);
            let theta = z.theta();
            let reference = (1.0 / theta.sin() + (theta.cos() / theta.sin()).abs()).ln();
            assert!((dist_to_imaginary_axis(z) - reference).abs() < 1e-12);
        }
    }

    #[test]
    fn axis_distance_on_axis_and_pi_over_4() {
        assert_eq!(dist_to_imaginary_axis(pt(0.0, 3.0)), 0.0);
        // θ = π/4 gives ln(√2 + 1).
        let z = pt(1.0, 1.0);
        assert!((dist_to_imaginary_axis(z) - (2.0f64.sqrt() + 1.0).ln()).abs() < 1e-14);
        // Reflection symmetry θ ↔ π − θ.
        assert_eq!(
            dist_to_imaginary_axis(pt(1.0, 1.0)),
            dist_to_imaginary_axis(pt(-1.0, 1.0))
        );
    }

    #[test]
    fn geodesic_u_perpendicular_crossing() {
        let axis = GeodesicLine::IMAGINARY_AXIS;
        let unit = GeodesicLine::Arc { p: -1.0, q: 1.0 };
        match geodesic_u(&axis, &unit).unwrap() {
            LinePosition::Crossing(u) => assert!(u.abs() < 1e-15),
            other => panic!("expected crossing, got {other:?}"),
        }
    }

    #[test]
    fn geodesic_u_disjoint_example() {
        let axis = GeodesicLine::IMAGINARY_AXIS;
        let g = GeodesicLine::Arc { p: 1.0, q: 2.0 };
        match geodesic_u(&axis, &g).unwrap() {
            LinePosition::Disjoint(u) => assert!((u - 3.0).abs() < 1e-14),
            other => panic!("expected disjoint, got {other:?}"),
        }
    }

    #[test]
    fn geodesic_u_shared_endpoint_is_error() {
        let v0 = GeodesicLine::Vertical { x: 0.0 };
        let v1 = GeodesicLine::Vertical { x: 1.0 };
        assert_eq!(geodesic_u(&v0, &v1), Err(HplaneError::SharedEndpoint));
    }

    #[test]
    fn axis_and_length_of_scaling() {
        let (axis, ell) = MoebiusMap::scaling(1.0).axis_and_length().unwrap();
        assert_eq!(axis, GeodesicLine::IMAGINARY_AXIS);
        assert!((ell - 1.0).abs() < 1e-14);
    }

    #[test]
    fn parabolic_has_no_axis() {
        let m = MoebiusMap::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            m.axis_and_length(),
            Err(HplaneError::NotHyperbolic { .. })
        ));
    }

    #[test]
    fn conjugation_preserves_length_and_maps_axis() {
        let m = MoebiusMap::scaling(1.0);
        let g = MoebiusMap::new(1.0, 2.0, 0.5, 3.0).unwrap();
        let conj = m.conjugate_by(&g);
        let (axis, ell) = conj.axis_and_length().unwrap();
        assert!((ell - 1.0).abs() < 1e-10);
        let image = g.apply_line(&GeodesicLine::IMAGINARY_AXIS).unwrap();
        let (p, q) = axis.endpoints();
        let (ip, iq) = image.endpoints();
        assert!(p.approx_eq(&ip, 1e-10) && q.approx_eq(&iq, 1e-10));
    }

    #[test]
    fn frame_conjugates_scaling_to_map() {
        let g = MoebiusMap::new(1.0, -2.0, 0.25, 3.0).unwrap();
        let m = MoebiusMap::scaling(0.8).conjugate_by(&g);
        let f = m.frame().unwrap();
        let rebuilt = MoebiusMap::scaling(m.translation_length().unwrap()).conjugate_by(&f);
        assert!(rebuilt.dist_to(&m) < 1e-10);
    }

    #[test]
    fn line_distance_matches_point_distance_sampling() {
        // Golden-section refinement of the point-to-line distance along g1,
        // as an independent oracle for the closed form.
        let g1 = GeodesicLine::Arc { p: -2.0, q: -0.5 };
        let g2 = GeodesicLine::Arc { p: 1.0, q: 4.0 };
        let d_closed = line_distance(&g1, &g2).unwrap();

        let sample = |t: f64| -> f64 {
            // Parametrize g1 by angle.
            let c = -1.25;
            let rho = 0.75;
            let theta = 0.02 + t * (std::f64::consts::PI - 0.04);
            let z = UHPoint::new(c + rho * theta.cos(), rho * theta.sin()).unwrap();
            g2.dist_to_point(z)
        };
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
        let (mut x1, mut x2) = (hi - inv_phi * (hi - lo), lo + inv_phi * (hi - lo));
        let (mut f1, mut f2) = (sample(x1), sample(x2));
        for _ in 0..200 {
            if f1 < f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = sample(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = sample(x2);
            }
        }
        let d_oracle = f1.min(f2);
        assert!(
            (d_closed - d_oracle).abs() < 1e-9,
            "closed {d_closed} vs oracle {d_oracle}"
        );
    }

    #[test]
    fn common_perpendicular_is_orthogonal() {
        let g1 = GeodesicLine::Arc { p: -2.0, q: -0.5 };
        let g2 = GeodesicLine::Arc { p: 1.0, q: 4.0 };
        let perp = common_perpendicular(&g1, &g2).unwrap();
        for g in [&g1, &g2] {
            match geodesic_u(g, &perp).unwrap() {
                LinePosition::Crossing(u) => assert!(u.abs() < 1e-12),
                other => panic!("expected perpendicular crossing, got {other:?}"),
            }
        }
    }

    #[test]
    fn midpoint_is_equidistant() {
        let z = pt(-1.0, 0.5);
        let w = pt(3.0, 2.0);
        let m = geodesic_midpoint(z, w);
        let (dz, dw) = (dist(z, m), dist(w, m));
        assert!((dz - dw).abs() < 1e-12);
        assert!((dz + dw - dist(z, w)).abs() < 1e-12);
    }

    #[test]
    fn circle_points_lie_at_radius() {
        for k in 0..16 {
            let phi = k as f64 * std::f64::consts::PI / 8.0;
            let z = circle_point_about_i(0.7, phi);
            assert!((dist(UHPoint::I, z) - 0.7).abs() < 1e-12);
            let back = direction_from_i(z);
            let mut diff = (back - phi).rem_euclid(2.0 * std::f64::consts::PI);
            if diff > std::f64::consts::PI {
                diff -= 2.0 * std::f64::consts::PI;
            }
            assert!(diff.abs() < 1e-9, "phi {phi} came back as {back}");
        }
    }

    #[test]
    fn double_reflection_in_concentric_circles_is_scaling() {
        let c2 = GeodesicLine::Arc { p: -1.0, q: 1.0 };
        let r3 = 0.75f64.exp();
        let c3 = GeodesicLine::Arc { p: -r3, q: r3 };
        let m = double_reflection(&c3, &c2).unwrap();
        // σ3 σ2 = z ↦ e^{2·0.75} z, translation length 1.5.
        assert!((m.translation_length().unwrap() - 1.5).abs() < 1e-14);
        let z = m.apply(UHPoint::I);
        assert!(z.y() > 1.0, "should translate away from 0");
    }
}
