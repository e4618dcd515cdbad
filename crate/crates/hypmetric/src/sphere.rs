//! Geometry of the Riemann sphere: the chordal, geodesic and pseudo-chordal
//! distances, antipodes, great-circle arcs and the rotation group.
//!
//! Conventions. The sphere has diameter 1, so the chordal distance `sigma`
//! takes values in `[0, 1]`, the geodesic distance `theta = arcsin sigma =
//! arctan tau` takes values in `[0, pi/2]`, and a full great circle has length
//! `pi`. Internally points are also represented as unit vectors; the angle
//! between unit vectors is `2 theta`.
//!
//! The point at infinity is a first-class value, never a large float; every
//! distance formula has an explicit branch for it.

use num_complex::Complex64;
use thiserror::Error;

/// Absolute floating-point tolerance near zero. Comparisons use
/// `|a-b| <= ABS_TOL + REL_TOL * max(|a|,|b|)` throughout the crate.
pub const ABS_TOL: f64 = 1e-12;
/// Relative floating-point tolerance away from zero.
pub const REL_TOL: f64 = 1e-10;

/// `|a - b| <= ABS_TOL + REL_TOL * max(|a|, |b|)`.
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= ABS_TOL + REL_TOL * a.abs().max(b.abs())
}

#[derive(Debug, Error, PartialEq, Eq, Clone, Copy)]
pub enum SphereError {
    /// A boundary description yielded no points.
    #[error("empty boundary")]
    EmptyBoundary,
    /// Antipodal points admit no unique shorter geodesic.
    #[error("antipodal pair has no unique shorter geodesic")]
    AntipodalPair,
}

/// A point of the Riemann sphere: a finite complex number or infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedPoint {
    Finite(Complex64),
    Infinity,
}

pub use ExtendedPoint::Infinity as INFINITY;

impl ExtendedPoint {
    pub fn new(re: f64, im: f64) -> Self {
        ExtendedPoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedPoint::Infinity)
    }

    pub fn finite(self) -> Option<Complex64> {
        match self {
            ExtendedPoint::Finite(z) => Some(z),
            ExtendedPoint::Infinity => None,
        }
    }

    /// The diametrically opposite point `-1/conj(z)`.
    pub fn antipode(self) -> Self {
        match self {
            ExtendedPoint::Infinity => ExtendedPoint::Finite(Complex64::ZERO),
            ExtendedPoint::Finite(z) if z == Complex64::ZERO => ExtendedPoint::Infinity,
            ExtendedPoint::Finite(z) => ExtendedPoint::Finite(-z.conj().inv()),
        }
    }

    /// Stereographic image on the unit sphere, `(2x, 2y, |z|^2-1)/(1+|z|^2)`.
    pub fn unit_vector(self) -> [f64; 3] {
        match self {
            ExtendedPoint::Infinity => [0.0, 0.0, 1.0],
            ExtendedPoint::Finite(z) => {
                let n2 = z.norm_sqr();
                if n2 > 1e30 {
                    // near the north pole; reciprocals keep full precision
                    let w = z.inv();
                    let m2 = w.norm_sqr();
                    let s = 1.0 / (1.0 + m2);
                    [2.0 * w.re * s, -2.0 * w.im * s, (1.0 - m2) * s]
                } else {
                    let s = 1.0 / (1.0 + n2);
                    [2.0 * z.re * s, 2.0 * z.im * s, (n2 - 1.0) * s]
                }
            }
        }
    }

    /// Inverse of [`unit_vector`](Self::unit_vector).
    pub fn from_unit_vector(v: [f64; 3]) -> Self {
        let denom = 1.0 - v[2];
        if denom <= 1e-14 {
            ExtendedPoint::Infinity
        } else {
            ExtendedPoint::Finite(Complex64::new(v[0] / denom, v[1] / denom))
        }
    }

    /// Maximum of the coordinate-wise distances, with infinity equal only to
    /// itself. Used by tests and tie-breaking, not a metric.
    pub fn roughly(self, other: Self, tol: f64) -> bool {
        match (self, other) {
            (ExtendedPoint::Infinity, ExtendedPoint::Infinity) => true,
            (ExtendedPoint::Finite(a), ExtendedPoint::Finite(b)) => (a - b).norm() <= tol,
            _ => false,
        }
    }
}

impl From<Complex64> for ExtendedPoint {
    fn from(z: Complex64) -> Self {
        ExtendedPoint::Finite(z)
    }
}

impl From<f64> for ExtendedPoint {
    fn from(x: f64) -> Self {
        ExtendedPoint::Finite(Complex64::new(x, 0.0))
    }
}

impl std::fmt::Display for ExtendedPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtendedPoint::Infinity => write!(f, "inf"),
            ExtendedPoint::Finite(z) => write!(f, "{}+{}i", z.re, z.im),
        }
    }
}

/// Chordal distance, values in `[0, 1]`:
/// `sigma(z,w) = |z-w| / sqrt((1+|z|^2)(1+|w|^2))`, `sigma(z,inf) = 1/sqrt(1+|z|^2)`.
pub fn chordal_sigma(z: ExtendedPoint, w: ExtendedPoint) -> f64 {
    use ExtendedPoint::*;
    match (z, w) {
        (Infinity, Infinity) => 0.0,
        (Finite(z), Infinity) | (Infinity, Finite(z)) => 1.0 / (1.0 + z.norm_sqr()).sqrt(),
        (Finite(z), Finite(w)) => {
            if z.norm_sqr() > 1.0 && w.norm_sqr() > 1.0 {
                // sigma is invariant under z -> 1/z applied to both arguments;
                // recursing keeps |z w| from overflowing
                return chordal_sigma(
                    ExtendedPoint::Finite(z.inv()),
                    ExtendedPoint::Finite(w.inv()),
                );
            }
            ((z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()).min(1.0)
        }
    }
}

/// Pseudo-chordal distance `tau(z,w) = |z-w| / |1+z conj(w)|`, values in
/// `[0, +inf]`; antipodal pairs map to `+inf`.
pub fn pseudo_tau(z: ExtendedPoint, w: ExtendedPoint) -> f64 {
    use ExtendedPoint::*;
    match (z, w) {
        (Infinity, Infinity) => 0.0,
        (Finite(z), Infinity) | (Infinity, Finite(z)) => {
            if z == Complex64::ZERO {
                f64::INFINITY
            } else {
                1.0 / z.norm()
            }
        }
        (Finite(z), Finite(w)) => {
            if z.norm_sqr() > 1.0 && w.norm_sqr() > 1.0 {
                // same inversion trick as for sigma
                return pseudo_tau(ExtendedPoint::Finite(z.inv()), ExtendedPoint::Finite(w.inv()));
            }
            let num = (z - w).norm();
            let den = (Complex64::ONE + z * w.conj()).norm();
            if den == 0.0 {
                if num == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                num / den
            }
        }
    }
}

/// Geodesic (great-circle) distance `theta = arcsin sigma = arctan tau`,
/// values in `[0, pi/2]`. Computed from the unit-vector representation, which
/// stays accurate near antipodal pairs.
pub fn spherical_theta(z: ExtendedPoint, w: ExtendedPoint) -> f64 {
    theta_between_vectors(z.unit_vector(), w.unit_vector())
}

/// `theta` between two unit vectors (half the 3-space angle).
pub fn theta_between_vectors(u: [f64; 3], v: [f64; 3]) -> f64 {
    cross_norm(u, v).atan2(dot(u, v)) / 2.0
}

/// One of the three spherical distance functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chi {
    Sigma,
    Theta,
    Tau,
}

impl Chi {
    /// Converts a geodesic distance into this distance. All three are
    /// increasing functions of `theta`, so minimizers coincide.
    pub fn from_theta(self, theta: f64) -> f64 {
        match self {
            Chi::Sigma => theta.sin(),
            Chi::Theta => theta,
            Chi::Tau => {
                if theta >= std::f64::consts::FRAC_PI_2 {
                    f64::INFINITY
                } else {
                    theta.tan()
                }
            }
        }
    }

    pub fn apply(self, z: ExtendedPoint, w: ExtendedPoint) -> f64 {
        match self {
            Chi::Sigma => chordal_sigma(z, w),
            Chi::Theta => spherical_theta(z, w),
            Chi::Tau => pseudo_tau(z, w),
        }
    }
}

impl std::fmt::Display for Chi {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Chi::Sigma => write!(f, "sigma"),
            Chi::Theta => write!(f, "theta"),
            Chi::Tau => write!(f, "tau"),
        }
    }
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn cross_norm(a: [f64; 3], b: [f64; 3]) -> f64 {
    let c = cross(a, b);
    dot(c, c).sqrt()
}

pub(crate) fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = dot(v, v).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

pub(crate) fn scale_add(a: [f64; 3], sa: f64, b: [f64; 3], sb: f64) -> [f64; 3] {
    [
        a[0] * sa + b[0] * sb,
        a[1] * sa + b[1] * sb,
        a[2] * sa + b[2] * sb,
    ]
}

/// Which of the two isometry normal forms a transformation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryKind {
    /// `T(z) = e^{it} (z - a) / (1 + conj(a) z)`.
    Rotation,
    /// `T(z) = e^{it} / z`.
    InversionRotation,
}

/// A rotation of the Riemann sphere.
///
/// Stored in one of the two normal forms above; composition and inversion go
/// through the unitary matrix representation `[[alpha, beta], [-conj(beta),
/// conj(alpha)]]` with `|alpha|^2 + |beta|^2 = 1` and come back out in normal
/// form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalIsometry {
    pub kind: IsometryKind,
    /// Rotation phase in radians.
    pub t: f64,
    /// Finite parameter of the rotation form; zero for the inversion form.
    pub a: Complex64,
}

impl SphericalIsometry {
    pub fn identity() -> Self {
        SphericalIsometry {
            kind: IsometryKind::Rotation,
            t: 0.0,
            a: Complex64::ZERO,
        }
    }

    /// `T(z) = e^{it} (z - a) / (1 + conj(a) z)` for finite `a`.
    pub fn rotation(t: f64, a: Complex64) -> Self {
        SphericalIsometry {
            kind: IsometryKind::Rotation,
            t,
            a,
        }
    }

    /// `T(z) = e^{it} / z`.
    pub fn inversion_rotation(t: f64) -> Self {
        SphericalIsometry {
            kind: IsometryKind::InversionRotation,
            t,
            a: Complex64::ZERO,
        }
    }

    /// Unitary representation `(alpha, beta)` with unit determinant.
    pub fn matrix(&self) -> (Complex64, Complex64) {
        let half = Complex64::from_polar(1.0, self.t / 2.0);
        match self.kind {
            IsometryKind::Rotation => {
                let s = 1.0 / (1.0 + self.a.norm_sqr()).sqrt();
                (half * s, -half * self.a * s)
            }
            IsometryKind::InversionRotation => (Complex64::ZERO, Complex64::I * half),
        }
    }

    /// Recovers the normal form from a (not necessarily normalized) unitary
    /// pair. `(alpha, beta)` and `(-alpha, -beta)` give the same isometry.
    pub fn from_matrix(alpha: Complex64, beta: Complex64) -> Self {
        let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        let (alpha, beta) = (alpha / n, beta / n);
        if alpha.norm() > 1e-12 {
            SphericalIsometry::rotation(2.0 * alpha.arg(), -beta / alpha)
        } else {
            SphericalIsometry::inversion_rotation(2.0 * beta.arg() - std::f64::consts::PI)
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SphericalIsometry) -> Self {
        let (a1, b1) = self.matrix();
        let (a2, b2) = other.matrix();
        SphericalIsometry::from_matrix(a1 * a2 - b1 * b2.conj(), a1 * b2 + b1 * a2.conj())
    }

    pub fn inverse(&self) -> Self {
        let (alpha, beta) = self.matrix();
        SphericalIsometry::from_matrix(alpha.conj(), -beta)
    }

    /// Applies the isometry; the pole `z = -1/conj(a) e^{..}` maps to infinity.
    pub fn apply(&self, z: ExtendedPoint) -> ExtendedPoint {
        let (alpha, beta) = self.matrix();
        match z {
            ExtendedPoint::Infinity => {
                if beta == Complex64::ZERO {
                    ExtendedPoint::Infinity
                } else {
                    ExtendedPoint::Finite(-alpha / beta.conj())
                }
            }
            ExtendedPoint::Finite(z) => {
                let den = -beta.conj() * z + alpha.conj();
                let num = alpha * z + beta;
                if den.norm() <= 1e-300 * num.norm().max(1.0) {
                    ExtendedPoint::Infinity
                } else {
                    ExtendedPoint::Finite(num / den)
                }
            }
        }
    }

    /// Complex derivative `T'(z) = 1 / (-conj(beta) z + conj(alpha))^2`.
    /// The caller must keep `z` away from the pole.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let (alpha, beta) = self.matrix();
        let den = -beta.conj() * z + alpha.conj();
        (den * den).inv()
    }

    /// Haar-uniform random rotation; used by stress tests and the verifier.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R) -> Self {
        // four gaussians via Box-Muller, normalized to a unit quaternion
        let mut g = || {
            let u1: f64 = rng.random::<f64>().max(1e-300);
            let u2: f64 = rng.random();
            (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
        };
        let q = [g(), g(), g(), g()];
        let n = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
        SphericalIsometry::from_matrix(
            Complex64::new(q[0] / n, q[1] / n),
            Complex64::new(q[2] / n, q[3] / n),
        )
    }

    /// The rotation sending `p` to 0 (a `t = 0` rotation form).
    pub fn sending_to_zero(p: Complex64) -> Self {
        SphericalIsometry::rotation(0.0, p)
    }
}

/// A circle on the sphere: `{u : u . axis = cos_a}` in unit-vector form.
/// `angle` is the angular radius in `(0, pi)` on the unit sphere, i.e. twice
/// the `theta`-radius of the corresponding spherical cap.
#[derive(Debug, Clone, Copy)]
pub struct SphereCircle {
    pub axis: [f64; 3],
    pub angle: f64,
}

impl SphereCircle {
    pub fn from_three_points(p1: [f64; 3], p2: [f64; 3], p3: [f64; 3]) -> Option<Self> {
        let n = cross(
            [p2[0] - p1[0], p2[1] - p1[1], p2[2] - p1[2]],
            [p3[0] - p1[0], p3[1] - p1[1], p3[2] - p1[2]],
        );
        let nn = dot(n, n).sqrt();
        if nn < 1e-14 {
            return None;
        }
        let axis = [n[0] / nn, n[1] / nn, n[2] / nn];
        Some(SphereCircle {
            axis,
            angle: dot(axis, p1).clamp(-1.0, 1.0).acos(),
        })
    }

    /// The circle of all points at `theta`-distance `theta_radius` from
    /// `center`.
    pub fn cap_boundary(center: ExtendedPoint, theta_radius: f64) -> Self {
        SphereCircle {
            axis: center.unit_vector(),
            angle: 2.0 * theta_radius,
        }
    }

    /// `theta`-distance from a point to the circle (closed form).
    pub fn theta_distance(&self, u: [f64; 3]) -> f64 {
        let d = cross_norm(u, self.axis).atan2(dot(u, self.axis));
        (d - self.angle).abs() / 2.0
    }

    /// Point of the circle nearest to `u`; `None` when `u` is on the axis
    /// (every circle point is then nearest).
    pub fn nearest_point(&self, u: [f64; 3]) -> Option<[f64; 3]> {
        let t = scale_add(u, 1.0, self.axis, -dot(u, self.axis));
        let tn = dot(t, t).sqrt();
        if tn < 1e-14 {
            return None;
        }
        let t = [t[0] / tn, t[1] / tn, t[2] / tn];
        Some(scale_add(self.axis, self.angle.cos(), t, self.angle.sin()))
    }

    /// True when the circle is a great circle (passes through antipodal
    /// pairs), up to tolerance.
    pub fn is_great(&self) -> bool {
        (self.angle - std::f64::consts::FRAC_PI_2).abs() < 1e-9
    }
}

/// The shorter great-circle arc between two non-antipodal points.
///
/// Parametrized as `p(s) = start cos s + tangent sin s` for `s` in
/// `[0, angle]` on the unit sphere; the `theta`-length is `angle / 2`.
#[derive(Debug, Clone, Copy)]
pub struct GeodesicArc {
    pub start: [f64; 3],
    pub tangent: [f64; 3],
    /// Unit-sphere angle spanned, in `[0, pi)`.
    pub angle: f64,
}

impl GeodesicArc {
    pub fn between(z1: ExtendedPoint, z2: ExtendedPoint) -> Result<Self, SphereError> {
        let u = z1.unit_vector();
        let v = z2.unit_vector();
        let angle = cross_norm(u, v).atan2(dot(u, v));
        if angle > std::f64::consts::PI - 1e-9 {
            return Err(SphereError::AntipodalPair);
        }
        if angle < 1e-15 {
            // degenerate point arc
            let t = if u[0].abs() < 0.9 {
                normalize(cross(u, [1.0, 0.0, 0.0]))
            } else {
                normalize(cross(u, [0.0, 1.0, 0.0]))
            };
            return Ok(GeodesicArc {
                start: u,
                tangent: t,
                angle: 0.0,
            });
        }
        let t = normalize(scale_add(v, 1.0, u, -dot(u, v)));
        Ok(GeodesicArc {
            start: u,
            tangent: t,
            angle,
        })
    }

    pub fn point_at(&self, s: f64) -> [f64; 3] {
        scale_add(self.start, s.cos(), self.tangent, s.sin())
    }

    /// `theta`-length of the arc.
    pub fn theta_length(&self) -> f64 {
        self.angle / 2.0
    }

    /// Full great circle carrying the arc.
    pub fn great_circle(&self) -> SphereCircle {
        SphereCircle {
            axis: normalize(cross(self.start, self.tangent)),
            angle: std::f64::consts::FRAC_PI_2,
        }
    }

    /// Arc parameters `s` in `[0, angle]` where the arc crosses the sphere
    /// circle, sorted ascending.
    pub fn crossings(&self, circle: &SphereCircle) -> Vec<f64> {
        // start.n cos s + tangent.n sin s = cos A  =>  R cos(s - phase) = cos A
        let c = dot(self.start, circle.axis);
        let s = dot(self.tangent, circle.axis);
        let r = (c * c + s * s).sqrt();
        let target = circle.angle.cos();
        let mut out = Vec::new();
        if r < 1e-15 || (target / r).abs() > 1.0 {
            return out;
        }
        let phase = s.atan2(c);
        let delta = (target / r).acos();
        for cand in [phase - delta, phase + delta] {
            // bring into [0, 2pi) then test membership in [0, angle]
            let mut s0 = cand % (2.0 * std::f64::consts::PI);
            if s0 < 0.0 {
                s0 += 2.0 * std::f64::consts::PI;
            }
            if s0 <= self.angle + 1e-12 {
                out.push(s0.min(self.angle));
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        out
    }
}

/// Anything with a closed-form geodesic distance to a point; boundary pieces
/// of domains implement this.
pub trait ThetaToPoint {
    /// `theta`-distance from `z` to the piece.
    fn theta_to(&self, z: ExtendedPoint) -> f64;
}

/// `chi(z, boundary) = min over boundary pieces of chi(z, .)`.
///
/// All three distances are increasing in `theta`, so one `theta` minimization
/// serves every `chi`.
pub fn boundary_chi_distance<T: ThetaToPoint>(
    z: ExtendedPoint,
    boundary: &[T],
    chi: Chi,
) -> Result<f64, SphereError> {
    if boundary.is_empty() {
        return Err(SphereError::EmptyBoundary);
    }
    let theta = boundary
        .iter()
        .map(|piece| piece.theta_to(z))
        .fold(f64::INFINITY, f64::min);
    Ok(chi.from_theta(theta))
}
