//! Boundary pieces of plane/sphere domains and closed-form distances to them.
//!
//! Every piece is a subset of a generalized circle (circle or line, both of
//! which are circles on the sphere) or an isolated point. Euclidean distances
//! use planar closed forms; geodesic distances go through the unit-sphere
//! circle representation, where the nearest point on a full circle is known in
//! closed form and sub-arcs only add an interval test plus endpoint candidates.

use num_complex::Complex64;

use crate::sphere::{
    spherical_theta, theta_between_vectors, ExtendedPoint, SphereCircle, ThetaToPoint,
};

const TAU: f64 = std::f64::consts::TAU;

/// One piece of a domain boundary.
#[derive(Debug, Clone)]
pub enum BoundaryElement {
    /// Arc of a planar circle over the angle interval `phi.0..=phi.1`
    /// (radians, `phi.1 - phi.0 <= 2 pi`).
    Arc {
        center: Complex64,
        radius: f64,
        phi: (f64, f64),
    },
    /// Entire planar circle.
    Circle { center: Complex64, radius: f64 },
    /// Straight segment between two finite points.
    Segment { a: Complex64, b: Complex64 },
    /// Half-line from `origin` through infinity in direction `dir` (unit).
    Ray { origin: Complex64, dir: Complex64 },
    /// Entire line through `point` with direction `dir` (unit).
    Line { point: Complex64, dir: Complex64 },
    /// Isolated boundary point (a puncture).
    Point(Complex64),
}

impl BoundaryElement {
    /// Euclidean distance from a finite point to the piece.
    pub fn euclidean_distance(&self, z: Complex64) -> f64 {
        match *self {
            BoundaryElement::Circle { center, radius } => ((z - center).norm() - radius).abs(),
            BoundaryElement::Arc {
                center,
                radius,
                phi,
            } => {
                let v = z - center;
                let ang = normalize_angle(v.arg(), phi.0);
                if ang <= phi.1 {
                    (v.norm() - radius).abs()
                } else {
                    let pa = center + Complex64::from_polar(radius, phi.0);
                    let pb = center + Complex64::from_polar(radius, phi.1);
                    (z - pa).norm().min((z - pb).norm())
                }
            }
            BoundaryElement::Segment { a, b } => {
                let ab = b - a;
                let len2 = ab.norm_sqr();
                if len2 == 0.0 {
                    return (z - a).norm();
                }
                let t = ((z - a) * ab.conj()).re / len2;
                let t = t.clamp(0.0, 1.0);
                (z - (a + ab * t)).norm()
            }
            BoundaryElement::Ray { origin, dir } => {
                let t = ((z - origin) * dir.conj()).re.max(0.0);
                (z - (origin + dir * t)).norm()
            }
            BoundaryElement::Line { point, dir } => ((z - point) * dir.conj()).im.abs(),
            BoundaryElement::Point(q) => (z - q).norm(),
        }
    }

    /// Geodesic distance from a sphere point to the piece.
    pub fn theta_distance(&self, z: ExtendedPoint) -> f64 {
        let u = z.unit_vector();
        match *self {
            BoundaryElement::Point(q) => spherical_theta(z, ExtendedPoint::Finite(q)),
            BoundaryElement::Circle { center, radius } => {
                sphere_circle_of_circle(center, radius).theta_distance(u)
            }
            BoundaryElement::Line { point, dir } => {
                sphere_circle_of_line(point, dir).theta_distance(u)
            }
            BoundaryElement::Arc {
                center,
                radius,
                phi,
            } => {
                let circle = sphere_circle_of_circle(center, radius);
                let full = circle.theta_distance(u);
                match circle.nearest_point(u).map(ExtendedPoint::from_unit_vector) {
                    Some(ExtendedPoint::Finite(zn)) => {
                        let ang = normalize_angle((zn - center).arg(), phi.0);
                        if ang <= phi.1 {
                            full
                        } else {
                            let pa = center + Complex64::from_polar(radius, phi.0);
                            let pb = center + Complex64::from_polar(radius, phi.1);
                            spherical_theta(z, ExtendedPoint::Finite(pa))
                                .min(spherical_theta(z, ExtendedPoint::Finite(pb)))
                        }
                    }
                    // nearest point at infinity cannot lie on a planar circle;
                    // axis-degenerate case: all circle points are equidistant
                    _ => full,
                }
            }
            BoundaryElement::Segment { a, b } => {
                let circle = sphere_circle_of_line(a, unit_dir(b - a));
                let full = circle.theta_distance(u);
                match circle.nearest_point(u).map(ExtendedPoint::from_unit_vector) {
                    Some(ExtendedPoint::Finite(zn)) => {
                        let t = ((zn - a) * (b - a).conj()).re / (b - a).norm_sqr();
                        if (0.0..=1.0).contains(&t) {
                            full
                        } else {
                            spherical_theta(z, ExtendedPoint::Finite(a))
                                .min(spherical_theta(z, ExtendedPoint::Finite(b)))
                        }
                    }
                    _ => spherical_theta(z, ExtendedPoint::Finite(a))
                        .min(spherical_theta(z, ExtendedPoint::Finite(b))),
                }
            }
            BoundaryElement::Ray { origin, dir } => {
                let circle = sphere_circle_of_line(origin, dir);
                let full = circle.theta_distance(u);
                match circle.nearest_point(u).map(ExtendedPoint::from_unit_vector) {
                    Some(ExtendedPoint::Finite(zn)) => {
                        let t = ((zn - origin) * dir.conj()).re;
                        if t >= 0.0 {
                            full
                        } else {
                            // the ray's closure ends at origin and infinity
                            spherical_theta(z, ExtendedPoint::Finite(origin))
                                .min(spherical_theta(z, ExtendedPoint::Infinity))
                        }
                    }
                    // nearest point is infinity, which the ray closure contains
                    Some(ExtendedPoint::Infinity) | None => full,
                }
            }
        }
    }

    /// One representative point of the piece.
    pub fn sample_point(&self) -> ExtendedPoint {
        match *self {
            BoundaryElement::Circle { center, radius } => {
                ExtendedPoint::Finite(center + Complex64::new(radius, 0.0))
            }
            BoundaryElement::Arc {
                center,
                radius,
                phi,
            } => ExtendedPoint::Finite(center + Complex64::from_polar(radius, 0.5 * (phi.0 + phi.1))),
            BoundaryElement::Segment { a, b } => ExtendedPoint::Finite(0.5 * (a + b)),
            BoundaryElement::Ray { origin, dir } => ExtendedPoint::Finite(origin + dir),
            BoundaryElement::Line { point, .. } => ExtendedPoint::Finite(point),
            BoundaryElement::Point(q) => ExtendedPoint::Finite(q),
        }
    }

    /// True for pieces with interior (arcs, segments); isolated points are
    /// what make a boundary fail to be perfect.
    pub fn is_isolated_point(&self) -> bool {
        matches!(self, BoundaryElement::Point(_))
    }

    /// Finite planar points that pin down the piece's extent (for bounding
    /// boxes). Unbounded pieces contribute their anchors only.
    pub fn feature_points(&self) -> Vec<Complex64> {
        match *self {
            BoundaryElement::Circle { center, radius } => vec![
                center + Complex64::new(radius, 0.0),
                center - Complex64::new(radius, 0.0),
                center + Complex64::new(0.0, radius),
                center - Complex64::new(0.0, radius),
            ],
            BoundaryElement::Arc {
                center,
                radius,
                phi,
            } => {
                let mut pts = vec![
                    center + Complex64::from_polar(radius, phi.0),
                    center + Complex64::from_polar(radius, phi.1),
                    center + Complex64::from_polar(radius, 0.5 * (phi.0 + phi.1)),
                ];
                // include axis extremes covered by the interval
                for k in -4..=8 {
                    let ang = k as f64 * std::f64::consts::FRAC_PI_2;
                    if ang >= phi.0 && ang <= phi.1 {
                        pts.push(center + Complex64::from_polar(radius, ang));
                    }
                }
                pts
            }
            BoundaryElement::Segment { a, b } => vec![a, b],
            BoundaryElement::Ray { origin, dir } => vec![origin, origin + dir],
            BoundaryElement::Line { point, dir } => vec![point, point + dir],
            BoundaryElement::Point(q) => vec![q],
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(
            self,
            BoundaryElement::Ray { .. } | BoundaryElement::Line { .. }
        )
    }
}

impl ThetaToPoint for BoundaryElement {
    fn theta_to(&self, z: ExtendedPoint) -> f64 {
        self.theta_distance(z)
    }
}

/// Minimum Euclidean distance over a list of pieces.
pub fn euclidean_distance_to(elements: &[BoundaryElement], z: Complex64) -> f64 {
    elements
        .iter()
        .map(|e| e.euclidean_distance(z))
        .fold(f64::INFINITY, f64::min)
}

/// Brings `angle` into `[start, start + 2 pi)`.
pub fn normalize_angle(angle: f64, start: f64) -> f64 {
    let mut a = (angle - start) % TAU;
    if a < 0.0 {
        a += TAU;
    }
    start + a
}

fn unit_dir(v: Complex64) -> Complex64 {
    v / v.norm()
}

/// Sphere circle carrying a planar circle.
pub fn sphere_circle_of_circle(center: Complex64, radius: f64) -> SphereCircle {
    let at = |phi: f64| {
        ExtendedPoint::Finite(center + Complex64::from_polar(radius, phi)).unit_vector()
    };
    SphereCircle::from_three_points(at(0.0), at(TAU / 3.0), at(2.0 * TAU / 3.0))
        .expect("planar circle maps to a nondegenerate sphere circle")
}

/// Sphere circle carrying a planar line (it passes through infinity).
pub fn sphere_circle_of_line(point: Complex64, dir: Complex64) -> SphereCircle {
    let l = 1.0 + point.norm();
    let p1 = ExtendedPoint::Finite(point).unit_vector();
    let p2 = ExtendedPoint::Finite(point + dir * l).unit_vector();
    let p3 = [0.0, 0.0, 1.0];
    SphereCircle::from_three_points(p1, p2, p3)
        .or_else(|| {
            // point extremely близко to infinity on the sphere; use a second
            // finite anchor instead
            SphereCircle::from_three_points(
                ExtendedPoint::Finite(point - dir * l).unit_vector(),
                p2,
                p3,
            )
        })
        .expect("line maps to a nondegenerate sphere circle")
}

/// Planar circle or line recovered from a sphere circle.
pub enum PlanarCircle {
    Circle { center: Complex64, radius: f64 },
    Line { point: Complex64, dir: Complex64 },
}

/// Converts `{u : u.axis = cos angle}` back to planar form.
pub fn sphere_circle_to_planar(circle: &SphereCircle) -> PlanarCircle {
    let [n1, n2, n3] = circle.axis;
    let ca = circle.angle.cos();
    // (n3 - cos a)(x^2+y^2) + 2 n1 x + 2 n2 y - (n3 + cos a) = 0
    let q = n3 - ca;
    if q.abs() < 1e-12 {
        let nn = (n1 * n1 + n2 * n2).sqrt();
        let offset = (n3 + ca) / (2.0 * nn);
        let normal = Complex64::new(n1 / nn, n2 / nn);
        PlanarCircle::Line {
            point: normal * offset,
            dir: normal * Complex64::I,
        }
    } else {
        let center = Complex64::new(-n1 / q, -n2 / q);
        let r2 = (n1 * n1 + n2 * n2) / (q * q) + (n3 + ca) / q;
        PlanarCircle::Circle {
            center,
            radius: r2.max(0.0).sqrt(),
        }
    }
}

/// Circle through three planar points; `None` when they are collinear.
pub fn circumcircle(a: Complex64, b: Complex64, c: Complex64) -> Option<(Complex64, f64)> {
    let d = 2.0 * ((b - a) * (c - a).conj()).im;
    let scale = (b - a).norm().max((c - a).norm());
    if d.abs() < 1e-12 * scale * scale {
        return None;
    }
    // circumcenter via perpendicular bisector intersection
    let ux = ((b - a).norm_sqr() * (c - a).im - (c - a).norm_sqr() * (b - a).im) / d;
    let uy = ((c - a).norm_sqr() * (b - a).re - (b - a).norm_sqr() * (c - a).re) / d;
    let center = a + Complex64::new(ux, -uy);
    // recompute: standard formula gives center relative to a
    Some((center, (center - a).norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn euclidean_distances_closed_forms() {
        let circle = BoundaryElement::Circle {
            center: c(0.0, 0.0),
            radius: 1.0,
        };
        assert_relative_eq!(circle.euclidean_distance(c(0.5, 0.0)), 0.5);
        assert_relative_eq!(circle.euclidean_distance(c(3.0, 0.0)), 2.0);

        let seg = BoundaryElement::Segment {
            a: c(0.0, 0.0),
            b: c(1.0, 0.0),
        };
        assert_relative_eq!(seg.euclidean_distance(c(0.5, 0.7)), 0.7);
        assert_relative_eq!(seg.euclidean_distance(c(2.0, 0.0)), 1.0);

        let ray = BoundaryElement::Ray {
            origin: c(0.0, 0.0),
            dir: c(1.0, 0.0),
        };
        assert_relative_eq!(ray.euclidean_distance(c(-3.0, 4.0)), 5.0);
        assert_relative_eq!(ray.euclidean_distance(c(2.0, -0.5)), 0.5);

        let arc = BoundaryElement::Arc {
            center: c(0.0, 0.0),
            radius: 1.0,
            phi: (std::f64::consts::FRAC_PI_2, 1.5 * std::f64::consts::PI),
        };
        // nearest full-circle point (1,0) is outside the arc; endpoint (0,1) wins
        assert_relative_eq!(
            arc.euclidean_distance(c(2.0, 0.0)),
            (c(2.0, 0.0) - c(0.0, 1.0)).norm()
        );
        assert_relative_eq!(arc.euclidean_distance(c(-2.0, 0.0)), 1.0);
    }

    #[test]
    fn theta_distance_to_unit_circle() {
        let circle = BoundaryElement::Circle {
            center: c(0.0, 0.0),
            radius: 1.0,
        };
        // tau(0.5, boundary) = 1/3 via theta
        let th = circle.theta_distance(ExtendedPoint::new(0.5, 0.0));
        assert_relative_eq!(th.tan(), 1.0 / 3.0, max_relative = 1e-12);
        // from the center the distance is pi/4 (it is a great circle)
        let th0 = circle.theta_distance(ExtendedPoint::new(0.0, 0.0));
        assert_relative_eq!(th0, std::f64::consts::FRAC_PI_4, max_relative = 1e-12);
        // same from infinity
        let thi = circle.theta_distance(ExtendedPoint::Infinity);
        assert_relative_eq!(thi, std::f64::consts::FRAC_PI_4, max_relative = 1e-12);
    }

    #[test]
    fn theta_distance_matches_dense_scan_on_arc() {
        let arc = BoundaryElement::Arc {
            center: c(-1.0, 0.0),
            radius: 1.0,
            phi: (std::f64::consts::FRAC_PI_2, 1.5 * std::f64::consts::PI),
        };
        for z in [
            ExtendedPoint::new(-2.5, 0.1),
            ExtendedPoint::new(0.5, 0.5),
            ExtendedPoint::new(-1.0, 2.0),
            ExtendedPoint::Infinity,
        ] {
            let mut scan = f64::INFINITY;
            for k in 0..=40000 {
                let phi = std::f64::consts::FRAC_PI_2
                    + std::f64::consts::PI * k as f64 / 40000.0;
                let p = c(-1.0, 0.0) + Complex64::from_polar(1.0, phi);
                scan = scan.min(spherical_theta(z, ExtendedPoint::Finite(p)));
            }
            assert_relative_eq!(arc.theta_distance(z), scan, max_relative = 1e-6, epsilon = 1e-8);
        }
    }

    #[test]
    fn theta_distance_to_ray_includes_infinity() {
        // ray along the positive real axis from 2: its closure contains inf
        let ray = BoundaryElement::Ray {
            origin: c(2.0, 0.0),
            dir: c(1.0, 0.0),
        };
        // from a huge point near infinity the distance tends to zero
        let far = ExtendedPoint::new(0.0, 1e8);
        assert!(ray.theta_distance(far) < 1e-7);
        // from 0, nearest closure point is the origin of the ray
        let th = ray.theta_distance(ExtendedPoint::new(0.0, 0.0));
        let direct = spherical_theta(ExtendedPoint::new(0.0, 0.0), ExtendedPoint::new(2.0, 0.0));
        assert_relative_eq!(th, direct, max_relative = 1e-10);
    }

    #[test]
    fn sphere_circle_planar_round_trip() {
        let circle = sphere_circle_of_circle(c(0.3, -0.7), 1.4);
        match sphere_circle_to_planar(&circle) {
            PlanarCircle::Circle { center, radius } => {
                assert_relative_eq!(center.re, 0.3, epsilon = 1e-9);
                assert_relative_eq!(center.im, -0.7, epsilon = 1e-9);
                assert_relative_eq!(radius, 1.4, epsilon = 1e-9);
            }
            PlanarCircle::Line { .. } => panic!("expected circle"),
        }
        let line = sphere_circle_of_line(c(-2.0, 0.0), c(0.0, 1.0));
        match sphere_circle_to_planar(&line) {
            PlanarCircle::Line { point, dir } => {
                // the line Re z = -2
                assert_relative_eq!(point.re, -2.0, epsilon = 1e-9);
                assert!(dir.re.abs() < 1e-9);
            }
            PlanarCircle::Circle { center, radius } => {
                panic!("expected line, got circle at {center} r={radius}")
            }
        }
    }

    #[test]
    fn circumcircle_of_three_points() {
        let (center, radius) = circumcircle(c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)).unwrap();
        assert!(center.norm() < 1e-12);
        assert_relative_eq!(radius, 1.0);
        assert!(circumcircle(c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)).is_none());
    }
}
