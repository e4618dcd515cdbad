//! Hyperbolic metric densities with Gaussian curvature -4 on plane and sphere
//! domains, and the extremal distance-density quantities that characterize
//! Euclidean and spherical convexity.
//!
//! The library provides:
//!
//! - spherical geometry on the Riemann sphere: chordal (`sigma`), pseudo-chordal
//!   (`tau`) and geodesic (`theta`) distances, antipodes, great-circle arcs and
//!   the rotation group ([`sphere`]);
//! - circular-arc bounded domains with exact predicates, grid-masked domains,
//!   and Euclidean/spherical boundary distances ([`domain`]);
//! - closed-form hyperbolic densities for canonical domains and their behaviour
//!   under sphere rotations ([`density`]);
//! - a finite-difference Newton solver for the curvature equation
//!   `Δ log λ = 4 λ²` on grid domains ([`pde`]);
//! - estimators for `C(Ω) = inf d·λ` and its spherical analogues
//!   `Ĉ_χ(Ω) = inf χ·μ`, plus uniform-perfectness constants ([`quantity`]);
//! - convexity and spherical-convexity tests with constructive witness lunes
//!   ([`convexity`]);
//! - the verification suite run by `hypmetric verify` ([`verify`]).
//!
//! With the default `parallel` feature the heavy inner loops (grid scans,
//! Newton linear algebra, batch evaluation) run on rayon; disabling the feature
//! selects sequential fallbacks with identical results.

pub mod convexity;
pub mod density;
pub mod domain;
pub mod exec;
pub mod pde;
pub mod quantity;
pub mod sphere;
pub mod verify;

pub use domain::{CircularDomain, GridDomain, Lune, SphericalDisk};
pub use sphere::{Chi, ExtendedPoint, SphericalIsometry};
