//! Greedy-forwarding hop geometry: expected progress toward the sink
//! and expected transmitter-receiver distance per hop.

use crate::error::{ModelError, Result};
use crate::real::{as_f64, lit, Real};

/// Angle below which the hop-distance expression switches to its
/// analytic limit to avoid 0/0.
const SMALL_ANGLE: f64 = 1e-6;

/// Circular deployment field and node density.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FieldGeometry<T> {
    /// Field radius, m. The sink sits at the center.
    pub radius: T,
    /// Sensor density, nodes/m^2.
    pub rho_s: T,
}

impl<T: Real> FieldGeometry<T> {
    pub fn new(radius: T, rho_s: T) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(ModelError::Parameter {
                name: "radius",
                value: as_f64(radius),
                detail: "field radius must be positive",
            });
        }
        if !(rho_s > T::zero()) {
            return Err(ModelError::Parameter {
                name: "rho_s",
                value: as_f64(rho_s),
                detail: "sensor density must be positive",
            });
        }
        Ok(Self { radius, rho_s })
    }
}

/// Expected hop geometry at a given transmission range.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct HopGeometry<T> {
    /// Expected progress toward the sink per hop, m.
    pub expected_progress: T,
    /// Expected transmitter-receiver distance per hop, m.
    pub expected_distance: T,
    /// Half-opening of the receiver arc, rad.
    pub phi_max: T,
}

/// Expected hop progress under dense greedy forwarding:
/// `E{W} = r_s - r_s^3 / (3 Gamma^2)`.
///
/// Averages the direct-hop case (source within range of the sink) with
/// the dense-deployment limit in which the best relay sits on the range
/// boundary.
pub fn expected_hop_progress<T: Real>(r_s: T, field_radius: T) -> Result<T> {
    if !(r_s > T::zero()) || r_s > field_radius {
        return Err(ModelError::Constraint {
            name: "r_s",
            value: as_f64(r_s),
            bound: as_f64(field_radius),
            detail: "transmission range must lie in (0, field radius]",
        });
    }
    Ok(r_s - r_s * r_s * r_s / (lit::<T>(3.0) * field_radius * field_radius))
}

/// Expected hop distance given expected progress `w`:
/// `E{Z|w} = w ln(sec(phi) + tan(phi)) / phi` with `phi = acos(w / r_s)`,
/// the receiver treated as uniform on the chord through the progress
/// point. Returns the limit value `w` when `phi` vanishes.
pub fn expected_hop_distance<T: Real>(w: T, r_s: T) -> Result<T> {
    if !(w > T::zero()) || w > r_s {
        return Err(ModelError::Constraint {
            name: "w",
            value: as_f64(w),
            bound: as_f64(r_s),
            detail: "hop progress must lie in (0, r_s]",
        });
    }
    let phi = (w / r_s).min(T::one()).acos();
    if phi < lit::<T>(SMALL_ANGLE) {
        return Ok(w);
    }
    Ok(w * (phi.tan() + phi.cos().recip()).ln() / phi)
}

/// Both hop expectations for range `r_s` on the given field.
pub fn hop_geometry<T: Real>(r_s: T, field: &FieldGeometry<T>) -> Result<HopGeometry<T>> {
    let w = expected_hop_progress(r_s, field.radius)?;
    let z = expected_hop_distance(w, r_s)?;
    Ok(HopGeometry {
        expected_progress: w,
        expected_distance: z,
        phi_max: (w / r_s).min(T::one()).acos(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn progress_at_full_range() {
        // r_s = field radius leaves two thirds of the radius per hop.
        let w: f64 = expected_hop_progress(1000.0, 1000.0).unwrap();
        assert!((w - 2000.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn progress_known_value() {
        let w: f64 = expected_hop_progress(100.0, 1000.0).unwrap();
        assert!((w - 99.66666666666667).abs() < 1e-12);
        assert!(expected_hop_progress(1001.0, 1000.0).is_err());
        assert!(expected_hop_progress(0.0, 1000.0).is_err());
    }

    #[test]
    fn progress_strictly_increasing_in_range() {
        let mut prev = 0.0;
        for i in 1..100 {
            let r = 10.0 * i as f64;
            let w = expected_hop_progress(r, 1000.0).unwrap();
            assert!(w > prev);
            prev = w;
        }
    }

    #[test]
    fn distance_limit_at_full_progress() {
        assert_eq!(expected_hop_distance(100.0, 100.0).unwrap(), 100.0);
    }

    #[test]
    fn distance_at_half_progress() {
        // phi = pi/3: (3 r / 2 pi) ln(2 + sqrt(3)) = 0.6288... * r
        let z: f64 = expected_hop_distance(50.0, 100.0).unwrap();
        assert!((z - 62.88010774184742).abs() < 1e-10);
    }

    #[test]
    fn distance_bounded_by_progress_and_range() {
        for i in 1..200 {
            let w = 0.5 * i as f64;
            let z = expected_hop_distance(w, 100.0).unwrap();
            assert!(z >= w - 1e-12 && z <= 100.0 + 1e-12, "w={w} z={z}");
        }
        assert!(expected_hop_distance(101.0, 100.0).is_err());
        assert!(expected_hop_distance(0.0, 100.0).is_err());
    }

    #[test]
    fn distance_continuous_at_the_small_angle_switch() {
        // The analytic form behaves like w (1 + phi^2/6), so the gap to
        // w is below 1e-9 r_s once 1 - w/r_s < 3e-9. The explicit branch
        // takes over at phi < 1e-6 (1 - w/r_s < 5e-13); check points on
        // both sides of the switch and the bound across the whole band.
        let r_s = 100.0f64;
        for &f in &[
            1.0 - 2.9e-9,
            1.0 - 1e-10,
            1.0 - 6e-13, // analytic side of the switch
            1.0 - 4e-13, // limit branch side
            1.0,
        ] {
            let w = f * r_s;
            let z = expected_hop_distance(w, r_s).unwrap();
            assert!((z - w).abs() < 1e-9 * r_s, "w/r={f}: z={z}");
        }
    }

    #[test]
    fn composed_hop_geometry() {
        let field = FieldGeometry::new(1000.0, 0.01).unwrap();
        let hop = hop_geometry(100.0, &field).unwrap();
        assert!(hop.expected_progress <= hop.expected_distance);
        assert!(hop.expected_distance <= 100.0);
        assert!(hop.phi_max > 0.0 && hop.phi_max < std::f64::consts::FRAC_PI_2);
        assert!(FieldGeometry::new(0.0, 0.01).is_err());
        assert!(FieldGeometry::<f64>::new(10.0, -1.0).is_err());
    }
}
