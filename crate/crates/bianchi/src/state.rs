//! The Wainwright–Hsu expansion-reduced variables for class A Bianchi
//! cosmologies: curvature variables `N_1, N_2, N_3`, shear `Sigma_+,
//! Sigma_-`, with the matter density entering only through derived
//! quantities. The matter density is never stored, so the constraint cannot
//! drift independently of the state.

use serde::{Deserialize, Serialize};

use crate::BianchiError;

pub const SQRT3: f64 = 1.7320508075688772;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BianchiState {
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
    pub sigma_plus: f64,
    pub sigma_minus: f64,
}

impl BianchiState {
    pub fn new(n1: f64, n2: f64, n3: f64, sigma_plus: f64, sigma_minus: f64) -> Self {
        BianchiState {
            n1,
            n2,
            n3,
            sigma_plus,
            sigma_minus,
        }
    }

    /// Kasner circle point at angle `theta`.
    pub fn kasner(theta: f64) -> Self {
        BianchiState::new(0.0, 0.0, 0.0, theta.cos(), theta.sin())
    }

    /// Taub line point: `N_1 = 0 != N_2 = N_3`, `Sigma_+ = -1`.
    pub fn taub_line(n: f64) -> Self {
        BianchiState::new(0.0, n, n, -1.0, 0.0)
    }

    /// Vacuum state with the given curvature variables and shear angle:
    /// the shear radius is chosen so the matter density vanishes exactly.
    /// Fails when `K > 1` leaves no room for the shear.
    pub fn vacuum(n1: f64, n2: f64, n3: f64, shear_angle: f64) -> Option<Self> {
        let k = 0.75 * (n1 * n1 + n2 * n2 + n3 * n3 - 2.0 * (n1 * n2 + n2 * n3 + n3 * n1));
        let r2 = 1.0 - k;
        if r2 < 0.0 {
            return None;
        }
        let r = r2.sqrt();
        Some(BianchiState::new(
            n1,
            n2,
            n3,
            r * shear_angle.cos(),
            r * shear_angle.sin(),
        ))
    }

    pub fn to_array(self) -> [f64; 5] {
        [self.n1, self.n2, self.n3, self.sigma_plus, self.sigma_minus]
    }

    pub fn from_array(y: [f64; 5]) -> Self {
        BianchiState::new(y[0], y[1], y[2], y[3], y[4])
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedQuantities {
    pub s_plus: f64,
    pub s_minus: f64,
    pub q: f64,
    pub k: f64,
    pub omega: f64,
}

/// Equation-of-state coefficient of the perfect fluid, `0 <= gamma < 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluidParameter {
    gamma: f64,
}

impl FluidParameter {
    pub const RADIATION: FluidParameter = FluidParameter { gamma: 4.0 / 3.0 };
    pub const DUST: FluidParameter = FluidParameter { gamma: 1.0 };

    pub fn new(gamma: f64) -> Result<Self, BianchiError> {
        if !(0.0..2.0).contains(&gamma) {
            return Err(BianchiError::InvalidGamma(gamma));
        }
        Ok(FluidParameter { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

pub fn derived(s: &BianchiState, fluid: FluidParameter) -> DerivedQuantities {
    let BianchiState {
        n1,
        n2,
        n3,
        sigma_plus: sp,
        sigma_minus: sm,
    } = *s;
    let s_plus = 0.5 * ((n2 - n3) * (n2 - n3) - n1 * (2.0 * n1 - n2 - n3));
    let s_minus = 0.5 * SQRT3 * (n3 - n2) * (n1 - n2 - n3);
    let k = 0.75 * (n1 * n1 + n2 * n2 + n3 * n3 - 2.0 * (n1 * n2 + n2 * n3 + n3 * n1));
    let omega = 1.0 - sp * sp - sm * sm - k;
    let q = 2.0 * (sp * sp + sm * sm) + 0.5 * (3.0 * fluid.gamma() - 2.0) * omega;
    DerivedQuantities {
        s_plus,
        s_minus,
        q,
        k,
        omega,
    }
}

/// Right-hand side of the expansion-reduced system.
pub fn rhs(s: &BianchiState, fluid: FluidParameter) -> [f64; 5] {
    let d = derived(s, fluid);
    let BianchiState {
        n1,
        n2,
        n3,
        sigma_plus: sp,
        sigma_minus: sm,
    } = *s;
    [
        (d.q - 4.0 * sp) * n1,
        (d.q + 2.0 * sp + 2.0 * SQRT3 * sm) * n2,
        (d.q + 2.0 * sp - 2.0 * SQRT3 * sm) * n3,
        (d.q - 2.0) * sp - 3.0 * d.s_plus,
        (d.q - 2.0) * sm - 3.0 * d.s_minus,
    ]
}

/// Lie-algebra type of the spatial symmetry, from the sign pattern of the
/// curvature variables up to permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BianchiClass {
    I,
    II,
    VI0,
    VII0,
    VIII,
    IX,
}

impl std::fmt::Display for BianchiClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BianchiClass::I => "I",
            BianchiClass::II => "II",
            BianchiClass::VI0 => "VI0",
            BianchiClass::VII0 => "VII0",
            BianchiClass::VIII => "VIII",
            BianchiClass::IX => "IX",
        };
        f.write_str(s)
    }
}

pub fn classify_type(s: &BianchiState) -> BianchiClass {
    let pos = [s.n1, s.n2, s.n3].iter().filter(|&&n| n > 0.0).count();
    let neg = [s.n1, s.n2, s.n3].iter().filter(|&&n| n < 0.0).count();
    match (pos + neg, pos.max(neg)) {
        (0, _) => BianchiClass::I,
        (1, _) => BianchiClass::II,
        (2, 2) => BianchiClass::VII0,
        (2, 1) => BianchiClass::VI0,
        (3, 3) => BianchiClass::IX,
        _ => BianchiClass::VIII,
    }
}

/// Shear angle and a distance measure to the Kasner circle.
pub fn kasner_angle(s: &BianchiState) -> (f64, f64) {
    let theta = s
        .sigma_minus
        .atan2(s.sigma_plus)
        .rem_euclid(std::f64::consts::TAU);
    let radius = (s.sigma_plus * s.sigma_plus + s.sigma_minus * s.sigma_minus).sqrt();
    let n_norm = (s.n1 * s.n1 + s.n2 * s.n2 + s.n3 * s.n3).sqrt();
    (theta, (radius - 1.0).abs() + n_norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn derived_on_kasner_circle() {
        let d = derived(
            &BianchiState::new(0.0, 0.0, 0.0, 1.0, 0.0),
            FluidParameter::RADIATION,
        );
        assert_eq!(d.k, 0.0);
        assert_eq!(d.s_plus, 0.0);
        assert_eq!(d.s_minus, 0.0);
        assert_eq!(d.omega, 0.0);
        assert_eq!(d.q, 2.0);
    }

    #[test]
    fn derived_on_taub_line() {
        let d = derived(&BianchiState::taub_line(0.7), FluidParameter::RADIATION);
        assert_eq!(d.s_plus, 0.0);
        assert_eq!(d.s_minus, 0.0);
        assert_eq!(d.k, 0.0);
        assert_eq!(d.omega, 0.0);
        assert_eq!(d.q, 2.0);
    }

    #[test]
    fn derived_at_flat_friedmann() {
        let d = derived(
            &BianchiState::new(0.0, 0.0, 0.0, 0.0, 0.0),
            FluidParameter::RADIATION,
        );
        assert_eq!(d.omega, 1.0);
        assert!((d.q - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rhs_vanishes_on_equilibria() {
        for theta in [0.0, 0.3, PI / 2.0, PI, 4.0] {
            let f = rhs(&BianchiState::kasner(theta), FluidParameter::RADIATION);
            for c in f {
                assert!(c.abs() <= 1e-15, "Kasner rhs {c} at theta={theta}");
            }
        }
        for n in [-1.5, -0.1, 0.4, 2.0] {
            let f = rhs(&BianchiState::taub_line(n), FluidParameter::RADIATION);
            for c in f {
                assert!(c.abs() <= 1e-15, "Taub rhs {c} at n={n}");
            }
        }
        let f = rhs(
            &BianchiState::new(0.0, 0.0, 0.0, 0.0, 0.0),
            FluidParameter::RADIATION,
        );
        assert_eq!(f, [0.0; 5]);
    }

    #[test]
    fn classification_examples() {
        let c = |n1, n2, n3| classify_type(&BianchiState::new(n1, n2, n3, 0.1, 0.2));
        assert_eq!(c(0.0, 0.0, 0.0), BianchiClass::I);
        assert_eq!(c(0.5, 0.0, 0.0), BianchiClass::II);
        assert_eq!(c(0.0, 0.3, 0.3), BianchiClass::VII0);
        assert_eq!(c(-0.2, 0.0, 0.4), BianchiClass::VI0);
        assert_eq!(c(0.1, 0.2, 0.3), BianchiClass::IX);
        assert_eq!(c(-0.1, -0.2, -0.3), BianchiClass::IX);
        assert_eq!(c(-0.1, 0.2, 0.3), BianchiClass::VIII);
    }

    #[test]
    fn kasner_angle_examples() {
        let (theta, dist) = kasner_angle(&BianchiState::kasner(0.0));
        assert_eq!((theta, dist), (0.0, 0.0));
        let (theta, dist) = kasner_angle(&BianchiState::new(0.0, 0.0, 0.0, -1.0, 0.0));
        assert_eq!(theta, PI);
        assert_eq!(dist, 0.0);
        let (_, dist) = kasner_angle(&BianchiState::new(0.0, 0.0, 0.0, 0.0, 0.0));
        assert_eq!(dist, 1.0);
    }

    #[test]
    fn vacuum_constructor_zeroes_omega() {
        let s = BianchiState::vacuum(0.2, -0.1, 0.3, 1.0).unwrap();
        let d = derived(&s, FluidParameter::RADIATION);
        assert!(d.omega.abs() < 1e-15);
        assert!(BianchiState::vacuum(5.0, -5.0, 5.0, 0.0).is_none());
    }

    #[test]
    fn gamma_validation() {
        assert!(FluidParameter::new(2.0).is_err());
        assert!(FluidParameter::new(-0.1).is_err());
        assert_eq!(FluidParameter::new(1.0).unwrap(), FluidParameter::DUST);
    }
}
