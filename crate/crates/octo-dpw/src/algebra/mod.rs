//! Quaternion and octonion arithmetic with real, complexified, and
//! operator-valued flavors.

mod octonion;
mod operator;
mod quaternion;

pub use octonion::{associator, omega, COctonion, Octonion};
pub use operator::{Matrix8, Operator8};
pub use quaternion::{CQuaternion, Quaternion};

use rand::Rng;

/// Draws a quaternion with independent standard-normal components.
pub fn random_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    let mut n = || {
        // Box-Muller keeps us independent of distribution crates.
        let u1: f64 = rng.gen_range(1e-12..1.0);
        let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        (-2.0 * u1.ln()).sqrt() * u2.cos()
    };
    Quaternion::new(n(), n(), n(), n())
}

/// Draws a uniformly distributed unit quaternion.
pub fn random_unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        if let Some(u) = random_quaternion(rng).normalized() {
            return u;
        }
    }
}

/// Draws a pure-imaginary quaternion with standard-normal components.
pub fn random_pure_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    random_quaternion(rng).im()
}

/// Draws an octonion with independent standard-normal components.
pub fn random_octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    Octonion::new(random_quaternion(rng), random_quaternion(rng))
}

/// Draws a uniformly distributed unit octonion.
pub fn random_unit_octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    loop {
        if let Some(u) = random_octonion(rng).normalized() {
            return u;
        }
    }
}
