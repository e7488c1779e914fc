//! Potential files: schema, validation, and pointwise evaluation.
//!
//! A potential is a `dz`-form with values in the twisted loop algebra,
//! `mu(z) = sum_terms lambda^power * embed_grade(poly(z)) dz`. Payload
//! layout per grade (each entry an `[re, im]` complex number):
//!
//! * grade `-1` / `+1`: 4 numbers — the quaternionic payload `w`;
//! * grade `0`: 6 numbers — pure-imaginary `a` then pure-imaginary `delta`;
//! * grade `2`: 3 numbers — pure-imaginary `gamma`.

use crate::algebra::CQuaternion;
use crate::grid::GridSpec;
use crate::loops::{GradedComponent, TwistedLoop};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

fn default_truncation() -> i32 {
    12
}

/// 16 equispaced circle samples starting at 1 (includes `i` at index 4).
fn default_lambda_samples() -> Vec<[f64; 2]> {
    (0..16)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 16.0;
            [t.cos(), t.sin()]
        })
        .collect()
}

fn default_basepoint() -> [f64; 2] {
    [0.0, 0.0]
}

/// One monomial `value * z^z_power` of a coefficient polynomial.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyCoeff {
    pub z_power: i32,
    pub value: Vec<[f64; 2]>,
}

/// One Laurent term of the potential.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialTerm {
    pub power: i32,
    pub grade: i32,
    pub coeff_poly: Vec<PolyCoeff>,
}

/// A full potential specification (the normative JSON document).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub domain: GridSpec,
    #[serde(default = "default_basepoint")]
    pub basepoint: [f64; 2],
    #[serde(default = "default_truncation")]
    pub truncation: i32,
    #[serde(default = "default_lambda_samples")]
    pub lambda_samples: Vec<[f64; 2]>,
    pub potential: Vec<PotentialTerm>,
}

fn payload_len(grade: i32) -> usize {
    match grade {
        -1 | 1 => 4,
        0 => 6,
        2 => 3,
        _ => 0,
    }
}

impl PotentialSpec {
    pub fn from_json(text: &str) -> crate::Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        Ok(spec)
    }

    pub fn to_json(&self) -> crate::Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn lambda_values(&self) -> Vec<Complex64> {
        self.lambda_samples
            .iter()
            .map(|p| Complex64::new(p[0], p[1]))
            .collect()
    }

    /// Structural validation: grid sanity, basepoint containment, grading
    /// compatibility, payload shapes, immersion term, and pole location.
    pub fn validate(&self) -> crate::Result<()> {
        self.domain.validate()?;
        let [u0, v0] = self.basepoint;
        if u0 < self.domain.u_min
            || u0 > self.domain.u_max
            || v0 < self.domain.v_min
            || v0 > self.domain.v_max
        {
            return Err(crate::Error::InvalidInput(format!(
                "basepoint ({u0}, {v0}) outside the domain"
            )));
        }
        if self.truncation < 2 {
            return Err(crate::Error::InvalidInput(
                "truncation must be at least 2".into(),
            ));
        }
        if self.lambda_samples.is_empty() {
            return Err(crate::Error::InvalidInput(
                "need at least one lambda sample".into(),
            ));
        }
        for (idx, lam) in self.lambda_values().iter().enumerate() {
            if (lam.norm() - 1.0).abs() > 1e-9 {
                return Err(crate::Error::InvalidInput(format!(
                    "lambda sample {idx} is off the unit circle: |{lam}| = {}",
                    lam.norm()
                )));
            }
        }

        let mut has_immersion_term = false;
        for (ti, term) in self.potential.iter().enumerate() {
            if !matches!(term.grade, -1..=2) {
                return Err(crate::Error::InvalidInput(format!(
                    "term {ti}: grade {} outside {{-1, 0, 1, 2}}",
                    term.grade
                )));
            }
            if (term.power - term.grade).rem_euclid(4) != 0 {
                return Err(crate::Error::GradingViolation(format!(
                    "term {ti}: power {} incompatible with grade {}",
                    term.power, term.grade
                )));
            }
            if term.power < -2 {
                return Err(crate::Error::InvalidInput(format!(
                    "term {ti}: pole order {} in lambda exceeds 2",
                    -term.power
                )));
            }
            if term.power > self.truncation {
                return Err(crate::Error::InvalidInput(format!(
                    "term {ti}: power {} above truncation {}",
                    term.power, self.truncation
                )));
            }
            let want = payload_len(term.grade);
            let mut nonzero = false;
            for (ci, coeff) in term.coeff_poly.iter().enumerate() {
                if coeff.value.len() != want {
                    return Err(crate::Error::InvalidInput(format!(
                        "term {ti} coefficient {ci}: grade {} expects {want} complex \
                         entries, got {}",
                        term.grade,
                        coeff.value.len()
                    )));
                }
                let mass: f64 = coeff
                    .value
                    .iter()
                    .map(|c| c[0].abs() + c[1].abs())
                    .sum();
                if mass > 0.0 {
                    nonzero = true;
                }
                if coeff.z_power < 0 && self.domain_contains_origin() {
                    return Err(crate::Error::PoleInDomain(format!(
                        "term {ti} coefficient {ci}: z^{} pole at the origin lies \
                         inside the domain",
                        coeff.z_power
                    )));
                }
            }
            if term.power == -1 && term.grade == -1 && nonzero {
                has_immersion_term = true;
            }
        }
        if !has_immersion_term {
            return Err(crate::Error::ImmersionConditionFail(
                "no nonzero grade -1 coefficient at lambda^-1; the associated map \
                 cannot be an immersion"
                    .into(),
            ));
        }
        Ok(())
    }

    fn domain_contains_origin(&self) -> bool {
        self.domain.u_min <= 0.0
            && self.domain.u_max >= 0.0
            && self.domain.v_min <= 0.0
            && self.domain.v_max >= 0.0
    }

    /// Evaluates the potential coefficient matrix `M(z)` (the `dz`-factor
    /// is applied by the integrator).
    pub fn eval(&self, z: Complex64) -> crate::Result<TwistedLoop> {
        let mut m = TwistedLoop::zero(self.truncation);
        for term in &self.potential {
            let mut payload = vec![Complex64::new(0.0, 0.0); payload_len(term.grade)];
            for coeff in &term.coeff_poly {
                let zp = if coeff.z_power >= 0 {
                    z.powi(coeff.z_power)
                } else {
                    if z.norm() < 1e-12 {
                        return Err(crate::Error::PoleInDomain(format!(
                            "evaluating z^{} at z = 0",
                            coeff.z_power
                        )));
                    }
                    z.powi(coeff.z_power)
                };
                for (slot, v) in coeff.value.iter().enumerate() {
                    payload[slot] += Complex64::new(v[0], v[1]) * zp;
                }
            }
            let component = match term.grade {
                -1 => GradedComponent::MinusOne {
                    w: CQuaternion::new(payload[0], payload[1], payload[2], payload[3]),
                },
                1 => GradedComponent::One {
                    w: CQuaternion::new(payload[0], payload[1], payload[2], payload[3]),
                },
                0 => GradedComponent::Zero {
                    a: CQuaternion::new(0.0.into(), payload[0], payload[1], payload[2]),
                    delta: CQuaternion::new(0.0.into(), payload[3], payload[4], payload[5]),
                },
                2 => GradedComponent::Two {
                    gamma: CQuaternion::new(0.0.into(), payload[0], payload[1], payload[2]),
                },
                _ => unreachable!("validated"),
            };
            m.add_to(term.power, component.to_element());
        }
        Ok(m)
    }

    /// The vacuum potential `lambda^{-1} (w epsilon) dz` with `w = 1` on
    /// the given grid — the flat reference example.
    pub fn vacuum(domain: GridSpec, truncation: i32) -> Self {
        Self {
            domain,
            basepoint: [domain.u_min, domain.v_min],
            truncation,
            lambda_samples: default_lambda_samples(),
            potential: vec![PotentialTerm {
                power: -1,
                grade: -1,
                coeff_poly: vec![PolyCoeff {
                    z_power: 0,
                    value: vec![[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                }],
            }],
        }
    }

    /// A constant-coefficient test potential with a grade-2 curvature term
    /// of strength `gamma_scale` alongside the unit immersion term.
    pub fn constant_curved(domain: GridSpec, truncation: i32, gamma_scale: f64) -> Self {
        Self {
            domain,
            basepoint: [domain.u_min, domain.v_min],
            truncation,
            lambda_samples: default_lambda_samples(),
            potential: vec![
                PotentialTerm {
                    power: -1,
                    grade: -1,
                    coeff_poly: vec![PolyCoeff {
                        z_power: 0,
                        value: vec![[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                    }],
                },
                PotentialTerm {
                    power: -2,
                    grade: 2,
                    coeff_poly: vec![PolyCoeff {
                        z_power: 0,
                        value: vec![[gamma_scale, 0.0], [0.0, 0.0], [0.0, 0.0]],
                    }],
                },
            ],
        }
    }
}
