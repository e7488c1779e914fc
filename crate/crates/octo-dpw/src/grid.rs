//! Rectangular parameter grids and finite-difference helpers.
//!
//! All surface machinery works on tensor-product grids over a rectangle
//! `[u_min, u_max] x [v_min, v_max]` with `nu x nv` nodes (inclusive
//! endpoints). Derivatives are second-order accurate: central differences
//! in the interior, one-sided three-point stencils on the boundary.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Sub};

/// Geometry of a rectangular grid (serializable; doubles as the `domain`
/// block of potential configurations).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub nu: usize,
    pub nv: usize,
}

impl GridSpec {
    pub fn new(u_min: f64, u_max: f64, v_min: f64, v_max: f64, nu: usize, nv: usize) -> Self {
        Self {
            u_min,
            u_max,
            v_min,
            v_max,
            nu,
            nv,
        }
    }

    /// Unit square with `n x n` nodes.
    pub fn unit_square(n: usize) -> Self {
        Self::new(0.0, 1.0, 0.0, 1.0, n, n)
    }

    pub fn du(&self) -> f64 {
        (self.u_max - self.u_min) / (self.nu.max(2) - 1) as f64
    }

    pub fn dv(&self) -> f64 {
        (self.v_max - self.v_min) / (self.nv.max(2) - 1) as f64
    }

    /// The larger of the two spacings (the `h` quoted in reports).
    pub fn h(&self) -> f64 {
        self.du().max(self.dv())
    }

    pub fn u(&self, i: usize) -> f64 {
        self.u_min + self.du() * i as f64
    }

    pub fn v(&self, j: usize) -> f64 {
        self.v_min + self.dv() * j as f64
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of the node nearest to `(u, v)`.
    pub fn nearest_node(&self, u: f64, v: f64) -> (usize, usize) {
        let i = ((u - self.u_min) / self.du()).round().clamp(0.0, (self.nu - 1) as f64);
        let j = ((v - self.v_min) / self.dv()).round().clamp(0.0, (self.nv - 1) as f64);
        (i as usize, j as usize)
    }

    pub fn validate(&self) -> crate::Result<()> {
        if self.nu < 2 || self.nv < 2 {
            return Err(crate::Error::InvalidInput(format!(
                "grid must have at least 2x2 nodes, got {}x{}",
                self.nu, self.nv
            )));
        }
        // Negated comparisons so NaN extents also fail validation.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.u_max > self.u_min) || !(self.v_max > self.v_min) {
            return Err(crate::Error::InvalidInput(
                "grid domain must have positive extent".into(),
            ));
        }
        Ok(())
    }
}

/// Values that can be combined linearly with real weights.
pub trait LinCombine:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
}

impl<T> LinCombine for T where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>
{
}

/// An owned field of values over a [`GridSpec`], stored row-major in `u`.
#[derive(Debug, Clone)]
pub struct Grid<T> {
    pub spec: GridSpec,
    data: Vec<T>,
}

impl<T: Clone> Grid<T> {
    pub fn fill(spec: GridSpec, value: T) -> Self {
        Self {
            data: vec![value; spec.len()],
            spec,
        }
    }
}

impl<T> Grid<T> {
    pub fn from_fn(spec: GridSpec, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(spec.len());
        for j in 0..spec.nv {
            for i in 0..spec.nu {
                data.push(f(i, j));
            }
        }
        Self { spec, data }
    }

    pub fn from_vec(spec: GridSpec, data: Vec<T>) -> crate::Result<Self> {
        if data.len() != spec.len() {
            return Err(crate::Error::InvalidInput(format!(
                "grid data length {} does not match {}x{}",
                data.len(),
                spec.nu,
                spec.nv
            )));
        }
        Ok(Self { spec, data })
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.spec.nu && j < self.spec.nv);
        j * self.spec.nu + i
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[self.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        let k = self.idx(i, j);
        self.data[k] = value;
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Grid<U> {
        Grid {
            spec: self.spec,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn zip_map<U, V>(&self, other: &Grid<U>, mut f: impl FnMut(&T, &U) -> V) -> Grid<V> {
        assert_eq!(self.spec.nu, other.spec.nu);
        assert_eq!(self.spec.nv, other.spec.nv);
        Grid {
            spec: self.spec,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    /// Iterates `(i, j, &value)` in storage order.
    pub fn iter_indexed(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let nu = self.spec.nu;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, t)| (k % nu, k / nu, t))
    }

    /// True when `(i, j)` is at least `margin` nodes away from every edge.
    pub fn is_interior(&self, i: usize, j: usize, margin: usize) -> bool {
        i >= margin
            && j >= margin
            && i + margin < self.spec.nu
            && j + margin < self.spec.nv
    }
}

impl<T: LinCombine> Grid<T> {
    /// Second-order partial derivative in `u` (central inside, one-sided on
    /// the boundary columns).
    pub fn deriv_u(&self) -> Grid<T> {
        let h = self.spec.du();
        Grid::from_fn(self.spec, |i, j| {
            if i == 0 {
                (*self.get(0, j) * -3.0 + *self.get(1, j) * 4.0 - *self.get(2, j))
                    * (0.5 / h)
            } else if i + 1 == self.spec.nu {
                let n = self.spec.nu;
                (*self.get(n - 1, j) * 3.0 - *self.get(n - 2, j) * 4.0 + *self.get(n - 3, j))
                    * (0.5 / h)
            } else {
                (*self.get(i + 1, j) - *self.get(i - 1, j)) * (0.5 / h)
            }
        })
    }

    /// Second-order partial derivative in `v`.
    pub fn deriv_v(&self) -> Grid<T> {
        let h = self.spec.dv();
        Grid::from_fn(self.spec, |i, j| {
            if j == 0 {
                (*self.get(i, 0) * -3.0 + *self.get(i, 1) * 4.0 - *self.get(i, 2))
                    * (0.5 / h)
            } else if j + 1 == self.spec.nv {
                let n = self.spec.nv;
                (*self.get(i, n - 1) * 3.0 - *self.get(i, n - 2) * 4.0 + *self.get(i, n - 3))
                    * (0.5 / h)
            } else {
                (*self.get(i, j + 1) - *self.get(i, j - 1)) * (0.5 / h)
            }
        })
    }

    /// Central second derivative in `u` (interior only; boundary copies the
    /// nearest interior value).
    pub fn second_u(&self) -> Grid<T> {
        let h2 = self.spec.du() * self.spec.du();
        Grid::from_fn(self.spec, |i, j| {
            let ic = i.clamp(1, self.spec.nu - 2);
            (*self.get(ic + 1, j) - *self.get(ic, j) * 2.0 + *self.get(ic - 1, j))
                * (1.0 / h2)
        })
    }

    /// Central second derivative in `v` (interior only; boundary copies the
    /// nearest interior value).
    pub fn second_v(&self) -> Grid<T> {
        let h2 = self.spec.dv() * self.spec.dv();
        Grid::from_fn(self.spec, |i, j| {
            let jc = j.clamp(1, self.spec.nv - 2);
            (*self.get(i, jc + 1) - *self.get(i, jc) * 2.0 + *self.get(i, jc - 1))
                * (1.0 / h2)
        })
    }
}

/// Aggregates (max and mean of a pointwise magnitude) over a masked region.
pub fn aggregate<T>(
    grid: &Grid<T>,
    margin: usize,
    mut magnitude: impl FnMut(&T) -> f64,
) -> (f64, f64) {
    let mut max = 0.0f64;
    let mut sum = 0.0f64;
    let mut count = 0usize;
    for (i, j, t) in grid.iter_indexed() {
        if grid.is_interior(i, j, margin) {
            let m = magnitude(t);
            max = max.max(m);
            sum += m;
            count += 1;
        }
    }
    (max, if count > 0 { sum / count as f64 } else { 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_is_second_order() {
        // f(u, v) = sin(2u) cos(v); compare df/du on two resolutions.
        let err = |n: usize| {
            let spec = GridSpec::new(0.0, 1.0, 0.0, 1.0, n, n);
            let f = Grid::from_fn(spec, |i, j| (2.0 * spec.u(i)).sin() * spec.v(j).cos());
            let fu = f.deriv_u();
            let mut worst = 0.0f64;
            for (i, j, val) in fu.iter_indexed() {
                let exact = 2.0 * (2.0 * spec.u(i)).cos() * spec.v(j).cos();
                worst = worst.max((val - exact).abs());
            }
            worst
        };
        let e1 = err(33);
        let e2 = err(65);
        let order = (e1 / e2).log2();
        assert!(
            (1.7..2.4).contains(&order),
            "observed order {order} (errors {e1:.3e}, {e2:.3e})"
        );
    }

    #[test]
    fn nearest_node_snaps() {
        let spec = GridSpec::unit_square(11);
        assert_eq!(spec.nearest_node(0.0, 0.0), (0, 0));
        assert_eq!(spec.nearest_node(0.52, 0.48), (5, 5));
        assert_eq!(spec.nearest_node(2.0, -1.0), (10, 0));
    }

    #[test]
    fn aggregate_masks_boundary() {
        let spec = GridSpec::unit_square(5);
        let g = Grid::from_fn(spec, |i, j| {
            if i == 0 || j == 0 || i == 4 || j == 4 {
                100.0
            } else {
                1.0
            }
        });
        let (max, mean) = aggregate(&g, 1, |v| *v);
        assert_eq!(max, 1.0);
        assert_eq!(mean, 1.0);
    }
}
