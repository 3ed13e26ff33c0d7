use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Uniform `n × n` grid on the unit-square torus `R² / Z²`. Samples are
/// stored row-major: index `iy * n + ix` holds the point `(ix/n, iy/n)`.
/// Every cell has quadrature weight `1/n²`, so the torus has volume one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusGrid {
    n: usize,
}

impl TorusGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 16 || !n.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "grid size n = {n}: must be even and at least 16"
            )));
        }
        Ok(TorusGrid { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// `(x, y)` of sample `idx`.
    pub fn point(&self, idx: usize) -> (f64, f64) {
        let h = self.spacing();
        ((idx % self.n) as f64 * h, (idx / self.n) as f64 * h)
    }

    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        (0..self.len())
            .map(|i| {
                let (x, y) = self.point(i);
                f(x, y)
            })
            .collect()
    }

    pub fn check(&self, field: &[f64]) -> Result<()> {
        if field.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: field.len() });
        }
        Ok(())
    }

    /// `∫ f` over the torus.
    pub fn integrate(&self, field: &[f64]) -> f64 {
        field.iter().sum::<f64>() / self.len() as f64
    }

    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / self.len() as f64
    }

    pub fn l2(&self, field: &[f64]) -> f64 {
        self.inner(field, field).sqrt()
    }
}

pub fn sup_norm(field: &[f64]) -> f64 {
    field.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// FFT workspace for Fourier multipliers on a [`TorusGrid`]. Each solver
/// owns its own instance.
pub struct Spectral {
    grid: TorusGrid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    /// `4π²|k|²` per mode, same layout as the grid.
    k2: Vec<f64>,
}

impl Spectral {
    pub fn new(grid: TorusGrid) -> Self {
        let n = grid.n();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let wave = |i: usize| {
            let k = if i < n / 2 { i as f64 } else { i as f64 - n as f64 };
            k * k
        };
        let k2 = (0..n * n)
            .map(|idx| 4.0 * PI * PI * (wave(idx % n) + wave(idx / n)))
            .collect();
        Spectral { grid, forward, inverse, k2 }
    }

    pub fn grid(&self) -> TorusGrid {
        self.grid
    }

    fn transform(&self, buf: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let n = self.grid.n();
        // rows, then columns through a transpose
        fft.process(buf);
        transpose(buf, n);
        fft.process(buf);
        transpose(buf, n);
    }

    /// Applies the real Fourier multiplier `m(4π²|k|²)` to a real field.
    pub fn apply_multiplier(&self, field: &[f64], m: impl Fn(f64) -> f64) -> Vec<f64> {
        let mut buf: Vec<Complex64> = field.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.transform(&mut buf, &self.forward);
        for (c, &k2) in buf.iter_mut().zip(&self.k2) {
            *c *= m(k2);
        }
        self.transform(&mut buf, &self.inverse);
        let scale = 1.0 / self.grid.len() as f64;
        buf.iter().map(|c| c.re * scale).collect()
    }

    /// Spectral Laplacian, multiplier `−4π²|k|²`.
    pub fn laplacian(&self, field: &[f64]) -> Vec<f64> {
        self.apply_multiplier(field, |k2| -k2)
    }

    /// Solves `(−Δ + shift)·w = rhs`. With `shift = 0` the constant mode of
    /// `rhs` is dropped and `w` has mean zero.
    pub fn solve_shifted(&self, rhs: &[f64], shift: f64) -> Vec<f64> {
        self.apply_multiplier(rhs, |k2| {
            let d = k2 + shift;
            if d == 0.0 {
                0.0
            } else {
                1.0 / d
            }
        })
    }

    /// `∫ |∇v|² = ⟨v, −Δv⟩`.
    pub fn dirichlet_energy(&self, v: &[f64]) -> f64 {
        let lap = self.laplacian(v);
        -self.grid.inner(v, &lap)
    }
}

fn transpose(buf: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in i + 1..n {
            buf.swap(i * n + j, j * n + i);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(TorusGrid::new(15).is_err());
        assert!(TorusGrid::new(14).is_err());
        assert!(TorusGrid::new(17).is_err());
        assert!(TorusGrid::new(16).is_ok());
    }

    #[test]
    fn laplacian_of_fourier_mode() {
        let g = TorusGrid::new(32).unwrap();
        let sp = Spectral::new(g);
        let f = g.sample(|x, y| (2.0 * PI * (3.0 * x - 2.0 * y)).cos());
        let lap = sp.laplacian(&f);
        let expect = -4.0 * PI * PI * 13.0;
        for (l, v) in lap.iter().zip(&f) {
            assert!((l - expect * v).abs() < 1e-9, "{l} vs {}", expect * v);
        }
    }

    #[test]
    fn laplacian_has_zero_mean() {
        let g = TorusGrid::new(32).unwrap();
        let sp = Spectral::new(g);
        let f = g.sample(|x, y| (1.0 + (2.0 * PI * x).sin() * (4.0 * PI * y).cos()).exp());
        assert!(g.integrate(&sp.laplacian(&f)).abs() < 1e-13);
    }

    #[test]
    fn shifted_solve_inverts() {
        let g = TorusGrid::new(16).unwrap();
        let sp = Spectral::new(g);
        let f = g.sample(|x, y| (2.0 * PI * x).sin() + (2.0 * PI * y).cos() + 0.5);
        let w = sp.solve_shifted(&f, 2.0);
        let lap = sp.laplacian(&w);
        for i in 0..g.len() {
            assert!((-lap[i] + 2.0 * w[i] - f[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn dimension_check() {
        let g = TorusGrid::new(16).unwrap();
        assert_eq!(
            g.check(&[0.0; 10]),
            Err(Error::DimensionMismatch { expected: 256, got: 10 })
        );
    }
}
