// Copyright 2026 the lorentz-orbits authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Fourier collocation kernels on the uniform periodic grid t_i = i·T/N.
//!
//! Differentiation multiplies mode k by iω k (ω = 2π/T) with the Nyquist
//! mode zeroed, which keeps the real-space operator an antisymmetric
//! circulant. Antidifferentiation divides by iω k and is exact for
//! band-limited zero-mean input.

use crate::Vec3;
use rustfft::{num_complex::Complex, FftPlanner};

fn forward(coord: &mut [Complex<f64>]) {
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(coord.len()).process(coord);
}

fn inverse(coord: &mut [Complex<f64>]) {
    let n = coord.len();
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(n).process(coord);
    let scale = 1.0 / n as f64;
    for c in coord.iter_mut() {
        *c *= scale;
    }
}

/// Signed integer frequency of FFT bin `k` for length `n`.
fn freq(k: usize, n: usize) -> i64 {
    if k <= n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

fn map_modes(samples: &[Vec3], f: impl Fn(Complex<f64>, i64) -> Complex<f64>) -> Vec<Vec3> {
    let n = samples.len();
    let mut out = vec![Vec3::zeros(); n];
    let mut buf = vec![Complex::new(0.0, 0.0); n];
    for coord in 0..3 {
        for (i, s) in samples.iter().enumerate() {
            buf[i] = Complex::new(s[coord], 0.0);
        }
        forward(&mut buf);
        for (k, c) in buf.iter_mut().enumerate() {
            // the Nyquist mode has no well-defined sign; drop it
            if n % 2 == 0 && k == n / 2 {
                *c = Complex::new(0.0, 0.0);
            } else {
                *c = f(*c, freq(k, n));
            }
        }
        inverse(&mut buf);
        for (i, c) in buf.iter().enumerate() {
            out[i][coord] = c.re;
        }
    }
    out
}

/// Spectral derivative of T-periodic samples.
pub fn derivative(samples: &[Vec3], period: f64) -> Vec<Vec3> {
    let omega = 2.0 * std::f64::consts::PI / period;
    map_modes(samples, |c, m| c * Complex::new(0.0, omega * m as f64))
}

/// Periodic primitive of zero-mean T-periodic samples, anchored so the
/// first sample is zero. The k = 0 mode of the input is discarded.
pub fn antiderivative(samples: &[Vec3], period: f64) -> Vec<Vec3> {
    let omega = 2.0 * std::f64::consts::PI / period;
    let mut g = map_modes(samples, |c, m| {
        if m == 0 {
            Complex::new(0.0, 0.0)
        } else {
            c / Complex::new(0.0, omega * m as f64)
        }
    });
    let g0 = g[0];
    for v in g.iter_mut() {
        *v -= g0;
    }
    g
}

/// H¹ (Sobolev) smoothing: divides mode m by scale·(1 + (ωm)²). This
/// equilibrates the kinetic block of the action Hessian, turning plain
/// gradient descent into a well-conditioned method. The Nyquist mode is
/// kept: the multiplier is real and even, so it is well defined there.
pub fn sobolev_precondition(samples: &[Vec3], period: f64, scale: f64) -> Vec<Vec3> {
    let omega = 2.0 * std::f64::consts::PI / period;
    let n = samples.len();
    let mut out = vec![Vec3::zeros(); n];
    let mut buf = vec![Complex::new(0.0, 0.0); n];
    for coord in 0..3 {
        for (i, s) in samples.iter().enumerate() {
            buf[i] = Complex::new(s[coord], 0.0);
        }
        forward(&mut buf);
        for (k, c) in buf.iter_mut().enumerate() {
            let m = freq(k, n).unsigned_abs() as f64;
            *c /= scale * (1.0 + (omega * m).powi(2));
        }
        inverse(&mut buf);
        for (i, c) in buf.iter().enumerate() {
            out[i][coord] = c.re;
        }
    }
    out
}

/// Second-order central difference with periodic wraparound.
pub fn central2_derivative(samples: &[Vec3], period: f64) -> Vec<Vec3> {
    let n = samples.len();
    let h = period / n as f64;
    (0..n)
        .map(|i| (samples[(i + 1) % n] - samples[(i + n - 1) % n]) / (2.0 * h))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle(n: usize, period: f64) -> Vec<Vec3> {
        (0..n)
            .map(|i| {
                let t = i as f64 * period / n as f64;
                Vec3::new((2.0 * PI * t / period).cos(), (2.0 * PI * t / period).sin(), 0.0)
            })
            .collect()
    }

    #[test]
    fn spectral_derivative_exact_on_harmonic() {
        let period = 1.0;
        let samples = circle(64, period);
        let d = derivative(&samples, period);
        let omega = 2.0 * PI / period;
        for (i, di) in d.iter().enumerate() {
            let t = i as f64 * period / 64.0;
            let exact = Vec3::new(-omega * (omega * t).sin(), omega * (omega * t).cos(), 0.0);
            assert!((di - exact).norm() < 1e-12);
        }
    }

    #[test]
    fn spectral_derivative_of_constant_is_zero() {
        let samples = vec![Vec3::new(3.0, -1.0, 2.0); 32];
        let d = derivative(&samples, 2.0);
        for di in &d {
            assert!(di.norm() < 1e-13);
        }
    }

    #[test]
    fn antiderivative_inverts_derivative_on_zero_mean_input() {
        let period = 2.0;
        let n = 128;
        let samples: Vec<Vec3> = (0..n)
            .map(|i| {
                let t = i as f64 * period / n as f64;
                Vec3::new(
                    (2.0 * PI * t / period).sin(),
                    (4.0 * PI * t / period).cos(),
                    (6.0 * PI * t / period).sin() * 0.3,
                )
            })
            .collect();
        let g = antiderivative(&samples, period);
        let back = derivative(&g, period);
        for (a, b) in samples.iter().zip(&back) {
            // the cos(4πt/T) coordinate has nonzero mean only through round-off
            assert!((a - b).norm() < 1e-11, "{a:?} vs {b:?}");
        }
        assert!(g[0].norm() == 0.0);
    }

    #[test]
    fn central2_truncation_error_bounded() {
        let period = 1.0;
        let n = 8;
        let samples: Vec<Vec3> = (0..n)
            .map(|i| {
                let t = i as f64 * period / n as f64;
                Vec3::new((4.0 * PI * t).cos(), 0.0, 0.0)
            })
            .collect();
        let d = central2_derivative(&samples, period);
        let bound = (4.0 * PI).powi(3) * (period / n as f64).powi(2) / 6.0;
        for (i, di) in d.iter().enumerate() {
            let t = i as f64 * period / n as f64;
            let exact = -4.0 * PI * (4.0 * PI * t).sin();
            assert!((di[0] - exact).abs() <= bound * 1.0001);
        }
    }
}
