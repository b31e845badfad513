//! Fixed-step classical Runge-Kutta integration.

use std::ops::{Add, Mul};

/// Integrates `dy/dt = f(t, y)` from `t0` to `t1` in `steps` RK4 steps.
pub fn rk4<S, F>(f: F, y0: S, t0: f64, t1: f64, steps: usize) -> S
where
    S: Clone + Add<Output = S> + Mul<f64, Output = S>,
    F: Fn(f64, &S) -> S,
{
    let steps = steps.max(1);
    let h = (t1 - t0) / steps as f64;
    let mut y = y0;
    for k in 0..steps {
        let t = t0 + k as f64 * h;
        y = rk4_step(&f, t, &y, h);
    }
    y
}

pub fn rk4_step<S, F>(f: &F, t: f64, y: &S, h: f64) -> S
where
    S: Clone + Add<Output = S> + Mul<f64, Output = S>,
    F: Fn(f64, &S) -> S,
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &(y.clone() + k1.clone() * (0.5 * h)));
    let k3 = f(t + 0.5 * h, &(y.clone() + k2.clone() * (0.5 * h)));
    let k4 = f(t + h, &(y.clone() + k3.clone() * h));
    y.clone() + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}
