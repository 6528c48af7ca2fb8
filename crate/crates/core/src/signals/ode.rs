//! Fixed-step classical Runge–Kutta integration.

/// One RK4 step of `dy/dt = f(t, y)` with step `h`.
pub fn rk4_step<const N: usize, F>(f: &F, t: f64, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &axpy(y, &k1, 0.5 * h));
    let k3 = f(t + 0.5 * h, &axpy(y, &k2, 0.5 * h));
    let k4 = f(t + h, &axpy(y, &k3, h));
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

#[inline]
fn axpy<const N: usize>(y: &[f64; N], k: &[f64; N], a: f64) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += a * k[i];
    }
    out
}

/// Integrate from `t0` over `steps` fixed steps, returning the final state.
pub fn rk4_integrate<const N: usize, F>(f: F, t0: f64, y0: [f64; N], h: f64, steps: usize) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut y = y0;
    for i in 0..steps {
        y = rk4_step(&f, t0 + i as f64 * h, &y, h);
    }
    y
}
