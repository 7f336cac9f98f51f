//! Ground-truth operators for data generation: cumulative antiderivative,
//! an implicit diffusion-reaction solver, and a pseudo-spectral Burgers
//! solver on the dense unitary DFT.

use num_complex::Complex;

use crate::linalg::dft_matrix;
use crate::{Error, Real, Result};

const BLOWUP_LIMIT: Real = 1e6;

/// Cumulative trapezoidal integral of `u` with s(grid[0]) = 0.
///
/// The grid must be strictly increasing and start at 0.
pub fn solve_antiderivative(u: &[Real], grid: &[Real]) -> Result<Vec<Real>> {
    if u.len() != grid.len() {
        return Err(Error::InvalidGrid(format!(
            "values ({}) and grid ({}) lengths differ",
            u.len(),
            grid.len()
        )));
    }
    if grid.is_empty() || grid[0] != 0.0 {
        return Err(Error::InvalidGrid("grid must start at 0".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("grid must be strictly increasing".into()));
    }
    let mut s = Vec::with_capacity(u.len());
    let mut acc = 0.0;
    s.push(0.0);
    for i in 1..u.len() {
        acc += 0.5 * (u[i] + u[i - 1]) * (grid[i] - grid[i - 1]);
        s.push(acc);
    }
    Ok(s)
}

/// Space-time field produced by [`solve_diffusion_reaction`].
#[derive(Debug, Clone)]
pub struct DiffusionField {
    /// nx spatial points (including both boundaries).
    pub x_grid: Vec<Real>,
    /// nt time levels t_j = j/nt, j = 1..=nt.
    pub t_grid: Vec<Real>,
    /// field[j][i] = s(x_i, t_j).
    pub field: Vec<Vec<Real>>,
}

/// Implicit solve of s_t = D s_xx + k s² + u(x) on (0,1]×(0,1] with zero
/// initial and boundary conditions.
///
/// Backward Euler in time with centered second differences; the reaction
/// term is lagged (evaluated at the previous time level), so each step is a
/// constant tridiagonal solve.
pub fn solve_diffusion_reaction(
    u: &[Real],
    diffusivity: Real,
    reaction: Real,
    nx: usize,
    nt: usize,
) -> Result<DiffusionField> {
    if nx < 3 {
        return Err(Error::InvalidArgument("need nx >= 3".into()));
    }
    if nt < 2 {
        return Err(Error::InvalidArgument("need nt >= 2".into()));
    }
    if diffusivity <= 0.0 {
        return Err(Error::InvalidArgument("diffusivity must be positive".into()));
    }
    if u.len() != nx {
        return Err(Error::InvalidGrid(format!(
            "forcing has {} values for nx = {nx}",
            u.len()
        )));
    }
    let h = 1.0 / (nx - 1) as Real;
    let dt = 1.0 / nt as Real;
    let x_grid: Vec<Real> = (0..nx).map(|i| i as Real * h).collect();
    let t_grid: Vec<Real> = (1..=nt).map(|j| j as Real * dt).collect();

    // interior tridiagonal system (I - dt D Lap)
    let n_in = nx - 2;
    let off = -dt * diffusivity / (h * h);
    let diag = 1.0 - 2.0 * off;

    let mut s = vec![0.0; nx];
    let mut field = Vec::with_capacity(nt);
    let mut rhs = vec![0.0; n_in];
    for step in 0..nt {
        for i in 0..n_in {
            let si = s[i + 1];
            rhs[i] = si + dt * (reaction * si * si + u[i + 1]);
        }
        let interior = thomas_constant(off, diag, off, &rhs);
        s[1..nx - 1].copy_from_slice(&interior);
        // boundaries stay pinned at zero
        let max_abs = s.iter().map(|v| v.abs()).fold(0.0, Real::max);
        if !max_abs.is_finite() || max_abs > BLOWUP_LIMIT {
            return Err(Error::Instability {
                step,
                limit: BLOWUP_LIMIT,
            });
        }
        field.push(s.clone());
    }
    Ok(DiffusionField {
        x_grid,
        t_grid,
        field,
    })
}

/// Constant-coefficient tridiagonal solve (Thomas algorithm).
fn thomas_constant(lower: Real, diag: Real, upper: Real, rhs: &[Real]) -> Vec<Real> {
    let n = rhs.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = upper / diag;
    d[0] = rhs[0] / diag;
    for i in 1..n {
        let m = diag - lower * c[i - 1];
        c[i] = upper / m;
        d[i] = (rhs[i] - lower * d[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Result of a Burgers solve: the final field and the spatial mean recorded
/// at every accepted step (the mean is conserved by the scheme, so the trace
/// doubles as a drift diagnostic).
#[derive(Debug, Clone)]
pub struct BurgersRun {
    pub final_field: Vec<Real>,
    pub step_means: Vec<Real>,
}

impl BurgersRun {
    pub fn max_mean_drift(&self) -> Real {
        let m0 = self.step_means.first().copied().unwrap_or(0.0);
        self.step_means
            .iter()
            .map(|m| (m - m0).abs())
            .fold(0.0, Real::max)
    }
}

/// Pseudo-spectral Burgers solve on the periodic grid x_j = 2πj/nx,
/// returning s(·, 1).
///
/// Nonlinear term in conservative form (s²)_x / 2 with 2/3-rule dealiasing,
/// diffusion integrated exactly through the factor e^{-ν k² Δt}, Heun (RK2)
/// on the advection term. The step size honors both the requested nt and the
/// advective stability bound 0.5 Δx / max|s|.
pub fn solve_burgers(u0: &[Real], nu: Real, nx: usize, nt: usize) -> Result<Vec<Real>> {
    Ok(burgers_with_options(u0, nu, nx, nt, true)?.final_field)
}

/// Same scheme with the advection term optionally disabled (pure heat
/// evolution), used as an oracle in diffusion-dominated comparisons.
pub fn burgers_with_options(
    u0: &[Real],
    nu: Real,
    nx: usize,
    nt: usize,
    advection: bool,
) -> Result<BurgersRun> {
    if nx < 16 || !nx.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "nx must be a power of two >= 16, got {nx}"
        )));
    }
    if u0.len() != nx {
        return Err(Error::InvalidGrid(format!(
            "initial condition has {} values for nx = {nx}",
            u0.len()
        )));
    }
    if nt < 1 {
        return Err(Error::InvalidArgument("need nt >= 1".into()));
    }
    let f = dft_matrix::<Real>(nx)?;
    let f_adj = f.adjoint();
    let wavenumbers: Vec<Real> = (0..nx)
        .map(|k| {
            if k <= nx / 2 {
                k as Real
            } else {
                k as Real - nx as Real
            }
        })
        .collect();
    let cutoff = nx as Real / 3.0;

    let to_spectral = |phys: &[Real]| -> Vec<Complex<Real>> {
        let v: Vec<Complex<Real>> = phys.iter().map(|&x| Complex::new(x, 0.0)).collect();
        f.matvec(&v)
    };
    let to_physical = |spec: &[Complex<Real>]| -> Vec<Real> {
        f_adj.matvec(spec).iter().map(|z| z.re).collect()
    };
    // -(ik/2) * dealias(F[s^2])
    let advect = |phys: &[Real]| -> Vec<Complex<Real>> {
        let sq: Vec<Complex<Real>> = phys.iter().map(|&x| Complex::new(x * x, 0.0)).collect();
        let mut hat = f.matvec(&sq);
        for (k, h) in hat.iter_mut().enumerate() {
            if wavenumbers[k].abs() > cutoff {
                *h = Complex::new(0.0, 0.0);
            } else {
                let ik_half = Complex::new(0.0, -0.5 * wavenumbers[k]);
                *h *= ik_half;
            }
        }
        hat
    };

    let dx = 2.0 * std::f64::consts::PI / nx as Real;
    let dt_base = 1.0 / nt as Real;
    let mut s_hat = to_spectral(u0);
    let mut t = 0.0;
    let mut step = 0usize;
    let mut step_means = vec![u0.iter().sum::<Real>() / nx as Real];
    while t < 1.0 - 1e-12 {
        let s_phys = to_physical(&s_hat);
        step_means.push(s_phys.iter().sum::<Real>() / nx as Real);
        let max_abs = s_phys.iter().map(|v| v.abs()).fold(0.0, Real::max);
        if !max_abs.is_finite() || max_abs > BLOWUP_LIMIT {
            return Err(Error::Instability {
                step,
                limit: BLOWUP_LIMIT,
            });
        }
        let mut dt = dt_base;
        if advection && max_abs > 0.0 {
            dt = dt.min(0.5 * dx / max_abs);
        }
        dt = dt.min(1.0 - t);

        let decay: Vec<Real> = wavenumbers
            .iter()
            .map(|&k| (-nu * k * k * dt).exp())
            .collect();
        if advection {
            let n0 = advect(&s_phys);
            // predictor under the integrating factor, then trapezoidal correction
            let a: Vec<Complex<Real>> = s_hat
                .iter()
                .zip(&n0)
                .zip(&decay)
                .map(|((s, n), &e)| (s + n * dt) * e)
                .collect();
            let a_phys = to_physical(&a);
            let n1 = advect(&a_phys);
            for i in 0..nx {
                s_hat[i] = s_hat[i] * decay[i] + (n0[i] * decay[i] + n1[i]) * (0.5 * dt);
            }
        } else {
            for i in 0..nx {
                s_hat[i] *= decay[i];
            }
        }
        t += dt;
        step += 1;
        if step > 200_000 {
            return Err(Error::Instability {
                step,
                limit: BLOWUP_LIMIT,
            });
        }
    }
    let final_field = to_physical(&s_hat);
    step_means.push(final_field.iter().sum::<Real>() / nx as Real);
    Ok(BurgersRun {
        final_field,
        step_means,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antiderivative_of_one_is_x() {
        let grid: Vec<Real> = (0..101).map(|i| i as Real / 100.0).collect();
        let u = vec![1.0; 101];
        let s = solve_antiderivative(&u, &grid).unwrap();
        for (si, xi) in s.iter().zip(&grid) {
            assert!((si - xi).abs() < 1e-14);
        }
    }

    #[test]
    fn antiderivative_of_zero_is_zero() {
        let grid: Vec<Real> = (0..11).map(|i| i as Real / 10.0).collect();
        let s = solve_antiderivative(&vec![0.0; 11], &grid).unwrap();
        assert!(s.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn antiderivative_second_order_convergence() {
        let run = |n: usize| -> Real {
            let grid: Vec<Real> = (0..=n).map(|i| i as Real / n as Real).collect();
            let u: Vec<Real> = grid
                .iter()
                .map(|&x| (2.0 * std::f64::consts::PI * x).cos())
                .collect();
            let s = solve_antiderivative(&u, &grid).unwrap();
            grid.iter()
                .zip(&s)
                .map(|(&x, &si)| {
                    let exact = (2.0 * std::f64::consts::PI * x).sin() / (2.0 * std::f64::consts::PI);
                    (si - exact).abs()
                })
                .fold(0.0, Real::max)
        };
        let e200 = run(200);
        let e400 = run(400);
        let ratio = e200 / e400;
        assert!(
            (3.5..=4.5).contains(&ratio),
            "h -> h/2 error ratio {ratio}, errors {e200} {e400}"
        );
    }

    #[test]
    fn antiderivative_is_linear() {
        let grid: Vec<Real> = (0..51).map(|i| i as Real / 50.0).collect();
        let u1: Vec<Real> = grid.iter().map(|&x| (3.0 * x).sin()).collect();
        let u2: Vec<Real> = grid.iter().map(|&x| x * x - 0.3).collect();
        let (a, b) = (1.7, -0.4);
        let combo: Vec<Real> = u1.iter().zip(&u2).map(|(p, q)| a * p + b * q).collect();
        let s_combo = solve_antiderivative(&combo, &grid).unwrap();
        let s1 = solve_antiderivative(&u1, &grid).unwrap();
        let s2 = solve_antiderivative(&u2, &grid).unwrap();
        for i in 0..grid.len() {
            assert!((s_combo[i] - (a * s1[i] + b * s2[i])).abs() < 1e-12);
        }
    }

    #[test]
    fn antiderivative_rejects_bad_grids() {
        assert!(solve_antiderivative(&[1.0, 1.0], &[0.0, 0.0]).is_err());
        assert!(solve_antiderivative(&[1.0, 1.0], &[0.1, 0.2]).is_err());
        assert!(solve_antiderivative(&[1.0, 1.0, 1.0], &[0.0, 0.5, 0.4]).is_err());
    }

    #[test]
    fn diffusion_zero_forcing_stays_zero() {
        let out = solve_diffusion_reaction(&vec![0.0; 60], 0.01, 0.01, 60, 40).unwrap();
        for row in &out.field {
            assert!(row.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn diffusion_linear_single_mode_matches_analytic() {
        // with k = 0 and u = sin(pi x) the exact solution is
        // (1 - e^{-D pi^2 t}) / (D pi^2) * sin(pi x)
        let d = 0.01;
        let nx = 241;
        let nt = 640;
        let u: Vec<Real> = (0..nx)
            .map(|i| (std::f64::consts::PI * i as Real / (nx - 1) as Real).sin())
            .collect();
        let out = solve_diffusion_reaction(&u, d, 0.0, nx, nt).unwrap();
        let last = out.field.last().unwrap();
        let dpi2 = d * std::f64::consts::PI * std::f64::consts::PI;
        let amp = (1.0 - (-dpi2).exp()) / dpi2;
        let mut worst = 0.0f64;
        for (i, &x) in out.x_grid.iter().enumerate() {
            let exact = amp * (std::f64::consts::PI * x).sin();
            worst = worst.max((last[i] - exact).abs());
        }
        assert!(worst / amp < 0.05, "relative error {}", worst / amp);

        // profile shape is sin(pi x) to within 5% of peak
        let peak = last.iter().cloned().fold(0.0, Real::max);
        for (i, &x) in out.x_grid.iter().enumerate() {
            let shape = (std::f64::consts::PI * x).sin();
            assert!((last[i] / peak - shape).abs() < 0.05);
        }
    }

    #[test]
    fn diffusion_first_order_in_time() {
        let d = 0.05;
        let nx = 81;
        let u: Vec<Real> = (0..nx)
            .map(|i| {
                let x = i as Real / (nx - 1) as Real;
                (std::f64::consts::PI * x).sin() + 0.4 * (3.0 * std::f64::consts::PI * x).sin()
            })
            .collect();
        let at_t1 = |nt: usize| solve_diffusion_reaction(&u, d, 0.01, nx, nt).unwrap().field.last().unwrap().clone();
        let reference = at_t1(1600);
        let err = |nt: usize| {
            at_t1(nt)
                .iter()
                .zip(&reference)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, Real::max)
        };
        let e1 = err(50);
        let e2 = err(100);
        let ratio = e1 / e2;
        assert!(
            (1.5..=2.6).contains(&ratio),
            "backward Euler halving ratio {ratio} (errors {e1}, {e2})"
        );
    }

    #[test]
    fn diffusion_blowup_detected() {
        let err = solve_diffusion_reaction(&vec![1e5, 1e5, 1e5, 1e5, 1e5], 0.01, 50.0, 5, 200);
        match err {
            Err(Error::Instability { .. }) => {}
            other => panic!("expected instability, got {other:?}"),
        }
    }

    #[test]
    fn burgers_zero_stays_zero() {
        let s = solve_burgers(&vec![0.0; 32], 0.01, 32, 50).unwrap();
        assert!(s.iter().all(|&v| v.abs() < 1e-14));
    }

    #[test]
    fn burgers_conserves_spatial_mean_at_every_step() {
        let nx = 64;
        let u0: Vec<Real> = (0..nx)
            .map(|j| {
                let x = 2.0 * std::f64::consts::PI * j as Real / nx as Real;
                x.sin() + 0.3 * (2.0 * x).cos() + 0.11
            })
            .collect();
        let run = burgers_with_options(&u0, 0.01, nx, 400, true).unwrap();
        assert!(
            run.max_mean_drift() < 1e-8,
            "mean drift {}",
            run.max_mean_drift()
        );
    }

    #[test]
    fn burgers_diffusion_dominated_matches_heat_run() {
        let nx = 64;
        let nu = 1.0;
        let u0: Vec<Real> = (0..nx)
            .map(|j| (2.0 * std::f64::consts::PI * j as Real / nx as Real).sin())
            .collect();
        let full = solve_burgers(&u0, nu, nx, 400).unwrap();
        let heat = burgers_with_options(&u0, nu, nx, 400, false).unwrap().final_field;
        let amp = (-nu).exp();
        let mut worst = 0.0f64;
        for i in 0..nx {
            worst = worst.max((full[i] - heat[i]).abs());
        }
        assert!(worst / amp < 0.02, "relative gap {}", worst / amp);
        // and the heat run itself is the analytic decay of the sine mode
        for (j, &h) in heat.iter().enumerate() {
            let x = 2.0 * std::f64::consts::PI * j as Real / nx as Real;
            assert!((h - amp * x.sin()).abs() < 1e-8);
        }
    }

    #[test]
    fn burgers_rejects_non_power_of_two() {
        assert!(solve_burgers(&vec![0.0; 48], 0.01, 48, 10).is_err());
        assert!(solve_burgers(&vec![0.0; 8], 0.01, 8, 10).is_err());
    }
}
