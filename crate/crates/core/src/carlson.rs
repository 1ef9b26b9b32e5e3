//! Carlson symmetric elliptic integrals `R_F`, `R_J` and `R_C` by the
//! duplication algorithm, plus the complete Legendre integrals built on them.
//!
//! Truncation follows Carlson (1995): iterate until `4^-m Q < |A_m|`, then
//! sum the fifth-order Taylor series in the elementary symmetric functions.

use crate::error::{Error, Result};

const MAX_ITER: usize = 60;

fn no_convergence(which: &str) -> Error {
    Error::ConvergenceFailure {
        method: "carlson",
        detail: format!("{which} did not converge in {MAX_ITER} duplications"),
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "Carlson tolerance {tol} must lie in (0, 1)"
        )))
    }
}

/// `R_F(x, y, z)` for non-negative arguments with at most one zero.
pub fn rf(x: f64, y: f64, z: f64, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    if x < 0.0 || y < 0.0 || z < 0.0 || [x + y, x + z, y + z].contains(&0.0) {
        return Err(Error::InvalidParams(format!(
            "R_F({x}, {y}, {z}) undefined"
        )));
    }
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / 3.0;
    let q = (3.0 * tol).powf(-1.0 / 6.0) * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let (x0, y0) = (x, y);
    let mut a = a0;
    let mut scale = 1.0;
    let mut iter = 0;
    while scale * q >= a.abs() {
        if iter == MAX_ITER {
            return Err(no_convergence("R_F"));
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        a = 0.25 * (a + lambda);
        scale *= 0.25;
        iter += 1;
    }
    let dx = (a0 - x0) * scale / a;
    let dy = (a0 - y0) * scale / a;
    let dz = -(dx + dy);
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    let series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
    Ok(series / a.sqrt())
}

/// `R_C(1, 1 + e)` for `e > -1`, the degenerate integral used by [`rj`].
fn rc_one_plus(e: f64) -> f64 {
    if e.abs() < 1e-4 {
        // alternating series: sum (-e)^k / (2k + 1)
        1.0 - e / 3.0 + e * e / 5.0 - e * e * e / 7.0 + e.powi(4) / 9.0
    } else if e > 0.0 {
        let s = e.sqrt();
        s.atan() / s
    } else {
        let s = (-e).sqrt();
        s.atanh() / s
    }
}

/// `R_C(x, y)` for `x >= 0`, `y > 0`.
pub fn rc(x: f64, y: f64) -> Result<f64> {
    if x < 0.0 || y <= 0.0 {
        return Err(Error::InvalidParams(format!("R_C({x}, {y}) undefined")));
    }
    if x == 0.0 {
        return Ok(std::f64::consts::FRAC_PI_2 / y.sqrt());
    }
    Ok(rc_one_plus(y / x - 1.0) / x.sqrt())
}

/// `R_J(x, y, z, p)` for non-negative `x, y, z` (at most one zero) and `p > 0`.
pub fn rj(x: f64, y: f64, z: f64, p: f64, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    if x < 0.0 || y < 0.0 || z < 0.0 || p <= 0.0 || [x + y, x + z, y + z].contains(&0.0) {
        return Err(Error::InvalidParams(format!(
            "R_J({x}, {y}, {z}, {p}) undefined"
        )));
    }
    let (mut x, mut y, mut z, mut p) = (x, y, z, p);
    let a0 = (x + y + z + 2.0 * p) / 5.0;
    let delta = (p - x) * (p - y) * (p - z);
    let q = (0.25 * tol).powf(-1.0 / 6.0)
        * (a0 - x)
            .abs()
            .max((a0 - y).abs())
            .max((a0 - z).abs())
            .max((a0 - p).abs());
    let (x0, y0, z0) = (x, y, z);
    let mut a = a0;
    let mut scale = 1.0;
    let mut sum = 0.0;
    let mut iter = 0;
    while scale * q >= a.abs() {
        if iter == MAX_ITER {
            return Err(no_convergence("R_J"));
        }
        let (sx, sy, sz, sp) = (x.sqrt(), y.sqrt(), z.sqrt(), p.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        let d = (sp + sx) * (sp + sy) * (sp + sz);
        let e = scale * scale * scale * delta / (d * d);
        sum += scale * rc_one_plus(e) / d;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        p = 0.25 * (p + lambda);
        a = 0.25 * (a + lambda);
        scale *= 0.25;
        iter += 1;
    }
    let dx = (a0 - x0) * scale / a;
    let dy = (a0 - y0) * scale / a;
    let dz = (a0 - z0) * scale / a;
    let dp = -0.5 * (dx + dy + dz);
    let e2 = dx * dy + dx * dz + dy * dz - 3.0 * dp * dp;
    let e3 = dx * dy * dz + 2.0 * e2 * dp + 4.0 * dp * dp * dp;
    let e4 = (2.0 * dx * dy * dz + e2 * dp + 3.0 * dp * dp * dp) * dp;
    let e5 = dx * dy * dz * dp * dp;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    Ok(scale * series / (a * a.sqrt()) + 6.0 * sum)
}

/// Complete integral of the first kind, `K(k) = R_F(0, 1 - k^2, 1)`.
pub fn complete_first_kind(k_sq: f64, tol: f64) -> Result<f64> {
    rf(0.0, 1.0 - k_sq, 1.0, tol)
}

/// Complete integral of the third kind with characteristic `n`,
/// `Pi(n, k) = integral_0^{pi/2} dphi / ((1 - n sin^2) sqrt(1 - k^2 sin^2))`.
pub fn complete_third_kind(n: f64, k_sq: f64, tol: f64) -> Result<f64> {
    let kc = 1.0 - k_sq;
    Ok(rf(0.0, kc, 1.0, tol)? + n / 3.0 * rj(0.0, kc, 1.0, 1.0 - n, tol)?)
}
