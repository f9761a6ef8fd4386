//! Numeric kernels: gamma function, sphere/ball measures, adaptive quadrature.

/// Lanczos approximation (g = 7, 9 coefficients), relative accuracy better
/// than 1e-12 on the arguments used here (positive reals, half-integers).
pub fn gamma(z: f64) -> f64 {
    #[allow(clippy::excessive_precision)] // published coefficient set, digits kept verbatim
    const COEFFS: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if z < 0.5 {
        // reflection formula
        std::f64::consts::PI / ((std::f64::consts::PI * z).sin() * gamma(1.0 - z))
    } else {
        let z = z - 1.0;
        let mut x = COEFFS[0];
        for (i, c) in COEFFS.iter().enumerate().skip(1) {
            x += c / (z + i as f64);
        }
        let t = z + 7.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * x
    }
}

/// Surface area of the unit n-sphere S^n embedded in R^{n+1}:
/// `2 π^{(n+1)/2} / Γ((n+1)/2)`. For example `sphere_surface_area(2) = 4π`.
pub fn sphere_surface_area(n: u32) -> f64 {
    let half = (n as f64 + 1.0) / 2.0;
    2.0 * std::f64::consts::PI.powf(half) / gamma(half)
}

/// Volume of the n-dimensional Euclidean ball of radius `r`:
/// `π^{n/2} / Γ(n/2 + 1) · r^n`.
pub fn euclidean_ball_volume(n: u32, r: f64) -> f64 {
    let half = n as f64 / 2.0;
    std::f64::consts::PI.powf(half) / gamma(half + 1.0) * r.powi(n as i32)
}

/// `∫_0^d sinh^m(t) dt` by the standard reduction
/// `I_m = (sinh^{m-1}(d) cosh(d) - (m-1) I_{m-2}) / m`.
pub fn sinh_power_integral(m: u32, d: f64) -> f64 {
    match m {
        0 => d,
        1 => d.cosh() - 1.0,
        _ => {
            (d.sinh().powi(m as i32 - 1) * d.cosh()
                - (m as f64 - 1.0) * sinh_power_integral(m - 2, d))
                / m as f64
        }
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson_rec(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
            + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` with relative tolerance
/// `rel_tol`. Deterministic for a given integrand and interval.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    // coarse magnitude estimate to convert the relative tolerance
    let panels = 64;
    let h = (b - a) / panels as f64;
    let mut coarse = 0.0;
    for i in 0..panels {
        let x0 = a + i as f64 * h;
        coarse += f(x0 + 0.5 * h).abs() * h;
    }
    let eps = rel_tol * coarse.max(f64::MIN_POSITIVE);
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive_simpson_rec(&f, a, b, fa, fm, fb, whole, eps, 52)
}

/// Tensor-product Simpson estimate on a rectangle (3x3 nodes).
fn simpson2(f: &impl Fn(f64, f64) -> f64, x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    let xm = 0.5 * (x0 + x1);
    let ym = 0.5 * (y0 + y1);
    let w = |i: usize| [1.0, 4.0, 1.0][i];
    let xs = [x0, xm, x1];
    let ys = [y0, ym, y1];
    let mut s = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            s += w(i) * w(j) * f(x, y);
        }
    }
    s * (x1 - x0) * (y1 - y0) / 36.0
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson2_rec(
    f: &impl Fn(f64, f64) -> f64,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let xm = 0.5 * (x0 + x1);
    let ym = 0.5 * (y0 + y1);
    let q00 = simpson2(f, x0, xm, y0, ym);
    let q10 = simpson2(f, xm, x1, y0, ym);
    let q01 = simpson2(f, x0, xm, ym, y1);
    let q11 = simpson2(f, xm, x1, ym, y1);
    let refined = q00 + q10 + q01 + q11;
    let delta = refined - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        refined + delta / 15.0
    } else {
        let child = 0.25 * eps;
        adaptive_simpson2_rec(f, x0, xm, y0, ym, q00, child, depth - 1)
            + adaptive_simpson2_rec(f, xm, x1, y0, ym, q10, child, depth - 1)
            + adaptive_simpson2_rec(f, x0, xm, ym, y1, q01, child, depth - 1)
            + adaptive_simpson2_rec(f, xm, x1, ym, y1, q11, child, depth - 1)
    }
}

/// Adaptive 2-D quadrature of `f` over the rectangle `[x0,x1] x [y0,y1]`
/// with relative tolerance `rel_tol`.
pub fn integrate2(
    f: impl Fn(f64, f64) -> f64,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    rel_tol: f64,
) -> f64 {
    if x0 == x1 || y0 == y1 {
        return 0.0;
    }
    let n = 16;
    let hx = (x1 - x0) / n as f64;
    let hy = (y1 - y0) / n as f64;
    let mut coarse = 0.0;
    for i in 0..n {
        for j in 0..n {
            coarse += f(x0 + (i as f64 + 0.5) * hx, y0 + (j as f64 + 0.5) * hy).abs() * hx * hy;
        }
    }
    let eps = rel_tol * coarse.max(f64::MIN_POSITIVE);
    let whole = simpson2(&f, x0, x1, y0, y1);
    adaptive_simpson2_rec(&f, x0, x1, y0, y1, whole, eps, 30)
}
