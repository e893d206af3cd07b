//! Small numeric kernels shared across modules.

/// 15-point Kronrod abscissae on [-1, 1] (positive half; symmetric).
const XK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

/// Kronrod weights matching `XK`.
const WK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Embedded 7-point Gauss weights (nodes XK[1], XK[3], XK[5], XK[7]).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kronrod = WK[7] * f(c);
    let mut gauss = WG[3] * f(c);
    for (i, (&x, &wk)) in XK.iter().zip(WK.iter()).enumerate().take(7) {
        let fsum = f(c - h * x) + f(c + h * x);
        kronrod += wk * fsum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * fsum;
        }
    }
    (kronrod * h, (kronrod - gauss).abs() * h)
}

/// Adaptive Gauss-Kronrod quadrature of `f` over `[a, b]` by interval
/// bisection, stopping when the local G7/K15 discrepancy is below
/// `rel_tol` relative to the whole-interval estimate.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    fn recurse(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (val, err) = gk15(f, a, b);
        if err <= tol || depth >= 40 {
            return val;
        }
        let c = 0.5 * (a + b);
        recurse(f, a, c, 0.5 * tol, depth + 1) + recurse(f, c, b, 0.5 * tol, depth + 1)
    }
    let (coarse, _) = gk15(f, a, b);
    let tol = rel_tol * coarse.abs().max(1e-300);
    recurse(f, a, b, tol, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_exponential_exactly_enough() {
        let v = integrate(&|x: f64| (-x).exp(), 0.0, 50.0, 1e-12);
        assert!((v - 1.0).abs() < 1e-10, "got {v}");
    }

    #[test]
    fn integrates_polynomial() {
        let v = integrate(&|x: f64| x * x, 0.0, 3.0, 1e-12);
        assert!((v - 9.0).abs() < 1e-10);
    }

    #[test]
    fn handles_oscillatory_integrand() {
        let v = integrate(&|x: f64| (10.0 * x).sin(), 0.0, std::f64::consts::PI, 1e-12);
        let exact = (1.0 - (10.0 * std::f64::consts::PI).cos()) / 10.0;
        assert!((v - exact).abs() < 1e-10, "got {v} vs {exact}");
    }
}
