//! Independent numerical oracles for the acceptance suite. Nothing here
//! calls into the library's numerics.

#![allow(dead_code)]

use heun_ghf::Complex64 as C;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Complex number of modulus in `[0.5, 1.5]` and uniform argument.
pub fn unit_complex(rng: &mut ChaCha8Rng) -> C {
    C::from_polar(
        rng.gen_range(0.5..1.5),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

/// Like [`unit_complex`] but at least 0.15 away from every non-positive
/// integer, so it can serve as a denominator parameter.
pub fn safe_gamma(rng: &mut ChaCha8Rng) -> C {
    loop {
        let g = unit_complex(rng);
        let k = g.re.round();
        if k > 0.0 || (g - k).norm() > 0.15 {
            return g;
        }
    }
}

/// Non-integer real-part complex number for exponent probes.
pub fn non_integer(rng: &mut ChaCha8Rng) -> C {
    loop {
        let d = C::new(rng.gen_range(-2.5..2.5), rng.gen_range(-1.0..1.0));
        if (d.re - d.re.round()).abs() > 0.1 || d.im.abs() > 0.1 {
            return d;
        }
    }
}

/// `W(e^y)` by bisection on `w + ln w = y`, then Newton.
pub fn lambert_w_exp(y: f64) -> f64 {
    let f = |w: f64| w + w.ln() - y;
    let (mut lo, mut hi) = (f64::MIN_POSITIVE, y.abs() + 2.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let mut w = 0.5 * (lo + hi);
    for _ in 0..3 {
        w -= f(w) / (1.0 + 1.0 / w);
    }
    w
}

/// Adaptive Simpson quadrature.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Dormand–Prince 5(4) with error-per-step control. Returns the state at
/// each requested output time, which must be increasing and start at `t0`.
pub fn dopri5<F>(f: F, t0: f64, y0: &[C], outputs: &[f64], rtol: f64, atol: f64) -> Vec<Vec<C>>
where
    F: Fn(f64, &[C]) -> Vec<C>,
{
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const CS: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    let n = y0.len();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut h: f64 = 1e-3;
    let mut out = Vec::with_capacity(outputs.len());
    for &target in outputs {
        while t < target {
            let step = h.min(target - t);
            let mut k: Vec<Vec<C>> = Vec::with_capacity(7);
            k.push(f(t, &y));
            for s in 1..7 {
                let ys: Vec<C> = (0..n)
                    .map(|i| y[i] + step * (0..s).map(|j| A[s - 1][j] * k[j][i]).sum::<C>())
                    .collect();
                k.push(f(t + CS[s] * step, &ys));
            }
            let y5: Vec<C> = (0..n)
                .map(|i| y[i] + step * (0..7).map(|j| B5[j] * k[j][i]).sum::<C>())
                .collect();
            let err = (0..n)
                .map(|i| {
                    let e = step * (0..7).map(|j| (B5[j] - B4[j]) * k[j][i]).sum::<C>();
                    let sc = atol + rtol * y[i].norm().max(y5[i].norm());
                    (e.norm() / sc).powi(2)
                })
                .sum::<f64>()
                / n as f64;
            let err = err.sqrt();
            if err <= 1.0 {
                t += step;
                y = y5;
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if step == h || err > 1.0 {
                h = step * factor;
            }
        }
        out.push(y.clone());
    }
    out
}

/// Gamma function at positive half-integers and integers up to 10.
pub fn gamma_half_integer(x: f64) -> f64 {
    let twice = (2.0 * x).round();
    assert!((2.0 * x - twice).abs() < 1e-12 && x > 0.0 && x <= 10.0);
    if twice as i64 % 2 == 0 {
        (1..x.round() as i64).map(|k| k as f64).product()
    } else {
        let mut g = std::f64::consts::PI.sqrt();
        let mut a = 0.5;
        while a < x - 0.25 {
            g *= a;
            a += 1.0;
        }
        g
    }
}

/// `J_(1/2)` and `J_(3/2)` in closed form.
pub fn bessel_j_half(order_twice: u32, x: f64) -> f64 {
    let pre = (2.0 / (std::f64::consts::PI * x)).sqrt();
    match order_twice {
        1 => pre * x.sin(),
        3 => pre * (x.sin() / x - x.cos()),
        _ => panic!("only orders 1/2 and 3/2"),
    }
}
