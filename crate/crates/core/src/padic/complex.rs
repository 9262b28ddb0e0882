//! Double-precision complex di- and trilogarithms and the single-valued
//! trilogarithm `P_3`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::rational::{binomial, factorial};
use crate::algebra::{qi, Q};

pub const ZETA3: f64 = 1.202_056_903_159_594_3;

const ZETA2: f64 = PI * PI / 6.0;
const TERMS: usize = 90;

/// Bernoulli numbers `B_0..B_TERMS` with `B_1 = −1/2`.
fn bernoulli_q() -> &'static [Q] {
    static B: OnceLock<Vec<Q>> = OnceLock::new();
    B.get_or_init(|| {
        let mut b: Vec<Q> = vec![qi(1)];
        for m in 1..=TERMS {
            let mut s = Q::zero();
            for (k, bk) in b.iter().enumerate() {
                s += Q::from_integer(binomial((m + 1) as u64, k as u64)) * bk;
            }
            b.push(-s / qi(m as i64 + 1));
        }
        b
    })
}

fn bernoulli() -> &'static [f64] {
    static B: OnceLock<Vec<f64>> = OnceLock::new();
    B.get_or_init(|| {
        bernoulli_q()
            .iter()
            .map(|x| x.to_f64().expect("finite"))
            .collect()
    })
}

/// `ζ(s)` for integers `s ≤ 3`, `s ≠ 1`.
fn zeta_int(s: i64) -> f64 {
    match s {
        3 => ZETA3,
        2 => ZETA2,
        0 => -0.5,
        s if s < 0 => {
            let m = (-s) as usize;
            let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * bernoulli()[m + 1] / (m as f64 + 1.0)
        }
        _ => unreachable!("zeta at {s}"),
    }
}

fn series(n: i32, z: Complex64) -> Complex64 {
    let mut sum = Complex64::zero();
    let mut pw = z;
    for k in 1..400 {
        let t = pw / (k as f64).powi(n);
        sum += t;
        if t.norm() < 1e-18 {
            break;
        }
        pw *= z;
    }
    sum
}

/// Coefficients of `Li_2` and `Li_3` as power series in `u = −log(1 − z)`.
fn u_coefficients() -> &'static (Vec<f64>, Vec<f64>) {
    static C: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    C.get_or_init(|| {
        let b = bernoulli_q();
        let fact = |n: usize| Q::from_integer(factorial(n as u32));
        // Li_2 = Σ B_k u^(k+1)/(k+1)!
        let li2: Vec<Q> = (0..TERMS).map(|k| &b[k] / fact(k + 1)).collect();
        // d Li_3/du = Li_2 / (e^u − 1), and u/(e^u − 1) = Σ B_j u^j / j!.
        let li3: Vec<Q> = (0..TERMS)
            .map(|m| {
                let a: Q = (0..=m).map(|k| &li2[k] * &b[m - k] / fact(m - k)).sum();
                a / qi(m as i64 + 1)
            })
            .collect();
        let f = |v: Vec<Q>| v.iter().map(|x| x.to_f64().expect("finite")).collect();
        (f(li2), f(li3))
    })
}

/// `Σ c_k u^(k+1)`.
fn u_series(coeffs: &[f64], u: Complex64) -> Complex64 {
    let mut sum = Complex64::zero();
    let mut pw = u;
    for c in coeffs {
        sum += pw * *c;
        if pw.norm() < 1e-30 {
            break;
        }
        pw *= u;
    }
    sum
}

/// Picks the faster of the `u` and `log z` expansions inside the annulus `0.5 < |z| < 2`.
fn annulus(n: i32, z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    if u.norm() < z.ln().norm() && u.norm() < 3.0 {
        let (l2, l3) = u_coefficients();
        u_series(if n == 2 { l2 } else { l3 }, u)
    } else {
        log_expansion(n, z)
    }
}

/// Expansion in `μ = log z` for `0.5 < |z| < 2`.
fn log_expansion(n: i32, z: Complex64) -> Complex64 {
    let mu = z.ln();
    let harmonic: f64 = (1..n).map(|j| 1.0 / j as f64).sum();
    let mut sum = Complex64::zero();
    let mut pw = Complex64::new(1.0, 0.0);
    let mut fact = 1.0;
    for k in 0..TERMS as i32 {
        if k > 0 {
            pw *= mu;
            fact *= k as f64;
        }
        let t = if k == n - 1 {
            if mu.is_zero() {
                Complex64::zero()
            } else {
                pw / fact * (harmonic - (-mu).ln())
            }
        } else {
            pw / fact * zeta_int((n - k) as i64)
        };
        sum += t;
        // Trivial zeros of ζ make some terms vanish, so test the envelope.
        if k > n && pw.norm() / fact < 1e-18 {
            break;
        }
    }
    sum
}

pub fn complex_li2(z: Complex64) -> Complex64 {
    if z.norm() <= 0.5 {
        series(2, z)
    } else if z.norm() >= 2.0 {
        let l = (-z).ln();
        -complex_li2(z.inv()) - ZETA2 - 0.5 * l * l
    } else {
        annulus(2, z)
    }
}

pub fn complex_li3(z: Complex64) -> Complex64 {
    if z.norm() <= 0.5 {
        series(3, z)
    } else if z.norm() >= 2.0 {
        let l = (-z).ln();
        complex_li3(z.inv()) - ZETA2 * l - l * l * l / 6.0
    } else {
        annulus(3, z)
    }
}

/// `Re(Li_3(z) − log|z| Li_2(z) + (1/3) log²|z| Li_1(z))` with `Li_1(z) = −log(1 − z)`.
pub fn complex_p3(z: Complex64) -> f64 {
    let lz = z.norm().ln();
    let li1 = -(Complex64::new(1.0, 0.0) - z).ln();
    (complex_li3(z) - lz * complex_li2(z) + lz * lz / 3.0 * li1).re
}

/// `|LHS − 2ζ(3)|` for the nine-term relation at `(x, y) = (−1, 1/3)`.
pub fn kummer_spence_check() -> f64 {
    kummer_spence_residual(-1.0, 1.0 / 3.0)
}

pub fn kummer_spence_residual(x: f64, y: f64) -> f64 {
    let p = |t: f64| complex_p3(Complex64::new(t, 0.0));
    let lhs = 2.0 * p(x)
        + 2.0 * p(y)
        + 2.0 * p(x * (1.0 - y) / (x - 1.0))
        + 2.0 * p(y * (1.0 - x) / (y - 1.0))
        + 2.0 * p((1.0 - x) / (1.0 - y))
        + 2.0 * p(x * (1.0 - y) / (y * (1.0 - x)))
        - p(x * y)
        - p(x / y)
        - p(x * (1.0 - y) * (1.0 - y) / (y * (1.0 - x) * (1.0 - x)));
    (lhs - 2.0 * ZETA3).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn classical_values() {
        assert!((complex_li2(c(1.0)).re - ZETA2).abs() < 1e-12);
        assert!((complex_li2(c(-1.0)).re + ZETA2 / 2.0).abs() < 1e-12);
        assert!((complex_li2(c(0.5)).re - (ZETA2 / 2.0 - 0.5 * 2f64.ln().powi(2))).abs() < 1e-13);
        let li3_half = 7.0 / 8.0 * ZETA3 - ZETA2 / 2.0 * 2f64.ln() + 2f64.ln().powi(3) / 6.0;
        assert!((complex_li3(c(0.5)).re - li3_half).abs() < 1e-13);
        assert!((complex_li3(c(-1.0)).re + 0.75 * ZETA3).abs() < 1e-13);
    }

    #[test]
    fn branches_agree_at_the_seams() {
        for z in [
            Complex64::new(0.5, 0.0),
            Complex64::new(0.3, 0.4),
            Complex64::new(-1.2, 1.6),
        ] {
            let r = z.norm();
            let a = complex_li3(z);
            let b = log_expansion(3, z * if r <= 0.5 { 1.0 } else { 0.999_999_999_999 });
            assert!((a - b).norm() < 1e-9, "{z}");
        }
    }

    #[test]
    fn single_valued_trilog() {
        assert!((complex_p3(c(-1.0)) + 0.75 * ZETA3).abs() < 1e-10);
        assert!(
            (complex_p3(c(-1.0 / 3.0)) - 2.0 * complex_p3(c(1.0 / 3.0)) + 13.0 / 6.0 * ZETA3).abs()
                < 1e-10
        );
        for x in [0.17, -0.4, 2.5, -7.0, 0.9, 1.3] {
            assert!(
                (complex_p3(c(x)) - complex_p3(c(1.0 / x))).abs() < 1e-10,
                "{x}"
            );
        }
        assert!(kummer_spence_check() < 1e-10);
        assert!(kummer_spence_residual(0.3, -0.6) < 1e-10);
    }
}
