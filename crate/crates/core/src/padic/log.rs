//! Teichmüller lifts and the Iwasawa logarithm.

use num_bigint::BigInt;

use super::number::{pow_p, Padic};
use super::PadicError;
use crate::algebra::{qi, Q};

/// The (p-1)-st root of unity congruent to `a` mod p.
pub fn teichmuller(p: u64, a: u64, abs_prec: i64) -> Padic {
    let prec = abs_prec.max(1) as u32;
    let m = pow_p(p, prec);
    let mut w = BigInt::from(a % p);
    for _ in 0..prec {
        w = w.modpow(&BigInt::from(p), &m);
    }
    Padic::from_bigint(p, &w, abs_prec)
}

/// `log(1 + x)` for `val(x) ≥ 1`, to the absolute precision of `x`.
pub(crate) fn log1p(x: &Padic) -> Padic {
    let p = x.prime();
    let target = x.abs_prec();
    if x.is_zero() {
        return x.clone();
    }
    let v = x.valuation();
    assert!(v >= 1, "log series needs val(x) ≥ 1");
    let mut sum = Padic::zero(p, target);
    let mut pw = x.clone();
    let mut n: u64 = 1;
    loop {
        // Every later term has valuation at least n·v − log_p(n).
        let bound = (n as i64) * v - ilog(p, n) as i64;
        if bound >= target && n > 1 {
            break;
        }
        let term = pw.div_q(&Q::from_integer(BigInt::from(n)));
        sum = if n % 2 == 1 {
            sum.add(&term)
        } else {
            sum.sub(&term)
        };
        pw = pw.mul(x);
        n += 1;
    }
    sum.truncate(target)
}

pub(crate) fn ilog(p: u64, n: u64) -> u32 {
    let mut k = 0;
    let mut x = n;
    while x >= p {
        x /= p;
        k += 1;
    }
    k
}

/// Iwasawa logarithm: `log p = 0` and roots of unity map to zero.
pub fn padic_log(z: &Padic) -> Result<Padic, PadicError> {
    if z.is_zero() {
        return Err(PadicError::LogOfZero);
    }
    let p = z.prime();
    let rel = z.rel_prec() as i64;
    let u = Padic::from_bigint(p, z.unit_part(), rel);
    let x = u.pow((p - 1) as u32).sub(&Padic::one(p, rel));
    Ok(log1p(&x).div_q(&qi((p - 1) as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn torsion_and_uniformizer_vanish() {
        for p in [5u64, 7] {
            for a in 1..p {
                assert!(padic_log(&teichmuller(p, a, 15)).unwrap().is_zero());
            }
            assert!(padic_log(&Padic::from_int(p, p as i64, 15))
                .unwrap()
                .is_zero());
            assert!(padic_log(&Padic::from_int(p, -1, 15)).unwrap().is_zero());
        }
    }

    #[test]
    fn series_oracle_for_two() {
        // log 2 = log(16)/4 = log(1 + 15)/4, summed independently with exact rationals.
        let p = 5;
        let x = Q::from_integer(15.into());
        let mut s = Q::from_integer(0.into());
        for n in 1..60i64 {
            let t = x.pow(n as i32) / Q::from_integer(n.into());
            s = if n % 2 == 1 { s + t } else { s - t };
        }
        let oracle = Padic::from_rational(p, &(s / Q::from_integer(4.into())), 12);
        let got = padic_log(&Padic::from_int(p, 2, 12)).unwrap();
        assert!(got.valuation() >= 1);
        assert!(got.sub(&oracle).is_zero());
    }

    #[test]
    fn additivity_and_leading_digits() {
        let p = 7;
        let a = Padic::from_rational(p, &q(3, 2), 14);
        let b = Padic::from_int(p, 10, 14);
        let lhs = padic_log(&a.mul(&b)).unwrap();
        let rhs = padic_log(&a).unwrap().add(&padic_log(&b).unwrap());
        assert!(lhs.sub(&rhs).is_zero());
        let l = padic_log(&Padic::from_int(p, 8, 14)).unwrap();
        let expected = Padic::from_rational(p, &(qi(7) - q(49, 2) + q(343, 3)), 4);
        assert!(l.truncate(4).sub(&expected).is_zero());
        assert!(matches!(
            padic_log(&Padic::zero(p, 5)),
            Err(PadicError::LogOfZero)
        ));
    }
}
