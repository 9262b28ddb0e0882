//! p-adic polylogarithms: Teichmüller values by Frobenius equivariance and
//! power series on residue disks.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde_json::json;

use super::log::{ilog, padic_log, teichmuller};
use super::number::{modinv, pow_p, Padic};
use super::PadicError;
use crate::algebra::rational::binomial;
use crate::algebra::{qi, Q};

/// `Li_k(ω)` at the Teichmüller lift of `a`, from the Frobenius-twisted sum
/// `Σ_(p∤m) ω^m / m^k = (1 − p^(−k)) Li_k(ω)`, accurate modulo `p^w`.
pub fn teichmuller_polylog(p: u64, k: u32, a: u64, w: u32) -> Padic {
    let n = w + 3;
    let terms = w + 3;
    let big_p = pow_p(p, w);
    let inv = |x: &BigInt| modinv(x, &big_p).expect("unit modulus");
    let z = teichmuller(p, a, w as i64).unit_part().clone();
    let x = z.modpow(&BigInt::from(p), &big_p);
    let j = pow_p(p, n - 1);
    let x_j = z.modpow(&pow_p(p, n), &big_p);
    let one = BigInt::from(1);
    let inv_1mx = inv(&(&one - &x));
    let mut s: Vec<BigInt> = vec![((&one - &x_j) * &inv_1mx).mod_floor(&big_p)];
    for i in 1..=terms {
        let mut acc = BigInt::from(0);
        for l in 0..i {
            let t = if l == 0 {
                &s[0] - &one
            } else {
                s[l as usize].clone()
            };
            let c = binomial(i as u64, l as u64) * t;
            if (i - l + 1) % 2 == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc -= (&j - &one).modpow(&BigInt::from(i), &big_p) * &x_j;
        s.push((acc * &inv_1mx).mod_floor(&big_p));
    }
    let mut total = BigInt::from(0);
    for b in 1..p {
        let ib = inv(&BigInt::from(b));
        let mut inner = BigInt::from(0);
        let mut pi = BigInt::from(1);
        let mut ibi = BigInt::from(1);
        for i in 0..=terms {
            let c = binomial((k + i - 1) as u64, i as u64) * &pi * &ibi * &s[i as usize];
            if i % 2 == 0 {
                inner += c;
            } else {
                inner -= c;
            }
            pi = (pi * BigInt::from(p)).mod_floor(&big_p);
            ibi = (ibi * &ib).mod_floor(&big_p);
        }
        total += ib.modpow(&BigInt::from(k), &big_p) * z.modpow(&BigInt::from(b), &big_p) * inner;
    }
    let ell = (total * inv(&(&one - &x_j))).mod_floor(&big_p);
    let pk = pow_p(p, k);
    Padic::from_bigint(p, &ell, w as i64).mul_q(&Q::new(pk.clone(), pk - 1))
}

/// Power series in `t` for `log` and `Li_1..Li_n` on the disk `z = ω(a) + p·t`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskSeries {
    pub residue: u64,
    pub center: Padic,
    pub log: Vec<Padic>,
    pub li: Vec<Vec<Padic>>,
}

impl DiskSeries {
    /// Series for `Li_k`, `k ≥ 1`, or `log` for `k = 0`.
    pub fn series(&self, k: u32) -> &[Padic] {
        if k == 0 {
            &self.log
        } else {
            &self.li[(k - 1) as usize]
        }
    }

    /// Local parameter of `z` in this disk.
    pub fn parameter(&self, z: &Padic) -> Padic {
        z.sub(&self.center).div_q(&qi(self.center.prime() as i64))
    }
}

/// Evaluates `Σ c_j t^j` by Horner's rule.
pub fn eval_series(c: &[Padic], t: &Padic) -> Padic {
    let mut acc = c.last().cloned().expect("nonempty series");
    for cj in c.iter().rev().skip(1) {
        acc = acc.mul(t).add(cj);
    }
    acc
}

/// Smallest `N` with `j − k·⌊log_p j⌋ ≥ target` for all `j ≥ N`.
pub fn truncation_degree(p: u64, k: u32, target: i64) -> usize {
    let ok = |j: u64| j as i64 - (k as i64) * (ilog(p, j) as i64) >= target;
    let mut n = target.max(1) as u64;
    loop {
        if (n..n * 4 + 8).all(ok) {
            return n as usize;
        }
        n += 1;
    }
}

/// Disk series for every residue class `2..p-1`, with coefficients accurate modulo `p^digits`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalPolylogTable {
    pub p: u64,
    pub max_weight: u32,
    pub digits: u32,
    pub degree: usize,
    pub disks: BTreeMap<u64, DiskSeries>,
}

impl LocalPolylogTable {
    pub fn build(p: u64, max_weight: u32, digits: u32) -> Result<Self, PadicError> {
        if p < 5 {
            return Err(PadicError::UnsupportedPrime(p));
        }
        let degree = truncation_degree(p, max_weight, digits as i64 + 2);
        let w = digits + max_weight + 4;
        let disks: BTreeMap<u64, DiskSeries> = (2..p)
            .into_par_iter()
            .map(|a| (a, build_disk(p, a, max_weight, w, degree)))
            .collect();
        Ok(LocalPolylogTable {
            p,
            max_weight,
            digits,
            degree,
            disks,
        })
    }

    /// Loads the table from `dir` if a matching file exists, otherwise builds and stores it.
    pub fn cached(
        dir: Option<&Path>,
        p: u64,
        max_weight: u32,
        digits: u32,
    ) -> Result<Self, PadicError> {
        let Some(dir) = dir else {
            return Self::build(p, max_weight, digits);
        };
        let degree = truncation_degree(p, max_weight, digits as i64 + 2);
        let path = dir.join(format!(
            "polylog_p{p}_M{digits}_N{degree}_n{max_weight}.json"
        ));
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(v) = serde_json::from_str::<serde_json::Value>(&text) {
                if let Ok(t) = Self::from_json(&v) {
                    if t.p == p
                        && t.max_weight == max_weight
                        && t.digits == digits
                        && t.degree == degree
                    {
                        return Ok(t);
                    }
                }
            }
        }
        let t = Self::build(p, max_weight, digits)?;
        if std::fs::create_dir_all(dir).is_ok() {
            let _ = std::fs::write(&path, t.to_json().to_string());
        }
        Ok(t)
    }

    pub fn disk(&self, a: u64) -> Option<&DiskSeries> {
        self.disks.get(&a)
    }

    /// Disk containing `z`, or a domain error naming the residue.
    pub fn disk_of(&self, z: &Padic) -> Result<&DiskSeries, PadicError> {
        match z.residue() {
            Some(a) if a >= 2 => Ok(&self.disks[&a]),
            Some(a) => Err(PadicError::BadDisk {
                p: self.p,
                residue: a.to_string(),
            }),
            None => Err(PadicError::BadDisk {
                p: self.p,
                residue: "infinity".into(),
            }),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let disks: Vec<serde_json::Value> = self
            .disks
            .values()
            .map(|d| {
                let ser = |c: &[Padic]| c.iter().map(Padic::to_json).collect::<Vec<_>>();
                json!({
                    "residue": d.residue,
                    "center": d.center.to_json(),
                    "log": ser(&d.log),
                    "li": d.li.iter().map(|s| ser(s)).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({"p": self.p, "maxWeight": self.max_weight, "M": self.digits, "N": self.degree, "disks": disks})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, PadicError> {
        let bad = || PadicError::Format("polylog table".into());
        let de = |a: &serde_json::Value| -> Result<Vec<Padic>, PadicError> {
            a.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(Padic::from_json)
                .collect()
        };
        let mut disks = BTreeMap::new();
        for d in v["disks"].as_array().ok_or_else(bad)? {
            let residue = d["residue"].as_u64().ok_or_else(bad)?;
            let li = d["li"]
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(de)
                .collect::<Result<Vec<_>, _>>()?;
            disks.insert(
                residue,
                DiskSeries {
                    residue,
                    center: Padic::from_json(&d["center"])?,
                    log: de(&d["log"])?,
                    li,
                },
            );
        }
        Ok(LocalPolylogTable {
            p: v["p"].as_u64().ok_or_else(bad)?,
            max_weight: v["maxWeight"].as_u64().ok_or_else(bad)? as u32,
            digits: v["M"].as_u64().ok_or_else(bad)? as u32,
            degree: v["N"].as_u64().ok_or_else(bad)? as usize,
            disks,
        })
    }

    /// `Li_k(z)` for `z` in a good disk.
    pub fn polylog(&self, k: u32, z: &Padic) -> Result<Padic, PadicError> {
        if k == 0 || k > self.max_weight {
            return Err(PadicError::WeightOutOfRange(k));
        }
        let d = self.disk_of(z)?;
        Ok(eval_series(d.series(k), &d.parameter(z)).truncate(self.digits as i64))
    }
}

fn build_disk(p: u64, a: u64, n: u32, w: u32, degree: usize) -> DiskSeries {
    let prec = w as i64;
    let omega = teichmuller(p, a, prec);
    let pq = Padic::from_int(p, p as i64, prec + degree as i64 + 4);
    let one = Padic::one(p, prec);
    let u = pq.div(&one.sub(&omega));
    let v = pq.div(&omega);
    let neg_v = v.neg();
    // dz/z = v · Σ (−v t)^j dt.
    let mut dzz = Vec::with_capacity(degree);
    let mut pw = v.clone();
    for _ in 0..degree {
        dzz.push(pw.clone());
        pw = pw.mul(&neg_v);
    }
    let mut log = vec![Padic::zero(p, prec)];
    let mut s1 = vec![teichmuller_polylog(p, 1, a, w)];
    let (mut up, mut vp) = (u.clone(), v.clone());
    for j in 1..degree {
        let jq = qi(j as i64);
        s1.push(up.div_q(&jq));
        let lj = vp.div_q(&jq);
        log.push(if j % 2 == 1 { lj } else { lj.neg() });
        up = up.mul(&u);
        vp = vp.mul(&v);
    }
    let mut li = vec![s1];
    for k in 2..=n {
        let prev = li.last().expect("weight one present");
        let mut next = vec![teichmuller_polylog(p, k, a, w)];
        for j in 0..degree - 1 {
            let mut acc = Padic::zero(p, prec + degree as i64);
            for i in 0..=j {
                acc = acc.add(&prev[i].mul(&dzz[j - i]));
            }
            next.push(acc.div_q(&qi(j as i64 + 1)));
        }
        li.push(next);
    }
    DiskSeries {
        residue: a,
        center: omega,
        log,
        li,
    }
}

/// `Σ z^m / m^k` for `val(z) ≥ 1`.
pub fn polylog_small(k: u32, z: &Padic, digits: i64) -> Padic {
    let p = z.prime();
    let v = z.valuation();
    let mut sum = Padic::zero(p, digits);
    if z.is_zero() {
        return Padic::zero(p, z.abs_prec().min(digits));
    }
    let mut pw = z.clone();
    let mut m: u64 = 1;
    while (m as i64) * v - (k as i64) * (ilog(p, m) as i64) < digits {
        let mk = Q::from_integer(BigInt::from(m).pow(k));
        sum = sum.add(&pw.div_q(&mk));
        pw = pw.mul(z);
        m += 1;
    }
    sum.truncate(digits)
}

/// `Li_1(z) = −log(1 − z)`, independent of the disk series.
pub fn li1_direct(z: &Padic) -> Result<Padic, PadicError> {
    let one = Padic::one(z.prime(), z.abs_prec());
    Ok(padic_log(&one.sub(z))?.neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn table(p: u64) -> LocalPolylogTable {
        LocalPolylogTable::build(p, 4, 20).unwrap()
    }

    #[test]
    fn weight_one_matches_logarithm() {
        for p in [5u64, 7] {
            let t = table(p);
            for z in [qi(2), q(1, 2), qi(-1), qi(9), q(-3, 4), qi(3)] {
                let x = Padic::from_rational(p, &z, 20);
                if x.residue().is_none_or(|r| r < 2) {
                    continue;
                }
                let a = t.polylog(1, &x).unwrap();
                let b = li1_direct(&x).unwrap();
                assert!(a.sub(&b).valuation() >= 18, "p={p} z={z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn even_weights_vanish_at_minus_one() {
        for p in [5u64, 7] {
            let t = table(p);
            let m1 = Padic::from_int(p, -1, 20);
            for k in [2, 4] {
                assert!(t.polylog(k, &m1).unwrap().valuation() >= 18, "p={p} k={k}");
            }
            assert!(!t.polylog(3, &m1).unwrap().is_zero());
        }
    }

    #[test]
    fn disk_series_satisfy_the_differential_system() {
        let t = table(5);
        for d in t.disks.values() {
            let p = 5i64;
            let v = Padic::from_int(5, p, 40).div(&d.center);
            for k in 2..=4u32 {
                let s = d.series(k);
                let prev = d.series(k - 1);
                for j in 0..10usize {
                    // (j+1) c_(j+1) = Σ prev_i · v (−v)^(j−i)
                    let mut acc = Padic::zero(5, 60);
                    for i in 0..=j {
                        let coef = v.mul(&v.neg().pow((j - i) as u32));
                        acc = acc.add(&prev[i].mul(&coef));
                    }
                    let lhs = s[j + 1].mul_q(&qi(j as i64 + 1));
                    assert!(lhs.sub(&acc).valuation() >= 18);
                }
            }
        }
    }

    #[test]
    fn small_argument_series() {
        let p = 5;
        let x = Padic::from_int(p, 5, 20);
        let a = polylog_small(1, &x, 20);
        assert!(a.sub(&li1_direct(&x).unwrap()).is_zero());
    }

    #[test]
    fn bad_disks_are_rejected() {
        let t = table(5);
        assert!(matches!(
            t.polylog(2, &Padic::from_int(5, 6, 20)),
            Err(PadicError::BadDisk { .. })
        ));
        assert!(matches!(
            t.polylog(2, &Padic::from_rational(5, &q(1, 5), 20)),
            Err(PadicError::BadDisk { .. })
        ));
        assert!(matches!(
            t.polylog(5, &Padic::from_int(5, 2, 20)),
            Err(PadicError::WeightOutOfRange(5))
        ));
    }

    #[test]
    fn json_cache_round_trip() {
        let t = LocalPolylogTable::build(5, 2, 8).unwrap();
        let back = LocalPolylogTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let dir = std::env::temp_dir().join(format!("ck-table-test-{}", std::process::id()));
        let a = LocalPolylogTable::cached(Some(&dir), 5, 2, 8).unwrap();
        let b = LocalPolylogTable::cached(Some(&dir), 5, 2, 8).unwrap();
        assert_eq!(a, b);
        let _ = std::fs::remove_dir_all(dir);
    }
}
