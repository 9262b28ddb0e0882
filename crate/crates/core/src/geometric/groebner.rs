//! Buchberger's algorithm over an arbitrary coefficient field and term order.

use std::cmp::Ordering;
use std::fmt::Debug;

use crate::algebra::{Field, Monomial};

/// Polynomial as terms sorted strictly descending in the active term order.
pub type Terms<V, F> = Vec<(Monomial<V>, F)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub max_degree: u32,
    pub max_steps: u64,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            max_degree: 12,
            max_steps: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuardExceeded {
    pub reason: String,
    pub steps: u64,
    pub max_degree_seen: u32,
    pub basis_len: usize,
    pub pairs_left: usize,
}

pub struct Buchberger<'a, V: Ord, F> {
    order: &'a dyn Fn(&Monomial<V>, &Monomial<V>) -> Ordering,
    guard: Guard,
    steps: u64,
    max_degree_seen: u32,
    _f: std::marker::PhantomData<F>,
}

impl<'a, V: Ord + Clone + Debug, F: Field> Buchberger<'a, V, F> {
    pub fn new(order: &'a dyn Fn(&Monomial<V>, &Monomial<V>) -> Ordering, guard: Guard) -> Self {
        Buchberger {
            order,
            guard,
            steps: 0,
            max_degree_seen: 0,
            _f: std::marker::PhantomData,
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Sorts, merges repeated monomials and drops zeros.
    pub fn sorted(&self, mut t: Terms<V, F>) -> Terms<V, F> {
        t.sort_by(|a, b| (self.order)(&b.0, &a.0));
        let mut out: Terms<V, F> = Vec::with_capacity(t.len());
        for (m, c) in t {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.clone() + c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    }

    fn merge_sub(&self, p: &Terms<V, F>, c: &F, m: &Monomial<V>, q: &Terms<V, F>) -> Terms<V, F> {
        let mut out = Vec::with_capacity(p.len() + q.len());
        let mut i = 0;
        let mut qs = q
            .iter()
            .map(|(qm, qc)| (qm.mul(m), qc.clone() * c.clone()))
            .peekable();
        while i < p.len() || qs.peek().is_some() {
            let take = match (p.get(i), qs.peek()) {
                (Some(a), Some(b)) => (self.order)(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match take {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (bm, bc) = qs.next().expect("peeked");
                    out.push((bm, -bc));
                }
                Ordering::Equal => {
                    let (bm, bc) = qs.next().expect("peeked");
                    let s = p[i].1.clone() - bc;
                    if !s.is_zero() {
                        out.push((bm, s));
                    }
                    i += 1;
                }
            }
        }
        out
    }

    fn monic(&self, p: Terms<V, F>) -> Terms<V, F> {
        match p.first() {
            Some((_, lc)) if !lc.is_one() => {
                let inv = lc.try_inv().expect("nonzero leading coefficient");
                p.into_iter().map(|(m, c)| (m, c * inv.clone())).collect()
            }
            _ => p,
        }
    }

    fn tick(&mut self, g: &[Terms<V, F>], pairs: usize) -> Result<(), GuardExceeded> {
        self.steps += 1;
        if self.steps > self.guard.max_steps {
            return Err(self.exceeded("reduction step bound", g.len(), pairs));
        }
        Ok(())
    }

    fn exceeded(&self, reason: &str, basis_len: usize, pairs_left: usize) -> GuardExceeded {
        GuardExceeded {
            reason: reason.into(),
            steps: self.steps,
            max_degree_seen: self.max_degree_seen,
            basis_len,
            pairs_left,
        }
    }

    /// Full reduction of `p` modulo the list `g` (whose elements are monic).
    pub fn reduce(
        &mut self,
        p: &Terms<V, F>,
        g: &[Terms<V, F>],
        pairs: usize,
    ) -> Result<Terms<V, F>, GuardExceeded> {
        let mut p = p.clone();
        let mut rem: Terms<V, F> = Vec::new();
        'outer: while let Some((lm, lc)) = p.first().cloned() {
            for h in g {
                if let Some(q) = lm.div(&h[0].0) {
                    self.tick(g, pairs)?;
                    p = self.merge_sub(&p, &lc, &q, h);
                    continue 'outer;
                }
            }
            rem.push(p.remove(0));
        }
        Ok(rem)
    }

    fn degree(p: &Terms<V, F>) -> u32 {
        p.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    /// Reduced Gröbner basis of the ideal generated by `input`.
    pub fn basis(&mut self, input: Vec<Terms<V, F>>) -> Result<Vec<Terms<V, F>>, GuardExceeded> {
        let mut g: Vec<Terms<V, F>> = Vec::new();
        for p in input {
            let p = self.sorted(p);
            let r = self.reduce(&p, &g, 0)?;
            if !r.is_empty() {
                g.push(self.monic(r));
            }
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for j in 0..g.len() {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        while !pairs.is_empty() {
            let (k, _) = pairs
                .iter()
                .enumerate()
                .min_by_key(|(_, (i, j))| g[*i][0].0.lcm(&g[*j][0].0).total_degree())
                .expect("nonempty");
            let (i, j) = pairs.swap_remove(k);
            let (mi, mj) = (&g[i][0].0, &g[j][0].0);
            if mi.is_coprime(mj) {
                continue;
            }
            let l = mi.lcm(mj);
            if g.iter().enumerate().any(|(h, gh)| {
                h != i
                    && h != j
                    && gh[0].0.divides(&l)
                    && !pairs.contains(&(i.min(h), i.max(h)))
                    && !pairs.contains(&(j.min(h), j.max(h)))
            }) {
                continue;
            }
            let si = l.div(mi).expect("lcm");
            let sj = l.div(mj).expect("lcm");
            let a: Terms<V, F> = g[i].iter().map(|(m, c)| (m.mul(&si), c.clone())).collect();
            let s = self.merge_sub(&a, &F::one(), &sj, &g[j]);
            let r = self.reduce(&s, &g, pairs.len())?;
            if r.is_empty() {
                continue;
            }
            let d = Self::degree(&r);
            self.max_degree_seen = self.max_degree_seen.max(d);
            if d > self.guard.max_degree {
                return Err(self.exceeded("total degree bound", g.len(), pairs.len()));
            }
            let r = self.monic(r);
            let n = g.len();
            for i in 0..n {
                pairs.push((i, n));
            }
            g.push(r);
        }
        self.interreduce(g)
    }

    fn interreduce(&mut self, g: Vec<Terms<V, F>>) -> Result<Vec<Terms<V, F>>, GuardExceeded> {
        let mut minimal: Vec<Terms<V, F>> = Vec::new();
        for (i, p) in g.iter().enumerate() {
            let redundant = g
                .iter()
                .enumerate()
                .any(|(j, q)| j != i && q[0].0.divides(&p[0].0) && (q[0].0 != p[0].0 || j < i));
            if !redundant {
                minimal.push(p.clone());
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<Terms<V, F>> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q.clone())
                .collect();
            let head = minimal[i][0].clone();
            let tail: Terms<V, F> = minimal[i][1..].to_vec();
            let mut r = vec![head];
            r.extend(self.reduce(&tail, &others, 0)?);
            out.push(r);
        }
        out.sort_by(|a, b| (self.order)(&a[0].0, &b[0].0));
        Ok(out)
    }
}
