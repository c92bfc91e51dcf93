//! Periods of the recursion `F_n = Σ t_j F_{n-j}` over the integers and
//! modulo `m`, found by hashing state vectors `(F_n, …, F_{n+k-1})`.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::companion::CoreParams;
use crate::error::{Error, Result};
use crate::identities::CheckReport;
use crate::localmf::is_prime;
use crate::ring::{RingKind, Scalar};

pub const DEFAULT_BOUND: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodResult {
    pub preperiod: usize,
    pub period: usize,
    /// `None` for detection over the integers.
    pub modulus: Option<u64>,
    pub bound: usize,
}

fn finite_core(t: &CoreParams) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(Error::TruncatedCore)
    }
}

fn residue(x: &Scalar, m: u64) -> Result<u64> {
    match x {
        Scalar::Int(v) => Ok(v.mod_floor(&BigInt::from(m)).to_u64().expect("below modulus")),
        Scalar::Mod(r) if r.modulus() == m => Ok(r.residue()),
        other => Err(Error::DomainMismatch(other.ring(), RingKind::Mod(m))),
    }
}

/// First repeat of `step` iterated from `state`, at most `bound` steps.
fn find_cycle<S, F>(mut state: S, bound: usize, mut step: F) -> Option<(usize, usize)>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S) -> S,
{
    let mut seen: HashMap<S, usize> = HashMap::new();
    for n in 0..=bound {
        if let Some(&first) = seen.get(&state) {
            return Some((first, n - first));
        }
        let next = step(&state);
        seen.insert(state, n);
        state = next;
    }
    None
}

fn mod_step(t: &[u64], m: u64) -> impl Fn(&Vec<u64>) -> Vec<u64> + '_ {
    move |s: &Vec<u64>| {
        let k = t.len();
        let next = (0..k).fold(0u128, |acc, j| (acc + t[j] as u128 * s[k - 1 - j] as u128) % m as u128);
        let mut out = s[1..].to_vec();
        out.push(next as u64);
        out
    }
}

/// Period of the sequence with initial state `start` (length `k`) under the
/// recursion of `t` modulo `m`.
pub fn sequence_period_mod(t: &CoreParams, start: &[Scalar], m: u64, bound: usize) -> Result<PeriodResult> {
    finite_core(t)?;
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let tm: Vec<u64> = t.params().iter().map(|x| residue(x, m)).collect::<Result<_>>()?;
    let s0: Vec<u64> = start.iter().map(|x| residue(x, m)).collect::<Result<_>>()?;
    let (preperiod, period) = find_cycle(s0, bound, mod_step(&tm, m)).ok_or(Error::BoundExceeded(bound))?;
    Ok(PeriodResult {
        preperiod,
        period,
        modulus: Some(m),
        bound,
    })
}

/// Period of `F_n mod m` with `F_0 = 1`.
pub fn period_mod(t: &CoreParams, m: u64, bound: usize) -> Result<PeriodResult> {
    finite_core(t)?;
    let start = crate::companion::gfp_values(t, t.k() - 1)?;
    sequence_period_mod(t, &start, m, bound)
}

/// Period of `F_n` over the integers, if a state repeats within `bound` steps.
pub fn detect_integral_period(t: &CoreParams, bound: usize) -> Result<Option<PeriodResult>> {
    finite_core(t)?;
    let ti: Vec<BigInt> = t
        .params()
        .iter()
        .map(|x| x.as_int().cloned().ok_or(Error::DomainMismatch(x.ring(), RingKind::Integer)))
        .collect::<Result<_>>()?;
    let start: Vec<BigInt> = crate::companion::gfp_values(t, t.k() - 1)?
        .iter()
        .map(|x| x.as_int().cloned().expect("integer core"))
        .collect();
    let k = ti.len();
    let step = |s: &Vec<BigInt>| {
        let next: BigInt = (0..k).map(|j| &ti[j] * &s[k - 1 - j]).sum();
        let mut out = s[1..].to_vec();
        out.push(next);
        out
    };
    Ok(find_cycle(start, bound, step).map(|(preperiod, period)| PeriodResult {
        preperiod,
        period,
        modulus: None,
        bound,
    }))
}

/// Polynomial over the field with `p` elements, lowest degree first.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    while r.len() > db && !r.is_empty() {
        let c = r[r.len() - 1] * lead_inv % p;
        let shift = r.len() - 1 - db;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
        }
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Irreducibility of the core modulo a prime by trial division with every
/// monic polynomial of degree at most `k / 2`.
pub fn core_irreducible_mod(t: &CoreParams, p: u64) -> Result<bool> {
    let k = t.k();
    let mut core = vec![0u64; k + 1];
    core[k] = 1;
    for (j, x) in t.params().iter().enumerate() {
        core[k - 1 - j] = (p - residue(x, p)?) % p;
    }
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                f.push(c % p);
                c /= p;
            }
            f.push(1);
            if poly_rem(&core, &f, p).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For a core irreducible mod `p`, the period mod `p` divides `p^k - 1`.
/// Reducible cores are reported without an assertion.
pub fn check_period_field_order(t: &CoreParams, p: u64) -> Result<CheckReport> {
    finite_core(t)?;
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if t.k() > 6 {
        return Err(Error::InvalidArgument("irreducibility test limited to k <= 6".into()));
    }
    if residue(&t.params()[t.k() - 1], p)? == 0 {
        return Err(Error::InvalidArgument(format!("t_k vanishes mod {p}")));
    }
    let res = period_mod(t, p, DEFAULT_BOUND.max((p as usize).pow(t.k() as u32) + 1))?;
    let irreducible = core_irreducible_mod(t, p)?;
    let order = p.pow(t.k() as u32) - 1;
    let mut rep = CheckReport::new("period-divides-field-order", format!("t={t} p={p}"));
    rep.note(format!(
        "{} mod {p}, period {}, p^k-1 = {order}",
        if irreducible { "irreducible" } else { "reducible" },
        res.period
    ));
    if irreducible {
        rep.record(|| format!("t={t} p={p}"), &(order % res.period as u64), &0);
        rep.record(|| format!("t={t} p={p} preperiod"), &res.preperiod, &0);
    }
    Ok(rep)
}

/// `check_period_field_order` over all integer cores `k ≤ k_max` with entries in
/// `[lo, hi]` and every listed prime with `t_k ≢ 0`.
pub fn sweep_period_field_order(k_max: usize, lo: i64, hi: i64, primes: &[u64]) -> Result<CheckReport> {
    let mut rep = CheckReport::new(
        "period-divides-field-order",
        format!("k <= {k_max}, t in [{lo},{hi}]^k, p in {primes:?}"),
    );
    let mut irreducible = 0;
    for t in crate::identities::integer_cores(k_max, lo, hi) {
        for &p in primes {
            if residue(&t.params()[t.k() - 1], p)? == 0 {
                continue;
            }
            let sub = check_period_field_order(&t, p)?;
            if sub.cases > 0 {
                irreducible += 1;
            }
            rep.cases += sub.cases;
            if !sub.pass && rep.witness.is_none() {
                rep.pass = false;
                rep.witness = sub.witness;
            }
        }
    }
    rep.note(format!("{irreducible} irreducible cases"));
    Ok(rep)
}

/// Periods of every orbit column `j < k` and of `F` modulo `m`.
pub fn column_periods_mod(t: &CoreParams, m: u64, bound: usize) -> Result<(PeriodResult, Vec<PeriodResult>)> {
    let k = t.k();
    let table = crate::companion::HookTable::new(t, 0, k as i64)?;
    let f = period_mod(t, m, bound)?;
    let cols = (0..k)
        .map(|c| {
            let col = table.column(c);
            sequence_period_mod(t, &col[..k], m, bound)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((f, cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn core(v: &[i64]) -> CoreParams {
        CoreParams::finite(v.iter().map(|&x| Scalar::int(x)).collect()).unwrap()
    }

    #[test]
    fn fibonacci_periods() {
        let fib = core(&[1, 1]);
        let per = |m| period_mod(&fib, m, DEFAULT_BOUND).unwrap();
        assert_eq!((per(2).preperiod, per(2).period), (0, 3));
        assert_eq!(per(3).period, 8);
        assert_eq!(per(5).period, 20);
        assert_eq!(per(7).period, 16);
        assert_eq!(per(10).period, 60);
    }

    #[test]
    fn period_field_order_examples() {
        let fib = core(&[1, 1]);
        let r3 = check_period_field_order(&fib, 3).unwrap();
        assert!(r3.pass && r3.cases > 0);
        let r7 = check_period_field_order(&fib, 7).unwrap();
        assert!(r7.pass && r7.cases > 0);
        let r5 = check_period_field_order(&fib, 5).unwrap();
        assert_eq!(r5.cases, 0);
        assert!(r5.notes[0].starts_with("reducible mod 5, period 20"));
        assert!(check_period_field_order(&fib, 4).is_err());
        assert!(check_period_field_order(&core(&[1, 3]), 3).is_err());
    }

    #[test]
    fn irreducibility() {
        assert!(core_irreducible_mod(&core(&[1, 1]), 2).unwrap());
        assert!(!core_irreducible_mod(&core(&[1, 1]), 5).unwrap());
        // X^3 - X - 1 is irreducible mod 2 and mod 3.
        assert!(core_irreducible_mod(&core(&[0, 1, 1]), 2).unwrap());
        assert!(core_irreducible_mod(&core(&[0, 1, 1]), 3).unwrap());
        // X^4 + X^2 + 1 = (X^2 + X + 1)^2 mod 2 has no root but is reducible.
        assert!(!core_irreducible_mod(&core(&[0, -1, 0, -1]), 2).unwrap());
    }

    #[test]
    fn integral_periods() {
        let r = detect_integral_period(&core(&[-1, -1]), 100).unwrap().unwrap();
        assert_eq!((r.preperiod, r.period), (0, 3));
        assert_eq!(detect_integral_period(&core(&[-1]), 100).unwrap().unwrap().period, 2);
        assert!(detect_integral_period(&core(&[1, 1]), 500).unwrap().is_none());
    }

    // Φ_d from X^d - 1 divided by Φ_e for every proper divisor e.
    fn cyclotomic(d: usize) -> Vec<i64> {
        let mut num = vec![0i64; d + 1];
        num[0] = -1;
        num[d] = 1;
        for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
            let den = cyclotomic(e);
            let mut q = vec![0i64; num.len() - den.len() + 1];
            for i in (0..q.len()).rev() {
                let c = num[i + den.len() - 1];
                q[i] = c;
                for (j, &b) in den.iter().enumerate() {
                    num[i + j] -= c * b;
                }
            }
            num = q;
        }
        num
    }

    #[test]
    fn cyclotomic_cores_have_period_d() {
        for d in 1..=12 {
            let c = cyclotomic(d);
            let k = c.len() - 1;
            let t: Vec<i64> = (1..=k).map(|j| -c[k - j]).collect();
            let r = detect_integral_period(&core(&t), DEFAULT_BOUND).unwrap().unwrap();
            assert_eq!((r.preperiod, r.period), (0, d), "d={d}");
        }
    }

    #[test]
    fn columns_share_period() {
        let (f, cols) = column_periods_mod(&core(&[1, 1]), 7, DEFAULT_BOUND).unwrap();
        assert!(cols.iter().all(|c| c.period == f.period));
        let (f, cols) = column_periods_mod(&core(&[2, -1, 3]), 5, DEFAULT_BOUND).unwrap();
        assert!(cols.iter().all(|c| c.period == f.period));
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(period_mod(&core(&[1, 1]), 1000, 10), Err(Error::BoundExceeded(10))));
    }
}
