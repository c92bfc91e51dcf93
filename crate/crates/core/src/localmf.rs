//! Local data of a multiplicative function at one prime.
//!
//! A multiplicative `α` is determined by `F_n = α(p^n)` for each prime. Every
//! such sequence with `F_0 = 1` satisfies `F_n = Σ_j t_j F_{n-j}` for a unique
//! parameter list `t`, and Dirichlet convolution becomes the Cauchy product
//! of the value sequences.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::companion::{gfp_values, CoreParams};
use crate::error::{Error, Result};
use crate::ring::{common_ring, RingKind, Scalar};

pub const DEFAULT_HORIZON: usize = 16;

/// What is known about eventual vanishing of params and values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Structure {
    /// The parameters vanish after the degree: a positive function.
    #[serde(rename = "finite-params")]
    FiniteParams,
    /// The values vanish eventually: a negative function.
    #[serde(rename = "finite-values")]
    FiniteValues,
    /// Neither vanishes inside the computed horizon.
    #[serde(rename = "both-infinite-within-horizon")]
    BothInfinite,
}

impl Structure {
    fn dual(self) -> Structure {
        match self {
            Structure::FiniteParams => Structure::FiniteValues,
            Structure::FiniteValues => Structure::FiniteParams,
            Structure::BothInfinite => Structure::BothInfinite,
        }
    }

    /// Guess from truncated data: a zero tail is read as eventual vanishing.
    fn infer(values: &[Scalar], params: &[Scalar]) -> Structure {
        let zero_tail = |xs: &[Scalar]| xs.last().is_none_or(Scalar::is_zero);
        if zero_tail(params) {
            Structure::FiniteParams
        } else if zero_tail(&values[1..]) {
            Structure::FiniteValues
        } else {
            Structure::BothInfinite
        }
    }
}

/// Degree of the core: finite, or no vanishing seen up to the horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Finite(usize),
    UnboundedWithinHorizon,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(k) => write!(f, "{k}"),
            Degree::UnboundedWithinHorizon => write!(f, "unbounded-within-horizon"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(k) => s.serialize_u64(*k as u64),
            Degree::UnboundedWithinHorizon => s.serialize_str("unbounded-within-horizon"),
        }
    }
}

/// `⟨r, s⟩`: a product of `r` completely multiplicative functions and `s`
/// inverses of such.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Valence(pub u32, pub u32);

impl std::ops::Add for Valence {
    type Output = Valence;
    fn add(self, o: Valence) -> Valence {
        Valence(self.0 + o.0, self.1 + o.1)
    }
}

/// Values `F_0 = 1, F_1, …, F_N` of a multiplicative function at one prime,
/// together with the parameters `t_1..t_N` of its recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMF {
    values: Vec<Scalar>,
    params: Vec<Scalar>,
    inv_params: Option<Vec<Scalar>>,
    structure: Structure,
    valence: Option<Valence>,
    prime: Option<u64>,
}

/// `t_n = a_n - Σ_{j=1}^{n-1} t_j a_{n-j}` for `n = 1..N`.
pub fn recover_params(values: &[Scalar]) -> Result<CoreParams> {
    let ring = check_values(values)?;
    if values.len() < 2 {
        return Err(Error::InsufficientHorizon { needed: 1, have: 0 });
    }
    CoreParams::truncated(recover_raw(values, ring))
}

fn recover_raw(values: &[Scalar], ring: RingKind) -> Vec<Scalar> {
    let mut t: Vec<Scalar> = Vec::with_capacity(values.len().saturating_sub(1));
    for n in 1..values.len() {
        let mut v = values[n].clone();
        for j in 1..n {
            v = v - &t[j - 1] * &values[n - j];
        }
        t.push(v);
    }
    debug_assert!(t.iter().all(|x| x.ring() == ring));
    t
}

fn check_values(values: &[Scalar]) -> Result<RingKind> {
    let first = values.first().ok_or(Error::EmptyParams)?;
    let ring = common_ring(values)?;
    if !first.is_one() {
        return Err(Error::NotInvertibleSequence(first.to_string()));
    }
    Ok(ring)
}

fn cauchy(a: &[Scalar], b: &[Scalar], ring: RingKind) -> Vec<Scalar> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|m| {
            (0..=m).fold(Scalar::zero(ring), |acc, j| {
                if a[j].is_zero() || b[m - j].is_zero() {
                    acc
                } else {
                    acc + &a[j] * &b[m - j]
                }
            })
        })
        .collect()
}

impl LocalMF {
    /// Values from the recursion with parameters `t`, up to `horizon`.
    pub fn from_params(t: &CoreParams, horizon: usize) -> Result<LocalMF> {
        let values = gfp_values(t, horizon)?;
        let params: Vec<Scalar> = (1..=horizon).map(|j| t.get(j).expect("length checked")).collect();
        let structure = if t.is_finite() {
            Structure::FiniteParams
        } else {
            Structure::BothInfinite
        };
        Ok(LocalMF {
            values,
            params,
            inv_params: None,
            structure,
            valence: None,
            prime: None,
        })
    }

    /// Wraps a value list, recovering parameters and guessing structure from
    /// zero tails.
    pub fn from_values(values: Vec<Scalar>) -> Result<LocalMF> {
        let ring = check_values(&values)?;
        let params = recover_raw(&values, ring);
        let structure = Structure::infer(&values, &params);
        Ok(LocalMF {
            values,
            params,
            inv_params: None,
            structure,
            valence: None,
            prime: None,
        })
    }

    /// The convolution identity `1, 0, 0, …`.
    pub fn identity(ring: RingKind, horizon: usize) -> LocalMF {
        let mut values = vec![Scalar::zero(ring); horizon + 1];
        values[0] = Scalar::one(ring);
        LocalMF {
            values,
            params: vec![Scalar::zero(ring); horizon],
            inv_params: Some(vec![Scalar::zero(ring); horizon]),
            structure: Structure::FiniteParams,
            valence: Some(Valence(0, 0)),
            prime: None,
        }
    }

    pub fn with_structure(mut self, s: Structure) -> Self {
        self.structure = s;
        self
    }

    pub fn with_valence(mut self, v: Valence) -> Self {
        self.valence = Some(v);
        self
    }

    pub fn with_prime(mut self, p: u64) -> Self {
        self.prime = Some(p);
        self
    }

    /// Attaches the parameters of the convolution inverse after checking
    /// them against the values.
    pub fn with_inv_params(mut self, s: Vec<Scalar>) -> Result<Self> {
        self.inv_params = Some(s);
        self.validate()?;
        Ok(self)
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, n: usize) -> &Scalar {
        &self.values[n]
    }

    /// `t_1..t_N`.
    pub fn params(&self) -> &[Scalar] {
        &self.params
    }

    pub fn inv_params(&self) -> Option<&[Scalar]> {
        self.inv_params.as_deref()
    }

    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }

    pub fn ring(&self) -> RingKind {
        self.values[0].ring()
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn valence(&self) -> Option<Valence> {
        self.valence
    }

    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    /// The parameters as a core: finite (trailing zeros trimmed) when the
    /// structure says so, truncated otherwise.
    pub fn core(&self) -> Result<CoreParams> {
        match self.structure {
            Structure::FiniteParams => CoreParams::finite_trimmed(self.params.clone()),
            _ => CoreParams::truncated(self.params.clone()),
        }
    }

    /// Shortens to a smaller horizon.
    pub fn truncate(&self, horizon: usize) -> LocalMF {
        let horizon = horizon.min(self.horizon());
        let mut out = self.clone();
        out.values.truncate(horizon + 1);
        out.params.truncate(horizon);
        if let Some(s) = &mut out.inv_params {
            s.truncate(horizon);
        }
        out
    }

    pub fn promote(&self, ring: RingKind) -> Result<LocalMF> {
        let conv = |xs: &[Scalar]| xs.iter().map(|x| x.promote(ring)).collect::<Result<Vec<_>>>();
        Ok(LocalMF {
            values: conv(&self.values)?,
            params: conv(&self.params)?,
            inv_params: self.inv_params.as_deref().map(conv).transpose()?,
            ..self.clone()
        })
    }

    /// Checks `F_0 = 1`, the recursion, and `F_n = -s_n` when inverse
    /// parameters are attached.
    pub fn validate(&self) -> Result<()> {
        let ring = check_values(&self.values)?;
        common_ring(&self.params)?;
        let n = self.horizon();
        if self.params.len() != n {
            return Err(Error::Invariant(format!("{} params for horizon {n}", self.params.len())));
        }
        for m in 1..=n {
            let mut v = Scalar::zero(ring);
            for j in 1..=m {
                v = v + &self.params[j - 1] * &self.values[m - j];
            }
            if v != self.values[m] {
                return Err(Error::Invariant(format!("recursion fails at n = {m}")));
            }
        }
        if let Some(s) = &self.inv_params {
            for m in 1..=n.min(s.len()) {
                if self.values[m] != -&s[m - 1] {
                    return Err(Error::Invariant(format!("F_{m} != -s_{m}")));
                }
            }
        }
        Ok(())
    }

    /// Whether every value past `F_0` vanishes.
    pub fn is_identity(&self) -> bool {
        self.values[1..].iter().all(Scalar::is_zero)
    }
}

impl Serialize for LocalMF {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// The JSON shape of a [`LocalMF`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalMfJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prime: Option<u64>,
    pub horizon: usize,
    pub values: Vec<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<Vec<Scalar>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inv_params: Option<Vec<Scalar>>,
    pub structure: Structure,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub valence: Option<(u32, u32)>,
}

impl LocalMF {
    pub fn to_json(&self) -> LocalMfJson {
        LocalMfJson {
            prime: self.prime,
            horizon: self.horizon(),
            values: self.values.clone(),
            params: Some(self.params.clone()),
            inv_params: self.inv_params.clone(),
            structure: self.structure,
            valence: self.valence.map(|v| (v.0, v.1)),
        }
    }

    pub fn from_json(j: LocalMfJson) -> Result<LocalMF> {
        if j.values.len() != j.horizon + 1 {
            return Err(Error::InvalidArgument(format!(
                "horizon {} but {} values",
                j.horizon,
                j.values.len()
            )));
        }
        let mut mf = LocalMF::from_values(j.values)?.with_structure(j.structure);
        if let Some(p) = j.params {
            if p != mf.params {
                return Err(Error::Invariant("params disagree with values".into()));
            }
        }
        mf.prime = j.prime;
        mf.valence = j.valence.map(|(r, s)| Valence(r, s));
        match j.inv_params {
            Some(s) => mf.with_inv_params(s),
            None => Ok(mf),
        }
    }
}

/// Dirichlet convolution, locally the Cauchy product of values.
pub fn convolve(f: &LocalMF, g: &LocalMF) -> Result<LocalMF> {
    if f.ring() != g.ring() {
        return Err(Error::DomainMismatch(f.ring(), g.ring()));
    }
    let ring = f.ring();
    let values = cauchy(&f.values, &g.values, ring);
    let params = recover_raw(&values, ring);
    let structure = match (f.structure, g.structure) {
        (Structure::FiniteParams, Structure::FiniteParams) => Structure::FiniteParams,
        (Structure::FiniteValues, Structure::FiniteValues) => Structure::FiniteValues,
        _ => Structure::infer(&values, &params),
    };
    let valence = match (f.valence, g.valence) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    Ok(LocalMF {
        values,
        params,
        inv_params: None,
        structure,
        valence,
        prime: if f.prime == g.prime { f.prime } else { None },
    })
}

/// The convolution inverse.
///
/// Values are obtained by solving the triangular system `(f ∗ g)_n = [n = 0]`;
/// they are then required to equal `-t_n`, and the parameters recovered from
/// them to equal `-F_n`.
pub fn inverse(f: &LocalMF) -> Result<LocalMF> {
    let ring = check_values(&f.values)?;
    let n = f.horizon();
    let mut g: Vec<Scalar> = Vec::with_capacity(n + 1);
    g.push(Scalar::one(ring));
    for m in 1..=n {
        let mut v = Scalar::zero(ring);
        for j in 1..=m {
            v = v - &f.values[j] * &g[m - j];
        }
        g.push(v);
    }
    let g_params = recover_raw(&g, ring);
    for m in 1..=n {
        if g[m] != -&f.params[m - 1] {
            return Err(Error::Invariant(format!("inverse value {m} is not -t_{m}")));
        }
        if g_params[m - 1] != -&f.values[m] {
            return Err(Error::Invariant(format!("inverse parameter {m} is not -F_{m}")));
        }
    }
    Ok(LocalMF {
        values: g,
        params: g_params,
        inv_params: Some(f.params.clone()),
        structure: f.structure.dual(),
        valence: f.valence.map(|v| Valence(v.1, v.0)),
        prime: f.prime,
    })
}

/// Largest `k` with `t_k ≠ 0`, provided the structure declares the
/// parameters finite.
pub fn degree(f: &LocalMF) -> Degree {
    if f.structure != Structure::FiniteParams {
        return Degree::UnboundedWithinHorizon;
    }
    Degree::Finite(f.params.iter().rposition(|x| !x.is_zero()).map_or(0, |i| i + 1))
}

/// Type 1 (identity), 2 (finite params), 3 (finite values), 4 (neither).
pub fn classify_type(f: &LocalMF) -> u8 {
    if f.is_identity() {
        return 1;
    }
    match f.structure {
        Structure::FiniteParams => 2,
        Structure::FiniteValues => 3,
        Structure::BothInfinite => 4,
    }
}

/// Result of reducing a product of degree-1 factors and their inverses.
#[derive(Debug, Clone)]
pub struct NormalForm {
    /// Surviving `(t_1, ±1)` factors, positives first.
    pub factors: Vec<(Scalar, i8)>,
    pub valence: Valence,
    pub mf: LocalMF,
}

/// Cancels mutually inverse pairs and multiplies out the rest.
pub fn normal_form(factors: &[(Scalar, i8)], horizon: usize) -> Result<NormalForm> {
    let all: Vec<Scalar> = factors.iter().map(|(t, _)| t.clone()).collect();
    let ring = common_ring(&all)?;
    let mut pos: Vec<Scalar> = Vec::new();
    let mut neg: Vec<Scalar> = Vec::new();
    for (t, e) in factors {
        if t.is_zero() {
            return Err(Error::InvalidArgument("degree-1 factor with t_1 = 0".into()));
        }
        let (same, other) = match e {
            1 => (&mut pos, &mut neg),
            -1 => (&mut neg, &mut pos),
            _ => return Err(Error::InvalidArgument(format!("exponent must be ±1, got {e}"))),
        };
        match other.iter().position(|x| x == t) {
            Some(i) => {
                other.remove(i);
            }
            None => same.push(t.clone()),
        }
    }
    let valence = Valence(pos.len() as u32, neg.len() as u32);
    let mut mf = LocalMF::identity(ring, horizon);
    for t in &pos {
        let f = LocalMF::from_params(&CoreParams::finite(vec![t.clone()])?, horizon)?.with_valence(Valence(1, 0));
        mf = convolve(&mf, &f)?;
    }
    for t in &neg {
        let f = LocalMF::from_params(&CoreParams::finite(vec![t.clone()])?, horizon)?.with_valence(Valence(1, 0));
        mf = convolve(&mf, &inverse(&f)?)?;
    }
    let structure = match (pos.is_empty(), neg.is_empty()) {
        (_, true) => Structure::FiniteParams,
        (true, false) => Structure::FiniteValues,
        (false, false) => Structure::BothInfinite,
    };
    let mut out: Vec<(Scalar, i8)> = pos.into_iter().map(|t| (t, 1)).collect();
    out.extend(neg.into_iter().map(|t| (t, -1)));
    Ok(NormalForm {
        factors: out,
        valence,
        mf: mf.with_structure(structure).with_valence(valence),
    })
}

/// Trial-division factorization `n = Π p^e`, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

type CoreRule = dyn Fn(u64, usize) -> Result<CoreParams> + Send + Sync;

/// A multiplicative function given by a core for every prime.
#[derive(Clone)]
pub struct MFFamily {
    name: String,
    rule: Arc<CoreRule>,
}

impl fmt::Debug for MFFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MFFamily").field("name", &self.name).finish()
    }
}

impl MFFamily {
    /// `rule(p, horizon)` must return parameters good up to `horizon`.
    pub fn new(
        name: impl Into<String>,
        rule: impl Fn(u64, usize) -> Result<CoreParams> + Send + Sync + 'static,
    ) -> Self {
        MFFamily {
            name: name.into(),
            rule: Arc::new(rule),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn local(&self, p: u64, horizon: usize) -> Result<LocalMF> {
        Ok(LocalMF::from_params(&(self.rule)(p, horizon)?, horizon)?.with_prime(p))
    }
}

/// `α(n)` assembled from local values at each prime power dividing `n`.
pub fn global_eval(fam: &MFFamily, n: u64) -> Result<Scalar> {
    if n == 0 {
        return Err(Error::InvalidArgument("arithmetic functions start at n = 1".into()));
    }
    let mut acc: Option<Scalar> = None;
    for (p, e) in factorize(n) {
        let local = fam.local(p, e as usize)?;
        let v = local.value(e as usize).clone();
        acc = Some(match acc {
            Some(a) => a.checked_mul(&v)?,
            None => v,
        });
    }
    Ok(acc.unwrap_or_else(|| Scalar::int(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    fn polys(v: &[&str]) -> Vec<Scalar> {
        v.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn mf(t: &[i64], n: usize) -> LocalMF {
        LocalMF::from_params(&CoreParams::finite(ints(t)).unwrap(), n).unwrap()
    }

    #[test]
    fn values_from_params() {
        assert_eq!(mf(&[1, 1], 5).values(), ints(&[1, 1, 2, 3, 5, 8]));
        assert_eq!(mf(&[2, -1], 4).values(), ints(&[1, 2, 3, 4, 5]));
        let phi = CoreParams::truncated(polys(&["p-1", "p-1", "p-1"])).unwrap();
        let f = LocalMF::from_params(&phi, 3).unwrap();
        assert_eq!(f.values(), polys(&["1*p^0", "p-1", "p^2-p", "p^3-p^2"]));
        assert!(LocalMF::from_params(&phi, 4).is_err());
    }

    #[test]
    fn recovery() {
        assert_eq!(recover_params(&ints(&[1, 2, 3, 4, 5])).unwrap().params(), ints(&[2, -1, 0, 0]));
        let sigma = polys(&["1*p^0", "p+1", "p^2+p+1", "p^3+p^2+p+1"]);
        assert_eq!(recover_params(&sigma).unwrap().params(), polys(&["p+1", "-p", "0*p^0"]));
        assert_eq!(recover_params(&ints(&[1, -1, 0, 0, 0])).unwrap().params(), ints(&[-1, -1, -1, -1]));
        assert!(matches!(recover_params(&ints(&[2, 1])), Err(Error::NotInvertibleSequence(_))));
    }

    #[test]
    fn convolution_examples() {
        let zeta = mf(&[1], 6);
        assert_eq!(convolve(&zeta, &zeta).unwrap().values(), mf(&[2, -1], 6).values());

        let tau = mf(&[2, -1], 4);
        let sigma2 = mf(&[3, -2], 4);
        let prod = convolve(&tau, &sigma2).unwrap();
        assert_eq!(prod.values(), ints(&[1, 5, 16, 42, 99]));
        assert_eq!(prod.params(), ints(&[5, -9, 7, -2]));
        assert_eq!(degree(&prod), Degree::Finite(4));

        let id = LocalMF::identity(RingKind::Integer, 4);
        assert_eq!(convolve(&tau, &id).unwrap().values(), tau.values());
        let short = mf(&[1], 2);
        assert_eq!(convolve(&tau, &short).unwrap().horizon(), 2);
        let rat = tau.promote(RingKind::Rational).unwrap();
        assert!(convolve(&tau, &rat).is_err());
    }

    #[test]
    fn inverses() {
        let mu = inverse(&mf(&[1], 4)).unwrap();
        assert_eq!(mu.values(), ints(&[1, -1, 0, 0, 0]));
        assert_eq!(mu.structure(), Structure::FiniteValues);
        let phi = CoreParams::truncated(polys(&["p-1", "p-1", "p-1"])).unwrap();
        let phi_inv = inverse(&LocalMF::from_params(&phi, 3).unwrap()).unwrap();
        assert_eq!(phi_inv.values(), polys(&["1*p^0", "-p+1", "-p+1", "-p+1"]));
        let f = mf(&[3, -1, 2], 8);
        assert_eq!(inverse(&inverse(&f).unwrap()).unwrap().values(), f.values());
        assert!(LocalMF::from_values(ints(&[0, 1])).is_err());
    }

    #[test]
    fn degrees_and_types() {
        assert_eq!(degree(&mf(&[2, -1], 8)), Degree::Finite(2));
        let phi = CoreParams::truncated(vec![Scalar::int(1); 8]).unwrap();
        assert_eq!(degree(&LocalMF::from_params(&phi, 8).unwrap()), Degree::UnboundedWithinHorizon);
        assert_eq!(classify_type(&LocalMF::identity(RingKind::Integer, 5)), 1);
        assert_eq!(classify_type(&mf(&[3, -2], 5)), 2);
        assert_eq!(classify_type(&inverse(&mf(&[3, -2], 5)).unwrap()), 3);
        assert_eq!(classify_type(&LocalMF::from_params(&phi, 8).unwrap()), 4);
    }

    #[test]
    fn normal_forms() {
        let two = Scalar::int(2);
        let nf = normal_form(&[(two.clone(), 1), (two, -1)], 6).unwrap();
        assert!(nf.mf.is_identity());
        assert_eq!(nf.valence, Valence(0, 0));
        assert_eq!(classify_type(&nf.mf), 1);

        let nf = normal_form(&[(Scalar::p(), 1), ("1*p^0".parse().unwrap(), -1)], 3).unwrap();
        assert_eq!(nf.valence, Valence(1, 1));
        assert_eq!(nf.mf.values(), polys(&["1*p^0", "p-1", "p^2-p", "p^3-p^2"]));
        assert_eq!(classify_type(&nf.mf), 4);

        let one = Scalar::int(1);
        let nf = normal_form(&[(one.clone(), 1), (one, 1)], 5).unwrap();
        assert_eq!(nf.mf.values(), ints(&[1, 2, 3, 4, 5, 6]));
        assert_eq!(nf.valence, Valence(2, 0));
        assert!(normal_form(&[(Scalar::int(0), 1)], 3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = inverse(&mf(&[2, -1], 5)).unwrap().with_prime(3);
        let text = serde_json::to_string(&f).unwrap();
        let back: LocalMfJson = serde_json::from_str(&text).unwrap();
        assert_eq!(LocalMF::from_json(back).unwrap(), f);
        let bad = LocalMfJson { horizon: 3, ..f.to_json() };
        assert!(LocalMF::from_json(bad).is_err());
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert!(is_prime(13) && !is_prime(1) && !is_prime(91));
    }

    #[test]
    fn global_assembly() {
        let sigma = MFFamily::new("sigma", |p, _| {
            CoreParams::finite(vec![Scalar::int(p as i64 + 1), Scalar::int(-(p as i64))])
        });
        assert_eq!(global_eval(&sigma, 12).unwrap(), Scalar::int(28));
        assert_eq!(global_eval(&sigma, 1).unwrap(), Scalar::int(1));
        assert!(global_eval(&sigma, 0).is_err());
    }
}
