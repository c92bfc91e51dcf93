//! Symbolic isobaric polynomials in `t1, …, tk`.
//!
//! The generalized Fibonacci polynomials `F_{k,n}`, generalized Lucas
//! polynomials `G_{k,n}` and the weighted family `P_{ω,k,n}` all share the
//! closed form
//!
//! ```text
//! P_{ω,k,n} = Σ_{α ⊢ n, parts ≤ k} multinomial(α) · (Σ α_j ω_j / |α|) · t^α
//! ```
//!
//! with `ω = (1,1,…)` for `F` and `ω = (1,2,…)` for `G`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::companion::CoreParams;
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, multinomial, weight_factor, ExponentVector};
use crate::ring::{common_ring, Scalar};

/// How weights continue past the explicitly listed head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    None,
    /// Every later weight equals this constant.
    Constant(BigInt),
    /// Later weights keep growing by this step from the last listed one.
    Arithmetic(BigInt),
}

/// The weight vector `ω = (ω_1, ω_2, …)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    head: Vec<BigInt>,
    tail: Tail,
}

impl WeightVector {
    pub fn new(head: Vec<BigInt>, tail: Tail) -> Result<Self> {
        if head.is_empty() {
            return Err(Error::InvalidArgument("weight vector needs at least one entry".into()));
        }
        Ok(WeightVector { head, tail })
    }

    pub fn finite(head: Vec<BigInt>) -> Self {
        WeightVector::new(head, Tail::None).expect("non-empty head")
    }

    /// `(1, 1, 1, …)`
    pub fn gfp() -> Self {
        WeightVector::new(vec![BigInt::one()], Tail::Constant(BigInt::one())).unwrap()
    }

    /// `(1, 2, 3, …)`
    pub fn glp() -> Self {
        WeightVector::new(vec![BigInt::one()], Tail::Arithmetic(BigInt::one())).unwrap()
    }

    /// `(0, …, 0, 1, 1, …)` with the first 1 at position `first_one`.
    pub fn hook(first_one: usize) -> Self {
        assert!(first_one >= 1);
        let mut head = vec![BigInt::zero(); first_one - 1];
        head.push(BigInt::one());
        WeightVector::new(head, Tail::Constant(BigInt::one())).unwrap()
    }

    /// `ω_j` for `j ≥ 1`.
    pub fn weight(&self, j: usize) -> Result<BigInt> {
        if j == 0 {
            return Err(Error::MissingWeight(0));
        }
        if let Some(w) = self.head.get(j - 1) {
            return Ok(w.clone());
        }
        let past = BigInt::from(j - self.head.len());
        match &self.tail {
            Tail::None => Err(Error::MissingWeight(j)),
            Tail::Constant(c) => Ok(c.clone()),
            Tail::Arithmetic(step) => Ok(self.head.last().unwrap() + step * past),
        }
    }
}

/// A polynomial in `t1..tk` whose monomials all have weighted degree
/// `Σ j·α_j = degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsobaricPoly {
    k: usize,
    degree: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl IsobaricPoly {
    pub fn zero(k: usize, degree: usize) -> Self {
        IsobaricPoly {
            k,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(k: usize) -> Self {
        let mut p = IsobaricPoly::zero(k, 0);
        p.terms.insert(ExponentVector::new(vec![0; k]), BigRational::one());
        p
    }

    /// The single variable `t_j`.
    pub fn var(k: usize, j: usize) -> Self {
        assert!(j >= 1 && j <= k);
        let mut alpha = vec![0; k];
        alpha[j - 1] = 1;
        let mut p = IsobaricPoly::zero(k, j);
        p.terms.insert(ExponentVector::new(alpha), BigRational::one());
        p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &ExponentVector) -> BigRational {
        self.terms.get(alpha).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn insert(&mut self, alpha: ExponentVector, c: BigRational) {
        debug_assert_eq!(alpha.n() as usize, self.degree);
        let alpha = alpha.padded(self.k);
        let sum = self.terms.get(&alpha).cloned().unwrap_or_else(BigRational::zero) + c;
        if sum.is_zero() {
            self.terms.remove(&alpha);
        } else {
            self.terms.insert(alpha, sum);
        }
    }

    /// Sum of two polynomials of the same isobaric degree.
    pub fn add(&self, other: &IsobaricPoly) -> Result<IsobaricPoly> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "cannot add isobaric degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut out = IsobaricPoly::zero(self.k.max(other.k), degree);
        for (a, c) in self.terms.iter().chain(other.terms.iter()) {
            out.insert(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> IsobaricPoly {
        let mut out = IsobaricPoly::zero(self.k, self.degree);
        if c.is_zero() {
            return out;
        }
        for (a, v) in &self.terms {
            out.terms.insert(a.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> IsobaricPoly {
        self.scale(&-BigRational::one())
    }

    pub fn mul(&self, other: &IsobaricPoly) -> IsobaricPoly {
        let mut out = IsobaricPoly::zero(self.k.max(other.k), self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.insert(a.union(b), x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> IsobaricPoly {
        (0..e).fold(IsobaricPoly::one(self.k), |acc, _| acc.mul(self))
    }

    /// Replaces `t_j` by `subs[j-1]`; each substitute must be isobaric of
    /// degree `j` so that the result stays isobaric of the same degree.
    pub fn substitute(&self, subs: &[IsobaricPoly]) -> Result<IsobaricPoly> {
        for (i, s) in subs.iter().enumerate() {
            if s.degree != i + 1 && !s.is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "substitute for t{} has degree {}",
                    i + 1,
                    s.degree
                )));
            }
        }
        let k = subs.iter().map(|s| s.k).max().unwrap_or(self.k);
        let mut out = IsobaricPoly::zero(k, self.degree);
        for (alpha, c) in &self.terms {
            let mut term = IsobaricPoly::one(k).scale(c);
            for j in 1..=alpha.largest_part() {
                let e = alpha.get(j);
                if e == 0 {
                    continue;
                }
                let s = subs
                    .get(j - 1)
                    .ok_or_else(|| Error::InvalidArgument(format!("no substitute for t{j}")))?;
                term = term.mul(&s.pow(e));
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Evaluates at `t = (t_1, …)`. Rational coefficients must embed in the
    /// ring of `t`.
    pub fn eval(&self, t: &[Scalar]) -> Result<Scalar> {
        let ring = common_ring(t)?;
        let mut acc = Scalar::zero(ring);
        for (alpha, c) in &self.terms {
            let mut term = Scalar::from_rational(c, ring)?;
            for j in 1..=alpha.largest_part() {
                let e = alpha.get(j);
                if e == 0 {
                    continue;
                }
                let tj = t.get(j - 1).ok_or_else(|| {
                    Error::InvalidArgument(format!("polynomial uses t{j} but only {} values given", t.len()))
                })?;
                term = term * tj.pow(e);
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Canonical text with a chosen variable stem, e.g. `F1^2 - F2`.
    pub fn format_with(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (alpha, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for j in 1..=alpha.largest_part() {
                match alpha.get(j) {
                    0 => {}
                    1 => factors.push(format!("{var}{j}")),
                    e => factors.push(format!("{var}{j}^{e}")),
                }
            }
            let coef = if mag.is_integer() {
                mag.to_integer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            if factors.is_empty() {
                out.push_str(&coef);
            } else {
                if !mag.is_one() {
                    out.push_str(&coef);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for IsobaricPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("t"))
    }
}

/// `P_{ω,k,n}`; `P_{ω,k,0} = 1`.
pub fn wip_poly(omega: &WeightVector, k: usize, n: usize) -> Result<IsobaricPoly> {
    let mut out = IsobaricPoly::zero(k, n);
    for alpha in enumerate_partitions(n, k) {
        let c = BigRational::from_integer(multinomial(&alpha)) * weight_factor(&alpha, omega)?;
        if !c.is_zero() {
            out.insert(alpha, c);
        }
    }
    Ok(out)
}

/// The generalized Fibonacci polynomial `F_{k,n}`.
pub fn gfp_poly(k: usize, n: usize) -> IsobaricPoly {
    let p = wip_poly(&WeightVector::gfp(), k, n).expect("gfp weights are total");
    debug_assert!(p.is_integral());
    p
}

/// The generalized Lucas polynomial `G_{k,n}`, `n ≥ 1`.
pub fn glp_poly(k: usize, n: usize) -> IsobaricPoly {
    let p = wip_poly(&WeightVector::glp(), k, n).expect("glp weights are total");
    assert!(p.is_integral(), "G_{{{k},{n}}} has a non-integral coefficient");
    p
}

/// Taylor coefficients `0..=horizon` of `1 + (Σ ω_j t_j y^j) / (1 - Σ t_j y^j)`.
pub fn series_from_genfun(omega: &WeightVector, t: &CoreParams, horizon: usize) -> Result<Vec<Scalar>> {
    let params = t.params();
    let ring = t.ring();
    let mut weighted = Vec::with_capacity(params.len());
    for (i, tj) in params.iter().enumerate() {
        weighted.push(Scalar::from_int(omega.weight(i + 1)?, ring) * tj);
    }
    // q = num / (1 - p(y)) solved term by term: q_n = num_n + Σ t_j q_{n-j}.
    let mut q: Vec<Scalar> = Vec::with_capacity(horizon + 1);
    for n in 0..=horizon {
        let mut v = if n >= 1 && n <= weighted.len() {
            weighted[n - 1].clone()
        } else {
            Scalar::zero(ring)
        };
        for j in 1..=n.min(params.len()) {
            v = v + &params[j - 1] * &q[n - j];
        }
        q.push(v);
    }
    q[0] = q[0].clone() + Scalar::one(ring);
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::companion::CoreParams;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn gfp_closed_forms() {
        assert_eq!(gfp_poly(3, 1).to_string(), "t1");
        assert_eq!(gfp_poly(3, 3).to_string(), "t1^3 + 2*t1*t2 + t3");
        assert_eq!(gfp_poly(4, 4).to_string(), "t1^4 + 3*t1^2*t2 + t2^2 + 2*t1*t3 + t4");
        assert_eq!(
            gfp_poly(5, 5).to_string(),
            "t1^5 + 4*t1^3*t2 + 3*t1*t2^2 + 3*t1^2*t3 + 2*t2*t3 + 2*t1*t4 + t5"
        );
        assert_eq!(gfp_poly(2, 0).to_string(), "1");
        assert_eq!(gfp_poly(2, 3).to_string(), "t1^3 + 2*t1*t2");
    }

    #[test]
    fn glp_values() {
        assert_eq!(glp_poly(2, 2).to_string(), "t1^2 + 2*t2");
        assert_eq!(glp_poly(2, 1).to_string(), "t1");
        let lucas: Vec<Scalar> = (1..=4).map(|n| glp_poly(2, n).eval(&ints(&[1, 1])).unwrap()).collect();
        assert_eq!(lucas, ints(&[1, 3, 4, 7]));
    }

    #[test]
    fn wip_special_weights() {
        for n in 0..=6 {
            assert_eq!(wip_poly(&WeightVector::gfp(), 4, n).unwrap(), gfp_poly(4, n));
        }
        for n in 1..=6 {
            assert_eq!(wip_poly(&WeightVector::glp(), 4, n).unwrap(), glp_poly(4, n));
        }
        let w = WeightVector::finite(vec![0.into(), 1.into()]);
        assert_eq!(wip_poly(&w, 2, 2).unwrap().to_string(), "t2");
        assert!(wip_poly(&WeightVector::finite(vec![1.into()]), 2, 2).is_err());
    }

    #[test]
    fn generating_function_examples() {
        let fib = CoreParams::finite(ints(&[1, 1])).unwrap();
        assert_eq!(series_from_genfun(&WeightVector::gfp(), &fib, 5).unwrap(), ints(&[1, 1, 2, 3, 5, 8]));
        assert_eq!(series_from_genfun(&WeightVector::glp(), &fib, 4).unwrap(), ints(&[1, 1, 3, 4, 7]));
        let tau = CoreParams::finite(ints(&[2, -1])).unwrap();
        assert_eq!(series_from_genfun(&WeightVector::gfp(), &tau, 4).unwrap(), ints(&[1, 2, 3, 4, 5]));
    }

    #[test]
    fn gfp_recursion_symbolic() {
        for k in 1..=4 {
            for n in 1..=10 {
                let mut rhs = IsobaricPoly::zero(k, n);
                for j in 1..=k.min(n) {
                    rhs = rhs.add(&IsobaricPoly::var(k, j).mul(&gfp_poly(k, n - j))).unwrap();
                }
                assert_eq!(gfp_poly(k, n), rhs, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn weights_with_tails() {
        let g = WeightVector::glp();
        assert_eq!(g.weight(5).unwrap(), 5.into());
        let h = WeightVector::hook(3);
        assert_eq!(h.weight(2).unwrap(), 0.into());
        assert_eq!(h.weight(3).unwrap(), 1.into());
        assert_eq!(h.weight(9).unwrap(), 1.into());
        assert!(WeightVector::new(vec![], Tail::None).is_err());
    }

    #[test]
    fn substitution_preserves_degree() {
        let f2 = gfp_poly(2, 2);
        let subs = vec![IsobaricPoly::var(2, 1), IsobaricPoly::var(2, 2).neg()];
        assert_eq!(f2.substitute(&subs).unwrap().to_string(), "t1^2 - t2");
        assert!(f2.substitute(&[IsobaricPoly::var(2, 2)]).is_err());
    }
}
