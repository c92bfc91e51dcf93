//! Rational convolution powers `f^{∗q}`: the coefficients of `B(y)^q` where
//! `B(y) = Σ F_n y^n`, via `n H_n = Σ_{j=1}^{n} ((q+1) j - n) F_j H_{n-j}`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::identities::CheckReport;
use crate::localmf::{convolve, LocalMF};
use crate::ring::{RingKind, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvPowerSeq {
    pub q: BigRational,
    /// `H_0 = 1, …, H_N` over the fraction ring of the input.
    pub values: Vec<Scalar>,
}

impl ConvPowerSeq {
    pub fn to_local(&self) -> Result<LocalMF> {
        LocalMF::from_values(self.values.clone())
    }
}

pub fn conv_power(f: &LocalMF, q: &BigRational, horizon: usize) -> Result<ConvPowerSeq> {
    if !f.value(0).is_one() {
        return Err(Error::NotInvertibleSequence(f.value(0).to_string()));
    }
    if horizon > f.horizon() {
        return Err(Error::InsufficientHorizon {
            needed: horizon,
            have: f.horizon(),
        });
    }
    let ring = f.ring().field();
    if matches!(ring, RingKind::Mod(_)) {
        return Err(Error::InvalidArgument("rational powers need a ring containing Q".into()));
    }
    let fv: Vec<Scalar> = f.values()[..=horizon]
        .iter()
        .map(|x| x.promote(ring))
        .collect::<Result<_>>()?;
    let q1 = q + BigRational::from_integer(1.into());
    let mut h = vec![Scalar::one(ring)];
    for n in 1..=horizon {
        let nn = BigRational::from_integer(BigInt::from(n));
        let mut acc = Scalar::zero(ring);
        for j in 1..=n {
            let c = &q1 * BigRational::from_integer(BigInt::from(j)) - &nn;
            acc = acc + Scalar::from_rational(&c, ring)? * &fv[j] * &h[n - j];
        }
        h.push(acc.div_exact(&Scalar::from_rational(&nn, ring)?)?);
    }
    Ok(ConvPowerSeq {
        q: q.clone(),
        values: h,
    })
}

/// `(f^{∗1/m})^{∗m} = f` by repeated convolution.
pub fn check_root_roundtrip(f: &LocalMF, m: u32, horizon: usize) -> Result<CheckReport> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("root order must be at least 2, got {m}")));
    }
    let q = BigRational::new(1.into(), m.into());
    let root = conv_power(f, &q, horizon)?.to_local()?;
    let mut acc = root.clone();
    for _ in 1..m {
        acc = convolve(&acc, &root)?;
    }
    let target = f.truncate(horizon).promote(root.ring())?;
    let mut rep = CheckReport::new("root-roundtrip", format!("m={m} N={horizon}"));
    for n in 0..=horizon {
        rep.record(|| format!("n={n}"), acc.value(n), target.value(n));
    }
    Ok(rep)
}
