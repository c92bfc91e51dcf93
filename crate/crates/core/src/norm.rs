//! The Kesava Menon norm `N(α)(n) = Σ_{d | n²} α(n²/d) λ(d) α(d)`, locally
//! `N_n = Σ_{j=0}^{2n} (-1)^j F_{2n-j} F_j`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::CheckReport;
use crate::localmf::{convolve, degree, inverse, recover_params, Degree, LocalMF, Structure};
use crate::ring::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormResult {
    /// `N_0 = 1, N_1, …, N_M`.
    pub values: Vec<Scalar>,
    /// `m_1..m_M` recovered from the values.
    pub params: Vec<Scalar>,
    /// Highest index of the source sequence that was read.
    pub consumed: usize,
}

impl NormResult {
    pub fn to_local(&self, structure: Structure) -> Result<LocalMF> {
        Ok(LocalMF::from_values(self.values.clone())?.with_structure(structure))
    }
}

fn need(f: &LocalMF, m: usize) -> Result<()> {
    if f.horizon() < 2 * m {
        return Err(Error::InsufficientHorizon {
            needed: 2 * m,
            have: f.horizon(),
        });
    }
    Ok(())
}

pub fn km_norm(f: &LocalMF, m: usize) -> Result<NormResult> {
    need(f, m)?;
    let v = f.values();
    let values: Vec<Scalar> = (0..=m)
        .map(|n| {
            (0..=2 * n).fold(Scalar::zero(f.ring()), |acc, j| {
                let term = &v[2 * n - j] * &v[j];
                if j % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    let params = if m == 0 {
        Vec::new()
    } else {
        recover_params(&values)?.params().to_vec()
    };
    Ok(NormResult {
        values,
        params,
        consumed: 2 * m,
    })
}

/// `N(f ∗ g) = N(f) ∗ N(g)` up to `m`.
pub fn check_norm_mult(f: &LocalMF, g: &LocalMF, m: usize) -> Result<CheckReport> {
    need(f, m)?;
    need(g, m)?;
    let lhs = km_norm(&convolve(f, g)?, m)?;
    let nf = km_norm(f, m)?.to_local(Structure::BothInfinite)?;
    let ng = km_norm(g, m)?.to_local(Structure::BothInfinite)?;
    let rhs = convolve(&nf, &ng)?;
    let mut rep = CheckReport::new("norm-multiplicative", format!("M={m}"));
    for n in 0..=m {
        rep.record(|| format!("n={n}"), &lhs.values[n], rhs.value(n));
    }
    Ok(rep)
}

/// The norm of a finite-degree function has the same degree. The norm is
/// taken far enough (`M ≥ k + 2`) for its vanishing parameters to show.
pub fn check_norm_degree(f: &LocalMF) -> Result<CheckReport> {
    let Degree::Finite(k) = degree(f) else {
        return Err(Error::InvalidArgument("degree is not finite within the horizon".into()));
    };
    let m = f.horizon() / 2;
    if m < k + 2 {
        return Err(Error::InsufficientHorizon {
            needed: 2 * (k + 2),
            have: f.horizon(),
        });
    }
    let norm = km_norm(f, m)?;
    let got = norm.to_local(Structure::FiniteParams)?;
    let mut rep = CheckReport::new("norm-degree", format!("k={k} M={m}"));
    rep.record(|| format!("degree of N(f), M={m}"), &degree(&got), &Degree::Finite(k));
    Ok(rep)
}

/// `N_n` against the inverse parameters `s = -F`:
/// `N_n = -2 s_{2n} + 2 Σ_{j=1}^{n-1} (-1)^j s_{2n-j} s_j + (-1)^n s_n²`.
pub fn check_norm_inverse_params(f: &LocalMF, m: usize) -> Result<CheckReport> {
    need(f, m)?;
    let g = inverse(f)?;
    let s = |j: usize| g.params()[j - 1].clone();
    let norm = km_norm(f, m)?;
    let ring = f.ring();
    let two = Scalar::from_i64(2, ring);
    let mut rep = CheckReport::new("norm-inverse-params", format!("M={m}"));
    let mut printed_fails = Vec::new();
    for n in 1..=m {
        let mut mid = Scalar::zero(ring);
        for j in 1..n {
            let term = s(2 * n - j) * s(j);
            mid = if j % 2 == 0 { mid + term } else { mid - term };
        }
        let sq = s(n) * s(n);
        let sq = if n % 2 == 0 { sq } else { -sq };
        let tail = &two * &mid + &sq;
        let rhs = -(&two * &s(2 * n)) + &tail;
        rep.record(|| format!("n={n}"), &norm.values[n], &rhs);
        let printed = -s(2 * n) + &tail;
        if printed != norm.values[n] {
            printed_fails.push(format!("n={n}: {printed} vs {}", norm.values[n]));
        }
    }
    if !printed_fails.is_empty() {
        rep.note(format!(
            "leading term -s_2n (instead of -2 s_2n) fails at {}",
            printed_fails.join("; ")
        ));
    }
    Ok(rep)
}
