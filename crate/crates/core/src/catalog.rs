//! Classical multiplicative functions as prime-parameterized cores.

use crate::companion::CoreParams;
use crate::error::{Error, Result};
use crate::localmf::{LocalMF, MFFamily, Structure, Valence};
use crate::ring::{PolyP, Scalar};

pub const NAMES: [&str; 7] = ["zeta", "zeta_k", "tau", "sigma_k", "phi", "mu", "liouville"];

/// The prime a core is built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prime {
    /// Coefficients are polynomials in the symbol `p`.
    Symbolic,
    Numeric(u64),
}

impl Prime {
    fn power(self, k: u32) -> Scalar {
        match self {
            Prime::Symbolic => Scalar::p().pow(k),
            Prime::Numeric(p) => Scalar::Int(num_bigint::BigInt::from(p).pow(k)),
        }
    }

    fn constant(self, c: i64) -> Scalar {
        match self {
            Prime::Symbolic => Scalar::PolyP(PolyP::constant(c.into())),
            Prime::Numeric(_) => Scalar::int(c),
        }
    }
}

fn check_name(name: &str) -> Result<()> {
    if NAMES.contains(&name) {
        Ok(())
    } else {
        Err(Error::UnknownFunction(name.into()))
    }
}

/// Core of a catalog function at `p`. Power-series cores (`phi`, `mu`) are
/// truncated to `horizon` parameters. `k` is the exponent of `zeta_k` and
/// `sigma_k` and defaults to 1.
pub fn catalog(name: &str, k: Option<u32>, p: Prime, horizon: usize) -> Result<CoreParams> {
    check_name(name)?;
    let k = k.unwrap_or(1);
    let c = |v| p.constant(v);
    let len = horizon.max(1);
    match name {
        "zeta" => CoreParams::finite(vec![c(1)]),
        "zeta_k" => CoreParams::finite(vec![p.power(k)]),
        "tau" => CoreParams::finite(vec![c(2), c(-1)]),
        "sigma_k" => CoreParams::finite(vec![p.power(k) + c(1), -p.power(k)]),
        "phi" => CoreParams::truncated(vec![p.power(1) - c(1); len]),
        "mu" => CoreParams::truncated(vec![c(-1); len]),
        "liouville" => CoreParams::finite(vec![c(-1)]),
        _ => unreachable!(),
    }
}

/// Local sequence of a catalog function with its structure and valence.
pub fn catalog_mf(name: &str, k: Option<u32>, p: Prime, horizon: usize) -> Result<LocalMF> {
    let core = catalog(name, k, p, horizon)?;
    let (structure, valence) = match name {
        "zeta" | "zeta_k" | "liouville" => (Structure::FiniteParams, Valence(1, 0)),
        "tau" | "sigma_k" => (Structure::FiniteParams, Valence(2, 0)),
        "phi" => (Structure::BothInfinite, Valence(1, 1)),
        _ => (Structure::FiniteValues, Valence(0, 1)),
    };
    let mut mf = LocalMF::from_params(&core, horizon)?
        .with_structure(structure)
        .with_valence(valence);
    if let Prime::Numeric(q) = p {
        mf = mf.with_prime(q);
    }
    Ok(mf)
}

/// The global function, specializing the core at every prime.
pub fn family(name: &str, k: Option<u32>) -> Result<MFFamily> {
    check_name(name)?;
    let owned = name.to_string();
    let label = match k {
        Some(k) => format!("{name}[{k}]"),
        None => name.to_string(),
    };
    Ok(MFFamily::new(label, move |p, horizon| {
        catalog(&owned, k, Prime::Numeric(p), horizon)
    }))
}
