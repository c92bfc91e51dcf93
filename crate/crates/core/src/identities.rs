//! Executable checks for identities among local sequences. Each check
//! evaluates both sides independently and keeps the first counterexample.

use std::fmt::Display;

use serde::Serialize;

use num_rational::BigRational;

use crate::companion::{check_negative_hook_magnitude, glp_trace, hook_jt, CoreParams, HookTable, RelativeSign};
use crate::error::{Error, Result};
use crate::isobaric::{gfp_poly, glp_poly, series_from_genfun, IsobaricPoly, WeightVector};
use crate::localmf::{convolve, degree, inverse, recover_params, Degree, LocalMF};
use crate::partitions::binomial;
use crate::ring::{RingKind, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub sweep: String,
    pub pass: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(identity: impl Into<String>, sweep: impl Into<String>) -> Self {
        CheckReport {
            identity: identity.into(),
            sweep: sweep.into(),
            pass: true,
            cases: 0,
            witness: None,
            notes: Vec::new(),
        }
    }

    /// Counts one case and keeps it as the witness if it is the first failure.
    pub fn record<L: PartialEq + Display>(&mut self, inputs: impl FnOnce() -> String, lhs: &L, rhs: &L) -> bool {
        self.cases += 1;
        let ok = lhs == rhs;
        if !ok && self.witness.is_none() {
            self.pass = false;
            self.witness = Some(Witness {
                inputs: inputs(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        ok
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Folds a sub-report into this one, keeping the earliest witness.
    pub fn absorb(&mut self, other: CheckReport) {
        self.cases += other.cases;
        if !other.pass && self.witness.is_none() {
            self.pass = false;
            self.witness = other.witness;
        }
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
    }
}

/// `F_0..F_horizon` for the degree-2 recursion, allowing `t_2 = 0`.
fn deg2_values(t1: &Scalar, t2: &Scalar, horizon: usize) -> Result<Vec<Scalar>> {
    let ring = t1.ring().join(t2.ring()).ok_or(Error::DomainMismatch(t1.ring(), t2.ring()))?;
    let t1 = t1.promote(ring)?;
    let t2 = t2.promote(ring)?;
    let mut f = vec![Scalar::one(ring), t1.clone()];
    for n in 2..=horizon {
        f.push(&t1 * &f[n - 1] + &t2 * &f[n - 2]);
    }
    f.truncate(horizon + 1);
    Ok(f)
}

fn check_rs(r: usize, s: usize) -> Result<()> {
    if r == 0 || r > s {
        return Err(Error::InvalidArgument(format!("need 1 <= r <= s, got r = {r}, s = {s}")));
    }
    Ok(())
}

/// `F_{r+s} = F_r F_s + t_2 F_{r-1} F_{s-1}` for a degree-2 core.
pub fn check_br_product(t1: &Scalar, t2: &Scalar, r: usize, s: usize) -> Result<CheckReport> {
    check_rs(r, s)?;
    let f = deg2_values(t1, t2, r + s)?;
    let mut rep = CheckReport::new("busche-ramanujan-product", format!("t=({t1},{t2}) r={r} s={s}"));
    let rhs = &f[r] * &f[s] + t2.promote(f[0].ring())? * &f[r - 1] * &f[s - 1];
    rep.record(|| format!("t=({t1},{t2}) r={r} s={s}"), &f[r + s], &rhs);
    Ok(rep)
}

/// `F_r F_s = Σ_{j=0}^{r} (-t_2)^j F_{r+s-2j}`, the vanishing
/// tail `t_2 F_{r-1} F_{s-1} + Σ_{j=1}^{r} (-t_2)^j F_{r+s-2j} = 0`, and the
/// relation between the residuals of both product forms and that tail.
pub fn check_br_inverse(t1: &Scalar, t2: &Scalar, r: usize, s: usize) -> Result<CheckReport> {
    check_rs(r, s)?;
    let f = deg2_values(t1, t2, r + s)?;
    let ring = f[0].ring();
    let t2 = t2.promote(ring)?;
    let m = -&t2;
    let inputs = || format!("t=({t1},{t2}) r={r} s={s}");

    let mut tail = Scalar::zero(ring);
    let mut pw = Scalar::one(ring);
    for j in 1..=r {
        pw = &pw * &m;
        tail = tail + &pw * &f[r + s - 2 * j];
    }
    let prod = &f[r] * &f[s];
    let cross = &t2 * &f[r - 1] * &f[s - 1];
    let sum_inv = &f[r + s] + &tail;
    let vanishing = &cross + &tail;
    let res_prod = &f[r + s] - &prod - &cross;
    let res_inv = &sum_inv - &prod;

    let mut rep = CheckReport::new("busche-ramanujan-inverse", format!("t=({t1},{t2}) r={r} s={s}"));
    rep.record(|| format!("inverse form {}", inputs()), &prod, &sum_inv);
    rep.record(|| format!("vanishing tail {}", inputs()), &vanishing, &Scalar::zero(ring));
    rep.record(|| format!("equivalence {}", inputs()), &(&res_inv - &res_prod), &vanishing);
    Ok(rep)
}

/// Both product forms, the vanishing tail and their equivalence over a grid of
/// integer degree-2 cores.
pub fn sweep_busche_ramanujan(lo: i64, hi: i64, max_sum: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new(
        "busche-ramanujan",
        format!("t1,t2 in [{lo},{hi}], t2 != 0, 1 <= r <= s, r+s <= {max_sum}"),
    );
    for a in lo..=hi {
        for b in (lo..=hi).filter(|&b| b != 0) {
            let (t1, t2) = (Scalar::int(a), Scalar::int(b));
            for r in 1..=max_sum / 2 {
                for s in r..=max_sum - r {
                    rep.absorb(check_br_product(&t1, &t2, r, s)?);
                    rep.absorb(check_br_inverse(&t1, &t2, r, s)?);
                }
            }
        }
    }
    Ok(rep)
}

/// Reports for the degree-2 recursion with `B = -t_2` and for whether
/// `n ↦ F_n^2 - F_{2n}` is completely multiplicative.
pub fn check_mccarthy(f: &LocalMF) -> Result<(CheckReport, CheckReport)> {
    if degree(f) != Degree::Finite(2) {
        return Err(Error::InvalidArgument(format!("expected degree 2, got {}", degree(f))));
    }
    let n_max = f.horizon();
    if n_max < 4 {
        return Err(Error::InsufficientHorizon { needed: 4, have: n_max });
    }
    let v = f.values();
    let b = -&f.params()[1];

    let mut rec = CheckReport::new("mccarthy-recursion", format!("n <= {}", n_max - 1));
    for n in 1..n_max {
        let rhs = &v[1] * &v[n] - &v[n - 1] * &b;
        rec.record(|| format!("n={n}"), &v[n + 1], &rhs);
    }
    rec.note(format!("B = {b}"));

    let half = n_max / 2;
    let mut seq = vec![Scalar::one(f.ring())];
    seq.extend((1..=half).map(|n| &v[n] * &v[n] - &v[2 * n]));
    let u = recover_params(&seq)?;
    let mut deg1 = CheckReport::new("mccarthy-b-degree-one", format!("u_2..u_{half}"));
    let zero = Scalar::zero(f.ring());
    for (i, un) in u.params().iter().enumerate().skip(1) {
        deg1.record(|| format!("u_{}", i + 1), un, &zero);
    }
    deg1.note(format!(
        "u = ({})",
        u.params().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    ));
    Ok((rec, deg1))
}

fn hook_table(t: &CoreParams, hi: usize) -> Result<HookTable> {
    if !t.is_finite() {
        return Err(Error::TruncatedCore);
    }
    HookTable::new(t, 0, hi as i64)
}

/// `F_{r+s} = Σ_{j=0}^{e+1} (-1)^j S_{(r,1^j)} F_{s-j}` with `e = s - r` and
/// `S_{(r,1^j)} = 0` for `j ≥ k`.
pub fn check_hook_expansion(t: &CoreParams, r: usize, s: usize) -> Result<CheckReport> {
    hook_expansion(t, r, s, false)
}

/// The same expansion with the leg running over all `j < k`.
pub fn check_hook_expansion_full_row(t: &CoreParams, r: usize, s: usize) -> Result<CheckReport> {
    hook_expansion(t, r, s, true)
}

fn hook_expansion(t: &CoreParams, r: usize, s: usize, full: bool) -> Result<CheckReport> {
    if r > s {
        return Err(Error::InvalidArgument(format!("need r <= s, got r = {r}, s = {s}")));
    }
    let table = hook_table(t, r + s)?;
    let k = t.k();
    let ring = t.ring();
    let f = |m: i64| if m < 0 { Scalar::zero(ring) } else { table.get(m, 0) };
    let top = if full { k - 1 } else { (s - r + 1).min(k - 1) };
    let mut rhs = Scalar::zero(ring);
    for j in 0..=top {
        let term = table.get(r as i64, j) * f(s as i64 - j as i64);
        rhs = if j % 2 == 0 { rhs + term } else { rhs - term };
    }
    let name = if full { "hook-expansion-full-row" } else { "hook-expansion" };
    let mut rep = CheckReport::new(name, format!("t={t} r={r} s={s}"));
    rep.record(|| format!("t={t} r={r} s={s}"), &f((r + s) as i64), &rhs);
    Ok(rep)
}

/// Orbit hooks against Jacobi–Trudi determinants for `1 ≤ n ≤ n_max`.
pub fn check_hooks_jt(t: &CoreParams, n_max: usize) -> Result<CheckReport> {
    let table = hook_table(t, n_max)?;
    let mut rep = CheckReport::new("hooks-orbit-vs-jacobi-trudi", format!("t={t} n<={n_max}"));
    for n in 1..=n_max {
        for j in 0..t.k() {
            rep.record(|| format!("t={t} n={n} j={j}"), &table.get(n as i64, j), &hook_jt(t, n, j)?);
        }
    }
    Ok(rep)
}

/// Every integer core with `k ≤ k_max`, entries in `[lo, hi]` and `t_k ≠ 0`.
pub fn integer_cores(k_max: usize, lo: i64, hi: i64) -> Vec<CoreParams> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        let width = (hi - lo + 1) as usize;
        let total = width.pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let mut t = Vec::with_capacity(k);
            for _ in 0..k {
                t.push(Scalar::int(lo + (c % width) as i64));
                c /= width;
            }
            if let Ok(core) = CoreParams::finite(t) {
                out.push(core);
            }
        }
    }
    out
}

/// The literal expansion, the full-row expansion and the hook cross-check
/// over an integer grid.
pub fn sweep_hook_expansion(k_max: usize, lo: i64, hi: i64, s_max: usize) -> Result<[CheckReport; 3]> {
    let sweep = format!("k <= {k_max}, t in [{lo},{hi}]^k, t_k != 0, r <= s <= {s_max}");
    let mut literal = CheckReport::new("hook-expansion", sweep.clone());
    let mut full = CheckReport::new("hook-expansion-full-row", sweep.clone());
    let mut hooks = CheckReport::new("hooks-orbit-vs-jacobi-trudi", sweep);
    for t in integer_cores(k_max, lo, hi) {
        hooks.absorb(check_hooks_jt(&t, 2 * s_max)?);
        for s in 0..=s_max {
            for r in 0..=s {
                literal.absorb(check_hook_expansion(&t, r, s)?);
                full.absorb(check_hook_expansion_full_row(&t, r, s)?);
            }
        }
    }
    Ok([literal, full, hooks])
}

/// `F_n(F_1, -F_2, F_3, …) = (-1)^{n+1} t_n` as polynomials in `t`.
pub fn params_from_f(n: usize) -> Result<CheckReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let k = n;
    let subs: Vec<IsobaricPoly> = (1..=k)
        .map(|j| {
            let fj = gfp_poly(k, j);
            if j % 2 == 0 {
                fj.neg()
            } else {
                fj
            }
        })
        .collect();
    let lhs = gfp_poly(k, n).substitute(&subs)?;
    let tn = IsobaricPoly::var(k, n);
    let rhs = if n.is_multiple_of(2) { tn.neg() } else { tn };
    let mut rep = CheckReport::new("params-from-values", format!("n={n}"));
    rep.record(|| format!("n={n}"), &lhs, &rhs);
    Ok(rep)
}

/// `F_n = Σ_j (-1)^j C(n-j, j) F_1^{n-2j} (-t_2)^j` for a degree-2 core.
pub fn check_binomial(t1: &Scalar, t2: &Scalar, n: usize) -> Result<CheckReport> {
    let f = deg2_values(t1, t2, n)?;
    let ring = f[0].ring();
    let f1 = t1.promote(ring)?;
    let m = -t2.promote(ring)?;
    let mut rhs = Scalar::zero(ring);
    for j in 0..=n / 2 {
        let c = Scalar::from_int(binomial((n - j) as u64, j as u64), ring);
        let term = c * f1.pow((n - 2 * j) as u32) * m.pow(j as u32);
        rhs = if j % 2 == 0 { rhs + term } else { rhs - term };
    }
    let mut rep = CheckReport::new("degree-two-binomial", format!("t=({t1},{t2}) n={n}"));
    rep.record(|| format!("t=({t1},{t2}) n={n}"), &f[n], &rhs);
    Ok(rep)
}

fn degree_one(t: &Scalar, horizon: usize) -> Result<LocalMF> {
    LocalMF::from_params(&CoreParams::finite(vec![t.clone()])?, horizon)
}

/// For `α = ζ' ∗ ζ''^{-1}` with degree-1 parameters `t' ≠ t''`:
/// `F_n = t'^n - t'^{n-1} t''`, `t_n = -t''^n + t' t''^{n-1}`,
/// `F_n = t'^{n-1} F_1`, and no parameter vanishes.
pub fn check_totient_formulas(tp: &Scalar, tpp: &Scalar, horizon: usize) -> Result<CheckReport> {
    if tp == tpp {
        return Err(Error::InvalidArgument("t' = t'' gives the identity".into()));
    }
    if tp.is_zero() || tpp.is_zero() {
        return Err(Error::InvalidArgument("degree-1 parameters must be nonzero".into()));
    }
    let a = convolve(&degree_one(tp, horizon)?, &inverse(&degree_one(tpp, horizon)?)?)?;
    let mut rep = CheckReport::new("valence-one-one", format!("t'={tp} t''={tpp} n<={horizon}"));
    for n in 1..=horizon {
        let e = n as u32;
        let fv = tp.pow(e) - tp.pow(e - 1) * tpp;
        let tv = -tpp.pow(e) + tp * &tpp.pow(e - 1);
        rep.record(|| format!("F_{n}"), a.value(n), &fv);
        rep.record(|| format!("t_{n}"), &a.params()[n - 1], &tv);
        rep.record(|| format!("F_{n} via F_1"), a.value(n), &(tp.pow(e - 1) * a.value(1)));
        rep.record(|| format!("t_{n} nonzero"), &a.params()[n - 1].is_zero(), &false);
    }
    Ok(rep)
}

/// Parameters of a product against `t_n = t'_n + t''_n - Σ t'_{n-j} t''_j`.
pub fn check_product_params(f: &LocalMF, g: &LocalMF) -> Result<CheckReport> {
    let h = convolve(f, g)?;
    let (a, b) = (f.params(), g.params());
    let mut rep = CheckReport::new("product-parameters", format!("horizon {}", h.horizon()));
    for n in 1..=h.horizon() {
        let mut rhs = &a[n - 1] + &b[n - 1];
        for j in 1..n {
            rhs = rhs - &a[n - j - 1] * &b[j - 1];
        }
        rep.record(|| format!("n={n}"), &h.params()[n - 1], &rhs);
    }
    Ok(rep)
}

/// The inverse's values are `-t_n` and its parameters are `-F_n`, each
/// computed separately, and `f ∗ f^{-1}` is the identity.
pub fn check_duality(f: &LocalMF) -> Result<CheckReport> {
    let mut rep = CheckReport::new("inverse-duality", format!("horizon {}", f.horizon()));
    let ring = f.ring();
    let n = f.horizon();
    let mut g = vec![Scalar::one(ring)];
    for m in 1..=n {
        let mut v = Scalar::zero(ring);
        for j in 1..=m {
            v = v - f.value(j) * &g[m - j];
        }
        g.push(v);
    }
    let s = recover_params(&g)?;
    for m in 1..=n {
        rep.record(|| format!("inverse value {m}"), &g[m], &-&f.params()[m - 1]);
        rep.record(|| format!("inverse parameter {m}"), &s.params()[m - 1], &-f.value(m));
    }
    let prod = convolve(f, &LocalMF::from_values(g)?)?;
    rep.record(|| "f * f^-1".into(), &prod.is_identity(), &true);
    Ok(rep)
}

fn poly_product(a: &[Scalar], b: &[Scalar], ring: RingKind) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(ring); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// The recovered core of a product of two finite cores is the product of
/// the core polynomials, and degrees add.
pub fn check_core_product(a: &CoreParams, b: &CoreParams) -> Result<CheckReport> {
    let ring = a.ring();
    let horizon = 2 * (a.k() + b.k()) + 2;
    let f = LocalMF::from_params(a, horizon)?;
    let g = LocalMF::from_params(b, horizon)?;
    let h = convolve(&f, &g)?;
    let mut rep = CheckReport::new("core-product", format!("{a} * {b}"));
    let coeffs = poly_product(&a.core_coefficients(), &b.core_coefficients(), ring);
    let expected = CoreParams::finite_trimmed(coeffs[1..].iter().map(|c| -c).collect())?;
    let got = h.core()?;
    rep.record(|| format!("{a} * {b} core"), &got.to_string(), &expected.to_string());
    rep.record(|| format!("{a} * {b} degree"), &got.k(), &(a.k() + b.k()));
    Ok(rep)
}

/// `β ∗ γ` with `β` of degree 1 and `γ` the inverse of a positive function:
/// `F_n = Σ_{j=0}^{n} t'^{n-j} F''_j`.
pub fn check_degree_one_product(tp: &Scalar, gamma_core: &CoreParams, horizon: usize) -> Result<CheckReport> {
    let beta = degree_one(tp, horizon)?;
    let gamma = inverse(&LocalMF::from_params(gamma_core, horizon)?)?;
    let alpha = convolve(&beta, &gamma)?;
    let mut rep = CheckReport::new("degree-one-times-negative", format!("t'={tp} core {gamma_core}"));
    for n in 0..=horizon {
        let mut rhs = Scalar::zero(alpha.ring());
        for j in 0..=n {
            rhs = rhs + tp.pow((n - j) as u32) * gamma.value(j);
        }
        rep.record(|| format!("n={n}"), alpha.value(n), &rhs);
    }
    Ok(rep)
}

/// Closed form, recursion and generating-function series agree for the
/// Fibonacci and Lucas weights, and Lucas values are companion traces.
/// Symbolic for the recursions; numeric on the integer grid otherwise.
pub fn check_wip_consistency(k_max: usize, n_max: usize, lo: i64, hi: i64) -> Result<CheckReport> {
    let mut rep = CheckReport::new(
        "wip-consistency",
        format!("k <= {k_max}, n <= {n_max}, t in [{lo},{hi}]^k"),
    );
    for k in 1..=k_max {
        let f: Vec<IsobaricPoly> = (0..=n_max).map(|n| gfp_poly(k, n)).collect();
        let g: Vec<IsobaricPoly> = (1..=n_max).map(|n| glp_poly(k, n)).collect();
        for n in 1..=n_max {
            let mut f_rec = IsobaricPoly::zero(k, n);
            let mut g_rec = if n <= k {
                IsobaricPoly::var(k, n).scale(&BigRational::from_integer(n.into()))
            } else {
                IsobaricPoly::zero(k, n)
            };
            for j in 1..=k.min(n) {
                let tj = IsobaricPoly::var(k, j);
                f_rec = f_rec.add(&tj.mul(&f[n - j]))?;
                if j < n {
                    g_rec = g_rec.add(&tj.mul(&g[n - j - 1]))?;
                }
            }
            rep.record(|| format!("F recursion k={k} n={n}"), &f[n], &f_rec);
            rep.record(|| format!("G recursion k={k} n={n}"), &g[n - 1], &g_rec);
        }
        for t in integer_cores(k, lo, hi).into_iter().filter(|t| t.k() == k) {
            let fs = series_from_genfun(&WeightVector::gfp(), &t, n_max)?;
            let gs = series_from_genfun(&WeightVector::glp(), &t, n_max)?;
            for n in 1..=n_max {
                rep.record(|| format!("F series t={t} n={n}"), &f[n].eval(t.params())?, &fs[n]);
                let gn = g[n - 1].eval(t.params())?;
                rep.record(|| format!("G series t={t} n={n}"), &gn, &gs[n]);
                rep.record(|| format!("G trace t={t} n={n}"), &gn, &glp_trace(&t, n as i64)?);
            }
        }
    }
    Ok(rep)
}

/// The magnitude law for negatively indexed hooks over an integer grid.
/// Only magnitudes are asserted; the sign pattern is summarized in notes.
pub fn sweep_negative_hooks(ks: &[usize], shift_max: usize, lo: i64, hi: i64) -> Result<CheckReport> {
    let mut rep = CheckReport::new(
        "negative-hook-magnitude",
        format!("k in {ks:?}, shift <= {shift_max}, every column, t in [{lo},{hi}]^k"),
    );
    let (mut same, mut opposite, mut zero) = (0, 0, 0);
    for t in integer_cores(*ks.iter().max().unwrap_or(&0), lo, hi) {
        if !ks.contains(&t.k()) {
            continue;
        }
        for shift in 0..=shift_max {
            for column in 0..t.k() {
                let r = check_negative_hook_magnitude(&t, shift, column)?;
                match r.sign {
                    RelativeSign::Same => same += 1,
                    RelativeSign::Opposite => opposite += 1,
                    RelativeSign::Zero => zero += 1,
                    RelativeSign::Unrelated => {}
                }
                rep.record(
                    || format!("t={t} shift={shift} column={column}: {} vs {}", r.hook, r.quotient),
                    &r.magnitude_match,
                    &true,
                );
            }
        }
    }
    rep.note(format!("signs: {same} same, {opposite} opposite, {zero} both zero"));
    Ok(rep)
}

/// Inverse duality and the product-parameter formula on every integer core
/// with `k ≤ k_max` and entries in `[lo, hi]`, each paired with a partner
/// from the same list.
pub fn sweep_duality(k_max: usize, lo: i64, hi: i64, horizon: usize) -> Result<CheckReport> {
    let cores = integer_cores(k_max, lo, hi);
    let mut rep = CheckReport::new(
        "inverse-duality-and-products",
        format!("{} cores, k <= {k_max}, t in [{lo},{hi}]^k, horizon {horizon}", cores.len()),
    );
    let mfs: Vec<LocalMF> = cores
        .iter()
        .map(|t| LocalMF::from_params(t, horizon))
        .collect::<Result<_>>()?;
    for (i, f) in mfs.iter().enumerate() {
        rep.absorb(check_duality(f)?);
        let g = &mfs[(7 * i + 3) % mfs.len()];
        rep.absorb(check_product_params(f, g)?);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(v: i64) -> Scalar {
        Scalar::int(v)
    }

    fn core(v: &[i64]) -> CoreParams {
        CoreParams::finite(v.iter().map(|&x| i(x)).collect()).unwrap()
    }

    fn mf(v: &[i64], n: usize) -> LocalMF {
        LocalMF::from_params(&core(v), n).unwrap()
    }

    #[test]
    fn br_examples() {
        assert!(check_br_product(&i(1), &i(1), 2, 3).unwrap().pass);
        assert!(check_br_product(&i(2), &i(-1), 1, 1).unwrap().pass);
        let p1: Scalar = "p+1".parse().unwrap();
        let mp: Scalar = "-p".parse().unwrap();
        assert!(check_br_product(&p1, &mp, 1, 2).unwrap().pass);
        assert!(check_br_inverse(&i(1), &i(1), 1, 1).unwrap().pass);
        assert!(check_br_inverse(&i(1), &i(1), 2, 3).unwrap().pass);
        assert!(check_br_inverse(&i(2), &i(-1), 2, 2).unwrap().pass);
        assert!(check_br_inverse(&p1, &mp, 3, 4).unwrap().pass);
        assert!(check_br_product(&i(1), &i(1), 3, 2).is_err());
    }

    #[test]
    fn br_sweep_small() {
        let rep = sweep_busche_ramanujan(-1, 1, 6).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.cases, 6 * 9 * 4);
    }

    #[test]
    fn wrong_identity_is_caught() {
        let mut rep = CheckReport::new("x", "y");
        rep.record(|| "a".into(), &i(1), &i(1));
        rep.record(|| "b".into(), &i(1), &i(2));
        rep.record(|| "c".into(), &i(3), &i(4));
        assert!(!rep.pass);
        assert_eq!(rep.witness.as_ref().unwrap().inputs, "b");
        assert_eq!(rep.cases, 3);
    }

    #[test]
    fn mccarthy() {
        let (rec, b) = check_mccarthy(&mf(&[2, -1], 10)).unwrap();
        assert!(rec.pass);
        assert!(!b.pass);
        assert!(b.notes[0].starts_with("u = (1, 3,"), "{:?}", b.notes);
        let (rec, _) = check_mccarthy(&mf(&[3, -2], 10)).unwrap();
        assert!(rec.pass);
        assert_eq!(rec.notes, vec!["B = 2".to_string()]);
        assert!(check_mccarthy(&mf(&[1], 10)).is_err());
    }

    #[test]
    fn mccarthy_u2_is_minus_t2_f2() {
        for a in -3..=3 {
            for c in [-2, -1, 1, 2] {
                let f = mf(&[a, c], 8);
                let (_, b) = check_mccarthy(&f).unwrap();
                let u2 = -i(c) * f.value(2);
                let text = b.notes[0].clone();
                let second = text.trim_start_matches("u = (").split(", ").nth(1).unwrap().to_string();
                assert_eq!(second, u2.to_string());
            }
        }
    }

    #[test]
    fn hook_expansion_examples() {
        assert!(check_hook_expansion(&core(&[1, 1]), 2, 3).unwrap().pass);
        assert!(check_hook_expansion(&core(&[2, -1]), 1, 1).unwrap().pass);
        for s in 0..6 {
            assert!(check_hook_expansion(&core(&[1, -2, 3]), 0, s).unwrap().pass);
        }
        let rep = check_hook_expansion(&core(&[-2, -2, -2]), 2, 2).unwrap();
        assert!(!rep.pass);
        assert!(check_hook_expansion_full_row(&core(&[-2, -2, -2]), 2, 2).unwrap().pass);
    }

    #[test]
    fn hooks_agree() {
        assert!(check_hooks_jt(&core(&[1, 2, -1]), 8).unwrap().pass);
        assert!(check_hooks_jt(&core(&[2, -1, 0, 3]), 6).unwrap().pass);
    }

    #[test]
    fn params_from_values_examples() {
        for n in 1..=6 {
            assert!(params_from_f(n).unwrap().pass, "n={n}");
        }
    }

    #[test]
    fn binomial_form() {
        assert!(check_binomial(&i(1), &i(1), 5).unwrap().pass);
        assert!(check_binomial(&i(2), &i(-1), 3).unwrap().pass);
        assert!(check_binomial(&i(7), &i(0), 1).unwrap().pass);
        for a in -3..=3 {
            for c in -3..=3 {
                for n in 0..=10 {
                    assert!(check_binomial(&i(a), &i(c), n).unwrap().pass);
                }
            }
        }
    }

    #[test]
    fn totient_family() {
        let rep = check_totient_formulas(&i(3), &i(1), 8).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(check_totient_formulas(&i(2), &i(3), 8).unwrap().pass);
        assert!(check_totient_formulas(&i(5), &i(1), 8).unwrap().pass);
        assert!(check_totient_formulas(&Scalar::p(), &"1*p^0".parse().unwrap(), 6).unwrap().pass);
        assert!(check_totient_formulas(&i(2), &i(2), 8).is_err());
    }

    #[test]
    fn products_and_duality() {
        let f = mf(&[1, 2], 12);
        let g = mf(&[-1, 0, 3], 12);
        assert!(check_product_params(&f, &g).unwrap().pass);
        assert!(check_duality(&f).unwrap().pass);
        assert!(check_core_product(&core(&[2, -1]), &core(&[3, -2])).unwrap().pass);
        assert!(check_degree_one_product(&i(2), &core(&[1, 1]), 10).unwrap().pass);
    }

    #[test]
    fn small_sweeps() {
        assert!(check_wip_consistency(3, 6, -1, 1).unwrap().pass);
        let p1 = sweep_negative_hooks(&[2], 2, -1, 1).unwrap();
        assert!(p1.pass, "{p1:?}");
        assert!(sweep_duality(2, -1, 1, 8).unwrap().pass);
    }
}
