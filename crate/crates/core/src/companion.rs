//! Core polynomials, companion matrices and the Schur-hook orbit.
//!
//! For `t = (t_1, …, t_k)` the companion matrix is
//!
//! ```text
//!     | 0    1        …  0  |
//! A = | …    …        …  1  |
//!     | t_k  t_{k-1}  …  t_1 |
//! ```
//!
//! The bottom row of `A^n` is `((-1)^{k-1} S_{(n,1^{k-1})}, …, -S_{(n,1)}, S_{(n)})`;
//! column `j` counted from the right carries `(-1)^j S_{(n,1^j)}` and the
//! rightmost column is the Fibonacci-type sequence `F_n`. Stacking these rows
//! for all `n ∈ ℤ` gives the orbit, every `k` consecutive rows of which form
//! a power of `A`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{common_ring, RingKind, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreKind {
    /// Exactly `k` parameters with `t_k ≠ 0`; later ones are zero.
    Finite,
    /// The first parameters of a possibly infinite list.
    Truncated,
}

/// Parameters `(t_1, …, t_k)` of the core `X^k - t_1 X^{k-1} - … - t_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreParams {
    params: Vec<Scalar>,
    kind: CoreKind,
    ring: RingKind,
}

impl CoreParams {
    pub fn finite(params: Vec<Scalar>) -> Result<Self> {
        let ring = Self::check(&params)?;
        if params.last().unwrap().is_zero() {
            return Err(Error::ZeroLeadingParam);
        }
        Ok(CoreParams {
            params,
            kind: CoreKind::Finite,
            ring,
        })
    }

    /// Drops trailing zeros and declares the rest finite.
    pub fn finite_trimmed(mut params: Vec<Scalar>) -> Result<Self> {
        while params.len() > 1 && params.last().is_some_and(Scalar::is_zero) {
            params.pop();
        }
        Self::finite(params)
    }

    pub fn truncated(params: Vec<Scalar>) -> Result<Self> {
        let ring = Self::check(&params)?;
        Ok(CoreParams {
            params,
            kind: CoreKind::Truncated,
            ring,
        })
    }

    fn check(params: &[Scalar]) -> Result<RingKind> {
        if params.is_empty() {
            return Err(Error::EmptyParams);
        }
        common_ring(params)
    }

    pub fn params(&self) -> &[Scalar] {
        &self.params
    }

    pub fn kind(&self) -> CoreKind {
        self.kind
    }

    pub fn is_finite(&self) -> bool {
        self.kind == CoreKind::Finite
    }

    /// Number of stored parameters; the degree for finite cores.
    pub fn k(&self) -> usize {
        self.params.len()
    }

    pub fn ring(&self) -> RingKind {
        self.ring
    }

    /// `t_j` (1-based). Zero past the end of a finite core, `None` past the
    /// known part of a truncated one.
    pub fn get(&self, j: usize) -> Option<Scalar> {
        assert!(j >= 1);
        match self.params.get(j - 1) {
            Some(v) => Some(v.clone()),
            None if self.is_finite() => Some(Scalar::zero(self.ring)),
            None => None,
        }
    }

    pub fn promote(&self, ring: RingKind) -> Result<CoreParams> {
        let params = self.params.iter().map(|x| x.promote(ring)).collect::<Result<Vec<_>>>()?;
        Ok(CoreParams {
            params,
            kind: self.kind,
            ring,
        })
    }

    /// Specializes a symbolic core at a numeric prime.
    pub fn eval_at_p(&self, p: u64) -> CoreParams {
        let pv = p.into();
        let params: Vec<Scalar> = self.params.iter().map(|x| x.eval_at_p(&pv)).collect();
        let ring = params[0].ring();
        CoreParams {
            params,
            kind: self.kind,
            ring,
        }
    }

    /// Coefficients of the core polynomial, leading first: `[1, -t_1, …, -t_k]`.
    pub fn core_coefficients(&self) -> Vec<Scalar> {
        std::iter::once(Scalar::one(self.ring))
            .chain(self.params.iter().map(|t| -t))
            .collect()
    }
}

impl fmt::Display for CoreParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.params.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))?;
        if self.kind == CoreKind::Truncated {
            write!(f, "…")?;
        }
        Ok(())
    }
}

/// `F_0, …, F_horizon` from `F_0 = 1`, `F_n = Σ_j t_j F_{n-j}`.
pub fn gfp_values(t: &CoreParams, horizon: usize) -> Result<Vec<Scalar>> {
    if !t.is_finite() && t.k() < horizon {
        return Err(Error::InsufficientHorizon {
            needed: horizon,
            have: t.k(),
        });
    }
    let params = t.params();
    let mut f: Vec<Scalar> = Vec::with_capacity(horizon + 1);
    f.push(Scalar::one(t.ring()));
    for n in 1..=horizon {
        let mut v = Scalar::zero(t.ring());
        for j in 1..=n.min(params.len()) {
            v = v + &params[j - 1] * &f[n - j];
        }
        f.push(v);
    }
    Ok(f)
}

/// Dense square matrix over one scalar ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix must be square".into()));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        common_ring(&data)?;
        Ok(Matrix { n, data })
    }

    pub fn identity(n: usize, ring: RingKind) -> Self {
        let mut data = vec![Scalar::zero(ring); n * n];
        for i in 0..n {
            data[i * n + i] = Scalar::one(ring);
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn ring(&self) -> RingKind {
        self.data[0].ring()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let ring = self.ring();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::zero(ring);
                for l in 0..n {
                    let a = self.get(i, l);
                    if !a.is_zero() {
                        acc = acc + a * other.get(l, j);
                    }
                }
                data.push(acc);
            }
        }
        Matrix { n, data }
    }

    /// Binary exponentiation, non-negative exponents.
    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.n, self.ring());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).fold(Scalar::zero(self.ring()), |acc, i| acc + self.get(i, i))
    }

    pub fn promote(&self, ring: RingKind) -> Result<Matrix> {
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().map(|x| x.promote(ring)).collect::<Result<_>>()?,
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// The companion matrix of a finite core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionMatrix {
    core: CoreParams,
    matrix: Matrix,
}

pub fn companion_matrix(t: &CoreParams) -> Result<CompanionMatrix> {
    if !t.is_finite() {
        return Err(Error::TruncatedCore);
    }
    let k = t.k();
    let ring = t.ring();
    let mut rows = vec![vec![Scalar::zero(ring); k]; k];
    for (i, row) in rows.iter_mut().enumerate().take(k - 1) {
        row[i + 1] = Scalar::one(ring);
    }
    for c in 0..k {
        rows[k - 1][c] = t.params()[k - 1 - c].clone();
    }
    Ok(CompanionMatrix {
        core: t.clone(),
        matrix: Matrix::from_rows(rows)?,
    })
}

impl CompanionMatrix {
    pub fn core(&self) -> &CoreParams {
        &self.core
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `A^{-1}`, over the fraction-closed variant of the scalar ring.
    ///
    /// Only `t_k` is ever inverted: the inverse has ones on the subdiagonal
    /// and first row `(-t_{k-1}/t_k, …, -t_1/t_k, 1/t_k)`.
    pub fn inverse(&self) -> Result<Matrix> {
        let k = self.core.k();
        let tk = &self.core.params()[k - 1];
        let inv = tk.try_inverse().map_err(|_| Error::SingularMatrix(tk.to_string()))?;
        let ring = inv.ring();
        let t = self.core.promote(ring)?;
        let mut rows = vec![vec![Scalar::zero(ring); k]; k];
        rows[0][k - 1] = inv.clone();
        for c in 1..k {
            rows[0][c - 1] = -(&t.params()[k - c - 1] * &inv);
        }
        for (i, row) in rows.iter_mut().enumerate().skip(1) {
            row[i - 1] = Scalar::one(ring);
        }
        Matrix::from_rows(rows)
    }
}

/// `A^n` for any integer `n`; negative powers need `t_k` invertible.
pub fn matrix_power(a: &CompanionMatrix, n: i64) -> Result<Matrix> {
    if n >= 0 {
        Ok(a.matrix.pow(n as u64))
    } else {
        Ok(a.inverse()?.pow(n.unsigned_abs()))
    }
}

fn check_leg(t: &CoreParams, j: usize) -> Result<()> {
    if j >= t.k() {
        return Err(Error::InvalidArgument(format!("leg {j} out of range for k = {}", t.k())));
    }
    Ok(())
}

/// `S_{(n,1^j)}` read off the bottom row of `A^n`.
pub fn hook(t: &CoreParams, n: i64, j: usize) -> Result<Scalar> {
    check_leg(t, j)?;
    let a = companion_matrix(t)?;
    let m = matrix_power(&a, n)?;
    let k = t.k();
    let entry = m.get(k - 1, k - 1 - j).clone();
    Ok(if j % 2 == 1 { -entry } else { entry })
}

/// Orbit rows `n ∈ [lo, hi]`, produced by stepping a single row vector
/// through `A` and `A^{-1}` instead of powering the matrix.
#[derive(Debug, Clone)]
pub struct HookTable {
    k: usize,
    lo: i64,
    rows: Vec<Vec<Scalar>>,
}

impl HookTable {
    pub fn new(t: &CoreParams, lo: i64, hi: i64) -> Result<Self> {
        assert!(lo <= 0 && hi >= 0, "range must contain 0");
        let a = companion_matrix(t)?;
        let k = t.k();
        let inverse = if lo < 0 { Some(a.inverse()?) } else { None };
        let ring = inverse.as_ref().map_or(t.ring(), Matrix::ring);
        let t = t.promote(ring)?;

        let mut start = vec![Scalar::zero(ring); k];
        start[k - 1] = Scalar::one(ring);

        let mut forward = vec![start.clone()];
        for _ in 0..hi {
            let r = forward.last().unwrap();
            let next: Vec<Scalar> = (0..k)
                .map(|c| {
                    let shifted = if c >= 1 { r[c - 1].clone() } else { Scalar::zero(ring) };
                    shifted + &r[k - 1] * &t.params()[k - 1 - c]
                })
                .collect();
            forward.push(next);
        }

        let mut backward = Vec::new();
        if let Some(inv) = &inverse {
            let mut r = start;
            for _ in 0..(-lo) {
                let next: Vec<Scalar> = (0..k)
                    .map(|c| {
                        let up = if c + 1 < k { r[c + 1].clone() } else { Scalar::zero(ring) };
                        &r[0] * inv.get(0, c) + up
                    })
                    .collect();
                backward.push(next.clone());
                r = next;
            }
        }
        backward.reverse();
        backward.extend(forward);
        Ok(HookTable { k, lo, rows: backward })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.rows.len() as i64 - 1
    }

    /// Bottom row of `A^n`. Panics outside `lo..=hi`.
    pub fn row(&self, n: i64) -> &[Scalar] {
        &self.rows[(n - self.lo) as usize]
    }

    /// `S_{(n,1^j)}`.
    pub fn get(&self, n: i64, j: usize) -> Scalar {
        let entry = self.row(n)[self.k - 1 - j].clone();
        if j % 2 == 1 {
            -entry
        } else {
            entry
        }
    }

    /// The raw orbit column `j` (counted from the right), signs included.
    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.rows.iter().map(|r| r[self.k - 1 - j].clone()).collect()
    }
}

/// Determinant by expansion over column subsets; uses no division, so it
/// works over every supported ring.
pub fn determinant(rows: &[Vec<Scalar>], ring: RingKind) -> Scalar {
    let n = rows.len();
    assert!(n <= 20, "determinant size {n} too large for subset expansion");
    if n == 0 {
        return Scalar::one(ring);
    }
    let mut dp: Vec<Option<Scalar>> = vec![None; 1 << n];
    dp[0] = Some(Scalar::one(ring));
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].take() else { continue };
        let i = mask.count_ones() as usize;
        if i == n {
            dp[mask] = Some(cur);
            continue;
        }
        for c in 0..n {
            if mask & (1 << c) != 0 || rows[i][c].is_zero() {
                continue;
            }
            let above = (mask >> (c + 1)).count_ones();
            let term = &cur * &rows[i][c];
            let term = if above % 2 == 1 { -term } else { term };
            let slot = &mut dp[mask | (1 << c)];
            *slot = Some(match slot.take() {
                Some(v) => v + term,
                None => term,
            });
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(|| Scalar::zero(ring))
}

/// Jacobi–Trudi: `det(F_{λ_i - i + c})` with `F_m = 0` for `m < 0`.
pub fn schur_general(t: &CoreParams, lambda: &[usize]) -> Result<Scalar> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument("partition must be weakly decreasing".into()));
    }
    let lambda: Vec<usize> = lambda.iter().copied().filter(|&x| x > 0).collect();
    let len = lambda.len();
    let top = lambda.first().map_or(0, |&l| l + len);
    let f = gfp_values(t, top)?;
    let ring = t.ring();
    let rows: Vec<Vec<Scalar>> = (0..len)
        .map(|i| {
            (0..len)
                .map(|c| {
                    let idx = lambda[i] as i64 - i as i64 + c as i64;
                    if idx < 0 {
                        Scalar::zero(ring)
                    } else {
                        f[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant(&rows, ring))
}

/// `S_{(n,1^j)}` for `n ≥ 1` from the Jacobi–Trudi determinant.
pub fn hook_jt(t: &CoreParams, n: usize, j: usize) -> Result<Scalar> {
    if n == 0 {
        return Err(Error::InvalidArgument("hook arm must be at least 1".into()));
    }
    let mut lambda = vec![n];
    lambda.extend(std::iter::repeat_n(1, j));
    schur_general(t, &lambda)
}

/// `trace(A^n)`, the generalized Lucas value `G_n(t)`.
pub fn glp_trace(t: &CoreParams, n: i64) -> Result<Scalar> {
    let a = companion_matrix(t)?;
    Ok(matrix_power(&a, n)?.trace())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelativeSign {
    Same,
    Opposite,
    /// Both sides vanish.
    Zero,
    /// Magnitudes differ, no sign relation.
    Unrelated,
}

/// Outcome of comparing a negatively indexed hook with its
/// positive-index expression `S_{((j+1)^s, j^{k-s-1})} / t_k^{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeHookReport {
    pub k: usize,
    pub shift: usize,
    pub column: usize,
    /// `S_{(-k-j,1^s)}`.
    pub hook: Scalar,
    /// `S_{((j+1)^s,j^{k-s-1})} / t_k^{j+1}`.
    pub quotient: Scalar,
    pub magnitude_match: bool,
    pub sign: RelativeSign,
    /// Whether `S_{(-k-j,1^s)} = -quotient`, the sign printed with the law.
    pub printed_sign_holds: bool,
}

pub fn check_negative_hook_magnitude(t: &CoreParams, shift: usize, column: usize) -> Result<NegativeHookReport> {
    let k = t.k();
    check_leg(t, column)?;
    let n = -(k as i64) - shift as i64;
    let lhs = hook(t, n, column)?;
    let mut lambda = vec![shift + 1; column];
    lambda.extend(std::iter::repeat_n(shift, k - column - 1));
    let numer = schur_general(t, &lambda)?;
    let denom = t.params()[k - 1].pow(shift as u32 + 1);
    let ring = lhs.ring();
    let quotient = numer.promote(ring)?.div_exact(&denom.promote(ring)?)?;
    let neg = -&quotient;
    let sign = if lhs.is_zero() && quotient.is_zero() {
        RelativeSign::Zero
    } else if lhs == quotient {
        RelativeSign::Same
    } else if lhs == neg {
        RelativeSign::Opposite
    } else {
        RelativeSign::Unrelated
    };
    Ok(NegativeHookReport {
        k,
        shift,
        column,
        printed_sign_holds: lhs == neg,
        magnitude_match: sign != RelativeSign::Unrelated,
        hook: lhs,
        quotient,
        sign,
    })
}
