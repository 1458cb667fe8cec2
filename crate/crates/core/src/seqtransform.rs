//! Lower-triangular sequence transforms `y_n = Σ_{k≤n} a_{n,k} x_k`.
//!
//! Every transform is described by a [`TransformSpec`] and realised as a lazy
//! [`TriangularKernel`]. Inverses are closed forms, including the limit cases
//! `a = 0` (and `a = -1` for `L̃_a`), whose extra `x_0` terms are folded into
//! column zero so each inverse stays a plain triangular kernel.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{binomial_int, factorial_gr, pochhammer, sign, GaussianRational};

type Gr = GaussianRational;

/// Finite prefix `x_0, ..., x_N` of a complex sequence. Never empty.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Sequence {
    #[serde(rename = "seq")]
    entries: Vec<Gr>,
}

impl Sequence {
    pub fn new(entries: Vec<Gr>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("sequence must have at least one entry"));
        }
        Ok(Sequence { entries })
    }

    /// `(1, 0, 0, ...)` of the given length.
    pub fn unit(len: usize) -> Self {
        let mut entries = vec![Gr::zero(); len.max(1)];
        entries[0] = Gr::one();
        Sequence { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Gr] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Gr> {
        self.entries
    }

    /// Elementwise map with the index.
    pub fn map_indexed(&self, f: impl Fn(usize, &Gr) -> Gr) -> Sequence {
        Sequence { entries: self.entries.iter().enumerate().map(|(k, x)| f(k, x)).collect() }
    }
}

impl std::ops::Index<usize> for Sequence {
    type Output = Gr;
    fn index(&self, i: usize) -> &Gr {
        &self.entries[i]
    }
}

impl<'de> Deserialize<'de> for Sequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            seq: Vec<Gr>,
        }
        let raw = Raw::deserialize(d)?;
        Sequence::new(raw.seq).map_err(serde::de::Error::custom)
    }
}

type CoeffFn = dyn Fn(usize, usize) -> Gr + Send + Sync;
type RowFn = dyn Fn(usize) -> Vec<Gr> + Send + Sync;

/// Lazy generator of the coefficients `a_{n,k}`, `0 <= k <= n`.
///
/// A kernel may also carry a row generator producing `a_{n,0..=n}` in one
/// pass; it must agree with `coeff` and is what [`apply`] uses.
#[derive(Clone)]
pub struct TriangularKernel {
    coeff: Arc<CoeffFn>,
    row: Option<Arc<RowFn>>,
    description: String,
}

impl fmt::Debug for TriangularKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TriangularKernel").field("description", &self.description).finish()
    }
}

impl TriangularKernel {
    pub fn new(
        description: impl Into<String>,
        coeff: impl Fn(usize, usize) -> Gr + Send + Sync + 'static,
    ) -> Self {
        TriangularKernel { coeff: Arc::new(coeff), row: None, description: description.into() }
    }

    /// Attaches a row generator; `row(n)` must return `n + 1` entries equal
    /// to `coeff(n, 0..=n)`.
    pub fn with_rows(mut self, row: impl Fn(usize) -> Vec<Gr> + Send + Sync + 'static) -> Self {
        self.row = Some(Arc::new(row));
        self
    }

    /// Row `n`: `a_{n,0}, ..., a_{n,n}`.
    pub fn row(&self, n: usize) -> Vec<Gr> {
        match &self.row {
            Some(row) => row(n),
            None => (0..=n).map(|k| self.coeff(n, k)).collect(),
        }
    }

    pub fn identity() -> Self {
        Self::new("identity", |n, k| if n == k { Gr::one() } else { Gr::zero() })
    }

    pub fn coeff(&self, n: usize, k: usize) -> Gr {
        debug_assert!(k <= n, "coefficient ({n}, {k}) above the diagonal");
        (self.coeff)(n, k)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Dense lower-triangular rows `0..len`.
    pub fn materialize(&self, len: usize) -> Vec<Vec<Gr>> {
        (0..len).map(|n| (0..=n).map(|k| self.coeff(n, k)).collect()).collect()
    }

    /// Invertible on the prefix iff every diagonal entry is nonzero.
    pub fn is_invertible_up_to(&self, len: usize) -> bool {
        (0..len).all(|n| !self.coeff(n, n).is_zero())
    }

    /// `(self ∘ inner)(n, k) = Σ_m self(n, m) · inner(m, k)`.
    pub fn compose(&self, inner: &TriangularKernel) -> TriangularKernel {
        let (outer, inner) = (self.clone(), inner.clone());
        let description = format!("({}) ∘ ({})", outer.description, inner.description);
        Self::new(description, move |n, k| (k..=n).map(|m| outer.coeff(n, m) * inner.coeff(m, k)).sum())
    }

    /// `a_{n,k} · c_k`.
    pub fn scale_columns(&self, c: impl Fn(usize) -> Gr + Send + Sync + 'static) -> TriangularKernel {
        let base = self.clone();
        let description = format!("{} · diag(c)", base.description);
        Self::new(description, move |n, k| base.coeff(n, k) * c(k))
    }

    /// `c_n · a_{n,k}`.
    pub fn scale_rows(&self, c: impl Fn(usize) -> Gr + Send + Sync + 'static) -> TriangularKernel {
        let base = self.clone();
        let description = format!("diag(c) · {}", base.description);
        Self::new(description, move |n, k| c(n) * base.coeff(n, k))
    }

    /// The same kernel with the sign of one coefficient flipped. Used to
    /// check that the verification campaigns are not vacuous.
    pub fn with_sign_flip(&self, row: usize, col: usize) -> TriangularKernel {
        let base = self.clone();
        let description = format!("{} [sign flip at ({row},{col})]", base.description);
        let rows = base.clone();
        Self::new(description, move |n, k| {
            let c = base.coeff(n, k);
            if (n, k) == (row, col) {
                -c
            } else {
                c
            }
        })
        .with_rows(move |n| {
            let mut r = rows.row(n);
            if n == row {
                r[col] = -&r[col];
            }
            r
        })
    }
}

/// `y_n = Σ_{k≤n} a_{n,k} x_k` for each index of the prefix.
pub fn apply(kernel: &TriangularKernel, x: &Sequence) -> Sequence {
    let entries = (0..x.len()).map(|n| apply_row(kernel, x, n)).collect();
    Sequence { entries }
}

/// A single entry `y_n` of [`apply`].
pub fn apply_row(kernel: &TriangularKernel, x: &Sequence, n: usize) -> Gr {
    kernel.row(n).iter().zip(&x.entries).map(|(c, v)| c * v).sum()
}

/// `prefactor · Π(numer_i)_k / Π(denom_j)_k` for `k = 0..=n`, built by
/// term ratios with a single division per entry. Denominators must not
/// vanish for `k < n`.
fn ratio_row(n: usize, prefactor: Gr, numer: &[Gr], denom: &[Gr]) -> Vec<Gr> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(prefactor.clone());
    let (mut top, mut bottom) = (prefactor, Gr::one());
    for k in 0..n {
        let shift = int(k);
        if top.is_zero() {
            out.push(Gr::zero());
            continue;
        }
        for u in numer {
            top *= u + &shift;
        }
        for v in denom {
            bottom *= v + &shift;
        }
        out.push(&top / &bottom);
    }
    out
}

/// The transform families, with their parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum TransformSpec {
    #[serde(rename = "identity")]
    Identity,
    /// `x̂_n = Σ (−1)^k C(n,k) x_k`; its own inverse.
    #[serde(rename = "binomial-signed")]
    BinomialSigned,
    /// `y_n = Σ C(n,k) x_k`.
    #[serde(rename = "binomial-unsigned")]
    BinomialUnsigned,
    /// `x_n = Σ (−1)^{n−k} C(n,k) y_k`.
    #[serde(rename = "binomial-unsigned-inv")]
    BinomialUnsignedInv,
    /// `L_a`: `a_{n,k} = (−n)_k (n+a)_k`.
    #[serde(rename = "L")]
    L { a: Gr },
    #[serde(rename = "L-inv")]
    LInv { a: Gr },
    /// `L̃_a`: `a_{n,k} = (−n)_k / (1+a+n)_k`.
    #[serde(rename = "Ltilde")]
    LTilde { a: Gr },
    #[serde(rename = "Ltilde-inv")]
    LTildeInv { a: Gr },
    /// `L_{a,b}`: `a_{n,k} = (−n)_k (n+a)_k / (k! (b)_k)`.
    #[serde(rename = "Lab")]
    Lab { a: Gr, b: Gr },
    #[serde(rename = "Lab-inv")]
    LabInv { a: Gr, b: Gr },
}

impl TransformSpec {
    /// Short family tag, shared by a transform and its inverse.
    pub fn family(&self) -> &'static str {
        match self {
            TransformSpec::Identity => "identity",
            TransformSpec::BinomialSigned => "binomial-signed",
            TransformSpec::BinomialUnsigned | TransformSpec::BinomialUnsignedInv => "binomial-unsigned",
            TransformSpec::L { .. } | TransformSpec::LInv { .. } => "L",
            TransformSpec::LTilde { .. } | TransformSpec::LTildeInv { .. } => "Ltilde",
            TransformSpec::Lab { .. } | TransformSpec::LabInv { .. } => "Lab",
        }
    }

    pub fn validate(&self) -> Result<()> {
        use TransformSpec::*;
        match self {
            Identity | BinomialSigned | BinomialUnsigned | BinomialUnsignedInv => Ok(()),
            L { a } | LInv { a } => check_l_param(a),
            LTilde { a } | LTildeInv { a } => check_ltilde_param(a),
            Lab { a, b } | LabInv { a, b } => {
                check_l_param(a)?;
                check_lab_b(b)
            }
        }
    }
}

fn check_l_param(a: &Gr) -> Result<()> {
    if a.is_negative_integer() {
        return Err(Error::invalid(format!("a = {a} must not be a negative integer")));
    }
    Ok(())
}

fn check_ltilde_param(a: &Gr) -> Result<()> {
    if a.as_integer().is_some_and(|v| v <= (-2).into()) {
        return Err(Error::invalid(format!("a = {a} must not lie in {{-2, -3, ...}}")));
    }
    Ok(())
}

fn check_lab_b(b: &Gr) -> Result<()> {
    if b.is_nonpositive_integer() {
        return Err(Error::invalid(format!("b = {b} must not be a nonpositive integer")));
    }
    Ok(())
}

fn int(v: usize) -> Gr {
    Gr::from(v as i64)
}

fn neg(v: usize) -> Gr {
    Gr::from(-(v as i64))
}

fn half() -> Gr {
    Gr::ratio(1, 2)
}

/// `(a)_k (1+a/2)_k (−n)_k / (k! (a/2)_k (1+a+n)_k)`, the summand weight
/// shared by the closed-form inverses of `L_a` and `L_{a,b}` (`a` not a
/// nonpositive integer).
fn dixon_weight(a: &Gr, n: usize, k: usize) -> Gr {
    let one = Gr::one();
    let half_a = a * &half();
    let top = pochhammer(a, k) * pochhammer(&(&one + &half_a), k) * pochhammer(&neg(n), k);
    let bottom = factorial_gr(k) * pochhammer(&half_a, k) * pochhammer(&(&(&one + a) + &int(n)), k);
    top / bottom
}

/// Row form of [`dixon_weight`] times `prefactor`.
fn dixon_row(a: &Gr, n: usize, prefactor: Gr) -> Vec<Gr> {
    let one = Gr::one();
    let half_a = a * &half();
    ratio_row(
        n,
        prefactor,
        &[a.clone(), &one + &half_a, neg(n)],
        &[one.clone(), half_a, &(&one + a) + &int(n)],
    )
}

/// `(a)_n (1+a/2)_n / (n! (a/2)_n)`.
fn ltilde_inv_prefactor(a: &Gr, n: usize) -> Gr {
    let half_a = a * &half();
    pochhammer(a, n) * pochhammer(&(&Gr::one() + &half_a), n) / (factorial_gr(n) * pochhammer(&half_a, n))
}

/// `(−n)_k / (1+n)_k`, the weight of the `a = 0` limit inverses.
fn limit_weight(n: usize, k: usize) -> Gr {
    pochhammer(&neg(n), k) / pochhammer(&int(n + 1), k)
}

/// Kernel realising `spec`. Fails if the parameters lie in an excluded set.
pub fn kernel_for(spec: &TransformSpec) -> Result<TriangularKernel> {
    use TransformSpec::*;
    spec.validate()?;
    let kernel = match spec.clone() {
        Identity => TriangularKernel::identity(),
        BinomialSigned => TriangularKernel::new("binomial (signed)", |n, k| {
            sign(k) * Gr::from(binomial_int(n, k))
        }),
        BinomialUnsigned => TriangularKernel::new("binomial (unsigned)", |n, k| Gr::from(binomial_int(n, k))),
        BinomialUnsignedInv => TriangularKernel::new("binomial (unsigned) inverse", |n, k| {
            sign(n - k) * Gr::from(binomial_int(n, k))
        }),
        L { a } => {
            let ra = a.clone();
            TriangularKernel::new(format!("L[a={a}]"), move |n, k| {
                pochhammer(&neg(n), k) * pochhammer(&(&int(n) + &a), k)
            })
            .with_rows(move |n| ratio_row(n, Gr::one(), &[neg(n), &int(n) + &ra], &[]))
        }
        LInv { a } if a.is_zero() => TriangularKernel::new("L^-1[a=0]", |n, k| {
            let scale = factorial_gr(n).pow(2);
            if k == 0 {
                Gr::one() / scale
            } else {
                int(2) * limit_weight(n, k) / scale
            }
        })
        .with_rows(|n| {
            let scale = factorial_gr(n).pow(2);
            let mut r = ratio_row(n, int(2) / &scale, &[neg(n)], &[int(n + 1)]);
            r[0] = Gr::one() / scale;
            r
        }),
        LInv { a } => {
            let ra = a.clone();
            TriangularKernel::new(format!("L^-1[a={a}]"), move |n, k| {
                let scale = factorial_gr(n) * pochhammer(&(&Gr::one() + &a), n);
                dixon_weight(&a, n, k) / scale
            })
            .with_rows(move |n| {
                let scale = factorial_gr(n) * pochhammer(&(&Gr::one() + &ra), n);
                dixon_row(&ra, n, Gr::one() / scale)
            })
        }
        LTilde { a } => {
            let ra = a.clone();
            TriangularKernel::new(format!("Ltilde[a={a}]"), move |n, k| {
                let shifted = &(&Gr::one() + &a) + &int(n);
                pochhammer(&neg(n), k) / pochhammer(&shifted, k)
            })
            .with_rows(move |n| ratio_row(n, Gr::one(), &[neg(n)], &[&(&Gr::one() + &ra) + &int(n)]))
        }
        LTildeInv { a } if a.is_zero() => TriangularKernel::new("Ltilde^-1[a=0]", |n, k| {
            if n == 0 {
                return Gr::one();
            }
            let top = pochhammer(&neg(n), k) * pochhammer(&int(n), k);
            int(2) * top / factorial_gr(k).pow(2)
        })
        .with_rows(|n| {
            if n == 0 {
                return vec![Gr::one()];
            }
            ratio_row(n, int(2), &[neg(n), int(n)], &[Gr::one(), Gr::one()])
        }),
        LTildeInv { a } if a == Gr::from(-1) => TriangularKernel::new("Ltilde^-1[a=-1]", |n, k| {
            if n == 0 {
                return Gr::one();
            }
            let top = sign(k) * pochhammer(&int(k), n - 1);
            int(2 * n - 1) * top / (factorial_gr(n - k) * factorial_gr(k))
        }),
        LTildeInv { a } => {
            let ra = a.clone();
            TriangularKernel::new(format!("Ltilde^-1[a={a}]"), move |n, k| {
                let top = pochhammer(&neg(n), k) * pochhammer(&(&int(n) + &a), k);
                ltilde_inv_prefactor(&a, n) * top / (factorial_gr(k) * pochhammer(&(&Gr::one() + &a), k))
            })
            .with_rows(move |n| {
                ratio_row(
                    n,
                    ltilde_inv_prefactor(&ra, n),
                    &[neg(n), &int(n) + &ra],
                    &[Gr::one(), &Gr::one() + &ra],
                )
            })
        }
        Lab { a, b } => {
            let (ra, rb) = (a.clone(), b.clone());
            TriangularKernel::new(format!("Lab[a={a},b={b}]"), move |n, k| {
                let top = pochhammer(&neg(n), k) * pochhammer(&(&int(n) + &a), k);
                top / (factorial_gr(k) * pochhammer(&b, k))
            })
            .with_rows(move |n| ratio_row(n, Gr::one(), &[neg(n), &int(n) + &ra], &[Gr::one(), rb.clone()]))
        }
        LabInv { a, b } if a.is_zero() => {
            let rb = b.clone();
            TriangularKernel::new(format!("Lab^-1[a=0,b={b}]"), move |n, k| {
                let prefactor = pochhammer(&b, n) / factorial_gr(n);
                if k == 0 {
                    prefactor
                } else {
                    int(2) * prefactor * limit_weight(n, k)
                }
            })
            .with_rows(move |n| {
                let prefactor = pochhammer(&rb, n) / factorial_gr(n);
                let mut r = ratio_row(n, int(2) * &prefactor, &[neg(n)], &[int(n + 1)]);
                r[0] = prefactor;
                r
            })
        }
        LabInv { a, b } => {
            let (ra, rb) = (a.clone(), b.clone());
            TriangularKernel::new(format!("Lab^-1[a={a},b={b}]"), move |n, k| {
                let prefactor = pochhammer(&b, n) / pochhammer(&(&Gr::one() + &a), n);
                prefactor * dixon_weight(&a, n, k)
            })
            .with_rows(move |n| {
                let prefactor = pochhammer(&rb, n) / pochhammer(&(&Gr::one() + &ra), n);
                dixon_row(&ra, n, prefactor)
            })
        }
    };
    Ok(kernel)
}

/// The spec of the inverse transform.
pub fn invert(spec: &TransformSpec) -> Result<TransformSpec> {
    use TransformSpec::*;
    spec.validate()?;
    Ok(match spec.clone() {
        Identity => Identity,
        BinomialSigned => BinomialSigned,
        BinomialUnsigned => BinomialUnsignedInv,
        BinomialUnsignedInv => BinomialUnsigned,
        L { a } => LInv { a },
        LInv { a } => L { a },
        LTilde { a } => LTildeInv { a },
        LTildeInv { a } => LTilde { a },
        Lab { a, b } => LabInv { a, b },
        LabInv { a, b } => Lab { a, b },
    })
}

/// Alternate closed form of the `L̃_{-1}` inverse, written over `x_{k+1}`:
/// `x_0`, `x_0 − x_1`, and `(1−2n) Σ_{k<n} (1−n)_k (n)_k / (k! (2)_k) x_{k+1}`
/// for `n > 1`.
pub fn ltilde_minus_one_inverse_alt() -> TriangularKernel {
    TriangularKernel::new("Ltilde^-1[a=-1] (shifted form)", |n, k| match (n, k) {
        (0, _) => Gr::one(),
        (1, 0) => Gr::one(),
        (1, _) => -Gr::one(),
        (_, 0) => Gr::zero(),
        _ => {
            let j = k - 1;
            let top = pochhammer(&(&Gr::one() - &int(n)), j) * pochhammer(&int(n), j);
            let bottom = factorial_gr(j) * pochhammer(&int(2), j);
            Gr::from(1 - 2 * n as i64) * top / bottom
        }
    })
}

fn check_index(x: &Sequence, n: usize) -> Result<()> {
    if n >= x.len() {
        return Err(Error::invalid(format!("index {n} outside a prefix of length {}", x.len())));
    }
    Ok(())
}

/// Both sides of the binomial-transform relation
/// `L_{a,b}(x̂)_n = (−1)^n (1+a−b)_n / (b)_n · L_{a,1+a−b}(x)_n`.
///
/// Requires `b ∉ {1+a, 2+a, ...}` so that `L_{a,1+a−b}` is defined.
pub fn theorem41_sides(a: &Gr, b: &Gr, x: &Sequence, n: usize) -> Result<(Gr, Gr)> {
    check_index(x, n)?;
    let b_dual = &(&Gr::one() + a) - b;
    if b_dual.is_nonpositive_integer() {
        return Err(Error::invalid(format!("b = {b} lies in {{1+a, 2+a, ...}} for a = {a}")));
    }
    let forward = kernel_for(&TransformSpec::Lab { a: a.clone(), b: b.clone() })?;
    let dual = kernel_for(&TransformSpec::Lab { a: a.clone(), b: b_dual.clone() })?;
    let x_hat = apply(&kernel_for(&TransformSpec::BinomialSigned)?, x);

    let lhs = apply_row(&forward, &x_hat, n);
    let factor = sign(n) * pochhammer(&b_dual, n) / pochhammer(b, n);
    let rhs = factor * apply_row(&dual, x, n);
    Ok((lhs, rhs))
}

/// The same relation with the unsigned binomial transform `y_n = Σ C(n,k) x_k`:
/// `Σ (−n)_k (n+a)_k / (k! (b)_k) y_k
///    = (−1)^n (1+a−b)_n/(b)_n Σ (−1)^k (−n)_k (n+a)_k / (k! (1+a−b)_k) x_k`.
pub fn eq448_sides(a: &Gr, b: &Gr, x: &Sequence, n: usize) -> Result<(Gr, Gr)> {
    check_index(x, n)?;
    let b_dual = &(&Gr::one() + a) - b;
    if b_dual.is_nonpositive_integer() {
        return Err(Error::invalid(format!("b = {b} lies in {{1+a, 2+a, ...}} for a = {a}")));
    }
    let forward = kernel_for(&TransformSpec::Lab { a: a.clone(), b: b.clone() })?;
    let dual = kernel_for(&TransformSpec::Lab { a: a.clone(), b: b_dual.clone() })?;
    let y = apply(&kernel_for(&TransformSpec::BinomialUnsigned)?, x);

    let lhs = apply_row(&forward, &y, n);
    let alternating: Gr = (0..=n).map(|k| sign(k) * dual.coeff(n, k) * &x[k]).sum();
    let rhs = sign(n) * pochhammer(&b_dual, n) / pochhammer(b, n) * alternating;
    Ok((lhs, rhs))
}

/// `L_{a,(1+a)/2}(x̂)_n` and `(−1)^n L_{a,(1+a)/2}(x)_n`.
pub fn eq450_sides(a: &Gr, x: &Sequence, n: usize) -> Result<(Gr, Gr)> {
    check_index(x, n)?;
    let b = (&Gr::one() + a) * half();
    let kernel = kernel_for(&TransformSpec::Lab { a: a.clone(), b })?;
    let x_hat = apply(&kernel_for(&TransformSpec::BinomialSigned)?, x);
    Ok((apply_row(&kernel, &x_hat, n), sign(n) * apply_row(&kernel, x, n)))
}

/// The explicit weighted sums
/// `Σ (−n)_k (n+a)_k / (k! ((1+a)/2)_k) x̂_k` and `(−1)^n Σ (...) x_k`,
/// summed term by term without the kernel machinery.
pub fn eq460_sides(a: &Gr, x: &Sequence, n: usize) -> Result<(Gr, Gr)> {
    check_index(x, n)?;
    check_l_param(a)?;
    let b = (&Gr::one() + a) * half();
    check_lab_b(&b)?;
    let weight = |k: usize| {
        pochhammer(&neg(n), k) * pochhammer(&(&int(n) + a), k) / (factorial_gr(k) * pochhammer(&b, k))
    };
    let x_hat = |k: usize| -> Gr {
        (0..=k).map(|j| sign(j) * Gr::from(binomial_int(k, j)) * &x[j]).sum()
    };
    let lhs = (0..=n).map(|k| weight(k) * x_hat(k)).sum();
    let rhs = sign(n) * (0..=n).map(|k| weight(k) * &x[k]).sum::<Gr>();
    Ok((lhs, rhs))
}

fn eq470_weight(r: usize, n: usize, k: usize) -> Gr {
    Gr::from(binomial_int(n, k) * binomial_int(n + k + 2 * r, k + r))
}

/// `Σ (−1)^k C(n,k) C(n+k+2r, k+r) x̂_k` and
/// `(−1)^n Σ (−1)^k C(n,k) C(n+k+2r, k+r) x_k`, with `x̂` the signed
/// binomial transform.
pub fn eq470_sides(r: usize, x: &Sequence, n: usize) -> Result<(Gr, Gr)> {
    check_index(x, n)?;
    let x_hat = apply(&kernel_for(&TransformSpec::BinomialSigned)?, x);
    let lhs = (0..=n).map(|k| sign(k) * eq470_weight(r, n, k) * &x_hat[k]).sum();
    let rhs = sign(n) * (0..=n).map(|k| sign(k) * eq470_weight(r, n, k) * &x[k]).sum::<Gr>();
    Ok((lhs, rhs))
}

/// The unsigned-convention reading of [`eq470_sides`]:
/// `Σ (−1)^k C(n,k) C(n+k+2r, k+r) y_k = (−1)^n Σ C(n,k) C(n+k+2r, k+r) x_k`
/// with `y_n = Σ C(n,k) x_k`. For `r = 0` this is the classical special case
/// `Σ (−1)^k C(n,k) C(n+k,k) y_k = (−1)^n Σ C(n,k) C(n+k,k) x_k`.
pub fn eq470_unsigned_sides(r: usize, x: &Sequence, n: usize) -> Result<(Gr, Gr)> {
    check_index(x, n)?;
    let y = apply(&kernel_for(&TransformSpec::BinomialUnsigned)?, x);
    let lhs = (0..=n).map(|k| sign(k) * eq470_weight(r, n, k) * &y[k]).sum();
    let rhs = sign(n) * (0..=n).map(|k| eq470_weight(r, n, k) * &x[k]).sum::<Gr>();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64, d: i64) -> Gr {
        Gr::ratio(n, d)
    }

    fn seq(v: &[(i64, i64)]) -> Sequence {
        Sequence::new(v.iter().map(|&(n, d)| g(n, d)).collect()).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let l1 = kernel_for(&TransformSpec::L { a: g(1, 1) }).unwrap();
        for n in 0..6 {
            assert_eq!(l1.coeff(n, 0), Gr::one());
        }
        assert_eq!(l1.coeff(2, 1), g(-6, 1));
        let bin = kernel_for(&TransformSpec::BinomialSigned).unwrap();
        assert_eq!(bin.coeff(2, 1), g(-2, 1));
        let inv = kernel_for(&TransformSpec::LTildeInv { a: g(-1, 1) }).unwrap();
        assert_eq!(inv.coeff(1, 0), g(1, 1));
        assert_eq!(inv.coeff(1, 1), g(-1, 1));
    }

    #[test]
    fn apply_examples() {
        let x = seq(&[(1, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(apply(&TriangularKernel::identity(), &x), x);
        let bin = kernel_for(&TransformSpec::BinomialSigned).unwrap();
        assert_eq!(apply(&bin, &x), seq(&[(1, 1); 4]));

        let e1 = seq(&[(0, 1), (1, 1), (0, 1), (0, 1)]);
        let l1 = kernel_for(&TransformSpec::L { a: g(1, 1) }).unwrap();
        assert_eq!(apply(&l1, &e1), seq(&[(0, 1), (-2, 1), (-6, 1), (-12, 1)]));
    }

    #[test]
    fn parameter_restrictions() {
        use TransformSpec::*;
        assert!(kernel_for(&L { a: g(-1, 1) }).is_err());
        assert!(kernel_for(&L { a: g(-3, 1) }).is_err());
        assert!(kernel_for(&L { a: g(-1, 2) }).is_ok());
        assert!(kernel_for(&L { a: Gr::new(g(-1, 1).re, g(1, 1).re) }).is_ok());
        assert!(kernel_for(&LTilde { a: g(-1, 1) }).is_ok());
        assert!(kernel_for(&LTilde { a: g(-2, 1) }).is_err());
        assert!(kernel_for(&LTildeInv { a: g(-5, 1) }).is_err());
        assert!(kernel_for(&Lab { a: g(1, 1), b: g(0, 1) }).is_err());
        assert!(kernel_for(&LabInv { a: g(-2, 1), b: g(1, 1) }).is_err());
        assert!(matches!(invert(&Lab { a: g(1, 1), b: g(-2, 1) }), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn invert_maps_families() {
        use TransformSpec::*;
        assert_eq!(invert(&BinomialSigned).unwrap(), BinomialSigned);
        assert_eq!(invert(&L { a: g(3, 2) }).unwrap(), LInv { a: g(3, 2) });
        assert_eq!(invert(&LTilde { a: g(-1, 1) }).unwrap(), LTildeInv { a: g(-1, 1) });
        assert_eq!(invert(&BinomialUnsigned).unwrap(), BinomialUnsignedInv);
    }

    #[test]
    fn theorem41_unit_sequence_at_zero() {
        let x = Sequence::unit(4);
        let (lhs, rhs) = theorem41_sides(&g(7, 3), &g(2, 5), &x, 0).unwrap();
        assert_eq!((lhs, rhs), (Gr::one(), Gr::one()));
    }

    #[test]
    fn theorem41_small_case() {
        let x = seq(&[(1, 1); 4]);
        let (lhs, rhs) = theorem41_sides(&g(2, 1), &g(1, 1), &x, 1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theorem41_rejects_excluded_b() {
        let x = Sequence::unit(3);
        assert!(theorem41_sides(&g(1, 2), &g(5, 2), &x, 1).is_err());
        assert!(theorem41_sides(&g(1, 2), &g(1, 1), &x, 3).is_err());
    }

    #[test]
    fn eq470_examples() {
        let ones = seq(&[(1, 1); 4]);
        assert_eq!(eq470_sides(0, &ones, 1).unwrap(), (Gr::one(), Gr::one()));
        let x = seq(&[(3, 7), (-2, 5), (1, 1)]);
        assert_eq!(eq470_sides(0, &x, 0).unwrap(), (g(3, 7), g(3, 7)));
    }

    #[test]
    fn sequence_json() {
        let s: Sequence = serde_json::from_str(r#"{"seq": [["1","0"], ["1/2","-3"]]}"#).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"seq":[["1","0"],["1/2","-3"]]}"#);
        assert!(serde_json::from_str::<Sequence>(r#"{"seq": []}"#).is_err());
    }

    #[test]
    fn transform_spec_json() {
        let s: TransformSpec = serde_json::from_str(r#"{"kind": "L", "a": "3/2"}"#).unwrap();
        assert_eq!(s, TransformSpec::L { a: g(3, 2) });
        let s: TransformSpec = serde_json::from_str(r#"{"kind": "Lab", "a": ["1","2"], "b": "1/3"}"#).unwrap();
        assert!(matches!(s, TransformSpec::Lab { .. }));
        let s: TransformSpec = serde_json::from_str(r#"{"kind": "binomial-signed"}"#).unwrap();
        assert_eq!(s, TransformSpec::BinomialSigned);
        assert!(serde_json::from_str::<TransformSpec>(r#"{"kind": "nope"}"#).is_err());
        assert!(serde_json::from_str::<TransformSpec>(r#"{"kind": "L"}"#).is_err());
    }

    #[test]
    fn sign_flip_changes_only_one_entry() {
        let k = kernel_for(&TransformSpec::L { a: g(1, 1) }).unwrap();
        let flipped = k.with_sign_flip(2, 1);
        assert_eq!(flipped.coeff(2, 1), g(6, 1));
        assert_eq!(flipped.coeff(2, 2), k.coeff(2, 2));
        assert_eq!(flipped.coeff(3, 1), k.coeff(3, 1));
        assert_eq!(flipped.row(2), vec![k.coeff(2, 0), g(6, 1), k.coeff(2, 2)]);
    }

    #[test]
    fn rows_agree_with_coefficients() {
        let complex = Gr::new(crate::exactnum::rat(-7, 3), crate::exactnum::rat(5, 4));
        let mut specs = vec![
            TransformSpec::Identity,
            TransformSpec::BinomialSigned,
            TransformSpec::BinomialUnsigned,
            TransformSpec::BinomialUnsignedInv,
        ];
        for a in [g(0, 1), g(-1, 1), g(3, 2), g(-5, 3), complex.clone()] {
            for spec in [TransformSpec::L { a: a.clone() }, TransformSpec::LTilde { a: a.clone() }] {
                if spec.validate().is_ok() {
                    specs.push(invert(&spec).unwrap());
                    specs.push(spec);
                }
            }
            let lab = TransformSpec::Lab { a: a.clone(), b: g(2, 7) };
            if lab.validate().is_ok() {
                specs.push(invert(&lab).unwrap());
                specs.push(lab);
            }
        }
        for spec in &specs {
            let k = kernel_for(spec).unwrap();
            for n in 0..10 {
                let expected: Vec<Gr> = (0..=n).map(|j| k.coeff(n, j)).collect();
                assert_eq!(k.row(n), expected, "{spec:?} row {n}");
            }
        }
    }
}
