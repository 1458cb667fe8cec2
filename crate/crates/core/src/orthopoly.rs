//! Hypergeometric orthogonal polynomials of the Askey scheme, evaluated
//! exactly from their terminating-series definitions, and verifiers for the
//! relations the `L_a` inverse and the binomial-transform theorem give them.
//!
//! Wilson and continuous Hahn polynomials take `x` and form `a ± ix` in
//! ℚ(i). Racah polynomials take `x` (not `λ(x) = x(x+γ+δ+1)`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{factorial_gr, pochhammer, pochhammer_ratio, sign, GaussianRational};
use crate::hyper::{eval_nominal, HypSeriesSpec};
use crate::report::{check_range, CheckReport, Counterexample};

type Gr = GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum FamilySpec {
    Wilson { a: Gr, b: Gr, c: Gr, d: Gr },
    /// One of `α+1`, `β+δ+1`, `γ+1` must equal `−N` for a nonnegative integer `N`.
    Racah { alpha: Gr, beta: Gr, gamma: Gr, delta: Gr },
    ContinuousHahn { a: Gr, b: Gr, c: Gr, d: Gr },
    Hahn {
        alpha: Gr,
        beta: Gr,
        #[serde(rename = "N")]
        big_n: u64,
    },
    Jacobi { alpha: Gr, beta: Gr },
    Gegenbauer { lambda: Gr },
    ChebyshevT,
    ChebyshevU,
    Legendre,
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Wilson { .. } => "wilson",
            FamilySpec::Racah { .. } => "racah",
            FamilySpec::ContinuousHahn { .. } => "continuous-hahn",
            FamilySpec::Hahn { .. } => "hahn",
            FamilySpec::Jacobi { .. } => "jacobi",
            FamilySpec::Gegenbauer { .. } => "gegenbauer",
            FamilySpec::ChebyshevT => "chebyshev-t",
            FamilySpec::ChebyshevU => "chebyshev-u",
            FamilySpec::Legendre => "legendre",
        }
    }

    /// Degree cap `N` for the finite families (Racah, Hahn).
    pub fn degree_cap(&self) -> Result<Option<u64>> {
        match self {
            FamilySpec::Racah { alpha, beta, gamma, delta } => {
                racah_cap(alpha, beta, gamma, delta).map(Some)
            }
            FamilySpec::Hahn { big_n, .. } => Ok(Some(*big_n)),
            _ => Ok(None),
        }
    }

    /// Named parameters as rational strings.
    pub fn named_params(&self) -> Vec<(&'static str, Gr)> {
        match self.clone() {
            FamilySpec::Wilson { a, b, c, d } | FamilySpec::ContinuousHahn { a, b, c, d } => {
                vec![("a", a), ("b", b), ("c", c), ("d", d)]
            }
            FamilySpec::Racah { alpha, beta, gamma, delta } => {
                vec![("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)]
            }
            FamilySpec::Hahn { alpha, beta, big_n } => {
                vec![("alpha", alpha), ("beta", beta), ("N", Gr::from(big_n as i64))]
            }
            FamilySpec::Jacobi { alpha, beta } => vec![("alpha", alpha), ("beta", beta)],
            FamilySpec::Gegenbauer { lambda } => vec![("lambda", lambda)],
            FamilySpec::ChebyshevT | FamilySpec::ChebyshevU | FamilySpec::Legendre => vec![],
        }
    }
}

fn racah_cap(alpha: &Gr, beta: &Gr, gamma: &Gr, delta: &Gr) -> Result<u64> {
    let one = Gr::one();
    [alpha + &one, &(beta + delta) + &one, gamma + &one]
        .iter()
        .filter_map(Gr::as_nonpositive_integer)
        .min()
        .ok_or_else(|| {
            Error::invalid("Racah needs one of alpha+1, beta+delta+1, gamma+1 equal to -N, N >= 0")
        })
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

/// `(1 − x)/2`, the argument of the Jacobi-type families.
fn jacobi_arg(x: &Gr) -> Gr {
    (&Gr::one() - x) * half()
}

fn ix(x: &Gr) -> Gr {
    Gr::i() * x
}

/// `n`-th polynomial of the family at `x`.
pub fn eval_poly(spec: &FamilySpec, n: usize, x: &Gr) -> Result<Gr> {
    let one = Gr::one();
    match spec {
        FamilySpec::Wilson { a, b, c, d } => {
            let s = &(&(a + b) + c) + d;
            let (ab, ac, ad) = (a + b, a + c, a + d);
            let series = HypSeriesSpec::unit(
                vec![neg(n), &(&int(n) + &s) - &one, a + &ix(x), a - &ix(x)],
                vec![ab.clone(), ac.clone(), ad.clone()],
            );
            let prefactor = pochhammer(&ab, n) * pochhammer(&ac, n) * pochhammer(&ad, n);
            Ok(prefactor * eval_nominal(&series, n)?)
        }
        FamilySpec::Racah { alpha, beta, gamma, delta } => {
            let cap = racah_cap(alpha, beta, gamma, delta)?;
            if n as u64 > cap {
                return Err(Error::DegreeExceedsN { n, cap });
            }
            let series = HypSeriesSpec::unit(
                vec![
                    neg(n),
                    &(&int(n) + &(alpha + beta)) + &one,
                    -x,
                    &(x + &(gamma + delta)) + &one,
                ],
                vec![alpha + &one, &(beta + delta) + &one, gamma + &one],
            );
            eval_nominal(&series, n)
        }
        FamilySpec::ContinuousHahn { a, b, c, d } => {
            let s = &(&(a + b) + c) + d;
            let (ac, ad) = (a + c, a + d);
            let series = HypSeriesSpec::unit(
                vec![neg(n), &(&int(n) + &s) - &one, a + &ix(x)],
                vec![ac.clone(), ad.clone()],
            );
            let prefactor =
                Gr::i().pow(n as u32) * pochhammer(&ac, n) * pochhammer(&ad, n) / factorial_gr(n);
            Ok(prefactor * eval_nominal(&series, n)?)
        }
        FamilySpec::Hahn { alpha, beta, big_n } => {
            if n as u64 > *big_n {
                return Err(Error::DegreeExceedsN { n, cap: *big_n });
            }
            let series = HypSeriesSpec::unit(
                vec![neg(n), &(&int(n) + &(alpha + beta)) + &one, -x],
                vec![alpha + &one, Gr::from(-(*big_n as i64))],
            );
            eval_nominal(&series, n)
        }
        FamilySpec::Jacobi { alpha, beta } => {
            let series = HypSeriesSpec::new(
                vec![neg(n), &(&int(n) + &(alpha + beta)) + &one],
                vec![alpha + &one],
                jacobi_arg(x),
            );
            Ok(pochhammer(&(alpha + &one), n) / factorial_gr(n) * eval_nominal(&series, n)?)
        }
        FamilySpec::Gegenbauer { lambda } => {
            if lambda.is_zero() {
                return Err(Error::invalid("Gegenbauer needs lambda != 0"));
            }
            let two_lambda = lambda * &int(2);
            let series = HypSeriesSpec::new(
                vec![neg(n), &int(n) + &two_lambda],
                vec![lambda + &half()],
                jacobi_arg(x),
            );
            Ok(pochhammer(&two_lambda, n) / factorial_gr(n) * eval_nominal(&series, n)?)
        }
        FamilySpec::ChebyshevT => {
            let series = HypSeriesSpec::new(vec![neg(n), int(n)], vec![half()], jacobi_arg(x));
            eval_nominal(&series, n)
        }
        FamilySpec::ChebyshevU => {
            let series =
                HypSeriesSpec::new(vec![neg(n), int(n + 2)], vec![Gr::ratio(3, 2)], jacobi_arg(x));
            Ok(int(n + 1) * eval_nominal(&series, n)?)
        }
        FamilySpec::Legendre => {
            let series = HypSeriesSpec::new(vec![neg(n), int(n + 1)], vec![one], jacobi_arg(x));
            eval_nominal(&series, n)
        }
    }
}

/// The relations verified for the polynomial families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    I510,
    I515,
    I520,
    I525,
    I530,
    I535,
    I537,
    I538,
    I540,
    I545,
    I547,
    I550,
    I555,
    JacobiReflection,
    I5610,
    I5710,
    I5810,
    I5910,
}

impl IdentityId {
    pub const ALL: [IdentityId; 18] = [
        IdentityId::I510,
        IdentityId::I515,
        IdentityId::I520,
        IdentityId::I525,
        IdentityId::I530,
        IdentityId::I535,
        IdentityId::I537,
        IdentityId::I538,
        IdentityId::I540,
        IdentityId::I545,
        IdentityId::I547,
        IdentityId::I550,
        IdentityId::I555,
        IdentityId::JacobiReflection,
        IdentityId::I5610,
        IdentityId::I5710,
        IdentityId::I5810,
        IdentityId::I5910,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::I510 => "I510",
            IdentityId::I515 => "I515",
            IdentityId::I520 => "I520",
            IdentityId::I525 => "I525",
            IdentityId::I530 => "I530",
            IdentityId::I535 => "I535",
            IdentityId::I537 => "I537",
            IdentityId::I538 => "I538",
            IdentityId::I540 => "I540",
            IdentityId::I545 => "I545",
            IdentityId::I547 => "I547",
            IdentityId::I550 => "I550",
            IdentityId::I555 => "I555",
            IdentityId::JacobiReflection => "JacobiReflection",
            IdentityId::I5610 => "I5610",
            IdentityId::I5710 => "I5710",
            IdentityId::I5810 => "I5810",
            IdentityId::I5910 => "I5910",
        }
    }

    /// Family name (as in [`FamilySpec::name`]) the identity is stated for.
    pub fn family(self) -> &'static str {
        use IdentityId::*;
        match self {
            I510 | I515 => "wilson",
            I520 | I525 => "racah",
            I530 | I535 | I537 | I538 => "continuous-hahn",
            I540 | I545 | I547 => "hahn",
            I550 | I555 | JacobiReflection => "jacobi",
            I5610 => "gegenbauer",
            I5710 => "chebyshev-t",
            I5810 => "chebyshev-u",
            I5910 => "legendre",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_owned()))
    }
}

fn values(spec: &FamilySpec, x: &Gr, n_max: usize) -> Result<Vec<Gr>> {
    (0..=n_max).map(|k| eval_poly(spec, k, x)).collect()
}

fn require_not_negative_integer(v: &Gr, what: &str) -> Result<()> {
    if v.is_negative_integer() {
        return Err(Error::invalid(format!("{what} = {v} must not be a negative integer")));
    }
    Ok(())
}

fn require_not_nonpositive_integer(v: &Gr, what: &str) -> Result<()> {
    if v.is_nonpositive_integer() {
        return Err(Error::invalid(format!("{what} = {v} must not be a nonpositive integer")));
    }
    Ok(())
}

fn require_cap(spec: &FamilySpec, n_max: usize) -> Result<()> {
    if let Some(cap) = spec.degree_cap()? {
        if n_max as u64 > cap {
            return Err(Error::DegreeExceedsN { n: n_max, cap });
        }
    }
    Ok(())
}

/// `Σ_{k≤n} w(n, k) · v_k` for precomputed polynomial values.
fn weighted_sum(vals: &[Gr], n: usize, w: impl Fn(usize) -> Result<Gr>) -> Result<Gr> {
    let mut acc = Gr::zero();
    for (k, v) in vals.iter().enumerate().take(n + 1) {
        acc += w(k)? * v;
    }
    Ok(acc)
}

/// Weight of the `L_a` inverse with `a = s`:
/// `(s)_k (1+s/2)_k (−n)_k / (k! (s/2)_k (1+s+n)_k)` times `1/Π(extra_j)_k`.
fn inverse_weight(s: &Gr, n: usize, k: usize, extra: &[Gr]) -> Result<Gr> {
    let one = Gr::one();
    let half_s = s * &half();
    let numer = [s.clone(), &one + &half_s, neg(n)];
    let mut denom = vec![one.clone(), half_s, &(&one + s) + &int(n)];
    denom.extend_from_slice(extra);
    pochhammer_ratio(&numer, &denom, k)
}

/// `(−n)_k / ((1+n)_k Π(extra_j)_k)`, the `a = 0` limit weight.
fn limit_weight(n: usize, k: usize, extra: &[Gr]) -> Result<Gr> {
    let mut denom = vec![int(n + 1)];
    denom.extend_from_slice(extra);
    pochhammer_ratio(&[neg(n)], &denom, k)
}

fn is_real_point(params: &[Gr], x: &Gr) -> bool {
    x.is_real() && params.iter().all(Gr::is_real)
}

/// Checks identity `id` at the given parameters for every `0 <= n <= n_max`.
///
/// For identities stated on a constrained parameter surface (`a+b+c+d = 1`,
/// `α+β = −1`) the constrained parameter is recomputed from the others:
/// `d = 1−a−b−c` for I515/I535 and `β = −1−α` for I525/I545/I555.
pub fn verify_identity(id: IdentityId, params: &FamilySpec, x: &Gr, n_max: usize) -> Result<CheckReport> {
    use IdentityId::*;
    if params.name() != id.family() {
        return Err(Error::invalid(format!(
            "{id} is stated for the {} family, got {}",
            id.family(),
            params.name()
        )));
    }
    let one = Gr::one();
    let tag = id.as_str();

    let params = constrain(id, params);
    require_cap(&params, n_max)?;

    match (id, &params) {
        (I510, FamilySpec::Wilson { a, b, c, d }) => {
            let s = &(&(a + b) + c) + d;
            require_not_nonpositive_integer(&(&s - &one), "a+b+c+d-1")?;
            let vals = values(&params, x, n_max)?;
            if let Some(r) = wilson_real_check(tag, n_max, &[a, b, c, d], x, &vals) {
                return Ok(r);
            }
            let denoms = [a + b, a + c, a + d];
            check_range(tag, n_max, |n| {
                let lhs = weighted_sum(&vals, n, |k| inverse_weight(&(&s - &one), n, k, &denoms))?;
                let rhs = pochhammer_ratio(&[s.clone(), a + &ix(x), a - &ix(x)], &denoms, n)?;
                Ok((lhs, rhs))
            })
        }
        (I515, FamilySpec::Wilson { a, b, c, d }) => {
            let vals = values(&params, x, n_max)?;
            if let Some(r) = wilson_real_check(tag, n_max, &[a, b, c, d], x, &vals) {
                return Ok(r);
            }
            let denoms = [a + b, a + c, a + d];
            check_range(tag, n_max, |n| {
                let lhs = weighted_sum(&vals, n, |k| limit_weight(n, k, &denoms))?;
                let p = pochhammer_ratio(&[a + &ix(x), a - &ix(x)], &denoms, n)?;
                let rhs = (factorial_gr(n) * p + &one) * half();
                Ok((lhs, rhs))
            })
        }
        (I520, FamilySpec::Racah { alpha, beta, gamma, delta }) => {
            let ab = alpha + beta;
            require_not_negative_integer(&ab, "alpha+beta")?;
            let s = &ab + &one;
            let vals = values(&params, x, n_max)?;
            let denoms = [alpha + &one, &(beta + delta) + &one, gamma + &one];
            check_range(tag, n_max, |n| {
                let lhs = weighted_sum(&vals, n, |k| inverse_weight(&s, n, k, &[]))?;
                let numer = [&s + &one, -x, &(x + &(gamma + delta)) + &one];
                Ok((lhs, pochhammer_ratio(&numer, &denoms, n)?))
            })
        }
        (I525, FamilySpec::Racah { alpha, beta, gamma, delta }) => {
            let vals = values(&params, x, n_max)?;
            let denoms = [alpha + &one, &(beta + delta) + &one, gamma + &one];
            check_range(tag, n_max, |n| {
                let lhs = weighted_sum(&vals, n, |k| limit_weight(n, k, &[]))?;
                let p = pochhammer_ratio(&[-x, &(x + &(gamma + delta)) + &one], &denoms, n)?;
                Ok((lhs, (factorial_gr(n) * p + &one) * half()))
            })
        }
        (I530, FamilySpec::ContinuousHahn { a, b, c, d }) => {
            let s = &(&(a + b) + c) + d;
            require_not_nonpositive_integer(&(&s - &one), "a+b+c+d-1")?;
            let vals = values(&params, x, n_max)?;
            let denoms = [a + c, a + d];
            let minus_i = -Gr::i();
            check_range(tag, n_max, |n| {
                // the weight carries no 1/k!: it cancels against p_k's 1/k!
                let lhs = weighted_sum(&vals, n, |k| {
                    let w = inverse_weight(&(&s - &one), n, k, &denoms)?;
                    Ok(minus_i.pow(k as u32) * factorial_gr(k) * w)
                })?;
                let rhs = pochhammer_ratio(&[s.clone(), a + &ix(x)], &denoms, n)?;
                Ok((lhs, rhs))
            })
        }
        (I535, FamilySpec::ContinuousHahn { a, c, d, .. }) => {
            let vals = values(&params, x, n_max)?;
            let denoms = [a + c, a + d];
            let minus_i = -Gr::i();
            check_range(tag, n_max, |n| {
                let lhs = weighted_sum(&vals, n, |k| {
                    Ok(minus_i.pow(k as u32) * factorial_gr(k) * limit_weight(n, k, &denoms)?)
                })?;
                let p = pochhammer_ratio(&[a + &ix(x)], &denoms, n)?;
                Ok((lhs, (factorial_gr(n) * p + &one) * half()))
            })
        }
        (I537, FamilySpec::ContinuousHahn { a, b, c, d }) => {
            let mirrored = FamilySpec::ContinuousHahn { a: d.clone(), b: c.clone(), c: b.clone(), d: a.clone() };
            check_range(tag, n_max, |n| {
                let lhs = eval_poly(&params, n, x)?;
                let rhs = sign(n) * eval_poly(&mirrored, n, &-x)?;
                Ok((lhs, rhs))
            })
        }
        (I538, FamilySpec::ContinuousHahn { a, b, c, d }) => enumerate_538(a, b, c, d, x, n_max),
        (I540, FamilySpec::Hahn { alpha, beta, big_n }) => {
            let ab = alpha + beta;
            require_not_negative_integer(&ab, "alpha+beta")?;
            let s = &ab + &one;
            let vals = values(&params, x, n_max)?;
            let denoms = [alpha + &one, Gr::from(-(*big_n as i64))];
            check_range(tag, n_max, |n| {
                let lhs = weighted_sum(&vals, n, |k| inverse_weight(&s, n, k, &[]))?;
                Ok((lhs, pochhammer_ratio(&[&s + &one, -x], &denoms, n)?))
            })
        }
        (I545, FamilySpec::Hahn { alpha, big_n, .. }) => {
            let vals = values(&params, x, n_max)?;
            let denoms = [alpha + &one, Gr::from(-(*big_n as i64))];
            check_range(tag, n_max, |n| {
                let lhs = weighted_sum(&vals, n, |k| limit_weight(n, k, &[]))?;
                let p = pochhammer_ratio(&[-x], &denoms, n)?;
                Ok((lhs, (factorial_gr(n) * p + &one) * half()))
            })
        }
        (I547, FamilySpec::Hahn { alpha, beta, big_n }) => {
            require_positive_shift(alpha, "alpha+1")?;
            require_positive_shift(beta, "beta+1")?;
            let swapped = FamilySpec::Hahn { alpha: beta.clone(), beta: alpha.clone(), big_n: *big_n };
            let reflected = &Gr::from(*big_n as i64) - x;
            check_range(tag, n_max, |n| {
                let lhs = eval_poly(&params, n, x)?;
                let factor = sign(n) * pochhammer_ratio(&[beta + &one], &[alpha + &one], n)?;
                Ok((lhs, factor * eval_poly(&swapped, n, &reflected)?))
            })
        }
        (I550, FamilySpec::Jacobi { alpha, beta }) => {
            let ab = alpha + beta;
            require_not_negative_integer(&ab, "alpha+beta")?;
            let s = &ab + &one;
            let vals = values(&params, x, n_max)?;
            let z = jacobi_arg(x);
            let denoms = [alpha + &one];
            check_range(tag, n_max, |n| {
                let lhs = weighted_sum(&vals, n, |k| {
                    Ok(factorial_gr(k) * inverse_weight(&s, n, k, &denoms)?)
                })?;
                let rhs = pochhammer_ratio(&[&s + &one], &denoms, n)? * z.pow(n as u32);
                Ok((lhs, rhs))
            })
        }
        (I555, FamilySpec::Jacobi { alpha, .. }) => {
            let vals = values(&params, x, n_max)?;
            let z = jacobi_arg(x);
            let denoms = [alpha + &one];
            check_range(tag, n_max, |n| {
                let lhs = weighted_sum(&vals, n, |k| Ok(factorial_gr(k) * limit_weight(n, k, &denoms)?))?;
                let p = pochhammer_ratio(&[], &denoms, n)?;
                Ok((lhs, (factorial_gr(n) * p * z.pow(n as u32) + &one) * half()))
            })
        }
        (JacobiReflection, FamilySpec::Jacobi { alpha, beta }) => {
            let swapped = FamilySpec::Jacobi { alpha: beta.clone(), beta: alpha.clone() };
            check_range(tag, n_max, |n| {
                let lhs = eval_poly(&params, n, x)?;
                Ok((lhs, sign(n) * eval_poly(&swapped, n, &-x)?))
            })
        }
        (I5610, FamilySpec::Gegenbauer { lambda }) => {
            let two_lambda = lambda * &int(2);
            if two_lambda.is_nonpositive_integer() {
                return Err(Error::invalid(format!("2*lambda = {two_lambda} must not be a nonpositive integer")));
            }
            let vals = values(&params, x, n_max)?;
            let z = jacobi_arg(x);
            check_range(tag, n_max, |n| {
                let lhs = weighted_sum(&vals, n, |k| {
                    pochhammer_ratio(
                        &[lambda + &one, neg(n)],
                        &[lambda.clone(), &(&two_lambda + &one) + &int(n)],
                        k,
                    )
                })?;
                let rhs = pochhammer_ratio(&[&two_lambda + &one], &[lambda + &half()], n)? * z.pow(n as u32);
                Ok((lhs, rhs))
            })
        }
        (I5710, FamilySpec::ChebyshevT) => {
            let vals = values(&params, x, n_max)?;
            let z = jacobi_arg(x);
            check_range(tag, n_max, |n| {
                let lhs = weighted_sum(&vals, n, |k| limit_weight(n, k, &[]))?;
                let h = pochhammer(&half(), n);
                let rhs = (factorial_gr(n) * z.pow(n as u32) + &h) / (int(2) * h);
                Ok((lhs, rhs))
            })
        }
        (I5810, FamilySpec::ChebyshevU) => {
            let vals = values(&params, x, n_max)?;
            let z = jacobi_arg(x);
            check_range(tag, n_max, |n| {
                // U_k/(k+1) is L_2 of z^k/(k! (3/2)_k), so the inverse weight
                // carries (1+a+n)_k = (3+n)_k
                let lhs = weighted_sum(&vals, n, |k| {
                    pochhammer_ratio(&[int(2), neg(n)], &[one.clone(), int(n + 3)], k)
                })?;
                let rhs = pochhammer_ratio(&[int(3)], &[Gr::ratio(3, 2)], n)? * z.pow(n as u32);
                Ok((lhs, rhs))
            })
        }
        (I5910, FamilySpec::Legendre) => {
            let vals = values(&params, x, n_max)?;
            let z = jacobi_arg(x);
            check_range(tag, n_max, |n| {
                let lhs = weighted_sum(&vals, n, |k| {
                    pochhammer_ratio(&[Gr::ratio(3, 2), neg(n)], &[half(), int(n + 2)], k)
                })?;
                Ok((lhs, int(n + 1) * z.pow(n as u32)))
            })
        }
        _ => unreachable!("family checked above"),
    }
}

fn require_positive_shift(v: &Gr, what: &str) -> Result<()> {
    let shifted = v + &Gr::one();
    if shifted.is_nonpositive_integer() {
        return Err(Error::invalid(format!("{what} = {shifted} must not be a nonpositive integer")));
    }
    Ok(())
}

/// Applies the parameter constraint an identity is stated under.
fn constrain(id: IdentityId, params: &FamilySpec) -> FamilySpec {
    use IdentityId::*;
    let one = Gr::one();
    match (id, params.clone()) {
        (I515, FamilySpec::Wilson { a, b, c, .. }) => {
            let d = &(&(&one - &a) - &b) - &c;
            FamilySpec::Wilson { a, b, c, d }
        }
        (I535, FamilySpec::ContinuousHahn { a, b, c, .. }) => {
            let d = &(&(&one - &a) - &b) - &c;
            FamilySpec::ContinuousHahn { a, b, c, d }
        }
        (I525, FamilySpec::Racah { alpha, gamma, delta, .. }) => {
            let beta = -(&alpha + &one);
            FamilySpec::Racah { alpha, beta, gamma, delta }
        }
        (I545, FamilySpec::Hahn { alpha, big_n, .. }) => {
            let beta = -(&alpha + &one);
            FamilySpec::Hahn { alpha, beta, big_n }
        }
        (I555, FamilySpec::Jacobi { alpha, .. }) => {
            let beta = -(&alpha + &one);
            FamilySpec::Jacobi { alpha, beta }
        }
        (_, p) => p,
    }
}

/// The parameters [`verify_identity`] actually evaluates at, after applying
/// the identity's constraint.
pub fn effective_params(id: IdentityId, params: &FamilySpec) -> FamilySpec {
    constrain(id, params)
}

/// With real `a, b, c, d, x` every Wilson value must be real.
fn wilson_real_check(
    tag: &str,
    n_max: usize,
    params: &[&Gr],
    x: &Gr,
    vals: &[Gr],
) -> Option<CheckReport> {
    let owned: Vec<Gr> = params.iter().map(|p| (*p).clone()).collect();
    if !is_real_point(&owned, x) {
        return None;
    }
    vals.iter().enumerate().find(|(_, v)| !v.is_real()).map(|(n, v)| {
        CheckReport::fail(tag, n_max, Counterexample { n, lhs: v.clone(), rhs: Gr::real(v.re.clone()) })
            .with_note("Wilson value with real parameters has a nonzero imaginary part")
    })
}

/// The eight symmetries `p_n(x;a,b,c,d) = (−1)^{jn} p_n((−1)^j x; x1,x2,x3,x4)`:
/// `j = 0` with `{x1,x2} = {a,b}`, `{x3,x4} = {c,d}`; `j = 1` with
/// `{x1,x2} = {c,d}`, `{x3,x4} = {a,b}`.
pub fn enumerate_538(a: &Gr, b: &Gr, c: &Gr, d: &Gr, x: &Gr, n_max: usize) -> Result<CheckReport> {
    let tag = IdentityId::I538.as_str();
    let base = FamilySpec::ContinuousHahn { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone() };
    let vals = values(&base, x, n_max)?;

    let pairs = |p: &Gr, q: &Gr| [(p.clone(), q.clone()), (q.clone(), p.clone())];
    let mut forms = Vec::with_capacity(8);
    for (x1, x2) in pairs(a, b) {
        for (x3, x4) in pairs(c, d) {
            forms.push((0usize, [x1.clone(), x2.clone(), x3, x4]));
        }
    }
    for (x1, x2) in pairs(c, d) {
        for (x3, x4) in pairs(a, b) {
            forms.push((1usize, [x1.clone(), x2.clone(), x3, x4]));
        }
    }

    for (j, [x1, x2, x3, x4]) in forms {
        let label = format!("j={j}, ({x1}, {x2}, {x3}, {x4})");
        let spec = FamilySpec::ContinuousHahn { a: x1, b: x2, c: x3, d: x4 };
        let point = if j == 0 { x.clone() } else { -x };
        for (n, lhs) in vals.iter().enumerate() {
            let rhs = sign(j * n) * eval_poly(&spec, n, &point)?;
            if *lhs != rhs {
                let cx = Counterexample { n, lhs: lhs.clone(), rhs };
                return Ok(CheckReport::fail(tag, n_max, cx).with_note(label));
            }
        }
    }
    Ok(CheckReport::pass(tag, n_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64, d: i64) -> Gr {
        Gr::ratio(n, d)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_poly(&FamilySpec::Legendre, 1, &g(1, 3)).unwrap(), g(1, 3));
        assert_eq!(eval_poly(&FamilySpec::ChebyshevT, 2, &g(1, 2)).unwrap(), g(-1, 2));
        let jac = FamilySpec::Jacobi { alpha: g(0, 1), beta: g(0, 1) };
        assert_eq!(eval_poly(&jac, 1, &g(2, 5)).unwrap(), g(2, 5));
    }

    #[test]
    fn degree_zero_is_one() {
        let x = g(3, 7);
        let specs = [
            FamilySpec::Wilson { a: g(1, 2), b: g(1, 3), c: g(2, 3), d: g(5, 4) },
            FamilySpec::Racah { alpha: g(-4, 1), beta: g(1, 2), gamma: g(1, 3), delta: g(2, 5) },
            FamilySpec::ContinuousHahn { a: g(1, 2), b: g(1, 3), c: g(2, 3), d: g(5, 4) },
            FamilySpec::Hahn { alpha: g(1, 2), beta: g(3, 2), big_n: 4 },
            FamilySpec::Jacobi { alpha: g(1, 2), beta: g(-1, 3) },
            FamilySpec::Gegenbauer { lambda: g(3, 4) },
            FamilySpec::ChebyshevT,
            FamilySpec::ChebyshevU,
            FamilySpec::Legendre,
        ];
        for s in &specs {
            assert_eq!(eval_poly(s, 0, &x).unwrap(), Gr::one(), "{}", s.name());
        }
    }

    #[test]
    fn family_restrictions() {
        let hahn = FamilySpec::Hahn { alpha: g(1, 2), beta: g(1, 2), big_n: 2 };
        assert_eq!(eval_poly(&hahn, 3, &g(1, 1)), Err(Error::DegreeExceedsN { n: 3, cap: 2 }));
        let racah = FamilySpec::Racah { alpha: g(1, 2), beta: g(1, 2), gamma: g(1, 3), delta: g(1, 5) };
        assert!(matches!(eval_poly(&racah, 1, &g(1, 1)), Err(Error::InvalidParameter(_))));
        let geg = FamilySpec::Gegenbauer { lambda: g(0, 1) };
        assert!(matches!(eval_poly(&geg, 1, &g(1, 1)), Err(Error::InvalidParameter(_))));
        let racah = FamilySpec::Racah { alpha: g(1, 2), beta: g(1, 2), gamma: g(-3, 1), delta: g(1, 5) };
        assert_eq!(racah.degree_cap().unwrap(), Some(2));
        assert_eq!(eval_poly(&racah, 3, &g(1, 1)), Err(Error::DegreeExceedsN { n: 3, cap: 2 }));
    }

    #[test]
    fn wilson_is_real_for_real_parameters() {
        let w = FamilySpec::Wilson { a: g(1, 2), b: g(1, 3), c: g(2, 3), d: g(5, 4) };
        for n in 0..6 {
            assert!(eval_poly(&w, n, &g(2, 7)).unwrap().is_real());
        }
    }

    #[test]
    fn identity_examples() {
        let w = FamilySpec::Wilson { a: g(1, 2), b: g(1, 3), c: g(2, 3), d: g(5, 6) };
        assert!(verify_identity(IdentityId::I510, &w, &g(1, 2), 0).unwrap().passed());

        let r = verify_identity(IdentityId::I5710, &FamilySpec::ChebyshevT, &g(1, 4), 1).unwrap();
        assert!(r.passed());
        let r = verify_identity(IdentityId::I5910, &FamilySpec::Legendre, &g(1, 3), 1).unwrap();
        assert!(r.passed());

        let ch = FamilySpec::ContinuousHahn { a: g(1, 2), b: g(1, 1), c: g(3, 4), d: g(5, 4) };
        assert!(verify_identity(IdentityId::I537, &ch, &g(1, 3), 4).unwrap().passed());
    }

    #[test]
    fn chebyshev_u_weight_needs_three_plus_n() {
        // with (2+n)_k in place of (3+n)_k the n = 1 sides are 1 - 4x/3 and 1 - x
        let x = g(1, 3);
        let u1 = eval_poly(&FamilySpec::ChebyshevU, 1, &x).unwrap();
        let two_plus_n = &Gr::one() + &(pochhammer_ratio(&[int(2), neg(1)], &[int(1), int(3)], 1).unwrap() * &u1);
        let three_plus_n = &Gr::one() + &(pochhammer_ratio(&[int(2), neg(1)], &[int(1), int(4)], 1).unwrap() * &u1);
        let rhs = &Gr::one() - &x;
        assert_ne!(two_plus_n, rhs);
        assert_eq!(three_plus_n, rhs);
        assert!(verify_identity(IdentityId::I5810, &FamilySpec::ChebyshevU, &x, 8).unwrap().passed());
    }

    #[test]
    fn identity_family_mismatch_is_rejected() {
        let err = verify_identity(IdentityId::I510, &FamilySpec::Legendre, &g(1, 2), 2).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn identity_parameter_restrictions() {
        // a+b+c+d = 0
        let w = FamilySpec::Wilson { a: g(1, 2), b: g(-1, 2), c: g(1, 3), d: g(-1, 3) };
        assert!(verify_identity(IdentityId::I510, &w, &g(1, 2), 2).is_err());
        let hahn = FamilySpec::Hahn { alpha: g(1, 2), beta: g(1, 3), big_n: 3 };
        assert!(matches!(
            verify_identity(IdentityId::I540, &hahn, &g(1, 2), 4),
            Err(Error::DegreeExceedsN { .. })
        ));
    }

    #[test]
    fn enumerate_538_symmetric_point() {
        let h = g(1, 2);
        assert!(enumerate_538(&h, &h, &h, &h, &g(0, 1), 3).unwrap().passed());
        assert!(enumerate_538(&g(1, 3), &g(2, 5), &g(3, 7), &g(1, 9), &g(2, 7), 0).unwrap().passed());
    }

    #[test]
    fn family_json() {
        let s: FamilySpec =
            serde_json::from_str(r#"{"family": "wilson", "params": {"a": "1/2", "b": "1", "c": "1/3", "d": "2"}}"#)
                .unwrap();
        assert_eq!(s.name(), "wilson");
        let s: FamilySpec = serde_json::from_str(r#"{"family": "hahn", "params": {"alpha": "1/2", "beta": "1", "N": 4}}"#)
            .unwrap();
        assert_eq!(s.degree_cap().unwrap(), Some(4));
        let s: FamilySpec = serde_json::from_str(r#"{"family": "legendre"}"#).unwrap();
        assert_eq!(s, FamilySpec::Legendre);
    }

    #[test]
    fn identity_tags_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        }
        assert!("I999".parse::<IdentityId>().is_err());
    }
}
