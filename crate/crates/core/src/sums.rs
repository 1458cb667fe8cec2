//! Sums of terminating `4F3(1)` and `5F4(1)` series obtained by inverting
//! `L_a` or `L̃_a` on classical well-poised transformations.
//!
//! Each identity `S` comes from a relation `B_n = P_n · I_n` between a
//! "big" series `B_n = Σ_k w(n,k) t_k` (with `w` the forward `L_a` or `L̃_a`
//! kernel and `t_k` a Pochhammer product) and an inner series `I_n`. Applying
//! the inverse kernel to `B` recovers `t`, which after dividing out the
//! kernel's row prefactor is the stated right-hand side.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{pochhammer_ratio, GaussianRational};
use crate::hyper::{eval_nominal, HypSeriesSpec};
use crate::report::{check_range, CheckReport};
use crate::seqtransform::{apply, invert, kernel_for, Sequence, TransformSpec};

type Gr = GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumIdentityId {
    S610,
    S620,
    S630,
    S640,
}

impl SumIdentityId {
    pub const ALL: [SumIdentityId; 4] =
        [SumIdentityId::S610, SumIdentityId::S620, SumIdentityId::S630, SumIdentityId::S640];

    pub fn as_str(self) -> &'static str {
        match self {
            SumIdentityId::S610 => "S610",
            SumIdentityId::S620 => "S620",
            SumIdentityId::S630 => "S630",
            SumIdentityId::S640 => "S640",
        }
    }

    /// Whether the identity takes the fifth parameter `e`.
    pub fn uses_e(self) -> bool {
        self == SumIdentityId::S610
    }
}

impl fmt::Display for SumIdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SumIdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SumIdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_owned()))
    }
}

/// Parameters `a, b, c, d` and, for S610 only, `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumParams {
    pub a: Gr,
    pub b: Gr,
    pub c: Gr,
    pub d: Gr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Gr>,
}

impl SumParams {
    pub fn new(a: Gr, b: Gr, c: Gr, d: Gr) -> Self {
        SumParams { a, b, c, d, e: None }
    }

    pub fn with_e(mut self, e: Gr) -> Self {
        self.e = Some(e);
        self
    }

    pub fn named(&self) -> Vec<(&'static str, Gr)> {
        let mut out =
            vec![("a", self.a.clone()), ("b", self.b.clone()), ("c", self.c.clone()), ("d", self.d.clone())];
        if let Some(e) = &self.e {
            out.push(("e", e.clone()));
        }
        out
    }
}

fn int(v: usize) -> Gr {
    Gr::from(v as i64)
}

fn neg(v: usize) -> Gr {
    Gr::from(-(v as i64))
}

fn half(v: &Gr) -> Gr {
    v * &Gr::ratio(1, 2)
}

/// Everything the verifier and the cross-checks need for one identity.
struct Parts<'p> {
    id: SumIdentityId,
    p: &'p SumParams,
    e: Gr,
}

impl<'p> Parts<'p> {
    fn new(id: SumIdentityId, p: &'p SumParams) -> Result<Self> {
        if p.a.is_nonpositive_integer() {
            return Err(Error::invalid(format!("a = {} must not be a nonpositive integer", p.a)));
        }
        let e = match (id.uses_e(), &p.e) {
            (true, Some(e)) => e.clone(),
            (true, None) => return Err(Error::invalid("S610 needs the parameter e")),
            (false, _) => Gr::zero(),
        };
        Ok(Parts { id, p, e })
    }

    /// Inner series at index `k`.
    fn inner(&self, k: usize) -> Result<Gr> {
        let SumParams { a, b, c, d, .. } = self.p;
        let e = &self.e;
        let one = Gr::one();
        let opa = &one + a;
        let spec = match self.id {
            SumIdentityId::S610 => HypSeriesSpec::unit(
                vec![&(&opa - b) - c, d.clone(), e.clone(), neg(k)],
                vec![&opa - b, &opa - c, &(d + e) - &(a + &int(k))],
            ),
            SumIdentityId::S620 => {
                let two_b = b * &int(2);
                HypSeriesSpec::unit(
                    vec![neg(k), two_b.clone(), d - c, &(&one + &two_b) - d],
                    vec![&(&one + &two_b) - &(a + &int(k)), d.clone(), &(&(&one + &two_b) + c) - d],
                )
            }
            SumIdentityId::S630 | SumIdentityId::S640 => {
                let amb = a - b;
                let first = if self.id == SumIdentityId::S630 { &one + &half(&amb) } else { half(&amb) };
                let first_den = if self.id == SumIdentityId::S630 { &one + &half(a) } else { half(a) };
                HypSeriesSpec::unit(
                    vec![first, half(&(&one + &amb)), c.clone(), d.clone(), neg(k)],
                    vec![first_den, &one + &amb, half(&opa), &(c + d) - &(a + &int(k))],
                )
            }
        };
        eval_nominal(&spec, k)
    }

    /// Outer weight multiplying the inner series.
    fn weight(&self, n: usize, k: usize) -> Result<Gr> {
        let SumParams { a, b, c, d, .. } = self.p;
        let e = &self.e;
        let opa = &Gr::one() + a;
        match self.id {
            SumIdentityId::S610 => pochhammer_ratio(
                &[neg(n), &int(n) + a, &(&opa - d) - e],
                &[Gr::one(), &opa - d, &opa - e],
                k,
            ),
            SumIdentityId::S620 => pochhammer_ratio(
                &[neg(n), &Gr::one() + &half(a), a - &(b * &int(2))],
                &[Gr::one(), &opa + &int(n), half(a)],
                k,
            ),
            SumIdentityId::S630 | SumIdentityId::S640 => pochhammer_ratio(
                &[neg(n), &int(n) + a, &(&opa - c) - d],
                &[Gr::one(), &opa - c, &opa - d],
                k,
            ),
        }
    }

    fn lhs(&self, n: usize, inner: &[Gr]) -> Result<Gr> {
        let mut acc = Gr::zero();
        for (k, v) in inner.iter().enumerate().take(n + 1) {
            acc += self.weight(n, k)? * v;
        }
        Ok(acc)
    }

    fn rhs(&self, n: usize) -> Result<Gr> {
        let SumParams { a, b, c, d, .. } = self.p;
        let e = &self.e;
        let one = Gr::one();
        let opa = &one + a;
        match self.id {
            SumIdentityId::S610 => pochhammer_ratio(
                &[b.clone(), c.clone(), d.clone(), e.clone()],
                &[&opa - b, &opa - c, &opa - d, &opa - e],
                n,
            ),
            SumIdentityId::S620 => pochhammer_ratio(
                &[opa.clone(), b.clone(), b + &Gr::ratio(1, 2), c.clone()],
                &[half(a), half(&opa), d.clone(), &(&(&one + &(b * &int(2))) + c) - d],
                n,
            ),
            SumIdentityId::S630 => pochhammer_ratio(
                &[b.clone(), half(a), c.clone(), d.clone()],
                &[a.clone(), &one + &half(a), &opa - c, &opa - d],
                n,
            ),
            SumIdentityId::S640 => {
                pochhammer_ratio(&[b.clone(), c.clone(), d.clone()], &[a.clone(), &opa - c, &opa - d], n)
            }
        }
    }

    /// The big series `B_n` evaluated directly.
    fn big(&self, n: usize) -> Result<Gr> {
        let SumParams { a, b, c, d, .. } = self.p;
        let e = &self.e;
        let one = Gr::one();
        let opa = &one + a;
        let spec = match self.id {
            SumIdentityId::S610 => HypSeriesSpec::unit(
                vec![a.clone(), &one + &half(a), b.clone(), c.clone(), d.clone(), e.clone(), neg(n)],
                vec![half(a), &opa - b, &opa - c, &opa - d, &opa - e, &opa + &int(n)],
            ),
            SumIdentityId::S620 => HypSeriesSpec::unit(
                vec![neg(n), &int(n) + a, b.clone(), b + &Gr::ratio(1, 2), c.clone()],
                vec![half(a), half(&opa), d.clone(), &(&(&one + &(b * &int(2))) + c) - d],
            ),
            SumIdentityId::S630 => HypSeriesSpec::unit(
                vec![b.clone(), c.clone(), d.clone(), neg(n)],
                vec![&opa - c, &opa - d, &opa + &int(n)],
            ),
            SumIdentityId::S640 => HypSeriesSpec::unit(
                vec![b.clone(), &one + &half(a), c.clone(), d.clone(), neg(n)],
                vec![half(a), &opa - c, &opa - d, &opa + &int(n)],
            ),
        };
        eval_nominal(&spec, n)
    }

    /// Prefactor `P_n` in `B_n = P_n · I_n`.
    fn prefactor(&self, n: usize) -> Result<Gr> {
        let SumParams { a, b, c, d, .. } = self.p;
        let e = &self.e;
        let opa = &Gr::one() + a;
        match self.id {
            SumIdentityId::S610 => {
                pochhammer_ratio(&[opa.clone(), &(&opa - d) - e], &[&opa - d, &opa - e], n)
            }
            SumIdentityId::S620 => pochhammer_ratio(&[a - &(b * &int(2))], std::slice::from_ref(a), n),
            SumIdentityId::S630 | SumIdentityId::S640 => {
                pochhammer_ratio(&[opa.clone(), &(&opa - c) - d], &[&opa - c, &opa - d], n)
            }
        }
    }

    /// Summand `t_n` of the big series as a sequence in `n`.
    fn t(&self, n: usize) -> Result<Gr> {
        let SumParams { a, b, c, d, .. } = self.p;
        let e = &self.e;
        let one = Gr::one();
        let opa = &one + a;
        let (numer, denom) = match self.id {
            SumIdentityId::S610 => (
                vec![a.clone(), &one + &half(a), b.clone(), c.clone(), d.clone(), e.clone()],
                vec![one.clone(), half(a), &opa - b, &opa - c, &opa - d, &opa - e],
            ),
            SumIdentityId::S620 => (
                vec![b.clone(), b + &Gr::ratio(1, 2), c.clone()],
                vec![one.clone(), half(a), half(&opa), d.clone(), &(&(&one + &(b * &int(2))) + c) - d],
            ),
            SumIdentityId::S630 => {
                (vec![b.clone(), c.clone(), d.clone()], vec![one.clone(), &opa - c, &opa - d])
            }
            SumIdentityId::S640 => (
                vec![b.clone(), &one + &half(a), c.clone(), d.clone()],
                vec![one.clone(), half(a), &opa - c, &opa - d],
            ),
        };
        pochhammer_ratio(&numer, &denom, n)
    }

    fn forward_kernel(&self) -> TransformSpec {
        match self.id {
            SumIdentityId::S620 => TransformSpec::L { a: self.p.a.clone() },
            _ => TransformSpec::LTilde { a: self.p.a.clone() },
        }
    }
}

/// Checks the summation identity for every `0 <= n <= n_max`.
pub fn verify_sum(id: SumIdentityId, params: &SumParams, n_max: usize) -> Result<CheckReport> {
    let parts = Parts::new(id, params)?;
    let inner: Vec<Gr> = (0..=n_max).map(|k| parts.inner(k)).collect::<Result<_>>()?;
    check_range(id.as_str(), n_max, |n| Ok((parts.lhs(n, &inner)?, parts.rhs(n)?)))
}

/// Re-derives the identity inside the engine for `0 <= n <= n_max`:
///
/// 1. the transformation `B_n = P_n · I_n` with `B_n` summed directly;
/// 2. the forward `L_a` / `L̃_a` kernel maps `t` to `B`;
/// 3. the closed-form inverse kernel maps `B` back to `t`.
pub fn rederive_sum(id: SumIdentityId, params: &SumParams, n_max: usize) -> Result<CheckReport> {
    let parts = Parts::new(id, params)?;
    let tag = format!("{id}-rederive");
    let big: Vec<Gr> = (0..=n_max).map(|n| parts.big(n)).collect::<Result<_>>()?;
    let t: Vec<Gr> = (0..=n_max).map(|n| parts.t(n)).collect::<Result<_>>()?;

    let step1 = check_range(&tag, n_max, |n| Ok((big[n].clone(), parts.prefactor(n)? * parts.inner(n)?)))?;
    if !step1.passed() {
        return Ok(step1.with_note("big series differs from prefactor times inner series"));
    }

    let forward = kernel_for(&parts.forward_kernel())?;
    let t_seq = Sequence::new(t.clone())?;
    let mapped = apply(&forward, &t_seq);
    let step2 = check_range(&tag, n_max, |n| Ok((mapped[n].clone(), big[n].clone())))?;
    if !step2.passed() {
        return Ok(step2.with_note("forward kernel applied to t differs from the big series"));
    }

    let inverse = kernel_for(&invert(&parts.forward_kernel())?)?;
    let recovered = apply(&inverse, &Sequence::new(big)?);
    let step3 = check_range(&tag, n_max, |n| Ok((recovered[n].clone(), t[n].clone())))?;
    if !step3.passed() {
        return Ok(step3.with_note("inverse kernel applied to the big series differs from t"));
    }
    Ok(step3)
}

/// Which reading of the S630 right-hand side factor matches the sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S630Resolution {
    /// `(a/2)_n` reproduces the left-hand side for every checked `n`.
    pub indexed_matches: bool,
    /// The constant `a/2` reproduces the left-hand side for every checked `n`.
    pub constant_matches: bool,
}

/// Compares both readings of the S630 factor against the left-hand side
/// computed with the slow oracle.
pub fn resolve_s630_factor(params: &SumParams, n_max: usize) -> Result<S630Resolution> {
    use crate::oracle;
    Parts::new(SumIdentityId::S630, params)?;
    let SumParams { a, b, c, d, .. } = params;
    let one = Gr::one();
    let opa = &one + a;
    let amb = a - b;

    let mut indexed_matches = true;
    let mut constant_matches = true;
    for n in 0..=n_max {
        let mut lhs = Gr::zero();
        for k in 0..=n {
            let w = oracle::rising(&neg(n), k) * oracle::rising(&(&int(n) + a), k) * oracle::rising(&(&(&opa - c) - d), k)
                / (oracle::fact(k) * oracle::rising(&(&opa - c), k) * oracle::rising(&(&opa - d), k));
            let inner = oracle::pfq_terminating(
                &[&one + &half(&amb), half(&(&one + &amb)), c.clone(), d.clone(), neg(k)],
                &[&one + &half(a), &one + &amb, half(&opa), &(c + d) - &(a + &int(k))],
                &one,
            )?;
            lhs += w * inner;
        }
        let rest = oracle::rising(b, n) * oracle::rising(c, n) * oracle::rising(d, n)
            / (oracle::rising(a, n)
                * oracle::rising(&(&one + &half(a)), n)
                * oracle::rising(&(&opa - c), n)
                * oracle::rising(&(&opa - d), n));
        indexed_matches &= lhs == &rest * &oracle::rising(&half(a), n);
        constant_matches &= lhs == &rest * &half(a);
    }
    Ok(S630Resolution { indexed_matches, constant_matches })
}

/// Closed-form right-hand side, exposed for reporting.
pub fn sum_rhs(id: SumIdentityId, params: &SumParams, n: usize) -> Result<Gr> {
    Parts::new(id, params)?.rhs(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn g(n: i64, d: i64) -> Gr {
        Gr::ratio(n, d)
    }

    fn s610_params() -> SumParams {
        SumParams::new(g(7, 3), g(1, 5), g(2, 7), g(3, 11)).with_e(g(5, 13))
    }

    #[test]
    fn examples() {
        assert!(verify_sum(SumIdentityId::S610, &s610_params(), 0).unwrap().passed());
        let p640 = SumParams::new(g(3, 1), g(1, 2), g(1, 3), g(1, 4));
        assert!(verify_sum(SumIdentityId::S640, &p640, 3).unwrap().passed());
        let p620 = SumParams::new(g(5, 2), g(1, 3), g(1, 5), g(3, 2));
        assert!(verify_sum(SumIdentityId::S620, &p620, 3).unwrap().passed());
    }

    #[test]
    fn all_identities_hold_and_rederive() {
        let p = SumParams::new(g(7, 3), g(1, 5), g(2, 7), g(3, 11)).with_e(g(5, 13));
        for id in SumIdentityId::ALL {
            let r = verify_sum(id, &p, 5).unwrap();
            assert!(r.passed(), "{id}: {r:?}");
            let r = rederive_sum(id, &p, 5).unwrap();
            assert!(r.passed(), "{id}: {r:?}");
        }
    }

    #[test]
    fn s630_reading() {
        let p = SumParams::new(g(7, 3), g(1, 5), g(2, 7), g(3, 11));
        let res = resolve_s630_factor(&p, 4).unwrap();
        assert!(res.indexed_matches);
        assert!(!res.constant_matches);
    }

    #[test]
    fn lhs_matches_brute_force_double_sum() {
        // S640 with everything spelled out through the oracle
        let (a, b, c, d) = (g(3, 1), g(1, 2), g(1, 3), g(1, 4));
        let one = Gr::one();
        let opa = &one + &a;
        for n in 0..=3usize {
            let mut lhs = Gr::zero();
            for k in 0..=n {
                let w = oracle::rising(&neg(n), k) * oracle::rising(&(&int(n) + &a), k)
                    * oracle::rising(&(&(&opa - &c) - &d), k)
                    / (oracle::fact(k) * oracle::rising(&(&opa - &c), k) * oracle::rising(&(&opa - &d), k));
                let inner = oracle::pfq_terminating(
                    &[half(&(&a - &b)), half(&(&one + &(&a - &b))), c.clone(), d.clone(), neg(k)],
                    &[half(&a), &one + &(&a - &b), half(&opa), &(&c + &d) - &(&a + &int(k))],
                    &one,
                )
                .unwrap();
                lhs += w * inner;
            }
            let p = SumParams::new(a.clone(), b.clone(), c.clone(), d.clone());
            assert_eq!(lhs, sum_rhs(SumIdentityId::S640, &p, n).unwrap());
        }
    }

    #[test]
    fn rejects_bad_a() {
        let p = SumParams::new(g(-2, 1), g(1, 5), g(2, 7), g(3, 11));
        assert!(matches!(verify_sum(SumIdentityId::S640, &p, 2), Err(Error::InvalidParameter(_))));
        let p = SumParams::new(g(1, 2), g(1, 5), g(2, 7), g(3, 11));
        assert!(matches!(verify_sum(SumIdentityId::S610, &p, 2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn early_truncation_with_hidden_pole_is_rejected() {
        // 1+(a-b)/2 = -1 truncates the inner series early while 1+a-b = -3
        // would vanish in (1+a-b)_k at k = 4
        let p = SumParams::new(g(1, 1), g(5, 1), g(1, 1), g(-19, 11));
        assert!(matches!(verify_sum(SumIdentityId::S630, &p, 5), Err(Error::DenominatorPole(_))));
        assert!(verify_sum(SumIdentityId::S630, &p, 3).unwrap().passed());
    }

    #[test]
    fn inner_pole_is_reported() {
        // d + e - a - k = 0 at k = 1
        let p = SumParams::new(g(1, 2), g(1, 5), g(2, 7), g(1, 1)).with_e(g(1, 2));
        assert!(matches!(verify_sum(SumIdentityId::S610, &p, 3), Err(Error::DenominatorPole(_))));
    }
}
