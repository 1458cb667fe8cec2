//! Terminating generalized hypergeometric series `pFq(a; b; z)`.
//!
//! Only terminating series are evaluated: some numerator parameter must be a
//! nonpositive integer `-n`, and the sum then stops after `n + 1` terms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{pochhammer_ratio, GaussianRational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypSeriesSpec {
    #[serde(rename = "num")]
    pub numerator_params: Vec<GaussianRational>,
    #[serde(rename = "den")]
    pub denominator_params: Vec<GaussianRational>,
    #[serde(rename = "z")]
    pub argument: GaussianRational,
}

impl HypSeriesSpec {
    pub fn new(
        numerator_params: Vec<GaussianRational>,
        denominator_params: Vec<GaussianRational>,
        argument: GaussianRational,
    ) -> Self {
        HypSeriesSpec { numerator_params, denominator_params, argument }
    }

    /// A unit-argument series `pFq(1)`.
    pub fn unit(numer: Vec<GaussianRational>, denom: Vec<GaussianRational>) -> Self {
        Self::new(numer, denom, GaussianRational::one())
    }

    pub fn p(&self) -> usize {
        self.numerator_params.len()
    }

    pub fn q(&self) -> usize {
        self.denominator_params.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesClass {
    pub terminating: bool,
    pub truncation_index: Option<u64>,
    pub well_poised: bool,
    pub very_well_poised: bool,
    pub saalschutzian: bool,
    pub unit_argument: bool,
}

/// Structural classification of a series. Total: never fails.
pub fn classify(spec: &HypSeriesSpec) -> SeriesClass {
    let truncation_index = spec
        .numerator_params
        .iter()
        .filter_map(GaussianRational::as_nonpositive_integer)
        .min();
    let terminating = truncation_index.is_some();
    let unit_argument = spec.argument.is_one();

    let a = &spec.numerator_params;
    let b = &spec.denominator_params;
    let well_poised = a.len() == b.len() + 1 && {
        let pivot = &GaussianRational::one() + &a[0];
        b.iter().zip(&a[1..]).all(|(bi, ai)| bi + ai == pivot)
    };
    let very_well_poised = well_poised
        && a.len() >= 2
        && a[1] == &GaussianRational::one() + &(&a[0] * &GaussianRational::ratio(1, 2));

    let excess: GaussianRational =
        b.iter().sum::<GaussianRational>() - a.iter().sum::<GaussianRational>();
    let saalschutzian = terminating && unit_argument && excess.is_one();

    SeriesClass {
        terminating,
        truncation_index,
        well_poised,
        very_well_poised,
        saalschutzian,
        unit_argument,
    }
}

/// Exact value of a terminating series.
///
/// Terms are built from the previous one by the term ratio
/// `Π(a_i+k)·z / ((k+1)·Π(b_j+k))`, so the cost is linear in the
/// truncation index.
pub fn eval_terminating(spec: &HypSeriesSpec) -> Result<GaussianRational> {
    let n = classify(spec).truncation_index.ok_or(Error::NonTerminating)? as usize;

    for b in &spec.denominator_params {
        if let Some(m) = b.as_nonpositive_integer() {
            if (m as usize) < n {
                return Err(Error::pole(format!(
                    "denominator parameter {b} lies in {{-{}, ..., 0}}",
                    n - 1
                )));
            }
        }
    }

    let mut term = GaussianRational::one();
    let mut sum = GaussianRational::one();
    for k in 0..n {
        let shift = GaussianRational::from(k as i64);
        let mut top = spec.argument.clone();
        for a in &spec.numerator_params {
            top *= a + &shift;
        }
        let mut bottom = GaussianRational::from(k as i64 + 1);
        for b in &spec.denominator_params {
            bottom *= b + &shift;
        }
        term = (&term * &top).checked_div(&bottom)?;
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    Ok(sum)
}

/// [`eval_terminating`] for a series that stands for a sum up to `degree`:
/// additionally rejects denominator parameters in `{−degree+1, ..., 0}`
/// even when another numerator parameter truncates the sum earlier.
pub fn eval_nominal(spec: &HypSeriesSpec, degree: usize) -> Result<GaussianRational> {
    for b in &spec.denominator_params {
        if let Some(m) = b.as_nonpositive_integer() {
            if (m as usize) < degree {
                return Err(Error::pole(format!(
                    "denominator parameter {b} lies in {{-{}, ..., 0}}",
                    degree - 1
                )));
            }
        }
    }
    eval_terminating(spec)
}

/// Dixon closed form for the terminating well-poised
/// `3F2(a, b, −n; 1+a−b, 1+a+n; 1)`.
pub fn dixon_rhs(a: &GaussianRational, b: &GaussianRational, n: usize) -> Result<GaussianRational> {
    let one = GaussianRational::one();
    let half_a = a * &GaussianRational::ratio(1, 2);
    let numer = [&one + a, &(&one + &half_a) - b];
    let denom = [&one + &half_a, &(&one + a) - b];
    pochhammer_ratio(&numer, &denom, n)
}

/// The matching left-hand side of [`dixon_rhs`].
pub fn dixon_lhs_spec(a: &GaussianRational, b: &GaussianRational, n: usize) -> HypSeriesSpec {
    let one = GaussianRational::one();
    let nn = GaussianRational::from(n as i64);
    HypSeriesSpec::unit(
        vec![a.clone(), b.clone(), -&nn],
        vec![&(&one + a) - b, &(&one + a) + &nn],
    )
}

/// Chu–Vandermonde closed form `(b−a)_n / (b)_n` of `2F1(−n, a; b; 1)`.
pub fn chu_vandermonde_rhs(
    a: &GaussianRational,
    b: &GaussianRational,
    n: usize,
) -> Result<GaussianRational> {
    pochhammer_ratio(&[b - a], std::slice::from_ref(b), n)
}

pub fn chu_vandermonde_lhs_spec(a: &GaussianRational, b: &GaussianRational, n: usize) -> HypSeriesSpec {
    HypSeriesSpec::unit(vec![GaussianRational::from(-(n as i64)), a.clone()], vec![b.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn classify_dixon_instance() {
        let spec = dixon_lhs_spec(&g(1, 1), &g(1, 2), 1);
        assert_eq!(spec.denominator_params, vec![g(3, 2), g(3, 1)]);
        let c = classify(&spec);
        assert!(c.terminating);
        assert_eq!(c.truncation_index, Some(1));
        assert!(c.well_poised);
        assert!(c.unit_argument);
    }

    #[test]
    fn classify_non_terminating() {
        let spec = HypSeriesSpec::unit(vec![g(1, 1), g(2, 1)], vec![g(3, 1)]);
        let c = classify(&spec);
        assert!(!c.terminating);
        assert_eq!(c.truncation_index, None);
        assert_eq!(eval_terminating(&spec), Err(Error::NonTerminating));
    }

    #[test]
    fn truncation_uses_least_absolute_value() {
        let spec = HypSeriesSpec::unit(vec![g(-3, 1), g(-5, 1), g(2, 1)], vec![g(1, 1), g(1, 1)]);
        assert_eq!(classify(&spec).truncation_index, Some(3));
    }

    #[test]
    fn very_well_poised_requires_middle_parameter() {
        // 5F4(a, 1+a/2, b, c, -n; a/2, 1+a-b, 1+a-c, 1+a+n)
        let a = g(3, 1);
        let (b, c) = (g(1, 3), g(1, 5));
        let n = g(2, 1);
        let one = GaussianRational::one();
        let spec = HypSeriesSpec::unit(
            vec![a.clone(), g(5, 2), b.clone(), c.clone(), -&n],
            vec![g(3, 2), &(&one + &a) - &b, &(&one + &a) - &c, &(&one + &a) + &n],
        );
        let cls = classify(&spec);
        assert!(cls.well_poised && cls.very_well_poised);

        let mut off = spec.clone();
        off.numerator_params[1] = g(7, 3);
        off.denominator_params[0] = &(&one + &a) - &g(7, 3);
        let cls = classify(&off);
        assert!(cls.well_poised && !cls.very_well_poised);
    }

    #[test]
    fn saalschutzian_flag() {
        // 3F2(-n, a, b; c, 1+a+b-c-n; 1) is balanced.
        let (a, b, c) = (g(1, 2), g(1, 3), g(5, 4));
        let n = 3;
        let one = GaussianRational::one();
        let d = &(&(&one + &a) + &b) - &c - GaussianRational::from(n);
        let spec = HypSeriesSpec::unit(vec![GaussianRational::from(-n), a, b], vec![c, d]);
        assert!(classify(&spec).saalschutzian);
        let mut z2 = spec.clone();
        z2.argument = g(2, 1);
        assert!(!classify(&z2).saalschutzian);
    }

    #[test]
    fn eval_examples() {
        let spec = HypSeriesSpec::unit(vec![g(-2, 1), g(1, 1)], vec![g(3, 1)]);
        assert_eq!(eval_terminating(&spec).unwrap(), g(1, 2));

        let zero = HypSeriesSpec::new(vec![g(0, 1)], vec![], g(5, 1));
        assert_eq!(eval_terminating(&zero).unwrap(), g(1, 1));

        let spec = HypSeriesSpec::unit(vec![g(1, 1), g(1, 2), g(-1, 1)], vec![g(3, 2), g(3, 1)]);
        assert_eq!(eval_terminating(&spec).unwrap(), g(8, 9));
    }

    #[test]
    fn denominator_pole_is_reported() {
        let spec = HypSeriesSpec::unit(vec![g(-3, 1)], vec![g(-1, 1)]);
        assert!(matches!(eval_terminating(&spec), Err(Error::DenominatorPole(_))));
        // -3 is outside {-2, -1, 0}: allowed.
        let ok = HypSeriesSpec::unit(vec![g(-3, 1)], vec![g(-3, 1)]);
        assert!(eval_terminating(&ok).is_ok());
    }

    #[test]
    fn nominal_degree_poles() {
        // truncates at 1 through the -1, but (-3)_4 = 0
        let spec = HypSeriesSpec::unit(vec![g(-1, 1), g(-4, 1)], vec![g(-3, 1)]);
        assert!(eval_terminating(&spec).is_ok());
        assert!(matches!(eval_nominal(&spec, 4), Err(Error::DenominatorPole(_))));
        assert!(eval_nominal(&spec, 3).is_ok());
    }

    #[test]
    fn dixon_examples() {
        assert_eq!(dixon_rhs(&g(1, 1), &g(1, 2), 1).unwrap(), g(8, 9));
        assert_eq!(dixon_rhs(&g(7, 3), &g(-2, 5), 0).unwrap(), g(1, 1));
        assert_eq!(dixon_rhs(&g(2, 1), &g(1, 1), 2).unwrap(), g(2, 3));
        let lhs = eval_terminating(&dixon_lhs_spec(&g(2, 1), &g(1, 1), 2)).unwrap();
        assert_eq!(lhs, g(2, 3));
        // (1 + a/2)_n vanishes for a = -4, n >= 1
        assert!(matches!(dixon_rhs(&g(-4, 1), &g(1, 3), 2), Err(Error::DenominatorPole(_))));
    }

    #[test]
    fn chu_vandermonde_examples() {
        assert_eq!(chu_vandermonde_rhs(&g(1, 1), &g(3, 1), 2).unwrap(), g(1, 2));
        assert_eq!(chu_vandermonde_rhs(&g(4, 7), &g(2, 9), 0).unwrap(), g(1, 1));
        assert_eq!(chu_vandermonde_rhs(&g(5, 2), &g(5, 2), 3).unwrap(), g(0, 1));
        assert!(matches!(chu_vandermonde_rhs(&g(1, 2), &g(-1, 1), 3), Err(Error::DenominatorPole(_))));
    }

    #[test]
    fn spec_json_shape() {
        let spec: HypSeriesSpec =
            serde_json::from_str(r#"{"num": [["-2","0"], ["1","0"]], "den": [["3","0"]], "z": ["1","0"]}"#)
                .unwrap();
        assert_eq!(eval_terminating(&spec).unwrap(), g(1, 2));
        let back = serde_json::to_string(&spec).unwrap();
        assert_eq!(back, r#"{"num":[["-2","0"],["1","0"]],"den":[["3","0"]],"z":["1","0"]}"#);
    }
}
