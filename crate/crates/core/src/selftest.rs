//! The seven acceptance criteria as library calls, shared by the
//! `acceptance` test target and the `selftest` CLI command.

use std::fmt;
use std::time::{Duration, Instant};

use crate::campaign::{run_campaign, CampaignConfig, Mutation, RoundtripFamily, Tag};
use crate::exactnum::GaussianRational;
use crate::orthopoly::IdentityId;
use crate::report::{Status, VerificationReport};
use crate::sums::{resolve_s630_factor, SumIdentityId, SumParams};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub number: u8,
    pub name: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub budget: Duration,
    /// The failing campaign tag, if any.
    pub failing_tag: Option<String>,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} [{}] {}: {} ({} ms, budget {} s)",
            self.number,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail,
            self.elapsed.as_millis(),
            self.budget.as_secs()
        )
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SelftestOptions {
    pub seed: u64,
    /// Injected kernel corruption, for checking that criterion 1 can fail.
    pub mutation: Option<Mutation>,
}

/// Runs campaigns in order and stops at the first one that does not pass.
fn run_suite(
    number: u8,
    name: &'static str,
    budget_secs: u64,
    configs: impl IntoIterator<Item = CampaignConfig>,
    pre: impl FnOnce() -> Result<String, String>,
) -> CriterionResult {
    let start = Instant::now();
    let budget = Duration::from_secs(budget_secs);
    let finish = |passed: bool, failing_tag: Option<String>, detail: String| {
        let elapsed = start.elapsed();
        let over = elapsed > budget;
        let detail = if passed && over { format!("{detail}; exceeded time budget") } else { detail };
        CriterionResult { number, name, passed: passed && !over, elapsed, budget, failing_tag, detail }
    };

    let mut notes = match pre() {
        Ok(note) if note.is_empty() => Vec::new(),
        Ok(note) => vec![note],
        Err(reason) => return finish(false, None, reason),
    };
    let mut count = 0usize;
    for cfg in configs {
        let report = match run_campaign(&cfg) {
            Ok(r) => r,
            Err(e) => return finish(false, Some(cfg.tag.name().to_owned()), e.to_string()),
        };
        if !report.passed() {
            return finish(false, Some(report.identity.clone()), describe_failure(&report));
        }
        count += cfg.trials;
    }
    notes.insert(0, format!("{count} trials passed"));
    finish(true, None, notes.join("; "))
}

fn describe_failure(r: &VerificationReport) -> String {
    let what = match r.status {
        Status::Fail => "failed",
        Status::InvalidParameter => "ran out of valid parameter draws",
        Status::Pass => "passed",
    };
    let mut out = format!("{} {what}", r.identity);
    if let Some(t) = r.failing_trial {
        out.push_str(&format!(" at trial {t}"));
    }
    if let Some(cx) = &r.counterexample {
        out.push_str(&format!(", n = {}: {} != {}", cx.n, cx.lhs, cx.rhs));
    }
    if !r.notes.is_empty() {
        out.push_str(&format!(" ({})", r.notes.join("; ")));
    }
    out
}

fn cfg(tag: Tag, trials: usize, n_max: usize, opts: &SelftestOptions) -> CampaignConfig {
    let c = CampaignConfig::new(tag, trials, n_max, opts.seed);
    match opts.mutation {
        Some(m) => c.with_mutation(m),
        None => c,
    }
}

const ROUNDTRIP_FAMILIES: [RoundtripFamily; 4] =
    [RoundtripFamily::L, RoundtripFamily::LTilde, RoundtripFamily::Lab, RoundtripFamily::Binomial];

/// Apply-then-invert on 200 draws per family, prefix length 16.
pub fn criterion1(opts: &SelftestOptions) -> CriterionResult {
    let configs = ROUNDTRIP_FAMILIES.map(|f| cfg(Tag::Roundtrip(f), 200, 15, opts));
    run_suite(1, "inverse roundtrips", 30, configs, || Ok(String::new()))
}

/// Dixon (n <= 10) and Chu-Vandermonde (n <= 12), 200 draws each.
pub fn criterion2(opts: &SelftestOptions) -> CriterionResult {
    let configs = [cfg(Tag::Dixon, 200, 10, opts), cfg(Tag::ChuVandermonde, 200, 12, opts)];
    run_suite(2, "Dixon and Chu-Vandermonde", 10, configs, || Ok(String::new()))
}

/// The binomial-transform relation and its specializations, 200 draws each,
/// n <= 10. The `eq470` campaign cycles r through 0, 1, 2 and also checks
/// the unsigned form.
pub fn criterion3(opts: &SelftestOptions) -> CriterionResult {
    let tags = [Tag::Theorem41, Tag::Eq448, Tag::Eq450, Tag::Eq460, Tag::Eq470];
    let configs = tags.map(|t| cfg(t, 200, 10, opts));
    run_suite(3, "binomial-transform relations", 20, configs, || Ok(String::new()))
}

/// All polynomial identities, 50 draws each, n_max = 6 (capped at N).
pub fn criterion4(opts: &SelftestOptions) -> CriterionResult {
    let configs: Vec<_> = IdentityId::ALL.iter().map(|&id| cfg(Tag::Poly(id), 50, 6, opts)).collect();
    run_suite(4, "orthogonal polynomial identities", 60, configs, || Ok(String::new()))
}

/// The four summation formulas with re-derivation, 50 draws each, n_max = 5,
/// after the S630 factor reading is settled by the oracle.
pub fn criterion5(opts: &SelftestOptions) -> CriterionResult {
    let configs: Vec<_> = SumIdentityId::ALL.iter().map(|&id| cfg(Tag::Sum(id), 50, 5, opts)).collect();
    let resolve = || {
        let g = GaussianRational::ratio;
        let p = SumParams::new(g(7, 3), g(1, 5), g(2, 7), g(3, 11));
        match resolve_s630_factor(&p, 5) {
            Ok(r) if r.indexed_matches && !r.constant_matches => Ok("S630 factor confirmed as (a/2)_n".to_owned()),
            Ok(r) => Err(format!("S630 factor unresolved: {r:?}")),
            Err(e) => Err(format!("S630 resolution failed: {e}")),
        }
    };
    run_suite(5, "summation formulas", 60, configs, resolve)
}

/// Fast evaluator against the term-by-term oracle on 500 random specs.
pub fn criterion6(opts: &SelftestOptions) -> CriterionResult {
    run_suite(6, "oracle equivalence", 10, [cfg(Tag::OracleEval, 500, 10, opts)], || Ok(String::new()))
}

/// Flipping the sign of the (2,1) coefficient of any family's kernel, or of
/// its inverse, must make criterion 1 fail on that family's roundtrip.
pub fn criterion7(opts: &SelftestOptions) -> CriterionResult {
    let start = Instant::now();
    let mut checked = 0;
    for family in ROUNDTRIP_FAMILIES {
        for inverse in [false, true] {
            let mutated = SelftestOptions { seed: opts.seed, mutation: Some(Mutation { family, inverse }) };
            let r = criterion1(&mutated);
            let side = if inverse { "inverse" } else { "forward" };
            if r.passed || r.failing_tag.as_deref() != Some(family.tag()) {
                return CriterionResult {
                    number: 7,
                    name: "mutation sensitivity",
                    passed: false,
                    elapsed: start.elapsed(),
                    budget: Duration::from_secs(120),
                    failing_tag: Some(family.tag().to_owned()),
                    detail: format!("{side} sign flip on {} not caught: {}", family.tag(), r.detail),
                };
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(120);
    CriterionResult {
        number: 7,
        name: "mutation sensitivity",
        passed: elapsed <= budget,
        elapsed,
        budget,
        failing_tag: None,
        detail: format!("{checked} mutated kernels all caught by criterion 1"),
    }
}

pub type Criterion = fn(&SelftestOptions) -> CriterionResult;

pub const CRITERIA: [Criterion; 7] =
    [criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7];

/// Runs all criteria in order, calling `on_result` after each. With
/// `stop_on_failure` the run ends after the first failing criterion.
pub fn run_all(
    opts: &SelftestOptions,
    stop_on_failure: bool,
    mut on_result: impl FnMut(&CriterionResult),
) -> Vec<CriterionResult> {
    let mut results = Vec::with_capacity(CRITERIA.len());
    for c in CRITERIA {
        let r = c(opts);
        on_result(&r);
        let failed = !r.passed;
        results.push(r);
        if failed && stop_on_failure {
            break;
        }
    }
    results
}
