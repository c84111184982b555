//! Executable laws over generated finite universes.
//!
//! Every law enumerates a fixed family of cases (exhaustively, or drawn from
//! a seeded generator) and checks each one in order. The first failing case
//! is reported together with a witness, and [`replay`] re-runs the checker
//! on any case so reported counterexamples can be confirmed independently.

mod catalog;
pub mod oracle;
pub mod universe;

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use core::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::value::Value;

pub use catalog::registry;

/// One generated tuple of arguments.
pub type Case = Vec<Value>;

/// `None` when the case satisfies the law, otherwise a witness.
pub type CheckOutcome = Option<Vec<Value>>;

pub const MAX_SAMPLES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Profile {
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(Error::precondition(format!(
                "unknown profile `{other}` (expected quick or full)"
            ))),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawConfig {
    pub profile: Profile,
    pub seed: u64,
    /// Overrides the sample count of the randomized part of a law.
    pub samples: Option<usize>,
    /// Overrides the exhaustive universe `n × m` of laws that have one.
    pub universe: Option<(usize, usize)>,
}

impl LawConfig {
    pub fn new(profile: Profile, seed: u64) -> Self {
        LawConfig {
            profile,
            seed,
            samples: None,
            universe: None,
        }
    }
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig::new(Profile::Full, 0)
    }
}

/// What a law is expected to do on its family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Holds,
    /// A counterexample search: the law is false and the run must find why.
    Refuted,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expectation::Holds => "holds",
            Expectation::Refuted => "refuted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Resolved generator parameters handed to a law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub profile: Profile,
    pub samples: usize,
    pub universe: (usize, usize),
}

#[derive(Debug, Clone, Copy)]
pub struct UniverseSpec {
    pub default: (usize, usize),
    /// Largest `n * m` accepted.
    pub max_pairs: usize,
}

pub struct Law {
    pub id: &'static str,
    /// The formal statement the law checks.
    pub statement: &'static str,
    pub expect: Expectation,
    pub universe: Option<UniverseSpec>,
    /// Default sample counts of the randomized part, quick and full.
    pub samples: (usize, usize),
    generate: fn(&Params, &mut ChaCha8Rng) -> Result<Vec<Case>>,
    check: fn(&[Value]) -> Result<CheckOutcome>,
}

impl Law {
    pub fn params(&self, config: &LawConfig) -> Result<Params> {
        let samples = match config.samples {
            Some(n) => {
                Error::check_cap("samples", MAX_SAMPLES, n)?;
                n
            }
            None => match config.profile {
                Profile::Quick => self.samples.0,
                Profile::Full => self.samples.1,
            },
        };
        let universe = match (self.universe, config.universe) {
            (Some(spec), Some((n, m))) => {
                Error::check_cap("universe pairs", spec.max_pairs, n.saturating_mul(m))?;
                (n, m)
            }
            (Some(spec), None) => spec.default,
            (None, Some(_)) => {
                return Err(Error::precondition(format!(
                    "law `{}` has no universe parameter",
                    self.id
                )))
            }
            (None, None) => (0, 0),
        };
        Ok(Params {
            profile: config.profile,
            samples,
            universe,
        })
    }

    pub fn cases(&self, config: &LawConfig) -> Result<Vec<Case>> {
        let params = self.params(config)?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(stream_of(self.id));
        (self.generate)(&params, &mut rng)
    }

    /// Runs the checker on one case. Checker errors count as failures.
    pub fn check(&self, case: &[Value]) -> CheckOutcome {
        match (self.check)(case) {
            Ok(outcome) => outcome,
            Err(e) => Some(alloc::vec![Value::sym("error"), Value::sym(&e.to_string())]),
        }
    }
}

impl fmt::Debug for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Law")
            .field("id", &self.id)
            .field("expect", &self.expect)
            .finish_non_exhaustive()
    }
}

/// Stream index from the law id, so adding laws does not reshuffle others.
fn stream_of(id: &str) -> u64 {
    // FNV-1a
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub expect: Expectation,
    pub profile: Profile,
    pub seed: u64,
    /// Cases checked, up to and including the first failing one.
    pub cases: usize,
    pub verdict: Verdict,
    pub counterexample: Option<Case>,
    pub witness: Option<Vec<Value>>,
    /// Filled in by callers that have a clock.
    pub elapsed: Option<Duration>,
}

impl LawReport {
    /// The verdict is the expected one.
    pub fn conforms(&self) -> bool {
        matches!(
            (self.expect, self.verdict),
            (Expectation::Holds, Verdict::Pass) | (Expectation::Refuted, Verdict::Fail)
        )
    }
}

pub fn find_law(id: &str) -> Result<&'static Law> {
    registry()
        .iter()
        .find(|l| l.id == id)
        .ok_or_else(|| Error::UnknownLaw(id.into()))
}

pub fn law_ids() -> impl Iterator<Item = &'static str> {
    registry().iter().map(|l| l.id)
}

pub fn run(law: &'static Law, config: &LawConfig) -> Result<LawReport> {
    let cases = law.cases(config)?;
    let mut checked = 0;
    let mut failure = None;
    for case in cases {
        checked += 1;
        if let Some(witness) = law.check(&case) {
            failure = Some((case, witness));
            break;
        }
    }
    let (verdict, counterexample, witness) = match failure {
        Some((case, witness)) => (Verdict::Fail, Some(case), Some(witness)),
        None => (Verdict::Pass, None, None),
    };
    Ok(LawReport {
        id: law.id,
        statement: law.statement,
        expect: law.expect,
        profile: config.profile,
        seed: config.seed,
        cases: checked,
        verdict,
        counterexample,
        witness,
        elapsed: None,
    })
}

pub fn run_law(id: &str, config: &LawConfig) -> Result<LawReport> {
    run(find_law(id)?, config)
}

/// Every registered law, in registry order.
pub fn run_all(profile: Profile, seed: u64) -> Result<Vec<LawReport>> {
    let config = LawConfig::new(profile, seed);
    registry().iter().map(|l| run(l, &config)).collect()
}

/// Re-checks one case; `true` when the law holds on it.
pub fn replay(id: &str, case: &[Value]) -> Result<bool> {
    Ok(find_law(id)?.check(case).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = law_ids().collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn exhaustive_counts() {
        let cfg = LawConfig {
            samples: Some(0),
            ..LawConfig::new(Profile::Full, 0)
        };
        assert_eq!(run_law("lll53", &cfg).unwrap().cases, 4096);
        let r = run_law("runiq_equivs", &cfg).unwrap();
        assert_eq!((r.cases, r.verdict), (64, Verdict::Pass));
    }

    #[test]
    fn config_errors() {
        let mut cfg = LawConfig::new(Profile::Quick, 0);
        assert!(matches!(run_law("nope", &cfg), Err(Error::UnknownLaw(_))));
        cfg.universe = Some((3, 3));
        assert!(matches!(run_law("lll53", &cfg), Err(Error::Cap { .. })));
        assert!(matches!(run_law("l23", &cfg), Err(Error::Precondition(_))));
        cfg.universe = None;
        cfg.samples = Some(MAX_SAMPLES + 1);
        assert!(matches!(run_law("lll53", &cfg), Err(Error::Cap { .. })));
        assert!("medium".parse::<Profile>().is_err());
    }

    #[test]
    fn refuted_laws_report_replayable_counterexamples() {
        let cfg = LawConfig::new(Profile::Quick, 0);
        for l in registry().iter().filter(|l| l.expect == Expectation::Refuted) {
            let r = run(l, &cfg).unwrap();
            assert_eq!(r.verdict, Verdict::Fail, "{}", l.id);
            assert!(r.conforms());
            assert!(!replay(l.id, r.counterexample.as_ref().unwrap()).unwrap());
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let cfg = LawConfig {
            samples: Some(50),
            ..LawConfig::new(Profile::Quick, 42)
        };
        let a = run_law("vcg_oracle_match", &cfg).unwrap();
        let b = run_law("vcg_oracle_match", &cfg).unwrap();
        assert_eq!(a, b);
        let l = find_law("lll53").unwrap();
        assert_eq!(l.cases(&cfg).unwrap(), l.cases(&cfg).unwrap());
        let other = LawConfig { seed: 43, ..cfg };
        assert_ne!(l.cases(&cfg).unwrap(), l.cases(&other).unwrap());
    }
}
