//! Suite configuration and orchestration.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks;
use super::{InequalityCase, Status};
use crate::error::Result;
use crate::exponent::Exponent;
use crate::fracmean::{ExponentTriple, RadiusGrid};
use crate::group::GroupKind;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TripleSpec {
    pub q: Exponent,
    pub p: Exponent,
    pub alpha: Exponent,
}

impl TripleSpec {
    pub fn of(q: f64, p: f64, alpha: f64) -> Self {
        let e = |x: f64| if x.is_infinite() { Exponent::inf() } else { Exponent::of(x) };
        TripleSpec { q: e(q), p: e(p), alpha: e(alpha) }
    }

    pub fn triple(&self) -> ExponentTriple {
        ExponentTriple::new(self.q, self.p, self.alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub steps_per_octave: u32,
}

impl GridSpec {
    pub fn grid(&self) -> Result<RadiusGrid> {
        RadiusGrid::new(self.r_min, self.r_max, self.steps_per_octave)
    }

    /// Grid for functions supported in the unit window; the fine end is limited
    /// by the cost of enumerating tiny cells.
    pub fn default_for(kind: GroupKind) -> Self {
        let r_min = match kind {
            GroupKind::RealLine => 2f64.powi(-9),
            GroupKind::AnisoPlane => 0.25,
            GroupKind::Heisenberg => 0.5,
        };
        GridSpec { r_min, r_max: 64.0, steps_per_octave: 4 }
    }
}

/// Exponents of two factors; the product's triple is the reciprocal sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderSplit {
    pub first: TripleSpec,
    pub second: TripleSpec,
}

/// One family of cases. Random functions use seeds `seed, seed+1, …`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Check {
    /// `‖f‖^{π_r}_{p,p} = ‖f‖_p`.
    Diagonal { groups: Vec<GroupKind>, exponents: Vec<Exponent>, radii: Vec<f64>, samples: usize },
    /// `_{B(e,r)}‖f‖_{q,q} = λ(B(e,r))^{1/q}‖f‖_q` on the real line.
    Fubini { exponents: Vec<Exponent>, radii: Vec<f64>, samples: usize },
    /// `0 < r^{−ρ/p}·_B‖f‖_{q,p} / ‖f‖^{π_r}_{q,p} ≤ (4γ⁴+3γ²)^{ρ/q}(4γ⁵+3γ³+2γ²)^{ρ/p}`.
    Equivalence {
        groups: Vec<GroupKind>,
        pairs: Vec<(Exponent, Exponent)>,
        radii: Vec<f64>,
        samples: usize,
        /// Quadrature mesh for the non-exact ball norms.
        mesh: Option<f64>,
    },
    /// `‖f‖_{q,p,α} ≤ ‖f‖_α`.
    Embedding { groups: Vec<GroupKind>, triples: Vec<TripleSpec>, samples: usize },
    /// `‖fg‖_{q,p,α} ≤ ‖f‖_{q₁,p₁,α₁}‖g‖_{q₂,p₂,α₂}`.
    Holder { groups: Vec<GroupKind>, splittings: Vec<HolderSplit>, samples: usize },
    /// `‖f‖_{q,p,q} ≤ ‖f‖_q ≤ (4γ⁴+3γ²)^{ρ(p−q)/(pq)}‖f‖_{q,p,q}`.
    SandwichQ { groups: Vec<GroupKind>, pairs: Vec<(Exponent, Exponent)>, samples: usize },
    /// `‖f‖_{q,p,p} ≤ ‖f‖_p ≤ (4γ⁴+3γ²)^{ρ/q}(4γ⁵+3γ³+2γ²)^{ρ/p}‖f‖_{q,p,p}`.
    SandwichP { groups: Vec<GroupKind>, pairs: Vec<(Exponent, Exponent)>, samples: usize },
    /// `‖f‖_{q₁,p₁,α} ≤ (1/2γ)^{ρ(1/q₁−1/q₂)}‖f‖_{q₂,p₂,α}`; chains are `(q₁,q₂,α,p₂,p₁)`.
    Monotonicity { groups: Vec<GroupKind>, chains: Vec<[Exponent; 5]>, samples: usize },
    /// `‖fχ_B‖_q ≤ (α/(α−q))^{1/q}‖f‖*_{α,∞}λ(B)^{1/q−1/α}` over grid balls.
    Kolmogorov { groups: Vec<GroupKind>, pairs: Vec<(f64, f64)>, samples: usize },
    /// `‖f‖_{q,∞,α}` (ball form) `≤ (α/(α−q))^{1/q}‖f‖*_{α,∞}` on the real line.
    WeakEmbedding { pairs: Vec<(f64, f64)>, samples: usize },
    /// Log-log slope of the weighted norm of indicators at the divergent end.
    Degeneracy { groups: Vec<GroupKind>, triples: Vec<TripleSpec>, samples: usize },
    /// Truncated sparse unions on the real line.
    Counterexample { q: f64, p: Exponent, alpha: f64, levels: u32 },
    /// `count_translate_hits ≤ n_pi_bound` over random translates.
    Counting { groups: Vec<GroupKind>, radius: f64, translates: usize },
    /// `_{B(e,r)}‖f‖_{q,∞}` nondecreasing in `r` and equal to `‖f‖_q` once a ball covers the support.
    Limit { groups: Vec<GroupKind>, exponents: Vec<Exponent>, samples: usize },
    /// `k(θ;p;a)` numeric tail against the closed form; cases are `(θ, p, a)`.
    KConstant { groups: Vec<GroupKind>, cases: Vec<(f64, f64, f64)> },
    /// Local bound on `g`; cases are `(θ, p, q, ε, r)`.
    GLemma { groups: Vec<GroupKind>, cases: Vec<(f64, f64, Exponent, f64, f64)> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    /// Label used as the case id prefix, e.g. `I4`.
    pub criterion: String,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub checks: Vec<CheckEntry>,
}

impl SuiteConfig {
    pub fn empty() -> Self {
        SuiteConfig { seed: 0, checks: Vec::new() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Spec(e.to_string()))
    }
}

fn e(x: f64) -> Exponent {
    if x.is_infinite() {
        Exponent::inf()
    } else {
        Exponent::of(x)
    }
}

impl Default for SuiteConfig {
    /// The acceptance checklist I1–I13.
    fn default() -> Self {
        use GroupKind::*;
        let all = GroupKind::ALL.to_vec();
        let inf = f64::INFINITY;
        let entry = |c: &str, check| CheckEntry { criterion: c.into(), check };
        let checks = vec![
            entry(
                "I1",
                Check::Diagonal {
                    groups: all.clone(),
                    exponents: [1.0, 1.5, 2.0, 3.0, inf].map(e).to_vec(),
                    radii: vec![0.3, 1.0, 4.0],
                    samples: 100,
                },
            ),
            entry(
                "I2",
                Check::Fubini { exponents: [1.0, 2.0, 3.0, inf].map(e).to_vec(), radii: vec![0.1, 0.5, 2.0], samples: 100 },
            ),
            entry(
                "I3",
                Check::Equivalence {
                    groups: vec![RealLine, Heisenberg],
                    pairs: vec![(e(1.0), e(2.0)), (e(2.0), e(1.0)), (e(2.0), e(inf))],
                    radii: vec![0.25, 0.5, 1.0, 2.0, 4.0],
                    samples: 200,
                    mesh: Some(0.2),
                },
            ),
            entry(
                "I4",
                Check::Embedding {
                    groups: all.clone(),
                    triples: vec![
                        TripleSpec::of(1.0, 4.0, 2.0),
                        TripleSpec::of(1.0, inf, 2.0),
                        TripleSpec::of(2.0, 3.0, 2.5),
                        TripleSpec::of(2.0, inf, 3.0),
                    ],
                    samples: 200,
                },
            ),
            entry(
                "I5",
                Check::Holder {
                    groups: vec![RealLine, AnisoPlane],
                    splittings: vec![
                        HolderSplit { first: TripleSpec::of(2.0, 4.0, 3.0), second: TripleSpec::of(2.0, 4.0, 3.0) },
                        HolderSplit { first: TripleSpec::of(2.0, inf, 4.0), second: TripleSpec::of(4.0, inf, 8.0) },
                        HolderSplit { first: TripleSpec::of(1.0, 2.0, 2.0), second: TripleSpec::of(inf, inf, inf) },
                        HolderSplit { first: TripleSpec::of(3.0, 6.0, 4.0), second: TripleSpec::of(6.0, 12.0, 12.0) },
                    ],
                    samples: 200,
                },
            ),
            entry(
                "I6",
                Check::SandwichQ {
                    groups: all.clone(),
                    pairs: vec![(e(1.0), e(2.0)), (e(2.0), e(4.0)), (e(1.0), e(inf))],
                    samples: 100,
                },
            ),
            entry(
                "I6",
                Check::SandwichP {
                    groups: vec![RealLine],
                    pairs: vec![(e(1.0), e(2.0)), (e(2.0), e(4.0)), (e(1.0), e(inf))],
                    samples: 100,
                },
            ),
            entry(
                "I7",
                Check::Monotonicity { groups: all.clone(), chains: vec![[1.0, 2.0, 2.0, 3.0, 4.0].map(e)], samples: 100 },
            ),
            entry(
                "I8",
                Check::Kolmogorov { groups: vec![RealLine, AnisoPlane], pairs: vec![(1.0, 2.0), (2.0, 3.0)], samples: 100 },
            ),
            entry("I9", Check::WeakEmbedding { pairs: vec![(1.0, 2.0), (2.0, 3.0)], samples: 100 }),
            entry(
                "I10",
                Check::Degeneracy {
                    groups: vec![RealLine],
                    triples: vec![
                        TripleSpec::of(2.0, 4.0, 1.5),
                        TripleSpec::of(4.0, inf, 2.0),
                        TripleSpec::of(1.0, 2.0, 4.0),
                        TripleSpec::of(1.0, 1.0, 2.0),
                    ],
                    samples: 20,
                },
            ),
            entry("I11", Check::Counterexample { q: 1.0, p: e(4.0), alpha: 2.0, levels: 8 }),
            entry("I12", Check::Counting { groups: all.clone(), radius: 1.0, translates: 1000 }),
            entry(
                "I12",
                Check::Limit { groups: vec![RealLine, AnisoPlane], exponents: vec![e(1.0), e(2.0)], samples: 50 },
            ),
            entry(
                "I13",
                Check::KConstant {
                    groups: vec![RealLine, AnisoPlane],
                    cases: vec![(4.0, 2.0, 1.0), (3.0, 1.5, 0.5), (2.0, 1.0, 4.0), (6.0, 3.0, 2.0), (4.0, 2.0, 8.0)],
                },
            ),
            entry(
                "I13",
                Check::GLemma {
                    groups: vec![RealLine],
                    cases: vec![
                        (4.0, 2.0, e(2.0), 1.0, 0.2),
                        (4.0, 2.0, e(1.0), 1.0, 0.2),
                        (4.0, 1.0, e(2.0), 1.0, 0.3),
                        (3.0, 1.5, e(3.0), 0.5, 0.2),
                        (2.5, 2.0, e(inf), 1.5, 0.5),
                        (6.0, 3.0, e(1.0), 0.8, 0.1),
                    ],
                },
            ),
        ];
        SuiteConfig { seed: 20_240_601, checks }
    }
}

/// Runs one check; construction errors become failing cases.
pub fn run_check(entry: &CheckEntry, seed: u64) -> Vec<InequalityCase> {
    checks::run(&entry.criterion, &entry.check, seed)
}

/// Runs every check in order. Deterministic given the config.
pub fn run_suite(config: &SuiteConfig) -> Vec<InequalityCase> {
    config.checks.par_iter().map(|c| run_check(c, config.seed)).collect::<Vec<_>>().into_iter().flatten().collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionSummary {
    pub criterion: String,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub misuse: usize,
    /// Smallest `margin + tolerance` over non-misuse cases.
    pub worst_slack: f64,
}

impl CriterionSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.cases > self.misuse
    }
}

/// Per-criterion tallies in first-appearance order; ids are `criterion/...`.
pub fn criterion_summary(cases: &[InequalityCase]) -> Vec<CriterionSummary> {
    let mut out: Vec<CriterionSummary> = Vec::new();
    for c in cases {
        let key = c.id.split('/').next().unwrap_or("").to_string();
        let pos = match out.iter().position(|s| s.criterion == key) {
            Some(i) => i,
            None => {
                out.push(CriterionSummary {
                    criterion: key,
                    cases: 0,
                    passed: 0,
                    failed: 0,
                    misuse: 0,
                    worst_slack: f64::INFINITY,
                });
                out.len() - 1
            }
        };
        let s = &mut out[pos];
        s.cases += 1;
        match c.status {
            Status::Pass => s.passed += 1,
            Status::Fail => s.failed += 1,
            Status::Misuse => s.misuse += 1,
        }
        if c.status != Status::Misuse {
            let slack = match c.relation {
                super::Relation::Approx => c.tolerance - c.margin.abs(),
                _ => c.margin + c.tolerance,
            };
            s.worst_slack = s.worst_slack.min(slack);
        }
    }
    out
}
