//! Parameter sweeps over the rung-deleted family: deterministic grid
//! enumeration, seeded subset sampling, the verification driver that pits
//! every closed form against the oracle, and the formula-table emitter.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::closed_forms::{self, TableRow, Variant};
use crate::error::{Error, Result};
use crate::graph::FamilySpec;
use crate::invariants;
use crate::rational::{rational_to_f64, Scalar};
use crate::spectral::{self, analytic, MirrorPairing};

/// How deletion subsets are chosen for each `(n, r)` cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetPolicy {
    /// Every subset, in lexicographic order. Guarded to small `n`.
    All,
    /// `per_cell` distinct subsets drawn uniformly with a required seed.
    Sampled { per_cell: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Exact,
    Float,
}

/// Largest `n` for which exhaustive subset enumeration is allowed: the grid
/// grows as `2^n` per size.
pub const ALL_SUBSETS_MAX_N: usize = 12;

/// Default cap on exact-arithmetic work, in vertices.
pub const DEFAULT_EXACT_CAP: usize = 200;

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_lo: usize,
    pub n_hi: usize,
    /// Restrict to one deletion count, or sweep all of `0..=n-1`.
    pub r: Option<usize>,
    pub subsets: SubsetPolicy,
    pub mode: RunMode,
    pub tol: f64,
    pub variant: Variant,
    pub max_exact_vertices: usize,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_lo < 2 || self.n_hi < self.n_lo {
            return Err(Error::InvalidParameter(format!(
                "bad size range {}..{}",
                self.n_lo, self.n_hi
            )));
        }
        // Exhaustive enumeration only explodes when rungs are actually
        // deleted; an r = 0 sweep has a single subset per size.
        if matches!(self.subsets, SubsetPolicy::All)
            && self.n_hi > ALL_SUBSETS_MAX_N
            && self.r != Some(0)
        {
            return Err(Error::InvalidParameter(format!(
                "exhaustive subsets capped at n <= {ALL_SUBSETS_MAX_N}; sample instead"
            )));
        }
        if self.mode == RunMode::Exact && 2 * self.n_hi > self.max_exact_vertices {
            return Err(Error::ExactCapExceeded {
                vertices: 2 * self.n_hi,
                cap: self.max_exact_vertices,
            });
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// All `r`-subsets of `{1, ..., n}` in lexicographic order.
pub fn subsets_exhaustive(n: usize, r: usize) -> Vec<BTreeSet<usize>> {
    let mut all = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(r);
    fn extend(n: usize, r: usize, start: usize, current: &mut Vec<usize>, all: &mut Vec<BTreeSet<usize>>) {
        if current.len() == r {
            all.push(current.iter().copied().collect());
            return;
        }
        let remaining = r - current.len();
        for next in start..=(n + 1 - remaining) {
            current.push(next);
            extend(n, r, next + 1, current, all);
            current.pop();
        }
    }
    extend(n, r, 1, &mut current, &mut all);
    all
}

/// Binomial coefficient, saturating at `u128::MAX`; only ever compared
/// against small sample counts.
fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let mut value: u128 = 1;
    for k in 0..r.min(n - r) {
        let Some(product) = value.checked_mul((n - k) as u128) else {
            return u128::MAX;
        };
        value = product / (k + 1) as u128;
    }
    value
}

/// Up to `count` distinct `r`-subsets of `{1, ..., n}`, deterministic in the
/// seed. Falls back to exhaustive enumeration when there are no more than
/// `count` subsets in total.
pub fn subsets_sampled(n: usize, r: usize, count: usize, seed: u64) -> Vec<BTreeSet<usize>> {
    if binomial(n, r) <= count as u128 {
        return subsets_exhaustive(n, r);
    }
    // Per-cell stream so every (n, r) cell is independent of grid order.
    let cell_seed = seed ^ ((n as u64) << 32) ^ r as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(cell_seed);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let pool: Vec<usize> = (1..=n).collect();
    while out.len() < count {
        let mut pick: Vec<usize> = pool
            .choose_multiple(&mut rng, r)
            .copied()
            .collect();
        pick.sort_unstable();
        if seen.insert(pick.clone()) {
            out.push(pick.into_iter().collect());
        }
    }
    out
}

/// Deterministic grid of family members for a config: sizes ascending, then
/// deletion count ascending, then subset order.
pub fn grid(config: &SweepConfig) -> Result<Vec<FamilySpec>> {
    config.validate()?;
    let mut specs = Vec::new();
    for n in config.n_lo..=config.n_hi {
        let r_values: Vec<usize> = match config.r {
            Some(r) if r < n => vec![r],
            Some(_) => continue,
            None => (0..n).collect(),
        };
        for r in r_values {
            let subsets = match config.subsets {
                SubsetPolicy::All => subsets_exhaustive(n, r),
                SubsetPolicy::Sampled { per_cell, seed } => subsets_sampled(n, r, per_cell, seed),
            };
            for deleted in subsets {
                specs.push(FamilySpec::new(n, deleted)?);
            }
        }
    }
    Ok(specs)
}

/// Outcome counters for one verification clause.
#[derive(Debug, Clone)]
pub struct ClauseResult {
    pub clause: &'static str,
    pub pass: usize,
    pub fail: usize,
    pub failures: Vec<String>,
}

impl ClauseResult {
    fn new(clause: &'static str) -> Self {
        ClauseResult {
            clause,
            pass: 0,
            fail: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass += 1;
        } else {
            self.fail += 1;
            if self.failures.len() < 8 {
                self.failures.push(detail());
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifySummary {
    pub clauses: Vec<ClauseResult>,
    pub instances: usize,
}

impl VerifySummary {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.fail == 0)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for clause in &self.clauses {
            out.push_str(&format!(
                "{:<24} pass {:>5}  fail {:>5}\n",
                clause.clause, clause.pass, clause.fail
            ));
            for failure in &clause.failures {
                out.push_str(&format!("    {failure}\n"));
            }
        }
        out.push_str(&format!(
            "instances: {}  verdict: {}\n",
            self.instances,
            if self.all_pass() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

fn sorted_union(mut a: Vec<f64>, b: Vec<f64>) -> Vec<f64> {
    a.extend(b);
    a.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    a
}

fn max_pairwise_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Run the full agreement suite over the configured grid. Formula clauses use
/// the configured variant; spectra clauses always test the actual math and
/// are evaluated on at most `SPECTRA_SUBSET_CAP` members per `(n, r)` cell to
/// keep exhaustive runs affordable.
pub fn verify(config: &SweepConfig) -> Result<VerifySummary> {
    const SPECTRA_SUBSET_CAP: usize = 5;
    config.validate()?;
    let specs = grid(config)?;
    let variant = config.variant;
    let tol = config.tol;

    let mut kf_clause = ClauseResult::new("kirchhoff-vs-formula");
    let mut tau_clause = ClauseResult::new("tree-count-vs-formula");
    let mut wiener_clause = ClauseResult::new("wiener-vs-formula");
    let mut kfstar_clause = ClauseResult::new("mult-kirchhoff-vs-formula");
    let mut gutman_clause = ClauseResult::new("gutman-vs-formula");
    let mut spectral_kf_clause = ClauseResult::new("kirchhoff-vs-spectrum");
    let mut mirror_clause = ClauseResult::new("mirror-decomposition");
    let mut analytic_clause = ClauseResult::new("analytic-vs-numeric");

    let mut spectra_budget: std::collections::BTreeMap<(usize, usize), usize> =
        std::collections::BTreeMap::new();

    for spec in &specs {
        let n = spec.n();
        let r = spec.r();
        let center_deleted = spec.center_deleted();
        let graph = spec.build();

        let kf_formula = closed_forms::kf_deleted(n, r, center_deleted, variant);
        let tau_formula = closed_forms::tau_deleted(n, r, center_deleted, variant);
        let wiener_formula = closed_forms::wiener_deleted(n, r, center_deleted, variant);

        match config.mode {
            RunMode::Exact => {
                let kf = invariants::kirchhoff_index(&graph)?;
                kf_clause.record(kf_formula.as_ref().is_ok_and(|f| *f == kf), || {
                    format!("kf {spec:?}: oracle {kf} formula {kf_formula:?}")
                });
                let tau = invariants::spanning_trees(&graph);
                tau_clause.record(tau_formula.as_ref().is_ok_and(|f| *f == tau), || {
                    format!("tau {spec:?}: oracle {tau} formula {tau_formula:?}")
                });
                let kfstar = invariants::mult_deg_kirchhoff_index(&graph)?;
                if r == 0 {
                    let formula = closed_forms::kfstar_full(n)?;
                    kfstar_clause.record(formula == kfstar, || {
                        format!("kf* n={n}: oracle {kfstar} formula {formula}")
                    });
                    let gut = invariants::gutman_index(&graph)?;
                    let formula = closed_forms::gutman_full(n)?;
                    gutman_clause.record(formula == gut, || {
                        format!("gutman n={n}: oracle {gut} formula {formula}")
                    });
                }
            }
            RunMode::Float => {
                let (kf, _kfstar) = invariants::kirchhoff_indices_f64(&graph)?;
                kf_clause.record(
                    kf_formula
                        .as_ref()
                        .is_ok_and(|f| Scalar::Float(kf).agrees_with(&Scalar::Exact(f.clone()), tol.max(1e-9))),
                    || format!("kf {spec:?}: oracle {kf} formula {kf_formula:?}"),
                );
            }
        }

        let wiener = invariants::wiener_index(&graph)?;
        wiener_clause.record(wiener_formula.as_ref().is_ok_and(|f| *f == wiener), || {
            format!("wiener {spec:?}: oracle {wiener} formula {wiener_formula:?}")
        });

        let budget = spectra_budget.entry((n, r)).or_insert(0);
        if *budget < SPECTRA_SUBSET_CAP {
            *budget += 1;

            let laplacian = spectral::laplacian(&graph);
            let full = spectral::numeric_spectrum(&laplacian, tol)?.to_floats();
            let (half_sum, half_diff) = spectral::mirror_split(&laplacian, &MirrorPairing::new(n))?;
            let union = sorted_union(
                spectral::numeric_spectrum(&half_sum, tol)?.to_floats(),
                spectral::numeric_spectrum(&half_diff, tol)?.to_floats(),
            );
            mirror_clause.record(max_pairwise_gap(&full, &union) <= tol, || {
                format!("mirror {spec:?}: gap {}", max_pairwise_gap(&full, &union))
            });

            let analytic_spectrum = analytic::rung_deleted_laplacian(n, r, center_deleted)?;
            let gap = max_pairwise_gap(&analytic_spectrum.to_floats(), &full);
            analytic_clause.record(gap <= tol, || format!("analytic {spec:?}: gap {gap}"));

            let kf_spectral = invariants::kf_from_spectrum(&analytic_spectrum, 2 * n)?;
            let kf_oracle = match config.mode {
                RunMode::Exact => Scalar::Exact(invariants::kirchhoff_index(&graph)?),
                RunMode::Float => Scalar::Float(invariants::kirchhoff_indices_f64(&graph)?.0),
            };
            spectral_kf_clause.record(kf_oracle.agrees_with(&kf_spectral, tol.max(1e-8)), || {
                format!("spectral kf {spec:?}: {kf_oracle:?} vs {kf_spectral:?}")
            });
        }
    }

    let instances = specs.len();
    let mut clauses = vec![kf_clause, tau_clause, wiener_clause];
    if config.mode == RunMode::Exact {
        clauses.push(kfstar_clause);
        clauses.push(gutman_clause);
    }
    clauses.push(spectral_kf_clause);
    clauses.push(mirror_clause);
    clauses.push(analytic_clause);
    Ok(VerifySummary { clauses, instances })
}

/// Formula-table rows over the configured grid, one row per instance. The
/// closed forms depend only on `(n, r, center status)`, so sampled subsets
/// decide which classes show up and how often; the values never need the
/// graph itself, which keeps sweeps cheap at any size.
pub fn sweep_rows(config: &SweepConfig) -> Result<Vec<TableRow>> {
    grid(config)?
        .iter()
        .map(|spec| TableRow::compute(spec.n(), spec.r(), spec.center_deleted(), config.variant))
        .collect()
}

/// One row of the ratio-convergence table.
#[derive(Debug, Clone)]
pub struct RatioRow {
    pub n: usize,
    pub kf_over_wiener: f64,
    pub kfstar_over_gutman: f64,
}

pub fn ratio_table(sizes: &[usize]) -> Result<Vec<RatioRow>> {
    sizes
        .iter()
        .map(|&n| {
            Ok(RatioRow {
                n,
                kf_over_wiener: rational_to_f64(&closed_forms::ratio_kf_wiener(n, 0, false)?),
                kfstar_over_gutman: rational_to_f64(&closed_forms::ratio_kfstar_gutman(n)?),
            })
        })
        .collect()
}
