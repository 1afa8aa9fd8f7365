//! Bounded search for small structures that satisfy three of the four axiom
//! groups and violate the remaining one.
//!
//! Candidates are incidence matrices up to the configured shape bounds.
//! Each is reduced to a canonical form by sorting rows, then columns,
//! until neither moves; duplicates under that heuristic quotient are
//! skipped. When `max_points * max_planes` is at most
//! [`EXHAUSTIVE_CELL_LIMIT`] every matrix is enumerated, smallest shapes
//! first. Otherwise matrices are drawn from a seeded generator.
//!
//! Finding nothing means only that no witness exists within the bounds and
//! budget searched.

use std::collections::HashSet;
use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::{check_all_axioms, AxiomSummary};
use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::io::serialize_structure;
use crate::quantify::CheckOptions;

pub const EXHAUSTIVE_CELL_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Axiom group (1 to 4) the witness must violate.
    pub dropped_axiom: u8,
    pub max_points: usize,
    pub max_planes: usize,
    /// Cap on candidate matrices generated.
    pub budget: u64,
    pub seed: u64,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=4).contains(&self.dropped_axiom) {
            return Err(Error::InvalidConfig("dropped axiom must be 1, 2, 3 or 4"));
        }
        if self.max_points == 0 || self.max_planes == 0 {
            return Err(Error::InvalidConfig("bounds must be at least 1"));
        }
        if self.budget == 0 {
            return Err(Error::InvalidConfig("budget must be at least 1"));
        }
        Ok(())
    }

    fn exhaustive(&self) -> bool {
        self.max_points.saturating_mul(self.max_planes) <= EXHAUSTIVE_CELL_LIMIT
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Randomized,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Randomized => "randomized",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub mode: SearchMode,
    /// Candidate matrices generated.
    pub examined: u64,
    /// Distinct canonical forms evaluated.
    pub unique: u64,
    pub duplicates: u64,
    /// The exhaustive enumeration finished without a witness or hitting the budget.
    pub space_exhausted: bool,
    pub witness: Option<IncidenceStructure>,
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "search drop={} max-points={} max-planes={} budget={} seed={}",
            c.dropped_axiom, c.max_points, c.max_planes, c.budget, c.seed
        )?;
        writeln!(f, "mode {}", self.mode)?;
        writeln!(f, "examined {}", self.examined)?;
        writeln!(f, "unique {}", self.unique)?;
        writeln!(f, "duplicates {}", self.duplicates)?;
        if self.mode == SearchMode::Exhaustive && self.witness.is_none() {
            writeln!(
                f,
                "space {}",
                if self.space_exhausted {
                    "exhausted"
                } else {
                    "truncated"
                }
            )?;
        }
        match &self.witness {
            Some(s) => {
                writeln!(f, "result FOUND {}x{}", s.n_points(), s.n_planes())?;
                f.write_str(&serialize_structure(s))
            }
            None => writeln!(f, "result NONE (no witness within bounds/budget)"),
        }
    }
}

/// A 0/1 matrix with rows as points.
type Matrix = Vec<Vec<bool>>;

fn transpose(m: &Matrix, cols: usize) -> Matrix {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

/// Sort rows, then columns, until stable.
pub fn canonical_form(mut m: Matrix, cols: usize) -> Matrix {
    loop {
        let before = m.clone();
        m.sort();
        let mut t = transpose(&m, cols);
        t.sort();
        m = transpose(&t, m.len());
        if m == before {
            return m;
        }
    }
}

fn structure(m: &Matrix, cols: usize) -> IncidenceStructure {
    IncidenceStructure::from_fn(m.len(), cols, |p, h| m[p][h])
}

/// Exactly the dropped group fails.
fn is_witness(summary: &AxiomSummary, dropped: u8) -> bool {
    (1..=4).all(|k| summary.group_fails(k) == (k == dropped))
}

struct Searcher {
    cfg: SearchConfig,
    seen: HashSet<(usize, usize, Matrix)>,
    examined: u64,
    duplicates: u64,
}

impl Searcher {
    /// Evaluates one candidate; returns a verified witness if it is one.
    fn consider(&mut self, m: Matrix, cols: usize) -> Result<Option<IncidenceStructure>> {
        self.examined += 1;
        let rows = m.len();
        let canon = canonical_form(m, cols);
        if !self.seen.insert((rows, cols, canon.clone())) {
            self.duplicates += 1;
            return Ok(None);
        }
        let s = structure(&canon, cols);
        let summary = check_all_axioms(&s, &CheckOptions::default())?;
        Ok(is_witness(&summary, self.cfg.dropped_axiom).then_some(s))
    }

    fn budget_left(&self) -> bool {
        self.examined < self.cfg.budget
    }
}

fn matrix_from_mask(mask: u64, rows: usize, cols: usize) -> Matrix {
    (0..rows)
        .map(|i| (0..cols).map(|j| mask >> (i * cols + j) & 1 == 1).collect())
        .collect()
}

pub fn search_independence(cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    let mut searcher = Searcher {
        cfg: *cfg,
        seen: HashSet::new(),
        examined: 0,
        duplicates: 0,
    };
    let mut witness = None;
    let mut space_exhausted = false;

    let mode = if cfg.exhaustive() {
        let mut shapes: Vec<(usize, usize)> = (1..=cfg.max_points)
            .flat_map(|p| (1..=cfg.max_planes).map(move |h| (p, h)))
            .collect();
        shapes.sort_by_key(|&(p, h)| (p * h, p));
        'shapes: for (rows, cols) in shapes {
            for mask in 0..1u64 << (rows * cols) {
                if !searcher.budget_left() {
                    break 'shapes;
                }
                if let Some(s) = searcher.consider(matrix_from_mask(mask, rows, cols), cols)? {
                    witness = Some(s);
                    break 'shapes;
                }
            }
        }
        space_exhausted = witness.is_none() && searcher.budget_left();
        SearchMode::Exhaustive
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        while searcher.budget_left() {
            let rows = rng.random_range(1..=cfg.max_points);
            let cols = rng.random_range(1..=cfg.max_planes);
            let m = (0..rows)
                .map(|_| (0..cols).map(|_| rng.random_bool(0.5)).collect())
                .collect();
            if let Some(s) = searcher.consider(m, cols)? {
                witness = Some(s);
                break;
            }
        }
        SearchMode::Randomized
    };

    Ok(SearchReport {
        config: *cfg,
        mode,
        examined: searcher.examined,
        unique: searcher.examined - searcher.duplicates,
        duplicates: searcher.duplicates,
        space_exhausted,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(drop: u8, p: usize, h: usize, budget: u64) -> SearchConfig {
        SearchConfig {
            dropped_axiom: drop,
            max_points: p,
            max_planes: h,
            budget,
            seed: 7,
        }
    }

    #[test]
    fn config_validation() {
        assert!(search_independence(&cfg(0, 2, 2, 10)).is_err());
        assert!(search_independence(&cfg(5, 2, 2, 10)).is_err());
        assert!(search_independence(&cfg(1, 0, 2, 10)).is_err());
        assert!(search_independence(&cfg(1, 2, 2, 0)).is_err());
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        let m = vec![vec![true, false, true], vec![false, false, true]];
        let permuted = vec![vec![true, false, false], vec![true, true, false]];
        assert_eq!(canonical_form(m.clone(), 3), canonical_form(permuted, 3));
        let c = canonical_form(m, 3);
        assert_eq!(canonical_form(c.clone(), 3), c);
    }

    #[test]
    fn drop_one_at_three_by_one_is_infeasible() {
        let r = search_independence(&cfg(1, 3, 1, 1_000)).unwrap();
        assert_eq!(r.mode, SearchMode::Exhaustive);
        assert!(r.witness.is_none());
        assert!(r.space_exhausted);
        // 2 + 4 + 8 matrices over shapes 1x1, 2x1, 3x1
        assert_eq!(r.examined, 14);
    }

    #[test]
    fn drop_one_finds_complete_three_by_three() {
        let r = search_independence(&cfg(1, 3, 3, 1_000)).unwrap();
        let s = r.witness.expect("complete 3x3 structure qualifies");
        assert_eq!((s.n_points(), s.n_planes()), (3, 3));
        assert_eq!(s.flag_count(), 9);
        let summary = check_all_axioms(&s, &CheckOptions::default()).unwrap();
        assert!(is_witness(&summary, 1));
    }

    #[test]
    fn drop_two_witness_keeps_axiom_three() {
        let r = search_independence(&cfg(2, 4, 5, 1 << 20)).unwrap();
        if let Some(s) = &r.witness {
            let summary = check_all_axioms(s, &CheckOptions::default()).unwrap();
            assert!(summary.group_fails(2));
            assert!(!summary.group_fails(3));
        }
    }

    #[test]
    fn randomized_mode_is_reproducible() {
        let c = cfg(4, 6, 6, 300);
        let a = search_independence(&c).unwrap();
        assert_eq!(a.mode, SearchMode::Randomized);
        assert_eq!(a.to_string(), search_independence(&c).unwrap().to_string());
        assert_eq!(a.unique + a.duplicates, a.examined);
    }

    #[test]
    fn budget_truncates_exhaustive_search() {
        let r = search_independence(&cfg(3, 2, 2, 5)).unwrap();
        assert_eq!(r.examined, 5);
        assert!(!r.space_exhausted);
        assert!(r.to_string().contains("space truncated"));
    }
}
