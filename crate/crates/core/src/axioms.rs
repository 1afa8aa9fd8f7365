//! Exhaustive checking of the four point/plane axioms.
//!
//! 1. No point lies on every plane; no plane passes through every point.
//! 2. Any two points lie on more than two common planes; dually.
//! 3. Any three points lie on a common plane; dually.
//! 4. For `A ≠ B` and `α ≠ β` with `{A,B} ⊣ {α,β}`:
//!    `{A,B}^⊣ = {α,β}^⊣⊣` and `{α,β}^⊣ = {A,B}^⊣⊣`.
//!
//! Axioms 2 and 3 quantify over multisets (`A = B` is allowed), enumerated
//! as non-decreasing index tuples.

use std::fmt;

use crate::error::Result;
use crate::incidence::{ElemSet, Element, IncidenceStructure, PlaneId, PointId};
use crate::quantify::{for_each_tuple, CheckOptions, Combo};
use crate::report::{transposes, CheckItem, Elem, Report, Tally, Witness};

/// The seven axiom clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    A1Point,
    A1Plane,
    A2Point,
    A2Plane,
    A3Point,
    A3Plane,
    A4,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::A1Point,
        Axiom::A1Plane,
        Axiom::A2Point,
        Axiom::A2Plane,
        Axiom::A3Point,
        Axiom::A3Plane,
        Axiom::A4,
    ];

    /// Axiom number, 1 through 4.
    pub fn group(self) -> u8 {
        match self {
            Axiom::A1Point | Axiom::A1Plane => 1,
            Axiom::A2Point | Axiom::A2Plane => 2,
            Axiom::A3Point | Axiom::A3Plane => 3,
            Axiom::A4 => 4,
        }
    }
}

impl CheckItem for Axiom {
    fn dual(self) -> Self {
        match self {
            Axiom::A1Point => Axiom::A1Plane,
            Axiom::A1Plane => Axiom::A1Point,
            Axiom::A2Point => Axiom::A2Plane,
            Axiom::A2Plane => Axiom::A2Point,
            Axiom::A3Point => Axiom::A3Plane,
            Axiom::A3Plane => Axiom::A3Point,
            Axiom::A4 => Axiom::A4,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::A1Point => "A1_pt",
            Axiom::A1Plane => "A1_pl",
            Axiom::A2Point => "A2_pt",
            Axiom::A2Plane => "A2_pl",
            Axiom::A3Point => "A3_pt",
            Axiom::A3Plane => "A3_pl",
            Axiom::A4 => "A4",
        })
    }
}

pub type AxiomReport = Report<Axiom>;

/// Remarks attached to a full axiom run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Note {
    BothSortsEmpty,
    /// Axioms 2 and 3 pass on nonempty sorts, so each sort has at least three elements.
    AtLeastThreeEach,
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Note::BothSortsEmpty => "degenerate: both sorts empty",
            Note::AtLeastThreeEach => "each of points and planes has at least three elements",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSummary {
    pub reports: Vec<AxiomReport>,
    pub notes: Vec<Note>,
}

impl AxiomSummary {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn report(&self, axiom: Axiom) -> &AxiomReport {
        self.reports
            .iter()
            .find(|r| r.item == axiom)
            .expect("summary holds every axiom")
    }

    /// Whether axiom group `k` (1 to 4) fails in some clause.
    pub fn group_fails(&self, k: u8) -> bool {
        self.reports.iter().any(|r| r.item.group() == k && !r.pass)
    }

    pub fn failing(&self) -> Vec<Axiom> {
        self.reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.item)
            .collect()
    }
}

// Sample-stream salts, one per statement.
const SALT_A1: u64 = 0xa1;
const SALT_A2: u64 = 0xa2;
const SALT_A3: u64 = 0xa3;
const SALT_A4: u64 = 0xa4;

fn clause1<E: Element>(s: &IncidenceStructure, opts: &CheckOptions) -> Tally {
    let mut tally = Tally::default();
    for_each_tuple::<1>(E::count(s), Combo::Distinct, opts, SALT_A1, |[a]| {
        let a = E::from_index(a);
        tally.record(!s.through(a).is_full(), || Witness::new([Elem::of(a)]));
    });
    tally
}

fn clause2<E: Element>(s: &IncidenceStructure, opts: &CheckOptions) -> Tally {
    let mut tally = Tally::default();
    for_each_tuple::<2>(E::count(s), Combo::Multiset, opts, SALT_A2, |[a, b]| {
        let (a, b) = (E::from_index(a), E::from_index(b));
        let common = s.through(a).intersection_count(s.through(b));
        tally.record(common > 2, || Witness::new([Elem::of(a), Elem::of(b)]));
    });
    tally
}

fn clause3<E: Element>(s: &IncidenceStructure, opts: &CheckOptions) -> Tally {
    let n = E::count(s);
    let mut tally = Tally::default();
    // outer quantifier over pairs, inner over the third element c >= b
    for_each_tuple::<2>(n, Combo::Multiset, opts, SALT_A3, |[a, b]| {
        let (ea, eb) = (E::from_index(a), E::from_index(b));
        let pair = s.perp_pair(ea, eb);
        for c in b..n {
            let ec = E::from_index(c);
            tally.record(!pair.is_disjoint(s.through(ec)), || {
                Witness::new([Elem::of(ea), Elem::of(eb), Elem::of(ec)])
            });
        }
    });
    tally
}

fn axiom4(s: &IncidenceStructure, opts: &CheckOptions) -> Tally {
    let mut tally = Tally::default();
    for_each_tuple::<2>(s.n_points(), Combo::Distinct, opts, SALT_A4, |[a, b]| {
        let (a, b) = (PointId(a), PointId(b));
        let planes = s.perp_pair(a, b);
        let span = s.perp_unchecked(&planes);
        let members: Vec<PlaneId> = planes.iter().collect();
        for (i, &alpha) in members.iter().enumerate() {
            for &beta in &members[i + 1..] {
                let dual_span = s.perp_pair(alpha, beta);
                let ok = dual_span == span && s.perp_unchecked(&dual_span) == planes;
                tally.record(ok, || {
                    Witness::new([Elem::of(a), Elem::of(b), Elem::of(alpha), Elem::of(beta)])
                });
            }
        }
    });
    tally
}

pub fn check_axiom1(
    s: &IncidenceStructure,
    opts: &CheckOptions,
) -> Result<(AxiomReport, AxiomReport)> {
    opts.guard(s)?;
    Ok((
        Report::from_tally(Axiom::A1Point, clause1::<PointId>(s, opts)),
        Report::from_tally(Axiom::A1Plane, clause1::<PlaneId>(s, opts)),
    ))
}

pub fn check_axiom2(
    s: &IncidenceStructure,
    opts: &CheckOptions,
) -> Result<(AxiomReport, AxiomReport)> {
    opts.guard(s)?;
    Ok((
        Report::from_tally(Axiom::A2Point, clause2::<PointId>(s, opts)),
        Report::from_tally(Axiom::A2Plane, clause2::<PlaneId>(s, opts)),
    ))
}

pub fn check_axiom3(
    s: &IncidenceStructure,
    opts: &CheckOptions,
) -> Result<(AxiomReport, AxiomReport)> {
    opts.guard(s)?;
    Ok((
        Report::from_tally(Axiom::A3Point, clause3::<PointId>(s, opts)),
        Report::from_tally(Axiom::A3Plane, clause3::<PlaneId>(s, opts)),
    ))
}

pub fn check_axiom4(s: &IncidenceStructure, opts: &CheckOptions) -> Result<AxiomReport> {
    opts.guard(s)?;
    Ok(Report::from_tally(Axiom::A4, axiom4(s, opts)))
}

/// All seven clauses in [`Axiom::ALL`] order, with notes.
pub fn check_all_axioms(s: &IncidenceStructure, opts: &CheckOptions) -> Result<AxiomSummary> {
    let (a1p, a1h) = check_axiom1(s, opts)?;
    let (a2p, a2h) = check_axiom2(s, opts)?;
    let (a3p, a3h) = check_axiom3(s, opts)?;
    let a4 = check_axiom4(s, opts)?;
    let reports = vec![a1p, a1h, a2p, a2h, a3p, a3h, a4];

    let mut notes = Vec::new();
    if s.n_points() == 0 && s.n_planes() == 0 {
        notes.push(Note::BothSortsEmpty);
    } else if reports
        .iter()
        .filter(|r| matches!(r.item.group(), 2 | 3))
        .all(|r| r.pass)
        && s.n_points() >= 3
        && s.n_planes() >= 3
    {
        notes.push(Note::AtLeastThreeEach);
    }
    Ok(AxiomSummary { reports, notes })
}

/// Re-evaluates a failing report's witness with the public perp primitives.
/// Returns true iff the witness exhibits a violation of the report's clause.
pub fn replay_axiom(s: &IncidenceStructure, report: &AxiomReport) -> Result<bool> {
    match &report.witness {
        Some(w) => replay_witness(s, report.item, w),
        None => Ok(false),
    }
}

pub(crate) fn replay_witness(s: &IncidenceStructure, axiom: Axiom, w: &Witness) -> Result<bool> {
    match axiom {
        Axiom::A1Point => replay1::<PointId>(s, w),
        Axiom::A1Plane => replay1::<PlaneId>(s, w),
        Axiom::A2Point => replay23::<PointId>(s, w, 2),
        Axiom::A2Plane => replay23::<PlaneId>(s, w, 2),
        Axiom::A3Point => replay23::<PointId>(s, w, 3),
        Axiom::A3Plane => replay23::<PlaneId>(s, w, 3),
        Axiom::A4 => replay4(s, w),
    }
}

fn element_set<E: Element>(s: &IncidenceStructure, elems: &[E]) -> Result<ElemSet<E>> {
    ElemSet::from_elements(E::count(s), elems.iter().copied())
}

fn replay1<E: Element>(s: &IncidenceStructure, w: &Witness) -> Result<bool> {
    let elems = w.of_sort::<E>();
    if elems.len() != 1 || w.elems().len() != 1 {
        return Ok(false);
    }
    Ok(s.perp(&element_set(s, &elems)?)?.is_full())
}

fn replay23<E: Element>(s: &IncidenceStructure, w: &Witness, arity: usize) -> Result<bool> {
    let elems = w.of_sort::<E>();
    if elems.len() != arity || w.elems().len() != arity {
        return Ok(false);
    }
    let perp = s.perp(&element_set(s, &elems)?)?;
    Ok(match arity {
        2 => perp.len() <= 2,
        _ => perp.is_empty(),
    })
}

fn replay4(s: &IncidenceStructure, w: &Witness) -> Result<bool> {
    let points = w.of_sort::<PointId>();
    let planes = w.of_sort::<PlaneId>();
    if points.len() != 2 || planes.len() != 2 || points[0] == points[1] || planes[0] == planes[1] {
        return Ok(false);
    }
    let points = element_set(s, &points)?;
    let planes = element_set(s, &planes)?;
    if !s.mutually_incident(&points, &planes)? {
        return Ok(false);
    }
    let point_side = s.perp_points(&points)? == s.closure(&planes)?;
    let plane_side = s.perp_planes(&planes)? == s.closure(&points)?;
    Ok(!(point_side && plane_side))
}

/// Whether the axiom reports of `dualize(s)` are the clause-wise transpose of
/// those of `s`.
pub fn check_duality(s: &IncidenceStructure, opts: &CheckOptions) -> Result<bool> {
    let dual = s.dualize();
    let original = check_all_axioms(s, opts)?;
    let transposed = check_all_axioms(&dual, opts)?;
    for report in &original.reports {
        let dual_report = transposed.report(report.item.dual());
        let ok = transposes(
            report,
            dual_report,
            |item, w| replay_witness(s, item, w).unwrap_or(false),
            |item, w| replay_witness(&dual, item, w).unwrap_or(false),
        );
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pg::generate_pg3;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn axiom1_pg32() {
        let s = generate_pg3(2).unwrap();
        let (p, h) = check_axiom1(&s, &opts()).unwrap();
        assert!(p.pass && h.pass);
        assert_eq!((p.checked_cases, h.checked_cases), (15, 15));
    }

    #[test]
    fn axiom1_fails_on_universal_plane() {
        // plane 0 passes through every point; plane 1 through none
        let s = IncidenceStructure::from_fn(3, 2, |_, h| h == 0);
        let (p, h) = check_axiom1(&s, &opts()).unwrap();
        assert!(p.pass);
        assert!(!h.pass);
        assert_eq!(h.witness, Some(Witness::new([Elem::Plane(0)])));
        // a single plane through all points: every point has P^⊣ = Π
        let s = IncidenceStructure::from_fn(3, 1, |_, _| true);
        let (p, _) = check_axiom1(&s, &opts()).unwrap();
        assert_eq!(p.witness, Some(Witness::new([Elem::Point(0)])));
        assert!(replay_axiom(&s, &p).unwrap());
    }

    #[test]
    fn empty_structure_passes_vacuously() {
        let s = IncidenceStructure::empty();
        let summary = check_all_axioms(&s, &opts()).unwrap();
        assert!(summary.all_pass());
        assert_eq!(summary.notes, vec![Note::BothSortsEmpty]);
        assert!(summary.reports.iter().all(|r| r.checked_cases == 0));
    }

    #[test]
    fn axiom2_pg32_and_pg33() {
        let s = generate_pg3(2).unwrap();
        let (p, h) = check_axiom2(&s, &opts()).unwrap();
        assert!(p.pass && h.pass);
        // 105 distinct pairs plus 15 repeated
        assert_eq!(p.checked_cases, 120);
        let s = generate_pg3(3).unwrap();
        let (p, h) = check_axiom2(&s, &opts()).unwrap();
        assert!(p.pass && h.pass);
    }

    #[test]
    fn axiom2_fails_with_two_common_planes() {
        // points 0 and 1 share planes 0 and 1 only
        let s = IncidenceStructure::from_fn(3, 3, |p, h| !(p < 2 && h == 2));
        let (p, _) = check_axiom2(&s, &opts()).unwrap();
        assert!(!p.pass);
        assert_eq!(
            p.witness,
            Some(Witness::new([Elem::Point(0), Elem::Point(0)]))
        );
        assert!(replay_axiom(&s, &p).unwrap());
    }

    #[test]
    fn axiom3_pg32() {
        let s = generate_pg3(2).unwrap();
        let (p, h) = check_axiom3(&s, &opts()).unwrap();
        assert!(p.pass && h.pass);
        // multisets of size 3 from 15
        assert_eq!(p.checked_cases, 680);
    }

    #[test]
    fn axiom3_fails_across_bundles() {
        // two disjoint blocks: points {0,1,2} on planes {0,1,2}, points {3,4,5} on {3,4,5}
        let s = IncidenceStructure::from_fn(6, 6, |p, h| (p < 3) == (h < 3));
        let (p, h) = check_axiom3(&s, &opts()).unwrap();
        assert!(!p.pass && !h.pass);
        assert_eq!(
            p.witness,
            Some(Witness::new([
                Elem::Point(0),
                Elem::Point(0),
                Elem::Point(3)
            ]))
        );
        assert!(replay_axiom(&s, &p).unwrap());
        assert!(replay_axiom(&s, &h).unwrap());
    }

    #[test]
    fn axiom4_pg32_counts_configurations() {
        let s = generate_pg3(2).unwrap();
        let r = check_axiom4(&s, &opts()).unwrap();
        assert!(r.pass);
        assert_eq!(r.checked_cases, 105 * 3);
        assert!(
            check_axiom4(&generate_pg3(3).unwrap(), &opts())
                .unwrap()
                .pass
        );
    }

    #[test]
    fn flipped_flag_is_caught_with_replayable_witness() {
        let s = generate_pg3(2)
            .unwrap()
            .with_flipped(PointId(0), PlaneId(3))
            .unwrap();
        let summary = check_all_axioms(&s, &opts()).unwrap();
        assert!(summary.group_fails(2) || summary.group_fails(4));
        for r in summary.reports.iter().filter(|r| !r.pass) {
            assert!(replay_axiom(&s, r).unwrap(), "{r}");
        }
    }

    #[test]
    fn all_axioms_on_pg_and_dual() {
        for q in [2, 3] {
            let s = generate_pg3(q).unwrap();
            let summary = check_all_axioms(&s, &opts()).unwrap();
            assert!(summary.all_pass());
            assert_eq!(summary.notes, vec![Note::AtLeastThreeEach]);
            assert!(check_all_axioms(&s.dualize(), &opts()).unwrap().all_pass());
        }
    }

    #[test]
    fn duality_on_pg_and_mutant() {
        let s = generate_pg3(2).unwrap();
        assert!(check_duality(&s, &opts()).unwrap());
        let m = s.with_flipped(PointId(4), PlaneId(9)).unwrap();
        assert!(check_duality(&m, &opts()).unwrap());
        assert!(check_duality(&m.dualize(), &opts()).unwrap());
    }

    #[test]
    fn replay_rejects_passing_instances() {
        let s = generate_pg3(2).unwrap();
        let fake = AxiomReport {
            item: Axiom::A2Point,
            pass: false,
            witness: Some(Witness::new([Elem::Point(0), Elem::Point(1)])),
            checked_cases: 1,
        };
        assert!(!replay_axiom(&s, &fake).unwrap());
        let wrong_sort = AxiomReport {
            witness: Some(Witness::new([Elem::Plane(0), Elem::Plane(1)])),
            ..fake
        };
        assert!(!replay_axiom(&s, &wrong_sort).unwrap());
    }

    #[test]
    fn report_line_format() {
        let s = IncidenceStructure::from_fn(3, 1, |_, _| true);
        let (p, _) = check_axiom1(&s, &opts()).unwrap();
        assert_eq!(p.to_string(), "A1_pt FAIL witness=(pt0) cases=3");
        let s = generate_pg3(2).unwrap();
        assert_eq!(
            check_axiom4(&s, &opts()).unwrap().to_string(),
            "A4 PASS cases=315"
        );
    }
}
