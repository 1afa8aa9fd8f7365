//! Model checking of the theorems derived from the axioms, including the
//! Veblen–Young axioms of alignment and extension.
//!
//! Every statement is checked by exhaustive enumeration (or seeded sampling)
//! over the structure. Lines here are the unvalidated pencils spanned by
//! pairs, so a forced run on a non-conforming structure still yields
//! reports rather than construction errors.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::axioms::check_all_axioms;
use crate::error::{Error, Result};
use crate::incidence::{ElemSet, Element, IncidenceStructure, PlaneId, PointId};
use crate::lines::{pencils, Pencil};
use crate::quantify::{for_each_tuple, CheckOptions, Combo};
use crate::report::{transposes, CheckItem, Elem, Report, Tally, Witness};

/// Checked statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Three non-collinear points lie in exactly one plane.
    UniquePlanePoint,
    /// Three non-collinear planes pass through exactly one point.
    UniquePlanePlane,
    /// Two lines share a point iff they share a plane, and then exactly one of each.
    Meet,
    /// A line in a plane misses some point of the plane.
    ProperPencilPoint,
    ProperPencilPlane,
    /// A line not in a plane meets it in exactly one point.
    LineMeetsPlanePoint,
    /// A line not through a point lies with it in exactly one plane.
    LineMeetsPlanePlane,
    /// The plane through A, B, C is the union of the lines CD, D on AB.
    CharacterizationPoint,
    CharacterizationPlane,
    VyA1,
    VyA2,
    VyA3,
    VyE0,
    VyE1,
    VyE2,
    VyE3,
    VyE3Prime,
}

impl Theorem {
    pub const THEOREMS: [Theorem; 9] = [
        Theorem::UniquePlanePoint,
        Theorem::UniquePlanePlane,
        Theorem::Meet,
        Theorem::ProperPencilPoint,
        Theorem::ProperPencilPlane,
        Theorem::LineMeetsPlanePoint,
        Theorem::LineMeetsPlanePlane,
        Theorem::CharacterizationPoint,
        Theorem::CharacterizationPlane,
    ];

    pub const VEBLEN_YOUNG: [Theorem; 8] = [
        Theorem::VyA1,
        Theorem::VyA2,
        Theorem::VyA3,
        Theorem::VyE0,
        Theorem::VyE1,
        Theorem::VyE2,
        Theorem::VyE3,
        Theorem::VyE3Prime,
    ];
}

impl CheckItem for Theorem {
    /// Veblen–Young items are point/line statements and map to themselves.
    fn dual(self) -> Self {
        use Theorem::*;
        match self {
            UniquePlanePoint => UniquePlanePlane,
            UniquePlanePlane => UniquePlanePoint,
            ProperPencilPoint => ProperPencilPlane,
            ProperPencilPlane => ProperPencilPoint,
            LineMeetsPlanePoint => LineMeetsPlanePlane,
            LineMeetsPlanePlane => LineMeetsPlanePoint,
            CharacterizationPoint => CharacterizationPlane,
            CharacterizationPlane => CharacterizationPoint,
            other => other,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Theorem::*;
        f.write_str(match self {
            UniquePlanePoint => "T1_pt",
            UniquePlanePlane => "T1_pl",
            Meet => "T2",
            ProperPencilPoint => "T3_pt",
            ProperPencilPlane => "T3_pl",
            LineMeetsPlanePoint => "T3C_pt",
            LineMeetsPlanePlane => "T3C_pl",
            CharacterizationPoint => "VYC_pt",
            CharacterizationPlane => "VYC_pl",
            VyA1 => "VY_A1",
            VyA2 => "VY_A2",
            VyA3 => "VY_A3",
            VyE0 => "VY_E0",
            VyE1 => "VY_E1",
            VyE2 => "VY_E2",
            VyE3 => "VY_E3",
            VyE3Prime => "VY_E3p",
        })
    }
}

pub type TheoremReport = Report<Theorem>;

const SALT_T1: u64 = 0x71;
const SALT_T2: u64 = 0x72;
const SALT_T3: u64 = 0x73;
const SALT_T3C: u64 = 0x7c;
const SALT_VYC: u64 = 0x7e;
const SALT_VY: u64 = 0x5e;

/// `{a,b}^⊣` and `{a,b}^⊣⊣` for every pair `a < b` of one sort.
struct PairTable<E: Element> {
    n: usize,
    perp: Vec<ElemSet<E::Dual>>,
    span: Vec<ElemSet<E>>,
}

impl<E: Element> PairTable<E> {
    fn build(s: &IncidenceStructure) -> Self {
        let n = E::count(s);
        let mut perp = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        let mut span = Vec::with_capacity(perp.capacity());
        for a in 0..n {
            for b in a + 1..n {
                let p = s.perp_pair(E::from_index(a), E::from_index(b));
                span.push(s.perp_unchecked(&p));
                perp.push(p);
            }
        }
        PairTable { n, perp, span }
    }

    fn slot(&self, a: E, b: E) -> usize {
        let (a, b) = if a < b {
            (a.index(), b.index())
        } else {
            (b.index(), a.index())
        };
        debug_assert!(a != b && b < self.n);
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    fn perp(&self, a: E, b: E) -> &ElemSet<E::Dual> {
        &self.perp[self.slot(a, b)]
    }

    fn span(&self, a: E, b: E) -> &ElemSet<E> {
        &self.span[self.slot(a, b)]
    }

    /// No member of the distinct triple lies in the span of the other two.
    fn non_collinear(&self, s: &IncidenceStructure, a: E, b: E, c: E) -> bool {
        !self.perp(a, b).is_subset(s.through(c))
            && !self.perp(a, c).is_subset(s.through(b))
            && !self.perp(b, c).is_subset(s.through(a))
    }
}

fn wit<E: Element>(elems: &[E]) -> Witness {
    Witness::new(elems.iter().copied().map(Elem::of))
}

fn unique_plane<E: Element>(
    s: &IncidenceStructure,
    table: &PairTable<E>,
    opts: &CheckOptions,
) -> Tally {
    let mut tally = Tally::default();
    for_each_tuple::<3>(E::count(s), Combo::Distinct, opts, SALT_T1, |t| {
        let [a, b, c] = t.map(E::from_index);
        if table.non_collinear(s, a, b, c) {
            let common = table.perp(a, b).intersection_count(s.through(c));
            tally.record(common == 1, || wit(&[a, b, c]));
        }
    });
    tally
}

/// A line as (points, planes) with the pair that spans it.
struct SpannedLine {
    presentation: Witness,
    points: ElemSet<PointId>,
    planes: ElemSet<PlaneId>,
}

/// Lines spanned by point pairs, then by plane pairs, deduplicated on both
/// pencils. In a conforming structure the two families coincide; taking
/// their union keeps the statement self-dual on arbitrary structures.
fn meet_lines(
    point_lines: &[Pencil<PointId>],
    plane_lines: &[Pencil<PlaneId>],
) -> Vec<SpannedLine> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let spanned = point_lines
        .iter()
        .map(|l| (l.presentation(), &l.own, &l.dual))
        .chain(
            plane_lines
                .iter()
                .map(|l| (l.presentation(), &l.dual, &l.own)),
        );
    for (presentation, points, planes) in spanned {
        if seen.insert((points.clone(), planes.clone())) {
            out.push(SpannedLine {
                presentation,
                points: points.clone(),
                planes: planes.clone(),
            });
        }
    }
    out
}

fn meet(lines: &[SpannedLine], opts: &CheckOptions) -> Tally {
    let mut tally = Tally::default();
    for_each_tuple::<2>(lines.len(), Combo::Distinct, opts, SALT_T2, |[i, j]| {
        let (l, m) = (&lines[i], &lines[j]);
        let shared = (
            l.points.intersection_count(&m.points),
            l.planes.intersection_count(&m.planes),
        );
        tally.record(matches!(shared, (0, 0) | (1, 1)), || {
            Witness::new(
                l.presentation
                    .elems()
                    .iter()
                    .chain(m.presentation.elems())
                    .copied(),
            )
        });
    });
    tally
}

fn proper_pencil<E: Element>(
    s: &IncidenceStructure,
    table: &PairTable<E>,
    opts: &CheckOptions,
) -> Tally {
    let mut tally = Tally::default();
    for_each_tuple::<1>(
        <E::Dual as Element>::count(s),
        Combo::Distinct,
        opts,
        SALT_T3,
        |[h]| {
            let host = <E::Dual as Element>::from_index(h);
            let members: Vec<E> = s.through(host).iter().collect();
            let size = members.len();
            for (i, &b) in members.iter().enumerate() {
                for &c in &members[i + 1..] {
                    let span = table.span(b, c);
                    let ok = span.is_subset(s.through(host)) && span.len() < size;
                    tally.record(ok, || {
                        Witness::new([Elem::of(host), Elem::of(b), Elem::of(c)])
                    });
                }
            }
        },
    );
    tally
}

fn line_meets_plane<E: Element>(
    s: &IncidenceStructure,
    lines: &[Pencil<E>],
    opts: &CheckOptions,
) -> Tally {
    let others = <E::Dual as Element>::count(s);
    let mut tally = Tally::default();
    for_each_tuple::<1>(lines.len(), Combo::Distinct, opts, SALT_T3C, |[i]| {
        let line = &lines[i];
        for x in (0..others).map(<E::Dual as Element>::from_index) {
            if line.dual.contains(x) {
                continue;
            }
            let common = line.own.intersection_count(s.through(x));
            tally.record(common == 1, || {
                Witness::new([Elem::of(line.pair.0), Elem::of(line.pair.1), Elem::of(x)])
            });
        }
    });
    tally
}

/// Role assignments `(A, B, C)` for an unordered triple; C is the apex
/// joined to the points of AB.
fn roles<E: Copy>([a, b, c]: [E; 3]) -> [[E; 3]; 3] {
    [[a, b, c], [a, c, b], [b, c, a]]
}

fn characterization<E: Element>(
    s: &IncidenceStructure,
    table: &PairTable<E>,
    opts: &CheckOptions,
) -> Tally {
    let mut tally = Tally::default();
    for_each_tuple::<3>(E::count(s), Combo::Distinct, opts, SALT_VYC, |t| {
        let triple = t.map(E::from_index);
        let [a, b, c] = triple;
        if !table.non_collinear(s, a, b, c) {
            return;
        }
        for [a, b, apex] in roles(triple) {
            let planes = table.perp(a, b).intersection(s.through(apex));
            let ok = match planes.first() {
                Some(host) if planes.len() == 1 => {
                    let mut swept = ElemSet::<E>::empty(E::count(s));
                    for d in table.span(a, b).iter() {
                        swept.union_with(table.span(apex, d));
                    }
                    swept == *s.through(host)
                }
                _ => false,
            };
            tally.record(ok, || wit(&[a, b, apex]));
        }
    });
    tally
}

struct VyContext<'a> {
    s: &'a IncidenceStructure,
    table: &'a PairTable<PointId>,
    lines: &'a [Pencil<PointId>],
    opts: &'a CheckOptions,
}

impl VyContext<'_> {
    fn lines_through_points(&self) -> Vec<FixedBitSet> {
        let mut through = vec![FixedBitSet::with_capacity(self.lines.len()); self.s.n_points()];
        for (i, line) in self.lines.iter().enumerate() {
            for p in line.own.iter() {
                through[p.0].insert(i);
            }
        }
        through
    }

    fn alignment(&self) -> (Tally, Tally) {
        let through = self.lines_through_points();
        let (mut a1, mut a2) = (Tally::default(), Tally::default());
        for_each_tuple::<2>(
            self.s.n_points(),
            Combo::Distinct,
            self.opts,
            SALT_VY,
            |[a, b]| {
                let on_both = through[a].intersection_count(&through[b]);
                let w = || wit(&[PointId(a), PointId(b)]);
                a1.record(on_both >= 1, w);
                a2.record(on_both <= 1, w);
            },
        );
        (a1, a2)
    }

    fn a3(&self) -> Tally {
        let (s, table) = (self.s, self.table);
        let mut tally = Tally::default();
        for_each_tuple::<3>(s.n_points(), Combo::Distinct, self.opts, SALT_VY + 3, |t| {
            let triple = t.map(PointId);
            let [a, b, c] = triple;
            if !table.non_collinear(s, a, b, c) {
                return;
            }
            for [a, b, c] in roles(triple) {
                let ab = table.span(a, b);
                for d in table.span(b, c).iter() {
                    for e in table.span(c, a).iter() {
                        if d == e {
                            continue;
                        }
                        let ok = !table.span(d, e).is_disjoint(ab);
                        tally.record(ok, || wit(&[a, b, c, d, e]));
                    }
                }
            }
        });
        tally
    }

    fn per_line(&self, salt: u64, ok: impl Fn(&Pencil<PointId>) -> bool) -> Tally {
        let mut tally = Tally::default();
        for_each_tuple::<1>(self.lines.len(), Combo::Distinct, self.opts, salt, |[i]| {
            let line = &self.lines[i];
            tally.record(ok(line), || wit(&[line.pair.0, line.pair.1]));
        });
        tally
    }

    fn e3(&self) -> Tally {
        let s = self.s;
        let mut tally = Tally::default();
        for_each_tuple::<1>(
            s.n_planes(),
            Combo::Distinct,
            self.opts,
            SALT_VY + 6,
            |[h]| {
                let h = PlaneId(h);
                tally.record(!s.through(h).is_full(), || wit(&[h]));
            },
        );
        tally
    }

    fn e3_prime(&self) -> Tally {
        let s = self.s;
        let by_points: HashMap<&ElemSet<PointId>, &ElemSet<PlaneId>> =
            self.lines.iter().map(|l| (&l.own, &l.dual)).collect();
        let mut tally = Tally::default();
        for_each_tuple::<2>(
            s.n_planes(),
            Combo::Distinct,
            self.opts,
            SALT_VY + 7,
            |[a, b]| {
                let (a, b) = (PlaneId(a), PlaneId(b));
                let points = s.perp_pair(a, b);
                let planes = s.perp_unchecked(&points);
                let ok = by_points.get(&points).is_some_and(|dual| **dual == planes);
                tally.record(ok, || wit(&[a, b]));
            },
        );
        tally
    }
}

fn require_axioms(s: &IncidenceStructure, opts: &CheckOptions) -> Result<()> {
    opts.guard(s)?;
    if opts.force {
        return Ok(());
    }
    let summary = check_all_axioms(s, opts)?;
    if summary.all_pass() {
        return Ok(());
    }
    let failed: Vec<String> = summary.failing().iter().map(ToString::to_string).collect();
    Err(Error::AxiomsFailed {
        failed: failed.join(","),
    })
}

fn report(item: Theorem, tally: Tally) -> TheoremReport {
    Report::from_tally(item, tally)
}

/// Unique plane through three non-collinear points, and its dual.
pub fn check_unique_plane(
    s: &IncidenceStructure,
    opts: &CheckOptions,
) -> Result<(TheoremReport, TheoremReport)> {
    require_axioms(s, opts)?;
    let points = PairTable::<PointId>::build(s);
    let planes = PairTable::<PlaneId>::build(s);
    Ok((
        report(Theorem::UniquePlanePoint, unique_plane(s, &points, opts)),
        report(Theorem::UniquePlanePlane, unique_plane(s, &planes, opts)),
    ))
}

/// Lines share a point iff they share a plane, over all pairs of distinct lines.
pub fn check_meet(s: &IncidenceStructure, opts: &CheckOptions) -> Result<TheoremReport> {
    require_axioms(s, opts)?;
    let lines = meet_lines(&pencils::<PointId>(s), &pencils::<PlaneId>(s));
    Ok(report(Theorem::Meet, meet(&lines, opts)))
}

/// Proper pencils and line-meets-plane, each with its dual.
pub fn check_proper_pencil(
    s: &IncidenceStructure,
    opts: &CheckOptions,
) -> Result<Vec<TheoremReport>> {
    require_axioms(s, opts)?;
    let points = PairTable::<PointId>::build(s);
    let planes = PairTable::<PlaneId>::build(s);
    Ok(vec![
        report(Theorem::ProperPencilPoint, proper_pencil(s, &points, opts)),
        report(Theorem::ProperPencilPlane, proper_pencil(s, &planes, opts)),
        report(
            Theorem::LineMeetsPlanePoint,
            line_meets_plane(s, &pencils::<PointId>(s), opts),
        ),
        report(
            Theorem::LineMeetsPlanePlane,
            line_meets_plane(s, &pencils::<PlaneId>(s), opts),
        ),
    ])
}

/// The plane-as-union-of-joins characterization and its dual.
pub fn check_vy_characterization(
    s: &IncidenceStructure,
    opts: &CheckOptions,
) -> Result<(TheoremReport, TheoremReport)> {
    require_axioms(s, opts)?;
    let points = PairTable::<PointId>::build(s);
    let planes = PairTable::<PlaneId>::build(s);
    Ok((
        report(
            Theorem::CharacterizationPoint,
            characterization(s, &points, opts),
        ),
        report(
            Theorem::CharacterizationPlane,
            characterization(s, &planes, opts),
        ),
    ))
}

/// All nine theorem reports, in [`Theorem::THEOREMS`] order.
pub fn check_theorems(s: &IncidenceStructure, opts: &CheckOptions) -> Result<Vec<TheoremReport>> {
    require_axioms(s, opts)?;
    Ok(theorems_unchecked(s, opts))
}

fn theorems_unchecked(s: &IncidenceStructure, opts: &CheckOptions) -> Vec<TheoremReport> {
    let points = PairTable::<PointId>::build(s);
    let planes = PairTable::<PlaneId>::build(s);
    let point_lines = pencils::<PointId>(s);
    let plane_lines = pencils::<PlaneId>(s);
    vec![
        report(Theorem::UniquePlanePoint, unique_plane(s, &points, opts)),
        report(Theorem::UniquePlanePlane, unique_plane(s, &planes, opts)),
        report(
            Theorem::Meet,
            meet(&meet_lines(&point_lines, &plane_lines), opts),
        ),
        report(Theorem::ProperPencilPoint, proper_pencil(s, &points, opts)),
        report(Theorem::ProperPencilPlane, proper_pencil(s, &planes, opts)),
        report(
            Theorem::LineMeetsPlanePoint,
            line_meets_plane(s, &point_lines, opts),
        ),
        report(
            Theorem::LineMeetsPlanePlane,
            line_meets_plane(s, &plane_lines, opts),
        ),
        report(
            Theorem::CharacterizationPoint,
            characterization(s, &points, opts),
        ),
        report(
            Theorem::CharacterizationPlane,
            characterization(s, &planes, opts),
        ),
    ]
}

/// The eight Veblen–Young items, in [`Theorem::VEBLEN_YOUNG`] order.
pub fn check_vy_axioms(s: &IncidenceStructure, opts: &CheckOptions) -> Result<Vec<TheoremReport>> {
    require_axioms(s, opts)?;
    let table = PairTable::<PointId>::build(s);
    let lines = pencils::<PointId>(s);
    let ctx = VyContext {
        s,
        table: &table,
        lines: &lines,
        opts,
    };
    let (a1, a2) = ctx.alignment();
    let mut e1 = Tally::default();
    e1.record(!lines.is_empty(), Witness::default);
    let n_points = s.n_points();
    Ok(vec![
        report(Theorem::VyA1, a1),
        report(Theorem::VyA2, a2),
        report(Theorem::VyA3, ctx.a3()),
        report(
            Theorem::VyE0,
            ctx.per_line(SALT_VY + 4, |l| l.own.len() >= 3),
        ),
        report(Theorem::VyE1, e1),
        report(
            Theorem::VyE2,
            ctx.per_line(SALT_VY + 5, |l| l.own.len() < n_points),
        ),
        report(Theorem::VyE3, ctx.e3()),
        report(Theorem::VyE3Prime, ctx.e3_prime()),
    ])
}

/// Whether the theorem reports of `dualize(s)` are the transpose of those
/// of `s`, statement by statement.
pub fn check_theorem_duality(s: &IncidenceStructure, opts: &CheckOptions) -> Result<bool> {
    opts.guard(s)?;
    let dual = s.dualize();
    let original = theorems_unchecked(s, opts);
    let transposed = theorems_unchecked(&dual, opts);
    Ok(original.iter().all(|r| {
        transposed
            .iter()
            .find(|d| d.item == r.item.dual())
            .is_some_and(|d| {
                transposes(
                    r,
                    d,
                    |item, w| replay_witness(s, item, w).unwrap_or(false),
                    |item, w| replay_witness(&dual, item, w).unwrap_or(false),
                )
            })
    }))
}

/// Re-evaluates a failing report's witness with the public primitives.
/// Returns true iff the witness exhibits a violation of the statement.
pub fn replay_theorem(s: &IncidenceStructure, report: &TheoremReport) -> Result<bool> {
    match &report.witness {
        Some(w) => replay_witness(s, report.item, w),
        None => Ok(false),
    }
}

pub(crate) fn replay_witness(s: &IncidenceStructure, item: Theorem, w: &Witness) -> Result<bool> {
    use Theorem::*;
    match item {
        UniquePlanePoint => replay::unique_plane::<PointId>(s, w),
        UniquePlanePlane => replay::unique_plane::<PlaneId>(s, w),
        Meet => replay::meet(s, w),
        ProperPencilPoint => replay::proper_pencil::<PointId>(s, w),
        ProperPencilPlane => replay::proper_pencil::<PlaneId>(s, w),
        LineMeetsPlanePoint => replay::line_meets_plane::<PointId>(s, w),
        LineMeetsPlanePlane => replay::line_meets_plane::<PlaneId>(s, w),
        CharacterizationPoint => replay::characterization::<PointId>(s, w),
        CharacterizationPlane => replay::characterization::<PlaneId>(s, w),
        VyA1 | VyA2 => replay::alignment(s, w, item == VyA1),
        VyA3 => replay::a3(s, w),
        VyE0 => replay::e0_e2(s, w, true),
        VyE1 => Ok(w.elems().is_empty() && s.n_points() < 2),
        VyE2 => replay::e0_e2(s, w, false),
        VyE3 => replay::e3(s, w),
        VyE3Prime => replay::e3_prime(s, w),
    }
}

/// Witness replay through the public, checked primitives only.
mod replay {
    use super::*;

    /// The witness entries, if it has exactly `N` of them and all have sort `E`.
    fn typed<E: Element, const N: usize>(w: &Witness) -> Option<[E; N]> {
        let elems = w.of_sort::<E>();
        if w.elems().len() != N {
            return None;
        }
        elems.try_into().ok()
    }

    fn set<E: Element>(s: &IncidenceStructure, elems: &[E]) -> Result<ElemSet<E>> {
        ElemSet::from_elements(E::count(s), elems.iter().copied())
    }

    fn span<E: Element>(s: &IncidenceStructure, a: E, b: E) -> Result<ElemSet<E>> {
        s.closure(&set(s, &[a, b])?)
    }

    fn in_span<E: Element>(s: &IncidenceStructure, a: E, b: E, c: E) -> Result<bool> {
        Ok(span(s, a, b)?.contains(c))
    }

    fn non_collinear<E: Element>(s: &IncidenceStructure, [a, b, c]: [E; 3]) -> Result<bool> {
        if a == b || b == c || a == c {
            return Ok(false);
        }
        Ok(!in_span(s, a, b, c)? && !in_span(s, a, c, b)? && !in_span(s, b, c, a)?)
    }

    pub fn unique_plane<E: Element>(s: &IncidenceStructure, w: &Witness) -> Result<bool> {
        let Some(t) = typed::<E, 3>(w) else {
            return Ok(false);
        };
        Ok(non_collinear(s, t)? && s.perp(&set(s, &t)?)?.len() != 1)
    }

    /// The line spanned by two distinct entries of one sort, as (points, planes).
    fn spanned_line(
        s: &IncidenceStructure,
        a: Elem,
        b: Elem,
    ) -> Result<Option<(ElemSet<PointId>, ElemSet<PlaneId>)>> {
        if a == b {
            return Ok(None);
        }
        match (a, b) {
            (Elem::Point(x), Elem::Point(y)) => {
                let planes = s.perp(&set(s, &[PointId(x), PointId(y)])?)?;
                Ok(Some((s.perp(&planes)?, planes)))
            }
            (Elem::Plane(x), Elem::Plane(y)) => {
                let points = s.perp(&set(s, &[PlaneId(x), PlaneId(y)])?)?;
                Ok(Some((points.clone(), s.perp(&points)?)))
            }
            _ => Ok(None),
        }
    }

    pub fn meet(s: &IncidenceStructure, w: &Witness) -> Result<bool> {
        let [a, b, c, d] = match w.elems() {
            [a, b, c, d] => [*a, *b, *c, *d],
            _ => return Ok(false),
        };
        let (Some(l), Some(m)) = (spanned_line(s, a, b)?, spanned_line(s, c, d)?) else {
            return Ok(false);
        };
        if l == m {
            return Ok(false);
        }
        let shared = (l.0.intersection(&m.0).len(), l.1.intersection(&m.1).len());
        Ok(!matches!(shared, (0, 0) | (1, 1)))
    }

    pub fn proper_pencil<E: Element>(s: &IncidenceStructure, w: &Witness) -> Result<bool> {
        let [host, b, c] = match w.elems() {
            [h, b, c] => [*h, *b, *c],
            _ => return Ok(false),
        };
        let (Some(host), Some(b), Some(c)) = (
            host.as_element::<E::Dual>(),
            b.as_element::<E>(),
            c.as_element::<E>(),
        ) else {
            return Ok(false);
        };
        let members = s.perp(&set(s, &[host])?)?;
        if b == c || !members.contains(b) || !members.contains(c) {
            return Ok(false);
        }
        let line = span(s, b, c)?;
        Ok(!(line.is_subset(&members) && line.len() < members.len()))
    }

    pub fn line_meets_plane<E: Element>(s: &IncidenceStructure, w: &Witness) -> Result<bool> {
        let [a, b, x] = match w.elems() {
            [a, b, x] => [*a, *b, *x],
            _ => return Ok(false),
        };
        let (Some(a), Some(b), Some(x)) = (
            a.as_element::<E>(),
            b.as_element::<E>(),
            x.as_element::<E::Dual>(),
        ) else {
            return Ok(false);
        };
        if a == b {
            return Ok(false);
        }
        let dual = s.perp(&set(s, &[a, b])?)?;
        if dual.contains(x) {
            return Ok(false);
        }
        let own = s.perp(&dual)?;
        let on_x = s.perp(&set(s, &[x])?)?;
        Ok(own.intersection(&on_x).len() != 1)
    }

    pub fn characterization<E: Element>(s: &IncidenceStructure, w: &Witness) -> Result<bool> {
        let Some(t) = typed::<E, 3>(w) else {
            return Ok(false);
        };
        if !non_collinear(s, t)? {
            return Ok(false);
        }
        let [a, b, apex] = t;
        let planes = s.perp(&set(s, &t)?)?;
        let Some(host) = planes.first().filter(|_| planes.len() == 1) else {
            return Ok(true);
        };
        let on_host = s.perp(&set(s, &[host])?)?;
        let mut swept = ElemSet::<E>::empty(E::count(s));
        for d in span(s, a, b)?.iter() {
            swept.union_with(&span(s, apex, d)?);
        }
        Ok(swept != on_host)
    }

    /// Distinct point pencils spanned by point pairs.
    fn all_spans(s: &IncidenceStructure) -> Result<Vec<ElemSet<PointId>>> {
        let mut out: Vec<ElemSet<PointId>> = Vec::new();
        for a in 0..s.n_points() {
            for b in a + 1..s.n_points() {
                let l = span(s, PointId(a), PointId(b))?;
                if !out.contains(&l) {
                    out.push(l);
                }
            }
        }
        Ok(out)
    }

    pub fn alignment(s: &IncidenceStructure, w: &Witness, at_least: bool) -> Result<bool> {
        let Some([a, b]) = typed::<PointId, 2>(w) else {
            return Ok(false);
        };
        if a == b {
            return Ok(false);
        }
        let on_both = all_spans(s)?
            .iter()
            .filter(|l| l.contains(a) && l.contains(b))
            .count();
        Ok(if at_least { on_both == 0 } else { on_both > 1 })
    }

    pub fn a3(s: &IncidenceStructure, w: &Witness) -> Result<bool> {
        let Some([a, b, c, d, e]) = typed::<PointId, 5>(w) else {
            return Ok(false);
        };
        if !non_collinear(s, [a, b, c])? || d == e {
            return Ok(false);
        }
        if !in_span(s, b, c, d)? || !in_span(s, c, a, e)? {
            return Ok(false);
        }
        Ok(span(s, d, e)?.intersection(&span(s, a, b)?).is_empty())
    }

    pub fn e0_e2(s: &IncidenceStructure, w: &Witness, e0: bool) -> Result<bool> {
        let Some([a, b]) = typed::<PointId, 2>(w) else {
            return Ok(false);
        };
        if a == b {
            return Ok(false);
        }
        let l = span(s, a, b)?;
        Ok(if e0 { l.len() < 3 } else { l.is_full() })
    }

    pub fn e3(s: &IncidenceStructure, w: &Witness) -> Result<bool> {
        let Some([h]) = typed::<PlaneId, 1>(w) else {
            return Ok(false);
        };
        Ok(s.perp(&set(s, &[h])?)?.is_full())
    }

    pub fn e3_prime(s: &IncidenceStructure, w: &Witness) -> Result<bool> {
        let Some([a, b]) = typed::<PlaneId, 2>(w) else {
            return Ok(false);
        };
        if a == b {
            return Ok(false);
        }
        let points = s.perp(&set(s, &[a, b])?)?;
        let planes = s.perp(&points)?;
        for x in 0..s.n_points() {
            for y in x + 1..s.n_points() {
                let pair = set(s, &[PointId(x), PointId(y)])?;
                let dual = s.perp(&pair)?;
                if s.perp(&dual)? == points && dual == planes {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
