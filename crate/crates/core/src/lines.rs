//! Lines as derived objects: a pencil of points together with the matching
//! pencil of planes.
//!
//! For distinct points `A, B` the line `AB` has point pencil `{A,B}^⊣⊣` and
//! plane pencil `{A,B}^⊣`; dually for two planes. Construction validates the
//! pair against the invariants a line must satisfy in a conforming
//! structure and reports the first one that fails.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::incidence::{
    ElemSet, Element, IncidenceStructure, PlaneId, PlaneSet, PointId, PointSet, Sort,
};
use crate::report::{Elem, Witness};

/// A line, held as its two pencils.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    points: PointSet,
    planes: PlaneSet,
}

impl Line {
    /// Builds a line from explicit pencils, checking that each is the perp of
    /// the other and that both have at least three members.
    pub fn new(s: &IncidenceStructure, points: PointSet, planes: PlaneSet) -> Result<Line> {
        let line = Line { points, planes };
        line.validate(s)?;
        Ok(line)
    }

    pub fn point_pencil(&self) -> &PointSet {
        &self.points
    }

    pub fn plane_pencil(&self) -> &PlaneSet {
        &self.planes
    }

    pub fn contains_point(&self, p: PointId) -> bool {
        self.points.contains(p)
    }

    pub fn contains_plane(&self, h: PlaneId) -> bool {
        self.planes.contains(h)
    }

    /// The same line viewed in the dual structure.
    pub fn transpose(&self) -> Line {
        Line {
            points: self.planes.clone().transpose(),
            planes: self.points.clone().transpose(),
        }
    }

    fn presentation(&self) -> Witness {
        Witness::new(self.points.iter().take(2).map(Elem::of))
    }

    fn validate(&self, s: &IncidenceStructure) -> Result<()> {
        s.check_universe(&self.points)?;
        s.check_universe(&self.planes)?;
        let fail = |invariant| Error::MalformedLine {
            presentation: self.presentation(),
            invariant,
        };
        if s.perp_unchecked(&self.planes) != self.points {
            return Err(fail(LineInvariant::PointPencilNotClosed));
        }
        if s.perp_unchecked(&self.points) != self.planes {
            return Err(fail(LineInvariant::PlanePencilNotClosed));
        }
        if self.points.len() < 3 {
            return Err(fail(LineInvariant::TooFewPoints(self.points.len())));
        }
        if self.planes.len() < 3 {
            return Err(fail(LineInvariant::TooFewPlanes(self.planes.len())));
        }
        Ok(())
    }
}

/// The line invariant a candidate failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineInvariant {
    PointPencilNotClosed,
    PlanePencilNotClosed,
    TooFewPoints(usize),
    TooFewPlanes(usize),
    /// Two members of one pencil span a different line.
    PresentationMismatch(Witness),
}

impl fmt::Display for LineInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineInvariant::PointPencilNotClosed => {
                f.write_str("point pencil is not the perp of the plane pencil")
            }
            LineInvariant::PlanePencilNotClosed => {
                f.write_str("plane pencil is not the perp of the point pencil")
            }
            LineInvariant::TooFewPoints(n) => write!(f, "only {n} point(s) on the line"),
            LineInvariant::TooFewPlanes(n) => write!(f, "only {n} plane(s) through the line"),
            LineInvariant::PresentationMismatch(w) => {
                write!(f, "the pair {w} presents a different line")
            }
        }
    }
}

/// Access to a line from the side of one sort.
pub trait LineSide: Element {
    fn assemble(own: ElemSet<Self>, dual: ElemSet<Self::Dual>) -> Line;
    fn pencil(line: &Line) -> &ElemSet<Self>;
}

impl LineSide for PointId {
    fn assemble(points: PointSet, planes: PlaneSet) -> Line {
        Line { points, planes }
    }
    fn pencil(line: &Line) -> &PointSet {
        &line.points
    }
}

impl LineSide for PlaneId {
    fn assemble(planes: PlaneSet, points: PointSet) -> Line {
        Line { points, planes }
    }
    fn pencil(line: &Line) -> &PlaneSet {
        &line.planes
    }
}

/// Whether `c` lies in the closure `{a,b}^⊣⊣`, for either sort.
pub fn collinear<E: Element>(s: &IncidenceStructure, a: E, b: E, c: E) -> Result<bool> {
    for e in [a, b, c] {
        s.check_element(e)?;
    }
    if a == b {
        return Err(Error::Degenerate(
            "collinearity needs two distinct elements",
        ));
    }
    let span = s.perp_pair(a, b);
    Ok(span.is_subset(s.through(c)))
}

pub fn collinear_points(
    s: &IncidenceStructure,
    a: PointId,
    b: PointId,
    c: PointId,
) -> Result<bool> {
    collinear(s, a, b, c)
}

pub fn collinear_planes(
    s: &IncidenceStructure,
    a: PlaneId,
    b: PlaneId,
    c: PlaneId,
) -> Result<bool> {
    collinear(s, a, b, c)
}

/// The line spanned by two distinct elements of the same sort.
pub fn line_through<E: LineSide>(s: &IncidenceStructure, a: E, b: E) -> Result<Line> {
    s.check_element(a)?;
    s.check_element(b)?;
    if a == b {
        return Err(Error::Degenerate("a line needs two distinct elements"));
    }
    let pencil = Pencil::spanned(s, a, b);
    pencil.validate(s)?;
    Ok(pencil.into_line())
}

pub fn line_through_points(s: &IncidenceStructure, a: PointId, b: PointId) -> Result<Line> {
    line_through(s, a, b)
}

pub fn line_through_planes(s: &IncidenceStructure, a: PlaneId, b: PlaneId) -> Result<Line> {
    line_through(s, a, b)
}

/// Every line of `s`, spanned from point pairs and deduplicated by point
/// pencil, in order of first appearance over lexicographic pairs.
pub fn all_lines(s: &IncidenceStructure) -> Result<Vec<Line>> {
    pencils::<PointId>(s)
        .into_iter()
        .map(|pencil| {
            pencil.validate(s)?;
            Ok(pencil.into_line())
        })
        .collect()
}

/// How two lines relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeetResult {
    Equal,
    Disjoint,
    Meet { point: PointId, plane: PlaneId },
}

/// Classifies a pair of lines. Disagreement between the point-side and
/// plane-side intersections is reported as [`Error::MeetViolation`].
pub fn lines_meet(s: &IncidenceStructure, first: &Line, second: &Line) -> Result<MeetResult> {
    first.validate(s)?;
    second.validate(s)?;
    if first == second {
        return Ok(MeetResult::Equal);
    }
    let shared_points = first.points.intersection(&second.points);
    let shared_planes = first.planes.intersection(&second.planes);
    match (shared_points.len(), shared_planes.len()) {
        (0, 0) => Ok(MeetResult::Disjoint),
        (1, 1) => Ok(MeetResult::Meet {
            point: shared_points.first().expect("one shared point"),
            plane: shared_planes.first().expect("one shared plane"),
        }),
        (p, h) => Err(Error::MeetViolation {
            shared_points: p,
            shared_planes: h,
        }),
    }
}

/// Summary counts over [`all_lines`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineCensus {
    pub lines: usize,
    pub min_points: usize,
    pub max_points: usize,
    pub min_planes: usize,
    pub max_planes: usize,
}

pub fn line_census(lines: &[Line]) -> LineCensus {
    let points = lines.iter().map(|l| l.points.len());
    let planes = lines.iter().map(|l| l.planes.len());
    LineCensus {
        lines: lines.len(),
        min_points: points.clone().min().unwrap_or(0),
        max_points: points.max().unwrap_or(0),
        min_planes: planes.clone().min().unwrap_or(0),
        max_planes: planes.max().unwrap_or(0),
    }
}

/// A line candidate spanned by a pair, before validation.
#[derive(Debug, Clone)]
pub(crate) struct Pencil<E: Element> {
    pub pair: (E, E),
    pub own: ElemSet<E>,
    pub dual: ElemSet<E::Dual>,
}

impl<E: Element> Pencil<E> {
    pub fn spanned(s: &IncidenceStructure, a: E, b: E) -> Self {
        let dual = s.perp_pair(a, b);
        let own = s.perp_unchecked(&dual);
        Pencil {
            pair: (a, b),
            own,
            dual,
        }
    }

    pub fn presentation(&self) -> Witness {
        Witness::new([Elem::of(self.pair.0), Elem::of(self.pair.1)])
    }

    fn validate(&self, s: &IncidenceStructure) -> Result<()> {
        let fail = |invariant| Error::MalformedLine {
            presentation: self.presentation(),
            invariant,
        };
        let (points, planes) = match E::SORT {
            Sort::Point => (self.own.len(), self.dual.len()),
            Sort::Plane => (self.dual.len(), self.own.len()),
        };
        if points < 3 {
            return Err(fail(LineInvariant::TooFewPoints(points)));
        }
        if planes < 3 {
            return Err(fail(LineInvariant::TooFewPlanes(planes)));
        }
        if let Some(w) = mismatched_pair(s, &self.dual, &self.own) {
            return Err(fail(LineInvariant::PresentationMismatch(w)));
        }
        if let Some(w) = mismatched_pair(s, &self.own, &self.dual) {
            return Err(fail(LineInvariant::PresentationMismatch(w)));
        }
        Ok(())
    }
}

impl<E: LineSide> Pencil<E> {
    pub fn into_line(self) -> Line {
        E::assemble(self.own, self.dual)
    }
}

/// The first pair in `pencil` whose perp differs from `expected`.
fn mismatched_pair<E: Element>(
    s: &IncidenceStructure,
    pencil: &ElemSet<E>,
    expected: &ElemSet<E::Dual>,
) -> Option<Witness> {
    let members: Vec<E> = pencil.iter().collect();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            if s.perp_pair(x, y) != *expected {
                return Some(Witness::new([Elem::of(x), Elem::of(y)]));
            }
        }
    }
    None
}

/// Distinct pencils spanned by pairs of sort `E`, without validation, in
/// order of first appearance.
pub(crate) fn pencils<E: Element>(s: &IncidenceStructure) -> Vec<Pencil<E>> {
    let n = E::count(s);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let pencil = Pencil::spanned(s, E::from_index(a), E::from_index(b));
            if seen.insert(pencil.own.clone()) {
                out.push(pencil);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pg::generate_pg3;

    fn pt(encoded: usize) -> PointId {
        PointId(encoded - 1)
    }
    fn pl(encoded: usize) -> PlaneId {
        PlaneId(encoded - 1)
    }
    fn encoded<E: Element>(set: &ElemSet<E>) -> Vec<usize> {
        set.iter().map(|e| e.index() + 1).collect()
    }

    #[test]
    fn collinearity_examples() {
        let s = generate_pg3(2).unwrap();
        assert!(collinear_points(&s, pt(1), pt(2), pt(3)).unwrap());
        assert!(!collinear_points(&s, pt(1), pt(2), pt(4)).unwrap());
        assert!(collinear_points(&s, pt(5), pt(9), pt(5)).unwrap());
        assert!(collinear_planes(&s, pl(4), pl(8), pl(12)).unwrap());
        assert!(!collinear_planes(&s, pl(4), pl(8), pl(1)).unwrap());
        assert!(collinear_planes(&s, pl(4), pl(8), pl(8)).unwrap());
    }

    #[test]
    fn collinearity_rejects_equal_pair() {
        let s = generate_pg3(2).unwrap();
        assert!(matches!(
            collinear_points(&s, pt(1), pt(1), pt(2)),
            Err(Error::Degenerate(_))
        ));
        assert!(collinear_points(&s, pt(1), PointId(40), pt(2)).is_err());
    }

    #[test]
    fn line_examples() {
        let s = generate_pg3(2).unwrap();
        let l = line_through_points(&s, pt(1), pt(2)).unwrap();
        assert_eq!(encoded(l.point_pencil()), vec![1, 2, 3]);
        assert_eq!(encoded(l.plane_pencil()), vec![4, 8, 12]);
        assert_eq!(line_through_points(&s, pt(2), pt(3)).unwrap(), l);
        assert_eq!(line_through_planes(&s, pl(4), pl(8)).unwrap(), l);
        assert_eq!(line_through_planes(&s, pl(4), pl(12)).unwrap(), l);
        assert!(matches!(
            line_through_points(&s, pt(2), pt(2)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn line_through_planes_is_dual_line_through_points() {
        let s = generate_pg3(3).unwrap();
        let d = s.dualize();
        for (a, b) in [(0, 1), (3, 17), (5, 39)] {
            let direct = line_through_planes(&s, PlaneId(a), PlaneId(b)).unwrap();
            let via_dual = line_through_points(&d, PointId(a), PointId(b)).unwrap();
            assert_eq!(direct.transpose(), via_dual);
        }
    }

    #[test]
    fn pg33_lines_have_four_of_each() {
        let s = generate_pg3(3).unwrap();
        let lines = all_lines(&s).unwrap();
        assert_eq!(lines.len(), 130);
        for l in &lines {
            assert_eq!(l.point_pencil().len(), 4);
            assert_eq!(l.plane_pencil().len(), 4);
        }
    }

    #[test]
    fn pg32_line_counts() {
        let s = generate_pg3(2).unwrap();
        let lines = all_lines(&s).unwrap();
        assert_eq!(lines.len(), 35);
        for p in 0..15 {
            let through = lines
                .iter()
                .filter(|l| l.contains_point(PointId(p)))
                .count();
            assert_eq!(through, 7);
        }
        let by_planes: HashSet<_> = lines.iter().map(|l| l.plane_pencil().clone()).collect();
        assert_eq!(by_planes.len(), 35);
    }

    #[test]
    fn meet_examples() {
        let s = generate_pg3(2).unwrap();
        let a = line_through_points(&s, pt(1), pt(2)).unwrap();
        let b = line_through_points(&s, pt(1), pt(4)).unwrap();
        assert_eq!(
            lines_meet(&s, &a, &b).unwrap(),
            MeetResult::Meet {
                point: pt(1),
                plane: pl(8)
            }
        );
        assert_eq!(lines_meet(&s, &a, &a).unwrap(), MeetResult::Equal);
        let skew = line_through_points(&s, pt(4), pt(8)).unwrap();
        assert_eq!(lines_meet(&s, &a, &skew).unwrap(), MeetResult::Disjoint);
    }

    #[test]
    fn line_new_rejects_unclosed_pencils() {
        let s = generate_pg3(2).unwrap();
        let points = PointSet::from_indices(15, [0, 1]).unwrap();
        let planes = s.perp_points(&points).unwrap();
        assert!(matches!(
            Line::new(&s, points, planes),
            Err(Error::MalformedLine {
                invariant: LineInvariant::PointPencilNotClosed,
                ..
            })
        ));
    }

    #[test]
    fn malformed_line_in_mutant() {
        // dropping one flag leaves {P1,P2} with only two common planes
        let s = generate_pg3(2).unwrap().with_flipped(pt(1), pl(4)).unwrap();
        let err = line_through_points(&s, pt(1), pt(2)).unwrap_err();
        assert!(matches!(
            err,
            Error::MalformedLine {
                invariant: LineInvariant::TooFewPlanes(2),
                ..
            }
        ));
        assert!(all_lines(&s).is_err());
    }

    #[test]
    fn tiny_structure_has_short_lines() {
        let s = IncidenceStructure::from_fn(3, 3, |_, _| true);
        // every pair spans all three points and all three planes
        let l = line_through_points(&s, PointId(0), PointId(1)).unwrap();
        assert_eq!(l.point_pencil().len(), 3);
        let s = IncidenceStructure::from_fn(2, 3, |_, _| true);
        assert!(matches!(
            line_through_points(&s, PointId(0), PointId(1)),
            Err(Error::MalformedLine {
                invariant: LineInvariant::TooFewPoints(2),
                ..
            })
        ));
    }

    #[test]
    fn census_counts() {
        let s = generate_pg3(2).unwrap();
        let c = line_census(&all_lines(&s).unwrap());
        assert_eq!(
            c,
            LineCensus {
                lines: 35,
                min_points: 3,
                max_points: 3,
                min_planes: 3,
                max_planes: 3
            }
        );
    }
}
