//! Incidence structures between points and planes, and the two perp
//! operators forming their Galois connection.
//!
//! Points and planes are dense indices `0..n` per sort. Subsets of either
//! sort are bit-vectors sized to the owning structure, so the perp of a set
//! is an intersection of precomputed rows (or columns).
//!
//! Most operations exist in a sort-generic form parameterised by
//! [`Element`], which lets every checker be written once and run on either
//! side of the duality.

use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// The two sorts of element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Point,
    Plane,
}

impl Sort {
    pub fn dual(self) -> Sort {
        match self {
            Sort::Point => Sort::Plane,
            Sort::Plane => Sort::Point,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Point => "point",
            Sort::Plane => "plane",
        })
    }
}

/// Index of a point in its structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointId(pub usize);

/// Index of a plane in its structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneId(pub usize);

/// An element of one sort, with the opposite sort as `Dual`.
pub trait Element: Copy + Eq + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    type Dual: Element<Dual = Self>;
    const SORT: Sort;

    fn index(self) -> usize;
    fn from_index(index: usize) -> Self;

    /// Number of elements of this sort in `s`.
    fn count(s: &IncidenceStructure) -> usize;

    /// For each element of this sort, the set of opposite elements incident with it.
    fn incidences(s: &IncidenceStructure) -> &[ElemSet<Self::Dual>];
}

impl Element for PointId {
    type Dual = PlaneId;
    const SORT: Sort = Sort::Point;

    fn index(self) -> usize {
        self.0
    }
    fn from_index(index: usize) -> Self {
        PointId(index)
    }
    fn count(s: &IncidenceStructure) -> usize {
        s.n_points
    }
    fn incidences(s: &IncidenceStructure) -> &[PlaneSet] {
        &s.rows
    }
}

impl Element for PlaneId {
    type Dual = PointId;
    const SORT: Sort = Sort::Plane;

    fn index(self) -> usize {
        self.0
    }
    fn from_index(index: usize) -> Self {
        PlaneId(index)
    }
    fn count(s: &IncidenceStructure) -> usize {
        s.n_planes
    }
    fn incidences(s: &IncidenceStructure) -> &[PointSet] {
        &s.cols
    }
}

/// A subset of one sort, sized to the owning structure.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet<E> {
    bits: FixedBitSet,
    _sort: PhantomData<E>,
}

pub type PointSet = ElemSet<PointId>;
pub type PlaneSet = ElemSet<PlaneId>;

impl<E: Element> ElemSet<E> {
    pub fn empty(universe: usize) -> Self {
        ElemSet {
            bits: FixedBitSet::with_capacity(universe),
            _sort: PhantomData,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElemSet {
            bits,
            _sort: PhantomData,
        }
    }

    /// Builds a set from raw indices, rejecting any index `>= universe`.
    pub fn from_indices<I>(universe: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(universe);
        for index in indices {
            if index >= universe {
                return Err(Error::IndexOutOfRange {
                    sort: E::SORT,
                    index,
                    size: universe,
                });
            }
            set.bits.insert(index);
        }
        Ok(set)
    }

    pub fn from_elements<I>(universe: usize, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
    {
        Self::from_indices(universe, elements.into_iter().map(E::index))
    }

    /// Size of the sort this set is drawn from.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn contains(&self, e: E) -> bool {
        self.bits.contains(e.index())
    }

    /// Panics if `e` lies outside the universe.
    pub fn insert(&mut self, e: E) {
        self.bits.insert(e.index());
    }

    pub fn iter(&self) -> impl Iterator<Item = E> + '_ {
        self.bits.ones().map(E::from_index)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn first(&self) -> Option<E> {
        self.bits.minimum().map(E::from_index)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersection_count(&self, other: &Self) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn union_with(&mut self, other: &Self) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    /// Relabels the members as elements of the opposite sort (index transport
    /// into the dual structure).
    pub fn transpose(self) -> ElemSet<E::Dual> {
        ElemSet {
            bits: self.bits,
            _sort: PhantomData,
        }
    }
}

impl<E: Element> fmt::Debug for ElemSet<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}s", E::SORT)?;
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

/// A finite incidence relation between points and planes.
///
/// Stored both row-wise (planes through each point) and column-wise (points
/// on each plane); the two views are built together and never mutated.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IncidenceStructure {
    n_points: usize,
    n_planes: usize,
    rows: Vec<PlaneSet>,
    cols: Vec<PointSet>,
}

impl IncidenceStructure {
    /// Builds a structure from a predicate on `(point, plane)` indices.
    pub fn from_fn<F>(n_points: usize, n_planes: usize, mut incident: F) -> Self
    where
        F: FnMut(usize, usize) -> bool,
    {
        let mut rows = vec![PlaneSet::empty(n_planes); n_points];
        let mut cols = vec![PointSet::empty(n_points); n_planes];
        for (p, row) in rows.iter_mut().enumerate() {
            for (h, col) in cols.iter_mut().enumerate() {
                if incident(p, h) {
                    row.bits.insert(h);
                    col.bits.insert(p);
                }
            }
        }
        IncidenceStructure {
            n_points,
            n_planes,
            rows,
            cols,
        }
    }

    /// Builds a structure from the list of incident `(point, plane)` pairs.
    pub fn from_pairs<I>(n_points: usize, n_planes: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![PlaneSet::empty(n_planes); n_points];
        let mut cols = vec![PointSet::empty(n_points); n_planes];
        for (p, h) in pairs {
            check_index(Sort::Point, p, n_points)?;
            check_index(Sort::Plane, h, n_planes)?;
            rows[p].bits.insert(h);
            cols[h].bits.insert(p);
        }
        Ok(IncidenceStructure {
            n_points,
            n_planes,
            rows,
            cols,
        })
    }

    pub fn empty() -> Self {
        Self::from_fn(0, 0, |_, _| false)
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_planes(&self) -> usize {
        self.n_planes
    }

    pub fn incident(&self, point: PointId, plane: PlaneId) -> Result<bool> {
        check_index(Sort::Point, point.0, self.n_points)?;
        check_index(Sort::Plane, plane.0, self.n_planes)?;
        Ok(self.rows[point.0].bits.contains(plane.0))
    }

    /// `P^⊣`: the planes through `point`.
    pub fn planes_through(&self, point: PointId) -> Result<&PlaneSet> {
        check_index(Sort::Point, point.0, self.n_points)?;
        Ok(&self.rows[point.0])
    }

    /// `π^⊣`: the points on `plane`.
    pub fn points_on(&self, plane: PlaneId) -> Result<&PointSet> {
        check_index(Sort::Plane, plane.0, self.n_planes)?;
        Ok(&self.cols[plane.0])
    }

    /// The planes incident with every point of `points`.
    pub fn perp_points(&self, points: &PointSet) -> Result<PlaneSet> {
        self.perp(points)
    }

    /// The points incident with every plane of `planes`.
    pub fn perp_planes(&self, planes: &PlaneSet) -> Result<PointSet> {
        self.perp(planes)
    }

    /// Whether every point of `points` is incident with every plane of `planes`.
    pub fn mutually_incident(&self, points: &PointSet, planes: &PlaneSet) -> Result<bool> {
        self.check_universe(points)?;
        self.check_universe(planes)?;
        Ok(points.iter().all(|p| planes.is_subset(&self.rows[p.0])))
    }

    /// The transposed structure: points become planes and vice versa, with
    /// indices unchanged.
    pub fn dualize(&self) -> Self {
        IncidenceStructure {
            n_points: self.n_planes,
            n_planes: self.n_points,
            rows: self.cols.iter().cloned().map(ElemSet::transpose).collect(),
            cols: self.rows.iter().cloned().map(ElemSet::transpose).collect(),
        }
    }

    /// Returns a copy with the incidence of one `(point, plane)` pair toggled.
    pub fn with_flipped(&self, point: PointId, plane: PlaneId) -> Result<Self> {
        check_index(Sort::Point, point.0, self.n_points)?;
        check_index(Sort::Plane, plane.0, self.n_planes)?;
        let mut out = self.clone();
        out.rows[point.0].bits.toggle(plane.0);
        out.cols[plane.0].bits.toggle(point.0);
        Ok(out)
    }

    /// Number of incident pairs.
    pub fn flag_count(&self) -> usize {
        self.rows.iter().map(ElemSet::len).sum()
    }

    // Sort-generic forms.

    pub fn count<E: Element>(&self) -> usize {
        E::count(self)
    }

    pub fn full<E: Element>(&self) -> ElemSet<E> {
        ElemSet::full(E::count(self))
    }

    /// Elements of the opposite sort incident with `e`. Panics on a bad index.
    pub fn through<E: Element>(&self, e: E) -> &ElemSet<E::Dual> {
        &E::incidences(self)[e.index()]
    }

    /// Checked perp of a set of either sort.
    pub fn perp<E: Element>(&self, set: &ElemSet<E>) -> Result<ElemSet<E::Dual>> {
        self.check_universe(set)?;
        Ok(self.perp_unchecked(set))
    }

    /// Double perp `S^⊣⊣`.
    pub fn closure<E: Element>(&self, set: &ElemSet<E>) -> Result<ElemSet<E>> {
        let once = self.perp(set)?;
        Ok(self.perp_unchecked(&once))
    }

    pub(crate) fn perp_unchecked<E: Element>(&self, set: &ElemSet<E>) -> ElemSet<E::Dual> {
        let incidences = E::incidences(self);
        let mut out = ElemSet::full(<E::Dual as Element>::count(self));
        for e in set.bits.ones() {
            out.intersect_with(&incidences[e]);
        }
        out
    }

    /// `{a, b}^⊣`, computed without allocating a pair set.
    pub(crate) fn perp_pair<E: Element>(&self, a: E, b: E) -> ElemSet<E::Dual> {
        let incidences = E::incidences(self);
        incidences[a.index()].intersection(&incidences[b.index()])
    }

    pub(crate) fn check_element<E: Element>(&self, e: E) -> Result<()> {
        check_index(E::SORT, e.index(), E::count(self))
    }

    pub(crate) fn check_universe<E: Element>(&self, set: &ElemSet<E>) -> Result<()> {
        let expected = E::count(self);
        if set.universe() != expected {
            return Err(Error::UniverseMismatch {
                sort: E::SORT,
                expected,
                found: set.universe(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for IncidenceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IncidenceStructure {}x{}", self.n_points, self.n_planes)?;
        for row in &self.rows {
            let line: String = (0..self.n_planes)
                .map(|h| if row.bits.contains(h) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

fn check_index(sort: Sort, index: usize, size: usize) -> Result<()> {
    if index < size {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { sort, index, size })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pg::generate_pg3;

    // Structure index i is the encoded vector i + 1 in PG(3,2).
    fn pt(encoded: usize) -> PointId {
        PointId(encoded - 1)
    }
    fn pl(encoded: usize) -> PlaneId {
        PlaneId(encoded - 1)
    }
    fn points(s: &IncidenceStructure, encoded: &[usize]) -> PointSet {
        PointSet::from_indices(s.n_points(), encoded.iter().map(|e| e - 1)).unwrap()
    }
    fn planes(s: &IncidenceStructure, encoded: &[usize]) -> PlaneSet {
        PlaneSet::from_indices(s.n_planes(), encoded.iter().map(|e| e - 1)).unwrap()
    }
    fn encoded<E: Element>(set: &ElemSet<E>) -> Vec<usize> {
        set.iter().map(|e| e.index() + 1).collect()
    }

    #[test]
    fn incidence_examples() {
        let s = generate_pg3(2).unwrap();
        assert!(s.incident(pt(1), pl(2)).unwrap());
        assert!(!s.incident(pt(3), pl(1)).unwrap());
        let dd = s.dualize().dualize();
        assert_eq!(dd, s);
    }

    #[test]
    fn incident_rejects_bad_index() {
        let s = generate_pg3(2).unwrap();
        assert!(matches!(
            s.incident(PointId(15), PlaneId(0)),
            Err(Error::IndexOutOfRange {
                sort: Sort::Point,
                index: 15,
                size: 15
            })
        ));
        assert!(s.incident(PointId(0), PlaneId(99)).is_err());
    }

    #[test]
    fn perp_points_examples() {
        let s = generate_pg3(2).unwrap();
        let p = s.perp_points(&points(&s, &[1, 2])).unwrap();
        assert_eq!(encoded(&p), vec![4, 8, 12]);
        let p = s.perp_points(&points(&s, &[1, 2, 4])).unwrap();
        assert_eq!(encoded(&p), vec![8]);
        assert!(s.perp_points(&PointSet::empty(15)).unwrap().is_full());
    }

    #[test]
    fn perp_planes_examples() {
        let s = generate_pg3(2).unwrap();
        let p = s.perp_planes(&planes(&s, &[4, 8, 12])).unwrap();
        assert_eq!(encoded(&p), vec![1, 2, 3]);
        let p = s.perp_planes(&planes(&s, &[8])).unwrap();
        assert_eq!(encoded(&p), vec![1, 2, 3, 4, 5, 6, 7]);
        assert!(s.perp_planes(&PlaneSet::empty(15)).unwrap().is_full());
    }

    #[test]
    fn perp_rejects_foreign_set() {
        let s = generate_pg3(2).unwrap();
        let foreign = PointSet::empty(7);
        assert!(matches!(
            s.perp_points(&foreign),
            Err(Error::UniverseMismatch {
                expected: 15,
                found: 7,
                ..
            })
        ));
    }

    #[test]
    fn mutually_incident_examples() {
        let s = generate_pg3(2).unwrap();
        assert!(s
            .mutually_incident(&points(&s, &[1, 2]), &planes(&s, &[4, 8]))
            .unwrap());
        assert!(s
            .mutually_incident(&PointSet::empty(15), &planes(&s, &[1, 2, 3]))
            .unwrap());
        assert!(!s
            .mutually_incident(&points(&s, &[1, 3]), &planes(&s, &[1]))
            .unwrap());
    }

    #[test]
    fn dualize_swaps_shape() {
        let s = IncidenceStructure::from_fn(2, 5, |p, h| (p + h) % 2 == 0);
        let d = s.dualize();
        assert_eq!((d.n_points(), d.n_planes()), (5, 2));
        for p in 0..2 {
            for h in 0..5 {
                assert_eq!(
                    s.incident(PointId(p), PlaneId(h)).unwrap(),
                    d.incident(PointId(h), PlaneId(p)).unwrap()
                );
            }
        }
    }

    #[test]
    fn from_pairs_validates() {
        assert!(IncidenceStructure::from_pairs(2, 2, [(0, 0), (1, 2)]).is_err());
        let s = IncidenceStructure::from_pairs(2, 2, [(0, 0), (1, 1)]).unwrap();
        assert_eq!(s.flag_count(), 2);
    }

    #[test]
    fn flip_toggles_both_views() {
        let s = generate_pg3(2).unwrap();
        let m = s.with_flipped(PointId(0), PlaneId(0)).unwrap();
        assert_ne!(
            s.incident(PointId(0), PlaneId(0)).unwrap(),
            m.incident(PointId(0), PlaneId(0)).unwrap()
        );
        assert_eq!(
            m.points_on(PlaneId(0)).unwrap().contains(PointId(0)),
            m.planes_through(PointId(0)).unwrap().contains(PlaneId(0))
        );
        assert_eq!(m.with_flipped(PointId(0), PlaneId(0)).unwrap(), s);
    }
}
