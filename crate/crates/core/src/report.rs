//! Verdicts and witnesses shared by the axiom and theorem checkers.
//!
//! A report renders as one line, `<ITEM> PASS|FAIL [witness=(...)] cases=<n>`.

use std::fmt;

use crate::incidence::{Element, Sort};

/// One entry of a witness tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Point(usize),
    Plane(usize),
}

impl Elem {
    pub fn of<E: Element>(e: E) -> Elem {
        match E::SORT {
            Sort::Point => Elem::Point(e.index()),
            Sort::Plane => Elem::Plane(e.index()),
        }
    }

    pub fn sort(self) -> Sort {
        match self {
            Elem::Point(_) => Sort::Point,
            Elem::Plane(_) => Sort::Plane,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Elem::Point(i) | Elem::Plane(i) => i,
        }
    }

    /// Typed view, if this entry has sort `E`.
    pub fn as_element<E: Element>(self) -> Option<E> {
        (self.sort() == E::SORT).then(|| E::from_index(self.index()))
    }

    pub fn transpose(self) -> Elem {
        match self {
            Elem::Point(i) => Elem::Plane(i),
            Elem::Plane(i) => Elem::Point(i),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Point(i) => write!(f, "pt{i}"),
            Elem::Plane(i) => write!(f, "pl{i}"),
        }
    }
}

/// A tuple of elements demonstrating a violation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Witness(pub Vec<Elem>);

impl Witness {
    pub fn new(elems: impl IntoIterator<Item = Elem>) -> Self {
        Witness(elems.into_iter().collect())
    }

    pub fn transpose(&self) -> Witness {
        Witness(self.0.iter().map(|e| e.transpose()).collect())
    }

    pub fn elems(&self) -> &[Elem] {
        &self.0
    }

    /// The entries of sort `E`, in order.
    pub fn of_sort<E: Element>(&self) -> Vec<E> {
        self.0.iter().filter_map(|e| e.as_element::<E>()).collect()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// Identifier of a checked statement, with its point/plane counterpart.
pub trait CheckItem: Copy + Eq + fmt::Debug + fmt::Display {
    fn dual(self) -> Self;
}

/// Pass/fail verdict for one statement over a structure.
///
/// `checked_cases` counts the quantifier instances evaluated. A failing
/// report always carries the least failing instance as its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report<K> {
    pub item: K,
    pub pass: bool,
    pub witness: Option<Witness>,
    pub checked_cases: u64,
}

impl<K: CheckItem> Report<K> {
    pub(crate) fn from_tally(item: K, tally: Tally) -> Self {
        Report {
            item,
            pass: tally.witness.is_none(),
            witness: tally.witness,
            checked_cases: tally.cases,
        }
    }
}

impl<K: CheckItem> fmt::Display for Report<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}",
            self.item,
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness={w}")?;
        }
        write!(f, " cases={}", self.checked_cases)
    }
}

/// Running count of evaluated cases plus the first failure seen.
#[derive(Debug, Clone, Default)]
pub(crate) struct Tally {
    pub cases: u64,
    pub witness: Option<Witness>,
}

impl Tally {
    /// Records one evaluated case; the first failure is kept.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }
}

/// Whether `dual_report` (computed on the dual structure) is the clause-wise
/// transpose of `report`.
///
/// Items, verdicts and case counts must agree exactly. Witnesses must either
/// transpose literally, or, for self-dual statements whose enumeration order
/// differs between the two sides, each transported witness must replay as a
/// violation on the other side.
pub(crate) fn transposes<K, R, D>(
    report: &Report<K>,
    dual_report: &Report<K>,
    replay_on_original: R,
    replay_on_dual: D,
) -> bool
where
    K: CheckItem,
    R: Fn(K, &Witness) -> bool,
    D: Fn(K, &Witness) -> bool,
{
    if dual_report.item != report.item.dual()
        || dual_report.pass != report.pass
        || dual_report.checked_cases != report.checked_cases
    {
        return false;
    }
    match (&report.witness, &dual_report.witness) {
        (None, None) => true,
        (Some(w), Some(dw)) => {
            *dw == w.transpose()
                || (replay_on_original(report.item, &dw.transpose())
                    && replay_on_dual(dual_report.item, &w.transpose()))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{PlaneId, PointId};

    #[test]
    fn witness_rendering() {
        let w = Witness::new([
            Elem::of(PointId(0)),
            Elem::of(PointId(3)),
            Elem::of(PlaneId(7)),
        ]);
        assert_eq!(w.to_string(), "(pt0,pt3,pl7)");
        assert_eq!(w.transpose().to_string(), "(pl0,pl3,pt7)");
        assert_eq!(Witness::default().to_string(), "()");
        assert_eq!(w.of_sort::<PointId>(), vec![PointId(0), PointId(3)]);
        assert_eq!(w.of_sort::<PlaneId>(), vec![PlaneId(7)]);
    }

    #[test]
    fn tally_keeps_first_failure() {
        let mut t = Tally::default();
        t.record(true, || unreachable!());
        t.record(false, || Witness::new([Elem::Point(1)]));
        t.record(false, || Witness::new([Elem::Point(2)]));
        assert_eq!(t.cases, 3);
        assert_eq!(t.witness, Some(Witness::new([Elem::Point(1)])));
    }
}
