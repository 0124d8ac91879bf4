//! Countable posets presented by an enumeration, a decidable comparison and
//! an optional bundle of oracles.
//!
//! The oracles stand in for finiteness facts that cannot be computed from the
//! comparison alone. Each linearizer consults only the oracle its
//! construction needs: the ω and ω* block constructions read
//! `predecessors` / `successors`, the ζ construction reads `interval`, and the
//! ω+ω* split reads `side`. An oracle that is present but answers `None` for
//! some element is declaring that the corresponding set is infinite there.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{FinitePoset, Id};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleName {
    Predecessors,
    Successors,
    Interval,
    Side,
}

impl fmt::Display for OracleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleName::Predecessors => "predecessors",
            OracleName::Successors => "successors",
            OracleName::Interval => "interval",
            OracleName::Side => "side",
        })
    }
}

/// Which oracles a stream provides.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Oracles {
    pub predecessors: bool,
    pub successors: bool,
    pub interval: bool,
    pub side: bool,
}

impl Oracles {
    pub const NONE: Oracles = Oracles {
        predecessors: false,
        successors: false,
        interval: false,
        side: false,
    };
    pub const ALL: Oracles = Oracles {
        predecessors: true,
        successors: true,
        interval: true,
        side: true,
    };

    pub fn has(&self, name: OracleName) -> bool {
        match name {
            OracleName::Predecessors => self.predecessors,
            OracleName::Successors => self.successors,
            OracleName::Interval => self.interval,
            OracleName::Side => self.side,
        }
    }
}

/// Classification of an element of an ω+ω*-like poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// Finitely many predecessors.
    FinPred,
    /// Finitely many successors.
    FinSucc,
}

/// A lazily enumerated countable poset.
///
/// `element` must be injective, and `leq` must be a partial order on every
/// finite set of enumerated elements. A stream that runs out (`element`
/// returns `None`) is a finite poset.
pub trait StreamPoset {
    fn element(&self, stage: usize) -> Option<Id>;
    fn leq(&self, x: Id, y: Id) -> bool;

    fn oracles(&self) -> Oracles {
        Oracles::NONE
    }
    /// Complete list of `{y : y ≤ x}`.
    fn predecessors(&self, _x: Id) -> Option<Vec<Id>> {
        None
    }
    /// Complete list of `{y : x ≤ y}`.
    fn successors(&self, _x: Id) -> Option<Vec<Id>> {
        None
    }
    /// Complete list of `[x,y] = {z : x≤z≤y or y≤z≤x}`.
    fn interval(&self, _x: Id, _y: Id) -> Option<Vec<Id>> {
        None
    }
    fn side(&self, _x: Id) -> Option<Side> {
        None
    }
}

impl<S: StreamPoset + ?Sized> StreamPoset for &S {
    fn element(&self, stage: usize) -> Option<Id> {
        (**self).element(stage)
    }
    fn leq(&self, x: Id, y: Id) -> bool {
        (**self).leq(x, y)
    }
    fn oracles(&self) -> Oracles {
        (**self).oracles()
    }
    fn predecessors(&self, x: Id) -> Option<Vec<Id>> {
        (**self).predecessors(x)
    }
    fn successors(&self, x: Id) -> Option<Vec<Id>> {
        (**self).successors(x)
    }
    fn interval(&self, x: Id, y: Id) -> Option<Vec<Id>> {
        (**self).interval(x, y)
    }
    fn side(&self, x: Id) -> Option<Side> {
        (**self).side(x)
    }
}

impl<S: StreamPoset + ?Sized> StreamPoset for Box<S> {
    fn element(&self, stage: usize) -> Option<Id> {
        (**self).element(stage)
    }
    fn leq(&self, x: Id, y: Id) -> bool {
        (**self).leq(x, y)
    }
    fn oracles(&self) -> Oracles {
        (**self).oracles()
    }
    fn predecessors(&self, x: Id) -> Option<Vec<Id>> {
        (**self).predecessors(x)
    }
    fn successors(&self, x: Id) -> Option<Vec<Id>> {
        (**self).successors(x)
    }
    fn interval(&self, x: Id, y: Id) -> Option<Vec<Id>> {
        (**self).interval(x, y)
    }
    fn side(&self, x: Id) -> Option<Side> {
        (**self).side(x)
    }
}

pub(crate) fn require(stream: &impl StreamPoset, name: OracleName) -> Result<()> {
    if stream.oracles().has(name) {
        Ok(())
    } else {
        Err(Error::OracleMissing(name))
    }
}

pub(crate) fn predecessors_of(stream: &impl StreamPoset, x: Id) -> Result<Vec<Id>> {
    require(stream, OracleName::Predecessors)?;
    stream.predecessors(x).ok_or(Error::OracleUndefined {
        oracle: OracleName::Predecessors,
        element: x,
    })
}

pub(crate) fn successors_of(stream: &impl StreamPoset, x: Id) -> Result<Vec<Id>> {
    require(stream, OracleName::Successors)?;
    stream.successors(x).ok_or(Error::OracleUndefined {
        oracle: OracleName::Successors,
        element: x,
    })
}

pub(crate) fn interval_of(stream: &impl StreamPoset, x: Id, y: Id) -> Result<Vec<Id>> {
    require(stream, OracleName::Interval)?;
    stream.interval(x, y).ok_or(Error::OracleUndefined {
        oracle: OracleName::Interval,
        element: x,
    })
}

pub(crate) fn side_of(stream: &impl StreamPoset, x: Id) -> Result<Side> {
    require(stream, OracleName::Side)?;
    stream.side(x).ok_or(Error::OracleUndefined {
        oracle: OracleName::Side,
        element: x,
    })
}

/// The first `s` enumerated elements, or fewer if the stream runs out.
pub fn take_elements(stream: &impl StreamPoset, s: usize) -> Vec<Id> {
    (0..s).map_while(|i| stream.element(i)).collect()
}

/// Induced poset on the first `s` enumerated elements.
pub fn prefix(stream: &impl StreamPoset, s: usize) -> Result<FinitePoset> {
    let ids = take_elements(stream, s);
    if ids.len() < s {
        return Err(Error::FiniteDomainEnd(ids.len()));
    }
    FinitePoset::from_fn_exact(&ids, |x, y| stream.leq(x, y))?.ok_or(Error::InvalidStream(s))
}

/// Induced poset on arbitrary elements of a stream.
pub fn induced(stream: &impl StreamPoset, ids: &[Id]) -> Result<FinitePoset> {
    FinitePoset::from_fn_exact(ids, |x, y| stream.leq(x, y))?.ok_or(Error::InvalidStream(ids.len()))
}

// --- built-in families ------------------------------------------------------

/// `(N, ≤)` enumerated in increasing order.
#[derive(Clone, Copy, Debug, Default)]
pub struct OmegaStream;

impl StreamPoset for OmegaStream {
    fn element(&self, stage: usize) -> Option<Id> {
        Some(stage as Id)
    }
    fn leq(&self, x: Id, y: Id) -> bool {
        x <= y
    }
    fn oracles(&self) -> Oracles {
        Oracles {
            predecessors: true,
            successors: false,
            interval: true,
            side: true,
        }
    }
    fn predecessors(&self, x: Id) -> Option<Vec<Id>> {
        Some((0..=x).collect())
    }
    fn interval(&self, x: Id, y: Id) -> Option<Vec<Id>> {
        Some((x.min(y)..=x.max(y)).collect())
    }
    fn side(&self, _x: Id) -> Option<Side> {
        Some(Side::FinPred)
    }
}

/// `(N, ≥)` enumerated in increasing id order.
#[derive(Clone, Copy, Debug, Default)]
pub struct OmegaStarStream;

impl StreamPoset for OmegaStarStream {
    fn element(&self, stage: usize) -> Option<Id> {
        Some(stage as Id)
    }
    fn leq(&self, x: Id, y: Id) -> bool {
        x >= y
    }
    fn oracles(&self) -> Oracles {
        Oracles {
            predecessors: false,
            successors: true,
            interval: true,
            side: true,
        }
    }
    fn successors(&self, x: Id) -> Option<Vec<Id>> {
        Some((0..=x).collect())
    }
    fn interval(&self, x: Id, y: Id) -> Option<Vec<Id>> {
        Some((x.min(y)..=x.max(y)).collect())
    }
    fn side(&self, _x: Id) -> Option<Side> {
        Some(Side::FinSucc)
    }
}

/// A countable antichain.
#[derive(Clone, Copy, Debug, Default)]
pub struct AntichainStream;

impl StreamPoset for AntichainStream {
    fn element(&self, stage: usize) -> Option<Id> {
        Some(stage as Id)
    }
    fn leq(&self, x: Id, y: Id) -> bool {
        x == y
    }
    fn oracles(&self) -> Oracles {
        Oracles::ALL
    }
    fn predecessors(&self, x: Id) -> Option<Vec<Id>> {
        Some(vec![x])
    }
    fn successors(&self, x: Id) -> Option<Vec<Id>> {
        Some(vec![x])
    }
    fn interval(&self, x: Id, y: Id) -> Option<Vec<Id>> {
        Some(if x == y { vec![x] } else { vec![] })
    }
    fn side(&self, _x: Id) -> Option<Side> {
        Some(Side::FinPred)
    }
}

/// Id of the integer `z` in the ζ stream: `0, -1, 1, -2, 2, ...` get ids `0, 1, 2, 3, 4, ...`.
pub fn zeta_id(z: i64) -> Id {
    if z >= 0 {
        2 * z as u64
    } else {
        2 * (-(z + 1)) as u64 + 1
    }
}

/// Inverse of [`zeta_id`].
pub fn zeta_value(id: Id) -> i64 {
    if id.is_multiple_of(2) {
        (id / 2) as i64
    } else {
        -((id / 2) as i64) - 1
    }
}

/// Enumeration orders for the integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ZetaEnumeration {
    /// `0, -1, 1, -2, 2, ...`
    #[default]
    Alternating,
    /// `0, 1, -1, 2, -2, ...`
    PositiveFirst,
    /// `0, 1, 2, -1, 3, 4, -2, ...`
    TwoToOne,
}

impl ZetaEnumeration {
    pub const ALL: [ZetaEnumeration; 3] = [
        ZetaEnumeration::Alternating,
        ZetaEnumeration::PositiveFirst,
        ZetaEnumeration::TwoToOne,
    ];

    pub fn value(self, stage: usize) -> i64 {
        let s = stage as i64;
        match self {
            ZetaEnumeration::Alternating => zeta_value(stage as Id),
            ZetaEnumeration::PositiveFirst => {
                if s == 0 {
                    0
                } else if s % 2 == 1 {
                    (s + 1) / 2
                } else {
                    -s / 2
                }
            }
            ZetaEnumeration::TwoToOne => {
                if s == 0 {
                    return 0;
                }
                let (g, r) = ((s - 1) / 3, (s - 1) % 3);
                match r {
                    0 => 2 * g + 1,
                    1 => 2 * g + 2,
                    _ => -(g + 1),
                }
            }
        }
    }
}

/// The integers; element ids follow [`zeta_id`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ZetaStream {
    pub enumeration: ZetaEnumeration,
}

impl StreamPoset for ZetaStream {
    fn element(&self, stage: usize) -> Option<Id> {
        Some(zeta_id(self.enumeration.value(stage)))
    }
    fn leq(&self, x: Id, y: Id) -> bool {
        zeta_value(x) <= zeta_value(y)
    }
    fn oracles(&self) -> Oracles {
        Oracles {
            predecessors: false,
            successors: false,
            interval: true,
            side: false,
        }
    }
    fn interval(&self, x: Id, y: Id) -> Option<Vec<Id>> {
        let (a, b) = (zeta_value(x), zeta_value(y));
        Some((a.min(b)..=a.max(b)).map(zeta_id).collect())
    }
}

/// `ω + ω*`: `(0,k)` has id `2k`, `(1,k)` has id `2k+1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct OmegaOmegaStarStream;

impl OmegaOmegaStarStream {
    fn coord(x: Id) -> (u64, u64) {
        (x % 2, x / 2)
    }
}

impl StreamPoset for OmegaOmegaStarStream {
    fn element(&self, stage: usize) -> Option<Id> {
        Some(stage as Id)
    }
    fn leq(&self, x: Id, y: Id) -> bool {
        match (Self::coord(x), Self::coord(y)) {
            ((0, a), (0, b)) => a <= b,
            ((0, _), _) => true,
            (_, (0, _)) => false,
            ((_, a), (_, b)) => a >= b,
        }
    }
    fn oracles(&self) -> Oracles {
        Oracles {
            predecessors: true,
            successors: true,
            interval: false,
            side: true,
        }
    }
    fn predecessors(&self, x: Id) -> Option<Vec<Id>> {
        match Self::coord(x) {
            (0, k) => Some((0..=k).map(|j| 2 * j).collect()),
            _ => None,
        }
    }
    fn successors(&self, x: Id) -> Option<Vec<Id>> {
        match Self::coord(x) {
            (1, k) => Some((0..=k).map(|j| 2 * j + 1).collect()),
            _ => None,
        }
    }
    fn side(&self, x: Id) -> Option<Side> {
        Some(if x.is_multiple_of(2) {
            Side::FinPred
        } else {
            Side::FinSucc
        })
    }
}

/// A finite poset as an exhausted stream, with brute-force oracles.
#[derive(Clone, Debug)]
pub struct FiniteStream {
    poset: FinitePoset,
    enumeration: Vec<Id>,
}

impl FiniteStream {
    /// Enumerates in the poset's element order.
    pub fn new(poset: FinitePoset) -> Self {
        let enumeration = poset.elements().to_vec();
        FiniteStream { poset, enumeration }
    }

    pub fn with_enumeration(poset: FinitePoset, enumeration: Vec<Id>) -> Result<Self> {
        let check = FinitePoset::antichain(&enumeration)?;
        for &x in poset.elements() {
            if !check.contains(x) {
                return Err(Error::NotInDomain(x));
            }
        }
        if let Some(&x) = enumeration.iter().find(|x| !poset.contains(**x)) {
            return Err(Error::UnknownId(x));
        }
        Ok(FiniteStream { poset, enumeration })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }
}

impl StreamPoset for FiniteStream {
    fn element(&self, stage: usize) -> Option<Id> {
        self.enumeration.get(stage).copied()
    }
    fn leq(&self, x: Id, y: Id) -> bool {
        self.poset.leq(x, y)
    }
    fn oracles(&self) -> Oracles {
        Oracles::ALL
    }
    fn predecessors(&self, x: Id) -> Option<Vec<Id>> {
        self.poset.contains(x).then(|| self.poset.down_set(x))
    }
    fn successors(&self, x: Id) -> Option<Vec<Id>> {
        self.poset.contains(x).then(|| self.poset.up_set(x))
    }
    fn interval(&self, x: Id, y: Id) -> Option<Vec<Id>> {
        (self.poset.contains(x) && self.poset.contains(y)).then(|| self.poset.interval(x, y))
    }
    fn side(&self, x: Id) -> Option<Side> {
        self.poset.contains(x).then_some(Side::FinPred)
    }
}

// --- oracle validation ------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "problem", content = "witness")]
pub enum Problem {
    /// The listed element does not satisfy the defining comparison.
    Unsound(Id),
    /// An element of the prefix satisfies the comparison but is not listed.
    Incomplete(Id),
    /// `side` names a finite set that the matching oracle says is infinite.
    SideInconsistent,
    /// `side` gave no classification.
    SideUndefined,
    /// The comparison is not a partial order on the prefix.
    NotPartialOrder,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub oracle: OracleName,
    /// The queried element (or pair, for `interval`).
    pub subject: Vec<Id>,
    #[serde(flatten)]
    pub problem: Problem,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub stages: usize,
    pub not_present: Vec<OracleName>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_list(
    report: &mut ValidationReport,
    oracle: OracleName,
    subject: Vec<Id>,
    listed: &[Id],
    prefix: &[Id],
    holds: impl Fn(Id) -> bool,
) {
    let set: HashSet<Id> = listed.iter().copied().collect();
    for &y in listed {
        if !holds(y) {
            report.violations.push(Violation {
                oracle,
                subject: subject.clone(),
                problem: Problem::Unsound(y),
            });
        }
    }
    for &y in prefix {
        if holds(y) && !set.contains(&y) {
            report.violations.push(Violation {
                oracle,
                subject: subject.clone(),
                problem: Problem::Incomplete(y),
            });
        }
    }
}

/// Cross-check every oracle answer on the first `s` elements against `leq`.
///
/// Cost is quadratic in `s` for the element oracles and up to cubic for
/// `interval` on dense comparabilities; keep `s` desk-sized.
pub fn validate_oracles(stream: &impl StreamPoset, s: usize) -> ValidationReport {
    let ids = take_elements(stream, s);
    let present = stream.oracles();
    let mut report = ValidationReport {
        stages: ids.len(),
        ..Default::default()
    };
    for name in [
        OracleName::Predecessors,
        OracleName::Successors,
        OracleName::Interval,
        OracleName::Side,
    ] {
        if !present.has(name) {
            report.not_present.push(name);
        }
    }
    if !matches!(FinitePoset::from_fn_exact(&ids, |x, y| stream.leq(x, y)), Ok(Some(_))) {
        report.violations.push(Violation {
            oracle: OracleName::Predecessors,
            subject: vec![],
            problem: Problem::NotPartialOrder,
        });
        return report;
    }

    for &x in &ids {
        if present.predecessors {
            if let Some(list) = stream.predecessors(x) {
                check_list(&mut report, OracleName::Predecessors, vec![x], &list, &ids, |y| {
                    stream.leq(y, x)
                });
            }
        }
        if present.successors {
            if let Some(list) = stream.successors(x) {
                check_list(&mut report, OracleName::Successors, vec![x], &list, &ids, |y| {
                    stream.leq(x, y)
                });
            }
        }
        if present.side {
            let inconsistent = match stream.side(x) {
                None => Some(Problem::SideUndefined),
                Some(Side::FinPred) if present.predecessors && stream.predecessors(x).is_none() => {
                    Some(Problem::SideInconsistent)
                }
                Some(Side::FinSucc) if present.successors && stream.successors(x).is_none() => {
                    Some(Problem::SideInconsistent)
                }
                _ => None,
            };
            if let Some(problem) = inconsistent {
                report.violations.push(Violation {
                    oracle: OracleName::Side,
                    subject: vec![x],
                    problem,
                });
            }
        }
    }

    if present.interval {
        for (i, &x) in ids.iter().enumerate() {
            for &y in &ids[i..] {
                let Some(list) = stream.interval(x, y) else { continue };
                let between = |z: Id| (stream.leq(x, z) && stream.leq(z, y)) || (stream.leq(y, z) && stream.leq(z, x));
                if stream.leq(x, y) || stream.leq(y, x) {
                    check_list(&mut report, OracleName::Interval, vec![x, y], &list, &ids, between);
                } else {
                    for &z in &list {
                        report.violations.push(Violation {
                            oracle: OracleName::Interval,
                            subject: vec![x, y],
                            problem: Problem::Unsound(z),
                        });
                    }
                }
            }
        }
    }
    report
}

/// A deliberately broken oracle, for exercising the validator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeededFault {
    /// `predecessors(x)` silently omits `y`.
    DropPredecessor { x: Id, y: Id },
    /// `successors(x)` additionally lists `y`.
    ExtraSuccessor { x: Id, y: Id },
    /// `side(x)` stays `FinPred` but `predecessors(x)` answers `None`.
    SideWithoutPredecessors { x: Id },
}

/// Wraps a stream and corrupts one oracle answer.
#[derive(Clone, Debug)]
pub struct FaultyStream<S> {
    pub inner: S,
    pub fault: SeededFault,
}

impl<S: StreamPoset> StreamPoset for FaultyStream<S> {
    fn element(&self, stage: usize) -> Option<Id> {
        self.inner.element(stage)
    }
    fn leq(&self, x: Id, y: Id) -> bool {
        self.inner.leq(x, y)
    }
    fn oracles(&self) -> Oracles {
        let mut o = self.inner.oracles();
        match self.fault {
            SeededFault::DropPredecessor { .. } => o.predecessors = true,
            SeededFault::ExtraSuccessor { .. } => o.successors = true,
            SeededFault::SideWithoutPredecessors { .. } => {
                o.predecessors = true;
                o.side = true;
            }
        }
        o
    }
    fn predecessors(&self, x: Id) -> Option<Vec<Id>> {
        match self.fault {
            SeededFault::DropPredecessor { x: fx, y } if fx == x => self
                .inner
                .predecessors(x)
                .map(|v| v.into_iter().filter(|&p| p != y).collect()),
            SeededFault::SideWithoutPredecessors { x: fx } if fx == x => None,
            _ => self.inner.predecessors(x),
        }
    }
    fn successors(&self, x: Id) -> Option<Vec<Id>> {
        match self.fault {
            SeededFault::ExtraSuccessor { x: fx, y } if fx == x => self.inner.successors(x).map(|mut v| {
                v.push(y);
                v
            }),
            _ => self.inner.successors(x),
        }
    }
    fn interval(&self, x: Id, y: Id) -> Option<Vec<Id>> {
        self.inner.interval(x, y)
    }
    fn side(&self, x: Id) -> Option<Side> {
        match self.fault {
            SeededFault::SideWithoutPredecessors { x: fx } if fx == x => Some(Side::FinPred),
            _ => self.inner.side(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_prefix_is_a_chain() {
        let p = prefix(&OmegaStream, 3).unwrap();
        assert_eq!(p, FinitePoset::chain(&[0, 1, 2]).unwrap());
    }

    #[test]
    fn antichain_prefix_and_empty_prefix() {
        assert_eq!(
            prefix(&AntichainStream, 2).unwrap(),
            FinitePoset::antichain(&[0, 1]).unwrap()
        );
        assert!(prefix(&ZetaStream::default(), 0).unwrap().is_empty());
    }

    #[test]
    fn exhausted_stream_reports_its_length() {
        let s = FiniteStream::new(FinitePoset::chain(&[0, 1]).unwrap());
        assert_eq!(prefix(&s, 5), Err(Error::FiniteDomainEnd(2)));
    }

    #[test]
    fn zigzag_ids() {
        for z in -50..50 {
            assert_eq!(zeta_value(zeta_id(z)), z);
        }
        assert_eq!((0..5).map(zeta_value).collect::<Vec<_>>(), vec![0, -1, 1, -2, 2]);
    }

    #[test]
    fn zeta_enumerations_are_bijective_on_a_window() {
        for e in ZetaEnumeration::ALL {
            let vals: HashSet<i64> = (0..301).map(|s| e.value(s)).collect();
            assert_eq!(vals.len(), 301, "{e:?} repeats a value");
            for z in -40..=40 {
                assert!(vals.contains(&z), "{e:?} misses {z}");
            }
        }
    }

    #[test]
    fn builtin_families_are_honest() {
        assert!(validate_oracles(&OmegaStream, 60).passed());
        assert!(validate_oracles(&OmegaStarStream, 60).passed());
        assert!(validate_oracles(&AntichainStream, 60).passed());
        assert!(validate_oracles(&OmegaOmegaStarStream, 60).passed());
        for e in ZetaEnumeration::ALL {
            assert!(validate_oracles(&ZetaStream { enumeration: e }, 40).passed());
        }
    }

    #[test]
    fn missing_oracles_are_listed_not_failed() {
        let r = validate_oracles(&ZetaStream::default(), 10);
        assert!(r.passed());
        assert_eq!(
            r.not_present,
            vec![OracleName::Predecessors, OracleName::Successors, OracleName::Side]
        );
    }

    #[test]
    fn dropped_predecessor_is_named() {
        let s = FaultyStream {
            inner: OmegaStream,
            fault: SeededFault::DropPredecessor { x: 5, y: 2 },
        };
        let r = validate_oracles(&s, 10);
        assert_eq!(
            r.violations,
            vec![Violation {
                oracle: OracleName::Predecessors,
                subject: vec![5],
                problem: Problem::Incomplete(2)
            }]
        );
    }

    #[test]
    fn side_without_predecessors_is_inconsistent() {
        let s = FaultyStream {
            inner: OmegaStream,
            fault: SeededFault::SideWithoutPredecessors { x: 3 },
        };
        let r = validate_oracles(&s, 10);
        assert_eq!(
            r.violations,
            vec![Violation {
                oracle: OracleName::Side,
                subject: vec![3],
                problem: Problem::SideInconsistent
            }]
        );
    }

    #[test]
    fn non_transitive_comparison_is_flagged() {
        struct Broken;
        impl StreamPoset for Broken {
            fn element(&self, stage: usize) -> Option<Id> {
                (stage < 3).then_some(stage as Id)
            }
            fn leq(&self, x: Id, y: Id) -> bool {
                x == y || y == x + 1
            }
        }
        assert_eq!(prefix(&Broken, 3), Err(Error::InvalidStream(3)));
        assert_eq!(
            validate_oracles(&Broken, 3).violations[0].problem,
            Problem::NotPartialOrder
        );
    }
}
