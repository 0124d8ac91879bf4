//! Finite posets, linear orders and the canonical order types.
//!
//! A [`FinitePoset`] always stores its order fully closed: the relation is
//! reflexive, transitive and antisymmetric after every constructor, so `leq`
//! is a constant-time bit lookup. Element ids are plain naturals; composite
//! elements produced by the sum combinators are re-encoded with the Cantor
//! pairing (see [`pair`] and [`unpair`]).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element identifier.
pub type Id = u64;

/// Square bit matrix, one row of words per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    /// Warshall's algorithm on bit rows.
    fn close(&mut self) {
        let mut row_k = vec![0u64; self.words];
        for k in 0..self.n {
            row_k.copy_from_slice(&self.bits[k * self.words..(k + 1) * self.words]);
            for i in 0..self.n {
                if self.get(i, k) {
                    let row_i = &mut self.bits[i * self.words..(i + 1) * self.words];
                    for (a, b) in row_i.iter_mut().zip(&row_k) {
                        *a |= *b;
                    }
                }
            }
        }
    }
}

/// Cantor pairing, used to give sum elements `(i, x)` a single id.
pub fn pair(i: u64, x: u64) -> Result<Id> {
    let s = i.checked_add(x).ok_or(Error::IdOverflow(i, x))?;
    let tri = s.checked_mul(s + 1).map(|v| v / 2).ok_or(Error::IdOverflow(i, x))?;
    tri.checked_add(x).ok_or(Error::IdOverflow(i, x))
}

/// Inverse of [`pair`].
pub fn unpair(z: Id) -> (u64, u64) {
    let w = ((8 * z as u128 + 1).isqrt() as u64 - 1) / 2;
    let tri = w * (w + 1) / 2;
    let x = z - tri;
    (w - x, x)
}

/// A finite partial order with a closed relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<Id>,
    index: HashMap<Id, usize>,
    leq: BitMatrix,
}

fn index_elements(elements: &[Id]) -> Result<HashMap<Id, usize>> {
    let mut index = HashMap::with_capacity(elements.len());
    for (i, &x) in elements.iter().enumerate() {
        if index.insert(x, i).is_some() {
            return Err(Error::DuplicateId(x));
        }
    }
    Ok(index)
}

/// Build a poset from `x ≤ y` generators by reflexive-transitive closure.
pub fn build_poset(elements: &[Id], relation: &[(Id, Id)]) -> Result<FinitePoset> {
    let index = index_elements(elements)?;
    let mut leq = BitMatrix::new(elements.len());
    for &(x, y) in relation {
        let i = *index.get(&x).ok_or(Error::UnknownId(x))?;
        let j = *index.get(&y).ok_or(Error::UnknownId(y))?;
        leq.set(i, j);
    }
    FinitePoset::closed(elements.to_vec(), index, leq)
}

impl FinitePoset {
    fn closed(elements: Vec<Id>, index: HashMap<Id, usize>, mut leq: BitMatrix) -> Result<Self> {
        for i in 0..elements.len() {
            leq.set(i, i);
        }
        leq.close();
        for i in 0..elements.len() {
            for j in (i + 1)..elements.len() {
                if leq.get(i, j) && leq.get(j, i) {
                    return Err(Error::Cycle(elements[i], elements[j]));
                }
            }
        }
        Ok(FinitePoset { elements, index, leq })
    }

    /// Poset on `elements` generated by the comparison `leq` (closed afterwards).
    pub fn from_fn(elements: &[Id], leq: impl Fn(Id, Id) -> bool) -> Result<Self> {
        let index = index_elements(elements)?;
        let mut m = BitMatrix::new(elements.len());
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                if leq(x, y) {
                    m.set(i, j);
                }
            }
        }
        Self::closed(elements.to_vec(), index, m)
    }

    /// Like [`FinitePoset::from_fn`], but returns `None` unless `leq` is
    /// already reflexive and transitive on `elements`.
    pub(crate) fn from_fn_exact(elements: &[Id], leq: impl Fn(Id, Id) -> bool) -> Result<Option<Self>> {
        let index = index_elements(elements)?;
        let mut m = BitMatrix::new(elements.len());
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                if leq(x, y) {
                    m.set(i, j);
                }
            }
        }
        let raw = m.clone();
        let poset = match Self::closed(elements.to_vec(), index, m) {
            Ok(p) => p,
            Err(Error::Cycle(..)) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok((poset.leq == raw).then_some(poset))
    }

    pub fn chain(elements: &[Id]) -> Result<Self> {
        let gens: Vec<_> = elements.windows(2).map(|w| (w[0], w[1])).collect();
        build_poset(elements, &gens)
    }

    pub fn antichain(elements: &[Id]) -> Result<Self> {
        build_poset(elements, &[])
    }

    pub fn empty() -> Self {
        FinitePoset {
            elements: Vec::new(),
            index: HashMap::new(),
            leq: BitMatrix::new(0),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in their listed order.
    pub fn elements(&self) -> &[Id] {
        &self.elements
    }

    pub fn contains(&self, x: Id) -> bool {
        self.index.contains_key(&x)
    }

    pub fn index_of(&self, x: Id) -> Option<usize> {
        self.index.get(&x).copied()
    }

    /// `x ≤ y`; false when either id is unknown.
    pub fn leq(&self, x: Id, y: Id) -> bool {
        match (self.index.get(&x), self.index.get(&y)) {
            (Some(&i), Some(&j)) => self.leq.get(i, j),
            _ => false,
        }
    }

    pub fn lt(&self, x: Id, y: Id) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: Id, y: Id) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub(crate) fn leq_at(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    /// `{y : y ≤ x}` in element order.
    pub fn down_set(&self, x: Id) -> Vec<Id> {
        self.elements.iter().copied().filter(|&y| self.leq(y, x)).collect()
    }

    /// `{y : x ≤ y}` in element order.
    pub fn up_set(&self, x: Id) -> Vec<Id> {
        self.elements.iter().copied().filter(|&y| self.leq(x, y)).collect()
    }

    /// `[x,y] = {z : x≤z≤y or y≤z≤x}`; empty when `x` and `y` are incomparable.
    pub fn interval(&self, x: Id, y: Id) -> Vec<Id> {
        self.elements
            .iter()
            .copied()
            .filter(|&z| (self.leq(x, z) && self.leq(z, y)) || (self.leq(y, z) && self.leq(z, x)))
            .collect()
    }

    /// Minimal elements in element order.
    pub fn minimal(&self) -> Vec<Id> {
        (0..self.len())
            .filter(|&j| (0..self.len()).all(|i| i == j || !self.leq.get(i, j)))
            .map(|j| self.elements[j])
            .collect()
    }

    /// All pairs `(x, y)` with `x ≤ y`, including the reflexive ones.
    pub fn pairs(&self) -> Vec<(Id, Id)> {
        let mut out = Vec::new();
        for (i, &x) in self.elements.iter().enumerate() {
            for (j, &y) in self.elements.iter().enumerate() {
                if self.leq.get(i, j) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Covering pairs of the Hasse diagram.
    pub fn covers(&self) -> Vec<(Id, Id)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq.get(i, j) {
                    continue;
                }
                let direct = (0..n).all(|k| k == i || k == j || !(self.leq.get(i, k) && self.leq.get(k, j)));
                if direct {
                    out.push((self.elements[i], self.elements[j]));
                }
            }
        }
        out
    }

    /// Induced suborder on `ids`, in the given order.
    pub fn restrict(&self, ids: &[Id]) -> Result<Self> {
        let idx: Vec<usize> = ids
            .iter()
            .map(|x| self.index_of(*x).ok_or(Error::UnknownId(*x)))
            .collect::<Result<_>>()?;
        let index = index_elements(ids)?;
        let mut m = BitMatrix::new(ids.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                if self.leq.get(i, j) {
                    m.set(a, b);
                }
            }
        }
        Ok(FinitePoset {
            elements: ids.to_vec(),
            index,
            leq: m,
        })
    }

    /// The order dual `≥`.
    pub fn dual(&self) -> Self {
        let n = self.len();
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if self.leq.get(i, j) {
                    m.set(j, i);
                }
            }
        }
        FinitePoset {
            elements: self.elements.clone(),
            index: self.index.clone(),
            leq: m,
        }
    }

    /// Same order with the element at position `k` renamed to `k`.
    pub fn relabel_sequential(&self) -> Self {
        let elements: Vec<Id> = (0..self.len() as Id).collect();
        let index = elements.iter().map(|&x| (x, x as usize)).collect();
        FinitePoset {
            elements,
            index,
            leq: self.leq.clone(),
        }
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            schema: Some(SCHEMA.to_string()),
            elements: self.elements.clone(),
            relation: self.covers().into_iter().map(|(x, y)| [x, y]).collect(),
            meta: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("poset file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.to_poset()
    }
}

/// Schema tag carried by every JSON document this crate writes.
pub const SCHEMA: &str = "taulike/1";

/// On-disk poset: `{"elements":[..],"relation":[[x,y],..]}` with `≤` generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub elements: Vec<Id>,
    pub relation: Vec<[Id; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl PosetFile {
    pub fn to_poset(&self) -> Result<FinitePoset> {
        let rel: Vec<_> = self.relation.iter().map(|p| (p[0], p[1])).collect();
        build_poset(&self.elements, &rel)
    }
}

/// Lexicographic sum of `parts` along `index`.
///
/// `(i,x) ≤ (j,y)` iff `i <_Q j`, or `i = j` and `x ≤ y` in part `i`.
/// Output ids are `pair(i, x)`; elements are listed index-major.
pub fn lex_sum(index: &FinitePoset, parts: &BTreeMap<Id, FinitePoset>) -> Result<FinitePoset> {
    let mut origin = Vec::new();
    let mut elements = Vec::new();
    for &i in index.elements() {
        let part = parts.get(&i).ok_or(Error::MissingPart(i))?;
        for &x in part.elements() {
            origin.push((i, x));
            elements.push(pair(i, x)?);
        }
    }
    let idx = index_elements(&elements)?;
    let mut m = BitMatrix::new(elements.len());
    for (a, &(i, x)) in origin.iter().enumerate() {
        for (b, &(j, y)) in origin.iter().enumerate() {
            let below = index.lt(i, j) || (i == j && parts[&i].leq(x, y));
            if below {
                m.set(a, b);
            }
        }
    }
    FinitePoset::closed(elements, idx, m)
}

/// Disjoint sum: the lexicographic sum along an antichain indexed `0..n`.
pub fn disjoint_sum(parts: &[FinitePoset]) -> Result<FinitePoset> {
    let ids: Vec<Id> = (0..parts.len() as Id).collect();
    let index = FinitePoset::antichain(&ids)?;
    let map = parts.iter().cloned().enumerate().map(|(i, p)| (i as Id, p)).collect();
    lex_sum(&index, &map)
}

/// Where a truncated linear order can still grow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Growth {
    /// Complete; nothing will be added.
    Closed,
    /// New elements are only appended.
    Right,
    /// New elements are only prepended.
    Left,
    /// New elements are added at either end.
    BothEnds,
    /// New elements are inserted at one interior cut (an ω+ω* truncation).
    Middle,
}

/// A finite linear order, possibly a truncation of an infinite one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOrder {
    items: Vec<Id>,
    /// `(id, position)` sorted by id.
    positions: Vec<(Id, usize)>,
    anchor: Option<Id>,
    growth: Growth,
}

impl LinearOrder {
    /// A closed linear order listing `items` from least to greatest.
    pub fn new(items: Vec<Id>) -> Result<Self> {
        let mut positions: Vec<(Id, usize)> = items.iter().copied().zip(0..).collect();
        positions.sort_unstable();
        if let Some(w) = positions.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateId(w[0].0));
        }
        Ok(LinearOrder {
            items,
            positions,
            anchor: None,
            growth: Growth::Closed,
        })
    }

    pub fn with_growth(mut self, growth: Growth) -> Self {
        self.growth = growth;
        self
    }

    /// Designate the element at signed position 0.
    pub fn with_anchor(mut self, anchor: Id) -> Result<Self> {
        if !self.contains(anchor) {
            return Err(Error::NotInDomain(anchor));
        }
        self.anchor = Some(anchor);
        Ok(self)
    }

    pub fn items(&self) -> &[Id] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn growth(&self) -> Growth {
        self.growth
    }

    pub fn anchor(&self) -> Option<Id> {
        self.anchor
    }

    pub fn contains(&self, x: Id) -> bool {
        self.position(x).is_some()
    }

    pub fn position(&self, x: Id) -> Option<usize> {
        let i = self.positions.binary_search_by_key(&x, |&(id, _)| id).ok()?;
        Some(self.positions[i].1)
    }

    /// Position relative to the anchor.
    pub fn signed_position(&self, x: Id) -> Option<i64> {
        let a = self.position(self.anchor?)? as i64;
        Some(self.position(x)? as i64 - a)
    }

    /// `x <_L y`.
    pub fn precedes(&self, x: Id, y: Id) -> bool {
        matches!((self.position(x), self.position(y)), (Some(i), Some(j)) if i < j)
    }
}

/// Outcome of comparing a linear order against a poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionCheck {
    Valid,
    /// A poset element absent from the order.
    Missing(Id),
    /// An order element absent from the poset.
    Extra(Id),
    /// `x ≤_P y` but `y` is placed before `x`.
    Violates(Id, Id),
}

impl ExtensionCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ExtensionCheck::Valid)
    }
}

pub fn check_linear_extension(order: &LinearOrder, poset: &FinitePoset) -> ExtensionCheck {
    if order.len() != poset.len() {
        if let Some(&x) = order.items().iter().find(|&&x| !poset.contains(x)) {
            return ExtensionCheck::Extra(x);
        }
    }
    let words = poset.leq.words;
    let mut seen = vec![0u64; words];
    for &x in order.items() {
        let Some(i) = poset.index_of(x) else {
            return ExtensionCheck::Extra(x);
        };
        // anything already placed that lies above x
        let row = &poset.leq.bits[i * words..(i + 1) * words];
        if let Some((w, hit)) = row
            .iter()
            .zip(&seen)
            .enumerate()
            .find_map(|(w, (r, s))| (r & s != 0).then_some((w, r & s)))
        {
            let j = w * 64 + hit.trailing_zeros() as usize;
            return ExtensionCheck::Violates(x, poset.elements()[j]);
        }
        seen[i / 64] |= 1 << (i % 64);
    }
    if order.len() != poset.len() {
        let x = poset
            .elements()
            .iter()
            .copied()
            .find(|&x| !order.contains(x))
            .expect("fewer placed than present");
        return ExtensionCheck::Missing(x);
    }
    ExtensionCheck::Valid
}

/// True iff `order` lists exactly the elements of `poset` and respects `≤_P`.
pub fn is_linear_extension(order: &LinearOrder, poset: &FinitePoset) -> bool {
    check_linear_extension(order, poset).is_valid()
}

/// The four order types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Omega,
    OmegaStar,
    #[serde(rename = "omega-omega-star")]
    OmegaPlusOmegaStar,
    Zeta,
}

impl OrderKind {
    pub const ALL: [OrderKind; 4] = [
        OrderKind::Omega,
        OrderKind::OmegaStar,
        OrderKind::OmegaPlusOmegaStar,
        OrderKind::Zeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Omega => "omega",
            OrderKind::OmegaStar => "omega-star",
            OrderKind::OmegaPlusOmegaStar => "omega-omega-star",
            OrderKind::Zeta => "zeta",
        }
    }
}

impl std::str::FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OrderKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown order kind `{s}`")))
    }
}

impl std::fmt::Display for OrderKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A point of one of the canonical orders.
///
/// ω is `(N, ≤)`, ω* is `(N, ≥)`, ω+ω* puts every `(0, k)` (ascending in `k`)
/// below every `(1, k)` (descending in `k`), and ζ is the integers. Points of
/// different kinds are incomparable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalPoint {
    Omega(u64),
    OmegaStar(u64),
    OmegaPlusOmegaStar { side: u8, k: u64 },
    Zeta(i64),
}

impl CanonicalPoint {
    pub fn kind(&self) -> OrderKind {
        match self {
            CanonicalPoint::Omega(_) => OrderKind::Omega,
            CanonicalPoint::OmegaStar(_) => OrderKind::OmegaStar,
            CanonicalPoint::OmegaPlusOmegaStar { .. } => OrderKind::OmegaPlusOmegaStar,
            CanonicalPoint::Zeta(_) => OrderKind::Zeta,
        }
    }

    /// ζ written as ω*+ω: `(0,k) ↦ −k−1`, `(1,k) ↦ k`.
    pub fn zeta_from_sum(side: u8, k: u64) -> Self {
        if side == 0 {
            CanonicalPoint::Zeta(-(k as i64) - 1)
        } else {
            CanonicalPoint::Zeta(k as i64)
        }
    }

    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        use CanonicalPoint::*;
        match (*self, *other) {
            (Omega(a), Omega(b)) => Some(a.cmp(&b)),
            (OmegaStar(a), OmegaStar(b)) => Some(b.cmp(&a)),
            (OmegaPlusOmegaStar { side: s, k: a }, OmegaPlusOmegaStar { side: t, k: b }) => Some(match (s, t) {
                (0, 0) => a.cmp(&b),
                (0, _) => Ordering::Less,
                (_, 0) => Ordering::Greater,
                _ => b.cmp(&a),
            }),
            (Zeta(a), Zeta(b)) => Some(a.cmp(&b)),
            _ => None,
        }
    }

    /// JSON coordinate: a natural, `[side, k]`, or a signed integer.
    pub fn to_json(&self) -> serde_json::Value {
        match *self {
            CanonicalPoint::Omega(k) | CanonicalPoint::OmegaStar(k) => k.into(),
            CanonicalPoint::OmegaPlusOmegaStar { side, k } => serde_json::json!([side, k]),
            CanonicalPoint::Zeta(z) => z.into(),
        }
    }
}

impl PartialOrd for CanonicalPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_gets_reflexive_closure_only() {
        let p = build_poset(&[0, 1], &[]).unwrap();
        assert_eq!(p.pairs(), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn transitivity_is_forced() {
        let p = build_poset(&[0, 1, 2], &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
    }

    #[test]
    fn two_cycle_is_rejected() {
        assert_eq!(build_poset(&[0, 1], &[(0, 1), (1, 0)]), Err(Error::Cycle(0, 1)));
    }

    #[test]
    fn dangling_and_duplicate_ids() {
        assert_eq!(build_poset(&[0], &[(0, 7)]), Err(Error::UnknownId(7)));
        assert_eq!(build_poset(&[3, 3], &[]), Err(Error::DuplicateId(3)));
    }

    #[test]
    fn pairing_round_trips() {
        for i in 0..40 {
            for x in 0..40 {
                assert_eq!(unpair(pair(i, x).unwrap()), (i, x));
            }
        }
        assert!(pair(u64::MAX, 1).is_err());
    }

    #[test]
    fn sum_of_singletons_along_chain_is_chain() {
        let index = FinitePoset::chain(&[0, 1]).unwrap();
        let parts: BTreeMap<_, _> = [
            (0, FinitePoset::chain(&[0]).unwrap()),
            (1, FinitePoset::chain(&[0]).unwrap()),
        ]
        .into();
        let s = lex_sum(&index, &parts).unwrap();
        let (a, b) = (pair(0, 0).unwrap(), pair(1, 0).unwrap());
        assert!(s.lt(a, b));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn sum_along_antichain_is_disjoint() {
        let index = FinitePoset::antichain(&[0, 1]).unwrap();
        let parts: BTreeMap<_, _> = [
            (0, FinitePoset::chain(&[0]).unwrap()),
            (1, FinitePoset::chain(&[0]).unwrap()),
        ]
        .into();
        let s = lex_sum(&index, &parts).unwrap();
        assert_eq!(s.pairs().len(), 2);
    }

    #[test]
    fn antichain_plus_marker_matches_the_sum_formula() {
        // (2-antichain {a,b}) + {m}: enumerate all ordered pairs against the formula.
        let index = FinitePoset::chain(&[0, 1]).unwrap();
        let parts: BTreeMap<_, _> = [
            (0, FinitePoset::antichain(&[10, 11]).unwrap()),
            (1, FinitePoset::chain(&[20]).unwrap()),
        ]
        .into();
        let s = lex_sum(&index, &parts).unwrap();
        let a = pair(0, 10).unwrap();
        let b = pair(0, 11).unwrap();
        let m = pair(1, 20).unwrap();
        let expected = [
            ((a, b), false),
            ((b, a), false),
            ((a, m), true),
            ((m, a), false),
            ((b, m), true),
            ((m, b), false),
        ];
        for ((x, y), want) in expected {
            assert_eq!(s.leq(x, y), want, "{x} <= {y}");
        }
    }

    #[test]
    fn missing_part_is_reported() {
        let index = FinitePoset::chain(&[0, 1]).unwrap();
        let parts: BTreeMap<_, _> = [(0, FinitePoset::chain(&[0]).unwrap())].into();
        assert_eq!(lex_sum(&index, &parts), Err(Error::MissingPart(1)));
    }

    #[test]
    fn disjoint_sum_of_two_chains() {
        let p = disjoint_sum(&[
            FinitePoset::chain(&[0, 1]).unwrap(),
            FinitePoset::chain(&[0, 1, 2]).unwrap(),
        ])
        .unwrap();
        assert_eq!(p.len(), 5);
        let mut cross = 0;
        for &x in p.elements() {
            for &y in p.elements() {
                if unpair(x).0 != unpair(y).0 && p.comparable(x, y) {
                    cross += 1;
                }
            }
        }
        assert_eq!(cross, 0);
        // 2 + 3 reflexive, 1 + 3 strict
        assert_eq!(p.pairs().len(), 9);
    }

    #[test]
    fn disjoint_sum_of_single_part_is_a_copy() {
        let c = FinitePoset::chain(&[4, 9]).unwrap();
        let s = disjoint_sum(std::slice::from_ref(&c)).unwrap();
        assert_eq!(s.relabel_sequential(), c.relabel_sequential());
    }

    #[test]
    fn linear_extension_checks() {
        let chain = FinitePoset::chain(&[0, 1, 2]).unwrap();
        assert!(is_linear_extension(&LinearOrder::new(vec![0, 1, 2]).unwrap(), &chain));
        let c2 = FinitePoset::chain(&[0, 1]).unwrap();
        let bad = LinearOrder::new(vec![1, 0]).unwrap();
        assert_eq!(check_linear_extension(&bad, &c2), ExtensionCheck::Violates(0, 1));
        let p = build_poset(&[0, 1, 2], &[(2, 0)]).unwrap();
        assert!(is_linear_extension(&LinearOrder::new(vec![2, 0, 1]).unwrap(), &p));
        assert_eq!(
            check_linear_extension(&LinearOrder::new(vec![0, 1]).unwrap(), &p),
            ExtensionCheck::Missing(2)
        );
        assert_eq!(
            check_linear_extension(&LinearOrder::new(vec![0, 1, 2, 3]).unwrap(), &p),
            ExtensionCheck::Extra(3)
        );
    }

    #[test]
    fn linear_order_rejects_repeats() {
        assert_eq!(LinearOrder::new(vec![1, 2, 1]), Err(Error::DuplicateId(1)));
    }

    #[test]
    fn canonical_comparison_is_total_per_kind() {
        let mut pts = Vec::new();
        for k in 0..=10u64 {
            pts.push(CanonicalPoint::Omega(k));
            pts.push(CanonicalPoint::OmegaStar(k));
            pts.push(CanonicalPoint::OmegaPlusOmegaStar { side: 0, k });
            pts.push(CanonicalPoint::OmegaPlusOmegaStar { side: 1, k });
            pts.push(CanonicalPoint::Zeta(k as i64));
            pts.push(CanonicalPoint::Zeta(-(k as i64)));
        }
        pts.sort_by_key(|p| format!("{p:?}"));
        pts.dedup();
        for kind in OrderKind::ALL {
            let same: Vec<_> = pts.iter().filter(|p| p.kind() == kind).collect();
            for a in &same {
                for b in &same {
                    let ab = a.compare(b).unwrap();
                    assert_eq!(ab, b.compare(a).unwrap().reverse());
                    assert_eq!(ab == Ordering::Equal, a == b);
                    for c in &same {
                        if ab != Ordering::Greater && b.compare(c).unwrap() != Ordering::Greater {
                            assert_ne!(a.compare(c).unwrap(), Ordering::Greater);
                        }
                    }
                }
            }
        }
        assert_eq!(CanonicalPoint::Omega(1).compare(&CanonicalPoint::Zeta(1)), None);
    }

    #[test]
    fn canonical_orders_follow_their_definitions() {
        assert!(CanonicalPoint::Omega(1) < CanonicalPoint::Omega(2));
        assert!(CanonicalPoint::OmegaStar(2) < CanonicalPoint::OmegaStar(1));
        let lo = |k| CanonicalPoint::OmegaPlusOmegaStar { side: 0, k };
        let hi = |k| CanonicalPoint::OmegaPlusOmegaStar { side: 1, k };
        assert!(lo(100) < hi(100));
        assert!(hi(3) < hi(2));
        assert!(lo(2) < lo(3));
        assert_eq!(CanonicalPoint::zeta_from_sum(0, 0), CanonicalPoint::Zeta(-1));
        assert_eq!(CanonicalPoint::zeta_from_sum(1, 0), CanonicalPoint::Zeta(0));
    }

    #[test]
    fn json_round_trip_and_unknown_keys() {
        let p = build_poset(&[0, 1, 2, 5], &[(0, 1), (1, 2), (0, 5)]).unwrap();
        assert_eq!(FinitePoset::from_json(&p.to_json()).unwrap(), p);
        let text = r#"{"elements":[0,1,2],"relation":[[0,1],[1,2]]}"#;
        assert!(FinitePoset::from_json(text).unwrap().leq(0, 2));
        let extra = r#"{"elements":[0],"relation":[],"colour":1}"#;
        assert!(matches!(FinitePoset::from_json(extra), Err(Error::Parse(_))));
    }
}
