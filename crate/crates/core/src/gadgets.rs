//! Coding gadgets and their decoders.
//!
//! * FUF gadgets: disjoint sums of `X_i + {m_i}` (ζ: `{l_i} + X_i + {m_i}`);
//!   any τ-like linear extension bounds `|⋃ X_i|` by counting around the
//!   extreme marker.
//! * The stage order `A` of an injective `f`, and the range gadget `A ⊕ B`
//!   with `B` of type ω*: in any ω+ω*-like extension, `a_n` precedes every
//!   `b_m` exactly when `n` is a false stage.
//! * The embedding gadget: `n+1` elements `b^n_j` below every `a_m` with
//!   `f(n) ≤ m`; the ω-rank of `a_m` bounds the search for a preimage of `m`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::order::{
    check_linear_extension, disjoint_sum, lex_sum, pair, unpair, FinitePoset, Id, LinearOrder, OrderKind,
};
use crate::stream::{Oracles, Side, StreamPoset};
use crate::CanonicalPoint;

// --- injective functions ----------------------------------------------------

/// An injective `f : N → N` given by a finite head and a strictly increasing
/// affine tail: `f(n) = head[n]` for `n < head.len()`, else `mul·n + add`.
///
/// Such an `f` has finitely many false stages, all inside the head, so
/// stage truth is decidable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectiveFn {
    head: Vec<u64>,
    mul: u64,
    add: u64,
    witness: Vec<Option<u64>>,
}

impl InjectiveFn {
    pub fn new(head: Vec<u64>, mul: u64, add: u64) -> Result<Self> {
        if mul == 0 {
            return Err(Error::Parse("tail slope must be positive".into()));
        }
        let mut seen = HashSet::new();
        for &v in &head {
            if !seen.insert(v) {
                return Err(Error::NotInjective { value: v });
            }
        }
        let len = head.len() as u64;
        for &v in &head {
            if v >= add && (v - add).is_multiple_of(mul) && (v - add) / mul >= len {
                return Err(Error::NotInjective { value: v });
            }
        }
        let mut f = InjectiveFn {
            head,
            mul,
            add,
            witness: Vec::new(),
        };
        f.witness = (0..f.head.len() as u64).map(|n| f.scan_witness(n)).collect();
        Ok(f)
    }

    pub fn identity() -> Self {
        InjectiveFn::new(Vec::new(), 1, 0).expect("identity is injective")
    }

    /// Parse `identity`, `perm:1,0,2`, `swap:k` or `head:3,0,8;tail:2n+1`.
    ///
    /// `perm:` takes a permutation of `0..len` followed by the identity;
    /// `swap:k` exchanges `2k` and `2k+1` and is the identity elsewhere.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad function spec `{spec}`"));
        let list = |s: &str| -> Result<Vec<u64>> {
            if s.trim().is_empty() {
                return Ok(Vec::new());
            }
            s.split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
                .collect()
        };
        if spec == "identity" {
            return Ok(Self::identity());
        }
        if let Some(rest) = spec.strip_prefix("perm:") {
            let head = list(rest)?;
            let mut seen = HashSet::new();
            if let Some(&v) = head.iter().find(|v| !seen.insert(**v)) {
                return Err(Error::NotInjective { value: v });
            }
            let mut sorted = head.clone();
            sorted.sort_unstable();
            if sorted.iter().enumerate().any(|(i, v)| *v != i as u64) {
                return Err(bad());
            }
            return Self::new(head, 1, 0);
        }
        if let Some(rest) = spec.strip_prefix("swap:") {
            let k: u64 = rest.trim().parse().map_err(|_| bad())?;
            let mut head: Vec<u64> = (0..2 * k).collect();
            head.extend([2 * k + 1, 2 * k]);
            return Self::new(head, 1, 0);
        }
        if let Some(rest) = spec.strip_prefix("head:") {
            let (h, t) = rest.split_once(";tail:").ok_or_else(bad)?;
            let (m, a) = t.split_once("n+").ok_or_else(bad)?;
            let mul = if m.is_empty() { 1 } else { m.parse().map_err(|_| bad())? };
            return Self::new(list(h)?, mul, a.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }

    /// Canonical spec string accepted by [`InjectiveFn::parse`].
    pub fn spec(&self) -> String {
        let head: Vec<String> = self.head.iter().map(u64::to_string).collect();
        if (self.mul, self.add) == (1, 0) {
            if self.head.is_empty() {
                return "identity".into();
            }
            let mut sorted = self.head.clone();
            sorted.sort_unstable();
            if sorted.iter().enumerate().all(|(i, &v)| v == i as u64) {
                return format!("perm:{}", head.join(","));
            }
        }
        let mul = if self.mul == 1 {
            String::new()
        } else {
            self.mul.to_string()
        };
        format!("head:{};tail:{mul}n+{}", head.join(","), self.add)
    }

    pub fn head(&self) -> &[u64] {
        &self.head
    }

    pub fn value(&self, n: u64) -> u64 {
        match self.head.get(n as usize) {
            Some(&v) => v,
            None => self.mul * n + self.add,
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<u64> {
        (0..len as u64).map(|n| self.value(n)).collect()
    }

    fn scan_witness(&self, n: u64) -> Option<u64> {
        let v = self.value(n);
        let len = self.head.len() as u64;
        if n >= len {
            return None;
        }
        ((n + 1)..len)
            .find(|&k| self.head[k as usize] < v)
            .or_else(|| (self.value(len) < v).then_some(len))
    }

    /// Least `k > n` with `f(k) < f(n)`; `None` when `n` is a true stage.
    pub fn descent_witness(&self, n: u64) -> Option<u64> {
        self.witness.get(n as usize).copied().flatten()
    }

    /// `n` is false: some later value is smaller.
    pub fn is_false_stage(&self, n: u64) -> bool {
        self.descent_witness(n).is_some()
    }

    pub fn false_stages_below(&self, s: usize) -> BTreeSet<usize> {
        (0..s).filter(|&n| self.is_false_stage(n as u64)).collect()
    }

    pub fn preimage(&self, m: u64) -> Option<u64> {
        if let Some(i) = self.head.iter().position(|&v| v == m) {
            return Some(i as u64);
        }
        let len = self.head.len() as u64;
        (m >= self.add && (m - self.add).is_multiple_of(self.mul) && (m - self.add) / self.mul >= len)
            .then(|| (m - self.add) / self.mul)
    }

    /// `{n : f(n) ≤ m}`, ascending.
    pub fn indices_at_most(&self, m: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .head
            .iter()
            .enumerate()
            .filter(|(_, &v)| v <= m)
            .map(|(i, _)| i as u64)
            .collect();
        if m >= self.add {
            let top = (m - self.add) / self.mul;
            out.extend(self.head.len() as u64..=top);
        }
        out
    }
}

// --- FUF gadgets ------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FufGadget {
    pub variant: OrderKind,
    pub base: FinitePoset,
    pub parts: Vec<Vec<Id>>,
    /// `m_i`.
    pub top: Vec<Id>,
    /// `l_i`; ζ variant only.
    pub bottom: Vec<Id>,
}

impl FufGadget {
    pub fn union_size(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }
}

/// Gadget for parts of the given sizes. Ids are assigned consecutively, part
/// by part, in the order `l_i`, `X_i`, `m_i`. The ω* variant is the order dual
/// of the ω variant on the same ids.
pub fn make_fuf_gadget(sizes: &[usize], variant: OrderKind) -> Result<FufGadget> {
    let zeta = match variant {
        OrderKind::Omega | OrderKind::OmegaStar => false,
        OrderKind::Zeta => true,
        OrderKind::OmegaPlusOmegaStar => {
            return Err(Error::Parse("no FUF gadget for omega-omega-star".into()));
        }
    };
    let mut summands = Vec::with_capacity(sizes.len());
    let (mut parts, mut top, mut bottom) = (Vec::new(), Vec::new(), Vec::new());
    let mut next: Id = 0;
    for &k in sizes {
        let singleton = FinitePoset::chain(&[0])?;
        let x = FinitePoset::antichain(&(0..k as Id).collect::<Vec<_>>())?;
        let layers = if zeta {
            vec![singleton.clone(), x, singleton]
        } else {
            vec![x, singleton]
        };
        let chain_ids: Vec<Id> = (0..layers.len() as Id).collect();
        let index = FinitePoset::chain(&chain_ids)?;
        let map: BTreeMap<Id, FinitePoset> = chain_ids.iter().copied().zip(layers).collect();
        summands.push(lex_sum(&index, &map)?);
        if zeta {
            bottom.push(next);
            next += 1;
        }
        parts.push((next..next + k as Id).collect());
        next += k as Id;
        top.push(next);
        next += 1;
    }
    let mut base = disjoint_sum(&summands)?.relabel_sequential();
    if variant == OrderKind::OmegaStar {
        base = base.dual();
    }
    Ok(FufGadget {
        variant,
        base,
        parts,
        top,
        bottom,
    })
}

/// Bound on `|⋃ X_i|` read off a linear extension of the gadget.
///
/// ω: predecessors of the greatest top marker. ω*: successors of the least
/// marker. ζ: elements strictly between the least bottom marker and the
/// greatest top marker.
pub fn fuf_decode(order: &LinearOrder, gadget: &FufGadget) -> Result<usize> {
    let check = check_linear_extension(order, &gadget.base);
    if !check.is_valid() {
        return Err(Error::NotAnExtension(format!("{check:?}")));
    }
    if gadget.top.is_empty() {
        return Ok(0);
    }
    let pos = |x: &Id| order.position(*x).expect("checked extension");
    let last = gadget.top.iter().map(pos).max().unwrap();
    Ok(match gadget.variant {
        OrderKind::OmegaStar => order.len() - 1 - gadget.top.iter().map(pos).min().unwrap(),
        OrderKind::Zeta => last - gadget.bottom.iter().map(pos).min().unwrap() - 1,
        _ => last,
    })
}

// --- stage order ------------------------------------------------------------

/// The order `A` on `a_0 .. a_{s-1}` (ids `0..s`) for a prefix of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageOrder {
    pub f_prefix: Vec<u64>,
    pub order: FinitePoset,
    /// Stages with a smaller value later in the prefix.
    pub ground_truth_false: BTreeSet<usize>,
}

/// `a_n ≤ a_m` iff `f(k) < f(n)` for some `n < k ≤ m`, or `m ≤ n` and
/// `f(k) > f(m)` for all `m < k ≤ n`.
pub fn stage_leq(f: &[u64], n: usize, m: usize) -> bool {
    let descends = (n + 1..=m).any(|k| f[k] < f[n]);
    let stays_above = m <= n && (m + 1..=n).all(|k| f[k] > f[m]);
    descends || stays_above
}

pub fn make_stage_order(f_prefix: &[u64]) -> Result<StageOrder> {
    let mut seen = HashSet::new();
    if let Some(&v) = f_prefix.iter().find(|v| !seen.insert(**v)) {
        return Err(Error::NotInjective { value: v });
    }
    let ids: Vec<Id> = (0..f_prefix.len() as Id).collect();
    let order = FinitePoset::from_fn(&ids, |n, m| stage_leq(f_prefix, n as usize, m as usize))?;
    let ground_truth_false = (0..f_prefix.len())
        .filter(|&n| f_prefix[n + 1..].iter().any(|&v| v < f_prefix[n]))
        .collect();
    Ok(StageOrder {
        f_prefix: f_prefix.to_vec(),
        order,
        ground_truth_false,
    })
}

// --- range gadget A ⊕ B ----------------------------------------------------

/// `A ⊕ B` for a fixed `f`, with `a_n = 2n`, `b_n = 2n+1`, enumerated by id.
#[derive(Clone, Debug)]
pub struct RangeGadget {
    f: InjectiveFn,
}

pub fn make_range_gadget(f: InjectiveFn) -> RangeGadget {
    RangeGadget { f }
}

impl RangeGadget {
    pub fn function(&self) -> &InjectiveFn {
        &self.f
    }

    pub fn a(n: u64) -> Id {
        2 * n
    }

    pub fn b(n: u64) -> Id {
        2 * n + 1
    }

    /// `(is_a, index)`.
    pub fn decode_id(x: Id) -> (bool, u64) {
        (x.is_multiple_of(2), x / 2)
    }

    fn a_leq(&self, n: u64, m: u64) -> bool {
        let w = |i: u64| self.f.descent_witness(i);
        if n < m {
            matches!(w(n), Some(k) if k <= m)
        } else {
            w(m).is_none_or(|k| k > n)
        }
    }
}

impl StreamPoset for RangeGadget {
    fn element(&self, stage: usize) -> Option<Id> {
        Some(stage as Id)
    }

    fn leq(&self, x: Id, y: Id) -> bool {
        match (Self::decode_id(x), Self::decode_id(y)) {
            ((true, n), (true, m)) => self.a_leq(n, m),
            ((false, n), (false, m)) => n >= m,
            _ => false,
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
        let (is_a, n) = Self::decode_id(x);
        if !is_a {
            return None;
        }
        let w = self.f.descent_witness(n)?;
        let head = (self.f.head.len() as u64).min(n);
        let below = (0..head).filter(|&m| matches!(self.f.descent_witness(m), Some(k) if k <= n));
        Some(below.chain(n..w).map(Self::a).collect())
    }

    fn successors(&self, x: Id) -> Option<Vec<Id>> {
        let (is_a, n) = Self::decode_id(x);
        if !is_a {
            return Some((0..=n).map(Self::b).collect());
        }
        if self.f.is_false_stage(n) {
            return None;
        }
        let above = (0..n).filter(|&m| self.f.descent_witness(m).is_none_or(|k| k > n));
        Some(above.chain(std::iter::once(n)).map(Self::a).collect())
    }

    fn side(&self, x: Id) -> Option<Side> {
        let (is_a, n) = Self::decode_id(x);
        Some(if is_a && self.f.is_false_stage(n) {
            Side::FinPred
        } else {
            Side::FinSucc
        })
    }
}

/// Decoded false stages together with the horizon they were read at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FalseStages {
    pub stages: BTreeSet<usize>,
    /// Number `M` such that `b_0 .. b_{M-1}` all occur in the order.
    pub horizon: usize,
}

/// `{n < s : a_n precedes every b_m in the order}`.
pub fn decode_false_stages(order: &LinearOrder, s: usize) -> Result<FalseStages> {
    let horizon = (0..).take_while(|&m| order.contains(RangeGadget::b(m))).count();
    if horizon < s {
        return Err(Error::HorizonTooSmall { horizon, stages: s });
    }
    let first_b = order
        .items()
        .iter()
        .position(|&x| !RangeGadget::decode_id(x).0)
        .unwrap_or(order.len());
    let mut stages = BTreeSet::new();
    for n in 0..s as u64 {
        let p = order
            .position(RangeGadget::a(n))
            .ok_or(Error::NotInDomain(RangeGadget::a(n)))?;
        if p < first_b {
            stages.insert(n as usize);
        }
    }
    Ok(FalseStages { stages, horizon })
}

// --- embedding gadget -------------------------------------------------------

/// Antichain `a_m` (id `2m`) with `b^n_j` (id `2·pair(n,j)+1`, `j ≤ n`) below
/// every `a_m` with `f(n) ≤ m`. Enumerated as `a_0, b^0_0, a_1, b^1_0, b^1_1, …`.
#[derive(Clone, Debug)]
pub struct EmbedGadget {
    f: InjectiveFn,
}

pub fn make_embed_gadget(f: InjectiveFn) -> EmbedGadget {
    EmbedGadget { f }
}

/// Element of the embedding gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbedElem {
    A(u64),
    B(u64, u64),
}

impl EmbedGadget {
    pub fn function(&self) -> &InjectiveFn {
        &self.f
    }

    pub fn a(m: u64) -> Id {
        2 * m
    }

    pub fn b(n: u64, j: u64) -> Id {
        2 * pair(n, j).expect("small gadget index") + 1
    }

    pub fn decode_id(x: Id) -> EmbedElem {
        if x.is_multiple_of(2) {
            EmbedElem::A(x / 2)
        } else {
            let (n, j) = unpair(x / 2);
            EmbedElem::B(n, j)
        }
    }

    /// Enumeration stage of `a_m`.
    pub fn stage_of_a(m: u64) -> usize {
        (m * (m + 3) / 2) as usize
    }
}

impl StreamPoset for EmbedGadget {
    fn element(&self, stage: usize) -> Option<Id> {
        let s = stage as u64;
        // group n occupies stages n(n+3)/2 ..= n(n+3)/2 + n + 1
        let mut n = ((9 + 8 * s).isqrt() - 3) / 2;
        while n * (n + 3) / 2 > s {
            n -= 1;
        }
        while (n + 1) * (n + 4) / 2 <= s {
            n += 1;
        }
        let r = s - n * (n + 3) / 2;
        Some(if r == 0 { Self::a(n) } else { Self::b(n, r - 1) })
    }

    fn leq(&self, x: Id, y: Id) -> bool {
        x == y
            || match (Self::decode_id(x), Self::decode_id(y)) {
                (EmbedElem::B(n, j), EmbedElem::A(m)) => j <= n && self.f.value(n) <= m,
                _ => false,
            }
    }

    fn oracles(&self) -> Oracles {
        Oracles::ALL
    }

    fn predecessors(&self, x: Id) -> Option<Vec<Id>> {
        match Self::decode_id(x) {
            EmbedElem::A(m) => {
                let below = self
                    .f
                    .indices_at_most(m)
                    .into_iter()
                    .flat_map(|n| (0..=n).map(move |j| Self::b(n, j)));
                Some(below.chain(std::iter::once(x)).collect())
            }
            EmbedElem::B(..) => Some(vec![x]),
        }
    }

    fn successors(&self, x: Id) -> Option<Vec<Id>> {
        match Self::decode_id(x) {
            EmbedElem::A(_) => Some(vec![x]),
            EmbedElem::B(..) => None,
        }
    }

    fn interval(&self, x: Id, y: Id) -> Option<Vec<Id>> {
        Some(if x == y {
            vec![x]
        } else if self.leq(x, y) || self.leq(y, x) {
            vec![x, y]
        } else {
            vec![]
        })
    }

    fn side(&self, _x: Id) -> Option<Side> {
        Some(Side::FinPred)
    }
}

/// `m ∈ range(f)` iff `f(n) = m` for some `n < h(a_m)`.
pub fn decode_range(h: &Embedding, f_prefix: &[u64], m: u64) -> Result<bool> {
    let a = EmbedGadget::a(m);
    let rank = match h.get(a) {
        Some(CanonicalPoint::Omega(k)) => k as usize,
        _ => return Err(Error::NotInDomain(a)),
    };
    if rank > f_prefix.len() {
        return Err(Error::PrefixTooShort {
            have: f_prefix.len(),
            need: rank,
        });
    }
    Ok(f_prefix[..rank].contains(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::embed_poset;
    use crate::linearize::{omega_linearize, split_linearize, szpilrajn_extend, Budget};
    use crate::stream::{prefix, validate_oracles};

    #[test]
    fn fuf_single_empty_set() {
        let g = make_fuf_gadget(&[0], OrderKind::Omega).unwrap();
        assert_eq!(g.base.len(), 1);
        assert_eq!(g.top, vec![0]);
        let l = szpilrajn_extend(&g.base);
        assert_eq!(fuf_decode(&l, &g).unwrap(), 0);
    }

    #[test]
    fn fuf_two_parts() {
        let g = make_fuf_gadget(&[1, 2], OrderKind::Omega).unwrap();
        assert_eq!(g.base.elements(), &[0, 1, 2, 3, 4]);
        assert_eq!(g.parts, vec![vec![0], vec![2, 3]]);
        assert_eq!(g.top, vec![1, 4]);
        let strict: Vec<_> = g.base.pairs().into_iter().filter(|(x, y)| x != y).collect();
        assert_eq!(strict, vec![(0, 1), (2, 4), (3, 4)]);
        let l = LinearOrder::new(vec![0, 1, 2, 3, 4]).unwrap();
        assert_eq!(fuf_decode(&l, &g).unwrap(), 4);
    }

    #[test]
    fn fuf_zeta_variant_is_a_chain() {
        let g = make_fuf_gadget(&[1], OrderKind::Zeta).unwrap();
        assert_eq!(g.base, FinitePoset::chain(&[0, 1, 2]).unwrap());
        assert_eq!((g.bottom.clone(), g.top.clone()), (vec![0], vec![2]));
        assert_eq!(fuf_decode(&szpilrajn_extend(&g.base), &g).unwrap(), 1);
    }

    #[test]
    fn fuf_dual_variant() {
        let g = make_fuf_gadget(&[1, 2], OrderKind::OmegaStar).unwrap();
        assert!(g.base.lt(4, 2) && g.base.lt(1, 0));
        let l = LinearOrder::new(vec![4, 3, 2, 1, 0]).unwrap();
        assert_eq!(fuf_decode(&l, &g).unwrap(), 4);
    }

    #[test]
    fn fuf_decode_rejects_non_extensions() {
        let g = make_fuf_gadget(&[1], OrderKind::Omega).unwrap();
        let l = LinearOrder::new(vec![1, 0]).unwrap();
        assert!(matches!(fuf_decode(&l, &g), Err(Error::NotAnExtension(_))));
    }

    #[test]
    fn parse_specs() {
        assert_eq!(InjectiveFn::parse("identity").unwrap().prefix(4), vec![0, 1, 2, 3]);
        assert_eq!(InjectiveFn::parse("perm:1,0,2").unwrap().prefix(5), vec![1, 0, 2, 3, 4]);
        assert_eq!(InjectiveFn::parse("swap:1").unwrap().prefix(6), vec![0, 1, 3, 2, 4, 5]);
        let f = InjectiveFn::parse("head:3,0,8;tail:2n+1").unwrap();
        assert_eq!(f.prefix(6), vec![3, 0, 8, 7, 9, 11]);
        assert!(matches!(
            InjectiveFn::parse("perm:1,1"),
            Err(Error::NotInjective { value: 1 })
        ));
        assert!(matches!(
            InjectiveFn::parse("head:3,0,7;tail:2n+1"),
            Err(Error::NotInjective { value: 7 })
        ));
        assert!(matches!(InjectiveFn::parse("perm:0,2"), Err(Error::Parse(_))));
        assert!(matches!(InjectiveFn::parse("cube"), Err(Error::Parse(_))));
    }

    #[test]
    fn head_tail_collisions_are_rejected() {
        // tail 2n+1 hits 7 at n = 3 and 9 at n = 4
        assert_eq!(
            InjectiveFn::new(vec![3, 0, 7], 2, 1),
            Err(Error::NotInjective { value: 7 })
        );
        assert_eq!(
            InjectiveFn::new(vec![3, 0, 9, 1], 2, 1),
            Err(Error::NotInjective { value: 9 })
        );
        // 5 = 2·2+1 is below the tail's start
        assert!(InjectiveFn::new(vec![3, 0, 5], 2, 1).is_ok());
    }

    #[test]
    fn spec_round_trip_and_preimages() {
        let f = InjectiveFn::new(vec![12, 3, 40, 1], 3, 50).unwrap();
        assert_eq!(InjectiveFn::parse(&f.spec()).unwrap(), f);
        for spec in ["identity", "perm:1,0,2", "head:3,0,8;tail:2n+1", "head:5;tail:n+6"] {
            assert_eq!(InjectiveFn::parse(spec).unwrap().spec(), spec);
        }
        assert_eq!(InjectiveFn::parse("swap:1").unwrap().spec(), "perm:0,1,3,2");
        for n in 0..30 {
            assert_eq!(f.preimage(f.value(n)), Some(n));
        }
        assert_eq!(f.preimage(2), None);
        assert_eq!(f.indices_at_most(12), vec![0, 1, 3]);
        assert_eq!(f.indices_at_most(56), vec![0, 1, 2, 3]);
        assert_eq!(f.indices_at_most(62), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn truth_of_stages() {
        let f = InjectiveFn::parse("perm:1,0,2").unwrap();
        assert_eq!(f.false_stages_below(10), BTreeSet::from([0]));
        assert_eq!(f.descent_witness(0), Some(1));
        let g = InjectiveFn::new(vec![50, 90], 10, 1).unwrap();
        // tail starts at f(2) = 21 < 50, 90
        assert_eq!(g.descent_witness(0), Some(2));
        assert_eq!(g.descent_witness(1), Some(2));
    }

    #[test]
    fn stage_order_examples() {
        let id = make_stage_order(&[0, 1, 2]).unwrap();
        for n in 0..3 {
            for m in 0..3 {
                assert_eq!(id.order.leq(n, m), m <= n);
            }
        }
        let s = make_stage_order(&[1, 0, 2]).unwrap();
        assert!(s.order.lt(0, 2) && s.order.lt(2, 1));
        assert_eq!(s.ground_truth_false, BTreeSet::from([0]));
        assert_eq!(make_stage_order(&[5]).unwrap().order.len(), 1);
        assert_eq!(make_stage_order(&[2, 2]), Err(Error::NotInjective { value: 2 }));
    }

    #[test]
    fn range_gadget_agrees_with_the_stage_formula() {
        let f = InjectiveFn::new(vec![4, 9, 2, 7, 0, 11, 5], 1, 12).unwrap();
        let g = make_range_gadget(f.clone());
        let vals = f.prefix(30);
        for n in 0..30 {
            for m in 0..25 {
                // the formula only reads f up to max(n, m), so a finite prefix decides it
                assert_eq!(
                    g.leq(RangeGadget::a(n), RangeGadget::a(m)),
                    stage_leq(&vals, n as usize, m as usize)
                );
            }
        }
        assert!(validate_oracles(&g, 120).passed());
    }

    #[test]
    fn range_gadget_sides() {
        let id = make_range_gadget(InjectiveFn::identity());
        assert!((0..20).all(|n| id.side(RangeGadget::a(n)) == Some(Side::FinSucc)));
        let g = make_range_gadget(InjectiveFn::parse("perm:1,0,2").unwrap());
        assert_eq!(g.side(RangeGadget::a(0)), Some(Side::FinPred));
        assert!((1..20).all(|n| g.side(RangeGadget::a(n)) == Some(Side::FinSucc)));
        for n in 0..10 {
            assert_eq!(g.side(RangeGadget::b(n)), Some(Side::FinSucc));
            assert_eq!(
                g.successors(RangeGadget::b(n)),
                Some((0..=n).map(RangeGadget::b).collect())
            );
        }
    }

    #[test]
    fn false_stage_decoding_small() {
        let g = make_range_gadget(InjectiveFn::parse("perm:1,0,2").unwrap());
        let s = split_linearize(&g, 40).unwrap();
        assert!(s.lower.order.contains(RangeGadget::a(0)));
        assert!(crate::order::is_linear_extension(
            &LinearOrder::new(s.order.items().iter().copied().filter(|&x| x < 40).collect()).unwrap(),
            &prefix(&g, 40).unwrap()
        ));
        let d = decode_false_stages(&s.order, 1).unwrap();
        assert_eq!(d.stages, BTreeSet::from([0]));
        assert_eq!(decode_false_stages(&s.order, 0).unwrap().stages, BTreeSet::new());
        let id = make_range_gadget(InjectiveFn::identity());
        let s = split_linearize(&id, 40).unwrap();
        assert!(decode_false_stages(&s.order, 10).unwrap().stages.is_empty());
        assert!(matches!(
            decode_false_stages(&s.order, 30),
            Err(Error::HorizonTooSmall {
                horizon: 20,
                stages: 30
            })
        ));
    }

    #[test]
    fn embed_gadget_structure() {
        let f0 = make_embed_gadget(InjectiveFn::new(vec![0], 1, 1).unwrap());
        for m in 0..5 {
            assert!(f0.leq(EmbedGadget::b(0, 0), EmbedGadget::a(m)));
        }
        let g = make_embed_gadget(InjectiveFn::parse("perm:1,0,2").unwrap());
        let preds: BTreeSet<_> = g.predecessors(EmbedGadget::a(0)).unwrap().into_iter().collect();
        assert_eq!(
            preds,
            BTreeSet::from([EmbedGadget::a(0), EmbedGadget::b(1, 0), EmbedGadget::b(1, 1)])
        );
        for n in 0..5 {
            for j in 0..=n {
                assert_eq!(g.predecessors(EmbedGadget::b(n, j)), Some(vec![EmbedGadget::b(n, j)]));
            }
        }
        let ids: Vec<Id> = (0..7).map(|s| g.element(s).unwrap()).collect();
        use EmbedElem::*;
        let decoded: Vec<_> = ids.iter().map(|&x| EmbedGadget::decode_id(x)).collect();
        assert_eq!(decoded, vec![A(0), B(0, 0), A(1), B(1, 0), B(1, 1), A(2), B(2, 0)]);
        for m in 0..30 {
            assert_eq!(g.element(EmbedGadget::stage_of_a(m)), Some(EmbedGadget::a(m)));
        }
        assert!(validate_oracles(&g, 200).passed());
    }

    #[test]
    fn range_decoding_small() {
        let f = InjectiveFn::parse("perm:1,0,2").unwrap();
        let g = make_embed_gadget(f.clone());
        let h = embed_poset(&g, OrderKind::Omega, Budget::Elements(EmbedGadget::stage_of_a(6) + 1)).unwrap();
        let CanonicalPoint::Omega(r) = h.get(EmbedGadget::a(0)).unwrap() else {
            panic!()
        };
        assert!(r >= 2);
        let vals = f.prefix(200);
        assert!(decode_range(&h, &vals, 0).unwrap());
        assert!(decode_range(&h, &vals, 5).unwrap());
        let short = make_embed_gadget(InjectiveFn::new(vec![1, 0, 2], 2, 10).unwrap());
        let h = embed_poset(
            &short,
            OrderKind::Omega,
            Budget::Elements(EmbedGadget::stage_of_a(6) + 1),
        )
        .unwrap();
        assert!(!decode_range(&h, &short.function().prefix(200), 5).unwrap());
        assert!(matches!(decode_range(&h, &[1], 0), Err(Error::PrefixTooShort { .. })));
    }

    #[test]
    fn omega_pipeline_on_fuf_gadget() {
        let g = make_fuf_gadget(&[1, 2], OrderKind::Omega).unwrap();
        let l = omega_linearize(&crate::stream::FiniteStream::new(g.base.clone()), 10).unwrap();
        assert_eq!(fuf_decode(&l.order, &g).unwrap(), 4);
    }
}
