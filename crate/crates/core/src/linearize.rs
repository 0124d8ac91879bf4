//! Linearization algorithms.
//!
//! * [`szpilrajn_extend`]: a deterministic linear extension of a finite poset.
//! * [`omega_linearize`] / [`omega_star_linearize`]: pivot `z_n` is the first
//!   enumerated element not below (resp. above) any earlier pivot; block `n`
//!   is its down-set (resp. up-set) minus earlier blocks. Blocks are stacked
//!   left to right (resp. right to left).
//! * [`zeta_linearize`]: pivot `z_n` is the first enumerated element outside
//!   every interval `[z_i, z_j]`, `i, j < n`; block `n` is
//!   `⋃_{i≤n} [z_i, z_n]` minus earlier blocks, placed at the left end when
//!   `z_n` lies below an earlier pivot and at the right end otherwise.
//! * [`split_linearize`]: the finite-predecessor part linearized as ω,
//!   followed by the finite-successor part linearized as ω*.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::{FinitePoset, Growth, Id, LinearOrder};
use crate::stream::{
    induced, interval_of, predecessors_of, require, side_of, successors_of, take_elements, OracleName, Oracles, Side,
    StreamPoset,
};

/// Deterministic linear extension.
///
/// Elements are inserted in listed order: right after the rightmost placed
/// predecessor, else right before the leftmost placed successor, else at the
/// right end. Every placed predecessor of the new element sits before every
/// placed successor, so the result extends the poset.
pub fn szpilrajn_extend(poset: &FinitePoset) -> LinearOrder {
    let mut order: Vec<usize> = Vec::with_capacity(poset.len());
    for j in 0..poset.len() {
        let at = match order.iter().rposition(|&i| poset.leq_at(i, j)) {
            Some(p) => p + 1,
            None => order.iter().position(|&i| poset.leq_at(j, i)).unwrap_or(order.len()),
        };
        order.insert(at, j);
    }
    let items = order.into_iter().map(|i| poset.elements()[i]).collect();
    LinearOrder::new(items).expect("poset elements are distinct")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockSide {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    /// The pivot `z_n`.
    pub z: Id,
    /// Block elements in their within-block linear order.
    pub members: Vec<Id>,
    pub side: BlockSide,
}

/// Pivot blocks in construction order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BlockSeq(Vec<Block>);

impl BlockSeq {
    pub fn blocks(&self) -> &[Block] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pivots(&self) -> Vec<Id> {
        self.0.iter().map(|b| b.z).collect()
    }

    /// Index of the block holding `x`.
    pub fn block_of(&self, x: Id) -> Option<usize> {
        self.0.iter().position(|b| b.members.contains(&x))
    }

    /// Block index of every member.
    pub fn assignment(&self) -> HashMap<Id, usize> {
        let mut out = HashMap::new();
        for (n, b) in self.0.iter().enumerate() {
            for &x in &b.members {
                out.insert(x, n);
            }
        }
        out
    }

    pub fn members(&self) -> impl Iterator<Item = Id> + '_ {
        self.0.iter().flat_map(|b| b.members.iter().copied())
    }

    /// The block-placement order of the ζ construction: same block compares by
    /// `leq`, otherwise the later block sits below when it is a left block and
    /// above when it is a right block. `None` if either element is unassigned.
    pub fn placement_leq(&self, leq: impl Fn(Id, Id) -> bool, x: Id, y: Id) -> Option<bool> {
        let n = self.block_of(x)?;
        let m = self.block_of(y)?;
        Some(match n.cmp(&m) {
            std::cmp::Ordering::Equal => leq(x, y),
            std::cmp::Ordering::Less => self.0[m].side == BlockSide::Right,
            std::cmp::Ordering::Greater => self.0[n].side == BlockSide::Left,
        })
    }
}

/// Blocks plus the linear order realizing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linearization {
    pub blocks: BlockSeq,
    pub order: LinearOrder,
}

/// How far to run a streaming linearizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    /// Emit this many blocks.
    Blocks(usize),
    /// Emit blocks until the first this-many enumerated elements are placed.
    Elements(usize),
}

fn block_order(stream: &impl StreamPoset, members: &mut [Id]) -> Result<Vec<Id>> {
    members.sort_unstable();
    Ok(szpilrajn_extend(&induced(stream, members)?).items().to_vec())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Up,
    Down,
}

/// State of the ω / ω* pivot construction.
struct PivotRun<'a, S> {
    stream: &'a S,
    dir: Direction,
    cursor: usize,
    covered: HashSet<Id>,
    blocks: Vec<Block>,
    exhausted: bool,
}

impl<'a, S: StreamPoset> PivotRun<'a, S> {
    fn new(stream: &'a S, dir: Direction) -> Result<Self> {
        require(
            stream,
            match dir {
                Direction::Up => OracleName::Predecessors,
                Direction::Down => OracleName::Successors,
            },
        )?;
        Ok(PivotRun {
            stream,
            dir,
            cursor: 0,
            covered: HashSet::new(),
            blocks: Vec::new(),
            exhausted: false,
        })
    }

    /// `x` lies below (above, for ω*) some earlier pivot.
    fn reached(&self, x: Id) -> bool {
        self.blocks.iter().any(|b| match self.dir {
            Direction::Up => self.stream.leq(x, b.z),
            Direction::Down => self.stream.leq(b.z, x),
        })
    }

    /// Move the cursor to the next pivot candidate.
    fn advance(&mut self) -> Option<Id> {
        loop {
            let Some(x) = self.stream.element(self.cursor) else {
                self.exhausted = true;
                return None;
            };
            if !self.reached(x) {
                return Some(x);
            }
            self.cursor += 1;
        }
    }

    fn next_block(&mut self) -> Result<bool> {
        let Some(z) = self.advance() else { return Ok(false) };
        let cone = match self.dir {
            Direction::Up => predecessors_of(self.stream, z)?,
            Direction::Down => successors_of(self.stream, z)?,
        };
        let mut members: Vec<Id> = std::iter::once(z)
            .chain(cone)
            .filter(|x| !self.covered.contains(x))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        let members = block_order(self.stream, &mut members)?;
        self.covered.extend(members.iter().copied());
        self.blocks.push(Block {
            z,
            members,
            side: BlockSide::Right,
        });
        Ok(true)
    }

    fn run(&mut self, budget: Budget) -> Result<()> {
        match budget {
            Budget::Blocks(n) => while self.blocks.len() < n && self.next_block()? {},
            Budget::Elements(e) => loop {
                if self.advance().is_none() || self.cursor >= e {
                    break;
                }
                self.next_block()?;
            },
        }
        Ok(())
    }

    fn finish(self) -> Result<Linearization> {
        let items: Vec<Id> = match self.dir {
            Direction::Up => self.blocks.iter().flat_map(|b| b.members.iter().copied()).collect(),
            Direction::Down => self
                .blocks
                .iter()
                .rev()
                .flat_map(|b| b.members.iter().copied())
                .collect(),
        };
        let growth = match (self.exhausted, self.dir) {
            (true, _) => Growth::Closed,
            (false, Direction::Up) => Growth::Right,
            (false, Direction::Down) => Growth::Left,
        };
        let mut order = LinearOrder::new(items)?.with_growth(growth);
        if self.dir == Direction::Down {
            if let Some(b) = self.blocks.first() {
                order = order.with_anchor(b.z)?;
            }
        }
        Ok(Linearization {
            blocks: BlockSeq(self.blocks),
            order,
        })
    }
}

/// ω-like linearization. Needs the `predecessors` oracle.
pub fn omega_linearize(stream: &impl StreamPoset, blocks_wanted: usize) -> Result<Linearization> {
    omega_linearize_budget(stream, Budget::Blocks(blocks_wanted))
}

pub fn omega_linearize_budget(stream: &impl StreamPoset, budget: Budget) -> Result<Linearization> {
    let mut run = PivotRun::new(stream, Direction::Up)?;
    run.run(budget)?;
    run.finish()
}

/// ω*-like linearization. Needs the `successors` oracle. New blocks are
/// prepended; block 0's pivot is the anchor.
pub fn omega_star_linearize(stream: &impl StreamPoset, blocks_wanted: usize) -> Result<Linearization> {
    omega_star_linearize_budget(stream, Budget::Blocks(blocks_wanted))
}

pub fn omega_star_linearize_budget(stream: &impl StreamPoset, budget: Budget) -> Result<Linearization> {
    let mut run = PivotRun::new(stream, Direction::Down)?;
    run.run(budget)?;
    run.finish()
}

struct ZetaRun<'a, S> {
    stream: &'a S,
    cursor: usize,
    covered: HashSet<Id>,
    blocks: Vec<Block>,
    deque: VecDeque<Id>,
    exhausted: bool,
}

impl<'a, S: StreamPoset> ZetaRun<'a, S> {
    fn advance(&mut self) -> Option<Id> {
        loop {
            let Some(x) = self.stream.element(self.cursor) else {
                self.exhausted = true;
                return None;
            };
            if !self.covered.contains(&x) {
                return Some(x);
            }
            self.cursor += 1;
        }
    }

    fn next_block(&mut self) -> Result<bool> {
        let Some(z) = self.advance() else { return Ok(false) };
        let mut set = HashSet::from([z]);
        for zi in self.blocks.iter().map(|b| b.z).chain(std::iter::once(z)) {
            set.extend(interval_of(self.stream, zi, z)?);
        }
        let mut members: Vec<Id> = set.into_iter().filter(|x| !self.covered.contains(x)).collect();
        let members = block_order(self.stream, &mut members)?;
        let left = self.blocks.iter().any(|b| self.stream.leq(z, b.z));
        let side = if left { BlockSide::Left } else { BlockSide::Right };
        match side {
            BlockSide::Left => members.iter().rev().for_each(|&x| self.deque.push_front(x)),
            BlockSide::Right => self.deque.extend(members.iter().copied()),
        }
        self.covered.extend(members.iter().copied());
        self.blocks.push(Block { z, members, side });
        Ok(true)
    }
}

/// ζ-like linearization. Needs the `interval` oracle. The order is anchored
/// at `z_0` and grows at both ends.
pub fn zeta_linearize(stream: &impl StreamPoset, blocks_wanted: usize) -> Result<Linearization> {
    zeta_linearize_budget(stream, Budget::Blocks(blocks_wanted))
}

pub fn zeta_linearize_budget(stream: &impl StreamPoset, budget: Budget) -> Result<Linearization> {
    require(stream, OracleName::Interval)?;
    let mut run = ZetaRun {
        stream,
        cursor: 0,
        covered: HashSet::new(),
        blocks: Vec::new(),
        deque: VecDeque::new(),
        exhausted: false,
    };
    match budget {
        Budget::Blocks(n) => while run.blocks.len() < n && run.next_block()? {},
        Budget::Elements(e) => loop {
            if run.advance().is_none() || run.cursor >= e {
                break;
            }
            run.next_block()?;
        },
    }
    let growth = if run.exhausted {
        Growth::Closed
    } else {
        Growth::BothEnds
    };
    let mut order = LinearOrder::new(run.deque.into_iter().collect())?.with_growth(growth);
    if let Some(b) = run.blocks.first() {
        order = order.with_anchor(b.z)?;
    }
    Ok(Linearization {
        blocks: BlockSeq(run.blocks),
        order,
    })
}

/// A fixed finite list of a stream's elements, sharing its order and oracles.
struct Window<'a, S> {
    inner: &'a S,
    ids: Vec<Id>,
}

impl<S: StreamPoset> StreamPoset for Window<'_, S> {
    fn element(&self, stage: usize) -> Option<Id> {
        self.ids.get(stage).copied()
    }
    fn leq(&self, x: Id, y: Id) -> bool {
        self.inner.leq(x, y)
    }
    fn oracles(&self) -> Oracles {
        self.inner.oracles()
    }
    fn predecessors(&self, x: Id) -> Option<Vec<Id>> {
        self.inner.predecessors(x)
    }
    fn successors(&self, x: Id) -> Option<Vec<Id>> {
        self.inner.successors(x)
    }
}

/// Result of [`split_linearize`].
#[derive(Clone, Debug)]
pub struct SplitLinearization {
    /// `L_0 + L_1`.
    pub order: LinearOrder,
    /// ω-like part over finite-predecessor elements.
    pub lower: Linearization,
    /// ω*-like part over finite-successor elements.
    pub upper: Linearization,
    /// Side of every element of `order`.
    pub sides: HashMap<Id, Side>,
}

/// ω+ω*-like linearization of the first `elements_wanted` enumerated
/// elements (plus whatever their blocks pull in).
///
/// Needs `side`, and `predecessors` / `successors` wherever the classifier
/// points. Consistency of the classifier (no finite-successor element below a
/// finite-predecessor one) is checked over the emitted elements only.
pub fn split_linearize(stream: &impl StreamPoset, elements_wanted: usize) -> Result<SplitLinearization> {
    require(stream, OracleName::Side)?;
    let window = take_elements(stream, elements_wanted);
    let complete = window.len() < elements_wanted;
    let mut lower_ids = Vec::new();
    let mut upper_ids = Vec::new();
    for &x in &window {
        match side_of(stream, x)? {
            Side::FinPred => lower_ids.push(x),
            Side::FinSucc => upper_ids.push(x),
        }
    }
    let lower = {
        let w = Window {
            inner: stream,
            ids: lower_ids,
        };
        if w.ids.is_empty() {
            Linearization {
                blocks: BlockSeq::default(),
                order: LinearOrder::new(vec![])?,
            }
        } else {
            omega_linearize_budget(&w, Budget::Blocks(usize::MAX))?
        }
    };
    let upper = {
        let w = Window {
            inner: stream,
            ids: upper_ids,
        };
        if w.ids.is_empty() {
            Linearization {
                blocks: BlockSeq::default(),
                order: LinearOrder::new(vec![])?,
            }
        } else {
            omega_star_linearize_budget(&w, Budget::Blocks(usize::MAX))?
        }
    };

    let mut sides = HashMap::new();
    for &x in lower.order.items().iter().chain(upper.order.items()) {
        sides.insert(x, side_of(stream, x)?);
    }
    for &x in lower.order.items() {
        if sides[&x] == Side::FinSucc {
            let z = lower.blocks.blocks()[lower.blocks.block_of(x).unwrap()].z;
            return Err(Error::ClassifierInconsistent { lower: z, upper: x });
        }
    }
    for &x in upper.order.items() {
        if sides[&x] == Side::FinPred {
            let z = upper.blocks.blocks()[upper.blocks.block_of(x).unwrap()].z;
            return Err(Error::ClassifierInconsistent { lower: x, upper: z });
        }
    }
    for &u in upper.order.items() {
        for &l in lower.order.items() {
            if stream.leq(u, l) {
                return Err(Error::ClassifierInconsistent { lower: l, upper: u });
            }
        }
    }

    let items: Vec<Id> = lower.order.items().iter().chain(upper.order.items()).copied().collect();
    let growth = if complete { Growth::Closed } else { Growth::Middle };
    let order = LinearOrder::new(items)?.with_growth(growth);
    Ok(SplitLinearization {
        order,
        lower,
        upper,
        sides,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{build_poset, is_linear_extension};
    use crate::stream::{
        prefix, zeta_id, AntichainStream, FiniteStream, OmegaOmegaStarStream, OmegaStarStream, OmegaStream, ZetaStream,
    };

    fn singleton_blocks(l: &Linearization) -> Vec<Vec<Id>> {
        l.blocks.blocks().iter().map(|b| b.members.clone()).collect()
    }

    #[test]
    fn szpilrajn_small_cases() {
        assert!(szpilrajn_extend(&FinitePoset::empty()).is_empty());
        let chain = FinitePoset::chain(&[0, 1, 2]).unwrap();
        assert_eq!(szpilrajn_extend(&chain).items(), &[0, 1, 2]);
        let p = build_poset(&[0, 1, 2], &[(2, 0)]).unwrap();
        assert_eq!(szpilrajn_extend(&p).items(), &[2, 0, 1]);
    }

    #[test]
    fn omega_on_canonical_omega() {
        let l = omega_linearize(&OmegaStream, 4).unwrap();
        assert_eq!(l.blocks.pivots(), vec![0, 1, 2, 3]);
        assert_eq!(singleton_blocks(&l), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(l.order.items(), &[0, 1, 2, 3]);
        assert_eq!(l.order.growth(), Growth::Right);
    }

    #[test]
    fn omega_on_antichain_follows_enumeration() {
        let l = omega_linearize(&AntichainStream, 5).unwrap();
        assert_eq!(l.order.items(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn omega_on_fuf_example() {
        // x00=0 < m0=1, x10=2 < m1=4, x11=3 < m1=4
        let p = build_poset(&[0, 1, 2, 3, 4], &[(0, 1), (2, 4), (3, 4)]).unwrap();
        let l = omega_linearize(&FiniteStream::new(p), 10).unwrap();
        assert_eq!(l.blocks.pivots(), vec![0, 1, 2, 3, 4]);
        assert_eq!(singleton_blocks(&l), vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(l.order.items(), &[0, 1, 2, 3, 4]);
        assert_eq!(l.order.growth(), Growth::Closed);
    }

    #[test]
    fn omega_requires_predecessors() {
        assert_eq!(
            omega_linearize(&ZetaStream::default(), 3).unwrap_err(),
            Error::OracleMissing(OracleName::Predecessors)
        );
        assert_eq!(
            omega_linearize(&OmegaOmegaStarStream, 3).unwrap_err(),
            Error::OracleUndefined {
                oracle: OracleName::Predecessors,
                element: 1
            }
        );
    }

    #[test]
    fn omega_star_on_canonical_and_antichain() {
        let l = omega_star_linearize(&OmegaStarStream, 4).unwrap();
        assert_eq!(l.order.items(), &[3, 2, 1, 0]);
        assert_eq!(l.order.anchor(), Some(0));
        assert_eq!(l.order.growth(), Growth::Left);
        let a = omega_star_linearize(&AntichainStream, 4).unwrap();
        assert_eq!(a.order.items(), &[3, 2, 1, 0]);
    }

    #[test]
    fn omega_star_on_dual_fuf_example() {
        let p = build_poset(&[0, 1, 2, 3, 4], &[(1, 0), (4, 2), (4, 3)]).unwrap();
        let l = omega_star_linearize(&FiniteStream::new(p.clone()), 10).unwrap();
        assert_eq!(l.order.items(), &[4, 3, 2, 1, 0]);
        assert!(is_linear_extension(&l.order, &p));
    }

    #[test]
    fn zeta_on_canonical_integers() {
        let l = zeta_linearize(&ZetaStream::default(), 5).unwrap();
        let ids: Vec<Id> = [0, -1, 1, -2, 2].into_iter().map(zeta_id).collect();
        assert_eq!(l.blocks.pivots(), ids);
        let sides: Vec<_> = l.blocks.blocks().iter().map(|b| b.side).collect();
        use BlockSide::*;
        assert_eq!(sides, vec![Right, Left, Right, Left, Right]);
        let expected: Vec<Id> = [-2, -1, 0, 1, 2].into_iter().map(zeta_id).collect();
        assert_eq!(l.order.items(), expected.as_slice());
        assert_eq!(l.order.anchor(), Some(zeta_id(0)));
    }

    #[test]
    fn zeta_on_antichain_is_all_right() {
        let l = zeta_linearize(&AntichainStream, 6).unwrap();
        assert!(l.blocks.blocks().iter().all(|b| b.side == BlockSide::Right));
        assert_eq!(l.order.items(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn zeta_on_finite_chain() {
        let p = FinitePoset::chain(&[0, 1, 2]).unwrap();
        let l = zeta_linearize(&FiniteStream::new(p.clone()), 10).unwrap();
        assert_eq!(l.blocks.blocks()[0].members, vec![0]);
        assert_eq!(l.order.items(), &[0, 1, 2]);
        assert!(is_linear_extension(&l.order, &p));
    }

    #[test]
    fn zeta_placement_relation_extends_the_order() {
        let p = build_poset(&[0, 1, 2, 3, 4, 5], &[(0, 1), (2, 1), (2, 3), (4, 3), (4, 5)]).unwrap();
        let l = zeta_linearize(&FiniteStream::new(p.clone()), 10).unwrap();
        for (x, y) in p.pairs() {
            assert_eq!(l.blocks.placement_leq(|a, b| p.leq(a, b), x, y), Some(true));
        }
    }

    #[test]
    fn element_budget_covers_the_window() {
        let l = omega_linearize_budget(&AntichainStream, Budget::Elements(7)).unwrap();
        assert_eq!(l.order.len(), 7);
        let z = zeta_linearize_budget(&ZetaStream::default(), Budget::Elements(9)).unwrap();
        assert_eq!(z.order.len(), 9);
    }

    #[test]
    fn split_on_canonical_omega_omega_star() {
        let s = split_linearize(&OmegaOmegaStarStream, 10).unwrap();
        assert_eq!(s.lower.order.items(), &[0, 2, 4, 6, 8]);
        assert_eq!(s.upper.order.items(), &[9, 7, 5, 3, 1]);
        assert_eq!(s.order.growth(), Growth::Middle);
        let p = prefix(&OmegaOmegaStarStream, 10).unwrap();
        assert!(is_linear_extension(&s.order, &p));
    }

    #[test]
    fn split_with_everything_finite_below_is_omega() {
        let s = split_linearize(&OmegaStream, 6).unwrap();
        assert_eq!(s.order.items(), omega_linearize(&OmegaStream, 6).unwrap().order.items());
        assert!(s.upper.order.is_empty());
    }

    #[test]
    fn split_detects_bad_classifier() {
        struct Flipped;
        impl StreamPoset for Flipped {
            fn element(&self, stage: usize) -> Option<Id> {
                OmegaStream.element(stage)
            }
            fn leq(&self, x: Id, y: Id) -> bool {
                x <= y
            }
            fn oracles(&self) -> Oracles {
                Oracles::ALL
            }
            fn predecessors(&self, x: Id) -> Option<Vec<Id>> {
                Some((0..=x).collect())
            }
            fn successors(&self, x: Id) -> Option<Vec<Id>> {
                Some((x..10).collect())
            }
            fn side(&self, x: Id) -> Option<Side> {
                Some(if x == 0 { Side::FinSucc } else { Side::FinPred })
            }
        }
        assert!(matches!(
            split_linearize(&Flipped, 5),
            Err(Error::ClassifierInconsistent { .. })
        ));
    }
}
