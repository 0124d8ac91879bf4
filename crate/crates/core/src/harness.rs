//! Brute-force ground truth: exhaustive linear extensions, τ-like reports and
//! seeded instance generators.

use std::collections::HashSet;
use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gadgets::InjectiveFn;
use crate::order::{build_poset, FinitePoset, Id, LinearOrder, OrderKind};
use crate::stream::{take_elements, validate_oracles, OracleName, StreamPoset, Violation};

/// Default size guard for [`all_linear_extensions`].
pub const EXHAUSTIVE_LIMIT: usize = 10;
/// Size guard for [`random_poset`].
pub const RANDOM_LIMIT: usize = 64;

/// Every linear extension of a poset, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSet {
    pub orders: Vec<LinearOrder>,
}

impl ExtensionSet {
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn contains(&self, order: &LinearOrder) -> bool {
        self.orders.iter().any(|o| o.items() == order.items())
    }
}

struct Backtrack<'a> {
    poset: &'a FinitePoset,
    /// Element positions sorted by id.
    by_id: Vec<usize>,
    /// Strict upper neighbours by position.
    above: Vec<Vec<usize>>,
    pending: Vec<usize>,
    placed: Vec<bool>,
    current: Vec<Id>,
}

impl<'a> Backtrack<'a> {
    fn new(poset: &'a FinitePoset) -> Self {
        let n = poset.len();
        let mut by_id: Vec<usize> = (0..n).collect();
        by_id.sort_by_key(|&i| poset.elements()[i]);
        let pending = (0..n)
            .map(|j| (0..n).filter(|&i| i != j && poset.leq_at(i, j)).count())
            .collect();
        let above = (0..n)
            .map(|j| (0..n).filter(|&k| k != j && poset.leq_at(j, k)).collect())
            .collect();
        Backtrack {
            poset,
            by_id,
            above,
            pending,
            placed: vec![false; n],
            current: Vec::with_capacity(n),
        }
    }

    fn push(&mut self, j: usize) {
        self.placed[j] = true;
        self.current.push(self.poset.elements()[j]);
        for &k in &self.above[j] {
            self.pending[k] -= 1;
        }
    }

    fn pop(&mut self, j: usize) {
        for &k in &self.above[j] {
            self.pending[k] += 1;
        }
        self.current.pop();
        self.placed[j] = false;
    }

    fn is_available(&self, j: usize) -> bool {
        !self.placed[j] && self.pending[j] == 0
    }

    fn available(&self) -> Vec<usize> {
        self.by_id.iter().copied().filter(|&j| self.is_available(j)).collect()
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Id]) -> ControlFlow<()>) -> ControlFlow<()> {
        if self.current.len() == self.poset.len() {
            return visit(&self.current);
        }
        // state is restored after every child, so the scan can run lazily
        for idx in 0..self.by_id.len() {
            let j = self.by_id[idx];
            if !self.is_available(j) {
                continue;
            }
            self.push(j);
            let flow = self.run(visit);
            self.pop(j);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Visit every linear extension in canonical order (at each step, recurse
/// on the minimal remaining elements in ascending id order). No size guard.
pub fn for_each_linear_extension(poset: &FinitePoset, mut visit: impl FnMut(&[Id]) -> ControlFlow<()>) {
    let _ = Backtrack::new(poset).run(&mut visit);
}

pub fn count_linear_extensions(poset: &FinitePoset) -> u64 {
    let mut n = 0;
    for_each_linear_extension(poset, |_| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

/// All linear extensions, guarded at [`EXHAUSTIVE_LIMIT`] elements.
pub fn all_linear_extensions(poset: &FinitePoset) -> Result<ExtensionSet> {
    all_linear_extensions_with(poset, EXHAUSTIVE_LIMIT, 1)
}

/// All linear extensions with an explicit guard, splitting the search over
/// `jobs` threads by first element. The result does not depend on `jobs`.
pub fn all_linear_extensions_with(poset: &FinitePoset, limit: usize, jobs: usize) -> Result<ExtensionSet> {
    if poset.len() > limit {
        return Err(Error::TooLarge {
            size: poset.len(),
            limit,
        });
    }
    let collect = |bt: &mut Backtrack| {
        let mut out = Vec::new();
        let _ = bt.run(&mut |ext| {
            out.push(LinearOrder::new(ext.to_vec()).expect("extension has distinct elements"));
            ControlFlow::Continue(())
        });
        out
    };
    if jobs <= 1 || poset.len() < 2 {
        return Ok(ExtensionSet {
            orders: collect(&mut Backtrack::new(poset)),
        });
    }
    let firsts = Backtrack::new(poset).available();
    let chunks: Vec<Vec<usize>> = firsts
        .chunks(firsts.len().div_ceil(jobs))
        .map(<[usize]>::to_vec)
        .collect();
    let parts: Vec<Vec<LinearOrder>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for &j in chunk {
                        let mut bt = Backtrack::new(poset);
                        bt.push(j);
                        out.extend(collect(&mut bt));
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    Ok(ExtensionSet {
        orders: parts.into_iter().flatten().collect(),
    })
}

/// Deterministic random poset on ids `0..n`: shuffle the ids, keep each
/// pair `(π_i, π_j)`, `i < j`, as a generator with probability `density`,
/// then close.
pub fn random_poset(n: usize, density: f64, seed: u64) -> Result<FinitePoset> {
    if n > RANDOM_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: RANDOM_LIMIT,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<Id> = (0..n as Id).collect();
    perm.shuffle(&mut rng);
    let mut gens = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                gens.push((perm[i], perm[j]));
            }
        }
    }
    let ids: Vec<Id> = (0..n as Id).collect();
    build_poset(&ids, &gens)
}

/// Random eventually increasing injective function with between one and
/// `max_descents` descents `f(n) > f(n+1)`.
///
/// The head is a sorted sample of `[0, 3·len)` disturbed by swaps; the tail
/// `2n + 3·len + 10` lies above every head value, so the range misses many
/// small numbers and every false stage is witnessed inside the head.
pub fn random_injective_fn(seed: u64, max_descents: usize) -> InjectiveFn {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let len = rng.gen_range(20..=60usize);
        let mut pool: Vec<u64> = (0..3 * len as u64).collect();
        pool.shuffle(&mut rng);
        let mut head: Vec<u64> = pool[..len].to_vec();
        head.sort_unstable();
        for _ in 0..rng.gen_range(1..=max_descents.max(1)) {
            let i = rng.gen_range(0..len);
            let j = rng.gen_range(0..len);
            head.swap(i, j);
        }
        let descents = head.windows(2).filter(|w| w[0] > w[1]).count();
        if (1..=max_descents).contains(&descents) {
            return InjectiveFn::new(head, 2, 3 * len as u64 + 10).expect("tail lies above the head");
        }
    }
}

/// Strict predecessor / successor counts of one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementCounts {
    pub id: Id,
    pub predecessors: Option<usize>,
    pub successors: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "issue")]
pub enum TauIssue {
    OracleMissing {
        oracle: OracleName,
    },
    /// The oracle declares an infinite set where the property needs a finite one.
    Infinite {
        oracle: OracleName,
        subject: Vec<Id>,
    },
    Oracle(Violation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauReport {
    pub kind: OrderKind,
    pub elements: usize,
    pub passed: bool,
    pub counts: Vec<ElementCounts>,
    /// Largest interval `[x, y]` over comparable pairs.
    pub max_interval: Option<usize>,
    pub issues: Vec<TauIssue>,
}

/// Finite posets satisfy all four properties; the report carries the counts.
pub fn check_tau_like_finite(poset: &FinitePoset, kind: OrderKind) -> TauReport {
    let counts = poset
        .elements()
        .iter()
        .map(|&x| ElementCounts {
            id: x,
            predecessors: Some(poset.down_set(x).len() - 1),
            successors: Some(poset.up_set(x).len() - 1),
        })
        .collect();
    let mut max_interval = None;
    for &x in poset.elements() {
        for &y in poset.elements() {
            if poset.leq(x, y) {
                let k = poset.interval(x, y).len();
                max_interval = Some(max_interval.map_or(k, |m: usize| m.max(k)));
            }
        }
    }
    TauReport {
        kind,
        elements: poset.len(),
        passed: true,
        counts,
        max_interval,
        issues: Vec::new(),
    }
}

/// τ-likeness of a stream as witnessed on its first `s` elements: the
/// oracles the property relies on must be present, finite where the
/// property demands it, and complete within the prefix.
pub fn check_tau_like_stream(stream: &impl StreamPoset, s: usize, kind: OrderKind) -> TauReport {
    let ids = take_elements(stream, s);
    let present = stream.oracles();
    let mut issues = Vec::new();
    let needed: &[OracleName] = match kind {
        OrderKind::Omega => &[OracleName::Predecessors],
        OrderKind::OmegaStar => &[OracleName::Successors],
        OrderKind::OmegaPlusOmegaStar => &[OracleName::Side],
        OrderKind::Zeta => &[OracleName::Interval],
    };
    for &o in needed {
        if !present.has(o) {
            issues.push(TauIssue::OracleMissing { oracle: o });
        }
    }
    let mut counts = Vec::with_capacity(ids.len());
    for &x in &ids {
        let predecessors = present
            .predecessors
            .then(|| stream.predecessors(x))
            .flatten()
            .map(|v| v.len() - 1);
        let successors = present
            .successors
            .then(|| stream.successors(x))
            .flatten()
            .map(|v| v.len() - 1);
        let finite_needed = match kind {
            OrderKind::Omega => Some((OracleName::Predecessors, predecessors.is_some())),
            OrderKind::OmegaStar => Some((OracleName::Successors, successors.is_some())),
            OrderKind::OmegaPlusOmegaStar if present.side => match stream.side(x) {
                Some(crate::Side::FinPred) => Some((OracleName::Predecessors, predecessors.is_some())),
                Some(crate::Side::FinSucc) => Some((OracleName::Successors, successors.is_some())),
                None => Some((OracleName::Side, false)),
            },
            _ => None,
        };
        if let Some((oracle, false)) = finite_needed {
            if present.has(oracle) {
                issues.push(TauIssue::Infinite {
                    oracle,
                    subject: vec![x],
                });
            }
        }
        counts.push(ElementCounts {
            id: x,
            predecessors,
            successors,
        });
    }
    let mut max_interval = None;
    if kind == OrderKind::Zeta && present.interval {
        for (i, &x) in ids.iter().enumerate() {
            for &y in &ids[i..] {
                match stream.interval(x, y) {
                    Some(v) => max_interval = Some(max_interval.map_or(v.len(), |m: usize| m.max(v.len()))),
                    None => issues.push(TauIssue::Infinite {
                        oracle: OracleName::Interval,
                        subject: vec![x, y],
                    }),
                }
            }
        }
    }
    let relevant: HashSet<OracleName> = match kind {
        OrderKind::OmegaPlusOmegaStar => [OracleName::Side, OracleName::Predecessors, OracleName::Successors].into(),
        _ => needed.iter().copied().collect(),
    };
    issues.extend(
        validate_oracles(stream, s)
            .violations
            .into_iter()
            .filter(|v| relevant.contains(&v.oracle))
            .map(TauIssue::Oracle),
    );
    TauReport {
        kind,
        elements: ids.len(),
        passed: issues.is_empty(),
        counts,
        max_interval,
        issues,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::{FaultyStream, OmegaStream, SeededFault, ZetaStream};

    #[test]
    fn small_extension_counts() {
        let a2 = FinitePoset::antichain(&[0, 1]).unwrap();
        assert_eq!(all_linear_extensions(&a2).unwrap().len(), 2);
        let c3 = FinitePoset::chain(&[0, 1, 2]).unwrap();
        assert_eq!(all_linear_extensions(&c3).unwrap().len(), 1);
        let a3 = FinitePoset::antichain(&[0, 1, 2]).unwrap();
        let all = all_linear_extensions(&a3).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(all.orders[0].items(), &[0, 1, 2]);
        assert_eq!(all.orders[5].items(), &[2, 1, 0]);
        assert_eq!(all_linear_extensions(&FinitePoset::empty()).unwrap().len(), 1);
    }

    #[test]
    fn antichain_counts_are_factorials() {
        let mut fact = 1u64;
        for n in 1..=6u64 {
            fact *= n;
            let a = FinitePoset::antichain(&(0..n).collect::<Vec<_>>()).unwrap();
            assert_eq!(all_linear_extensions(&a).unwrap().len() as u64, fact);
        }
    }

    #[test]
    fn guard_and_parallel_split() {
        let a = FinitePoset::antichain(&(0..11).collect::<Vec<_>>()).unwrap();
        assert_eq!(all_linear_extensions(&a), Err(Error::TooLarge { size: 11, limit: 10 }));
        let p = random_poset(7, 0.2, 3).unwrap();
        assert_eq!(
            all_linear_extensions_with(&p, 10, 4).unwrap(),
            all_linear_extensions(&p).unwrap()
        );
    }

    #[test]
    fn random_poset_extremes() {
        assert!(random_poset(0, 0.5, 1).unwrap().is_empty());
        let anti = random_poset(6, 0.0, 1).unwrap();
        assert_eq!(anti.pairs().len(), 6);
        let chain = random_poset(6, 1.0, 1).unwrap();
        assert_eq!(all_linear_extensions(&chain).unwrap().len(), 1);
        assert_eq!(random_poset(9, 0.4, 77).unwrap(), random_poset(9, 0.4, 77).unwrap());
        assert!(random_poset(65, 0.1, 0).is_err());
    }

    #[test]
    fn random_functions_respect_their_contract() {
        for seed in 0..30 {
            let f = random_injective_fn(seed, 5);
            let d = f.head().windows(2).filter(|w| w[0] > w[1]).count();
            assert!((1..=5).contains(&d));
            let vals = f.prefix(400);
            assert_eq!(vals.iter().collect::<HashSet<_>>().len(), 400);
        }
    }

    #[test]
    fn finite_reports_are_vacuous() {
        let r = check_tau_like_finite(&FinitePoset::chain(&[0, 1, 2]).unwrap(), OrderKind::Zeta);
        assert!(r.passed);
        assert_eq!(r.max_interval, Some(3));
    }

    #[test]
    fn canonical_omega_counts() {
        let r = check_tau_like_stream(&OmegaStream, 50, OrderKind::Omega);
        assert!(r.passed, "{:?}", r.issues);
        for (n, c) in r.counts.iter().enumerate() {
            assert_eq!(c.predecessors, Some(n));
        }
        assert!(!check_tau_like_stream(&OmegaStream, 10, OrderKind::OmegaStar).passed);
        assert!(check_tau_like_stream(&ZetaStream::default(), 20, OrderKind::Zeta).passed);
    }

    #[test]
    fn seeded_fault_shows_in_report() {
        let s = FaultyStream {
            inner: OmegaStream,
            fault: SeededFault::DropPredecessor { x: 9, y: 4 },
        };
        let r = check_tau_like_stream(&s, 20, OrderKind::Omega);
        assert!(!r.passed);
        assert!(matches!(&r.issues[0], TauIssue::Oracle(v) if v.subject == vec![9]));
    }
}
