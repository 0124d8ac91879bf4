//! Rank embeddings of linear-order truncations into the canonical orders.
//!
//! A coordinate is only handed out when the truncation cannot change it
//! later: predecessor counts need an order that grows on the right,
//! successor counts one that grows on the left, and signed distances from an
//! anchor one that grows only at its ends.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linearize::{
    omega_linearize_budget, omega_star_linearize_budget, split_linearize, zeta_linearize_budget, Budget,
};
use crate::order::{CanonicalPoint, Growth, Id, LinearOrder, OrderKind};
use crate::stream::{OracleName, Side, StreamPoset};

/// An order-preserving map from a finite set of elements into a canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    kind: OrderKind,
    map: BTreeMap<Id, CanonicalPoint>,
}

impl Embedding {
    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn get(&self, x: Id) -> Option<CanonicalPoint> {
        self.map.get(&x).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Id, CanonicalPoint)> + '_ {
        self.map.iter().map(|(&x, &p)| (x, p))
    }

    /// `{"kind":..,"map":[[elem,coord],..]}`
    pub fn to_json(&self) -> serde_json::Value {
        let map: Vec<_> = self.iter().map(|(x, p)| serde_json::json!([x, p.to_json()])).collect();
        serde_json::json!({ "kind": self.kind.name(), "map": map })
    }

    /// First pair `x < y` (strict, under `lt`) whose images are not strictly
    /// increasing, or a pair of distinct elements sharing an image.
    pub fn find_violation(&self, lt: impl Fn(Id, Id) -> bool) -> Option<(Id, Id)> {
        let pts: Vec<_> = self.iter().collect();
        for &(x, px) in &pts {
            for &(y, py) in &pts {
                if x == y {
                    continue;
                }
                if px == py || (lt(x, y) && px.compare(&py) != Some(std::cmp::Ordering::Less)) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

fn first_or_unit(order: &LinearOrder) -> Id {
    order.items().first().copied().unwrap_or(0)
}

/// `x ↦` number of `L`-predecessors of `x`.
pub fn embed_omega(order: &LinearOrder) -> Result<Embedding> {
    if !matches!(order.growth(), Growth::Closed | Growth::Right) {
        return Err(Error::NotStabilized(first_or_unit(order)));
    }
    let map = order
        .items()
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, CanonicalPoint::Omega(i as u64)))
        .collect();
    Ok(Embedding {
        kind: OrderKind::Omega,
        map,
    })
}

/// `x ↦` number of `L`-successors of `x`, as an ω* coordinate.
pub fn embed_omega_star(order: &LinearOrder) -> Result<Embedding> {
    if !matches!(order.growth(), Growth::Closed | Growth::Left) {
        return Err(Error::NotStabilized(order.items().last().copied().unwrap_or(0)));
    }
    let n = order.len();
    let map = order
        .items()
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, CanonicalPoint::OmegaStar((n - 1 - i) as u64)))
        .collect();
    Ok(Embedding {
        kind: OrderKind::OmegaStar,
        map,
    })
}

/// `(0, #predecessors)` on the finite-predecessor side, `(1, #successors)` on
/// the other.
pub fn embed_omega_plus_omega_star(order: &LinearOrder, side: impl Fn(Id) -> Option<Side>) -> Result<Embedding> {
    let n = order.len();
    let mut map = BTreeMap::new();
    let mut last_upper: Option<Id> = None;
    for (i, &x) in order.items().iter().enumerate() {
        let s = side(x).ok_or(Error::OracleUndefined {
            oracle: OracleName::Side,
            element: x,
        })?;
        let point = match s {
            Side::FinPred => {
                if let Some(u) = last_upper {
                    return Err(Error::ClassifierInconsistent { lower: x, upper: u });
                }
                if !matches!(order.growth(), Growth::Closed | Growth::Right | Growth::Middle) {
                    return Err(Error::NotStabilized(x));
                }
                CanonicalPoint::OmegaPlusOmegaStar { side: 0, k: i as u64 }
            }
            Side::FinSucc => {
                last_upper = Some(x);
                if !matches!(order.growth(), Growth::Closed | Growth::Left | Growth::Middle) {
                    return Err(Error::NotStabilized(x));
                }
                CanonicalPoint::OmegaPlusOmegaStar {
                    side: 1,
                    k: (n - 1 - i) as u64,
                }
            }
        };
        map.insert(x, point);
    }
    Ok(Embedding {
        kind: OrderKind::OmegaPlusOmegaStar,
        map,
    })
}

/// Signed distance from the anchor.
pub fn embed_zeta(order: &LinearOrder) -> Result<Embedding> {
    if order.is_empty() {
        return Ok(Embedding {
            kind: OrderKind::Zeta,
            map: BTreeMap::new(),
        });
    }
    if order.anchor().is_none() || order.growth() == Growth::Middle {
        return Err(Error::NotStabilized(first_or_unit(order)));
    }
    let map = order
        .items()
        .iter()
        .map(|&x| (x, CanonicalPoint::Zeta(order.signed_position(x).expect("anchored"))))
        .collect();
    Ok(Embedding {
        kind: OrderKind::Zeta,
        map,
    })
}

/// Linearize with the construction matching `kind`, then rank.
///
/// For ω+ω*, a block budget is read as an element budget.
pub fn embed_poset(stream: &impl StreamPoset, kind: OrderKind, budget: Budget) -> Result<Embedding> {
    match kind {
        OrderKind::Omega => embed_omega(&omega_linearize_budget(stream, budget)?.order),
        OrderKind::OmegaStar => embed_omega_star(&omega_star_linearize_budget(stream, budget)?.order),
        OrderKind::Zeta => embed_zeta(&zeta_linearize_budget(stream, budget)?.order),
        OrderKind::OmegaPlusOmegaStar => {
            let n = match budget {
                Budget::Blocks(n) | Budget::Elements(n) => n,
            };
            let split = split_linearize(stream, n)?;
            embed_omega_plus_omega_star(&split.order, |x| split.sides.get(&x).copied())
        }
    }
}
