//! Statistic-preserving bijections that commute with the involutions.

use super::{build_ground, Builtin, DEGround, GenFn, StatKind};
use crate::error::{Error, Result};
use crate::partition::StrictPartition;
use crate::qsym::{expand_in_p, POutcome, QSymG};
use crate::stats::PeakWindow;

fn compatible(g1: &DEGround, g2: &DEGround) -> bool {
    if g1.kind() != g2.kind() || g1.degree() != g2.degree() || g1.len() != g2.len() {
        return false;
    }
    if !g1.indices().eq(g2.indices()) {
        return false;
    }
    let mut a: Vec<u64> = (0..g1.len()).map(|k| g1.stat_mask(k)).collect();
    let mut b: Vec<u64> = (0..g2.len()).map(|k| g2.stat_mask(k)).collect();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

struct Search<'a> {
    g1: &'a DEGround,
    g2: &'a DEGround,
    components: Vec<Vec<usize>>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
    limit: usize,
}

impl Search<'_> {
    /// Maps `a -> b` and everything the involutions force; on conflict the
    /// partial assignment is rolled back.
    fn propagate(&mut self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut assigned = Vec::new();
        let mut stack = vec![(a, b)];
        if self.g1.stat_mask(a) != self.g2.stat_mask(b) || self.used[b] {
            return None;
        }
        self.map[a] = Some(b);
        self.used[b] = true;
        assigned.push(a);
        while let Some((x, y)) = stack.pop() {
            for i in self.g1.indices() {
                let (x2, y2) = (self.g1.apply(i, x), self.g2.apply(i, y));
                let ok = match self.map[x2] {
                    Some(z) => z == y2,
                    None => {
                        if self.used[y2] || self.g1.stat_mask(x2) != self.g2.stat_mask(y2) {
                            false
                        } else {
                            self.map[x2] = Some(y2);
                            self.used[y2] = true;
                            assigned.push(x2);
                            stack.push((x2, y2));
                            true
                        }
                    }
                };
                if !ok {
                    self.undo(&assigned);
                    return None;
                }
            }
        }
        Some(assigned)
    }

    fn undo(&mut self, assigned: &[usize]) {
        for &x in assigned {
            let y = self.map[x].take().unwrap();
            self.used[y] = false;
        }
    }

    fn run(&mut self, component: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if component == self.components.len() {
            self.found.push(self.map.iter().map(|m| m.unwrap()).collect());
            return;
        }
        let seed = self.components[component][0];
        for b in 0..self.g2.len() {
            if let Some(assigned) = self.propagate(seed, b) {
                self.run(component + 1);
                self.undo(&assigned);
                if self.found.len() >= self.limit {
                    return;
                }
            }
        }
    }
}

/// Up to `limit` isomorphisms `g1 -> g2`, each as a map from `g1` indices
/// to `g2` indices. Grounds of different kind, degree or index set have none.
pub fn all_isomorphisms(g1: &DEGround, g2: &DEGround, limit: usize) -> Vec<Vec<usize>> {
    if !compatible(g1, g2) {
        return Vec::new();
    }
    let mut s = Search {
        g1,
        g2,
        components: g1.classes(),
        map: vec![None; g1.len()],
        used: vec![false; g2.len()],
        found: Vec::new(),
        limit,
    };
    s.run(0);
    s.found
}

pub fn find_isomorphism(g1: &DEGround, g2: &DEGround) -> Option<Vec<usize>> {
    all_isomorphisms(g1, g2, 1).pop()
}

/// Outcome of classifying one class of a peak ground.
#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    /// The class is isomorphic to the standard shifted tableaux of `shape`;
    /// `map` pairs each member id with its tableau's reading word.
    Shape {
        shape: StrictPartition,
        map: Vec<(String, String)>,
    },
    /// The G-sum is not a single Schur P-function.
    NotSchurP { genfn: QSymG, outcome: POutcome },
    /// The G-sum is `P_shape` but no isomorphism exists.
    NoIsomorphism { shape: StrictPartition },
}

/// Determines the strict partition of a shifted dual equivalence class and
/// an explicit isomorphism to its standard shifted tableaux.
pub fn classify_shifted_class(g: &DEGround, class: &[usize]) -> Result<Classification> {
    if g.kind() != StatKind::Peak {
        return Err(Error::Argument("classification needs a peak ground".into()));
    }
    let sub = g.subground(class, None, PeakWindow::Calibrated)?;
    let GenFn::G(genfn) = sub.class_genfn(&(0..sub.len()).collect::<Vec<_>>(), None, PeakWindow::Calibrated)? else {
        unreachable!("peak grounds give G-sums");
    };
    let outcome = expand_in_p(&genfn)?;
    let Some(shape) = outcome.expansion().and_then(|e| e.unit()).cloned() else {
        return Ok(Classification::NotSchurP { genfn, outcome });
    };
    let target = build_ground(&Builtin::ShsytB(shape.clone()))?;
    Ok(match find_isomorphism(&sub, &target) {
        Some(map) => Classification::Shape {
            shape,
            map: map
                .iter()
                .enumerate()
                .map(|(k, &t)| (sub.id(k).to_string(), target.id(t).to_string()))
                .collect(),
        },
        None => Classification::NoIsomorphism { shape },
    })
}
