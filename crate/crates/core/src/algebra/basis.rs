use std::collections::HashMap;

use crate::error::{domain, Result};
use crate::jack::Partition;

/// The partitions `κ ⊆ top` (entrywise `κ_i ≤ top_i`) in basis order.
///
/// Closed under single-box removal, so every generator built on it maps
/// the span into itself. Member 0 is always the zero partition.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionBasis {
    top: Partition,
    members: Vec<Partition>,
    index: HashMap<Partition, usize>,
}

impl PartitionBasis {
    /// Basis under `top`, requiring every member to fit in `nvars`
    /// variables.
    pub fn new(top: &Partition, nvars: usize) -> Result<Self> {
        if top.len() > nvars {
            return domain(format!("{top} has more than {nvars} parts"));
        }
        let members = Partition::down_set(top);
        let index = members.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(Self { top: top.clone(), members, index })
    }

    pub fn top(&self) -> &Partition {
        &self.top
    }

    pub fn members(&self) -> &[Partition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn top_position(&self) -> usize {
        self.members.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn closed_under_box_removal() {
        let b = PartitionBasis::new(&part![3, 2, 1], 3).unwrap();
        assert_eq!(b.members()[0], part![]);
        assert_eq!(b.position(&part![3, 2, 1]), Some(b.top_position()));
        for k in b.members() {
            for i in 1..=k.len() {
                if let Some(r) = k.remove_box(i) {
                    assert!(b.position(&r).unwrap() < b.position(k).unwrap());
                }
            }
        }
        assert!(PartitionBasis::new(&part![1, 1, 1], 2).is_err());
    }
}
