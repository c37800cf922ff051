//! Polynomial ambient rings with named variable blocks.
//!
//! A ring is an ordered list of variable blocks over a coefficient field.
//! Blocks carry a role: `Base` for the coordinates of the base ring (the
//! x-variables), `Fiber` for the coordinates of the blow-up fiber (the
//! t-variables), and `Aux` for internal helper variables used by
//! elimination tricks. Block order fixes the global variable order.

use crate::error::{Error, Result};
use crate::field::CoeffField;
use crate::monomial::MAX_VARS;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockRole {
    Base,
    Fiber,
    Aux,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableBlock {
    pub role: BlockRole,
    pub names: Vec<String>,
}

impl VariableBlock {
    pub fn new(role: BlockRole, names: &[&str]) -> Self {
        VariableBlock {
            role,
            names: names.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn numbered(role: BlockRole, prefix: &str, count: usize) -> Self {
        VariableBlock {
            role,
            names: (1..=count).map(|i| format!("{prefix}{i}")).collect(),
        }
    }
}

#[derive(Debug)]
pub struct Ring {
    field: CoeffField,
    blocks: Vec<VariableBlock>,
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub type RingRc = Arc<Ring>;

impl Ring {
    /// Build a ring from ordered blocks. Names must be unique, nonempty,
    /// and the total variable count must fit the fixed monomial width.
    /// Base and fiber blocks, when present, need at least two variables.
    pub fn new(field: CoeffField, blocks: Vec<VariableBlock>) -> Result<RingRc> {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        for b in &blocks {
            if b.names.is_empty() {
                return Err(Error::RingConstruction("empty variable block".into()));
            }
            if matches!(b.role, BlockRole::Base | BlockRole::Fiber) && b.names.len() < 2 {
                return Err(Error::RingConstruction(format!(
                    "{:?} block needs at least 2 variables, got {}",
                    b.role,
                    b.names.len()
                )));
            }
            for n in &b.names {
                if n.is_empty() {
                    return Err(Error::RingConstruction("empty variable name".into()));
                }
                if index.insert(n.clone(), names.len()).is_some() {
                    return Err(Error::RingConstruction(format!("duplicate variable `{n}`")));
                }
                names.push(n.clone());
            }
        }
        if names.len() > MAX_VARS {
            return Err(Error::RingConstruction(format!(
                "{} variables exceed the supported width {MAX_VARS}",
                names.len()
            )));
        }
        Ok(Arc::new(Ring {
            field,
            blocks,
            names,
            index,
        }))
    }

    /// Convenience constructor: a single base block.
    pub fn base_ring(field: CoeffField, names: &[&str]) -> Result<RingRc> {
        Ring::new(field, vec![VariableBlock::new(BlockRole::Base, names)])
    }

    pub fn field(&self) -> &CoeffField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn blocks(&self) -> &[VariableBlock] {
        &self.blocks
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Bitmask of variable indices belonging to blocks with the given role.
    pub fn role_mask(&self, role: BlockRole) -> u32 {
        let mut mask = 0u32;
        let mut i = 0;
        for b in &self.blocks {
            for _ in &b.names {
                if b.role == role {
                    mask |= 1 << i;
                }
                i += 1;
            }
        }
        mask
    }

    /// Indices of variables in blocks with the given role, in ring order.
    pub fn role_vars(&self, role: BlockRole) -> Vec<usize> {
        let mut out = Vec::new();
        let mut i = 0;
        for b in &self.blocks {
            for _ in &b.names {
                if b.role == role {
                    out.push(i);
                }
                i += 1;
            }
        }
        out
    }

    pub fn same_ring(a: &RingRc, b: &RingRc) -> bool {
        Arc::ptr_eq(a, b) || (a.field == b.field && a.blocks == b.blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CoeffField {
        CoeffField::rationals()
    }

    #[test]
    fn block_layout_and_masks() {
        let r = Ring::new(
            q(),
            vec![
                VariableBlock::numbered(BlockRole::Base, "x", 3),
                VariableBlock::numbered(BlockRole::Fiber, "t", 4),
            ],
        )
        .unwrap();
        assert_eq!(r.nvars(), 7);
        assert_eq!(r.name(0), "x1");
        assert_eq!(r.name(3), "t1");
        assert_eq!(r.var_index("t4").unwrap(), 6);
        assert_eq!(r.role_mask(BlockRole::Base), 0b0000111);
        assert_eq!(r.role_mask(BlockRole::Fiber), 0b1111000);
        assert_eq!(r.role_vars(BlockRole::Fiber), vec![3, 4, 5, 6]);
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = Ring::new(
            q(),
            vec![
                VariableBlock::new(BlockRole::Base, &["x1", "x2"]),
                VariableBlock::new(BlockRole::Fiber, &["x1", "t2"]),
            ],
        );
        assert!(err.is_err());
    }

    #[test]
    fn tiny_blocks_rejected() {
        assert!(Ring::base_ring(q(), &["x"]).is_err());
        assert!(Ring::base_ring(q(), &["x", "y"]).is_ok());
    }

    #[test]
    fn unknown_variable_lookup() {
        let r = Ring::base_ring(q(), &["x", "y"]).unwrap();
        assert_eq!(
            r.var_index("z"),
            Err(Error::UnknownVariable("z".to_string()))
        );
    }

    #[test]
    fn content_equality_across_instances() {
        let a = Ring::base_ring(q(), &["x", "y"]).unwrap();
        let b = Ring::base_ring(q(), &["x", "y"]).unwrap();
        let c = Ring::base_ring(q(), &["x", "z"]).unwrap();
        assert!(Ring::same_ring(&a, &b));
        assert!(!Ring::same_ring(&a, &c));
    }
}
