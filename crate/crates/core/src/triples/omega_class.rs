use std::fmt;

use serde::{Serialize, Serializer};

use crate::fungroup::OmegaGroup;
use crate::rootdata::Family;

/// The coarse description of an element of `Omega'` used by the tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OmegaClass {
    Trivial,
    Nontrivial,
    /// Type A: the multiplicative order.
    Order(u64),
    /// Type D: in the subgroup fixing at least two nodes, not 1.
    InUnderline,
    /// Type D: outside that subgroup.
    OutsideUnderline,
}

pub fn omega_class(g: &OmegaGroup, x: &[u64]) -> OmegaClass {
    let trivial = g.is_identity(x);
    match g.finite_type().family() {
        Family::A => OmegaClass::Order(g.element_order(x)),
        _ if trivial => OmegaClass::Trivial,
        Family::D if g.fixed_nodes(x).len() >= 2 => OmegaClass::InUnderline,
        Family::D => OmegaClass::OutsideUnderline,
        _ => OmegaClass::Nontrivial,
    }
}

impl OmegaClass {
    pub fn is_trivial(self) -> bool {
        matches!(self, OmegaClass::Trivial | OmegaClass::Order(1))
    }
}

impl fmt::Display for OmegaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaClass::Trivial => write!(f, "trivial"),
            OmegaClass::Nontrivial => write!(f, "nontrivial"),
            OmegaClass::Order(k) => write!(f, "order {k}"),
            OmegaClass::InUnderline => write!(f, "in-underline"),
            OmegaClass::OutsideUnderline => write!(f, "not-in-underline"),
        }
    }
}

impl Serialize for OmegaClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
