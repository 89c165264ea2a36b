//! Finite and affine root data: types, root systems, affine diagrams.

mod affine;
mod system;
mod types;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

pub use affine::{
    affinize, apply_word, bond_order, components_type, longest_word, op_automorphism,
    type_subdiagram, AffineDiagram, Component, NodePermutation,
};
pub use system::{build_root_system, Root, RootSystem};
pub use types::{Family, FiniteType, TypeExpr};

static SYSTEMS: Lazy<Mutex<HashMap<FiniteType, Arc<RootSystem>>>> = Lazy::new(Default::default);
static DIAGRAMS: Lazy<Mutex<HashMap<FiniteType, Arc<AffineDiagram>>>> = Lazy::new(Default::default);

/// Cached root system of type `t`.
pub fn root_system(t: FiniteType) -> Arc<RootSystem> {
    if let Some(r) = SYSTEMS.lock().expect("cache").get(&t) {
        return r.clone();
    }
    let r = Arc::new(build_root_system(t));
    SYSTEMS.lock().expect("cache").entry(t).or_insert(r).clone()
}

/// Cached untwisted affine diagram of type `t`.
pub fn affine_diagram(t: FiniteType) -> Arc<AffineDiagram> {
    if let Some(d) = DIAGRAMS.lock().expect("cache").get(&t) {
        return d.clone();
    }
    let d = Arc::new(affinize(root_system(t)));
    DIAGRAMS.lock().expect("cache").entry(t).or_insert(d).clone()
}
