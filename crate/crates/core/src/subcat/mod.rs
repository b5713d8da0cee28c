//! Finitely described subcategories of finite Top: membership, (weak)
//! reflections, hulls and the diagonal criteria.
//!
//! Class-quantified checks run under an explicit size bound. Every verdict
//! records that bound together with an `exact` flag; violations found are
//! always definitive.

mod alpha;
mod file;
mod hull;
mod reflect;
mod spec;
mod sweep;

pub use alpha::{canonical_alpha, diagonal, lord_condition_star, naturality_square, CanonicalAlpha, LordWitness};
pub use file::{load_subcat, named_space, parse_subcat, resolve_space, resolve_subcat};
pub use hull::{
    in_d_hull, in_e_hull, in_largest_intermediate, in_mono_hull, in_s_hull, in_smallest_intermediate,
    Hull, HullReport, HullWitness,
};
pub use reflect::{
    reflect_map, seh_reflection, verify_weak_reflection, FactorizationFailure, Reflection,
    WeakReflectionCertificate,
};
pub use spec::{Builtin, SubcatKind, SubcatSpec, TableReflection, DEFAULT_BOUND};
pub use sweep::{is_cancellable, regular_bound, regular_sweep, Cancellability, RegularSweep, RegularWitness};
