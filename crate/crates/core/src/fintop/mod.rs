//! Finite topological spaces and continuous maps.

mod construct;
mod enumerate;
mod export;
mod format;
mod map;
mod space;

pub use construct::{
    cokernel_pair, equalizer, factorize, product, pullback, t0_reflection, CokernelPair,
    Factorization, Product, Pullback, Subobject,
};
pub(crate) use construct::quotient;
pub use enumerate::{
    canonical_form, canonicalize, enumerate_spaces, enumerate_spaces_within, homeomorphism,
    parse_canonical,
    universe, Canonical, CATALOG_MAX_POINTS, DEFAULT_MAX_POINTS,
};
pub(crate) use enumerate::catalog_up_to;
pub use export::{export_category, export_category_within, ExportedCategory, DEFAULT_MORPHISM_BUDGET};
pub use format::{parse_space, space_to_json, SpaceFile};
pub use map::{hom_set, ContMap, MapSearch};
pub use space::FinSpace;
