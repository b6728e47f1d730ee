//! Built-in inner functions used by the checks and the command line.

use crate::inner::{parse_inner, InnerFunction};
use crate::scalar::Real;

/// Catalog entry. `elastic` records whether `phi` is of the form
/// `e^{i(kappa p + theta)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry<T> {
    pub spec: &'static str,
    pub phi: InnerFunction<T>,
    pub elastic: bool,
}

pub const ELASTIC_SPECS: [&str; 3] = ["exp:kappa=0,theta=0", "exp:kappa=1,theta=0", "exp:kappa=2,theta=0.7"];

pub const PRODUCTION_SPECS: [&str; 4] = [
    "blaschke:0+1i",
    "blaschke:1+1i",
    "blaschke:1+1i;-2+0.5i",
    "exp:kappa=0.5,theta=0*blaschke:0+2i",
];

pub fn catalog<T: Real>() -> Vec<CatalogEntry<T>> {
    let entry = |spec: &'static str, elastic| CatalogEntry {
        spec,
        phi: parse_inner(spec).expect("catalog spec parses"),
        elastic,
    };
    ELASTIC_SPECS
        .iter()
        .map(|s| entry(s, true))
        .chain(PRODUCTION_SPECS.iter().map(|s| entry(s, false)))
        .collect()
}
