//! Formal parameters, component groups and the canonical characters on them.

mod component;
mod parameter;
mod summand;

pub use component::{ell_map, embed_component, Character, ComponentGroup, EllMap, Embedding, GroupElem, MAX_RANK};
pub use parameter::{ParamClass, Parameter, Term};
pub use summand::{SdType, Summand, SummandId};

use crate::arithmetic::{LocalField, QuadraticCharacter, SquareClass};
use crate::Result;

/// Validated parameter from a list of terms.
pub fn make_parameter(field: LocalField, terms: Vec<Term>) -> Result<Parameter> {
    Parameter::new(field, terms)
}

pub fn twist(phi: &Parameter, chi: QuadraticCharacter) -> Parameter {
    phi.twist(chi)
}

pub fn contains(phi: &Parameter, summand: &Summand) -> u32 {
    phi.contains(summand)
}

pub fn component_group(phi: &Parameter) -> ComponentGroup {
    ComponentGroup::of(phi)
}

pub fn eta_char(phi: &Parameter, c: SquareClass) -> Result<Character> {
    ComponentGroup::of(phi).eta(c)
}
