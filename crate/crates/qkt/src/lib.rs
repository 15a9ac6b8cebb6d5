pub mod bethe;
pub mod combinatorics;
pub mod grothendieck;
pub mod json;
pub mod localization;
pub mod module;
pub mod products;
pub mod scalar;
pub mod vertex;
pub mod weyl;
