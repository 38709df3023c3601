pub mod delpezzo;
pub mod enumerate;
pub mod exact_forms;
pub mod json;
pub mod kodaira;
pub mod weierstrass;

mod error;
pub use error::{Error, Stage};
