pub mod completion;
pub mod hilbert;
pub mod homalg;
pub mod linear;
pub mod order;
pub mod rewrite;
pub mod rulefile;
pub mod scalar;
pub mod term;

#[cfg(test)]
mod properties;
