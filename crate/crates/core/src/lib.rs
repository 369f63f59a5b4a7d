pub mod bigfloat;
pub mod bounds;
pub mod exact;
pub mod lattice;
pub mod numeric;
pub mod spectral;
pub mod enumerate;
