//! Exact arithmetic in cyclotomic fields `Q(ζ_M)`, `1 <= M <= 120`.

mod approx;
mod cyclo;
mod field;
pub mod modular;
mod text;

pub use approx::{to_f64_points, ComplexApprox};
pub use cyclo::{common_order, field_degree, ArithOp, CycloNum, Rational};
pub use field::{cyclotomic_polynomial, lcm_u32, totient, MAX_ORDER};
pub use modular::{ModKey, ModularHasher};
pub use text::{format_rational, parse_rational};

/// `complex_conj` as a free function.
pub fn complex_conj(a: &CycloNum) -> CycloNum {
    a.conj()
}

pub fn is_real(a: &CycloNum) -> bool {
    a.is_real()
}
