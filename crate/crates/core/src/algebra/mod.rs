//! Exact commutative-ring arithmetic.

pub mod cyclotomic;
pub mod gaussian;
pub mod laurent;
pub mod mat2;
pub mod ring;
pub mod series;

pub use cyclotomic::{Cyclotomic, SUPPORTED_ORDERS};
pub use gaussian::Gaussian;
pub use laurent::{total_degree, Exps, GaussPoly, IntPoly, LaurentPoly, Vars};
pub use mat2::{int_mat, Mat2};
pub use ring::{Coeff, Ring};
pub use series::{macmahon_power, macmahon_series, one_minus_power, MacMahonKind, SeriesBudget};

/// The four box-label variables `q, r, s, t`.
pub fn qrst() -> Vars {
    Vars::new(&["q", "r", "s", "t"])
}

/// The three connection variables `a, b, c`.
pub fn abc() -> Vars {
    Vars::new(&["a", "b", "c"])
}
