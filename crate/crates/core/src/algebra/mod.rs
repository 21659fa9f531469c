//! Exact scalars, monomials, polynomials and monomial orders.

pub mod blocks;
pub mod monomial;
pub mod order;
pub mod polynomial;
pub mod rational;

pub use blocks::BlockSpec;
pub use monomial::Monomial;
pub use order::{merge_junction_orders, order_validate, BlockWeights, MonomialOrder, OrderKind, OrderViolation};
pub use polynomial::Polynomial;
pub use rational::Rational;
