use core::fmt::Debug;

/// Commutative ring operations shared by exact scalars and balls.
pub trait Ring: Clone + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_i64(n: i64) -> Self;
}
