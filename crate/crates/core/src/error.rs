use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("generator {0} is not invertible")]
    SingularGenerator(usize),
    #[error("generator file: {0}")]
    GeneratorFile(String),
    #[error("group has no reflections")]
    NoReflections,
    #[error("local data of {rep} at hyperplane {hyperplane}, j = {j} is not a nonnegative integer: {value}")]
    NonIntegralLocalData {
        rep: String,
        hyperplane: usize,
        j: usize,
        value: String,
    },
    #[error("degree factorization failed: {0}")]
    Factorization(String),
    #[error("fake degree polynomial of {rep} is not a nonnegative integer polynomial: {detail}")]
    BadFakeDegree { rep: String, detail: String },
    #[error("inexact division by the form of hyperplane {0}")]
    InexactDivision(usize),
    #[error("parameter does not preserve polynomials: c[orbit {0}][0] != 0")]
    NotPolynomialAction(usize),
    #[error("parameter shape does not match the group's hyperplane orbits")]
    ParameterShape,
    #[error("Gram layers reached the cap degree {0} without a zero layer")]
    GramCap(usize),
    #[error("malformed permutation for orbit {0}")]
    MalformedPermutation(usize),
    #[error("the c-function of the degree-one representation has zero coefficient")]
    DegenerateBase,
    #[error("component of size {size} exceeds the cap {cap}")]
    ComponentCap { size: usize, cap: usize },
    #[error("group order {order} exceeds the oracle cap {cap}")]
    OracleOrderCap { order: usize, cap: usize },
    #[error("antidiagonal cap {0} reached before the table closed")]
    AntidiagonalCap(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
