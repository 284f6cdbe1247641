use alloc::string::String;
use core::fmt;

/// Errors surfaced by the library's validated constructors and operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A coloring must assign a color to at least one integer.
    EmptyColoring,
    /// A color entry exceeds the declared number of colors.
    ColorOutOfRange {
        position: usize,
        color: u8,
        num_colors: u8,
    },
    /// A numeric parameter is outside its documented domain.
    InvalidParameter(String),
    /// The operation is only defined for 2-colorings.
    TwoColorsRequired { got: u8 },
    /// A block pattern must contain at least one block.
    EmptyPattern,
    /// Block lengths must be strictly positive.
    NonPositiveLength { index: usize },
    /// Realizing a pattern on [1, n] needs at least one integer per block.
    RealizeTooShort { n: usize, blocks: usize },
    /// The pieces handed to the minimizer do not tile [0, oo).
    PiecesDoNotTile(String),
    /// An internally computed piece disagreed with the exact area oracle.
    PieceValidation(String),
    /// Estimated enumeration work exceeds the configured budget.
    BudgetExceeded { estimated_steps: u128, budget: u128 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyColoring => write!(f, "coloring must cover at least one integer"),
            Error::ColorOutOfRange {
                position,
                color,
                num_colors,
            } => write!(
                f,
                "color {color} at position {position} exceeds color count {num_colors}"
            ),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::TwoColorsRequired { got } => {
                write!(f, "operation requires exactly 2 colors, got {got}")
            }
            Error::EmptyPattern => write!(f, "block pattern must contain at least one block"),
            Error::NonPositiveLength { index } => {
                write!(f, "block {index} has non-positive length")
            }
            Error::RealizeTooShort { n, blocks } => write!(
                f,
                "cannot realize {blocks} blocks on [1, {n}]: need n >= block count"
            ),
            Error::PiecesDoNotTile(msg) => write!(f, "pieces do not tile [0, oo): {msg}"),
            Error::PieceValidation(msg) => write!(f, "piece failed midpoint validation: {msg}"),
            Error::BudgetExceeded {
                estimated_steps,
                budget,
            } => write!(
                f,
                "estimated {estimated_steps} enumeration steps exceed budget {budget}"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
