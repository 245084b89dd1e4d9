// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected at least two node tokens")]
    MalformedLine { line: usize },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("operation requires an undirected graph")]
    DirectedInput,

    #[error("input is not a tree: {0}")]
    NotATree(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
