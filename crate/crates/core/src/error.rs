use std::io;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("symbol {code} at offset {offset} is outside the alphabet of size {sigma}")]
    InvalidSymbol { offset: usize, code: u32, sigma: u32 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("malformed index file: {0}")]
    Format(String),
    #[error("index checksum mismatch (stored {stored:#010x}, computed {computed:#010x})")]
    Checksum { stored: u32, computed: u32 },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
