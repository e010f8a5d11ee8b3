use std::io;
use std::path::PathBuf;

use physio_rec_core::CoreError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    /// A JSON Lines record that does not decode. `line` is 1-based.
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: {source}")]
    Sample {
        line: usize,
        #[source]
        source: CoreError,
    },
    /// Structurally valid JSON whose content breaks the schema.
    #[error("{context}: field `{field}`: {message}")]
    Schema {
        context: String,
        field: String,
        message: String,
    },
    #[error("weight matrix {} not found; run `physio-rec train` or `physio-rec init-weights` first", path.display())]
    MissingWeights { path: PathBuf },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn schema(
        context: impl Into<String>,
        field: impl Into<String>,
        message: impl ToString,
    ) -> Self {
        Error::Schema {
            context: context.into(),
            field: field.into(),
            message: message.to_string(),
        }
    }
}

/// Deserializes `text`, reporting the JSON path of the first offending field.
pub(crate) fn from_json<T: serde::de::DeserializeOwned>(context: &str, text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "<root>".to_string() } else { path };
        Error::schema(context, field, e.into_inner())
    })
}
