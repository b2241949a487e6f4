use std::fs;
use std::path::Path;

use knotpair::catalog::lookup;
use knotpair::constructions::{KnotGroupPair, PairFile};
use knotpair::homology::SimplicialComplex;
use knotpair::{parse_presentation_any, parse_word, Presentation, Word};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] knotpair::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

macro_rules! core_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        }
    )*};
}

core_error!(
    knotpair::error::PresentationError,
    knotpair::error::KervaireError,
    knotpair::error::ConstructionError,
    knotpair::error::HomologyError,
    knotpair::error::AlexanderError
);

pub type Result<T> = std::result::Result<T, CliError>;

pub fn read_file(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

/// `@path` reads the file, anything else is the text itself.
pub fn source_text(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => read_file(path),
        None => Ok(arg.to_string()),
    }
}

pub fn presentation(arg: &str) -> Result<Presentation> {
    Ok(parse_presentation_any(&source_text(arg)?)?)
}

pub fn word(arg: &str, p: &Presentation) -> Result<Word> {
    Ok(parse_word(arg, p)?)
}

/// A knot group with meridian, from a catalog name or a presentation and
/// meridian word.
pub fn knot(name: Option<&str>, pres: Option<&str>, meridian: Option<&str>) -> Result<(Presentation, Word)> {
    match (name, pres) {
        (Some(name), None) => {
            let e = lookup(name).ok_or_else(|| CliError::Usage(format!("no catalog entry named {name:?}")))?;
            let meridian = match meridian {
                Some(m) => word(m, &e.presentation)?,
                None => e.meridian.clone(),
            };
            Ok((e.presentation.clone(), meridian))
        }
        (None, Some(p)) => {
            let p = presentation(p)?;
            let m = meridian.ok_or_else(|| CliError::Usage("--meridian is required with --presentation".into()))?;
            let m = word(m, &p)?;
            Ok((p, m))
        }
        (Some(_), Some(_)) => Err(CliError::Usage("give either --knot or --presentation, not both".into())),
        (None, None) => Err(CliError::Usage("a knot is required: --knot NAME or --presentation P --meridian W".into())),
    }
}

pub fn pair_file(path: &str) -> Result<KnotGroupPair> {
    let text = source_text(&format!("@{}", path.trim_start_matches('@')))?;
    let file: PairFile = serde_json::from_str(&text)?;
    Ok(file.into_pair()?)
}

/// A pair from `--pair`, or the identity pair on a knot group.
pub fn pair(file: Option<&str>, name: Option<&str>, pres: Option<&str>, meridian: Option<&str>) -> Result<KnotGroupPair> {
    match file {
        Some(path) => {
            if name.is_some() || pres.is_some() {
                return Err(CliError::Usage("--pair cannot be combined with --knot or --presentation".into()));
            }
            pair_file(path)
        }
        None => {
            let (p, m) = knot(name, pres, meridian)?;
            Ok(KnotGroupPair::identity(&p, &m)?)
        }
    }
}

/// A file path, inline JSON, or the name of a built-in complex.
pub fn complex(arg: &str) -> Result<SimplicialComplex> {
    let trimmed = arg.trim();
    let text = if let Some(path) = trimmed.strip_prefix('@') {
        read_file(path)?
    } else if trimmed.starts_with('[') {
        trimmed.to_string()
    } else if Path::new(trimmed).exists() {
        read_file(trimmed)?
    } else {
        return SimplicialComplex::catalog()
            .into_iter()
            .find(|(n, _)| *n == trimmed)
            .map(|(_, k)| k)
            .ok_or_else(|| CliError::Usage(format!("{arg:?} is neither a file nor a built-in complex")));
    };
    Ok(SimplicialComplex::from_json(&text)?)
}
