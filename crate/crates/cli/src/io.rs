use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;

#[derive(Debug)]
pub enum CliError {
    Lib(supermod::Error),
    Io(String),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(supermod::Error::InvariantViolation(_)) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(e) => write!(f, "{e}"),
        }
    }
}

impl From<supermod::Error> for CliError {
    fn from(e: supermod::Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_text(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Lib(supermod::Error::Parse(format!("{}: {e}", path.display()))))
}

/// One JSON value per nonblank line.
pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> CliResult<Vec<T>> {
    let text = read_text(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| {
            serde_json::from_str(l).map_err(|e| {
                CliError::Lib(supermod::Error::Parse(format!("{} line {}: {e}", path.display(), k + 1)))
            })
        })
        .collect()
}

pub fn to_json_line<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// Data goes to `--out` or standard output. The summary goes to standard
/// output when data has its own file, otherwise to standard error.
pub struct Emitter {
    out: Option<PathBuf>,
    buffer: String,
}

impl Emitter {
    pub fn new(out: Option<PathBuf>) -> Self {
        Emitter { out, buffer: String::new() }
    }

    pub fn line(&mut self, text: &str) {
        self.buffer.push_str(text);
        self.buffer.push('\n');
    }

    pub fn summary(&self, text: &str) {
        if self.out.is_some() {
            println!("{text}");
        } else {
            eprintln!("{text}");
        }
    }

    pub fn finish(self) -> CliResult<()> {
        match &self.out {
            Some(path) => fs::write(path, &self.buffer)
                .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
            None => {
                let mut stdout = io::stdout().lock();
                stdout
                    .write_all(self.buffer.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| CliError::Io(format!("writing standard output: {e}")))
            }
        }
    }
}
