//! OEIS b-files: parsing, local fixtures and optional download.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

#[derive(Debug, thiserror::Error)]
pub enum OeisError {
    #[error("b-file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("bad A-number {0:?}")]
    BadId(String),
    #[error("no fixture for {anumber} at {path} (use --fetch to download)")]
    FixtureMissing { anumber: String, path: PathBuf },
    #[error("fetching {anumber}: {msg}")]
    Fetch { anumber: String, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BFile {
    pub anumber: String,
    pub entries: Vec<(i64, BigInt)>,
}

impl BFile {
    /// Parses `index value` lines; blank lines and `#` comments are skipped.
    pub fn parse(anumber: &str, text: &str) -> Result<Self, OeisError> {
        let mut entries: Vec<(i64, BigInt)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| OeisError::Parse { line: i + 1, msg: msg.to_string() };
            let mut parts = line.split_whitespace();
            let (Some(idx), Some(val)) = (parts.next(), parts.next()) else {
                return Err(err("expected two fields"));
            };
            if parts.next().is_some() {
                return Err(err("trailing fields"));
            }
            let idx: i64 = idx.parse().map_err(|_| err("bad index"))?;
            let val: BigInt = val.parse().map_err(|_| err("bad value"))?;
            if entries.last().is_some_and(|(prev, _)| idx <= *prev) {
                return Err(err("indices not increasing"));
            }
            entries.push((idx, val));
        }
        Ok(BFile { anumber: anumber.to_string(), entries })
    }

    pub fn offset(&self) -> Option<i64> {
        self.entries.first().map(|e| e.0)
    }

    pub fn values(&self) -> impl Iterator<Item = &BigInt> {
        self.entries.iter().map(|e| &e.1)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, v) in &self.entries {
            let _ = writeln!(s, "{i} {v}");
        }
        s
    }
}

/// Normalizes `a45`, `A000045` and the like to `A000045`.
pub fn normalize_id(id: &str) -> Result<String, OeisError> {
    let digits = id.trim().strip_prefix(['A', 'a']).ok_or_else(|| OeisError::BadId(id.to_string()))?;
    if digits.is_empty() || digits.len() > 7 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(OeisError::BadId(id.to_string()));
    }
    Ok(format!("A{:06}", digits.parse::<u32>().expect("digits")))
}

pub fn default_fixture_dir() -> PathBuf {
    match std::env::var_os("OEIS_CACHE_DIR") {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("oeis"),
    }
}

/// Where b-files come from.
#[derive(Clone, Debug)]
pub struct OeisSource {
    dir: PathBuf,
    fetch: bool,
}

impl OeisSource {
    pub fn fixtures_only(dir: PathBuf) -> Self {
        OeisSource { dir, fetch: false }
    }

    pub fn with_fetch(dir: PathBuf) -> Self {
        OeisSource { dir, fetch: true }
    }

    pub fn path_for(&self, anumber: &str) -> PathBuf {
        self.dir.join(format!("b{}.txt", &anumber[1..]))
    }

    pub fn load(&self, id: &str) -> Result<BFile, OeisError> {
        let anumber = normalize_id(id)?;
        let path = self.path_for(&anumber);
        match std::fs::read_to_string(&path) {
            Ok(text) => BFile::parse(&anumber, &text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                if !self.fetch {
                    return Err(OeisError::FixtureMissing { anumber, path });
                }
                let text = download(&anumber)?;
                let b = BFile::parse(&anumber, &text)?;
                std::fs::create_dir_all(&self.dir)?;
                std::fs::write(&path, &text)?;
                Ok(b)
            }
            Err(e) => Err(e.into()),
        }
    }
}

fn download(anumber: &str) -> Result<String, OeisError> {
    let url = format!("https://oeis.org/{anumber}/b{}.txt", &anumber[1..]);
    let fail = |e: ureq::Error| OeisError::Fetch { anumber: anumber.to_string(), msg: e.to_string() };
    ureq::get(&url).call().map_err(fail)?.body_mut().read_to_string().map_err(fail)
}
