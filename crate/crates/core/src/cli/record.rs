//! On-disk records: a metadata header plus a sequence or a Zak grid.
//!
//! CSV: one `# key=value,...` header line, a column line, then
//! `index,re,im` (sequences) or `j,k,re,im` (grids, row-major) rows with
//! numbers in `{:.16e}`. JSON carries the same metadata and a `data` array
//! of `[re, im]` pairs. Both formats round-trip every `f64` bit-exactly.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::signal::{ComplexSeq, ZakArray};

pub const CONVENTION: &str = "dft-sign:+";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// `.json` means JSON, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub kind: String,
    pub n: u64,
    /// Family parameters joined by `;`, e.g. `3;5` or `l=1;1`.
    pub params: String,
    /// `sequence`, `dft` or `fzt`.
    pub transform: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    pub convention: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Sequence(ComplexSeq),
    Grid(ZakArray),
}

impl Payload {
    fn values(&self) -> &[Complex64] {
        match self {
            Payload::Sequence(s) => s.values(),
            Payload::Grid(g) => g.data(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub meta: Metadata,
    pub payload: Payload,
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("malformed record: {0}")]
    Malformed(String),
}

fn malformed(msg: impl Into<String>) -> RecordError {
    RecordError::Malformed(msg.into())
}

#[derive(Serialize, Deserialize)]
struct JsonRecord {
    #[serde(flatten)]
    meta: Metadata,
    data: Vec<[f64; 2]>,
}

impl OutputRecord {
    pub fn to_csv(&self) -> String {
        let m = &self.meta;
        let mut out = format!(
            "# kind={},n={},params={},transform={}",
            m.kind, m.n, m.params, m.transform
        );
        if let Some(method) = &m.method {
            let _ = write!(out, ",method={method}");
        }
        if let (Some(r), Some(c)) = (m.rows, m.cols) {
            let _ = write!(out, ",rows={r},cols={c}");
        }
        let _ = writeln!(out, ",convention={},version={}", m.convention, m.version);
        match &self.payload {
            Payload::Sequence(s) => {
                out.push_str("index,re,im\n");
                for (i, v) in s.iter().enumerate() {
                    let _ = writeln!(out, "{i},{:.16e},{:.16e}", v.re, v.im);
                }
            }
            Payload::Grid(g) => {
                out.push_str("j,k,re,im\n");
                for j in 0..g.rows() {
                    for k in 0..g.cols() {
                        let v = g.get(j, k);
                        let _ = writeln!(out, "{j},{k},{:.16e},{:.16e}", v.re, v.im);
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rec = JsonRecord {
            meta: self.meta.clone(),
            data: self.payload.values().iter().map(|v| [v.re, v.im]).collect(),
        };
        let mut s = serde_json::to_string_pretty(&rec).expect("finite values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Parses either format, sniffing JSON by a leading `{`.
    pub fn parse(text: &str) -> Result<Self, RecordError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_csv(text)
        }
    }

    pub fn from_json(text: &str) -> Result<Self, RecordError> {
        let rec: JsonRecord = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        let values: Vec<Complex64> = rec.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Self::assemble(rec.meta, values)
    }

    pub fn from_csv(text: &str) -> Result<Self, RecordError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .and_then(|l| l.strip_prefix('#'))
            .ok_or_else(|| malformed("missing `#` header line"))?;
        let meta = parse_header(header.trim())?;
        let columns = lines.next().ok_or_else(|| malformed("missing column line"))?;
        let width = match columns.trim() {
            "index,re,im" => 3,
            "j,k,re,im" => 4,
            other => return Err(malformed(format!("unexpected columns `{other}`"))),
        };
        let mut values = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != width {
                return Err(malformed(format!("bad row `{line}`")));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| malformed(format!("bad number `{s}`")))
            };
            values.push(Complex64::new(num(fields[width - 2])?, num(fields[width - 1])?));
        }
        Self::assemble(meta, values)
    }

    fn assemble(meta: Metadata, values: Vec<Complex64>) -> Result<Self, RecordError> {
        let payload = match (meta.rows, meta.cols) {
            (Some(r), Some(c)) => Payload::Grid(
                ZakArray::from_row_major(r, c, values).map_err(|e| malformed(e.to_string()))?,
            ),
            (None, None) => {
                if values.len() as u64 != meta.n {
                    return Err(malformed(format!(
                        "header says n={} but found {} values",
                        meta.n,
                        values.len()
                    )));
                }
                Payload::Sequence(ComplexSeq::new(values))
            }
            _ => return Err(malformed("rows and cols must be given together")),
        };
        Ok(Self { meta, payload })
    }

    /// Writes via a temporary file in the target directory, then renames.
    pub fn write_atomic(&self, path: &Path, format: Format) -> Result<(), RecordError> {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(self.render(format).as_bytes())?;
        tmp.flush()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, RecordError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

fn parse_header(header: &str) -> Result<Metadata, RecordError> {
    let mut meta = Metadata {
        kind: String::new(),
        n: 0,
        params: String::new(),
        transform: String::new(),
        method: None,
        rows: None,
        cols: None,
        convention: String::new(),
        version: String::new(),
    };
    let int = |k: &str, v: &str| {
        v.parse::<usize>()
            .map_err(|_| malformed(format!("bad integer `{v}` for `{k}`")))
    };
    let mut seen_n = false;
    for field in header.split(',') {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| malformed(format!("bad header field `{field}`")))?;
        match k.trim() {
            "kind" => meta.kind = v.to_string(),
            "n" => {
                meta.n = int(k, v)? as u64;
                seen_n = true;
            }
            "params" => meta.params = v.to_string(),
            "transform" => meta.transform = v.to_string(),
            "method" => meta.method = Some(v.to_string()),
            "rows" => meta.rows = Some(int(k, v)?),
            "cols" => meta.cols = Some(int(k, v)?),
            "convention" => meta.convention = v.to_string(),
            "version" => meta.version = v.to_string(),
            _ => {}
        }
    }
    if !seen_n || meta.kind.is_empty() {
        return Err(malformed("header needs `kind` and `n`"));
    }
    Ok(meta)
}
