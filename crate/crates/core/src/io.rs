//! File formats: sparse sequence CSV, periodic-sequence and kernel-report
//! JSON documents, and binary PGM images.

use std::collections::BTreeSet;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, Floats};
use crate::parser::parse_value;
use crate::sequence::{FiniteSeq, PeriodicSeq, SeqVector, Sequence};
use crate::system::{stack, unstack, KernelBasis};
use crate::terms::Exponent;

/// Reads a sparse sequence: one row `α_1,…,α_r,value` per coefficient, no
/// header.
pub fn read_seq_csv_from<K: Field, R: Read>(
    reader: R,
    rank: usize,
    field: &K,
) -> Result<FiniteSeq<K>> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut seen = BTreeSet::new();
    let mut terms = Vec::new();
    for (i, record) in csv.records().enumerate() {
        let line = i + 1;
        let record = record.map_err(|e| Error::BadRow {
            line,
            reason: e.to_string(),
        })?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != rank + 1 {
            return Err(Error::RankMismatch {
                expected: rank,
                found: record.len().saturating_sub(1),
            });
        }
        let index = record
            .iter()
            .take(rank)
            .map(|t| {
                t.parse::<i64>().map_err(|_| Error::BadRow {
                    line,
                    reason: format!("index {t:?} is not an integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let token = &record[rank];
        let value = parse_value(token, field).map_err(|_| Error::BadValueToken {
            line,
            token: token.to_string(),
        })?;
        if !seen.insert(index.clone()) {
            return Err(Error::DuplicateIndex(index));
        }
        terms.push((Exponent::new(index), value));
    }
    FiniteSeq::from_terms(field.clone(), rank, terms)
}

pub fn read_seq_csv<K: Field>(
    path: impl AsRef<Path>,
    rank: usize,
    field: &K,
) -> Result<FiniteSeq<K>> {
    read_seq_csv_from(fs::File::open(path)?, rank, field)
}

/// Rows sorted ascending by index; zero coefficients are not written.
pub fn write_seq_csv_to<K: Field, W: Write>(w: &FiniteSeq<K>, mut out: W) -> Result<()> {
    let f = w.field();
    for (e, c) in w.terms() {
        let mut row: Vec<String> = e.components().iter().map(i64::to_string).collect();
        row.push(f.format(c));
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn write_seq_csv<K: Field>(w: &FiniteSeq<K>, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_seq_csv_to(w, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

fn value_to_json<K: Field>(field: &K, v: &K::Elem) -> Value {
    let text = field.format(v);
    if field.is_exact() {
        if let Ok(n) = text.parse::<i64>() {
            return Value::from(n);
        }
        return Value::String(text);
    }
    text.parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::String(text), Value::Number)
}

fn value_from_json<K: Field>(field: &K, v: &Value) -> Result<K::Elem> {
    let token = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => {
            return Err(Error::Schema(format!(
                "expected a number or string, got {other}"
            )))
        }
    };
    parse_value(&token, field).map_err(|e| Error::Schema(format!("value {token:?}: {e}")))
}

fn check_field_string<K: Field>(declared: &str, field: &K) -> Result<()> {
    let declared: crate::field::FieldDescriptor = declared
        .parse()
        .map_err(|e: Error| Error::Schema(e.to_string()))?;
    if declared != field.descriptor() {
        return Err(Error::MixedField {
            left: declared.to_string(),
            right: field.descriptor().to_string(),
        });
    }
    Ok(())
}

/// A periodic sequence as a JSON document.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicDocument {
    pub rank: usize,
    pub field: String,
    pub periods: Vec<usize>,
    pub values: Vec<Value>,
}

impl PeriodicDocument {
    pub fn from_seq<K: Field>(w: &PeriodicSeq<K>) -> Self {
        let f = w.field();
        PeriodicDocument {
            rank: w.rank(),
            field: f.descriptor().to_string(),
            periods: w.periods().to_vec(),
            values: w.values().iter().map(|v| value_to_json(f, v)).collect(),
        }
    }

    pub fn to_seq<K: Field>(&self, field: &K) -> Result<PeriodicSeq<K>> {
        check_field_string(&self.field, field)?;
        if self.periods.len() != self.rank {
            return Err(Error::Schema(format!(
                "rank {} but {} periods",
                self.rank,
                self.periods.len()
            )));
        }
        let values = self
            .values
            .iter()
            .map(|v| value_from_json(field, v))
            .collect::<Result<Vec<_>>>()?;
        PeriodicSeq::new(field.clone(), self.periods.clone(), values)
            .map_err(|e| Error::Schema(e.to_string()))
    }
}

/// Field string named by a periodic or kernel document.
pub fn document_field(text: &str) -> Result<String> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    v.get("field")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| Error::Schema("missing \"field\"".into()))
}

pub fn read_periodic<K: Field>(path: impl AsRef<Path>, field: &K) -> Result<PeriodicSeq<K>> {
    read_periodic_str(&fs::read_to_string(path)?, field)
}

pub fn read_periodic_str<K: Field>(text: &str, field: &K) -> Result<PeriodicSeq<K>> {
    let doc: PeriodicDocument =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    doc.to_seq(field)
}

pub fn periodic_to_string<K: Field>(w: &PeriodicSeq<K>) -> String {
    let mut s = serde_json::to_string_pretty(&PeriodicDocument::from_seq(w)).unwrap();
    s.push('\n');
    s
}

pub fn write_periodic<K: Field>(w: &PeriodicSeq<K>, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, periodic_to_string(w))?;
    Ok(())
}

/// Kernel basis report. Each basis vector is listed by its stacked
/// coordinates: component-major, then row-major over the fundamental domain.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelReport {
    pub rank: usize,
    pub field: String,
    pub periods: Vec<usize>,
    pub components: usize,
    pub dimension: usize,
    pub basis: Vec<Vec<Value>>,
}

impl KernelReport {
    pub fn from_basis<K: Field>(k: &KernelBasis<K>) -> Self {
        KernelReport {
            rank: k.periods.len(),
            field: k.field.descriptor().to_string(),
            periods: k.periods.clone(),
            components: k.components,
            dimension: k.dimension(),
            basis: k
                .basis
                .iter()
                .map(|b| {
                    stack(b)
                        .iter()
                        .map(|v| value_to_json(&k.field, v))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_basis<K: Field>(&self, field: &K) -> Result<KernelBasis<K>> {
        check_field_string(&self.field, field)?;
        if self.periods.len() != self.rank {
            return Err(Error::Schema("periods length differs from rank".into()));
        }
        if self.basis.len() != self.dimension {
            return Err(Error::Schema(format!(
                "dimension {} but {} basis vectors",
                self.dimension,
                self.basis.len()
            )));
        }
        let basis = self
            .basis
            .iter()
            .map(|coords| {
                let coords = coords
                    .iter()
                    .map(|v| value_from_json(field, v))
                    .collect::<Result<Vec<_>>>()?;
                unstack(field, &self.periods, self.components, &coords)
                    .map_err(|e| Error::Schema(e.to_string()))
            })
            .collect::<Result<Vec<SeqVector<K>>>>()?;
        Ok(KernelBasis {
            field: field.clone(),
            periods: self.periods.clone(),
            components: self.components,
            basis,
        })
    }
}

pub fn kernel_report_to_string<K: Field>(k: &KernelBasis<K>) -> String {
    let mut s = serde_json::to_string_pretty(&KernelReport::from_basis(k)).unwrap();
    s.push('\n');
    s
}

pub fn write_kernel_report<K: Field>(k: &KernelBasis<K>, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, kernel_report_to_string(k))?;
    Ok(())
}

pub fn read_kernel_report<K: Field>(path: impl AsRef<Path>, field: &K) -> Result<KernelBasis<K>> {
    let text = fs::read_to_string(path)?;
    let report: KernelReport =
        serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?;
    report.to_basis(field)
}

/// Geometry of a grayscale image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PgmInfo {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderCursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u64> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::BadHeader(format!("missing or invalid {what}")))
    }
}

/// Decodes a binary PGM. Pixel `(row y, column x)` becomes the coefficient
/// at index `(x, y)` with value `gray / maxval`.
pub fn decode_pgm(bytes: &[u8], field: &Floats) -> Result<(FiniteSeq<Floats>, PgmInfo)> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(Error::BadMagic);
    }
    let mut cur = HeaderCursor { bytes, pos: 2 };
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval = cur.number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::BadHeader(format!(
            "maxval {maxval} outside 1..=65535"
        )));
    }
    // exactly one whitespace byte separates the header from the raster
    if !bytes.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(Error::BadHeader("no whitespace after maxval".into()));
    }
    let data = &bytes[cur.pos + 1..];
    let sample = if maxval < 256 { 1 } else { 2 };
    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(sample))
        .ok_or_else(|| Error::BadHeader("image dimensions overflow".into()))?;
    if data.len() < expected {
        return Err(Error::TruncatedPixelData {
            expected,
            found: data.len(),
        });
    }
    let scale = maxval as f64;
    let mut terms = Vec::new();
    for y in 0..height {
        for x in 0..width {
            let i = (y * width + x) * sample;
            let gray = if sample == 1 {
                data[i] as u64
            } else {
                u16::from_be_bytes([data[i], data[i + 1]]) as u64
            };
            if gray != 0 {
                terms.push((Exponent::new(vec![x as i64, y as i64]), gray as f64 / scale));
            }
        }
    }
    let info = PgmInfo {
        width,
        height,
        maxval: maxval as u16,
    };
    Ok((FiniteSeq::from_terms(*field, 2, terms)?, info))
}

/// Encodes the window `[0, width) × [0, height)` of a rank-2 sequence.
/// Values are clamped to `[0, 1]` and quantized by rounding half up.
pub fn encode_pgm(w: &FiniteSeq<Floats>, info: PgmInfo) -> Result<Vec<u8>> {
    if w.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: w.rank(),
        });
    }
    if info.maxval == 0 {
        return Err(Error::BadHeader("maxval must be positive".into()));
    }
    let mut out = format!("P5\n{} {}\n{}\n", info.width, info.height, info.maxval).into_bytes();
    let scale = info.maxval as f64;
    for y in 0..info.height {
        for x in 0..info.width {
            let v = w.value_at(&Exponent::new(vec![x as i64, y as i64]));
            let v = if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) };
            let gray = (v * scale + 0.5).floor() as u16;
            if info.maxval < 256 {
                out.push(gray as u8);
            } else {
                out.extend_from_slice(&gray.to_be_bytes());
            }
        }
    }
    Ok(out)
}

pub fn read_pgm(path: impl AsRef<Path>, field: &Floats) -> Result<(FiniteSeq<Floats>, PgmInfo)> {
    decode_pgm(&fs::read(path)?, field)
}

pub fn write_pgm(w: &FiniteSeq<Floats>, info: PgmInfo, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode_pgm(w, info)?)?;
    Ok(())
}
