//! MatrixMarket coordinate files (`real` or `integer`, `general` or
//! `symmetric`).

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    General,
    /// Only the lower triangle is stored.
    Symmetric,
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<CsrMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_matrix_market_from(BufReader::new(file), path)
}

/// Parse from any reader; `origin` is only used in error messages.
pub fn read_matrix_market_from<R: Read>(reader: R, origin: &Path) -> Result<CsrMatrix> {
    let parse_err = |line: usize, msg: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        msg,
    };
    let io_err = |source| Error::Io {
        path: origin.to_path_buf(),
        source,
    };
    let mut lines = BufReader::new(reader).lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file".into()))?;
    let header = header.map_err(io_err)?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(parse_err(1, format!("bad header `{header}`")));
    }
    if tokens[2] != "coordinate" {
        return Err(parse_err(1, format!("unsupported format `{}`", tokens[2])));
    }
    if tokens[3] != "real" && tokens[3] != "integer" {
        return Err(parse_err(1, format!("unsupported field `{}`", tokens[3])));
    }
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        other => return Err(parse_err(1, format!("unsupported symmetry `{other}`"))),
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut triplets = Vec::new();
    let mut read = 0usize;
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line.map_err(io_err)?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some((nrows, ncols, nnz)) = size else {
            if fields.len() != 3 {
                return Err(parse_err(lineno, format!("expected `rows cols nnz`, got `{line}`")));
            }
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| parse_err(lineno, format!("bad size `{s}`: {e}")))
            };
            let dims = (num(fields[0])?, num(fields[1])?, num(fields[2])?);
            if symmetry == Symmetry::Symmetric && dims.0 != dims.1 {
                return Err(parse_err(lineno, "symmetric matrix must be square".into()));
            }
            triplets.reserve(dims.2 * if symmetry == Symmetry::Symmetric { 2 } else { 1 });
            size = Some(dims);
            continue;
        };
        if fields.len() != 3 {
            return Err(parse_err(lineno, format!("expected `row col value`, got `{line}`")));
        }
        if read == nnz {
            return Err(parse_err(lineno, format!("more than the declared {nnz} entries")));
        }
        let index = |s: &str, bound: usize| -> Result<usize> {
            let v = s
                .parse::<usize>()
                .map_err(|e| parse_err(lineno, format!("bad index `{s}`: {e}")))?;
            if v == 0 || v > bound {
                return Err(parse_err(lineno, format!("index {v} outside 1..={bound}")));
            }
            Ok(v - 1)
        };
        let i = index(fields[0], nrows)?;
        let j = index(fields[1], ncols)?;
        let v: f64 = fields[2]
            .parse()
            .map_err(|e| parse_err(lineno, format!("bad value `{}`: {e}", fields[2])))?;
        triplets.push((i, j, v));
        if symmetry == Symmetry::Symmetric && i != j {
            triplets.push((j, i, v));
        }
        read += 1;
    }
    let (nrows, ncols, nnz) = size.ok_or_else(|| parse_err(1, "missing size line".into()))?;
    if read != nnz {
        return Err(parse_err(0, format!("declared {nnz} entries, found {read}")));
    }
    CsrMatrix::from_triplets(nrows, ncols, triplets)
}

pub fn write_matrix_market(a: &CsrMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_matrix_market_as(a, path, Symmetry::General)
}

pub fn write_matrix_market_as(a: &CsrMatrix, path: impl AsRef<Path>, symmetry: Symmetry) -> Result<()> {
    let path: PathBuf = path.as_ref().to_path_buf();
    let io_err = |source| Error::Io {
        path: path.clone(),
        source,
    };
    let file = File::create(&path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    write_matrix_market_to(a, &mut w, symmetry).map_err(io_err)?;
    w.flush().map_err(io_err)
}

/// Values are written with 17 significant digits, enough to round-trip.
pub fn write_matrix_market_to<W: Write>(a: &CsrMatrix, w: &mut W, symmetry: Symmetry) -> std::io::Result<()> {
    let keep = |i: usize, j: usize| symmetry == Symmetry::General || j <= i;
    let count = (0..a.nrows())
        .map(|i| a.row(i).0.iter().filter(|&&j| keep(i, j)).count())
        .sum::<usize>();
    let tag = match symmetry {
        Symmetry::General => "general",
        Symmetry::Symmetric => "symmetric",
    };
    writeln!(w, "%%MatrixMarket matrix coordinate real {tag}")?;
    writeln!(w, "{} {} {}", a.nrows(), a.ncols(), count)?;
    for i in 0..a.nrows() {
        let (cols, vals) = a.row(i);
        for (&j, &v) in cols.iter().zip(vals) {
            if keep(i, j) {
                writeln!(w, "{} {} {:.16e}", i + 1, j + 1, v)?;
            }
        }
    }
    Ok(())
}
