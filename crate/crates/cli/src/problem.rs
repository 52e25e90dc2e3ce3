use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use matchamg::mmio::read_matrix_market;
use matchamg::problems::{gen_anisotropic_2d, gen_poisson_3d_randk, poisson_1d, poisson_2d, AniSpec, RandPermSpec};
use matchamg::CsrMatrix;

use crate::args::Source;
use crate::Failure;

pub struct Problem {
    pub label: String,
    pub a: CsrMatrix,
}

pub fn load(source: &Source, seed: u64) -> Result<Problem, Failure> {
    match (&source.matrix, &source.generator) {
        (Some(path), _) => Ok(Problem {
            label: path.display().to_string(),
            a: read_matrix_market(path)?,
        }),
        (None, Some(spec)) => Ok(Problem {
            label: spec.clone(),
            a: generate(spec, seed)?,
        }),
        (None, None) => Err(Failure::config("one of --matrix or --gen is required")),
    }
}

fn generate(spec: &str, seed: u64) -> Result<CsrMatrix, Failure> {
    let (kind, params) = spec
        .split_once(':')
        .ok_or_else(|| Failure::config(format!("generator spec {spec:?} lacks ':'")))?;
    let fields: Vec<&str> = params.split(',').map(str::trim).collect();
    let want = |n: usize| {
        if fields.len() == n {
            Ok(())
        } else {
            Err(Failure::config(format!(
                "{kind} takes {n} parameters, got {} in {spec:?}",
                fields.len()
            )))
        }
    };
    match kind {
        "ani" => {
            want(4)?;
            let s = AniSpec::new(size(fields[0])?, size(fields[1])?, real(fields[2])?, angle(fields[3])?)?;
            Ok(gen_anisotropic_2d(&s)?)
        }
        "poisson2d" => {
            want(2)?;
            Ok(poisson_2d(positive(fields[0])?, positive(fields[1])?))
        }
        "poisson1d" => {
            want(1)?;
            Ok(poisson_1d(positive(fields[0])?))
        }
        "randk" => {
            want(4)?;
            let s = RandPermSpec {
                nx: size(fields[0])?,
                ny: size(fields[1])?,
                nz: size(fields[2])?,
                sigma: real(fields[3])?,
                seed,
            };
            Ok(gen_poisson_3d_randk(&s)?)
        }
        other => Err(Failure::config(format!("unknown generator {other:?}"))),
    }
}

fn size(s: &str) -> Result<usize, Failure> {
    s.parse()
        .map_err(|_| Failure::config(format!("expected a grid size, got {s:?}")))
}

fn positive(s: &str) -> Result<usize, Failure> {
    match size(s)? {
        0 => Err(Failure::config("grid sizes must be positive")),
        n => Ok(n),
    }
}

fn real(s: &str) -> Result<f64, Failure> {
    s.parse()
        .map_err(|_| Failure::config(format!("expected a number, got {s:?}")))
}

/// A plain number or `pi/K`.
fn angle(s: &str) -> Result<f64, Failure> {
    match s.strip_prefix("pi/") {
        Some(k) => Ok(PI / real(k)?),
        None if s == "pi" => Ok(PI),
        None => real(s),
    }
}

/// Smooth vector: `ones` or a text file of whitespace-separated values.
pub fn smooth_vector(spec: &str, n: usize) -> Result<Vec<f64>, Failure> {
    if spec == "ones" {
        return Ok(vec![1.0; n]);
    }
    let path = Path::new(spec);
    let text = fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    let w = text
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Failure::config(format!("{}: bad value {t:?}", path.display())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if w.len() != n {
        return Err(Failure::config(format!(
            "{}: {} values for a matrix of size {n}",
            path.display(),
            w.len()
        )));
    }
    Ok(w)
}
