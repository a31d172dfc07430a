//! Standard complexes: spheres, Moore spaces, real projective spaces, and
//! complexes read from files.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::abelian::{FgAbGroup, GroupError, IntMatrix};
use crate::chains::{ChainComplex, ChainError};

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("invalid recipe {recipe:?}: {reason}")]
    Recipe { recipe: String, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// How to build a complex. CLI syntax: `sphere:N`, `moore:GROUP:M`, `rp:N`,
/// `file:PATH`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceRecipe {
    Sphere(usize),
    Moore(FgAbGroup, usize),
    Projective(usize),
    File(PathBuf),
}

impl SpaceRecipe {
    pub fn build(&self) -> Result<ChainComplex, SpaceError> {
        let bad = |reason: &str| SpaceError::Recipe {
            recipe: self.to_string(),
            reason: reason.into(),
        };
        match self {
            SpaceRecipe::Sphere(0) => Err(bad("sphere dimension must be >= 1")),
            SpaceRecipe::Sphere(n) => Ok(sphere(*n)),
            SpaceRecipe::Moore(_, 0) => Err(bad("Moore space degree must be >= 1")),
            SpaceRecipe::Moore(g, m) => Ok(moore(g, *m)),
            SpaceRecipe::Projective(0) => Err(bad("projective dimension must be >= 1")),
            SpaceRecipe::Projective(n) => Ok(projective(*n)),
            SpaceRecipe::File(path) => Ok(ChainComplex::read_file(path)?),
        }
    }
}

impl fmt::Display for SpaceRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceRecipe::Sphere(n) => write!(f, "sphere:{n}"),
            SpaceRecipe::Moore(g, m) => write!(f, "moore:{}:{m}", g.to_string().replace(' ', "")),
            SpaceRecipe::Projective(n) => write!(f, "rp:{n}"),
            SpaceRecipe::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for SpaceRecipe {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, SpaceError> {
        let bad = |reason: &str| SpaceError::Recipe {
            recipe: s.to_string(),
            reason: reason.into(),
        };
        let degree = |t: &str| -> Result<usize, SpaceError> {
            let t = t.trim();
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(&format!("{t:?} is not a nonnegative integer")));
            }
            t.parse().map_err(|_| bad("degree out of range"))
        };
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| bad("expected KIND:PARAMETERS"))?;
        match kind {
            "sphere" => Ok(SpaceRecipe::Sphere(degree(rest)?)),
            "rp" => Ok(SpaceRecipe::Projective(degree(rest)?)),
            "moore" => {
                let (group, m) = rest
                    .rsplit_once(':')
                    .ok_or_else(|| bad("expected moore:GROUP:M"))?;
                Ok(SpaceRecipe::Moore(group.parse()?, degree(m)?))
            }
            "file" if !rest.is_empty() => Ok(SpaceRecipe::File(PathBuf::from(rest))),
            "file" => Err(bad("missing path")),
            other => Err(bad(&format!("unknown kind {other:?}"))),
        }
    }
}

/// One cell in degree `n`. `n = 0` gives the two-point space `S^0`, whose
/// reduced complex has a single 0-cell.
pub fn sphere(n: usize) -> ChainComplex {
    ChainComplex::new(format!("S^{n}"), BTreeMap::from([(n, 1)]), BTreeMap::new())
        .expect("sphere complex is valid")
}

/// Minimal Moore space `M(g, m)`: one `m`-cell per free summand, and per
/// torsion factor `d` an `m`-cell and an `(m+1)`-cell attached with degree `d`.
pub fn moore(g: &FgAbGroup, m: usize) -> ChainComplex {
    let free = g.free_rank();
    let torsion = g.invariant_factors();
    let mut ranks = BTreeMap::new();
    ranks.insert(m, free + torsion.len());
    ranks.insert(m + 1, torsion.len());
    let mut boundary = IntMatrix::zeros(free + torsion.len(), torsion.len());
    for (k, d) in torsion.iter().enumerate() {
        boundary[(free + k, k)] = d.clone();
    }
    let name = format!("M({},{m})", g.to_string().replace(' ', ""));
    ChainComplex::new(name, ranks, BTreeMap::from([(m + 1, boundary)]))
        .expect("Moore complex is valid")
}

/// Real projective space `RP^n` with one cell in each degree `1..=n` and
/// `∂_k = 1 + (-1)^k`.
pub fn projective(n: usize) -> ChainComplex {
    let ranks = (1..=n).map(|k| (k, 1)).collect();
    let boundaries = (2..=n)
        .filter(|k| k % 2 == 0)
        .map(|k| (k, IntMatrix::from_rows(&[[2]])))
        .collect();
    ChainComplex::new(format!("RP^{n}"), ranks, boundaries).expect("projective complex is valid")
}

/// No cells in degrees 0 and 1. A syntactic stand-in for "is the suspension
/// of a path-connected complex"; reports label it a structural assumption.
pub fn is_suspension_shaped(c: &ChainComplex) -> bool {
    c.rank(0) == 0 && c.rank(1) == 0
}
