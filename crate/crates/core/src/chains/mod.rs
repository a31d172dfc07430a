//! Reduced cellular chain complexes and their (co)homology.
//!
//! A complex stores, per degree, the number of non-basepoint cells and the
//! integer boundary matrix `C_n -> C_{n-1}`. The basepoint 0-cell is never
//! stored, so everything computed here is reduced.

mod io;
pub mod presentation;

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::abelian::{direct_sum, ext, hom, kernel_basis, subquotient, FgAbGroup, IntMatrix};
use presentation::{homology_at, Presentation, PresentedMap};

pub use io::ChainComplexFile;

#[derive(Debug, Error)]
pub enum ChainError {
    #[error("boundary in degree {degree}: expected shape {expected:?}, found {found:?}")]
    ShapeMismatch {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("d^2 != 0 in degree {degree}: entry ({row}, {col}) of the composite is {value}")]
    DSquared {
        degree: usize,
        row: usize,
        col: usize,
        value: BigInt,
    },
    #[error("malformed chain complex file: {0}")]
    Format(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A reduced cellular chain complex.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplex {
    name: String,
    ranks: BTreeMap<usize, usize>,
    boundaries: BTreeMap<usize, IntMatrix>,
}

impl ChainComplex {
    /// Validates and normalizes: zero ranks and zero boundaries are dropped.
    pub fn new(
        name: impl Into<String>,
        ranks: BTreeMap<usize, usize>,
        boundaries: BTreeMap<usize, IntMatrix>,
    ) -> Result<Self, ChainError> {
        let c = ChainComplex {
            name: name.into(),
            ranks: ranks.into_iter().filter(|&(_, r)| r > 0).collect(),
            boundaries,
        };
        c.validate()?;
        Ok(ChainComplex {
            boundaries: c
                .boundaries
                .into_iter()
                .filter(|(_, m)| !m.is_zero())
                .collect(),
            ..c
        })
    }

    /// The complex with no cells (a point).
    pub fn trivial(name: impl Into<String>) -> Self {
        ChainComplex {
            name: name.into(),
            ranks: BTreeMap::new(),
            boundaries: BTreeMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Highest degree with a cell; `0` for the trivial complex.
    pub fn top_degree(&self) -> usize {
        self.ranks.keys().next_back().copied().unwrap_or(0)
    }

    /// Alias for [`top_degree`](Self::top_degree).
    pub fn dim(&self) -> usize {
        self.top_degree()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    /// Degrees that carry at least one cell, ascending.
    pub fn cell_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.ranks.keys().copied()
    }

    pub fn ranks(&self) -> &BTreeMap<usize, usize> {
        &self.ranks
    }

    fn rank_below(&self, n: usize) -> usize {
        n.checked_sub(1).map_or(0, |m| self.rank(m))
    }

    /// `∂_n : C_n -> C_{n-1}`, materialized as zeros when not stored.
    pub fn boundary(&self, n: usize) -> Cow<'_, IntMatrix> {
        match self.boundaries.get(&n) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(IntMatrix::zeros(self.rank_below(n), self.rank(n))),
        }
    }

    /// Checks boundary shapes and `∂_{n-1} ∂_n = 0`.
    pub fn validate(&self) -> Result<(), ChainError> {
        for (&n, m) in &self.boundaries {
            let expected = (self.rank_below(n), self.rank(n));
            if m.shape() != expected {
                return Err(ChainError::ShapeMismatch {
                    degree: n,
                    expected,
                    found: m.shape(),
                });
            }
        }
        for (&n, m) in &self.boundaries {
            if n < 2 {
                continue;
            }
            let Some(below) = self.boundaries.get(&(n - 1)) else {
                continue;
            };
            let composite = below * m;
            for i in 0..composite.rows() {
                for j in 0..composite.cols() {
                    if composite[(i, j)] != BigInt::ZERO {
                        return Err(ChainError::DSquared {
                            degree: n,
                            row: i,
                            col: j,
                            value: composite[(i, j)].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Reduced integral homology in degree `n`: kernel basis of `∂_n` by one
    /// Smith pass, then the quotient by `im ∂_{n+1}` by a second.
    pub fn homology(&self, n: usize) -> FgAbGroup {
        if n > self.top_degree() || self.rank(n) == 0 {
            return FgAbGroup::trivial();
        }
        let cycles = kernel_basis(&self.boundary(n));
        subquotient(&cycles, &self.boundary(n + 1)).expect("validated complex has d^2 = 0")
    }

    /// Homology in every degree `0..=top_degree`.
    pub fn homology_all(&self) -> GradedGroups {
        GradedGroups::from_fn(0, self.top_degree(), |n| self.homology(n))
    }

    /// `H^n(C; g)` through the universal coefficient theorem.
    pub fn cohomology_uct(&self, n: usize, g: &FgAbGroup) -> FgAbGroup {
        let hom_part = hom(&self.homology(n), g);
        let ext_part = match n.checked_sub(1) {
            Some(m) => ext(&self.homology(m), g),
            None => FgAbGroup::trivial(),
        };
        direct_sum([&hom_part, &ext_part])
    }

    /// `H^n(C; g)` from the cochain complex `Hom(C_*, g)` itself.
    ///
    /// Cochains in degree `k` are presented as `g^rank(k)`; the coboundary is
    /// `∂_{k+1}^T` acting coordinate-wise, so it is `∂_{k+1}^T ⊗ I` on
    /// generators.
    pub fn cohomology_direct(&self, n: usize, g: &FgAbGroup) -> FgAbGroup {
        let coeff = Presentation::of_group(g);
        let identity = IntMatrix::identity(coeff.generators());
        let cochains = |k: Option<usize>| coeff.power(k.map_or(0, |k| self.rank(k)));
        let coboundary = |k: Option<usize>| {
            let src = cochains(k);
            let dst = cochains(Some(k.map_or(0, |k| k + 1)));
            let matrix = match k {
                Some(k) => self.boundary(k + 1).transpose().kronecker(&identity),
                None => IntMatrix::zeros(dst.generators(), 0),
            };
            PresentedMap::new(src, dst, matrix).expect("coboundary respects coefficient relations")
        };
        let incoming = coboundary(n.checked_sub(1));
        let outgoing = coboundary(Some(n));
        homology_at(&incoming, &outgoing)
    }

    /// Degree shift by one. Boundaries are carried over unchanged.
    pub fn suspension(&self) -> ChainComplex {
        ChainComplex {
            name: format!("S({})", self.name),
            ranks: self.ranks.iter().map(|(&n, &r)| (n + 1, r)).collect(),
            boundaries: self
                .boundaries
                .iter()
                .map(|(&n, m)| (n + 1, m.clone()))
                .collect(),
        }
    }

    /// Lowest degree with nonzero homology (if any) and the top degree.
    pub fn connectivity_bounds(&self) -> (Option<usize>, usize) {
        let lowest = (0..=self.top_degree()).find(|&n| !self.homology(n).is_trivial());
        (lowest, self.top_degree())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .map(|(&n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// Degreewise direct sum of reduced complexes, i.e. the wedge.
pub fn wedge(complexes: &[ChainComplex]) -> ChainComplex {
    let name = if complexes.is_empty() {
        "pt".to_string()
    } else {
        complexes
            .iter()
            .map(|c| c.name.as_str())
            .collect::<Vec<_>>()
            .join(" v ")
    };
    let top = complexes
        .iter()
        .map(ChainComplex::top_degree)
        .max()
        .unwrap_or(0);
    let mut ranks = BTreeMap::new();
    let mut boundaries = BTreeMap::new();
    for n in 0..=top {
        let r: usize = complexes.iter().map(|c| c.rank(n)).sum();
        if r > 0 {
            ranks.insert(n, r);
        }
        let blocks: Vec<Cow<'_, IntMatrix>> = complexes.iter().map(|c| c.boundary(n)).collect();
        let m = IntMatrix::block_diagonal(blocks.iter().map(|b| b.as_ref()));
        if !m.is_zero() {
            boundaries.insert(n, m);
        }
    }
    ChainComplex {
        name,
        ranks,
        boundaries,
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainComplex")
            .field("name", &self.name)
            .field("ranks", &self.ranks)
            .field("boundaries", &self.boundaries)
            .finish()
    }
}

/// A family of groups indexed by degree over an explicit range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGroups {
    lo: usize,
    hi: usize,
    entries: BTreeMap<usize, FgAbGroup>,
}

impl GradedGroups {
    pub fn from_fn(lo: usize, hi: usize, mut f: impl FnMut(usize) -> FgAbGroup) -> Self {
        let entries = (lo..=hi)
            .map(|n| (n, f(n)))
            .filter(|(_, g)| !g.is_trivial())
            .collect();
        GradedGroups { lo, hi, entries }
    }

    pub fn range(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    /// The group in degree `n`; trivial outside the stored support.
    pub fn get(&self, n: usize) -> FgAbGroup {
        self.entries.get(&n).cloned().unwrap_or_default()
    }

    /// Nonzero entries, ascending by degree.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &FgAbGroup)> {
        self.entries.iter().map(|(&n, g)| (n, g))
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}
