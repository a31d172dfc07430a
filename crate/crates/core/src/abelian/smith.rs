//! Smith normal form with unimodular certificates, and the lattice
//! routines built on it (kernels, image membership, subquotients).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::group::FgAbGroup;
use super::matrix::IntMatrix;

/// `u * source * v == s`, with `u` and `v` unimodular and `s` diagonal with a
/// nonnegative divisor chain followed by zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub source: IntMatrix,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }

    /// The full diagonal of `s`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Checks every certificate property from scratch. Used by tests and the
    /// verification corpus; `snf` itself never needs it.
    pub fn verify(&self) -> Result<(), String> {
        let (r, c) = self.source.shape();
        if self.u.shape() != (r, r) || self.v.shape() != (c, c) || self.s.shape() != (r, c) {
            return Err("shape mismatch".into());
        }
        if &(&self.u * &self.source) * &self.v != self.s {
            return Err("U*M*V != S".into());
        }
        if !self.u.is_unimodular() {
            return Err("U is not unimodular".into());
        }
        if !self.v.is_unimodular() {
            return Err("V is not unimodular".into());
        }
        if !self.s.is_diagonal() {
            return Err("S is not diagonal".into());
        }
        let d = self.diagonal();
        if d.iter().any(Signed::is_negative) {
            return Err("negative diagonal entry".into());
        }
        for w in d.windows(2) {
            if w[0].is_zero() && !w[1].is_zero() {
                return Err("nonzero entry after a zero".into());
            }
            if !w[0].is_zero() && !(&w[1] % &w[0]).is_zero() {
                return Err(format!(
                    "divisor chain broken: {} does not divide {}",
                    w[0], w[1]
                ));
            }
        }
        Ok(())
    }
}

/// Position of a minimal-absolute-value nonzero entry in the lower-right
/// block starting at `(t, t)`. Ties break toward the first in row-major order.
fn min_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let a = &s[(i, j)];
            if a.is_zero() {
                continue;
            }
            let a = a.abs();
            if best.as_ref().is_none_or(|(_, b)| &a < b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Smith normal form of `m` with transformation matrices.
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = m.shape();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_pivot(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = s[(t, t)].clone();
            for i in t + 1..rows {
                if !s[(i, t)].is_zero() {
                    let q = -(&s[(i, t)] / &pivot);
                    s.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !s[(t, j)].is_zero() {
                    let q = -(&s[(t, j)] / &pivot);
                    s.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                }
            }

            // Remainders left in row or column t are smaller than the pivot.
            let col_rest = (t + 1..rows)
                .filter(|&i| !s[(i, t)].is_zero())
                .min_by(|&a, &b| s[(a, t)].abs().cmp(&s[(b, t)].abs()));
            let row_rest = (t + 1..cols)
                .filter(|&j| !s[(t, j)].is_zero())
                .min_by(|&a, &b| s[(t, a)].abs().cmp(&s[(t, b)].abs()));
            match (col_rest, row_rest) {
                (None, None) => {}
                (Some(i), Some(j)) => {
                    if s[(i, t)].abs() <= s[(t, j)].abs() {
                        s.swap_rows(t, i);
                        u.swap_rows(t, i);
                    } else {
                        s.swap_cols(t, j);
                        v.swap_cols(t, j);
                    }
                    continue;
                }
                (Some(i), None) => {
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    continue;
                }
                (None, Some(j)) => {
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                    continue;
                }
            }

            // Row and column t are clear; enforce divisibility of the rest.
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&s[(i, j)] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithDecomposition {
        u,
        s,
        v,
        source: m.clone(),
    }
}

/// `Z^rows / im(m)` in canonical form.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    let d = snf(m);
    let rank = d.rank();
    let factors = d.diagonal().into_iter().take(rank).filter(|x| !x.is_one());
    FgAbGroup::from_chain(m.rows() - rank, factors.collect())
}

/// A basis of `ker(m) ⊂ Z^cols`, as the columns of the returned matrix.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let d = snf(m);
    let rank = d.rank();
    let cols: Vec<Vec<BigInt>> = (rank..m.cols()).map(|j| d.v.column(j)).collect();
    IntMatrix::from_columns(m.cols(), &cols)
}

/// The sublattice of `Z^n` spanned by the columns of a matrix.
#[derive(Clone, Debug)]
pub struct Lattice {
    decomposition: SmithDecomposition,
    rank: usize,
}

impl Lattice {
    pub fn spanned_by(generators: &IntMatrix) -> Self {
        let decomposition = snf(generators);
        let rank = decomposition.rank();
        Lattice {
            decomposition,
            rank,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.decomposition.source.rows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coordinates of `x` in the lattice basis `d_i * U^{-1} e_i`, or `None`
    /// if `x` is not in the lattice.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.decomposition.u.mul_vec(x);
        if y[self.rank..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = Vec::with_capacity(self.rank);
        for (i, yi) in y.iter().take(self.rank).enumerate() {
            let d = &self.decomposition.s[(i, i)];
            if !(yi % d).is_zero() {
                return None;
            }
            out.push(yi / d);
        }
        Some(out)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some()
    }
}

/// `span(numerator) / span(denominator)` for column-spanning sets with
/// `span(denominator) ⊆ span(numerator)`. Returns `None` if the containment
/// fails.
pub fn subquotient(numerator: &IntMatrix, denominator: &IntMatrix) -> Option<FgAbGroup> {
    assert_eq!(
        numerator.rows(),
        denominator.rows(),
        "subquotient ambient mismatch"
    );
    let lattice = Lattice::spanned_by(numerator);
    let mut relations = Vec::with_capacity(denominator.cols());
    for j in 0..denominator.cols() {
        relations.push(lattice.coordinates(&denominator.column(j))?);
    }
    Some(cokernel(&IntMatrix::from_columns(
        lattice.rank(),
        &relations,
    )))
}
