//! Finitely presented abelian groups and maps between them, used for
//! cohomology with torsion coefficients computed directly on cochains.

use thiserror::Error;

use crate::abelian::{cokernel, kernel_basis, subquotient, FgAbGroup, IntMatrix, Lattice};

/// `Z^generators / im(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    relations: IntMatrix,
}

impl Presentation {
    pub fn new(relations: IntMatrix) -> Self {
        Presentation { relations }
    }

    /// The canonical presentation of `g` on its cyclic generators.
    pub fn of_group(g: &FgAbGroup) -> Self {
        Presentation::new(g.relation_matrix())
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// `copies`-fold direct sum of this presentation.
    pub fn power(&self, copies: usize) -> Self {
        Presentation::new(IntMatrix::identity(copies).kronecker(&self.relations))
    }

    pub fn group(&self) -> FgAbGroup {
        cokernel(&self.relations)
    }
}

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("map matrix is {found:?}, expected {expected:?}")]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("relation {0} of the source is not carried into the target relations")]
    NotWellDefined(usize),
}

/// A homomorphism given on generators. Construction checks that relations
/// of the source land in the relation lattice of the target.
#[derive(Clone, Debug)]
pub struct PresentedMap {
    source: Presentation,
    target: Presentation,
    matrix: IntMatrix,
}

impl PresentedMap {
    pub fn new(
        source: Presentation,
        target: Presentation,
        matrix: IntMatrix,
    ) -> Result<Self, PresentationError> {
        let expected = (target.generators(), source.generators());
        if matrix.shape() != expected {
            return Err(PresentationError::Shape {
                expected,
                found: matrix.shape(),
            });
        }
        let images = &matrix * source.relations();
        let lattice = Lattice::spanned_by(target.relations());
        for j in 0..images.cols() {
            if !lattice.contains(&images.column(j)) {
                return Err(PresentationError::NotWellDefined(j));
            }
        }
        Ok(PresentedMap {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Generators (in `Z^source.generators()`) spanning the preimage of the
    /// target relations, i.e. the lift of the kernel.
    pub fn kernel_lift(&self) -> IntMatrix {
        let n = self.source.generators();
        let stacked = self.matrix.hstack(self.target.relations());
        let k = kernel_basis(&stacked);
        let cols: Vec<_> = (0..k.cols()).map(|j| k.column(j)[..n].to_vec()).collect();
        IntMatrix::from_columns(n, &cols)
    }
}

/// Homology `ker(outgoing) / im(incoming)` at the middle of
/// `X --incoming--> Y --outgoing--> Z`.
///
/// Panics if the two maps do not share the middle presentation or if they do
/// not compose to zero modulo relations.
pub fn homology_at(incoming: &PresentedMap, outgoing: &PresentedMap) -> FgAbGroup {
    assert_eq!(
        incoming.target(),
        outgoing.source(),
        "maps do not share the middle group"
    );
    let kernel = outgoing.kernel_lift();
    let boundaries = incoming.matrix().hstack(outgoing.source().relations());
    subquotient(&kernel, &boundaries).expect("composite of presented maps is not zero")
}
