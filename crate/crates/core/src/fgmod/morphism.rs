use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{Int, IntMatrix};

use super::module::FgModule;

/// Homomorphism given on generators: column `j` is the image of the `j`-th source generator.
#[derive(Clone, PartialEq, Eq)]
pub struct ModMorphism {
    source: FgModule,
    target: FgModule,
    matrix: IntMatrix,
}

impl fmt::Debug for ModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModMorphism({} -> {}, {})", self.source, self.target, self.matrix)
    }
}

impl ModMorphism {
    /// Checked constructor: the source relations must map into the target relation lattice.
    pub fn new(source: &FgModule, target: &FgModule, matrix: IntMatrix) -> Result<Self> {
        source.same_ring(target)?;
        if matrix.shape() != (target.num_generators(), source.num_generators()) {
            return Err(Error::Shape(format!(
                "morphism matrix {:?} for {} -> {} generators",
                matrix.shape(),
                source.num_generators(),
                target.num_generators()
            )));
        }
        let images = &matrix * source.relations();
        if !target.columns_vanish(&images) {
            return Err(Error::NotWellDefined(format!("{matrix} does not respect the source relations")));
        }
        Ok(Self::new_unchecked(source, target, matrix))
    }

    /// Constructor for matrices that are well defined by construction.
    pub(crate) fn new_unchecked(source: &FgModule, target: &FgModule, mut matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.shape(), (target.num_generators(), source.num_generators()));
        target.reduce_rows(&mut matrix);
        Self { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn identity(m: &FgModule) -> Self {
        Self::new_unchecked(m, m, IntMatrix::identity(m.num_generators()))
    }

    pub fn zero(source: &FgModule, target: &FgModule) -> Self {
        Self::new_unchecked(source, target, IntMatrix::zeros(target.num_generators(), source.num_generators()))
    }

    /// Multiplication by a scalar on a module.
    pub fn scalar(m: &FgModule, c: i64) -> Self {
        Self::new_unchecked(m, m, IntMatrix::scalar(m.num_generators(), &Int::from(c)))
    }

    pub fn source(&self) -> &FgModule {
        &self.source
    }

    pub fn target(&self) -> &FgModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ModMorphism) -> Result<ModMorphism> {
        if other.target != self.source {
            return Err(Error::Shape(format!("cannot compose {:?} after {:?}", self, other)));
        }
        Ok(Self::new_unchecked(&other.source, &self.target, &self.matrix * &other.matrix))
    }

    /// `self ∘ other`, panicking on a mismatch of the middle object.
    pub fn after(&self, other: &ModMorphism) -> ModMorphism {
        self.compose(other).expect("composable morphisms")
    }

    fn check_parallel(&self, other: &ModMorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("morphisms are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ModMorphism) -> Result<ModMorphism> {
        self.check_parallel(other)?;
        Ok(Self::new_unchecked(&self.source, &self.target, &self.matrix + &other.matrix))
    }

    pub fn sub(&self, other: &ModMorphism) -> Result<ModMorphism> {
        self.check_parallel(other)?;
        Ok(Self::new_unchecked(&self.source, &self.target, &self.matrix - &other.matrix))
    }

    pub fn neg(&self) -> ModMorphism {
        Self::new_unchecked(&self.source, &self.target, -&self.matrix)
    }

    pub fn scale(&self, c: &Int) -> ModMorphism {
        Self::new_unchecked(&self.source, &self.target, self.matrix.scale(c))
    }

    /// `(-1)^e · self`
    pub fn signed(&self, negate: bool) -> ModMorphism {
        if negate {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Equality of homomorphisms: the difference vanishes in the target.
    pub fn equals(&self, other: &ModMorphism) -> bool {
        self.source == other.source && self.target == other.target && self.target.columns_vanish(&(&self.matrix - &other.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.target.columns_vanish(&self.matrix)
    }

    /// Image of a vector of source coordinates.
    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(v)
    }

    /// Same matrix, reinterpreted between other presentations.
    pub fn with_ends(&self, source: &FgModule, target: &FgModule) -> Result<ModMorphism> {
        ModMorphism::new(source, target, self.matrix.clone())
    }
}
