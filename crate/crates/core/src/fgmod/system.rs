use crate::error::Result;
use crate::exactlin::{Int, IntMatrix};

use super::hom::{preimage_element, HomModule};
use super::module::FgModule;
use super::morphism::ModMorphism;
use super::ops::direct_sum;

/// A linear system whose unknowns and equations live in Hom modules: unknown `k` ranges
/// over `unknowns[k]`, equation `l` over `equations[l]`, and the left-hand side is linear
/// in the unknowns.
pub struct HomSystem {
    unknowns: Vec<HomModule>,
    equations: Vec<HomModule>,
    columns: Vec<Vec<Int>>,
    target: FgModule,
    source: FgModule,
}

impl HomSystem {
    /// `lhs(k, b)` lists the contributions `(l, morphism)` of the basis morphism `b` of
    /// unknown `k` to equation `l`.
    pub fn new<F>(unknowns: Vec<HomModule>, equations: Vec<HomModule>, lhs: F) -> Result<Self>
    where
        F: Fn(usize, &ModMorphism) -> Result<Vec<(usize, ModMorphism)>>,
    {
        let ring = unknowns.first().or(equations.first()).map(|h| h.module.ring()).unwrap_or(super::module::Ring::Integers);
        let offsets: Vec<usize> = equations
            .iter()
            .scan(0, |acc, h| {
                let o = *acc;
                *acc += h.module.num_generators();
                Some(o)
            })
            .collect();
        let total: usize = equations.iter().map(|h| h.module.num_generators()).sum();
        let mut columns = Vec::new();
        for (k, hk) in unknowns.iter().enumerate() {
            for b in hk.basis() {
                let mut col = vec![Int::from(0); total];
                for (l, m) in lhs(k, &b)? {
                    for (i, c) in equations[l].coords(&m)?.into_iter().enumerate() {
                        col[offsets[l] + i] += c;
                    }
                }
                columns.push(col);
            }
        }
        let target = sum_module(ring, equations.iter().map(|h| h.module.clone()).collect());
        let source = sum_module(ring, unknowns.iter().map(|h| h.module.clone()).collect());
        Ok(Self { unknowns, equations, columns, target, source })
    }

    /// The left-hand side as a module map between the sums of unknown and equation modules.
    pub fn as_morphism(&self) -> ModMorphism {
        ModMorphism::new_unchecked(&self.source, &self.target, IntMatrix::from_columns(self.target.num_generators(), &self.columns))
    }

    /// One solution of `lhs(x) = rhs`, returned as morphisms per unknown.
    pub fn solve(&self, rhs: &[ModMorphism]) -> Result<Option<Vec<ModMorphism>>> {
        let mut y = Vec::with_capacity(self.target.num_generators());
        for (h, m) in self.equations.iter().zip(rhs) {
            y.extend(h.coords(m)?);
        }
        let Some(x) = preimage_element(&self.as_morphism(), &y)? else {
            return Ok(None);
        };
        let mut out = Vec::new();
        let mut off = 0;
        for h in &self.unknowns {
            let n = h.module.num_generators();
            out.push(h.to_morphism(&x[off..off + n]));
            off += n;
        }
        Ok(Some(out))
    }
}

fn sum_module(ring: super::module::Ring, modules: Vec<FgModule>) -> FgModule {
    if modules.is_empty() {
        FgModule::zero(ring)
    } else {
        direct_sum(&modules).expect("same ring").module
    }
}
