use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{Int, IntMatrix, Solver};

use super::module::FgModule;
use super::morphism::ModMorphism;

/// A presentation change onto the canonical diagonal presentation.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub module: FgModule,
    pub to_new: ModMorphism,
    pub to_old: ModMorphism,
}

/// Rewrites a module in its diagonal presentation together with inverse isomorphisms.
pub fn simplify(m: &FgModule) -> Simplified {
    let diag = m.diagonalized();
    let module = FgModule::from_factors(m.ring(), &diag.factors);
    let to_new = ModMorphism::new_unchecked(m, &module, diag.to_new.clone());
    let to_old = ModMorphism::new_unchecked(&module, m, diag.to_old.clone());
    Simplified { module, to_new, to_old }
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub module: FgModule,
    pub inclusion: ModMorphism,
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub module: FgModule,
    pub projection: ModMorphism,
}

/// Epi-mono factorization `f = mono ∘ epi`.
#[derive(Clone, Debug)]
pub struct Image {
    pub module: FgModule,
    pub epi: ModMorphism,
    pub mono: ModMorphism,
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FgModule,
    pub injections: Vec<ModMorphism>,
    pub projections: Vec<ModMorphism>,
}

#[derive(Clone, Debug)]
pub struct Pushout {
    pub module: FgModule,
    /// From the target of `f`.
    pub left: ModMorphism,
    /// From the target of `g`.
    pub right: ModMorphism,
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub module: FgModule,
    /// To the source of `f`.
    pub left: ModMorphism,
    /// To the source of `g`.
    pub right: ModMorphism,
}

/// A basis of the lattice spanned by the columns of `m`.
pub fn column_basis(m: &IntMatrix) -> IntMatrix {
    let s = Solver::new(m);
    let r = s.rank();
    let d = s.decomposition();
    let mut out = d.u_inv.select_cols(&(0..r).collect::<Vec<_>>());
    for j in 0..r {
        let dj = d.d.get(j, j).clone();
        if !dj.is_one() {
            for i in 0..out.rows() {
                let v = out.get(i, j) * &dj;
                out.set(i, j, v);
            }
        }
    }
    out
}

/// Columns spanning `{x : f(x) = 0}` as a lattice in source coordinates; contains the
/// source relation lattice.
pub fn preimage_lattice(f: &ModMorphism) -> IntMatrix {
    let n = f.source().num_generators();
    let big = f.matrix().hstack(&-&f.target().effective_relations());
    let k = Solver::new(&big).kernel();
    column_basis(&k.block(0, 0, n, k.cols()))
}

/// `{z : K·z ∈ L_A}` as relation columns, for `K` with `A`-coordinates.
fn pulled_back_relations(k: &IntMatrix, a: &FgModule) -> IntMatrix {
    let cols = k.cols();
    let big = k.hstack(&-&a.effective_relations());
    let ker = Solver::new(&big).kernel();
    column_basis(&ker.block(0, 0, cols, ker.cols()))
}

pub fn kernel(f: &ModMorphism) -> Kernel {
    let a = f.source();
    let k0 = preimage_lattice(f);
    let raw = FgModule::new(a.ring(), pulled_back_relations(&k0, a));
    let s = simplify(&raw);
    let inclusion = ModMorphism::new_unchecked(&s.module, a, &k0 * s.to_old.matrix());
    Kernel { module: s.module, inclusion }
}

pub fn cokernel(f: &ModMorphism) -> Cokernel {
    let b = f.target();
    let raw = FgModule::new(b.ring(), b.relations().hstack(f.matrix()));
    let s = simplify(&raw);
    let projection = ModMorphism::new_unchecked(b, &s.module, s.to_new.matrix().clone());
    Cokernel { module: s.module, projection }
}

pub fn image(f: &ModMorphism) -> Image {
    let a = f.source();
    let raw = FgModule::new(a.ring(), preimage_lattice(f));
    let s = simplify(&raw);
    let epi = ModMorphism::new_unchecked(a, &s.module, s.to_new.matrix().clone());
    let mono = ModMorphism::new_unchecked(&s.module, f.target(), f.matrix() * s.to_old.matrix());
    Image { module: s.module, epi, mono }
}

pub fn is_mono(f: &ModMorphism) -> bool {
    let a = f.source();
    let p = preimage_lattice(f);
    a.columns_vanish(&p)
}

pub fn is_epi(f: &ModMorphism) -> bool {
    let b = f.target();
    let s = Solver::new(&f.matrix().hstack(&b.effective_relations()));
    (0..b.num_generators()).all(|j| {
        let mut e = vec![Int::zero(); b.num_generators()];
        e[j] = Int::one();
        s.solve(&e).expect("shape").is_some()
    })
}

pub fn is_iso(f: &ModMorphism) -> bool {
    is_mono(f) && is_epi(f)
}

/// Inverse of an isomorphism.
pub fn inverse(f: &ModMorphism) -> Result<ModMorphism> {
    let g = section_on_generators(f)?;
    let g = ModMorphism::new(f.target(), f.source(), g).map_err(|_| Error::NotMono(format!("{f:?}")))?;
    if !g.after(f).equals(&ModMorphism::identity(f.source())) {
        return Err(Error::NotMono(format!("{f:?}")));
    }
    Ok(g)
}

/// `S` with `F·S ≡ I` modulo the target relations; exists iff `f` is an epimorphism.
pub fn section_on_generators(f: &ModMorphism) -> Result<IntMatrix> {
    let b = f.target();
    let n = f.source().num_generators();
    let s = Solver::new(&f.matrix().hstack(&b.effective_relations()));
    let mut cols = Vec::with_capacity(b.num_generators());
    for j in 0..b.num_generators() {
        let mut e = vec![Int::zero(); b.num_generators()];
        e[j] = Int::one();
        let x = s.solve(&e)?.ok_or_else(|| Error::NotEpi(format!("{f:?}")))?;
        cols.push(x[..n].to_vec());
    }
    Ok(IntMatrix::from_columns(n, &cols))
}

/// Solves `f(x) ≡ c` modulo the target relations for every column `c`, in source coordinates.
pub fn lift_columns(f: &ModMorphism, cols: &IntMatrix) -> Result<IntMatrix> {
    let n = f.source().num_generators();
    let s = Solver::new(&f.matrix().hstack(&f.target().effective_relations()));
    let mut out = Vec::with_capacity(cols.cols());
    for j in 0..cols.cols() {
        let x = s.solve(&cols.column(j))?.ok_or_else(|| Error::NoFactorization("vector outside the image".into()))?;
        out.push(x[..n].to_vec());
    }
    Ok(IntMatrix::from_columns(n, &out))
}

/// `g` with `m ∘ g = f`, for a monomorphism `m`.
pub fn factor_through_mono(m: &ModMorphism, f: &ModMorphism) -> Result<ModMorphism> {
    if m.target() != f.target() {
        return Err(Error::Shape("factor_through_mono: targets differ".into()));
    }
    let z = m.target();
    let ny = m.source().num_generators();
    let s = Solver::new(&m.matrix().hstack(&z.effective_relations()));
    let mut cols = Vec::with_capacity(f.source().num_generators());
    for j in 0..f.source().num_generators() {
        let x = s.solve(&f.matrix().column(j))?.ok_or_else(|| Error::NoFactorization("image not contained in the subobject".into()))?;
        cols.push(x[..ny].to_vec());
    }
    ModMorphism::new(f.source(), m.source(), IntMatrix::from_columns(ny, &cols))
}

/// `g` with `g ∘ e = f`, for an epimorphism `e` whose kernel `f` annihilates.
pub fn factor_through_epi(e: &ModMorphism, f: &ModMorphism) -> Result<ModMorphism> {
    if e.source() != f.source() {
        return Err(Error::Shape("factor_through_epi: sources differ".into()));
    }
    let s = section_on_generators(e)?;
    let g = ModMorphism::new_unchecked(e.target(), f.target(), f.matrix() * &s);
    if !g.after(e).equals(f) {
        return Err(Error::NoFactorization("morphism does not vanish on the kernel".into()));
    }
    ModMorphism::new(e.target(), f.target(), g.matrix().clone())
}

/// `Im f = Ker g` inside the middle object.
pub fn is_exact_at(f: &ModMorphism, g: &ModMorphism) -> bool {
    if f.target() != g.source() {
        return false;
    }
    if !g.after(f).is_zero() {
        return false;
    }
    let b = f.target();
    let k = preimage_lattice(g);
    if k.cols() == 0 {
        return true;
    }
    let s = Solver::new(&f.matrix().hstack(&b.effective_relations()));
    (0..k.cols()).all(|j| s.solve(&k.column(j)).expect("shape").is_some())
}

/// Subobject comparison inside the ambient presentation: `Im f ⊆ Im g`.
pub fn image_contained(f: &ModMorphism, g: &ModMorphism) -> bool {
    if f.target() != g.target() {
        return false;
    }
    let s = Solver::new(&g.matrix().hstack(&g.target().effective_relations()));
    (0..f.matrix().cols()).all(|j| s.solve(&f.matrix().column(j)).expect("shape").is_some())
}

pub fn direct_sum(modules: &[FgModule]) -> Result<DirectSum> {
    let Some(first) = modules.first() else {
        return Err(Error::Shape("direct sum of an empty list needs a ring".into()));
    };
    for m in modules {
        first.same_ring(m)?;
    }
    let rels: Vec<&IntMatrix> = modules.iter().map(|m| m.relations()).collect();
    let module = FgModule::new(first.ring(), IntMatrix::block_diag(&rels));
    let n = module.num_generators();
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for m in modules {
        let k = m.num_generators();
        let mut inj = IntMatrix::zeros(n, k);
        inj.set_block(off, 0, &IntMatrix::identity(k));
        injections.push(ModMorphism::new_unchecked(m, &module, inj.clone()));
        projections.push(ModMorphism::new_unchecked(&module, m, inj.transpose()));
        off += k;
    }
    Ok(DirectSum { module, injections, projections })
}

/// `(f, g): X → A ⊕ B`
pub fn pairing(f: &ModMorphism, g: &ModMorphism, sum: &DirectSum) -> Result<ModMorphism> {
    ModMorphism::new(f.source(), &sum.module, f.matrix().vstack(g.matrix()))
}

/// `[f g]: A ⊕ B → Y`
pub fn copairing(f: &ModMorphism, g: &ModMorphism, sum: &DirectSum) -> Result<ModMorphism> {
    ModMorphism::new(&sum.module, f.target(), f.matrix().hstack(g.matrix()))
}

pub fn pushout(f: &ModMorphism, g: &ModMorphism) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::Shape("pushout: sources differ".into()));
    }
    let sum = direct_sum(&[f.target().clone(), g.target().clone()])?;
    let h = pairing(f, &g.neg(), &sum)?;
    let q = cokernel(&h);
    Ok(Pushout { left: q.projection.after(&sum.injections[0]), right: q.projection.after(&sum.injections[1]), module: q.module })
}

pub fn pullback(f: &ModMorphism, g: &ModMorphism) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::Shape("pullback: targets differ".into()));
    }
    let sum = direct_sum(&[f.source().clone(), g.source().clone()])?;
    let h = copairing(f, &g.neg(), &sum)?;
    let k = kernel(&h);
    Ok(Pullback { left: sum.projections[0].after(&k.inclusion), right: sum.projections[1].after(&k.inclusion), module: k.module })
}

/// Homology of `X →f Y →g Z` at `Y`, as `Ker g / Im f`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub cycles: Kernel,
    /// `f` corestricted to the cycles.
    pub boundary: ModMorphism,
    pub homology: Cokernel,
}

pub fn subquotient(f: &ModMorphism, g: &ModMorphism) -> Result<Subquotient> {
    if !g.after(f).is_zero() {
        return Err(Error::NotExact("composite is not zero".into()));
    }
    let cycles = kernel(g);
    let boundary = factor_through_mono(&cycles.inclusion, f)?;
    let homology = cokernel(&boundary);
    Ok(Subquotient { cycles, boundary, homology })
}

/// A short exact sequence `A ↣ B ↠ C`.
#[derive(Clone, Debug)]
pub struct SesWitness {
    pub left: ModMorphism,
    pub right: ModMorphism,
}

impl SesWitness {
    pub fn new(left: ModMorphism, right: ModMorphism) -> Result<Self> {
        if !is_mono(&left) {
            return Err(Error::NotMono(format!("{left:?}")));
        }
        if !is_epi(&right) {
            return Err(Error::NotEpi(format!("{right:?}")));
        }
        if !is_exact_at(&left, &right) {
            return Err(Error::NotExact("image differs from kernel".into()));
        }
        Ok(Self { left, right })
    }
}
