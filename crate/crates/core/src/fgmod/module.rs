use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{snf, Int, IntMatrix, Solver};

/// The ground ring: the integers or a prime-power quotient ℤ/pᵏ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    PrimePower { p: u64, k: u32 },
}

impl Ring {
    pub fn prime_power(p: u64, k: u32) -> Result<Self> {
        if k == 0 || !is_prime(p) {
            return Err(Error::BadRing(format!("Z/{p}^{k}")));
        }
        Ok(Ring::PrimePower { p, k })
    }

    /// `ℤ/n` for a prime power `n`.
    pub fn from_modulus(n: u64) -> Result<Self> {
        let Some(p) = (2..=n).find(|d| n.is_multiple_of(*d)) else {
            return Err(Error::BadRing(format!("Z/{n}")));
        };
        let (mut m, mut k) = (n, 0);
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        if m != 1 {
            return Err(Error::BadRing(format!("Z/{n} is not a prime power quotient")));
        }
        Ring::prime_power(p, k)
    }

    /// `pᵏ`, or `None` over ℤ.
    pub fn modulus(&self) -> Option<Int> {
        match *self {
            Ring::Integers => None,
            Ring::PrimePower { p, k } => Some(Pow::pow(Int::from(p), k)),
        }
    }

    pub fn modulus_u64(&self) -> Option<u64> {
        self.modulus().and_then(|m| m.to_u64())
    }

    pub fn is_integers(&self) -> bool {
        matches!(self, Ring::Integers)
    }

    /// Invariant factor representing a free summand: 0 over ℤ, pᵏ otherwise.
    pub fn free_factor(&self) -> Int {
        self.modulus().unwrap_or_else(Int::zero)
    }

    fn ensure_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::PrimePower { .. } => write!(f, "Z/{}", self.modulus().expect("prime power")),
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(Ring::Integers);
        }
        let n = s.strip_prefix("Z/").and_then(|n| n.parse::<u64>().ok()).ok_or_else(|| Error::BadRing(s.to_string()))?;
        Ring::from_modulus(n)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Change of presentation onto the diagonal form.
#[derive(Clone, Debug)]
pub(crate) struct Diagonalized {
    pub factors: Vec<Int>,
    /// Old coordinates to new (rows of `U`).
    pub to_new: IntMatrix,
    /// New generators in old coordinates (columns of `U⁻¹`).
    pub to_old: IntMatrix,
}

struct ModuleData {
    ring: Ring,
    gens: usize,
    relations: IntMatrix,
    lattice: OnceLock<Solver>,
    diagonalized: OnceLock<Diagonalized>,
    row_moduli: OnceLock<Vec<Option<Int>>>,
}

/// Finitely presented module `ℤⁿ / L` over the ring; over ℤ/pᵏ the relations `pᵏ·eᵢ`
/// are implicit and never stored.
#[derive(Clone)]
pub struct FgModule(Arc<ModuleData>);

impl PartialEq for FgModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring && self.0.gens == other.0.gens && self.0.relations == other.0.relations)
    }
}

impl Eq for FgModule {}

impl Hash for FgModule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.ring.hash(state);
        self.0.gens.hash(state);
        self.0.relations.hash(state);
    }
}

impl fmt::Debug for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgModule({} gens over {}, rels {})", self.0.gens, self.0.ring, self.0.relations)
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl FgModule {
    pub fn new(ring: Ring, relations: IntMatrix) -> Self {
        let gens = relations.rows();
        FgModule(Arc::new(ModuleData {
            ring,
            gens,
            relations,
            lattice: OnceLock::new(),
            diagonalized: OnceLock::new(),
            row_moduli: OnceLock::new(),
        }))
    }

    pub fn free(ring: Ring, rank: usize) -> Self {
        Self::new(ring, IntMatrix::zeros(rank, 0))
    }

    pub fn zero(ring: Ring) -> Self {
        Self::free(ring, 0)
    }

    /// `R/(d)`; `d = 0` gives the free module of rank one.
    pub fn cyclic(ring: Ring, d: i64) -> Self {
        if d == 0 {
            Self::free(ring, 1)
        } else {
            Self::new(ring, IntMatrix::from_i64(1, 1, &[d]))
        }
    }

    /// `⊕ R/(dᵢ)`, omitting relation columns for free summands.
    pub fn from_factors(ring: Ring, factors: &[Int]) -> Self {
        let free = ring.free_factor();
        let torsion: Vec<usize> = (0..factors.len()).filter(|&i| factors[i] != free && !factors[i].is_zero()).collect();
        let mut rels = IntMatrix::zeros(factors.len(), torsion.len());
        for (c, &i) in torsion.iter().enumerate() {
            rels.set(i, c, factors[i].clone());
        }
        Self::new(ring, rels)
    }

    pub fn ring(&self) -> Ring {
        self.0.ring
    }

    pub fn num_generators(&self) -> usize {
        self.0.gens
    }

    /// Explicit relations only.
    pub fn relations(&self) -> &IntMatrix {
        &self.0.relations
    }

    /// Explicit relations followed by `pᵏ·I` over ℤ/pᵏ.
    pub fn effective_relations(&self) -> IntMatrix {
        match self.0.ring.modulus() {
            None => self.0.relations.clone(),
            Some(q) => self.0.relations.hstack(&IntMatrix::scalar(self.0.gens, &q)),
        }
    }

    pub(crate) fn lattice(&self) -> &Solver {
        self.0.lattice.get_or_init(|| Solver::new(&self.effective_relations()))
    }

    /// Whether the vector represents zero in the module.
    pub fn is_zero_vector(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.0.gens, "vector length");
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if let Some(q) = self.0.ring.modulus() {
            if v.iter().all(|x| (x % &q).is_zero()) {
                return true;
            }
        }
        self.lattice().solve(v).expect("shape checked").is_some()
    }

    /// Whether every column of `m` represents zero.
    pub fn columns_vanish(&self, m: &IntMatrix) -> bool {
        assert_eq!(m.rows(), self.0.gens, "matrix rows");
        (0..m.cols()).all(|j| self.is_zero_vector(&m.column(j)))
    }

    pub(crate) fn diagonalized(&self) -> &Diagonalized {
        self.0.diagonalized.get_or_init(|| {
            let n = self.0.gens;
            let eff = self.effective_relations();
            let s = snf(&eff);
            let mut diag = s.diagonal();
            diag.resize(n, Int::zero());
            let keep: Vec<usize> = (0..n).filter(|&i| !diag[i].is_one()).collect();
            Diagonalized {
                factors: keep.iter().map(|&i| diag[i].clone()).collect(),
                to_new: s.u.select_rows(&keep),
                to_old: s.u_inv.select_cols(&keep),
            }
        })
    }

    /// Invariant factors `d₁ | d₂ | …` with units removed; a free summand is 0 over ℤ
    /// and pᵏ over ℤ/pᵏ.
    pub fn canonical_form(&self) -> Vec<Int> {
        self.diagonalized().factors.clone()
    }

    pub fn is_zero_module(&self) -> bool {
        self.0.gens == 0 || self.diagonalized().factors.is_empty()
    }

    pub fn is_isomorphic(&self, other: &FgModule) -> bool {
        self.0.ring == other.0.ring && self.canonical_form() == other.canonical_form()
    }

    /// Presentation-identical comparison, as opposed to [`FgModule::is_isomorphic`].
    pub fn is_identical(&self, other: &FgModule) -> bool {
        self == other
    }

    /// Order of the module when finite.
    pub fn order(&self) -> Option<Int> {
        let f = self.canonical_form();
        if f.iter().any(Zero::is_zero) {
            None
        } else {
            Some(f.iter().fold(Int::one(), |a, b| a * b))
        }
    }

    /// Free rank (number of free summands over the ground ring).
    pub fn free_rank(&self) -> usize {
        let free = self.0.ring.free_factor();
        self.canonical_form().iter().filter(|d| **d == free).count()
    }

    /// The module presented diagonally by its canonical form.
    pub fn canonical_module(&self) -> FgModule {
        FgModule::from_factors(self.0.ring, &self.canonical_form())
    }

    /// Human-readable isomorphism class, e.g. `Z/2 + Z^2` or `0`.
    pub fn describe(&self) -> String {
        describe_factors(self.0.ring, &self.canonical_form())
    }

    /// Per generator, a positive integer `a` with `a·eᵢ` a relation, when one is visible.
    pub(crate) fn row_moduli(&self) -> &[Option<Int>] {
        self.0.row_moduli.get_or_init(|| {
            let n = self.0.gens;
            let mut out: Vec<Option<Int>> = vec![self.0.ring.modulus(); n];
            let r = &self.0.relations;
            for c in 0..r.cols() {
                let nz: Vec<usize> = (0..n).filter(|&i| !r.get(i, c).is_zero()).collect();
                if let [i] = nz[..] {
                    let a = r.get(i, c).abs();
                    out[i] = Some(match &out[i] {
                        Some(b) => a.gcd(b),
                        None => a,
                    });
                }
            }
            out
        })
    }

    /// Reduces entries of a vector of this module's coordinates by visible row moduli.
    pub(crate) fn reduce_rows(&self, m: &mut IntMatrix) {
        let moduli = self.row_moduli();
        for (i, q) in moduli.iter().enumerate() {
            if let Some(q) = q {
                if q.is_one() {
                    for j in 0..m.cols() {
                        m.set(i, j, Int::zero());
                    }
                } else {
                    for j in 0..m.cols() {
                        let x = m.get(i, j);
                        if x.is_negative() || x >= q {
                            let r = x.mod_floor(q);
                            m.set(i, j, r);
                        }
                    }
                }
            }
        }
    }

    pub(crate) fn same_ring(&self, other: &FgModule) -> Result<()> {
        self.0.ring.ensure_same(&other.0.ring)
    }
}

pub fn describe_factors(ring: Ring, factors: &[Int]) -> String {
    if factors.is_empty() {
        return "0".to_string();
    }
    let free = ring.free_factor();
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let d = &factors[i];
        let mut j = i;
        while j < factors.len() && &factors[j] == d {
            j += 1;
        }
        let base = if *d == free && ring.is_integers() { "Z".to_string() } else { format!("Z/{d}") };
        parts.push(if j - i > 1 { format!("{base}^{}", j - i) } else { base });
        i = j;
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn ring_parsing() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!("Z/8".parse::<Ring>().unwrap(), Ring::PrimePower { p: 2, k: 3 });
        assert!("Z/6".parse::<Ring>().is_err());
        assert!("Z/1".parse::<Ring>().is_err());
        assert_eq!(Ring::from_modulus(9).unwrap().to_string(), "Z/9");
    }

    #[test]
    fn canonical_forms() {
        let z = Ring::Integers;
        // ℤ/2 ⊕ ℤ/3 ≅ ℤ/6 by the Chinese remainder theorem
        let m = FgModule::new(z, IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(m.canonical_form(), iv(&[6]));
        assert_eq!(FgModule::free(z, 2).canonical_form(), iv(&[0, 0]));
        assert_eq!(FgModule::new(z, IntMatrix::from_rows(&[vec![1]])).canonical_form(), iv(&[]));
        assert!(FgModule::zero(z).is_isomorphic(&FgModule::new(z, IntMatrix::from_rows(&[vec![1]]))));
    }

    #[test]
    fn prime_power_forms() {
        let r = Ring::from_modulus(4).unwrap();
        assert_eq!(FgModule::free(r, 1).canonical_form(), iv(&[4]));
        assert_eq!(FgModule::cyclic(r, 2).canonical_form(), iv(&[2]));
        assert_eq!(FgModule::cyclic(r, 6).canonical_form(), iv(&[2]));
        assert_eq!(FgModule::cyclic(r, 3).canonical_form(), iv(&[]));
        assert_eq!(FgModule::free(r, 2).describe(), "Z/4^2");
        assert_eq!(FgModule::free(r, 1).free_rank(), 1);
    }

    #[test]
    fn zero_vectors() {
        let m = FgModule::new(Ring::Integers, IntMatrix::from_rows(&[vec![2, 0], vec![0, 0]]));
        assert!(m.is_zero_vector(&iv(&[4, 0])));
        assert!(!m.is_zero_vector(&iv(&[1, 0])));
        assert!(!m.is_zero_vector(&iv(&[0, 4])));
        assert_eq!(m.describe(), "Z/2 + Z");
    }
}
