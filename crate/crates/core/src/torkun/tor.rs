use crate::chaincx::{homology, sphere};
use crate::error::{Error, Result};
use crate::fgmod::FgModule;
use crate::thc::tensor_complex;

use super::resolution::{free_resolution, ResolutionPair};

/// `Torₙ(A,B) = Hₙ(T(P_A, P_B))` for given resolutions.
pub fn tor_from(n: usize, pa: &ResolutionPair, pb: &ResolutionPair) -> Result<FgModule> {
    let deg = n as i64;
    if !pa.covers(deg) || !pb.covers(deg) {
        return Err(Error::Precondition(format!("resolutions too short for Tor_{n}")));
    }
    let t = tensor_complex(&pa.resolution, &pb.resolution)?;
    Ok(homology(&t.complex).module(deg))
}

fn resolve_for(n: usize, m: &FgModule) -> Result<ResolutionPair> {
    free_resolution(m, n + 1)
}

pub fn tor(n: usize, a: &FgModule, b: &FgModule) -> Result<FgModule> {
    a.same_ring(b)?;
    tor_from(n, &resolve_for(n, a)?, &resolve_for(n, b)?)
}

/// The three computations `Hₙ(T(P_A,P_B))`, `Hₙ(T(P_A,S⁰(B)))` and `Hₙ(T(S⁰(A),P_B))`.
#[derive(Clone, Debug)]
pub struct TorCheck {
    pub two_sided: FgModule,
    pub left: FgModule,
    pub right: FgModule,
}

impl TorCheck {
    pub fn agree(&self) -> bool {
        self.two_sided.is_isomorphic(&self.left) && self.two_sided.is_isomorphic(&self.right)
    }
}

pub fn tor_cross_check(n: usize, a: &FgModule, b: &FgModule) -> Result<TorCheck> {
    a.same_ring(b)?;
    let (pa, pb) = (resolve_for(n, a)?, resolve_for(n, b)?);
    let deg = n as i64;
    let two_sided = tor_from(n, &pa, &pb)?;
    let left = homology(&tensor_complex(&pa.resolution, &sphere(0, b))?.complex).module(deg);
    let right = homology(&tensor_complex(&sphere(0, a), &pb.resolution)?.complex).module(deg);
    Ok(TorCheck { two_sided, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Int, IntMatrix};
    use crate::fgmod::{tensor, Ring};
    use num_integer::Integer;

    fn zr(d: i64) -> FgModule {
        FgModule::cyclic(Ring::Integers, d)
    }

    #[test]
    fn tor_one_of_cyclic_groups_is_the_gcd() {
        for a in 1..8i64 {
            for b in 1..8i64 {
                let t = tor(1, &zr(a), &zr(b)).unwrap();
                assert!(t.is_isomorphic(&zr(a.gcd(&b))), "{a} {b}");
            }
        }
        assert!(tor(1, &zr(2), &zr(4)).unwrap().is_isomorphic(&zr(2)));
    }

    #[test]
    fn tor_zero_is_the_tensor_product() {
        let a = FgModule::new(Ring::Integers, IntMatrix::from_rows(&[vec![4], vec![6]]));
        let b = zr(10);
        assert!(tor(0, &a, &b).unwrap().is_isomorphic(&tensor(&a, &b).unwrap()));
    }

    #[test]
    fn higher_tor_vanishes_over_the_integers() {
        assert!(tor(2, &zr(2), &zr(2)).unwrap().is_zero_module());
        assert!(tor(3, &zr(6), &zr(4)).unwrap().is_zero_module());
    }

    #[test]
    fn tor_over_prime_powers_is_periodic() {
        let ring = Ring::prime_power(2, 2).unwrap();
        let k = FgModule::cyclic(ring, 2);
        for n in 0..5 {
            let t = tor(n, &k, &k).unwrap();
            assert_eq!(t.canonical_form(), vec![Int::from(2)], "Tor_{n}");
        }
        let free = FgModule::free(ring, 1);
        assert!(tor(3, &k, &free).unwrap().is_zero_module());
    }

    #[test]
    fn cross_checks_agree() {
        let ring = Ring::prime_power(3, 3).unwrap();
        let a = FgModule::from_factors(ring, &[Int::from(3), Int::from(9)]);
        let b = FgModule::from_factors(ring, &[Int::from(9), Int::from(27)]);
        for n in 0..4 {
            assert!(tor_cross_check(n, &a, &b).unwrap().agree());
        }
        assert!(tor_cross_check(1, &zr(12), &zr(18)).unwrap().agree());
    }
}
