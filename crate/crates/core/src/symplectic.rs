//! Permutation groups inside `Sp_2g(F_2)`.
//!
//! `S_d` permutes coordinates of `W = F_2^d`. For odd `d` the even-weight
//! subspace `W_0` carries the nondegenerate form `Σ u_i v_i`; for even `d`
//! the all-ones vector lies in `W_0` and spans the radical, so the form
//! descends to `W_0 / <1>`. Either way the dimension is `2⌊(d-1)/2⌋`.
//!
//! Basis: `b_i = e_1 + e_{i+1}`. For odd `d` the coordinates of `v ∈ W_0` are
//! `(v_2, ..., v_d)`; for even `d` the last basis vector is dropped and the
//! coordinates of `[v]` are `(v_2 + v_d, ..., v_{d-1} + v_d)`. The Gram matrix
//! is all-ones minus the identity in both cases.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{matrix_group_closure, BitMatrix, GF2Module, DEFAULT_MATRIX_CLOSURE_BOUND};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticSpace {
    pub d: usize,
    pub two_g: usize,
    pub basis: String,
    pub gram: BitMatrix,
}

impl SymplecticSpace {
    pub fn new(d: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidParameter(format!("symplectic embedding needs d >= 3, got {d}")));
        }
        if d > 256 {
            return Err(Error::InvalidParameter(format!("degree {d} exceeds 256")));
        }
        let two_g = 2 * ((d - 1) / 2);
        let mut gram = BitMatrix::zeros(two_g, two_g);
        for i in 0..two_g {
            for j in 0..two_g {
                if i != j {
                    gram.set(i, j, true);
                }
            }
        }
        debug_assert!(gram.is_alternating() && gram.rank() == two_g);
        let basis = if d % 2 == 1 {
            format!("e1+e(i+1), i = 1..{}", d - 1)
        } else {
            format!("e1+e(i+1) mod all-ones, i = 1..{}", d - 2)
        };
        Ok(SymplecticSpace { d, two_g, basis, gram })
    }

    pub fn dim(&self) -> usize {
        self.two_g
    }

    /// Coordinates of an even-weight vector (given by its support bits).
    fn coords(&self, v: &[bool]) -> Vec<bool> {
        let d = self.d;
        if d % 2 == 1 {
            v[1..].to_vec()
        } else {
            (1..d - 1).map(|k| v[k] ^ v[d - 1]).collect()
        }
    }

    /// Matrix of `p` acting on column coordinate vectors.
    pub fn embed(&self, p: &Permutation) -> Result<BitMatrix> {
        if p.degree() != self.d {
            return Err(Error::DegreeMismatch { left: p.degree(), right: self.d });
        }
        let mut m = BitMatrix::zeros(self.two_g, self.two_g);
        for i in 0..self.two_g {
            // image of b_i = e_1 + e_{i+1} (0-based points 0 and i+1)
            let mut v = vec![false; self.d];
            v[p.image(0)] ^= true;
            v[p.image(i + 1)] ^= true;
            for (r, bit) in self.coords(&v).into_iter().enumerate() {
                if bit {
                    m.set(r, i, true);
                }
            }
        }
        Ok(m)
    }

    /// Generator images of `g`, checked for faithfulness when the group is small
    /// enough to enumerate.
    pub fn embed_group(&self, g: &PermGroup) -> Result<GF2Module> {
        if g.degree() != self.d {
            return Err(Error::DegreeMismatch { left: g.degree(), right: self.d });
        }
        let gens = g.generators().iter().map(|p| self.embed(p)).collect::<Result<Vec<_>>>()?;
        if let Ok(order) = g.order() {
            let images = matrix_group_closure(&gens, DEFAULT_MATRIX_CLOSURE_BOUND)?;
            if images.len() != order {
                return Err(Error::InvalidParameter(format!(
                    "embedding of {} is not faithful: {} images for order {order}",
                    g.name(),
                    images.len()
                )));
            }
        }
        GF2Module::new(self.two_g, gens)
    }
}

pub fn build_space(d: usize) -> Result<SymplecticSpace> {
    SymplecticSpace::new(d)
}

pub fn embed_permutation(p: &Permutation, space: &SymplecticSpace) -> Result<BitMatrix> {
    space.embed(p)
}

pub fn embed_group(g: &PermGroup, space: &SymplecticSpace) -> Result<GF2Module> {
    space.embed_group(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::GF2Poly;
    use crate::perm::{class_reps_symmetric, BuiltinGroup};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_perm(d: usize, rng: &mut ChaCha8Rng) -> Permutation {
        let mut v: Vec<usize> = (0..d).collect();
        v.shuffle(rng);
        Permutation::from_images(v).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(build_space(9).unwrap().dim(), 8);
        assert_eq!(build_space(20).unwrap().dim(), 18);
        assert_eq!(build_space(21).unwrap().dim(), 20);
        assert!(build_space(2).is_err());
    }

    #[test]
    fn gram_is_alternating_and_nondegenerate() {
        for d in 3..=64 {
            let s = build_space(d).unwrap();
            assert!(s.gram.is_alternating());
            assert_eq!(s.gram.rank(), s.dim(), "d = {d}");
        }
    }

    #[test]
    fn examples() {
        let s = build_space(9).unwrap();
        assert_eq!(s.embed(&Permutation::identity(9)).unwrap(), BitMatrix::identity(8));
        let t = Permutation::from_cycles(9, &[&[1, 2]]).unwrap();
        assert_eq!(s.embed(&t).unwrap().plus_identity().unwrap().nullity(), 7);
        let c = Permutation::from_images((0..9).map(|i| (i + 1) % 9).collect()).unwrap();
        let chi = s.embed(&c).unwrap().charpoly().unwrap();
        let expect = GF2Poly::from_exponents(&(0..=8).collect::<Vec<_>>());
        assert_eq!(chi, expect);
        assert!(chi.eval_at_one());
        assert!(s.embed(&Permutation::identity(8)).is_err());
    }

    #[test]
    fn homomorphism_and_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for d in 5..=24 {
            let s = build_space(d).unwrap();
            for _ in 0..500 {
                let p = random_perm(d, &mut rng);
                let q = random_perm(d, &mut rng);
                let mp = s.embed(&p).unwrap();
                let mq = s.embed(&q).unwrap();
                assert_eq!(s.embed(&(&p * &q)).unwrap(), mp.mul(&mq).unwrap());
                assert!(mp.preserves_form(&s.gram).unwrap());
            }
        }
    }

    #[test]
    fn fixed_space_dimension_for_odd_degree() {
        for d in (3..=12).filter(|d| d % 2 == 1) {
            let s = build_space(d).unwrap();
            for (ct, rep) in class_reps_symmetric(d) {
                let nullity = s.embed(&rep).unwrap().plus_identity().unwrap().nullity();
                assert_eq!(nullity, ct.len() - 1, "d = {d}, class {ct}");
            }
        }
    }

    #[test]
    fn group_embeddings() {
        let s = build_space(9).unwrap();
        let agl = BuiltinGroup::Agl2_3.build().unwrap();
        let m = s.embed_group(&agl).unwrap();
        assert_eq!(m.dim(), 8);
        let images = matrix_group_closure(m.generators(), 1000).unwrap();
        assert_eq!(images.len(), 432);
        for g in m.generators() {
            assert!(g.preserves_form(&s.gram).unwrap());
        }
        let s20 = build_space(20).unwrap();
        let pgl = BuiltinGroup::Pgl2 { q: 19 }.build().unwrap();
        assert_eq!(s20.embed_group(&pgl).unwrap().dim(), 18);
    }
}
