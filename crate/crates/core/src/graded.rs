//! Monomial bases of graded pieces S_d and dense linear substitutions on them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::field::{Fe, Field};
use crate::linalg::axpy;
use crate::poly::{Monomial, Poly, Ring};

/// Monomials of degree `d` in the chosen variables, in descending monomial order.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub n: usize,
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: u32) -> MonomialBasis {
        MonomialBasis::in_vars(n, d, &(0..n).collect::<Vec<_>>())
    }

    pub fn in_vars(n: usize, d: u32, vars: &[usize]) -> MonomialBasis {
        let mut monomials = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(vars: &[usize], left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            match vars.split_first() {
                None => {
                    if left == 0 {
                        out.push(Monomial(exps.clone()));
                    }
                }
                Some((&v, rest)) => {
                    let hi = if rest.is_empty() { left } else { 0 };
                    for e in (hi..=left).rev() {
                        exps[v] = e;
                        rec(rest, left - e, exps, out);
                    }
                    exps[v] = 0;
                }
            }
        }
        rec(vars, d, &mut exps, &mut monomials);
        monomials.sort_by(|a, b| b.cmp(a));
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialBasis { n, degree: d, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Dense coordinates of a polynomial whose terms all lie in this basis.
    pub fn coords(&self, f: &Poly) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.len()];
        for (m, &c) in f.terms() {
            let i = self.index_of(m).unwrap_or_else(|| panic!("monomial {m:?} outside degree {} basis", self.degree));
            v[i] = c;
        }
        v
    }

    pub fn to_poly(&self, ring: &Arc<Ring>, v: &[Fe]) -> Poly {
        Poly::from_terms(ring, self.monomials.iter().cloned().zip(v.iter().copied()))
    }
}

/// Images of all monomials of degree `d` under the linear substitution
/// `x_i -> sum_j subst[i][j] x_j`, as dense vectors in the same basis.
///
/// Built degree by degree: the image of `m = m' x_j` is `image(m') * image(x_j)`.
pub fn substitution_images(field: &Field, subst: &[Vec<Fe>], bases: &[MonomialBasis]) -> Vec<Vec<Fe>> {
    let n = subst.len();
    let d = bases.len() - 1;
    let mut prev: Vec<Vec<Fe>> = vec![vec![Fe::ONE]];
    for e in 1..=d {
        let (lower, cur) = (&bases[e - 1], &bases[e]);
        // up[i][j]: index of lower[i] * x_j in cur
        let up: Vec<Vec<usize>> = lower
            .monomials
            .iter()
            .map(|m| (0..n).map(|j| cur.index_of(&m.mul(&Monomial::var(n, j))).unwrap()).collect())
            .collect();
        let mut next = Vec::with_capacity(cur.len());
        for m in &cur.monomials {
            let j = m.0.iter().position(|&x| x > 0).unwrap();
            let mut rest = m.clone();
            rest.0[j] -= 1;
            let src = &prev[lower.index_of(&rest).unwrap()];
            let mut img = vec![Fe::ZERO; cur.len()];
            for (i, &c) in src.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, &a) in subst[j].iter().enumerate() {
                    if !a.is_zero() {
                        let slot = &mut img[up[i][k]];
                        *slot = field.add(*slot, field.mul(c, a));
                    }
                }
            }
            next.push(img);
        }
        prev = next;
    }
    prev
}

/// Bases of S_0, ..., S_d.
pub fn bases_up_to(n: usize, d: u32) -> Vec<MonomialBasis> {
    (0..=d).map(|e| MonomialBasis::new(n, e)).collect()
}

/// Dense vector of `f * m` for each monomial `m` of degree `d - deg f` in `vars`.
pub fn multiples_in_degree(f: &Poly, target: &MonomialBasis, vars: &[usize]) -> Vec<Vec<Fe>> {
    let df = f.degree().unwrap_or(0) as u32;
    if df > target.degree {
        return Vec::new();
    }
    let shifts = MonomialBasis::in_vars(target.n, target.degree - df, vars);
    let field = f.field();
    shifts
        .monomials
        .iter()
        .map(|m| {
            let mut v = vec![Fe::ZERO; target.len()];
            for (fm, &c) in f.terms() {
                let i = target.index_of(&fm.mul(m)).expect("product stays in the target basis");
                v[i] = field.add(v[i], c);
            }
            v
        })
        .collect()
}

/// `v - w` componentwise.
pub fn sub_vec(field: &Field, v: &[Fe], w: &[Fe]) -> Vec<Fe> {
    let mut out = v.to_vec();
    axpy(field, &mut out, field.neg(Fe::ONE), w);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn basis_sizes_and_order() {
        for n in 1..=4usize {
            for d in 0..=6u32 {
                let b = MonomialBasis::new(n, d);
                assert_eq!(b.len() as u64, binom(n as u64 + d as u64 - 1, d as u64));
                assert!(b.monomials.windows(2).all(|w| w[0] > w[1]));
            }
        }
        let b = MonomialBasis::new(2, 2);
        assert_eq!(b.monomials[0], Monomial(vec![0, 2]));
        assert_eq!(b.monomials[2], Monomial(vec![2, 0]));
        let sub = MonomialBasis::in_vars(3, 2, &[0, 2]);
        assert_eq!(sub.len(), 3);
    }

    #[test]
    fn substitution_matches_sparse_substitute() {
        let field = Arc::new(Field::gf(3, 2).unwrap());
        let ring = Ring::new(field.clone(), 3);
        let t = field.t();
        let subst =
            vec![vec![Fe::ONE, Fe::ZERO, Fe::ZERO], vec![t, Fe::ONE, Fe::ZERO], vec![field.from_int(2), t, Fe::ONE]];
        let images: Vec<Poly> = subst
            .iter()
            .map(|row| Poly::from_terms(&ring, row.iter().enumerate().map(|(j, &c)| (Monomial::var(3, j), c))))
            .collect();
        let bases = bases_up_to(3, 4);
        let dense = substitution_images(&field, &subst, &bases);
        for (m, img) in bases[4].monomials.iter().zip(&dense) {
            let sparse = Poly::monomial(&ring, m.clone(), Fe::ONE).substitute(&images);
            assert_eq!(bases[4].to_poly(&ring, img), sparse);
        }
    }
}
