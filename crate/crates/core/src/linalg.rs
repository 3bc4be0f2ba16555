//! Dense Gaussian elimination over a [`Field`].
//!
//! Column 0 is the most significant column; reduced row echelon forms therefore
//! have their pivots at the leading monomial when columns are indexed by
//! monomials in descending order.

use crate::field::{Fe, Field};

/// A matrix in reduced row echelon form, rows ordered by pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub ncols: usize,
    pub rows: Vec<Vec<Fe>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn empty(ncols: usize) -> Echelon {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot entry of `v`; the result is zero iff `v` is in the row space.
    pub fn reduce(&self, field: &Field, v: &[Fe]) -> Vec<Fe> {
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if !c.is_zero() {
                axpy(field, &mut v, field.neg(c), row);
            }
        }
        v
    }

    pub fn contains(&self, field: &Field, v: &[Fe]) -> bool {
        self.reduce(field, v).iter().all(|c| c.is_zero())
    }

    /// Adds `v` to the row space, keeping the form reduced. Returns false when `v` was dependent.
    pub fn insert(&mut self, field: &Field, v: &[Fe]) -> bool {
        let mut v = self.reduce(field, v);
        let Some(pc) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = field.inv(v[pc]).unwrap();
        for c in v.iter_mut() {
            *c = field.mul(*c, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if !c.is_zero() {
                axpy(field, row, field.neg(c), &v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }
}

/// `y += a * x`.
#[inline]
pub fn axpy(field: &Field, y: &mut [Fe], a: Fe, x: &[Fe]) {
    if a.is_zero() {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = field.add(*yi, field.mul(a, xi));
        }
    }
}

/// Reduced row echelon form of the given rows.
pub fn rref(field: &Field, mut rows: Vec<Vec<Fe>>, ncols: usize) -> Echelon {
    let mut rank = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = field.inv(rows[rank][c]).unwrap();
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank {
                let f = row[c];
                if !f.is_zero() {
                    axpy(field, row, field.neg(f), &pivot_row);
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    Echelon { ncols, rows, pivots }
}

pub fn rank(field: &Field, rows: Vec<Vec<Fe>>, ncols: usize) -> usize {
    rref(field, rows, ncols).rank()
}

/// Canonical basis of `{v : M v = 0}`, returned in reduced row echelon form.
pub fn kernel(field: &Field, rows: Vec<Vec<Fe>>, ncols: usize) -> Echelon {
    let e = rref(field, rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &pc in &e.pivots {
        is_pivot[pc] = true;
    }
    let basis: Vec<Vec<Fe>> = (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Fe::ZERO; ncols];
            v[f] = Fe::ONE;
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                v[pc] = field.neg(row[f]);
            }
            v
        })
        .collect();
    rref(field, basis, ncols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_small_system() {
        let f = Field::gf(3, 1).unwrap();
        let e = |v: i64| f.from_int(v);
        // x + y + z = 0, y - z = 0 over GF(3): kernel spanned by (1, 1, 1)
        let rows = vec![vec![e(1), e(1), e(1)], vec![e(0), e(1), e(-1)]];
        let k = kernel(&f, rows.clone(), 3);
        assert_eq!(k.rank(), 1);
        assert_eq!(k.rows[0], vec![e(1), e(1), e(1)]);
        for row in &rows {
            let dot = row.iter().zip(&k.rows[0]).fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn insert_keeps_reduced_form() {
        let f = Field::gf(2, 2).unwrap();
        let t = f.t();
        let mut ech = Echelon::empty(3);
        assert!(ech.insert(&f, &[Fe::ZERO, Fe::ONE, t]));
        assert!(ech.insert(&f, &[t, Fe::ONE, Fe::ZERO]));
        assert!(!ech.insert(&f, &[t, Fe::ZERO, t]));
        assert_eq!(ech.pivots, vec![0, 1]);
        let full = rref(&f, vec![vec![Fe::ZERO, Fe::ONE, t], vec![t, Fe::ONE, Fe::ZERO]], 3);
        assert_eq!(ech.rows, full.rows);
    }
}
