//! Programmatic builders for the worked examples, shared by unit tests.

use std::sync::Arc;

use crate::field::{Fe, Field};
use crate::group::{Group, GroupElement, DEFAULT_ORDER_CAP};
use crate::poly::Ring;

/// Element moving `x_i -> x_i + sum c_j x_j` for each `(i, [(j, c)])`.
pub fn element(ring: &Arc<Ring>, moves: &[(usize, &[(usize, Fe)])]) -> GroupElement {
    let field = ring.field();
    let mut rows = GroupElement::identity(ring).rows();
    for &(i, terms) in moves {
        for &(j, c) in terms {
            rows[i][j] = field.add(rows[i][j], c);
        }
    }
    GroupElement::from_rows(ring, &rows).unwrap()
}

pub struct ShankWehlau {
    pub ring: Arc<Ring>,
    pub tau: GroupElement,
    pub sigma: GroupElement,
}

impl ShankWehlau {
    pub fn group(&self) -> Group {
        Group::enumerate(&self.ring, vec![self.tau.clone(), self.sigma.clone()], DEFAULT_ORDER_CAP).unwrap()
    }

    pub fn gprime(&self) -> Group {
        Group::enumerate(&self.ring, vec![self.tau.clone()], DEFAULT_ORDER_CAP).unwrap()
    }
}

pub fn shank_wehlau() -> ShankWehlau {
    let field = Arc::new(Field::gf(2, 1).unwrap());
    let ring = Ring::new(field, 4);
    let one = Fe::ONE;
    let tau = element(&ring, &[(1, &[(0, one)])]);
    let sigma = element(&ring, &[(3, &[(2, one)])]);
    ShankWehlau { ring, tau, sigma }
}

pub struct Stong {
    pub ring: Arc<Ring>,
    pub omega: Fe,
    pub mu: Fe,
    pub rho: GroupElement,
    pub tau: GroupElement,
    pub sigma: GroupElement,
}

impl Stong {
    pub fn group(&self) -> Group {
        Group::enumerate(&self.ring, vec![self.rho.clone(), self.tau.clone(), self.sigma.clone()], DEFAULT_ORDER_CAP)
            .unwrap()
    }
}

pub fn stong(p: u32) -> Stong {
    let field = Arc::new(Field::gf(p, 3).unwrap());
    let ring = Ring::with_names(field.clone(), vec!["x".into(), "y".into(), "z".into()]);
    let (omega, mu) = (field.t(), field.pow(field.t(), 2));
    let rho = element(&ring, &[(1, &[(0, Fe::ONE)])]);
    let tau = element(&ring, &[(2, &[(0, Fe::ONE)])]);
    let sigma = element(&ring, &[(1, &[(0, omega)]), (2, &[(0, mu)])]);
    Stong { ring, omega, mu, rho, tau, sigma }
}

pub struct MainExample {
    pub ring: Arc<Ring>,
    pub alpha: Fe,
    pub beta: Fe,
    pub tau1: GroupElement,
    pub tau2: GroupElement,
    pub tau3: GroupElement,
    pub sigma: GroupElement,
}

impl MainExample {
    pub fn gprime(&self) -> Group {
        Group::enumerate(&self.ring, vec![self.tau1.clone(), self.tau2.clone(), self.tau3.clone()], DEFAULT_ORDER_CAP)
            .unwrap()
    }

    pub fn group(&self) -> Group {
        Group::enumerate(
            &self.ring,
            vec![self.tau1.clone(), self.tau2.clone(), self.tau3.clone(), self.sigma.clone()],
            DEFAULT_ORDER_CAP,
        )
        .unwrap()
    }
}

/// Over GF(p^6): α generates GF(p^2) and β generates GF(p^3).
pub fn main_example(p: u32) -> MainExample {
    let field = Arc::new(Field::gf(p, 6).unwrap());
    let ring = Ring::with_names(field.clone(), vec!["x1".into(), "x2".into(), "x3".into(), "y".into()]);
    let q = field.size() as u64;
    let t = field.t();
    let alpha = field.pow(t, (q - 1) / (p as u64 * p as u64 - 1));
    let beta = field.pow(t, (q - 1) / ((p as u64).pow(3) - 1));
    let one = Fe::ONE;
    let tau1 = element(&ring, &[(1, &[(0, one)]), (3, &[(0, one)])]);
    let tau2 = element(&ring, &[(1, &[(0, alpha)]), (3, &[(0, one)])]);
    let tau3 = element(&ring, &[(3, &[(0, beta)])]);
    let sigma = element(&ring, &[(3, &[(2, one)])]);
    MainExample { ring, alpha, beta, tau1, tau2, tau3, sigma }
}
