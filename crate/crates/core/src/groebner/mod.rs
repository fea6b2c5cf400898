//! Ideals: normal forms, reduced Gröbner bases, membership, equality,
//! dimension and codimension.

pub(crate) mod engine;

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

pub use engine::{Criteria, PairStats};

use crate::error::{AlgebraError, Result};
use crate::freemod::element::{ModuleElement, ModuleOrder};
use crate::freemod::PolyMatrix;
use crate::polyring::{same_ring, Monomial, MonomialOrder, Polynomial, Ring};

/// Ideal given by generators. The zero ideal has no generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
}

impl Ideal {
    /// Zero generators are dropped. The order defaults to the ring's.
    pub fn new(ring: &Arc<Ring>, generators: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if !same_ring(g.ring(), ring) {
                return Err(AlgebraError::RingMismatch);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: gens,
            order: ring.order().clone(),
        })
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner_basis(&self) -> GroebnerBasis {
        buchberger(self)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        ideal_membership(p, self).member
    }

    pub fn is_unit(&self) -> bool {
        let gb = buchberger(self);
        gb.elements.len() == 1 && gb.elements[0].is_constant()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

/// Reduced Gröbner basis with two-way transformation matrices:
/// `elements = generators * to_basis` and `generators = elements * from_basis`,
/// reading the generator and element lists as row vectors.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub elements: Vec<Polynomial>,
    pub order: MonomialOrder,
    pub to_basis: PolyMatrix,
    pub from_basis: PolyMatrix,
    pub stats: PairStats,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|p| p.leading_term(&self.order).expect("nonzero").0)
            .collect()
    }
}

fn ideal_order(order: &MonomialOrder) -> ModuleOrder {
    ModuleOrder::pot(order.clone())
}

fn as_elements(polys: &[Polynomial], ord: &ModuleOrder) -> Vec<ModuleElement> {
    polys
        .iter()
        .map(|p| ModuleElement::from_column(std::slice::from_ref(p), ord))
        .collect()
}

fn as_poly(ring: &Arc<Ring>, e: &ModuleElement) -> Polynomial {
    e.to_column(ring, 1).pop().expect("rank one")
}

/// Divides `p` by `divisors` under `order`: `p = sum q_i g_i + r` with no
/// term of `r` divisible by a leading monomial of the divisors.
pub fn normal_form(
    p: &Polynomial,
    divisors: &[Polynomial],
    order: &MonomialOrder,
) -> Result<(Polynomial, Vec<Polynomial>)> {
    if divisors.iter().any(|g| !same_ring(g.ring(), p.ring())) {
        return Err(AlgebraError::RingMismatch);
    }
    let ord = ideal_order(order);
    let basis = as_elements(divisors, &ord);
    let f = ModuleElement::from_column(std::slice::from_ref(p), &ord);
    let div = engine::divide(&f, &basis, &ord);
    Ok((as_poly(p.ring(), &div.remainder), div.quotient_polys(p.ring())))
}

pub fn buchberger(ideal: &Ideal) -> GroebnerBasis {
    buchberger_with(ideal, Criteria::default())
}

pub fn buchberger_with(ideal: &Ideal, criteria: Criteria) -> GroebnerBasis {
    let ring = &ideal.ring;
    let ord = ideal_order(&ideal.order);
    let gens = as_elements(&ideal.generators, &ord);
    let tb = engine::tracked_groebner(&gens, ring, &ord, criteria);
    let elements: Vec<Polynomial> = tb.elements.iter().map(|e| as_poly(ring, e)).collect();
    let m = ideal.generators.len();
    let k = elements.len();

    let mut to_basis = PolyMatrix::zeros(ring, m, k);
    for (l, rep) in tb.reps.iter().enumerate() {
        for (i, c) in rep.iter().enumerate() {
            to_basis.set(i, l, c.clone());
        }
    }
    let mut from_basis = PolyMatrix::zeros(ring, k, m);
    for (j, g) in gens.iter().enumerate() {
        let div = engine::divide(g, &tb.elements, &ord);
        debug_assert!(div.remainder.is_zero());
        for (l, q) in div.quotient_polys(ring).into_iter().enumerate() {
            from_basis.set(l, j, q);
        }
    }
    GroebnerBasis {
        elements,
        order: ideal.order.clone(),
        to_basis,
        from_basis,
        stats: tb.stats,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// `p = sum certificate_i * generator_i` when `member`.
    pub certificate: Option<Vec<Polynomial>>,
}

pub fn ideal_membership(p: &Polynomial, ideal: &Ideal) -> Membership {
    let gb = buchberger(ideal);
    membership_in(p, ideal, &gb)
}

pub(crate) fn membership_in(p: &Polynomial, ideal: &Ideal, gb: &GroebnerBasis) -> Membership {
    let (r, q) = normal_form(p, &gb.elements, &gb.order).expect("same ring");
    if !r.is_zero() {
        return Membership {
            member: false,
            certificate: None,
        };
    }
    // p = elements . q = generators . (to_basis . q)
    let certificate = (0..ideal.generators.len())
        .map(|i| {
            q.iter().enumerate().fold(Polynomial::zero(&ideal.ring), |acc, (l, ql)| {
                &acc + &(gb.to_basis.get(i, l) * ql)
            })
        })
        .collect();
    Membership {
        member: true,
        certificate: Some(certificate),
    }
}

/// Equality as ideals: the reduced bases under a common order coincide.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    if a.ring.vars() != b.ring.vars() {
        return Err(AlgebraError::RingMismatch);
    }
    let b = if same_ring(&a.ring, &b.ring) {
        b.clone()
    } else {
        let gens = b
            .generators
            .iter()
            .map(|g| g.reorder(&a.ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&a.ring, gens)?
    };
    let b = b.with_order(a.order.clone());
    let ga = buchberger(a);
    let gb = buchberger(&b);
    Ok(ga.elements.len() == gb.elements.len()
        && ga.elements.iter().all(|p| gb.elements.contains(p)))
}

/// Krull dimension of `R/I`, read off the initial ideal: the largest set of
/// variables containing the support of no minimal generator of `in(I)`.
/// The unit ideal gives -1.
pub fn dimension(ideal: &Ideal) -> i64 {
    let n = ideal.ring.nvars();
    let gb = buchberger(ideal);
    let leads = gb.leading_monomials();
    if leads.iter().any(|m| m.is_one()) {
        return -1;
    }
    let supports: Vec<u64> = leads
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    assert!(n < 64, "dimension search supports fewer than 64 variables");
    let mut best = 0;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as i64;
        if size <= best {
            continue;
        }
        // Independent: no leading monomial lives entirely inside `set`.
        if supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best
}

/// Codimension with the empty-variety convention for the unit ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Codim {
    Finite(usize),
    Infinite,
}

impl Codim {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Codim::Infinite => true,
            Codim::Finite(c) => c >= k,
        }
    }
}

impl fmt::Display for Codim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codim::Finite(c) => write!(f, "{c}"),
            Codim::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Codim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Codim::Finite(c) => s.serialize_u64(*c as u64),
            Codim::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn codimension(ideal: &Ideal) -> Codim {
    let d = dimension(ideal);
    if d < 0 {
        Codim::Infinite
    } else {
        Codim::Finite(ideal.ring.nvars() - d as usize)
    }
}
