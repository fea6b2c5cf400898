//! Exact rational arithmetic and sparse multivariate polynomials over Q.
//!
//! A [`Polynomial`] keeps a handle to its [`Ring`] (variable names plus the
//! ambient monomial order) and stores its terms sorted strictly decreasing
//! under that order, with no zero coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

pub type Rational = BigRational;

/// Builds `num/den` in lowest terms with a positive denominator.
pub fn rat_normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let den = den.into();
    if den.is_zero() {
        return Err(AlgebraError::ZeroDenominator);
    }
    // BigRational::new reduces and moves the sign to the numerator.
    Ok(BigRational::new(num.into(), den))
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector of a monomial; its length is the ring's variable count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

/// Global monomial orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
    /// Weighted degree first, ties broken as in grevlex. Weights are positive.
    WeightedGrevlex(Vec<u32>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| revlex(a, b)),
            MonomialOrder::WeightedGrevlex(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| revlex(a, b)),
        }
    }

    fn validate(&self, nvars: usize) -> Result<()> {
        if let MonomialOrder::WeightedGrevlex(w) = self {
            if w.len() != nvars {
                return Err(AlgebraError::InvalidArgument(format!(
                    "weight vector has length {} but the ring has {} variables",
                    w.len(),
                    nvars
                )));
            }
            if w.contains(&0) {
                return Err(AlgebraError::InvalidArgument(
                    "weights must be positive".into(),
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::WeightedGrevlex(w) => {
                let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "wgrevlex:{}", w.join(","))
            }
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grevlex" => Ok(MonomialOrder::Grevlex),
            _ => {
                let weights = s
                    .strip_prefix("wgrevlex:")
                    .ok_or_else(|| AlgebraError::InvalidArgument(format!("unknown order `{s}`")))?;
                let w = weights
                    .split(',')
                    .map(|t| t.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| AlgebraError::InvalidArgument(format!("bad weight: {e}")))?;
                Ok(MonomialOrder::WeightedGrevlex(w))
            }
        }
    }
}

// Equal-degree tie-break: at the last differing variable, the smaller exponent wins.
fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Variable names and the ambient monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        order: MonomialOrder,
    ) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(AlgebraError::InvalidArgument(format!(
                    "duplicate variable `{v}`"
                )));
            }
        }
        order.validate(vars.len())?;
        Ok(Arc::new(Ring { vars, order }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables, different ambient order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Ring>> {
        Ring::new(self.vars.clone(), order)
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Sparse polynomial with rational coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format_polynomial(self))
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Result<Self> {
        if index >= ring.nvars() {
            return Err(AlgebraError::VariableOutOfRange {
                index,
                nvars: ring.nvars(),
            });
        }
        Ok(Self::monomial(
            ring,
            Monomial::var(ring.nvars(), index),
            Rational::one(),
        ))
    }

    /// Collects arbitrary terms: like monomials are combined and zeros dropped.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Terms in strictly decreasing ambient order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous_wrt(&self, weights: &[u32]) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(weights));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Coefficient of the monomial 1, i.e. the value at the origin.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Maximal term under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Monomial, Rational)> {
        if order == self.ring.order() {
            return self.terms.first().cloned().ok_or(AlgebraError::ZeroPolynomial);
        }
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .cloned()
            .ok_or(AlgebraError::ZeroPolynomial)
    }

    /// Leading coefficient under the ambient order (zero for the zero polynomial).
    pub fn leading_coefficient(&self) -> Rational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| {
            (m.clone(), if negate { -c } else { c.clone() })
        }));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        Polynomial::from_terms(&self.ring, acc)
    }

    /// `c * m * self`; multiplicativity of the order keeps the terms sorted.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, d)| (t.mul(m), d * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if index >= n {
            return Err(AlgebraError::VariableOutOfRange { index, nvars: n });
        }
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.0[index];
            if e == 0 {
                return None;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            Some((Monomial(exps), c * rat(e as i64)))
        });
        // Differentiation can merge no terms but may break the ordering (lex vs grevlex), so re-sort.
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Same polynomial viewed in `ring` (same variables, possibly another order).
    pub fn reorder(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if ring.vars() != self.ring.vars() {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(Polynomial::from_terms(ring, self.terms.iter().cloned()))
    }

    /// Makes the leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics when the operands live in different rings; use `checked_add` otherwise.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Arithmetic dispatcher matching the `add | sub | mul` operation set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(op: ArithOp, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring3(order: MonomialOrder) -> Arc<Ring> {
        Ring::new(["x", "y", "z"], order).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    fn p(ring: &Arc<Ring>, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(ring, terms.iter().map(|(e, c)| (mono(e), rat(*c))))
    }

    #[test]
    fn normalize_rationals() {
        assert_eq!(rat_normalize(2, 4).unwrap(), rat_normalize(1, 2).unwrap());
        let r = rat_normalize(3, -6).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-1));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = rat_normalize(0, 7).unwrap();
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(rat_normalize(1, 0), Err(AlgebraError::ZeroDenominator));
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring3(MonomialOrder::Grevlex);
        let x = Polynomial::var(&r, 0).unwrap();
        let y = Polynomial::var(&r, 1).unwrap();
        assert!(poly_arith(ArithOp::Add, &x, &-&x).unwrap().is_zero());
        let lhs = poly_arith(ArithOp::Mul, &(&x + &y), &(&x - &y)).unwrap();
        assert_eq!(lhs, p(&r, &[(&[2, 0, 0], 1), (&[0, 2, 0], -1)]));
        let q = p(&r, &[(&[0, 2, 0], 1), (&[1, 0, 1], -1)]);
        assert_eq!(poly_arith(ArithOp::Mul, &q, &Polynomial::one(&r)).unwrap(), q);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring3(MonomialOrder::Grevlex);
        let b = Ring::new(["u", "v", "w"], MonomialOrder::Grevlex).unwrap();
        let x = Polynomial::var(&a, 0).unwrap();
        let u = Polynomial::var(&b, 0).unwrap();
        assert_eq!(x.checked_add(&u), Err(AlgebraError::RingMismatch));
    }

    #[test]
    fn leading_terms() {
        let r = ring3(MonomialOrder::Grevlex);
        let f = p(&r, &[(&[2, 1, 0], 1), (&[0, 0, 3], -1)]);
        assert_eq!(
            f.leading_term(&MonomialOrder::Lex).unwrap(),
            (mono(&[2, 1, 0]), rat(1))
        );
        // Same degree; the z-exponent decides and x^2*y has the smaller one.
        assert_eq!(
            f.leading_term(&MonomialOrder::Grevlex).unwrap(),
            (mono(&[2, 1, 0]), rat(1))
        );
        let five = Polynomial::constant(&r, rat(5));
        assert_eq!(
            five.leading_term(&MonomialOrder::Lex).unwrap(),
            (Monomial::one(3), rat(5))
        );
        assert_eq!(
            Polynomial::zero(&r).leading_term(&MonomialOrder::Lex),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn weighted_order_uses_weights_first() {
        let w = MonomialOrder::WeightedGrevlex(vec![3, 4, 5]);
        // x^2 has weight 6, z has weight 5
        assert_eq!(w.cmp(&mono(&[2, 0, 0]), &mono(&[0, 0, 1])), Ordering::Greater);
        assert_eq!(
            MonomialOrder::Grevlex.cmp(&mono(&[0, 1, 0]), &mono(&[1, 0, 0])),
            Ordering::Less
        );
        assert!(Ring::new(["x", "y"], MonomialOrder::WeightedGrevlex(vec![1])).is_err());
        assert!(Ring::new(["x", "x"], MonomialOrder::Lex).is_err());
    }

    #[test]
    fn derivatives() {
        let r = ring3(MonomialOrder::Grevlex);
        let f = p(&r, &[(&[2, 1, 0], 1)]);
        assert_eq!(f.partial_derivative(0).unwrap(), p(&r, &[(&[1, 1, 0], 2)]));
        let g = p(&r, &[(&[0, 0, 2], 1), (&[2, 1, 0], -1)]);
        assert_eq!(g.partial_derivative(2).unwrap(), p(&r, &[(&[0, 0, 1], 2)]));
        let h = p(&r, &[(&[0, 3, 0], 1)]);
        assert!(h.partial_derivative(0).unwrap().is_zero());
        assert!(matches!(
            h.partial_derivative(3),
            Err(AlgebraError::VariableOutOfRange { index: 3, nvars: 3 })
        ));
    }

    #[test]
    fn constant_terms() {
        let r = ring3(MonomialOrder::Grevlex);
        assert_eq!(p(&r, &[(&[1, 0, 0], 1), (&[0, 0, 0], 1)]).constant_term(), rat(1));
        assert_eq!(p(&r, &[(&[1, 0, 1], 1)]).constant_term(), rat(0));
        assert_eq!(Polynomial::zero(&r).constant_term(), rat(0));
    }

    fn arb_poly(ring: Arc<Ring>) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..5), 0..5).prop_map(
            move |terms| {
                Polynomial::from_terms(
                    &ring,
                    terms
                        .into_iter()
                        .map(|((a, b, c), k)| (mono(&[a, b, c]), rat(k))),
                )
            },
        )
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::WeightedGrevlex(vec![3, 4, 5])),
        ]
    }

    proptest! {
        #[test]
        fn ring_axioms(
            (a, b, c) in arb_order().prop_flat_map(|o| {
                let r = ring3(o);
                (arb_poly(r.clone()), arb_poly(r.clone()), arb_poly(r))
            })
        ) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn terms_stay_sorted(
            (a, b) in arb_order().prop_flat_map(|o| {
                let r = ring3(o);
                (arb_poly(r.clone()), arb_poly(r))
            })
        ) {
            let prod = &a * &b;
            let ord = prod.ring().order().clone();
            for w in prod.terms().windows(2) {
                prop_assert_eq!(ord.cmp(&w[0].0, &w[1].0), Ordering::Greater);
            }
            prop_assert!(prod.terms().iter().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn leading_term_is_multiplicative(
            (a, b) in arb_order().prop_flat_map(|o| {
                let r = ring3(o);
                (arb_poly(r.clone()), arb_poly(r))
            })
        ) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let ord = a.ring().order().clone();
            let (ma, ca) = a.leading_term(&ord).unwrap();
            let (mb, cb) = b.leading_term(&ord).unwrap();
            let (mp, cp) = (&a * &b).leading_term(&ord).unwrap();
            prop_assert_eq!(mp, ma.mul(&mb));
            prop_assert_eq!(cp, ca * cb);
        }

        #[test]
        fn constant_term_is_multiplicative(a in arb_poly(ring3(MonomialOrder::Grevlex)), b in arb_poly(ring3(MonomialOrder::Grevlex))) {
            prop_assert_eq!((&a * &b).constant_term(), a.constant_term() * b.constant_term());
        }

        #[test]
        fn leibniz_rule(a in arb_poly(ring3(MonomialOrder::Grevlex)), b in arb_poly(ring3(MonomialOrder::Grevlex)), i in 0usize..3) {
            let lhs = (&a * &b).partial_derivative(i).unwrap();
            let rhs = &(&a * &b.partial_derivative(i).unwrap()) + &(&b * &a.partial_derivative(i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
