use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::polyring::{Monomial, MonomialOrder, Polynomial, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderScheme {
    /// Component index decides first; smaller index ranks higher.
    PositionOverTerm,
    /// Monomial decides first; ties broken by smaller index ranking higher.
    TermOverPosition,
}

/// Order on module monomials `m * e_i` of a free module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleOrder {
    pub base: MonomialOrder,
    pub scheme: OrderScheme,
}

impl ModuleOrder {
    pub fn pot(base: MonomialOrder) -> Self {
        ModuleOrder {
            base,
            scheme: OrderScheme::PositionOverTerm,
        }
    }

    pub fn top(base: MonomialOrder) -> Self {
        ModuleOrder {
            base,
            scheme: OrderScheme::TermOverPosition,
        }
    }

    pub fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match self.scheme {
            OrderScheme::PositionOverTerm => {
                b.0.cmp(&a.0).then_with(|| self.base.cmp(a.1, b.1))
            }
            OrderScheme::TermOverPosition => {
                self.base.cmp(a.1, b.1).then_with(|| b.0.cmp(&a.0))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleTerm {
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: Rational,
}

/// Element of a free module `R^rank`, terms sorted strictly decreasing
/// under the module order it was built with.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModuleElement {
    terms: Vec<ModuleTerm>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        ModuleElement { terms: Vec::new() }
    }

    pub fn from_column(column: &[Polynomial], ord: &ModuleOrder) -> Self {
        let mut terms: Vec<ModuleTerm> = column
            .iter()
            .enumerate()
            .flat_map(|(comp, p)| {
                p.terms().iter().map(move |(m, c)| ModuleTerm {
                    comp,
                    mono: m.clone(),
                    coeff: c.clone(),
                })
            })
            .collect();
        terms.sort_by(|a, b| ord.cmp((b.comp, &b.mono), (a.comp, &a.mono)));
        ModuleElement { terms }
    }

    pub fn to_column(&self, ring: &Arc<Ring>, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.comp].push((t.mono.clone(), t.coeff.clone()));
        }
        buckets
            .into_iter()
            .map(|b| Polynomial::from_terms(ring, b))
            .collect()
    }

    pub fn terms(&self) -> &[ModuleTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&ModuleTerm> {
        self.terms.first()
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> ModuleElement {
        if c.is_zero() {
            return ModuleElement::zero();
        }
        ModuleElement {
            terms: self
                .terms
                .iter()
                .map(|t| ModuleTerm {
                    comp: t.comp,
                    mono: t.mono.mul(m),
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }

    /// `self - c * m * other`, merged under `ord`.
    pub fn sub_scaled(
        &self,
        c: &Rational,
        m: &Monomial,
        other: &ModuleElement,
        ord: &ModuleOrder,
    ) -> ModuleElement {
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + other.terms.len());
        let mut i = 0;
        let mut rhs = other.terms.iter().map(|t| ModuleTerm {
            comp: t.comp,
            mono: t.mono.mul(m),
            coeff: -(&t.coeff * c),
        });
        let mut pending = rhs.next();
        while let Some(b) = pending.take() {
            if i >= a.len() {
                out.push(b);
                pending = rhs.next();
                continue;
            }
            match ord.cmp((a[i].comp, &a[i].mono), (b.comp, &b.mono)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                    pending = Some(b);
                }
                Ordering::Less => {
                    out.push(b);
                    pending = rhs.next();
                }
                Ordering::Equal => {
                    let coeff = &a[i].coeff + &b.coeff;
                    if !coeff.is_zero() {
                        out.push(ModuleTerm {
                            comp: b.comp,
                            mono: b.mono,
                            coeff,
                        });
                    }
                    i += 1;
                    pending = rhs.next();
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        ModuleElement { terms: out }
    }

    pub(crate) fn push_smaller(&mut self, t: ModuleTerm) {
        self.terms.push(t);
    }

    pub(crate) fn pop_lead(&mut self) -> Option<ModuleTerm> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn scale(&self, c: &Rational) -> ModuleElement {
        let nvars = self.terms.first().map(|t| t.mono.nvars()).unwrap_or(0);
        self.mul_term(&Monomial::one(nvars), c)
    }
}
