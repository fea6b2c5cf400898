//! Buchberger's algorithm on submodules of a free module, tracking how every
//! basis element is built from the input generators.
//!
//! Ideals go through the same code as rank-1 modules.

use std::sync::Arc;


use crate::freemod::element::{ModuleElement, ModuleOrder};
use crate::polyring::{Monomial, Polynomial, Rational, Ring};

/// Pair-elimination switches. Both are on by default; turning them off gives
/// the plain algorithm, which must produce the same reduced basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Criteria {
    /// Skip pairs with coprime leading monomials. Only sound for ideals, so it
    /// is ignored when the module has rank above one.
    pub product: bool,
    pub chain: bool,
}

impl Default for Criteria {
    fn default() -> Self {
        Criteria {
            product: true,
            chain: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairStats {
    pub considered: usize,
    pub product_skipped: usize,
    pub chain_skipped: usize,
    pub reduced_to_zero: usize,
}

pub(crate) struct Division {
    pub quotients: Vec<Vec<(Monomial, Rational)>>,
    pub remainder: ModuleElement,
}

impl Division {
    pub fn quotient_polys(&self, ring: &Arc<Ring>) -> Vec<Polynomial> {
        self.quotients
            .iter()
            .map(|q| Polynomial::from_terms(ring, q.iter().cloned()))
            .collect()
    }
}

/// Full multivariate division. The reducer for each leading term is the
/// smallest-index basis element whose leading module monomial divides it.
pub(crate) fn divide(f: &ModuleElement, basis: &[ModuleElement], ord: &ModuleOrder) -> Division {
    let mut quotients = vec![Vec::new(); basis.len()];
    let mut p = f.clone();
    let mut remainder = ModuleElement::zero();
    while let Some(lt) = p.lead() {
        let hit = basis.iter().enumerate().find_map(|(idx, g)| {
            let gl = g.lead()?;
            if gl.comp != lt.comp {
                return None;
            }
            gl.mono
                .quotient_of(&lt.mono)
                .map(|q| (idx, q, &lt.coeff / &gl.coeff))
        });
        match hit {
            Some((idx, q, c)) => {
                p = p.sub_scaled(&c, &q, &basis[idx], ord);
                quotients[idx].push((q, c));
            }
            None => {
                let t = p.pop_lead().expect("nonzero");
                remainder.push_smaller(t);
            }
        }
    }
    Division {
        quotients,
        remainder,
    }
}

pub(crate) struct TrackedBasis {
    pub elements: Vec<ModuleElement>,
    /// `elements[l] = sum_i reps[l][i] * gens[i]`.
    pub reps: Vec<Vec<Polynomial>>,
    pub stats: PairStats,
}

fn rep_sub_scaled(a: &mut [Polynomial], c: &Rational, m: &Monomial, b: &[Polynomial]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = &*x - &y.mul_term(m, c);
        }
    }
}

fn rep_scale(a: &[Polynomial], c: &Rational, m: &Monomial) -> Vec<Polynomial> {
    a.iter().map(|p| p.mul_term(m, c)).collect()
}

fn lcm_degree(basis: &[ModuleElement], i: usize, j: usize) -> u32 {
    let (a, b) = (basis[i].lead().unwrap(), basis[j].lead().unwrap());
    a.mono.lcm(&b.mono).degree()
}

/// Reduced Gröbner basis of the submodule generated by `gens`, with
/// representations. Pairs are processed by smallest lcm total degree, then by
/// pair index; the output is sorted increasing by leading term and monic.
pub(crate) fn tracked_groebner(
    gens: &[ModuleElement],
    ring: &Arc<Ring>,
    ord: &ModuleOrder,
    criteria: Criteria,
) -> TrackedBasis {
    let ngens = gens.len();
    let unit_rep = |i: usize| -> Vec<Polynomial> {
        (0..ngens)
            .map(|k| {
                if k == i {
                    Polynomial::one(ring)
                } else {
                    Polynomial::zero(ring)
                }
            })
            .collect()
    };
    let rank_one = gens
        .iter()
        .flat_map(|g| g.terms().iter().map(|t| t.comp))
        .all(|c| c == 0);
    let use_product = criteria.product && rank_one;

    let mut basis: Vec<ModuleElement> = Vec::new();
    let mut reps: Vec<Vec<Polynomial>> = Vec::new();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut stats = PairStats::default();

    let add = |elem: ModuleElement,
                   rep: Vec<Polynomial>,
                   basis: &mut Vec<ModuleElement>,
                   reps: &mut Vec<Vec<Polynomial>>,
                   pending: &mut Vec<(usize, usize)>| {
        let new = basis.len();
        let comp = elem.lead().unwrap().comp;
        for (i, b) in basis.iter().enumerate() {
            if b.lead().unwrap().comp == comp {
                pending.push((i, new));
            }
        }
        basis.push(elem);
        reps.push(rep);
    };

    for (i, g) in gens.iter().enumerate() {
        if !g.is_zero() {
            add(g.clone(), unit_rep(i), &mut basis, &mut reps, &mut pending);
        }
    }

    while !pending.is_empty() {
        let pos = (0..pending.len())
            .min_by_key(|&k| {
                let (i, j) = pending[k];
                (lcm_degree(&basis, i, j), i, j)
            })
            .unwrap();
        let (i, j) = pending.swap_remove(pos);
        stats.considered += 1;
        let li = basis[i].lead().unwrap().clone();
        let lj = basis[j].lead().unwrap().clone();
        let lcm = li.mono.lcm(&lj.mono);

        if use_product && li.mono.is_coprime(&lj.mono) {
            stats.product_skipped += 1;
            continue;
        }
        if criteria.chain {
            let is_pending = |a: usize, b: usize| {
                let key = (a.min(b), a.max(b));
                pending.contains(&key)
            };
            let chained = (0..basis.len()).any(|k| {
                if k == i || k == j {
                    return false;
                }
                let lk = basis[k].lead().unwrap();
                lk.comp == li.comp
                    && lk.mono.divides(&lcm)
                    && !is_pending(i, k)
                    && !is_pending(j, k)
            });
            if chained {
                stats.chain_skipped += 1;
                continue;
            }
        }

        let mi = li.mono.quotient_of(&lcm).unwrap();
        let mj = lj.mono.quotient_of(&lcm).unwrap();
        let ci = li.coeff.recip();
        let cj = lj.coeff.recip();
        let s = basis[i]
            .mul_term(&mi, &ci)
            .sub_scaled(&cj, &mj, &basis[j], ord);
        let mut rep = rep_scale(&reps[i], &ci, &mi);
        rep_sub_scaled(&mut rep, &cj, &mj, &reps[j]);

        let div = divide(&s, &basis, ord);
        if div.remainder.is_zero() {
            stats.reduced_to_zero += 1;
            continue;
        }
        for (idx, q) in div.quotients.iter().enumerate() {
            for (m, c) in q {
                rep_sub_scaled(&mut rep, c, m, &reps[idx]);
            }
        }
        add(div.remainder, rep, &mut basis, &mut reps, &mut pending);
    }

    // Minimal basis: drop elements whose leading monomial is divisible by
    // another's; among equal leading monomials keep the earliest.
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&l| {
            let ll = basis[l].lead().unwrap();
            !(0..basis.len()).any(|k| {
                if k == l {
                    return false;
                }
                let lk = basis[k].lead().unwrap();
                lk.comp == ll.comp
                    && lk.mono.divides(&ll.mono)
                    && (lk.mono != ll.mono || k < l)
            })
        })
        .collect();
    let mut elements: Vec<ModuleElement> = keep.iter().map(|&l| basis[l].clone()).collect();
    let mut ereps: Vec<Vec<Polynomial>> = keep.iter().map(|&l| reps[l].clone()).collect();

    // Interreduce tails and normalize.
    for l in 0..elements.len() {
        let others: Vec<ModuleElement> = elements
            .iter()
            .enumerate()
            .map(|(k, e)| if k == l { ModuleElement::zero() } else { e.clone() })
            .collect();
        let div = divide(&elements[l], &others, ord);
        let mut rep = ereps[l].clone();
        for (idx, q) in div.quotients.iter().enumerate() {
            for (m, c) in q {
                rep_sub_scaled(&mut rep, c, m, &ereps[idx]);
            }
        }
        let lc = div.remainder.lead().expect("minimal basis element").coeff.clone();
        let inv = lc.recip();
        let one = Monomial::one(ring.nvars());
        elements[l] = div.remainder.scale(&inv);
        ereps[l] = rep_scale(&rep, &inv, &one);
    }

    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by(|&a, &b| {
        let (ta, tb) = (elements[a].lead().unwrap(), elements[b].lead().unwrap());
        ord.cmp((ta.comp, &ta.mono), (tb.comp, &tb.mono))
    });
    TrackedBasis {
        elements: order.iter().map(|&k| elements[k].clone()).collect(),
        reps: order.iter().map(|&k| ereps[k].clone()).collect(),
        stats,
    }
}
