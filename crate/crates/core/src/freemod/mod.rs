//! Free modules over the polynomial ring: matrices, minors, submodule
//! Gröbner bases, syzygies, and solving `A * X = B`.

pub mod element;
mod matrix;

use std::sync::Arc;


pub use element::{ModuleElement, ModuleOrder, ModuleTerm, OrderScheme};
pub use matrix::{determinant, exterior_power, index_subsets, minors, PolyMatrix};

use crate::error::{shape, AlgebraError, Result};
use crate::groebner::engine::{self, Criteria, TrackedBasis};
use crate::polyring::{same_ring, Polynomial, Ring};

/// Position-over-term over the ring's own order.
pub fn default_module_order(ring: &Ring) -> ModuleOrder {
    ModuleOrder::pot(ring.order().clone())
}

/// Reduced Gröbner basis of the column module of a matrix, with
/// `basis = columns * to_basis` and `columns = basis * from_basis`.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    pub order: ModuleOrder,
    pub elements: Vec<ModuleElement>,
    pub basis: PolyMatrix,
    pub to_basis: PolyMatrix,
    pub from_basis: PolyMatrix,
}

fn column_elements(a: &PolyMatrix, ord: &ModuleOrder) -> Vec<ModuleElement> {
    a.columns()
        .iter()
        .map(|c| ModuleElement::from_column(c, ord))
        .collect()
}

fn tracked(a: &PolyMatrix, ord: &ModuleOrder) -> (Vec<ModuleElement>, TrackedBasis) {
    let gens = column_elements(a, ord);
    let tb = engine::tracked_groebner(&gens, a.ring(), ord, Criteria::default());
    (gens, tb)
}

fn reps_matrix(ring: &Arc<Ring>, ngens: usize, reps: &[Vec<Polynomial>]) -> PolyMatrix {
    let mut t = PolyMatrix::zeros(ring, ngens, reps.len());
    for (l, rep) in reps.iter().enumerate() {
        for (i, c) in rep.iter().enumerate() {
            t.set(i, l, c.clone());
        }
    }
    t
}

pub fn module_groebner(a: &PolyMatrix, ord: &ModuleOrder) -> ModuleBasis {
    let ring = a.ring();
    let (gens, tb) = tracked(a, ord);
    let to_basis = reps_matrix(ring, gens.len(), &tb.reps);
    let mut from_basis = PolyMatrix::zeros(ring, tb.elements.len(), gens.len());
    for (j, g) in gens.iter().enumerate() {
        let div = engine::divide(g, &tb.elements, ord);
        debug_assert!(div.remainder.is_zero());
        for (l, q) in div.quotient_polys(ring).into_iter().enumerate() {
            from_basis.set(l, j, q);
        }
    }
    let basis = PolyMatrix::from_columns(
        ring,
        a.rows(),
        tb.elements.iter().map(|e| e.to_column(ring, a.rows())).collect(),
    )
    .expect("column length");
    ModuleBasis {
        order: ord.clone(),
        elements: tb.elements,
        basis,
        to_basis,
        from_basis,
    }
}

pub fn syzygies(a: &PolyMatrix) -> PolyMatrix {
    syzygies_with(a, &default_module_order(a.ring()))
}

/// Generators of `ker(A)`. Schreyer's syzygies of the reduced basis `G` are
/// pulled back along `to_basis`, completed by the columns of
/// `Id - to_basis * from_basis`. Zero and repeated columns are dropped.
pub fn syzygies_with(a: &PolyMatrix, ord: &ModuleOrder) -> PolyMatrix {
    let ring = a.ring();
    let mb = module_groebner(a, ord);
    let g = &mb.elements;
    let k = g.len();

    let mut gb_syz: Vec<Vec<Polynomial>> = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let (li, lj) = (g[i].lead().unwrap(), g[j].lead().unwrap());
            if li.comp != lj.comp {
                continue;
            }
            let lcm = li.mono.lcm(&lj.mono);
            let mi = li.mono.quotient_of(&lcm).unwrap();
            let mj = lj.mono.quotient_of(&lcm).unwrap();
            let ci = li.coeff.recip();
            let cj = lj.coeff.recip();
            let s = g[i].mul_term(&mi, &ci).sub_scaled(&cj, &mj, &g[j], ord);
            let div = engine::divide(&s, g, ord);
            debug_assert!(div.remainder.is_zero());
            let mut col: Vec<Polynomial> = div.quotient_polys(ring).iter().map(|q| -q).collect();
            col[i] = &col[i] + &Polynomial::monomial(ring, mi, ci);
            col[j] = &col[j] - &Polynomial::monomial(ring, mj, cj);
            gb_syz.push(col);
        }
    }
    let gb_syz = PolyMatrix::from_columns(ring, k, gb_syz).expect("shape");
    let pulled = mb.to_basis.mul(&gb_syz).expect("shape");
    let n = a.cols();
    let complement = PolyMatrix::identity(ring, n)
        .sub(&mb.to_basis.mul(&mb.from_basis).expect("shape"))
        .expect("shape");

    let mut cols: Vec<Vec<Polynomial>> = Vec::new();
    for c in pulled.columns().into_iter().chain(complement.columns()) {
        if c.iter().all(Polynomial::is_zero) || cols.contains(&c) {
            continue;
        }
        cols.push(c);
    }
    PolyMatrix::from_columns(ring, n, cols).expect("shape")
}

/// Is `v` in the column module of `a`?
pub fn module_contains(a: &PolyMatrix, v: &[Polynomial]) -> bool {
    let ord = default_module_order(a.ring());
    let (_, tb) = tracked(a, &ord);
    let f = ModuleElement::from_column(v, &ord);
    engine::divide(&f, &tb.elements, &ord).remainder.is_zero()
}

/// Two-way membership: every column of each matrix lies in the other's column module.
pub fn same_column_module(a: &PolyMatrix, b: &PolyMatrix) -> bool {
    if a.rows() != b.rows() {
        return false;
    }
    let ord = default_module_order(a.ring());
    let contains_all = |m: &PolyMatrix, n: &PolyMatrix| {
        let (_, tb) = tracked(m, &ord);
        n.columns().iter().all(|c| {
            let f = ModuleElement::from_column(c, &ord);
            engine::divide(&f, &tb.elements, &ord).remainder.is_zero()
        })
    };
    contains_all(a, b) && contains_all(b, a)
}

/// Drops columns that lie in the module generated by the remaining ones,
/// testing the largest columns (by degree, then size) first.
pub fn prune_columns(a: &PolyMatrix) -> PolyMatrix {
    let key = |c: &Vec<Polynomial>| {
        let deg = c.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0);
        let size: usize = c.iter().map(Polynomial::len).sum();
        (deg, size)
    };
    let cols = a.columns();
    let mut by_size: Vec<usize> = (0..cols.len()).collect();
    by_size.sort_by_key(|&j| (key(&cols[j]), j));
    let mut keep: Vec<bool> = cols.iter().map(|c| c.iter().any(|p| !p.is_zero())).collect();
    for &j in by_size.iter().rev() {
        if !keep[j] {
            continue;
        }
        let others: Vec<usize> = (0..cols.len()).filter(|&k| k != j && keep[k]).collect();
        if module_contains(&a.select_columns(&others), &cols[j]) {
            keep[j] = false;
        }
    }
    let kept: Vec<usize> = (0..cols.len()).filter(|&j| keep[j]).collect();
    a.select_columns(&kept)
}

pub fn lift_through(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    lift_through_with(a, b, &default_module_order(a.ring()))
}

/// Solves `A * X = B` column by column by module division against the
/// reduced basis of the columns of `A`. The result is checked before return.
pub fn lift_through_with(a: &PolyMatrix, b: &PolyMatrix, ord: &ModuleOrder) -> Result<PolyMatrix> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    if a.rows() != b.rows() {
        return Err(shape(
            "lift_through",
            format!("A has {} rows, B has {}", a.rows(), b.rows()),
        ));
    }
    let ring = a.ring();
    let (gens, tb) = tracked(a, ord);
    let to_basis = reps_matrix(ring, gens.len(), &tb.reps);
    let mut x = PolyMatrix::zeros(ring, a.cols(), b.cols());
    for (j, col) in b.columns().iter().enumerate() {
        let f = ModuleElement::from_column(col, ord);
        let div = engine::divide(&f, &tb.elements, ord);
        if !div.remainder.is_zero() {
            return Err(AlgebraError::NotLiftable { column: j });
        }
        let q = div.quotient_polys(ring);
        for i in 0..a.cols() {
            let mut acc = Polynomial::zero(ring);
            for (l, ql) in q.iter().enumerate() {
                if !ql.is_zero() {
                    acc = &acc + &(to_basis.get(i, l) * ql);
                }
            }
            x.set(i, j, acc);
        }
    }
    if a.mul(&x)? != *b {
        return Err(AlgebraError::Internal("lift_through self-check failed".into()));
    }
    Ok(x)
}
