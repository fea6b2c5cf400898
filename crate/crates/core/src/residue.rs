//! Transformation-law reports for Cohen–Macaulay ideals and the Jacobian
//! membership test.
//!
//! Residue currents are never evaluated; a report carries the algebraic data
//! (the top component `a_p` of a comparison map, modulo `(f)`) and renders the
//! factorization symbolically.

use std::fmt;

use num_traits::Zero;

use crate::chainmap::{lift_morphism, ChainMap};
use crate::complexes::{cohen_macaulay_with_resolution, koszul_complex};
use crate::error::{shape, AlgebraError, Result};
use crate::freemod::{determinant, PolyMatrix};
use crate::groebner::{codimension, ideal_membership, Codim, Ideal};
use crate::parser::format_polynomial;
use crate::polyring::{same_ring, Polynomial};

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueReport {
    pub ci_tuple: Vec<Polynomial>,
    /// `a_p`, a `rank E_p x 1` matrix.
    pub coefficient_vector: PolyMatrix,
    pub target_ranks: Vec<usize>,
    /// `(f_1, ..., f_p)`; the coefficient vector is only defined modulo it.
    pub congruence_ideal: Ideal,
    pub lift: ChainMap,
}

impl ResidueReport {
    /// `R^J = dbar(1/f_p) ^ ... ^ dbar(1/f_1) ^ a_p`, with the congruence ideal.
    pub fn render(&self) -> String {
        let factors: Vec<String> = self
            .ci_tuple
            .iter()
            .rev()
            .map(|f| format!("∂̄(1/({}))", format_polynomial(f)))
            .collect();
        format!(
            "R^J = {} ∧ {}  (coefficients modulo {})",
            factors.join(" ∧ "),
            self.coefficient_vector,
            self.congruence_ideal
        )
    }
}

impl fmt::Display for ResidueReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Compares `Koszul(f)` with the minimal resolution of a Cohen–Macaulay
/// ideal `J` of codimension `p = len f` containing every `f_i`.
pub fn transformation_report(f: &[Polynomial], j: &Ideal) -> Result<ResidueReport> {
    if f.is_empty() {
        return Err(AlgebraError::InvalidArgument("empty tuple".into()));
    }
    let ring = j.ring().clone();
    if f.iter().any(|p| !same_ring(p.ring(), &ring)) {
        return Err(AlgebraError::RingMismatch);
    }
    let p = f.len();
    let fi = Ideal::new(&ring, f.to_vec())?.with_order(j.order().clone());
    let codim = codimension(&fi);
    if codim != Codim::Finite(p) {
        return Err(AlgebraError::NotCompleteIntersection {
            codim: codim.to_string(),
            len: p,
        });
    }
    let gb = j.groebner_basis();
    for (index, g) in f.iter().enumerate() {
        if !crate::groebner::normal_form(g, &gb.elements, &gb.order)?.0.is_zero() {
            return Err(AlgebraError::NotMember { index });
        }
    }
    let (cm, e) = cohen_macaulay_with_resolution(j)?;
    if !cm.is_cm || cm.codim != Codim::Finite(p) {
        return Err(AlgebraError::NotCohenMacaulay {
            expected: p,
            length: cm.length,
            codim: cm.codim.to_string(),
        });
    }
    let source = koszul_complex(f)?;
    let lift = lift_morphism(&source, &e, &PolyMatrix::identity(&ring, 1))?;
    Ok(ResidueReport {
        ci_tuple: f.to_vec(),
        coefficient_vector: lift.top().clone(),
        target_ranks: e.ranks().to_vec(),
        congruence_ideal: fi,
        lift,
    })
}

/// `det(d f_i / d x_j)` for a tuple of length `n`.
pub fn jacobian_det(f: &[Polynomial]) -> Result<Polynomial> {
    let first = f
        .first()
        .ok_or_else(|| AlgebraError::InvalidArgument("empty tuple".into()))?;
    let ring = first.ring().clone();
    let n = ring.nvars();
    if f.len() != n {
        return Err(shape(
            "jacobian_det",
            format!("{} polynomials in a ring with {n} variables", f.len()),
        ));
    }
    let mut rows = Vec::with_capacity(n);
    for p in f {
        if !same_ring(p.ring(), &ring) {
            return Err(AlgebraError::RingMismatch);
        }
        rows.push((0..n).map(|j| p.partial_derivative(j)).collect::<Result<Vec<_>>>()?);
    }
    determinant(&PolyMatrix::from_rows(&ring, rows)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HickelVerdict {
    pub jacobian: Polynomial,
    pub codim: usize,
    pub member: bool,
    /// `J_f = sum certificate_i * f_i` when `member`.
    pub certificate: Option<Vec<Polynomial>>,
}

impl fmt::Display for HickelVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "J_f = {}, codim {}, member: {}",
            self.jacobian, self.codim, self.member
        )?;
        if let Some(cert) = &self.certificate {
            let parts: Vec<String> = cert.iter().map(format_polynomial).collect();
            write!(f, ", certificate ({})", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Decides `J_f in (f)` for `n` polynomials vanishing at the origin and
/// cross-checks the answer against `codim Z(f) < n`. A disagreement is
/// reported as an internal error.
///
/// Both sides are computed in the polynomial ring, so the cross-check is
/// only meaningful when every component of `Z(f)` passes through the
/// origin (for instance, weighted-homogeneous tuples).
pub fn hickel_test(f: &[Polynomial]) -> Result<HickelVerdict> {
    let (jacobian, codim, m) = hickel_parts(f)?;
    let n = f[0].ring().nvars();
    if m.member != (codim < n) {
        return Err(AlgebraError::Internal(format!(
            "Jacobian membership is {} but codim Z(f) = {codim} with n = {n}",
            m.member
        )));
    }
    Ok(HickelVerdict {
        jacobian,
        codim,
        member: m.member,
        certificate: m.certificate,
    })
}

fn hickel_parts(f: &[Polynomial]) -> Result<(Polynomial, usize, crate::groebner::Membership)> {
    let jacobian = jacobian_det(f)?;
    if let Some(i) = f.iter().position(|p| !p.constant_term().is_zero()) {
        return Err(AlgebraError::InvalidArgument(format!(
            "f_{} has a nonzero constant term, so the origin is not a common zero",
            i + 1
        )));
    }
    let ring = jacobian.ring().clone();
    let ideal = Ideal::new(&ring, f.to_vec())?;
    let codim = match codimension(&ideal) {
        Codim::Finite(c) => c,
        Codim::Infinite => return Err(AlgebraError::Internal("proper ideal reported as unit".into())),
    };
    // Membership against the tuple itself so the certificate has one entry per f_i.
    let m = membership_in_tuple(&jacobian, f)?;
    Ok((jacobian, codim, m))
}

fn membership_in_tuple(p: &Polynomial, f: &[Polynomial]) -> Result<crate::groebner::Membership> {
    let ring = p.ring();
    let nonzero: Vec<usize> = (0..f.len()).filter(|&i| !f[i].is_zero()).collect();
    if nonzero.is_empty() {
        let member = p.is_zero();
        return Ok(crate::groebner::Membership {
            member,
            certificate: member.then(|| vec![Polynomial::zero(ring); f.len()]),
        });
    }
    let ideal = Ideal::new(ring, nonzero.iter().map(|&i| f[i].clone()))?;
    let m = ideal_membership(p, &ideal);
    let certificate = m.certificate.map(|c| {
        let mut full = vec![Polynomial::zero(ring); f.len()];
        for (k, &i) in nonzero.iter().enumerate() {
            full[i] = c[k].clone();
        }
        full
    });
    Ok(crate::groebner::Membership {
        member: m.member,
        certificate,
    })
}
