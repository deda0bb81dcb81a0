//! Yang-Baxter couples `(pi, R)`: certification through the extended
//! reflection equation, the representation `rho_{pi,R}` of `T ≀ S∞` on the
//! truncated space `W (x) V^(x)n`, and trace characters.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;

use crate::cyclo::{int, CycloScalar, Rational};
use crate::error::{Error, Result};
use crate::group::{check_homomorphism, FiniteGroup};
use crate::matrix::{amplify, ExactMatrix, SparseOperator, TensorIndex};
use crate::rmatrix::{Amplifier, RMatrix};
use crate::wreath::{same_group, WreathElement};

#[derive(Clone, Debug)]
pub struct YangBaxterCouple {
    group: Arc<FiniteGroup>,
    r: RMatrix,
    pi: Vec<ExactMatrix>,
    w: usize,
}

/// Checks that `pi` is a unitary representation of `group` on `W (x) V` and
/// that `R_1 pi(t) R_1 pi(t') = pi(t') R_1 pi(t) R_1` for every pair in `T x T`.
pub fn certify_couple(group: Arc<FiniteGroup>, r: RMatrix, pi: Vec<ExactMatrix>, w: usize) -> Result<YangBaxterCouple> {
    let dim = w * r.dim();
    if w == 0 {
        return Err(Error::NotRepresentation("dim W must be positive".into()));
    }
    if pi.len() != group.order() {
        return Err(Error::NotRepresentation(format!(
            "{} images for a group of order {}",
            pi.len(),
            group.order()
        )));
    }
    if let Some(t) = pi.iter().position(|m| m.rows() != dim || m.cols() != dim) {
        return Err(Error::NotRepresentation(format!("image of {t} is not {dim}x{dim}")));
    }
    check_homomorphism(&group, &pi)
        .map_err(|(s, t)| Error::NotRepresentation(format!("pi({s}*{t}) != pi({s}) pi({t})")))?;
    if let Some(t) = pi.iter().position(|m| !m.is_unitary()) {
        return Err(Error::NotRepresentation(format!("pi({t}) is not unitary")));
    }
    let couple = YangBaxterCouple { group, r, pi, w };
    let pairs: Vec<(usize, usize)> = (0..couple.group.order())
        .flat_map(|t| (0..couple.group.order()).map(move |s| (t, s)))
        .collect();
    couple.extended_re_on(&pairs)?;
    Ok(couple)
}

impl YangBaxterCouple {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn r(&self) -> &RMatrix {
        &self.r
    }

    pub fn pi(&self) -> &[ExactMatrix] {
        &self.pi
    }

    /// `dim W`.
    pub fn w(&self) -> usize {
        self.w
    }

    /// `dim V`.
    pub fn d(&self) -> usize {
        self.r.dim()
    }

    /// Extended reflection equation on the listed pairs `(t, t')`.
    pub fn extended_re_on(&self, pairs: &[(usize, usize)]) -> Result<()> {
        let d = self.d();
        let layout = TensorIndex::new(vec![self.w, d, d]);
        let r1 = amplify(self.r.matrix(), &layout, 1, 3)?;
        let pis: Vec<SparseOperator> = self
            .pi
            .iter()
            .map(|m| amplify(m, &layout, 0, 2))
            .collect::<Result<_>>()?;
        // R_1 pi(t) R_1 for each t
        let conj: Vec<SparseOperator> = pis
            .iter()
            .map(|p| r1.matmul(p)?.matmul(&r1))
            .collect::<Result<_>>()?;
        for &(t, s) in pairs {
            let lhs = conj[t].matmul(&pis[s])?;
            let rhs = pis[s].matmul(&conj[t])?;
            if let Some(w) = lhs.first_differing_column(&rhs) {
                return Err(Error::ExtendedReFails { t, t_prime: s, witness: w });
            }
        }
        Ok(())
    }

    /// Extended reflection equation on pairs of group generators only.
    pub fn extended_re_on_generators(&self) -> Result<()> {
        let gens = generators(&self.group);
        let pairs: Vec<(usize, usize)> = gens.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).collect();
        self.extended_re_on(&pairs)
    }

    /// `R (pi(t) (x) 1) R = 1 (x) pi(t)` on `V (x) V`; only meaningful for
    /// `dim W = 1`. Returns the first failing `(t, basis index)`.
    pub fn transport_identity(&self) -> Result<Option<(usize, usize)>> {
        if self.w != 1 {
            return Err(Error::NotRepresentation("transport identity needs dim W = 1".into()));
        }
        let d = self.d();
        let id = ExactMatrix::identity(d);
        let r = self.r.matrix();
        for (t, p) in self.pi.iter().enumerate() {
            let lhs = r.matmul(&p.kron(&id))?.matmul(r)?;
            let rhs = id.kron(p);
            if let Some(col) = lhs.first_differing_column(&rhs) {
                return Ok(Some((t, col)));
            }
        }
        Ok(None)
    }

    fn check_element(&self, g: &WreathElement) -> Result<()> {
        if !same_group(&self.group, g.group()) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// `rho(g) = rho((d, id)) rho((1, sigma))` on `W (x) V^(x)n`, with the colour
    /// at position `k` transported by `R_(k-1) ... R_1 pi(t_k) R_1 ... R_(k-1)`.
    pub fn rep_element(&self, g: &WreathElement, n: usize) -> Result<SparseOperator> {
        self.check_element(g)?;
        if n == 0 || g.max_support() > n {
            return Err(Error::SupportExceedsLevel {
                level: n,
                detail: format!("element {g}"),
            });
        }
        let layout = TensorIndex::ambient(self.w, self.d(), n);
        let mut amp = Amplifier::new(&self.r, layout.clone(), 1);
        let mut acc = SparseOperator::identity(layout.total());
        for (&k, &t) in g.colors() {
            let down: Vec<usize> = (1..k).rev().collect();
            let up: Vec<usize> = (1..k).collect();
            let pi_t = amplify(&self.pi[t], &layout, 0, 2)?;
            let op = amp.word(&down)?.matmul(&pi_t)?.matmul(&amp.word(&up)?)?;
            acc = acc.matmul(&op)?;
        }
        let perm = amp.perm(g.perm())?;
        acc.matmul(&perm)
    }

    /// `Tr rho(g) / (w d^n)` at an explicit level `n >= max(supp g)`.
    pub fn character_at_level(&self, g: &WreathElement, n: usize) -> Result<CycloScalar> {
        let op = self.rep_element(g, n)?;
        let norm = int(self.w as i64) * num_traits::pow(int(self.d() as i64), n);
        Ok(op.trace().scale(&(Rational::one() / norm)))
    }

    /// Normalized trace character, evaluated at level `max(supp g, 1)`.
    pub fn character(&self, g: &WreathElement) -> Result<CycloScalar> {
        self.character_at_level(g, g.max_support().max(1))
    }

    /// Exact check of `chi(g g') = chi(g) chi(g')` for disjoint-support pairs.
    pub fn verify_extremality(&self, pairs: &[(WreathElement, WreathElement)]) -> Result<ExtremalityReport> {
        let mut failures = Vec::new();
        for (i, (a, b)) in pairs.iter().enumerate() {
            if !a.support().is_disjoint(&b.support()) {
                return Err(Error::SupportsNotDisjoint(format!("pair {i}: {a} and {b}")));
            }
            let joint = self.character(&a.multiply(b)?)?;
            let split = &self.character(a)? * &self.character(b)?;
            if joint != split {
                failures.push(ExtremalityFailure {
                    index: i,
                    joint: joint.to_string(),
                    product: split.to_string(),
                });
            }
        }
        Ok(ExtremalityReport {
            checked: pairs.len(),
            failures,
        })
    }

    /// Gram matrix `[chi(g_j^-1 g_i)]`, checked for exact Hermitian symmetry and
    /// numerically for positive semidefiniteness.
    pub fn gram_psd_check(&self, elements: &[WreathElement]) -> Result<GramReport> {
        gram_psd_check_with(elements, |g| self.character(g))
    }
}

/// Gram check for any character function.
pub fn gram_psd_check_with<F>(elements: &[WreathElement], mut chi: F) -> Result<GramReport>
where
    F: FnMut(&WreathElement) -> Result<CycloScalar>,
{
    const MAX: usize = 12;
    const TOLERANCE: f64 = 1e-9;
    let n = elements.len();
    if n > MAX {
        return Err(Error::DimensionMismatch(format!("Gram check takes at most {MAX} elements, got {n}")));
    }
    let mut exact = vec![vec![CycloScalar::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            exact[i][j] = chi(&elements[j].inverse().multiply(&elements[i])?)?;
        }
    }
    let hermitian = (0..n).all(|i| (0..n).all(|j| exact[i][j] == exact[j][i].conj()));
    let m = DMatrix::<Complex64>::from_fn(n, n, |i, j| exact[i][j].to_complex());
    let min_eigenvalue = if n == 0 {
        0.0
    } else {
        m.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    };
    Ok(GramReport {
        size: n,
        hermitian,
        min_eigenvalue,
        tolerance: TOLERANCE,
        psd: hermitian && min_eigenvalue >= -TOLERANCE,
    })
}

/// Greedy generating set: repeatedly add the smallest element outside the
/// subgroup generated so far.
pub fn generators(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let mut gens = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    while let Some(x) = (0..n).find(|&x| !inside[x]) {
        gens.push(x);
        let mut frontier: Vec<usize> = (0..n).filter(|&y| inside[y]).collect();
        while let Some(y) = frontier.pop() {
            for &s in &gens {
                let z = g.mul(y, s);
                if !inside[z] {
                    inside[z] = true;
                    frontier.push(z);
                }
            }
        }
    }
    gens
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ExtremalityFailure {
    pub index: usize,
    pub joint: String,
    pub product: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ExtremalityReport {
    pub checked: usize,
    pub failures: Vec<ExtremalityFailure>,
}

impl ExtremalityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GramReport {
    pub size: usize,
    pub hermitian: bool,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
    pub psd: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;
    use crate::group::load_group;
    use crate::matrix::flip_operator;
    use crate::perm::Perm;
    use crate::rmatrix::{boxplus_raw, verify_rmatrix};
    use std::collections::BTreeMap;

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(load_group("z2").unwrap())
    }

    fn diag(v: &[i64]) -> ExactMatrix {
        ExactMatrix::diagonal(v.iter().map(|&x| CycloScalar::from_int(x)).collect())
    }

    /// R = (+1) ⊞ (-1), pi(s) = diag(1, -1).
    fn pm_couple() -> YangBaxterCouple {
        let m = boxplus_raw(&ExactMatrix::identity(1), 1, &ExactMatrix::identity(1).neg(), 1);
        let r = verify_rmatrix(m, 2).unwrap();
        certify_couple(z2(), r, vec![ExactMatrix::identity(2), diag(&[1, -1])], 1).unwrap()
    }

    fn elt(g: &Arc<FiniteGroup>, colors: &[(usize, usize)], cycles: &[Vec<usize>]) -> WreathElement {
        WreathElement::new(g.clone(), colors.iter().copied().collect::<BTreeMap<_, _>>(), Perm::from_cycles(cycles).unwrap())
            .unwrap()
    }

    #[test]
    fn trivial_pi_always_certifies() {
        let g = Arc::new(load_group("s3").unwrap());
        let r = verify_rmatrix(flip_operator(2, 2), 2).unwrap();
        let pi = vec![ExactMatrix::identity(2); 6];
        assert!(certify_couple(g, r, pi, 1).is_ok());
    }

    #[test]
    fn flip_with_swap_certifies() {
        // brute force: R_1 pi(s) R_1 is pi(s) moved to the second factor, which
        // commutes with pi(s) on the first factor
        let r = verify_rmatrix(flip_operator(2, 2), 2).unwrap();
        let swap = ExactMatrix::from_ints(2, 2, &[0, 1, 1, 0]);
        let c = certify_couple(z2(), r, vec![ExactMatrix::identity(2), swap], 1).unwrap();
        assert!(c.extended_re_on_generators().is_ok());
    }

    #[test]
    fn extended_re_failure_has_witness() {
        // R = (+1) ⊞ (-1) with the swap representation breaks the reflection equation
        let m = boxplus_raw(&ExactMatrix::identity(1), 1, &ExactMatrix::identity(1).neg(), 1);
        let r = verify_rmatrix(m, 2).unwrap();
        let swap = ExactMatrix::from_ints(2, 2, &[0, 1, 1, 0]);
        let err = certify_couple(z2(), r, vec![ExactMatrix::identity(2), swap], 1).unwrap_err();
        assert!(matches!(err, Error::ExtendedReFails { t: 1, t_prime: 1, .. }), "{err}");
    }

    #[test]
    fn pi_must_be_a_representation() {
        let r = verify_rmatrix(flip_operator(2, 2), 2).unwrap();
        let bad = certify_couple(z2(), r, vec![ExactMatrix::identity(2), diag(&[1, 2])], 1);
        assert!(matches!(bad, Err(Error::NotRepresentation(_))));
    }

    #[test]
    fn characters_of_pm_couple() {
        let c = pm_couple();
        let g = c.group().clone();
        assert!(c.character(&WreathElement::identity(g.clone())).unwrap().is_one());
        let xi = elt(&g, &[(1, 1)], &[]);
        assert!(c.character(&xi).unwrap().is_zero());
        // (s, s) on the transposition: colour product is e, and the cycle factor is
        // alpha^2 - beta^2 = 0 for this R
        let x = elt(&g, &[(1, 1), (2, 1)], &[vec![1, 2]]);
        assert!(c.character(&x).unwrap().is_zero());
        // g = ((s at 2), id) at level 2 equals R_1 pi(s) R_1 densely
        let y = elt(&g, &[(2, 1)], &[]);
        let op = c.rep_element(&y, 2).unwrap().to_dense();
        let r = c.r().matrix();
        let expect = r.matmul(&diag(&[1, -1]).kron(&ExactMatrix::identity(2))).unwrap().matmul(r).unwrap();
        assert_eq!(op, expect);
    }

    #[test]
    fn flip_couple_cycle_value() {
        let r = verify_rmatrix(flip_operator(2, 2), 2).unwrap();
        let c = certify_couple(z2(), r, vec![ExactMatrix::identity(2), diag(&[1, -1])], 1).unwrap();
        let g = c.group().clone();
        let x = elt(&g, &[(1, 1), (2, 1)], &[vec![1, 2]]);
        assert_eq!(c.character(&x).unwrap(), CycloScalar::rational(rat(1, 2)));
    }

    #[test]
    fn pure_permutation_part() {
        let c = pm_couple();
        let g = c.group().clone();
        let s1 = WreathElement::from_perm(g, Perm::adjacent(1));
        assert_eq!(c.rep_element(&s1, 2).unwrap().to_dense(), c.r().matrix().clone());
        assert!(matches!(c.rep_element(&s1, 1), Err(Error::SupportExceedsLevel { .. })));
    }

    #[test]
    fn extremality_and_gram_small() {
        let c = pm_couple();
        let g = c.group().clone();
        let a = elt(&g, &[(1, 1)], &[]);
        let b = elt(&g, &[(2, 1)], &[]);
        let rep = c.verify_extremality(&[(a.clone(), b.clone()), (WreathElement::identity(g.clone()), a.clone())]).unwrap();
        assert!(rep.passed());
        assert!(matches!(c.verify_extremality(&[(a.clone(), a.clone())]), Err(Error::SupportsNotDisjoint(_))));
        let gram = c.gram_psd_check(&[WreathElement::identity(g.clone()), a]).unwrap();
        assert!(gram.hermitian && gram.psd);
        assert!((gram.min_eigenvalue - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generating_sets() {
        assert_eq!(generators(&load_group("trivial").unwrap()), Vec::<usize>::new());
        assert_eq!(generators(&load_group("z6").unwrap()), vec![1]);
        assert_eq!(generators(&load_group("s3").unwrap()).len(), 2);
    }
}
