//! Hirai parameters for extremal characters of `T ≀ S∞`, the Yang-Baxter
//! admissibility test, the closed-form character and its restriction to `S∞`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclo::{format_rational, int, CycloScalar, Rational};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupData, Irrep};
use crate::rmatrix::ThomaParams;
use crate::wreath::{same_group, WreathElement};

/// Parameters as they appear in a file: labels rather than irrep indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawParams {
    /// `(label, epsilon, list)`.
    pub a: Vec<(String, u8, Vec<Rational>)>,
    pub mu: Vec<(String, Rational)>,
}

/// A validated member of the parameter family: non-increasing non-negative
/// lists `a[zeta, eps]`, weights `mu[zeta]`, total mass at most one.
#[derive(Clone, Debug)]
pub struct HiraiParams {
    data: GroupData,
    a: BTreeMap<(usize, u8), Vec<Rational>>,
    mu: BTreeMap<usize, Rational>,
}

/// One positive entry `a[zeta, eps][i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry<'a> {
    pub irrep: usize,
    pub eps: u8,
    pub i: usize,
    pub value: &'a Rational,
}

pub fn validate_params(data: GroupData, raw: &RawParams) -> Result<HiraiParams> {
    let lookup = |label: &str| {
        data.irrep_index(label)
            .ok_or_else(|| Error::UnknownIrrepLabel(format!("{label} (group {})", data.group.name())))
    };
    let mut a = BTreeMap::new();
    for (label, eps, list) in &raw.a {
        let idx = lookup(label)?;
        if *eps > 1 {
            return Err(Error::schema(format!("a.{label}"), format!("epsilon must be 0 or 1, got {eps}")));
        }
        if let Some(k) = list.iter().position(|x| x.is_negative()) {
            return Err(Error::NegativeEntry(format!("a[{label},{eps}][{k}] = {}", format_rational(&list[k]))));
        }
        if let Some(k) = list.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotNonIncreasing(format!("a[{label},{eps}] at index {}", k + 1)));
        }
        let mut list = list.clone();
        while list.last().is_some_and(Zero::is_zero) {
            list.pop();
        }
        if a.insert((idx, *eps), list).is_some() {
            return Err(Error::schema(format!("a.{label}.{eps}"), "duplicate list"));
        }
    }
    a.retain(|_, v: &mut Vec<Rational>| !v.is_empty());
    let mut mu = BTreeMap::new();
    for (label, m) in &raw.mu {
        let idx = lookup(label)?;
        if m.is_negative() {
            return Err(Error::NegativeEntry(format!("mu[{label}] = {}", format_rational(m))));
        }
        if mu.insert(idx, m.clone()).is_some() {
            return Err(Error::schema(format!("mu.{label}"), "duplicate weight"));
        }
    }
    mu.retain(|_, m: &mut Rational| !m.is_zero());
    let p = HiraiParams { data, a, mu };
    if p.total_mass() > Rational::one() {
        return Err(Error::MassExceedsOne(format_rational(&p.total_mass())));
    }
    Ok(p)
}

impl HiraiParams {
    pub fn data(&self) -> &GroupData {
        &self.data
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.data.group
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.data.irreps
    }

    pub fn a(&self, irrep: usize, eps: u8) -> &[Rational] {
        self.a.get(&(irrep, eps)).map_or(&[], Vec::as_slice)
    }

    pub fn mu(&self, irrep: usize) -> Rational {
        self.mu.get(&irrep).cloned().unwrap_or_else(Rational::zero)
    }

    /// Positive entries ordered by irrep (catalog order), then `eps`, then `i`.
    pub fn entries(&self) -> Vec<Entry<'_>> {
        self.a
            .iter()
            .flat_map(|(&(irrep, eps), list)| {
                list.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(i, value)| Entry { irrep, eps, i, value })
            })
            .collect()
    }

    /// `sum ||a[zeta, eps]||`.
    pub fn a_mass(&self) -> Rational {
        self.a.values().flatten().fold(Rational::zero(), |s, x| s + x)
    }

    pub fn total_mass(&self) -> Rational {
        self.mu.values().fold(self.a_mass(), |s, x| s + x)
    }

    pub fn deficit(&self) -> Rational {
        Rational::one() - self.total_mass()
    }

    /// Back to label form, lists and weights in catalog order.
    pub fn to_raw(&self) -> RawParams {
        let label = |i: usize| self.data.irreps[i].label.clone();
        RawParams {
            a: self.a.iter().map(|(&(i, e), l)| (label(i), e, l.clone())).collect(),
            mu: self.mu.iter().map(|(&i, m)| (label(i), m.clone())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YbAdmissibility {
    pub verdict: bool,
    pub minimal_d: Option<u64>,
    pub violations: Vec<String>,
}

/// Yang-Baxter admissibility: finitely many non-zero entries and rational
/// values hold for every file-borne parameter set, leaving `mu = 0` and
/// `sum ||a|| = 1` to check. `minimal_d` is the least `d` making every
/// `d a / dim zeta` integral.
pub fn is_yb_admissible(p: &HiraiParams) -> YbAdmissibility {
    let mut violations = Vec::new();
    if !p.mu.is_empty() {
        violations.push("mu_nonzero".to_string());
    }
    if !p.a_mass().is_one() {
        violations.push("mass_not_one".to_string());
    }
    let mut minimal_d = None;
    if violations.is_empty() {
        let lcm = p.entries().iter().fold(num_bigint::BigInt::one(), |acc, e| {
            let x = e.value / int(p.irreps()[e.irrep].dim as i64);
            acc.lcm(x.denom())
        });
        minimal_d = lcm.to_u64();
        if minimal_d.is_none() {
            violations.push("d_overflow".to_string());
        }
    }
    YbAdmissibility {
        verdict: violations.is_empty(),
        minimal_d,
        violations,
    }
}

/// `chi_eps` on a cycle of length `len`: `1` for `eps = 0`, else the sign.
pub fn sign_character(len: usize, eps: u8) -> Rational {
    if eps == 0 || len % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Product over the standard decomposition: each elementary part `(q, t)`
/// contributes `sum_zeta (sum_{eps,i} a/dim + mu/dim) chi_zeta(t)`, each
/// cyclic part of length `l` with colour product `P` contributes
/// `sum_zeta (sum_{eps,i} (a/dim)^l chi_eps) chi_zeta(P)`.
pub fn closed_form_character(p: &HiraiParams, g: &WreathElement) -> Result<CycloScalar> {
    if !same_group(p.group(), g.group()) {
        return Err(Error::GroupMismatch);
    }
    let dec = g.standard_decomposition();
    let irreps = p.irreps();
    let dims: Vec<Rational> = irreps.iter().map(|z| int(z.dim as i64)).collect();

    let mut out = CycloScalar::one();
    if !dec.elementary.is_empty() {
        let weight: Vec<Rational> = (0..irreps.len())
            .map(|z| {
                let a: Rational = (0..2).flat_map(|e| p.a(z, e)).fold(Rational::zero(), |s, x| s + x);
                (a + p.mu(z)) / &dims[z]
            })
            .collect();
        for &(_, t) in &dec.elementary {
            out = &out * &weighted_character(irreps, &weight, t);
        }
    }
    for part in &dec.cyclic {
        let len = part.len();
        let weight: Vec<Rational> = (0..irreps.len())
            .map(|z| {
                (0..2u8).fold(Rational::zero(), |s, e| {
                    let sum = p
                        .a(z, e)
                        .iter()
                        .map(|x| num_traits::pow(x / &dims[z], len))
                        .fold(Rational::zero(), |s, v| s + v);
                    s + sum * sign_character(len, e)
                })
            })
            .collect();
        out = &out * &weighted_character(irreps, &weight, part.product(p.group()));
    }
    Ok(out)
}

fn weighted_character(irreps: &[Irrep], weight: &[Rational], t: usize) -> CycloScalar {
    let mut acc = CycloScalar::zero();
    for (z, w) in irreps.iter().zip(weight) {
        if !w.is_zero() {
            acc += &z.character(t).scale(w);
        }
    }
    acc
}

/// Restriction to `S∞`: each `a[zeta, eps][i] / dim zeta` with multiplicity
/// `dim zeta`, `eps = 0` feeding alpha and `eps = 1` feeding beta.
pub fn thoma_restriction(p: &HiraiParams) -> ThomaParams {
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for e in p.entries() {
        let dim = p.irreps()[e.irrep].dim;
        let x = e.value / int(dim as i64);
        let target = if e.eps == 0 { &mut alpha } else { &mut beta };
        target.extend(std::iter::repeat_n(x, dim));
    }
    ThomaParams::from_unsorted(alpha, beta).expect("restriction of valid parameters is valid")
}
