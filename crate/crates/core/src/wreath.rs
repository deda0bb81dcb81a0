//! Elements of the wreath product `G = T ≀ S∞`, their standard decomposition,
//! and the complete conjugacy invariant.
//!
//! An element is a pair `(d, sigma)` of a finitely supported colouring
//! `d: positions -> T` and a finitely supported permutation. Positions are
//! 1-based. The product is `(d, sigma)(d', sigma') = (d · sigma(d'), sigma sigma')`
//! where `sigma(d')_i = d'_(sigma^-1(i))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Perm;
use crate::rng::Lcg64;

#[derive(Clone, Debug)]
pub struct WreathElement {
    group: Arc<FiniteGroup>,
    colors: BTreeMap<usize, usize>,
    perm: Perm,
}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for WreathElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.colors == other.colors && self.perm == other.perm
    }
}

impl Eq for WreathElement {}

impl WreathElement {
    /// Identity colours are dropped; positions must be >= 1.
    pub fn new(group: Arc<FiniteGroup>, colors: BTreeMap<usize, usize>, perm: Perm) -> Result<Self> {
        if let Some((&p, &t)) = colors.iter().find(|(&p, &t)| p == 0 || t >= group.order()) {
            return Err(Error::InvalidElement(format!(
                "colour {t} at position {p} (positions are 1-based, group order {})",
                group.order()
            )));
        }
        let colors = colors.into_iter().filter(|&(_, t)| t != 0).collect();
        Ok(WreathElement { group, colors, perm })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        WreathElement {
            group,
            colors: BTreeMap::new(),
            perm: Perm::identity(),
        }
    }

    /// `((t at pos), id)`.
    pub fn elementary(group: Arc<FiniteGroup>, pos: usize, t: usize) -> Result<Self> {
        Self::new(group, BTreeMap::from([(pos, t)]), Perm::identity())
    }

    pub fn from_perm(group: Arc<FiniteGroup>, perm: Perm) -> Self {
        WreathElement {
            group,
            colors: BTreeMap::new(),
            perm,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn colors(&self) -> &BTreeMap<usize, usize> {
        &self.colors
    }

    pub fn color(&self, pos: usize) -> usize {
        self.colors.get(&pos).copied().unwrap_or(0)
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.colors.is_empty() && self.perm.is_identity()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        let mut s = self.perm.support();
        s.extend(self.colors.keys());
        s
    }

    /// Largest position in the support, 0 for the identity.
    pub fn max_support(&self) -> usize {
        self.support().into_iter().next_back().unwrap_or(0)
    }

    pub fn multiply(&self, other: &WreathElement) -> Result<WreathElement> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let g = &self.group;
        let mut colors = self.colors.clone();
        for (&p, &t) in &other.colors {
            let q = self.perm.apply(p);
            let cur = colors.get(&q).copied().unwrap_or(0);
            colors.insert(q, g.mul(cur, t));
        }
        colors.retain(|_, t| *t != 0);
        Ok(WreathElement {
            group: self.group.clone(),
            colors,
            perm: self.perm.compose(&other.perm),
        })
    }

    /// `(sigma^-1(d^-1), sigma^-1)`.
    pub fn inverse(&self) -> WreathElement {
        let inv = self.perm.inverse();
        let colors = self
            .colors
            .iter()
            .map(|(&p, &t)| (inv.apply(p), self.group.inv(t)))
            .collect();
        WreathElement {
            group: self.group.clone(),
            colors,
            perm: inv,
        }
    }

    /// `h g h^-1`.
    pub fn conjugate_by(&self, h: &WreathElement) -> Result<WreathElement> {
        h.multiply(self)?.multiply(&h.inverse())
    }

    pub fn standard_decomposition(&self) -> StandardDecomposition {
        let cycles = self.perm.cycles();
        let moved = self.perm.support();
        let elementary = self
            .colors
            .iter()
            .filter(|(p, _)| !moved.contains(p))
            .map(|(&p, &t)| (p, t))
            .collect();
        let cyclic = cycles
            .into_iter()
            .map(|cycle| {
                let colors = cycle
                    .iter()
                    .filter_map(|p| self.colors.get(p).map(|&t| (*p, t)))
                    .collect();
                CyclicPart { cycle, colors }
            })
            .collect();
        StandardDecomposition { elementary, cyclic }
    }

    pub fn conjugacy_invariant(&self) -> ConjInvariant {
        let dec = self.standard_decomposition();
        let g = &self.group;
        let mut elem_classes: Vec<usize> = dec.elementary.iter().map(|&(_, t)| g.class_rep(t)).collect();
        elem_classes.sort_unstable();
        let mut cycle_data: Vec<(usize, usize)> = dec
            .cyclic
            .iter()
            .map(|c| (c.product_class(g), c.len()))
            .collect();
        cycle_data.sort_unstable();
        ConjInvariant {
            elem_classes,
            cycle_data,
        }
    }

    pub fn is_conjugate(&self, other: &WreathElement) -> Result<bool> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(self.conjugacy_invariant() == other.conjugacy_invariant())
    }

    /// Random element supported in `positions`: a shuffle of the positions
    /// followed by one uniform colour per position, in increasing position order.
    pub fn random_on(group: Arc<FiniteGroup>, rng: &mut Lcg64, positions: &[usize]) -> WreathElement {
        let mut images = positions.to_vec();
        rng.shuffle(&mut images);
        let mut map = BTreeMap::new();
        for (&p, &q) in positions.iter().zip(&images) {
            if p != q {
                map.insert(p, q);
            }
        }
        let perm = Perm::from_map_unchecked(map);
        let order = group.order();
        let colors = positions
            .iter()
            .map(|&p| (p, rng.below(order)))
            .filter(|&(_, t)| t != 0)
            .collect();
        WreathElement { group, colors, perm }
    }

    /// Random element supported in `{1, ..., max_support}`.
    pub fn random(group: Arc<FiniteGroup>, rng: &mut Lcg64, max_support: usize) -> WreathElement {
        let positions: Vec<usize> = (1..=max_support).collect();
        Self::random_on(group, rng, &positions)
    }

    /// Random pair with disjoint supports inside `{1, ..., max_support}`; each
    /// position goes to the first element with probability 1/2.
    pub fn random_disjoint_pair(
        group: Arc<FiniteGroup>,
        rng: &mut Lcg64,
        max_support: usize,
    ) -> (WreathElement, WreathElement) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for p in 1..=max_support {
            if rng.below(2) == 0 {
                left.push(p);
            } else {
                right.push(p);
            }
        }
        let a = Self::random_on(group.clone(), rng, &left);
        let b = Self::random_on(group, rng, &right);
        (a, b)
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let colors: Vec<String> = self.colors.iter().map(|(p, t)| format!("{p}:{t}")).collect();
        write!(f, "({{{}}}, {})", colors.join(", "), self.perm)
    }
}

/// A cycle `(i_1 i_2 ... i_l)` starting at its minimal position, with the
/// colours carried on its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicPart {
    pub cycle: Vec<usize>,
    pub colors: BTreeMap<usize, usize>,
}

impl CyclicPart {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// `t'_l t'_(l-1) ... t'_1` with `t'_k` the colour at `i_k`.
    pub fn product(&self, g: &FiniteGroup) -> usize {
        self.product_from(g, 0)
    }

    /// The same product read from the rotation starting at `cycle[start]`.
    pub fn product_from(&self, g: &FiniteGroup, start: usize) -> usize {
        let l = self.cycle.len();
        (0..l).fold(0, |acc, k| {
            let p = self.cycle[(start + k) % l];
            g.mul(self.colors.get(&p).copied().unwrap_or(0), acc)
        })
    }

    /// Representative of the class `P_sigma(d)`.
    pub fn product_class(&self, g: &FiniteGroup) -> usize {
        g.class_rep(self.product(g))
    }

    pub fn to_element(&self, group: Arc<FiniteGroup>) -> WreathElement {
        WreathElement {
            group,
            colors: self.colors.clone(),
            perm: Perm::from_cycles(std::slice::from_ref(&self.cycle)).expect("cycle of a permutation"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardDecomposition {
    /// Elementary parts `(q, t)`: colour `t` at a fixed point `q`.
    pub elementary: Vec<(usize, usize)>,
    pub cyclic: Vec<CyclicPart>,
}

impl StandardDecomposition {
    pub fn is_empty(&self) -> bool {
        self.elementary.is_empty() && self.cyclic.is_empty()
    }

    /// All parts as group elements, elementary parts first.
    pub fn parts(&self, group: &Arc<FiniteGroup>) -> Vec<WreathElement> {
        let mut out: Vec<WreathElement> = self
            .elementary
            .iter()
            .map(|&(q, t)| WreathElement::elementary(group.clone(), q, t).expect("valid part"))
            .collect();
        out.extend(self.cyclic.iter().map(|c| c.to_element(group.clone())));
        out
    }

    pub fn recompose(&self, group: &Arc<FiniteGroup>) -> WreathElement {
        self.parts(group)
            .iter()
            .fold(WreathElement::identity(group.clone()), |acc, p| {
                acc.multiply(p).expect("same group")
            })
    }
}

/// Complete conjugacy invariant: sorted class representatives of the
/// elementary colours and sorted `(class of P_sigma_j(d_j), length)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjInvariant {
    pub elem_classes: Vec<usize>,
    pub cycle_data: Vec<(usize, usize)>,
}

impl ConjInvariant {
    pub fn is_empty(&self) -> bool {
        self.elem_classes.is_empty() && self.cycle_data.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load_group;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(load_group("s3").unwrap())
    }

    fn elt(g: &Arc<FiniteGroup>, colors: &[(usize, usize)], cycles: &[Vec<usize>]) -> WreathElement {
        WreathElement::new(g.clone(), colors.iter().copied().collect(), Perm::from_cycles(cycles).unwrap()).unwrap()
    }

    #[test]
    fn products_and_inverses() {
        let g = Arc::new(load_group("z3").unwrap());
        let a = elt(&g, &[(1, 1)], &[]);
        let b = elt(&g, &[(1, 2)], &[]);
        assert!(a.multiply(&b).unwrap().is_identity());
        assert_eq!(a.multiply(&WreathElement::identity(g.clone())).unwrap(), a);
        assert_eq!(a.inverse(), b);
        // (d, sigma)^2 = (d sigma(d), sigma^2): colours {1: t, 2: t}
        let c = elt(&g, &[(1, 1)], &[vec![1, 2]]);
        let sq = c.multiply(&c).unwrap();
        assert_eq!(sq, elt(&g, &[(1, 1), (2, 1)], &[]));
        let other = Arc::new(load_group("z2").unwrap());
        assert_eq!(a.multiply(&WreathElement::identity(other)), Err(Error::GroupMismatch));
    }

    #[test]
    fn decomposition_example() {
        let g = s3();
        let x = elt(&g, &[(1, 3), (5, 4)], &[vec![1, 2, 3], vec![6, 7]]);
        let dec = x.standard_decomposition();
        assert_eq!(dec.elementary, vec![(5, 4)]);
        assert_eq!(dec.cyclic.len(), 2);
        assert_eq!(dec.cyclic[0].cycle, vec![1, 2, 3]);
        assert_eq!(dec.cyclic[0].colors, BTreeMap::from([(1, 3)]));
        assert!(dec.cyclic[1].colors.is_empty());
        assert_eq!(dec.recompose(&g), x);
        assert!(WreathElement::identity(g.clone()).standard_decomposition().is_empty());
    }

    #[test]
    fn cycle_products() {
        let z2 = Arc::new(load_group("z2").unwrap());
        let p = CyclicPart { cycle: vec![1, 2], colors: BTreeMap::from([(1, 1), (2, 1)]) };
        assert_eq!(p.product_class(&z2), 0);
        let g = s3();
        // indices 3..6 are reflections in S3
        let part = CyclicPart { cycle: vec![1, 3, 2], colors: BTreeMap::from([(1, 3), (3, 4)]) };
        let classes: BTreeSet<usize> = (0..3).map(|s| g.class_rep(part.product_from(&g, s))).collect();
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn lemma_normalization() {
        let g = s3();
        // a cyclic element is conjugate to the one carrying the single colour P
        let x = elt(&g, &[(1, 3), (2, 4), (3, 1)], &[vec![1, 2, 3]]);
        let p = x.standard_decomposition().cyclic[0].product(&g);
        let y = elt(&g, &[(3, p)], &[vec![1, 2, 3]]);
        assert_eq!(x.conjugacy_invariant(), y.conjugacy_invariant());
        let a = elt(&g, &[(1, 1)], &[]);
        let b = elt(&g, &[(7, g.conjugate(3, 1))], &[]);
        assert!(a.is_conjugate(&b).unwrap());
    }

    #[test]
    fn random_elements_respect_support() {
        let g = s3();
        let mut rng = Lcg64::new(1);
        for _ in 0..20 {
            let x = WreathElement::random(g.clone(), &mut rng, 5);
            assert!(x.max_support() <= 5);
            let (a, b) = WreathElement::random_disjoint_pair(g.clone(), &mut rng, 6);
            assert!(a.support().is_disjoint(&b.support()));
        }
    }
}
