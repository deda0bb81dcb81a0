//! Involutive R-matrices, the boxplus composition, normal forms, Yang-Baxter
//! representations of the symmetric groups and Thoma-parameter extraction.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyclo::{format_rational, int, rat, CycloScalar, Rational};
use crate::error::{Error, Result};
use crate::matrix::{amplify, flip_operator, ExactMatrix, SparseOperator, TensorIndex};
use crate::perm::Perm;

/// A certified involutive unitary solution of the Yang-Baxter equation on
/// `V (x) V` with `dim V = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    d: usize,
    m: ExactMatrix,
}

impl RMatrix {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.m
    }

    pub fn boxplus(&self, other: &RMatrix) -> Result<RMatrix> {
        let raw = boxplus_raw(&self.m, self.d, &other.m, other.d);
        verify_rmatrix(raw, self.d + other.d)
            .map_err(|e| Error::Internal(format!("boxplus lost certification: {e}")))
    }
}

/// Checks involutivity, unitarity and the braid relation exactly.
pub fn verify_rmatrix(m: ExactMatrix, d: usize) -> Result<RMatrix> {
    if d == 0 || m.rows() != d * d || m.cols() != d * d {
        return Err(Error::DimensionMismatch(format!(
            "R-matrix for d = {d} must be {0}x{0}, got {1}x{2}",
            d * d,
            m.rows(),
            m.cols()
        )));
    }
    let sq = m.matmul(&m)?;
    if let Some(w) = sq.first_differing_column(&ExactMatrix::identity(d * d)) {
        return Err(Error::NotInvolutive { witness: w });
    }
    let uu = m.dagger().matmul(&m)?;
    if let Some(w) = uu.first_differing_column(&ExactMatrix::identity(d * d)) {
        return Err(Error::NotUnitary { witness: w });
    }
    let layout = TensorIndex::new(vec![d, d, d]);
    let r12 = amplify(&m, &layout, 0, 2)?;
    let r23 = amplify(&m, &layout, 1, 3)?;
    let lhs = r12.matmul(&r23)?.matmul(&r12)?;
    let rhs = r23.matmul(&r12)?.matmul(&r23)?;
    if let Some(w) = lhs.first_differing_column(&rhs) {
        return Err(Error::YbeFails { witness: w });
    }
    Ok(RMatrix { d, m })
}

/// `X ⊞ Y` on `(V ⊕ W)^(x)2`, V basis first: acts as `X` on `V (x) V`, as `Y`
/// on `W (x) W` and as the flip on the mixed tensors.
pub fn boxplus_raw(x: &ExactMatrix, dx: usize, y: &ExactMatrix, dy: usize) -> ExactMatrix {
    let dd = dx + dy;
    let mut out = ExactMatrix::zeros(dd * dd, dd * dd);
    for (i, j, v) in x.nonzeros() {
        let (a, b) = (i / dx, i % dx);
        let (c, e) = (j / dx, j % dx);
        out.set(a * dd + b, c * dd + e, v.clone());
    }
    for (i, j, v) in y.nonzeros() {
        let (a, b) = (dx + i / dy, dx + i % dy);
        let (c, e) = (dx + j / dy, dx + j % dy);
        out.set(a * dd + b, c * dd + e, v.clone());
    }
    for a in 0..dd {
        for b in 0..dd {
            if (a < dx) != (b < dx) {
                out.set(b * dd + a, a * dd + b, CycloScalar::one());
            }
        }
    }
    out
}

/// Thoma parameters `(alpha, beta)` with finitely many positive entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThomaParams {
    alpha: Vec<Rational>,
    beta: Vec<Rational>,
}

impl ThomaParams {
    pub fn new(alpha: Vec<Rational>, beta: Vec<Rational>) -> Result<Self> {
        for (name, list) in [("alpha", &alpha), ("beta", &beta)] {
            if let Some(k) = list.iter().position(|x| !x.is_positive()) {
                return Err(Error::NegativeEntry(format!("{name}[{k}] = {}", format_rational(&list[k]))));
            }
            if list.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::NotNonIncreasing(name.into()));
            }
        }
        let t = ThomaParams { alpha, beta };
        if t.deficit().is_negative() {
            return Err(Error::MassExceedsOne(format_rational(&t.mass())));
        }
        Ok(t)
    }

    /// Sorts both lists and drops zero entries before validating.
    pub fn from_unsorted(mut alpha: Vec<Rational>, mut beta: Vec<Rational>) -> Result<Self> {
        alpha.retain(|x| !x.is_zero());
        beta.retain(|x| !x.is_zero());
        alpha.sort_by(|a, b| b.cmp(a));
        beta.sort_by(|a, b| b.cmp(a));
        Self::new(alpha, beta)
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Rational] {
        &self.beta
    }

    pub fn mass(&self) -> Rational {
        self.alpha.iter().chain(&self.beta).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn deficit(&self) -> Rational {
        Rational::one() - self.mass()
    }

    /// Least `d` with every `d alpha_i`, `d beta_i` integral.
    pub fn common_denominator(&self) -> BigInt {
        self.alpha
            .iter()
            .chain(&self.beta)
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Membership in the Yang-Baxter subset: finite lists, zero deficit, and
    /// (automatically for finite rational lists) a common denominator.
    pub fn is_yb_type(&self) -> bool {
        self.deficit().is_zero()
    }

    /// `sum alpha_i^n + (-1)^(n-1) sum beta_i^n`.
    pub fn cycle_value(&self, n: u32) -> Rational {
        let pw = |x: &Rational| num_traits::pow(x.clone(), n as usize);
        let a: Rational = self.alpha.iter().map(pw).fold(Rational::zero(), |s, v| s + v);
        let b: Rational = self.beta.iter().map(pw).fold(Rational::zero(), |s, v| s + v);
        if n % 2 == 1 {
            a + b
        } else {
            a - b
        }
    }

    /// Parameters of `R ⊞ R'` for `R` on dimension `d` and `R'` on `d_other`.
    pub fn merge(&self, d: usize, other: &ThomaParams, d_other: usize) -> ThomaParams {
        let total = (d + d_other) as i64;
        let w = rat(d as i64, total);
        let w2 = rat(d_other as i64, total);
        let alpha = self.alpha.iter().map(|x| x * &w).chain(other.alpha.iter().map(|x| x * &w2)).collect();
        let beta = self.beta.iter().map(|x| x * &w).chain(other.beta.iter().map(|x| x * &w2)).collect();
        ThomaParams::from_unsorted(alpha, beta).expect("merge of valid parameters is valid")
    }
}

impl fmt::Display for ThomaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(", ");
        write!(f, "alpha = [{}], beta = [{}]", show(&self.alpha), show(&self.beta))
    }
}

/// Integer block sizes `d x` for every entry, or the offending entries.
fn block_sizes(t: &ThomaParams, d: usize) -> Result<Vec<(usize, bool)>> {
    let dd = int(d as i64);
    let mut bad = Vec::new();
    let mut blocks = Vec::new();
    for (name, list, neg) in [("alpha", t.alpha(), false), ("beta", t.beta(), true)] {
        for (i, x) in list.iter().enumerate() {
            let k = x * &dd;
            if k.is_integer() {
                blocks.push((k.to_integer().try_into().unwrap_or(usize::MAX), neg));
            } else {
                bad.push(format!("{name}[{i}] = {}", format_rational(x)));
            }
        }
    }
    if !bad.is_empty() {
        return Err(Error::NonIntegralBlocks(format!("d = {d}: {}", bad.join(", "))));
    }
    Ok(blocks)
}

/// `N = (⊞_i 1_{d alpha_i}) ⊞ (⊞_i (-1_{d beta_i}))` on dimension `d`.
pub fn normal_form_from_thoma(t: &ThomaParams, d: usize) -> Result<RMatrix> {
    let blocks = block_sizes(t, d)?;
    let total: usize = blocks.iter().map(|(k, _)| k).sum();
    if total != d || !t.is_yb_type() {
        return Err(Error::NotYangBaxterType(format!(
            "block sizes sum to {total}, expected {d} ({t})"
        )));
    }
    let (mut acc, mut dim) = (None::<ExactMatrix>, 0usize);
    for (k, neg) in blocks {
        let id = ExactMatrix::identity(k * k);
        let block = if neg { id.neg() } else { id };
        acc = Some(match acc {
            None => block,
            Some(m) => boxplus_raw(&m, dim, &block, k),
        });
        dim += k;
    }
    let m = acc.ok_or_else(|| Error::NotYangBaxterType("no blocks".into()))?;
    verify_rmatrix(m, d).map_err(|e| Error::Internal(format!("normal form failed certification: {e}")))
}

/// Cache of amplified copies of one R-matrix inside a fixed tensor layout.
pub(crate) struct Amplifier<'a> {
    r: &'a RMatrix,
    layout: TensorIndex,
    offset: usize,
    cache: HashMap<usize, SparseOperator>,
}

impl<'a> Amplifier<'a> {
    /// `offset` is the factor index of position 1 inside `layout`.
    pub(crate) fn new(r: &'a RMatrix, layout: TensorIndex, offset: usize) -> Self {
        Amplifier {
            r,
            layout,
            offset,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn levels(&self) -> usize {
        self.layout.dims().len() - self.offset
    }

    /// `R_i`, acting on positions `i, i+1`.
    pub(crate) fn generator(&mut self, i: usize) -> Result<&SparseOperator> {
        if !self.cache.contains_key(&i) {
            let start = self.offset + i - 1;
            let op = amplify(self.r.matrix(), &self.layout, start, start + 2)?;
            self.cache.insert(i, op);
        }
        Ok(&self.cache[&i])
    }

    pub(crate) fn word(&mut self, word: &[usize]) -> Result<SparseOperator> {
        let mut acc = SparseOperator::identity(self.layout.total());
        for &i in word {
            let g = self.generator(i)?;
            acc = acc.matmul(g)?;
        }
        Ok(acc)
    }

    pub(crate) fn perm(&mut self, sigma: &Perm) -> Result<SparseOperator> {
        if sigma.max_moved() > self.levels() {
            return Err(Error::SupportExceedsLevel {
                level: self.levels(),
                detail: format!("permutation {sigma}"),
            });
        }
        self.word(&sigma.bubble_word())
    }
}

/// `rho_R(sigma)` on `V^(x)n` via the bubble-sort generator word.
pub fn yb_rep_perm(r: &RMatrix, sigma: &Perm, n: usize) -> Result<SparseOperator> {
    if n == 0 || sigma.max_moved() > n {
        return Err(Error::SupportExceedsLevel {
            level: n,
            detail: format!("permutation {sigma}"),
        });
    }
    Amplifier::new(r, TensorIndex::new(vec![r.dim(); n]), 0).perm(sigma)
}

/// Same as [`yb_rep_perm`] but along an explicit generator word.
pub fn yb_rep_word(r: &RMatrix, word: &[usize], n: usize) -> Result<SparseOperator> {
    if let Some(&i) = word.iter().find(|&&i| i == 0 || i >= n) {
        return Err(Error::SupportExceedsLevel {
            level: n,
            detail: format!("generator s_{i}"),
        });
    }
    Amplifier::new(r, TensorIndex::new(vec![r.dim(); n]), 0).word(word)
}

/// Partial trace map `X -> Tr_2[R (1 (x) X)]` on `End(V)`.
fn transfer(r: &RMatrix, x: &ExactMatrix) -> ExactMatrix {
    let d = r.dim();
    let m = r.matrix();
    let mut out = ExactMatrix::zeros(d, d);
    for (row, col, v) in m.nonzeros() {
        let (a, b) = (row / d, row % d);
        let (c, e) = (col / d, col % d);
        let xe = x.get(e, b);
        if !xe.is_zero() {
            let cur = out.get(a, c).clone();
            out.set(a, c, &cur + &(v * xe));
        }
    }
    out
}

/// Normalized trace `tau(rho_R(c_n))` of the long cycle `c_n = s_1 ... s_(n-1)`.
///
/// Uses `Tr(R_1 ... R_(n-1)) = Tr(T^(n-1)(1))` where `T` is the partial-trace
/// transfer map, so the cost is independent of `n`-fold tensor powers.
pub fn char_cycle(r: &RMatrix, n: u32) -> Result<Rational> {
    let d = r.dim();
    let mut x = ExactMatrix::identity(d);
    for _ in 1..n.max(1) {
        x = transfer(r, &x);
    }
    let t = x.trace()?;
    let q = t
        .as_rational()
        .ok_or_else(|| Error::Internal(format!("cycle trace {t} is not rational")))?;
    Ok(q / num_traits::pow(int(d as i64), n as usize))
}

/// [`char_cycle`] computed the long way, as the trace of the sparse operator
/// `rho_R(c_n)` on `V^(x)n`.
pub fn char_cycle_by_trace(r: &RMatrix, n: u32) -> Result<Rational> {
    let n = n.max(1) as usize;
    let op = yb_rep_perm(r, &Perm::long_cycle(n), n)?;
    let t = op.trace();
    let q = t
        .as_rational()
        .ok_or_else(|| Error::Internal(format!("cycle trace {t} is not rational")))?;
    Ok(q / num_traits::pow(int(r.dim() as i64), n))
}

/// Integer partitions of `n` in non-increasing part order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All Thoma parameters `(lambda/d, mu/d)` with `|lambda| + |mu| = d`.
pub fn yb_candidates(d: usize) -> Vec<ThomaParams> {
    let dd = d as i64;
    let scale = |p: &Vec<usize>| p.iter().map(|&x| rat(x as i64, dd)).collect::<Vec<_>>();
    let mut out = Vec::new();
    for k in (0..=d).rev() {
        for lam in partitions(k) {
            for mu in partitions(d - k) {
                out.push(ThomaParams::new(scale(&lam), scale(&mu)).expect("partition pair is valid"));
            }
        }
    }
    out
}

/// Recovers the Thoma parameters of a certified R-matrix by matching
/// `char_cycle(r, n)`, `2 <= n <= 2d+1`, against every partition-pair candidate.
pub fn extract_thoma(r: &RMatrix) -> Result<ThomaParams> {
    let d = r.dim();
    let ns: Vec<u32> = (2..=(2 * d as u32 + 1)).collect();
    let values: Vec<Rational> = ns.iter().map(|&n| char_cycle(r, n)).collect::<Result<_>>()?;
    let mut found: Option<ThomaParams> = None;
    for cand in yb_candidates(d) {
        if ns.iter().zip(&values).all(|(&n, v)| &cand.cycle_value(n) == v) {
            if let Some(prev) = &found {
                return Err(Error::AmbiguousMatch(prev.to_string(), cand.to_string()));
            }
            found = Some(cand);
        }
    }
    found.ok_or(Error::NoMatch)
}

/// Named R-matrices used by tests and the CLI: every normal form with
/// `d <= max_d`, negated flips, and two non-monomial conjugates of `(+1) ⊞ (-1)`.
pub fn rmatrix_catalog(max_d: usize) -> Vec<(String, RMatrix)> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        for t in yb_candidates(d) {
            let fmt = |v: &[Rational]| v.iter().map(|x| (x * int(d as i64)).to_string()).collect::<Vec<_>>().join(".");
            let name = format!("nf{d}[{}|{}]", fmt(t.alpha()), fmt(t.beta()));
            out.push((name, normal_form_from_thoma(&t, d).expect("candidate normal form")));
        }
        if d >= 2 {
            let m = flip_operator(d, d).neg();
            out.push((format!("negflip{d}"), verify_rmatrix(m, d).expect("negated flip")));
        }
    }
    if max_d >= 2 {
        let pm = boxplus_raw(
            &ExactMatrix::identity(1),
            1,
            &ExactMatrix::identity(1).neg(),
            1,
        );
        let five = int(5).recip();
        let q = |x: i64| CycloScalar::rational(int(x) * &five);
        let i4 = CycloScalar::root_of_unity(4, 1);
        let real = ExactMatrix::from_entries(2, 2, vec![q(3), q(4), q(-4), q(3)]).expect("2x2");
        let complex = ExactMatrix::from_entries(2, 2, vec![q(3), &q(4) * &i4, &q(4) * &i4, q(3)]).expect("2x2");
        for (name, u) in [("rot_pm", real), ("crot_pm", complex)] {
            let uu = u.kron(&u);
            let m = uu.matmul(&pm).and_then(|x| x.matmul(&uu.dagger())).expect("square");
            out.push((name.to_string(), verify_rmatrix(m, 2).expect("conjugated R-matrix")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        rat(a, b)
    }

    fn pm() -> RMatrix {
        let t = ThomaParams::new(vec![q(1, 2)], vec![q(1, 2)]).unwrap();
        normal_form_from_thoma(&t, 2).unwrap()
    }

    #[test]
    fn identity_and_flip_certify() {
        assert!(verify_rmatrix(ExactMatrix::identity(9), 3).is_ok());
        assert!(verify_rmatrix(flip_operator(2, 2), 2).is_ok());
    }

    #[test]
    fn diagonal_sign_fails_ybe() {
        let m = ExactMatrix::diagonal([1, 1, 1, -1].iter().map(|&x| CycloScalar::from_int(x)).collect());
        // brute force: the diagonal braid relation reduces to R_12 = R_23, which
        // fails first on e_0 (x) e_1 (x) e_1 = basis index 3
        assert_eq!(verify_rmatrix(m, 2), Err(Error::YbeFails { witness: 3 }));
    }

    #[test]
    fn non_involutive_and_bad_shape() {
        let m = ExactMatrix::identity(4).neg();
        assert!(verify_rmatrix(m, 2).is_ok());
        let mut m = ExactMatrix::identity(4);
        m.set(0, 0, CycloScalar::from_int(2));
        assert_eq!(verify_rmatrix(m, 2), Err(Error::NotInvolutive { witness: 0 }));
        assert!(matches!(
            verify_rmatrix(ExactMatrix::identity(4), 3),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn boxplus_small_cases() {
        let plus = verify_rmatrix(ExactMatrix::identity(1), 1).unwrap();
        let minus = verify_rmatrix(ExactMatrix::identity(1).neg(), 1).unwrap();
        assert_eq!(plus.boxplus(&plus).unwrap().matrix(), &flip_operator(2, 2));
        let r = plus.boxplus(&minus).unwrap();
        let expect = ExactMatrix::from_ints(4, 4, &[1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, -1]);
        assert_eq!(r.matrix(), &expect);
        assert!(r.matrix().trace().unwrap().is_zero());
        assert_eq!(r, pm());
    }

    #[test]
    fn normal_form_cycle_values() {
        let t = ThomaParams::new(vec![q(1, 2), q(1, 4)], vec![q(1, 4)]).unwrap();
        let n = normal_form_from_thoma(&t, 4).unwrap();
        assert_eq!(n.matrix().rows(), 16);
        assert_eq!(char_cycle(&n, 2).unwrap(), q(1, 4));
        assert_eq!(extract_thoma(&n).unwrap(), t);
        let one = ThomaParams::new(vec![q(1, 1)], vec![]).unwrap();
        assert!(normal_form_from_thoma(&one, 1).unwrap().matrix().is_identity());
    }

    #[test]
    fn normal_form_errors() {
        let t = ThomaParams::new(vec![q(1, 3)], vec![q(2, 3)]).unwrap();
        assert!(matches!(normal_form_from_thoma(&t, 2), Err(Error::NonIntegralBlocks(_))));
        let partial = ThomaParams::new(vec![q(1, 2)], vec![]).unwrap();
        assert!(matches!(normal_form_from_thoma(&partial, 2), Err(Error::NotYangBaxterType(_))));
        assert!(matches!(ThomaParams::new(vec![q(1, 4), q(1, 2)], vec![]), Err(Error::NotNonIncreasing(_))));
        assert!(matches!(ThomaParams::new(vec![q(3, 4)], vec![q(1, 2)]), Err(Error::MassExceedsOne(_))));
    }

    #[test]
    fn cycle_characters() {
        let one = verify_rmatrix(ExactMatrix::identity(1), 1).unwrap();
        let minus = verify_rmatrix(ExactMatrix::identity(1).neg(), 1).unwrap();
        let flip = verify_rmatrix(flip_operator(2, 2), 2).unwrap();
        for n in 2..=6u32 {
            assert_eq!(char_cycle(&one, n).unwrap(), q(1, 1));
            let sign = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(char_cycle(&minus, n).unwrap(), q(sign, 1));
            assert_eq!(char_cycle(&flip, n).unwrap(), q(1, 1 << (n - 1)));
            assert_eq!(char_cycle_by_trace(&flip, n).unwrap(), char_cycle(&flip, n).unwrap());
        }
    }

    #[test]
    fn transfer_route_matches_sparse_trace_on_catalog() {
        for (name, r) in rmatrix_catalog(3) {
            for n in 2..=4u32 {
                assert_eq!(char_cycle(&r, n).unwrap(), char_cycle_by_trace(&r, n).unwrap(), "{name} n={n}");
            }
        }
    }

    #[test]
    fn extraction_examples() {
        let id3 = verify_rmatrix(ExactMatrix::identity(9), 3).unwrap();
        let t = extract_thoma(&id3).unwrap();
        assert_eq!(t.alpha(), &[q(1, 1)]);
        assert!(t.beta().is_empty());
        let t = extract_thoma(&pm()).unwrap();
        assert_eq!((t.alpha(), t.beta()), (&[q(1, 2)][..], &[q(1, 2)][..]));
        assert_eq!(yb_candidates(2).len(), 5);
    }

    #[test]
    fn word_independence_for_three_cycle() {
        let r = pm();
        // (1 2 3) = s1 s2, and also s2 s1 s2 s1 since (s2 s1)^3 = 1
        let a = yb_rep_word(&r, &[1, 2], 3).unwrap();
        let b = yb_rep_word(&r, &[2, 1, 2, 1], 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, yb_rep_perm(&r, &Perm::long_cycle(3), 3).unwrap());
    }

    #[test]
    fn rep_perm_basics() {
        let flip = verify_rmatrix(flip_operator(2, 2), 2).unwrap();
        assert!(yb_rep_perm(&flip, &Perm::identity(), 3).unwrap().is_identity());
        assert_eq!(yb_rep_perm(&flip, &Perm::adjacent(1), 2).unwrap().to_dense(), flip_operator(2, 2));
        assert!(matches!(
            yb_rep_perm(&flip, &Perm::adjacent(3), 3),
            Err(Error::SupportExceedsLevel { .. })
        ));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }
}
