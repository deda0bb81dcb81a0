//! Builds an extremal Yang-Baxter couple from admissible Hirai parameters:
//! `V = ⊕ V_b (x) W_b` over blocks `b = (zeta, eps, i)` with `dim V_b = dim zeta`
//! and `dim W_b = d a_b / dim zeta`, `R` the boxplus of the signed `V`-flips,
//! and `pi(t) = zeta(t) (x) id` on each block.

use serde::Serialize;

use crate::couple::{certify_couple, YangBaxterCouple};
use crate::cyclo::{int, CycloScalar};
use crate::error::{Error, Result};
use crate::hirai::{closed_form_character, is_yb_admissible, thoma_restriction, HiraiParams};
use crate::matrix::ExactMatrix;
use crate::rmatrix::{extract_thoma, normal_form_from_thoma, verify_rmatrix, RMatrix};
use crate::wreath::WreathElement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub label: String,
    pub irrep: usize,
    pub eps: u8,
    pub i: usize,
    pub dim_v: usize,
    pub dim_w: usize,
    pub offset: usize,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.dim_v * self.dim_w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub d: usize,
    pub w: usize,
    pub blocks: Vec<Block>,
}

pub fn build_layout(p: &HiraiParams, d: usize) -> Result<BlockLayout> {
    let adm = is_yb_admissible(p);
    if !adm.verdict {
        return Err(Error::NotAdmissible(adm.violations.join(", ")));
    }
    let mut blocks = Vec::new();
    let mut bad = Vec::new();
    let mut offset = 0;
    for e in p.entries() {
        let irrep = &p.irreps()[e.irrep];
        let size = e.value * int(d as i64) / int(irrep.dim as i64);
        if !size.is_integer() {
            bad.push(format!("{}[{}][{}]", irrep.label, e.eps, e.i));
            continue;
        }
        let dim_w: usize = size.to_integer().try_into().map_err(|_| Error::NonIntegralBlocks("block too large".into()))?;
        blocks.push(Block {
            label: irrep.label.clone(),
            irrep: e.irrep,
            eps: e.eps,
            i: e.i,
            dim_v: irrep.dim,
            dim_w,
            offset,
        });
        offset += irrep.dim * dim_w;
    }
    if !bad.is_empty() {
        return Err(Error::NonIntegralBlocks(format!("d = {d}: {}", bad.join(", "))));
    }
    debug_assert_eq!(offset, d);
    Ok(BlockLayout { d, w: 1, blocks })
}

/// `v (x) w (x) v' (x) w' -> (-1)^eps v' (x) w (x) v (x) w'`, with block basis
/// index `v * dim_w + w`.
pub fn block_rmatrix(b: &Block) -> ExactMatrix {
    let n = b.dim();
    let sign = CycloScalar::from_int(if b.eps == 0 { 1 } else { -1 });
    let mut m = ExactMatrix::zeros(n * n, n * n);
    for v in 0..b.dim_v {
        for w in 0..b.dim_w {
            for v2 in 0..b.dim_v {
                for w2 in 0..b.dim_w {
                    let col = (v * b.dim_w + w) * n + v2 * b.dim_w + w2;
                    let row = (v2 * b.dim_w + w) * n + v * b.dim_w + w2;
                    m.set(row, col, sign.clone());
                }
            }
        }
    }
    m
}

/// The couple for `p` at dimension `d` (default: the minimal admissible one).
pub fn build_couple(p: &HiraiParams, d: Option<usize>) -> Result<(YangBaxterCouple, BlockLayout)> {
    let adm = is_yb_admissible(p);
    let min_d = match adm.minimal_d {
        Some(m) if adm.verdict => m as usize,
        _ => return Err(Error::NotAdmissible(adm.violations.join(", "))),
    };
    let d = d.unwrap_or(min_d);
    if d == 0 || !d.is_multiple_of(min_d) {
        return Err(Error::NonIntegralBlocks(format!("d = {d} is not a multiple of the minimal d = {min_d}")));
    }
    let layout = build_layout(p, d)?;
    let internal = |what: &str, e: Error| Error::Internal(format!("{what}: {e}"));

    let mut r: Option<RMatrix> = None;
    for b in &layout.blocks {
        let rb = verify_rmatrix(block_rmatrix(b), b.dim()).map_err(|e| internal("block R-matrix", e))?;
        r = Some(match r {
            None => rb,
            Some(acc) => acc.boxplus(&rb)?,
        });
    }
    let r = r.ok_or_else(|| Error::Internal("no blocks".into()))?;

    let irreps = p.irreps();
    let pi: Vec<ExactMatrix> = (0..p.group().order())
        .map(|t| {
            layout
                .blocks
                .iter()
                .map(|b| irreps[b.irrep].images[t].kron(&ExactMatrix::identity(b.dim_w)))
                .reduce(|acc, m| acc.direct_sum(&m))
                .expect("at least one block")
        })
        .collect();
    let couple = certify_couple(p.group().clone(), r, pi, 1).map_err(|e| internal("couple", e))?;
    if let Some((t, col)) = couple.transport_identity()? {
        return Err(Error::Internal(format!("R (pi({t}) x 1) R != 1 x pi({t}) at column {col}")));
    }
    Ok((couple, layout))
}

/// Whether the built `R` is a basis permutation of the normal form: true
/// exactly when every block has `dim zeta = 1`, or `dim W = 1` and `eps = 0`.
pub fn normal_form_comparable(layout: &BlockLayout) -> bool {
    layout.blocks.iter().all(|b| b.dim_v == 1 || (b.dim_w == 1 && b.eps == 0))
}

/// For comparable layouts, the reordering `P` of the basis of `V` with
/// `(P (x) P) R (P (x) P)^T` equal to the normal form of the restricted Thoma
/// parameters: summands sorted by sign, then size descending.
pub fn normal_form_permutation(layout: &BlockLayout) -> Option<Vec<usize>> {
    if !normal_form_comparable(layout) {
        return None;
    }
    // (size, eps, offset) for each +-1 summand
    let mut summands = Vec::new();
    for b in &layout.blocks {
        if b.dim_v == 1 {
            summands.push((b.dim_w, b.eps, b.offset));
        } else {
            summands.extend((0..b.dim_v).map(|k| (1, 0, b.offset + k)));
        }
    }
    summands.sort_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0)));
    let mut perm = vec![0; layout.d];
    let mut next = 0;
    for (size, _, offset) in summands {
        for k in 0..size {
            perm[offset + k] = next;
            next += 1;
        }
    }
    Some(perm)
}

/// Exact comparison of the built `R` with the normal form. `None` when the
/// layout is not comparable.
pub fn matches_normal_form(p: &HiraiParams, couple: &YangBaxterCouple, layout: &BlockLayout) -> Result<Option<bool>> {
    let Some(perm) = normal_form_permutation(layout) else {
        return Ok(None);
    };
    let d = layout.d;
    let nf = normal_form_from_thoma(&thoma_restriction(p), d)?;
    let mut pm = ExactMatrix::zeros(d, d);
    for (from, &to) in perm.iter().enumerate() {
        pm.set(to, from, CycloScalar::one());
    }
    let q = pm.kron(&pm);
    let conj = q.matmul(couple.r().matrix())?.matmul(&q.transpose())?;
    Ok(Some(&conj == nf.matrix()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub index: usize,
    pub element: String,
    pub trace: String,
    pub formula: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EndToEndReport {
    pub d: usize,
    pub samples: usize,
    pub equal: usize,
    pub mismatches: Vec<Mismatch>,
    pub built_thoma: String,
    pub restricted_thoma: String,
    pub thoma_match: bool,
    pub normal_form_match: Option<bool>,
}

impl EndToEndReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.thoma_match && self.normal_form_match != Some(false)
    }
}

/// Builds the couple and compares its trace character with the closed form on
/// every sample, plus the Thoma parameters of `R` with the restriction.
pub fn end_to_end_check(p: &HiraiParams, sample: &[WreathElement], d: Option<usize>) -> Result<EndToEndReport> {
    let (couple, layout) = build_couple(p, d)?;
    end_to_end_with(p, &couple, &layout, sample)
}

pub fn end_to_end_with(
    p: &HiraiParams,
    couple: &YangBaxterCouple,
    layout: &BlockLayout,
    sample: &[WreathElement],
) -> Result<EndToEndReport> {
    let mut mismatches = Vec::new();
    for (index, g) in sample.iter().enumerate() {
        let trace = couple.character(g)?;
        let formula = closed_form_character(p, g)?;
        if trace != formula {
            mismatches.push(Mismatch {
                index,
                element: g.to_string(),
                trace: trace.to_string(),
                formula: formula.to_string(),
            });
        }
    }
    let built = extract_thoma(couple.r())?;
    let restricted = thoma_restriction(p);
    Ok(EndToEndReport {
        d: layout.d,
        samples: sample.len(),
        equal: sample.len() - mismatches.len(),
        mismatches,
        thoma_match: built == restricted,
        built_thoma: built.to_string(),
        restricted_thoma: restricted.to_string(),
        normal_form_match: matches_normal_form(p, couple, layout)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;
    use crate::group::GroupData;
    use crate::hirai::{validate_params, RawParams};
    use crate::matrix::flip_operator;
    use crate::perm::Perm;
    use crate::rmatrix::char_cycle;

    fn params(group: &str, a: &[(&str, u8, (i64, i64))]) -> HiraiParams {
        let raw = RawParams {
            a: a.iter().map(|(l, e, (p, q))| (l.to_string(), *e, vec![rat(*p, *q)])).collect(),
            mu: vec![],
        };
        validate_params(GroupData::catalog(group).unwrap(), &raw).unwrap()
    }

    fn block(dim_v: usize, dim_w: usize, eps: u8) -> Block {
        Block {
            label: "x".into(),
            irrep: 0,
            eps,
            i: 0,
            dim_v,
            dim_w,
            offset: 0,
        }
    }

    #[test]
    fn layouts() {
        let l = build_layout(&params("z2", &[("triv", 0, (1, 2)), ("sgn", 0, (1, 2))]), 2).unwrap();
        assert_eq!(l.blocks.iter().map(|b| (b.dim_v, b.dim_w)).collect::<Vec<_>>(), vec![(1, 1), (1, 1)]);
        let l = build_layout(&params("s3", &[("std", 0, (1, 1))]), 2).unwrap();
        assert_eq!(l.blocks.iter().map(|b| (b.dim_v, b.dim_w)).collect::<Vec<_>>(), vec![(2, 1)]);
        let p = params("s3", &[("triv", 0, (1, 2)), ("std", 0, (1, 2))]);
        let l = build_layout(&p, 4).unwrap();
        assert_eq!(l.blocks.iter().map(|b| (b.dim_v, b.dim_w, b.offset)).collect::<Vec<_>>(), vec![(1, 2, 0), (2, 1, 2)]);
        assert!(matches!(build_layout(&p, 2), Err(Error::NonIntegralBlocks(_))));
        let partial = params("z2", &[("triv", 0, (1, 2))]);
        assert!(matches!(build_layout(&partial, 2), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn block_matrices() {
        assert_eq!(block_rmatrix(&block(1, 1, 0)), ExactMatrix::identity(1));
        assert_eq!(block_rmatrix(&block(1, 2, 1)), ExactMatrix::identity(4).neg());
        assert_eq!(block_rmatrix(&block(2, 1, 0)), flip_operator(2, 2));
        let r = verify_rmatrix(block_rmatrix(&block(1, 2, 1)), 2).unwrap();
        assert_eq!(extract_thoma(&r).unwrap().beta(), &[rat(1, 1)]);
        let r = verify_rmatrix(block_rmatrix(&block(2, 1, 0)), 2).unwrap();
        assert_eq!(extract_thoma(&r).unwrap().alpha(), &[rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn trivial_group_couple() {
        let (c, _) = build_couple(&params("trivial", &[("triv", 0, (1, 1))]), None).unwrap();
        assert!(c.r().matrix().is_identity());
        for n in 2..5 {
            assert!(char_cycle(c.r(), n).unwrap() == rat(1, 1));
        }
    }

    #[test]
    fn z2_couple() {
        let p = params("z2", &[("triv", 0, (1, 2)), ("sgn", 0, (1, 2))]);
        let (c, layout) = build_couple(&p, None).unwrap();
        assert_eq!(c.r().matrix(), &flip_operator(2, 2));
        let g = p.group().clone();
        let xi = WreathElement::elementary(g.clone(), 1, 1).unwrap();
        assert!(c.character(&xi).unwrap().is_zero());
        let x = WreathElement::new(g.clone(), [(1, 1), (2, 1)].into(), Perm::adjacent(1)).unwrap();
        let rep = end_to_end_with(&p, &c, &layout, &[WreathElement::identity(g), x]).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.normal_form_match, Some(true));
        assert_eq!(c.character(&rep_sample_x(&p)).unwrap(), CycloScalar::rational(rat(1, 2)));
    }

    fn rep_sample_x(p: &HiraiParams) -> WreathElement {
        WreathElement::new(p.group().clone(), [(1, 1), (2, 1)].into(), Perm::adjacent(1)).unwrap()
    }

    #[test]
    fn s3_std_couple() {
        let p = params("s3", &[("std", 0, (1, 1))]);
        let (c, _) = build_couple(&p, None).unwrap();
        assert_eq!(c.r().matrix(), &flip_operator(2, 2));
        for n in 2..6u32 {
            assert_eq!(char_cycle(c.r(), n).unwrap(), rat(2, 1) * num_traits::pow(rat(1, 2), n as usize));
        }
        // r is a 3-cycle in the catalog S3 (index 1)
        let xi = WreathElement::elementary(p.group().clone(), 1, 1).unwrap();
        assert_eq!(c.character(&xi).unwrap(), CycloScalar::rational(rat(-1, 2)));
    }

    #[test]
    fn larger_d_and_mixed_signs() {
        let p = params("z3", &[("triv", 0, (1, 3)), ("chi1", 1, (1, 3)), ("chi2", 0, (1, 3))]);
        let (c, layout) = build_couple(&p, Some(6)).unwrap();
        assert_eq!(c.d(), 6);
        let g = p.group().clone();
        let x = WreathElement::new(g.clone(), [(1, 1), (3, 2)].into(), Perm::from_cycles(&[vec![1, 3, 2]]).unwrap()).unwrap();
        let rep = end_to_end_with(&p, &c, &layout, &[x]).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(matches!(build_couple(&p, Some(4)), Err(Error::NonIntegralBlocks(_))));
    }

    #[test]
    fn normal_form_not_permutation_equivalent_for_signed_flips() {
        // a 2-dim irrep with eps = 1 gives -flip, which no basis reordering turns
        // into the normal form (-1) ⊞ (-1)
        let p = params("s3", &[("std", 1, (1, 1))]);
        let (c, layout) = build_couple(&p, None).unwrap();
        assert!(!normal_form_comparable(&layout));
        assert_eq!(c.r().matrix(), &flip_operator(2, 2).neg());
        let nf = normal_form_from_thoma(&thoma_restriction(&p), 2).unwrap();
        assert_ne!(c.r().matrix(), nf.matrix());
        let rep = end_to_end_with(&p, &c, &layout, &[]).unwrap();
        assert!(rep.thoma_match && rep.normal_form_match.is_none());
    }
}
