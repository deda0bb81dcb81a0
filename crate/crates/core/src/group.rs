//! Finite groups given by Cayley tables, their conjugacy classes, and exact
//! unitary irreducible representations.
//!
//! Element index 0 is always the identity.

use std::sync::Arc;

use crate::cyclo::{rat, CycloScalar};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<ConjClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl FiniteGroup {
    /// Verifies identity, inverses and associativity of `table`.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!("entry {bad} out of range in row {a}")));
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::NotAGroup(format!("element 0 is not an identity for {a}")));
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0) {
                Some(b) if table[b][a] == 0 => inverses[a] = b,
                _ => return Err(Error::NotAGroup(format!("element {a} has no two-sided inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!("associativity fails for ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            name: name.into(),
            table,
            inverses,
            class_of: Vec::new(),
            classes: Vec::new(),
        };
        g.compute_classes();
        Ok(g)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for t in 0..n {
            if class_of[t] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|s| self.conjugate(s, t)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(ConjClass {
                representative: members[0],
                members,
            });
        }
        self.class_of = class_of;
        self.classes = classes;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `s t s^-1`.
    pub fn conjugate(&self, s: usize, t: usize) -> usize {
        self.mul(self.mul(s, t), self.inv(s))
    }

    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.classes
    }

    /// Index into [`Self::conjugacy_classes`].
    pub fn class_index(&self, t: usize) -> usize {
        self.class_of[t]
    }

    /// Minimal element of the class of `t`.
    pub fn class_rep(&self, t: usize) -> usize {
        self.classes[self.class_of[t]].representative
    }

    /// Exponent of the group (lcm of element orders).
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1usize, |acc, t| {
            let mut k = 1;
            let mut x = t;
            while x != 0 {
                x = self.mul(x, t);
                k += 1;
            }
            num_integer::Integer::lcm(&acc, &k)
        })
    }
}

/// A unitary irreducible representation with exact images per element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irrep {
    pub label: String,
    pub dim: usize,
    pub images: Vec<ExactMatrix>,
}

impl Irrep {
    /// `chi(t) = Tr image(t)`.
    pub fn character(&self, t: usize) -> CycloScalar {
        self.images[t].trace().expect("square image")
    }

    pub fn conductor(&self) -> u32 {
        self.images
            .iter()
            .fold(1u32, |acc, m| num_integer::Integer::lcm(&acc, &m.conductor()))
    }
}

/// Checks the homomorphism property over all pairs, unitarity, and
/// `(1/|T|) sum_t |chi(t)|^2 = 1`.
pub fn verify_irrep(g: &FiniteGroup, rep: Irrep) -> Result<Irrep> {
    if rep.images.len() != g.order() {
        return Err(Error::DimensionMismatch(format!(
            "{} images for a group of order {}",
            rep.images.len(),
            g.order()
        )));
    }
    if let Some(t) = rep.images.iter().position(|m| m.rows() != rep.dim || m.cols() != rep.dim) {
        return Err(Error::DimensionMismatch(format!("image of element {t} is not {0}x{0}", rep.dim)));
    }
    check_homomorphism(g, &rep.images).map_err(|(s, t)| Error::NotHomomorphism(s, t))?;
    if let Some(t) = rep.images.iter().position(|m| !m.is_unitary()) {
        return Err(Error::NotUnitaryImage(t));
    }
    let mut norm = CycloScalar::zero();
    for t in 0..g.order() {
        let c = rep.character(t);
        norm += &(&c * &c.conj());
    }
    let norm = norm.scale(&rat(1, g.order() as i64));
    if !norm.is_one() {
        return Err(Error::NotIrreducible(norm.to_string()));
    }
    Ok(rep)
}

/// First pair `(s, t)` with `image(st) != image(s) image(t)`.
pub(crate) fn check_homomorphism(g: &FiniteGroup, images: &[ExactMatrix]) -> std::result::Result<(), (usize, usize)> {
    for s in 0..g.order() {
        for t in 0..g.order() {
            let prod = images[s].matmul(&images[t]).map_err(|_| (s, t))?;
            if prod != images[g.mul(s, t)] {
                return Err((s, t));
            }
        }
    }
    Ok(())
}

/// Catalog group names accepted by [`load_group`].
pub fn catalog_names() -> Vec<String> {
    let mut v = vec!["trivial".to_string()];
    v.extend((2..=12).map(|n| format!("z{n}")));
    v.extend(["s3", "d4", "q8", "klein4"].map(String::from));
    v
}

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Dihedral group of order `2n`; element `r^a s^e` has index `a + n e`.
fn dihedral_table(n: usize) -> Vec<Vec<usize>> {
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|e| (0..n).map(move |a| (a, e))).collect();
    elems
        .iter()
        .map(|&(a, e)| {
            elems
                .iter()
                .map(|&(b, f)| {
                    // r^a s^e r^b s^f = r^(a + (-1)^e b) s^(e+f)
                    let rot = if e == 0 { (a + b) % n } else { (a + n - b) % n };
                    rot + n * ((e + f) % 2)
                })
                .collect()
        })
        .collect()
}

/// Quaternion units `1, -1, i, -i, j, -j, k, -k` at indices 0..8.
fn quaternion_table() -> Vec<Vec<usize>> {
    // (sign, unit) with unit 0 = 1, 1 = i, 2 = j, 3 = k
    let unit_mul = |u: usize, v: usize| -> (bool, usize) {
        match (u, v) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let decode = |x: usize| (x % 2 == 1, x / 2);
    (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (sa, ua) = decode(a);
                    let (sb, ub) = decode(b);
                    let (s, u) = unit_mul(ua, ub);
                    2 * u + usize::from(sa ^ sb ^ s)
                })
                .collect()
        })
        .collect()
}

fn klein_table() -> Vec<Vec<usize>> {
    (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()
}

/// Loads a catalog group: `trivial`, `z2`..`z12`, `s3`, `d4`, `q8`, `klein4`.
pub fn load_group(name: &str) -> Result<FiniteGroup> {
    let table = match name {
        "trivial" | "z1" => vec![vec![0]],
        "s3" => dihedral_table(3),
        "d4" => dihedral_table(4),
        "q8" => quaternion_table(),
        "klein4" => klein_table(),
        _ => match name.strip_prefix('z').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if (2..=12).contains(&n) => cyclic_table(n),
            _ => return Err(Error::UnknownCatalogName(name.to_string())),
        },
    };
    FiniteGroup::from_table(name, table)
}

fn one_dim(label: &str, values: Vec<CycloScalar>) -> Irrep {
    Irrep {
        label: label.to_string(),
        dim: 1,
        images: values.into_iter().map(|v| ExactMatrix::diagonal(vec![v])).collect(),
    }
}

fn sign(b: bool) -> CycloScalar {
    CycloScalar::from_int(if b { -1 } else { 1 })
}

fn dihedral_irreps(n: usize) -> Vec<Irrep> {
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|e| (0..n).map(move |a| (a, e))).collect();
    let mut out = vec![
        one_dim("triv", vec![CycloScalar::one(); 2 * n]),
        one_dim("sgn", elems.iter().map(|&(_, e)| sign(e == 1)).collect()),
    ];
    if n.is_multiple_of(2) {
        out.push(one_dim("rsgn", elems.iter().map(|&(a, _)| sign(a % 2 == 1)).collect()));
        out.push(one_dim("rssgn", elems.iter().map(|&(a, e)| sign((a + e) % 2 == 1)).collect()));
    }
    let swap = ExactMatrix::from_ints(2, 2, &[0, 1, 1, 0]);
    for k in 1..=(n - 1) / 2 {
        let rot = |a: usize| {
            ExactMatrix::diagonal(vec![
                CycloScalar::root_of_unity(n as u32, (k * a) as i64),
                CycloScalar::root_of_unity(n as u32, -((k * a) as i64)),
            ])
        };
        let images = elems
            .iter()
            .map(|&(a, e)| if e == 0 { rot(a) } else { rot(a).matmul(&swap).expect("2x2") })
            .collect();
        let label = if n == 3 { "std".to_string() } else { format!("rho{k}") };
        out.push(Irrep { label, dim: 2, images });
    }
    out
}

fn quaternion_irreps() -> Vec<Irrep> {
    let units = [0usize, 0, 1, 1, 2, 2, 3, 3];
    let neg = |x: usize| x % 2 == 1;
    // unit characters: kernel contains the named unit
    let chars = [("triv", [1, 1, 1, 1]), ("chi_i", [1, 1, -1, -1]), ("chi_j", [1, -1, 1, -1]), ("chi_k", [1, -1, -1, 1])];
    let mut out: Vec<Irrep> = chars
        .iter()
        .map(|(label, v)| one_dim(label, units.iter().map(|&u| CycloScalar::from_int(v[u])).collect()))
        .collect();
    let i = CycloScalar::root_of_unity(4, 1);
    let mi = -&i;
    let z = CycloScalar::zero;
    let one = CycloScalar::one;
    let unit_images = [
        ExactMatrix::identity(2),
        ExactMatrix::diagonal(vec![i.clone(), mi.clone()]),
        ExactMatrix::from_entries(2, 2, vec![z(), -one(), one(), z()]).expect("2x2"),
        ExactMatrix::from_entries(2, 2, vec![z(), mi.clone(), mi, z()]).expect("2x2"),
    ];
    let images = (0..8)
        .map(|x| {
            let m = unit_images[units[x]].clone();
            if neg(x) {
                m.neg()
            } else {
                m
            }
        })
        .collect();
    out.push(Irrep {
        label: "h".to_string(),
        dim: 2,
        images,
    });
    out
}

/// The catalog's complete list of unitary irreps for a catalog group.
pub fn catalog_irreps(g: &FiniteGroup) -> Result<Vec<Irrep>> {
    let n = g.order();
    let reps = match g.name() {
        "trivial" | "z1" => vec![one_dim("triv", vec![CycloScalar::one()])],
        "s3" => dihedral_irreps(3),
        "d4" => dihedral_irreps(4),
        "q8" => quaternion_irreps(),
        "klein4" => [("triv", 0usize, 0usize), ("chi_a", 1, 0), ("chi_b", 0, 1), ("chi_ab", 1, 1)]
            .iter()
            .map(|&(label, x, y)| {
                one_dim(label, (0..4).map(|e| sign(((e & 1) * x + (e >> 1) * y) % 2 == 1)).collect())
            })
            .collect(),
        name if name.starts_with('z') => (0..n)
            .map(|k| {
                let label = match (k, n) {
                    (0, _) => "triv".to_string(),
                    (1, 2) => "sgn".to_string(),
                    _ => format!("chi{k}"),
                };
                one_dim(&label, (0..n).map(|a| CycloScalar::root_of_unity(n as u32, (a * k) as i64)).collect())
            })
            .collect(),
        other => return Err(Error::UnknownCatalogName(other.to_string())),
    };
    let reps = reps
        .into_iter()
        .map(|r| verify_irrep(g, r))
        .collect::<Result<Vec<_>>>()?;
    check_complete(g, &reps)?;
    Ok(reps)
}

/// `sum dim^2 = |T|`.
pub fn check_complete(g: &FiniteGroup, reps: &[Irrep]) -> Result<()> {
    let sum: usize = reps.iter().map(|r| r.dim * r.dim).sum();
    if sum != g.order() {
        return Err(Error::IncompleteIrrepList { sum, order: g.order() });
    }
    Ok(())
}

/// A catalog group together with its certified irreps.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub group: Arc<FiniteGroup>,
    pub irreps: Arc<Vec<Irrep>>,
}

impl GroupData {
    pub fn catalog(name: &str) -> Result<Self> {
        let group = load_group(name)?;
        let irreps = catalog_irreps(&group)?;
        Ok(GroupData {
            group: Arc::new(group),
            irreps: Arc::new(irreps),
        })
    }

    pub fn irrep_index(&self, label: &str) -> Option<usize> {
        self.irreps.iter().position(|r| r.label == label)
    }
}

/// `sum_zeta chi_zeta(s) conj(chi_zeta(t))`, used for orthogonality checks.
pub fn column_inner(reps: &[Irrep], s: usize, t: usize) -> CycloScalar {
    let mut acc = CycloScalar::zero();
    for r in reps {
        acc += &(&r.character(s) * &r.character(t).conj());
    }
    acc
}

/// `true` when the identity has character `dim`, used as a cheap sanity check.
pub fn is_normalized(rep: &Irrep) -> bool {
    rep.character(0) == CycloScalar::from_int(rep.dim as i64) && !rep.images.is_empty() && rep.images[0].is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_load() {
        for name in catalog_names() {
            let g = load_group(&name).unwrap();
            let reps = catalog_irreps(&g).unwrap();
            assert!(reps.iter().all(is_normalized), "{name}");
        }
        assert_eq!(load_group("z2").unwrap().order(), 2);
        assert!(matches!(load_group("a5"), Err(Error::UnknownCatalogName(_))));
        assert!(matches!(load_group("z13"), Err(Error::UnknownCatalogName(_))));
    }

    #[test]
    fn class_sizes() {
        let sizes = |name: &str| {
            let mut v: Vec<usize> = load_group(name).unwrap().conjugacy_classes().iter().map(|c| c.members.len()).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(sizes("trivial"), vec![1]);
        assert_eq!(sizes("s3"), vec![1, 2, 3]);
        assert_eq!(sizes("q8"), vec![1, 1, 2, 2, 2]);
        assert_eq!(sizes("d4"), vec![1, 1, 2, 2, 2]);
        let q8 = load_group("q8").unwrap();
        // {±i} is a class: indices 2 and 3
        assert_eq!(q8.conjugacy_classes()[q8.class_index(2)].members, vec![2, 3]);
    }

    #[test]
    fn broken_tables_rejected() {
        let mut t = cyclic_table(3);
        t[1][1] = 0;
        t[1][2] = 2;
        assert!(matches!(FiniteGroup::from_table("bad", t), Err(Error::NotAGroup(_))));
        // a latin square with identity that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("loop", loop5).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn s3_standard_character() {
        let g = load_group("s3").unwrap();
        let reps = catalog_irreps(&g).unwrap();
        let dims: Vec<usize> = reps.iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        let std = &reps[2];
        // index 0 = e, index 3 = s (a transposition), index 1 = r (a 3-cycle)
        let values: Vec<CycloScalar> = [0, 3, 1].iter().map(|&t| std.character(t)).collect();
        assert_eq!(values, vec![2.into(), 0.into(), (-1).into()]);
    }

    #[test]
    fn q8_dims() {
        let g = load_group("q8").unwrap();
        let reps = catalog_irreps(&g).unwrap();
        assert_eq!(reps.iter().map(|r| r.dim).collect::<Vec<_>>(), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn reducible_sum_is_rejected() {
        let g = load_group("z2").unwrap();
        let images = vec![
            ExactMatrix::identity(2),
            ExactMatrix::diagonal(vec![CycloScalar::one(), CycloScalar::from_int(-1)]),
        ];
        let rep = Irrep { label: "triv+sgn".into(), dim: 2, images };
        assert_eq!(verify_irrep(&g, rep), Err(Error::NotIrreducible("2".into())));
        let bad = Irrep {
            label: "bad".into(),
            dim: 1,
            images: vec![ExactMatrix::identity(1), ExactMatrix::diagonal(vec![CycloScalar::root_of_unity(4, 1)])],
        };
        assert_eq!(verify_irrep(&g, bad), Err(Error::NotHomomorphism(1, 1)));
    }

    #[test]
    fn column_orthogonality() {
        for name in catalog_names() {
            let g = load_group(&name).unwrap();
            let reps = catalog_irreps(&g).unwrap();
            for s in 0..g.order() {
                for t in 0..g.order() {
                    let v = column_inner(&reps, s, t);
                    if g.class_index(s) == g.class_index(t) {
                        let size = g.conjugacy_classes()[g.class_index(t)].members.len();
                        assert_eq!(v, CycloScalar::from_int((g.order() / size) as i64), "{name}");
                    } else {
                        assert!(v.is_zero(), "{name} {s} {t}");
                    }
                }
            }
            for r in &reps {
                for c in g.conjugacy_classes() {
                    assert!(c.members.iter().all(|&m| r.character(m) == r.character(c.representative)));
                }
            }
        }
    }
}
