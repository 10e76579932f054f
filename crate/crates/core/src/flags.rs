//! Flag complex of a deconed supersolvable deformation and the resulting
//! presentation of the homotopy Lie algebra of a generic slice.
//!
//! The deformation `B` is handled as a central arrangement (a matroid) with
//! a distinguished hyperplane at infinity. Flats of the decone `B'` are the
//! flats of `B` that avoid it, and `B'` keeps the hyperplane numbering of `B`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::Matroid;
use crate::bits::{self, IndexSet};
use crate::hypersolvable::{find_solvable_chain, singular_range, Collinearity, SingularOutcome, SingularRange};
use crate::kernel::scalar::{rat, rational_to_i64, Rational};
use crate::kernel::{Echelon, FieldArith, SparseVec};
use crate::os::{ExteriorBasis, OsAlgebra};
use crate::quadratic::holonomy_presentation;
use crate::series::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("not a flag of the deconed lattice")]
    InvalidFlag,
    #[error("deformation lattice required: the deformation is not Boolean")]
    DeformationRequired,
    #[error("deformation does not fit: {0}")]
    DeformationMismatch(String),
    #[error("not a generic slice of rank {ell}: {found}")]
    NotGenericSlice { ell: usize, found: String },
    #[error("flag basis is dependent in degree {0}")]
    DependentBasis(usize),
    #[error("non-integral coefficient {0}")]
    NonIntegral(String),
}

/// `(F_1, ..., F_p)` with `F_k` a rank-`k` flat of `B'`, as hyperplane sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag(pub Vec<IndexSet>);

impl Flag {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `F_p`, or the empty set for the empty flag.
    pub fn top(&self) -> IndexSet {
        self.0.last().copied().unwrap_or(0)
    }
}

/// Lattice of the decone together with the nbc structure used for bases.
#[derive(Debug)]
pub struct FlagLattice {
    matroid: Matroid,
    infinity: usize,
    flats: Vec<Vec<IndexSet>>,
    os: OsAlgebra,
}

impl FlagLattice {
    /// `b` is the central deformation and `infinity` the hyperplane removed
    /// by deconing.
    pub fn new(b: &Matroid, infinity: usize) -> Self {
        let n = b.ground_size();
        assert!(infinity < n, "hyperplane at infinity out of range");
        let lat = b.flats(b.rank());
        let flats = (0..=b.rank())
            .map(|k| lat.flats(k).iter().copied().filter(|&f| !bits::contains(f, infinity)).collect())
            .collect();
        // infinity first, so that nbc sets avoiding it are a basis of B'
        let order: Vec<usize> = std::iter::once(infinity).chain((0..n).filter(|&i| i != infinity)).collect();
        FlagLattice { matroid: b.clone(), infinity, flats, os: OsAlgebra::with_order(b, &order) }
    }

    pub fn infinity(&self) -> usize {
        self.infinity
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    /// Hyperplanes of `B'`.
    pub fn hyperplanes(&self) -> IndexSet {
        bits::full(self.matroid.ground_size()) & !bits::singleton(self.infinity)
    }

    pub fn flats(&self, k: usize) -> &[IndexSet] {
        self.flats.get(k).map_or(&[], |v| v.as_slice())
    }

    /// nbc sets of size `p` avoiding infinity, in increasing order.
    pub fn nbc(&self, p: usize) -> Vec<IndexSet> {
        if p > self.os.top_degree() {
            return Vec::new();
        }
        self.os.basis(p).iter().copied().filter(|&s| !bits::contains(s, self.infinity)).collect()
    }

    /// Betti numbers of `B'`.
    pub fn betti(&self) -> Vec<usize> {
        let mut b: Vec<usize> = (0..=self.os.top_degree()).map(|p| self.nbc(p).len()).collect();
        while b.len() > 1 && b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    fn is_flat(&self, f: IndexSet, k: usize) -> bool {
        self.flats(k).contains(&f)
    }

    pub fn is_flag(&self, fl: &Flag) -> bool {
        let mut prev = 0;
        for (k, &f) in fl.0.iter().enumerate() {
            if !self.is_flat(f, k + 1) || !bits::is_subset(prev, f) || prev == f {
                return false;
            }
            prev = f;
        }
        true
    }

    /// Flag of an nbc set, intersecting its hyperplanes from the largest
    /// index down.
    pub fn nbc_flag(&self, s: IndexSet) -> Flag {
        let v = bits::to_vec(s);
        let mut acc = 0;
        Flag(
            v.iter()
                .rev()
                .map(|&h| {
                    acc |= bits::singleton(h);
                    self.matroid.closure(acc)
                })
                .collect(),
        )
    }

    /// Every flag of length `p`.
    pub fn all_flags(&self, p: usize) -> Vec<Flag> {
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(p);
        self.extend_flags(&mut path, p, &mut out);
        out
    }

    fn extend_flags(&self, path: &mut Vec<IndexSet>, p: usize, out: &mut Vec<Flag>) {
        if path.len() == p {
            out.push(Flag(path.clone()));
            return;
        }
        let prev = path.last().copied().unwrap_or(0);
        for &f in self.flats(path.len() + 1) {
            if bits::is_subset(prev, f) {
                path.push(f);
                self.extend_flags(path, p, out);
                path.pop();
            }
        }
    }

    /// Flags `(G_j, ..., G_q)` extending `prefix` with `G_k < F_{k+1}`
    /// and avoiding hyperplane `i`.
    fn tails(&self, fl: &Flag, i: usize, path: &mut Vec<IndexSet>, out: &mut Vec<Flag>) {
        let p = fl.len();
        if path.len() == p - 1 {
            out.push(Flag(path.clone()));
            return;
        }
        let k = path.len();
        let prev = path.last().copied().unwrap_or(0);
        for &g in self.flats(k + 1) {
            if bits::is_subset(prev, g) && bits::is_subset(g, fl.0[k + 1]) && !bits::contains(g, i) {
                path.push(g);
                self.tails(fl, i, path, out);
                path.pop();
            }
        }
    }

    /// `F - i`: with `i` first appearing in `F_j`, the signed sum
    /// `(-1)^{j-1} sum (F_1, ..., F_{j-1}, G_j, ..., G_{p-1})`.
    pub fn flag_minus(&self, fl: &Flag, i: usize) -> (i64, Vec<Flag>) {
        let j = fl.0.iter().position(|&f| bits::contains(f, i)).expect("i lies in the top flat");
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let mut path: Vec<IndexSet> = fl.0[..j].to_vec();
        let mut out = Vec::new();
        self.tails(fl, i, &mut path, &mut out);
        (sign, out)
    }
}

/// Value of `f(F)` on `e_S`: the determinant of `[s_b in F_a - F_{a-1}]`.
/// The columns follow `cols`, which need not be sorted.
pub fn f_pairing(fl: &Flag, cols: &[usize]) -> i64 {
    let p = fl.len();
    if cols.len() != p {
        return 0;
    }
    let mut m = vec![vec![0i128; p]; p];
    let mut prev = 0;
    for (a, &f) in fl.0.iter().enumerate() {
        let layer = f & !prev;
        for (b, &s) in cols.iter().enumerate() {
            m[a][b] = bits::contains(layer, s) as i128;
        }
        prev = f;
    }
    bareiss(m) as i64
}

fn bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// `f(F)` in coordinates dual to the nbc monomials of degree `p`.
pub fn f_map(fl: &Flag, nbc: &[IndexSet]) -> SparseVec<Rational> {
    nbc.iter()
        .enumerate()
        .filter_map(|(k, &s)| {
            let v = f_pairing(fl, &bits::to_vec(s));
            (v != 0).then(|| (k as u32, rat(v)))
        })
        .collect()
}

/// Degree-`p` piece of the flag complex with its nbc basis.
#[derive(Debug)]
pub struct FlagSpace {
    pub p: usize,
    pub basis: Vec<Flag>,
    /// nbc sets the basis flags came from, also indexing the coordinates of `f`.
    pub nbc: Vec<IndexSet>,
    solver: Echelon<FieldArith<Rational>>,
}

impl FlagSpace {
    /// Coordinates of an arbitrary flag, or of a sum of flags, in the basis.
    pub fn coordinates(&self, flags: &[Flag]) -> SparseVec<Rational> {
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        for fl in flags {
            for (k, x) in f_map(fl, &self.nbc) {
                *acc.entry(k).or_insert_with(Rational::zero) += x;
            }
        }
        let v: SparseVec<Rational> = acc.into_iter().filter(|e| !e.1.is_zero()).collect();
        self.solver.solve(&v).expect("f is onto the dual of B'^p")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn flag_basis(lat: &FlagLattice, p: usize) -> Result<FlagSpace, FlagError> {
    let nbc = lat.nbc(p);
    let basis: Vec<Flag> = nbc.iter().map(|&s| lat.nbc_flag(s)).collect();
    let mut solver = Echelon::with_tracking(nbc.len(), FieldArith::new());
    for fl in &basis {
        if !lat.is_flag(fl) || solver.insert(&f_map(fl, &nbc)).is_none() {
            return Err(FlagError::DependentBasis(p));
        }
    }
    Ok(FlagSpace { p, basis, nbc, solver })
}

/// `sum_{i in F_p} (F - i) (x) x_i`, with `F - i` in the basis of `lower`.
pub fn flag_boundary(lat: &FlagLattice, lower: &FlagSpace, fl: &Flag) -> Result<Vec<(usize, SparseVec<Rational>)>, FlagError> {
    if !lat.is_flag(fl) || fl.len() != lower.p + 1 {
        return Err(FlagError::InvalidFlag);
    }
    Ok(bits::iter(fl.top())
        .filter_map(|i| {
            let (sign, terms) = lat.flag_minus(fl, i);
            let mut c = lower.coordinates(&terms);
            if sign < 0 {
                c.iter_mut().for_each(|e| e.1 = -e.1.clone());
            }
            (!c.is_empty()).then_some((i, c))
        })
        .collect())
}

/// `d^2 F`, for each basis flag of degree `p`, lies in the quadratic
/// relations of `U(h(B'))`: the coefficient of `x_k x_i` is antisymmetric
/// and orthogonal to `I_2(B')`.
pub fn boundary_squared_vanishes(lat: &FlagLattice, p: usize) -> Result<bool, FlagError> {
    if p < 2 {
        return Ok(true);
    }
    let top = flag_basis(lat, p)?;
    let mid = flag_basis(lat, p - 1)?;
    let low = flag_basis(lat, p - 2)?;
    let n = lat.matroid().ground_size();
    let e2 = ExteriorBasis::new(n, 2);
    let i2: Vec<SparseVec<Rational>> = lat
        .os
        .quadratic_relations()
        .into_iter()
        .map(|v| v.into_iter().filter(|(k, _)| !bits::contains(e2.sets[*k as usize], lat.infinity)).collect())
        .collect();
    let mid_bd: Vec<Vec<(usize, SparseVec<Rational>)>> =
        mid.basis.iter().map(|g| flag_boundary(lat, &low, g)).collect::<Result<_, _>>()?;
    for fl in &top.basis {
        // (low basis index, k, i) -> coefficient of H (x) x_k x_i
        let mut t: BTreeMap<(u32, usize, usize), Rational> = BTreeMap::new();
        for (i, c) in flag_boundary(lat, &mid, fl)? {
            for (g, x) in &c {
                for (k, d) in &mid_bd[*g as usize] {
                    for (h, y) in d {
                        *t.entry((*h, *k, i)).or_insert_with(Rational::zero) += x * y;
                    }
                }
            }
        }
        for h in 0..low.dim() as u32 {
            let get = |k: usize, i: usize| t.get(&(h, k, i)).cloned().unwrap_or_else(Rational::zero);
            let mut w: BTreeMap<u32, Rational> = BTreeMap::new();
            for k in 0..n {
                if !get(k, k).is_zero() {
                    return Ok(false);
                }
                for i in k + 1..n {
                    let (a, b) = (get(k, i), get(i, k));
                    if !(a.clone() + b).is_zero() {
                        return Ok(false);
                    }
                    if !a.is_zero() {
                        let idx = e2.index(bits::singleton(k) | bits::singleton(i)).expect("pair") as u32;
                        w.insert(idx, a);
                    }
                }
            }
            for g in &i2 {
                let dot: Rational = g.iter().filter_map(|(k, x)| w.get(k).map(|y| x * y)).sum();
                if !dot.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub bidegree: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Holonomy,
    Flag,
    Central,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coef: i64,
    pub bracket: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    #[serde(rename = "type")]
    pub kind: RelationKind,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiePresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

impl LiePresentation {
    pub fn count(&self, kind: RelationKind) -> usize {
        self.relations.iter().filter(|r| r.kind == kind).count()
    }

    pub fn generators_of_bidegree(&self, d: (usize, usize)) -> usize {
        self.generators.iter().filter(|g| g.bidegree == d).count()
    }
}

impl std::fmt::Display for LiePresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for g in &self.generators {
            writeln!(f, "generator {} ({},{})", g.name, g.bidegree.0, g.bidegree.1)?;
        }
        for r in &self.relations {
            let mut s = String::new();
            for (k, t) in r.terms.iter().enumerate() {
                let sign = match (t.coef < 0, k) {
                    (true, 0) => "-",
                    (true, _) => " - ",
                    (false, 0) => "",
                    (false, _) => " + ",
                };
                let c = if t.coef.abs() == 1 { String::new() } else { format!("{}*", t.coef.abs()) };
                s += &format!("{sign}{c}[{}, {}]", t.bracket[0], t.bracket[1]);
            }
            let kind = match r.kind {
                RelationKind::Holonomy => "holonomy",
                RelationKind::Flag => "flag",
                RelationKind::Central => "central",
            };
            writeln!(f, "{kind}: {s} = 0")?;
        }
        Ok(())
    }
}

/// Bijection from the hyperplanes of `b` to those of `a` matching their
/// rank-2 flats, found by backtracking (identity preferred).
pub fn match_rank2_flats(b: &Matroid, a: &Matroid) -> Option<Vec<usize>> {
    let n = a.ground_size();
    if b.ground_size() != n {
        return None;
    }
    let (cb, ca) = (Collinearity::new(b), Collinearity::new(a));
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(k: usize, n: usize, map: &mut Vec<usize>, used: &mut [bool], cb: &Collinearity, ca: &Collinearity) -> bool {
        if k == n {
            return true;
        }
        for cand in (k..n).chain(0..k) {
            if used[cand] {
                continue;
            }
            let ok = (0..k).all(|i| {
                (0..i).all(|j| cb.collinear(j, i, k) == ca.collinear(map[j], map[i], cand))
            });
            if ok {
                map.push(cand);
                used[cand] = true;
                if go(k + 1, n, map, used, cb, ca) {
                    return true;
                }
                map.pop();
                used[cand] = false;
            }
        }
        false
    }
    go(0, n, &mut map, &mut used, &cb, &ca).then_some(map)
}

fn y_name(s: IndexSet) -> String {
    let idx: Vec<String> = bits::iter(s).map(|i| (i + 1).to_string()).collect();
    format!("y{}", idx.join("_"))
}

fn integral(x: &Rational) -> Result<i64, FlagError> {
    rational_to_i64(x).ok_or_else(|| FlagError::NonIntegral(x.to_string()))
}

/// Presentation of the homotopy Lie algebra of a generic slice `a` of rank
/// `ell` of the supersolvable `deformation`, given with its hyperplane at
/// infinity. Without a deformation a Boolean one is used when the exponents
/// allow it.
pub fn g_presentation(a: &Matroid, deformation: Option<(&Matroid, usize)>, ell: usize) -> Result<LiePresentation, FlagError> {
    let n = a.ground_size();
    let os = OsAlgebra::new(a);
    let chain = find_solvable_chain(a).ok_or(FlagError::NotGenericSlice { ell, found: "not hypersolvable".into() })?;
    let outcome = singular_range(&chain, &os.dims()).map_err(|e| FlagError::NotGenericSlice { ell, found: e.to_string() })?;
    match outcome {
        SingularOutcome::Range(SingularRange { c, d }) if c == ell && d == ell => {}
        SingularOutcome::Range(SingularRange { c, d }) => {
            return Err(FlagError::NotGenericSlice { ell, found: format!("singular range ({c},{d})") })
        }
        SingularOutcome::Supersolvable => return Err(FlagError::NotGenericSlice { ell, found: "supersolvable".into() }),
    }
    let exps = chain.exponents();
    let boolean;
    let (b, inf) = match deformation {
        Some(d) => d,
        None if exps.iter().all(|&d| d == 1) => {
            boolean = Matroid::boolean(n);
            (&boolean, n - 1)
        }
        None => return Err(FlagError::DeformationRequired),
    };
    let lat = FlagLattice::new(b, inf);
    let expected = Polynomial::from_exponents(&exps[1..]);
    let betti = lat.betti();
    if (0..=expected.0.len().max(betti.len())).any(|k| expected.coeff(k) != betti.get(k).copied().unwrap_or(0) as i64) {
        return Err(FlagError::DeformationMismatch(format!("decone has Betti numbers {betti:?}, expected {}", expected)));
    }
    let pi = match_rank2_flats(b, a).ok_or_else(|| FlagError::DeformationMismatch("rank-2 flats differ".into()))?;

    let x = |i: usize| format!("x{}", i + 1);
    let mut generators: Vec<Generator> = (0..n).map(|i| Generator { name: x(i), bidegree: (1, 0) }).collect();
    let gens = flag_basis(&lat, ell)?;
    let rels = flag_basis(&lat, ell + 1)?;
    generators.extend(gens.nbc.iter().map(|&s| Generator { name: y_name(s), bidegree: (2, ell - 2) }));

    let mut relations = Vec::new();
    let hol = holonomy_presentation(&a.flats(2));
    for r in &hol.relations {
        let terms = bits::iter(r.flat)
            .filter(|&j| j != r.generator)
            .map(|j| Term { coef: 1, bracket: [x(r.generator), x(j)] })
            .collect();
        relations.push(Relation { kind: RelationKind::Holonomy, terms });
    }
    for fl in &rels.basis {
        let mut acc: BTreeMap<(usize, u32), Rational> = BTreeMap::new();
        for (i, c) in flag_boundary(&lat, &gens, fl)? {
            for (g, v) in c {
                *acc.entry((pi[i], g)).or_insert_with(Rational::zero) += v;
            }
        }
        let terms = acc
            .into_iter()
            .filter(|e| !e.1.is_zero())
            .map(|((i, g), v)| Ok(Term { coef: integral(&v)?, bracket: [x(i), y_name(gens.nbc[g as usize])] }))
            .collect::<Result<Vec<_>, FlagError>>()?;
        relations.push(Relation { kind: RelationKind::Flag, terms });
    }
    for &s in &gens.nbc {
        let terms = (0..n).map(|i| Term { coef: 1, bracket: [x(i), y_name(s)] }).collect();
        relations.push(Relation { kind: RelationKind::Central, terms });
    }
    Ok(LiePresentation { generators, relations })
}
