//! Quadratic algebras `T(V)/(W)` built degree by degree, the holonomy
//! presentation and the enveloping algebra `R = U(h)` of the holonomy Lie
//! algebra.

use std::fmt;

use num_traits::One;

use crate::arrangement::IntersectionLattice;
use crate::bits::{self, IndexSet};
use crate::kernel::scalar::{rat, Rational};
use crate::kernel::{nullspace, Arith, Echelon, KernelError, SparseMatrix, SparseVec};
use crate::os::{ExteriorBasis, OsAlgebra};

/// Element `sum c x_i (x) x_j` of `V (x) V`, as `(i, j, c)` triples.
pub type QuadraticRelation = Vec<(usize, usize, Rational)>;

/// `T(V)/(W)` truncated at `p_max`. The basis of each degree is the set of
/// standard monomials: a coordinate `(a, i)` of `R_{p-1} (x) V` is standard
/// when it is not the largest coordinate of a relation in echelon form.
#[derive(Debug, Clone)]
pub struct GradedQuadraticAlgebra<A: Arith> {
    arith: A,
    n: usize,
    relations: Vec<QuadraticRelation>,
    dims: Vec<usize>,
    /// `standard[p][b] = (a, i)`: basis element `b` of degree `p >= 1` is
    /// `basis_{p-1}(a) * x_i`.
    standard: Vec<Vec<(u32, u32)>>,
    /// `right_mult[p][i][a]` is `basis_p(a) * x_i` in degree `p + 1`.
    right_mult: Vec<Vec<Vec<SparseVec<A::E>>>>,
}

impl<A: Arith + Clone> GradedQuadraticAlgebra<A> {
    /// Build degrees `0..=p_max`.
    pub fn build(n: usize, relations: Vec<QuadraticRelation>, p_max: usize, arith: A) -> Result<Self, KernelError> {
        let mut rels: Vec<Vec<(usize, usize, A::E)>> = Vec::with_capacity(relations.len());
        for r in &relations {
            let mut v = Vec::with_capacity(r.len());
            for (i, j, c) in r {
                let x = arith.from_rational(c).ok_or(KernelError::PrimeDividesDenominator { p: arith.characteristic() })?;
                if !arith.is_zero(&x) {
                    v.push((*i, *j, x));
                }
            }
            rels.push(v);
        }
        let mut alg = GradedQuadraticAlgebra {
            arith: arith.clone(),
            n,
            relations,
            dims: vec![1],
            standard: vec![Vec::new()],
            right_mult: Vec::new(),
        };
        if p_max == 0 {
            return Ok(alg);
        }
        // degree 1 is V itself
        alg.dims.push(n);
        alg.standard.push((0..n as u32).map(|i| (0, i)).collect());
        alg.right_mult.push((0..n).map(|i| vec![vec![(i as u32, arith.one())]]).collect());
        for p in 2..=p_max {
            let prev = alg.dims[p - 1];
            let coords = prev * n;
            let mut ech = Echelon::new(coords, arith.clone());
            // a (x) w  |->  sum c_ij (a x_i) x_j
            for a in 0..alg.dims[p - 2] {
                for w in &rels {
                    let mut v: Vec<(u32, A::E)> = Vec::new();
                    for (i, j, c) in w {
                        for (b, y) in &alg.right_mult[p - 2][*i][a] {
                            v.push(((*b as usize * n + j) as u32, arith.mul(c, y)));
                        }
                    }
                    let v = combine(&arith, v);
                    if !v.is_empty() {
                        ech.insert(&v);
                    }
                }
            }
            let free = ech.free_coordinates();
            let mut position = vec![u32::MAX; coords];
            for (k, &f) in free.iter().enumerate() {
                position[f as usize] = k as u32;
            }
            let nf = ech.coordinate_normal_forms();
            let mut rm: Vec<Vec<SparseVec<A::E>>> = vec![Vec::with_capacity(prev); n];
            for a in 0..prev {
                for (i, slot) in rm.iter_mut().enumerate() {
                    let form = &nf[a * n + i];
                    let mut v: SparseVec<A::E> =
                        form.iter().map(|(c, x)| (position[*c as usize], x.clone())).collect();
                    v.sort_unstable_by_key(|e| e.0);
                    slot.push(v);
                }
            }
            alg.dims.push(free.len());
            alg.standard.push(free.iter().map(|&f| (f / n as u32, f % n as u32)).collect());
            alg.right_mult.push(rm);
        }
        Ok(alg)
    }

    pub fn arith(&self) -> &A {
        &self.arith
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &[QuadraticRelation] {
        &self.relations
    }

    pub fn p_max(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, p: usize) -> usize {
        self.dims[p]
    }

    /// Basis word of degree `p` as generator indices.
    pub fn word(&self, p: usize, b: usize) -> Vec<usize> {
        let mut w = Vec::with_capacity(p);
        let (mut deg, mut idx) = (p, b);
        while deg > 0 {
            let (a, i) = self.standard[deg][idx];
            w.push(i as usize);
            idx = a as usize;
            deg -= 1;
        }
        w.reverse();
        w
    }

    /// `right_mult(p, i)[a]` is `basis_p(a) * x_i`, for `p < p_max`.
    pub fn right_mult(&self, p: usize, i: usize) -> &[SparseVec<A::E>] {
        &self.right_mult[p][i]
    }

    /// Apply `(. x_j)` to a vector of degree `p`.
    pub fn apply_right(&self, p: usize, j: usize, v: &[(u32, A::E)]) -> SparseVec<A::E> {
        let mut acc = Vec::new();
        for (a, x) in v {
            for (b, y) in &self.right_mult[p][j][*a as usize] {
                acc.push((*b, self.arith.mul(x, y)));
            }
        }
        combine(&self.arith, acc)
    }

    /// Whether every defining relation acts as zero on every degree `p` with
    /// `p + 2 <= p_max`.
    pub fn relations_hold(&self) -> bool {
        for p in 0..self.p_max().saturating_sub(1) {
            for r in &self.relations {
                for a in 0..self.dims[p] {
                    let mut acc = Vec::new();
                    for (i, j, c) in r {
                        let c = self.arith.from_rational(c).expect("convertible");
                        let start = vec![(a as u32, c)];
                        let v = self.apply_right(p, *i, &start);
                        acc.extend(self.apply_right(p + 1, *j, &v));
                    }
                    if !combine(&self.arith, acc).is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Sum entries with equal index and drop zeros.
pub(crate) fn combine<A: Arith>(arith: &A, mut v: Vec<(u32, A::E)>) -> SparseVec<A::E> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<A::E> = Vec::with_capacity(v.len());
    let neg_one = arith.neg(&arith.one());
    for (k, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == k => {
                // last += x, written as last -= (-1) * x
                arith.sub_mul(&mut last.1, &neg_one, &x);
            }
            _ => out.push((k, x)),
        }
    }
    out.retain(|e| !arith.is_zero(&e.1));
    out
}

/// One holonomy relation `[x_i, sum_{j in F} x_j]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HolonomyRelation {
    pub flat: IndexSet,
    pub generator: usize,
}

impl HolonomyRelation {
    /// The relation as an element of `V (x) V`.
    pub fn tensor(&self) -> QuadraticRelation {
        let i = self.generator;
        bits::iter(self.flat)
            .filter(|&j| j != i)
            .flat_map(|j| [(i, j, rat(1)), (j, i, rat(-1))])
            .collect()
    }
}

/// Generators `x_1..x_n` in degree one with one relation per incidence of a
/// hyperplane and a codimension-2 flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyPresentation {
    pub generators: usize,
    pub relations: Vec<HolonomyRelation>,
}

impl HolonomyPresentation {
    pub fn relation_text(&self, r: &HolonomyRelation, names: &[String]) -> String {
        let sum: Vec<&str> = bits::iter(r.flat).map(|j| names[j].as_str()).collect();
        format!("[{}, {}]", names[r.generator], sum.join(" + "))
    }
}

impl fmt::Display for HolonomyPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.generators).map(|i| format!("x{i}")).collect();
        writeln!(f, "generators: {}", names.join(" "))?;
        for r in &self.relations {
            writeln!(f, "{}", self.relation_text(r, &names))?;
        }
        Ok(())
    }
}

pub fn holonomy_presentation(lat: &IntersectionLattice) -> HolonomyPresentation {
    let relations = lat
        .flats(2)
        .iter()
        .flat_map(|&f| bits::iter(f).map(move |generator| HolonomyRelation { flat: f, generator }))
        .collect();
    HolonomyPresentation { generators: lat.ground_size(), relations }
}

/// Basis of `W_B^perp`: antisymmetric tensors `sum_{i<j} c_ij (x_i x_j - x_j x_i)`
/// orthogonal to `I_2`. Its dimension is `dim B_2`.
pub fn dual_relations(os: &OsAlgebra) -> Vec<QuadraticRelation> {
    let n = os.generators();
    let e2 = ExteriorBasis::new(n, 2);
    let rels = os.quadratic_relations();
    let g = SparseMatrix::from_triplets(
        rels.len(),
        e2.len(),
        rels.iter()
            .enumerate()
            .flat_map(|(r, v)| v.iter().map(move |(c, x)| (r, *c as usize, x.clone()))),
    )
    .expect("indices in range");
    nullspace(&g)
        .into_iter()
        .map(|v| {
            v.into_iter()
                .flat_map(|(k, c)| {
                    let pair = bits::to_vec(e2.sets[k as usize]);
                    [(pair[0], pair[1], c.clone()), (pair[1], pair[0], -c)]
                })
                .collect()
        })
        .collect()
}

/// `R = U(h) = T(V) / (W_B^perp)`, degrees `0..=p_max`.
pub fn enveloping_of_holonomy<A: Arith + Clone>(
    os: &OsAlgebra,
    p_max: usize,
    arith: A,
) -> Result<GradedQuadraticAlgebra<A>, KernelError> {
    GradedQuadraticAlgebra::build(os.generators(), dual_relations(os), p_max, arith)
}

/// `h(B, t) h(R, -t) = 1 + O(t^{p_max + 1})`.
pub fn koszul_numerics_check(b_dims: &[usize], r_dims: &[usize], p_max: usize) -> bool {
    (0..=p_max).all(|k| {
        let s: i128 = (0..=k)
            .map(|j| {
                let b = b_dims.get(j).copied().unwrap_or(0) as i128;
                let r = r_dims.get(k - j).copied().unwrap_or(0) as i128;
                if (k - j) % 2 == 0 {
                    b * r
                } else {
                    -b * r
                }
            })
            .sum();
        s == if k == 0 { 1 } else { 0 }
    })
}

/// Symmetric tensors `x_i x_j + x_j x_i` and squares: quotienting by them
/// gives the exterior algebra.
pub fn symmetric_relations(n: usize) -> Vec<QuadraticRelation> {
    let mut out = Vec::new();
    for i in 0..n {
        out.push(vec![(i, i, Rational::one())]);
        for j in i + 1..n {
            out.push(vec![(i, j, Rational::one()), (j, i, Rational::one())]);
        }
    }
    out
}

/// Commutators `x_i x_j - x_j x_i`: quotienting gives the polynomial ring.
pub fn commutator_relations(n: usize) -> Vec<QuadraticRelation> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(vec![(i, j, Rational::one()), (j, i, -Rational::one())]);
        }
    }
    out
}
