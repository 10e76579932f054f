//! The linear strand `A (x) R*` and the homotopy module `M`.
//!
//! Write `rho(s, k)` for the rank of the differential
//! `A_s (x) R*_k -> A_{s+1} (x) R*_{k-1}`,
//! `a (x) phi  |->  sum_i (e_i a) (x) (. x_i)^T phi`.
//! Homology at `A_s (x) R*_k` is
//! `H(s, k) = dim A_s dim R_k - rho(s, k) - rho(s - 1, k + 1)`.
//! `H(0, 0)` is the ground field and `M^p_q = H(q - 1, p + 1)`.

use std::collections::BTreeMap;

use log::{info, warn};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::scalar::Rational;
use crate::kernel::{random_primes, rank_of_vectors, Arith, FieldArith, FiniteComplex, KernelError, ModArith, SparseMatrix, SparseVec};
use crate::os::OsAlgebra;
use crate::quadratic::{combine, enveloping_of_holonomy, GradedQuadraticAlgebra};
use crate::hypersolvable::{SingularOutcome, SingularRange, SolvableChain, Verdict};
use crate::series::{enveloping_series, BigradedTable, Polynomial, RationalFunctionRep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomotopyError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("R is built to degree {have}, degree {need} is required")]
    InsufficientDepth { have: usize, need: usize },
    #[error("differentials do not compose to zero at A_{s} (x) R*_{k}")]
    NotAComplex { s: usize, k: usize },
    #[error("hypothesis not satisfied: verdict {0:?}")]
    HypothesisNotSatisfied(Verdict),
    #[error("closed form needs a generic slice: singular range ({c},{d}) with rank {ell}")]
    NotGenericSlice { c: usize, d: usize, ell: usize },
}

/// How ranks are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankMode {
    /// Two random primes near 2^62 drawn from `seed`; exact fallback when
    /// they disagree.
    Modular { seed: u64 },
    Exact,
}

/// Everything the linear strand needs from one coefficient field.
struct Strand<'a, A: Arith> {
    arith: A,
    /// `left[s][i][a]` is `e_i * basis_s(a)` in `A_{s+1}`.
    left: Vec<Vec<Vec<SparseVec<A::E>>>>,
    /// `rmt[k][i][b]` lists `(a, c)` with `basis_k(a) * x_i = ... + c basis_{k+1}(b)`.
    rmt: Vec<Vec<Vec<SparseVec<A::E>>>>,
    a_dims: Vec<usize>,
    r_dims: &'a [usize],
}

impl<'a, A: Arith + Clone> Strand<'a, A> {
    fn new(os: &OsAlgebra, r: &'a GradedQuadraticAlgebra<A>) -> Result<Self, KernelError> {
        let arith = r.arith().clone();
        let conv = |v: &SparseVec<Rational>| -> Result<SparseVec<A::E>, KernelError> {
            v.iter()
                .map(|(k, x)| {
                    arith
                        .from_rational(x)
                        .map(|y| (*k, y))
                        .ok_or(KernelError::PrimeDividesDenominator { p: arith.characteristic() })
                })
                .collect()
        };
        let top = os.top_degree();
        let mut left = Vec::with_capacity(top);
        for s in 0..top {
            let l = os.left_multiplication(s);
            left.push(l.iter().map(|per| per.iter().map(conv).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?);
        }
        let n = os.generators();
        let mut rmt = Vec::with_capacity(r.p_max());
        for k in 0..r.p_max() {
            let mut t: Vec<Vec<SparseVec<A::E>>> = vec![vec![Vec::new(); r.dim(k + 1)]; n];
            for (i, ti) in t.iter_mut().enumerate() {
                for (a, img) in r.right_mult(k, i).iter().enumerate() {
                    for (b, c) in img {
                        ti[*b as usize].push((a as u32, c.clone()));
                    }
                }
            }
            rmt.push(t);
        }
        Ok(Strand { arith, left, rmt, a_dims: os.dims(), r_dims: r.dims() })
    }

    fn a_dim(&self, s: usize) -> usize {
        self.a_dims.get(s).copied().unwrap_or(0)
    }

    /// Image of the basis vector `a (x) phi_b` of `A_s (x) R*_k`, indexed by
    /// `c * dim R_{k-1} + a'`.
    fn column(&self, s: usize, k: usize, a: usize, b: usize) -> SparseVec<A::E> {
        let rk1 = self.r_dims[k - 1] as u32;
        let mut v = Vec::new();
        let Some(left) = self.left.get(s) else { return v };
        for (i, li) in left.iter().enumerate() {
            let img = &li[a];
            if img.is_empty() {
                continue;
            }
            for (a2, y) in &self.rmt[k - 1][i][b] {
                for (c, x) in img {
                    v.push((c * rk1 + a2, self.arith.mul(x, y)));
                }
            }
        }
        combine(&self.arith, v)
    }

    fn columns(&self, s: usize, k: usize) -> Vec<SparseVec<A::E>> {
        let rk = self.r_dims[k];
        (0..self.a_dim(s) * rk).map(|col| self.column(s, k, col / rk, col % rk)).collect()
    }

    fn shape(&self, s: usize, k: usize) -> (usize, usize) {
        (self.a_dim(s + 1) * self.r_dims[k - 1], self.a_dim(s) * self.r_dims[k])
    }

    fn rank(&self, s: usize, k: usize) -> usize {
        let (rows, cols) = self.shape(s, k);
        if rows == 0 || cols == 0 {
            return 0;
        }
        let columns = self.columns(s, k);
        if rows <= cols {
            rank_of_vectors(columns, rows, &self.arith)
        } else {
            let mut t: Vec<SparseVec<A::E>> = vec![Vec::new(); rows];
            for (c, col) in columns.into_iter().enumerate() {
                for (r, x) in col {
                    t[r as usize].push((c as u32, x));
                }
            }
            rank_of_vectors(t, cols, &self.arith)
        }
    }

    /// `d(s + 1, k - 1) d(s, k) x = 0` for a pseudo-random `x`.
    fn composes_to_zero(&self, s: usize, k: usize, rng: &mut ChaCha8Rng) -> bool {
        if k < 2 || self.a_dim(s + 2) == 0 {
            return true;
        }
        let cols = self.columns(s, k);
        let mut y: Vec<(u32, A::E)> = Vec::new();
        for col in &cols {
            let c = self.arith.from_rational(&Rational::from_integer(rng.gen_range(1..1000i64).into())).expect("integer");
            y.extend(col.iter().map(|(r, x)| (*r, self.arith.mul(x, &c))));
        }
        let y = combine(&self.arith, y);
        let rk1 = self.r_dims[k - 1];
        let mut z = Vec::new();
        for (idx, x) in &y {
            let (a, b) = (*idx as usize / rk1, *idx as usize % rk1);
            z.extend(self.column(s + 1, k - 1, a, b).into_iter().map(|(r, w)| (r, self.arith.mul(&w, x))));
        }
        combine(&self.arith, z).is_empty()
    }
}

/// Ranks `rho(s, k)` for every requested pair, in parallel.
fn strand_ranks<A: Arith + Clone + Send>(strand: &Strand<'_, A>, pairs: &[(usize, usize)]) -> Vec<usize> where A::E: Send {
    pairs.par_iter().map(|&(s, k)| strand.rank(s, k)).collect()
}

/// Dimensions of linear-strand homology and the homotopy module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyTable {
    pub p_max: usize,
    pub q_max: usize,
    /// `M^p_q` keyed by `(p, q)`, zero entries omitted.
    pub m: BTreeMap<(usize, usize), usize>,
    /// `dim R_p` for `p <= p_max + 2`.
    pub r_dims: Vec<usize>,
    /// Whether the quadratic closure is known to be Koszul, so that the
    /// homology really is `M`. Otherwise it is formal linear-strand homology.
    pub certified: bool,
    pub mode: RankMode,
    pub primes: Vec<u64>,
    /// Set when the two primes disagreed and exact ranks were used.
    pub exact_fallback: bool,
}

impl HomotopyTable {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.m.get(&(p, q)).copied().unwrap_or(0)
    }

    /// `M^0_q, ..., M^{p_max}_q`.
    pub fn row(&self, q: usize) -> Vec<usize> {
        (0..=self.p_max).map(|p| self.get(p, q)).collect()
    }

    /// Internal degrees with a nonzero entry.
    pub fn support(&self) -> Vec<usize> {
        let mut q: Vec<usize> = self.m.keys().map(|k| k.1).collect();
        q.dedup();
        q.sort_unstable();
        q.dedup();
        q
    }
}

/// The pairs `(s, k)` whose ranks determine `M^p_q` for `p <= p_max` and
/// `1 <= q <= q_max`.
fn needed_pairs(p_max: usize, q_max: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for s in 0..q_max {
        for k in 1..=p_max + 2 {
            v.push((s, k));
        }
    }
    v
}

fn assemble(
    a_dims: &[usize],
    r_dims: &[usize],
    pairs: &[(usize, usize)],
    ranks: &[usize],
    p_max: usize,
    q_max: usize,
) -> BTreeMap<(usize, usize), usize> {
    let rho: BTreeMap<(usize, usize), usize> = pairs.iter().copied().zip(ranks.iter().copied()).collect();
    let get = |s: isize, k: usize| -> usize { if s < 0 { 0 } else { rho.get(&(s as usize, k)).copied().unwrap_or(0) } };
    let mut m = BTreeMap::new();
    for q in 1..=q_max {
        let s = q - 1;
        for p in 0..=p_max {
            let k = p + 1;
            let total = a_dims.get(s).copied().unwrap_or(0) * r_dims[k];
            let h = total - get(s as isize, k) - get(s as isize - 1, k + 1);
            if h != 0 {
                m.insert((p, q), h);
            }
        }
    }
    m
}

fn ranks_over<A: Arith + Clone + Send>(
    os: &OsAlgebra,
    depth: usize,
    arith: A,
    pairs: &[(usize, usize)],
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>), HomotopyError>
where
    A::E: Send,
{
    let r = enveloping_of_holonomy(os, depth, arith)?;
    let strand = Strand::new(os, &r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for &(s, k) in pairs {
        if !strand.composes_to_zero(s, k, &mut rng) {
            return Err(HomotopyError::NotAComplex { s, k });
        }
    }
    Ok((strand_ranks(&strand, pairs), r.dims().to_vec()))
}

/// `M^p_q` for `p <= p_max` and all internal degrees up to `rank + 1`.
pub fn homotopy_module_dims(os: &OsAlgebra, p_max: usize, certified: bool, mode: RankMode) -> Result<HomotopyTable, HomotopyError> {
    let q_max = os.top_degree() + 1;
    let depth = p_max + 2;
    let pairs = needed_pairs(p_max, q_max);
    if !certified {
        warn!("no hypersolvability certificate: reporting formal linear-strand homology");
    }
    let (ranks, r_dims, primes, fallback) = match mode {
        RankMode::Exact => {
            let (ranks, r_dims) = ranks_over(os, depth, FieldArith::<Rational>::new(), &pairs, 0)?;
            (ranks, r_dims, Vec::new(), false)
        }
        RankMode::Modular { seed } => {
            let primes = random_primes(seed, 2);
            let (r1, d1) = ranks_over(os, depth, ModArith { p: primes[0] }, &pairs, seed)?;
            let (r2, d2) = ranks_over(os, depth, ModArith { p: primes[1] }, &pairs, seed)?;
            if r1 == r2 && d1 == d2 {
                (r1, d1, primes, false)
            } else {
                info!("ranks disagree modulo {} and {}; recomputing exactly", primes[0], primes[1]);
                let (ranks, r_dims) = ranks_over(os, depth, FieldArith::<Rational>::new(), &pairs, seed)?;
                (ranks, r_dims, primes, true)
            }
        }
    };
    let m = assemble(&os.dims(), &r_dims, &pairs, &ranks, p_max, q_max);
    Ok(HomotopyTable { p_max, q_max, m, r_dims, certified, mode, primes, exact_fallback: fallback })
}

/// The weight-`t` strand as a complex over the rationals: term `s` is
/// `A_s (x) R*_{t-s}` and the differential raises `s`.
pub fn linear_strand_complex(os: &OsAlgebra, r: &GradedQuadraticAlgebra<FieldArith<Rational>>, t: usize) -> Result<FiniteComplex<Rational>, HomotopyError> {
    if r.p_max() < t {
        return Err(HomotopyError::InsufficientDepth { have: r.p_max(), need: t });
    }
    let strand = Strand::new(os, r)?;
    let dims: Vec<usize> = (0..=t).map(|s| strand.a_dim(s) * r.dim(t - s)).collect();
    let mut diffs = Vec::with_capacity(t);
    for s in 0..t {
        let k = t - s;
        let columns = if dims[s] == 0 { vec![Vec::new(); dims[s]] } else { strand.columns(s, k) };
        diffs.push(SparseMatrix::from_columns(dims[s + 1], columns));
    }
    Ok(FiniteComplex::new(dims, diffs)?)
}

/// `M_q` is nonzero exactly for the listed degrees within the computed
/// range, and the splitting theorem applies when they lie in `[l, l+1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupportVerdict {
    Applicable,
    NotApplicable,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Support {
    pub degrees: Vec<usize>,
    pub verdict: SupportVerdict,
    /// Homological depth the observation rests on.
    pub p_max: usize,
}

/// Observed support of `M` and whether it fits a window `[l, l+1]`.
pub fn m_support(t: &HomotopyTable) -> Support {
    let degrees = t.support();
    let verdict = match (degrees.first(), degrees.last()) {
        (None, _) => SupportVerdict::Applicable,
        (Some(&lo), Some(&hi)) if hi - lo <= 1 => {
            if t.p_max >= 2 {
                SupportVerdict::Applicable
            } else {
                SupportVerdict::Unknown
            }
        }
        _ => SupportVerdict::NotApplicable,
    };
    Support { degrees, verdict, p_max: t.p_max }
}

/// `h(R',t) sum_{i=0}^{m-l} (-1)^i beta_{i+l} t^i` with `h(R',t) = 1 / prod (1 - d_j t)`.
/// `exponents` are `d_2..d_m`, those of the deconed deformation, whose
/// Poincare polynomial supplies the `beta_i`.
pub fn hilbert_m_closed_form(exponents: &[usize], ell: usize) -> RationalFunctionRep {
    let beta = Polynomial::from_exponents(exponents);
    let m = exponents.len() + 1;
    let numerator: Vec<BigInt> = (0..=m.saturating_sub(ell))
        .map(|i| BigInt::from(if i % 2 == 0 { beta.coeff(i + ell) } else { -beta.coeff(i + ell) }))
        .collect();
    let mut denominator = vec![BigInt::one()];
    for &d in exponents {
        let mut next = vec![BigInt::zero(); denominator.len() + 1];
        for (i, a) in denominator.iter().enumerate() {
            next[i] += a;
            next[i + 1] -= a * d;
        }
        denominator = next;
    }
    RationalFunctionRep { numerator, denominator }
}

/// The closed form for a chain whose singular range is `(l, l)`; a
/// supersolvable chain has `l = m` and gives zero.
pub fn hilbert_m_for_chain(chain: &SolvableChain, outcome: SingularOutcome) -> Result<RationalFunctionRep, HomotopyError> {
    let exps = chain.exponents();
    let ell = match outcome {
        SingularOutcome::Supersolvable => exps.len(),
        SingularOutcome::Range(SingularRange { c, d }) if c == d => c,
        SingularOutcome::Range(SingularRange { c, d }) => {
            return Err(HomotopyError::NotGenericSlice { c, d, ell: chain.stage_ranks.last().copied().unwrap_or(0) })
        }
    };
    Ok(hilbert_m_closed_form(&exps[1..], ell))
}

/// `h(U,t,u) = h(R,t) (1 - u^{-2} h_R(M,t,u))^{-1}` up to homological degree
/// `p_max`. `M^p_q` enters at bidegree `(p + 2, q - 2)`.
pub fn hilbert_u(r_dims: &[usize], m: &HomotopyTable, verdict: Verdict, p_max: usize) -> Result<BigradedTable, HomotopyError> {
    if !verdict.applicable() {
        return Err(HomotopyError::HypothesisNotSatisfied(verdict));
    }
    if r_dims.len() <= p_max {
        return Err(HomotopyError::InsufficientDepth { have: r_dims.len().saturating_sub(1), need: p_max });
    }
    if p_max >= 2 && m.p_max < p_max - 2 {
        return Err(HomotopyError::InsufficientDepth { have: m.p_max + 2, need: p_max });
    }
    let r: Vec<BigInt> = r_dims.iter().map(|&d| BigInt::from(d)).collect();
    let entries = m.m.iter().map(|(k, v)| (*k, BigInt::from(*v))).collect();
    Ok(enveloping_series(&r, &entries, p_max))
}
