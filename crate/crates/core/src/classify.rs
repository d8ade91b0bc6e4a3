//! Rank of elements of `g_1`, strictly regular elements, and the eigenspace
//! decomposition under `h = h_{rho - alpha} - h_alpha`.
//!
//! The rank is read off the chain of conditions
//! `x = 0`, strictly regular, `xxx = 0`, `q(x) = 0`, `q(x) != 0`.

use serde::Serialize;
use thiserror::Error;

use crate::chevalley::LieElement;
use crate::fts::{FtsContext, FtsError, G1Element};
use crate::rootsys::{Family, RootId};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("the zero element has no rank-one test")]
    ZeroElement,
    #[error("q(x) = 0, so x is not a sum of two strictly regular elements in general position")]
    NotRank4,
    #[error("q(x)/6 = {0} is not a square in the scalar field")]
    NotASquare(String),
    #[error("element is not supported on the requested eigenspace")]
    NotInEigenspace,
    #[error("needs a simply-laced type, got {0}")]
    NotSimplyLaced(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Fts(#[from] FtsError),
}

pub type Result<T, E = ClassifyError> = std::result::Result<T, E>;

/// Outcome of [`rank_classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport<F> {
    pub rank: u8,
    pub q_value: F,
    pub xxx_nonzero: bool,
    pub strictly_regular: bool,
    /// Set for rank 2 in type D, where the rank-2 locus may hold several orbits.
    pub level2_ambiguous: bool,
}

/// `xxy` lies on the line through `x` for every basis vector `y`.
pub fn is_strictly_regular<F: Scalar>(ctx: &FtsContext, x: &G1Element<F>) -> Result<bool> {
    let (pivot, px) = x.terms().next().ok_or(ClassifyError::ZeroElement)?;
    let px = px.clone();
    Ok(ctx.xx_map(x).iter().all(|v| {
        let k = v.coeff(pivot) / px.clone();
        *v == x.scale(&k)
    }))
}

/// `x x g_1` is one-dimensional.
pub fn is_rank_one<F: Scalar>(ctx: &FtsContext, x: &G1Element<F>) -> Result<bool> {
    if x.is_zero() {
        return Err(ClassifyError::ZeroElement);
    }
    Ok(span_rank(ctx, &ctx.xx_map(x)) == 1)
}

/// Dimension of the span of a list of elements, by exact Gaussian elimination.
pub fn span_rank<F: Scalar>(ctx: &FtsContext, vs: &[G1Element<F>]) -> usize {
    let cols = ctx.height1();
    let mut rows: Vec<Vec<F>> = vs
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| cols.iter().map(|&r| v.coeff(r)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone() / pivot[c].clone();
            for k in c..cols.len() {
                if !pivot[k].is_zero() {
                    row[k] = row[k].clone() - f.clone() * pivot[k].clone();
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_classify<F: Scalar>(ctx: &FtsContext, x: &G1Element<F>) -> Result<RankReport<F>> {
    if x.is_zero() {
        return Ok(RankReport {
            rank: 0,
            q_value: F::zero(),
            xxx_nonzero: false,
            strictly_regular: false,
            level2_ambiguous: false,
        });
    }
    let q_value = ctx.quartic(x)?;
    let xxx_nonzero = !ctx.triple_product(x, x, x).is_zero();
    let strictly_regular = is_strictly_regular(ctx, x)?;
    let rank = if strictly_regular {
        1
    } else if !xxx_nonzero {
        2
    } else if q_value.is_zero() {
        3
    } else {
        4
    };
    let level2_ambiguous = rank == 2 && ctx.dynkin().family() == Family::D;
    Ok(RankReport { rank, q_value, xxx_nonzero, strictly_regular, level2_ambiguous })
}

/// Writes `x` with `q(x) != 0` as `u + v` with `u`, `v` strictly regular.
///
/// From `xxx = 3<v,u>(u - v)` and `q(x) = 6<v,u>^2`: with `s = sqrt(q/6)`,
/// `u, v = (x ± xxx/(3s)) / 2`. The pair is unique up to order.
pub fn decompose_rank4<F: Scalar>(ctx: &FtsContext, x: &G1Element<F>) -> Result<(G1Element<F>, G1Element<F>)> {
    let q = ctx.quartic(x)?;
    if q.is_zero() {
        return Err(ClassifyError::NotRank4);
    }
    let r = q / F::from_i64(6);
    let s = r.sqrt().ok_or_else(|| ClassifyError::NotASquare(r.to_string()))?;
    let xxx = ctx.triple_product(x, x, x);
    let t = xxx.scale(&(F::one() / (F::from_i64(3) * s)));
    let half = F::from_ratio(1, 2);
    let u = x.add(&t).scale(&half);
    let v = x.sub(&t).scale(&half);
    for w in [&u, &v] {
        if w.is_zero() || !is_strictly_regular(ctx, w)? {
            return Err(ClassifyError::Inconsistent(format!("summand {w:?} is not strictly regular")));
        }
    }
    Ok((u, v))
}

/// Basis vectors of `g_1` grouped by their eigenvalue under `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenDecomposition {
    pub minus3: Vec<RootId>,
    pub minus1: Vec<RootId>,
    pub plus1: Vec<RootId>,
    pub plus3: Vec<RootId>,
}

impl EigenDecomposition {
    pub fn dims(&self) -> [usize; 4] {
        [self.minus3.len(), self.minus1.len(), self.plus1.len(), self.plus3.len()]
    }
}

fn require_simply_laced(ctx: &FtsContext) -> Result<()> {
    if ctx.dynkin().is_simply_laced() {
        Ok(())
    } else {
        Err(ClassifyError::NotSimplyLaced(ctx.dynkin().to_string()))
    }
}

/// Eigenvalue of `x_beta` under `h = h_{rho - alpha} - h_alpha`, i.e. `<beta, rho - alpha> - <beta, alpha>`.
pub fn h_eigenvalue(ctx: &FtsContext, beta: RootId) -> i32 {
    let rs = ctx.root_system();
    let a = rs.alpha();
    let ra = rs.rho_minus(a).expect("rho - alpha is a root");
    rs.pairing(beta, ra) - rs.pairing(beta, a)
}

/// The element `h = h_{rho - alpha} - h_alpha` of the Cartan subalgebra.
pub fn h_element<F: Scalar>(ctx: &FtsContext) -> LieElement<F> {
    let rs = ctx.root_system();
    let cb = ctx.basis();
    let a = rs.alpha();
    cb.h::<F>(rs.rho_minus(a).unwrap()).sub(&cb.h(a))
}

pub fn eigen_decompose(ctx: &FtsContext) -> Result<EigenDecomposition> {
    require_simply_laced(ctx)?;
    let mut d = EigenDecomposition { minus3: vec![], minus1: vec![], plus1: vec![], plus3: vec![] };
    for &b in ctx.height1() {
        match h_eigenvalue(ctx, b) {
            -3 => d.minus3.push(b),
            -1 => d.minus1.push(b),
            1 => d.plus1.push(b),
            3 => d.plus3.push(b),
            e => return Err(ClassifyError::Inconsistent(format!("eigenvalue {e} on g_1"))),
        }
    }
    Ok(d)
}

fn cubic<F: Scalar>(ctx: &FtsContext, anchor: RootId, allowed: &[RootId], a: &G1Element<F>) -> Result<F> {
    if a.support().any(|r| !allowed.contains(&r)) {
        return Err(ClassifyError::NotInEigenspace);
    }
    let w = ctx.x::<F>(anchor)?;
    Ok(ctx.bilinear(&w, &ctx.triple_product(a, a, a)) / F::from_i64(6))
}

/// `f_1(a) = q(x_alpha, a, a, a) / 6` for `a` in the `+1` eigenspace.
pub fn cubic_f1<F: Scalar>(ctx: &FtsContext, a: &G1Element<F>) -> Result<F> {
    let d = eigen_decompose(ctx)?;
    cubic(ctx, ctx.root_system().alpha(), &d.plus1, a)
}

/// `f_2(b) = q(x_{rho - alpha}, b, b, b) / 6` for `b` in the `-1` eigenspace.
pub fn cubic_f2<F: Scalar>(ctx: &FtsContext, b: &G1Element<F>) -> Result<F> {
    let d = eigen_decompose(ctx)?;
    let rs = ctx.root_system();
    cubic(ctx, rs.rho_minus(rs.alpha()).unwrap(), &d.minus1, b)
}

/// `x_{b1} + ... + x_{bk}` for the first `k` roots of a mutually orthogonal
/// quadruple through `alpha`; `k = 4` uses `x_alpha + x_{rho - alpha}` instead.
pub fn orbit_representatives<F: Scalar>(ctx: &FtsContext) -> Result<Vec<G1Element<F>>> {
    let quad = orthogonal_quadruple(ctx)?;
    let mut reps = vec![G1Element::zero()];
    for k in 1..=3 {
        reps.push(ctx.sum_of(&quad[..k])?);
    }
    reps.push(ctx.rank4_representative());
    Ok(reps)
}

/// The first mutually orthogonal quadruple of alpha-height-1 roots containing `alpha`.
pub fn orthogonal_quadruple(ctx: &FtsContext) -> Result<[RootId; 4]> {
    let rs = ctx.root_system();
    let a = rs.alpha();
    let g = ctx
        .height1()
        .iter()
        .copied()
        .find(|&g| g != a && rs.is_long(g) && rs.is_orthogonal(a, g))
        .ok_or_else(|| ClassifyError::Inconsistent("no long root orthogonal to alpha".into()))?;
    Ok(rs.extend_orthogonal_pair(a, g).map_err(FtsError::from)?)
}
