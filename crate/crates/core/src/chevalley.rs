//! Chevalley basis and the Lie bracket.
//!
//! Structure constants `c(beta, gamma)`, defined by
//! `[x_beta, x_gamma] = c(beta, gamma) x_{beta+gamma}`, are fixed by the
//! extraspecial-pair convention: for each non-simple positive root `xi` the
//! pair `(a, b)` with `a` minimal in canonical order gets `c(a, b) = +(p + 1)`,
//! where `p` is the largest integer with `b - p a` a root. Everything else
//! follows from the Chevalley relations, and [`ChevalleyBasis::verify_carter`]
//! and the Jacobi checks confirm the result after the fact.
//!
//! The Cartan part uses the simple coroots `h_i = [x_{alpha_i}, x_{-alpha_i}]`,
//! and `[h_i, x_beta] = <beta, alpha_i> x_beta`.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootsys::{Family, RootId, RootSystem};
use crate::sampling::{small_scalar, CheckReport, Coverage};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevalleyError {
    #[error("elements belong to different Chevalley bases")]
    MixedBasis,
    #[error("operation requires type D4, got {0}")]
    WrongType(String),
    #[error("{0:?} is not a permutation of the outer nodes 1, 3, 4")]
    InvalidPermutation([usize; 3]),
    #[error("torus parameter must be nonzero")]
    ZeroScalar,
    #[error("coroot vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Root(#[from] crate::rootsys::RootError),
}

pub type Result<T, E = ChevalleyError> = std::result::Result<T, E>;

static NEXT_BASIS_ID: AtomicU64 = AtomicU64::new(1);

/// A Chevalley basis `{x_beta} ∪ {h_i}` with its integer structure constants.
#[derive(Debug)]
pub struct ChevalleyBasis {
    id: u64,
    rs: Arc<RootSystem>,
    c: Vec<i32>,
    coroot: Vec<Vec<i32>>,
}

impl ChevalleyBasis {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        let c = structure_constants(&rs);
        let n = rs.rank();
        let coroot = rs
            .ids()
            .map(|b| {
                let norm = rs.ip2(b, b);
                (0..n)
                    .map(|i| {
                        let s = rs.simple(i);
                        let v = rs.coords(b)[i] * rs.ip2(s, s);
                        debug_assert_eq!(v % norm, 0);
                        v / norm
                    })
                    .collect()
            })
            .collect();
        ChevalleyBasis { id: NEXT_BASIS_ID.fetch_add(1, Ordering::Relaxed), rs, c, coroot }
    }

    /// Builds the root system and its basis in one go.
    pub fn for_type(dynkin: crate::rootsys::DynkinType) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::new(Arc::new(RootSystem::new(dynkin)?))))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// `c(beta, gamma)`; zero unless `beta + gamma` is a root.
    pub fn c(&self, beta: RootId, gamma: RootId) -> i32 {
        self.c[beta.index() * self.rs.len() + gamma.index()]
    }

    /// Coefficients of `h_beta = [x_beta, x_{-beta}]` over the simple coroots.
    pub fn coroot_coeffs(&self, beta: RootId) -> &[i32] {
        &self.coroot[beta.index()]
    }

    /// `[x, y]`.
    pub fn bracket<F: Scalar>(&self, x: &LieElement<F>, y: &LieElement<F>) -> Result<LieElement<F>> {
        if x.basis != self.id || y.basis != self.id {
            return Err(ChevalleyError::MixedBasis);
        }
        let rs = &*self.rs;
        let n = rs.rank();
        let mut h = vec![F::zero(); n];
        let mut roots: BTreeMap<RootId, F> = BTreeMap::new();
        let mut push = |k: RootId, v: F| {
            let e = roots.entry(k).or_insert_with(F::zero);
            *e = e.clone() + v;
        };

        for (&b, xb) in &x.roots {
            for (&g, yg) in &y.roots {
                if g == rs.neg(b) {
                    let prod = xb.clone() * yg.clone();
                    for (i, &k) in self.coroot_coeffs(b).iter().enumerate() {
                        if k != 0 {
                            h[i] = h[i].clone() + prod.clone() * F::from_i64(k as i64);
                        }
                    }
                } else if let Some(s) = rs.add(b, g) {
                    let c = self.c(b, g);
                    push(s, F::from_i64(c as i64) * xb.clone() * yg.clone());
                }
            }
        }
        // [h, x_beta] = sum_i h_i <beta, alpha_i> x_beta
        let weight = |h: &[F], b: RootId| -> F {
            let mut acc = F::zero();
            for (i, hi) in h.iter().enumerate() {
                if hi.is_zero() {
                    continue;
                }
                let p = rs.pairing(b, rs.simple(i));
                if p != 0 {
                    acc = acc + hi.clone() * F::from_i64(p as i64);
                }
            }
            acc
        };
        if x.h.iter().any(|v| !v.is_zero()) {
            for (&b, yb) in &y.roots {
                push(b, weight(&x.h, b) * yb.clone());
            }
        }
        if y.h.iter().any(|v| !v.is_zero()) {
            for (&b, xb) in &x.roots {
                push(b, -(weight(&y.h, b) * xb.clone()));
            }
        }
        roots.retain(|_, v| !v.is_zero());
        Ok(LieElement { basis: self.id, h, roots })
    }

    /// `ad(a_1) ad(a_2) ... ad(a_k) (target)`, innermost bracket last in the slice.
    pub fn ad_chain<F: Scalar>(&self, ops: &[&LieElement<F>], target: &LieElement<F>) -> Result<LieElement<F>> {
        let mut acc = target.clone();
        for op in ops.iter().rev() {
            acc = self.bracket(op, &acc)?;
        }
        Ok(acc)
    }

    pub fn zero<F: Scalar>(&self) -> LieElement<F> {
        LieElement { basis: self.id, h: vec![F::zero(); self.rs.rank()], roots: BTreeMap::new() }
    }

    /// The basis vector `x_beta`.
    pub fn x<F: Scalar>(&self, beta: RootId) -> LieElement<F> {
        let mut e = self.zero();
        e.roots.insert(beta, F::one());
        e
    }

    /// The simple coroot `h_i` (zero-based `i`).
    pub fn h_simple<F: Scalar>(&self, i: usize) -> LieElement<F> {
        let mut e = self.zero();
        e.h[i] = F::one();
        e
    }

    /// `h_beta = [x_beta, x_{-beta}]` expanded over the simple coroots.
    pub fn h<F: Scalar>(&self, beta: RootId) -> LieElement<F> {
        let mut e = self.zero();
        for (i, &k) in self.coroot_coeffs(beta).iter().enumerate() {
            e.h[i] = F::from_i64(k as i64);
        }
        e
    }

    /// Builds an element from a Cartan part and root coefficients.
    pub fn element<F: Scalar>(&self, h: Vec<F>, roots: impl IntoIterator<Item = (RootId, F)>) -> LieElement<F> {
        assert_eq!(h.len(), self.rs.rank());
        let mut e = LieElement { basis: self.id, h, roots: BTreeMap::new() };
        for (r, v) in roots {
            e.add_term(r, v);
        }
        e
    }

    /// Every basis vector: all `x_beta` in canonical order, then `h_1..h_n`.
    pub fn basis<F: Scalar>(&self) -> Vec<LieElement<F>> {
        let mut out: Vec<LieElement<F>> = self.rs.ids().map(|b| self.x(b)).collect();
        out.extend((0..self.rs.rank()).map(|i| self.h_simple(i)));
        out
    }

    /// Largest `p` with `gamma - p beta` a root.
    pub fn string_depth(&self, beta: RootId, gamma: RootId) -> i32 {
        let rs = &*self.rs;
        let mut p = 0;
        let mut cur = gamma;
        while let Some(next) = rs.sub(cur, beta) {
            p += 1;
            cur = next;
        }
        p
    }

    /// Checks antisymmetry, `c(b, g) = -c(-b, -g)`, `|c(b, g)| = p + 1`, and,
    /// for long roots, the sign rules: `c = ±1`, cyclic equality on triples
    /// summing to zero, and the four-term relation on quadruples summing to
    /// zero with no two opposite. The four-term relation is exhaustive or
    /// sampled according to `coverage`; everything else is always exhaustive.
    pub fn verify_carter(&self, coverage: Coverage) -> CheckReport {
        let rs = &*self.rs;
        let mut rep = CheckReport::default();
        let name = |b: RootId| format!("{:?}", rs.coords(b));

        for b in rs.ids() {
            for g in rs.ids() {
                let c = self.c(b, g);
                rep.record(c == -self.c(g, b), || format!("antisymmetry fails at {} {}", name(b), name(g)));
                rep.record(c == -self.c(rs.neg(b), rs.neg(g)), || {
                    format!("c(b,g) != -c(-b,-g) at {} {}", name(b), name(g))
                });
                if rs.add(b, g).is_some() {
                    let p = self.string_depth(b, g);
                    rep.record(c.abs() == p + 1, || format!("|c| != p+1 at {} {}", name(b), name(g)));
                    if rs.is_long(b) && rs.is_long(g) {
                        rep.record(c.abs() == 1, || format!("long pair constant {c} at {} {}", name(b), name(g)));
                    }
                    let d = rs.neg(rs.add(b, g).unwrap());
                    if rs.is_long(b) && rs.is_long(g) && rs.is_long(d) {
                        let ok = c == self.c(g, d) && c == self.c(d, b);
                        rep.record(ok, || format!("cyclic rule fails at {} {} {}", name(b), name(g), name(d)));
                    }
                }
            }
        }

        let long: Vec<RootId> = rs.ids().filter(|&b| rs.is_long(b)).collect();
        let mut buf = vec![0i32; rs.rank()];
        let mut four_term = |b: RootId, g: RootId, d: RootId, rep: &mut CheckReport| -> bool {
            for (k, slot) in buf.iter_mut().enumerate() {
                *slot = -(rs.coords(b)[k] + rs.coords(g)[k] + rs.coords(d)[k]);
            }
            let Some(e) = rs.find(&buf) else { return false };
            if !rs.is_long(e) {
                return false;
            }
            let quad = [b, g, d, e];
            for i in 0..4 {
                for j in i + 1..4 {
                    if quad[j] == rs.neg(quad[i]) {
                        return false;
                    }
                }
            }
            let v = self.c(b, g) * self.c(d, e) + self.c(g, d) * self.c(b, e) + self.c(d, b) * self.c(g, e);
            rep.record(v == 0, || format!("four-term relation = {v} at {} {} {} {}", name(b), name(g), name(d), name(e)));
            true
        };
        match coverage {
            Coverage::Exhaustive => {
                for &b in &long {
                    for &g in &long {
                        for &d in &long {
                            four_term(b, g, d, &mut rep);
                        }
                    }
                }
            }
            Coverage::Sampled { count, .. } => {
                let mut rng = coverage.rng();
                let mut hits = 0;
                let mut attempts = 0usize;
                while hits < count && attempts < count.saturating_mul(1000) {
                    attempts += 1;
                    let b = long[rng.gen_range(0..long.len())];
                    let g = long[rng.gen_range(0..long.len())];
                    let d = long[rng.gen_range(0..long.len())];
                    if four_term(b, g, d, &mut rep) {
                        hits += 1;
                    }
                }
            }
        }
        rep
    }

    /// Jacobi identity on basis triples.
    pub fn verify_jacobi(&self, coverage: Coverage) -> CheckReport {
        let basis: Vec<LieElement<Rational>> = self.basis();
        let mut rep = CheckReport::default();
        let check = |x: &LieElement<Rational>, y: &LieElement<Rational>, z: &LieElement<Rational>, rep: &mut CheckReport| {
            let j = self.jacobiator(x, y, z).expect("same basis");
            rep.record(j.is_zero(), || format!("Jacobi fails on {x:?}, {y:?}, {z:?}"));
        };
        match coverage {
            Coverage::Exhaustive => {
                for x in &basis {
                    for y in &basis {
                        for z in &basis {
                            check(x, y, z, &mut rep);
                        }
                    }
                }
            }
            Coverage::Sampled { count, .. } => {
                let mut rng = coverage.rng();
                for _ in 0..count {
                    let pick = |rng: &mut rand_chacha::ChaCha8Rng| &basis[rng.gen_range(0..basis.len())];
                    let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                    check(x, y, z, &mut rep);
                }
            }
        }
        rep
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
    pub fn jacobiator<F: Scalar>(&self, x: &LieElement<F>, y: &LieElement<F>, z: &LieElement<F>) -> Result<LieElement<F>> {
        let a = self.bracket(x, &self.bracket(y, z)?)?;
        let b = self.bracket(y, &self.bracket(z, x)?)?;
        let c = self.bracket(z, &self.bracket(x, y)?)?;
        Ok(a.add(&b).add(&c))
    }

    /// `c(b, g - rho) c(g, b - rho) c(b, -rho) c(g, -rho)` for orthogonal long
    /// roots `b`, `g` of alpha-height 1. Always 1 for a valid basis.
    pub fn aux2_product(&self, beta: RootId, gamma: RootId) -> Result<i32> {
        use crate::rootsys::RootError;
        let rs = &*self.rs;
        for r in [beta, gamma] {
            if rs.alpha_height(r) != 1 {
                return Err(RootError::NotHeight1(rs.coords(r).to_vec()).into());
            }
            if !rs.is_long(r) {
                return Err(RootError::NotLong(rs.coords(r).to_vec()).into());
            }
        }
        if beta == gamma || !rs.is_orthogonal(beta, gamma) {
            return Err(RootError::NotOrthogonal(rs.coords(beta).to_vec(), rs.coords(gamma).to_vec()).into());
        }
        let m_rho = rs.minus_rho();
        let g_minus_rho = rs.add(gamma, m_rho).expect("gamma - rho is a root");
        let b_minus_rho = rs.add(beta, m_rho).expect("beta - rho is a root");
        Ok(self.c(beta, g_minus_rho) * self.c(gamma, b_minus_rho) * self.c(beta, m_rho) * self.c(gamma, m_rho))
    }

    /// The automorphism of a D4 algebra induced by permuting the outer nodes.
    /// `perm[k]` is the image of node `[1, 3, 4][k]` (Bourbaki labels).
    pub fn diagram_automorphism_d4(&self, perm: [usize; 3]) -> Result<DiagramAutomorphism> {
        let rs = &*self.rs;
        let dt = rs.dynkin();
        if dt.family() != Family::D || dt.rank() != 4 {
            return Err(ChevalleyError::WrongType(dt.to_string()));
        }
        let mut sorted = perm;
        sorted.sort();
        if sorted != [1, 3, 4] {
            return Err(ChevalleyError::InvalidPermutation(perm));
        }
        // zero-based node map
        let mut node = [0usize, 1, 2, 3];
        for (k, &from) in [1usize, 3, 4].iter().enumerate() {
            node[from - 1] = perm[k] - 1;
        }
        let image_of = |b: RootId| -> RootId {
            let c = rs.coords(b);
            let mut out = vec![0i32; 4];
            for i in 0..4 {
                out[node[i]] = c[i];
            }
            rs.find(&out).expect("diagram symmetry maps roots to roots")
        };
        let root_image: Vec<RootId> = rs.ids().map(image_of).collect();
        let mut sign = vec![0i32; rs.len()];
        for &s in rs.simple_roots() {
            sign[s.index()] = 1;
            sign[rs.neg(s).index()] = 1;
        }
        // Positive roots come in increasing height, so beta - alpha_i is settled first.
        let positives: Vec<RootId> = rs.ids().filter(|&b| rs.root(b).is_positive()).collect();
        for &b in &positives {
            if sign[b.index()] != 0 {
                continue;
            }
            for negate in [false, true] {
                let target = if negate { rs.neg(b) } else { b };
                let (s, rest) = rs
                    .simple_roots()
                    .iter()
                    .find_map(|&s| {
                        let s = if negate { rs.neg(s) } else { s };
                        rs.sub(target, s).map(|rest| (s, rest))
                    })
                    .expect("non-simple root has a simple predecessor");
                let num = self.c(root_image[s.index()], root_image[rest.index()]);
                let den = self.c(s, rest);
                sign[target.index()] = sign[rest.index()] * num * den;
            }
        }
        Ok(DiagramAutomorphism { basis: self.id, root_image, sign, node })
    }

    /// The torus element `lambda(t)`: scales `x_beta` by `t^<beta, lambda>`,
    /// where `lambda` is given over the simple coroots. Fixes the Cartan part.
    pub fn torus_scale<F: Scalar>(&self, lambda: &[i64], t: &F, x: &LieElement<F>) -> Result<LieElement<F>> {
        if t.is_zero() {
            return Err(ChevalleyError::ZeroScalar);
        }
        if lambda.len() != self.rs.rank() {
            return Err(ChevalleyError::WrongLength { expected: self.rs.rank(), got: lambda.len() });
        }
        if x.basis != self.id {
            return Err(ChevalleyError::MixedBasis);
        }
        let mut out = x.clone();
        for (&b, v) in out.roots.iter_mut() {
            let e = self.torus_exponent(lambda, b);
            *v = v.clone() * t.pow_i(e);
        }
        Ok(out)
    }

    /// `<beta, lambda>` for `lambda` over the simple coroots.
    pub fn torus_exponent(&self, lambda: &[i64], beta: RootId) -> i64 {
        let rs = &*self.rs;
        lambda
            .iter()
            .enumerate()
            .map(|(i, &l)| l * rs.pairing(beta, rs.simple(i)) as i64)
            .sum()
    }

    /// Structure constants in canonical order, for every pair with `beta + gamma` a root.
    pub fn to_table(&self) -> Vec<ConstantEntry> {
        let rs = &*self.rs;
        let mut out = Vec::new();
        for b in rs.ids() {
            for g in rs.ids() {
                if rs.add(b, g).is_some() {
                    out.push(ConstantEntry {
                        beta: rs.coords(b).to_vec(),
                        gamma: rs.coords(g).to_vec(),
                        c: self.c(b, g),
                    });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub beta: Vec<i32>,
    pub gamma: Vec<i32>,
    pub c: i32,
}

/// A linear map of the Lie algebra induced by a D4 diagram symmetry.
#[derive(Debug, Clone)]
pub struct DiagramAutomorphism {
    basis: u64,
    root_image: Vec<RootId>,
    sign: Vec<i32>,
    node: [usize; 4],
}

impl DiagramAutomorphism {
    pub fn apply<F: Scalar>(&self, x: &LieElement<F>) -> Result<LieElement<F>> {
        if x.basis != self.basis {
            return Err(ChevalleyError::MixedBasis);
        }
        let mut h = vec![F::zero(); x.h.len()];
        for (i, v) in x.h.iter().enumerate() {
            h[self.node[i]] = v.clone();
        }
        let roots = x
            .roots
            .iter()
            .map(|(&b, v)| (self.root_image[b.index()], v.clone() * F::from_i64(self.sign[b.index()] as i64)))
            .collect();
        Ok(LieElement { basis: self.basis, h, roots })
    }

    /// Image of `x_beta` is `sign(beta) x_{image(beta)}`.
    pub fn root_image(&self, beta: RootId) -> (RootId, i32) {
        (self.root_image[beta.index()], self.sign[beta.index()])
    }
}

/// An element of the Lie algebra: a Cartan part over the simple coroots plus
/// a sparse combination of root vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct LieElement<F> {
    basis: u64,
    h: Vec<F>,
    roots: BTreeMap<RootId, F>,
}

impl<F: Scalar> LieElement<F> {
    pub fn h_part(&self) -> &[F] {
        &self.h
    }

    pub fn root_part(&self) -> &BTreeMap<RootId, F> {
        &self.roots
    }

    pub fn coeff(&self, beta: RootId) -> F {
        self.roots.get(&beta).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.roots.is_empty() && self.h.iter().all(|v| v.is_zero())
    }

    pub fn basis_id(&self) -> u64 {
        self.basis
    }

    fn add_term(&mut self, r: RootId, v: F) {
        let sum = self.coeff(r) + v;
        if sum.is_zero() {
            self.roots.remove(&r);
        } else {
            self.roots.insert(r, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "elements belong to different Chevalley bases");
        let mut out = self.clone();
        for (o, v) in out.h.iter_mut().zip(&other.h) {
            *o = o.clone() + v.clone();
        }
        for (&r, v) in &other.roots {
            out.add_term(r, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return LieElement { basis: self.basis, h: vec![F::zero(); self.h.len()], roots: BTreeMap::new() };
        }
        LieElement {
            basis: self.basis,
            h: self.h.iter().map(|v| v.clone() * s.clone()).collect(),
            roots: self.roots.iter().map(|(&r, v)| (r, v.clone() * s.clone())).collect(),
        }
    }

    /// Alpha-heights of the root vectors in the support.
    pub fn degrees(&self, rs: &RootSystem) -> Vec<i32> {
        let mut d: Vec<i32> = self.roots.keys().map(|&r| rs.alpha_height(r)).collect();
        if self.h.iter().any(|v| !v.is_zero()) {
            d.push(0);
        }
        d.sort();
        d.dedup();
        d
    }
}

impl<F: Scalar> std::fmt::Debug for LieElement<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, v) in self.h.iter().enumerate() {
            if !v.is_zero() {
                write!(f, "{}({v})h{}", if first { "" } else { " + " }, i + 1)?;
                first = false;
            }
        }
        for (r, v) in &self.roots {
            write!(f, "{}({v})x[{}]", if first { "" } else { " + " }, r.index())?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A random element with a sparse support, used by the sampled checks.
pub fn random_element<F: Scalar, R: Rng>(cb: &ChevalleyBasis, rng: &mut R, max_support: usize) -> LieElement<F> {
    let rs = cb.root_system();
    let mut e = cb.zero();
    let k = rng.gen_range(1..=max_support);
    for _ in 0..k {
        let slot = rng.gen_range(0..rs.len() + rs.rank());
        let v: F = small_scalar(rng);
        if slot < rs.len() {
            e.add_term(RootId(slot), v);
        } else {
            let i = slot - rs.len();
            e.h[i] = e.h[i].clone() + v;
        }
    }
    e
}

fn structure_constants(rs: &RootSystem) -> Vec<i32> {
    let n = rs.len();
    let positive = |r: RootId| rs.root(r).is_positive();
    let norm = |r: RootId| rs.ip2(r, r) as i64;
    let mut pos = vec![0i64; n * n];
    let at = |a: RootId, b: RootId| a.index() * n + b.index();

    // N(x, y) for any x, y with x + y a root, reduced to positive pairs.
    fn general(rs: &RootSystem, pos: &[i64], x: RootId, y: RootId) -> i64 {
        let n = rs.len();
        let Some(s) = rs.add(x, y) else { return 0 };
        let px = rs.root(x).is_positive();
        let py = rs.root(y).is_positive();
        if px && py {
            let v = pos[x.index() * n + y.index()];
            assert!(v != 0, "positive pair used before it was computed");
            return v;
        }
        if !px && !py {
            return -general(rs, pos, rs.neg(x), rs.neg(y));
        }
        let z = rs.neg(s);
        if !rs.root(z).is_positive() {
            return -general(rs, pos, rs.neg(x), rs.neg(y));
        }
        // N(x,y)/(z,z) = N(y,z)/(x,x) = N(z,x)/(y,y)
        let nz = rs.ip2(z, z) as i64;
        let (v, d) = if py {
            (general(rs, pos, y, z), rs.ip2(x, x) as i64)
        } else {
            (general(rs, pos, z, x), rs.ip2(y, y) as i64)
        };
        assert_eq!((v * nz) % d, 0);
        v * nz / d
    }

    let positives: Vec<RootId> = rs.ids().filter(|&r| positive(r)).collect();
    for &xi in &positives {
        // Pairs (r, s) of positive roots with r < s and r + s = xi.
        let mut pairs: Vec<(RootId, RootId)> = Vec::new();
        for &r in &positives {
            if let Some(s) = rs.sub(xi, r) {
                if positive(s) && r < s {
                    pairs.push((r, s));
                }
            }
        }
        let Some(&(a, b)) = pairs.first() else { continue };
        let mut p = 0;
        let mut cur = b;
        while let Some(next) = rs.sub(cur, a) {
            p += 1;
            cur = next;
        }
        let nab = (p + 1) as i64;
        pos[at(a, b)] = nab;
        pos[at(b, a)] = -nab;
        for &(r, s) in &pairs[1..] {
            // Four-term relation on (a, b, -r, -s), solved for N(r, s).
            let mr = rs.neg(r);
            let ms = rs.neg(s);
            let mut t = 0i64;
            if let Some(bmr) = rs.add(b, mr) {
                t += general(rs, &pos, b, mr) * general(rs, &pos, a, ms) * (4 / norm(bmr));
            }
            if let Some(amr) = rs.add(a, mr) {
                t += general(rs, &pos, mr, a) * general(rs, &pos, b, ms) * (4 / norm(amr));
            }
            let num = norm(xi) * t;
            let den = 4 * nab;
            assert_eq!(num % den, 0, "non-integral structure constant");
            let v = num / den;
            assert!(v != 0, "vanishing structure constant for a root sum");
            pos[at(r, s)] = v;
            pos[at(s, r)] = -v;
        }
    }

    let mut c = vec![0i32; n * n];
    for x in rs.ids() {
        for y in rs.ids() {
            if rs.add(x, y).is_some() {
                c[at(x, y)] = general(rs, &pos, x, y) as i32;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::DynkinType;
    use crate::sampling::rng_from_seed;

    type Q = Rational;

    fn cb(label: &str) -> Arc<ChevalleyBasis> {
        ChevalleyBasis::for_type(label.parse::<DynkinType>().unwrap()).unwrap()
    }

    #[test]
    fn extraspecial_pairs_are_positive() {
        let b = cb("e6");
        let rs = b.root_system();
        for xi in rs.ids().filter(|&r| rs.root(r).is_positive() && rs.root(r).height() > 1) {
            let a = rs
                .ids()
                .filter(|&r| rs.root(r).is_positive())
                .find(|&r| rs.sub(xi, r).is_some_and(|s| rs.root(s).is_positive()))
                .unwrap();
            let s = rs.sub(xi, a).unwrap();
            assert_eq!(b.c(a, s), b.string_depth(a, s) + 1);
        }
    }

    #[test]
    fn d4_constants_are_units() {
        let b = cb("d4");
        let rs = b.root_system();
        for x in rs.ids() {
            for y in rs.ids() {
                let c = b.c(x, y);
                if rs.add(x, y).is_some() {
                    assert!(c == 1 || c == -1);
                } else {
                    assert_eq!(c, 0);
                }
            }
        }
    }

    #[test]
    fn carter_facts_exhaustive_small_types() {
        for label in ["d4", "d5", "b4", "f4"] {
            let rep = cb(label).verify_carter(Coverage::Exhaustive);
            assert!(rep.is_clean(), "{label}: {:?}", &rep.violations[..rep.violations.len().min(5)]);
            assert!(rep.checked > 0);
        }
    }

    #[test]
    fn non_simply_laced_constants_reach_two() {
        for label in ["b4", "f4"] {
            let b = cb(label);
            let rs = b.root_system();
            let max = rs.ids().flat_map(|x| rs.ids().map(move |y| (x, y))).map(|(x, y)| b.c(x, y).abs()).max();
            assert_eq!(max, Some(2), "{label}");
        }
    }

    #[test]
    fn jacobi_exhaustive_d4_and_b4() {
        for label in ["d4", "b4"] {
            let rep = cb(label).verify_jacobi(Coverage::Exhaustive);
            assert!(rep.is_clean(), "{label}: {:?}", rep.violations.first());
        }
    }

    #[test]
    fn jacobi_sampled_f4_and_e6() {
        for label in ["f4", "e6"] {
            let rep = cb(label).verify_jacobi(Coverage::sampled(3, 3000));
            assert!(rep.is_clean(), "{label}: {:?}", rep.violations.first());
            assert_eq!(rep.checked, 3000);
        }
    }

    #[test]
    fn jacobi_on_random_elements() {
        let b = cb("e6");
        let mut rng = rng_from_seed(11);
        for _ in 0..20 {
            let x: LieElement<Q> = random_element(&b, &mut rng, 4);
            let y = random_element(&b, &mut rng, 4);
            let z = random_element(&b, &mut rng, 4);
            assert!(b.jacobiator(&x, &y, &z).unwrap().is_zero());
        }
    }

    #[test]
    fn bracket_basics() {
        let b = cb("d4");
        let rs = b.root_system();
        let mut rng = rng_from_seed(5);
        let x: LieElement<Q> = random_element(&b, &mut rng, 6);
        assert!(b.bracket(&x, &x).unwrap().is_zero());
        for beta in rs.ids() {
            let xb: LieElement<Q> = b.x(beta);
            let got = b.bracket(&xb, &b.x(rs.neg(beta))).unwrap();
            assert_eq!(got, b.h(beta));
            for i in 0..rs.rank() {
                let hx = b.bracket(&b.h_simple(i), &xb).unwrap();
                let p = rs.pairing(beta, rs.simple(i)) as i64;
                assert_eq!(hx, xb.scale(&Q::from_i64(p)));
            }
        }
    }

    #[test]
    fn h_rho_grades_by_alpha_height() {
        for label in ["d4", "e7", "b4", "f4"] {
            let b = cb(label);
            let rs = b.root_system();
            let h_rho: LieElement<Q> = b.h(rs.rho());
            for beta in rs.ids() {
                let got = b.bracket(&h_rho, &b.x(beta)).unwrap();
                let k = rs.alpha_height(beta) as i64;
                assert_eq!(got, b.x::<Q>(beta).scale(&Q::from_i64(k)), "{label}");
            }
        }
    }

    #[test]
    fn mixed_basis_is_rejected() {
        let a = cb("d4");
        let b = cb("d4");
        let x: LieElement<Q> = a.x(a.root_system().rho());
        let y: LieElement<Q> = b.x(b.root_system().rho());
        assert_eq!(a.bracket(&x, &y), Err(ChevalleyError::MixedBasis));
    }

    #[test]
    fn aux2_product_is_one() {
        for label in ["d4", "e6", "b4", "f4"] {
            let b = cb(label);
            let rs = b.root_system();
            let mut seen = 0;
            for &x in rs.height1_roots() {
                for &y in rs.height1_roots() {
                    if x != y && rs.is_long(x) && rs.is_long(y) && rs.is_orthogonal(x, y) {
                        assert_eq!(b.aux2_product(x, y).unwrap(), 1, "{label}");
                        seen += 1;
                    }
                }
            }
            assert!(seen > 0);
        }
        let b = cb("d4");
        let a = b.root_system().alpha();
        assert!(b.aux2_product(a, a).is_err());
    }

    #[test]
    fn triality_fixes_rho_and_preserves_bracket() {
        let b = cb("d4");
        let rs = b.root_system();
        let perms = [[1, 3, 4], [3, 1, 4], [4, 3, 1], [1, 4, 3], [3, 4, 1], [4, 1, 3]];
        let basis: Vec<LieElement<Q>> = b.basis();
        for perm in perms {
            let phi = b.diagram_automorphism_d4(perm).unwrap();
            assert_eq!(phi.root_image(rs.rho()), (rs.rho(), 1));
            assert_eq!(phi.root_image(rs.minus_rho()), (rs.minus_rho(), 1));
            for x in &basis {
                for y in &basis {
                    let lhs = phi.apply(&b.bracket(x, y).unwrap()).unwrap();
                    let rhs = b.bracket(&phi.apply(x).unwrap(), &phi.apply(y).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{perm:?}");
                }
            }
        }
        let id = b.diagram_automorphism_d4([1, 3, 4]).unwrap();
        for x in &basis {
            assert_eq!(&id.apply(x).unwrap(), x);
        }
        assert!(matches!(b.diagram_automorphism_d4([1, 1, 4]), Err(ChevalleyError::InvalidPermutation(_))));
        assert!(matches!(cb("d5").diagram_automorphism_d4([1, 3, 4]), Err(ChevalleyError::WrongType(_))));
    }

    #[test]
    fn nested_bracket_for_rho_is_symmetric_in_outer_nodes() {
        let b = cb("d4");
        let rs = b.root_system();
        let x = |i: usize| -> LieElement<Q> { b.x(rs.simple(i - 1)) };
        let nested = |o: [usize; 3]| {
            b.ad_chain(&[&x(2), &x(o[2]), &x(o[1]), &x(o[0])], &x(2)).unwrap()
        };
        let base = nested([1, 3, 4]);
        let c = base.coeff(rs.rho());
        assert!(c == Q::from_i64(1) || c == Q::from_i64(-1));
        for o in [[3, 1, 4], [4, 3, 1], [1, 4, 3], [3, 4, 1], [4, 1, 3]] {
            assert_eq!(nested(o), base);
        }
        // c(a1, a2) c(a3, a1 + a2) = c(a3, a2) c(a1, a2 + a3)
        let s = |i: usize| rs.simple(i - 1);
        let a12 = rs.add(s(1), s(2)).unwrap();
        let a23 = rs.add(s(2), s(3)).unwrap();
        assert_eq!(b.c(s(1), s(2)) * b.c(s(3), a12), b.c(s(3), s(2)) * b.c(s(1), a23));
    }

    #[test]
    fn torus_examples() {
        let b = cb("d4");
        let rs = b.root_system();
        let t = Q::from_i64(3);
        let lam = [1, 0, 0, 0];
        let beta = rs.lookup(&[1, 1, 1, 0]).unwrap();
        let delta = rs.lookup(&[0, 1, 1, 1]).unwrap();
        let xb: LieElement<Q> = b.x(beta);
        assert_eq!(b.torus_scale(&lam, &t, &xb).unwrap(), xb.scale(&t));
        let xd: LieElement<Q> = b.x(delta);
        assert_eq!(b.torus_scale(&lam, &t, &xd).unwrap(), xd.scale(&Q::from_ratio(1, 3)));
        let mut rng = rng_from_seed(2);
        let e: LieElement<Q> = random_element(&b, &mut rng, 6);
        assert_eq!(b.torus_scale(&lam, &Q::from_i64(1), &e).unwrap(), e);
        assert_eq!(b.torus_scale(&lam, &Q::from_i64(0), &e), Err(ChevalleyError::ZeroScalar));
    }

    #[test]
    fn torus_action_is_a_homomorphism() {
        let b = cb("e6");
        let mut rng = rng_from_seed(9);
        let lam = [1, -2, 0, 3, 1, 0];
        let t = Q::from_ratio(2, 5);
        for _ in 0..20 {
            let x: LieElement<Q> = random_element(&b, &mut rng, 5);
            let y: LieElement<Q> = random_element(&b, &mut rng, 5);
            let lhs = b.torus_scale(&lam, &t, &b.bracket(&x, &y).unwrap()).unwrap();
            let rhs = b
                .bracket(&b.torus_scale(&lam, &t, &x).unwrap(), &b.torus_scale(&lam, &t, &y).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn structure_constants_are_deterministic() {
        let a = cb("e7");
        let b = cb("e7");
        assert_eq!(a.to_table(), b.to_table());
    }
}
