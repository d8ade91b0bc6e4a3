//! The Freudenthal triple system on `g_1`.
//!
//! With `g = g_{-2} + g_{-1} + g_0 + g_1 + g_2` graded by alpha-height, the
//! forms on `g_1` are read off from brackets:
//!
//! * `[x, y] = <x, y> x_rho`
//! * `(ad x)^4 x_{-rho} = q(x) x_rho`
//! * `q(w, x, y, z)` is the full polarization of `q`, normalized so that
//!   `q(x, x, x, x) = q(x)`
//! * `xyz` is the unique element of `g_1` with `<w, xyz> = q(w, x, y, z)`.
//!
//! `q` and `<-, ->` are evaluated from their defining brackets. The triple
//! product would need many bracket chains per call, so the context instead
//! caches `q` on basis quadruples (itself computed by the bracket route) and
//! contracts against that table.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chevalley::{ChevalleyBasis, ChevalleyError, LieElement};
use crate::rootsys::{DynkinType, QuadrupleClass, RootError, RootId, RootSystem};
use crate::sampling::small_scalar;
use crate::scalar::{Fp, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FtsError {
    #[error("root {0:?} does not have alpha-height 1")]
    NotHeight1(Vec<i32>),
    #[error("(ad x)^4 x_-rho left the top graded piece; the basis is inconsistent")]
    InternalGrading,
    #[error("closed form needs a simply-laced type, got {0}")]
    NotSimplyLaced(String),
    #[error("element is for type {got}, context is {expected}")]
    TypeMismatch { expected: String, got: String },
    #[error("bad entry: {0}")]
    BadEntry(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
}

pub type Result<T, E = FtsError> = std::result::Result<T, E>;

/// A sparse element of `g_1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct G1Element<F> {
    coeffs: BTreeMap<RootId, F>,
}

impl<F: Scalar> Default for G1Element<F> {
    fn default() -> Self {
        G1Element { coeffs: BTreeMap::new() }
    }
}

impl<F: Scalar> G1Element<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeff(&self, beta: RootId) -> F {
        self.coeffs.get(&beta).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (RootId, &F)> + '_ {
        self.coeffs.iter().map(|(&r, v)| (r, v))
    }

    pub fn support(&self) -> impl Iterator<Item = RootId> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    fn add_term(&mut self, r: RootId, v: F) {
        let s = self.coeff(r) + v;
        if s.is_zero() {
            self.coeffs.remove(&r);
        } else {
            self.coeffs.insert(r, s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&r, v) in &other.coeffs {
            out.add_term(r, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        G1Element { coeffs: self.coeffs.iter().map(|(&r, v)| (r, v.clone() * s.clone())).collect() }
    }

    /// Map the coefficients into another field.
    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> G1Element<G> {
        let mut out = G1Element::zero();
        for (&r, v) in &self.coeffs {
            out.add_term(r, f(v));
        }
        out
    }
}

impl<F: Scalar> std::fmt::Debug for G1Element<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (r, v)) in self.coeffs.iter().enumerate() {
            write!(f, "{}({v})x[{}]", if i == 0 { "" } else { " + " }, r.index())?;
        }
        Ok(())
    }
}

/// Exact reduced fraction with machine-sized parts, used for cached tensor values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Frac {
    num: i64,
    den: i64,
}

impl Frac {
    fn new(num: i64, den: i64) -> Self {
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let s = if den < 0 { -1 } else { 1 };
        Frac { num: s * num / g, den: s * den / g }
    }

    fn to_scalar<F: Scalar>(self) -> F {
        if self.den == 1 {
            F::from_i64(self.num)
        } else {
            F::from_ratio(self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// A 61-bit prime field used to run integer bracket chains without bignums.
/// Chain values on basis vectors are small integers, so the symmetric lift
/// recovers them exactly.
type Wide = Fp<2_305_843_009_213_693_951>;

fn lift(v: Wide) -> i64 {
    const P: u64 = 2_305_843_009_213_693_951;
    let v = v.value();
    if v > P / 2 {
        -((P - v) as i64)
    } else {
        v as i64
    }
}

const PERMS4: [[usize; 4]; 24] = {
    let mut out = [[0; 4]; 24];
    let mut n = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a != b && a != c && b != c {
                    out[n] = [a, b, c, 6 - a - b - c];
                    n += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

/// Forms and triple product on `g_1` for one Chevalley basis.
#[derive(Debug)]
pub struct FtsContext {
    cb: Arc<ChevalleyBasis>,
    h1: Vec<RootId>,
    slot: Vec<Option<usize>>,
    partner: Vec<usize>,
    pair_c: Vec<i32>,
    /// `[g, d, e] -> (b, q(x_b, x_g, x_d, x_e) / c(b, rho - b))`; the result
    /// lands on `x_{rho - b}` in `x_g x_d x_e`.
    tensor: Vec<Option<(usize, Frac)>>,
}

impl FtsContext {
    pub fn new(cb: Arc<ChevalleyBasis>) -> Self {
        let rs = cb.root_system();
        let h1 = rs.height1_roots().to_vec();
        let n1 = h1.len();
        let mut slot = vec![None; rs.len()];
        for (i, &r) in h1.iter().enumerate() {
            slot[r.index()] = Some(i);
        }
        let partner: Vec<usize> =
            h1.iter().map(|&b| slot[rs.rho_minus(b).expect("rho - beta is a root").index()].unwrap()).collect();
        let pair_c: Vec<i32> = h1.iter().zip(&partner).map(|(&b, &p)| cb.c(b, h1[p])).collect();

        let mut tensor = vec![None; n1 * n1 * n1];
        let mut cache: HashMap<[usize; 4], Frac> = HashMap::new();
        let two_rho: Vec<i32> = rs.coords(rs.rho()).iter().map(|c| 2 * c).collect();
        let mut need = vec![0i32; rs.rank()];
        for g in 0..n1 {
            for d in g..n1 {
                for e in d..n1 {
                    for (k, slot_k) in need.iter_mut().enumerate() {
                        *slot_k = two_rho[k] - rs.coords(h1[g])[k] - rs.coords(h1[d])[k] - rs.coords(h1[e])[k];
                    }
                    let Some(b) = rs.find(&need).and_then(|r| slot[r.index()]) else { continue };
                    let mut key = [b, g, d, e];
                    key.sort();
                    let val = *cache.entry(key).or_insert_with(|| {
                        basis_quadrilinear_frac(&cb, [h1[key[0]], h1[key[1]], h1[key[2]], h1[key[3]]])
                    });
                    if val.num == 0 {
                        continue;
                    }
                    let entry = Frac::new(val.num, val.den * pair_c[b] as i64);
                    for [i, j, k] in [[g, d, e], [g, e, d], [d, g, e], [d, e, g], [e, g, d], [e, d, g]] {
                        tensor[(i * n1 + j) * n1 + k] = Some((b, entry));
                    }
                }
            }
        }
        FtsContext { cb, h1, slot, partner, pair_c, tensor }
    }

    pub fn for_type(dynkin: DynkinType) -> Result<Self> {
        Ok(Self::new(ChevalleyBasis::for_type(dynkin)?))
    }

    pub fn basis(&self) -> &Arc<ChevalleyBasis> {
        &self.cb
    }

    pub fn root_system(&self) -> &RootSystem {
        self.cb.root_system()
    }

    pub fn dynkin(&self) -> DynkinType {
        self.root_system().dynkin()
    }

    /// `dim g_1`.
    pub fn dim(&self) -> usize {
        self.h1.len()
    }

    pub fn height1(&self) -> &[RootId] {
        &self.h1
    }

    /// Builds an element, rejecting roots outside alpha-height 1.
    pub fn element<F: Scalar>(&self, terms: impl IntoIterator<Item = (RootId, F)>) -> Result<G1Element<F>> {
        let mut out = G1Element::zero();
        for (r, v) in terms {
            self.check_height1(r)?;
            out.add_term(r, v);
        }
        Ok(out)
    }

    fn check_height1(&self, r: RootId) -> Result<()> {
        let rs = self.root_system();
        if r.index() >= rs.len() || self.slot[r.index()].is_none() {
            let coords = if r.index() < rs.len() { rs.coords(r).to_vec() } else { vec![] };
            return Err(FtsError::NotHeight1(coords));
        }
        Ok(())
    }

    /// The basis vector `x_beta` of `g_1`.
    pub fn x<F: Scalar>(&self, beta: RootId) -> Result<G1Element<F>> {
        self.element([(beta, F::one())])
    }

    /// Sum of basis vectors.
    pub fn sum_of<F: Scalar>(&self, roots: &[RootId]) -> Result<G1Element<F>> {
        self.element(roots.iter().map(|&r| (r, F::one())))
    }

    /// `x_alpha + x_{rho - alpha}`.
    pub fn rank4_representative<F: Scalar>(&self) -> G1Element<F> {
        let rs = self.root_system();
        let a = rs.alpha();
        self.sum_of(&[a, rs.rho_minus(a).unwrap()]).unwrap()
    }

    pub fn to_lie<F: Scalar>(&self, x: &G1Element<F>) -> LieElement<F> {
        self.cb.element(vec![F::zero(); self.root_system().rank()], x.terms().map(|(r, v)| (r, v.clone())))
    }

    /// The `g_1` part of a Lie algebra element. Fails if anything else is present.
    pub fn from_lie<F: Scalar>(&self, x: &LieElement<F>) -> Result<G1Element<F>> {
        if x.h_part().iter().any(|v| !v.is_zero()) {
            return Err(FtsError::NotHeight1(vec![0; self.root_system().rank()]));
        }
        self.element(x.root_part().iter().map(|(&r, v)| (r, v.clone())))
    }

    /// `c(beta, rho - beta)` for `beta` of alpha-height 1.
    pub fn pairing_constant(&self, beta: RootId) -> Result<i32> {
        self.check_height1(beta)?;
        Ok(self.pair_c[self.slot[beta.index()].unwrap()])
    }

    /// `<x, y>`, defined by `[x, y] = <x, y> x_rho`.
    pub fn bilinear<F: Scalar>(&self, x: &G1Element<F>, y: &G1Element<F>) -> F {
        let mut acc = F::zero();
        for (b, xb) in x.terms() {
            let i = self.slot[b.index()].expect("element of g_1");
            let p = self.h1[self.partner[i]];
            if let Some(yp) = y.coeffs.get(&p) {
                acc = acc + xb.clone() * yp.clone() * F::from_i64(self.pair_c[i] as i64);
            }
        }
        acc
    }

    /// `<x, y>` computed by bracketing in the full algebra.
    pub fn bilinear_by_bracket<F: Scalar>(&self, x: &G1Element<F>, y: &G1Element<F>) -> Result<F> {
        let z = self.cb.bracket(&self.to_lie(x), &self.to_lie(y))?;
        self.top_coefficient(&z)
    }

    fn top_coefficient<F: Scalar>(&self, z: &LieElement<F>) -> Result<F> {
        let rho = self.root_system().rho();
        if z.h_part().iter().any(|v| !v.is_zero()) || z.root_part().keys().any(|&r| r != rho) {
            return Err(FtsError::InternalGrading);
        }
        Ok(z.coeff(rho))
    }

    /// `q(x)`, from `(ad x)^4 x_{-rho} = q(x) x_rho`.
    pub fn quartic<F: Scalar>(&self, x: &G1Element<F>) -> Result<F> {
        let lx = self.to_lie(x);
        let mut acc: LieElement<F> = self.cb.x(self.root_system().minus_rho());
        for _ in 0..4 {
            acc = self.cb.bracket(&lx, &acc)?;
        }
        self.top_coefficient(&acc)
    }

    /// `q(w, x, y, z)` as the average over all orderings of
    /// `ad(a) ad(b) ad(c) ad(d) x_{-rho}`.
    pub fn quadrilinear<F: Scalar>(
        &self,
        w: &G1Element<F>,
        x: &G1Element<F>,
        y: &G1Element<F>,
        z: &G1Element<F>,
    ) -> Result<F> {
        let args = [self.to_lie(w), self.to_lie(x), self.to_lie(y), self.to_lie(z)];
        let m_rho: LieElement<F> = self.cb.x(self.root_system().minus_rho());
        let mut acc = F::zero();
        for p in PERMS4 {
            let v = self.cb.ad_chain(&[&args[p[0]], &args[p[1]], &args[p[2]], &args[p[3]]], &m_rho)?;
            acc = acc + self.top_coefficient(&v)?;
        }
        Ok(acc / F::from_i64(24))
    }

    /// `q(x_b1, x_b2, x_b3, x_b4)` for roots of alpha-height 1, by the bracket route.
    pub fn basis_quadrilinear(&self, q: [RootId; 4]) -> Result<Rational> {
        for &b in &q {
            self.check_height1(b)?;
        }
        let f = basis_quadrilinear_frac(&self.cb, q);
        Ok(Rational::new(BigInt::from(f.num), BigInt::from(f.den)))
    }

    /// `q(w, x, y, z) = <w, xyz>` through the cached tensor.
    pub fn quadrilinear_fast<F: Scalar>(
        &self,
        w: &G1Element<F>,
        x: &G1Element<F>,
        y: &G1Element<F>,
        z: &G1Element<F>,
    ) -> F {
        self.bilinear(w, &self.triple_product(x, y, z))
    }

    /// Closed-form value of `q` on four basis vectors of long alpha-height-1
    /// roots, by the case split on the quadruple.
    pub fn quartic_closed_form<F: Scalar>(&self, q: [RootId; 4]) -> Result<F> {
        let rs = self.root_system();
        if !rs.dynkin().is_simply_laced() {
            return Err(FtsError::NotSimplyLaced(rs.dynkin().to_string()));
        }
        let m_rho = rs.minus_rho();
        let c = |a: RootId, b: RootId| F::from_i64(self.cb.c(a, b) as i64);
        let minus = |b: RootId| rs.add(b, m_rho).expect("beta - rho is a root");
        Ok(match rs.classify_quadruple(q)? {
            QuadrupleClass::NotTwoRho => F::zero(),
            QuadrupleClass::EqualPairs { .. } => F::one(),
            QuadrupleClass::RhoPairs { beta, gamma } => -(c(beta, m_rho) * c(gamma, m_rho)) / F::from_i64(2),
            QuadrupleClass::MutuallyOrthogonal => {
                let [b1, b2, b3, b4] = q;
                c(b1, minus(b4)) * c(b2, minus(b1)) * c(b3, minus(b4)) * c(b4, minus(b1))
            }
        })
    }

    /// `xyz`, with `<w, xyz> = q(w, x, y, z)` for every `w`.
    pub fn triple_product<F: Scalar>(&self, x: &G1Element<F>, y: &G1Element<F>, z: &G1Element<F>) -> G1Element<F> {
        let n1 = self.dim();
        let mut out: Vec<Option<F>> = vec![None; n1];
        let xs = self.dense_terms(x);
        let ys = self.dense_terms(y);
        let zs = self.dense_terms(z);
        for &(g, xg) in &xs {
            for &(d, yd) in &ys {
                let xy = xg.clone() * yd.clone();
                let row = (g * n1 + d) * n1;
                for &(e, ze) in &zs {
                    if let Some((b, v)) = self.tensor[row + e] {
                        let t = v.to_scalar::<F>() * xy.clone() * ze.clone();
                        let o = &mut out[self.partner[b]];
                        *o = Some(match o.take() {
                            Some(s) => s + t,
                            None => t,
                        });
                    }
                }
            }
        }
        self.from_dense(out)
    }

    /// `xxy` for every basis vector `y = x_delta` of `g_1`, indexed like [`height1`](Self::height1).
    pub fn xx_map<F: Scalar>(&self, x: &G1Element<F>) -> Vec<G1Element<F>> {
        let n1 = self.dim();
        let xs = self.dense_terms(x);
        let mut out: Vec<Vec<Option<F>>> = vec![vec![None; n1]; n1];
        for &(g, xg) in &xs {
            for &(e, xe) in &xs {
                let xx = xg.clone() * xe.clone();
                for (d, col) in out.iter_mut().enumerate() {
                    if let Some((b, v)) = self.tensor[(g * n1 + d) * n1 + e] {
                        let t = v.to_scalar::<F>() * xx.clone();
                        let o = &mut col[self.partner[b]];
                        *o = Some(match o.take() {
                            Some(s) => s + t,
                            None => t,
                        });
                    }
                }
            }
        }
        out.into_iter().map(|col| self.from_dense(col)).collect()
    }

    fn dense_terms<'a, F: Scalar>(&self, x: &'a G1Element<F>) -> Vec<(usize, &'a F)> {
        x.terms().map(|(r, v)| (self.slot[r.index()].expect("element of g_1"), v)).collect()
    }

    fn from_dense<F: Scalar>(&self, v: Vec<Option<F>>) -> G1Element<F> {
        let coeffs = v
            .into_iter()
            .enumerate()
            .filter_map(|(i, c)| c.filter(|c| !c.is_zero()).map(|c| (self.h1[i], c)))
            .collect();
        G1Element { coeffs }
    }

    /// Checks `2 (xxx) x y = <y, x> xxx + <y, xxx> x` exactly.
    pub fn check_fts_axiom<F: Scalar>(&self, x: &G1Element<F>, y: &G1Element<F>) -> bool {
        let xxx = self.triple_product(x, x, x);
        let lhs = self.triple_product(&xxx, x, y).scale(&F::from_i64(2));
        let rhs = xxx.scale(&self.bilinear(y, x)).add(&x.scale(&self.bilinear(y, &xxx)));
        lhs == rhs
    }

    /// Applies the torus element `lambda(t)` to an element of `g_1`.
    pub fn torus_scale<F: Scalar>(&self, lambda: &[i64], t: &F, x: &G1Element<F>) -> Result<G1Element<F>> {
        let y = self.cb.torus_scale(lambda, t, &self.to_lie(x))?;
        self.from_lie(&y)
    }

    /// A random element with at most `max_support` nonzero coefficients.
    pub fn random_element<F: Scalar, R: Rng>(&self, rng: &mut R, max_support: usize) -> G1Element<F> {
        let mut out = G1Element::zero();
        let k = rng.gen_range(1..=max_support.max(1));
        for _ in 0..k {
            let r = self.h1[rng.gen_range(0..self.dim())];
            out.add_term(r, small_scalar(rng));
        }
        out
    }

    /// `(c) x[coords] + ...`, labelling basis vectors by root coordinates.
    pub fn describe<F: Scalar>(&self, x: &G1Element<F>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let rs = self.root_system();
        let parts: Vec<String> = x.terms().map(|(r, v)| format!("({v}) x{:?}", rs.coords(r))).collect();
        parts.join(" + ")
    }

    /// Serializable form of an element.
    pub fn to_json(&self, x: &G1Element<Rational>) -> G1Json {
        let rs = self.root_system();
        G1Json {
            dynkin: rs.dynkin().label(),
            entries: x
                .terms()
                .map(|(r, v)| G1Entry {
                    root_coords: rs.coords(r).to_vec(),
                    numerator: JsonInt(v.numer().clone()),
                    denominator: JsonInt(v.denom().clone()),
                })
                .collect(),
        }
    }

    pub fn from_json(&self, j: &G1Json) -> Result<G1Element<Rational>> {
        let rs = self.root_system();
        let got: DynkinType =
            j.dynkin.parse().map_err(|_| FtsError::BadEntry(format!("unknown type {}", j.dynkin)))?;
        if got != rs.dynkin() {
            return Err(FtsError::TypeMismatch { expected: rs.dynkin().label(), got: got.label() });
        }
        let mut terms = Vec::with_capacity(j.entries.len());
        for e in &j.entries {
            if e.denominator.0 == BigInt::from(0) {
                return Err(FtsError::BadEntry(format!("zero denominator at {:?}", e.root_coords)));
            }
            let r = rs.lookup(&e.root_coords)?;
            terms.push((r, Rational::new(e.numerator.0.clone(), e.denominator.0.clone())));
        }
        self.element(terms)
    }
}

fn basis_quadrilinear_frac(cb: &ChevalleyBasis, q: [RootId; 4]) -> Frac {
    let rs = cb.root_system();
    let xs: Vec<LieElement<Wide>> = q.iter().map(|&r| cb.x(r)).collect();
    let m_rho: LieElement<Wide> = cb.x(rs.minus_rho());
    let mut sum = 0i64;
    for p in PERMS4 {
        let v = cb.ad_chain(&[&xs[p[0]], &xs[p[1]], &xs[p[2]], &xs[p[3]]], &m_rho).expect("same basis");
        sum += lift(v.coeff(rs.rho()));
    }
    Frac::new(sum, 24)
}

/// JSON form of a [`G1Element`] with rational coefficients. Roots are given
/// by simple-root coordinates; numerators and denominators may be JSON
/// integers or decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G1Json {
    #[serde(rename = "type")]
    pub dynkin: String,
    pub entries: Vec<G1Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G1Entry {
    pub root_coords: Vec<i32>,
    pub numerator: JsonInt,
    #[serde(default = "JsonInt::one")]
    pub denominator: JsonInt,
}

/// An arbitrary-precision integer that serializes as a JSON number when it
/// fits in an `i64` and as a string otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl JsonInt {
    fn one() -> Self {
        JsonInt(BigInt::from(1))
    }
}

impl Serialize for JsonInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(JsonInt(BigInt::from(v))),
            Raw::Str(s) => s.trim().parse::<BigInt>().map(JsonInt).map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng_from_seed;

    type Q = Rational;

    fn ctx(label: &str) -> FtsContext {
        FtsContext::for_type(label.parse().unwrap()).unwrap()
    }

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn perms_are_distinct() {
        let mut p = PERMS4.to_vec();
        p.sort();
        p.dedup();
        assert_eq!(p.len(), 24);
    }

    #[test]
    fn bilinear_matches_bracket() {
        let c = ctx("d5");
        let mut rng = rng_from_seed(1);
        for _ in 0..30 {
            let x: G1Element<Q> = c.random_element(&mut rng, 6);
            let y = c.random_element(&mut rng, 6);
            assert_eq!(c.bilinear(&x, &y), c.bilinear_by_bracket(&x, &y).unwrap());
            assert_eq!(c.bilinear(&x, &y), -c.bilinear(&y, &x));
            assert!(c.bilinear(&x, &x).is_zero());
        }
    }

    #[test]
    fn gram_matrix_is_monomial() {
        let c = ctx("e6");
        for &b in c.height1() {
            let xb: G1Element<Q> = c.x(b).unwrap();
            let nonzero = c.height1().iter().filter(|&&g| !c.bilinear(&xb, &c.x(g).unwrap()).is_zero()).count();
            assert_eq!(nonzero, 1);
        }
    }

    #[test]
    fn golden_quartic_value() {
        for label in ["d4", "b4", "f4", "e6"] {
            let c = ctx(label);
            assert_eq!(c.quartic(&c.rank4_representative::<Q>()).unwrap(), q(6), "{label}");
            let a = c.root_system().alpha();
            assert!(c.quartic(&c.x::<Q>(a).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn quadrilinear_restricts_to_quartic() {
        let c = ctx("d4");
        let mut rng = rng_from_seed(4);
        for _ in 0..10 {
            let x: G1Element<Q> = c.random_element(&mut rng, 4);
            let v = c.quartic(&x).unwrap();
            assert_eq!(c.quadrilinear(&x, &x, &x, &x).unwrap(), v);
            assert_eq!(c.quadrilinear_fast(&x, &x, &x, &x), v);
        }
    }

    #[test]
    fn fast_and_bracket_quadrilinear_agree() {
        for label in ["d4", "b4"] {
            let c = ctx(label);
            let mut rng = rng_from_seed(8);
            for _ in 0..10 {
                let e: Vec<G1Element<Q>> = (0..4).map(|_| c.random_element(&mut rng, 4)).collect();
                assert_eq!(
                    c.quadrilinear(&e[0], &e[1], &e[2], &e[3]).unwrap(),
                    c.quadrilinear_fast(&e[0], &e[1], &e[2], &e[3])
                );
            }
        }
    }

    #[test]
    fn closed_form_matches_oracle_d4() {
        let c = ctx("d4");
        let h1 = c.height1().to_vec();
        for &a in &h1 {
            for &b in &h1 {
                for &d in &h1 {
                    for &e in &h1 {
                        let quad = [a, b, d, e];
                        let expect = c.basis_quadrilinear(quad).unwrap();
                        assert_eq!(c.quartic_closed_form::<Q>(quad).unwrap(), expect, "{quad:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_rejects_non_simply_laced() {
        let c = ctx("b4");
        let a = c.root_system().alpha();
        assert!(matches!(c.quartic_closed_form::<Q>([a; 4]), Err(FtsError::NotSimplyLaced(_))));
    }

    #[test]
    fn rank4_representative_triple() {
        for label in ["d4", "e6", "f4"] {
            let c = ctx(label);
            let rs = c.root_system();
            let a = rs.alpha();
            let ra = rs.rho_minus(a).unwrap();
            let x: G1Element<Q> = c.rank4_representative();
            let xa = c.x::<Q>(a).unwrap();
            let xr = c.x::<Q>(ra).unwrap();
            let k = c.bilinear(&xr, &xa) * q(3);
            assert_eq!(c.triple_product(&x, &x, &x), xa.sub(&xr).scale(&k), "{label}");
            assert!(c.check_fts_axiom(&x, &c.random_element(&mut rng_from_seed(0), 6)));
        }
    }

    #[test]
    fn triple_product_is_symmetric() {
        let c = ctx("e6");
        let mut rng = rng_from_seed(6);
        for _ in 0..10 {
            let x: G1Element<Q> = c.random_element(&mut rng, 6);
            let y = c.random_element(&mut rng, 6);
            let z = c.random_element(&mut rng, 6);
            let t = c.triple_product(&x, &y, &z);
            assert_eq!(t, c.triple_product(&y, &x, &z));
            assert_eq!(t, c.triple_product(&z, &y, &x));
            let w = c.random_element(&mut rng, 6);
            assert_eq!(c.bilinear(&w, &t), c.quadrilinear(&w, &x, &y, &z).unwrap());
        }
    }

    #[test]
    fn basis_triple_vanishes_off_partner() {
        let c = ctx("d5");
        let rs = c.root_system();
        for &b in c.height1() {
            for &g in c.height1() {
                let xb: G1Element<Q> = c.x(b).unwrap();
                let t = c.triple_product(&xb, &xb, &c.x(g).unwrap());
                if rs.rho_minus(b) != Some(g) {
                    assert!(t.is_zero());
                }
            }
        }
    }

    #[test]
    fn xx_map_matches_triple_product() {
        let c = ctx("d4");
        let mut rng = rng_from_seed(3);
        let x: G1Element<Q> = c.random_element(&mut rng, 6);
        let m = c.xx_map(&x);
        for (i, &d) in c.height1().iter().enumerate() {
            assert_eq!(m[i], c.triple_product(&x, &x, &c.x(d).unwrap()));
        }
    }

    #[test]
    fn fts_axiom_on_random_pairs() {
        for label in ["d4", "b4", "f4"] {
            let c = ctx(label);
            let mut rng = rng_from_seed(12);
            for _ in 0..20 {
                let x: G1Element<Q> = c.random_element(&mut rng, 6);
                let y = c.random_element(&mut rng, 6);
                assert!(c.check_fts_axiom(&x, &y), "{label}");
            }
            assert!(c.check_fts_axiom(&G1Element::<Q>::zero(), &c.random_element(&mut rng, 3)));
        }
    }

    #[test]
    fn prime_field_quartic() {
        type F = Fp<10007>;
        let c = ctx("e6");
        assert_eq!(c.quartic(&c.rank4_representative::<F>()).unwrap(), F::from_i64(6));
        let mut rng = rng_from_seed(2);
        for _ in 0..10 {
            let x: G1Element<F> = c.random_element(&mut rng, 6);
            let y = c.random_element(&mut rng, 6);
            assert!(c.check_fts_axiom(&x, &y));
        }
    }

    #[test]
    fn json_round_trip() {
        let c = ctx("d4");
        let mut rng = rng_from_seed(5);
        let x: G1Element<Q> = c.random_element(&mut rng, 6);
        let s = serde_json::to_string(&c.to_json(&x)).unwrap();
        let back: G1Json = serde_json::from_str(&s).unwrap();
        assert_eq!(c.from_json(&back).unwrap(), x);
        let text = r#"{"type":"d4","entries":[{"root_coords":[0,1,0,0],"numerator":"3","denominator":2}]}"#;
        let j: G1Json = serde_json::from_str(text).unwrap();
        assert_eq!(c.from_json(&j).unwrap().coeff(c.root_system().alpha()), Q::from_ratio(3, 2));
        let bad = r#"{"type":"d4","entries":[{"root_coords":[1,0,0,0],"numerator":1,"denominator":1}]}"#;
        let j: G1Json = serde_json::from_str(bad).unwrap();
        assert!(matches!(c.from_json(&j), Err(FtsError::NotHeight1(_))));
    }
}
