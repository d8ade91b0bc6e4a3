//! Named verification suites with machine-readable reports.
//!
//! Each suite runs a list of exact checks against one Dynkin type. In
//! exhaustive mode every applicable tuple is visited; in sampled mode tuples
//! are drawn from a seeded generator, so a `(type, seed, count)` triple always
//! produces the same report.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::chevalley::{ChevalleyBasis, LieElement};
use crate::classify::{
    cubic_f1, cubic_f2, eigen_decompose, h_element, h_eigenvalue, is_rank_one, is_strictly_regular,
    orbit_representatives, rank_classify,
};
use crate::fts::{FtsContext, FtsError, G1Element};
use crate::rootsys::{DynkinType, Family, RootId, RootSystem};
use crate::sampling::{small_scalar, CheckReport, Coverage};
use crate::scalar::{Fp, Rational, Scalar};

type Q = Rational;

/// Field used for the fourth-root-of-unity checks; `10009 = 1 mod 4`.
type F10009 = Fp<10009>;

/// Exhaustive runs are allowed while the number of ordered triples of long
/// roots stays below this bound. Larger types are downgraded to sampling.
pub const EXHAUSTIVE_LIMIT: usize = 1_000_000;

/// Default number of sampled tuples per check.
pub const DEFAULT_COUNT: usize = 100;

const MAX_LISTED_FAILURES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown suite {0:?}; expected forms, fts or stab")]
    UnknownSuite(String),
    #[error(transparent)]
    Fts(#[from] FtsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Forms,
    Fts,
    Stab,
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, SuiteError> {
        match s.to_ascii_lowercase().as_str() {
            "forms" => Ok(Suite::Forms),
            "fts" => Ok(Suite::Fts),
            "stab" | "stabilizer" => Ok(Suite::Stab),
            _ => Err(SuiteError::UnknownSuite(s.to_string())),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Forms => "forms",
            Suite::Fts => "fts",
            Suite::Stab => "stab",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub identity: String,
    pub tuples_checked: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    #[serde(rename = "type")]
    pub dynkin: String,
    pub mode: Coverage,
    /// Set when an exhaustive request was downgraded to sampling.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure_count == 0)
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Whether exhaustive mode is affordable for this type.
pub fn exhaustive_allowed(rs: &RootSystem) -> bool {
    let long = rs.ids().filter(|&r| rs.is_long(r)).count();
    long.pow(3) < EXHAUSTIVE_LIMIT
}

/// Downgrades an exhaustive request when the type is too large.
pub fn resolve_mode(rs: &RootSystem, requested: Coverage, seed: u64, count: usize) -> (Coverage, Option<String>) {
    if requested.is_exhaustive() && !exhaustive_allowed(rs) {
        let note = format!(
            "exhaustive mode is limited to types with fewer than {EXHAUSTIVE_LIMIT} ordered long-root triples; {} runs sampled",
            rs.dynkin()
        );
        (Coverage::sampled(seed, count), Some(note))
    } else {
        (requested, None)
    }
}

struct Runner<'a> {
    ctx: &'a FtsContext,
    mode: Coverage,
    rng: ChaCha8Rng,
    checks: Vec<CheckResult>,
}

impl<'a> Runner<'a> {
    fn new(ctx: &'a FtsContext, mode: Coverage) -> Self {
        Runner { ctx, mode, rng: mode.rng(), checks: Vec::new() }
    }

    fn count(&self) -> usize {
        match self.mode {
            Coverage::Exhaustive => DEFAULT_COUNT,
            Coverage::Sampled { count, .. } => count,
        }
    }

    fn push(&mut self, id: &str, identity: &str, rep: CheckReport) {
        let failure_count = rep.violations.len();
        let mut failures = rep.violations;
        failures.truncate(MAX_LISTED_FAILURES);
        self.checks.push(CheckResult {
            check_id: id.to_string(),
            identity: identity.to_string(),
            tuples_checked: rep.checked,
            failure_count,
            failures,
        });
    }

    fn finish(self, suite: Suite, note: Option<String>) -> SuiteReport {
        SuiteReport {
            suite,
            dynkin: self.ctx.dynkin().label(),
            mode: self.mode,
            note,
            checks: self.checks,
        }
    }

    fn rs(&self) -> &'a RootSystem {
        self.ctx.root_system()
    }

    fn cb(&self) -> &'a ChevalleyBasis {
        self.ctx.basis()
    }

    fn long_height1(&self) -> Vec<RootId> {
        let rs = self.rs();
        self.ctx.height1().iter().copied().filter(|&r| rs.is_long(r)).collect()
    }

    fn random_g1(&mut self) -> G1Element<Q> {
        self.ctx.random_element(&mut self.rng, 6)
    }

    /// Ordered quadruples of long alpha-height-1 roots summing to `2 rho`.
    fn two_rho_quadruples(&mut self) -> Vec<[RootId; 4]> {
        let rs = self.rs();
        let long = self.long_height1();
        let complete = |a: RootId, b: RootId, c: RootId| -> Option<RootId> {
            let two_rho = rs.coords(rs.rho());
            let need: Vec<i32> =
                (0..rs.rank()).map(|k| 2 * two_rho[k] - rs.coords(a)[k] - rs.coords(b)[k] - rs.coords(c)[k]).collect();
            rs.find(&need).filter(|&d| rs.alpha_height(d) == 1 && rs.is_long(d))
        };
        match self.mode {
            Coverage::Exhaustive => {
                let mut out = Vec::new();
                for &a in &long {
                    for &b in &long {
                        for &c in &long {
                            if let Some(d) = complete(a, b, c) {
                                out.push([a, b, c, d]);
                            }
                        }
                    }
                }
                out
            }
            Coverage::Sampled { count, .. } => {
                let mut out = Vec::with_capacity(count);
                let mut attempts = 0;
                while out.len() < count && attempts < count * 1000 {
                    attempts += 1;
                    let [a, b, c] = [0; 3].map(|_| *long.choose(&mut self.rng).unwrap());
                    if let Some(d) = complete(a, b, c) {
                        out.push([a, b, c, d]);
                    }
                }
                out
            }
        }
    }

    fn any_quadruples(&mut self) -> Vec<[RootId; 4]> {
        let h1 = self.ctx.height1().to_vec();
        match self.mode {
            Coverage::Exhaustive => {
                let mut out = Vec::with_capacity(h1.len().pow(4));
                for &a in &h1 {
                    for &b in &h1 {
                        for &c in &h1 {
                            for &d in &h1 {
                                out.push([a, b, c, d]);
                            }
                        }
                    }
                }
                out
            }
            Coverage::Sampled { count, .. } => {
                (0..count).map(|_| [0; 4].map(|_| *h1.choose(&mut self.rng).unwrap())).collect()
            }
        }
    }

    fn orthogonal_long_pairs(&self) -> Vec<(RootId, RootId)> {
        let rs = self.rs();
        let long = self.long_height1();
        let mut out = Vec::new();
        for &b in &long {
            for &g in &long {
                if b != g && rs.is_orthogonal(b, g) {
                    out.push((b, g));
                }
            }
        }
        out
    }
}

fn fmt_roots(rs: &RootSystem, q: &[RootId]) -> String {
    let parts: Vec<String> = q.iter().map(|&r| format!("{:?}", rs.coords(r))).collect();
    parts.join(" ")
}

/// Identities of the bilinear and quartic forms on basis vectors.
pub fn run_forms_suite(dynkin: DynkinType, mode: Coverage) -> Result<SuiteReport, SuiteError> {
    let ctx = FtsContext::for_type(dynkin)?;
    Ok(forms_suite(&ctx, mode, None))
}

pub fn forms_suite(ctx: &FtsContext, mode: Coverage, note: Option<String>) -> SuiteReport {
    let mut run = Runner::new(ctx, mode);
    let rs = run.rs();
    let cb = run.cb();
    let rho = rs.rho();
    let m_rho = rs.minus_rho();

    run.push(
        "structure-constants",
        "sign and size rules for structure constants",
        cb.verify_carter(mode),
    );

    let mut rep = CheckReport::default();
    for &b in ctx.height1() {
        let xb: G1Element<Q> = ctx.x(b).unwrap();
        let hits: Vec<RootId> =
            ctx.height1().iter().copied().filter(|&g| !ctx.bilinear(&xb, &ctx.x(g).unwrap()).is_zero()).collect();
        let ok = hits.len() == 1 && rs.add(b, hits[0]) == Some(rho);
        rep.record(ok, || format!("row {} has support {}", fmt_roots(rs, &[b]), fmt_roots(rs, &hits)));
    }
    run.push("gram-monomial", "<x_b, x_g> is nonzero exactly when b + g = rho", rep);

    let mut rep = CheckReport::default();
    for b in run.long_height1() {
        let p = rs.rho_minus(b).unwrap();
        let v = ctx.basis_quadrilinear([b, b, p, p]).unwrap();
        rep.record(v == Q::from_i64(1), || format!("{} gives {v}", fmt_roots(rs, &[b])));
    }
    run.push("equal-pairs", "q(x_b, x_b, x_{rho-b}, x_{rho-b}) = 1", rep);

    let mut rep = CheckReport::default();
    for (b, g) in run.orthogonal_long_pairs() {
        let v = ctx.basis_quadrilinear([b, g, rs.rho_minus(b).unwrap(), rs.rho_minus(g).unwrap()]).unwrap();
        let want = Q::from_ratio(-(cb.c(b, m_rho) * cb.c(g, m_rho)) as i64, 2);
        rep.record(v == want, || format!("{} gives {v}, want {want}", fmt_roots(rs, &[b, g])));
    }
    run.push("rho-pairs", "q(x_b, x_g, x_{rho-b}, x_{rho-g}) = -c(b,-rho) c(g,-rho) / 2 for orthogonal b, g", rep);

    let mut rep = CheckReport::default();
    for quad in run.any_quadruples() {
        if rs.sums_to_two_rho(quad) {
            continue;
        }
        let v = ctx.basis_quadrilinear(quad).unwrap();
        rep.record(v.is_zero(), || format!("{} gives {v}", fmt_roots(rs, &quad)));
    }
    run.push("off-two-rho-vanishing", "q(x_b1, x_b2, x_b3, x_b4) = 0 unless b1 + b2 + b3 + b4 = 2 rho", rep);

    let quads = run.two_rho_quadruples();
    if rs.dynkin().is_simply_laced() {
        let mut rep = CheckReport::default();
        for &quad in &quads {
            let oracle = ctx.basis_quadrilinear(quad).unwrap();
            let closed: Q = ctx.quartic_closed_form(quad).unwrap();
            rep.record(closed == oracle, || format!("{}: closed {closed}, oracle {oracle}", fmt_roots(rs, &quad)));
        }
        run.push("closed-form", "case-split closed form agrees with the 24-term symmetrization", rep);
    }

    let mut rep = CheckReport::default();
    for &[b1, b2, b3, b4] in &quads {
        let p = |a: RootId, b: RootId| rs.pairing(a, b);
        let ok = p(b1, b2) + p(b1, b3) + p(b1, b4) == 0 && p(b1, b2) == p(b3, b4);
        rep.record(ok, || format!("pairing identities fail at {}", fmt_roots(rs, &[b1, b2, b3, b4])));
    }
    run.push(
        "pairing-sums",
        "<b1,b2> + <b1,b3> + <b1,b4> = 0 and <b1,b2> = <b3,b4> when the b_i sum to 2 rho",
        rep,
    );

    let mut rep = CheckReport::default();
    let h1 = ctx.height1();
    let ortho: Vec<(RootId, RootId)> = h1
        .iter()
        .flat_map(|&a| h1.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a < b && rs.is_orthogonal(a, b))
        .collect();
    for &(a, b) in &ortho {
        for &c in h1.iter().filter(|&&c| c > b && rs.is_orthogonal(a, c) && rs.is_orthogonal(b, c)) {
            for &d in h1.iter().filter(|&&d| d > c && [a, b, c].iter().all(|&x| rs.is_orthogonal(x, d))) {
                let q = [a, b, c, d];
                let ok = rs.sums_to_two_rho(q) && q.iter().all(|&r| rs.is_long(r));
                rep.record(ok, || format!("orthogonal quadruple {} fails", fmt_roots(rs, &q)));
            }
        }
    }
    for &(a, b) in &ortho {
        let ok = rs.is_orthogonal(rs.rho_minus(a).unwrap(), rs.rho_minus(b).unwrap());
        rep.record(ok, || format!("rho - b not orthogonal for {}", fmt_roots(rs, &[a, b])));
    }
    run.push(
        "orthogonal-quadruples",
        "four mutually orthogonal alpha-height-1 roots are long and sum to 2 rho",
        rep,
    );

    let mut rep = CheckReport::default();
    for (b, g) in run.orthogonal_long_pairs() {
        let v = cb.aux2_product(b, g).unwrap();
        rep.record(v == 1, || format!("{} gives {v}", fmt_roots(rs, &[b, g])));
    }
    run.push("aux-product", "c(b, g-rho) c(g, b-rho) c(b, -rho) c(g, -rho) = 1", rep);

    run.finish(Suite::Forms, note)
}

/// The triple-system axiom, strictly regular identities, and rank classification.
pub fn run_fts_suite(dynkin: DynkinType, mode: Coverage) -> Result<SuiteReport, SuiteError> {
    let ctx = FtsContext::for_type(dynkin)?;
    Ok(fts_suite(&ctx, mode, None))
}

pub fn fts_suite(ctx: &FtsContext, mode: Coverage, note: Option<String>) -> SuiteReport {
    let mut run = Runner::new(ctx, mode);
    let count = run.count();

    let mut rep = CheckReport::default();
    for _ in 0..count {
        let x = run.random_g1();
        let y = run.random_g1();
        rep.record(ctx.check_fts_axiom(&x, &y), || format!("x = {x:?}, y = {y:?}"));
    }
    if mode.is_exhaustive() {
        let h1 = ctx.height1();
        for (i, &a) in h1.iter().enumerate() {
            for &b in &h1[i + 1..] {
                let x = ctx.sum_of::<Q>(&[a, b]).unwrap();
                for &d in h1 {
                    let y = ctx.x(d).unwrap();
                    rep.record(ctx.check_fts_axiom(&x, &y), || format!("x = {x:?}, y = {y:?}"));
                }
            }
        }
    }
    run.push("fts-axiom", "2 (xxx) x y = <y,x> xxx + <y,xxx> x", rep);

    let mut rep5a = CheckReport::default();
    let mut rep5b = CheckReport::default();
    for b in run.long_height1() {
        let x: G1Element<Q> = ctx.x(b).unwrap();
        let pairs: Vec<(G1Element<Q>, G1Element<Q>)> = if mode.is_exhaustive() {
            let basis: Vec<G1Element<Q>> = ctx.height1().iter().map(|&r| ctx.x(r).unwrap()).collect();
            basis.iter().flat_map(|y| basis.iter().map(move |z| (y.clone(), z.clone()))).collect()
        } else {
            (0..count.min(50).max(1)).map(|_| (run.random_g1(), run.random_g1())).collect()
        };
        for (y, z) in &pairs {
            let xxy = ctx.triple_product(&x, &x, y);
            rep5a.record(xxy == x.scale(&ctx.bilinear(y, &x)), || format!("x_b = {x:?}, y = {y:?}"));
            let lhs = ctx.quadrilinear_fast(&x, &x, y, z);
            let rhs = ctx.bilinear(y, &x) * ctx.bilinear(z, &x);
            rep5b.record(lhs == rhs, || format!("x_b = {x:?}, y = {y:?}, z = {z:?}"));
        }
    }
    run.push("strictly-regular-triple", "xxy = <y,x> x for x = x_b with b long", rep5a);
    run.push("strictly-regular-quartic", "q(x,x,y,z) = <y,x><z,x> for x = x_b with b long", rep5b);

    let mut rep = CheckReport::default();
    for _ in 0..count {
        let x = run.random_g1();
        if x.is_zero() {
            continue;
        }
        rep.record(ctx.xx_map(&x).iter().any(|v| !v.is_zero()), || format!("x x g_1 = 0 for x = {x:?}"));
    }
    run.push("xx-nonzero", "x x g_1 is nonzero for nonzero x", rep);

    let mut rep = CheckReport::default();
    let v = ctx.quartic(&ctx.rank4_representative::<Q>()).unwrap();
    rep.record(v == Q::from_i64(6), || format!("q = {v}"));
    run.push("golden-quartic", "q(x_alpha + x_{rho-alpha}) = 6", rep);

    let mut rep = CheckReport::default();
    let mut agree = CheckReport::default();
    let reps: Vec<G1Element<Q>> = orbit_representatives(ctx).unwrap();
    for (k, x) in reps.iter().enumerate() {
        let r = rank_classify(ctx, x).unwrap();
        rep.record(r.rank as usize == k, || format!("representative {k} classified as rank {}", r.rank));
    }
    let mut samples: Vec<G1Element<Q>> = reps[1..].to_vec();
    for _ in 0..count {
        samples.push(run.random_g1());
    }
    for x in samples.iter().filter(|x| !x.is_zero()) {
        let a = is_strictly_regular(ctx, x).unwrap();
        let b = is_rank_one(ctx, x).unwrap();
        agree.record(a == b, || format!("x = {x:?}: strictly regular {a}, rank one {b}"));
    }
    run.push("representative-ranks", "sum of the first k orthogonal basis vectors has rank k", rep);
    run.push("regular-vs-rank-one", "strictly regular iff x x g_1 is one-dimensional", agree);

    run.finish(Suite::Fts, note)
}

/// Computational ingredients of the stabilizer results: fourth roots of
/// unity, torus invariance, eigenspaces, cubic forms, D4 triality.
pub fn run_stabilizer_ingredients_suite(dynkin: DynkinType, mode: Coverage) -> Result<SuiteReport, SuiteError> {
    let ctx = FtsContext::for_type(dynkin)?;
    Ok(stab_suite(&ctx, mode, None))
}

pub fn stab_suite(ctx: &FtsContext, mode: Coverage, note: Option<String>) -> SuiteReport {
    let mut run = Runner::new(ctx, mode);
    let rs = run.rs();
    let cb = run.cb();
    let count = run.count();
    let dt = rs.dynkin();

    let mut rep = CheckReport::default();
    let i = F10009::from_i64(-1).sqrt().expect("-1 is a square mod 10009");
    for _ in 0..count {
        let x: G1Element<F10009> = ctx.random_element(&mut run.rng, 6);
        let y: G1Element<F10009> = ctx.random_element(&mut run.rng, 6);
        let (ix, iy) = (x.scale(&i), y.scale(&i));
        let ok = ctx.quartic(&ix).unwrap() == ctx.quartic(&x).unwrap()
            && ctx.bilinear(&ix, &iy) == -ctx.bilinear(&x, &y);
        rep.record(ok, || format!("x = {x:?}, y = {y:?}"));
    }
    run.push("fourth-roots", "q(ix) = q(x) and <ix, iy> = -<x, y> for i^2 = -1 (over F_10009)", rep);

    let mut rep = CheckReport::default();
    let height0: Vec<RootId> = rs.ids().filter(|&r| rs.alpha_height(r) == 0).collect();
    let per_root = if mode.is_exhaustive() { 3 } else { 0 };
    let mut draws: Vec<RootId> = height0.iter().flat_map(|&g| std::iter::repeat(g).take(per_root)).collect();
    if !mode.is_exhaustive() {
        draws = (0..count).map(|_| *height0.choose(&mut run.rng).unwrap()).collect();
    }
    for g in draws {
        let lambda: Vec<i64> = cb.coroot_coeffs(g).iter().map(|&k| k as i64).collect();
        let t: Q = small_scalar(&mut run.rng);
        let x = run.random_g1();
        let y = run.random_g1();
        let sx = ctx.torus_scale(&lambda, &t, &x).unwrap();
        let sy = ctx.torus_scale(&lambda, &t, &y).unwrap();
        let ok = ctx.quartic(&sx).unwrap() == ctx.quartic(&x).unwrap() && ctx.bilinear(&sx, &sy) == ctx.bilinear(&x, &y);
        rep.record(ok, || format!("coroot of {} with t = {t}", fmt_roots(rs, &[g])));
    }
    run.push("torus-invariance", "q and <-,-> are fixed by the torus along any alpha-height-0 coroot", rep);

    if dt.is_simply_laced() {
        let d = eigen_decompose(ctx).unwrap();
        let [m3, m1, p1, p3] = d.dims();
        let mut rep = CheckReport::default();
        rep.record(m3 == 1 && p3 == 1 && m1 == p1 && 2 * m1 + 2 == ctx.dim(), || format!("dimensions {:?}", d.dims()));
        rep.record(d.minus3 == [rs.alpha()] && d.plus3 == [rs.rho_minus(rs.alpha()).unwrap()], || {
            "extreme eigenvectors are not x_alpha, x_{rho-alpha}".into()
        });
        if dt == DynkinType::new(Family::E, 8).unwrap() {
            rep.record(m1 == 27, || format!("E8 eigenspace dimension {m1}"));
        }
        if dt == DynkinType::new(Family::D, 4).unwrap() {
            let mut want: Vec<RootId> =
                [[1, 1, 1, 0], [1, 1, 0, 1], [0, 1, 1, 1]].iter().map(|v| rs.lookup(v).unwrap()).collect();
            want.sort();
            let mut got = d.plus1.clone();
            got.sort();
            rep.record(m1 == 3 && got == want, || format!("D4 +1 space {}", fmt_roots(rs, &got)));
        }
        let h: LieElement<Q> = h_element(ctx);
        for &b in ctx.height1() {
            let xb: LieElement<Q> = cb.x(b);
            let e = h_eigenvalue(ctx, b);
            let ok = cb.bracket(&h, &xb).unwrap() == xb.scale(&Q::from_i64(e as i64));
            rep.record(ok, || format!("[h, x_b] != {e} x_b at {}", fmt_roots(rs, &[b])));
        }
        run.push("eigenspaces", "h = h_{rho-alpha} - h_alpha has eigenvalues -3, -1, 1, 3 on g_1 with dimensions 1, n, n, 1", rep);

        let mut rep = CheckReport::default();
        // A witness that f1 is not identically zero: x_b + x_g + x_d with
        // alpha + b + g + d = 2 rho.
        let p1 = &d.plus1;
        let witness = (0..p1.len())
            .flat_map(|i| (i + 1..p1.len()).flat_map(move |j| (j + 1..p1.len()).map(move |k| [p1[i], p1[j], p1[k]])))
            .find(|t| rs.sums_to_two_rho([rs.alpha(), t[0], t[1], t[2]]));
        let f1 = match witness {
            Some(t) => {
                let f1 = cubic_f1(ctx, &ctx.sum_of::<Q>(&t).unwrap()).unwrap();
                let q = ctx.basis_quadrilinear([rs.alpha(), t[0], t[1], t[2]]).unwrap();
                rep.record(!f1.is_zero() && f1 == q, || format!("f1 = {f1}, q(x_alpha, x_b, x_g, x_d) = {q}"));
                f1
            }
            None => {
                rep.record(false, || "no triple in the +1 space completes alpha to 2 rho".into());
                Q::from_i64(0)
            }
        };
        let xa: G1Element<Q> = ctx.x(rs.alpha()).unwrap();
        let xra: G1Element<Q> = ctx.x(rs.rho_minus(rs.alpha()).unwrap()).unwrap();
        for _ in 0..count.min(20) {
            let a = ctx
                .element(d.plus1.iter().map(|&r| (r, small_scalar::<Q, _>(&mut run.rng))))
                .unwrap();
            let b = ctx
                .element(d.minus1.iter().map(|&r| (r, small_scalar::<Q, _>(&mut run.rng))))
                .unwrap();
            let s6 = Q::from_i64(6);
            let ok1 = cubic_f1(ctx, &a).unwrap() * s6.clone() == ctx.quadrilinear(&xa, &a, &a, &a).unwrap();
            let ok2 = cubic_f2(ctx, &b).unwrap() * s6 == ctx.quadrilinear(&xra, &b, &b, &b).unwrap();
            rep.record(ok1 && ok2, || format!("a = {a:?}, b = {b:?}"));
        }
        if dt == DynkinType::new(Family::D, 4).unwrap() {
            let eps = f1.clone();
            rep.record(eps == Q::from_i64(1) || eps == Q::from_i64(-1), || format!("epsilon = {eps}"));
            for _ in 0..count.min(20) {
                let lam: Vec<Q> = (0..3).map(|_| small_scalar(&mut run.rng)).collect();
                let a = ctx.element(d.plus1.iter().copied().zip(lam.iter().cloned())).unwrap();
                let want = eps.clone() * lam[0].clone() * lam[1].clone() * lam[2].clone();
                let got = cubic_f1(ctx, &a).unwrap();
                rep.record(got == want, || format!("f1 = {got}, want {want}"));
            }
        }
        run.push("cubic-forms", "f1(a) = q(x_alpha,a,a,a)/6 on the +1 space and f2(b) = q(x_{rho-alpha},b,b,b)/6 on the -1 space", rep);
    }

    if dt == DynkinType::new(Family::D, 4).unwrap() {
        let mut rep = CheckReport::default();
        let perms = [[1, 3, 4], [3, 1, 4], [4, 3, 1], [1, 4, 3], [3, 4, 1], [4, 1, 3]];
        let basis: Vec<LieElement<Q>> = cb.basis();
        for perm in perms {
            let phi = cb.diagram_automorphism_d4(perm).unwrap();
            rep.record(phi.root_image(rs.rho()) == (rs.rho(), 1), || format!("{perm:?} moves x_rho"));
            rep.record(phi.root_image(rs.minus_rho()) == (rs.minus_rho(), 1), || format!("{perm:?} moves x_-rho"));
            let pairs: Vec<(usize, usize)> = if mode.is_exhaustive() {
                (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect()
            } else {
                (0..count).map(|_| (run.rng.gen_range(0..basis.len()), run.rng.gen_range(0..basis.len()))).collect()
            };
            for (i, j) in pairs {
                let (x, y) = (&basis[i], &basis[j]);
                let lhs = phi.apply(&cb.bracket(x, y).unwrap()).unwrap();
                let rhs = cb.bracket(&phi.apply(x).unwrap(), &phi.apply(y).unwrap()).unwrap();
                rep.record(lhs == rhs, || format!("{perm:?} fails on {x:?}, {y:?}"));
            }
            for _ in 0..count {
                let x = run.random_g1();
                let img = ctx.from_lie(&phi.apply(&ctx.to_lie(&x)).unwrap()).unwrap();
                rep.record(ctx.quartic(&img).unwrap() == ctx.quartic(&x).unwrap(), || {
                    format!("{perm:?} changes q at {x:?}")
                });
            }
        }
        // x_rho as a nested bracket through the outer nodes, in every order.
        let s = |k: usize| rs.simple(k - 1);
        let x = |k: usize| -> LieElement<Q> { cb.x(s(k)) };
        let nested = |o: [usize; 3]| cb.ad_chain(&[&x(2), &x(o[2]), &x(o[1]), &x(o[0])], &x(2)).unwrap();
        let base = nested([1, 3, 4]);
        let c = base.coeff(rs.rho());
        rep.record(c == Q::from_i64(1) || c == Q::from_i64(-1), || format!("nested bracket coefficient {c}"));
        for o in &perms[1..] {
            rep.record(nested(*o) == base, || format!("nested bracket depends on order {o:?}"));
        }
        let a12 = rs.add(s(1), s(2)).unwrap();
        let a23 = rs.add(s(2), s(3)).unwrap();
        rep.record(
            cb.c(s(1), s(2)) * cb.c(s(3), a12) == cb.c(s(3), s(2)) * cb.c(s(1), a23),
            || "c(a1,a2) c(a3,a1+a2) != c(a3,a2) c(a1,a2+a3)".into(),
        );
        run.push("d4-triality", "diagram automorphisms of D4 preserve the bracket and q and fix x_rho, x_-rho", rep);

        let mut rep = CheckReport::default();
        let t = Q::from_i64(3);
        let lam = [1, 0, 0, 0];
        let beta = rs.lookup(&[1, 1, 1, 0]).unwrap();
        let delta = rs.lookup(&[0, 1, 1, 1]).unwrap();
        let xb: LieElement<Q> = cb.x(beta);
        let xd: LieElement<Q> = cb.x(delta);
        rep.record(cb.torus_scale(&lam, &t, &xb).unwrap() == xb.scale(&t), || "x_b not scaled by t".into());
        rep.record(cb.torus_scale(&lam, &t, &xd).unwrap() == xd.scale(&(Q::from_i64(1) / t.clone())), || {
            "x_d not scaled by 1/t".into()
        });
        run.push("d4-torus", "the alpha_1 coroot torus scales x_b by t^<b, alpha_1>", rep);
    }

    run.finish(Suite::Stab, note)
}

/// Runs a suite by name, downgrading exhaustive requests on large types.
pub fn run_suite(suite: Suite, dynkin: DynkinType, requested: Coverage, seed: u64, count: usize) -> Result<SuiteReport, SuiteError> {
    let ctx = FtsContext::for_type(dynkin)?;
    let (mode, note) = resolve_mode(ctx.root_system(), requested, seed, count);
    Ok(match suite {
        Suite::Forms => forms_suite(&ctx, mode, note),
        Suite::Fts => fts_suite(&ctx, mode, note),
        Suite::Stab => stab_suite(&ctx, mode, note),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dt(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    #[test]
    fn exhaustive_gate() {
        for (label, ok) in [("d4", true), ("d5", true), ("e6", true), ("b4", true), ("f4", true), ("e7", false), ("e8", false)] {
            let rs = RootSystem::new(dt(label)).unwrap();
            assert_eq!(exhaustive_allowed(&rs), ok, "{label}");
        }
        let rs = RootSystem::new(dt("e8")).unwrap();
        let (mode, note) = resolve_mode(&rs, Coverage::Exhaustive, 4, 10);
        assert_eq!(mode, Coverage::sampled(4, 10));
        assert!(note.is_some());
    }

    #[test]
    fn suites_pass_on_d4() {
        for suite in [Suite::Forms, Suite::Fts, Suite::Stab] {
            let r = run_suite(suite, dt("d4"), Coverage::Exhaustive, 1, 20).unwrap();
            assert!(r.passed(), "{}", r.to_json());
            assert!(r.checks.iter().all(|c| c.tuples_checked > 0), "{}", r.to_json());
        }
    }

    #[test]
    fn suites_pass_on_non_simply_laced() {
        for label in ["b4", "f4"] {
            for suite in [Suite::Forms, Suite::Fts, Suite::Stab] {
                let r = run_suite(suite, dt(label), Coverage::sampled(2, 20), 2, 20).unwrap();
                assert!(r.passed(), "{}", r.to_json());
            }
        }
    }

    #[test]
    fn sampled_reports_are_reproducible() {
        let a = run_suite(Suite::Fts, dt("d5"), Coverage::sampled(9, 15), 9, 15).unwrap();
        let b = run_suite(Suite::Fts, dt("d5"), Coverage::sampled(9, 15), 9, 15).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("FTS".parse::<Suite>().unwrap(), Suite::Fts);
        assert_eq!("stabilizer".parse::<Suite>().unwrap(), Suite::Stab);
        assert!("nope".parse::<Suite>().is_err());
    }
}
