//! Root systems of types B, D, E and F built from their Cartan data.
//!
//! Simple roots follow Bourbaki numbering. Roots are stored as integer
//! coordinates over the simple roots and enumerated by closing the simple
//! roots under the simple reflections. The canonical order is
//! `(height, coords)` lexicographic, so `-rho` comes first and `rho` last.
//!
//! The symmetric form is normalized so that long roots have squared length 2.
//! Internally we keep `2(x, y)`, which is integral for every supported type.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported Dynkin type {0}: need B_n or D_n with n >= 4, E6, E7, E8 or F4")]
    UnsupportedType(String),
    #[error("pairing against the zero vector")]
    ZeroRoot,
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i32>),
    #[error("coordinate vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("pairing of {0:?} with {1:?} is not an integer")]
    NonIntegralPairing(Vec<i32>, Vec<i32>),
    #[error("root {0:?} does not have alpha-height 1")]
    NotHeight1(Vec<i32>),
    #[error("roots {0:?} and {1:?} are not orthogonal")]
    NotOrthogonal(Vec<i32>, Vec<i32>),
    #[error("root {0:?} is short")]
    NotLong(Vec<i32>),
    #[error("no mutually orthogonal extension of {0:?}, {1:?}")]
    NoExtension(Vec<i32>, Vec<i32>),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = RootError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    B,
    D,
    E,
    F,
}

/// An admissible Dynkin type: `B_n`, `D_n` (`n >= 4`), `E6`, `E7`, `E8`, `F4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::B | Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(RootError::UnsupportedType(format!("{family:?}{rank}")))
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::D | Family::E)
    }

    /// Lower-case label as used on the command line, e.g. `e8`.
    pub fn label(self) -> String {
        self.to_string().to_lowercase()
    }

    /// `2(alpha_i, alpha_j)` for the simple roots, Bourbaki numbering.
    fn doubled_gram(self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut g = vec![vec![0i32; n]; n];
        let link = |g: &mut Vec<Vec<i32>>, i: usize, j: usize, v: i32| {
            g[i - 1][j - 1] = v;
            g[j - 1][i - 1] = v;
        };
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 4;
        }
        match self.family {
            Family::B => {
                for i in 1..n {
                    link(&mut g, i, i + 1, -2);
                }
                g[n - 1][n - 1] = 2;
            }
            Family::D => {
                for i in 1..n - 1 {
                    link(&mut g, i, i + 1, -2);
                }
                link(&mut g, n - 2, n, -2);
            }
            Family::E => {
                link(&mut g, 1, 3, -2);
                link(&mut g, 2, 4, -2);
                for i in 3..n {
                    link(&mut g, i, i + 1, -2);
                }
            }
            Family::F => {
                link(&mut g, 1, 2, -2);
                link(&mut g, 2, 3, -2);
                link(&mut g, 3, 4, -1);
                g[2][2] = 2;
                g[3][3] = 2;
            }
        }
        g
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || RootError::UnsupportedType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('B') => Family::B,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        DynkinType::new(family, rank).map_err(|_| bad())
    }
}

/// Index of a root in the canonical order of its [`RootSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootId(pub(crate) usize);

impl RootId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    coords: Vec<i32>,
    height: i32,
    alpha_height: i32,
    long: bool,
}

impl Root {
    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    pub fn height(&self) -> i32 {
        self.height
    }

    pub fn alpha_height(&self) -> i32 {
        self.alpha_height
    }

    pub fn is_long(&self) -> bool {
        self.long
    }

    pub fn is_positive(&self) -> bool {
        self.height > 0
    }
}

/// The four shapes a quadruple of long alpha-height-1 roots can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadrupleClass {
    /// The roots do not sum to `2 rho`.
    NotTwoRho,
    /// `beta, beta, rho - beta, rho - beta` in some order.
    EqualPairs { beta: RootId },
    /// `beta, rho - beta, gamma, rho - gamma` with `beta` orthogonal to `gamma`.
    RhoPairs { beta: RootId, gamma: RootId },
    MutuallyOrthogonal,
}

const NONE: u32 = u32::MAX;

/// A fully enumerated root system with its distinguished roots `rho`
/// (highest root) and `alpha` (the long simple root with `<alpha, rho> = 1`).
#[derive(Debug, Clone)]
pub struct RootSystem {
    dynkin: DynkinType,
    gram2: Vec<Vec<i32>>,
    cartan: Vec<Vec<i32>>,
    roots: Vec<Root>,
    index: HashMap<Vec<i32>, RootId>,
    neg: Vec<RootId>,
    sum: Vec<u32>,
    ip2: Vec<i32>,
    simple: Vec<RootId>,
    rho: RootId,
    alpha: RootId,
    alpha_node: usize,
    height1: Vec<RootId>,
}

impl RootSystem {
    pub fn new(dynkin: DynkinType) -> Result<Self> {
        let n = dynkin.rank();
        let gram2 = dynkin.doubled_gram();
        let cartan: Vec<Vec<i32>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram2[i][j] / gram2[j][j]).collect())
            .collect();

        // Closure of the simple roots under the simple reflections.
        let unit = |i: usize| {
            let mut v = vec![0i32; n];
            v[i] = 1;
            v
        };
        let mut seen: HashSet<Vec<i32>> = HashSet::new();
        let mut queue: VecDeque<Vec<i32>> = (0..n).map(unit).collect();
        seen.extend(queue.iter().cloned());
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                // <beta, alpha_i> = sum_j beta_j * A[j][i]
                let p: i32 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                if p == 0 {
                    continue;
                }
                let mut image = beta.clone();
                image[i] -= p;
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }

        let mut coords: Vec<Vec<i32>> = seen.into_iter().collect();
        coords.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let count = coords.len();

        let ip2_vec = |a: &[i32], b: &[i32]| -> i32 {
            let mut s = 0;
            for i in 0..n {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    s += a[i] * b[j] * gram2[i][j];
                }
            }
            s
        };

        let index: HashMap<Vec<i32>, RootId> =
            coords.iter().enumerate().map(|(i, c)| (c.clone(), RootId(i))).collect();
        let rho = RootId(count - 1);
        let rho_coords = coords[count - 1].clone();
        let rho_norm2 = ip2_vec(&rho_coords, &rho_coords);
        if rho_norm2 != 4 {
            return Err(RootError::Inconsistent("highest root is not long".into()));
        }

        let simple: Vec<RootId> = (0..n).map(|i| index[&unit(i)]).collect();
        let candidates: Vec<usize> = (0..n)
            .filter(|&i| gram2[i][i] == 4 && 2 * ip2_vec(&unit(i), &rho_coords) / rho_norm2 == 1)
            .collect();
        let alpha_node = match candidates.as_slice() {
            [i] => *i,
            _ => return Err(RootError::Inconsistent(format!("alpha candidates {candidates:?}"))),
        };

        let mut roots = Vec::with_capacity(count);
        for c in &coords {
            let norm2 = ip2_vec(c, c);
            let alpha_height = 2 * ip2_vec(c, &rho_coords) / rho_norm2;
            if alpha_height != c[alpha_node] {
                return Err(RootError::Inconsistent(format!(
                    "alpha-height of {c:?} disagrees with its alpha coefficient"
                )));
            }
            roots.push(Root {
                coords: c.clone(),
                height: c.iter().sum(),
                alpha_height,
                long: norm2 == 4,
            });
        }

        let neg: Vec<RootId> = coords
            .iter()
            .map(|c| index[&c.iter().map(|x| -x).collect::<Vec<_>>()])
            .collect();

        let mut sum = vec![NONE; count * count];
        let mut ip2 = vec![0i32; count * count];
        let mut buf = vec![0i32; n];
        for i in 0..count {
            for j in 0..count {
                ip2[i * count + j] = ip2_vec(&coords[i], &coords[j]);
                for k in 0..n {
                    buf[k] = coords[i][k] + coords[j][k];
                }
                if let Some(r) = index.get(&buf) {
                    sum[i * count + j] = r.0 as u32;
                }
            }
        }

        let height1 = (0..count)
            .filter(|&i| roots[i].alpha_height == 1)
            .map(RootId)
            .collect();

        Ok(RootSystem {
            dynkin,
            gram2,
            cartan,
            roots,
            index,
            neg,
            sum,
            ip2,
            rho,
            alpha: simple[alpha_node],
            simple,
            alpha_node,
            height1,
        })
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.dynkin.rank()
    }

    /// Number of roots.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Dimension of the Lie algebra: roots plus rank.
    pub fn algebra_dim(&self) -> usize {
        self.len() + self.rank()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn ids(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.roots.len()).map(RootId)
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id.0]
    }

    pub fn coords(&self, id: RootId) -> &[i32] {
        &self.roots[id.0].coords
    }

    pub fn find(&self, coords: &[i32]) -> Option<RootId> {
        self.index.get(coords).copied()
    }

    pub fn lookup(&self, coords: &[i32]) -> Result<RootId> {
        if coords.len() != self.rank() {
            return Err(RootError::WrongLength { expected: self.rank(), got: coords.len() });
        }
        self.find(coords).ok_or_else(|| RootError::NotARoot(coords.to_vec()))
    }

    pub fn simple(&self, i: usize) -> RootId {
        self.simple[i]
    }

    pub fn simple_roots(&self) -> &[RootId] {
        &self.simple
    }

    pub fn rho(&self) -> RootId {
        self.rho
    }

    pub fn minus_rho(&self) -> RootId {
        self.neg[self.rho.0]
    }

    pub fn alpha(&self) -> RootId {
        self.alpha
    }

    /// Zero-based position of `alpha` among the simple roots.
    pub fn alpha_node(&self) -> usize {
        self.alpha_node
    }

    pub fn neg(&self, id: RootId) -> RootId {
        self.neg[id.0]
    }

    /// `beta + gamma` if it is a root.
    pub fn add(&self, a: RootId, b: RootId) -> Option<RootId> {
        let s = self.sum[a.0 * self.len() + b.0];
        (s != NONE).then_some(RootId(s as usize))
    }

    /// `beta - gamma` if it is a root.
    pub fn sub(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.add(a, self.neg(b))
    }

    /// `rho - beta` if it is a root.
    pub fn rho_minus(&self, id: RootId) -> Option<RootId> {
        self.add(self.rho, self.neg(id))
    }

    /// `2(beta, gamma)`.
    pub fn ip2(&self, a: RootId, b: RootId) -> i32 {
        self.ip2[a.0 * self.len() + b.0]
    }

    /// `2(x, y)` for arbitrary lattice vectors.
    pub fn ip2_vec(&self, a: &[i32], b: &[i32]) -> i32 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += a[i] * b[j] * self.gram2[i][j];
            }
        }
        s
    }

    /// Cartan integer `<beta, gamma> = 2(beta, gamma)/(gamma, gamma)`.
    pub fn pairing(&self, beta: RootId, gamma: RootId) -> i32 {
        2 * self.ip2(beta, gamma) / self.ip2(gamma, gamma)
    }

    /// `<beta, gamma>` for arbitrary nonzero lattice vectors.
    pub fn pairing_vec(&self, beta: &[i32], gamma: &[i32]) -> Result<i32> {
        let n = self.rank();
        if beta.len() != n || gamma.len() != n {
            let got = if beta.len() != n { beta.len() } else { gamma.len() };
            return Err(RootError::WrongLength { expected: n, got });
        }
        if gamma.iter().all(|&c| c == 0) {
            return Err(RootError::ZeroRoot);
        }
        let num = 2 * self.ip2_vec(beta, gamma);
        let den = self.ip2_vec(gamma, gamma);
        if num % den != 0 {
            return Err(RootError::NonIntegralPairing(beta.to_vec(), gamma.to_vec()));
        }
        Ok(num / den)
    }

    /// `<beta, rho>`, the coefficient of `alpha` in `beta`.
    pub fn alpha_height(&self, beta: RootId) -> i32 {
        self.roots[beta.0].alpha_height
    }

    /// As [`alpha_height`](Self::alpha_height), for raw coordinates.
    pub fn alpha_height_of(&self, coords: &[i32]) -> Result<i32> {
        Ok(self.alpha_height(self.lookup(coords)?))
    }

    pub fn is_long(&self, beta: RootId) -> bool {
        self.roots[beta.0].long
    }

    pub fn is_orthogonal(&self, a: RootId, b: RootId) -> bool {
        self.ip2(a, b) == 0
    }

    /// The roots of alpha-height 1, in canonical order.
    pub fn height1_roots(&self) -> &[RootId] {
        &self.height1
    }

    /// Roots of a given alpha-height, in canonical order.
    pub fn roots_of_alpha_height(&self, k: i32) -> Vec<RootId> {
        self.ids().filter(|&r| self.alpha_height(r) == k).collect()
    }

    fn require_height1(&self, b: RootId) -> Result<()> {
        if self.alpha_height(b) == 1 {
            Ok(())
        } else {
            Err(RootError::NotHeight1(self.coords(b).to_vec()))
        }
    }

    fn require_long(&self, b: RootId) -> Result<()> {
        if self.is_long(b) {
            Ok(())
        } else {
            Err(RootError::NotLong(self.coords(b).to_vec()))
        }
    }

    /// Extends an orthogonal pair of long alpha-height-1 roots to four
    /// mutually orthogonal alpha-height-1 roots `[beta, gamma, delta, eps]`.
    /// `delta < eps` is the first such pair in canonical order.
    pub fn extend_orthogonal_pair(&self, beta: RootId, gamma: RootId) -> Result<[RootId; 4]> {
        self.require_height1(beta)?;
        self.require_height1(gamma)?;
        if beta == gamma || !self.is_orthogonal(beta, gamma) {
            return Err(RootError::NotOrthogonal(
                self.coords(beta).to_vec(),
                self.coords(gamma).to_vec(),
            ));
        }
        self.require_long(beta)?;
        self.require_long(gamma)?;
        let free: Vec<RootId> = self
            .height1
            .iter()
            .copied()
            .filter(|&d| self.is_orthogonal(d, beta) && self.is_orthogonal(d, gamma))
            .collect();
        for (i, &delta) in free.iter().enumerate() {
            for &eps in &free[i + 1..] {
                if self.is_orthogonal(delta, eps) {
                    return Ok([beta, gamma, delta, eps]);
                }
            }
        }
        Err(RootError::NoExtension(self.coords(beta).to_vec(), self.coords(gamma).to_vec()))
    }

    /// Whether the four roots sum to `2 rho`.
    pub fn sums_to_two_rho(&self, q: [RootId; 4]) -> bool {
        let rho = self.coords(self.rho);
        (0..self.rank()).all(|k| q.iter().map(|&b| self.coords(b)[k]).sum::<i32>() == 2 * rho[k])
    }

    /// Sorts a quadruple of long alpha-height-1 roots into the cases of the
    /// closed-form evaluation of the 4-linear form.
    pub fn classify_quadruple(&self, q: [RootId; 4]) -> Result<QuadrupleClass> {
        for &b in &q {
            self.require_long(b)?;
            self.require_height1(b)?;
        }
        if !self.sums_to_two_rho(q) {
            return Ok(QuadrupleClass::NotTwoRho);
        }
        let b1 = q[0];
        let partner = |b: RootId| self.rho_minus(b).expect("rho - beta is a root at alpha-height 1");
        if (1..4).any(|i| q[i] == b1) || q[2] == q[3] || q[1] == q[2] || q[1] == q[3] {
            // A repeated root forces the pattern beta, beta, rho - beta, rho - beta.
            let mut sorted = q;
            sorted.sort();
            let (x, y) = (sorted[0], sorted[3]);
            if sorted[1] == x && sorted[2] == y && partner(x) == y {
                return Ok(QuadrupleClass::EqualPairs { beta: b1 });
            }
            return Err(RootError::Inconsistent(format!("unclassifiable quadruple {q:?}")));
        }
        let all_orthogonal =
            (0..4).all(|i| (i + 1..4).all(|j| self.is_orthogonal(q[i], q[j])));
        if all_orthogonal {
            return Ok(QuadrupleClass::MutuallyOrthogonal);
        }
        let k = (1..4)
            .find(|&k| q[k] == partner(b1))
            .ok_or_else(|| RootError::Inconsistent(format!("unclassifiable quadruple {q:?}")))?;
        let rest: Vec<RootId> = (1..4).filter(|&i| i != k).map(|i| q[i]).collect();
        let gamma = rest
            .iter()
            .copied()
            .find(|&g| self.is_orthogonal(b1, g))
            .ok_or_else(|| RootError::Inconsistent(format!("unclassifiable quadruple {q:?}")))?;
        let other = if rest[0] == gamma { rest[1] } else { rest[0] };
        if partner(gamma) != other {
            return Err(RootError::Inconsistent(format!("unclassifiable quadruple {q:?}")));
        }
        Ok(QuadrupleClass::RhoPairs { beta: b1, gamma })
    }

    pub fn to_table(&self) -> RootTable {
        RootTable {
            dynkin: self.dynkin.label(),
            roots: self
                .roots
                .iter()
                .map(|r| RootEntry {
                    coords: r.coords.clone(),
                    alpha_height: r.alpha_height,
                    long: r.long,
                })
                .collect(),
            rho: self.coords(self.rho).to_vec(),
            alpha: self.coords(self.alpha).to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub coords: Vec<i32>,
    pub alpha_height: i32,
    pub long: bool,
}

/// JSON form of a root system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootTable {
    #[serde(rename = "type")]
    pub dynkin: String,
    pub roots: Vec<RootEntry>,
    pub rho: Vec<i32>,
    pub alpha: Vec<i32>,
}
