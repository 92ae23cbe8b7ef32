//! Root systems of types A–G in the simple-root basis.
//!
//! Conventions: Bourbaki numbering, Cartan entries `A[i][j] = ⟨α_i^∨, α_j⟩`, and the
//! invariant form normalized so that long roots have squared length 2.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

pub type Rat = Ratio<i64>;
pub type RootVec = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid Cartan type {0}{1}")]
    InvalidType(String, usize),
    #[error("unknown Cartan type letter {0:?}")]
    UnknownLetter(String),
    #[error("map is not a bijection onto the target set")]
    NotBijection,
    #[error("simple root index {0} out of range")]
    IndexOutOfRange(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for CartanType {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "E" => CartanType::E,
            "F" => CartanType::F,
            "G" => CartanType::G,
            other => return Err(RootSystemError::UnknownLetter(other.to_string())),
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn cartan_matrix(ty: CartanType, n: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>), RootSystemError> {
    let valid = match ty {
        CartanType::A => n >= 1,
        CartanType::B | CartanType::C => n >= 2,
        CartanType::D => n >= 3,
        CartanType::E => (6..=8).contains(&n),
        CartanType::F => n == 4,
        CartanType::G => n == 2,
    };
    if !valid {
        return Err(RootSystemError::InvalidType(ty.to_string(), n));
    }
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match ty {
        CartanType::A | CartanType::B | CartanType::C => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        CartanType::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        CartanType::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        CartanType::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        CartanType::G => link(0, 1),
    }
    // Symmetrizer: squared lengths up to a common factor (short = 1).
    let mut d = vec![1i64; n];
    match ty {
        CartanType::B => {
            // α_n short.
            a[n - 2][n - 1] = -1;
            a[n - 1][n - 2] = -2;
            d = vec![2; n];
            d[n - 1] = 1;
        }
        CartanType::C => {
            // α_n long.
            a[n - 2][n - 1] = -2;
            a[n - 1][n - 2] = -1;
            d[n - 1] = 2;
        }
        CartanType::F => {
            a[1][2] = -1;
            a[2][1] = -2;
            d = vec![2, 2, 1, 1];
        }
        CartanType::G => {
            // α_1 short.
            a[0][1] = -3;
            a[1][0] = -1;
            d = vec![1, 3];
        }
        _ => {}
    }
    Ok((a, d))
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ty: CartanType,
    pub rank: usize,
    /// `cartan[i][j] = ⟨α_i^∨, α_j⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive integers proportional to `(α_i, α_i)`.
    pub symmetrizer: Vec<i64>,
    /// Sorted by height, then by decreasing coordinates (so simple roots come first in index order).
    pub positive: Vec<RootVec>,
    index: HashMap<RootVec, usize>,
    d_max: i64,
}

impl RootSystem {
    pub fn build(ty: CartanType, rank: usize) -> Result<Self, RootSystemError> {
        let (cartan, symmetrizer) = cartan_matrix(ty, rank)?;
        let d_max = *symmetrizer.iter().max().expect("rank >= 1");
        let mut rs = RootSystem { ty, rank, cartan, symmetrizer, positive: Vec::new(), index: HashMap::new(), d_max };
        rs.close_positive_roots();
        Ok(rs)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.ty, self.rank)
    }

    fn close_positive_roots(&mut self) {
        let n = self.rank;
        let mut found: BTreeSet<RootVec> = BTreeSet::new();
        let mut layer: Vec<RootVec> = (0..n).map(|i| unit(n, i)).collect();
        found.extend(layer.iter().cloned());
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    // α_i-string through β: β - pα_i, …, β + qα_i with p - q = ⟨β, α_i^∨⟩.
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if found.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - self.coroot_pairing(beta, i);
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if found.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            layer = next;
        }
        let mut roots: Vec<RootVec> = found.into_iter().collect();
        roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        self.index = roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        self.positive = roots;
    }

    /// `⟨β, α_i^∨⟩` for `β` in simple-root coordinates.
    pub fn coroot_pairing(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.cartan[i]).map(|(c, a)| c * a).sum()
    }

    /// Normalized invariant form `(x, y)`.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> Rat {
        let mut acc = 0i64;
        for i in 0..self.rank {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += x[i] * y[j] * self.symmetrizer[i] * self.cartan[i][j];
            }
        }
        Rat::new(acc, self.d_max)
    }

    pub fn norm2(&self, x: &[i64]) -> Rat {
        self.inner(x, x)
    }

    /// Gram matrix `(α_i, α_j)` of simple roots.
    pub fn gram(&self) -> Vec<Vec<Rat>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| Rat::new(self.symmetrizer[i] * self.cartan[i][j], self.d_max)).collect())
            .collect()
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn positive_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    /// Locates a root (of either sign): `(true, k)` for `positive[k]`, `(false, k)` for `-positive[k]`.
    pub fn root_index(&self, r: &[i64]) -> Option<(bool, usize)> {
        if let Some(k) = self.positive_index(r) {
            return Some((true, k));
        }
        let neg: RootVec = r.iter().map(|c| -c).collect();
        self.positive_index(&neg).map(|k| (false, k))
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        self.root_index(r).is_some()
    }

    pub fn highest_root(&self) -> &RootVec {
        self.positive.last().expect("nonempty")
    }

    pub fn simple(&self, i: usize) -> RootVec {
        unit(self.rank, i)
    }

    /// Simple reflection `s_i` as a matrix on simple-root coordinates (column `j` = `s_i(α_j)`).
    pub fn reflection(&self, i: usize) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut m = identity(n);
        for j in 0..n {
            m[i][j] -= self.cartan[i][j];
        }
        m
    }

    /// The longest element `w₀` with a reduced word and the induced permutation `-w₀` of simple roots.
    pub fn longest_weyl(&self) -> WeylElement {
        let n = self.rank;
        let mut w = identity(n);
        let mut word = Vec::new();
        'outer: loop {
            for i in 0..n {
                let img = column(&w, i);
                if img.iter().any(|&c| c > 0) {
                    w = mat_mul(&w, &self.reflection(i));
                    word.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        let perm = (0..n)
            .map(|i| {
                let neg: RootVec = column(&w, i).iter().map(|c| -c).collect();
                (0..n).find(|&j| neg == unit(n, j)).expect("w0 sends simple roots to negative simple roots")
            })
            .collect();
        WeylElement { matrix: w, word, diagram_perm: perm }
    }

    /// True iff `map` is a bijection `src → dst` preserving the form.
    pub fn is_isometry(&self, src: &[usize], dst: &[usize], map: &[(usize, usize)]) -> Result<bool, RootSystemError> {
        for &i in src.iter().chain(dst) {
            if i >= self.rank {
                return Err(RootSystemError::IndexOutOfRange(i));
            }
        }
        let dom: BTreeSet<usize> = map.iter().map(|p| p.0).collect();
        let img: BTreeSet<usize> = map.iter().map(|p| p.1).collect();
        let src_set: BTreeSet<usize> = src.iter().copied().collect();
        let dst_set: BTreeSet<usize> = dst.iter().copied().collect();
        if dom != src_set || img != dst_set || dom.len() != map.len() || img.len() != map.len() {
            return Err(RootSystemError::NotBijection);
        }
        let g = self.gram();
        Ok(map.iter().all(|&(a, ta)| map.iter().all(|&(b, tb)| g[a][b] == g[ta][tb])))
    }

    /// Coroot `β^∨` in simple-coroot coordinates.
    pub fn coroot_coords(&self, beta: &[i64]) -> Vec<Rat> {
        let nb = self.norm2(beta);
        (0..self.rank).map(|j| Rat::from(beta[j]) * self.norm2(&self.simple(j)) / nb).collect()
    }

    /// Matrix of `w` acting on the simple coroots (column `j` = coroot coordinates of `w(α_j^∨)`).
    pub fn coroot_action(&self, w: &WeylElement) -> Vec<Vec<Rat>> {
        let n = self.rank;
        let cols: Vec<Vec<Rat>> = (0..n).map(|j| self.coroot_coords(&column(&w.matrix, j))).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
    }
}

/// Element of the Weyl group as an integer matrix on simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    pub word: Vec<usize>,
    /// `diagram_perm[i] = k` with `-w₀(α_i) = α_k` (only meaningful for `w₀`).
    pub diagram_perm: Vec<usize>,
}

impl WeylElement {
    pub fn apply(&self, v: &[i64]) -> RootVec {
        mat_vec(&self.matrix, v)
    }
}

pub fn unit(n: usize, i: usize) -> RootVec {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

pub(crate) fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| unit(n, i)).collect()
}

pub(crate) fn column(m: &[Vec<i64>], j: usize) -> RootVec {
    m.iter().map(|row| row[j]).collect()
}

pub(crate) fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
}

pub(crate) fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> RootVec {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}
