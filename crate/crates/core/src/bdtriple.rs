//! Admissible Belavin–Drinfeld triples `(Γ₁, Γ₂, τ)`.
//!
//! Simple roots are 0-based internally; the text and JSON forms are 1-based.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chevalley::{ChevalleyAlgebra, ChevalleyError};
use crate::rootsys::{RootSystem, RootSystemError, RootVec};

pub const DEFAULT_RANK_BOUND: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TripleError {
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("not isometry")]
    NotIsometry,
    #[error("nilpotency fails at simple root α{}", .0 + 1)]
    NilpotencyFails(usize),
    #[error("iterate of {0:?} is not a positive root")]
    IterateNotPositive(RootVec),
    #[error("rank {rank} exceeds the enumeration bound {bound}")]
    RankBoundExceeded { rank: usize, bound: usize },
    #[error("cannot parse triple: {0}")]
    Parse(String),
    #[error(transparent)]
    Lift(#[from] ChevalleyError),
}

impl TripleError {
    /// Short rejection tag.
    pub fn tag(&self) -> &'static str {
        match self {
            TripleError::NotBijection(_) => "not a bijection",
            TripleError::NotIsometry => "not isometry",
            TripleError::NilpotencyFails(_) => "nilpotency fails",
            TripleError::IterateNotPositive(_) => "iterate not positive",
            TripleError::RankBoundExceeded { .. } => "rank bound exceeded",
            TripleError::Parse(_) => "parse error",
            TripleError::Lift(_) => "lift failure",
        }
    }
}

/// An unvalidated triple as supplied by the user (0-based).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripleSpec {
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    pub tau: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct TripleJson {
    #[serde(rename = "G1")]
    g1: Vec<usize>,
    #[serde(rename = "G2")]
    g2: Vec<usize>,
    tau: Vec<[usize; 2]>,
}

fn parse_index_list(s: &str) -> Result<Vec<usize>, TripleError> {
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| TripleError::Parse(format!("expected [..], got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|x| parse_one_based(x.trim())).collect()
}

fn parse_one_based(s: &str) -> Result<usize, TripleError> {
    match s.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v - 1),
        _ => Err(TripleError::Parse(format!("bad simple root index {s:?}"))),
    }
}

impl TripleSpec {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses `G1=[i,...];G2=[p,...];tau=i->p,...`.
    pub fn parse(s: &str) -> Result<Self, TripleError> {
        let parts: Vec<&str> = s.trim().split(';').map(str::trim).collect();
        let [g1, g2, tau] = parts.as_slice() else {
            return Err(TripleError::Parse("expected three ';'-separated fields".into()));
        };
        let field = |x: &'_ str, key: &str| -> Result<String, TripleError> {
            x.strip_prefix(key)
                .and_then(|y| y.trim_start().strip_prefix('='))
                .map(|y| y.trim().to_string())
                .ok_or_else(|| TripleError::Parse(format!("expected field {key}")))
        };
        let gamma1 = parse_index_list(&field(g1, "G1")?)?;
        let gamma2 = parse_index_list(&field(g2, "G2")?)?;
        let tau_s = field(tau, "tau")?;
        let mut pairs = Vec::new();
        if !tau_s.is_empty() {
            for p in tau_s.split(',') {
                let (a, b) = p
                    .split_once("->")
                    .ok_or_else(|| TripleError::Parse(format!("bad tau entry {p:?}")))?;
                pairs.push((parse_one_based(a.trim())?, parse_one_based(b.trim())?));
            }
        }
        Ok(TripleSpec { gamma1, gamma2, tau: pairs })
    }

    pub fn parse_json(s: &str) -> Result<Self, TripleError> {
        let j: TripleJson = serde_json::from_str(s).map_err(|e| TripleError::Parse(e.to_string()))?;
        let dec = |v: usize| v.checked_sub(1).ok_or_else(|| TripleError::Parse("indices are 1-based".into()));
        Ok(TripleSpec {
            gamma1: j.g1.into_iter().map(dec).collect::<Result<_, _>>()?,
            gamma2: j.g2.into_iter().map(dec).collect::<Result<_, _>>()?,
            tau: j.tau.into_iter().map(|[a, b]| Ok::<_, TripleError>((dec(a)?, dec(b)?))).collect::<Result<_, _>>()?,
        })
    }

    pub fn to_json(&self) -> String {
        let j = TripleJson {
            g1: self.gamma1.iter().map(|x| x + 1).collect(),
            g2: self.gamma2.iter().map(|x| x + 1).collect(),
            tau: self.tau.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
        };
        serde_json::to_string(&j).expect("serializable")
    }
}

impl fmt::Display for TripleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",");
        let tau = self.tau.iter().map(|(a, b)| format!("{}->{}", a + 1, b + 1)).collect::<Vec<_>>().join(",");
        write!(f, "G1=[{}];G2=[{}];tau={}", list(&self.gamma1), list(&self.gamma2), tau)
    }
}

/// The chain `τ(α), τ²(α), …` of a positive root `α ∈ Span(Γ₁)⁺` (positive-root indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauString {
    pub root: usize,
    pub iterates: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleTriple {
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    pub tau: BTreeMap<usize, usize>,
    /// First `k ≥ 1` with `τ^k(α) ∉ Γ₁`, per `α ∈ Γ₁`.
    pub escape: BTreeMap<usize, usize>,
    pub strings: Vec<TauString>,
}

impl AdmissibleTriple {
    pub fn is_empty(&self) -> bool {
        self.gamma1.is_empty()
    }

    pub fn spec(&self) -> TripleSpec {
        TripleSpec {
            gamma1: self.gamma1.clone(),
            gamma2: self.gamma2.clone(),
            tau: self.tau.iter().map(|(&a, &b)| (a, b)).collect(),
        }
    }

    /// Linear extension of `τ` applied to a vector supported on `Γ₁`.
    pub fn apply_tau(&self, r: &[i64]) -> Option<RootVec> {
        let mut out = vec![0; r.len()];
        for (j, &c) in r.iter().enumerate() {
            if c != 0 {
                out[*self.tau.get(&j)?] += c;
            }
        }
        Some(out)
    }

    pub fn in_span_gamma1(&self, r: &[i64]) -> bool {
        r.iter().enumerate().all(|(j, &c)| c == 0 || self.tau.contains_key(&j))
    }
}

impl fmt::Display for AdmissibleTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec().fmt(f)
    }
}

pub fn validate(rs: &RootSystem, spec: &TripleSpec) -> Result<AdmissibleTriple, TripleError> {
    let n = rs.rank;
    let bij = |m: String| TripleError::NotBijection(m);
    for &i in spec.gamma1.iter().chain(&spec.gamma2).chain(spec.tau.iter().flat_map(|(a, b)| [a, b])) {
        if i >= n {
            return Err(bij(format!("simple root {} out of range", i + 1)));
        }
    }
    let g1: BTreeSet<usize> = spec.gamma1.iter().copied().collect();
    let g2: BTreeSet<usize> = spec.gamma2.iter().copied().collect();
    if g1.len() != spec.gamma1.len() || g2.len() != spec.gamma2.len() {
        return Err(bij("repeated simple root".into()));
    }
    let tau: BTreeMap<usize, usize> = spec.tau.iter().copied().collect();
    if tau.len() != spec.tau.len() {
        return Err(bij("tau assigns a root twice".into()));
    }
    let image: BTreeSet<usize> = tau.values().copied().collect();
    if tau.keys().copied().collect::<BTreeSet<_>>() != g1 || image != g2 || image.len() != tau.len() {
        return Err(bij("tau does not map G1 bijectively onto G2".into()));
    }
    let map: Vec<(usize, usize)> = tau.iter().map(|(&a, &b)| (a, b)).collect();
    let g1v: Vec<usize> = g1.iter().copied().collect();
    let g2v: Vec<usize> = g2.iter().copied().collect();
    match rs.is_isometry(&g1v, &g2v, &map) {
        Ok(true) => {}
        Ok(false) => return Err(TripleError::NotIsometry),
        Err(RootSystemError::NotBijection) => return Err(bij("tau does not map G1 bijectively onto G2".into())),
        Err(e) => return Err(bij(e.to_string())),
    }
    let mut escape = BTreeMap::new();
    for &a in &g1v {
        let mut cur = a;
        let mut k = 0;
        loop {
            k += 1;
            cur = tau[&cur];
            if !g1.contains(&cur) {
                break;
            }
            if k > g1v.len() {
                return Err(TripleError::NilpotencyFails(a));
            }
        }
        escape.insert(a, k);
    }
    let mut triple = AdmissibleTriple { gamma1: g1v, gamma2: g2v, tau, escape, strings: Vec::new() };
    triple.strings = tau_strings(&triple, rs)?;
    Ok(triple)
}

pub fn tau_strings(triple: &AdmissibleTriple, rs: &RootSystem) -> Result<Vec<TauString>, TripleError> {
    let mut out = Vec::new();
    for (k, r) in rs.positive.iter().enumerate() {
        if triple.gamma1.is_empty() || !triple.in_span_gamma1(r) {
            continue;
        }
        let mut iterates = Vec::new();
        let mut cur = r.clone();
        while triple.in_span_gamma1(&cur) && iterates.len() <= rs.rank {
            let img = triple.apply_tau(&cur).expect("in span");
            let idx = rs.positive_index(&img).ok_or_else(|| TripleError::IterateNotPositive(r.clone()))?;
            iterates.push(idx);
            cur = img;
        }
        out.push(TauString { root: k, iterates });
    }
    Ok(out)
}

fn injections(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for prefix in injections(n, k - 1) {
        for x in 0..n {
            if !prefix.contains(&x) {
                let mut p = prefix.clone();
                p.push(x);
                out.push(p);
            }
        }
    }
    out
}

/// All admissible triples, ordered by `|Γ₁|`, then `Γ₁`, then the images of `Γ₁` under `τ`.
pub fn enumerate(rs: &RootSystem, rank_bound: usize) -> Result<Vec<AdmissibleTriple>, TripleError> {
    let n = rs.rank;
    if n > rank_bound {
        return Err(TripleError::RankBoundExceeded { rank: n, bound: rank_bound });
    }
    let mut subsets: Vec<Vec<usize>> =
        (0u32..1 << n).map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect()).collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let found: Vec<Vec<AdmissibleTriple>> = subsets
        .par_iter()
        .map(|g1| {
            injections(n, g1.len())
                .into_iter()
                .filter_map(|img| {
                    let mut g2 = img.clone();
                    g2.sort();
                    let spec = TripleSpec { gamma1: g1.clone(), gamma2: g2, tau: g1.iter().copied().zip(img).collect() };
                    validate(rs, &spec).ok()
                })
                .collect()
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// `θ_τ^k(e_α) = σ·e_{τ^k(α)}` for every root of every τ-string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftEntry {
    pub root: usize,
    pub k: usize,
    pub target: usize,
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauLift {
    /// One-step lift on `Span(Γ₁)⁺`: positive-root index ↦ (target index, sign).
    pub step: BTreeMap<usize, (usize, i64)>,
    pub entries: Vec<LiftEntry>,
}

impl TauLift {
    pub fn build(alg: &ChevalleyAlgebra, triple: &AdmissibleTriple) -> Result<Self, TripleError> {
        let step = alg.transport_signs(&triple.gamma1, |j| triple.tau.get(&j).copied().unwrap_or(j))?;
        let mut entries = Vec::new();
        for s in &triple.strings {
            let mut cur = s.root;
            let mut sign = 1;
            for (i, &target) in s.iterates.iter().enumerate() {
                let (t, sg) = step[&cur];
                debug_assert_eq!(t, target);
                sign *= sg;
                entries.push(LiftEntry { root: s.root, k: i + 1, target, sign });
                cur = t;
            }
        }
        Ok(TauLift { step, entries })
    }

    /// Checks `θ[e_α, e_β] = [θe_α, θe_β]` on `Span(Γ₁)⁺`.
    pub fn is_bracket_preserving(&self, alg: &ChevalleyAlgebra) -> bool {
        let rs = alg.root_system();
        self.step.iter().all(|(&a, &(ta, sa))| {
            self.step.iter().all(|(&b, &(tb, sb))| {
                let sum: RootVec = rs.positive[a].iter().zip(&rs.positive[b]).map(|(x, y)| x + y).collect();
                let n = alg.structure_constant(&rs.positive[a], &rs.positive[b]);
                let lhs = match rs.positive_index(&sum) {
                    Some(c) => match self.step.get(&c) {
                        Some(&(_, sc)) => n * sc,
                        None => return false,
                    },
                    None => 0,
                };
                let rhs = sa * sb * alg.structure_constant(&rs.positive[ta], &rs.positive[tb]);
                lhs == rhs
            })
        })
    }
}
