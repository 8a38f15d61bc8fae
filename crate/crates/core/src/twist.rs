//! Character arithmetic behind twisted unitary 1-groups: inner products,
//! kernels, APP pairs, minimal tensor powers, Haar moments and Weil-family
//! parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::chartab::CharacterTable;
use crate::cyclotomic::{Cyclotomic, Rational};

/// Default upper bound for minimal tensor power scans.
pub const DEFAULT_N_MAX: u32 = 24;
/// Beyond this many table automorphisms pair equivalence falls back to
/// Galois conjugation alone.
pub const AUTOMORPHISM_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("{what} evaluated to {value}, not a nonnegative integer; the table is inconsistent")]
    NonIntegerResult { what: String, value: String },
    #[error("bad character signature `{0}`; expected DEG[:KER][@IDX]")]
    BadSignature(String),
    #[error("no character matches signature {0}")]
    NoMatch(String),
    #[error("signature {sig} matches {count} characters; add @IDX")]
    Ambiguous { sig: String, count: usize },
}

fn to_cyc(n: &BigUint) -> Cyclotomic {
    Cyclotomic::from_bigint(BigInt::from(n.clone()))
}

/// `(1/|G|)·Σ_c |c|·a(c)·conj(b(c))` as an exact integer.
pub fn inner_values(t: &CharacterTable, a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<BigUint, TwistError> {
    let s: Cyclotomic = (0..t.n_classes())
        .map(|c| &(&to_cyc(&t.class_sizes[c]) * &a[c]) * &b[c].conj())
        .sum();
    divide_by_order(t, s, "inner product")
}

fn divide_by_order(t: &CharacterTable, s: Cyclotomic, what: &str) -> Result<BigUint, TwistError> {
    let v = s.scale(&Rational::new(BigInt::one(), BigInt::from(t.order.clone())));
    v.as_nonneg_integer().ok_or_else(|| TwistError::NonIntegerResult {
        what: what.to_string(),
        value: v.to_string(),
    })
}

pub fn inner_product(t: &CharacterTable, a: usize, b: usize) -> Result<BigUint, TwistError> {
    inner_values(t, &t.characters[a], &t.characters[b])
}

/// Pointwise product `a·b`.
pub fn product_character(t: &CharacterTable, a: usize, b: usize) -> Vec<Cyclotomic> {
    t.characters[a].iter().zip(&t.characters[b]).map(|(x, y)| x * y).collect()
}

/// `⟨χ, χ⟩` for an arbitrary class function given by values.
pub fn norm(t: &CharacterTable, values: &[Cyclotomic]) -> Result<BigUint, TwistError> {
    inner_values(t, values, values)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Kernel {
    pub classes: Vec<usize>,
    #[serde(serialize_with = "ser_big")]
    pub size: BigUint,
}

impl Kernel {
    pub fn is_faithful(&self) -> bool {
        self.size.is_one()
    }
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

/// Classes on which `a` takes its degree, and the number of elements there.
pub fn kernel_classes(t: &CharacterTable, a: usize) -> Kernel {
    let row = &t.characters[a];
    let classes: Vec<usize> = (0..t.n_classes()).filter(|&c| row[c] == row[0]).collect();
    let size = classes.iter().map(|&c| &t.class_sizes[c]).sum();
    Kernel { classes, size }
}

/// Whether `ker f ⊆ ker λ`; when false no power of `f` contains `λ`.
pub fn kernel_contained(t: &CharacterTable, f: usize, lambda: usize) -> bool {
    let kl = kernel_classes(t, lambda);
    kernel_classes(t, f).classes.iter().all(|c| kl.classes.contains(c))
}

/// `‖λf‖ = 1`.
pub fn is_twisted_1group(t: &CharacterTable, f: usize, lambda: usize) -> Result<bool, TwistError> {
    Ok(norm(t, &product_character(t, lambda, f))?.is_one())
}

/// Outcome of a minimal tensor power scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MinN {
    Found {
        n: u32,
        #[serde(serialize_with = "ser_big")]
        multiplicity: BigUint,
    },
    NotFound { n_max: u32 },
    /// `ker f ⊄ ker λ`
    Never,
}

impl MinN {
    pub fn n(&self) -> Option<u32> {
        match self {
            MinN::Found { n, .. } => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for MinN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinN::Found { n, .. } => write!(f, "{n}"),
            MinN::NotFound { n_max } => write!(f, "NotFound (n <= {n_max})"),
            MinN::Never => write!(f, "Never (kernel obstruction)"),
        }
    }
}

/// `⟨λ, fⁿ⟩` for `n = 1..=n_max`.
pub fn multiplicities(t: &CharacterTable, f: usize, lambda: usize, n_max: u32) -> Result<Vec<BigUint>, TwistError> {
    let k = t.n_classes();
    let weights: Vec<Cyclotomic> = (0..k)
        .map(|c| &to_cyc(&t.class_sizes[c]) * &t.characters[lambda][c].conj())
        .collect();
    let fr = &t.characters[f];
    let mut power = fr.clone();
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        if n > 1 {
            power = power.iter().zip(fr).map(|(p, v)| p * v).collect();
        }
        let s: Cyclotomic = (0..k).map(|c| &weights[c] * &power[c]).sum();
        out.push(divide_by_order(t, s, "multiplicity")?);
    }
    Ok(out)
}

/// Smallest `n ≤ n_max` with `⟨λ, fⁿ⟩ > 0`.
pub fn min_n(t: &CharacterTable, f: usize, lambda: usize, n_max: u32) -> Result<MinN, TwistError> {
    if !kernel_contained(t, f, lambda) {
        return Ok(MinN::Never);
    }
    let k = t.n_classes();
    let weights: Vec<Cyclotomic> = (0..k)
        .map(|c| &to_cyc(&t.class_sizes[c]) * &t.characters[lambda][c].conj())
        .collect();
    let fr = &t.characters[f];
    let mut power = fr.clone();
    for n in 1..=n_max {
        if n > 1 {
            power = power.iter().zip(fr).map(|(p, v)| p * v).collect();
        }
        let s: Cyclotomic = (0..k).map(|c| &weights[c] * &power[c]).sum();
        let m = divide_by_order(t, s, "multiplicity")?;
        if !m.is_zero() {
            return Ok(MinN::Found { n, multiplicity: m });
        }
    }
    Ok(MinN::NotFound { n_max })
}

fn partitions(t: u32, max_part: u32, max_len: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if t == 0 {
        out.push(prefix.clone());
        return;
    }
    if max_len == 0 {
        return;
    }
    for part in (1..=max_part.min(t)).rev() {
        prefix.push(part);
        partitions(t - part, part, max_len - 1, prefix, out);
        prefix.pop();
    }
}

/// Number of standard Young tableaux of shape `mu`.
pub fn hook_length_dimension(mu: &[u32]) -> BigUint {
    let t: u32 = mu.iter().sum();
    let mut num: BigUint = (1..=t).map(BigUint::from).product();
    let conj: Vec<u32> = (0..mu.first().copied().unwrap_or(0))
        .map(|j| mu.iter().filter(|&&r| r > j).count() as u32)
        .collect();
    let mut hooks = BigUint::one();
    for (i, &row) in mu.iter().enumerate() {
        for j in 0..row {
            hooks *= BigUint::from(row - j + conj[j as usize] - i as u32 - 1);
        }
    }
    num /= hooks;
    num
}

/// `∫ |tr U|^{2t} dU` over `U(q)`.
pub fn haar_moment(q: u32, t: u32) -> BigUint {
    let mut parts = Vec::new();
    partitions(t, t, q, &mut Vec::new(), &mut parts);
    parts.iter().map(|mu| {
        let d = hook_length_dimension(mu);
        &d * &d
    }).sum()
}

fn abs_sq(v: &Cyclotomic) -> Cyclotomic {
    v * &v.conj()
}

/// `(1/|G|)·Σ_c |c|·|λ(c)|^{2t}`.
pub fn unitary_moment(t: &CharacterTable, lambda: usize, tt: u32) -> Result<BigUint, TwistError> {
    let s: Cyclotomic = (0..t.n_classes())
        .map(|c| &to_cyc(&t.class_sizes[c]) * &abs_sq(&t.characters[lambda][c]).pow(tt))
        .sum();
    divide_by_order(t, s, "unitary moment")
}

/// Whether `λ(G)` is a unitary `t`-group in `U(K)`.
pub fn unitary_t_check(t: &CharacterTable, lambda: usize, tt: u32) -> Result<bool, TwistError> {
    let k = t.degree_u64(lambda).unwrap_or(u64::MAX).min(u32::MAX as u64) as u32;
    Ok(unitary_moment(t, lambda, tt)? == haar_moment(k, tt))
}

/// `(1/|G|)·Σ_c |c|·|λ(c)|²·|f(c)|^{2t}` and whether it equals the Haar value
/// for `U(q)`.
pub fn twisted_t_moment(t: &CharacterTable, f: usize, lambda: usize, tt: u32) -> Result<(BigUint, bool), TwistError> {
    let s: Cyclotomic = (0..t.n_classes())
        .map(|c| {
            let w = &to_cyc(&t.class_sizes[c]) * &abs_sq(&t.characters[lambda][c]);
            &w * &abs_sq(&t.characters[f][c]).pow(tt)
        })
        .sum();
    let m = divide_by_order(t, s, "twisted moment")?;
    let q = t.degree_u64(f).unwrap_or(u64::MAX).min(u32::MAX as u64) as u32;
    let ok = m == haar_moment(q, tt);
    Ok((m, ok))
}

/// Row permutations induced by the Galois group of the character field.
pub fn galois_actions(t: &CharacterTable) -> Vec<(i64, Vec<usize>)> {
    let n = t.field_order() as i64;
    let mut out = Vec::new();
    for k in 1..n.max(2) {
        if num_integer::gcd(k, n) != 1 {
            continue;
        }
        let perm: Option<Vec<usize>> = (0..t.n_characters())
            .map(|i| t.galois_row(i, k).and_then(|r| t.row_index(&r)))
            .collect();
        if let Some(perm) = perm {
            out.push((k, perm));
        }
    }
    out
}

/// Number of distinct Galois conjugates of each row.
pub fn galois_orbit_sizes(t: &CharacterTable) -> Vec<usize> {
    let actions = galois_actions(t);
    (0..t.n_characters())
        .map(|i| {
            let mut seen: Vec<usize> = actions.iter().map(|(_, p)| p[i]).collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        })
        .collect()
}

/// Command-line selector `DEG[:KER][@IDX]` for a character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub degree: BigUint,
    pub kernel: Option<BigUint>,
    /// 1-based index among the matches, in table order
    pub index: Option<usize>,
}

impl FromStr for Signature {
    type Err = TwistError;
    fn from_str(s: &str) -> Result<Self, TwistError> {
        let bad = || TwistError::BadSignature(s.to_string());
        let (body, index) = match s.split_once('@') {
            Some((b, i)) => (b, Some(i.trim().parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        if index == Some(0) {
            return Err(bad());
        }
        let (deg, ker) = match body.split_once(':') {
            Some((d, k)) => (d, Some(k.trim().parse::<BigUint>().map_err(|_| bad())?)),
            None => (body, None),
        };
        let degree = deg.trim().parse::<BigUint>().map_err(|_| bad())?;
        Ok(Signature { degree, kernel: ker, index })
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.degree)?;
        if let Some(k) = &self.kernel {
            write!(f, ":{k}")?;
        }
        if let Some(i) = self.index {
            write!(f, "@{i}")?;
        }
        Ok(())
    }
}

impl Signature {
    /// Rows matching degree and kernel size, in table order.
    pub fn candidates(&self, t: &CharacterTable) -> Vec<usize> {
        (0..t.n_characters())
            .filter(|&i| t.degree(i) == self.degree)
            .filter(|&i| self.kernel.as_ref().map_or(true, |k| kernel_classes(t, i).size == *k))
            .collect()
    }

    /// The selected rows: the `@IDX` match, or every match.
    pub fn resolve_all(&self, t: &CharacterTable) -> Result<Vec<usize>, TwistError> {
        let c = self.candidates(t);
        if c.is_empty() {
            return Err(TwistError::NoMatch(self.to_string()));
        }
        match self.index {
            None => Ok(c),
            Some(i) => c.get(i - 1).map(|&r| vec![r]).ok_or_else(|| TwistError::NoMatch(self.to_string())),
        }
    }

    /// Exactly one row, or an error when ambiguous.
    pub fn resolve(&self, t: &CharacterTable) -> Result<usize, TwistError> {
        let rows = self.resolve_all(t)?;
        if rows.len() > 1 {
            return Err(TwistError::Ambiguous { sig: self.to_string(), count: rows.len() });
        }
        Ok(rows[0])
    }
}

/// Full signature `DEG:KER@IDX` identifying row `row` uniquely.
pub fn signature_of(t: &CharacterTable, row: usize) -> Signature {
    let kernel = kernel_classes(t, row).size;
    let sig = Signature { degree: t.degree(row), kernel: Some(kernel), index: None };
    let c = sig.candidates(t);
    let index = if c.len() > 1 { c.iter().position(|&r| r == row).map(|p| p + 1) } else { None };
    Signature { index, ..sig }
}

/// A pair `(f, λ)` with `f` faithful and `λ ⊗ f` irreducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppPair {
    pub f: usize,
    pub lambda: usize,
    pub f_signature: String,
    pub lambda_signature: String,
    pub q: u64,
    pub k: u64,
    #[serde(serialize_with = "ser_big")]
    pub kernel_lambda_size: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub transversal_order: BigUint,
    pub min_n: MinN,
    pub galois_orbit_id: usize,
    /// pairs related by a table automorphism share an id
    pub orbit_id: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct AppOptions {
    /// also report degree-1 λ
    pub include_trivial: bool,
    pub n_max: u32,
}

impl Default for AppOptions {
    fn default() -> Self {
        AppOptions { include_trivial: false, n_max: DEFAULT_N_MAX }
    }
}

/// All APP pairs, grouped into orbits under simultaneous Galois action.
pub fn app_pairs(t: &CharacterTable, opts: AppOptions) -> Result<Vec<AppPair>, TwistError> {
    let r = t.n_characters();
    let kernels: Vec<Kernel> = (0..r).map(|i| kernel_classes(t, i)).collect();
    let mut found: Vec<(usize, usize)> = Vec::new();
    for f in 0..r {
        if !kernels[f].is_faithful() {
            continue;
        }
        for lambda in 0..r {
            if !opts.include_trivial && t.degree(lambda).is_one() {
                continue;
            }
            if is_twisted_1group(t, f, lambda)? {
                found.push((f, lambda));
            }
        }
    }
    let galois: Vec<Vec<usize>> = galois_actions(t).into_iter().map(|(_, p)| p).collect();
    let galois_orbit = pair_orbits(&found, &galois);
    let automorphisms: Vec<Vec<usize>> = match t.automorphisms(AUTOMORPHISM_CAP) {
        Some(auts) => auts.into_iter().map(|a| a.rows).collect(),
        None => galois.clone(),
    };
    let orbit = pair_orbits(&found, &automorphisms);
    found
        .into_iter()
        .map(|(f, lambda)| {
            let kernel_lambda_size = kernels[lambda].size.clone();
            Ok(AppPair {
                f,
                lambda,
                f_signature: signature_of(t, f).to_string(),
                lambda_signature: signature_of(t, lambda).to_string(),
                q: t.degree_u64(f).unwrap_or(u64::MAX),
                k: t.degree_u64(lambda).unwrap_or(u64::MAX),
                transversal_order: &t.order / &kernel_lambda_size,
                kernel_lambda_size,
                min_n: min_n(t, f, lambda, opts.n_max)?,
                galois_orbit_id: galois_orbit[&(f, lambda)],
                orbit_id: orbit[&(f, lambda)],
            })
        })
        .collect()
}

/// One representative pair per Galois orbit (the first in table order).
/// Orbit ids for `pairs` under a group of row permutations, numbered in
/// order of first appearance.
fn pair_orbits(pairs: &[(usize, usize)], group: &[Vec<usize>]) -> BTreeMap<(usize, usize), usize> {
    let mut orbit_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut next_id = 0;
    for &(f, l) in pairs {
        if orbit_of.contains_key(&(f, l)) {
            continue;
        }
        for perm in group {
            orbit_of.entry((perm[f], perm[l])).or_insert(next_id);
        }
        orbit_of.insert((f, l), next_id);
        next_id += 1;
    }
    orbit_of
}

/// One pair per equivalence class.
pub fn orbit_representatives(pairs: &[AppPair]) -> Vec<&AppPair> {
    let mut seen = std::collections::BTreeSet::new();
    pairs.iter().filter(|p| seen.insert(p.orbit_id)).collect()
}

/// Parameters `((n,K,d))_q` of the smallest code of an APP pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub group: String,
    #[serde(serialize_with = "ser_big")]
    pub group_order: BigUint,
    pub f_signature: String,
    pub lambda_signature: String,
    pub n: Option<u32>,
    pub k: u64,
    pub d: u32,
    pub q: u64,
    #[serde(serialize_with = "ser_big")]
    pub transversal_order: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub multiplicity: BigUint,
    /// largest `t ≤ t_max` for which `λ(G)` is a unitary `t`-group
    pub unitary_t: u32,
    pub twisted_2_moment_passes: bool,
    pub galois_orbit_id: usize,
    pub orbit_id: usize,
}

impl CodeReport {
    pub fn label(&self) -> String {
        match self.n {
            Some(n) => format!("(({n},{},{}))_{}", self.k, self.d, self.q),
            None => format!("((-,{},{}))_{}", self.k, self.d, self.q),
        }
    }
}

pub fn code_report(t: &CharacterTable, pair: &AppPair, t_max: u32) -> Result<CodeReport, TwistError> {
    let mut unitary_t = 0;
    for tt in 1..=t_max {
        if unitary_t_check(t, pair.lambda, tt)? {
            unitary_t = tt;
        } else {
            break;
        }
    }
    let (n, multiplicity) = match &pair.min_n {
        MinN::Found { n, multiplicity } => (Some(*n), multiplicity.clone()),
        _ => (None, BigUint::zero()),
    };
    Ok(CodeReport {
        group: t.name.clone(),
        group_order: t.order.clone(),
        f_signature: pair.f_signature.clone(),
        lambda_signature: pair.lambda_signature.clone(),
        n,
        k: pair.k,
        d: 2,
        q: pair.q,
        transversal_order: pair.transversal_order.clone(),
        multiplicity,
        unitary_t,
        twisted_2_moment_passes: twisted_t_moment(t, pair.f, pair.lambda, 2)?.1,
        galois_orbit_id: pair.galois_orbit_id,
        orbit_id: pair.orbit_id,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Sp2b3,
    SUb2,
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sp" | "sp2b3" => Ok(Family::Sp2b3),
            "su" | "sub2" => Ok(Family::SUb2),
            _ => Err(format!("unknown family `{s}`; use sp or su")),
        }
    }
}

/// Degrees of the Weil characters and the code parameters they predict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub family: Family,
    pub b: u32,
    #[serde(serialize_with = "ser_big_vec")]
    pub degrees: Vec<BigUint>,
    pub faithful: Vec<bool>,
    #[serde(serialize_with = "ser_big_opt")]
    pub k: Option<BigUint>,
    #[serde(serialize_with = "ser_big_opt")]
    pub q: Option<BigUint>,
    pub applicable: bool,
}

fn ser_big_vec<S: serde::Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_u64() {
            Some(u) => seq.serialize_element(&u)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

fn ser_big_opt<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(x) => ser_big(x, s),
    }
}

/// Weil characters of `Sp(2b,3)` of degrees `(3^b∓1)/2`; the even one is
/// faithful and plays `f`.
pub fn sp_weil_params(b: u32) -> FamilyParams {
    let p = BigUint::from(3u32).pow(b);
    let eta = (&p - 1u32) / 2u32;
    let xi = (&p + 1u32) / 2u32;
    let even = |d: &BigUint| (d % 2u32).is_zero();
    let faithful = vec![even(&eta), even(&xi)];
    let (q, k) = if even(&eta) { (eta.clone(), xi.clone()) } else { (xi.clone(), eta.clone()) };
    FamilyParams {
        family: Family::Sp2b3,
        b,
        degrees: vec![eta, xi],
        faithful,
        k: Some(k),
        q: Some(q),
        applicable: true,
    }
}

/// Weil characters `ζ_{b,0}, ζ_{b,1}, ζ_{b,2}` of `SU(b,2)`; codes come from
/// `f = ζ_{b,0}` only when `3 ∤ b`.
pub fn su_weil_params(b: u32) -> FamilyParams {
    let p = BigInt::from(2).pow(b);
    let sign = if b % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let z0 = ((&p + &sign * BigInt::from(2)) / BigInt::from(3)).to_biguint().expect("positive");
    let z1 = ((&p - &sign) / BigInt::from(3)).to_biguint().expect("positive");
    let applicable = b % 3 != 0;
    FamilyParams {
        family: Family::SUb2,
        b,
        degrees: vec![z0.clone(), z1.clone(), z1.clone()],
        faithful: vec![applicable, applicable, applicable],
        k: applicable.then(|| z1),
        q: applicable.then(|| z0),
        applicable,
    }
}
