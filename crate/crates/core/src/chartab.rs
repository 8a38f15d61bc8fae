//! Irreducible character tables: Dixon–Schneider computation over a prime
//! field with exact lifting to cyclotomic values, plus exact validation.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::permgroup::{ClassData, GroupError, PermGroup, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table has {rows} characters but {classes} classes")]
    NotSquare { rows: usize, classes: usize },
    #[error("{what} has length {found}, expected {expected}")]
    LengthMismatch { what: String, expected: usize, found: usize },
    #[error("class 1 must be the identity class of size 1 and element order 1")]
    IdentityClass,
    #[error("class sizes sum to {sum}, not the group order {order}")]
    ClassEquation { sum: BigUint, order: BigUint },
    #[error("class {class} has size {size} which does not divide the group order")]
    ClassSize { class: usize, size: BigUint },
    #[error("character {row} has degree {value}, which is not a positive integer")]
    Degree { row: usize, value: String },
    #[error("sum of squared degrees is {sum}, not the group order {order}")]
    DegreeSum { sum: BigUint, order: BigUint },
    #[error("value of character {row} on class {class} is not an algebraic integer")]
    NotAlgebraicInteger { row: usize, class: usize },
    #[error("row orthogonality fails for characters ({0},{1})")]
    RowOrthogonality(usize, usize),
    #[error("column orthogonality fails for classes ({0},{1})")]
    ColumnOrthogonality(usize, usize),
    #[error("inverse map is inconsistent at class {0}")]
    InverseMap(usize),
    #[error("{p}-power map is inconsistent at class {class}")]
    PowerMap { p: u64, class: usize },
    #[error("index {index} in {what} is out of range")]
    IndexOutOfRange { what: String, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartabError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("eigenspace splitting stalled: {0}")]
    InternalSplitFailure(String),
    #[error("computed table failed validation: {0}")]
    Validation(#[from] TableError),
}

/// Irreducible characters of a finite group, indexed by conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub name: String,
    pub order: BigUint,
    pub exponent: BigUint,
    pub class_sizes: Vec<BigUint>,
    pub element_orders: Vec<u64>,
    pub power_maps: BTreeMap<u64, Vec<usize>>,
    pub inverse_map: Vec<usize>,
    pub characters: Vec<Vec<Cyclotomic>>,
    pub source: Option<String>,
    pub aliases: Vec<String>,
    /// false when loaded with validation switched off
    pub validated: bool,
}

impl CharacterTable {
    pub fn n_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn n_characters(&self) -> usize {
        self.characters.len()
    }

    pub fn degree(&self, row: usize) -> BigUint {
        self.characters[row][0]
            .as_nonneg_integer()
            .expect("degrees are positive integers")
    }

    pub fn degree_u64(&self, row: usize) -> Option<u64> {
        self.degree(row).to_u64()
    }

    pub fn degrees(&self) -> Vec<BigUint> {
        (0..self.n_characters()).map(|i| self.degree(i)).collect()
    }

    /// lcm of the conductors of all character values.
    pub fn field_order(&self) -> u64 {
        self.characters
            .iter()
            .flatten()
            .fold(1u64, |a, v| a.lcm(&(v.order() as u64)))
    }

    pub fn row_index(&self, values: &[Cyclotomic]) -> Option<usize> {
        self.characters.iter().position(|r| r.as_slice() == values)
    }

    /// Row obtained by applying `ζ → ζ^k` to every value of `row`; `None`
    /// when `k` is not coprime to some conductor.
    pub fn galois_row(&self, row: usize, k: i64) -> Option<Vec<Cyclotomic>> {
        self.characters[row].iter().map(|v| v.galois(k).ok()).collect()
    }

    /// Checks every structural invariant exactly.
    pub fn validate(&self) -> Result<(), TableError> {
        self.validate_shape()?;
        self.validate_orthogonality()
    }

    /// Cheap checks: shapes, class equation, degrees, index ranges.
    pub fn validate_shape(&self) -> Result<(), TableError> {
        let k = self.n_classes();
        if self.characters.len() != k {
            return Err(TableError::NotSquare { rows: self.characters.len(), classes: k });
        }
        let len_check = |what: &str, found: usize| {
            if found != k {
                Err(TableError::LengthMismatch { what: what.to_string(), expected: k, found })
            } else {
                Ok(())
            }
        };
        len_check("orders", self.element_orders.len())?;
        len_check("inverse", self.inverse_map.len())?;
        for (p, map) in &self.power_maps {
            len_check(&format!("powermap {p}"), map.len())?;
        }
        for (i, row) in self.characters.iter().enumerate() {
            len_check(&format!("char {}", i + 1), row.len())?;
        }
        if k == 0 || !self.class_sizes[0].is_one() || self.element_orders[0] != 1 {
            return Err(TableError::IdentityClass);
        }
        let sum: BigUint = self.class_sizes.iter().sum();
        if sum != self.order {
            return Err(TableError::ClassEquation { sum, order: self.order.clone() });
        }
        for (c, s) in self.class_sizes.iter().enumerate() {
            if s.is_zero() || !(&self.order % s).is_zero() {
                return Err(TableError::ClassSize { class: c + 1, size: s.clone() });
            }
        }
        for (i, &j) in self.inverse_map.iter().enumerate() {
            if j >= k {
                return Err(TableError::IndexOutOfRange { what: "inverse".into(), index: j + 1 });
            }
            if self.inverse_map[j] != i || self.element_orders[j] != self.element_orders[i] {
                return Err(TableError::InverseMap(i + 1));
            }
        }
        for (&p, map) in &self.power_maps {
            for (c, &d) in map.iter().enumerate() {
                if d >= k {
                    return Err(TableError::IndexOutOfRange {
                        what: format!("powermap {p}"),
                        index: d + 1,
                    });
                }
                let o = self.element_orders[c];
                if self.element_orders[d] != o / o.gcd(&p) {
                    return Err(TableError::PowerMap { p, class: c + 1 });
                }
            }
        }
        let mut deg_sum = BigUint::zero();
        for (i, row) in self.characters.iter().enumerate() {
            match row[0].as_nonneg_integer() {
                Some(d) if !d.is_zero() => deg_sum += &d * &d,
                _ => return Err(TableError::Degree { row: i + 1, value: row[0].to_string() }),
            }
            for (c, v) in row.iter().enumerate() {
                if v.coeffs().iter().any(|(_, q)| !q.is_integer()) {
                    return Err(TableError::NotAlgebraicInteger { row: i + 1, class: c + 1 });
                }
            }
        }
        if deg_sum != self.order {
            return Err(TableError::DegreeSum { sum: deg_sum, order: self.order.clone() });
        }
        Ok(())
    }

    /// Exact row and column orthogonality and consistency of the inverse map.
    pub fn validate_orthogonality(&self) -> Result<(), TableError> {
        let k = self.n_classes();
        let conj: Vec<Vec<Cyclotomic>> = self
            .characters
            .iter()
            .map(|r| r.iter().map(|v| v.conj()).collect())
            .collect();
        for (i, row) in conj.iter().enumerate() {
            for c in 0..k {
                if self.characters[i][self.inverse_map[c]] != row[c] {
                    return Err(TableError::InverseMap(c + 1));
                }
            }
        }
        let sizes: Vec<Cyclotomic> = self
            .class_sizes
            .iter()
            .map(|s| Cyclotomic::from_bigint(BigInt::from(s.clone())))
            .collect();
        let order = Cyclotomic::from_bigint(BigInt::from(self.order.clone()));
        for i in 0..k {
            let weighted: Vec<Cyclotomic> =
                (0..k).map(|c| &sizes[c] * &self.characters[i][c]).collect();
            for j in i..k {
                let s: Cyclotomic = (0..k).map(|c| &weighted[c] * &conj[j][c]).sum();
                let expected = if i == j { order.clone() } else { Cyclotomic::zero() };
                if s != expected {
                    return Err(TableError::RowOrthogonality(i + 1, j + 1));
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let s: Cyclotomic = (0..k).map(|i| &self.characters[i][c] * &conj[i][d]).sum();
                let expected = if c == d {
                    let q = &self.order / &self.class_sizes[c];
                    Cyclotomic::from_bigint(BigInt::from(q))
                } else {
                    Cyclotomic::zero()
                };
                if s != expected {
                    return Err(TableError::ColumnOrthogonality(c + 1, d + 1));
                }
            }
        }
        Ok(())
    }

    /// Sorts rows: trivial character first, then ascending degree, then
    /// lexicographically by values.
    pub fn sort_characters(&mut self) {
        let one = Cyclotomic::one();
        self.characters.sort_by(|a, b| {
            let ta = !a.iter().all(|v| *v == one);
            let tb = !b.iter().all(|v| *v == one);
            ta.cmp(&tb).then_with(|| a.cmp(b))
        });
    }

    /// All permutations of the classes that preserve class sizes, element
    /// orders and power maps and permute the rows, or `None` once more than
    /// `cap` have been found.  Outer automorphisms and Galois conjugation of
    /// the group both act this way.
    pub fn automorphisms(&self, cap: usize) -> Option<Vec<TableAutomorphism>> {
        let mut search = AutSearch {
            t: self,
            image: vec![usize::MAX; self.n_classes()],
            used: vec![false; self.n_classes()],
            found: Vec::new(),
            cap,
        };
        let r = self.n_characters();
        let all = vec![(0..r).collect::<Vec<usize>>(); r];
        search.extend(0, all).then_some(search.found)
    }
}

/// A table automorphism: class `c` maps to `classes[c]` and row `i` composed
/// with it is row `rows[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableAutomorphism {
    pub classes: Vec<usize>,
    pub rows: Vec<usize>,
}

struct AutSearch<'a> {
    t: &'a CharacterTable,
    image: Vec<usize>,
    used: Vec<bool>,
    found: Vec<TableAutomorphism>,
    cap: usize,
}

impl AutSearch<'_> {
    /// `candidates[i]` lists the rows `j` with `χ_i(π(c)) = χ_j(c)` on every
    /// class assigned so far.  Returns false when the cap is exceeded.
    fn extend(&mut self, c: usize, candidates: Vec<Vec<usize>>) -> bool {
        let t = self.t;
        if c == t.n_classes() {
            if self.found.len() >= self.cap {
                return false;
            }
            let rows = candidates.iter().map(|js| js[0]).collect();
            self.found.push(TableAutomorphism { classes: self.image.clone(), rows });
            return true;
        }
        for d in 0..t.n_classes() {
            if self.used[d]
                || t.class_sizes[d] != t.class_sizes[c]
                || t.element_orders[d] != t.element_orders[c]
                || !self.power_maps_agree(c, d)
            {
                continue;
            }
            let next: Vec<Vec<usize>> = candidates
                .iter()
                .enumerate()
                .map(|(i, js)| {
                    js.iter()
                        .copied()
                        .filter(|&j| t.characters[i][d] == t.characters[j][c])
                        .collect()
                })
                .collect();
            if next.iter().any(|js| js.is_empty()) {
                continue;
            }
            self.image[c] = d;
            self.used[d] = true;
            let ok = self.extend(c + 1, next);
            self.image[c] = usize::MAX;
            self.used[d] = false;
            if !ok {
                return false;
            }
        }
        true
    }

    /// Checks `π(c^p) = π(c)^p` wherever both sides are already determined,
    /// assuming `π(c) = d`.
    fn power_maps_agree(&self, c: usize, d: usize) -> bool {
        let assigned = |x: usize| if x == c { Some(d) } else { Some(self.image[x]).filter(|&y| y != usize::MAX) };
        self.t.power_maps.values().all(|map| {
            let forward = match assigned(map[c]) {
                Some(y) => y == map[d],
                None => true,
            };
            forward
                && (0..c).all(|x| map[x] != c || map[self.image[x]] == d)
        })
    }
}

/// Structure constants `a_{ijk} = #{x ∈ C_i : x⁻¹·z_k ∈ C_j}` for fixed `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMatrix {
    pub index: usize,
    /// `entries[j][k] = a_{ijk}`
    pub entries: Vec<Vec<u64>>,
}

pub fn class_matrices(cd: &ClassData) -> Vec<ClassMatrix> {
    let k = cd.n_classes();
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    let inverses: Vec<_> = cd.elements().iter().map(|x| x.inverse()).collect();
    for (kk, z) in cd.class_reps.iter().enumerate() {
        for (xi, xinv) in inverses.iter().enumerate() {
            let i = cd.class_of[xi] as usize;
            let j = cd.class_of_element(&xinv.then(z)).expect("group is closed");
            a[i][j][kk] += 1;
        }
    }
    a.into_iter()
        .enumerate()
        .map(|(index, entries)| ClassMatrix { index, entries })
        .collect()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2·√order`.
pub fn dixon_prime(order: u64, exponent: u64) -> u64 {
    let bound = 4 * order as u128;
    let mut p = exponent + 1;
    loop {
        if (p as u128) * (p as u128) > bound && is_prime(p) {
            return p;
        }
        p += exponent;
    }
}

fn primitive_root(p: u64) -> u64 {
    let factors: Vec<u64> =
        crate::cyclotomic::factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime fields have primitive roots")
}

/// Row-reduces `rows` in place; returns the pivot column of each nonzero row.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for cc in 0..ncols {
                    let sub = mul_mod(f, rows[r][cc], p);
                    rows[i][cc] = (rows[i][cc] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A·x = 0}` for a square matrix `a`.
fn nullspace(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let pivots = rref(&mut a, p);
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[r][free]) % p;
        }
        out.push(v);
    }
    out
}

/// Characteristic polynomial (low to high coefficients) via Hessenberg form.
fn charpoly(mut h: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = h.len();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else { continue };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let t_inv = inv_mod(h[j + 1][j], p);
        for i2 in j + 2..n {
            let u = mul_mod(h[i2][j], t_inv, p);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let sub = mul_mod(u, h[j + 1][c], p);
                h[i2][c] = (h[i2][c] + p - sub) % p;
            }
            for row in h.iter_mut() {
                let add = mul_mod(u, row[i2], p);
                row[j + 1] = (row[j + 1] + add) % p;
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        // (x - h[m-1][m-1]) * p_{m-1}
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            let sub = mul_mod(c, h[m - 1][m - 1], p);
            next[d] = (next[d] + p - sub) % p;
        }
        let mut prod = 1u64;
        for i in 1..m {
            prod = mul_mod(prod, h[m - i][m - i - 1], p);
            let coef = mul_mod(h[m - 1 - i][m - 1], prod, p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[m - 1 - i].iter().enumerate() {
                let sub = mul_mod(coef, c, p);
                next[d] = (next[d] + p - sub) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p) == 0)
        .collect()
}

/// Splits the subspace spanned by RREF `basis` into eigenspaces of `m`.
fn split_space(
    basis: Vec<Vec<u64>>,
    pivots: &[usize],
    m: &[Vec<u64>],
    p: u64,
) -> Result<Vec<(Vec<Vec<u64>>, Vec<usize>)>, ChartabError> {
    let d = basis.len();
    let k = m.len();
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|j| {
                    m[j].iter()
                        .zip(b)
                        .fold(0u64, |acc, (&a, &x)| (acc + mul_mod(a % p, x, p)) % p)
                })
                .collect()
        })
        .collect();
    let a: Vec<Vec<u64>> =
        (0..d).map(|s| (0..d).map(|r| images[r][pivots[s]]).collect()).collect();
    let eig = roots(&charpoly(a.clone(), p), p);
    if eig.len() == 1 {
        return Ok(vec![(basis, pivots.to_vec())]);
    }
    let mut pieces = Vec::new();
    let mut total = 0;
    for lambda in eig {
        let mut shifted = a.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = (row[i] + p - lambda) % p;
        }
        let null = nullspace(shifted, p);
        total += null.len();
        let mut vecs: Vec<Vec<u64>> = null
            .iter()
            .map(|c| {
                (0..k)
                    .map(|col| {
                        c.iter()
                            .zip(&basis)
                            .fold(0u64, |acc, (&cr, b)| (acc + mul_mod(cr, b[col], p)) % p)
                    })
                    .collect()
            })
            .collect();
        let piv = rref(&mut vecs, p);
        pieces.push((vecs, piv));
    }
    if total != d {
        return Err(ChartabError::InternalSplitFailure(format!(
            "eigenspaces of dimension {total} in a space of dimension {d}"
        )));
    }
    Ok(pieces)
}

/// Character table of a permutation group.
pub fn compute_table(g: &PermGroup) -> Result<CharacterTable, ChartabError> {
    compute_table_with_cap(g, DEFAULT_ENUMERATION_CAP)
}

pub fn compute_table_with_cap(g: &PermGroup, cap: u64) -> Result<CharacterTable, ChartabError> {
    let cd = g.conjugacy_classes_with_cap(cap)?;
    table_from_classes(&cd, g.name())
}

/// Character table from an already partitioned group.
pub fn table_from_classes(cd: &ClassData, name: &str) -> Result<CharacterTable, ChartabError> {
    let k = cd.n_classes();
    let order = cd.group_order();
    let exponent = cd.exponent();
    let p = dixon_prime(order, exponent);
    let mats = class_matrices(cd);

    let identity: Vec<Vec<u64>> =
        (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut open = vec![(identity, (0..k).collect::<Vec<_>>())];
    let mut done: Vec<Vec<u64>> = Vec::new();
    if k == 1 {
        done.push(vec![1]);
        open.clear();
    }
    for cm in mats.iter().skip(1) {
        let mut next = Vec::new();
        for (basis, piv) in open {
            for (b, pv) in split_space(basis, &piv, &cm.entries, p)? {
                if b.len() == 1 {
                    done.push(b.into_iter().next().unwrap());
                } else {
                    next.push((b, pv));
                }
            }
        }
        open = next;
        if open.is_empty() {
            break;
        }
    }
    if !open.is_empty() || done.len() != k {
        return Err(ChartabError::InternalSplitFailure(format!(
            "{} of {k} characters separated",
            done.len()
        )));
    }

    let z = pow_mod(primitive_root(p), (p - 1) / exponent, p);
    let power_classes: Vec<Vec<usize>> = (0..k).map(|c| cd.power_classes(c)).collect();
    let isqrt = (order as f64).sqrt() as u64 + 1;
    let mut characters = Vec::with_capacity(k);
    for v in done {
        if v[0] == 0 {
            return Err(ChartabError::InternalSplitFailure("eigenvector vanishes at identity".into()));
        }
        let n0 = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, n0, p)).collect();
        let s = (0..k).fold(0u64, |acc, c| {
            let t = mul_mod(omega[c], omega[cd.inverse_map[c]], p);
            (acc + mul_mod(t, inv_mod(cd.class_sizes[c] % p, p), p)) % p
        });
        if s == 0 {
            return Err(ChartabError::InternalSplitFailure("zero norm in degree recovery".into()));
        }
        let target = mul_mod(order % p, inv_mod(s, p), p);
        let deg = (1..=isqrt)
            .find(|&d| d * d <= order && mul_mod(d, d, p) == target)
            .ok_or_else(|| ChartabError::InternalSplitFailure("no admissible degree".into()))?;
        let chi_mod: Vec<u64> = (0..k)
            .map(|c| mul_mod(mul_mod(omega[c], deg, p), inv_mod(cd.class_sizes[c] % p, p), p))
            .collect();
        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let o = cd.element_orders[c];
            let w = pow_mod(z, exponent / o, p);
            let w_inv = inv_mod(w, p);
            let o_inv = inv_mod(o % p, p);
            let mut terms = Vec::new();
            for j in 0..o {
                let wj = pow_mod(w_inv, j, p);
                let mut acc = 0u64;
                let mut pw = 1u64;
                for &pc in &power_classes[c] {
                    acc = (acc + mul_mod(chi_mod[pc], pw, p)) % p;
                    pw = mul_mod(pw, wj, p);
                }
                let m = mul_mod(acc, o_inv, p);
                if m > deg {
                    return Err(ChartabError::InternalSplitFailure(format!(
                        "eigenvalue multiplicity {m} exceeds degree {deg}"
                    )));
                }
                if m > 0 {
                    terms.push((j as i64, Rational::from_integer(BigInt::from(m))));
                }
            }
            row.push(Cyclotomic::from_terms(o as u32, terms));
        }
        characters.push(row);
    }

    let mut table = CharacterTable {
        name: name.to_string(),
        order: BigUint::from(order),
        exponent: BigUint::from(exponent),
        class_sizes: cd.class_sizes.iter().map(|&s| BigUint::from(s)).collect(),
        element_orders: cd.element_orders.clone(),
        power_maps: cd.power_maps.clone(),
        inverse_map: cd.inverse_map.clone(),
        characters,
        source: None,
        aliases: Vec::new(),
        validated: true,
    };
    table.sort_characters();
    table.validate()?;
    Ok(table)
}
