//! Permutation groups: base and strong generating sets, element enumeration,
//! conjugacy classes and power maps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Mul;
use std::sync::OnceLock;

use num_integer::Integer;
use thiserror::Error;

/// Default ceiling on the number of elements we are willing to enumerate.
pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order {order} exceeds the enumeration cap {cap}; ingest a character table instead")]
    CapExceeded { order: u128, cap: u64 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("a group needs at least one generator")]
    NoGenerators,
}

/// A bijection of `0..degree`, acting on the right: `i^(ab) = (i^a)^b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(GroupError::InvalidPermutation(format!(
                    "images {images:?} are not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images: images.into_boxed_slice() })
    }

    /// Builds a permutation from disjoint cycles on 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {} outside degree {degree}",
                        a.max(b) + 1
                    )));
                }
                if touched[a as usize] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {} appears in two cycles",
                        a + 1
                    )));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Ok(Permutation { images: images.into_boxed_slice() })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv.into_boxed_slice() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.then(&base);
            }
        }
        acc
    }

    /// Conjugate `g⁻¹·self·g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // i^(g⁻¹ x g): map i -> i^{g⁻¹} -> x -> g
        let mut out = vec![0u32; self.images.len()];
        for (i, &gi) in g.images.iter().enumerate() {
            out[gi as usize] = g.images[self.images[i] as usize];
        }
        Permutation { images: out.into_boxed_slice() }
    }

    /// Sorted cycle lengths, including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.image(i);
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    /// Disjoint cycles of length > 1 on 0-based points.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i as u32);
                i = self.image(i);
            }
            out.push(cyc);
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation on 1-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    // transversal[β] maps the base point to β
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: usize, degree: usize, gens: Vec<Permutation>) -> Self {
        let mut level = Level { point, gens, orbit: Vec::new(), transversal: vec![None; degree] };
        level.rebuild();
        level
    }

    fn rebuild(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.point];
        let mut k = 0;
        while k < self.orbit.len() {
            let beta = self.orbit[k];
            for s in &self.gens {
                let gamma = s.image(beta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().then(s);
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                }
            }
            k += 1;
        }
    }
}

/// Stabilizer chain built by the deterministic Schreier–Sims algorithm.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let gens: Vec<Permutation> =
            generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut chain = StabChain { degree, levels: Vec::new() };
        if gens.is_empty() {
            return chain;
        }
        // initial base: every generator moves some base point
        let mut base: Vec<usize> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.image(b) == b) {
                let moved = (0..degree).find(|&i| g.image(i) != i).unwrap();
                base.push(moved);
            }
        }
        for (i, &b) in base.iter().enumerate() {
            let level_gens: Vec<Permutation> = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.image(c) == c))
                .cloned()
                .collect();
            chain.levels.push(Level::new(b, degree, level_gens));
        }
        chain.complete();
        chain
    }

    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let beta = g.image(level.point);
            match &level.transversal[beta] {
                None => return (g, l),
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut restart_at = None;
            'scan: for &beta in &self.levels[lvl].orbit.clone() {
                let u_beta = self.levels[lvl].transversal[beta].clone().unwrap();
                for s in self.levels[lvl].gens.clone() {
                    let gamma = s.image(beta);
                    let u_gamma = self.levels[lvl].transversal[gamma].as_ref().unwrap();
                    let schreier = u_beta.then(&s).then(&u_gamma.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(schreier, lvl + 1);
                    if h.is_identity() {
                        continue;
                    }
                    if j == self.levels.len() {
                        let moved = (0..self.degree).find(|&p| h.image(p) != p).unwrap();
                        self.levels.push(Level::new(moved, self.degree, Vec::new()));
                    }
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(h.clone());
                        self.levels[l].rebuild();
                    }
                    restart_at = Some(j);
                    break 'scan;
                }
            }
            match restart_at {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip(g.clone(), 0).0.is_identity()
    }

    /// Every element as a product of transversal elements.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for h in &out {
                for &beta in &level.orbit {
                    next.push(h.then(level.transversal[beta].as_ref().unwrap()));
                }
            }
            out = next;
        }
        out
    }
}

/// A finite group given by permutation generators.
pub struct PermGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup::new(self.name.clone(), self.degree, self.generators.clone()).unwrap()
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
    ) -> Result<Self, GroupError> {
        if generators.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        Ok(PermGroup { name: name.into(), degree, generators, chain: OnceLock::new() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn stab_chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::new(self.degree, &self.generators))
    }

    /// Exact order from the stabilizer chain.
    pub fn order(&self) -> u128 {
        self.stab_chain().order()
    }

    /// All elements, identity first, without duplicates.
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<Permutation>, GroupError> {
        let order = self.order();
        if order > cap as u128 {
            return Err(GroupError::CapExceeded { order, cap });
        }
        let mut elems = self.stab_chain().elements();
        let id = elems.iter().position(|g| g.is_identity()).unwrap();
        elems.swap(0, id);
        Ok(elems)
    }

    pub fn conjugacy_classes(&self) -> Result<ClassData, GroupError> {
        self.conjugacy_classes_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    pub fn conjugacy_classes_with_cap(&self, cap: u64) -> Result<ClassData, GroupError> {
        let elements = self.enumerate_elements(cap)?;
        Ok(ClassData::from_elements(elements, &self.generators))
    }
}

/// Conjugacy classes of an enumerated group in canonical order.
#[derive(Clone)]
pub struct ClassData {
    pub class_reps: Vec<Permutation>,
    pub class_sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    /// class index for every element of `elements`
    pub class_of: Vec<u32>,
    /// prime `p` dividing the exponent → class of `rep^p`
    pub power_maps: BTreeMap<u64, Vec<usize>>,
    pub inverse_map: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl ClassData {
    /// Partitions `elements` (a whole group) into classes by conjugating with
    /// `generators`.
    pub fn from_elements(elements: Vec<Permutation>, generators: &[Permutation]) -> Self {
        let index: HashMap<Permutation, u32> =
            elements.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
        let n = elements.len();
        let mut raw_class = vec![u32::MAX; n];
        let mut members: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if raw_class[start] != u32::MAX {
                continue;
            }
            let c = members.len() as u32;
            raw_class[start] = c;
            let mut orbit = vec![start as u32];
            let mut k = 0;
            while k < orbit.len() {
                let x = &elements[orbit[k] as usize];
                for g in generators {
                    let y = x.conjugate_by(g);
                    let j = index[&y];
                    if raw_class[j as usize] == u32::MAX {
                        raw_class[j as usize] = c;
                        orbit.push(j);
                    }
                }
                k += 1;
            }
            members.push(orbit);
        }

        let k = members.len();
        let raw_orders: Vec<u64> =
            members.iter().map(|m| elements[m[0] as usize].order()).collect();
        let exponent = raw_orders.iter().fold(1u64, |a, &o| a.lcm(&o));
        let primes: Vec<u64> =
            crate::cyclotomic::factorize(exponent).into_iter().map(|(p, _)| p).collect();
        let raw_sizes: Vec<u64> = members.iter().map(|m| m.len() as u64).collect();
        let profile = |c: usize| -> Vec<(u64, u64)> {
            let rep = &elements[members[c][0] as usize];
            primes
                .iter()
                .map(|&p| {
                    let d = raw_class[index[&rep.pow(p)] as usize] as usize;
                    (raw_orders[d], raw_sizes[d])
                })
                .collect()
        };
        let min_member = |c: usize| -> u32 {
            *members[c]
                .iter()
                .min_by(|&&a, &&b| elements[a as usize].cmp(&elements[b as usize]))
                .unwrap()
        };
        let mut keys: Vec<(u64, u64, Vec<(u64, u64)>, usize, u32)> = (0..k)
            .map(|c| {
                let m = min_member(c);
                (raw_orders[c], raw_sizes[c], profile(c), c, m)
            })
            .collect();
        keys.sort_by(|a, b| {
            (a.0, a.1, &a.2)
                .cmp(&(b.0, b.1, &b.2))
                .then_with(|| elements[a.4 as usize].cmp(&elements[b.4 as usize]))
        });
        let mut renumber = vec![0usize; k];
        for (new, key) in keys.iter().enumerate() {
            renumber[key.3] = new;
        }

        let class_of: Vec<u32> = raw_class.iter().map(|&c| renumber[c as usize] as u32).collect();
        let class_reps: Vec<Permutation> =
            keys.iter().map(|key| elements[key.4 as usize].clone()).collect();
        let class_sizes: Vec<u64> = keys.iter().map(|key| key.1).collect();
        let element_orders: Vec<u64> = keys.iter().map(|key| key.0).collect();
        let lookup = |g: &Permutation| class_of[index[g] as usize] as usize;
        let power_maps = primes
            .iter()
            .map(|&p| (p, class_reps.iter().map(|r| lookup(&r.pow(p))).collect()))
            .collect();
        let inverse_map = class_reps.iter().map(|r| lookup(&r.inverse())).collect();
        ClassData {
            class_reps,
            class_sizes,
            element_orders,
            class_of,
            power_maps,
            inverse_map,
            elements,
            index,
        }
    }

    pub fn n_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn group_order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element_index(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn class_of_element(&self, g: &Permutation) -> Option<usize> {
        self.element_index(g).map(|i| self.class_of[i] as usize)
    }

    /// lcm of the element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders.iter().fold(1u64, |a, &o| a.lcm(&o))
    }

    /// Class of `rep_c^k` for every `k` in `0..order(c)`.
    pub fn power_classes(&self, c: usize) -> Vec<usize> {
        let rep = &self.class_reps[c];
        let o = self.element_orders[c] as usize;
        let mut out = Vec::with_capacity(o);
        let mut x = Permutation::identity(rep.degree());
        for _ in 0..o {
            out.push(self.class_of_element(&x).unwrap());
            x = x.then(rep);
        }
        out
    }
}

/// lcm of the element orders recorded in `cd`.
pub fn exponent(cd: &ClassData) -> u64 {
    cd.exponent()
}
