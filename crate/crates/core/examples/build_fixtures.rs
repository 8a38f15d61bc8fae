//! Regenerates the group fixtures under `fixtures/`.
//!
//! Usage: `cargo run --release -p twistcode --example build_fixtures -- <out-dir>`

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistcode::ctbl_io::{write_matrep, write_permgroup};
use twistcode::verifier::{expand_group, orbit_permutations, MatrixRep};
use twistcode::{Cyclotomic, PermGroup, Permutation, Rational};

type M = Vec<Vec<Cyclotomic>>;

fn e(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k)
}

fn int(v: i64) -> Cyclotomic {
    Cyclotomic::from_integer(v)
}

fn half() -> Cyclotomic {
    Cyclotomic::from_rational(Rational::new(1.into(), 2.into()))
}

fn zeros(q: usize) -> M {
    vec![vec![Cyclotomic::zero(); q]; q]
}

fn diag(d: Vec<Cyclotomic>) -> M {
    let mut m = zeros(d.len());
    for (i, x) in d.into_iter().enumerate() {
        m[i][i] = x;
    }
    m
}

/// Permutation matrix sending basis row `i` to row `p[i]`.
fn perm_matrix(p: &[usize]) -> M {
    let mut m = zeros(p.len());
    for (i, &j) in p.iter().enumerate() {
        m[i][j] = int(1);
    }
    m
}

fn mul(a: &M, b: &M) -> M {
    let q = a.len();
    (0..q)
        .map(|i| (0..q).map(|j| (0..q).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

fn scale(a: &M, s: &Cyclotomic) -> M {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

fn adjoint(a: &M) -> M {
    let q = a.len();
    (0..q).map(|i| (0..q).map(|j| a[j][i].conj()).collect()).collect()
}

fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> M {
    rows
}

fn two_o() -> MatrixRep {
    let a = diag(vec![e(8, 1), e(8, 7)]);
    let h = half();
    let i = e(4, 1);
    let one_i = &int(1) + &i;
    let b = from_rows(vec![
        vec![&h * &one_i, &h * &one_i],
        vec![&h * &(&i - &int(1)), &h * &(&int(1) - &i)],
    ]);
    MatrixRep::new("2O", 2, Some(48), vec![a, b]).unwrap()
}

fn two_i() -> MatrixRep {
    let i = e(4, 1);
    let mu1 = &e(5, 1) + &e(5, 4);
    let tau = &int(1) + &mu1;
    let h = half();
    let a = diag(vec![i.clone(), -&i]);
    let b = from_rows(vec![
        vec![&h * &(&tau + &(&mu1 * &i)), h.clone()],
        vec![-&h, &h * &(&tau - &(&mu1 * &i))],
    ]);
    MatrixRep::new("2I", 2, Some(120), vec![a, b]).unwrap()
}

fn hessian_generators() -> (M, M, M, M) {
    let w = e(3, 1);
    let w2 = e(3, 2);
    let s = diag(vec![int(1), w.clone(), w2.clone()]);
    let t = perm_matrix(&[1, 2, 0]);
    let c = (&w - &w2).inverse().unwrap();
    let v = scale(
        &from_rows(vec![
            vec![int(1), int(1), int(1)],
            vec![int(1), w.clone(), w2.clone()],
            vec![int(1), w2.clone(), w.clone()],
        ]),
        &c,
    );
    let eps = e(9, 2);
    let u = diag(vec![eps.clone(), eps.clone(), &eps * &w]);
    (s, t, v, u)
}

fn sigma_72() -> MatrixRep {
    let (s, t, v, u) = hessian_generators();
    let uvu = mul(&mul(&u, &v), &adjoint(&u));
    MatrixRep::new("Sigma72phi", 3, Some(216), vec![s, t, v, uvu]).unwrap()
}

fn sigma_216() -> MatrixRep {
    let (s, t, v, u) = hessian_generators();
    MatrixRep::new("Sigma216phi", 3, Some(648), vec![s, t, v, u]).unwrap()
}

fn sigma_360() -> MatrixRep {
    let mu1 = &e(5, 1) + &e(5, 4);
    let mu2 = &e(5, 2) + &e(5, 3);
    let w = e(3, 1);
    let w2 = e(3, 2);
    let h = half();
    let a = diag(vec![int(1), int(-1), int(-1)]);
    let b = perm_matrix(&[1, 2, 0]);
    let c = scale(
        &from_rows(vec![
            vec![int(-1), mu2.clone(), mu1.clone()],
            vec![mu2.clone(), mu1.clone(), int(-1)],
            vec![mu1.clone(), int(-1), mu2.clone()],
        ]),
        &h,
    );
    let d = from_rows(vec![
        vec![int(-1), int(0), int(0)],
        vec![int(0), int(0), -&w],
        vec![int(0), -&w2, int(0)],
    ]);
    MatrixRep::new("Sigma360phi", 3, Some(1080), vec![a, b, c, d]).unwrap()
}

fn delta_6n2(n: u32) -> MatrixRep {
    let cyc = perm_matrix(&[1, 2, 0]);
    let f = diag(vec![e(n, 1), e(n, n as i64 - 1), int(1)]);
    let b = scale(&perm_matrix(&[0, 2, 1]), &int(-1));
    let order = 6 * (n as u64) * (n as u64);
    MatrixRep::new(format!("Delta{order}"), 3, Some(order), vec![cyc, f, b]).unwrap()
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(images.into_iter().map(|x| x as u32).collect()).unwrap()
}

fn alternating_generators(n: usize) -> Vec<Permutation> {
    let three = Permutation::from_cycles(n, &[vec![0, 1, 2]]).unwrap();
    let long: Vec<u32> = if n % 2 == 1 { (0..n as u32).collect() } else { (1..n as u32).collect() };
    vec![three, Permutation::from_cycles(n, &[long]).unwrap()]
}

/// AGL(3,2) on the 8 vectors of F_2^3.
fn agl32() -> PermGroup {
    let translate = perm((0..8).map(|x| x ^ 1).collect());
    let transvection = perm((0..8).map(|x| x ^ ((x >> 1) & 1)).collect());
    let rotate = perm((0..8).map(|x| ((x << 1) | (x >> 2)) & 7).collect());
    PermGroup::new("AGL(3,2)", 8, vec![translate, transvection, rotate]).unwrap()
}

/// AGL(4,2) on the 16 vectors of F_2^4.
fn agl42() -> PermGroup {
    let translate = perm((0..16).map(|x| x ^ 1).collect());
    let transvection = perm((0..16).map(|x| x ^ ((x >> 1) & 1)).collect());
    let rotate = perm((0..16).map(|x| ((x << 1) | (x >> 3)) & 15).collect());
    PermGroup::new("AGL(4,2)", 16, vec![translate, transvection, rotate]).unwrap()
}

/// Sp(4,3) acting on the 80 nonzero vectors of F_3^4 by symplectic transvections.
fn sp43() -> PermGroup {
    let vecs: Vec<[u8; 4]> = (1..81u32)
        .map(|k| [(k % 3) as u8, (k / 3 % 3) as u8, (k / 9 % 3) as u8, (k / 27 % 3) as u8])
        .collect();
    let index = |v: [u8; 4]| -> usize {
        (v[0] as usize + 3 * v[1] as usize + 9 * v[2] as usize + 27 * v[3] as usize) - 1
    };
    let form = |x: &[u8; 4], y: &[u8; 4]| -> u8 {
        let s = x[0] as i32 * y[2] as i32 + x[1] as i32 * y[3] as i32
            - x[2] as i32 * y[0] as i32
            - x[3] as i32 * y[1] as i32;
        s.rem_euclid(3) as u8
    };
    let transvection = |v: [u8; 4]| -> Permutation {
        perm(
            vecs.iter()
                .map(|x| {
                    let c = form(x, &v);
                    index(std::array::from_fn(|i| (x[i] + c * v[i]) % 3))
                })
                .collect(),
        )
    };
    let gens = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0], [1, 0, 0, 1]]
        .into_iter()
        .map(transvection)
        .collect();
    PermGroup::new("Sp(4,3)", 80, gens).unwrap()
}

/// Action of `gens` on the orbit of `start` under `act`.
fn orbit_action<T: Clone + Eq + std::hash::Hash>(
    start: T,
    gens: &[Permutation],
    act: impl Fn(&T, &Permutation) -> T,
) -> (Vec<T>, Vec<Permutation>) {
    let mut points = vec![start.clone()];
    let mut index: HashMap<T, usize> = HashMap::from([(start, 0)]);
    let mut images = vec![Vec::new(); gens.len()];
    let mut k = 0;
    while k < points.len() {
        for (s, g) in gens.iter().enumerate() {
            let y = act(&points[k], g);
            let j = *index.entry(y.clone()).or_insert_with(|| {
                points.push(y);
                points.len() - 1
            });
            images[s].push(j);
        }
        k += 1;
    }
    (points, images.into_iter().map(perm).collect())
}

/// A_7 on its 120 Sylow 7-subgroups by conjugation.
fn a7_on_sylow7() -> Vec<Permutation> {
    let gens = alternating_generators(7);
    let key = |c: &Permutation| -> Vec<u32> {
        (1..7u32).map(|k| c.pow(k as u64).images().to_vec()).min().unwrap()
    };
    let seven = Permutation::from_cycles(7, &[(0..7).collect()]).unwrap();
    orbit_action(key(&seven), &gens, |k, g| {
        let c = Permutation::from_images(k.clone()).unwrap();
        key(&c.conjugate_by(g))
    })
    .1
}

/// A_7 on one of its two orbits of 15 Fano planes.
fn a7_on_fano() -> Vec<Permutation> {
    let gens = alternating_generators(7);
    let lines: BTreeSet<BTreeSet<u32>> = [[0, 1, 3], [1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 0], [5, 6, 1], [6, 0, 2]]
        .iter()
        .map(|l| l.iter().copied().collect())
        .collect();
    orbit_action(lines, &gens, |plane, g| {
        plane.iter().map(|l| l.iter().map(|&x| g.image(x as usize) as u32).collect()).collect()
    })
    .1
}

fn mod_inv(a: u64, p: u64) -> u64 {
    (1..p).find(|x| a * x % p == 1).unwrap()
}

/// Incremental row echelon form over F_p.
struct Echelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn new(p: u64) -> Self {
        Echelon { p, rows: Vec::new() }
    }

    fn reduce(&self, v: &mut [u64]) {
        for (piv, r) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x + (self.p - c) * y) % self.p;
                }
            }
        }
    }

    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else { return false };
        let inv = mod_inv(v[piv], self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        for (_, r) in self.rows.iter_mut() {
            let c = r[piv];
            if c != 0 {
                for (x, y) in r.iter_mut().zip(&v) {
                    *x = (*x + (self.p - c) * y) % self.p;
                }
            }
        }
        self.rows.push((piv, v));
        true
    }

    /// Basis of the solution space of the stored homogeneous equations.
    fn nullspace(&self, n: usize) -> Vec<Vec<u64>> {
        let pivots: HashMap<usize, &Vec<u64>> = self.rows.iter().map(|(p, r)| (*p, r)).collect();
        (0..n)
            .filter(|c| !pivots.contains_key(c))
            .map(|free| {
                let mut v = vec![0; n];
                v[free] = 1;
                for (&piv, r) in &pivots {
                    v[piv] = (self.p - r[free]) % self.p;
                }
                v
            })
            .collect()
    }
}

/// Breadth-first spanning tree of a permutation group's Cayley graph.
struct Cayley {
    gens: Vec<Permutation>,
    elements: Vec<Permutation>,
    parent: Vec<Option<(usize, usize)>>,
    order: Vec<usize>,
    /// Non-tree edges `(x, s, x·s)`.
    edges: Vec<(usize, usize, usize)>,
}

impl Cayley {
    fn new(gens: &[Permutation]) -> Self {
        let group = PermGroup::new("Q", gens[0].degree(), gens.to_vec()).unwrap();
        let elements = group.enumerate_elements(10_000_000).unwrap();
        let index: HashMap<&[u32], usize> =
            elements.iter().enumerate().map(|(i, g)| (g.images(), i)).collect();
        let mut parent = vec![None; elements.len()];
        let mut seen = vec![false; elements.len()];
        let mut order = vec![0usize];
        seen[0] = true;
        let mut edges = Vec::new();
        let mut k = 0;
        while k < order.len() {
            let x = order[k];
            for (s, g) in gens.iter().enumerate() {
                let y = index[elements[x].then(g).images()];
                if seen[y] {
                    edges.push((x, s, y));
                } else {
                    seen[y] = true;
                    parent[y] = Some((x, s));
                    order.push(y);
                }
            }
            k += 1;
        }
        drop(index);
        Cayley { gens: gens.to_vec(), elements, parent, order, edges }
    }

    fn degree(&self) -> usize {
        self.gens[0].degree()
    }

    /// For generator shifts `d` (indexed `s·m + x`), the diagonal part of
    /// every relator `x·s·(x·s)^{-1}`, modulo `modulus`.
    fn residuals(&self, d: &[u64], modulus: u64) -> Vec<Vec<u64>> {
        let m = self.degree();
        let shift = |v: &[u64], sigma: &Permutation, s: usize| -> Vec<u64> {
            (0..m).map(|i| (v[i] + d[s * m + sigma.image(i)]) % modulus).collect()
        };
        let mut v = vec![Vec::new(); self.elements.len()];
        v[0] = vec![0u64; m];
        for &x in &self.order[1..] {
            let (par, s) = self.parent[x].unwrap();
            v[x] = shift(&v[par], &self.elements[par], s);
        }
        self.edges
            .iter()
            .map(|&(x, s, y)| {
                let w = shift(&v[x], &self.elements[x], s);
                w.iter().zip(&v[y]).map(|(a, b)| (a + modulus - b) % modulus).collect()
            })
            .collect()
    }

    fn lift(&self, d: &[u64], modulus: u64) -> Vec<Permutation> {
        let m = self.degree();
        let k = modulus as usize;
        self.gens
            .iter()
            .enumerate()
            .map(|(s, g)| {
                perm((0..m * k).map(|pt| g.image(pt / k) * k + (pt % k + d[s * m + pt / k] as usize) % k).collect())
            })
            .collect()
    }
}

/// Generator shifts `d` over F_p whose relator residuals all lie in
/// `module`, as a particular solution plus a basis of the homogeneous
/// solutions.  `None` when the system is inconsistent.
fn solve_shifts(
    cayley: &Cayley,
    p: u64,
    module: &[Vec<u64>],
    rng: &mut ChaCha8Rng,
) -> Option<(Vec<u64>, Vec<Vec<u64>>)> {
    let m = cayley.degree();
    let n = cayley.gens.len() * m;
    let annihilator = annihilator_basis(module, m, p);
    let n_probes = 3.min(annihilator.len());
    let combos: Vec<Vec<u64>> = (0..cayley.edges.len() * n_probes)
        .map(|_| {
            let mut a = vec![0u64; m];
            for b in &annihilator {
                let c = rng.gen_range(0..p);
                for (x, y) in a.iter_mut().zip(b) {
                    *x = (*x + c * y) % p;
                }
            }
            a
        })
        .collect();
    let project = |res: &[Vec<u64>]| -> Vec<u64> {
        combos
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let r = &res[i / n_probes];
                a.iter().zip(r).map(|(a, b)| a * b).sum::<u64>() % p
            })
            .collect()
    };
    // The residual map is linear in d; the last column is the (zero)
    // inhomogeneous part.
    let mut rows: Vec<Vec<u64>> = vec![vec![0; n + 1]; combos.len()];
    for u in 0..n {
        let mut unit = vec![0u64; n];
        unit[u] = 1;
        for (row, c) in rows.iter_mut().zip(project(&cayley.residuals(&unit, p))) {
            row[u] = c;
        }
    }
    let mut eqs = Echelon::new(p);
    for row in rows {
        if row.iter().any(|&x| x != 0) {
            eqs.insert(row);
        }
    }
    let basis = eqs.nullspace(n + 1);
    let (particular, homogeneous): (Vec<_>, Vec<_>) = basis.into_iter().partition(|v| v[n] != 0);
    let mut particular = particular.into_iter().next()?;
    particular.truncate(n);
    Some((particular, homogeneous.into_iter().map(|mut v| { v.truncate(n); v }).collect()))
}

fn random_combination(particular: &[u64], basis: &[Vec<u64>], p: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut d = particular.to_vec();
    for b in basis {
        let c = rng.gen_range(0..p);
        for (x, y) in d.iter_mut().zip(b) {
            *x = (*x + c * y) % p;
        }
    }
    d
}

/// Searches for a lift of the permutation group `q_gens` on `m` points to a
/// monomial group on `m·p` points whose diagonal part is the F_p-span
/// `module` and whose order is `target`.  Generators of the lift act as
/// `(x, a) ↦ (x·s, a + d_s(x))`.
fn monomial_lift(
    q_gens: &[Permutation],
    p: u64,
    module: &[Vec<u64>],
    target: u128,
    accept: impl Fn(&[Permutation]) -> bool,
    seed: u64,
) -> Option<Vec<Permutation>> {
    let cayley = Cayley::new(q_gens);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (particular, basis) = solve_shifts(&cayley, p, module, &mut rng)?;
    eprintln!("  shift space dimension {} over F_{p}", basis.len());
    (0..200).find_map(|_| {
        let d = random_combination(&particular, &basis, p, &mut rng);
        let lifted = cayley.lift(&d, p);
        let h = PermGroup::new("lift", lifted[0].degree(), lifted.clone()).unwrap();
        (h.order() == target && accept(&lifted)).then_some(lifted)
    })
}

fn annihilator_basis(module: &[Vec<u64>], m: usize, p: u64) -> Vec<Vec<u64>> {
    let mut eq = Echelon::new(p);
    for v in module {
        eq.insert(v.clone());
    }
    eq.nullspace(m)
}

/// Order of the derived subgroup, as the normal closure of the generator
/// commutators.
fn derived_order(gens: &[Permutation]) -> u128 {
    let deg = gens[0].degree();
    let comm = |a: &Permutation, b: &Permutation| a.inverse().then(&b.inverse()).then(a).then(b);
    let mut sub: Vec<Permutation> = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = comm(a, b);
            if !c.is_identity() {
                sub.push(c);
            }
        }
    }
    if sub.is_empty() {
        return 1;
    }
    let mut order = PermGroup::new("D", deg, sub.clone()).unwrap().order();
    loop {
        let group = PermGroup::new("D", deg, sub.clone()).unwrap();
        let chain = group.stab_chain();
        let mut added = false;
        for h in sub.clone() {
            for g in gens {
                let c = h.conjugate_by(g);
                if !chain.contains(&c) {
                    sub.push(c);
                    added = true;
                }
            }
        }
        if !added {
            return order;
        }
        order = PermGroup::new("D", deg, sub.clone()).unwrap().order();
    }
}

fn is_perfect(gens: &[Permutation]) -> bool {
    let order = PermGroup::new("G", gens[0].degree(), gens.to_vec()).unwrap().order();
    derived_order(gens) == order
}

/// Disjoint union of two permutation actions of the same abstract generators.
fn direct_sum(a: &[Permutation], b: &[Permutation]) -> Vec<Permutation> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let off = x.degree();
            perm((0..off).map(|i| x.image(i)).chain((0..y.degree()).map(|i| y.image(i) + off)).collect())
        })
        .collect()
}

fn write(dir: &Path, file: &str, text: String) {
    fs::write(dir.join(file), text).unwrap();
    eprintln!("wrote {file}");
}

fn main() {
    let out = std::env::args().nth(1).unwrap_or_else(|| "fixtures".into());
    let dir = Path::new(&out);
    fs::create_dir_all(dir.join("matrep")).unwrap();
    fs::create_dir_all(dir.join("permgroup")).unwrap();

    let reps = [two_o(), two_i(), sigma_72(), sigma_216(), sigma_360(), delta_6n2(6), delta_6n2(9)];
    for rep in &reps {
        let g = expand_group(rep, 20_000).unwrap();
        assert_eq!(Some(g.order() as u64), rep.declared_order, "{}", rep.name);
        write(dir, &format!("matrep/{}.matrep", rep.name), write_matrep(rep));
        let gens = orbit_permutations(rep);
        let pg = PermGroup::new(rep.name.clone(), gens[0].degree(), gens).unwrap();
        assert_eq!(pg.order(), g.order() as u128);
        write(dir, &format!("permgroup/{}.perm", rep.name), write_permgroup(&pg));
    }

    let mut groups = vec![(agl32(), 1344u128), (agl42(), 322560), (sp43(), 51840)];
    let a9 = PermGroup::new("A9", 9, alternating_generators(9)).unwrap();
    groups.push((a9, 181440));
    let a5 = PermGroup::new("A5", 5, alternating_generators(5)).unwrap();
    groups.push((a5, 60));
    let a6 = PermGroup::new("A6", 6, alternating_generators(6)).unwrap();
    groups.push((a6, 360));
    let a7 = PermGroup::new("A7", 7, alternating_generators(7)).unwrap();
    groups.push((a7, 2520));

    eprintln!("lifting 2.A7");
    let on_sylow = a7_on_sylow7();
    let ones = |m: usize| vec![vec![1u64; m]];
    let two_a7 = monomial_lift(&on_sylow, 2, &ones(on_sylow[0].degree()), 5040, is_perfect, 1)
        .expect("2.A7 lift");
    eprintln!("lifting 3.A7");
    let on_fano = a7_on_fano();
    let three_a7 = monomial_lift(&on_fano, 3, &ones(on_fano[0].degree()), 7560, is_perfect, 2)
        .expect("3.A7 lift");
    let six_a7 = PermGroup::new("6.A7", 285, direct_sum(&two_a7, &three_a7)).unwrap();
    groups.push((six_a7, 15120));

    for (g, expected) in &groups {
        assert_eq!(g.order(), *expected, "{}", g.name());
        let file: String = g
            .name()
            .to_lowercase()
            .split(|c: char| !c.is_ascii_alphanumeric())
            .filter(|w| !w.is_empty())
            .collect::<Vec<_>>()
            .join("-");
        write(dir, &format!("permgroup/{file}.perm"), write_permgroup(g));
    }
}
