//! Finite-dimensional graded modules and their combinatorics: the vector
//! module, graded tensor products, duals, highest-weight vectors,
//! submodule generation, isotypic decomposition against a memoized
//! registry of irreducibles, and graded intertwiner spaces.

use std::collections::HashMap;
use std::ops::{Add, Sub};
use std::sync::Arc;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::context::Context;
use crate::error::KernelError;
use crate::linalg::{EchelonSpan, Mat, Vector};
use crate::rootdata::WeightVec;
use crate::scalars::RatFunc;
use crate::uqalg::{coproduct_gen, Gen, Word};

/// A finite-dimensional graded module given by explicit generator
/// matrices. The action of k_i^p is diagonal and recovered from the
/// stored weights, so only e_i and f_i matrices are kept. Matrices act
/// on coordinate columns: (x v)_a = sum_b t(x)_{ab} v_b.
#[derive(Clone, Debug)]
pub struct Module {
    pub n: usize,
    pub dim: usize,
    pub parity: Vec<u8>,
    pub weights: Vec<WeightVec>,
    pub emats: Vec<Mat>,
    pub fmats: Vec<Mat>,
}

/// Pairing of a simple root with a weight, as a rational.
fn root_pairing(n: usize, i: usize, w: &WeightVec) -> num::BigRational {
    let c = w.coords();
    if i < n {
        &c[i - 1] - &c[i]
    } else {
        c[n - 1].clone()
    }
}

impl Module {
    /// Exponent c with k_i acting on basis vector b as q^c. Errors when
    /// the pairing is not an integer (non-integral weight).
    pub fn k_exponent(&self, i: usize, b: usize) -> Result<i64, KernelError> {
        let r = root_pairing(self.n, i, &self.weights[b]);
        if !r.is_integer() {
            return Err(KernelError::NotIntegral(format!(
                "weight {} pairs non-integrally with alpha_{}",
                self.weights[b], i
            )));
        }
        r.to_integer()
            .try_into()
            .map_err(|_| KernelError::Internal("weight exponent overflow".into()))
    }

    pub fn gen_matrix(&self, g: Gen) -> Mat {
        match g {
            Gen::E(i) => self.emats[i - 1].clone(),
            Gen::F(i) => self.fmats[i - 1].clone(),
            Gen::K(i, p) => {
                let mut m = Mat::zero(self.dim, self.dim);
                for b in 0..self.dim {
                    let c = self
                        .k_exponent(i, b)
                        .expect("k acting on a non-integral weight");
                    m[(b, b)] = RatFunc::q_pow(p * c);
                }
                m
            }
        }
    }

    pub fn word_matrix(&self, w: &Word) -> Mat {
        let mut m = Mat::identity(self.dim);
        for g in &w.0 {
            m = m.mul(&self.gen_matrix(*g));
        }
        m
    }

    /// Basis indices grouped by weight, blocks in lexicographically
    /// descending weight order.
    pub fn weight_blocks(&self) -> Vec<(WeightVec, Vec<usize>)> {
        let mut map: HashMap<WeightVec, Vec<usize>> = HashMap::new();
        for (b, w) in self.weights.iter().enumerate() {
            map.entry(w.clone()).or_default().push(b);
        }
        let mut out: Vec<_> = map.into_iter().collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    pub fn is_integral(&self, datum: &crate::rootdata::RootDatum) -> bool {
        self.weights.iter().all(|w| datum.is_integral(w))
    }
}

/// Which generators are in play: a reductive subalgebra U_k(theta)
/// (all k's plus e_i, f_i for i in theta) or the parabolic it sits in
/// (additionally all raising generators e_j).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Reductive,
    Parabolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scope {
    pub n: usize,
    pub theta: Vec<usize>,
    pub flavor: Flavor,
}

impl Scope {
    pub fn full(n: usize) -> Self {
        Scope { n, theta: (1..=n).collect(), flavor: Flavor::Reductive }
    }

    pub fn reductive(n: usize, mut theta: Vec<usize>) -> Self {
        theta.sort_unstable();
        theta.dedup();
        Scope { n, theta, flavor: Flavor::Reductive }
    }

    pub fn parabolic(n: usize, mut theta: Vec<usize>) -> Self {
        theta.sort_unstable();
        theta.dedup();
        Scope { n, theta, flavor: Flavor::Parabolic }
    }

    pub fn is_full(&self) -> bool {
        self.theta.len() == self.n && self.flavor == Flavor::Reductive
    }

    pub fn e_indices(&self) -> Vec<usize> {
        match self.flavor {
            Flavor::Reductive => self.theta.clone(),
            Flavor::Parabolic => (1..=self.n).collect(),
        }
    }

    pub fn f_indices(&self) -> Vec<usize> {
        self.theta.clone()
    }

    pub fn ef_gens(&self) -> Vec<Gen> {
        let mut v: Vec<Gen> = self.e_indices().into_iter().map(Gen::E).collect();
        v.extend(self.f_indices().into_iter().map(Gen::F));
        v
    }
}

/// One-dimensional module of weight mu with e, f acting as zero.
pub fn one_dim_module(n: usize, mu: WeightVec) -> Module {
    Module {
        n,
        dim: 1,
        parity: vec![0],
        weights: vec![mu],
        emats: vec![Mat::zero(1, 1); n],
        fmats: vec![Mat::zero(1, 1); n],
    }
}

pub fn trivial_module(n: usize) -> Module {
    one_dim_module(n, WeightVec::zero(n))
}

/// The (2n+1)-dimensional vector module with basis ordered by
/// lexicographically descending weight: w_1..w_n, w_0, w_{-n}..w_{-1}.
/// w_0 is odd, the rest even.
pub fn vector_module(n: usize) -> Module {
    let dim = 2 * n + 1;
    // position -> label mu in {1..n, 0, -n..-1}
    let mu_of = |p: usize| -> i64 {
        if p < n {
            (p + 1) as i64
        } else if p == n {
            0
        } else {
            p as i64 - 2 * n as i64 - 1
        }
    };
    let pos_of = |mu: i64| -> usize {
        if mu > 0 {
            (mu - 1) as usize
        } else if mu == 0 {
            n
        } else {
            (mu + 2 * n as i64 + 1) as usize
        }
    };
    let weights: Vec<WeightVec> = (0..dim)
        .map(|p| {
            let mu = mu_of(p);
            if mu == 0 {
                WeightVec::zero(n)
            } else if mu > 0 {
                WeightVec::epsilon(n, mu as usize)
            } else {
                WeightVec::epsilon(n, (-mu) as usize).scaled(-1)
            }
        })
        .collect();
    let parity: Vec<u8> = (0..dim).map(|p| u8::from(mu_of(p) == 0)).collect();

    let mut emats = Vec::with_capacity(n);
    let mut fmats = Vec::with_capacity(n);
    for i in 1..=n as i64 {
        let mut e = Mat::zero(dim, dim);
        let mut f = Mat::zero(dim, dim);
        if (i as usize) < n {
            e[(pos_of(i), pos_of(i + 1))] = RatFunc::one();
            e[(pos_of(-i - 1), pos_of(-i))] = RatFunc::one();
            f[(pos_of(i + 1), pos_of(i))] = RatFunc::one();
            f[(pos_of(-i), pos_of(-i - 1))] = RatFunc::one();
        } else {
            e[(pos_of(i), pos_of(0))] = RatFunc::one();
            e[(pos_of(0), pos_of(-i))] = &RatFunc::zero() - &RatFunc::one();
            f[(pos_of(0), pos_of(i))] = RatFunc::one();
            f[(pos_of(-i), pos_of(0))] = RatFunc::one();
        }
        emats.push(e);
        fmats.push(f);
    }
    Module { n, dim, parity, weights, emats, fmats }
}

/// Graded tensor product. Basis index (a, b) -> a * dim_b + b; the
/// action comes from the coproduct with the Koszul sign
/// (x (x) y)(v (x) w) = (-1)^{[y][v]} xv (x) yw.
pub fn tensor(a: &Module, b: &Module) -> Module {
    assert_eq!(a.n, b.n);
    let n = a.n;
    let dim = a.dim * b.dim;
    let mut parity = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for p in 0..a.dim {
        for r in 0..b.dim {
            parity.push((a.parity[p] + b.parity[r]) % 2);
            weights.push(a.weights[p].add(&b.weights[r]));
        }
    }
    let gen_mat = |g: Gen| -> Mat {
        let mut m = Mat::zero(dim, dim);
        for (sign, wa, wb) in coproduct_gen(g) {
            let ma = a.word_matrix(&wa);
            let mb = b.word_matrix(&wb);
            let pb = wb.parity(n);
            for p in 0..a.dim {
                for k in 0..a.dim {
                    if ma[(p, k)].is_zero() {
                        continue;
                    }
                    let koszul = if pb == 1 && a.parity[k] == 1 { -1 } else { 1 };
                    let c = ma[(p, k)].scaled(&RatFunc::from_int(sign * koszul));
                    for r in 0..b.dim {
                        for l in 0..b.dim {
                            if mb[(r, l)].is_zero() {
                                continue;
                            }
                            let t = &c * &mb[(r, l)];
                            let idx = (p * b.dim + r, k * b.dim + l);
                            m[idx] = &m[idx] + &t;
                        }
                    }
                }
            }
        }
        m
    };
    let emats = (1..=n).map(|i| gen_mat(Gen::E(i))).collect();
    let fmats = (1..=n).map(|i| gen_mat(Gen::F(i))).collect();
    Module { n, dim, parity, weights, emats, fmats }
}

/// Dual module on the dual basis: x w*_a = sum_b (-1)^{[x][w_a]}
/// t(S(x))_{ab} w*_b, i.e. D(x)_{ba} = (-1)^{[x][w_a]} t(S(x))_{ab}.
pub fn dual_module(m: &Module) -> Module {
    let n = m.n;
    let weights: Vec<WeightVec> = m.weights.iter().map(|w| w.scaled(-1)).collect();
    let gen_mat = |g: Gen| -> Mat {
        let (sign, sw) = crate::uqalg::antipode_gen(g);
        let ts = m.word_matrix(&sw).scaled(&RatFunc::from_int(sign));
        let gp = g.parity(n);
        let mut d = Mat::zero(m.dim, m.dim);
        for a in 0..m.dim {
            for b in 0..m.dim {
                if ts[(a, b)].is_zero() {
                    continue;
                }
                let s = if gp == 1 && m.parity[a] == 1 { -1 } else { 1 };
                d[(b, a)] = ts[(a, b)].scaled(&RatFunc::from_int(s));
            }
        }
        d
    };
    Module {
        n,
        dim: m.dim,
        parity: m.parity.clone(),
        weights,
        emats: (1..=n).map(|i| gen_mat(Gen::E(i))).collect(),
        fmats: (1..=n).map(|i| gen_mat(Gen::F(i))).collect(),
    }
}

/// Vectors killed by every scoped raising generator, grouped by weight,
/// blocks in descending weight order, each block echelonized.
pub fn highest_weight_vectors(m: &Module, scope: &Scope) -> Vec<(WeightVec, Vector)> {
    let eidx = scope.e_indices();
    let mut out = Vec::new();
    for (w, block) in m.weight_blocks() {
        // stack the e-matrices restricted to the block's columns
        let mut rows: Vec<Vector> = Vec::new();
        for &i in &eidx {
            let e = &m.emats[i - 1];
            for r in 0..m.dim {
                let row: Vector = block.iter().map(|&c| e[(r, c)].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            // no constraints: the whole block
            (0..block.len())
                .map(|j| {
                    let mut v = vec![RatFunc::zero(); block.len()];
                    v[j] = RatFunc::one();
                    v
                })
                .collect()
        } else {
            Mat::from_rows(rows).nullspace()
        };
        for kv in kernel {
            let mut full = vec![RatFunc::zero(); m.dim];
            for (j, &c) in block.iter().enumerate() {
                full[c] = kv[j].clone();
            }
            out.push((w.clone(), full));
        }
    }
    out
}

/// Vectors killed by every scoped lowering generator (full scope: joint
/// kernel of all f_i), ascending weight order.
pub fn lowest_weight_vectors(m: &Module, scope: &Scope) -> Vec<(WeightVec, Vector)> {
    let fidx = scope.f_indices();
    let mut out = Vec::new();
    let mut blocks = m.weight_blocks();
    blocks.reverse();
    for (w, block) in blocks {
        let mut rows: Vec<Vector> = Vec::new();
        for &i in &fidx {
            let f = &m.fmats[i - 1];
            for r in 0..m.dim {
                let row: Vector = block.iter().map(|&c| f[(r, c)].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..block.len())
                .map(|j| {
                    let mut v = vec![RatFunc::zero(); block.len()];
                    v[j] = RatFunc::one();
                    v
                })
                .collect()
        } else {
            Mat::from_rows(rows).nullspace()
        };
        for kv in kernel {
            let mut full = vec![RatFunc::zero(); m.dim];
            for (j, &c) in block.iter().enumerate() {
                full[c] = kv[j].clone();
            }
            out.push((w.clone(), full));
        }
    }
    out
}

fn vector_weight_parity(m: &Module, v: &[RatFunc]) -> Result<(WeightVec, u8), KernelError> {
    let mut wt: Option<WeightVec> = None;
    let mut par: Option<u8> = None;
    for (b, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match &wt {
            None => {
                wt = Some(m.weights[b].clone());
                par = Some(m.parity[b]);
            }
            Some(w) => {
                if *w != m.weights[b] || par != Some(m.parity[b]) {
                    return Err(KernelError::Invalid(
                        "seed vector is not homogeneous of a single weight".into(),
                    ));
                }
            }
        }
    }
    match (wt, par) {
        (Some(w), Some(p)) => Ok((w, p)),
        _ => Err(KernelError::Invalid("seed vector is zero".into())),
    }
}

/// Submodule generated by a homogeneous seed under the scoped e's and
/// f's. Returns the submodule (basis sorted by descending weight, seed
/// first when it is the highest weight) together with the basis matrix
/// B (ambient_dim x sub_dim) whose columns are the basis vectors in
/// ambient coordinates.
pub fn generate_submodule(
    amb: &Module,
    seed: &[RatFunc],
    scope: &Scope,
) -> Result<(Module, Mat), KernelError> {
    let (wt0, p0) = vector_weight_parity(amb, seed)?;
    let gens = scope.ef_gens();
    let gen_mats: Vec<(Gen, Mat)> = gens.iter().map(|g| (*g, amb.gen_matrix(*g))).collect();

    let mut spans: HashMap<WeightVec, EchelonSpan> = HashMap::new();
    let mut basis: Vec<(Vector, WeightVec, u8)> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();

    spans.entry(wt0.clone()).or_insert_with(EchelonSpan::new).insert(seed);
    basis.push((seed.to_vec(), wt0, p0));
    queue.push(0);

    let mut qi = 0;
    while qi < queue.len() {
        let (v, wt, par) = basis[queue[qi]].clone();
        qi += 1;
        for (g, mat) in &gen_mats {
            let nv = mat.mul_vec(&v);
            if nv.iter().all(|c| c.is_zero()) {
                continue;
            }
            let shift = match g {
                Gen::E(i) => simple_root(amb.n, *i),
                Gen::F(i) => simple_root(amb.n, *i).scaled(-1),
                Gen::K(..) => unreachable!(),
            };
            let nwt = wt.add(&shift);
            let npar = (par + g.parity(amb.n)) % 2;
            let span = spans.entry(nwt.clone()).or_insert_with(EchelonSpan::new);
            if span.insert(&nv) {
                basis.push((nv, nwt, npar));
                queue.push(basis.len() - 1);
            }
        }
    }

    // canonical order: descending weight, generation order within a weight
    basis.sort_by(|a, b| b.1.cmp(&a.1));
    let sub_dim = basis.len();
    let mut bmat = Mat::zero(amb.dim, sub_dim);
    for (j, (v, _, _)) in basis.iter().enumerate() {
        bmat.set_column(j, v);
    }

    // index blocks of the new basis by weight for coordinate solves
    let mut sub_blocks: HashMap<WeightVec, Vec<usize>> = HashMap::new();
    for (j, (_, w, _)) in basis.iter().enumerate() {
        sub_blocks.entry(w.clone()).or_default().push(j);
    }

    let express = |v: &Vector, wt: &WeightVec| -> Result<Vector, KernelError> {
        let mut out = vec![RatFunc::zero(); sub_dim];
        if v.iter().all(|c| c.is_zero()) {
            return Ok(out);
        }
        let cols = sub_blocks.get(wt).ok_or_else(|| {
            KernelError::Internal("generated vector escapes the submodule".into())
        })?;
        let mut a = Mat::zero(amb.dim, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for r in 0..amb.dim {
                a[(r, jj)] = bmat[(r, j)].clone();
            }
        }
        let x = a.solve(v).ok_or_else(|| {
            KernelError::Internal("generated vector escapes the submodule".into())
        })?;
        for (jj, &j) in cols.iter().enumerate() {
            out[j] = x[jj].clone();
        }
        Ok(out)
    };

    let n = amb.n;
    let mut emats = vec![Mat::zero(sub_dim, sub_dim); n];
    let mut fmats = vec![Mat::zero(sub_dim, sub_dim); n];
    for &i in &scope.e_indices() {
        let e = &amb.emats[i - 1];
        let mut m = Mat::zero(sub_dim, sub_dim);
        for (j, (v, wt, _)) in basis.iter().enumerate() {
            let img = e.mul_vec(v);
            let x = express(&img, &wt.add(&simple_root(n, i)))?;
            m.set_column(j, &x);
        }
        emats[i - 1] = m;
    }
    for &i in &scope.f_indices() {
        let f = &amb.fmats[i - 1];
        let mut m = Mat::zero(sub_dim, sub_dim);
        for (j, (v, wt, _)) in basis.iter().enumerate() {
            let img = f.mul_vec(v);
            let x = express(&img, &wt.sub(&simple_root(n, i)))?;
            m.set_column(j, &x);
        }
        fmats[i - 1] = m;
    }

    let module = Module {
        n,
        dim: sub_dim,
        parity: basis.iter().map(|(_, _, p)| *p).collect(),
        weights: basis.iter().map(|(_, w, _)| w.clone()).collect(),
        emats,
        fmats,
    };
    Ok((module, bmat))
}

fn simple_root(n: usize, i: usize) -> WeightVec {
    if i < n {
        WeightVec::epsilon(n, i).sub(&WeightVec::epsilon(n, i + 1))
    } else {
        WeightVec::epsilon(n, n)
    }
}

/// A graded intertwiner phi: A -> B of the given parity, phi(v) = M v,
/// satisfying M t_A(x) = (-1)^{[phi][x]} t_B(x) M for scoped x.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    pub matrix: Mat,
    pub parity: u8,
}

/// Basis of Hom(A, B) over the scoped subalgebra, even maps first, each
/// parity block echelonized deterministically. Weight and parity
/// filtering is applied up front: an entry (r, c) can be nonzero only
/// when weights match and parities differ by the map's parity.
pub fn hom_space(a: &Module, b: &Module, scope: &Scope) -> Vec<Intertwiner> {
    assert_eq!(a.n, b.n);
    let gens = scope.ef_gens();
    let n = a.n;
    let mut out = Vec::new();
    for p in [0u8, 1u8] {
        // unknown positions
        let mut idx: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pos: Vec<(usize, usize)> = Vec::new();
        for r in 0..b.dim {
            for c in 0..a.dim {
                if b.weights[r] == a.weights[c] && (a.parity[c] + p) % 2 == b.parity[r] {
                    idx.insert((r, c), pos.len());
                    pos.push((r, c));
                }
            }
        }
        if pos.is_empty() {
            continue;
        }
        let mut rows: Vec<Vector> = Vec::new();
        for g in &gens {
            let am = a.gen_matrix(*g);
            let bm = b.gen_matrix(*g);
            let sign = if p == 1 && g.parity(n) == 1 { -1 } else { 1 };
            // (M A - s B M)_{r,c} = 0
            for r in 0..b.dim {
                for c in 0..a.dim {
                    let mut row = vec![RatFunc::zero(); pos.len()];
                    let mut nonzero = false;
                    for k in 0..a.dim {
                        if am[(k, c)].is_zero() {
                            continue;
                        }
                        if let Some(&u) = idx.get(&(r, k)) {
                            row[u] = &row[u] + &am[(k, c)];
                            nonzero = true;
                        }
                    }
                    for l in 0..b.dim {
                        if bm[(r, l)].is_zero() {
                            continue;
                        }
                        if let Some(&u) = idx.get(&(l, c)) {
                            row[u] = &row[u] - &bm[(r, l)].scaled(&RatFunc::from_int(sign));
                            nonzero = true;
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..pos.len())
                .map(|j| {
                    let mut v = vec![RatFunc::zero(); pos.len()];
                    v[j] = RatFunc::one();
                    v
                })
                .collect()
        } else {
            Mat::from_rows(rows).nullspace()
        };
        for kv in kernel {
            let mut m = Mat::zero(b.dim, a.dim);
            for (u, &(r, c)) in pos.iter().enumerate() {
                m[(r, c)] = kv[u].clone();
            }
            out.push(Intertwiner { matrix: m, parity: p });
        }
    }
    out
}

/// A summand of an ambient module, conjugated into the registry copy of
/// the irreducible W(lambda): M(x) inc = (-1)^{[psi][x]} inc t_W(x) and
/// proj inc = id, with sum inc_s proj_s = id over all summands.
#[derive(Clone, Debug)]
pub struct Summand {
    pub lambda: Vec<i64>,
    pub iso_parity: u8,
    pub inclusion: Mat,
    pub projection: Mat,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

/// Raw scoped decomposition: summands in their generated bases, no
/// registry conjugation. Summand order follows descending highest
/// weight.
pub struct RawSummand {
    pub module: Module,
    pub inclusion: Mat,
    pub projection: Mat,
    pub highest_weight: WeightVec,
}

pub fn scoped_decompose(amb: &Module, scope: &Scope) -> Result<Vec<RawSummand>, KernelError> {
    let hwvs = highest_weight_vectors(amb, scope);
    let mut parts: Vec<(Module, Mat, WeightVec)> = Vec::new();
    let mut total = 0usize;
    for (w, v) in hwvs {
        let (sub, bmat) = generate_submodule(amb, &v, scope)?;
        total += sub.dim;
        parts.push((sub, bmat, w));
    }
    if total != amb.dim {
        return Err(KernelError::Internal(format!(
            "decomposition dimensions {} != ambient {}",
            total, amb.dim
        )));
    }
    let mut u = Mat::zero(amb.dim, amb.dim);
    let mut col = 0usize;
    for (sub, bmat, _) in &parts {
        for j in 0..sub.dim {
            let c = bmat.column(j);
            u.set_column(col, &c);
            col += 1;
        }
    }
    let uinv = u
        .inverse()
        .ok_or_else(|| KernelError::Internal("summand basis is not a basis".into()))?;
    let mut out = Vec::new();
    let mut row = 0usize;
    for (sub, bmat, w) in parts {
        let mut proj = Mat::zero(sub.dim, amb.dim);
        for j in 0..sub.dim {
            for c in 0..amb.dim {
                proj[(j, c)] = uinv[(row + j, c)].clone();
            }
        }
        row += sub.dim;
        out.push(RawSummand { module: sub, inclusion: bmat, projection: proj, highest_weight: w });
    }
    Ok(out)
}

/// Full decomposition into registry irreducibles. Every raw summand is
/// conjugated onto the memoized copy of W(lambda) through the unique
/// (possibly odd) isomorphism from the registry module.
pub fn decompose(ctx: &Context, amb: &Module) -> Result<Decomposition, KernelError> {
    let scope = Scope::full(amb.n);
    let raw = scoped_decompose(amb, &scope)?;
    let mut incs: Vec<(Vec<i64>, u8, Mat)> = Vec::new();
    for rs in &raw {
        let lam = rs
            .highest_weight
            .as_ints()
            .ok_or_else(|| KernelError::NotIntegral(format!("{}", rs.highest_weight)))?;
        let reg = irreducible(ctx, &lam)?;
        let mut isos: Vec<Intertwiner> = hom_space(&reg, &rs.module, &scope)
            .into_iter()
            .filter(|i| !i.matrix.is_zero())
            .collect();
        if isos.len() != 1 {
            return Err(KernelError::IsoNotFound(format!(
                "expected a unique iso onto W({:?}), found {}",
                lam,
                isos.len()
            )));
        }
        let psi = isos.remove(0);
        incs.push((lam, psi.parity, rs.inclusion.mul(&psi.matrix)));
    }
    let mut u = Mat::zero(amb.dim, amb.dim);
    let mut col = 0usize;
    for (_, _, inc) in &incs {
        for j in 0..inc.cols {
            let c = inc.column(j);
            u.set_column(col, &c);
            col += 1;
        }
    }
    let uinv = u
        .inverse()
        .ok_or_else(|| KernelError::Internal("registry inclusions are not a basis".into()))?;
    let mut summands = Vec::new();
    let mut row = 0usize;
    for (lam, par, inc) in incs {
        let d = inc.cols;
        let mut proj = Mat::zero(d, amb.dim);
        for j in 0..d {
            for c in 0..amb.dim {
                proj[(j, c)] = uinv[(row + j, c)].clone();
            }
        }
        row += d;
        summands.push(Summand { lambda: lam, iso_parity: par, inclusion: inc, projection: proj, dim: d });
    }
    Ok(Decomposition { summands })
}

fn is_dominant_ints(lam: &[i64]) -> bool {
    lam.windows(2).all(|w| w[0] >= w[1]) && *lam.last().unwrap_or(&0) >= 0
}

/// Registry irreducible W(lambda), memoized per context. Built by
/// locating the highest-weight vector of weight lambda inside the
/// |lambda|-th tensor power of the vector module and generating.
pub fn irreducible(ctx: &Context, lam: &[i64]) -> Result<Arc<Module>, KernelError> {
    let n = ctx.n();
    if lam.len() != n {
        return Err(KernelError::RankMismatch(format!(
            "weight has {} entries, rank is {}",
            lam.len(),
            n
        )));
    }
    if !is_dominant_ints(lam) {
        return Err(KernelError::NotDominant(format!("{:?}", lam)));
    }
    if let Some(m) = ctx.irreps.lock().unwrap().get(lam) {
        return Ok(m.clone());
    }
    let total: i64 = lam.iter().sum();
    let module = if total == 0 {
        trivial_module(n)
    } else if total == 1 {
        vector_module(n)
    } else {
        let amb = tensor_power(ctx, total as usize)?;
        let target = WeightVec::from_ints(lam);
        let hwvs = highest_weight_vectors(&amb, &Scope::full(n));
        let (_, v) = hwvs
            .into_iter()
            .find(|(w, _)| *w == target)
            .ok_or_else(|| {
                KernelError::Internal(format!("no highest weight vector of weight {:?}", lam))
            })?;
        let (sub, _) = generate_submodule(&amb, &v, &Scope::full(n))?;
        sub
    };
    let arc = Arc::new(module);
    ctx.irreps.lock().unwrap().entry(lam.to_vec()).or_insert_with(|| arc.clone());
    Ok(arc)
}

/// Tensor powers of the vector module, memoized.
pub fn tensor_power(ctx: &Context, m: usize) -> Result<Arc<Module>, KernelError> {
    if m == 0 {
        return Ok(Arc::new(trivial_module(ctx.n())));
    }
    if let Some(t) = ctx.tensor_powers.lock().unwrap().get(&m) {
        return Ok(t.clone());
    }
    let module = if m == 1 {
        vector_module(ctx.n())
    } else {
        let prev = tensor_power(ctx, m - 1)?;
        tensor(&prev, &vector_module(ctx.n()))
    };
    let arc = Arc::new(module);
    ctx.tensor_powers.lock().unwrap().entry(m).or_insert_with(|| arc.clone());
    Ok(arc)
}

/// W(lambda) (x) W(mu) together with its registry decomposition,
/// memoized.
pub fn tensor_decomp(
    ctx: &Context,
    lam: &[i64],
    mu: &[i64],
) -> Result<Arc<(Arc<Module>, Decomposition)>, KernelError> {
    let key = (lam.to_vec(), mu.to_vec());
    if let Some(t) = ctx.tensor_decomps.lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let a = irreducible(ctx, lam)?;
    let b = irreducible(ctx, mu)?;
    let prod = Arc::new(tensor(&a, &b));
    let dec = decompose(ctx, &prod)?;
    let arc = Arc::new((prod, dec));
    ctx.tensor_decomps.lock().unwrap().entry(key).or_insert_with(|| arc.clone());
    Ok(arc)
}

/// The dual of a registry irreducible together with the unique iso onto
/// W(lambda^dagger), memoized.
pub struct DualData {
    pub module: Module,
    pub iso: Intertwiner,
    pub lambda_dagger: Vec<i64>,
}

pub fn dual_data(ctx: &Context, lam: &[i64]) -> Result<Arc<DualData>, KernelError> {
    if let Some(d) = ctx.duals.lock().unwrap().get(lam) {
        return Ok(d.clone());
    }
    let reg = irreducible(ctx, lam)?;
    let dual = dual_module(&reg);
    // lambda^dagger = -(lowest weight of W(lambda))
    let lows = lowest_weight_vectors(&reg, &Scope::full(ctx.n()));
    if lows.len() != 1 {
        return Err(KernelError::Internal(format!(
            "expected a unique lowest weight vector, found {}",
            lows.len()
        )));
    }
    let ldag_w = lows[0].0.scaled(-1);
    let ldag = ldag_w
        .as_ints()
        .filter(|v| is_dominant_ints(v))
        .ok_or_else(|| KernelError::NotDominant(format!("{}", ldag_w)))?;
    let target = irreducible(ctx, &ldag)?;
    let mut isos: Vec<Intertwiner> = hom_space(&dual, &target, &Scope::full(ctx.n()))
        .into_iter()
        .filter(|i| !i.matrix.is_zero())
        .collect();
    if isos.len() != 1 {
        return Err(KernelError::IsoNotFound(format!(
            "dual of W({:?}): expected one iso onto W({:?}), found {}",
            lam,
            ldag,
            isos.len()
        )));
    }
    let data = Arc::new(DualData { module: dual, iso: isos.remove(0), lambda_dagger: ldag });
    ctx.duals.lock().unwrap().entry(lam.to_vec()).or_insert_with(|| data.clone());
    Ok(data)
}

/// The self-duality matrix M of the vector module, normalized so that
/// w*_{-1} maps to w_1 (m_1 = 1): columns are the images of the dual
/// basis, and the coefficient of w_mu in the image of w*_{-mu} is
/// m_mu.
pub fn self_duality_m(ctx: &Context) -> Result<Mat, KernelError> {
    let n = ctx.n();
    let lam: Vec<i64> = (0..n).map(|i| i64::from(i == 0)).collect();
    let dd = dual_data(ctx, &lam)?;
    if dd.lambda_dagger != lam {
        return Err(KernelError::ConventionFailure(
            "vector module is not self-dual".into(),
        ));
    }
    let m = &dd.iso.matrix;
    // row of w_1 is 0, column of w*_{-1} is 2n
    let pivot = m[(0, 2 * n)].clone();
    if pivot.is_zero() {
        return Err(KernelError::ConventionFailure(
            "duality matrix has zero entry at (1, -1)".into(),
        ));
    }
    Ok(m.scaled(&pivot.inv()?))
}

/// Extend a U_k(theta)-module to the parabolic by letting the extra
/// raising generators act as zero, then sanity-check the scoped
/// bracket relations on the result.
pub fn extend_to_parabolic(v: &Module, theta: &[usize]) -> Result<(Module, Scope), KernelError> {
    let scope = Scope::parabolic(v.n, theta.to_vec());
    let mut out = v.clone();
    for j in 1..=v.n {
        if !scope.theta.contains(&j) {
            out.emats[j - 1] = Mat::zero(v.dim, v.dim);
        }
    }
    check_scoped_brackets(&out, &scope)?;
    Ok((out, scope))
}

/// Verify k-conjugation and Cartan brackets among scoped generators.
fn check_scoped_brackets(m: &Module, scope: &Scope) -> Result<(), KernelError> {
    let n = m.n;
    let qdiff = &RatFunc::q_pow(1) - &RatFunc::q_pow(-1);
    for &i in &scope.e_indices() {
        for &j in &scope.f_indices() {
            let e = &m.emats[i - 1];
            let f = &m.fmats[j - 1];
            let sign = if i == n && j == n { 1 } else { -1 };
            let lhs = e.mul(f).sub(&f.mul(e).scaled(&RatFunc::from_int(-sign)));
            let rhs = if i == j {
                m.gen_matrix(Gen::K(i, 1))
                    .sub(&m.gen_matrix(Gen::K(i, -1)))
                    .scaled(&(&RatFunc::one() / &qdiff))
            } else {
                Mat::zero(m.dim, m.dim)
            };
            if !lhs.sub(&rhs).is_zero() {
                return Err(KernelError::RelationFailure(format!(
                    "[e_{}, f_{}] fails on the scoped module",
                    i, j
                )));
            }
        }
    }
    for g in scope.ef_gens() {
        let (i, x, shift) = match g {
            Gen::E(i) => (i, &m.emats[i - 1], 1),
            Gen::F(i) => (i, &m.fmats[i - 1], -1),
            Gen::K(..) => continue,
        };
        for j in 1..=n {
            let k = m.gen_matrix(Gen::K(j, 1));
            let c = simple_root(n, j).inner(&simple_root(n, i));
            let e: i64 = c
                .to_integer()
                .try_into()
                .map_err(|_| KernelError::Internal("pairing overflow".into()))?;
            let lhs = k.mul(x);
            let rhs = x.mul(&k).scaled(&RatFunc::q_pow(shift * e));
            if !lhs.sub(&rhs).is_zero() {
                return Err(KernelError::RelationFailure(format!(
                    "k_{} conjugation of generator {} fails",
                    j, i
                )));
            }
        }
    }
    Ok(())
}

impl Serialize for Module {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(5))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("dim", &self.dim)?;
        map.serialize_entry("parity", &self.parity)?;
        map.serialize_entry("weights", &self.weights)?;
        let mut gens: std::collections::BTreeMap<String, Vec<(usize, usize, RatFunc)>> =
            std::collections::BTreeMap::new();
        let sparse = |m: &Mat| -> Vec<(usize, usize, RatFunc)> {
            let mut v = Vec::new();
            for r in 0..m.rows {
                for c in 0..m.cols {
                    if !m[(r, c)].is_zero() {
                        v.push((r, c, m[(r, c)].clone()));
                    }
                }
            }
            v
        };
        for i in 1..=self.n {
            gens.insert(format!("e{}", i), sparse(&self.emats[i - 1]));
            gens.insert(format!("f{}", i), sparse(&self.fmats[i - 1]));
            gens.insert(format!("k{}", i), sparse(&self.gen_matrix(Gen::K(i, 1))));
        }
        map.serialize_entry("gens", &gens)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Module {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            dim: usize,
            parity: Vec<u8>,
            weights: Vec<WeightVec>,
            gens: std::collections::BTreeMap<String, Vec<(usize, usize, RatFunc)>>,
        }
        let raw = Raw::deserialize(d)?;
        let build = |name: &str| -> Result<Mat, D::Error> {
            let mut m = Mat::zero(raw.dim, raw.dim);
            if let Some(entries) = raw.gens.get(name) {
                for (r, c, v) in entries {
                    if *r >= raw.dim || *c >= raw.dim {
                        return Err(D::Error::custom("matrix entry out of range"));
                    }
                    m[(*r, *c)] = v.clone();
                }
            }
            Ok(m)
        };
        let mut emats = Vec::new();
        let mut fmats = Vec::new();
        for i in 1..=raw.n {
            emats.push(build(&format!("e{}", i))?);
            fmats.push(build(&format!("f{}", i))?);
        }
        if raw.parity.len() != raw.dim || raw.weights.len() != raw.dim {
            return Err(D::Error::custom("parity/weights length mismatch"));
        }
        Ok(Module {
            n: raw.n,
            dim: raw.dim,
            parity: raw.parity,
            weights: raw.weights,
            emats,
            fmats,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;
    use crate::uqalg::{check_hopf_axioms, check_relations, check_s_squared};

    fn fu(n: usize) -> Scope {
        Scope::full(n)
    }

    #[test]
    fn vector_module_relations_n1_n2_n3() {
        for n in 1..=3 {
            let datum = build_root_datum(n).unwrap();
            let v = vector_module(n);
            assert_eq!(v.dim, 2 * n + 1);
            let rep = check_relations(&v, &datum);
            assert!(rep.ok(), "relations fail for n={}: {:?}", n, rep.failures);
            let hopf = check_hopf_axioms(&v);
            assert!(hopf.ok(), "hopf fails for n={}: {:?}", n, hopf.failures);
            let ss = check_s_squared(&v, &datum);
            assert!(ss.ok(), "s^2 fails for n={}: {:?}", n, ss.failures);
        }
    }

    #[test]
    fn tensor_square_relations_n1() {
        let datum = build_root_datum(1).unwrap();
        let v = vector_module(1);
        let t = tensor(&v, &v);
        assert_eq!(t.dim, 9);
        let rep = check_relations(&t, &datum);
        assert!(rep.ok(), "{:?}", rep.failures);
    }

    #[test]
    fn dual_module_relations() {
        for n in 1..=2 {
            let datum = build_root_datum(n).unwrap();
            let d = dual_module(&vector_module(n));
            let rep = check_relations(&d, &datum);
            assert!(rep.ok(), "dual relations fail for n={}: {:?}", n, rep.failures);
        }
    }

    #[test]
    fn tensor_square_decomposes_5_3_1() {
        let ctx = Context::new(1).unwrap();
        let v = vector_module(1);
        let t = tensor(&v, &v);
        let dec = decompose(&ctx, &t).unwrap();
        let mut dims: Vec<usize> = dec.summands.iter().map(|s| s.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 3, 5]);
        // invariants: sum inc proj = id, proj inc = id per summand
        let mut total = Mat::zero(9, 9);
        for s in &dec.summands {
            assert!(s.projection.mul(&s.inclusion).sub(&Mat::identity(s.dim)).is_zero());
            total = total.add(&s.inclusion.mul(&s.projection));
        }
        assert!(total.sub(&Mat::identity(9)).is_zero());
    }

    #[test]
    fn summand_intertwining_with_parity() {
        let ctx = Context::new(1).unwrap();
        let v = vector_module(1);
        let t = tensor(&v, &v);
        let dec = decompose(&ctx, &t).unwrap();
        for s in &dec.summands {
            let reg = irreducible(&ctx, &s.lambda).unwrap();
            for g in [Gen::E(1), Gen::F(1), Gen::K(1, 1)] {
                let sign = if s.iso_parity == 1 && g.parity(1) == 1 { -1 } else { 1 };
                let lhs = t.gen_matrix(g).mul(&s.inclusion);
                let rhs = s
                    .inclusion
                    .mul(&reg.gen_matrix(g))
                    .scaled(&RatFunc::from_int(sign));
                assert!(lhs.sub(&rhs).is_zero(), "lambda={:?} g={:?}", s.lambda, g);
            }
        }
    }

    #[test]
    fn cube_decomposes_with_total_27() {
        let ctx = Context::new(1).unwrap();
        let t = tensor_power(&ctx, 3).unwrap();
        let dec = decompose(&ctx, &t).unwrap();
        let total: usize = dec.summands.iter().map(|s| s.dim).sum();
        assert_eq!(total, 27);
        let mut dims: Vec<usize> = dec.summands.iter().map(|s| s.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 3, 3, 3, 5, 5, 7]);
    }

    #[test]
    fn n2_tensor_square_14_10_1() {
        let ctx = Context::new(2).unwrap();
        let v = vector_module(2);
        let t = tensor(&v, &v);
        let dec = decompose(&ctx, &t).unwrap();
        let mut dims: Vec<usize> = dec.summands.iter().map(|s| s.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 10, 14]);
    }

    #[test]
    fn irreducible_2eps1_dim_5() {
        let ctx = Context::new(1).unwrap();
        let w = irreducible(&ctx, &[2]).unwrap();
        assert_eq!(w.dim, 5);
        // highest weight first
        assert_eq!(w.weights[0], WeightVec::from_ints(&[2]));
        let datum = build_root_datum(1).unwrap();
        let rep = check_relations(&w, &datum);
        assert!(rep.ok(), "{:?}", rep.failures);
    }

    #[test]
    fn dual_of_vector_is_self_dual_with_m_matrix() {
        for n in 1..=3usize {
            let ctx = Context::new(n).unwrap();
            let m = self_duality_m(&ctx).unwrap();
            // expected: coefficient of w_mu in the image of w*_{-mu}
            // is m_mu, i.e. entry (pos(mu), pos(-mu)) equals m_mu
            let pos_of = |mu: i64| -> usize {
                if mu > 0 {
                    (mu - 1) as usize
                } else if mu == 0 {
                    n
                } else {
                    (mu + 2 * n as i64 + 1) as usize
                }
            };
            let minus_q = &RatFunc::zero() - &RatFunc::q_pow(1);
            let mq_pow = |k: i64| -> RatFunc {
                let mut r = RatFunc::one();
                for _ in 0..k {
                    r = &r * &minus_q;
                }
                r
            };
            for mu in -(n as i64)..=(n as i64) {
                let expect = if mu > 0 {
                    mq_pow(mu - 1)
                } else if mu == 0 {
                    mq_pow(n as i64)
                } else {
                    mq_pow(2 * n as i64 + mu)
                };
                for nu in -(n as i64)..=(n as i64) {
                    let got = &m[(pos_of(mu), pos_of(nu))];
                    if nu == -mu {
                        assert_eq!(got, &expect, "n={} mu={}", n, mu);
                    } else {
                        assert!(got.is_zero(), "n={} mu={} nu={}", n, mu, nu);
                    }
                }
            }
        }
    }

    #[test]
    fn odd_iso_occurs_in_tensor_square() {
        // the 3-dimensional summand of the n=1 tensor square has an odd
        // highest weight vector, so its registry iso is odd
        let ctx = Context::new(1).unwrap();
        let v = vector_module(1);
        let t = tensor(&v, &v);
        let dec = decompose(&ctx, &t).unwrap();
        let s = dec.summands.iter().find(|s| s.dim == 3).unwrap();
        assert_eq!(s.iso_parity, 1);
    }

    #[test]
    fn hom_space_endos_of_vector_is_scalar() {
        let v = vector_module(1);
        let homs = hom_space(&v, &v, &fu(1));
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].parity, 0);
    }

    #[test]
    fn reductive_restriction_splits_vector_module() {
        // n=2, theta={1}: the 5-dim vector module splits under U_k({1})
        let v = vector_module(2);
        let scope = Scope::reductive(2, vec![1]);
        let raw = scoped_decompose(&v, &scope).unwrap();
        let mut dims: Vec<usize> = raw.iter().map(|r| r.module.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 2, 2]);
    }

    #[test]
    fn parabolic_extension_of_one_dim() {
        let mu = WeightVec::from_ints(&[-1, -1]);
        let c = one_dim_module(2, mu);
        let (ext, scope) = extend_to_parabolic(&c, &[1]).unwrap();
        assert_eq!(ext.dim, 1);
        assert_eq!(scope.flavor, Flavor::Parabolic);
    }

    #[test]
    fn module_json_round_trip() {
        let v = vector_module(2);
        let s = serde_json::to_string(&v).unwrap();
        let back: Module = serde_json::from_str(&s).unwrap();
        assert_eq!(back.dim, v.dim);
        assert_eq!(back.parity, v.parity);
        assert_eq!(back.weights, v.weights);
        for i in 0..2 {
            assert!(back.emats[i].sub(&v.emats[i]).is_zero());
            assert!(back.fmats[i].sub(&v.fmats[i]).is_zero());
        }
    }
}
