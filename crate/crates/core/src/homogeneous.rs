//! Quantum homogeneous superspaces: the invariant subalgebra E_q, the
//! section spaces H_q(V) of induced supervector bundles, holomorphic
//! sections O_q(V), the trivialization / projectivity witnesses, and
//! the Frobenius-reciprocity and Borel-Weil style verifications.

use crate::context::Context;
use crate::coordring::{
    antipode0, antipode0_inv, circ, coproduct0, counit0, dominant_weights_up_to, dot,
    matrix_coefficients, multiply, PWElement, PWIndex,
};
use crate::error::KernelError;
use crate::linalg::{EchelonSpan, Mat};
use crate::par::try_par_map;
use crate::repcore::{
    dual_data, hom_space, irreducible, lowest_weight_vectors, scoped_decompose, trivial_module,
    Intertwiner, Module, Scope,
};
use crate::rootdata::WeightVec;
use crate::scalars::RatFunc;
use crate::uqalg::{antipode_inv_word, counit_word, Gen, Word};

/// The reductive / parabolic subalgebra selector is exactly the scoped
/// generator set from repcore.
pub type SubalgebraSpec = Scope;

/// One basis section: the row index i of ζ_i = Σ_j φ(w_j) ⊗
/// t~^{(lambda)}_{ij} together with the block and Hom-basis position.
#[derive(Clone, Debug)]
pub struct Section {
    pub lambda: Vec<i64>,
    pub hom_index: usize,
    pub row: usize,
}

#[derive(Clone, Debug)]
pub struct SectionBlock {
    pub lambda: Vec<i64>,
    /// d_lambda, the number of row indices per Hom-basis element
    pub d: usize,
    pub homs: Vec<Intertwiner>,
}

#[derive(Clone, Debug)]
pub struct SectionSpace {
    pub scope: Scope,
    pub v: Module,
    pub cutoff: usize,
    pub blocks: Vec<SectionBlock>,
}

impl SectionSpace {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.homs.len() * b.d).sum()
    }

    pub fn block_dims(&self) -> Vec<(Vec<i64>, usize)> {
        self.blocks
            .iter()
            .map(|b| (b.lambda.clone(), b.homs.len() * b.d))
            .collect()
    }

    pub fn basis(&self) -> Vec<Section> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for t in 0..b.homs.len() {
                for i in 0..b.d {
                    out.push(Section { lambda: b.lambda.clone(), hom_index: t, row: i });
                }
            }
        }
        out
    }

    pub fn hom(&self, sec: &Section) -> &Intertwiner {
        let b = self
            .blocks
            .iter()
            .find(|b| b.lambda == sec.lambda)
            .expect("section block exists");
        &b.homs[sec.hom_index]
    }
}

/// An element of V (x) T_q: one PW element per V basis vector.
pub type VElement = Vec<PWElement>;

pub fn velem_zero(d: usize) -> VElement {
    vec![PWElement::zero(); d]
}

pub fn velem_add(a: &VElement, b: &VElement) -> VElement {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn velem_sub(a: &VElement, b: &VElement) -> VElement {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn velem_scaled(a: &VElement, c: &RatFunc) -> VElement {
    a.iter().map(|x| x.scaled(c)).collect()
}

pub fn velem_is_zero(a: &VElement) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// x o zeta = sum_a (-1)^{[x][v_a]} v_a (x) (x o f_a).
pub fn circ_on(
    ctx: &Context,
    x: &Word,
    v_parity: &[u8],
    z: &VElement,
) -> Result<VElement, KernelError> {
    let xp = x.parity(ctx.n());
    let mut out = Vec::with_capacity(z.len());
    for (a, f) in z.iter().enumerate() {
        let mut g = circ(ctx, x, f)?;
        if xp == 1 && v_parity[a] == 1 {
            g = g.scaled(&-&RatFunc::one());
        }
        out.push(g);
    }
    Ok(out)
}

/// x . zeta = sum_a (-1)^{[x][v_a]} v_a (x) (x . f_a).
pub fn dot_on(
    ctx: &Context,
    x: &Word,
    v_parity: &[u8],
    z: &VElement,
) -> Result<VElement, KernelError> {
    let xp = x.parity(ctx.n());
    let mut out = Vec::with_capacity(z.len());
    for (a, f) in z.iter().enumerate() {
        let mut g = dot(ctx, x, f)?;
        if xp == 1 && v_parity[a] == 1 {
            g = g.scaled(&-&RatFunc::one());
        }
        out.push(g);
    }
    Ok(out)
}

/// Apply a plain matrix on the V leg: (M (x) id) zeta.
pub fn mat_on(m: &Mat, z: &VElement) -> VElement {
    let mut out = velem_zero(m.rows);
    for a in 0..m.rows {
        for b in 0..z.len() {
            if m[(a, b)].is_zero() {
                continue;
            }
            out[a] = out[a].add(&z[b].scaled(&m[(a, b)]));
        }
    }
    out
}

/// Scoped generators that define the equivariance conditions: all k's
/// plus the scoped e's and f's.
pub fn scope_words(scope: &Scope) -> Vec<Word> {
    let mut out: Vec<Word> = (1..=scope.n).map(|i| Word::gen(Gen::K(i, 1))).collect();
    out.extend(scope.ef_gens().into_iter().map(Word::gen));
    out
}

/// First violated defining equivariance condition on an expanded
/// element, if any: x o zeta = (S(x) (x) id) zeta for scoped x.
pub fn section_violation(
    ctx: &Context,
    v: &Module,
    scope: &Scope,
    z: &VElement,
) -> Result<Option<String>, KernelError> {
    for w in scope_words(scope) {
        let lhs = circ_on(ctx, &w, &v.parity, z)?;
        let (sg, sw) = crate::uqalg::antipode_word(&w, ctx.n());
        let m = v.word_matrix(&sw).scaled(&RatFunc::from_int(sg));
        let rhs = mat_on(&m, z);
        if !velem_is_zero(&velem_sub(&lhs, &rhs)) {
            return Ok(Some(format!("equivariance condition fails for {:?}", w)));
        }
    }
    Ok(None)
}

/// Invariance condition on a plain function: x o f =
/// eps(x) f for scoped x.
pub fn invariance_violation(
    ctx: &Context,
    scope: &Scope,
    f: &PWElement,
) -> Result<Option<String>, KernelError> {
    for w in scope_words(scope) {
        let lhs = circ(ctx, &w, f)?;
        let rhs = f.scaled(&RatFunc::from_int(counit_word(&w)));
        if !lhs.sub(&rhs).is_zero() {
            return Ok(Some(format!("invariance condition fails for {:?}", w)));
        }
    }
    Ok(None)
}

/// Expand a basis section into V (x) T_q.
pub fn expand_section(
    ctx: &Context,
    space: &SectionSpace,
    sec: &Section,
) -> Result<VElement, KernelError> {
    let phi = space.hom(sec);
    let tt = crate::coordring::tilde_table(ctx, &sec.lambda)?;
    let dv = space.v.dim;
    let dl = tt.len();
    let mut out = velem_zero(dv);
    for a in 0..dv {
        for j in 0..dl {
            if phi.matrix[(a, j)].is_zero() {
                continue;
            }
            out[a] = out[a].add(&tt[sec.row][j].scaled(&phi.matrix[(a, j)]));
        }
    }
    Ok(out)
}

/// The parity of a basis section: [phi] + [i].
pub fn section_parity(ctx: &Context, space: &SectionSpace, sec: &Section) -> Result<u8, KernelError> {
    let reg = irreducible(ctx, &sec.lambda)?;
    Ok((space.hom(sec).parity + reg.parity[sec.row]) % 2)
}

/// H_q(V) at cutoff K: per dominant lambda with |lambda| <= K, a basis
/// of scoped intertwiners W(lambda) -> V; every section is re-checked
/// against the defining equivariance condition after construction.
pub fn sections(
    ctx: &Context,
    v: &Module,
    scope: &Scope,
    cutoff: usize,
) -> Result<SectionSpace, KernelError> {
    let n = ctx.n();
    if v.n != n {
        return Err(KernelError::RankMismatch(format!(
            "module rank {} vs context rank {}",
            v.n, n
        )));
    }
    let mut space = SectionSpace {
        scope: scope.clone(),
        v: v.clone(),
        cutoff,
        blocks: Vec::new(),
    };
    if !v.is_integral(&ctx.datum) {
        return Ok(space);
    }
    let lambdas = dominant_weights_up_to(n, cutoff);
    let blocks = try_par_map(lambdas, |lam| -> Result<SectionBlock, KernelError> {
        let w = irreducible(ctx, &lam)?;
        let homs = hom_space(&w, v, scope);
        Ok(SectionBlock { lambda: lam, d: w.dim, homs })
    })?;
    space.blocks = blocks.into_iter().filter(|b| !b.homs.is_empty()).collect();
    for sec in space.basis() {
        let z = expand_section(ctx, &space, &sec)?;
        if let Some(msg) = section_violation(ctx, v, scope, &z)? {
            return Err(KernelError::Internal(format!(
                "constructed section {:?} is invalid: {}",
                sec, msg
            )));
        }
    }
    Ok(space)
}

/// Claimed-versus-computed multiplicity diagnostic for the invariant
/// subalgebra: for blocks m*gamma with gamma = 2 eps_1 the claimed
/// count is the number of partitions of m into at most N = n - |Theta|
/// parts; the computed count is the actual scoped Hom dimension.
#[derive(Clone, Debug)]
pub struct CentralDiagnostic {
    pub n_central: i64,
    pub entries: Vec<(i64, usize, usize)>, // (m, claimed, computed)
}

fn partitions_at_most(m: i64, parts: i64) -> usize {
    fn rec(m: i64, max: i64, parts: i64) -> usize {
        if m == 0 {
            return 1;
        }
        if parts == 0 || max == 0 {
            return 0;
        }
        let mut total = 0;
        for first in (1..=max.min(m)).rev() {
            total += rec(m - first, first, parts - 1);
        }
        total
    }
    rec(m, m, parts)
}

/// E_q = H_q(trivial) at cutoff K, with the multiplicity diagnostic.
pub fn invariant_functions(
    ctx: &Context,
    theta: &[usize],
    cutoff: usize,
) -> Result<(SectionSpace, CentralDiagnostic), KernelError> {
    let n = ctx.n();
    let scope = Scope::reductive(n, theta.to_vec());
    let space = sections(ctx, &trivial_module(n), &scope, cutoff)?;
    let n_central = n as i64 - scope.theta.len() as i64;
    let mut entries = Vec::new();
    let mut m = 0i64;
    while 2 * m <= cutoff as i64 {
        let mut lam = vec![0i64; n];
        lam[0] = 2 * m;
        let w = irreducible(ctx, &lam)?;
        let computed = hom_space(&w, &trivial_module(n), &scope).len();
        entries.push((m, partitions_at_most(m, n_central), computed));
        m += 1;
    }
    Ok((space, CentralDiagnostic { n_central, entries }))
}

/// Flattened E_q basis as plain coordinate-ring elements.
pub fn eq_basis(
    ctx: &Context,
    theta: &[usize],
    cutoff: usize,
) -> Result<Vec<PWElement>, KernelError> {
    let (space, _) = invariant_functions(ctx, theta, cutoff)?;
    let mut out = Vec::new();
    for sec in space.basis() {
        let z = expand_section(ctx, &space, &sec)?;
        out.push(z.into_iter().next().expect("trivial module has dim 1"));
    }
    Ok(out)
}

/// Linear coordinates of a VElement over the joint (component, PW
/// index) support, for span membership tests.
fn velem_coords(z: &VElement, support: &[(usize, PWIndex)]) -> Option<Vec<RatFunc>> {
    let mut pos = std::collections::BTreeMap::new();
    for (k, key) in support.iter().enumerate() {
        pos.insert(key.clone(), k);
    }
    let mut out = vec![RatFunc::zero(); support.len()];
    for (a, f) in z.iter().enumerate() {
        for (idx, c) in &f.terms {
            match pos.get(&(a, idx.clone())) {
                Some(&k) => out[k] = c.clone(),
                None => return None,
            }
        }
    }
    Some(out)
}

fn velem_support(zs: &[VElement]) -> Vec<(usize, PWIndex)> {
    let mut set = std::collections::BTreeSet::new();
    for z in zs {
        for (a, f) in z.iter().enumerate() {
            for idx in f.terms.keys() {
                set.insert((a, idx.clone()));
            }
        }
    }
    set.into_iter().collect()
}

/// Echelon span of a family of VElements over their joint support.
pub struct VSpan {
    support: Vec<(usize, PWIndex)>,
    span: EchelonSpan,
}

impl VSpan {
    pub fn new(zs: &[VElement]) -> Self {
        let support = velem_support(zs);
        let mut span = EchelonSpan::new();
        for z in zs {
            let v = velem_coords(z, &support).expect("basis coords over own support");
            span.insert(&v);
        }
        VSpan { support, span }
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn contains(&self, z: &VElement) -> bool {
        match velem_coords(z, &self.support) {
            Some(v) => self.span.contains(&v),
            None => false,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct StructureReport {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, cond: bool, msg: impl Fn() -> String) {
        self.checks += 1;
        if !cond {
            self.violations.push(msg());
        }
    }
}

/// Verify the module structures on a section space: the two-sided E_q
/// action, the left U_q dot action (with closure into the same basis),
/// the graded circ/dot commutation, and the right T_q coaction.
pub fn module_structure_check(
    ctx: &Context,
    space: &SectionSpace,
) -> Result<StructureReport, KernelError> {
    let mut report = StructureReport::default();
    let v = &space.v;
    let basis = space.basis();
    let expanded: Vec<VElement> = basis
        .iter()
        .map(|s| expand_section(ctx, space, s))
        .collect::<Result<_, _>>()?;
    let span = VSpan::new(&expanded);
    let eq = eq_basis(ctx, &space.scope.theta, space.cutoff)?;

    // (i) two-sided E_q module: a . zeta and zeta . a satisfy
    // the defining equivariance condition
    for (k, a) in eq.iter().enumerate() {
        let ap = a.parity(ctx)?;
        for (si, z) in expanded.iter().enumerate() {
            let mut left = velem_zero(v.dim);
            let mut right = velem_zero(v.dim);
            for b in 0..v.dim {
                let mut l = multiply(ctx, a, &z[b])?;
                if ap == 1 && v.parity[b] == 1 {
                    l = l.scaled(&-&RatFunc::one());
                }
                left[b] = l;
                right[b] = multiply(ctx, &z[b], a)?;
            }
            let lv = section_violation(ctx, v, &space.scope, &left)?;
            let rv = section_violation(ctx, v, &space.scope, &right)?;
            report.record(lv.is_none(), || {
                format!("E_q left action: a#{} on section #{}: {:?}", k, si, lv)
            });
            report.record(rv.is_none(), || {
                format!("E_q right action: a#{} on section #{}: {:?}", k, si, rv)
            });
        }
    }

    // (ii) left U_q module under dot: section condition + closure in
    // the same truncated basis
    let mut gens: Vec<Word> = Vec::new();
    for i in 1..=ctx.n() {
        gens.push(Word::gen(Gen::E(i)));
        gens.push(Word::gen(Gen::F(i)));
        gens.push(Word::gen(Gen::K(i, 1)));
    }
    for x in &gens {
        for (si, z) in expanded.iter().enumerate() {
            let xz = dot_on(ctx, x, &v.parity, z)?;
            let sv = section_violation(ctx, v, &space.scope, &xz)?;
            report.record(sv.is_none(), || {
                format!("dot action: {:?} on section #{}: {:?}", x, si, sv)
            });
            report.record(span.contains(&xz), || {
                format!("dot closure: {:?} on section #{} escapes the basis span", x, si)
            });
        }
    }

    // graded commutation p o (x . zeta) = (-1)^{[p][x]} x . (p o zeta)
    for p in scope_words(&space.scope) {
        for x in &gens {
            for (si, z) in expanded.iter().enumerate() {
                let lhs = circ_on(ctx, &p, &v.parity, &dot_on(ctx, x, &v.parity, z)?)?;
                let mut rhs = dot_on(ctx, x, &v.parity, &circ_on(ctx, &p, &v.parity, z)?)?;
                if p.parity(ctx.n()) == 1 && x.parity(ctx.n()) == 1 {
                    rhs = velem_scaled(&rhs, &-&RatFunc::one());
                }
                report.record(velem_is_zero(&velem_sub(&lhs, &rhs)), || {
                    format!(
                        "circ/dot commutation: p={:?} x={:?} section #{}",
                        p, x, si
                    )
                });
            }
        }
    }

    // (iii) right T_q coaction omega = id (x) (id (x) S^{-1}) Delta
    // maps sections into sections (x) T_q
    for (si, z) in expanded.iter().enumerate() {
        // the section part of omega(zeta) is the second coproduct leg
        // (the tilde-basis column is what sections pin down); group by
        // the S^{-1}-twisted first leg and require every grouped
        // component to stay inside the section span
        let mut grouped: std::collections::BTreeMap<PWIndex, VElement> =
            std::collections::BTreeMap::new();
        for (a, f) in z.iter().enumerate() {
            for (c, first, second) in coproduct0(ctx, f)? {
                let sinv = antipode0_inv(
                    ctx,
                    &PWElement { terms: [(first, RatFunc::one())].into_iter().collect() },
                )?;
                for (d_idx, d_c) in &sinv.terms {
                    let entry = grouped
                        .entry(d_idx.clone())
                        .or_insert_with(|| velem_zero(v.dim));
                    entry[a].add_term(second.clone(), &(&c * d_c));
                }
            }
        }
        for (d_idx, xi) in &grouped {
            report.record(span.contains(xi), || {
                format!(
                    "coaction: section #{} component at {:?} escapes the section span",
                    si, d_idx
                )
            });
        }
    }

    Ok(report)
}

/// Matrix coefficients carrying the Koszul sign of the comodule map
/// delta(w_a) = sum_b (-1)^{[b]([a]+[b])} w_b (x) t_{ba}, the form
/// compatible with the signed coproduct Delta_0.
pub fn delta_coefficients(
    ctx: &Context,
    m: &Module,
) -> Result<Vec<Vec<PWElement>>, KernelError> {
    let mut c = matrix_coefficients(ctx, m)?;
    for b in 0..m.dim {
        for a in 0..m.dim {
            if m.parity[b] == 1 && (m.parity[a] + m.parity[b]) % 2 == 1 {
                c[b][a] = c[b][a].scaled(&-&RatFunc::one());
            }
        }
    }
    Ok(c)
}

/// Trivialization data for a genuine U_q module W: the right-module
/// isomorphism eta and the left-module isomorphism kappa between
/// H_q(W) and W (x) E_q, as exact maps on elements, plus the identity
/// and intertwining checks.
pub struct Trivialization {
    pub coeffs: Vec<Vec<PWElement>>,
    pub v_parity: Vec<u8>,
}

impl Trivialization {
    pub fn new(ctx: &Context, w: &Module) -> Result<Self, KernelError> {
        Ok(Trivialization {
            coeffs: delta_coefficients(ctx, w)?,
            v_parity: w.parity.clone(),
        })
    }

    /// eta = (mult) (delta (x) id): component b of eta(zeta) is
    /// sum_a c_{ba} f_a.
    pub fn eta(&self, ctx: &Context, z: &VElement) -> Result<VElement, KernelError> {
        let d = self.v_parity.len();
        let mut out = velem_zero(d);
        for b in 0..d {
            for a in 0..d {
                if self.coeffs[b][a].is_zero() || z[a].is_zero() {
                    continue;
                }
                out[b] = out[b].add(&multiply(ctx, &self.coeffs[b][a], &z[a])?);
            }
        }
        Ok(out)
    }

    /// eta^{-1} = (mult) (id (x) S_0 (x) id) (delta (x) id).
    pub fn eta_inv(&self, ctx: &Context, z: &VElement) -> Result<VElement, KernelError> {
        let d = self.v_parity.len();
        let mut out = velem_zero(d);
        for b in 0..d {
            for a in 0..d {
                if self.coeffs[b][a].is_zero() || z[a].is_zero() {
                    continue;
                }
                let s = antipode0(ctx, &self.coeffs[b][a])?;
                out[b] = out[b].add(&multiply(ctx, &s, &z[a])?);
            }
        }
        Ok(out)
    }

    /// kappa = (mult) (id (x) P (S_0^2 (x) id)) (delta (x) id), with
    /// the graded flip P(a (x) b) = (-1)^{[a][b]} b (x) a; zp is the
    /// parity of the section zeta.
    pub fn kappa(&self, ctx: &Context, z: &VElement, zp: u8) -> Result<VElement, KernelError> {
        self.kappa_impl(ctx, z, zp, false)
    }

    /// kappa^{-1}: the same shape with S_0 in place of S_0^2.
    pub fn kappa_inv(&self, ctx: &Context, z: &VElement, zp: u8) -> Result<VElement, KernelError> {
        self.kappa_impl(ctx, z, zp, true)
    }

    fn kappa_impl(
        &self,
        ctx: &Context,
        z: &VElement,
        zp: u8,
        inverse: bool,
    ) -> Result<VElement, KernelError> {
        let d = self.v_parity.len();
        let mut out = velem_zero(d);
        for b in 0..d {
            for a in 0..d {
                if self.coeffs[b][a].is_zero() || z[a].is_zero() {
                    continue;
                }
                let cp = (self.v_parity[b] + self.v_parity[a]) % 2;
                let fp = (zp + self.v_parity[a]) % 2;
                let sign = if cp == 1 && fp == 1 { -1 } else { 1 };
                let s = if inverse {
                    antipode0(ctx, &self.coeffs[b][a])?
                } else {
                    antipode0(ctx, &antipode0(ctx, &self.coeffs[b][a])?)?
                };
                let term = multiply(ctx, &z[a], &s)?.scaled(&RatFunc::from_int(sign));
                out[b] = out[b].add(&term);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct TrivializationReport {
    pub structure: StructureReport,
    pub h_block_dims: Vec<(Vec<i64>, usize)>,
    pub weq_block_dims: Vec<(Vec<i64>, usize)>,
}

impl TrivializationReport {
    pub fn ok(&self) -> bool {
        self.structure.ok()
    }
}

/// Build and verify the trivialization for a genuine U_q module W at a
/// reductive Theta: eta / eta^{-1} are mutually inverse, land in the
/// right spaces, and intertwine the one-sided E_q actions; likewise
/// kappa on the left.
pub fn trivialization(
    ctx: &Context,
    w: &Module,
    theta: &[usize],
    cutoff: usize,
) -> Result<TrivializationReport, KernelError> {
    let scope = Scope::reductive(ctx.n(), theta.to_vec());
    let space = sections(ctx, w, &scope, cutoff)?;
    let triv = Trivialization::new(ctx, w)?;
    let eq = eq_basis(ctx, theta, cutoff)?;
    let mut report = StructureReport::default();

    let basis = space.basis();
    let expanded: Vec<VElement> = basis
        .iter()
        .map(|s| expand_section(ctx, &space, s))
        .collect::<Result<_, _>>()?;
    let parities: Vec<u8> = basis
        .iter()
        .map(|s| section_parity(ctx, &space, s))
        .collect::<Result<_, _>>()?;

    for (si, z) in expanded.iter().enumerate() {
        let ez = triv.eta(ctx, z)?;
        // eta lands in W (x) E_q: each component is invariant
        for (b, f) in ez.iter().enumerate() {
            let v = invariance_violation(ctx, &scope, f)?;
            report.record(v.is_none(), || {
                format!("eta image of section #{} component {}: {:?}", si, b, v)
            });
        }
        // eta^{-1} eta = id
        let back = triv.eta_inv(ctx, &ez)?;
        report.record(velem_is_zero(&velem_sub(&back, z)), || {
            format!("eta_inv(eta) != id on section #{}", si)
        });
        // kappa likewise
        let kz = triv.kappa(ctx, z, parities[si])?;
        for (b, f) in kz.iter().enumerate() {
            let v = invariance_violation(ctx, &scope, f)?;
            report.record(v.is_none(), || {
                format!("kappa image of section #{} component {}: {:?}", si, b, v)
            });
        }
        let kback = triv.kappa_inv(ctx, &kz, parities[si])?;
        report.record(velem_is_zero(&velem_sub(&kback, z)), || {
            format!("kappa_inv(kappa) != id on section #{}", si)
        });
    }

    // eta eta^{-1} = id on W (x) E_q basis elements, and eta^{-1}
    // produces genuine sections
    for b in 0..w.dim {
        for (k, e) in eq.iter().enumerate() {
            let mut z = velem_zero(w.dim);
            z[b] = e.clone();
            let back = triv.eta_inv(ctx, &z)?;
            let sv = section_violation(ctx, w, &scope, &back)?;
            report.record(sv.is_none(), || {
                format!("eta_inv(w_{} (x) e#{}) is not a section: {:?}", b, k, sv)
            });
            let fwd = triv.eta(ctx, &back)?;
            report.record(velem_is_zero(&velem_sub(&fwd, &z)), || {
                format!("eta(eta_inv) != id on w_{} (x) e#{}", b, k)
            });
        }
    }

    // right-module intertwining: eta(zeta a) = eta(zeta) a, sampled
    // against the low-degree E_q elements
    let sample: Vec<&PWElement> = eq.iter().take(4).collect();
    for (si, z) in expanded.iter().enumerate() {
        for (k, a) in sample.iter().enumerate() {
            let za: VElement = z
                .iter()
                .map(|f| multiply(ctx, f, a))
                .collect::<Result<_, _>>()?;
            let lhs = triv.eta(ctx, &za)?;
            let ez = triv.eta(ctx, z)?;
            let rhs: VElement = ez
                .iter()
                .map(|f| multiply(ctx, f, a))
                .collect::<Result<_, _>>()?;
            report.record(velem_is_zero(&velem_sub(&lhs, &rhs)), || {
                format!("eta right-intertwining fails: section #{}, a#{}", si, k)
            });
        }
    }

    // left-module intertwining for kappa: kappa(a zeta) = a kappa(zeta)
    for (si, z) in expanded.iter().enumerate() {
        for (k, a) in sample.iter().enumerate() {
            let ap = a.parity(ctx)?;
            let az: VElement = z
                .iter()
                .enumerate()
                .map(|(bb, f)| {
                    let mut t = multiply(ctx, a, f)?;
                    if ap == 1 && w.parity[bb] == 1 {
                        t = t.scaled(&-&RatFunc::one());
                    }
                    Ok::<_, KernelError>(t)
                })
                .collect::<Result<_, _>>()?;
            let lhs = triv.kappa(ctx, &az, (parities[si] + ap) % 2)?;
            let kz = triv.kappa(ctx, z, parities[si])?;
            let rhs: VElement = kz
                .iter()
                .enumerate()
                .map(|(bb, f)| {
                    let mut t = multiply(ctx, a, f)?;
                    if ap == 1 && w.parity[bb] == 1 {
                        t = t.scaled(&-&RatFunc::one());
                    }
                    Ok::<_, KernelError>(t)
                })
                .collect::<Result<_, _>>()?;
            report.record(velem_is_zero(&velem_sub(&lhs, &rhs)), || {
                format!("kappa left-intertwining fails: section #{}, a#{}", si, k)
            });
        }
    }

    let (eq_space, _) = invariant_functions(ctx, theta, cutoff)?;
    let weq = eq_space
        .block_dims()
        .into_iter()
        .map(|(lam, d)| (lam, d * w.dim))
        .collect();
    Ok(TrivializationReport {
        structure: report,
        h_block_dims: space.block_dims(),
        weq_block_dims: weq,
    })
}

/// Direct sum of modules, block diagonal in the given order.
pub fn direct_sum(parts: &[&Module]) -> Module {
    let n = parts[0].n;
    let dim: usize = parts.iter().map(|m| m.dim).sum();
    let mut parity = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for m in parts {
        parity.extend_from_slice(&m.parity);
        weights.extend_from_slice(&m.weights);
    }
    let mut emats = Vec::new();
    let mut fmats = Vec::new();
    for gi in 0..n {
        let mut e = Mat::zero(dim, dim);
        let mut f = Mat::zero(dim, dim);
        let mut off = 0;
        for m in parts {
            for r in 0..m.dim {
                for c in 0..m.dim {
                    e[(off + r, off + c)] = m.emats[gi][(r, c)].clone();
                    f[(off + r, off + c)] = m.fmats[gi][(r, c)].clone();
                }
            }
            off += m.dim;
        }
        emats.push(e);
        fmats.push(f);
    }
    Module { n, dim, parity, weights, emats, fmats }
}

#[derive(Clone, Debug)]
pub struct ProjectivityReport {
    pub structure: StructureReport,
    pub summands: Vec<ProjectivitySummand>,
}

#[derive(Clone, Debug)]
pub struct ProjectivitySummand {
    pub mu: WeightVec,
    pub mu_hat: WeightVec,
    pub complement_dim: usize,
    pub block_dims_v: Vec<(Vec<i64>, usize)>,
    pub block_dims_perp: Vec<(Vec<i64>, usize)>,
    pub block_dims_w: Vec<(Vec<i64>, usize)>,
}

impl ProjectivityReport {
    pub fn ok(&self) -> bool {
        self.structure.ok()
    }
}

/// Exhibit H_q(V) as a direct summand of a trivialized H_q(W(mu_hat)):
/// embed each scoped-irreducible piece of V into the U_q irreducible
/// with the dominant orbit representative of its highest weight, build
/// the complement, and verify the blockwise section-count bookkeeping.
pub fn projectivity_witness(
    ctx: &Context,
    v: &Module,
    theta: &[usize],
    cutoff: usize,
) -> Result<ProjectivityReport, KernelError> {
    let scope = Scope::reductive(ctx.n(), theta.to_vec());
    let mut report = StructureReport::default();
    let mut summands = Vec::new();
    for raw in scoped_decompose(v, &scope)? {
        let mu_hat = ctx.datum.dominant_in_weyl_orbit(&raw.highest_weight)?;
        let lam = mu_hat
            .as_ints()
            .ok_or_else(|| KernelError::NotIntegral(format!("{}", mu_hat)))?;
        let w = irreducible(ctx, &lam)?;
        let embeddings = hom_space(&raw.module, &w, &scope);
        report.record(!embeddings.is_empty(), || {
            format!("no scoped embedding of the {} piece into W({:?})", raw.highest_weight, lam)
        });
        if embeddings.is_empty() {
            continue;
        }
        // complement: the scoped summands of W(mu_hat) other than one
        // copy of V_s
        let mut matched = false;
        let mut rest: Vec<Module> = Vec::new();
        for cand in scoped_decompose(&w, &scope)? {
            let iso = !matched
                && cand.module.dim == raw.module.dim
                && !hom_space(&raw.module, &cand.module, &scope).is_empty();
            if iso {
                matched = true;
            } else {
                rest.push(cand.module);
            }
        }
        report.record(matched, || {
            format!("embedded copy of the {} piece not found inside W({:?})", raw.highest_weight, lam)
        });
        let refs: Vec<&Module> = rest.iter().collect();
        let perp = if refs.is_empty() {
            None
        } else {
            Some(direct_sum(&refs))
        };
        let hv = sections(ctx, &raw.module, &scope, cutoff)?;
        let hperp = match &perp {
            Some(p) => sections(ctx, p, &scope, cutoff)?,
            None => sections(ctx, &trivial_module(ctx.n()), &scope, 0)?,
        };
        let hw = sections(ctx, &w, &scope, cutoff)?;
        // blockwise bookkeeping: dim H_q(V)_lam + dim H_q(V^perp)_lam
        // = dim H_q(W)_lam
        let dim_at = |s: &SectionSpace, lam: &Vec<i64>| {
            s.block_dims()
                .into_iter()
                .find(|(l, _)| l == lam)
                .map(|(_, d)| d)
                .unwrap_or(0)
        };
        for lam_b in dominant_weights_up_to(ctx.n(), cutoff) {
            let a = dim_at(&hv, &lam_b) + if perp.is_some() { dim_at(&hperp, &lam_b) } else { 0 };
            let b = dim_at(&hw, &lam_b);
            report.record(a == b, || {
                format!(
                    "block {:?}: dim H_q(V) + dim H_q(V_perp) = {} but dim H_q(W) = {}",
                    lam_b, a, b
                )
            });
        }
        // and H_q(W) itself trivializes
        let triv = trivialization(ctx, &w, theta, cutoff)?;
        report.record(triv.ok(), || {
            format!("trivialization of W({:?}) failed: {:?}", lam, triv.structure.violations)
        });
        summands.push(ProjectivitySummand {
            mu: raw.highest_weight.clone(),
            mu_hat,
            complement_dim: perp.as_ref().map(|p| p.dim).unwrap_or(0),
            block_dims_v: hv.block_dims(),
            block_dims_perp: hperp.block_dims(),
            block_dims_w: hw.block_dims(),
        });
    }
    Ok(ProjectivityReport { structure: report, summands })
}

/// O_q(V) at cutoff K: same construction as sections, with the
/// parabolic generator scope.
pub fn holomorphic_sections(
    ctx: &Context,
    v: &Module,
    theta: &[usize],
    cutoff: usize,
) -> Result<SectionSpace, KernelError> {
    let scope = Scope::parabolic(ctx.n(), theta.to_vec());
    sections(ctx, v, &scope, cutoff)
}

#[derive(Clone, Debug)]
pub struct BorelWeilReport {
    pub structure: StructureReport,
    pub mu_tilde: WeightVec,
    pub nu: Option<Vec<i64>>,
    pub dim: usize,
}

impl BorelWeilReport {
    pub fn ok(&self) -> bool {
        self.structure.ok()
    }
}

/// Build the irreducible U_k(Theta)-module with highest weight mu.
pub fn theta_irreducible(
    ctx: &Context,
    mu: &WeightVec,
    theta: &[usize],
) -> Result<Module, KernelError> {
    let scope = Scope::reductive(ctx.n(), theta.to_vec());
    if theta.is_empty() {
        return Ok(crate::repcore::one_dim_module(ctx.n(), mu.clone()));
    }
    let mu_hat = ctx.datum.dominant_in_weyl_orbit(mu)?;
    let lam = mu_hat
        .as_ints()
        .ok_or_else(|| KernelError::NotIntegral(format!("{}", mu)))?;
    let w = irreducible(ctx, &lam)?;
    for raw in scoped_decompose(&w, &scope)? {
        if &raw.highest_weight == mu {
            return Ok(raw.module);
        }
    }
    Err(KernelError::Invalid(format!(
        "no Theta-irreducible of highest weight {} inside W({:?})",
        mu, lam
    )))
}

/// Verify the Borel-Weil style statement for the line/module of
/// highest weight mu at parabolic Theta: O_q(V_mu) is W((-mu~)^dagger)
/// under the dot action when -mu~ is dominant integral, and zero
/// otherwise.
pub fn borel_weil_check(
    ctx: &Context,
    mu: &WeightVec,
    theta: &[usize],
    cutoff: usize,
) -> Result<BorelWeilReport, KernelError> {
    let n = ctx.n();
    let mut report = StructureReport::default();
    let v = theta_irreducible(ctx, mu, theta)?;
    let red = Scope::reductive(n, theta.to_vec());
    let lows = lowest_weight_vectors(&v, &red);
    if lows.len() != 1 {
        return Err(KernelError::Invalid(format!(
            "V_mu is not irreducible: {} lowest weight vectors",
            lows.len()
        )));
    }
    let mu_tilde = lows[0].0.clone();
    let (vp, _) = crate::repcore::extend_to_parabolic(&v, theta)?;
    let space = holomorphic_sections(ctx, &vp, theta, cutoff)?;

    let minus = -&mu_tilde;
    let nu = if ctx.datum.is_integral(&minus) && ctx.datum.is_dominant(&minus) {
        let m = minus.as_ints().expect("integral dominant weight");
        Some(dual_data(ctx, &m)?.lambda_dagger.clone())
    } else {
        None
    };

    match &nu {
        None => {
            report.record(space.dim() == 0, || {
                format!("-mu~ not dominant but O_q has dimension {}", space.dim())
            });
        }
        Some(nu) => {
            let reg = irreducible(ctx, nu)?;
            report.record(space.dim() == reg.dim, || {
                format!("dim O_q = {} but d_nu = {}", space.dim(), reg.dim)
            });
            let contributing: Vec<_> = space.blocks.iter().filter(|b| !b.homs.is_empty()).collect();
            let single = contributing.len() == 1
                && contributing[0].lambda == *nu
                && contributing[0].homs.len() == 1;
            report.record(single, || {
                format!(
                    "expected a single contributing block at {:?}, got {:?}",
                    nu,
                    space.block_dims()
                )
            });
            if single {
                // action formula: x . zeta_i =
                // (-1)^{[x][phi]} sum_j t^{(nu)}_{ji}(x) zeta_j
                let phi = &contributing[0].homs[0];
                let basis = space.basis();
                let expanded: Vec<VElement> = basis
                    .iter()
                    .map(|s| expand_section(ctx, &space, s))
                    .collect::<Result<_, _>>()?;
                let mut gens: Vec<Word> = Vec::new();
                for i in 1..=n {
                    gens.push(Word::gen(Gen::E(i)));
                    gens.push(Word::gen(Gen::F(i)));
                    gens.push(Word::gen(Gen::K(i, 1)));
                }
                for x in &gens {
                    let t = reg.word_matrix(x);
                    let sgn = if x.parity(n) == 1 && phi.parity == 1 { -1 } else { 1 };
                    for (i, z) in expanded.iter().enumerate() {
                        let lhs = dot_on(ctx, x, &vp.parity, z)?;
                        let mut rhs = velem_zero(vp.dim);
                        for (j, zj) in expanded.iter().enumerate() {
                            if t[(j, i)].is_zero() {
                                continue;
                            }
                            rhs = velem_add(&rhs, &velem_scaled(zj, &t[(j, i)]));
                        }
                        rhs = velem_scaled(&rhs, &RatFunc::from_int(sgn));
                        report.record(velem_is_zero(&velem_sub(&lhs, &rhs)), || {
                            format!("action formula fails for {:?} at zeta_{}", x, i)
                        });
                    }
                }
            }
        }
    }

    Ok(BorelWeilReport {
        structure: report,
        mu_tilde,
        nu,
        dim: space.dim(),
    })
}

/// The U_q-module carried by one (lambda, phi) block of sections under
/// the dot action: x . zeta_i = sum_k (-1)^{[x]([phi]+[k])}
/// D(S^{-1}(x))_{ik} zeta_k with D the dual-module action.
pub fn section_block_module(
    ctx: &Context,
    lambda: &[i64],
    phi_parity: u8,
) -> Result<Module, KernelError> {
    let reg = irreducible(ctx, lambda)?;
    let dd = dual_data(ctx, lambda)?;
    let d = reg.dim;
    let parity: Vec<u8> = (0..d).map(|i| (reg.parity[i] + phi_parity) % 2).collect();
    let weights = reg.weights.clone();
    let n = ctx.n();
    let mut emats = Vec::new();
    let mut fmats = Vec::new();
    for gi in 1..=n {
        for (is_e, store) in [(true, &mut emats), (false, &mut fmats)] {
            let g = if is_e { Gen::E(gi) } else { Gen::F(gi) };
            let gw = Word::gen(g);
            let gp = gw.parity(n);
            let (sg, sw) = antipode_inv_word(&gw, n);
            let dm = dd.module.word_matrix(&sw).scaled(&RatFunc::from_int(sg));
            let mut m = Mat::zero(d, d);
            for k in 0..d {
                for i in 0..d {
                    if dm[(i, k)].is_zero() {
                        continue;
                    }
                    let sign = if gp == 1 && (phi_parity + reg.parity[k]) % 2 == 1 {
                        -1
                    } else {
                        1
                    };
                    m[(k, i)] = dm[(i, k)].scaled(&RatFunc::from_int(sign));
                }
            }
            store.push(m);
        }
    }
    Ok(Module { n, dim: d, parity, weights, emats, fmats })
}

#[derive(Clone, Debug)]
pub struct FrobeniusReport {
    pub structure: StructureReport,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
}

impl FrobeniusReport {
    pub fn ok(&self) -> bool {
        self.structure.ok()
    }
}

/// Frobenius reciprocity: Hom_{U_q}(W, H_q(V)) = Hom_{U_k}(W, V), with
/// the canonical maps F: psi -> psi(.)(1) and Fbar: phi -> (phi (x) S)
/// delta verified mutually inverse on bases.
pub fn frobenius_check(
    ctx: &Context,
    w: &Module,
    v: &Module,
    theta: &[usize],
    cutoff: usize,
) -> Result<FrobeniusReport, KernelError> {
    let n = ctx.n();
    let scope = Scope::reductive(n, theta.to_vec());
    let mut report = StructureReport::default();

    // precondition: every constituent of W fits under the cutoff
    let dec = crate::repcore::decompose(ctx, w)?;
    for s in &dec.summands {
        let size: i64 = s.lambda.iter().sum();
        if size > cutoff as i64 {
            return Err(KernelError::Invalid(format!(
                "cutoff {} too small for constituent {:?}",
                cutoff, s.lambda
            )));
        }
    }

    // RHS: scoped Hom space
    let rhs = hom_space(w, v, &scope);

    // LHS: per (lambda, phi) section block, Hom_{U_q}(W, block)
    let space = sections(ctx, v, &scope, cutoff)?;
    let full = Scope::full(n);
    let mut lhs: Vec<(Section, Intertwiner)> = Vec::new();
    for b in &space.blocks {
        for (t, phi) in b.homs.iter().enumerate() {
            let block_mod = section_block_module(ctx, &b.lambda, phi.parity)?;
            // safety: the constructed block module really is the dot
            // action on the expanded sections
            let reg = irreducible(ctx, &b.lambda)?;
            let secs: Vec<Section> = (0..reg.dim)
                .map(|i| Section { lambda: b.lambda.clone(), hom_index: t, row: i })
                .collect();
            let expanded: Vec<VElement> = secs
                .iter()
                .map(|s| expand_section(ctx, &space, s))
                .collect::<Result<_, _>>()?;
            let mut gens: Vec<Word> = Vec::new();
            for i in 1..=n {
                gens.push(Word::gen(Gen::E(i)));
                gens.push(Word::gen(Gen::F(i)));
                gens.push(Word::gen(Gen::K(i, 1)));
            }
            for x in &gens {
                let bm = block_mod.word_matrix(x);
                for (i, z) in expanded.iter().enumerate() {
                    let lhs_e = dot_on(ctx, x, &v.parity, z)?;
                    let mut rhs_e = velem_zero(v.dim);
                    for (k, zk) in expanded.iter().enumerate() {
                        if bm[(k, i)].is_zero() {
                            continue;
                        }
                        rhs_e = velem_add(&rhs_e, &velem_scaled(zk, &bm[(k, i)]));
                    }
                    report.record(velem_is_zero(&velem_sub(&lhs_e, &rhs_e)), || {
                        format!(
                            "block module action mismatch at {:?}, phi #{}, {:?}, row {}",
                            b.lambda, t, x, i
                        )
                    });
                }
            }
            for alpha in hom_space(w, &block_mod, &full) {
                lhs.push((
                    Section { lambda: b.lambda.clone(), hom_index: t, row: 0 },
                    alpha,
                ));
            }
        }
    }
    report.record(lhs.len() == rhs.len(), || {
        format!("dim mismatch: LHS {} vs RHS {}", lhs.len(), rhs.len())
    });

    let coeffs = delta_coefficients(ctx, w)?;
    let fbar = |phi: &Intertwiner| -> Result<Vec<VElement>, KernelError> {
        // Fbar(phi)(w_c) = sum_a phi(w_a) (x) S_0(C[a][c])
        let mut out = Vec::with_capacity(w.dim);
        for c in 0..w.dim {
            let mut z = velem_zero(v.dim);
            for a in 0..w.dim {
                if coeffs[a][c].is_zero() {
                    continue;
                }
                let s = antipode0(ctx, &coeffs[a][c])?;
                for p in 0..v.dim {
                    if phi.matrix[(p, a)].is_zero() {
                        continue;
                    }
                    z[p] = z[p].add(&s.scaled(&phi.matrix[(p, a)]));
                }
            }
            out.push(z);
        }
        Ok(out)
    };

    // F(Fbar(phi)) = phi for every scoped hom phi: evaluate the T_q leg
    // at the identity
    for (k, phi) in rhs.iter().enumerate() {
        let imgs = fbar(phi)?;
        // the image must be made of sections: check the defining
        // condition on each column
        for (c, z) in imgs.iter().enumerate() {
            let sv = section_violation(ctx, v, &scope, z)?;
            report.record(sv.is_none(), || {
                format!("Fbar(phi#{}) column {} is not a section: {:?}", k, c, sv)
            });
        }
        let mut round = Mat::zero(v.dim, w.dim);
        for (c, z) in imgs.iter().enumerate() {
            for p in 0..v.dim {
                round[(p, c)] = counit0(ctx, &z[p])?;
            }
        }
        report.record(round == phi.matrix, || format!("F(Fbar) != id on phi #{}", k));
    }

    // Fbar(F(psi)) = psi for every U_q hom psi into the section space
    for (k, (sec0, alpha)) in lhs.iter().enumerate() {
        let phi = space.hom(&Section { lambda: sec0.lambda.clone(), hom_index: sec0.hom_index, row: 0 });
        let reg = irreducible(ctx, &sec0.lambda)?;
        // psi(w_c) = sum_i alpha[i, c] zeta_i, expanded
        let expanded: Vec<VElement> = (0..reg.dim)
            .map(|i| {
                expand_section(
                    ctx,
                    &space,
                    &Section { lambda: sec0.lambda.clone(), hom_index: sec0.hom_index, row: i },
                )
            })
            .collect::<Result<_, _>>()?;
        let psi_cols: Vec<VElement> = (0..w.dim)
            .map(|c| {
                let mut z = velem_zero(v.dim);
                for (i, zi) in expanded.iter().enumerate() {
                    if alpha.matrix[(i, c)].is_zero() {
                        continue;
                    }
                    z = velem_add(&z, &velem_scaled(zi, &alpha.matrix[(i, c)]));
                }
                z
            })
            .collect();
        // F(psi) = phi_matrix . alpha as a plain map W -> V
        let fpsi = Intertwiner {
            matrix: phi.matrix.mul(&alpha.matrix),
            parity: (phi.parity + alpha.parity) % 2,
        };
        let back = fbar(&fpsi)?;
        for c in 0..w.dim {
            report.record(velem_is_zero(&velem_sub(&back[c], &psi_cols[c])), || {
                format!("Fbar(F) != id on psi #{} column {}", k, c)
            });
        }
    }

    Ok(FrobeniusReport { structure: report, lhs_dim: lhs.len(), rhs_dim: rhs.len() })
}

#[derive(Clone, Debug)]
pub struct CorollaryReport {
    pub structure: StructureReport,
    pub dim: usize,
    pub block_dims: Vec<(Vec<i64>, usize)>,
}

impl CorollaryReport {
    pub fn ok(&self) -> bool {
        self.structure.ok()
    }
}

/// O_q(W) = W for a genuine U_q module W, witnessed by the explicit
/// embedding w_c -> sum_a w_a (x) S_0(C[a][c]).
pub fn corollary_check(
    ctx: &Context,
    w: &Module,
    theta: &[usize],
    cutoff: usize,
) -> Result<CorollaryReport, KernelError> {
    let mut report = StructureReport::default();
    let scope = Scope::parabolic(ctx.n(), theta.to_vec());
    let space = holomorphic_sections(ctx, w, theta, cutoff)?;
    report.record(space.dim() == w.dim, || {
        format!("dim O_q(W) = {} but dim W = {}", space.dim(), w.dim)
    });

    let coeffs = delta_coefficients(ctx, w)?;
    let mut xi: Vec<VElement> = Vec::with_capacity(w.dim);
    for c in 0..w.dim {
        let mut z = velem_zero(w.dim);
        for a in 0..w.dim {
            if coeffs[a][c].is_zero() {
                continue;
            }
            z[a] = antipode0(ctx, &coeffs[a][c])?;
        }
        xi.push(z);
    }
    // each xi_c is a holomorphic section
    for (c, z) in xi.iter().enumerate() {
        let sv = section_violation(ctx, w, &scope, z)?;
        report.record(sv.is_none(), || format!("xi_{} is not a section: {:?}", c, sv));
    }
    // linear independence
    let span = VSpan::new(&xi);
    report.record(span.dim() == w.dim, || {
        format!("xi family has rank {} < {}", span.dim(), w.dim)
    });
    // intertwining: x . xi_c = sum_k t_W(x)[k, c] xi_k
    let mut gens: Vec<Word> = Vec::new();
    for i in 1..=ctx.n() {
        gens.push(Word::gen(Gen::E(i)));
        gens.push(Word::gen(Gen::F(i)));
        gens.push(Word::gen(Gen::K(i, 1)));
    }
    for x in &gens {
        let t = w.word_matrix(x);
        for (c, z) in xi.iter().enumerate() {
            let lhs = dot_on(ctx, x, &w.parity, z)?;
            let mut rhs = velem_zero(w.dim);
            for (k, zk) in xi.iter().enumerate() {
                if t[(k, c)].is_zero() {
                    continue;
                }
                rhs = velem_add(&rhs, &velem_scaled(zk, &t[(k, c)]));
            }
            report.record(velem_is_zero(&velem_sub(&lhs, &rhs)), || {
                format!("corollary intertwining fails for {:?} at xi_{}", x, c)
            });
        }
    }
    // membership in the computed O_q basis span
    let basis = space.basis();
    let expanded: Vec<VElement> = basis
        .iter()
        .map(|s| expand_section(ctx, &space, s))
        .collect::<Result<_, _>>()?;
    if !expanded.is_empty() {
        let ospan = VSpan::new(&expanded);
        for (c, z) in xi.iter().enumerate() {
            report.record(ospan.contains(z), || {
                format!("xi_{} escapes the computed O_q basis", c)
            });
        }
    }
    Ok(CorollaryReport {
        structure: report,
        dim: space.dim(),
        block_dims: space.block_dims(),
    })
}
